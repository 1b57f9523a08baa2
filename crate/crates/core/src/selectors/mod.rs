//! Constructions that turn hypotheses about covers into verified outputs.
//!
//! Witnesses and selector oracles are distrusted: every combinator
//! re-verifies what it promises and reports failures as errors or False
//! verdicts.

mod borel;
mod capinf;
mod hurewicz;
mod marczewski;
mod powers;
mod sakai;
mod smz;
mod tails;

pub use borel::{borel_gamma_select, borel_omega_select, borel_select, BorelMode, BorelReport, FunctionGrid};
pub use capinf::{
    capinf_gg, default_gamma_selector, ruler, validate_gamma_picks, CapinfOutput, DefaultGammaSelector, GammaSelector,
    RulerSequence,
};
pub use hurewicz::{hurewicz_bound, AffinePencil, BoundRow, HurewiczHorizons, HurewiczReport};
pub use marczewski::{
    marczewski_map, omochar_backward, omochar_forward, BackwardOutput, Block, Decomposition, ForwardOutput, MarczewskiImage,
};
pub use powers::{power_profile, powers_lift, PowersReport, MAX_POWER};
pub use sakai::{combined_family, sakai_s1, SakaiOutput};
pub use smz::{smz_pipeline, LevelBlock, LevelWitness, SmzCover, SmzPiece, MAX_LEVEL};
pub use tails::{least_elements, select_from_witness, tails_gamma, PickedSubfamily};
