//! Exact, finitely presented models of covers of Cantor-space point sets.
//!
//! Index sets, incidence sets and pseudo-intersections are eventually
//! periodic subsets of the naturals ([`NatSet`]); points of Cantor space are
//! eventually periodic bit sequences ([`Point`]); open sets are clopen
//! ([`ClopenSet`]). Every cover family answers membership questions through an
//! exact per-point incidence set, which turns the infinitary notions of
//! cover, ω-cover, γ-cover and the A∞ operator into decidable checks relative
//! to a finite sample of points.

pub mod bits;
pub mod cantor;
pub mod covers;
mod error;
pub mod eventual;
pub mod gen;
pub mod natsets;
mod periodic;
pub mod search;
pub mod selectors;

pub use cantor::{ClopenSet, Point};
pub use covers::{
    a_infinity, classify, derefine, AInfWitness, CoverFamily, Derived, Incidence, IndexFamily,
    KindReport, Profile, ProperMode, Selection, Universe, Verdict,
};
pub use error::{Error, Result};
pub use eventual::EventualFn;
pub use natsets::{BoolOp, FamilyDiagnostics, NatFamily, NatSet};
