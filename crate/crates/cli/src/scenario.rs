use std::path::Path;

use capinf_core::search::{SearchSpace, Target};
use capinf_core::selectors::{AffinePencil, Decomposition, FunctionGrid, HurewiczHorizons, LevelWitness};
use capinf_core::{AInfWitness, CoverFamily, EventualFn, ProperMode, Selection, Universe};
use serde::Deserialize;

use crate::CliError;

/// One JSON scenario file. Every key is optional at parse time; each
/// command checks for the keys it needs.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub description: Option<String>,
    pub universe: Universe,
    #[serde(default)]
    pub cover: Option<CoverFamily>,
    #[serde(default)]
    pub covers: Option<Vec<CoverFamily>>,
    #[serde(default)]
    pub witness: Option<AInfWitness>,
    #[serde(default)]
    pub witnesses: Option<Vec<AInfWitness>>,
    #[serde(default)]
    pub slots: Option<Vec<Selection>>,
    #[serde(default)]
    pub decomposition: Option<Decomposition>,
    #[serde(default)]
    pub grid: Option<FunctionGrid>,
    #[serde(default)]
    pub levels: Option<LevelWitness>,
    #[serde(default)]
    pub pencil: Option<AffinePencil>,
    #[serde(default)]
    pub selections: Option<Vec<EventualFn>>,
    #[serde(default)]
    pub params: Params,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Overridden by `--horizon`.
    #[serde(default)]
    pub horizon: Option<u64>,
    /// Default combinator for `select`; `--combinator` wins.
    #[serde(default)]
    pub combinator: Option<String>,
    /// Kind queried by `classify`, `ainf` and `oracle-check`.
    #[serde(default)]
    pub target: Option<Target>,
    #[serde(default)]
    pub proper: Option<ProperMode>,
    /// Depth schedule `k_n` for the SMZ pipeline; defaults to `k_n = n`.
    #[serde(default)]
    pub depths: Option<EventualFn>,
    /// Threshold `g` for the Borel selectors.
    #[serde(default)]
    pub bound: Option<EventualFn>,
    /// First row `k` for the Hurewicz bound.
    #[serde(default)]
    pub start: Option<u64>,
    #[serde(default)]
    pub hurewicz: Option<HurewiczHorizons>,
    #[serde(default)]
    pub max_power: Option<usize>,
    #[serde(default)]
    pub search: Option<SearchSpace>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Scenario::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Scenario, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("scenario does not match the schema: {e}")))
    }

    pub fn cover(&self) -> Result<&CoverFamily, CliError> {
        self.cover.as_ref().ok_or_else(|| missing("cover"))
    }

    pub fn covers(&self) -> Result<&[CoverFamily], CliError> {
        self.covers.as_deref().ok_or_else(|| missing("covers"))
    }

    pub fn witness(&self) -> Result<&AInfWitness, CliError> {
        self.witness.as_ref().ok_or_else(|| missing("witness"))
    }

    pub fn witnesses(&self) -> Result<&[AInfWitness], CliError> {
        self.witnesses.as_deref().ok_or_else(|| missing("witnesses"))
    }
}

pub(crate) fn missing(key: &str) -> CliError {
    CliError::Input(format!("scenario is missing the {key:?} key"))
}
