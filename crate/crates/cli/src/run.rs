use capinf_core::search::{cross_check, search_ainf_witness, search_profile_in, CrossCheck, Target};
use capinf_core::selectors::{
    borel_select, capinf_gg, hurewicz_bound, marczewski_map, omochar_backward, omochar_forward, powers_lift,
    sakai_s1, select_from_witness, smz_pipeline, tails_gamma, BorelMode, DefaultGammaSelector,
};
use capinf_core::{a_infinity, EventualFn, Error, KindReport, Verdict};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::Body;
use crate::scenario::{missing, Scenario};
use crate::CliError;

pub const DEFAULT_HORIZON: u64 = 64;

/// Every `select` combinator, by CLI name.
pub const COMBINATORS: [&str; 12] = [
    "tails",
    "from-witness",
    "capinf-gg",
    "sakai",
    "smz",
    "marczewski",
    "omochar-fwd",
    "omochar-bwd",
    "borel-gamma",
    "borel-omega",
    "hurewicz",
    "powers",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Classify,
    Ainf,
    Select(String),
    OracleCheck,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Ainf => "ainf",
            Command::Select(_) => "select",
            Command::OracleCheck => "oracle-check",
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub horizon: Option<u64>,
    pub seed: Option<u64>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("outputs serialize")
}

/// Verdicts of `r` up to the queried kind; all four without a target.
fn kind_verdicts(r: &KindReport, target: Option<Target>) -> Vec<(&'static str, Verdict)> {
    let mut out = vec![("is_cover", r.is_cover.clone())];
    if target != Some(Target::Cover) {
        out.push(("is_omega", r.is_omega.clone()));
    }
    if target.is_none() || target == Some(Target::Gamma) {
        out.push(("is_gamma", r.is_gamma.clone()));
    }
    out.push(("proper", r.proper.clone()));
    out
}

/// Runs one command on a parsed scenario. Core errors that mean a failed
/// verification or an undecided horizon become verdicts; the rest are errors.
pub fn run(command: &Command, scenario: &Scenario, opts: RunOptions) -> Result<Body, CliError> {
    let horizon = opts.horizon.or(scenario.params.horizon).unwrap_or(DEFAULT_HORIZON);
    let relative_to = scenario.universe.len();
    let combinator = match command {
        Command::Select(c) => Some(c.clone()),
        _ => None,
    };
    let mut body = match execute(command, scenario, horizon, opts.seed) {
        Ok((verdicts, result)) => Body::new(command.name(), horizon, relative_to, verdicts, result),
        Err(CliError::Core(Error::Violation(msg))) => {
            Body::new(command.name(), horizon, relative_to, vec![("verification", Verdict::False)], json!({ "error": msg }))
        }
        Err(CliError::Core(Error::Horizon { reason, horizon: h })) => Body::new(
            command.name(),
            horizon,
            relative_to,
            vec![("decided", Verdict::unknown(reason.clone(), h))],
            json!({ "error": reason }),
        ),
        Err(e) => return Err(e),
    };
    body.combinator = combinator;
    body.seed = opts.seed;
    Ok(body)
}

type Outcome = (Vec<(&'static str, Verdict)>, Value);

fn execute(command: &Command, s: &Scenario, horizon: u64, seed: Option<u64>) -> Result<Outcome, CliError> {
    let x = &s.universe;
    let target = s.params.target;
    match command {
        Command::Classify => {
            let u = s.cover()?;
            let mode = s.params.proper.unwrap_or_default();
            let report = u.profile(x)?.classify(horizon, mode)?;
            Ok((kind_verdicts(&report, target), to_value(&report)))
        }
        Command::Ainf => {
            let d = a_infinity(s.cover()?, s.witness()?, x, horizon)?;
            Ok((kind_verdicts(&d.report, target), to_value(&d)))
        }
        Command::OracleCheck => oracle_check(s, seed),
        Command::Select(name) => select(name, s, horizon),
    }
}

fn oracle_check(s: &Scenario, seed: Option<u64>) -> Result<Outcome, CliError> {
    let (u, x) = (s.cover()?, &s.universe);
    let target = s.params.target.unwrap_or(Target::Gamma);
    let space = s.params.search.unwrap_or_default();
    let out = search_ainf_witness(u, x, target, &space)?;
    let mut verdicts = vec![(
        "found",
        if out.found.is_some() { Verdict::True } else { Verdict::unknown("no witness in the search space", space.horizon) },
    )];
    let mut result = json!({
        "space": space,
        "target": target,
        "tried": out.tried,
        "found": out.found.is_some(),
        "witness": out.found,
    });
    if let Some(w) = &s.witness {
        let check = cross_check(w, u, x, target, &space);
        verdicts.push((
            "cross_check",
            match &check {
                CrossCheck::Consistent => Verdict::True,
                CrossCheck::Discrepancy(_) => Verdict::False,
                CrossCheck::SearchSpaceTooSmall => Verdict::unknown("search space too small", space.horizon),
            },
        ));
        result["cross_check"] = to_value(&check);
    }
    if let Some(seed) = seed {
        // Existence must not depend on the catalog order.
        let mut catalog = space.catalog();
        catalog.shuffle(&mut StdRng::seed_from_u64(seed));
        let again = search_profile_in(&u.profile(x)?, target, &space, &catalog)?;
        verdicts.push(("order_independent", Verdict::from_bool(again.found.is_some() == out.found.is_some())));
        result["reordered_tried"] = json!(again.tried);
    }
    Ok((verdicts, result))
}

fn select(name: &str, s: &Scenario, horizon: u64) -> Result<Outcome, CliError> {
    let x = &s.universe;
    match name {
        "tails" => {
            let u = s.cover()?;
            let w = tails_gamma(u, x, horizon)?;
            let d = a_infinity(u, &w, x, horizon)?;
            Ok((vec![("derived_gamma", d.report.is_gamma.clone())], json!({ "witness": w, "derived": d })))
        }
        "from-witness" => {
            let out = select_from_witness(s.witness()?, s.cover()?, x, horizon)?;
            let mut verdicts = vec![("preserved", Verdict::from_bool(out.preserved))];
            for ((name, before), (_, after)) in out.derived_report.verdicts().into_iter().zip(out.report.verdicts()) {
                if before.is_true() && name != "proper" {
                    verdicts.push((name, after.clone()));
                }
            }
            Ok((verdicts, to_value(&out)))
        }
        "capinf-gg" => {
            let out = capinf_gg(s.covers()?, &DefaultGammaSelector, x, horizon)?;
            let infinite = Verdict::all(out.witnesses.iter().map(|w| w.index_sets.distinct_infinite()));
            let gamma = Verdict::all(out.derived.iter().map(|d| d.report.is_gamma.clone()));
            Ok((vec![("index_sets_infinite", infinite), ("derived_gamma", gamma)], to_value(&out)))
        }
        "sakai" => {
            let slots = s.slots.as_deref().ok_or_else(|| missing("slots"))?;
            let out = sakai_s1(s.covers()?, slots, s.witness()?, x, horizon)?;
            let increasing = out.assigned.windows(2).all(|p| p[0] < p[1]);
            Ok((vec![("increasing", Verdict::from_bool(increasing)), ("is_omega", out.report.is_omega.clone())], to_value(&out)))
        }
        "smz" => {
            let w = s.levels.as_ref().ok_or_else(|| missing("levels"))?;
            let k = s.params.depths.clone().unwrap_or_else(|| EventualFn::affine(1, 0));
            let out = smz_pipeline(x, &k, w)?;
            Ok((vec![("covers", out.covers.clone()), ("shapes", Verdict::from_bool(out.shapes_ok))], to_value(&out)))
        }
        "marczewski" => {
            let out = marczewski_map(s.cover()?, x, horizon)?;
            Ok((vec![("centered_if_omega", out.centered_if_omega.clone())], to_value(&out)))
        }
        "omochar-fwd" => {
            let out = omochar_forward(s.witness()?, s.cover()?, x, horizon)?;
            Ok((
                vec![
                    ("covers_image", Verdict::from_bool(out.covers_image)),
                    ("pseudo_intersections", Verdict::from_bool(out.pseudo_intersections)),
                ],
                to_value(&out),
            ))
        }
        "omochar-bwd" => {
            let d = s.decomposition.as_ref().ok_or_else(|| missing("decomposition"))?;
            let out = omochar_backward(d, s.cover()?, x, horizon)?;
            Ok((vec![("is_cover", out.derived.report.is_cover.clone())], to_value(&out)))
        }
        "borel-gamma" | "borel-omega" => {
            let grid = s.grid.as_ref().ok_or_else(|| missing("grid"))?;
            let g = s.params.bound.as_ref().ok_or_else(|| missing("params.bound"))?;
            let mode = if name == "borel-gamma" { BorelMode::Gamma } else { BorelMode::Omega };
            let out = borel_select(grid, x, g, mode, horizon)?;
            Ok((vec![("covering", out.covering.clone())], to_value(&out)))
        }
        "hurewicz" => {
            let y = s.pencil.as_ref().ok_or_else(|| missing("pencil"))?;
            let sel = s.selections.as_deref().ok_or_else(|| missing("selections"))?;
            let hz = s.params.hurewicz.unwrap_or_default();
            let out = hurewicz_bound(y, s.params.start.unwrap_or(0), sel, s.witness()?, hz)?;
            Ok((vec![("bounded", out.bounded.clone()), ("covers_horizon", out.covers_horizon.clone())], to_value(&out)))
        }
        "powers" => {
            let ws = s.witnesses()?;
            let k = s.params.max_power.unwrap_or(ws.len());
            let out = powers_lift(s.cover()?, x, ws, k, horizon)?;
            Ok((vec![("is_omega_upto", out.is_omega_upto.clone())], to_value(&out)))
        }
        other => Err(CliError::Input(format!("unknown combinator {other:?}; expected one of {}", COMBINATORS.join(", ")))),
    }
}
