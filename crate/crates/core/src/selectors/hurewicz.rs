use serde::{Deserialize, Serialize};

use crate::covers::{AInfWitness, Verdict};
use crate::error::{Error, Result};
use crate::eventual::EventualFn;

/// `Y = {f_j : j ∈ ℕ}` with `f_j(n) = base(n) + j·slope(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffinePencil {
    pub base: EventualFn,
    pub slope: EventualFn,
}

impl AffinePencil {
    pub fn eval(&self, j: u64, n: u64) -> u64 {
        self.base.eval(n) + j * self.slope.eval(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HurewiczHorizons {
    /// Rows `n` with `k <= n < k + rows` are inspected.
    pub rows: u64,
    /// Functions `f_j` with `j < functions` must be covered.
    pub functions: u64,
    /// Witness sets `A_m` with `m < sets` are used.
    pub sets: u64,
}

impl Default for HurewiczHorizons {
    fn default() -> Self {
        HurewiczHorizons { rows: 64, functions: 16, sets: 16 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub m: u64,
    /// `I_m` within the row horizon.
    pub rows: Vec<u64>,
    /// `⋂𝒱_m = {j : j <= bound}`; `None` when `I_m` is empty within the horizon.
    pub bound: Option<i64>,
    pub vacuous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HurewiczReport {
    /// `g(n) = max F_n` on the inspected rows.
    pub g: Vec<u64>,
    pub sets: Vec<BoundRow>,
    /// `f↾I_m <= g↾I_m` for every `f ∈ ⋂𝒱_m`.
    pub bounded: Verdict,
    /// `⋃_m ⋂𝒱_m` contains every `f_j` with `j` below the function horizon.
    pub covers_horizon: Verdict,
    pub horizons: HurewiczHorizons,
}

/// Rows `n >= k` of the flattened family `⟨U^n_{g(n)}⟩` are indexed `n − k`.
pub fn hurewicz_bound(
    y: &AffinePencil,
    k: u64,
    selections: &[EventualFn],
    w: &AInfWitness,
    horizons: HurewiczHorizons,
) -> Result<HurewiczReport> {
    if selections.is_empty() {
        return Err(Error::invalid("finite selections are empty"));
    }
    w.index_sets.validate()?;
    if !y.base.is_strictly_increasing() {
        return Err(Error::precondition("pencil members are not increasing: base is not strictly increasing"));
    }
    // A positive affine law can only vanish below |intercept|/slope.
    let reach = k + y.slope.head().len() as u64 + y.slope.modulus() * (2 + (0..y.slope.modulus()).map(|r| y.slope.intercept(r).unsigned_abs()).max().unwrap_or(0));
    if let Some(n) = (k..reach.max(k + horizons.rows)).find(|&n| y.slope.eval(n) == 0) {
        return Err(Error::precondition(format!("slope vanishes at n = {n}, so row {n} contains the whole pencil")));
    }
    if let Some(n) = (k..k + horizons.rows).find(|&n| y.slope.eval(n + 1) < y.slope.eval(n)) {
        return Err(Error::precondition(format!("pencil members are not increasing at n = {n}")));
    }

    let rows: Vec<u64> = (k..k + horizons.rows).collect();
    let g: Vec<u64> = rows.iter().map(|&n| selections.iter().map(|s| s.eval(n)).max().unwrap()).collect();
    let g_at = |n: u64| g[(n - k) as usize];
    // Largest j with f_j(n) <= g(n), or −1.
    let limit = |n: u64| -> i64 {
        let (b, s, top) = (y.base.eval(n) as i64, y.slope.eval(n) as i64, g_at(n) as i64);
        if top < b { -1 } else { (top - b) / s }
    };

    let mut sets = Vec::new();
    let mut bounded = true;
    for m in 0..horizons.sets {
        let a = w.index_sets.set_at(m)?;
        let i_m: Vec<u64> = a.elements_below(horizons.rows).into_iter().map(|i| i + k).collect();
        let bound = i_m.iter().map(|&n| limit(n)).min();
        if let Some(b) = bound {
            for j in 0..=b.max(-1).min(horizons.functions as i64) {
                bounded &= i_m.iter().all(|&n| y.eval(j as u64, n) <= g_at(n));
            }
        }
        sets.push(BoundRow { m, vacuous: i_m.is_empty(), rows: i_m, bound });
    }
    let covers = (0..horizons.functions).all(|j| {
        sets.iter().any(|r| r.bound.is_some_and(|b| j as i64 <= b))
    });
    Ok(HurewiczReport {
        g,
        sets,
        bounded: Verdict::from_bool(bounded),
        covers_horizon: Verdict::from_bool(covers),
        horizons,
    })
}
