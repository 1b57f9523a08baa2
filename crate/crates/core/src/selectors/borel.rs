use serde::{Deserialize, Serialize};

use crate::bits;
use crate::cantor::{ClopenSet, Point};
use crate::covers::{CoverFamily, Incidence, KindReport, Profile, ProperMode, Universe, Verdict, MAX_OMEGA_UNIVERSE};
use crate::error::{Error, Result};
use crate::eventual::EventualFn;
use crate::natsets::NatSet;

/// A doubly indexed family `U^n_m = space ∖ [z_n↾(m + offset)]` with holes
/// `z_n = prefixes[n mod q] · pump^n · tails[n mod q]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionGrid {
    #[serde(with = "bits::serde_words")]
    pub prefixes: Vec<Vec<bool>>,
    #[serde(with = "bits::serde_word")]
    pub pump: Vec<bool>,
    pub tails: Vec<Point>,
    #[serde(default)]
    pub offset: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BorelMode {
    /// Each point lies in infinitely many derived members.
    Gamma,
    /// Each finite set of points lies in infinitely many derived members.
    Omega,
}

impl FunctionGrid {
    pub fn validate(&self) -> Result<()> {
        if self.prefixes.is_empty() || self.prefixes.len() != self.tails.len() {
            return Err(Error::invalid("grid needs matching nonempty prefixes and tails"));
        }
        if self.pump.is_empty() {
            return Err(Error::invalid("grid pump word must be nonempty"));
        }
        Ok(())
    }

    fn period(&self) -> u64 {
        self.prefixes.len() as u64
    }

    pub fn hole(&self, n: u64) -> Point {
        let s = (n % self.period()) as usize;
        let mut word = self.prefixes[s].clone();
        for _ in 0..n {
            word.extend_from_slice(&self.pump);
        }
        self.tails[s].prepend(&word)
    }

    pub fn row(&self, n: u64) -> CoverFamily {
        CoverFamily::Punctured { base: ClopenSet::empty(), holes: vec![self.hole(n)], offset: self.offset }
    }

    /// `Ψ(x)(n) = min{m : x ∈ U^n_k for all k >= m}`.
    pub fn psi(&self, x: &Point) -> Result<EventualFn> {
        self.validate()?;
        let q = self.period();
        let c = self.offset;
        let pump = Point::periodic(&self.pump).expect("nonempty pump");
        let mut slopes = Vec::with_capacity(q as usize);
        let mut settle = 0u64;
        for s in 0..q as usize {
            let (slope, from) = match x.strip_prefix(&self.prefixes[s]) {
                None => (0, 0),
                Some(y) if y == pump => {
                    if self.tails[s] == pump {
                        return Err(Error::precondition(format!("point {x} is the hole of every row ≡ {s} (mod {q})")));
                    }
                    // Agreement grows by |pump| per row once it exceeds the offset.
                    (self.pump.len() as u64, c + 1)
                }
                Some(mut y) => {
                    // Constant once the rows carry more pumps than x starts with.
                    let mut leading = 0;
                    while let Some(rest) = y.strip_prefix(&self.pump) {
                        y = rest;
                        leading += 1;
                    }
                    (0, leading + 2)
                }
            };
            slopes.push(slope);
            settle = settle.max(from);
        }
        let head_len = settle + q;
        let mut values = Vec::with_capacity((head_len + q) as usize);
        for n in 0..head_len + q {
            match x.agreement(&self.hole(n)) {
                Some(a) => values.push((a + 1).saturating_sub(c)),
                None => return Err(Error::precondition(format!("point {x} is the hole of row {n}"))),
            }
        }
        Ok(EventualFn::from_values(head_len, slopes, |n| {
            if let Some(&v) = values.get(n as usize) {
                return v;
            }
            (x.agreement(&self.hole(n)).expect("checked above") + 1).saturating_sub(c)
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorelReport {
    pub mode: BorelMode,
    pub psi: Vec<EventualFn>,
    /// `{n : Ψ(x)(n) <= g(n)}`: the derived members containing each point.
    pub good: Vec<NatSet>,
    pub covering: Verdict,
    pub report: KindReport,
    pub failures: Vec<String>,
}

/// Takes `𝒱_n = {U^n_m : m >= g(n)}` and checks the covering condition.
pub fn borel_select(grid: &FunctionGrid, x: &Universe, g: &EventualFn, mode: BorelMode, budget: u64) -> Result<BorelReport> {
    let psi: Vec<EventualFn> = x.points().iter().map(|p| grid.psi(p)).collect::<Result<_>>()?;
    let good: Vec<NatSet> = psi.iter().map(|f| f.le_set(g)).collect();
    let mut failures = Vec::new();
    match mode {
        BorelMode::Gamma => {
            for (p, s) in x.points().iter().zip(&good) {
                if s.is_finite() {
                    failures.push(format!("covering fails: Ψ({p}) exceeds g at all but finitely many n"));
                }
            }
        }
        BorelMode::Omega => {
            let k = good.len();
            if k > MAX_OMEGA_UNIVERSE {
                return Err(Error::Budget(format!("universe of {k} points exceeds the ω cap")));
            }
            for mask in 1usize..(1 << k) {
                let common = (0..k).filter(|i| mask >> i & 1 == 1).fold(NatSet::full(), |acc, i| acc.intersection(&good[i]));
                if common.is_finite() {
                    let pts: Vec<String> =
                        (0..k).filter(|i| mask >> i & 1 == 1).map(|i| x.points()[i].to_string()).collect();
                    failures.push(format!("covering fails: max Ψ over {{{}}} exceeds g at all but finitely many n", pts.join(", ")));
                    break;
                }
            }
        }
    }
    let unbounded_g = (0..g.modulus()).any(|r| g.slope(r) > 0);
    let profile = Profile {
        incidences: good.iter().cloned().map(Incidence::Exact).collect(),
        full: Incidence::Exact(NatSet::empty()),
        infinite: Verdict::from_bool(unbounded_g),
    };
    let report = profile.classify(budget, ProperMode::Ambient)?;
    Ok(BorelReport { mode, psi, good, covering: Verdict::from_bool(failures.is_empty()), report, failures })
}

pub fn borel_gamma_select(grid: &FunctionGrid, x: &Universe, g: &EventualFn, budget: u64) -> Result<BorelReport> {
    borel_select(grid, x, g, BorelMode::Gamma, budget)
}

pub fn borel_omega_select(grid: &FunctionGrid, x: &Universe, g: &EventualFn, budget: u64) -> Result<BorelReport> {
    borel_select(grid, x, g, BorelMode::Omega, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<bool> {
        bits::parse(s).unwrap()
    }

    /// Least `m <= 64` with `x` in every member `U^n_k`, `m <= k < 200`.
    fn brute_psi(grid: &FunctionGrid, x: &Point, n: u64) -> u64 {
        let row = grid.row(n);
        let inside: Vec<bool> = (0..200).map(|k| row.member_at(k).unwrap().contains(x)).collect();
        (0..=64).find(|&m| inside[m as usize..].iter().all(|&b| b)).expect("row is γ at x")
    }

    #[test]
    fn psi_matches_brute_force() {
        let grid = FunctionGrid {
            prefixes: vec![w("1"), w("")],
            pump: w("01"),
            tails: vec![Point::constant(true), Point::parse("1(0)").unwrap()],
            offset: 2,
        };
        for x in ["(01)", "1(01)", "0101(1)", "(0)", "11(0)", "1010(0)"] {
            let x = Point::parse(x).unwrap();
            let f = grid.psi(&x).unwrap();
            for n in 0..12 {
                assert_eq!(f.eval(n), brute_psi(&grid, &x, n), "x={x} n={n}");
            }
        }
    }

    #[test]
    fn zero_psi_and_domination() {
        // Holes far from 0̄: Ψ(0̄) = 0 and g = 0 covers.
        let grid = FunctionGrid { prefixes: vec![w("1")], pump: w("1"), tails: vec![Point::constant(true)], offset: 1 };
        let x = Universe::new(vec![Point::constant(false)]).unwrap();
        let out = borel_gamma_select(&grid, &x, &EventualFn::constant(0), 32).unwrap();
        assert!(out.covering.is_true());
        assert_eq!(out.psi[0], EventualFn::constant(0));

        // Ψ(0̄)(n) = n + 1 against g(n) = n: covering fails.
        let grid = FunctionGrid { prefixes: vec![w("")], pump: w("0"), tails: vec![Point::constant(true)], offset: 0 };
        let out = borel_gamma_select(&grid, &x, &EventualFn::affine(1, 0), 32).unwrap();
        assert!(out.covering.is_false());
        assert!(!out.failures.is_empty());
    }

    #[test]
    fn omega_fails_on_complementary_patterns() {
        // Even rows are far from 0̄ and close to 1̄; odd rows the other way round.
        let grid = FunctionGrid {
            prefixes: vec![w("10"), w("01")],
            pump: w("0"),
            tails: vec![Point::constant(true), Point::constant(true)],
            offset: 0,
        };
        let x = Universe::new(vec![Point::constant(false), Point::constant(true)]).unwrap();
        let g = EventualFn::constant(1);
        let gamma = borel_gamma_select(&grid, &x, &g, 32).unwrap();
        assert!(gamma.covering.is_true());
        let omega = borel_omega_select(&grid, &x, &g, 32).unwrap();
        assert!(omega.covering.is_false());
    }
}
