//! Exhaustive search over small catalogs of witnesses.
//!
//! The enumeration order is frozen: results are the first hit in that order,
//! so they are reproducible.

use serde::{Deserialize, Serialize};

use crate::cantor::ClopenSet;
use crate::covers::{a_infinity, AInfWitness, CoverFamily, IndexFamily, Profile, ProperMode, Universe, Verdict};
use crate::error::{Error, Result};
use crate::eventual::EventualFn;
use crate::natsets::NatSet;
use crate::selectors::{LevelBlock, LevelWitness, MAX_LEVEL};

/// Caps on the searched catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpace {
    /// Cylinder words of length at most `depth`.
    pub depth: u32,
    /// `Tail(a)` for `a <= max_tail`.
    pub max_tail: u64,
    /// `Arith(a, q)` for `2 <= q <= max_modulus`, `a < q`.
    pub max_modulus: u64,
    /// Horizon for finite evidence.
    pub horizon: u64,
}

impl Default for SearchSpace {
    fn default() -> Self {
        SearchSpace { depth: 2, max_tail: 4, max_modulus: 4, horizon: 32 }
    }
}

impl SearchSpace {
    pub fn validate(&self) -> Result<()> {
        if self.depth > 4 || self.max_tail > 8 || self.max_modulus > 8 || self.horizon > 64 {
            return Err(Error::Budget(format!(
                "search space {self:?} exceeds the caps depth ≤ 4, tails ≤ 8, moduli ≤ 8, horizon ≤ 64"
            )));
        }
        Ok(())
    }

    /// `Tail(0..=A)`, then `Arith(a, q)` by increasing `q`, then `a`.
    pub fn catalog(&self) -> Vec<NatSet> {
        let tails = (0..=self.max_tail).map(NatSet::tail);
        let ariths = (2..=self.max_modulus).flat_map(|q| (0..q).map(move |a| NatSet::arith(a, q)));
        tails.chain(ariths).collect()
    }
}

/// Every clopen set of depth at most `d`, ordered by the bitmask of depth-`d`
/// cylinders (lexicographic words, lowest bit first).
pub fn enumerate_clopens(d: u32) -> Result<Vec<ClopenSet>> {
    if d > 4 {
        return Err(Error::Budget(format!("depth {d} exceeds the cap of 4")));
    }
    let words: Vec<Vec<bool>> = (0..1u64 << d).map(|i| (0..d).map(|b| i >> (d - 1 - b) & 1 == 1).collect()).collect();
    Ok((0..1u64 << (1u64 << d))
        .map(|mask| {
            ClopenSet::from_words(words.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w.as_slice()))
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Cover,
    Omega,
    Gamma,
}

impl Target {
    fn met_by(&self, profile: &Profile, horizon: u64) -> bool {
        if *self == Target::Cover {
            return profile.cover_verdict(horizon).is_true();
        }
        match profile.classify(horizon, ProperMode::Ambient) {
            Ok(r) if *self == Target::Omega => r.is_omega.is_true(),
            Ok(r) => r.is_gamma.is_true(),
            Err(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub space: SearchSpace,
    pub tried: u64,
    pub found: Option<AInfWitness>,
}

/// Candidates in frozen order: tails, one-block pairings, constant lists,
/// then greedy lists and pairings assembled from the catalog.
fn candidates(profile: &Profile, catalog: &[NatSet]) -> Vec<IndexFamily> {
    let mut out = vec![IndexFamily::Tails];
    out.extend(catalog.iter().map(|a| IndexFamily::Paired { blocks: vec![a.clone()] }));
    out.extend(catalog.iter().map(|a| IndexFamily::List { sets: vec![a.clone()] }));

    // Keep a set when its derived trace reaches a subset not yet reached.
    let trace = |a: &NatSet, almost: bool| -> usize {
        profile
            .incidences
            .iter()
            .enumerate()
            .filter(|(_, inc)| {
                inc.exact().is_some_and(|i| if almost { a.almost_subset(i) } else { a.is_subset(i) })
            })
            .fold(0usize, |m, (i, _)| m | 1 << i)
    };
    for almost in [false, true] {
        let mut kept: Vec<NatSet> = Vec::new();
        let mut reached: Vec<usize> = Vec::new();
        for a in catalog {
            let t = trace(a, almost);
            if t != 0 && !reached.iter().any(|&r| t & !r == 0) {
                reached.push(t);
                kept.push(a.clone());
            }
        }
        if !kept.is_empty() {
            out.push(if almost { IndexFamily::Paired { blocks: kept } } else { IndexFamily::List { sets: kept } });
        }
    }
    out
}

/// First catalog witness whose derived profile meets `target`.
pub fn search_profile(profile: &Profile, target: Target, space: &SearchSpace) -> Result<SearchOutcome> {
    search_profile_in(profile, target, space, &space.catalog())
}

/// As [`search_profile`], over a caller-ordered catalog.
pub fn search_profile_in(profile: &Profile, target: Target, space: &SearchSpace, catalog: &[NatSet]) -> Result<SearchOutcome> {
    space.validate()?;
    let mut tried = 0;
    for rule in candidates(profile, catalog) {
        tried += 1;
        let w = AInfWitness::new(rule);
        if w.index_sets.validate().is_err() {
            continue;
        }
        if target.met_by(&w.derived_profile(profile), space.horizon) {
            return Ok(SearchOutcome { space: *space, tried, found: Some(w) });
        }
    }
    Ok(SearchOutcome { space: *space, tried, found: None })
}

pub fn search_ainf_witness(u: &CoverFamily, x: &Universe, target: Target, space: &SearchSpace) -> Result<SearchOutcome> {
    search_profile(&u.profile(x)?, target, space)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossCheck {
    Consistent,
    Discrepancy(String),
    SearchSpaceTooSmall,
}

/// Re-verifies a combinator's witness and compares with independent search.
pub fn cross_check(output: &AInfWitness, u: &CoverFamily, x: &Universe, target: Target, space: &SearchSpace) -> CrossCheck {
    let derived = match a_infinity(u, output, x, space.horizon) {
        Ok(d) => d,
        Err(Error::FiniteIndexSet { position }) => {
            return CrossCheck::Discrepancy(format!("finite index set at position {position}"));
        }
        Err(e) => return CrossCheck::Discrepancy(e.to_string()),
    };
    if !target.met_by(&derived.profile, space.horizon) {
        let failing = derived
            .profile
            .incidences
            .iter()
            .position(|i| i.exact().is_none_or(|s| s.is_empty()))
            .map_or(String::new(), |p| format!(" (first uncovered point: {p})"));
        return CrossCheck::Discrepancy(format!("combinator output misses the {target:?} target{failing}"));
    }
    match search_ainf_witness(u, x, target, space) {
        Ok(SearchOutcome { found: Some(_), .. }) => CrossCheck::Consistent,
        Ok(_) => CrossCheck::SearchSpaceTooSmall,
        Err(e) => CrossCheck::Discrepancy(e.to_string()),
    }
}

/// Level witnesses whose membership is checked member by member up to
/// [`MAX_LEVEL`]: one block holding the whole universe, then one block per point.
pub fn search_level_witness(x: &Universe, k: &EventualFn, space: &SearchSpace) -> Result<LevelSearchOutcome> {
    space.validate()?;
    let catalog: Vec<NatSet> = space.catalog().into_iter().filter(|s| s.is_infinite()).collect();
    let mut tried = 0;
    let points = x.points();
    let mut shapes: Vec<LevelWitness> = Vec::new();
    for levels in &catalog {
        shapes.push(LevelWitness { blocks: vec![LevelBlock { levels: levels.clone(), anchors: points.to_vec() }] });
    }
    for levels in &catalog {
        shapes.push(LevelWitness {
            blocks: points.iter().map(|p| LevelBlock { levels: levels.clone(), anchors: vec![p.clone()] }).collect(),
        });
    }
    for w in shapes {
        tried += 1;
        if w.validate().is_err() {
            continue;
        }
        // A point is in ⋂𝒱 if it lies in every member at the levels below the cap.
        let inside = |b: &LevelBlock, p: &crate::Point| {
            b.levels.elements_below(MAX_LEVEL + 1).iter().all(|&l| b.member_at(l, k).contains(p))
        };
        if points.iter().all(|p| w.blocks.iter().any(|b| inside(b, p))) {
            return Ok(LevelSearchOutcome { tried, found: Some(w) });
        }
    }
    Ok(LevelSearchOutcome { tried, found: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSearchOutcome {
    pub tried: u64,
    pub found: Option<LevelWitness>,
}

impl From<&SearchOutcome> for Verdict {
    fn from(o: &SearchOutcome) -> Verdict {
        Verdict::from_bool(o.found.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Point;

    #[test]
    fn clopen_counts() {
        assert_eq!(enumerate_clopens(1).unwrap(), vec![
            ClopenSet::empty(),
            ClopenSet::cylinder(&[false]),
            ClopenSet::cylinder(&[true]),
            ClopenSet::full()
        ]);
        assert_eq!(enumerate_clopens(2).unwrap().len(), 16);
        let all3 = enumerate_clopens(3).unwrap();
        for (i, a) in all3.iter().enumerate() {
            assert!(!all3[..i].contains(a));
        }
        assert!(enumerate_clopens(5).is_err());
    }

    #[test]
    fn search_examples() {
        let zeros = CoverFamily::TailCylinder { word: vec![] };
        let x = Universe::new(vec![Point::constant(false)]).unwrap();
        let out = search_ainf_witness(&zeros, &x, Target::Gamma, &SearchSpace::default()).unwrap();
        assert_eq!(out.found, Some(AInfWitness::tails()));

        let c = |w: &[bool]| ClopenSet::cylinder(w);
        let explicit = CoverFamily::Explicit { members: vec![c(&[false]), c(&[true]), c(&[])] };
        for t in [Target::Cover, Target::Omega, Target::Gamma] {
            assert!(search_ainf_witness(&explicit, &x, t, &SearchSpace::default()).unwrap().found.is_none());
        }

        let ones = Universe::new(vec![Point::constant(true)]).unwrap();
        assert!(search_ainf_witness(&CoverFamily::TailCylinder { word: vec![false] }, &ones, Target::Cover, &SearchSpace::default())
            .unwrap()
            .found
            .is_none());
    }

    #[test]
    fn cross_check_outcomes() {
        let zeros = CoverFamily::TailCylinder { word: vec![] };
        let x = Universe::new(vec![Point::constant(false)]).unwrap();
        let space = SearchSpace::default();
        assert_eq!(cross_check(&AInfWitness::tails(), &zeros, &x, Target::Gamma, &space), CrossCheck::Consistent);
        let broken = AInfWitness::list(vec![NatSet::finite([0, 1])]);
        assert!(matches!(cross_check(&broken, &zeros, &x, Target::Gamma, &space), CrossCheck::Discrepancy(m) if m.contains("finite index set")));
    }

    #[test]
    fn level_search_finds_witness() {
        let x = Universe::new(vec![Point::constant(false), Point::constant(true)]).unwrap();
        let out = search_level_witness(&x, &EventualFn::affine(1, 0), &SearchSpace::default()).unwrap();
        assert!(out.found.is_some());
    }
}
