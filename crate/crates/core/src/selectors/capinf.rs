use serde::Serialize;

use crate::covers::{a_infinity, classify, AInfWitness, CoverFamily, Derived, Incidence, IndexFamily, Selection, Universe};
use crate::error::{Error, Result};
use crate::natsets::{ruler_hits_progression, NatSet};

/// `ν₂(m + 1)`: every fiber is the progression `Arith(2^n − 1, 2^{n+1})`.
pub fn ruler(m: u64) -> u64 {
    (m + 1).trailing_zeros() as u64
}

/// The sequence whose position `m` carries cover `ν₂(m + 1) mod r`.
#[derive(Debug, Clone, Copy)]
pub struct RulerSequence<'a> {
    covers: &'a [CoverFamily],
}

impl<'a> RulerSequence<'a> {
    pub fn new(covers: &'a [CoverFamily]) -> Self {
        RulerSequence { covers }
    }

    pub fn covers(&self) -> &'a [CoverFamily] {
        self.covers
    }

    pub fn cover_index(&self, m: u64) -> usize {
        (ruler(m) % self.covers.len() as u64) as usize
    }

    pub fn cover_at(&self, m: u64) -> &'a CoverFamily {
        &self.covers[self.cover_index(m)]
    }
}

/// Picks one member from each cover of a sequence of γ-covers so that the
/// picks form a γ-cover. Outputs are re-verified by the caller.
pub trait GammaSelector {
    fn select(&self, sequence: RulerSequence<'_>, x: &Universe) -> Result<Selection>;
}

/// Picks, at position `m`, the least index `>= m` whose member contains the
/// whole universe.
#[derive(Debug, Clone, Copy, Default)]
pub struct DefaultGammaSelector;

/// `⋂_x inc(x)` for each cover, which must be cofinite.
fn common_incidences(covers: &[CoverFamily], x: &Universe) -> Result<Vec<NatSet>> {
    covers
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let mut common = NatSet::full();
            for p in x.points() {
                match u.incidence(p) {
                    Incidence::Exact(s) if s.is_cofinite() => common = common.intersection(&s),
                    _ => return Err(Error::precondition(format!("cover {i} is not a γ-cover relative to the universe"))),
                }
            }
            Ok(common)
        })
        .collect()
}

impl GammaSelector for DefaultGammaSelector {
    fn select(&self, sequence: RulerSequence<'_>, x: &Universe) -> Result<Selection> {
        let common = common_incidences(sequence.covers(), x)?;
        let settle = common.iter().map(|c| c.cofinite_threshold().unwrap()).max().unwrap_or(0);
        let head = (0..settle)
            .map(|m| common[sequence.cover_index(m)].min_at_least(m).expect("cofinite"))
            .collect();
        Ok(Selection::affine(head, 1, 0))
    }
}

pub fn default_gamma_selector(covers: &[CoverFamily], x: &Universe) -> Result<Selection> {
    DefaultGammaSelector.select(RulerSequence::new(covers), x)
}

/// Checks that the picks along the ruler sequence form a γ-cover of `x`.
pub fn validate_gamma_picks(sequence: RulerSequence<'_>, picks: &Selection, x: &Universe) -> Result<()> {
    let Some(tail) = picks.tail.as_ref().filter(|_| picks.is_total()) else {
        return Err(Error::violation("selector returned picks without a rule; γ cannot be decided"));
    };
    if tail.step == 0 {
        return Err(Error::violation("selector picks are eventually periodic, so the picked family is finite"));
    }
    let r = sequence.covers().len() as u64;
    for (i, u) in sequence.covers().iter().enumerate() {
        if !u.injective().is_true() {
            return Err(Error::precondition(format!("cover {i} is not known to be bijectively enumerated")));
        }
        for p in x.points() {
            let missed = match picks.pull_back(&u.incidence(p)) {
                Incidence::Exact(hit) => hit.complement(),
                _ => return Err(Error::precondition(format!("cover {i} has no exact incidence"))),
            };
            // Missed positions carrying cover i must be finite.
            let (l, q) = (missed.preperiod(), missed.period());
            let bad_residue = (l..l + q).find(|&c| missed.contains(c) && ruler_hits_progression(c, q, i as u64, r));
            if let Some(c) = bad_residue {
                return Err(Error::violation(format!(
                    "picks miss point {p} at infinitely many positions m ≡ {c} (mod {q}) carrying cover {i}"
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapinfOutput {
    pub selection: Selection,
    pub witnesses: Vec<AInfWitness>,
    pub derived: Vec<Derived>,
}

/// From γ-covers `Us` and a γ-selector, one A∞(Γ) witness per cover.
pub fn capinf_gg(covers: &[CoverFamily], oracle: &dyn GammaSelector, x: &Universe, budget: u64) -> Result<CapinfOutput> {
    if covers.is_empty() {
        return Err(Error::invalid("no input covers"));
    }
    for (i, u) in covers.iter().enumerate() {
        let report = classify(u, x, budget)?;
        if !report.is_gamma.is_true() {
            return Err(Error::precondition(format!("cover {i} is not a γ-cover relative to the universe")));
        }
    }
    let sequence = RulerSequence::new(covers);
    let selection = oracle.select(sequence, x)?;
    validate_gamma_picks(sequence, &selection, x)?;

    let r = covers.len() as u64;
    let mut witnesses = Vec::new();
    let mut derived = Vec::new();
    for (i, u) in covers.iter().enumerate() {
        let w = AInfWitness::new(IndexFamily::Fibers { picks: selection.clone(), stride: r, offset: i as u64 });
        let d = a_infinity(u, &w, x, budget)?;
        if !d.report.is_gamma.is_true() {
            return Err(Error::violation(format!("derived family of cover {i} is not γ: {:?}", d.report.is_gamma)));
        }
        witnesses.push(w);
        derived.push(d);
    }
    Ok(CapinfOutput { selection, witnesses, derived })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ClopenSet, Point};

    struct Constant;

    impl GammaSelector for Constant {
        fn select(&self, _: RulerSequence<'_>, _: &Universe) -> Result<Selection> {
            Ok(Selection::periodic(vec![3]))
        }
    }

    fn zeros() -> CoverFamily {
        CoverFamily::TailCylinder { word: vec![] }
    }

    #[test]
    fn ruler_fibers() {
        let fiber0: Vec<u64> = (0..20).filter(|&m| ruler(m) == 0).collect();
        assert_eq!(fiber0, NatSet::evens().elements_below(20));
        for n in 0..4 {
            let f = NatSet::arith((1 << n) - 1, 1 << (n + 1));
            assert!((0..200).all(|m| f.contains(m) == (ruler(m) == n)));
        }
    }

    #[test]
    fn two_copies_of_zeros() {
        let x = Universe::new(vec![Point::constant(false)]).unwrap();
        let out = capinf_gg(&[zeros(), zeros()], &DefaultGammaSelector, &x, 32).unwrap();
        assert_eq!(out.witnesses.len(), 2);
        assert!(out.derived.iter().all(|d| d.report.is_gamma.is_true()));
        assert!(matches!(capinf_gg(&[zeros()], &Constant, &x, 32), Err(Error::Violation(_))));
    }

    #[test]
    fn default_selector_skips_missing_members() {
        // U_0 misses the point 1̄.
        let u = CoverFamily::Punctured { base: ClopenSet::empty(), holes: vec![Point::parse("1(0)").unwrap()], offset: 1 };
        let x = Universe::new(vec![Point::constant(true)]).unwrap();
        assert_eq!(u.incidence(&Point::constant(true)), Incidence::Exact(NatSet::tail(1)));
        let sel = default_gamma_selector(&[u], &x).unwrap();
        assert_eq!(sel.picks(3), vec![1, 1, 2]);
    }
}
