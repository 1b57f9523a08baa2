use serde::Serialize;

use crate::covers::{a_infinity, classify, AInfWitness, CoverFamily, IndexFamily, KindReport, PickTail, Selection, Universe};
use crate::error::{Error, Result};
use crate::periodic::lcm;

/// Positions materialized when the least elements follow no rule.
const EXPLICIT_PICKS: u64 = 16;

/// The witness `A_n = Tail(n)` for a bijectively enumerated γ-cover.
pub fn tails_gamma(u: &CoverFamily, x: &Universe, budget: u64) -> Result<AInfWitness> {
    let report = classify(u, x, budget)?;
    if !report.is_gamma.is_true() {
        return Err(Error::precondition(format!("family is not a γ-cover relative to the universe ({:?})", report.is_gamma)));
    }
    if !u.injective().is_true() {
        return Err(Error::precondition("family is not known to be bijectively enumerated"));
    }
    Ok(AInfWitness::tails())
}

/// Least element of each index set as a selection.
pub fn least_elements(w: &AInfWitness) -> Result<Selection> {
    w.index_sets.validate()?;
    let least = |set: &crate::NatSet| set.least().expect("validated sets are infinite");
    Ok(match &w.index_sets {
        IndexFamily::Tails => Selection::affine(vec![], 1, 0),
        IndexFamily::List { sets } => Selection::periodic(sets.iter().map(least).collect()),
        IndexFamily::Paired { blocks } => {
            // min(A ∩ Tail(k + p)) = min(A ∩ Tail(k)) + p once k passes the preperiod.
            let r = blocks.len() as u64;
            let settle = blocks.iter().map(|b| b.preperiod()).max().unwrap_or(0);
            let period = blocks.iter().fold(1, |acc, b| lcm(acc, b.period()));
            let set_min = |j: u64| blocks[(j % r) as usize].min_at_least(j / r).expect("infinite block");
            let head_len = r * settle;
            Selection {
                head: (0..head_len).map(set_min).collect(),
                tail: Some(PickTail { cycle: (head_len..head_len + r * period).map(set_min).collect(), step: period }),
            }
        }
        IndexFamily::Fibers { .. } => {
            let head: Result<Vec<u64>> =
                (0..EXPLICIT_PICKS).map(|n| w.index_sets.set_at(n).map(|a| least(&a))).collect();
            Selection::explicit(head?)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PickedSubfamily {
    pub selection: Selection,
    pub family: CoverFamily,
    pub report: KindReport,
    pub derived_report: KindReport,
    /// Every True verdict of the derived family is True for the picked one.
    pub preserved: bool,
}

/// Picks `U_{min A_n}` from each index set of the witness.
pub fn select_from_witness(w: &AInfWitness, u: &CoverFamily, x: &Universe, budget: u64) -> Result<PickedSubfamily> {
    let derived = a_infinity(u, w, x, budget)?;
    let selection = least_elements(w)?;
    let family = CoverFamily::Picked { covers: vec![u.clone()], slots: vec![selection.clone()] };
    let report = classify(&family, x, budget)?;
    Ok(PickedSubfamily {
        preserved: derived.report.true_kinds_preserved_in(&report),
        selection,
        family,
        report,
        derived_report: derived.report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{NatSet, Point};

    fn zeros() -> CoverFamily {
        CoverFamily::TailCylinder { word: vec![] }
    }

    #[test]
    fn tails_gamma_examples() {
        let x = Universe::new(vec![Point::constant(false)]).unwrap();
        let w = tails_gamma(&zeros(), &x, 32).unwrap();
        assert_eq!(w, AInfWitness::tails());
        assert!(a_infinity(&zeros(), &w, &x, 32).unwrap().report.is_gamma.is_true());

        let x = Universe::new(vec![Point::constant(false), Point::parse("(01)").unwrap()]).unwrap();
        assert!(matches!(tails_gamma(&zeros(), &x, 32), Err(Error::Precondition(_))));
    }

    #[test]
    fn least_element_picks() {
        assert_eq!(least_elements(&AInfWitness::tails()).unwrap().picks(4), vec![0, 1, 2, 3]);
        let odd = AInfWitness::list(vec![NatSet::odds()]);
        assert_eq!(least_elements(&odd).unwrap().picks(3), vec![1, 1, 1]);
        let paired = AInfWitness::new(IndexFamily::Paired {
            blocks: vec![NatSet::parse("0010(01)").unwrap(), NatSet::evens()],
        });
        let sel = least_elements(&paired).unwrap();
        for j in 0..60 {
            assert_eq!(sel.pick(j), paired.index_sets.set_at(j).unwrap().least(), "j={j}");
        }
    }

    #[test]
    fn constant_picks_lose_gamma() {
        let x = Universe::new(vec![Point::constant(false)]).unwrap();
        let out = select_from_witness(&AInfWitness::list(vec![NatSet::odds()]), &zeros(), &x, 32).unwrap();
        assert!(out.report.is_gamma.is_false());
        assert!(out.report.is_cover.is_true());

        let w = tails_gamma(&zeros(), &x, 32).unwrap();
        let out = select_from_witness(&w, &zeros(), &x, 32).unwrap();
        assert!(out.report.is_gamma.is_true() && out.preserved);
    }
}
