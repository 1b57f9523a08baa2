use serde::Serialize;

use crate::covers::{a_infinity, classify, AInfWitness, CoverFamily, KindReport, Selection, Universe};
use crate::error::{Error, Result};
use crate::natsets::NatSet;

/// `⋃_n F_n` with `F_n = {slots[t](n) : t}` read from `𝒰_{n mod r}`; member
/// `q = n·s + t` of the combined family is slot `t` of `F_n`.
pub fn combined_family(covers: &[CoverFamily], slots: &[Selection]) -> CoverFamily {
    CoverFamily::Picked { covers: covers.to_vec(), slots: slots.to_vec() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SakaiOutput {
    /// `m_n` for the assigned positions, strictly increasing.
    pub assigned: Vec<u64>,
    /// Member index chosen in `𝒰_k` for every `k` up to the last assignment.
    pub selection: Selection,
    pub family: CoverFamily,
    pub report: KindReport,
    pub derived_report: KindReport,
}

/// Turns an A∞(Ω) witness over the combined finite selections into a single
/// selection forming an ω-cover.
pub fn sakai_s1(
    covers: &[CoverFamily],
    slots: &[Selection],
    w: &AInfWitness,
    x: &Universe,
    horizon: u64,
) -> Result<SakaiOutput> {
    if covers.is_empty() || slots.is_empty() {
        return Err(Error::invalid("sakai needs covers and finite selections"));
    }
    let combined = combined_family(covers, slots);
    let derived = a_infinity(&combined, w, x, horizon)?;
    if !derived.report.is_omega.is_true() {
        return Err(Error::precondition(format!(
            "witness does not make the combined selections an ω-cover ({:?})",
            derived.report.is_omega
        )));
    }
    let incs: Vec<&NatSet> = derived
        .profile
        .incidences
        .iter()
        .map(|i| i.exact().ok_or_else(|| Error::precondition("derived incidence is not exact")))
        .collect::<Result<_>>()?;

    // Enough positions that every subset of the universe meets a derived member.
    let k = incs.len();
    let mut needed = 0u64;
    for mask in 1usize..(1 << k) {
        let common = (0..k).filter(|i| mask >> i & 1 == 1).fold(NatSet::full(), |acc, i| acc.intersection(incs[i]));
        needed = needed.max(common.least().expect("ω verified") + 1);
    }

    let s = slots.len() as u64;
    let mut assigned = Vec::new();
    let mut chosen: Vec<(u64, u64)> = Vec::new();
    let mut prev: Option<u64> = None;
    for n in 0..needed {
        let a = w.index_sets.set_at(n)?;
        let from = prev.map_or(0, |m| (m + 1) * s);
        let q = a.min_at_least(from).expect("index sets are infinite");
        let m = q / s;
        if m >= horizon {
            return Err(Error::Horizon { reason: format!("no admissible assignment for position {n} below the horizon"), horizon });
        }
        let member = slots[(q % s) as usize]
            .pick(m)
            .ok_or_else(|| Error::Horizon { reason: format!("finite selection {m} is not defined"), horizon })?;
        // Refinement: the derived member n lies inside the picked member.
        let picked = covers[(m % covers.len() as u64) as usize].member_at(member).expect("rule-based cover");
        for (p, inc) in x.points().iter().zip(&incs) {
            if inc.contains(n) && !picked.contains(p) {
                return Err(Error::violation(format!("derived member {n} is not inside the picked member at {m}")));
            }
        }
        assigned.push(m);
        chosen.push((m, member));
        prev = Some(m);
    }

    let last = prev.unwrap_or(0);
    let head = (0..=last).map(|kk| chosen.iter().find(|(m, _)| *m == kk).map_or(0, |&(_, member)| member)).collect();
    let selection = Selection::explicit(head);
    let family = CoverFamily::Picked { covers: covers.to_vec(), slots: vec![selection.clone()] };
    let report = classify(&family, x, horizon)?;
    if !report.is_omega.is_true() {
        return Err(Error::violation(format!("selection is not an ω-cover: {:?}", report.is_omega)));
    }
    Ok(SakaiOutput { assigned, selection, family, report, derived_report: derived.report })
}
