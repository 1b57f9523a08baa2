use serde::Serialize;

use crate::covers::{AInfWitness, CoverFamily, Incidence, Profile, Universe, Verdict};
use crate::error::{Error, Result};

/// Largest power handled.
pub const MAX_POWER: usize = 4;

/// Incidences of `U^k` at the points of `X^k`. A tuple lies in `U^k` iff each
/// coordinate lies in `U`, so a tuple is represented by its set of
/// coordinates; `masks[i]` lists them as bitmasks over the universe.
pub fn power_profile(u: &CoverFamily, x: &Universe, k: usize) -> Result<(Profile, Vec<usize>)> {
    if k < 1 || k > MAX_POWER {
        return Err(Error::invalid(format!("power {k} is outside 1..={MAX_POWER}")));
    }
    let base = u.profile(x)?;
    let n = x.len();
    let masks: Vec<usize> = (1usize..(1 << n)).filter(|m| (m.count_ones() as usize) <= k).collect();
    let incidences = masks
        .iter()
        .map(|&m| {
            (0..n)
                .filter(|i| m >> i & 1 == 1)
                .fold(Incidence::Exact(crate::NatSet::full()), |acc, i| acc.intersect(&base.incidences[i]))
        })
        .collect();
    // U^k is the whole power iff U is the whole space; U ↦ U^k is injective.
    Ok((Profile { incidences, full: base.full, infinite: base.infinite }, masks))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowersReport {
    pub max_power: usize,
    /// Whether the derived family of the `k`-th witness covers `X^k`.
    pub power_covers: Vec<Verdict>,
    /// Every `F ⊆ X` with `|F| <= K` lies in one member `⋂𝒱_{k,n}`.
    pub is_omega_upto: Verdict,
    /// Universe positions in `⋂𝒱_{k,n}` for each `k` and small `n`.
    pub traces: Vec<Vec<Vec<usize>>>,
}

/// Assembles `{⋂𝒱_{k,n}}` from witnesses for the powers `U^k`, `k = 1..=K`.
pub fn powers_lift(u: &CoverFamily, x: &Universe, witnesses: &[AInfWitness], max_power: usize, budget: u64) -> Result<PowersReport> {
    if max_power < 1 {
        return Err(Error::invalid("the largest power must be at least 1"));
    }
    if witnesses.len() < max_power {
        return Err(Error::invalid(format!("missing witness for power {}", witnesses.len() + 1)));
    }
    let base = u.profile(x)?;
    let mut power_covers = Vec::new();
    let mut traces = Vec::new();
    for (i, w) in witnesses.iter().take(max_power).enumerate() {
        w.index_sets.validate()?;
        let (profile, _) = power_profile(u, x, i + 1)?;
        let derived = w.derived_profile(&profile);
        let covers = derived.cover_verdict(budget);
        if covers.is_false() {
            return Err(Error::violation(format!("witness {} does not give a cover of the power {}", i, i + 1)));
        }
        power_covers.push(covers);
        let per_point: Vec<Incidence> = base.incidences.iter().map(|inc| w.index_sets.derived(inc)).collect();
        traces.push(
            (0..budget.min(8))
                .map(|n| (0..x.len()).filter(|&p| per_point[p].contains(n) == Some(true)).collect())
                .collect(),
        );
    }
    // A set F is handled by the member ⋂𝒱_{k,n} iff n ∈ derived_k(⋂_{x∈F} μ(x)).
    let (profile, _) = power_profile(u, x, max_power)?;
    let is_omega_upto = Verdict::all(profile.incidences.iter().map(|inc| {
        let per_k: Vec<Verdict> = witnesses
            .iter()
            .take(max_power)
            .map(|w| Profile { incidences: vec![w.index_sets.derived(inc)], full: Incidence::Unknown, infinite: Verdict::True }.cover_verdict(budget))
            .collect();
        if per_k.iter().any(Verdict::is_true) {
            Verdict::True
        } else {
            Verdict::all(per_k)
        }
    }));
    Ok(PowersReport { max_power, power_covers, is_omega_upto, traces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ClopenSet, Point};

    fn both() -> (CoverFamily, Universe) {
        let pts = vec![Point::constant(false), Point::constant(true)];
        let u = CoverFamily::Anchored { base: ClopenSet::empty(), anchors: pts.clone(), offset: 2 };
        (u, Universe::new(pts).unwrap())
    }

    #[test]
    fn k_one_is_cover() {
        let (u, x) = both();
        let out = powers_lift(&u, &x, &[AInfWitness::tails()], 1, 32).unwrap();
        assert!(out.power_covers[0].is_true() && out.is_omega_upto.is_true());
    }

    #[test]
    fn two_points_squared() {
        let (u, x) = both();
        let out = powers_lift(&u, &x, &[AInfWitness::tails(), AInfWitness::tails()], 2, 32).unwrap();
        assert!(out.is_omega_upto.is_true());
        assert!(powers_lift(&u, &x, &[AInfWitness::tails()], 2, 32).is_err());
        assert!(powers_lift(&u, &x, &[], 0, 32).is_err());
    }
}
