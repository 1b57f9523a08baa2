use serde::{Deserialize, Serialize};

use crate::covers::{a_infinity, classify, AInfWitness, CoverFamily, Derived, IndexFamily, Incidence, Universe, Verdict};
use crate::error::{Error, Result};
use crate::natsets::{FamilyDiagnostics, NatFamily, NatSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarczewskiImage {
    /// `μ(x) = {n : x ∈ U_n}` in universe order.
    pub family: NatFamily,
    pub diagnostics: FamilyDiagnostics,
    pub is_omega: Verdict,
    /// False exactly when the family is an ω-cover but its image is not centered.
    pub centered_if_omega: Verdict,
}

fn exact_incidences(u: &CoverFamily, x: &Universe) -> Result<Vec<NatSet>> {
    x.points()
        .iter()
        .map(|p| match u.incidence(p) {
            Incidence::Exact(s) => Ok(s),
            _ => Err(Error::precondition("family has no exact incidence sets")),
        })
        .collect()
}

/// The image of the universe under the Marczewski function of `u`.
pub fn marczewski_map(u: &CoverFamily, x: &Universe, horizon: u64) -> Result<MarczewskiImage> {
    if let Some((i, j)) = u.duplicate_pair(horizon) {
        return Err(Error::violation(format!("members {i} and {j} coincide, so the enumeration is not bijective")));
    }
    if u.injective().is_false() {
        return Err(Error::violation("the enumeration repeats members"));
    }
    let family = NatFamily::new(exact_incidences(u, x)?);
    let diagnostics = family.diagnostics();
    let is_omega = classify(u, x, horizon)?.is_omega;
    let centered_if_omega = match &is_omega {
        Verdict::True => Verdict::from_bool(diagnostics.centered),
        _ => Verdict::True,
    };
    Ok(MarczewskiImage { family, diagnostics, is_omega, centered_if_omega })
}

/// One block `(A_n, 𝒻_n)` with `𝒻_n = {μ(x) : A_n ⊆ μ(x)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Block {
    pub index: u64,
    pub set: NatSet,
    /// Universe positions whose images belong to the block.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Decomposition {
    pub blocks: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForwardOutput {
    pub image: NatFamily,
    pub decomposition: Decomposition,
    /// Every image lies in some block.
    pub covers_image: bool,
    /// Each block's set is a pseudo-intersection of its images.
    pub pseudo_intersections: bool,
}

/// Splits the image of the universe into blocks with pseudo-intersections.
pub fn omochar_forward(w: &AInfWitness, u: &CoverFamily, x: &Universe, budget: u64) -> Result<ForwardOutput> {
    let derived = a_infinity(u, w, x, budget)?;
    if !derived.report.is_cover.is_true() {
        return Err(Error::precondition(format!("derived family is not a cover ({:?})", derived.report.is_cover)));
    }
    let mu = exact_incidences(u, x)?;
    let mut chosen: Vec<u64> = Vec::new();
    for inc in &derived.profile.incidences {
        let n = inc.exact().and_then(|s| s.least()).expect("cover verified exactly");
        if !chosen.contains(&n) {
            chosen.push(n);
        }
    }
    chosen.sort_unstable();
    let mut blocks = Vec::new();
    for n in chosen {
        let set = w.index_sets.set_at(n)?;
        let members = (0..mu.len()).filter(|&i| set.is_subset(&mu[i])).collect();
        blocks.push(Block { index: n, set, members });
    }
    let covers_image = (0..mu.len()).all(|i| blocks.iter().any(|b| b.members.contains(&i)));
    let pseudo_intersections = blocks.iter().all(|b| {
        NatFamily::new(b.members.iter().map(|&i| mu[i].clone()).collect()).has_pseudo_intersection(&b.set)
    });
    if !covers_image || !pseudo_intersections {
        return Err(Error::violation("decomposition fails its own verification"));
    }
    Ok(ForwardOutput { image: NatFamily::new(mu), decomposition: Decomposition { blocks }, covers_image, pseudo_intersections })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BackwardOutput {
    pub witness: AInfWitness,
    pub derived: Derived,
}

/// Rebuilds an A∞(𝒪) witness `{k ∈ A_n : k >= m}` from a decomposition.
pub fn omochar_backward(d: &Decomposition, u: &CoverFamily, x: &Universe, budget: u64) -> Result<BackwardOutput> {
    if d.blocks.is_empty() {
        return Err(Error::invalid("decomposition has no blocks"));
    }
    let mu = exact_incidences(u, x)?;
    let mut problems = Vec::new();
    for (b, block) in d.blocks.iter().enumerate() {
        if block.set.is_finite() {
            return Err(Error::FiniteIndexSet { position: b as u64 });
        }
        for &i in &block.members {
            match mu.get(i) {
                None => problems.push(format!("block {b} names point {i} outside the universe")),
                Some(m) if !block.set.almost_subset(m) => {
                    problems.push(format!("block {b}: set is not almost contained in the image of point {i}"))
                }
                _ => {}
            }
        }
    }
    for i in 0..mu.len() {
        if !d.blocks.iter().any(|b| b.members.contains(&i)) {
            problems.push(format!("image of point {i} lies in no block"));
        }
    }
    if !problems.is_empty() {
        return Err(Error::precondition(problems.join("; ")));
    }
    let witness = AInfWitness::new(IndexFamily::Paired { blocks: d.blocks.iter().map(|b| b.set.clone()).collect() });
    let derived = a_infinity(u, &witness, x, budget)?;
    if !derived.report.is_cover.is_true() {
        return Err(Error::violation(format!("rebuilt witness does not give a cover ({:?})", derived.report.is_cover)));
    }
    Ok(BackwardOutput { witness, derived })
}
