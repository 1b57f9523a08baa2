use serde::{Deserialize, Deserializer, Serialize};

use super::{CoverFamily, Incidence, KindReport, Profile, ProperMode, Selection, Universe, Verdict};
use crate::error::{Error, Result};
use crate::natsets::{progression_within, NatSet};
use crate::periodic::{gcd, lcm, Lasso};

/// Positions inspected when only finite evidence is available.
const EVIDENCE_CAP: u64 = 64;
/// Largest fiber exponent materialized as an explicit index set.
const MAX_FIBER_EXPONENT: u64 = 16;

/// A sequence `⟨A_n⟩` of infinite index sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
pub enum IndexFamily {
    /// `A_n = sets[n mod len]`.
    List { sets: Vec<NatSet> },
    /// `A_n = Tail(n)`.
    Tails,
    /// `A_j = blocks[j mod r] ∩ Tail(j div r)`.
    Paired { blocks: Vec<NatSet> },
    /// `A_n = {picks(m) : ν₂(m + 1) = offset + n·stride}`.
    Fibers { picks: Selection, stride: u64, offset: u64 },
}

impl IndexFamily {
    /// Every index set must be infinite.
    pub fn validate(&self) -> Result<()> {
        let check = |sets: &[NatSet]| -> Result<()> {
            if sets.is_empty() {
                return Err(Error::invalid("index family lists no sets"));
            }
            match sets.iter().position(|s| s.is_finite()) {
                Some(i) => Err(Error::FiniteIndexSet { position: i as u64 }),
                None => Ok(()),
            }
        };
        match self {
            IndexFamily::List { sets } => check(sets),
            IndexFamily::Paired { blocks } => check(blocks),
            IndexFamily::Tails => Ok(()),
            IndexFamily::Fibers { picks, .. } => match &picks.tail {
                Some(t) if t.cycle.is_empty() => Err(Error::invalid("fiber picks have an empty cycle")),
                Some(t) if t.step == 0 => Err(Error::FiniteIndexSet { position: 0 }),
                _ => Ok(()),
            },
        }
    }

    fn fiber_exponent(stride: u64, offset: u64, n: u64) -> u64 {
        offset + n * stride
    }

    /// The index set `A_n`.
    pub fn set_at(&self, n: u64) -> Result<NatSet> {
        match self {
            IndexFamily::List { sets } => Ok(sets[(n % sets.len() as u64) as usize].clone()),
            IndexFamily::Tails => Ok(NatSet::tail(n)),
            IndexFamily::Paired { blocks } => {
                let r = blocks.len() as u64;
                Ok(blocks[(n % r) as usize].intersection(&NatSet::tail(n / r)))
            }
            IndexFamily::Fibers { picks, stride, offset } => {
                let e = Self::fiber_exponent(*stride, *offset, n);
                if e > MAX_FIBER_EXPONENT {
                    return Err(Error::Budget(format!("fiber exponent {e} is too large to materialize")));
                }
                fiber_image(picks, (1 << e) - 1, 1 << (e + 1))
            }
        }
    }

    /// Infinitely many of the `A_n` are distinct.
    pub fn distinct_infinite(&self) -> Verdict {
        match self {
            IndexFamily::List { .. } => Verdict::False,
            IndexFamily::Tails | IndexFamily::Paired { .. } => Verdict::True,
            IndexFamily::Fibers { picks, stride, .. } => match picks.unbounded() {
                // Unbounded picks push min A_n to infinity along the fibers.
                Some(true) if *stride > 0 => Verdict::True,
                Some(_) => Verdict::False,
                None => Verdict::unknown("fiber picks are explicit only", picks.head.len() as u64),
            },
        }
    }

    /// `{n : A_n ⊆ inc}`: the incidence of a point in the derived family.
    pub fn derived(&self, inc: &Incidence) -> Incidence {
        let Incidence::Exact(inc) = inc else {
            return self.refuted_prefix(inc);
        };
        match self {
            IndexFamily::List { sets } => Incidence::Exact(
                NatSet::from_parts(vec![], sets.iter().map(|a| a.is_subset(inc)).collect())
                    .expect("list is nonempty"),
            ),
            IndexFamily::Tails => Incidence::Exact(match inc.cofinite_threshold() {
                Some(t) => NatSet::tail(t),
                None => NatSet::empty(),
            }),
            IndexFamily::Paired { blocks } => {
                let r = blocks.len() as u64;
                // A_b ∩ Tail(k) ⊆ inc iff k >= tau_b.
                let tau: Vec<Option<u64>> = blocks
                    .iter()
                    .map(|a| {
                        let bad = a.difference(inc);
                        bad.is_finite().then(|| bad.greatest().map_or(0, |m| m + 1))
                    })
                    .collect();
                let settle = tau.iter().flatten().copied().max().unwrap_or(0);
                Incidence::Exact(NatSet::from_fn(r * settle, r, |j| {
                    tau[(j % r) as usize].is_some_and(|t| j / r >= t)
                }))
            }
            IndexFamily::Fibers { picks, stride, offset } => {
                if !picks.is_total() {
                    return Incidence::Unknown;
                }
                let pulled = picks.pull_back(&Incidence::Exact(inc.clone()));
                let pulled = pulled.exact().expect("total picks pull back exactly");
                Incidence::Exact(fibers_within(pulled, *stride, *offset))
            }
        }
    }

    /// For partial evidence: positions `n` whose `A_n` is already refuted.
    fn refuted_prefix(&self, inc: &Incidence) -> Incidence {
        let mut bits = Vec::new();
        for n in 0..EVIDENCE_CAP {
            let Ok(a) = self.set_at(n) else { break };
            let known = match inc {
                Incidence::Prefix(b) => b.len() as u64,
                _ => 0,
            };
            let refuted = a.elements_below(known).into_iter().any(|m| inc.contains(m) == Some(false));
            if !refuted {
                break;
            }
            bits.push(false);
        }
        Incidence::Prefix(bits)
    }
}

/// `{picks(c + i·d) : i ∈ ℕ}` for a selection with a growing tail.
fn fiber_image(picks: &Selection, c: u64, d: u64) -> Result<NatSet> {
    let head = picks.head.len() as u64;
    let Some(t) = picks.tail.as_ref().filter(|t| !t.cycle.is_empty()) else {
        let known = (0..).map(|i| c + i * d).take_while(|&m| m < head).map(|m| picks.head[m as usize]);
        return Ok(NatSet::finite(known));
    };
    let p = t.cycle.len() as u64;
    let first_tail = if c >= head { 0 } else { (head - c).div_ceil(d) };
    // Past the head, i ↦ i + block adds `jump` to the pick.
    let block = p / gcd(d, p);
    let jump = (lcm(d, p) / p) * t.step;
    let mut out = NatSet::finite((0..first_tail).map(|i| picks.head[(c + i * d) as usize]));
    for i in first_tail..first_tail + block {
        let j = picks.pick(c + i * d).expect("tail is total");
        out = out.union(&NatSet::arith(j, jump));
    }
    Ok(out)
}

/// `{n : Arith(2^e − 1, 2^{e+1}) ⊆ set}` with `e = offset + n·stride`.
fn fibers_within(set: &NatSet, stride: u64, offset: u64) -> NatSet {
    let l = set.preperiod();
    let p = set.period();
    let residues = |e: u64| {
        let c = (pow2_mod(e, p) + 2 * p - 1 % p - l % p) % p;
        (c, pow2_mod(e + 1, p))
    };
    let ok = |&(c, d): &(u64, u64)| (0..p).all(|i| set.contains(l + (c + i * d) % p));
    let fiber_ok = |e: u64| {
        if e < 64 && (1u64 << e) - 1 < l {
            progression_within(set, (1 << e) - 1, 1 << (e + 1))
        } else {
            ok(&residues(e))
        }
    };
    if stride == 0 {
        return if fiber_ok(offset) { NatSet::full() } else { NatSet::empty() };
    }
    // Fibers starting below the preperiod are checked directly.
    let mut head = Vec::new();
    let mut e = offset;
    while e < 64 && (1u64 << e) - 1 < l {
        head.push(fiber_ok(e));
        e += stride;
    }
    // Afterwards only (start − L mod p, step mod p) matters.
    let advance = |s: &(u64, u64)| {
        let (mut c, mut d) = *s;
        for _ in 0..stride {
            c = (2 * c + l + 1) % p;
            d = 2 * d % p;
        }
        (c, d)
    };
    NatSet::from_lasso(Lasso::from_transitions(head, residues(e), advance, ok))
}

fn pow2_mod(e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    let mut b = 2 % p;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Data making a family a member of A∞: the index sets `⟨A_n⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AInfWitness {
    pub index_sets: IndexFamily,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IndexLiteral {
    Sets(Vec<NatSet>),
    Rule(IndexFamily),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWitness {
    index_sets: IndexLiteral,
}

impl<'de> Deserialize<'de> for AInfWitness {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let index_sets = match RawWitness::deserialize(d)?.index_sets {
            IndexLiteral::Sets(sets) => IndexFamily::List { sets },
            IndexLiteral::Rule(r) => r,
        };
        Ok(AInfWitness { index_sets })
    }
}

impl AInfWitness {
    pub fn new(index_sets: IndexFamily) -> Self {
        AInfWitness { index_sets }
    }

    pub fn tails() -> Self {
        AInfWitness::new(IndexFamily::Tails)
    }

    pub fn list(sets: Vec<NatSet>) -> Self {
        AInfWitness::new(IndexFamily::List { sets })
    }

    /// Incidence profile of the derived family `⟨⋂_{m ∈ A_n} U_m⟩`.
    pub fn derived_profile(&self, base: &Profile) -> Profile {
        Profile {
            incidences: base.incidences.iter().map(|i| self.index_sets.derived(i)).collect(),
            // ⋂_{m∈A} U_m is the whole space iff every U_m is.
            full: self.index_sets.derived(&base.full),
            infinite: self.index_sets.distinct_infinite(),
        }
    }
}

/// The derived family of an A∞ witness relative to a universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derived {
    pub profile: Profile,
    pub report: KindReport,
    /// Universe positions in the derived member `n`, for `n` below the trace horizon.
    pub traces: Vec<Vec<usize>>,
}

impl Derived {
    pub fn from_profile(profile: Profile, budget: u64, mode: ProperMode) -> Result<Derived> {
        let report = profile.classify(budget, mode)?;
        let shown = budget.min(16);
        let traces = (0..shown)
            .map(|n| {
                profile
                    .incidences
                    .iter()
                    .enumerate()
                    .filter(|(_, inc)| inc.contains(n) == Some(true))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok(Derived { profile, report, traces })
    }
}

/// Validates `w` and classifies the derived family of `u` relative to `x`.
pub fn a_infinity(u: &CoverFamily, w: &AInfWitness, x: &Universe, budget: u64) -> Result<Derived> {
    w.index_sets.validate()?;
    let base = u.profile(x)?;
    Derived::from_profile(w.derived_profile(&base), budget, ProperMode::Ambient)
}

/// Replaces each `U_n` by a superset `E_n` that is not the whole space.
///
/// Containment is checked for `n < horizon`; fullness exactly when `e`
/// decides it, otherwise within the horizon.
pub fn derefine(u: &CoverFamily, e: &CoverFamily, horizon: u64) -> Result<CoverFamily> {
    u.validate()?;
    e.validate()?;
    for n in 0..horizon {
        let (Some(small), Some(big)) = (u.member_at(n), e.member_at(n)) else { break };
        if !small.is_subset(&big) {
            return Err(Error::violation(format!("expansion at {n} does not contain the original member")));
        }
    }
    let full_at = match e.full_indices() {
        Incidence::Exact(s) => s.least(),
        other => (0..horizon).find(|&n| other.contains(n) == Some(true)),
    };
    if let Some(n) = full_at {
        return Err(Error::violation(format!("expansion at {n} is the whole space")));
    }
    Ok(e.clone())
}
