//! Countably indexed cover families over a finite universe of points.
//!
//! Every family answers, for each point `x`, its incidence set
//! `{n : x ∈ U_n}`. Cover, ω-cover and γ-cover reduce to questions about
//! these sets, and the A∞ operator acts on them through the witness's index
//! sets. All verdicts are relative to the finite [`Universe`].

mod family;
mod selection;
mod witness;

use serde::{Deserialize, Serialize};

use crate::cantor::Point;
use crate::error::{Error, Result};
use crate::natsets::NatSet;

pub use family::CoverFamily;
pub use selection::{PickTail, Selection};
pub use witness::{a_infinity, derefine, AInfWitness, Derived, IndexFamily};

/// Largest universe for which ω-covers are checked over every subset.
pub const MAX_OMEGA_UNIVERSE: usize = 12;

/// A finite sample of points standing in for the space being covered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Universe {
    points: Vec<Point>,
}

impl Universe {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("universe must be nonempty"));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::invalid(format!("universe lists point {p} twice")));
            }
        }
        Ok(Universe { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl<'de> Deserialize<'de> for Universe {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Universe::new(Vec::<Point>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Three-valued outcome of a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Unknown { reason: String, horizon: u64 },
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn unknown(reason: impl Into<String>, horizon: u64) -> Verdict {
        Verdict::Unknown { reason: reason.into(), horizon }
    }

    pub fn is_true(&self) -> bool {
        *self == Verdict::True
    }

    pub fn is_false(&self) -> bool {
        *self == Verdict::False
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    /// False dominates, then Unknown.
    pub fn all(items: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut pending = None;
        for v in items {
            match v {
                Verdict::False => return Verdict::False,
                Verdict::True => {}
                u @ Verdict::Unknown { .. } => {
                    pending.get_or_insert(u);
                }
            }
        }
        pending.unwrap_or(Verdict::True)
    }
}

/// What is known about `{n : x ∈ U_n}` for one point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Incidence {
    Exact(NatSet),
    /// Membership known for `n < bits.len()` only.
    Prefix(Vec<bool>),
    Unknown,
}

impl Incidence {
    pub fn contains(&self, n: u64) -> Option<bool> {
        match self {
            Incidence::Exact(s) => Some(s.contains(n)),
            Incidence::Prefix(b) => b.get(n as usize).copied(),
            Incidence::Unknown => None,
        }
    }

    pub fn exact(&self) -> Option<&NatSet> {
        match self {
            Incidence::Exact(s) => Some(s),
            _ => None,
        }
    }

    pub fn intersect(&self, other: &Incidence) -> Incidence {
        use Incidence::*;
        match (self, other) {
            (Exact(a), _) if a.is_empty() => Exact(a.clone()),
            (_, Exact(b)) if b.is_empty() => Exact(b.clone()),
            (Exact(a), Exact(b)) => Exact(a.intersection(b)),
            (Exact(a), Prefix(b)) | (Prefix(b), Exact(a)) => {
                Prefix(b.iter().enumerate().map(|(n, &v)| v && a.contains(n as u64)).collect())
            }
            (Prefix(a), Prefix(b)) => Prefix(a.iter().zip(b).map(|(&x, &y)| x && y).collect()),
            _ => Unknown,
        }
    }

    /// Nonempty: `True`, `False`, or `Unknown` when only a prefix is known.
    fn nonempty(&self, horizon: u64) -> Verdict {
        match self {
            Incidence::Exact(s) => Verdict::from_bool(!s.is_empty()),
            Incidence::Prefix(b) if b.iter().any(|&v| v) => Verdict::True,
            Incidence::Prefix(b) => Verdict::unknown(
                format!("no member among the first {} contains the points; later members unknown", b.len()),
                horizon,
            ),
            Incidence::Unknown => Verdict::unknown("incidence not decidable for this family", horizon),
        }
    }

    fn cofinite(&self, horizon: u64) -> Verdict {
        match self {
            Incidence::Exact(s) => Verdict::from_bool(s.is_cofinite()),
            _ => Verdict::unknown("finite evidence cannot decide membership in all but finitely many members", horizon),
        }
    }
}

/// Per-point incidences of a family, with the indices of members equal to the
/// whole space and whether the family has infinitely many distinct members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub incidences: Vec<Incidence>,
    pub full: Incidence,
    pub infinite: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProperMode {
    /// No member is the whole Cantor space.
    #[default]
    Ambient,
    /// Additionally, no member contains every point of the universe.
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KindReport {
    pub is_cover: Verdict,
    pub is_omega: Verdict,
    pub is_gamma: Verdict,
    pub proper: Verdict,
    /// Number of universe points the verdicts are relative to.
    pub relative_to: usize,
}

impl KindReport {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 4] {
        [
            ("is_cover", &self.is_cover),
            ("is_omega", &self.is_omega),
            ("is_gamma", &self.is_gamma),
            ("proper", &self.proper),
        ]
    }

    /// Every True verdict of `self` among cover/ω/γ is also True in `other`.
    pub fn true_kinds_preserved_in(&self, other: &KindReport) -> bool {
        [(&self.is_cover, &other.is_cover), (&self.is_omega, &other.is_omega), (&self.is_gamma, &other.is_gamma)]
            .iter()
            .all(|(a, b)| !a.is_true() || b.is_true())
    }
}

impl Profile {
    /// Every point lies in some member; needs no subset enumeration.
    pub fn cover_verdict(&self, horizon: u64) -> Verdict {
        Verdict::all(self.incidences.iter().map(|i| i.nonempty(horizon)))
    }

    pub fn classify(&self, horizon: u64, mode: ProperMode) -> Result<KindReport> {
        let k = self.incidences.len();
        if k == 0 {
            return Err(Error::invalid("cannot classify over an empty universe"));
        }
        if k > MAX_OMEGA_UNIVERSE {
            return Err(Error::Budget(format!(
                "universe of {k} points exceeds the exact ω-check cap of {MAX_OMEGA_UNIVERSE}"
            )));
        }

        let is_cover = self.cover_verdict(horizon);

        // Intersections over all nonempty subsets, built from smaller subsets.
        let mut inter: Vec<Incidence> = Vec::with_capacity(1 << k);
        inter.push(Incidence::Exact(NatSet::full()));
        for mask in 1usize..(1 << k) {
            let low = mask.trailing_zeros() as usize;
            let rest = inter[mask & (mask - 1)].clone();
            inter.push(rest.intersect(&self.incidences[low]));
        }
        let is_omega = Verdict::all(inter[1..].iter().map(|i| i.nonempty(horizon)));

        let cofinite = Verdict::all(self.incidences.iter().map(|i| i.cofinite(horizon)));
        let is_gamma = Verdict::all([self.infinite.clone(), cofinite]);

        let ambient = match &self.full {
            Incidence::Exact(s) => Verdict::from_bool(s.is_empty()),
            Incidence::Prefix(b) if b.iter().any(|&v| v) => Verdict::False,
            _ => Verdict::unknown("members past the known prefix may be the whole space", horizon),
        };
        let proper = match mode {
            ProperMode::Ambient => ambient,
            ProperMode::Strict => {
                let some_member_has_all = inter[(1 << k) - 1].nonempty(horizon);
                let no_member_has_all = match some_member_has_all {
                    Verdict::True => Verdict::False,
                    Verdict::False => Verdict::True,
                    u => u,
                };
                Verdict::all([ambient, no_member_has_all])
            }
        };

        Ok(KindReport { is_cover, is_omega, is_gamma, proper, relative_to: k })
    }
}

/// Cover, ω-cover, γ-cover and properness of `family` relative to `universe`.
pub fn classify(family: &CoverFamily, universe: &Universe, budget: u64) -> Result<KindReport> {
    family.profile(universe)?.classify(budget, ProperMode::Ambient)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_all_orders() {
        assert_eq!(Verdict::all([Verdict::True, Verdict::True]), Verdict::True);
        assert_eq!(Verdict::all([Verdict::unknown("u", 1), Verdict::False]), Verdict::False);
        assert!(Verdict::all([Verdict::True, Verdict::unknown("u", 1)]).is_unknown());
    }

    #[test]
    fn universe_rejects_duplicates_and_empty() {
        assert!(Universe::new(vec![]).is_err());
        let p = Point::constant(false);
        assert!(Universe::new(vec![p.clone(), p]).is_err());
    }

    #[test]
    fn profile_classification_chain() {
        // γ ⇒ ω ⇒ cover on a hand-made exact profile.
        let p = Profile {
            incidences: vec![Incidence::Exact(NatSet::tail(2)), Incidence::Exact(NatSet::tail(5))],
            full: Incidence::Exact(NatSet::empty()),
            infinite: Verdict::True,
        };
        let r = p.classify(10, ProperMode::Ambient).unwrap();
        assert!(r.is_gamma.is_true() && r.is_omega.is_true() && r.is_cover.is_true() && r.proper.is_true());
        let strict = p.classify(10, ProperMode::Strict).unwrap();
        assert!(strict.proper.is_false());
    }

    #[test]
    fn omega_fails_on_disjoint_incidences() {
        let p = Profile {
            incidences: vec![Incidence::Exact(NatSet::evens()), Incidence::Exact(NatSet::odds())],
            full: Incidence::Exact(NatSet::empty()),
            infinite: Verdict::True,
        };
        let r = p.classify(10, ProperMode::Ambient).unwrap();
        assert!(r.is_cover.is_true() && r.is_omega.is_false() && r.is_gamma.is_false());
    }
}
