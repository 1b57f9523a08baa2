use serde::{Deserialize, Serialize};

use super::{Incidence, Profile, Selection, Universe, Verdict};
use crate::bits;
use crate::cantor::{ClopenSet, Point};
use crate::error::{Error, Result};
use crate::natsets::NatSet;
use crate::periodic::lcm;

/// Prefix length used when a family can only be inspected member by member.
const SCAN_CAP: u64 = 1 << 12;

/// A countably indexed family `⟨U_n⟩` of clopen sets.
///
/// Every variant except `Explicit` is rule based: membership of each point in
/// each member is decided exactly through an eventually periodic incidence set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoverFamily {
    /// A finite list of members; the family beyond it is unknown.
    Explicit { members: Vec<ClopenSet> },
    /// `U_n = [w·0^n]`.
    TailCylinder {
        #[serde(with = "bits::serde_word")]
        word: Vec<bool>,
    },
    /// Members listed by an eventually periodic schedule.
    Schedule {
        #[serde(default)]
        pre: Vec<ClopenSet>,
        per: Vec<ClopenSet>,
    },
    /// `U_n = base ∪ ⋃_y [y↾(n + offset)]`, shrinking towards `base ∪ anchors`.
    Anchored {
        #[serde(default = "ClopenSet::empty")]
        base: ClopenSet,
        anchors: Vec<Point>,
        #[serde(default)]
        offset: u64,
    },
    /// `U_n = base ∪ (space ∖ ⋃_z [z↾(n + offset)])`, growing towards
    /// everything but the holes.
    Punctured {
        #[serde(default = "ClopenSet::empty")]
        base: ClopenSet,
        holes: Vec<Point>,
        #[serde(default)]
        offset: u64,
    },
    /// Member `q = n·s + t` is member `slots[t](n)` of `covers[n mod r]`.
    Picked { covers: Vec<CoverFamily>, slots: Vec<Selection> },
}

impl CoverFamily {
    pub fn validate(&self) -> Result<()> {
        match self {
            CoverFamily::Explicit { members } if members.is_empty() => {
                Err(Error::invalid("explicit family needs at least one member"))
            }
            CoverFamily::Schedule { per, .. } if per.is_empty() => {
                Err(Error::invalid("schedule needs a nonempty periodic part"))
            }
            CoverFamily::Anchored { anchors, .. } if anchors.is_empty() => {
                Err(Error::invalid("anchored family needs at least one anchor"))
            }
            CoverFamily::Punctured { holes, .. } if holes.is_empty() => {
                Err(Error::invalid("punctured family needs at least one hole"))
            }
            CoverFamily::Picked { covers, slots } => {
                if covers.is_empty() || slots.is_empty() {
                    return Err(Error::invalid("picked family needs covers and slots"));
                }
                covers.iter().try_for_each(|c| c.validate())
            }
            _ => Ok(()),
        }
    }

    pub fn is_rule_based(&self) -> bool {
        match self {
            CoverFamily::Explicit { .. } => false,
            CoverFamily::Picked { covers, slots } => {
                covers.iter().all(|c| c.is_rule_based()) && slots.iter().all(|s| s.is_total())
            }
            _ => true,
        }
    }

    /// `[w·0^n]` as an anchored family.
    fn anchored_view(&self) -> Option<(ClopenSet, Vec<Point>, u64)> {
        match self {
            CoverFamily::TailCylinder { word } => {
                Some((ClopenSet::empty(), vec![Point::constant(false).prepend(word)], word.len() as u64))
            }
            CoverFamily::Anchored { base, anchors, offset } => Some((base.clone(), anchors.clone(), *offset)),
            _ => None,
        }
    }

    pub fn member_at(&self, n: u64) -> Option<ClopenSet> {
        if let Some((base, anchors, offset)) = self.anchored_view() {
            let cyl = anchors.iter().map(|y| ClopenSet::cylinder(&y.prefix(n + offset)));
            return Some(cyl.fold(base, |acc, c| acc.union(&c)));
        }
        match self {
            CoverFamily::Explicit { members } => members.get(n as usize).cloned(),
            CoverFamily::Schedule { pre, per } => Some(schedule_at(pre, per, n).clone()),
            CoverFamily::Punctured { base, holes, offset } => {
                let removed = holes
                    .iter()
                    .fold(ClopenSet::empty(), |acc, z| acc.union(&ClopenSet::cylinder(&z.prefix(n + offset))));
                Some(removed.complement().union(base))
            }
            CoverFamily::Picked { covers, slots } => {
                let s = slots.len() as u64;
                let (row, slot) = (n / s, n % s);
                let cover = &covers[(row % covers.len() as u64) as usize];
                cover.member_at(slots[slot as usize].pick(row)?)
            }
            CoverFamily::TailCylinder { .. } | CoverFamily::Anchored { .. } => unreachable!(),
        }
    }

    /// `{n : x ∈ U_n}`.
    pub fn incidence(&self, x: &Point) -> Incidence {
        if let Some((base, anchors, offset)) = self.anchored_view() {
            if base.contains(x) {
                return Incidence::Exact(NatSet::full());
            }
            let agree: Option<u64> = anchors.iter().map(|y| x.agreement(y)).try_fold(0u64, |m, a| a.map(|a| m.max(a)));
            return Incidence::Exact(match agree {
                None => NatSet::full(),
                Some(m) if m >= offset => NatSet::finite(0..=m - offset),
                Some(_) => NatSet::empty(),
            });
        }
        match self {
            CoverFamily::Explicit { members } => Incidence::Prefix(members.iter().map(|u| u.contains(x)).collect()),
            CoverFamily::Schedule { pre, per } => Incidence::Exact(
                NatSet::from_parts(pre.iter().map(|u| u.contains(x)).collect(), per.iter().map(|u| u.contains(x)).collect())
                    .expect("schedule period is nonempty"),
            ),
            CoverFamily::Punctured { base, holes, offset } => {
                if base.contains(x) {
                    return Incidence::Exact(NatSet::full());
                }
                let agree: Option<u64> = holes.iter().map(|z| x.agreement(z)).try_fold(0u64, |m, a| a.map(|a| m.max(a)));
                Incidence::Exact(match agree {
                    None => NatSet::empty(),
                    Some(m) => NatSet::tail((m + 1).saturating_sub(*offset)),
                })
            }
            CoverFamily::Picked { covers, slots } => picked(covers, slots, |c| c.incidence(x)),
            CoverFamily::TailCylinder { .. } | CoverFamily::Anchored { .. } => unreachable!(),
        }
    }

    /// Indices of members equal to the whole space.
    pub fn full_indices(&self) -> Incidence {
        if let Some((base, anchors, offset)) = self.anchored_view() {
            if base.is_full() {
                return Incidence::Exact(NatSet::full());
            }
            // Members shrink with n, so the full ones form an initial segment.
            let mut n = 0;
            while n < SCAN_CAP && {
                let u = anchors
                    .iter()
                    .fold(base.clone(), |acc, y| acc.union(&ClopenSet::cylinder(&y.prefix(n + offset))));
                u.is_full()
            } {
                n += 1;
            }
            return Incidence::Exact(NatSet::finite(0..n));
        }
        match self {
            CoverFamily::Explicit { members } => Incidence::Prefix(members.iter().map(|u| u.is_full()).collect()),
            CoverFamily::Schedule { pre, per } => Incidence::Exact(
                NatSet::from_parts(pre.iter().map(|u| u.is_full()).collect(), per.iter().map(|u| u.is_full()).collect())
                    .expect("schedule period is nonempty"),
            ),
            CoverFamily::Punctured { base, holes, offset } => {
                let depths: Option<Vec<u64>> = holes.iter().map(|z| base.covering_depth(z)).collect();
                Incidence::Exact(match depths {
                    Some(d) => NatSet::tail(d.into_iter().max().unwrap_or(0).saturating_sub(*offset)),
                    None => NatSet::empty(),
                })
            }
            CoverFamily::Picked { covers, slots } => picked(covers, slots, |c| c.full_indices()),
            CoverFamily::TailCylinder { .. } | CoverFamily::Anchored { .. } => unreachable!(),
        }
    }

    /// Whether the family has infinitely many distinct members.
    pub fn infinite(&self) -> Verdict {
        if let Some((base, anchors, _)) = self.anchored_view() {
            return Verdict::from_bool(anchors.iter().any(|y| !base.contains(y)));
        }
        match self {
            CoverFamily::Explicit { members } => Verdict::unknown(
                format!("explicit family lists {} members; the rest is unknown", members.len()),
                members.len() as u64,
            ),
            CoverFamily::Schedule { .. } => Verdict::False,
            CoverFamily::Punctured { base, holes, .. } => Verdict::from_bool(holes.iter().any(|z| !base.contains(z))),
            CoverFamily::Picked { covers, slots } => {
                let growth: Option<Vec<bool>> = slots.iter().map(|s| s.unbounded()).collect();
                match growth {
                    None => Verdict::unknown("selection has no tail rule", slots.iter().map(|s| s.head.len()).max().unwrap_or(0) as u64),
                    Some(g) if !g.iter().any(|&b| b) => Verdict::False,
                    Some(_) => match Verdict::all(covers.iter().map(|c| c.injective())) {
                        Verdict::True => Verdict::True,
                        _ => Verdict::unknown("picks grow but a source family is not known to be injective", 0),
                    },
                }
            }
            CoverFamily::TailCylinder { .. } | CoverFamily::Anchored { .. } => unreachable!(),
        }
    }

    /// Whether `n ↦ U_n` is injective (a bijective enumeration of its range).
    pub fn injective(&self) -> Verdict {
        match self {
            CoverFamily::TailCylinder { .. } => Verdict::True,
            CoverFamily::Schedule { .. } => Verdict::False,
            CoverFamily::Explicit { members } => {
                if self.duplicate_pair(members.len() as u64).is_some() {
                    Verdict::False
                } else {
                    Verdict::unknown("explicit family: members past the list are unknown", members.len() as u64)
                }
            }
            CoverFamily::Anchored { base, anchors: moving, .. } | CoverFamily::Punctured { base, holes: moving, .. } => {
                if !self.infinite().is_true() {
                    return Verdict::False;
                }
                // Monotone in n, and strictly so once the cylinders are deeper
                // than the base and than any agreement between moving points.
                let mut stable = base.depth() as u64;
                for (i, a) in moving.iter().enumerate() {
                    for b in &moving[..i] {
                        stable = stable.max(a.agreement(b).unwrap_or(0));
                    }
                }
                let offset = match self {
                    CoverFamily::Anchored { offset, .. } | CoverFamily::Punctured { offset, .. } => *offset,
                    _ => 0,
                };
                let last = (stable + 1).saturating_sub(offset);
                let consecutive_equal = (0..=last).any(|n| self.member_at(n) == self.member_at(n + 1));
                Verdict::from_bool(!consecutive_equal)
            }
            CoverFamily::Picked { .. } => Verdict::unknown("injectivity of picked families is not tracked", 0),
        }
    }

    /// First pair `i < j < horizon` with `U_i = U_j`.
    pub fn duplicate_pair(&self, horizon: u64) -> Option<(u64, u64)> {
        let members: Vec<ClopenSet> = (0..horizon).map_while(|n| self.member_at(n)).collect();
        for (j, b) in members.iter().enumerate() {
            if let Some(i) = members[..j].iter().position(|a| a == b) {
                return Some((i as u64, j as u64));
            }
        }
        None
    }

    pub fn profile(&self, universe: &Universe) -> Result<Profile> {
        self.validate()?;
        Ok(Profile {
            incidences: universe.points().iter().map(|x| self.incidence(x)).collect(),
            full: self.full_indices(),
            infinite: self.infinite(),
        })
    }
}

fn schedule_at<'a>(pre: &'a [ClopenSet], per: &'a [ClopenSet], n: u64) -> &'a ClopenSet {
    let l = pre.len() as u64;
    if n < l {
        &pre[n as usize]
    } else {
        &per[((n - l) % per.len() as u64) as usize]
    }
}

/// Incidence of a picked family, given the matching incidence of each source.
fn picked(covers: &[CoverFamily], slots: &[Selection], source: impl Fn(&CoverFamily) -> Incidence) -> Incidence {
    let incs: Vec<Incidence> = covers.iter().map(source).collect();
    let r = covers.len() as u64;
    let s = slots.len() as u64;
    let bit = |q: u64| -> Option<bool> {
        let (row, slot) = (q / s, q % s);
        let m = slots[slot as usize].pick(row)?;
        incs[(row % r) as usize].contains(m)
    };
    let exact: Option<Vec<&NatSet>> = incs.iter().map(|i| i.exact()).collect();
    match exact {
        Some(sets) if slots.iter().all(|t| t.is_total()) => {
            let max_pre = sets.iter().map(|x| x.preperiod()).max().unwrap_or(0);
            let period = sets.iter().fold(1, |acc, x| lcm(acc, x.period()));
            let start = slots
                .iter()
                .map(|t| t.eventually_at_least(max_pre).unwrap_or(t.head.len() as u64))
                .max()
                .unwrap_or(0);
            let rows = slots.iter().fold(r, |acc, t| lcm(acc, t.residue_period(period)));
            Incidence::Exact(NatSet::from_fn(s * start, s * rows, |q| bit(q).unwrap()))
        }
        _ => Incidence::Prefix((0..SCAN_CAP).map_while(bit).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::classify;

    fn w(s: &str) -> Vec<bool> {
        bits::parse(s).unwrap()
    }

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    fn brute_incidence(f: &CoverFamily, x: &Point, n: u64) -> Vec<bool> {
        (0..n).map(|k| f.member_at(k).unwrap().contains(x)).collect()
    }

    fn zeros() -> CoverFamily {
        CoverFamily::TailCylinder { word: vec![] }
    }

    #[test]
    fn classify_tail_cylinder_examples() {
        let x = Universe::new(vec![Point::constant(false)]).unwrap();
        let r = classify(&zeros(), &x, 64).unwrap();
        assert!(r.is_cover.is_true() && r.is_gamma.is_true());
        // U_0 = [ε] is the whole space.
        assert!(r.proper.is_false());

        let x = Universe::new(vec![Point::constant(false), pt("(01)")]).unwrap();
        assert_eq!(zeros().incidence(&pt("(01)")), Incidence::Exact(NatSet::finite([0, 1])));
        let r = classify(&zeros(), &x, 64).unwrap();
        assert!(r.is_gamma.is_false());
    }

    #[test]
    fn explicit_gamma_is_unknown() {
        let f = CoverFamily::Explicit {
            members: vec![ClopenSet::cylinder(&w("0")), ClopenSet::cylinder(&w("1")), ClopenSet::cylinder(&w("00"))],
        };
        let x = Universe::new(vec![Point::constant(false)]).unwrap();
        let r = classify(&f, &x, 7).unwrap();
        assert!(r.is_gamma.is_unknown());
        assert!(r.is_cover.is_true());
    }

    #[test]
    fn incidences_agree_with_members() {
        let pts = [pt("(0)"), pt("(1)"), pt("01(1)"), pt("(01)"), pt("1(0)"), pt("0011(0)")];
        let fams = [
            zeros(),
            CoverFamily::TailCylinder { word: w("01") },
            CoverFamily::Anchored { base: ClopenSet::cylinder(&w("11")), anchors: vec![pt("(01)"), pt("0(0)")], offset: 1 },
            CoverFamily::Punctured { base: ClopenSet::cylinder(&w("10")), holes: vec![pt("(1)"), pt("00(1)")], offset: 2 },
            CoverFamily::Schedule {
                pre: vec![ClopenSet::full()],
                per: vec![ClopenSet::cylinder(&w("0")), ClopenSet::cylinder(&w("01"))],
            },
            CoverFamily::Picked {
                covers: vec![zeros(), CoverFamily::Punctured { base: ClopenSet::empty(), holes: vec![pt("(1)")], offset: 0 }],
                slots: vec![Selection::affine(vec![3], 2, 1), Selection::periodic(vec![0, 4])],
            },
        ];
        for f in &fams {
            for x in &pts {
                let inc = f.incidence(x);
                let exact = inc.exact().expect("rule families are exact");
                let got: Vec<bool> = (0..40).map(|n| exact.contains(n)).collect();
                assert_eq!(got, brute_incidence(f, x, 40), "{f:?} at {x}");
            }
            let full = f.full_indices();
            let full = full.exact().unwrap();
            for n in 0..40 {
                assert_eq!(full.contains(n), f.member_at(n).unwrap().is_full(), "{f:?} full at {n}");
            }
        }
    }

    #[test]
    fn injectivity_and_infinitude() {
        assert!(zeros().injective().is_true());
        let a = CoverFamily::Anchored { base: ClopenSet::cylinder(&w("0")), anchors: vec![pt("(0)")], offset: 0 };
        assert!(a.infinite().is_false() && a.injective().is_false());
        let p = CoverFamily::Punctured { base: ClopenSet::empty(), holes: vec![pt("(1)")], offset: 0 };
        assert!(p.infinite().is_true() && p.injective().is_true());
        // Two holes that agree for a while produce repeated members early on.
        let q = CoverFamily::Punctured { base: ClopenSet::cylinder(&w("1")), holes: vec![pt("(0)")], offset: 0 };
        assert!(q.injective().is_false());
        assert_eq!(q.duplicate_pair(5), Some((0, 1)));
    }
}
