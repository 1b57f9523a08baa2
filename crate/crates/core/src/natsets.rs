//! Eventually periodic subsets of ℕ and finite families of them.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits;
use crate::error::{Error, Result};
use crate::periodic::{gcd, Lasso};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoolOp {
    Union,
    Intersect,
    Difference,
    Complement,
}

/// An eventually periodic subset of ℕ: membership of `0..L` is given by the
/// preperiod word, membership of `L + i` by bit `i mod p` of the period word.
///
/// Values are kept in canonical form, so `==` is extensional equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatSet(Lasso);

impl NatSet {
    pub fn from_parts(pre: Vec<bool>, per: Vec<bool>) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::invalid("period word of a NatSet must be nonempty"));
        }
        Ok(NatSet(Lasso::new(pre, per)))
    }

    /// Membership of `n` is `f(n)`; the caller promises `f(n + period) == f(n)`
    /// for every `n >= pre_len`.
    pub fn from_fn(pre_len: u64, period: u64, f: impl Fn(u64) -> bool) -> Self {
        NatSet(Lasso::from_fn(pre_len, period.max(1), f))
    }

    pub(crate) fn from_lasso(l: Lasso) -> Self {
        NatSet(l)
    }

    pub fn empty() -> Self {
        NatSet(Lasso::constant(false))
    }

    pub fn full() -> Self {
        NatSet(Lasso::constant(true))
    }

    /// `{n : n >= a}`.
    pub fn tail(a: u64) -> Self {
        NatSet(Lasso::new(vec![false; a as usize], vec![true]))
    }

    /// `{a + k·d : k ∈ ℕ}`; `d = 0` gives `{a}`.
    pub fn arith(a: u64, d: u64) -> Self {
        if d == 0 {
            return NatSet::finite([a]);
        }
        let mut per = vec![false; d as usize];
        per[0] = true;
        NatSet(Lasso::new(vec![false; a as usize], per))
    }

    pub fn evens() -> Self {
        NatSet::arith(0, 2)
    }

    pub fn odds() -> Self {
        NatSet::arith(1, 2)
    }

    pub fn finite(elems: impl IntoIterator<Item = u64>) -> Self {
        let elems: Vec<u64> = elems.into_iter().collect();
        let len = elems.iter().map(|&e| e + 1).max().unwrap_or(0);
        let mut pre = vec![false; len as usize];
        for e in elems {
            pre[e as usize] = true;
        }
        NatSet(Lasso::new(pre, vec![false]))
    }

    pub fn pre_bits(&self) -> &[bool] {
        self.0.pre()
    }

    pub fn per_bits(&self) -> &[bool] {
        self.0.per()
    }

    pub fn preperiod(&self) -> u64 {
        self.0.pre().len() as u64
    }

    pub fn period(&self) -> u64 {
        self.0.per().len() as u64
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.bit(n)
    }

    pub fn op(&self, kind: BoolOp, other: &NatSet) -> NatSet {
        match kind {
            BoolOp::Union => self.union(other),
            BoolOp::Intersect => self.intersection(other),
            BoolOp::Difference => self.difference(other),
            BoolOp::Complement => self.complement(),
        }
    }

    pub fn union(&self, other: &NatSet) -> NatSet {
        NatSet(self.0.zip_with(&other.0, |a, b| a || b))
    }

    pub fn intersection(&self, other: &NatSet) -> NatSet {
        NatSet(self.0.zip_with(&other.0, |a, b| a && b))
    }

    pub fn difference(&self, other: &NatSet) -> NatSet {
        NatSet(self.0.zip_with(&other.0, |a, b| a && !b))
    }

    pub fn complement(&self) -> NatSet {
        NatSet(self.0.map(|a| !a))
    }

    pub fn is_empty(&self) -> bool {
        !self.0.pre().iter().chain(self.0.per()).any(|&b| b)
    }

    pub fn is_infinite(&self) -> bool {
        self.0.per().iter().any(|&b| b)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn is_cofinite(&self) -> bool {
        self.0.per().iter().all(|&b| b)
    }

    pub fn is_subset(&self, other: &NatSet) -> bool {
        self.difference(other).is_empty()
    }

    /// `self ⊆* other`: the difference is finite.
    pub fn almost_subset(&self, other: &NatSet) -> bool {
        self.difference(other).is_finite()
    }

    pub fn least(&self) -> Option<u64> {
        self.min_at_least(0)
    }

    /// Least element `>= m`.
    pub fn min_at_least(&self, m: u64) -> Option<u64> {
        let l = self.preperiod();
        let p = self.period();
        let end = m.max(l) + p;
        (m..end).find(|&n| self.contains(n))
    }

    /// Greatest element of a finite nonempty set.
    pub fn greatest(&self) -> Option<u64> {
        if self.is_infinite() {
            return None;
        }
        (0..self.preperiod()).rev().find(|&n| self.contains(n))
    }

    /// For a cofinite set, the least `t` with `Tail(t) ⊆ self`.
    pub fn cofinite_threshold(&self) -> Option<u64> {
        self.is_cofinite().then(|| self.preperiod())
    }

    pub fn elements_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&n| self.contains(n)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let finite_bound = if self.is_infinite() { u64::MAX } else { self.preperiod() };
        (0..finite_bound).filter(move |&n| self.contains(n))
    }

    /// Parses the shorthands `tail:a`, `arith:a,d`, `evens`, `odds`, `full`,
    /// `empty`, `finite:a,b,...` and the lasso notation `pre(per)`.
    pub fn parse(s: &str) -> Result<NatSet> {
        let s = s.trim();
        let nums = |body: &str| -> Result<Vec<u64>> {
            body.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::invalid(format!("bad number {t:?} in {s:?}")))
                })
                .collect()
        };
        match s {
            "evens" => return Ok(NatSet::evens()),
            "odds" => return Ok(NatSet::odds()),
            "full" => return Ok(NatSet::full()),
            "empty" => return Ok(NatSet::empty()),
            _ => {}
        }
        if let Some(body) = s.strip_prefix("tail:") {
            return match nums(body)?.as_slice() {
                [a] => Ok(NatSet::tail(*a)),
                _ => Err(Error::invalid(format!("tail takes one number: {s:?}"))),
            };
        }
        if let Some(body) = s.strip_prefix("arith:") {
            return match nums(body)?.as_slice() {
                [a, d] if *d >= 1 => Ok(NatSet::arith(*a, *d)),
                _ => Err(Error::invalid(format!("arith takes a,d with d >= 1: {s:?}"))),
            };
        }
        if let Some(body) = s.strip_prefix("finite:") {
            return Ok(NatSet::finite(nums(body)?));
        }
        if let (Some(open), true) = (s.find('('), s.ends_with(')')) {
            let pre = bits::parse(&s[..open])?;
            let per = bits::parse(&s[open + 1..s.len() - 1])?;
            return NatSet::from_parts(pre, per);
        }
        Err(Error::invalid(format!("unrecognized NatSet literal {s:?}")))
    }
}

impl fmt::Display for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", bits::render(self.0.pre()), bits::render(self.0.per()))
    }
}

impl fmt::Debug for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NatSet[{self}]")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParts {
    pre: String,
    per: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNatSet {
    Short(String),
    Parts(RawParts),
}

impl Serialize for NatSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawParts { pre: bits::render(self.0.pre()), per: bits::render(self.0.per()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NatSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parsed = match RawNatSet::deserialize(d)? {
            RawNatSet::Short(s) => NatSet::parse(&s),
            RawNatSet::Parts(p) => bits::parse(&p.pre)
                .and_then(|pre| NatSet::from_parts(pre, bits::parse(&p.per)?)),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// A finite, ordered family of index sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatFamily {
    pub members: Vec<NatSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyDiagnostics {
    pub centered: bool,
    pub total_intersection: NatSet,
    pub free: bool,
    pub has_duplicates: bool,
}

impl NatFamily {
    pub fn new(members: Vec<NatSet>) -> Self {
        NatFamily { members }
    }

    /// The intersection of the empty family is ℕ.
    pub fn total_intersection(&self) -> NatSet {
        self.members.iter().fold(NatSet::full(), |acc, m| acc.intersection(m))
    }

    pub fn has_duplicates(&self) -> bool {
        self.members
            .iter()
            .enumerate()
            .any(|(i, a)| self.members[..i].contains(a))
    }

    /// For a finite family every sub-intersection contains the total one, so
    /// centeredness reduces to infinitude of the total intersection.
    pub fn diagnostics(&self) -> FamilyDiagnostics {
        let total = self.total_intersection();
        FamilyDiagnostics {
            centered: total.is_infinite(),
            free: total.is_empty(),
            has_duplicates: self.has_duplicates(),
            total_intersection: total,
        }
    }

    /// `a` is infinite and almost contained in every member.
    pub fn has_pseudo_intersection(&self, a: &NatSet) -> bool {
        a.is_infinite() && self.members.iter().all(|b| a.almost_subset(b))
    }
}

/// ν₂(m + 1) agrees with `target` modulo `modulus` for infinitely many `m` in
/// the progression `{c + k·p}`.
pub(crate) fn ruler_hits_progression(c: u64, p: u64, target: u64, modulus: u64) -> bool {
    let e = p.trailing_zeros() as u64;
    let v = (c + 1).trailing_zeros() as u64;
    if v < e {
        v % modulus == target % modulus
    } else {
        // ν₂ takes every value >= e infinitely often along the progression.
        true
    }
}

/// Residues `{(c + k·e) mod p : k ∈ ℕ}` all land in `set` once `c >= L`.
pub(crate) fn progression_within(set: &NatSet, c: u64, e: u64) -> bool {
    let l = set.preperiod();
    let p = set.period();
    if e == 0 {
        return set.contains(c);
    }
    // Below the preperiod, check directly; the rest is periodic in residues.
    let mut k = 0u64;
    let mut x = c;
    while x < l {
        if !set.contains(x) {
            return false;
        }
        k += 1;
        x = c + k * e;
    }
    let orbit = p / gcd(e % p, p).max(1);
    (0..orbit.max(1)).all(|i| set.contains(x + i * e))
}
