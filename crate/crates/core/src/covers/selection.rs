use serde::{Deserialize, Serialize};

use super::Incidence;
use crate::natsets::NatSet;

/// Picks past the explicit head: `m_{N + i·P + s} = cycle[s] + i·step`,
/// where `N` is the head length and `P = cycle.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PickTail {
    pub cycle: Vec<u64>,
    pub step: u64,
}

/// One member index per position `n`: explicit up to a horizon, optionally
/// continued by a rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Selection {
    #[serde(default)]
    pub head: Vec<u64>,
    #[serde(default)]
    pub tail: Option<PickTail>,
}

impl Selection {
    pub fn explicit(head: Vec<u64>) -> Self {
        Selection { head, tail: None }
    }

    /// `m_n = head[n]` below the head, `a·n + b` from there on.
    pub fn affine(head: Vec<u64>, a: u64, b: u64) -> Self {
        let start = head.len() as u64;
        Selection { head, tail: Some(PickTail { cycle: vec![a * start + b], step: a }) }
    }

    pub fn periodic(cycle: Vec<u64>) -> Self {
        Selection { head: Vec::new(), tail: Some(PickTail { cycle, step: 0 }) }
    }

    pub fn is_total(&self) -> bool {
        self.tail.as_ref().is_some_and(|t| !t.cycle.is_empty())
    }

    pub fn pick(&self, n: u64) -> Option<u64> {
        let start = self.head.len() as u64;
        if n < start {
            return Some(self.head[n as usize]);
        }
        let t = self.tail.as_ref()?;
        if t.cycle.is_empty() {
            return None;
        }
        let p = t.cycle.len() as u64;
        let k = n - start;
        Some(t.cycle[(k % p) as usize] + (k / p) * t.step)
    }

    /// Picks up to `count` positions (stops early if undefined).
    pub fn picks(&self, count: u64) -> Vec<u64> {
        (0..count).map_while(|n| self.pick(n)).collect()
    }

    /// First position after which every pick is at least `bound`, when the
    /// picks grow; `None` if they stay bounded.
    pub(crate) fn eventually_at_least(&self, bound: u64) -> Option<u64> {
        let t = self.tail.as_ref()?;
        let start = self.head.len() as u64;
        let lo = *t.cycle.iter().min()?;
        if lo >= bound {
            return Some(start);
        }
        if t.step == 0 {
            return None;
        }
        let rounds = (bound - lo).div_ceil(t.step);
        Some(start + rounds * t.cycle.len() as u64)
    }

    /// Period of the pick sequence modulo `modulus`, past the head.
    pub(crate) fn residue_period(&self, modulus: u64) -> u64 {
        match &self.tail {
            Some(t) if t.step == 0 => t.cycle.len() as u64,
            Some(t) => t.cycle.len() as u64 * modulus,
            None => 1,
        }
    }

    /// Infinitely many distinct picks.
    pub fn unbounded(&self) -> Option<bool> {
        self.tail.as_ref().map(|t| t.step > 0)
    }

    /// `{n : pick(n) ∈ inc}`.
    pub fn pull_back(&self, inc: &Incidence) -> Incidence {
        match inc {
            Incidence::Exact(set) if self.is_total() => {
                let l = set.preperiod();
                let pre = match self.eventually_at_least(l) {
                    Some(n0) => n0,
                    // Bounded picks repeat with the cycle.
                    None => self.head.len() as u64,
                };
                let period = self.residue_period(set.period());
                Incidence::Exact(NatSet::from_fn(pre, period, |n| set.contains(self.pick(n).unwrap())))
            }
            Incidence::Unknown => Incidence::Unknown,
            _ => {
                let bits = (0..)
                    .map_while(|n| self.pick(n).and_then(|m| inc.contains(m)))
                    .take(self.head.len().max(1 << 12))
                    .collect();
                Incidence::Prefix(bits)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pick_rules() {
        let s = Selection::affine(vec![7, 7], 2, 1);
        assert_eq!(s.picks(5), vec![7, 7, 5, 7, 9]);
        let p = Selection::periodic(vec![3, 1]);
        assert_eq!(p.picks(5), vec![3, 1, 3, 1, 3]);
        assert_eq!(Selection::explicit(vec![1, 2]).picks(5), vec![1, 2]);
    }

    #[test]
    fn pull_back_matches_pointwise() {
        let set = NatSet::parse("01101(011)").unwrap();
        let sels = [
            Selection::affine(vec![4, 0, 9], 3, 2),
            Selection::periodic(vec![2, 6, 1]),
            Selection { head: vec![1], tail: Some(PickTail { cycle: vec![5, 2, 8], step: 4 }) },
        ];
        for s in sels {
            let got = s.pull_back(&Incidence::Exact(set.clone()));
            let got = got.exact().unwrap();
            for n in 0..300 {
                assert_eq!(got.contains(n), set.contains(s.pick(n).unwrap()), "{s:?} n={n}");
            }
        }
    }
}
