//! Eventually periodic bit sequences in canonical form.
//!
//! Shared representation behind [`crate::NatSet`] (characteristic sequence of
//! a subset of ℕ) and [`crate::Point`] (a point of Cantor space).

use std::collections::HashMap;
use std::hash::Hash;

/// `pre` followed by `per` repeated forever. Always canonical: the preperiod
/// is as short as possible, then the period is primitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Lasso {
    pre: Vec<bool>,
    per: Vec<bool>,
}

impl Lasso {
    /// `per` must be nonempty.
    pub(crate) fn new(mut pre: Vec<bool>, mut per: Vec<bool>) -> Self {
        assert!(!per.is_empty(), "period word must be nonempty");
        let p = primitive_root_len(&per);
        per.truncate(p);
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Lasso { pre, per }
    }

    pub(crate) fn constant(bit: bool) -> Self {
        Lasso { pre: Vec::new(), per: vec![bit] }
    }

    /// Bits for `n < pre_len` come straight from `f`; from `pre_len` on, the
    /// caller promises `f(n + period) == f(n)`.
    pub(crate) fn from_fn(pre_len: u64, period: u64, f: impl Fn(u64) -> bool) -> Self {
        assert!(period >= 1);
        let pre = (0..pre_len).map(&f).collect();
        let per = (pre_len..pre_len + period).map(&f).collect();
        Lasso::new(pre, per)
    }

    /// Builds the sequence `head ++ bit(s_0) bit(s_1) ...` where
    /// `s_{i+1} = step(s_i)`. The state space reachable from `start` must be
    /// finite; the first repeated state closes the cycle.
    pub(crate) fn from_transitions<K: Clone + Eq + Hash>(
        head: Vec<bool>,
        start: K,
        mut step: impl FnMut(&K) -> K,
        bit: impl Fn(&K) -> bool,
    ) -> Self {
        let mut seen: HashMap<K, usize> = HashMap::new();
        let mut bits = Vec::new();
        let mut state = start;
        loop {
            if let Some(&first) = seen.get(&state) {
                let mut pre = head;
                pre.extend_from_slice(&bits[..first]);
                return Lasso::new(pre, bits[first..].to_vec());
            }
            seen.insert(state.clone(), bits.len());
            bits.push(bit(&state));
            state = step(&state);
        }
    }

    pub(crate) fn pre(&self) -> &[bool] {
        &self.pre
    }

    pub(crate) fn per(&self) -> &[bool] {
        &self.per
    }

    pub(crate) fn bit(&self, i: u64) -> bool {
        let l = self.pre.len() as u64;
        if i < l {
            self.pre[i as usize]
        } else {
            self.per[((i - l) % self.per.len() as u64) as usize]
        }
    }

    /// Number of bits after which two lassos agree forever if they agree so far.
    pub(crate) fn joint_horizon(&self, other: &Lasso) -> u64 {
        let l = self.pre.len().max(other.pre.len()) as u64;
        l + lcm(self.per.len() as u64, other.per.len() as u64)
    }

    /// Pointwise combination; the result period divides the lcm of the inputs.
    pub(crate) fn zip_with(&self, other: &Lasso, f: impl Fn(bool, bool) -> bool) -> Lasso {
        let l = self.pre.len().max(other.pre.len()) as u64;
        let p = lcm(self.per.len() as u64, other.per.len() as u64);
        Lasso::from_fn(l, p, |i| f(self.bit(i), other.bit(i)))
    }

    pub(crate) fn map(&self, f: impl Fn(bool) -> bool) -> Lasso {
        Lasso::new(
            self.pre.iter().map(|&b| f(b)).collect(),
            self.per.iter().map(|&b| f(b)).collect(),
        )
    }

    /// Drops the first `k` bits.
    pub(crate) fn shift(&self, k: u64) -> Lasso {
        let l = self.pre.len() as u64;
        if k <= l {
            Lasso::new(self.pre[k as usize..].to_vec(), self.per.clone())
        } else {
            let r = ((k - l) % self.per.len() as u64) as usize;
            let mut per = self.per.clone();
            per.rotate_left(r);
            Lasso::new(Vec::new(), per)
        }
    }

    /// Prepends a finite word.
    pub(crate) fn prepend(&self, word: &[bool]) -> Lasso {
        let mut pre = word.to_vec();
        pre.extend_from_slice(&self.pre);
        Lasso::new(pre, self.per.clone())
    }
}

fn primitive_root_len(word: &[bool]) -> usize {
    let n = word.len();
    (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| (p..n).all(|i| word[i] == word[i - p]))
        .unwrap_or(n)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a.max(b);
    }
    a / gcd(a, b) * b
}
