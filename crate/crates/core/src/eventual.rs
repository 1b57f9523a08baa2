//! Functions ℕ → ℕ that are explicit on a finite head and affine on each
//! residue class afterwards.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::natsets::NatSet;
use crate::periodic::lcm;

/// `v(n) = head[n]` for `n < head.len()`, otherwise
/// `v(n) = slopes[n mod q]·n + intercepts[n mod q]` with `q = slopes.len()`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct EventualFn {
    head: Vec<u64>,
    slopes: Vec<u64>,
    intercepts: Vec<i64>,
}

impl EventualFn {
    pub fn new(head: Vec<u64>, slopes: Vec<u64>, intercepts: Vec<i64>) -> Result<Self> {
        if slopes.is_empty() || slopes.len() != intercepts.len() {
            return Err(Error::invalid("eventual function needs matching nonempty slopes and intercepts"));
        }
        let mut f = EventualFn { head, slopes, intercepts };
        f.trim_head();
        let start = f.head.len() as i64;
        for (s, (&a, &b)) in f.slopes.iter().zip(&f.intercepts).enumerate() {
            let q = f.slopes.len() as i64;
            let first = start + (s as i64 - start).rem_euclid(q);
            if a as i64 * first + b < 0 {
                return Err(Error::invalid(format!("eventual function is negative at n = {first}")));
            }
        }
        Ok(f)
    }

    pub fn constant(c: u64) -> Self {
        EventualFn { head: Vec::new(), slopes: vec![0], intercepts: vec![c as i64] }
    }

    pub fn affine(slope: u64, intercept: u64) -> Self {
        EventualFn { head: Vec::new(), slopes: vec![slope], intercepts: vec![intercept as i64] }
    }

    pub fn head(&self) -> &[u64] {
        &self.head
    }

    pub fn modulus(&self) -> u64 {
        self.slopes.len() as u64
    }

    pub fn slope(&self, residue: u64) -> u64 {
        self.slopes[(residue % self.modulus()) as usize]
    }

    pub fn intercept(&self, residue: u64) -> i64 {
        self.intercepts[(residue % self.modulus()) as usize]
    }

    pub fn eval(&self, n: u64) -> u64 {
        if let Some(&v) = self.head.get(n as usize) {
            return v;
        }
        let r = (n % self.modulus()) as usize;
        (self.slopes[r] as i64 * n as i64 + self.intercepts[r]) as u64
    }

    /// Builds the function from direct values on `0..head_len` and the affine
    /// law of each residue class, anchored at the first `n >= head_len` of that
    /// class. `slopes[s]` must be exact for `n >= head_len`.
    pub(crate) fn from_values(head_len: u64, slopes: Vec<u64>, f: impl Fn(u64) -> u64) -> Self {
        let q = slopes.len() as u64;
        let head = (0..head_len).map(&f).collect();
        let intercepts = (0..q)
            .map(|s| {
                let n = head_len + (s + q - head_len % q) % q;
                f(n) as i64 - slopes[s as usize] as i64 * n as i64
            })
            .collect();
        let mut f = EventualFn { head, slopes, intercepts };
        f.trim_head();
        f
    }

    /// Drops trailing head values that already follow the affine law.
    fn trim_head(&mut self) {
        while let Some(&v) = self.head.last() {
            let n = self.head.len() as i64 - 1;
            let r = (n as u64 % self.modulus()) as usize;
            if self.slopes[r] as i64 * n + self.intercepts[r] != v as i64 {
                break;
            }
            self.head.pop();
        }
    }

    /// `{n : self(n) <= other(n)}`, exactly.
    pub fn le_set(&self, other: &EventualFn) -> NatSet {
        let q = lcm(self.modulus(), other.modulus());
        let start = self.head.len().max(other.head.len()) as u64;
        // Past the last sign change of each class, comparisons are stable.
        let mut settle = start;
        for r in 0..q {
            let da = self.slope(r) as i64 - other.slope(r) as i64;
            let db = self.intercept(r) - other.intercept(r);
            if da != 0 {
                let cross = (db.unsigned_abs() / da.unsigned_abs()) + 1;
                settle = settle.max(cross);
            }
        }
        NatSet::from_fn(settle, q, |n| self.eval(n) <= other.eval(n))
    }

    /// Pointwise maximum.
    pub fn max(&self, other: &EventualFn) -> EventualFn {
        let q = lcm(self.modulus(), other.modulus());
        let mut settle = self.head.len().max(other.head.len()) as u64;
        let mut slopes = Vec::with_capacity(q as usize);
        for r in 0..q {
            let (a1, b1) = (self.slope(r), self.intercept(r));
            let (a2, b2) = (other.slope(r), other.intercept(r));
            let da = a1 as i64 - a2 as i64;
            if da != 0 {
                settle = settle.max(((b1 - b2).unsigned_abs() / da.unsigned_abs()) + 1);
            }
            slopes.push(if (a1, b1) >= (a2, b2) { a1 } else { a2 });
        }
        EventualFn::from_values(settle, slopes, |n| self.eval(n).max(other.eval(n)))
    }

    /// Strictly increasing on all of ℕ.
    pub fn is_strictly_increasing(&self) -> bool {
        let q = self.modulus();
        let slope0 = self.slope(0);
        if slope0 == 0 || (0..q).any(|r| self.slope(r) != slope0) {
            // Unequal class slopes eventually reorder consecutive values.
            return false;
        }
        let check_to = self.head.len() as u64 + 2 * q + 1;
        (0..check_to).all(|n| self.eval(n + 1) > self.eval(n))
    }

    /// Parses `const:c`, `affine:a,b` (value `a·n + b`).
    pub fn parse(s: &str) -> Result<EventualFn> {
        let nums = |body: &str| -> Result<Vec<u64>> {
            body.split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|_| Error::invalid(format!("bad number in {s:?}"))))
                .collect()
        };
        if let Some(body) = s.strip_prefix("const:") {
            if let [c] = nums(body)?.as_slice() {
                return Ok(EventualFn::constant(*c));
            }
        }
        if let Some(body) = s.strip_prefix("affine:") {
            if let [a, b] = nums(body)?.as_slice() {
                return Ok(EventualFn::affine(*a, *b));
            }
        }
        Err(Error::invalid(format!("unrecognized function literal {s:?}")))
    }
}

impl fmt::Debug for EventualFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EventualFn(head={:?}, slopes={:?}, intercepts={:?})", self.head, self.slopes, self.intercepts)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFn {
    #[serde(default)]
    head: Vec<u64>,
    slopes: Vec<u64>,
    intercepts: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FnLiteral {
    Short(String),
    Full(RawFn),
}

impl<'de> Deserialize<'de> for EventualFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parsed = match FnLiteral::deserialize(d)? {
            FnLiteral::Short(s) => EventualFn::parse(&s),
            FnLiteral::Full(r) => EventualFn::new(r.head, r.slopes, r.intercepts),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_head_then_classes() {
        let f = EventualFn::new(vec![9, 9], vec![1, 3], vec![0, -2]).unwrap();
        assert_eq!((0..6).map(|n| f.eval(n)).collect::<Vec<_>>(), vec![9, 9, 2, 7, 4, 13]);
        assert!(EventualFn::new(vec![], vec![0], vec![-1]).is_err());
    }

    #[test]
    fn le_set_matches_pointwise() {
        let f = EventualFn::new(vec![5, 0, 7], vec![2, 0], vec![-3, 4]).unwrap();
        let g = EventualFn::affine(1, 2);
        let s = f.le_set(&g);
        for n in 0..200 {
            assert_eq!(s.contains(n), f.eval(n) <= g.eval(n), "n={n}");
        }
    }

    #[test]
    fn max_matches_pointwise() {
        let f = EventualFn::new(vec![1], vec![1, 2], vec![10, 0]).unwrap();
        let g = EventualFn::new(vec![], vec![3], vec![1]).unwrap();
        let m = f.max(&g);
        for n in 0..100 {
            assert_eq!(m.eval(n), f.eval(n).max(g.eval(n)), "n={n}");
        }
    }

    #[test]
    fn monotonicity() {
        assert!(EventualFn::affine(1, 0).is_strictly_increasing());
        assert!(!EventualFn::constant(3).is_strictly_increasing());
        assert!(!EventualFn::new(vec![0, 5], vec![1], vec![0]).unwrap().is_strictly_increasing());
    }
}
