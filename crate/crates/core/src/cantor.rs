//! Points, cylinders and clopen subsets of Cantor space {0,1}^ℕ.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits;
use crate::error::{Error, Result};
use crate::natsets::BoolOp;
use crate::periodic::Lasso;

/// An eventually periodic point of Cantor space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Lasso);

impl Point {
    pub fn from_parts(pre: Vec<bool>, per: Vec<bool>) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::invalid("period word of a point must be nonempty"));
        }
        Ok(Point(Lasso::new(pre, per)))
    }

    /// Parses `"pre(per)"`, e.g. `"0(1)"` for 0111….
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match (s.find('('), s.ends_with(')')) {
            (Some(open), true) => {
                Point::from_parts(bits::parse(&s[..open])?, bits::parse(&s[open + 1..s.len() - 1])?)
            }
            _ => Err(Error::invalid(format!("point literal must look like pre(per): {s:?}"))),
        }
    }

    pub fn constant(bit: bool) -> Self {
        Point(Lasso::constant(bit))
    }

    /// `word` repeated forever.
    pub fn periodic(word: &[bool]) -> Result<Self> {
        Point::from_parts(Vec::new(), word.to_vec())
    }

    pub fn bit(&self, i: u64) -> bool {
        self.0.bit(i)
    }

    pub fn prefix(&self, len: u64) -> Vec<bool> {
        (0..len).map(|i| self.bit(i)).collect()
    }

    pub fn pre_bits(&self) -> &[bool] {
        self.0.pre()
    }

    pub fn per_bits(&self) -> &[bool] {
        self.0.per()
    }

    pub fn starts_with(&self, word: &[bool]) -> bool {
        word.iter().enumerate().all(|(i, &b)| self.bit(i as u64) == b)
    }

    /// The point with `word` removed from the front, if it starts with it.
    pub fn strip_prefix(&self, word: &[bool]) -> Option<Point> {
        self.starts_with(word).then(|| Point(self.0.shift(word.len() as u64)))
    }

    pub fn prepend(&self, word: &[bool]) -> Point {
        Point(self.0.prepend(word))
    }

    /// Length of the longest common prefix, `None` when the points are equal.
    pub fn agreement(&self, other: &Point) -> Option<u64> {
        if self == other {
            return None;
        }
        let h = self.0.joint_horizon(&other.0);
        (0..h).find(|&i| self.bit(i) != other.bit(i))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", bits::render(self.0.pre()), bits::render(self.0.per()))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point[{self}]")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    pre: String,
    per: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointLiteral {
    Short(String),
    Parts(RawPoint),
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawPoint { pre: bits::render(self.0.pre()), per: bits::render(self.0.per()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parsed = match PointLiteral::deserialize(d)? {
            PointLiteral::Short(s) => Point::parse(&s),
            PointLiteral::Parts(p) => {
                bits::parse(&p.pre).and_then(|pre| Point::from_parts(pre, bits::parse(&p.per)?))
            }
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Empty,
    Full,
    Split(Box<Node>, Box<Node>),
}

impl Node {
    fn split(zero: Node, one: Node) -> Node {
        match (zero, one) {
            (Node::Empty, Node::Empty) => Node::Empty,
            (Node::Full, Node::Full) => Node::Full,
            (z, o) => Node::Split(Box::new(z), Box::new(o)),
        }
    }

    fn children(&self) -> (&Node, &Node) {
        match self {
            Node::Split(z, o) => (z, o),
            leaf => (leaf, leaf),
        }
    }

    fn cylinder(word: &[bool]) -> Node {
        match word.split_first() {
            None => Node::Full,
            Some((&false, rest)) => Node::split(Node::cylinder(rest), Node::Empty),
            Some((&true, rest)) => Node::split(Node::Empty, Node::cylinder(rest)),
        }
    }

    fn combine(a: &Node, b: &Node, f: fn(bool, bool) -> bool) -> Node {
        match (a, b) {
            (Node::Empty | Node::Full, Node::Empty | Node::Full) => {
                if f(*a == Node::Full, *b == Node::Full) {
                    Node::Full
                } else {
                    Node::Empty
                }
            }
            _ => {
                let (a0, a1) = a.children();
                let (b0, b1) = b.children();
                Node::split(Node::combine(a0, b0, f), Node::combine(a1, b1, f))
            }
        }
    }

    fn complement(&self) -> Node {
        match self {
            Node::Empty => Node::Full,
            Node::Full => Node::Empty,
            Node::Split(z, o) => Node::split(z.complement(), o.complement()),
        }
    }

    fn collect(&self, prefix: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        match self {
            Node::Empty => {}
            Node::Full => out.push(prefix.clone()),
            Node::Split(z, o) => {
                prefix.push(false);
                z.collect(prefix, out);
                prefix.pop();
                prefix.push(true);
                o.collect(prefix, out);
                prefix.pop();
            }
        }
    }

    fn depth(&self) -> usize {
        match self {
            Node::Split(z, o) => 1 + z.depth().max(o.depth()),
            _ => 0,
        }
    }
}

/// A clopen subset of Cantor space, stored as a canonical prefix antichain of
/// cylinder words (a binary tree whose sibling leaves never coincide).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClopenSet(Node);

impl ClopenSet {
    pub fn empty() -> Self {
        ClopenSet(Node::Empty)
    }

    pub fn full() -> Self {
        ClopenSet(Node::Full)
    }

    /// The cylinder `[word]`.
    pub fn cylinder(word: &[bool]) -> Self {
        ClopenSet(Node::cylinder(word))
    }

    /// Union of the cylinders of the given words, in any order.
    pub fn from_words<'a>(words: impl IntoIterator<Item = &'a [bool]>) -> Self {
        words
            .into_iter()
            .fold(ClopenSet::empty(), |acc, w| acc.union(&ClopenSet::cylinder(w)))
    }

    pub fn op(&self, kind: BoolOp, other: &ClopenSet) -> ClopenSet {
        match kind {
            BoolOp::Union => self.union(other),
            BoolOp::Intersect => self.intersection(other),
            BoolOp::Difference => self.difference(other),
            BoolOp::Complement => self.complement(),
        }
    }

    pub fn union(&self, other: &ClopenSet) -> ClopenSet {
        ClopenSet(Node::combine(&self.0, &other.0, |a, b| a || b))
    }

    pub fn intersection(&self, other: &ClopenSet) -> ClopenSet {
        ClopenSet(Node::combine(&self.0, &other.0, |a, b| a && b))
    }

    pub fn difference(&self, other: &ClopenSet) -> ClopenSet {
        ClopenSet(Node::combine(&self.0, &other.0, |a, b| a && !b))
    }

    pub fn complement(&self) -> ClopenSet {
        ClopenSet(self.0.complement())
    }

    pub fn is_full(&self) -> bool {
        self.0 == Node::Full
    }

    pub fn is_empty(&self) -> bool {
        self.0 == Node::Empty
    }

    pub fn is_subset(&self, other: &ClopenSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn contains(&self, x: &Point) -> bool {
        let mut node = &self.0;
        let mut i = 0;
        loop {
            match node {
                Node::Empty => return false,
                Node::Full => return true,
                Node::Split(z, o) => {
                    node = if x.bit(i) { o } else { z };
                    i += 1;
                }
            }
        }
    }

    /// Canonical antichain, lexicographic with 0 before 1.
    pub fn cylinders(&self) -> Vec<Vec<bool>> {
        let mut out = Vec::new();
        self.0.collect(&mut Vec::new(), &mut out);
        out
    }

    /// Length of the longest word in the canonical antichain.
    pub fn depth(&self) -> usize {
        self.0.depth()
    }

    /// Membership of each of the `2^d` depth-`d` cylinders, indexed by the
    /// word read as a big-endian binary number. Requires `d >= depth()`.
    pub fn trace(&self, d: usize) -> Vec<bool> {
        (0..1u64 << d)
            .map(|i| {
                let word: Vec<bool> = (0..d).map(|k| (i >> (d - 1 - k)) & 1 == 1).collect();
                ClopenSet::cylinder(&word).is_subset(self)
            })
            .collect()
    }

    /// Length of the word of the antichain that is a prefix of `x`.
    pub(crate) fn covering_depth(&self, x: &Point) -> Option<u64> {
        let mut node = &self.0;
        let mut i = 0;
        loop {
            match node {
                Node::Empty => return None,
                Node::Full => return Some(i),
                Node::Split(z, o) => {
                    node = if x.bit(i) { o } else { z };
                    i += 1;
                }
            }
        }
    }

    pub fn parse_words(words: &[String]) -> Result<ClopenSet> {
        let parsed = words.iter().map(|w| bits::parse(w)).collect::<Result<Vec<_>>>()?;
        Ok(ClopenSet::from_words(parsed.iter().map(|w| w.as_slice())))
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            return f.write_str("full");
        }
        let words: Vec<String> = self.cylinders().iter().map(|w| format!("[{}]", bits::render(w))).collect();
        write!(f, "{{{}}}", words.join(","))
    }
}

impl fmt::Debug for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Clopen{self}")
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ClopenLiteral {
    Named(String),
    Words(Vec<String>),
}

impl Serialize for ClopenSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_full() {
            return s.serialize_str("full");
        }
        let words: Vec<String> = self.cylinders().iter().map(|w| bits::render(w)).collect();
        words.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClopenSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parsed = match ClopenLiteral::deserialize(d)? {
            ClopenLiteral::Named(s) if s == "full" => Ok(ClopenSet::full()),
            ClopenLiteral::Named(s) if s == "empty" => Ok(ClopenSet::empty()),
            ClopenLiteral::Named(s) => Err(Error::invalid(format!(
                "clopen literal must be \"full\", \"empty\" or a list of words, got {s:?}"
            ))),
            ClopenLiteral::Words(ws) => ClopenSet::parse_words(&ws),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<bool> {
        bits::parse(s).unwrap()
    }

    fn cyl(s: &str) -> ClopenSet {
        ClopenSet::cylinder(&w(s))
    }

    #[test]
    fn point_in_examples() {
        assert!(cyl("01").contains(&Point::parse("0(1)").unwrap()));
        assert!(!cyl("1").contains(&Point::constant(false)));
        assert!(ClopenSet::full().contains(&Point::parse("10(01)").unwrap()));
    }

    #[test]
    fn clopen_op_examples() {
        assert_eq!(cyl("01").intersection(&cyl("0")), cyl("01"));
        assert!(cyl("0").union(&cyl("1")).is_full());
        assert_eq!(cyl("0").complement(), cyl("1"));
    }

    #[test]
    fn predicates_examples() {
        assert!(ClopenSet::from_words([w("0").as_slice(), w("1").as_slice()]).is_full());
        assert!(ClopenSet::empty().is_empty());
        assert_eq!(ClopenSet::from_words([w("00").as_slice(), w("01").as_slice()]), cyl("0"));
    }

    #[test]
    fn cylinders_are_an_antichain() {
        let c = ClopenSet::from_words([w("000").as_slice(), w("001").as_slice(), w("1").as_slice(), w("0100").as_slice()]);
        assert_eq!(c.cylinders(), vec![w("00"), w("0100"), w("1")]);
        assert_eq!(c.depth(), 4);
    }

    #[test]
    fn agreement_and_strip() {
        let a = Point::parse("0(1)").unwrap();
        let b = Point::parse("01(0)").unwrap();
        assert_eq!(a.agreement(&b), Some(2));
        assert_eq!(a.agreement(&a), None);
        assert_eq!(a.strip_prefix(&w("01")).unwrap(), Point::constant(true));
        assert!(a.strip_prefix(&w("1")).is_none());
        assert_eq!(Point::periodic(&w("01")).unwrap(), Point::parse("0101(01)").unwrap());
    }

    #[test]
    fn serde_literals() {
        let c: ClopenSet = serde_json::from_str(r#"["01","1"]"#).unwrap();
        assert_eq!(c, cyl("01").union(&cyl("1")));
        let f: ClopenSet = serde_json::from_str(r#""full""#).unwrap();
        assert!(f.is_full());
        assert_eq!(serde_json::to_string(&f).unwrap(), r#""full""#);
        let p: Point = serde_json::from_str(r#"{"pre":"0","per":"1"}"#).unwrap();
        assert_eq!(p, Point::parse("0(1)").unwrap());
        assert!(serde_json::from_str::<ClopenSet>(r#""bogus""#).is_err());
    }
}
