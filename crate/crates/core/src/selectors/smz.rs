use serde::{Deserialize, Serialize};

use crate::bits;
use crate::cantor::{ClopenSet, Point};
use crate::covers::{Universe, Verdict};
use crate::error::{Error, Result};
use crate::eventual::EventualFn;
use crate::natsets::NatSet;

/// Largest level the pipeline descends to.
pub const MAX_LEVEL: u64 = 8;

/// An infinite subfamily of the level covers: at each level `ℓ ∈ levels`, the
/// member made of the depth-`k_ℓ` prefixes of the anchors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelBlock {
    pub levels: NatSet,
    pub anchors: Vec<Point>,
}

/// `𝒱_n` is block `n mod r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelWitness {
    pub blocks: Vec<LevelBlock>,
}

impl LevelBlock {
    pub fn validate(&self, position: u64) -> Result<()> {
        if self.anchors.is_empty() {
            return Err(Error::invalid(format!("level block {position} has no anchors")));
        }
        if self.levels.is_finite() {
            return Err(Error::FiniteIndexSet { position });
        }
        let lowest = self.levels.least().expect("infinite");
        let need = (self.anchors.len() as u64).max(1);
        if lowest < need {
            return Err(Error::invalid(format!(
                "level block {position} uses level {lowest}, which has room for fewer than {need} cylinders"
            )));
        }
        Ok(())
    }

    /// The `ℓ` words of length `k_ℓ`: anchor prefixes, repeated to fill.
    pub fn words_at(&self, level: u64, k: &EventualFn) -> Vec<Vec<bool>> {
        let depth = k.eval(level);
        let mut distinct: Vec<Vec<bool>> = Vec::new();
        for a in &self.anchors {
            let w = a.prefix(depth);
            if !distinct.contains(&w) {
                distinct.push(w);
            }
        }
        (0..level as usize).map(|i| distinct[i % distinct.len()].clone()).collect()
    }

    pub fn member_at(&self, level: u64, k: &EventualFn) -> ClopenSet {
        let words = self.words_at(level, k);
        ClopenSet::from_words(words.iter().map(|w| w.as_slice()))
    }

    /// Points of `x` in every member of the block: its anchors, since the
    /// prefixes grow without bound.
    pub fn trace(&self, x: &Universe) -> Vec<usize> {
        (0..x.len()).filter(|&i| self.anchors.contains(&x.points()[i])).collect()
    }
}

impl LevelWitness {
    pub fn validate(&self) -> Result<()> {
        if self.blocks.is_empty() {
            return Err(Error::invalid("level witness has no blocks"));
        }
        self.blocks.iter().enumerate().try_for_each(|(i, b)| b.validate(i as u64))
    }

    /// Whether the derived traces cover the universe.
    pub fn covers(&self, x: &Universe) -> bool {
        (0..x.len()).all(|i| self.blocks.iter().any(|b| b.trace(x).contains(&i)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmzPiece {
    pub level: u64,
    #[serde(with = "bits::serde_words")]
    pub words: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmzCover {
    pub levels: Vec<u64>,
    pub pieces: Vec<SmzPiece>,
    pub covers: Verdict,
    /// Every piece has exactly `m_n` words of length `k_{m_n}`.
    pub shapes_ok: bool,
}

/// Descends through the levels, taking from `𝒱_n` a member at a level above
/// the previous one, until the chosen members cover the universe.
pub fn smz_pipeline(x: &Universe, k: &EventualFn, w: &LevelWitness) -> Result<SmzCover> {
    if !k.is_strictly_increasing() {
        return Err(Error::invalid("the depth schedule must be strictly increasing"));
    }
    w.validate()?;
    if !w.covers(x) {
        return Err(Error::violation("the witness's derived family does not cover the universe"));
    }
    let r = w.blocks.len();
    let mut levels = Vec::new();
    let mut pieces = Vec::new();
    let mut covered = vec![false; x.len()];
    let mut prev: Option<u64> = None;
    let mut n = 0usize;
    while covered.iter().any(|c| !c) || n < r {
        let block = &w.blocks[n % r];
        let from = prev.map_or(0, |m| m + 1);
        let level = block.levels.min_at_least(from).expect("infinite levels");
        if level > MAX_LEVEL {
            return Err(Error::Horizon { reason: format!("position {n} needs level {level}"), horizon: MAX_LEVEL });
        }
        let piece = SmzPiece { level, words: block.words_at(level, k) };
        let member = block.member_at(level, k);
        for (c, p) in covered.iter_mut().zip(x.points()) {
            *c |= member.contains(p);
        }
        levels.push(level);
        pieces.push(piece);
        prev = Some(level);
        n += 1;
    }
    let shapes_ok = pieces
        .iter()
        .all(|p| p.words.len() as u64 == p.level && p.words.iter().all(|wd| wd.len() as u64 == k.eval(p.level)));
    Ok(SmzCover { levels, pieces, covers: Verdict::from_bool(covered.iter().all(|&c| c)), shapes_ok })
}
