//! Seeded generators of small instances that satisfy each construction's
//! hypotheses by construction. Used by randomized tests and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cantor::{ClopenSet, Point};
use crate::covers::{classify, AInfWitness, CoverFamily, IndexFamily, Selection, Universe};
use crate::eventual::EventualFn;
use crate::natsets::NatSet;
use crate::search::{search_ainf_witness, search_profile, SearchOutcome, SearchSpace, Target};
use crate::selectors::{power_profile, AffinePencil, FunctionGrid, LevelBlock, LevelWitness};

/// Attempts per rejection-sampled instance before giving up.
const TRIES: usize = 200;

fn word<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<bool> {
    (0..len).map(|_| rng.gen_bool(0.5)).collect()
}

pub fn point<R: Rng + ?Sized>(rng: &mut R, max_pre: usize, max_per: usize) -> Point {
    let pre = rng.gen_range(0..=max_pre);
    let per = rng.gen_range(1..=max_per.max(1));
    Point::from_parts(word(rng, pre), word(rng, per)).expect("nonempty period")
}

pub fn natset<R: Rng + ?Sized>(rng: &mut R, max_pre: usize, max_per: usize) -> NatSet {
    let pre = rng.gen_range(0..=max_pre);
    let per = rng.gen_range(1..=max_per.max(1));
    NatSet::from_parts(word(rng, pre), word(rng, per)).expect("nonempty period")
}

/// `n` distinct points with preperiod ≤ 3 and period ≤ 2.
pub fn universe<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Universe {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = point(rng, 3, 2);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    Universe::new(pts).expect("distinct points")
}

/// A point outside `avoid` and outside `base`.
fn fresh<R: Rng + ?Sized>(rng: &mut R, avoid: &[Point], base: &ClopenSet) -> Option<Point> {
    (0..TRIES).map(|_| point(rng, 4, 3)).find(|p| !avoid.contains(p) && !base.contains(p))
}

pub fn clopen<R: Rng + ?Sized>(rng: &mut R, max_words: usize, max_len: usize) -> ClopenSet {
    let words: Vec<Vec<bool>> = (0..rng.gen_range(0..=max_words)).map(|_| {
        let len = rng.gen_range(1..=max_len.max(1));
        word(rng, len)
    }).collect();
    ClopenSet::from_words(words.iter().map(|w| w.as_slice()))
}

/// A clopen set holding each point of `pts` through a short prefix.
fn neighbourhood(pts: &[Point], depth: u64) -> ClopenSet {
    let words: Vec<Vec<bool>> = pts.iter().map(|p| p.prefix(depth)).collect();
    ClopenSet::from_words(words.iter().map(|w| w.as_slice()))
}

/// A proper, injectively enumerated γ-cover of `x`: shrinking neighbourhoods
/// of anchors, or the space minus shrinking neighbourhoods of holes.
pub fn gamma_cover<R: Rng + ?Sized>(rng: &mut R, x: &Universe) -> CoverFamily {
    for _ in 0..TRIES {
        let base = if rng.gen_bool(0.5) { ClopenSet::empty() } else { clopen(rng, 2, 3) };
        let u = if rng.gen_bool(0.5) {
            let mut anchors: Vec<Point> = x.points().iter().filter(|p| !base.contains(p)).cloned().collect();
            if anchors.is_empty() || rng.gen_bool(0.3) {
                match fresh(rng, x.points(), &base) {
                    Some(p) => anchors.push(p),
                    None => continue,
                }
            }
            CoverFamily::Anchored { base, anchors, offset: rng.gen_range(1..=3) }
        } else {
            let holes: Vec<Point> = (0..rng.gen_range(1..=2)).filter_map(|_| fresh(rng, x.points(), &base)).collect();
            if holes.is_empty() {
                continue;
            }
            CoverFamily::Punctured { base, holes, offset: rng.gen_range(0..=2) }
        };
        if is_proper_gamma(&u, x) {
            return u;
        }
    }
    // Far-off single hole: always a proper injective γ-cover.
    let hole = fresh(rng, x.points(), &ClopenSet::empty()).expect("points outside a finite set");
    CoverFamily::Punctured { base: ClopenSet::empty(), holes: vec![hole], offset: 0 }
}

fn is_proper_gamma(u: &CoverFamily, x: &Universe) -> bool {
    u.injective().is_true()
        && classify(u, x, 64).is_ok_and(|r| r.is_gamma.is_true() && r.proper.is_true())
}

/// A schedule that is an ω-cover of `x`: random members plus one member
/// containing the whole universe.
pub fn omega_schedule<R: Rng + ?Sized>(rng: &mut R, x: &Universe) -> CoverFamily {
    let depth = rng.gen_range(2..=4);
    let mut per: Vec<ClopenSet> = (0..rng.gen_range(1..=3)).map(|_| clopen(rng, 2, 3)).filter(|c| !c.is_full()).collect();
    let all = neighbourhood(x.points(), depth);
    let all = if all.is_full() { neighbourhood(x.points(), 6) } else { all };
    let at = rng.gen_range(0..=per.len());
    per.insert(at, all);
    let pre = (0..rng.gen_range(0..=2)).map(|_| clopen(rng, 2, 2)).filter(|c| !c.is_full()).collect();
    CoverFamily::Schedule { pre, per }
}

/// A random rule-based family, not necessarily a cover.
pub fn rule_family<R: Rng + ?Sized>(rng: &mut R, x: &Universe) -> CoverFamily {
    match rng.gen_range(0..4) {
        0 => gamma_cover(rng, x),
        1 => omega_schedule(rng, x),
        2 => {
            let len = rng.gen_range(0..=2);
            CoverFamily::TailCylinder { word: word(rng, len) }
        }
        _ => {
            let base = clopen(rng, 2, 3);
            let anchors = (0..rng.gen_range(1..=3)).map(|_| point(rng, 3, 2)).collect();
            CoverFamily::Anchored { base, anchors, offset: rng.gen_range(1..=2) }
        }
    }
}

/// A family `e` with `u_n ⊆ e_n ≠ space` for every `n`, infinite whenever
/// `u` is. `None` if no such expansion was drawn.
pub fn expansion<R: Rng + ?Sized>(rng: &mut R, u: &CoverFamily) -> Option<CoverFamily> {
    for _ in 0..TRIES {
        let extra = if rng.gen_bool(0.4) { ClopenSet::empty() } else { clopen(rng, 2, 3) };
        let e = match u {
            CoverFamily::Anchored { base, anchors, offset } => {
                let base = base.union(&extra);
                let mut anchors = anchors.clone();
                if rng.gen_bool(0.3) {
                    anchors.push(point(rng, 3, 2));
                }
                if !anchors.iter().any(|a| !base.contains(a)) {
                    continue;
                }
                CoverFamily::Anchored { base, anchors, offset: rng.gen_range(1..=*offset) }
            }
            CoverFamily::Punctured { base, holes, offset } => {
                let base = base.union(&extra);
                let mut holes: Vec<Point> = holes.iter().filter(|h| !base.contains(h)).cloned().collect();
                holes.shuffle(rng);
                holes.truncate(rng.gen_range(1..=holes.len().max(1)));
                if holes.is_empty() {
                    continue;
                }
                CoverFamily::Punctured { base, holes, offset: offset + rng.gen_range(0..=2) }
            }
            // `[0^n]` has no anchored expansion: offset 0 makes member 0 full.
            CoverFamily::TailCylinder { word: w } if w.is_empty() => return None,
            CoverFamily::TailCylinder { word: w } => {
                let anchor = Point::constant(false).prepend(w);
                if extra.contains(&anchor) {
                    continue;
                }
                let offset = (w.len() as u64).saturating_sub(rng.gen_range(0..=1)).max(1);
                CoverFamily::Anchored { base: extra, anchors: vec![anchor], offset }
            }
            CoverFamily::Schedule { pre, per } => {
                let mut grow = |c: &ClopenSet| {
                    let bigger = c.union(&clopen(rng, 1, 3));
                    if bigger.is_full() { c.clone() } else { bigger }
                };
                CoverFamily::Schedule { pre: pre.iter().map(&mut grow).collect(), per: per.iter().map(&mut grow).collect() }
            }
            _ => return None,
        };
        if crate::covers::derefine(u, &e, 64).is_ok() {
            return Some(e);
        }
    }
    None
}

/// `count` independent γ-covers of `x`.
pub fn gamma_covers<R: Rng + ?Sized>(rng: &mut R, x: &Universe, count: usize) -> Vec<CoverFamily> {
    (0..count).map(|_| gamma_cover(rng, x)).collect()
}

/// Finite selections for `sakai_s1`: one to two slots with rules.
pub fn slots<R: Rng + ?Sized>(rng: &mut R) -> Vec<Selection> {
    (0..rng.gen_range(1..=2))
        .map(|_| match rng.gen_range(0..3) {
            0 => Selection::affine(Vec::new(), 1, rng.gen_range(0..=2)),
            1 => Selection::affine(vec![rng.gen_range(0..3)], rng.gen_range(1..=2), 0),
            _ => Selection::periodic((0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..4)).collect()),
        })
        .collect()
}

/// A level witness for `x` whose blocks are anchored at the universe itself.
pub fn level_witness<R: Rng + ?Sized>(rng: &mut R, x: &Universe) -> LevelWitness {
    let n = x.len() as u64;
    let levels = |rng: &mut R, need: u64| match rng.gen_range(0..2) {
        0 => NatSet::tail(need + rng.gen_range(0..=1)),
        _ => {
            let q = rng.gen_range(2..=3);
            NatSet::arith(need + rng.gen_range(0..q), q)
        }
    };
    if rng.gen_bool(0.5) {
        LevelWitness { blocks: vec![LevelBlock { levels: levels(rng, n), anchors: x.points().to_vec() }] }
    } else {
        LevelWitness {
            blocks: x.points().iter().map(|p| LevelBlock { levels: levels(rng, 1), anchors: vec![p.clone()] }).collect(),
        }
    }
}

/// A grid of `1..=3` hole patterns.
pub fn grid<R: Rng + ?Sized>(rng: &mut R) -> FunctionGrid {
    let q = rng.gen_range(1..=3);
    let pump_len = rng.gen_range(1..=2);
    FunctionGrid {
        prefixes: (0..q).map(|_| {
            let len = rng.gen_range(0..=3);
            word(rng, len)
        }).collect(),
        pump: word(rng, pump_len),
        tails: (0..q).map(|_| point(rng, 2, 2)).collect(),
        offset: rng.gen_range(0..=3),
    }
}

/// Eventually affine bounds of slope at most 2.
pub fn bound<R: Rng + ?Sized>(rng: &mut R) -> EventualFn {
    match rng.gen_range(0..3) {
        0 => EventualFn::constant(rng.gen_range(0..=4)),
        1 => EventualFn::affine(1, rng.gen_range(0..=4)),
        _ => EventualFn::affine(2, rng.gen_range(0..=2)),
    }
}

/// An increasing pencil, selections whose maximum is at least
/// `base + 3n·slope`, and a witness whose sets have unbounded minima.
pub fn pencil<R: Rng + ?Sized>(rng: &mut R) -> (AffinePencil, u64, Vec<EventualFn>, AInfWitness) {
    let (a, b, c) = (rng.gen_range(1..=3), rng.gen_range(0..=4), rng.gen_range(1..=3));
    let y = AffinePencil { base: EventualFn::affine(a, b), slope: EventualFn::constant(c) };
    let mut selections = vec![EventualFn::affine(a + 3 * c, b + rng.gen_range(0..=2))];
    for _ in 0..rng.gen_range(0..=2) {
        selections.push(EventualFn::affine(rng.gen_range(0..=a + c), rng.gen_range(0..=8)));
    }
    selections.shuffle(rng);
    let w = match rng.gen_range(0..3) {
        0 => AInfWitness::tails(),
        1 => {
            let q = rng.gen_range(2..=3);
            AInfWitness::new(IndexFamily::Paired { blocks: vec![NatSet::arith(rng.gen_range(0..q), q)] })
        }
        _ => AInfWitness::new(IndexFamily::Paired { blocks: vec![NatSet::evens(), NatSet::odds()] }),
    };
    (y, rng.gen_range(0..=4), selections, w)
}

/// Universe of `1..=max_points` points, covers, finite selections and an
/// A∞(Ω) witness for the combined selections, found by catalog search.
pub fn sakai_instance<R: Rng + ?Sized>(
    rng: &mut R,
    max_points: usize,
) -> Option<(Universe, Vec<CoverFamily>, Vec<Selection>, AInfWitness)> {
    for _ in 0..TRIES {
        let n = rng.gen_range(1..=max_points);
        let x = universe(rng, n);
        let covers: Vec<CoverFamily> = (0..rng.gen_range(1..=3))
            .map(|_| if rng.gen_bool(0.5) { gamma_cover(rng, &x) } else { omega_schedule(rng, &x) })
            .collect();
        let slots = slots(rng);
        let combined = CoverFamily::Picked { covers: covers.clone(), slots: slots.clone() };
        let Ok(out) = search_ainf_witness(&combined, &x, Target::Omega, &SearchSpace::default()) else { continue };
        if let Some(w) = out.found {
            return Some((x, covers, slots, w));
        }
    }
    None
}

/// A family with exact incidences and a witness whose derived family covers.
pub fn cover_instance<R: Rng + ?Sized>(rng: &mut R, max_points: usize) -> Option<(Universe, CoverFamily, AInfWitness)> {
    for _ in 0..TRIES {
        let n = rng.gen_range(1..=max_points);
        let x = universe(rng, n);
        let u = match rng.gen_range(0..3) {
            0 => gamma_cover(rng, &x),
            1 => omega_schedule(rng, &x),
            _ => rule_family(rng, &x),
        };
        if u.injective().is_true() && rng.gen_bool(0.3) {
            if let Ok(w) = crate::selectors::tails_gamma(&u, &x, 64) {
                return Some((x, u, w));
            }
        }
        let Ok(out) = search_ainf_witness(&u, &x, Target::Cover, &SearchSpace::default()) else { continue };
        if let Some(w) = out.found {
            return Some((x, u, w));
        }
    }
    None
}

/// A family and, for each power `k = 1..=max_power`, a searched witness
/// whose derived family covers `X^k`.
pub fn powers_instance<R: Rng + ?Sized>(
    rng: &mut R,
    max_points: usize,
    max_power: usize,
) -> Option<(Universe, CoverFamily, Vec<AInfWitness>)> {
    'draw: for _ in 0..TRIES {
        let n = rng.gen_range(1..=max_points);
        let x = universe(rng, n);
        let u = if rng.gen_bool(0.5) { gamma_cover(rng, &x) } else { omega_schedule(rng, &x) };
        let mut witnesses = Vec::new();
        for k in 1..=max_power {
            let Ok((profile, _)) = power_profile(&u, &x, k) else { continue 'draw };
            match search_profile(&profile, Target::Cover, &SearchSpace::default()) {
                Ok(SearchOutcome { found: Some(w), .. }) => witnesses.push(w),
                _ => continue 'draw,
            }
        }
        return Some((x, u, witnesses));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_gamma_covers_are_gamma() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in 1..=6 {
            let x = universe(&mut rng, n);
            let u = gamma_cover(&mut rng, &x);
            assert!(is_proper_gamma(&u, &x), "{u:?}");
        }
    }

    #[test]
    fn schedules_are_omega() {
        let mut rng = StdRng::seed_from_u64(8);
        for n in 1..=4 {
            let x = universe(&mut rng, n);
            let u = omega_schedule(&mut rng, &x);
            let r = classify(&u, &x, 64).unwrap();
            assert!(r.is_omega.is_true() && r.proper.is_true(), "{u:?}");
        }
    }

    #[test]
    fn expansions_contain_members() {
        let mut rng = StdRng::seed_from_u64(9);
        let mut made = 0;
        for _ in 0..20 {
            let x = universe(&mut rng, 3);
            let u = rule_family(&mut rng, &x);
            if let Some(e) = expansion(&mut rng, &u) {
                made += 1;
                for n in 0..16 {
                    assert!(u.member_at(n).unwrap().is_subset(&e.member_at(n).unwrap()));
                }
            }
        }
        assert!(made >= 10);
    }
}
