use capinf_core::gen;
use capinf_core::search::{search_level_witness, SearchSpace};
use capinf_core::selectors::{
    borel_gamma_select, capinf_gg, hurewicz_bound, omochar_backward, omochar_forward, powers_lift, ruler, sakai_s1,
    smz_pipeline, tails_gamma, DefaultGammaSelector, FunctionGrid, HurewiczHorizons,
};
use capinf_core::{a_infinity, ClopenSet, EventualFn, Point};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const HORIZON: u64 = 64;

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Least `m <= 64` with `x` in `U^n_k` for every `m <= k < 160`.
fn brute_psi(grid: &FunctionGrid, x: &Point, n: u64) -> Option<u64> {
    let row = grid.row(n);
    let inside: Vec<bool> = (0..160).map(|k| row.member_at(k).unwrap().contains(x)).collect();
    (0..=64).find(|&m| inside[m as usize..].iter().all(|&b| b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tails_of_gamma_covers_are_gamma(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=6);
        let x = gen::universe(&mut r, n);
        let u = gen::gamma_cover(&mut r, &x);
        let w = tails_gamma(&u, &x, HORIZON).unwrap();
        prop_assert!(a_infinity(&u, &w, &x, HORIZON).unwrap().report.is_gamma.is_true());
    }

    #[test]
    fn capinf_fibers_are_gamma_by_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let x = gen::universe(&mut r, n);
        let count = r.gen_range(2..=4);
        let covers = gen::gamma_covers(&mut r, &x, count);
        let out = capinf_gg(&covers, &DefaultGammaSelector, &x, HORIZON).unwrap();
        let rr = covers.len() as u64;
        for (i, (u, d)) in covers.iter().zip(&out.derived).enumerate() {
            prop_assert!(out.witnesses[i].index_sets.distinct_infinite().is_true());
            for (p, inc) in x.points().iter().zip(&d.profile.incidences) {
                // Past the first derived index missing p, every fiber member holds p.
                let from = inc.exact().unwrap().complement().greatest().map_or(0, |g| g + 1);
                for j in from..from + 2 {
                    let exponent = i as u64 + j * rr;
                    if exponent > 40 {
                        continue;
                    }
                    // m + 1 = (2t + 1)·2^e are the positions with ruler value e.
                    for t in 0..3u64 {
                        let m = ((2 * t + 1) << exponent) - 1;
                        prop_assert_eq!(ruler(m), exponent);
                        let idx = out.selection.pick(m).unwrap();
                        let inside = if idx < 512 {
                            u.member_at(idx).unwrap().contains(p)
                        } else {
                            u.incidence(p).contains(idx) == Some(true)
                        };
                        prop_assert!(inside, "cover {} member {} misses {}", i, idx, p);
                    }
                }
            }
        }
    }

    #[test]
    fn sakai_selection_is_increasing_and_omega(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, covers, slots, w) = gen::sakai_instance(&mut r, 3).expect("instance");
        let out = sakai_s1(&covers, &slots, &w, &x, HORIZON).unwrap();
        prop_assert!(out.assigned.windows(2).all(|p| p[0] < p[1]));
        prop_assert!(out.report.is_omega.is_true());
        // Every subset of the universe sits in one picked member.
        let members: Vec<ClopenSet> = (0..out.selection.head.len() as u64)
            .map(|m| covers[(m % covers.len() as u64) as usize].member_at(out.selection.pick(m).unwrap()).unwrap())
            .collect();
        for mask in 1usize..(1 << x.len()) {
            let fits = members.iter().any(|c| (0..x.len()).filter(|i| mask >> i & 1 == 1).all(|i| c.contains(&x.points()[i])));
            prop_assert!(fits, "subset {:b}", mask);
        }
    }

    #[test]
    fn smz_pieces_have_exact_shapes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let x = gen::universe(&mut r, n);
        let w = gen::level_witness(&mut r, &x);
        let k = EventualFn::affine(1, 0);
        let out = smz_pipeline(&x, &k, &w).unwrap();
        prop_assert!(out.levels.windows(2).all(|p| p[0] < p[1]));
        for piece in &out.pieces {
            let set = ClopenSet::from_words(piece.words.iter().map(|w| w.as_slice()));
            prop_assert_eq!(piece.words.len() as u64, piece.level);
            prop_assert!(piece.words.iter().all(|w| w.len() as u64 == piece.level));
            prop_assert!(set.cylinders().len() as u64 <= piece.level);
        }
        let union = out.pieces.iter().fold(ClopenSet::empty(), |acc, p| acc.union(&ClopenSet::from_words(p.words.iter().map(|w| w.as_slice()))));
        prop_assert!(x.points().iter().all(|p| union.contains(p)));
        prop_assert!(search_level_witness(&x, &k, &SearchSpace::default()).unwrap().found.is_some());
    }

    #[test]
    fn omochar_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, u, w) = gen::cover_instance(&mut r, 4).expect("instance");
        let fwd = omochar_forward(&w, &u, &x, HORIZON).unwrap();
        for b in &fwd.decomposition.blocks {
            for &i in &b.members {
                prop_assert!(b.set.almost_subset(&fwd.image.members[i]));
            }
        }
        let back = omochar_backward(&fwd.decomposition, &u, &x, HORIZON).unwrap();
        prop_assert!(back.derived.report.is_cover.is_true());
    }

    #[test]
    fn borel_psi_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let grid = gen::grid(&mut r);
        let pts: Vec<Point> = (0..3).map(|_| gen::point(&mut r, 3, 2)).collect();
        for p in &pts {
            let Ok(f) = grid.psi(p) else { continue };
            for n in 0..10 {
                prop_assert_eq!(Some(f.eval(n)), brute_psi(&grid, p, n), "{} at {}", p, n);
            }
        }
        let x = capinf_core::Universe::new(vec![Point::constant(false)]).unwrap();
        if grid.psi(&x.points()[0]).is_ok() {
            let g = gen::bound(&mut r);
            let out = borel_gamma_select(&grid, &x, &g, HORIZON).unwrap();
            prop_assert_eq!(out.covering.is_true(), out.good[0].is_infinite());
        }
    }

    #[test]
    fn hurewicz_bounds_hold(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (y, k, selections, w) = gen::pencil(&mut r);
        let out = hurewicz_bound(&y, k, &selections, &w, HurewiczHorizons::default()).unwrap();
        prop_assert!(out.bounded.is_true() && out.covers_horizon.is_true());
        for row in &out.sets {
            if let Some(b) = row.bound {
                for j in 0..=b.max(0) as u64 {
                    for &n in &row.rows {
                        let g = selections.iter().map(|s| s.eval(n)).max().unwrap();
                        prop_assert!(j as i64 > b || y.eval(j, n) <= g);
                    }
                }
            }
        }
    }

    #[test]
    fn powers_give_omega_up_to_k(seed in any::<u64>()) {
        let mut r = rng(seed);
        let kmax = r.gen_range(1..=3);
        let (x, u, ws) = gen::powers_instance(&mut r, 4, kmax).expect("instance");
        let out = powers_lift(&u, &x, &ws, kmax, HORIZON).unwrap();
        prop_assert!(out.is_omega_upto.is_true());
    }
}
