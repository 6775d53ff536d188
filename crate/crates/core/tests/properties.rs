use std::sync::Arc;

use mslab::banach::profile::radial_sample;
use mslab::banach::{
    disjoint_support_identity, hilbert_check, lp_counterexample, lp_pairing, lp_witnesses,
    profile_flags, stereographic, RadialProfile, StepFn1D, StepFn2D,
};
use mslab::katetov::{
    elementary_katetov, enumerate_katetov, extend_by_katetov, grid_size, is_katetov,
    kuratowski_embed, sup_distance, truncate_katetov,
};
use mslab::metric::{amalgamate, validate_metric, validate_metric_slow, validate_pseudometric};
use mslab::rado::{
    basis_member, rado_adjacent, rado_extension_witness, rado_metric, rado_space, BasisCode,
    RadoPoint,
};
use mslab::random::{
    random_bf_instance, random_katetov, random_katetov_family, random_ma_request, random_open_unit,
    random_space, random_uwmt_input, sub_rng,
};
use mslab::rational::{fmt_rational, from_units, parse_rational};
use mslab::urysohn::{
    back_and_forth_extend, finite_injectivity_check, fraisse_step, injectivity_chain, ma_extension,
    nonproper_witness, prop53_extension, uwmt_extension, Approximant, BfState,
};
use mslab::weak::{proximity_test, restrict_katetov, weak_seminorm, LandmarkSet};
use mslab::{int, rat, MetricSpace, PartialIsometry, Rational, Truncation};
use num_traits::Signed;
use proptest::prelude::*;
use rand::Rng;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1usize..6).prop_flat_map(|n| {
        proptest::collection::vec(0i64..=6, n * n).prop_map(move |u| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                int(0)
                            } else {
                                rat(u[i.min(j) * n + i.max(j)], 4)
                            }
                        })
                        .collect()
                })
                .collect()
        })
    })
}

fn space_from(seed: u64, n: usize, q: u64) -> Arc<MetricSpace> {
    Arc::new(random_space(&mut sub_rng(seed, 0), n, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn fast_validation_matches_triple_scan(d in small_matrix()) {
        let bound = rat(3, 2);
        let fast = validate_metric(&d, &bound).unwrap();
        let slow = validate_metric_slow(&d, &bound).unwrap();
        prop_assert_eq!(fast.is_pass(), slow.is_pass());
    }

    #[test]
    fn rationals_round_trip(n in -500i64..500, d in 1i64..60) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rational(&fmt_rational(&r)).unwrap(), r);
    }

    #[test]
    fn kuratowski_is_isometric(seed: u64, n in 1usize..7, q in 1u64..13) {
        let s = space_from(seed, n, q);
        let f = kuratowski_embed(&s);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(&sup_distance(&f[i], &f[j]).unwrap(), s.dist(i, j));
            }
        }
    }

    #[test]
    fn realizing_then_reading_back(seed: u64, n in 1usize..6, q in 2u64..13) {
        let xi = random_katetov(&mut sub_rng(seed, 1), n, q);
        // a zero value would duplicate a point
        prop_assume!(xi.values().iter().all(|v| *v > int(0)));
        let (ext, p) = extend_by_katetov(&xi).unwrap();
        let back = elementary_katetov(&Arc::new(ext), p).unwrap();
        prop_assert_eq!(&back.values()[..n], xi.values());
    }

    #[test]
    fn truncations_are_contractions(seed: u64, n in 1usize..6, q in 2u64..13) {
        let mut rng = sub_rng(seed, 2);
        let fam = random_katetov_family(&mut rng, n, q, 2);
        let lambda = random_open_unit(&mut rng, q);
        let before = sup_distance(&fam[0], &fam[1]).unwrap();
        for mode in [Truncation::Max, Truncation::Min] {
            let a = truncate_katetov(&fam[0], &lambda, mode).unwrap();
            let b = truncate_katetov(&fam[1], &lambda, mode).unwrap();
            let gap = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).max().unwrap();
            prop_assert!(gap <= before);
            if mode == Truncation::Max {
                prop_assert!(is_katetov(&a, fam[0].space()).unwrap().is_pass());
            }
        }
    }

    #[test]
    fn amalgam_restricts_to_factors(seed: u64, n in 2usize..6, m in 2usize..6, q in 1u64..9) {
        let mut rng = sub_rng(seed, 3);
        let x = random_space(&mut rng, n, q);
        let y = random_space(&mut rng, m, q);
        let glue = PartialIsometry::new(vec![0], vec![0]).unwrap();
        let a = amalgamate(&x, &y, &glue, None).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(a.space.dist(a.left[i], a.left[j]), x.dist(i, j));
            }
        }
        for i in 0..m {
            for j in 0..m {
                prop_assert_eq!(a.space.dist(a.right[i], a.right[j]), y.dist(i, j));
            }
        }
    }

    #[test]
    fn ma_outputs_are_metric(seed: u64) {
        let req = random_ma_request(&mut sub_rng(seed, 4), 8, 24);
        let out = ma_extension(&req).unwrap();
        prop_assert_eq!(out.space.dist(out.point, req.f.len()), &req.delta);
        prop_assert!(validate_metric(out.space.matrix(), out.space.diam_bound()).unwrap().is_pass());
    }

    #[test]
    fn uwmt_outputs_keep_the_input(seed: u64) {
        let (s, x, y, zs) = random_uwmt_input(&mut sub_rng(seed, 5), 8, 24);
        // the formula may not be a metric; when it is, the input sits inside untouched
        if let Ok(out) = uwmt_extension(&s, x, y, &zs) {
            for i in 0..s.len() {
                for j in 0..s.len() {
                    prop_assert_eq!(out.space.dist(i, j), s.dist(i, j));
                }
            }
            for (c, z) in out.copies.iter().zip(&zs) {
                prop_assert_eq!(out.space.dist(*c, y), s.dist(*z, x));
            }
        }
    }

    #[test]
    fn prop53_outputs_are_metric(seed: u64) {
        let (s, st, z) = random_bf_instance(&mut sub_rng(seed, 6), 8, 24);
        let out = prop53_extension(&s, &st, z).unwrap();
        let zp = out.point;
        prop_assert!(out.space.dist(zp, z) <= &st.eps);
        for &(x, y) in &st.pairs {
            prop_assert_eq!(out.space.dist(zp, y), s.dist(z, x));
        }
        prop_assert!(validate_metric(out.space.matrix(), out.space.diam_bound()).unwrap().is_pass());
    }

    #[test]
    fn chains_hit_both_distances(r in 1u64..=24, s in 1u64..=24, extra in 0u64..=24, q in 1u64..=24) {
        let diam = from_units(r.max(s) + extra, q);
        let (r, s) = (from_units(r, q), from_units(s, q));
        let c = injectivity_chain(&r, &s, &diam).unwrap();
        let n = c.len() - 1;
        prop_assert_eq!(c.dist(0, n), &s);
        for i in 0..n {
            prop_assert_eq!(c.dist(i, i + 1), &r);
        }
    }

    #[test]
    fn nonproper_profiles_are_katetov(seed: u64, n in 2usize..7, half_q in 1u64..8) {
        let mut rng = sub_rng(seed, 7);
        let s = random_space(&mut rng, n, 2 * half_q);
        let x = rng.gen_range(0..n);
        let zs: Vec<usize> = (0..n).filter(|&i| i != x).collect();
        let lambda = rat(1, 2);
        let out = nonproper_witness(&s, x, &zs, &lambda).unwrap();
        let base = Arc::new(s.subspace(&[vec![x], zs.clone()].concat()).unwrap());
        let profile: Vec<Rational> = (0..base.len()).map(|i| out.space.dist(out.point, i).clone()).collect();
        prop_assert!(is_katetov(&profile, &base).unwrap().is_pass());
        prop_assert_eq!(out.space.dist(out.point, 0), &lambda);
    }

    #[test]
    fn landmark_seminorms(seed: u64, n in 2usize..7, q in 1u64..13, cut in 1usize..7) {
        let s = space_from(seed, n, q);
        let cut = cut.min(n);
        let small = LandmarkSet::new(Arc::clone(&s), (0..cut.max(1).min(n)).collect()).unwrap();
        let big = LandmarkSet::all(Arc::clone(&s)).unwrap();
        let ws = weak_seminorm(&small);
        let wb = weak_seminorm(&big);
        prop_assert!(validate_pseudometric(&ws.matrix, s.diam_bound()).unwrap().is_pass());
        for i in 0..n {
            for j in 0..n {
                prop_assert!(ws.matrix[i][j] <= wb.matrix[i][j]);
                prop_assert_eq!(&wb.matrix[i][j], s.dist(i, j));
            }
        }
        let eps = from_units(1, q);
        let a = vec![0];
        let b = vec![n - 1];
        let pb = proximity_test(&a, &b, &big, &eps).unwrap();
        let ps = proximity_test(&a, &b, &small, &eps).unwrap();
        prop_assert!(!pb.is_pass() || ps.is_pass());
    }

    #[test]
    fn restriction_never_stretches(seed: u64, n in 2usize..7, q in 1u64..13, mask in 1u32..128) {
        let fam = random_katetov_family(&mut sub_rng(seed, 8), n, q, 2);
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        prop_assume!(!subset.is_empty());
        let before = sup_distance(&fam[0], &fam[1]).unwrap();
        let a = restrict_katetov(&fam[0], &subset).unwrap();
        let b = restrict_katetov(&fam[1], &subset).unwrap();
        prop_assert!(sup_distance(&a, &b).unwrap() <= before);
    }

    #[test]
    fn sphere_identity(seed: u64, dim in 2usize..=6) {
        let mut rng = sub_rng(seed, 9);
        let mut point = || stereographic(&(0..dim - 1).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))).collect::<Vec<_>>());
        let (u, v, z) = (point(), point(), point());
        prop_assert!(hilbert_check(&u, &v, &z, 1e-9).unwrap().is_pass());
    }

    #[test]
    fn pairing_is_bilinear(a in -5i64..5, b in 1i64..5, seed: u64) {
        let (w, w2, v) = lp_witnesses();
        let c = rat(a, b);
        let z = mslab::banach::lp::random_step_1d(&mut sub_rng(seed, 10));
        let cz = StepFn1D::new(z.breaks.clone(), z.values.iter().map(|x| x * &c).collect()).unwrap();
        prop_assert_eq!(lp_pairing(&v, &cz), &c * lp_pairing(&v, &z));
        let sum = w.add(&w2.scale(&c));
        prop_assert_eq!(lp_pairing(&sum, &z), lp_pairing(&w, &z) + &c * lp_pairing(&w2, &z));
    }

    #[test]
    fn lp_exponents_separate_off_two(n in 1i64..12, d in 1i64..5, seed: u64) {
        let p = rat(n, d);
        prop_assume!(p >= int(1));
        let r = lp_counterexample(&p, 5, &mut sub_rng(seed, 11)).unwrap();
        prop_assert_eq!(r.is_pass(), p != int(2));
        prop_assert_eq!(r.counts["nonzero_pairings"], 0);
    }

    #[test]
    fn disjoint_identity_exact(cells in proptest::collection::vec((0usize..3, -4i64..=4), 4), p in 1i64..=3) {
        let xb = vec![int(0), int(1), int(2)];
        let yb = vec![int(0), rat(1, 2), int(1)];
        let grid = |f: &dyn Fn(usize) -> Rational| vec![vec![f(0), f(1)], vec![f(2), f(3)]];
        let x = StepFn2D::new(xb.clone(), yb.clone(), grid(&|k| int(cells[k].1 - 1))).unwrap();
        let parts: Vec<StepFn2D> = (0..3)
            .map(|owner| StepFn2D::new(xb.clone(), yb.clone(), grid(&|k| if cells[k].0 == owner { int(cells[k].1) } else { int(0) })).unwrap())
            .collect();
        let r = disjoint_support_identity(&x, &parts, &int(p), 1e-12).unwrap();
        prop_assert!(r.is_pass());
    }

    #[test]
    fn profile_flags_survive_refinement(v1 in 0i64..=8, v2 in 0i64..=16, tail in 0i64..=4, at in 1i64..16) {
        let h = RadialProfile::new(vec![int(0), int(1), int(2)], vec![rat(v1, 4), rat(v2, 4), rat(v2 + 4, 4)], rat(tail, 4));
        prop_assume!(h.is_ok());
        let h = h.unwrap();
        let f = profile_flags(&h, &int(4)).unwrap();
        let g = profile_flags(&h.refine(&rat(at, 4)), &int(4)).unwrap();
        prop_assert_eq!(f.lipschitz1, g.lipschitz1);
        prop_assert_eq!(f.nondecreasing, g.nondecreasing);
        prop_assert_eq!(f.convex, g.convex);
        prop_assert_eq!(f.dominates_identity, g.dominates_identity);
        prop_assert_eq!(f.katetov_radial, g.katetov_radial);
    }

    #[test]
    fn radial_samples_are_katetov(
        v0 in 2i64..=4, slope in 2i64..=4,
        pts in proptest::collection::btree_set((-6i64..=6, -6i64..=6), 1..8),
    ) {
        let h = RadialProfile::new(vec![int(0), int(1)], vec![rat(v0, 4), rat(v0, 4) + rat(slope, 4)], rat(1, 1)).unwrap();
        let f = profile_flags(&h, &int(4)).unwrap();
        prop_assume!(f.lipschitz1 && f.dominates_identity);
        let points: Vec<Vec<Rational>> = pts.iter().map(|&(a, b)| vec![rat(a, 3), rat(b, 3)]).collect();
        let (space, values) = radial_sample(&h, &points).unwrap();
        prop_assert!(is_katetov(&values, &space).unwrap().is_pass());
    }

    #[test]
    fn rado_codes_adjacency(a in 0u64..(1 << 16), b in 0u64..(1 << 16)) {
        prop_assume!(a != b);
        prop_assert_eq!(rado_metric(a, b) == 1, rado_adjacent(a, b).unwrap());
        prop_assert_eq!(rado_metric(a, b), rado_metric(b, a));
    }

    #[test]
    fn rado_metric_on_random_sets(vs in proptest::collection::btree_set(0u64..(1 << 16), 1..40)) {
        let vs: Vec<u64> = vs.into_iter().collect();
        prop_assert!(rado_space(&vs).is_ok());
    }

    #[test]
    fn rado_witness_contract(u in proptest::collection::btree_set(0u64..40, 0..6), v in proptest::collection::btree_set(0u64..40, 0..6)) {
        let v: Vec<u64> = v.difference(&u).copied().collect();
        let u: Vec<u64> = u.into_iter().collect();
        let w = rado_extension_witness(&u, &v).unwrap();
        prop_assert!(u.iter().all(|&x| rado_adjacent(w, x).unwrap()));
        prop_assert!(v.iter().all(|&x| !rado_adjacent(w, x).unwrap()));
    }

    #[test]
    fn basis_membership_is_monotone(
        code in proptest::collection::btree_map(0u64..12, 1u8..=2, 0..4),
        more in proptest::collection::btree_map(12u64..20, 1u8..=2, 0..3),
        vertex in 0u64..4096,
    ) {
        let p = BasisCode::new(code).unwrap();
        let q = p.union(&BasisCode::new(more).unwrap()).unwrap();
        prop_assert_eq!(q.to_string().parse::<BasisCode>().unwrap(), q.clone());
        let x = RadoPoint::Vertex(vertex);
        if basis_member(&q, &x).unwrap() {
            prop_assert!(basis_member(&p, &x).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enumeration_matches_naive_filter(seed: u64, n in 1usize..=3, q in 1u64..=4, mult in 1u64..=2) {
        prop_assume!(q * mult <= 4);
        let s = space_from(seed, n, q);
        let denom = q * mult;
        let grid = grid_size(s.diam_bound(), denom).unwrap();
        let mut naive = 0u64;
        let mut idx = vec![0u64; n];
        'outer: loop {
            let values: Vec<Rational> = idx.iter().map(|&u| from_units(u, denom)).collect();
            if is_katetov(&values, &s).unwrap().is_pass() {
                naive += 1;
            }
            for k in 0..n {
                idx[k] += 1;
                if idx[k] < grid {
                    continue 'outer;
                }
                idx[k] = 0;
            }
            break;
        }
        let fast = enumerate_katetov(&s, denom).unwrap().count() as u64;
        prop_assert_eq!(fast, naive);
    }

    #[test]
    fn back_and_forth_keeps_an_isometry(seed: u64, steps in 1usize..4) {
        let mut rng = sub_rng(seed, 12);
        let seed_space = MetricSpace::from_matrix(vec![vec![int(0), rat(1, 2)], vec![rat(1, 2), int(0)]], int(1)).unwrap();
        let a = fraisse_step(&fraisse_step(&Approximant::seed(&seed_space, 4, 2).unwrap()).unwrap()).unwrap();
        let snap = a.snapshot(1).unwrap();
        prop_assert!(finite_injectivity_check(&a, &snap, 2, 4).unwrap().is_pass());
        let eps = rat(1, 4);
        let mut st = BfState::identity(&[snap[rng.gen_range(0..snap.len())]], eps.clone());
        for step in 0..steps {
            let free: Vec<usize> = snap.iter().copied().filter(|z| !st.domain().any(|x| x == *z)).collect();
            let z = free[rng.gen_range(0..free.len())];
            // two rounds only promise one-point extensions over pairs, so later steps may stall
            st = match back_and_forth_extend(&a, &st, z) {
                Ok(next) => next,
                Err(mslab::Error::Unsaturated) if step > 0 => break,
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            };
            st.validate_in(&a).unwrap();
            for &(x, y) in &st.pairs {
                prop_assert!(a.dist(x, y) <= eps);
            }
        }
    }
}
