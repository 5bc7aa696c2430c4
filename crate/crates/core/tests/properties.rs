use foldlab_core::folding::{embed_dominant, fold, jantzen_partner, validate_automorphism};
use foldlab_core::gaudin::{psi_eval_symbolic, run_spectrum, LoopMonomial, SpectrumStatus};
use foldlab_core::invariants::{compatible_pair, folded_pair, principal_triple, sigma_section_check};
use foldlab_core::opers::{gauge_reduce, gauge_transform, random_connection, random_gauge, sigma_on_canonical, sigma_on_oper, OperConnection};
use foldlab_core::linalg::Matrix;
use foldlab_core::rational::{q, Q};
use foldlab_core::realization::{realization, ALGEBRAS};
use foldlab_core::reps::{check_intertwining, construct_module, freudenthal, sigma_on_module, weyl_dim};
use foldlab_core::rootdata::{build_root_datum, positive_roots, weyl_orbit_dominant_rep, Isogeny, Series};
use foldlab_core::tensor_maps::{character_product, dim_gl, dualize_a, lr_coefficients, weight_map_a, Partition};
use foldlab_core::uea::Pbw;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn datum_strategy() -> impl Strategy<Value = (Series, usize, Isogeny)> {
    let types = prop_oneof![
        (1usize..=7).prop_map(|r| (Series::A, r)),
        (2usize..=6).prop_map(|r| (Series::B, r)),
        (2usize..=6).prop_map(|r| (Series::C, r)),
        (4usize..=6).prop_map(|r| (Series::D, r)),
        (6usize..=8).prop_map(|r| (Series::E, r)),
        Just((Series::F, 4)),
        Just((Series::G, 2)),
    ];
    (types, prop_oneof![Just(Isogeny::SimplyConnected), Just(Isogeny::Adjoint)]).prop_map(|((s, r), i)| (s, r, i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pairing_reproduces_cartan((s, r, i) in datum_strategy()) {
        let d = build_root_datum(s, r, i).unwrap();
        prop_assert_eq!(d.pairing_cartan(), d.cartan);
    }

    #[test]
    fn dominant_rep_is_idempotent_and_w_invariant(
        (s, r, i) in datum_strategy(),
        coords in prop::collection::vec(-4i64..=4, 8),
        k in 0usize..8,
    ) {
        let d = build_root_datum(s, r, i).unwrap();
        let w = d.weight(coords[..r].to_vec());
        let rep = weyl_orbit_dominant_rep(&d, &w).unwrap();
        prop_assert!(d.is_dominant(&rep.coords));
        prop_assert_eq!(&weyl_orbit_dominant_rep(&d, &rep).unwrap(), &rep);
        let moved = d.weight(d.reflect(k % r, &w.coords));
        prop_assert_eq!(weyl_orbit_dominant_rep(&d, &moved).unwrap(), rep);
    }

    #[test]
    fn lr_matches_characters_and_dimensions(
        a in prop::collection::vec(0i64..=3, 3),
        b in prop::collection::vec(0i64..=3, 3),
        n in 2usize..=4,
    ) {
        let sorted = |v: &[i64]| { let mut v = v[..n.min(3)].to_vec(); v.sort_unstable_by(|x, y| y.cmp(x)); v };
        let (lam, mu) = (Partition::new(&sorted(&a)).unwrap(), Partition::new(&sorted(&b)).unwrap());
        prop_assume!(dim_gl(&lam, n) * dim_gl(&mu, n) <= 10_000);
        let lr = lr_coefficients(&lam, &mu, n).unwrap();
        let total: u64 = lr.iter().map(|(nu, c)| c * dim_gl(nu, n)).sum();
        prop_assert_eq!(total, dim_gl(&lam, n) * dim_gl(&mu, n));
        let by_char = character_product(&lam, &mu, n).unwrap();
        let normalize = |m: &std::collections::BTreeMap<Partition, u64>| {
            m.iter().map(|(p, c)| (p.normalized(n), *c)).collect::<std::collections::BTreeMap<_, _>>()
        };
        prop_assert_eq!(normalize(&lr), normalize(&by_char));
    }

    #[test]
    fn dualize_is_an_involution(parts in prop::collection::vec(0i64..=6, 1..=4), n in 2usize..=5) {
        let mut v = parts;
        v.truncate(n);
        v.sort_unstable_by(|x, y| y.cmp(x));
        let p = Partition::new(&v).unwrap().normalized(n);
        let d = dualize_a(&p, n).unwrap();
        prop_assert_eq!(dualize_a(&d, n).unwrap(), p);
    }

    #[test]
    fn weight_map_image_is_self_dual(parts in prop::collection::vec(0i64..=5, 1..=3)) {
        let n = parts.len();
        let mut v = parts;
        v.sort_unstable_by(|x, y| y.cmp(x));
        let img = Partition::new(&weight_map_a(&Partition::new(&v).unwrap(), n).unwrap()).unwrap();
        let m = 2 * n;
        prop_assert_eq!(dualize_a(&img, m).unwrap(), img.normalized(m));
    }

    #[test]
    fn sl2_closed_form(a in prop::collection::vec(-5i64..=5, 1..=5), b in prop::collection::vec(-5i64..=5, 1..=5)) {
        let g = realization("sl2").unwrap();
        let s = principal_triple(&g).unwrap();
        let order = 8;
        let len = a.len().max(b.len());
        let at = |k: usize| q(*a.get(k).unwrap_or(&0));
        let bt = |k: usize| q(*b.get(k).unwrap_or(&0));
        let coeffs = (0..len).map(|k| vec![at(k), bt(k), if k == 0 { q(1) } else { q(0) }]).collect();
        let c = OperConnection { algebra: "sl2".into(), pole_order: 0, coeffs };
        let r = gauge_reduce(&g, &s, &c, order).unwrap();
        for k in 0..order {
            let a2: Q = (0..=k).map(|i| at(i) * at(k - i)).sum();
            prop_assert_eq!(&r.coeffs[0][k], &(bt(k) + a2 + q(k as i64 + 1) * at(k + 1)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gauge_reduce_is_a_retraction(seed in any::<u64>(), which in 0usize..3) {
        let name = ["sl2", "sl3", "sp4"][which];
        let g = realization(name).unwrap();
        let s = principal_triple(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_connection(&g, &mut rng, 3);
        let r = gauge_reduce(&g, &s, &c, 8).unwrap();
        prop_assert_eq!(&gauge_reduce(&g, &s, &r.to_connection(&s), 8).unwrap(), &r);
        let moved = gauge_transform(&g, &c, &random_gauge(&g, &mut rng, 3)).unwrap();
        prop_assert_eq!(gauge_reduce(&g, &s, &moved, 8).unwrap(), r);
    }

    #[test]
    fn reduce_commutes_with_sigma(seed in any::<u64>(), which in 0usize..2) {
        let name = ["sl3", "sl4"][which];
        let g = realization(name).unwrap();
        let s = principal_triple(&g).unwrap();
        let sigma = g.sigma.as_ref().unwrap().matrix.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_connection(&g, &mut rng, 3);
        let lhs = gauge_reduce(&g, &s, &sigma_on_oper(&sigma, &c).unwrap(), 6).unwrap();
        let rhs = sigma_on_canonical(&sigma, &s, &gauge_reduce(&g, &s, &c, 6).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn psi_is_an_antihomomorphism(
        m1 in prop::collection::vec((0usize..8, 1i64..=3), 1..=2),
        m2 in prop::collection::vec((0usize..8, 1i64..=3), 1..=2),
    ) {
        let g = realization("sl3").unwrap();
        let pbw = Pbw::new(&g);
        let neg = |m: &[(usize, i64)]| LoopMonomial(m.iter().map(|&(a, r)| (a, -r)).collect());
        let (x, y) = (neg(&m1), neg(&m2));
        let mut xy = x.0.clone();
        xy.extend(y.0.clone());
        let lhs = psi_eval_symbolic(&pbw, &LoopMonomial(xy)).unwrap();
        let rhs = psi_eval_symbolic(&pbw, &y).unwrap().mul(&psi_eval_symbolic(&pbw, &x).unwrap(), &pbw);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compatible_pairs_match(seed in any::<u64>(), which in 0usize..3) {
        let pair_name = ["sl4:sp4", "sl3:so3", "sl5:so5"][which];
        let pair = folded_pair(pair_name).unwrap();
        let data = sigma_section_check(&pair).unwrap();
        let c = compatible_pair(&pair, &data, seed, 50).unwrap();
        prop_assert!(c.matched && c.regular);
        prop_assert_eq!(c.parent_values, c.predicted_values);
    }
}

/// Sigma-invariant dominant weights of `A_rank` with dimension at most `cap`.
fn invariant_weights(rank: usize, cap: u64) -> Vec<Vec<i64>> {
    let d = build_root_datum(Series::A, rank, Isogeny::SimplyConnected).unwrap();
    let dim = |m: &[i64]| weyl_dim(&d, &d.weight(d.from_fundamental(m).unwrap())).unwrap();
    let mut out = vec![];
    for a in 0..6 {
        for b in 0..6 {
            let m = if rank == 2 { vec![a, a] } else { vec![a, b, a] };
            if dim(&m) <= cap && !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

#[test]
fn modules_agree_with_freudenthal_and_are_w_symmetric() {
    for (s, r) in [(Series::A, 2), (Series::A, 3), (Series::B, 2), (Series::G, 2)] {
        let d = build_root_datum(s, r, Isogeny::SimplyConnected).unwrap();
        for m in [vec![1; r], { let mut v = vec![0; r]; v[0] = 2; v }, { let mut v = vec![0; r]; v[r - 1] = 1; v }] {
            let lam = d.weight(d.from_fundamental(&m).unwrap());
            let diagram = freudenthal(&d, &lam).unwrap();
            let module = construct_module(&d, &lam, 400).unwrap();
            assert!(module.check_relations(), "{s:?}{r} {m:?}");
            let spaces = module.weight_spaces();
            assert_eq!(spaces.len(), diagram.entries.len());
            for (w, idx) in &spaces {
                assert_eq!(diagram.mult(w), idx.len() as u64, "{s:?}{r} {m:?} {w:?}");
            }
            for (w, &mult) in &diagram.entries {
                for i in 0..r {
                    assert_eq!(diagram.mult(&d.reflect(i, w)), mult);
                }
            }
        }
    }
}

#[test]
fn sigma_intertwines_on_invariant_modules() {
    for rank in [2, 3] {
        let d = build_root_datum(Series::A, rank, Isogeny::SimplyConnected).unwrap();
        let s = validate_automorphism(&(0..rank).rev().collect::<Vec<_>>(), &d).unwrap();
        for m in invariant_weights(rank, 100) {
            let module = construct_module(&d, &d.weight(d.from_fundamental(&m).unwrap()), 400).unwrap();
            let op = sigma_on_module(&module, &s).unwrap();
            assert!(check_intertwining(&module, &s, &op), "A{rank} {m:?}");
        }
    }
}

#[test]
fn embed_dominant_is_a_section() {
    for (series, rank, perm) in [(Series::A, 3, vec![2, 1, 0]), (Series::A, 4, vec![3, 2, 1, 0]), (Series::D, 4, vec![0, 1, 3, 2]), (Series::E, 6, vec![5, 1, 4, 3, 2, 0])] {
        let d = build_root_datum(series, rank, Isogeny::SimplyConnected).unwrap();
        let s = validate_automorphism(&perm, &d).unwrap();
        let p = jantzen_partner(&d, &s).unwrap();
        let r = p.datum.rank();
        for k in 0..r {
            for c in 0..3 {
                let mut a = vec![0; r];
                a[k] = c;
                a[(k + 1) % r] += 1;
                let lam = p.datum.weight(p.datum.from_fundamental(&a).unwrap());
                let up = embed_dominant(&p, &lam).unwrap();
                assert!(d.is_dominant(&up.coords));
                assert_eq!(p.restrict_fixed(&up.coords), Some(lam.coords.clone()), "{series:?}{rank}");
            }
        }
    }
}

#[test]
fn no_doubling_without_adjacent_pairs() {
    for (series, rank, perm) in [(Series::A, 3, vec![2, 1, 0]), (Series::A, 5, vec![4, 3, 2, 1, 0]), (Series::D, 5, vec![0, 1, 2, 4, 3]), (Series::E, 6, vec![5, 1, 4, 3, 2, 0])] {
        let d = build_root_datum(series, rank, Isogeny::SimplyConnected).unwrap();
        let s = validate_automorphism(&perm, &d).unwrap();
        let f = fold(&d, &s).unwrap();
        assert!(f.orbits.iter().all(|o| !o.adjacent_pair));
        for (k, o) in f.orbits.iter().enumerate() {
            let sum: Vec<i64> = (0..rank).map(|c| o.nodes.iter().map(|&i| d.coroots[i][c]).sum()).collect();
            assert_eq!(f.restrict_fixed(&sum).unwrap(), f.datum.coroots[k], "{series:?}{rank}");
        }
    }
}

#[test]
fn realizations_are_closed_and_invariant() {
    for name in ALGEBRAS {
        let g = realization(name).unwrap();
        let n = g.dim();
        let comm = |x: &Matrix, y: &Matrix| x.mul(y).sub(&y.mul(x));
        let trace = |x: &Matrix| (0..x.rows).map(|i| x[(i, i)].clone()).sum::<Q>();
        for a in 0..n {
            for b in 0..n {
                let c = comm(&g.basis[a], &g.basis[b]);
                assert!(g.coords_checked(&c).is_some(), "{name}: bracket leaves the span");
                for e in 0..n {
                    // tr([x,y] z) = tr(x [y,z])
                    let lhs = trace(&c.mul(&g.basis[e]));
                    let rhs = trace(&g.basis[a].mul(&comm(&g.basis[b], &g.basis[e])));
                    assert_eq!(lhs, rhs, "{name}");
                }
            }
        }
        let l = g.rank;
        assert_eq!(g.dim_b(), l + positive_roots(&g.datum()).len());
    }
}

#[test]
fn spectra_are_complete_with_scalar_action() {
    for (name, lambda) in [("sl2", vec![3]), ("sl3", vec![1, 0]), ("sl3", vec![1, 1]), ("sp4", vec![1, 0])] {
        let g = realization(name).unwrap();
        let run = run_spectrum(&g, &lambda, None, false, 11, 400).unwrap();
        let sp = &run.spectrum;
        assert!(matches!(sp.status, SpectrumStatus::Simple), "{name} {lambda:?}");
        assert_eq!(sp.lines.len(), sp.module_dim);
        assert!(sp.commuting);
    }
}

#[test]
fn sigma_eigenlines_on_small_foldings() {
    for (name, rank) in [("sl3", 2), ("sl4", 3)] {
        let g = realization(name).unwrap();
        for m in invariant_weights(rank, 100) {
            let run = run_spectrum(&g, &m, None, true, 5, 400).unwrap();
            let s = run.sigma.unwrap();
            assert!(s.family_sigma_stable, "{name} {m:?}");
            if matches!(run.spectrum.status, SpectrumStatus::Simple) {
                assert!(s.pass, "{name} {m:?}: {s:?}");
            } else {
                eprintln!("{name} {m:?}: spectrum {:?}", run.spectrum.status);
            }
        }
    }
}
