use num::{BigInt, BigRational};
use proptest::prelude::*;

use hilbtaut::combinat::{self, Composition, Group, MultiIndexMap};
use hilbtaut::linalg;
use hilbtaut::perm;
use hilbtaut::poly::{rat, Poly};
use hilbtaut::polyjet::{self, DiagonalIdeal, PolyRing};
use hilbtaut::rroch::{self, SurfaceModel};
use hilbtaut::tautops;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n))
}

/// Elements of `I^l`: every two-point image is the same pair.
fn multi_index_map() -> impl Strategy<Value = MultiIndexMap> {
    (2usize..=3, 1usize..=4).prop_flat_map(|(n, k)| {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
        (prop::sample::select(pairs), prop::collection::vec(0..=n, k)).prop_map(move |((a, b), slots)| {
            // Slot value 0 means the pair, otherwise that single point.
            let images: Vec<Vec<usize>> =
                slots.iter().map(|&s| if s == 0 { vec![a, b] } else { vec![s] }).collect();
            MultiIndexMap::new(n, &images).unwrap()
        })
    })
}

fn two_point_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u16..3, 0u16..3, 0u16..3, 0u16..3), -5i64..=5), 1..6).prop_map(|terms| {
        let mut p = Poly::zero(4);
        for ((a, b, c, d), v) in terms {
            p.add_term(vec![a, b, c, d], rat(v));
        }
        p
    })
}

proptest! {
    #[test]
    fn bareiss_agrees_with_cofactor_expansion(m in small_matrix()) {
        let big = linalg::to_big_matrix(&m);
        prop_assert_eq!(linalg::det_bareiss(&big), linalg::det_cofactor(&big));
    }

    #[test]
    fn rank_ignores_row_scaling(m in small_matrix(), scales in prop::collection::vec(1i64..=6, 5)) {
        let ncols = m[0].len();
        let rows: Vec<_> = m.iter().map(|r| linalg::sparse_row(r.iter().copied().enumerate())).collect();
        let scaled: Vec<_> = m
            .iter()
            .zip(&scales)
            .map(|(r, s)| linalg::sparse_row(r.iter().map(|v| v * s).enumerate()))
            .collect();
        prop_assert_eq!(linalg::rank(&rows, ncols), linalg::rank(&scaled, ncols));
        prop_assert_eq!(linalg::rank(&rows, ncols), linalg::rank_dense(&linalg::to_big_matrix(&m)));
    }

    #[test]
    fn stabilizer_formula_matches_enumeration(a in multi_index_map()) {
        for g in [Group::H, Group::GxH] {
            prop_assert_eq!(combinat::stabilizer_order(&a, g), combinat::stabilizer_order_brute(&a, g).unwrap());
        }
    }

    #[test]
    fn stabilizers_are_constant_on_orbits(a in multi_index_map(), seed in 0usize..1000) {
        let sigmas = perm::all(a.n());
        let taus = perm::all(a.k());
        let b = a.act(&sigmas[seed % sigmas.len()], &taus[seed % taus.len()]);
        prop_assert_eq!(combinat::stabilizer_order(&a, Group::GxH), combinat::stabilizer_order(&b, Group::GxH));
    }

    #[test]
    fn composition_action_keeps_shape(v in prop::collection::vec(0usize..4, 1..5), seed in 0usize..120) {
        let c = Composition::new(v.clone());
        let group = perm::all(v.len());
        let moved = c.act(&group[seed % group.len()]);
        prop_assert_eq!(moved.weight(), c.weight());
        prop_assert_eq!(moved.nu(), c.nu());
    }

    #[test]
    fn multiples_of_diagonal_powers_are_detected(g in two_point_poly(), e in 1usize..4) {
        prop_assume!(!g.is_zero());
        let ring = PolyRing::new(2, 8);
        let pair = DiagonalIdeal::new(1, 2).unwrap();
        let u = &ring.x(1) - &ring.x(2);
        let f = &u.pow(e) * &g;
        prop_assert!(polyjet::in_ideal_power(&f, pair, e));
        // A pure power of y1 − y2 of lower order is never in the next power.
        let w = (&ring.y(1) - &ring.y(2)).pow(e - 1);
        prop_assert!(!polyjet::in_ideal_power(&w, pair, e));
    }

    #[test]
    fn difference_recursion_on_random_bases(l in 1usize..9, v in prop::collection::vec(0usize..3, 2..4)) {
        let mu = Composition::new(v.clone());
        let pair = DiagonalIdeal::new(1, v.len()).unwrap();
        let lhs = tautops::difference_coefficients(l, &mu, pair);
        let mut rhs = std::collections::BTreeMap::new();
        for (c, x) in tautops::difference_coefficients(l - 1, &mu.plus_unit(pair.a0, 1), pair) {
            *rhs.entry(c).or_insert(0) -= x;
        }
        for (c, x) in tautops::difference_coefficients(l - 1, &mu.plus_unit(pair.a1, 1), pair) {
            *rhs.entry(c).or_insert(0) += x;
        }
        rhs.retain(|_, x: &mut i64| *x != 0);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn comparison_constants_recurse(l in 1usize..15) {
        let prev = tautops::comparison_constant(l - 1);
        let sign = if (l - 1) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(tautops::comparison_constant(l), prev * BigInt::from(sign * l as i64));
    }

    #[test]
    fn chi_is_stable_in_n_on_the_plane(l in 4i64..9, k in 2usize..=4) {
        let p2 = SurfaceModel::builtin("p2").unwrap();
        let base = rroch::chi_sym_power(&p2, k, k, &[l], &[0]).unwrap();
        for n in k + 1..=8 {
            prop_assert_eq!(&rroch::chi_sym_power(&p2, n, k, &[l], &[0]).unwrap(), &base);
        }
    }

    #[test]
    fn chi_at_one_point_is_a_line_bundle(l in -4i64..5, a in -4i64..5, k in 0usize..6, which in 0usize..4) {
        let s = SurfaceModel::builtin(SurfaceModel::builtin_names()[which]).unwrap();
        let lv = vec![l; s.rank];
        let av = vec![a; s.rank];
        let direct = rroch::chi_line(&s, &rroch::combo(k as i64, &lv, 1, &av)).unwrap();
        prop_assert_eq!(rroch::chi_sym_power(&s, 1, k, &lv, &av).unwrap(), direct);
    }

    #[test]
    fn a4_is_a_polynomial_binomial(m in -6i64..7) {
        let p2 = SurfaceModel::builtin("p2").unwrap();
        let chi = rroch::chi_line(&p2, &[m]).unwrap();
        let expected = BigRational::from_integer(&chi * (&chi - 1)) / BigRational::from_integer(BigInt::from(2));
        prop_assert_eq!(BigRational::from_integer(rroch::chi_a4(&p2, &[m]).unwrap()), expected);
    }
}

#[test]
fn noether_violations_are_rejected() {
    let bad = r#"{"name":"bad","rank":1,"intersection":[[1]],"K":[-3],"chiO":1,"c2":4}"#;
    assert!(SurfaceModel::from_json(bad).is_err());
}
