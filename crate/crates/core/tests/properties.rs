use isotopy_core::lattice::{window, CosetSet};
use isotopy_core::quadform::{check_isometry, is_isometric, BitMatrix, QuadFormF2};
use isotopy_core::{CycScalar, LatticeVec, Sublattice};
use num_rational::BigRational;
use proptest::prelude::*;

fn scalar(m: u32) -> impl Strategy<Value = CycScalar> {
    let d = isotopy_core::scalar::euler_phi(m);
    prop::collection::vec((-6i64..=6, 1i64..=4), d).prop_map(move |cs| {
        CycScalar::from_coeffs(m, cs.into_iter().map(|(p, q)| BigRational::new(p.into(), q.into())).collect())
    })
}

fn orders() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 4, 5, 6, 8, 12])
}

fn field_triple() -> impl Strategy<Value = (CycScalar, CycScalar, CycScalar)> {
    orders().prop_flat_map(|m| (scalar(m), scalar(m), scalar(m)))
}

fn vec_n(n: usize, r: i64) -> impl Strategy<Value = LatticeVec> {
    prop::collection::vec(-r..=r, n).prop_map(LatticeVec)
}

fn invertible(n: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(0u32..1 << n, n)
        .prop_map(move |columns| BitMatrix { n, columns })
        .prop_filter("invertible", BitMatrix::is_invertible)
}

fn form(n: usize) -> impl Strategy<Value = QuadFormF2> {
    (0..QuadFormF2::form_count(n)).prop_map(move |i| QuadFormF2::from_index(n, i))
}

proptest! {
    #[test]
    fn field_axioms((x, y, z) in field_triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn roots_of_unity_have_their_order(m in orders(), k in -20i64..20) {
        let z = CycScalar::root_of_unity(m, k);
        prop_assert!(z.pow(m as i64).unwrap().is_one());
        prop_assert_eq!(z.pow(-1).unwrap(), CycScalar::root_of_unity(m, -k));
    }

    #[test]
    fn sublattice_contains_generators_and_reduces_into_cosets(
        gens in prop::collection::vec(vec_n(3, 4), 1..4),
        v in vec_n(3, 9),
    ) {
        let l = Sublattice::from_generators(3, &gens).unwrap();
        for g in &gens {
            prop_assert!(l.contains(g));
        }
        let r = l.reduce(&v);
        prop_assert!(l.contains(&(&v - &r)));
        prop_assert_eq!(l.reduce(&r), r);
        for g in &gens {
            prop_assert_eq!(l.reduce(&(&v + g)), l.reduce(&v));
        }
    }

    #[test]
    fn index_is_the_determinant(a in -5i64..=5, b in -5i64..=5, c in -5i64..=5, d in -5i64..=5) {
        let det = (a * d - b * c).abs();
        let l = Sublattice::from_generators(2, &[LatticeVec(vec![a, b]), LatticeVec(vec![c, d])]).unwrap();
        if det == 0 {
            prop_assert_eq!(l.index(), None);
        } else {
            prop_assert_eq!(l.index(), Some(det as u64));
            prop_assert_eq!(l.coset_representatives().unwrap().len() as i64, det);
        }
    }

    #[test]
    fn coset_sum_is_the_reduced_sum_of_representatives(vs in prop::collection::vec(vec_n(2, 6), 0..8)) {
        let l = Sublattice::scaled(2, 3);
        let set = CosetSet::new(l.clone(), vs.iter().cloned());
        let distinct: std::collections::BTreeSet<LatticeVec> = vs.iter().map(|v| l.reduce(v)).collect();
        let total = distinct.iter().fold(LatticeVec::zero(2), |acc, v| &acc + v);
        prop_assert_eq!(set.sum(), l.reduce(&total));
    }

    #[test]
    fn composition_evaluates_through_tau(k in form(3), tau in invertible(3), v in 0u32..8) {
        prop_assert_eq!(k.compose(&tau).eval_mask(v), k.eval_mask(tau.apply(v)));
    }

    #[test]
    fn polarization_is_bilinear_and_alternating(k in form(3), u in 0u32..8, v in 0u32..8, w in 0u32..8) {
        prop_assert_eq!(k.polar_mask(u ^ v, w), k.polar_mask(u, w) ^ k.polar_mask(v, w));
        prop_assert_eq!(k.polar_mask(u, u), 0);
        prop_assert_eq!(k.polar_mask(u, v), k.polar_mask(v, u));
    }

    #[test]
    fn isometry_search_finds_transported_forms(k in form(3), tau in invertible(3)) {
        // k2 = k ∘ τ⁻¹ satisfies k2(τ v) = k(v)
        let k2 = k.compose(&tau.inverse().unwrap());
        prop_assert!(check_isometry(&k, &k2, &tau));
        let found = is_isometric(&k, &k2).unwrap().expect("isometric by construction");
        prop_assert!(check_isometry(&k, &k2, &found));
        prop_assert_eq!(k.polar_rank(), k2.polar_rank());
        prop_assert_eq!(k.ones_count(), k2.ones_count());
    }

    #[test]
    fn torus_round_trip(k in form(4)) {
        let (q, e) = k.to_torus_data();
        prop_assert_eq!(QuadFormF2::from_torus_with_involution(&q, &e).unwrap(), k);
    }
}

#[test]
fn window_has_expected_size() {
    assert_eq!(window(2, 2).len(), 25);
    assert_eq!(window(3, 1).len(), 27);
}
