use std::collections::HashMap;
use std::sync::Arc;

use hecke_core::finvec::{enumerate_subspaces, PrimePowerField, Subspace, DEFAULT_BUDGET};
use hecke_core::hecke_gl::{
    dual, express_in_levi_generators, express_in_t_generators, from_levi_generators, from_t_generators, satake_phi,
    satake_psi, satake_t, GlContext, HeckeElement,
};
use hecke_core::hodge::{siegel_hodge, unitary_hodge};
use hecke_core::motive_inv::{enumerate_invariants, to_weights};
use hecke_core::poly::{elementary_symmetric, int, rat, sym_reduce, LaurentPoly, Rational, VarSet};
use hecke_core::siegel::{hat_siegel, satake_phi as siegel_phi, SiegelContext};
use proptest::prelude::*;

fn vars3() -> Arc<VarSet> {
    VarSet::gl(3)
}

prop_compose! {
    fn arb_poly()(terms in prop::collection::vec(
        (prop::collection::vec(-3i32..=3, 4), -6i64..=6, 1i64..=5), 0..6)) -> LaurentPoly {
        LaurentPoly::from_terms(&vars3(), terms.into_iter().map(|(m, a, b)| (m, rat(a, b))).collect::<Vec<_>>())
    }
}

prop_compose! {
    fn arb_point()(vals in prop::collection::vec((1i64..=9, 1i64..=7), 4)) -> Vec<Rational> {
        vals.into_iter().map(|(a, b)| rat(a, b)).collect()
    }
}

// sums of products of elementary symmetric polynomials
prop_compose! {
    fn arb_symmetric(r: usize)(picks in prop::collection::vec(
        (prop::collection::vec(1usize..=r, 0..4), -4i64..=4), 1..4)) -> LaurentPoly {
        let v = VarSet::gl(r);
        let block: Vec<usize> = (0..r).collect();
        let mut acc = LaurentPoly::zero(&v);
        for (idxs, c) in picks {
            let mut term = LaurentPoly::constant(&v, int(c));
            for i in idxs {
                term = &term * &elementary_symmetric(&v, &block, i).unwrap();
            }
            acc = &acc + &term;
        }
        acc
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &a), &LaurentPoly::zero(&vars3()));
        prop_assert_eq!(&a * &LaurentPoly::one(&vars3()), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), pt in arb_point()) {
        let ev = |p: &LaurentPoly| p.evaluate_with(|i| Some(pt[i].clone())).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
    }

    #[test]
    fn named_evaluation_agrees(a in arb_poly(), pt in arb_point()) {
        let names = ["U1", "U2", "U3", "Q"];
        let map: HashMap<String, Rational> = names.iter().map(|s| s.to_string()).zip(pt.iter().cloned()).collect();
        prop_assert_eq!(a.evaluate(&map).unwrap(), a.evaluate_with(|i| Some(pt[i].clone())).unwrap());
    }

    #[test]
    fn json_round_trip(a in arb_poly()) {
        prop_assert_eq!(LaurentPoly::from_json(&vars3(), &a.to_json()).unwrap(), a);
    }

    #[test]
    fn sym_reduce_round_trip_r3(p in arb_symmetric(3)) {
        prop_assert_eq!(sym_reduce(&p, &[0, 1, 2]).unwrap().substitute_back(), p);
    }

    #[test]
    fn sym_reduce_round_trip_r4(p in arb_symmetric(4)) {
        prop_assert_eq!(sym_reduce(&p, &[0, 1, 2, 3]).unwrap().substitute_back(), p);
    }

    #[test]
    fn t_generator_round_trip(p in arb_symmetric(3)) {
        let ctx = GlContext::new(3, 1, false).unwrap();
        let e = HeckeElement::new(&ctx, hecke_core::hecke_gl::Level::G, p).unwrap();
        let expr = express_in_t_generators(&e).unwrap();
        prop_assert_eq!(from_t_generators(&ctx, &expr).unwrap(), e);
    }

    #[test]
    fn dual_is_involutive_on_products(
        r in 1usize..=5,
        picks in prop::collection::vec((0usize..3, 0usize..=5), 1..4),
        nseed in 0usize..6,
    ) {
        let n = nseed % (r + 1);
        let ctx = GlContext::new(r, n, true).unwrap();
        let mut e = HeckeElement::one(&ctx);
        for (kind, i) in picks {
            let f = match kind {
                0 => satake_t(&ctx, i % (r + 1)),
                1 => satake_phi(&ctx, i % (r - n + 1)),
                _ => satake_psi(&ctx, i % (n + 1)),
            }.unwrap();
            e = e.mul(&f).unwrap();
        }
        prop_assert_eq!(dual(&dual(&e).unwrap()).unwrap(), e.clone());
        let back = from_levi_generators(&ctx, &express_in_levi_generators(&e).unwrap()).unwrap();
        prop_assert_eq!(back.image(), e.image());
    }

    #[test]
    fn siegel_hat_is_involutive(g in 1usize..=4, picks in prop::collection::vec(0usize..=4, 1..3)) {
        let ctx = SiegelContext::new(g).unwrap();
        let mut e = siegel_phi(&ctx, 0).unwrap();
        for i in picks {
            e = e.mul(&siegel_phi(&ctx, i % (g + 1)).unwrap()).unwrap();
        }
        prop_assert_eq!(hat_siegel(&hat_siegel(&e)), e);
    }

    #[test]
    fn modular_law(idx in prop::collection::vec(0usize..130, 3)) {
        // over F_3^4 planes: A ⊆ C ⇒ A + (B ∩ C) = (A + B) ∩ C
        let f = PrimePowerField::prime(3).unwrap();
        let lines = enumerate_subspaces(4, 1, &f, DEFAULT_BUDGET).unwrap();
        let planes = enumerate_subspaces(4, 2, &f, DEFAULT_BUDGET).unwrap();
        let a = &lines[idx[0] % lines.len()];
        let b = &planes[idx[1] % planes.len()];
        let c = a.span(&planes[idx[2] % planes.len()], &f).unwrap();
        let lhs = a.span(&b.intersect(&c, &f).unwrap(), &f).unwrap();
        let rhs = a.span(b, &f).unwrap().intersect(&c, &f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dimension_formula(idx in prop::collection::vec(0usize..1000, 2), p in prop::sample::select(vec![2usize, 3, 5])) {
        let f = PrimePowerField::prime(p).unwrap();
        let all: Vec<Subspace> = (0..=3).flat_map(|j| enumerate_subspaces(3, j, &f, DEFAULT_BUDGET).unwrap()).collect();
        let (a, b) = (&all[idx[0] % all.len()], &all[idx[1] % all.len()]);
        let sum = a.span(b, &f).unwrap().dim() + a.intersect(b, &f).unwrap().dim();
        prop_assert_eq!(sum, a.dim() + b.dim());
        prop_assert_eq!(a.annihilator(&f).annihilator(&f), a.clone());
    }

    #[test]
    fn hodge_vectors_are_symmetric(g in 1usize..=12, r in 1usize..=14, nseed in 0usize..14) {
        let h = siegel_hodge(g).unwrap();
        prop_assert!(h.is_symmetric());
        prop_assert_eq!(h.total(), 1u128 << g);
        let n = 1 + nseed % r;
        let u = unitary_hodge(r, n).unwrap();
        prop_assert!(u.is_symmetric());
        prop_assert_eq!(u.entries.len(), (r - n) * n + 1);
    }

    #[test]
    fn weights_sum_to_minus_n(r in 1usize..=7, n in 0usize..=10) {
        for inv in enumerate_invariants(r, n, 3).unwrap() {
            let w: i64 = to_weights(&inv).unwrap().iter().sum();
            prop_assert_eq!(w, -(n as i64));
            prop_assert_eq!(inv.r(), r);
        }
    }
}
