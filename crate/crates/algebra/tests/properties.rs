use gnd_algebra::matrix::jacobian;
use gnd_algebra::parse::parse_poly;
use gnd_algebra::poly::q;
use gnd_algebra::{BlockRole, Ideal, Monomial, PolyMatrix, Polynomial, Ring, RingRef, TermOrder};
use proptest::prelude::*;

fn ring() -> RingRef {
    Ring::with_names(&["x", "y", "z"], BlockRole::Base)
}

fn term() -> impl Strategy<Value = (Vec<u32>, i64)> {
    (prop::collection::vec(0u32..3, 3), -3i64..=3)
}

fn poly_strategy(max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(term(), 1..=max_terms).prop_map(|ts| {
        let r = ring();
        Polynomial::from_terms(
            &r,
            ts.into_iter()
                .map(|(e, c)| (Monomial::from_exponents(e), q(c, 1))),
        )
    })
}

fn nonzero_poly(max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly_strategy(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn orders() -> Vec<TermOrder> {
    vec![
        TermOrder::degrevlex(3),
        TermOrder::lex(3),
        TermOrder::neg_degrevlex(3),
        TermOrder::mixed(3, &[0]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in poly_strategy(4), b in poly_strategy(4), c in poly_strategy(4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn print_parse_round_trip(a in poly_strategy(5)) {
        let r = ring();
        let back = parse_poly(&r, &a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn leibniz_rule(a in poly_strategy(4), b in poly_strategy(4), i in 0usize..3) {
        let lhs = (&a * &b).derivative(i);
        let rhs = &(&a.derivative(i) * &b) + &(&a * &b.derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjugate_identity(entries in prop::collection::vec(poly_strategy(2), 9), n in 1usize..=3) {
        let r = ring();
        let rows: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| entries[i * 3..i * 3 + n].to_vec())
            .collect();
        let m = PolyMatrix::from_rows(&r, rows);
        let (det, adj) = m.det_adjugate().unwrap();
        let id = PolyMatrix::identity(&r, n).scale(&det);
        prop_assert_eq!(adj.mul(&m), id.clone());
        prop_assert_eq!(m.mul(&adj), id);
    }

    #[test]
    fn jacobian_of_product_rule(a in poly_strategy(3), b in poly_strategy(3)) {
        let r = ring();
        let j = jacobian(&[&a * &b], &r, &[0, 1, 2]);
        for k in 0..3 {
            prop_assert_eq!(j.get(0, k).clone(), (&a * &b).derivative(k));
        }
    }

    #[test]
    fn witnessed_membership(
        gens in prop::collection::vec(nonzero_poly(3), 1..=2),
        coeffs in prop::collection::vec(poly_strategy(2), 2),
        which in 0usize..4,
    ) {
        let r = ring();
        let order = orders()[which].clone();
        let ideal = Ideal::new(&r, gens.clone());
        let mut target = Polynomial::zero(&r);
        for (g, c) in gens.iter().zip(&coeffs) {
            target = &target + &(g * c);
        }
        let w = ideal.lift(&target, &order).unwrap();
        prop_assert!(w.verify(&target));
        prop_assert!(w.remainder.is_zero());
        let d = ideal.divide(&target, &order);
        prop_assert!(d.verify(&target));
        prop_assert!(ideal.satisfies_buchberger_criterion(&order));
        prop_assert!(ideal.verify_basis(&order));
    }

    #[test]
    fn colon_times_divisor_is_inside(
        gens in prop::collection::vec(nonzero_poly(2), 1..=2),
        other in prop::collection::vec(nonzero_poly(2), 1..=2),
    ) {
        let r = ring();
        let dp = TermOrder::degrevlex(3);
        let i = Ideal::new(&r, gens);
        let j = Ideal::new(&r, other);
        let colon = i.quotient(&j);
        for a in colon.gens() {
            for b in j.gens() {
                prop_assert!(i.contains(&(a * b), &dp));
            }
        }
        for g in i.gens() {
            prop_assert!(colon.contains(g, &dp));
        }
    }

    #[test]
    fn elimination_is_sound(gens in prop::collection::vec(nonzero_poly(3), 1..=2)) {
        let r = ring();
        let dp = TermOrder::degrevlex(3);
        let i = Ideal::new(&r, gens);
        let e = i.eliminate(&[0]);
        for g in e.gens() {
            prop_assert!(!g.uses_var(0));
            prop_assert!(i.contains(g, &dp));
        }
    }

    #[test]
    fn intersection_is_contained_in_both(
        a in prop::collection::vec(nonzero_poly(2), 1..=2),
        b in prop::collection::vec(nonzero_poly(2), 1..=2),
    ) {
        let r = ring();
        let dp = TermOrder::degrevlex(3);
        let ia = Ideal::new(&r, a);
        let ib = Ideal::new(&r, b);
        let both = ia.intersect(&ib);
        prop_assert!(ia.contains_ideal(&both, &dp));
        prop_assert!(ib.contains_ideal(&both, &dp));
        prop_assert!(both.contains_ideal(&ia.product(&ib), &dp));
    }

    #[test]
    fn powers_lie_in_radical(base in nonzero_poly(2), other in nonzero_poly(2), k in 1u32..=3) {
        let r = ring();
        let i = Ideal::new(&r, vec![base.pow(k), other]);
        prop_assert!(i.radical_contains(&base));
    }

    #[test]
    fn syzygies_annihilate(gens in prop::collection::vec(nonzero_poly(2), 2..=3)) {
        let m = Ideal::syzygies(&gens);
        prop_assert!(m.verify());
        prop_assert!(m.syzygies.len() >= gens.len() - 1);
    }
}
