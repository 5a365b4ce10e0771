//! Property-based checks of the algebraic kernel: ring axioms, evaluation
//! homomorphisms, parser round-trips, germ extension/restriction, and
//! agreement between the two independent membership engines.

use germcalc_core::germ::{local_radical_member_complex, poly_membership, LocalRadical};
use germcalc_core::groebner::{
    macaulay_membership_oracle, Membership, OracleOutcome, StepBudget,
};
use germcalc_core::parser::{parse_poly, print_canonical};
use germcalc_core::poly::v;
use germcalc_core::real::{verify_real_certificate, CertCheck, RealCertificate};
use germcalc_core::{
    BasePoint, FieldTag, Germ, GermIdeal, Monomial, Polynomial, RationalCurve, Scalar, UniPoly,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn scalar(tag: FieldTag) -> impl Strategy<Value = Scalar> {
    match tag {
        FieldTag::Real => rational()
            .prop_map(|r| Scalar::from_rational(FieldTag::Real, r))
            .boxed(),
        FieldTag::Complex => (rational(), rational())
            .prop_map(|(re, im)| Scalar::complex(re, im))
            .boxed(),
    }
}

fn monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::btree_map(1u32..=3, 0u32..=3, 0..=3).prop_map(|m| {
        Monomial::from_exps(m.into_iter().map(|(i, e)| (v(i), e)))
    })
}

fn poly(tag: FieldTag) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((monomial(), scalar(tag)), 0..=5)
        .prop_map(move |terms| Polynomial::from_terms(tag, terms).unwrap())
}

/// Low-degree polynomials in two variables for the Groebner-heavy checks:
/// random Buchberger runs on dense high-degree inputs are not desk scale.
fn small_poly(tag: FieldTag) -> impl Strategy<Value = Polynomial> {
    let small_monomial = proptest::collection::btree_map(1u32..=2, 0u32..=2, 0..=2)
        .prop_map(|m| Monomial::from_exps(m.into_iter().map(|(i, e)| (v(i), e))));
    proptest::collection::vec((small_monomial, scalar(tag)), 0..=3)
        .prop_map(move |terms| Polynomial::from_terms(tag, terms).unwrap())
}

fn real_point() -> impl Strategy<Value = BasePoint> {
    proptest::collection::btree_map(1u32..=3, rational(), 0..=3).prop_map(|coords| {
        BasePoint::new(
            FieldTag::Real,
            coords
                .into_iter()
                .map(|(i, r)| (v(i), Scalar::from_rational(FieldTag::Real, r))),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes(a in poly(FieldTag::Real), b in poly(FieldTag::Real)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
    }

    #[test]
    fn addition_associates(
        a in poly(FieldTag::Complex),
        b in poly(FieldTag::Complex),
        c in poly(FieldTag::Complex),
    ) {
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn multiplication_commutes(a in poly(FieldTag::Complex), b in poly(FieldTag::Complex)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn multiplication_associates(
        a in poly(FieldTag::Real),
        b in poly(FieldTag::Real),
        c in poly(FieldTag::Real),
    ) {
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn distributivity(
        a in poly(FieldTag::Real),
        b in poly(FieldTag::Real),
        c in poly(FieldTag::Real),
    ) {
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn additive_inverse(a in poly(FieldTag::Complex)) {
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn unit_laws(a in poly(FieldTag::Real)) {
        prop_assert_eq!(a.mul(&Polynomial::one(FieldTag::Real)).unwrap(), a.clone());
        prop_assert_eq!(a.add(&Polynomial::zero(FieldTag::Real)).unwrap(), a);
    }

    #[test]
    fn support_subadditive(a in poly(FieldTag::Real), b in poly(FieldTag::Real)) {
        let sum = a.add(&b).unwrap();
        let union: BTreeSet<_> = a.support().union(&b.support()).copied().collect();
        prop_assert!(sum.support().is_subset(&union));
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        a in poly(FieldTag::Real),
        b in poly(FieldTag::Real),
        x0 in real_point(),
    ) {
        let lhs = a.mul(&b).unwrap().evaluate(&x0).unwrap();
        let rhs = a.evaluate(&x0).unwrap().mul(&b.evaluate(&x0).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = a.add(&b).unwrap().evaluate(&x0).unwrap();
        let rhs = a.evaluate(&x0).unwrap().add(&b.evaluate(&x0).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn translate_inverts(a in poly(FieldTag::Real), x0 in real_point()) {
        let neg = BasePoint::new(
            FieldTag::Real,
            x0.coords().map(|(x, c)| (x, c.neg())),
        )
        .unwrap();
        prop_assert_eq!(a.translate(&x0).unwrap().translate(&neg).unwrap(), a);
    }

    #[test]
    fn parse_print_round_trip_real(a in poly(FieldTag::Real)) {
        let text = print_canonical(&a);
        let back = parse_poly(&text, FieldTag::Real).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn parse_print_round_trip_complex(a in poly(FieldTag::Complex)) {
        let text = print_canonical(&a);
        let back = parse_poly(&text, FieldTag::Complex).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn curve_at_zero_is_base_value(a in poly(FieldTag::Real), x0 in real_point()) {
        // the constant curve frozen at the base point
        let z = RationalCurve::new(x0.clone(), Vec::<(germcalc_core::VarIndex, UniPoly)>::new())
            .unwrap();
        let along = z.compose(&a).unwrap();
        prop_assert_eq!(
            Scalar::from_rational(FieldTag::Real, along.at_zero()),
            a.evaluate(&x0).unwrap()
        );
    }

    #[test]
    fn extension_restriction_identity(a in poly(FieldTag::Real), x0 in real_point()) {
        let g = Germ::new(a, x0).unwrap();
        let mut s2 = g.indexing_set().clone();
        s2.insert(v(7));
        s2.insert(v(9));
        let extended = g.extend_indexing(&s2).unwrap();
        let back = extended.restrict(g.indexing_set()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn invertibility_dichotomy(a in poly(FieldTag::Complex)) {
        let g = Germ::new(a, BasePoint::origin(FieldTag::Complex)).unwrap();
        prop_assert_eq!(g.is_invertible(), !g.value().is_zero());
    }

    #[test]
    fn membership_is_generator_order_independent(
        gens in proptest::collection::vec(small_poly(FieldTag::Real), 1..=3),
        f in small_poly(FieldTag::Real),
    ) {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let mut reversed = gens.clone();
        reversed.reverse();
        let a = poly_membership(&f, &gens, &mut StepBudget::default());
        let b = poly_membership(&f, &reversed, &mut StepBudget::default());
        match (a, b) {
            (Membership::In { .. }, Membership::In { .. }) => {}
            (Membership::NotIn { .. }, Membership::NotIn { .. }) => {}
            (Membership::Exhausted { .. }, _) | (_, Membership::Exhausted { .. }) => {}
            (x, y) => prop_assert!(false, "disagreement: {:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn groebner_membership_agrees_with_macaulay(
        gens in proptest::collection::vec(small_poly(FieldTag::Real), 1..=2),
        f in small_poly(FieldTag::Real),
    ) {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        prop_assume!(f.total_degree() <= 4);
        let direct = poly_membership(&f, &gens, &mut StepBudget::default());
        let oracle = macaulay_membership_oracle(&f, &gens, 8);
        match (direct, oracle) {
            (Membership::In { .. }, OracleOutcome::Proved) => {}
            (Membership::In { .. }, OracleOutcome::UnknownAtBound) => {
                prop_assert!(false, "oracle missed a membership below its bound")
            }
            (Membership::NotIn { .. }, OracleOutcome::UnknownAtBound) => {}
            (Membership::NotIn { .. }, OracleOutcome::Proved) => {
                prop_assert!(false, "oracle proved a refuted membership")
            }
            (Membership::Exhausted { .. }, _) => {}
        }
    }

    #[test]
    fn dummy_variable_stability(
        gens in proptest::collection::vec(small_poly(FieldTag::Complex), 1..=2),
        f in small_poly(FieldTag::Complex),
    ) {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        prop_assume!(!f.is_zero());
        let base = BasePoint::origin(FieldTag::Complex);
        let ideal = GermIdeal::new(
            base.clone(),
            gens.iter()
                .map(|g| Germ::new(g.clone(), base.clone()).unwrap())
                .collect(),
        )
        .unwrap();
        let fg = Germ::new(f.clone(), base.clone()).unwrap();
        let plain = local_radical_member_complex(&ideal, &fg, &mut StepBudget::default()).unwrap();

        // extend everything by an unused variable x_8
        let mut widened: BTreeSet<_> = fg.indexing_set().clone();
        widened.insert(v(8));
        let wide_gens: Vec<Germ> = ideal
            .generators()
            .iter()
            .map(|g| {
                let mut s = g.indexing_set().clone();
                s.insert(v(8));
                g.extend_indexing(&s).unwrap()
            })
            .collect();
        let wide_ideal = GermIdeal::new(base.clone(), wide_gens).unwrap();
        let wide_f = fg.extend_indexing(&widened).unwrap();
        let wide = local_radical_member_complex(&wide_ideal, &wide_f, &mut StepBudget::default())
            .unwrap();
        match (plain, wide) {
            (LocalRadical::In { .. }, LocalRadical::In { .. }) => {}
            (LocalRadical::NotIn { .. }, LocalRadical::NotIn { .. }) => {}
            (LocalRadical::Exhausted { .. }, _) | (_, LocalRadical::Exhausted { .. }) => {}
            (a, b) => prop_assert!(false, "verdict changed under dummy variables: {:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn certificate_transport(b1 in small_poly(FieldTag::Real)) {
        // f^2 + b1^2 is in the ideal it generates; the certificate verifies
        // no matter how the ambient variable set is widened
        let f = Polynomial::var(FieldTag::Real, v(1));
        let combo = f.pow(2).add(&b1.pow(2)).unwrap();
        let cert = RealCertificate {
            target: f,
            m: 1,
            b_list: vec![b1],
            context: vec![combo],
        };
        prop_assert_eq!(
            verify_real_certificate(&cert, &mut StepBudget::default()),
            CertCheck::Verified
        );
    }
}
