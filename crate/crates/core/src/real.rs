//! Real-radical machinery: certificate verification, sound closure rules,
//! and exact curve refutations.
//!
//! There is deliberately no complete real-radical decision here. Membership
//! is proven by certificates f^{2m} + b_1^2 + ... + b_k^2 ∈ I (checked by
//! exact ideal membership), propagated by closure rules, and refuted by
//! rational curves through the base point that stay inside the zero set of
//! the ideal while the candidate germ is nonzero along them.

use crate::curve::{CurveError, RationalCurve, UniPoly};
use crate::germ::{Germ, GermError, GermIdeal};
use crate::groebner::{Membership, StepBudget};
use crate::poly::{BasePoint, Polynomial, VarIndex};
use crate::scalar::{FieldTag, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealError {
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("real-radical operations require the real field")]
    ComplexInput,
    #[error("supplied curve fails exact verification: {reason}")]
    InvalidWitness { reason: String },
}

/// A sums-of-squares membership certificate: the verification condition is
/// exactly target^{2m} + sum of b_i^2 ∈ (context generators).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealCertificate {
    pub target: Polynomial,
    pub m: u32,
    pub b_list: Vec<Polynomial>,
    pub context: Vec<Polynomial>,
}

impl RealCertificate {
    /// The combination target^{2m} + Σ b_i^2 whose membership is checked.
    pub fn combination(&self) -> Polynomial {
        let mut acc = self.target.pow(2 * self.m);
        for b in &self.b_list {
            acc = acc.add(&b.pow(2)).expect("same tag");
        }
        acc
    }
}

/// Outcome of certificate verification at the raw engine layer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CertCheck {
    Verified,
    Failed { remainder: Polynomial },
    Exhausted { consumed: u64 },
}

pub fn verify_real_certificate(cert: &RealCertificate, budget: &mut StepBudget) -> CertCheck {
    match crate::germ::poly_membership(&cert.combination(), &cert.context, budget) {
        Membership::In { .. } => CertCheck::Verified,
        Membership::NotIn { remainder, .. } => CertCheck::Failed { remainder },
        Membership::Exhausted { consumed } => CertCheck::Exhausted { consumed },
    }
}

// ---------------------------------------------------------------------------
// Rational sums of squares
// ---------------------------------------------------------------------------

/// Write a nonnegative integer as a sum of at most four squares.
pub fn four_squares(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let isqrt = |x: u64| (x as f64).sqrt() as u64 + 1;
    for a in (0..=isqrt(n)).rev() {
        let ra = n.saturating_sub(a * a);
        if a * a > n {
            continue;
        }
        for b in (0..=isqrt(ra)).rev() {
            if b * b > ra {
                continue;
            }
            let rb = ra - b * b;
            for c in (0..=isqrt(rb)).rev() {
                if c * c > rb {
                    continue;
                }
                let rc = rb - c * c;
                let d = (rc as f64).sqrt() as u64;
                for dd in [d, d + 1] {
                    if dd * dd == rc {
                        return [a, b, c, dd].into_iter().filter(|&x| x > 0).collect();
                    }
                }
            }
        }
    }
    unreachable!("every nonnegative integer is a sum of four squares")
}

/// Write a positive rational as a sum of at most four rational squares:
/// p/q = (p*q)/q^2.
pub fn rational_square_sum(c: &BigRational) -> Option<Vec<BigRational>> {
    if !c.is_positive() {
        return None;
    }
    let pq = c.numer() * c.denom();
    let pq = pq.to_u64()?;
    let parts = four_squares(pq);
    Some(
        parts
            .into_iter()
            .map(|a| BigRational::new(BigInt::from(a), c.denom().clone()))
            .collect(),
    )
}

/// Lagrange decomposition of a homogeneous quadratic form into
/// Σ c_j L_j^2 with rational c_j and linear forms L_j, by completing
/// squares. Returns None when the polynomial is not a pure quadratic form
/// or the form is not positive semidefinite over the rationals reached by
/// the reduction.
pub fn lagrange_sos(p: &Polynomial) -> Option<Vec<(BigRational, Polynomial)>> {
    if p.tag() != FieldTag::Real {
        return None;
    }
    if p.terms().any(|(m, _)| m.total_degree() != 2) {
        return None;
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        // find a variable with nonzero square coefficient
        let vars: Vec<VarIndex> = rest.support().into_iter().collect();
        let mut pivot: Option<(VarIndex, Scalar)> = None;
        for &x in &vars {
            let sq = crate::poly::Monomial::var(x).pow(2);
            let c = rest.coefficient(&sq);
            if !c.is_zero() {
                pivot = Some((x, c));
                break;
            }
        }
        let (x, a) = pivot?; // all-zero diagonal with terms left: indefinite
        if a.re().is_negative() {
            return None;
        }
        // L = x + Σ (a_xw / 2a) w over cross terms
        let mut lin = Polynomial::var(FieldTag::Real, x);
        let half = Scalar::from_rational(
            FieldTag::Real,
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        );
        for &w in &vars {
            if w == x {
                continue;
            }
            let cross = crate::poly::Monomial::var(x).mul(&crate::poly::Monomial::var(w));
            let c = rest.coefficient(&cross);
            if c.is_zero() {
                continue;
            }
            let coeff = c
                .mul(&half)
                .expect("tag")
                .div(&a)
                .expect("tag")
                .expect("nonzero");
            lin = lin
                .add(
                    &Polynomial::var(FieldTag::Real, w)
                        .scalar_mul(&coeff)
                        .expect("tag"),
                )
                .expect("tag");
        }
        let contribution = lin.pow(2).scalar_mul(&a).expect("tag");
        rest = rest.sub(&contribution).expect("tag");
        out.push((a.re().clone(), lin));
    }
    Some(out)
}

/// Certificates derivable from a single context generator that is a sum of
/// squares around the base point: each square root is in the real radical.
///
/// For g = Σ c_l L_l^2 (in coordinates shifted to the base point) and each
/// j, the identity L_j^2 + Σ_{l≠j} (c_l/c_j) L_l^2 = (1/c_j)·g gives a
/// certificate for L_j once the rational ratios are split into rational
/// squares.
pub fn sos_certificates(
    generator: &Polynomial,
    base: &BasePoint,
    context: &[Polynomial],
) -> Vec<RealCertificate> {
    let Ok(shifted) = generator.translate(base) else {
        return Vec::new();
    };
    let Some(parts) = lagrange_sos(&shifted) else {
        return Vec::new();
    };
    let back = |q: &Polynomial| -> Polynomial {
        // un-shift: replace x_t by x_t - x0_t
        let neg = negate_point(base);
        q.translate(&neg).expect("tags agree")
    };
    let mut out = Vec::new();
    for (j, (cj, lj)) in parts.iter().enumerate() {
        let mut b_list = Vec::new();
        let mut ok = true;
        for (l, (cl, ll)) in parts.iter().enumerate() {
            if l == j {
                continue;
            }
            let ratio = cl / cj;
            match rational_square_sum(&ratio) {
                None => {
                    ok = false;
                    break;
                }
                Some(squares) => {
                    for r in squares {
                        b_list.push(
                            back(ll)
                                .scalar_mul(&Scalar::from_rational(FieldTag::Real, r))
                                .expect("tag"),
                        );
                    }
                }
            }
        }
        if ok {
            out.push(RealCertificate {
                target: back(lj),
                m: 1,
                b_list,
                context: context.to_vec(),
            });
        }
    }
    out
}

fn negate_point(base: &BasePoint) -> BasePoint {
    BasePoint::new(base.tag(), base.coords().map(|(x, c)| (x, c.neg()))).expect("tags agree")
}

// ---------------------------------------------------------------------------
// Closure
// ---------------------------------------------------------------------------

/// One step of a replayable closure derivation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClosureStep {
    /// Target is in the ideal generated by the context alone.
    R1 { target: Polynomial },
    /// Target is in the ideal generated by context plus previously proven
    /// elements.
    R2 { target: Polynomial },
    /// A verified certificate over the augmented context.
    R3 { cert: RealCertificate },
}

impl ClosureStep {
    pub fn target(&self) -> &Polynomial {
        match self {
            ClosureStep::R1 { target } | ClosureStep::R2 { target } => target,
            ClosureStep::R3 { cert } => &cert.target,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosureOutcome {
    /// Derivation steps in replay order; each target verified against the
    /// context augmented with earlier targets.
    pub steps: Vec<ClosureStep>,
    /// Per-requested-target result: index into `steps` when proven.
    pub proven: Vec<Option<usize>>,
    pub gb_consumed: u64,
}

/// Sound fixed-point closure: R1 membership in I, R2 membership in I plus
/// proven elements, R3 verified certificates (supplied hints plus
/// sums-of-squares certificates extracted from the context generators).
/// Never refutes; absence of proof is Unknown at the caller.
pub fn real_radical_closure(
    ideal: &GermIdeal,
    targets: &[Germ],
    hints: &[RealCertificate],
    gb_budget: u64,
) -> Result<ClosureOutcome, RealError> {
    if ideal.base().tag() != FieldTag::Real {
        return Err(RealError::ComplexInput);
    }
    let context = ideal.generator_polys();
    let base = ideal.base();
    let mut steps: Vec<ClosureStep> = Vec::new();
    let mut proven_polys: Vec<Polynomial> = Vec::new();
    let mut gb_consumed = 0u64;

    let mut candidate_certs: Vec<RealCertificate> = hints.to_vec();
    for g in &context {
        candidate_certs.extend(sos_certificates(g, base, &context));
    }
    let mut cert_done = vec![false; candidate_certs.len()];

    let mut target_state: Vec<Option<usize>> = vec![None; targets.len()];

    loop {
        let mut progressed = false;
        let augmented: Vec<Polynomial> = context
            .iter()
            .cloned()
            .chain(proven_polys.iter().cloned())
            .collect();

        // R3: certificates over the augmented context
        for (ci, cert) in candidate_certs.iter().enumerate() {
            if cert_done[ci] || proven_polys.contains(&cert.target) {
                continue;
            }
            let mut augmented_cert = cert.clone();
            augmented_cert.context = augmented.clone();
            let mut budget = StepBudget::new(gb_budget);
            let check = verify_real_certificate(&augmented_cert, &mut budget);
            gb_consumed += budget.consumed();
            if let CertCheck::Verified = check {
                proven_polys.push(cert.target.clone());
                steps.push(ClosureStep::R3 {
                    cert: augmented_cert,
                });
                cert_done[ci] = true;
                progressed = true;
            }
        }

        // R1/R2: direct ideal membership of the requested targets
        let augmented: Vec<Polynomial> = context
            .iter()
            .cloned()
            .chain(proven_polys.iter().cloned())
            .collect();
        for (ti, t) in targets.iter().enumerate() {
            if target_state[ti].is_some() {
                continue;
            }
            // already derived as a certificate target?
            if let Some(si) = steps
                .iter()
                .position(|s| s.target() == t.poly())
            {
                target_state[ti] = Some(si);
                progressed = true;
                continue;
            }
            let mut budget = StepBudget::new(gb_budget);
            let membership = crate::germ::poly_membership(t.poly(), &augmented, &mut budget);
            gb_consumed += budget.consumed();
            if let Membership::In { .. } = membership {
                let step = if proven_polys.is_empty() {
                    ClosureStep::R1 {
                        target: t.poly().clone(),
                    }
                } else {
                    ClosureStep::R2 {
                        target: t.poly().clone(),
                    }
                };
                steps.push(step);
                proven_polys.push(t.poly().clone());
                target_state[ti] = Some(steps.len() - 1);
                progressed = true;
            }
        }

        if !progressed {
            break;
        }
    }

    Ok(ClosureOutcome {
        steps,
        proven: target_state,
        gb_consumed,
    })
}

// ---------------------------------------------------------------------------
// Curve refutation
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Refutation {
    /// A verified curve through the base point inside Z(I) on which the
    /// target is not identically zero.
    Refuted {
        curve: RationalCurve,
        target_along_curve: UniPoly,
        candidates_tried: u64,
    },
    /// Search frontier exhausted without a witness.
    Unknown { candidates_tried: u64 },
}

/// Check a candidate curve exactly: every generator composes to the zero
/// polynomial and the target does not.
pub fn check_refuting_curve(
    gens: &[Polynomial],
    target: &Polynomial,
    curve: &RationalCurve,
) -> Result<Option<UniPoly>, RealError> {
    for g in gens {
        if !curve.compose(g)?.is_zero() {
            return Ok(None);
        }
    }
    let along = curve.compose(target)?;
    if along.is_zero() {
        return Ok(None);
    }
    Ok(Some(along))
}

/// Refute local real vanishing of `f` on the zero germ of `ideal`. A
/// supplied curve is verified exactly (InvalidWitness when it fails);
/// otherwise coordinate-sparse affine curves are searched: subsets of the
/// relevant variables by size then lexicographic order, each moved by +s or
/// -s off its base coordinate, remaining coordinates frozen at the base
/// point.
pub fn refute_real_vanishing(
    ideal: &GermIdeal,
    f: &Germ,
    curve: Option<&RationalCurve>,
    curve_budget: u64,
) -> Result<Refutation, RealError> {
    if ideal.base().tag() != FieldTag::Real {
        return Err(RealError::ComplexInput);
    }
    if f.base() != ideal.base() {
        return Err(RealError::Germ(GermError::BaseMismatch));
    }
    let gens = ideal.generator_polys();

    if let Some(z) = curve {
        if z.base() != ideal.base() {
            return Err(RealError::InvalidWitness {
                reason: "curve base point differs from the ideal's".to_string(),
            });
        }
        return match check_refuting_curve(&gens, f.poly(), z)? {
            Some(along) => Ok(Refutation::Refuted {
                curve: z.clone(),
                target_along_curve: along,
                candidates_tried: 0,
            }),
            None => Err(RealError::InvalidWitness {
                reason: "curve does not lie in the zero set or the target vanishes along it"
                    .to_string(),
            }),
        };
    }

    let mut vars: BTreeSet<VarIndex> = f.poly().support();
    for g in &gens {
        vars.extend(g.support());
    }
    let vars: Vec<VarIndex> = vars.into_iter().collect();
    let base = ideal.base();

    let mut tried = 0u64;
    for size in 1..=vars.len() {
        for subset in combinations(&vars, size) {
            for signs in 0..(1u32 << size) {
                if tried >= curve_budget {
                    return Ok(Refutation::Unknown {
                        candidates_tried: tried,
                    });
                }
                tried += 1;
                let components: Vec<(VarIndex, UniPoly)> = subset
                    .iter()
                    .enumerate()
                    .map(|(bit, &x)| {
                        let dir = if signs & (1 << bit) == 0 {
                            UniPoly::s()
                        } else {
                            UniPoly::s().neg()
                        };
                        let shifted =
                            dir.add(&UniPoly::constant(base.coordinate(x).re().clone()));
                        (x, shifted)
                    })
                    .collect();
                let z = RationalCurve::new(base.clone(), components).expect("through base");
                if let Some(along) = check_refuting_curve(&gens, f.poly(), &z)? {
                    return Ok(Refutation::Refuted {
                        curve: z,
                        target_along_curve: along,
                        candidates_tried: tried,
                    });
                }
            }
        }
    }
    Ok(Refutation::Unknown {
        candidates_tried: tried,
    })
}

fn combinations(vars: &[VarIndex], size: usize) -> Vec<Vec<VarIndex>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        vars: &[VarIndex],
        size: usize,
        start: usize,
        current: &mut Vec<VarIndex>,
        out: &mut Vec<Vec<VarIndex>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..vars.len() {
            current.push(vars[i]);
            rec(vars, size, i + 1, current, out);
            current.pop();
        }
    }
    rec(vars, size, 0, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use crate::poly::v;
    use crate::scalar::FieldTag::Real;

    fn p(text: &str) -> Polynomial {
        parse_poly(text, Real).unwrap()
    }

    fn origin() -> BasePoint {
        BasePoint::origin(Real)
    }

    fn germ(text: &str) -> Germ {
        Germ::new(p(text), origin()).unwrap()
    }

    fn family_ideal() -> GermIdeal {
        GermIdeal::new(origin(), vec![germ("x_1^2 + (x_2 - x_3)^2")]).unwrap()
    }

    #[test]
    fn four_squares_small() {
        for n in 0..200u64 {
            let parts = four_squares(n);
            assert!(parts.len() <= 4);
            assert_eq!(parts.iter().map(|a| a * a).sum::<u64>(), n);
        }
    }

    #[test]
    fn rational_squares() {
        let c = BigRational::new(BigInt::from(3), BigInt::from(2));
        let parts = rational_square_sum(&c).unwrap();
        let sum: BigRational = parts.iter().map(|r| r * r).sum();
        assert_eq!(sum, c);
    }

    #[test]
    fn certificate_for_family_generator() {
        // x1^2 + (x2 - x3)^2 is the generator itself
        let cert = RealCertificate {
            target: p("x_1"),
            m: 1,
            b_list: vec![p("x_2 - x_3")],
            context: vec![p("x_1^2 + (x_2 - x_3)^2")],
        };
        assert_eq!(
            verify_real_certificate(&cert, &mut StepBudget::default()),
            CertCheck::Verified
        );
        let sym = RealCertificate {
            target: p("x_2 - x_3"),
            m: 1,
            b_list: vec![p("x_1")],
            context: vec![p("x_1^2 + (x_2 - x_3)^2")],
        };
        assert_eq!(
            verify_real_certificate(&sym, &mut StepBudget::default()),
            CertCheck::Verified
        );
    }

    #[test]
    fn failing_certificates_for_x2() {
        // no small certificate proves x2 over (x1^2 + (x2 - x3)^2)
        for m in 1..=3u32 {
            for b in [vec![], vec![p("x_1")], vec![p("x_3")], vec![p("x_2 - x_3")]] {
                let cert = RealCertificate {
                    target: p("x_2"),
                    m,
                    b_list: b,
                    context: vec![p("x_1^2 + (x_2 - x_3)^2")],
                };
                assert!(matches!(
                    verify_real_certificate(&cert, &mut StepBudget::default()),
                    CertCheck::Failed { .. }
                ));
            }
        }
    }

    #[test]
    fn lagrange_on_family_generator() {
        let parts = lagrange_sos(&p("x_1^2 + (x_2 - x_3)^2")).unwrap();
        assert_eq!(parts.len(), 2);
        let mut sum = Polynomial::zero(Real);
        for (c, l) in &parts {
            sum = sum
                .add(&l.pow(2).scalar_mul(&Scalar::from_rational(Real, c.clone())).unwrap())
                .unwrap();
        }
        assert_eq!(sum, p("x_1^2 + (x_2 - x_3)^2"));
    }

    #[test]
    fn lagrange_rejects_indefinite() {
        assert!(lagrange_sos(&p("x_1*x_2")).is_none());
        assert!(lagrange_sos(&p("x_1^2 - x_2^2")).is_none());
        assert!(lagrange_sos(&p("x_1^2 + x_2")).is_none());
    }

    #[test]
    fn closure_proves_family_targets() {
        // I = (g0, g1): closure proves x1, x2, x3, x4 - x5
        let ideal = GermIdeal::new(
            origin(),
            vec![germ("x_1^2 + (x_2 - x_3)^2"), germ("x_3^2 + (x_4 - x_5)^2")],
        )
        .unwrap();
        let targets = [germ("x_1"), germ("x_2"), germ("x_3"), germ("x_4 - x_5")];
        let outcome = real_radical_closure(&ideal, &targets, &[], 10_000).unwrap();
        for (i, slot) in outcome.proven.iter().enumerate() {
            assert!(slot.is_some(), "target {} not proven", i);
        }
    }

    #[test]
    fn closure_r1_direct() {
        let ideal = GermIdeal::new(origin(), vec![germ("x_1")]).unwrap();
        let outcome = real_radical_closure(&ideal, &[germ("x_1")], &[], 10_000).unwrap();
        assert!(outcome.proven[0].is_some());
    }

    #[test]
    fn closure_cannot_prove_x2_alone() {
        let outcome =
            real_radical_closure(&family_ideal(), &[germ("x_2")], &[], 10_000).unwrap();
        assert!(outcome.proven[0].is_none());
    }

    #[test]
    fn curve_refutes_x2() {
        let z = RationalCurve::new(origin(), [(v(2), UniPoly::s()), (v(3), UniPoly::s())]).unwrap();
        match refute_real_vanishing(&family_ideal(), &germ("x_2"), Some(&z), 256).unwrap() {
            Refutation::Refuted {
                target_along_curve, ..
            } => assert_eq!(target_along_curve, UniPoly::s()),
            other => panic!("expected refutation, got {:?}", other),
        }
    }

    #[test]
    fn curve_search_finds_witness() {
        match refute_real_vanishing(&family_ideal(), &germ("x_2"), None, 256).unwrap() {
            Refutation::Refuted { curve, .. } => {
                assert_eq!(curve.component(v(2)), UniPoly::s());
                assert_eq!(curve.component(v(3)), UniPoly::s());
                assert!(curve.compose(&p("x_1")).unwrap().is_zero());
            }
            other => panic!("expected refutation, got {:?}", other),
        }
    }

    #[test]
    fn no_curve_for_actual_member() {
        let ideal = GermIdeal::new(origin(), vec![germ("x_1")]).unwrap();
        match refute_real_vanishing(&ideal, &germ("x_1"), None, 64).unwrap() {
            Refutation::Unknown { .. } => {}
            other => panic!("expected unknown, got {:?}", other),
        }
    }

    #[test]
    fn invalid_witness_reported() {
        let z = RationalCurve::new(origin(), [(v(1), UniPoly::s())]).unwrap();
        assert!(matches!(
            refute_real_vanishing(&family_ideal(), &germ("x_2"), Some(&z), 16),
            Err(RealError::InvalidWitness { .. })
        ));
    }
}
