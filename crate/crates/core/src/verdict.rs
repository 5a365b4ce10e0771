//! Three-valued verdicts with replayable witnesses.
//!
//! Every decision procedure in the engine reports Proved, Refuted, or
//! Unknown, and whenever it commits to Proved or Refuted it attaches a
//! witness that an independent replayer can check with exact arithmetic
//! and no search. The JSON encoding serializes polynomials as canonical
//! text together with the field, so witnesses survive round-trips through
//! files and other tooling.

use crate::curve::{RationalCurve, UniPoly};
use crate::germ::poly_membership;
use crate::groebner::{Membership, StepBudget};
use crate::parser::{parse_poly, print_base_point, print_canonical};
use crate::poly::{BasePoint, Polynomial, VarIndex};
use crate::real::{
    check_refuting_curve, verify_real_certificate, CertCheck, RealCertificate,
};
use crate::scalar::FieldTag;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Proved,
    Refuted,
    Unknown,
}

/// Budget configuration shared by the decision procedures.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Budgets {
    /// Directed-set / subset enumeration frontier.
    pub enumeration: u64,
    /// Pair reductions per Groebner basis computation.
    pub groebner: u64,
    /// Candidate curves per refutation search.
    pub curve: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            enumeration: 64,
            groebner: 10_000,
            curve: 256,
        }
    }
}

/// Budget actually consumed while producing a verdict.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct BudgetUse {
    pub enumeration: u64,
    pub groebner: u64,
    pub curve: u64,
}

impl BudgetUse {
    pub fn absorb(&mut self, other: &BudgetUse) {
        self.enumeration += other.enumeration;
        self.groebner += other.groebner;
        self.curve += other.curve;
    }
}

// ---------------------------------------------------------------------------
// Serializable wrappers for engine data
// ---------------------------------------------------------------------------

/// A polynomial carried inside a witness: serialized as canonical text plus
/// its field, parsed back on deserialization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WPoly(pub Polynomial);

impl Serialize for WPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            field: FieldTag,
            text: &'a str,
        }
        let text = print_canonical(&self.0);
        Repr {
            field: self.0.tag(),
            text: &text,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            field: FieldTag,
            text: String,
        }
        let r = Repr::deserialize(d)?;
        parse_poly(&r.text, r.field)
            .map(WPoly)
            .map_err(|e| D::Error::custom(format!("bad polynomial text: {}", e)))
    }
}

/// A base point, serialized as its canonical text representation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WPoint(pub BasePoint);

impl Serialize for WPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            field: FieldTag,
            text: &'a str,
        }
        let text = print_base_point(&self.0);
        Repr {
            field: self.0.tag(),
            text: &text,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            field: FieldTag,
            text: String,
        }
        let r = Repr::deserialize(d)?;
        crate::parser::parse_base_point(&r.text, r.field)
            .map(WPoint)
            .map_err(|e| D::Error::custom(format!("bad base point text: {}", e)))
    }
}

/// A univariate curve component, serialized as text in the parameter s.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WCurve {
    pub base: WPoint,
    pub components: Vec<(u32, String)>,
}

impl WCurve {
    pub fn from_curve(z: &RationalCurve) -> Self {
        WCurve {
            base: WPoint(z.base().clone()),
            components: z
                .components()
                .map(|(x, u)| (x.get(), u.canonical_text()))
                .collect(),
        }
    }

    pub fn to_curve(&self) -> Result<RationalCurve, String> {
        let mut comps = Vec::new();
        for (idx, text) in &self.components {
            let x = VarIndex::new(*idx).ok_or("variable index must be positive")?;
            let u = UniPoly::parse(text).map_err(|e| format!("bad curve component: {}", e))?;
            comps.push((x, u));
        }
        RationalCurve::new(self.base.0.clone(), comps).map_err(|e| e.to_string())
    }
}

impl Serialize for WCurve {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            base: &'a WPoint,
            components: Vec<ComponentRepr<'a>>,
        }
        #[derive(Serialize)]
        struct ComponentRepr<'a> {
            var: u32,
            text: &'a str,
        }
        Repr {
            base: &self.base,
            components: self
                .components
                .iter()
                .map(|(v, t)| ComponentRepr { var: *v, text: t })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WCurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            base: WPoint,
            components: Vec<ComponentRepr>,
        }
        #[derive(Deserialize)]
        struct ComponentRepr {
            var: u32,
            text: String,
        }
        let r = Repr::deserialize(d)?;
        Ok(WCurve {
            base: r.base,
            components: r.components.into_iter().map(|c| (c.var, c.text)).collect(),
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WCertificate {
    pub target: WPoly,
    pub m: u32,
    pub b_list: Vec<WPoly>,
    pub context: Vec<WPoly>,
}

impl WCertificate {
    pub fn from_cert(c: &RealCertificate) -> Self {
        WCertificate {
            target: WPoly(c.target.clone()),
            m: c.m,
            b_list: c.b_list.iter().cloned().map(WPoly).collect(),
            context: c.context.iter().cloned().map(WPoly).collect(),
        }
    }

    pub fn to_cert(&self) -> RealCertificate {
        RealCertificate {
            target: self.target.0.clone(),
            m: self.m,
            b_list: self.b_list.iter().map(|p| p.0.clone()).collect(),
            context: self.context.iter().map(|p| p.0.clone()).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum WClosureStep {
    IdealMembership { target: WPoly, context: Vec<WPoly> },
    Certificate { cert: WCertificate },
}

impl WClosureStep {
    pub fn target(&self) -> &Polynomial {
        match self {
            WClosureStep::IdealMembership { target, .. } => &target.0,
            WClosureStep::Certificate { cert } => &cert.target.0,
        }
    }
}

// ---------------------------------------------------------------------------
// Witnesses
// ---------------------------------------------------------------------------

/// Self-contained evidence for a non-Unknown verdict.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// f is in (gens): replay recomputes a basis and reduces f to zero.
    IdealMembership { target: WPoly, gens: Vec<WPoly> },
    /// f is not in (gens) as a polynomial ideal: the recorded remainder is
    /// the nonzero normal form against a recomputed reduced basis.
    NonMembership {
        target: WPoly,
        gens: Vec<WPoly>,
        remainder: WPoly,
    },
    /// Complex local vanishing: eliminating the fresh variable from
    /// (gens, 1 - u*f) leaves `eliminant`, which is nonzero at the point.
    LocalVanishing {
        target: WPoly,
        gens: Vec<WPoly>,
        point: WPoint,
        fresh_var: u32,
        eliminant: WPoly,
    },
    /// Complex local non-vanishing: every element of the recomputed
    /// elimination basis vanishes at the point.
    LocalNonVanishing {
        target: WPoly,
        gens: Vec<WPoly>,
        point: WPoint,
        fresh_var: u32,
    },
    /// A real-radical derivation ending at the target.
    RealClosure {
        target: WPoly,
        gens: Vec<WPoly>,
        steps: Vec<WClosureStep>,
    },
    /// A curve through the point inside Z(gens) on which the target does
    /// not vanish.
    Curve {
        target: WPoly,
        gens: Vec<WPoly>,
        curve: WCurve,
    },
    /// Several sub-witnesses, all of which must replay (e.g. one per
    /// generator of a containment, or one per coordinate of a point check).
    All { parts: Vec<Witness> },
    /// A named directed index paired with the evidence found there (e.g.
    /// the subset of stream generators realizing a precedes-check).
    AtIndex {
        description: String,
        part: Box<Witness>,
    },
    /// A claim that holds by definition (e.g. containment in a full germ);
    /// carries no obligations and replays trivially.
    Vacuous { description: String },
    /// The target germ has nonzero value at the point; used to certify that
    /// a set-germ is empty near the point.
    NonvanishingAtPoint { target: WPoly, point: WPoint },
    /// An explanation with no machine-checkable content beyond exhaustion
    /// data; used only for Unknown verdicts.
    Note { text: String },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub budget_consumed: BudgetUse,
}

impl Verdict {
    pub fn proved(witness: Witness, budget_consumed: BudgetUse) -> Self {
        Verdict {
            outcome: Outcome::Proved,
            witness: Some(witness),
            budget_consumed,
        }
    }

    pub fn refuted(witness: Witness, budget_consumed: BudgetUse) -> Self {
        Verdict {
            outcome: Outcome::Refuted,
            witness: Some(witness),
            budget_consumed,
        }
    }

    pub fn unknown(note: impl Into<String>, budget_consumed: BudgetUse) -> Self {
        Verdict {
            outcome: Outcome::Unknown,
            witness: Some(Witness::Note { text: note.into() }),
            budget_consumed,
        }
    }
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum ReplayError {
    #[error("witness failed to replay: {0}")]
    Failed(String),
    #[error("groebner budget exhausted during replay")]
    Exhausted,
}

const REPLAY_GB_BUDGET: u64 = 200_000;

/// Re-verify a witness from scratch with exact arithmetic. Replay performs
/// no search: each variant pins down the data that must be recomputed and
/// checked deterministically.
pub fn verify_witness(w: &Witness) -> Result<(), ReplayError> {
    match w {
        Witness::IdealMembership { target, gens } => {
            let gens: Vec<Polynomial> = gens.iter().map(|p| p.0.clone()).collect();
            let mut budget = StepBudget::new(REPLAY_GB_BUDGET);
            match poly_membership(&target.0, &gens, &mut budget) {
                Membership::In { .. } => Ok(()),
                Membership::NotIn { .. } => Err(ReplayError::Failed(
                    "target does not reduce to zero".to_string(),
                )),
                Membership::Exhausted { .. } => Err(ReplayError::Exhausted),
            }
        }
        Witness::NonMembership {
            target,
            gens,
            remainder,
        } => {
            let gens: Vec<Polynomial> = gens.iter().map(|p| p.0.clone()).collect();
            let mut budget = StepBudget::new(REPLAY_GB_BUDGET);
            match poly_membership(&target.0, &gens, &mut budget) {
                Membership::NotIn { remainder: r, .. } if r == remainder.0 => Ok(()),
                Membership::NotIn { .. } => Err(ReplayError::Failed(
                    "recomputed remainder differs from the recorded one".to_string(),
                )),
                Membership::In { .. } => Err(ReplayError::Failed(
                    "target is in the ideal after all".to_string(),
                )),
                Membership::Exhausted { .. } => Err(ReplayError::Exhausted),
            }
        }
        Witness::LocalVanishing {
            target,
            gens,
            point,
            fresh_var,
            eliminant,
        } => {
            let basis = replay_elimination(target, gens, *fresh_var)?;
            if !basis.contains(&eliminant.0) {
                return Err(ReplayError::Failed(
                    "recorded eliminant is not in the recomputed elimination basis".to_string(),
                ));
            }
            let value = eliminant
                .0
                .evaluate(&point.0)
                .map_err(|e| ReplayError::Failed(e.to_string()))?;
            if value.is_zero() {
                return Err(ReplayError::Failed(
                    "eliminant vanishes at the point".to_string(),
                ));
            }
            Ok(())
        }
        Witness::LocalNonVanishing {
            target,
            gens,
            point,
            fresh_var,
        } => {
            let basis = replay_elimination(target, gens, *fresh_var)?;
            for b in &basis {
                let value = b
                    .evaluate(&point.0)
                    .map_err(|e| ReplayError::Failed(e.to_string()))?;
                if !value.is_zero() {
                    return Err(ReplayError::Failed(
                        "an elimination basis element is nonzero at the point".to_string(),
                    ));
                }
            }
            Ok(())
        }
        Witness::RealClosure {
            target,
            gens,
            steps,
        } => {
            let context: Vec<Polynomial> = gens.iter().map(|p| p.0.clone()).collect();
            let mut proven: Vec<Polynomial> = Vec::new();
            for step in steps {
                let augmented: Vec<Polynomial> = context
                    .iter()
                    .cloned()
                    .chain(proven.iter().cloned())
                    .collect();
                match step {
                    WClosureStep::IdealMembership { target, .. } => {
                        let mut budget = StepBudget::new(REPLAY_GB_BUDGET);
                        match poly_membership(&target.0, &augmented, &mut budget) {
                            Membership::In { .. } => {}
                            Membership::NotIn { .. } => {
                                return Err(ReplayError::Failed(
                                    "closure step target is not in the augmented ideal"
                                        .to_string(),
                                ))
                            }
                            Membership::Exhausted { .. } => return Err(ReplayError::Exhausted),
                        }
                    }
                    WClosureStep::Certificate { cert } => {
                        let mut c = cert.to_cert();
                        c.context = augmented;
                        let mut budget = StepBudget::new(REPLAY_GB_BUDGET);
                        match verify_real_certificate(&c, &mut budget) {
                            CertCheck::Verified => {}
                            CertCheck::Failed { .. } => {
                                return Err(ReplayError::Failed(
                                    "certificate combination is not in the augmented ideal"
                                        .to_string(),
                                ))
                            }
                            CertCheck::Exhausted { .. } => return Err(ReplayError::Exhausted),
                        }
                    }
                }
                proven.push(step.target().clone());
            }
            if proven.contains(&target.0) {
                Ok(())
            } else {
                Err(ReplayError::Failed(
                    "derivation does not end at the target".to_string(),
                ))
            }
        }
        Witness::Curve {
            target,
            gens,
            curve,
        } => {
            let z = curve.to_curve().map_err(ReplayError::Failed)?;
            let gens: Vec<Polynomial> = gens.iter().map(|p| p.0.clone()).collect();
            match check_refuting_curve(&gens, &target.0, &z) {
                Ok(Some(_)) => Ok(()),
                Ok(None) => Err(ReplayError::Failed(
                    "curve fails exact verification".to_string(),
                )),
                Err(e) => Err(ReplayError::Failed(e.to_string())),
            }
        }
        Witness::All { parts } => {
            if parts.is_empty() {
                return Err(ReplayError::Failed("empty composite witness".to_string()));
            }
            for part in parts {
                verify_witness(part)?;
            }
            Ok(())
        }
        Witness::AtIndex { part, .. } => verify_witness(part),
        Witness::Vacuous { .. } => Ok(()),
        Witness::NonvanishingAtPoint { target, point } => {
            let value = target
                .0
                .evaluate(&point.0)
                .map_err(|e| ReplayError::Failed(e.to_string()))?;
            if value.is_zero() {
                Err(ReplayError::Failed(
                    "target vanishes at the point".to_string(),
                ))
            } else {
                Ok(())
            }
        }
        Witness::Note { .. } => Err(ReplayError::Failed(
            "a note carries no checkable evidence".to_string(),
        )),
    }
}

fn replay_elimination(
    target: &WPoly,
    gens: &[WPoly],
    fresh_var: u32,
) -> Result<Vec<Polynomial>, ReplayError> {
    let u = VarIndex::new(fresh_var)
        .ok_or_else(|| ReplayError::Failed("fresh variable index must be positive".to_string()))?;
    let tag = target.0.tag();
    for g in gens {
        if g.0.support().contains(&u) {
            return Err(ReplayError::Failed(
                "fresh variable already occurs in a generator".to_string(),
            ));
        }
    }
    if target.0.support().contains(&u) {
        return Err(ReplayError::Failed(
            "fresh variable already occurs in the target".to_string(),
        ));
    }
    let one = Polynomial::one(tag);
    let aux = one
        .sub(
            &Polynomial::var(tag, u)
                .mul(&target.0)
                .map_err(|e| ReplayError::Failed(e.to_string()))?,
        )
        .map_err(|e| ReplayError::Failed(e.to_string()))?;
    let mut gens: Vec<Polynomial> = gens.iter().map(|p| p.0.clone()).collect();
    gens.push(aux);
    let drop: std::collections::BTreeSet<VarIndex> = [u].into_iter().collect();
    let mut budget = StepBudget::new(REPLAY_GB_BUDGET);
    crate::groebner::eliminate(&gens, &drop, &mut budget).map_err(|e| match e {
        crate::groebner::GroebnerError::BudgetExhausted { .. } => ReplayError::Exhausted,
        other => ReplayError::Failed(other.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use crate::scalar::FieldTag::{Complex, Real};

    fn wp(text: &str) -> WPoly {
        WPoly(parse_poly(text, Real).unwrap())
    }

    #[test]
    fn membership_witness_replays() {
        let w = Witness::IdealMembership {
            target: wp("x_1^2*x_2"),
            gens: vec![wp("x_1^2 - x_2")],
        };
        assert!(verify_witness(&w).is_err());
        let w = Witness::IdealMembership {
            target: wp("x_1^4 - x_2^2"),
            gens: vec![wp("x_1^2 - x_2")],
        };
        verify_witness(&w).unwrap();
    }

    #[test]
    fn local_vanishing_round_trip() {
        // x1 vanishes on the complex germ of (x1^2) at 0
        let target = WPoly(parse_poly("x_1", Complex).unwrap());
        let gens = vec![WPoly(parse_poly("x_1^2", Complex).unwrap())];
        let basis = replay_elimination(&target, &gens, 2).unwrap();
        let eliminant = basis
            .iter()
            .find(|b| {
                !b.evaluate(&crate::poly::BasePoint::origin(Complex))
                    .unwrap()
                    .is_zero()
            })
            .cloned()
            .unwrap();
        let w = Witness::LocalVanishing {
            target,
            gens,
            point: WPoint(crate::poly::BasePoint::origin(Complex)),
            fresh_var: 2,
            eliminant: WPoly(eliminant),
        };
        verify_witness(&w).unwrap();

        let json = serde_json::to_string(&w).unwrap();
        let back: Witness = serde_json::from_str(&json).unwrap();
        assert_eq!(w, back);
        verify_witness(&back).unwrap();
    }

    #[test]
    fn curve_witness_serde_and_replay() {
        let w = Witness::Curve {
            target: wp("x_2"),
            gens: vec![wp("x_1^2 + (x_2 - x_3)^2")],
            curve: WCurve {
                base: WPoint(crate::poly::BasePoint::origin(Real)),
                components: vec![(2, "s".to_string()), (3, "s".to_string())],
            },
        };
        verify_witness(&w).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        let back: Witness = serde_json::from_str(&json).unwrap();
        verify_witness(&back).unwrap();
    }

    #[test]
    fn closure_witness_replays_in_order() {
        let gens = vec![wp("x_1^2 + (x_2 - x_3)^2"), wp("x_3")];
        let steps = vec![
            WClosureStep::Certificate {
                cert: WCertificate {
                    target: wp("x_2 - x_3"),
                    m: 1,
                    b_list: vec![wp("x_1")],
                    context: gens.clone(),
                },
            },
            WClosureStep::IdealMembership {
                target: wp("x_2"),
                context: gens.clone(),
            },
        ];
        let w = Witness::RealClosure {
            target: wp("x_2"),
            gens: gens.clone(),
            steps,
        };
        verify_witness(&w).unwrap();
    }

    #[test]
    fn note_does_not_replay() {
        let w = Witness::Note {
            text: "frontier reached".to_string(),
        };
        assert!(verify_witness(&w).is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let v = Verdict::proved(
            Witness::IdealMembership {
                target: wp("x_1"),
                gens: vec![wp("x_1")],
            },
            BudgetUse::default(),
        );
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["outcome"], "proved");
        assert_eq!(json["witness"]["kind"], "ideal_membership");
        assert_eq!(json["witness"]["target"]["field"], "real");
        assert_eq!(json["witness"]["target"]["text"], "x_1");
    }
}
