//! Set-germs, systems of germs over directed index sets, the refinement
//! relations ≼ and ≈, lattice operations, zero-systems of (possibly
//! infinitely generated) ideals, the zero-ideal of a multigerm, and the
//! point-multigerm test.
//!
//! Set-germs are intensional: a germ of a variety is carried by the list of
//! germs cutting it out, never by point enumeration. All set reasoning
//! routes through ideal-membership and radical tests, so every conclusive
//! answer comes with a replayable witness. Quantifiers over infinite
//! families are budget-bounded and honestly report Unknown at the frontier.

use crate::germ::{
    local_radical_member_complex, FinSubsets, GeneratorStream, Germ, GermError, GermIdeal,
    LocalRadical,
};
use crate::groebner::StepBudget;
use crate::parser::print_canonical;
use crate::poly::{BasePoint, Polynomial, VarIndex};
use crate::real::{
    real_radical_closure, refute_real_vanishing, ClosureStep, RealError, Refutation,
};
use crate::scalar::FieldTag;
use crate::verdict::{
    BudgetUse, Budgets, Outcome, Verdict, WCertificate, WClosureStep, WCurve, WPoint, WPoly,
    Witness,
};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MultigermError {
    #[error("operands live at different base points")]
    BaseMismatch,
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Real(#[from] RealError),
    #[error("index relation is not directed: {0}")]
    NotDirected(String),
    #[error("operation requires explicit or finitely generated systems")]
    LazyOperand,
}

// ---------------------------------------------------------------------------
// Set-germs
// ---------------------------------------------------------------------------

/// The germ at the base point of the common zero set of the defining
/// germs. An empty defining list represents the full germ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetGerm {
    base: BasePoint,
    defining: Vec<Germ>,
}

impl SetGerm {
    pub fn new(base: BasePoint, defining: Vec<Germ>) -> Result<SetGerm, MultigermError> {
        for g in &defining {
            if g.base() != &base {
                return Err(MultigermError::BaseMismatch);
            }
        }
        Ok(SetGerm { base, defining })
    }

    pub fn full(base: BasePoint) -> SetGerm {
        SetGerm {
            base,
            defining: Vec::new(),
        }
    }

    /// The empty set-germ: zero set of the unit 1.
    pub fn empty(base: BasePoint) -> SetGerm {
        let one = Germ::new(Polynomial::one(base.tag()), base.clone()).expect("constant germ");
        SetGerm {
            base,
            defining: vec![one],
        }
    }

    pub fn of_ideal(ideal: &GermIdeal) -> SetGerm {
        SetGerm {
            base: ideal.base().clone(),
            defining: ideal.generators().to_vec(),
        }
    }

    pub fn base(&self) -> &BasePoint {
        &self.base
    }

    pub fn tag(&self) -> FieldTag {
        self.base.tag()
    }

    pub fn defining(&self) -> &[Germ] {
        &self.defining
    }

    pub fn defining_polys(&self) -> Vec<Polynomial> {
        self.defining.iter().map(|g| g.poly().clone()).collect()
    }

    pub fn ideal(&self) -> GermIdeal {
        GermIdeal::new(self.base.clone(), self.defining.clone()).expect("shared base")
    }
}

/// The germ is empty near the base point iff some defining germ is
/// invertible there.
pub fn setgerm_is_empty(a: &SetGerm) -> bool {
    a.defining.iter().any(Germ::is_invertible)
}

/// Vanishing of a single germ on the zero germ of an ideal, with a
/// replayable witness. Complex: complete via the localized radical test.
/// Real: certificate closure for proofs, curve search for refutations.
pub fn germ_vanishes_on(ideal: &GermIdeal, f: &Germ, budgets: &Budgets) -> Verdict {
    let mut used = BudgetUse::default();
    match f.tag() {
        FieldTag::Complex => {
            let mut budget = StepBudget::new(budgets.groebner);
            let result = match local_radical_member_complex(ideal, f, &mut budget) {
                Ok(r) => r,
                Err(e) => {
                    return Verdict::unknown(format!("ill-posed query: {}", e), used);
                }
            };
            used.groebner += budget.consumed();
            let gens: Vec<WPoly> = ideal.generator_polys().into_iter().map(WPoly).collect();
            match result {
                LocalRadical::In {
                    fresh_var,
                    eliminant,
                    ..
                } => Verdict::proved(
                    Witness::LocalVanishing {
                        target: WPoly(f.poly().clone()),
                        gens,
                        point: WPoint(ideal.base().clone()),
                        fresh_var: fresh_var.get(),
                        eliminant: WPoly(eliminant),
                    },
                    used,
                ),
                LocalRadical::NotIn { fresh_var, .. } => Verdict::refuted(
                    Witness::LocalNonVanishing {
                        target: WPoly(f.poly().clone()),
                        gens,
                        point: WPoint(ideal.base().clone()),
                        fresh_var: fresh_var.get(),
                    },
                    used,
                ),
                LocalRadical::Exhausted { consumed } => {
                    used.groebner += consumed;
                    Verdict::unknown("elimination budget exhausted", used)
                }
            }
        }
        FieldTag::Real => {
            let targets = [f.clone()];
            match real_radical_closure(ideal, &targets, &[], budgets.groebner) {
                Ok(outcome) => {
                    used.groebner += outcome.gb_consumed;
                    if outcome.proven[0].is_some() {
                        return Verdict::proved(
                            closure_witness(f.poly(), &ideal.generator_polys(), &outcome.steps),
                            used,
                        );
                    }
                }
                Err(e) => return Verdict::unknown(format!("ill-posed query: {}", e), used),
            }
            match refute_real_vanishing(ideal, f, None, budgets.curve) {
                Ok(Refutation::Refuted {
                    curve,
                    candidates_tried,
                    ..
                }) => {
                    used.curve += candidates_tried;
                    Verdict::refuted(
                        Witness::Curve {
                            target: WPoly(f.poly().clone()),
                            gens: ideal.generator_polys().into_iter().map(WPoly).collect(),
                            curve: WCurve::from_curve(&curve),
                        },
                        used,
                    )
                }
                Ok(Refutation::Unknown { candidates_tried }) => {
                    used.curve += candidates_tried;
                    Verdict::unknown("no certificate found and no refuting curve found", used)
                }
                Err(e) => Verdict::unknown(format!("ill-posed query: {}", e), used),
            }
        }
    }
}

pub(crate) fn closure_witness(
    target: &Polynomial,
    gens: &[Polynomial],
    steps: &[ClosureStep],
) -> Witness {
    let wsteps = steps
        .iter()
        .map(|s| match s {
            ClosureStep::R1 { target } | ClosureStep::R2 { target } => {
                WClosureStep::IdealMembership {
                    target: WPoly(target.clone()),
                    context: gens.iter().cloned().map(WPoly).collect(),
                }
            }
            ClosureStep::R3 { cert } => WClosureStep::Certificate {
                cert: WCertificate::from_cert(cert),
            },
        })
        .collect();
    Witness::RealClosure {
        target: WPoly(target.clone()),
        gens: gens.iter().cloned().map(WPoly).collect(),
        steps: wsteps,
    }
}

/// Containment Z(A) ⊆ Z(B) of set-germs: every defining germ of B must
/// vanish on the zero germ of A's ideal.
pub fn setgerm_contains(a: &SetGerm, b: &SetGerm, budgets: &Budgets) -> Verdict {
    let mut used = BudgetUse::default();
    if a.base() != b.base() {
        return Verdict::unknown("ill-posed query: base points differ", used);
    }
    if b.defining.is_empty() {
        return Verdict::proved(
            Witness::Vacuous {
                description: "every set-germ is contained in the full germ".to_string(),
            },
            used,
        );
    }
    if let Some(inv) = a.defining.iter().find(|g| g.is_invertible()) {
        return Verdict::proved(
            Witness::NonvanishingAtPoint {
                target: WPoly(inv.poly().clone()),
                point: WPoint(a.base().clone()),
            },
            used,
        );
    }
    let ideal = a.ideal();
    let mut parts = Vec::new();
    let mut unknown = false;
    for f in &b.defining {
        let v = germ_vanishes_on(&ideal, f, budgets);
        used.absorb(&v.budget_consumed);
        match v.outcome {
            Outcome::Proved => parts.push(v.witness.expect("proved carries witness")),
            Outcome::Refuted => {
                return Verdict::refuted(v.witness.expect("refuted carries witness"), used)
            }
            Outcome::Unknown => unknown = true,
        }
    }
    if unknown {
        Verdict::unknown("some defining germ could not be decided", used)
    } else {
        Verdict::proved(Witness::All { parts }, used)
    }
}

// ---------------------------------------------------------------------------
// Directed index sets and explicit systems
// ---------------------------------------------------------------------------

/// A finite directed set: transitive relation satisfying the Moore-Smith
/// upper-bound condition. The relation need not be reflexive; upper bounds
/// may be the elements themselves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirectedIndex {
    labels: Vec<String>,
    /// Transitive closure of the supplied relation, as index pairs.
    relation: BTreeSet<(usize, usize)>,
}

impl DirectedIndex {
    pub fn new(
        labels: Vec<String>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<DirectedIndex, MultigermError> {
        let n = labels.len();
        let mut relation: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (i, j) in pairs {
            if i >= n || j >= n {
                return Err(MultigermError::NotDirected(format!(
                    "pair ({}, {}) out of range",
                    i, j
                )));
            }
            relation.insert((i, j));
        }
        // transitive closure
        loop {
            let mut added = false;
            let pairs: Vec<(usize, usize)> = relation.iter().copied().collect();
            for &(i, j) in &pairs {
                for &(k, l) in &pairs {
                    if j == k && relation.insert((i, l)) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let index = DirectedIndex { labels, relation };
        for i in 0..n {
            for j in 0..n {
                if !(0..n).any(|k| index.at_most(i, k) && index.at_most(j, k)) {
                    return Err(MultigermError::NotDirected(format!(
                        "no upper bound for ({}, {})",
                        index.labels[i], index.labels[j]
                    )));
                }
            }
        }
        Ok(index)
    }

    /// A single unnamed index with the empty relation.
    pub fn singleton(label: impl Into<String>) -> DirectedIndex {
        DirectedIndex {
            labels: vec![label.into()],
            relation: BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.relation.contains(&(i, j))
    }

    /// i ≪ j or i = j; the order in which upper bounds are taken.
    pub fn at_most(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    /// Componentwise product order on label pairs.
    pub fn product(&self, other: &DirectedIndex) -> DirectedIndex {
        let mut labels = Vec::new();
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{}|{}", a, b));
            }
        }
        let m = other.len();
        let mut relation = BTreeSet::new();
        for i1 in 0..self.len() {
            for j1 in 0..m {
                for i2 in 0..self.len() {
                    for j2 in 0..m {
                        let p = i1 * m + j1;
                        let q = i2 * m + j2;
                        if p != q && self.at_most(i1, i2) && other.at_most(j1, j2) {
                            relation.insert((p, q));
                        }
                    }
                }
            }
        }
        DirectedIndex { labels, relation }
    }
}

/// Outcome of the tri-state antitonicity validation of an explicit system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    /// (smaller index, larger index, containment verdict for A^larger ⊆
    /// A^smaller). Refuted entries mean the family is not antitone.
    pub checks: Vec<(String, String, Outcome)>,
}

impl ValidationReport {
    pub fn is_refuted(&self) -> bool {
        self.checks.iter().any(|(_, _, o)| *o == Outcome::Refuted)
    }
}

/// A system of set-germs over an explicit finite directed index set,
/// antitone with respect to the relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExplicitSystem {
    index: DirectedIndex,
    germs: Vec<SetGerm>,
    validation: ValidationReport,
}

impl ExplicitSystem {
    /// Construct and validate. Antitonicity checks may come back Unknown
    /// (real field); construction still succeeds and the report is kept.
    pub fn new(
        index: DirectedIndex,
        germs: Vec<SetGerm>,
        budgets: &Budgets,
    ) -> Result<ExplicitSystem, MultigermError> {
        if index.len() != germs.len() {
            return Err(MultigermError::NotDirected(
                "one set-germ per index label required".to_string(),
            ));
        }
        let mut base: Option<&BasePoint> = None;
        for g in &germs {
            match base {
                None => base = Some(g.base()),
                Some(b) if b == g.base() => {}
                Some(_) => return Err(MultigermError::BaseMismatch),
            }
        }
        let mut checks = Vec::new();
        for i in 0..index.len() {
            for j in 0..index.len() {
                if index.lt(i, j) && i != j {
                    // i ≪ j requires A^j ⊆ A^i
                    let v = setgerm_contains(&germs[j], &germs[i], budgets);
                    checks.push((
                        index.labels[i].clone(),
                        index.labels[j].clone(),
                        v.outcome,
                    ));
                }
            }
        }
        Ok(ExplicitSystem {
            index,
            germs,
            validation: ValidationReport { checks },
        })
    }

    pub fn index(&self) -> &DirectedIndex {
        &self.index
    }

    pub fn germs(&self) -> &[SetGerm] {
        &self.germs
    }

    pub fn validation(&self) -> &ValidationReport {
        &self.validation
    }

    pub fn base(&self) -> &BasePoint {
        self.germs
            .first()
            .map(SetGerm::base)
            .unwrap_or_else(|| panic!("explicit systems are nonempty"))
    }
}

/// A system of germs: explicit, or the lazy zero-system {Z(α) : α ∈ fin(I)}
/// of an enumerably generated ideal, ordered by inclusion of α.
#[derive(Clone, Debug)]
pub enum SystemOfGerms {
    Explicit(ExplicitSystem),
    ZeroSystem(GeneratorStream),
}

impl SystemOfGerms {
    pub fn base(&self) -> &BasePoint {
        match self {
            SystemOfGerms::Explicit(e) => e.base(),
            SystemOfGerms::ZeroSystem(s) => s.base(),
        }
    }

    pub fn tag(&self) -> FieldTag {
        self.base().tag()
    }
}

/// The zero-system of an ideal presentation.
pub fn zero_system(stream: GeneratorStream) -> SystemOfGerms {
    SystemOfGerms::ZeroSystem(stream)
}

/// The system of point-germs at the base, restricted to the given
/// coordinates: the zero-system of the coordinate germs x_t − x0_t.
pub fn point_system(
    base: &BasePoint,
    dims: &BTreeSet<VarIndex>,
) -> Result<SystemOfGerms, MultigermError> {
    let gens = coordinate_germs(base, dims)?;
    let ideal = GermIdeal::new(base.clone(), gens)?;
    Ok(SystemOfGerms::ZeroSystem(GeneratorStream::Finite(ideal)))
}

/// The coordinate germs x_t − x0_t for t in dims.
pub fn coordinate_germs(
    base: &BasePoint,
    dims: &BTreeSet<VarIndex>,
) -> Result<Vec<Germ>, MultigermError> {
    let tag = base.tag();
    let mut out = Vec::new();
    for &t in dims {
        let poly = Polynomial::var(tag, t)
            .sub(&Polynomial::constant(base.coordinate(t)))
            .expect("same tag");
        out.push(Germ::new(poly, base.clone())?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Enumeration of a system's indices
// ---------------------------------------------------------------------------

/// One enumerated index of a system: a label and its set-germ.
struct Candidate {
    label: String,
    germ: SetGerm,
}

fn describe_subset(germs: &[Germ]) -> String {
    let texts: Vec<String> = germs.iter().map(|g| print_canonical(g.poly())).collect();
    format!("[{}]", texts.join(", "))
}

fn subset_germ(stream: &GeneratorStream, subset: &[usize]) -> Result<Option<SetGerm>, GermError> {
    let mut gens = Vec::new();
    for &j in subset {
        match stream.nth(j)? {
            Some(g) => gens.push(g),
            None => return Ok(None),
        }
    }
    Ok(Some(
        SetGerm::new(stream.base().clone(), gens).expect("shared base"),
    ))
}

/// Enumerate a system's indices up to the enumeration budget. Returns the
/// candidates and whether the enumeration is exhaustive (covers a cofinal
/// set of indices).
fn enumerate_candidates(
    sys: &SystemOfGerms,
    enum_budget: u64,
    used: &mut BudgetUse,
) -> Result<(Vec<Candidate>, bool), MultigermError> {
    match sys {
        SystemOfGerms::Explicit(e) => Ok((
            e.index
                .labels
                .iter()
                .zip(e.germs.iter())
                .map(|(l, g)| Candidate {
                    label: l.clone(),
                    germ: g.clone(),
                })
                .collect(),
            true,
        )),
        SystemOfGerms::ZeroSystem(stream) => {
            let mut out = Vec::new();
            let mut complete = false;
            let limit = stream.finite_len();
            let total = limit.map(|n| {
                if n == 0 {
                    0u64
                } else {
                    2u64.saturating_pow(n as u32) - 1
                }
            });
            if limit == Some(0) {
                // zero ideal: the single full germ
                out.push(Candidate {
                    label: "[]".to_string(),
                    germ: SetGerm::full(stream.base().clone()),
                });
                return Ok((out, true));
            }
            for subset in FinSubsets::new(limit) {
                if used.enumeration >= enum_budget {
                    break;
                }
                used.enumeration += 1;
                match subset_germ(stream, &subset)? {
                    Some(g) => out.push(Candidate {
                        label: describe_subset(g.defining()),
                        germ: g,
                    }),
                    None => break,
                }
            }
            if let Some(total) = total {
                complete = out.len() as u64 == total;
            }
            Ok((out, complete))
        }
    }
}

/// For a finite zero-system, the cofinal maximal index: the subset of all
/// generators. Containment facts checked there transfer to every index.
fn maximal_candidate(sys: &SystemOfGerms) -> Option<Candidate> {
    if let SystemOfGerms::ZeroSystem(GeneratorStream::Finite(ideal)) = sys {
        let germ = SetGerm::of_ideal(ideal);
        return Some(Candidate {
            label: describe_subset(germ.defining()),
            germ,
        });
    }
    None
}

// ---------------------------------------------------------------------------
// Lattice operations
// ---------------------------------------------------------------------------

fn to_explicit(
    sys: &SystemOfGerms,
    _budgets: &Budgets,
    used: &mut BudgetUse,
) -> Result<ExplicitSystem, MultigermError> {
    match sys {
        SystemOfGerms::Explicit(e) => Ok(e.clone()),
        SystemOfGerms::ZeroSystem(stream) => {
            if !stream.is_finite() {
                return Err(MultigermError::LazyOperand);
            }
            let (candidates, complete) = enumerate_candidates(sys, u64::MAX, used)?;
            debug_assert!(complete);
            let labels: Vec<String> = candidates.iter().map(|c| c.label.clone()).collect();
            let germs: Vec<SetGerm> = candidates.into_iter().map(|c| c.germ).collect();
            // inclusion of subsets: i ≪ j iff germ list of i is a subset of j's
            let mut pairs = Vec::new();
            for i in 0..germs.len() {
                for j in 0..germs.len() {
                    if i != j
                        && germs[i]
                            .defining()
                            .iter()
                            .all(|g| germs[j].defining().contains(g))
                    {
                        pairs.push((i, j));
                    }
                }
            }
            // skip re-validation: zero-systems are antitone by construction
            let index = DirectedIndex::new(labels, pairs)?;
            Ok(ExplicitSystem {
                validation: ValidationReport { checks: Vec::new() },
                germs,
                index,
            })
        }
    }
}

/// Intersection of systems: the product directed set, with defining lists
/// concatenated pointwise.
pub fn sys_intersection(
    a: &SystemOfGerms,
    b: &SystemOfGerms,
    budgets: &Budgets,
) -> Result<SystemOfGerms, MultigermError> {
    combine(a, b, budgets, |x, y| {
        let mut defining = x.defining().to_vec();
        defining.extend(y.defining().iter().cloned());
        SetGerm::new(x.base().clone(), defining)
    })
}

/// Union of systems: the product directed set, with each pair of set-germs
/// joined via pairwise products of their defining germs (the zero set of
/// f·g is Z(f) ∪ Z(g)). The union with a full germ is the full germ.
pub fn sys_union(
    a: &SystemOfGerms,
    b: &SystemOfGerms,
    budgets: &Budgets,
) -> Result<SystemOfGerms, MultigermError> {
    combine(a, b, budgets, |x, y| {
        if x.defining().is_empty() || y.defining().is_empty() {
            return Ok(SetGerm::full(x.base().clone()));
        }
        let mut defining = Vec::new();
        for f in x.defining() {
            for g in y.defining() {
                let poly = f.poly().mul(g.poly()).expect("same tag");
                defining.push(Germ::new(poly, x.base().clone())?);
            }
        }
        SetGerm::new(x.base().clone(), defining)
    })
}

fn combine(
    a: &SystemOfGerms,
    b: &SystemOfGerms,
    budgets: &Budgets,
    join: impl Fn(&SetGerm, &SetGerm) -> Result<SetGerm, MultigermError>,
) -> Result<SystemOfGerms, MultigermError> {
    if a.base() != b.base() {
        return Err(MultigermError::BaseMismatch);
    }
    let mut used = BudgetUse::default();
    let ea = to_explicit(a, budgets, &mut used)?;
    let eb = to_explicit(b, budgets, &mut used)?;
    let index = ea.index.product(&eb.index);
    let mut germs = Vec::new();
    for x in &ea.germs {
        for y in &eb.germs {
            germs.push(join(x, y)?);
        }
    }
    // the product of antitone families under a monotone join is antitone;
    // skip the quadratic re-validation
    Ok(SystemOfGerms::Explicit(ExplicitSystem {
        index,
        germs,
        validation: ValidationReport { checks: Vec::new() },
    }))
}

// ---------------------------------------------------------------------------
// The relations ≼ and ≈
// ---------------------------------------------------------------------------

/// A ≼ B: for every index β of B there is an index α of A with
/// A^α ⊆ B^β. For a finite zero-system B the check collapses to the
/// cofinal maximal index; for a templated B only refutations and frontier
/// reports are possible.
pub fn precedes(a: &SystemOfGerms, b: &SystemOfGerms, budgets: &Budgets) -> Verdict {
    let mut used = BudgetUse::default();
    if a.base() != b.base() {
        return Verdict::unknown("ill-posed query: base points differ", used);
    }

    let a_candidates = match gather_a_side(a, budgets, &mut used) {
        Ok(c) => c,
        Err(e) => return Verdict::unknown(format!("ill-posed query: {}", e), used),
    };

    // indices of B to discharge, and whether they exhaust a cofinal family
    let (b_candidates, b_cofinal) = if let Some(max) = maximal_candidate(b) {
        (vec![max], true)
    } else {
        match enumerate_candidates(b, budgets.enumeration, &mut used) {
            Ok((c, complete)) => (c, complete),
            Err(e) => return Verdict::unknown(format!("ill-posed query: {}", e), used),
        }
    };

    let mut parts = Vec::new();
    let mut any_unknown = false;
    for beta in &b_candidates {
        let mut found = None;
        let mut all_refuted = !a_candidates.1;
        for alpha in &a_candidates.0 {
            let v = setgerm_contains(&alpha.germ, &beta.germ, budgets);
            used.absorb(&v.budget_consumed);
            match v.outcome {
                Outcome::Proved => {
                    found = Some(Witness::AtIndex {
                        description: format!("beta = {}; alpha = {}", beta.label, alpha.label),
                        part: Box::new(v.witness.expect("proved carries witness")),
                    });
                    break;
                }
                Outcome::Refuted => {}
                Outcome::Unknown => all_refuted = false,
            }
        }
        match found {
            Some(w) => parts.push(w),
            None if all_refuted && a_candidates.1 => {
                // every candidate α conclusively fails at this β
                return Verdict::refuted(
                    Witness::AtIndex {
                        description: format!(
                            "beta = {}: no index of the left system is contained in it",
                            beta.label
                        ),
                        part: Box::new(Witness::Vacuous {
                            description:
                                "each candidate containment was conclusively refuted".to_string(),
                        }),
                    },
                    used,
                );
            }
            None => any_unknown = true,
        }
    }
    if any_unknown || !b_cofinal {
        return Verdict::unknown("enumeration frontier reached without discharging ∀", used);
    }
    Verdict::proved(Witness::All { parts }, used)
}

/// A-side candidates for the ∃ search, largest (finest) germs first, plus
/// whether the list is exhaustive.
fn gather_a_side(
    a: &SystemOfGerms,
    budgets: &Budgets,
    used: &mut BudgetUse,
) -> Result<(Vec<Candidate>, bool), MultigermError> {
    let (mut candidates, complete) = enumerate_candidates(a, budgets.enumeration, used)?;
    // try the finest available germs first: for zero-systems those are the
    // largest subsets
    candidates.reverse();
    Ok((candidates, complete))
}

/// A ≈ B: ≼ in both directions.
pub fn equiv(a: &SystemOfGerms, b: &SystemOfGerms, budgets: &Budgets) -> Verdict {
    let forward = precedes(a, b, budgets);
    let mut used = forward.budget_consumed;
    if forward.outcome == Outcome::Refuted {
        return Verdict::refuted(forward.witness.expect("refuted carries witness"), used);
    }
    let backward = precedes(b, a, budgets);
    used.absorb(&backward.budget_consumed);
    match (forward.outcome, backward.outcome) {
        (Outcome::Proved, Outcome::Proved) => Verdict::proved(
            Witness::All {
                parts: vec![
                    forward.witness.expect("proved carries witness"),
                    backward.witness.expect("proved carries witness"),
                ],
            },
            used,
        ),
        (_, Outcome::Refuted) => {
            Verdict::refuted(backward.witness.expect("refuted carries witness"), used)
        }
        _ => Verdict::unknown("one direction is unknown", used),
    }
}

// ---------------------------------------------------------------------------
// Zero-ideal membership and the point-multigerm test
// ---------------------------------------------------------------------------

/// Membership of f in the zero-ideal of the multigerm of A: search for an
/// index α with A^α ⊆ Z(f). Exhaustive (hence able to refute) for explicit
/// systems and finite zero-systems; semi-decision for templated streams.
pub fn zero_ideal_member(f: &Germ, a: &SystemOfGerms, budgets: &Budgets) -> Verdict {
    let mut used = BudgetUse::default();
    if f.base() != a.base() {
        return Verdict::unknown("ill-posed query: base points differ", used);
    }
    let target = SetGerm::new(a.base().clone(), vec![f.clone()]).expect("shared base");

    // for a finite zero-system the maximal index decides: its germ is the
    // smallest, so containment there is both necessary-at-best and
    // sufficient
    let (candidates, exhaustive) = if let Some(max) = maximal_candidate(a) {
        (vec![max], true)
    } else {
        match enumerate_candidates(a, budgets.enumeration, &mut used) {
            Ok(r) => r,
            Err(e) => return Verdict::unknown(format!("ill-posed query: {}", e), used),
        }
    };

    let mut all_refuted = true;
    for alpha in &candidates {
        let v = setgerm_contains(&alpha.germ, &target, budgets);
        used.absorb(&v.budget_consumed);
        match v.outcome {
            Outcome::Proved => {
                return Verdict::proved(
                    Witness::AtIndex {
                        description: format!("alpha = {}", alpha.label),
                        part: Box::new(v.witness.expect("proved carries witness")),
                    },
                    used,
                )
            }
            Outcome::Refuted => {
                if exhaustive && candidates.len() == 1 {
                    return Verdict::refuted(v.witness.expect("refuted carries witness"), used);
                }
            }
            Outcome::Unknown => all_refuted = false,
        }
    }
    if exhaustive && all_refuted && matches!(a, SystemOfGerms::Explicit(_)) {
        return Verdict::refuted(
            Witness::Vacuous {
                description: "every index was conclusively refuted".to_string(),
            },
            used,
        );
    }
    Verdict::unknown("no index of the system is contained in the zero germ", used)
}

/// Does the zero-multigerm of the ideal presented by `stream` equal the
/// point-multigerm over `dims`? Searches fin(I) for an α whose local
/// radical (complex) or real-radical closure (real) contains every
/// coordinate germ. For finite streams, conclusive refutations transfer
/// from the maximal subset to every α.
pub fn is_point_multigerm(
    stream: &GeneratorStream,
    dims: &BTreeSet<VarIndex>,
    budgets: &Budgets,
) -> Verdict {
    let mut used = BudgetUse::default();
    if dims.is_empty() {
        return Verdict::unknown("ill-posed query: dims must be nonempty", used);
    }
    let base = stream.base().clone();
    let targets = match coordinate_germs(&base, dims) {
        Ok(t) => t,
        Err(e) => return Verdict::unknown(format!("ill-posed query: {}", e), used),
    };

    // ∃ search over fin(I)
    for subset in FinSubsets::new(stream.finite_len()) {
        if used.enumeration >= budgets.enumeration {
            break;
        }
        used.enumeration += 1;
        let setgerm = match subset_germ(stream, &subset) {
            Ok(Some(g)) => g,
            Ok(None) => break,
            Err(e) => return Verdict::unknown(format!("ill-posed query: {}", e), used),
        };
        let ideal = setgerm.ideal();
        if let Some(parts) = prove_all_coordinates(&ideal, &targets, budgets, &mut used) {
            return Verdict::proved(
                Witness::AtIndex {
                    description: format!("alpha = {}", describe_subset(setgerm.defining())),
                    part: Box::new(Witness::All { parts }),
                },
                used,
            );
        }
    }

    // refutation route: a conclusive failure against the maximal subset of
    // a finite stream transfers to every α ⊆ I
    if let GeneratorStream::Finite(ideal) = stream {
        for t in &targets {
            let v = germ_vanishes_on(ideal, t, budgets);
            used.absorb(&v.budget_consumed);
            if v.outcome == Outcome::Refuted {
                return Verdict::refuted(v.witness.expect("refuted carries witness"), used);
            }
        }
    }
    Verdict::unknown("no witnessing subset found within the enumeration budget", used)
}

/// Try to prove every coordinate germ vanishes on the zero germ of the
/// ideal; returns per-coordinate witnesses on full success.
fn prove_all_coordinates(
    ideal: &GermIdeal,
    targets: &[Germ],
    budgets: &Budgets,
    used: &mut BudgetUse,
) -> Option<Vec<Witness>> {
    match ideal.base().tag() {
        FieldTag::Complex => {
            let mut parts = Vec::new();
            for t in targets {
                let v = germ_vanishes_on(ideal, t, budgets);
                used.absorb(&v.budget_consumed);
                if v.outcome != Outcome::Proved {
                    return None;
                }
                parts.push(v.witness.expect("proved carries witness"));
            }
            Some(parts)
        }
        FieldTag::Real => {
            // one closure pass proves all coordinates together or not
            let outcome = real_radical_closure(ideal, targets, &[], budgets.groebner).ok()?;
            used.groebner += outcome.gb_consumed;
            if outcome.proven.iter().any(Option::is_none) {
                return None;
            }
            let gens = ideal.generator_polys();
            Some(
                targets
                    .iter()
                    .map(|t| closure_witness(t.poly(), &gens, &outcome.steps))
                    .collect(),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// Nullstellensatz cross-check
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    /// Both routes conclusive and equal.
    Agree,
    /// Both routes conclusive and different: an engine defect, since the
    /// theorems of zeros guarantee agreement.
    Disagree,
    /// At least one route is Unknown.
    Inconclusive,
}

#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub struct NssReport {
    pub zero_ideal_side: Verdict,
    pub radical_side: Verdict,
    pub agreement: Agreement,
}

/// Run the zero-ideal route (membership in J([Z(I)])) and the radical
/// route (localized radical / real closure and refutation) independently
/// and compare. A conclusive disagreement is an engine defect.
pub fn nullstellensatz_check(ideal: &GermIdeal, f: &Germ, budgets: &Budgets) -> NssReport {
    let sys = SystemOfGerms::ZeroSystem(GeneratorStream::Finite(ideal.clone()));
    let zero_ideal_side = zero_ideal_member(f, &sys, budgets);
    let radical_side = germ_vanishes_on(ideal, f, budgets);
    let agreement = match (zero_ideal_side.outcome, radical_side.outcome) {
        (Outcome::Unknown, _) | (_, Outcome::Unknown) => Agreement::Inconclusive,
        (a, b) if a == b => Agreement::Agree,
        _ => Agreement::Disagree,
    };
    NssReport {
        zero_ideal_side,
        radical_side,
        agreement,
    }
}
