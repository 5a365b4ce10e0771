//! Buchberger-based Groebner engine over Q and Q(i).
//!
//! Pair selection is the normal strategy: minimal lcm total degree first,
//! ties broken by lexicographically smallest pair indices, which makes every
//! basis deterministic given the order. Budgets count pair reductions so
//! callers can surface Unknown instead of hanging.

use crate::poly::{Monomial, Polynomial, VarIndex};
use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("variable {0} not covered by the term order")]
    UnknownVariable(VarIndex),
    #[error("budget exhausted after {consumed} pair reductions")]
    BudgetExhausted { consumed: u64 },
}

/// Admissible monomial order used by the engine.
///
/// `GrevLex(vars)` is graded reverse lexicographic with the listed variables
/// in decreasing significance. `Elimination` compares the dropped block
/// first (grevlex among themselves), so basis elements free of the dropped
/// variables generate the intersection with the kept subring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TermOrder {
    GrevLex(Vec<VarIndex>),
    Elimination {
        drop: Vec<VarIndex>,
        keep: Vec<VarIndex>,
    },
}

impl TermOrder {
    /// Natural grevlex over the union support of the given polynomials,
    /// x_1 > x_2 > ... .
    pub fn grevlex_for<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> TermOrder {
        let mut vars = BTreeSet::new();
        for p in polys {
            vars.extend(p.support());
        }
        TermOrder::GrevLex(vars.into_iter().collect())
    }

    pub fn elimination_for<'a>(
        polys: impl IntoIterator<Item = &'a Polynomial>,
        drop: &BTreeSet<VarIndex>,
    ) -> TermOrder {
        let mut vars = BTreeSet::new();
        for p in polys {
            vars.extend(p.support());
        }
        let keep: Vec<VarIndex> = vars.iter().copied().filter(|x| !drop.contains(x)).collect();
        let dropped: Vec<VarIndex> = vars.iter().copied().filter(|x| drop.contains(x)).collect();
        TermOrder::Elimination {
            drop: dropped,
            keep,
        }
    }

    fn var_lists(&self) -> Vec<&[VarIndex]> {
        match self {
            TermOrder::GrevLex(vars) => vec![vars],
            TermOrder::Elimination { drop, keep } => vec![drop, keep],
        }
    }

    pub fn covers(&self, p: &Polynomial) -> Result<(), GroebnerError> {
        let lists = self.var_lists();
        for x in p.support() {
            if !lists.iter().any(|l| l.contains(&x)) {
                return Err(GroebnerError::UnknownVariable(x));
            }
        }
        Ok(())
    }

    /// Grevlex within one priority list: graded, ties broken at the least
    /// significant listed variable with a differing exponent.
    fn block_cmp(vars: &[VarIndex], a: &Monomial, b: &Monomial) -> Ordering {
        let da: u32 = vars.iter().map(|x| a.exponent(*x)).sum();
        let db: u32 = vars.iter().map(|x| b.exponent(*x)).sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for x in vars.iter().rev() {
            match a.exponent(*x).cmp(&b.exponent(*x)) {
                Ordering::Greater => return Ordering::Less,
                Ordering::Less => return Ordering::Greater,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for vars in self.var_lists() {
            match Self::block_cmp(vars, a, b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// Leading term of a nonzero polynomial under the order.
pub fn leading_term<'a>(p: &'a Polynomial, order: &TermOrder) -> Option<(&'a Monomial, &'a Scalar)> {
    p.terms().max_by(|(ma, _), (mb, _)| order.cmp(ma, mb))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis {
    generators: Vec<Polynomial>,
    order: TermOrder,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Wrap an arbitrary generating set; `normal_form` against it is plain
    /// multivariate division, conclusive for membership only once the set is
    /// an actual Groebner basis.
    pub fn unverified(generators: Vec<Polynomial>, order: TermOrder) -> GroebnerBasis {
        GroebnerBasis {
            generators,
            order,
            reduced: false,
        }
    }
}

/// Budget counting pair reductions; shared by one logical query.
#[derive(Clone, Debug)]
pub struct StepBudget {
    max: u64,
    consumed: u64,
}

pub const DEFAULT_GB_BUDGET: u64 = 10_000;

impl StepBudget {
    pub fn new(max: u64) -> StepBudget {
        StepBudget { max, consumed: 0 }
    }

    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn remaining(&self) -> u64 {
        self.max.saturating_sub(self.consumed)
    }

    fn step(&mut self) -> Result<(), GroebnerError> {
        if self.consumed >= self.max {
            return Err(GroebnerError::BudgetExhausted {
                consumed: self.consumed,
            });
        }
        self.consumed += 1;
        Ok(())
    }
}

impl Default for StepBudget {
    fn default() -> Self {
        StepBudget::new(DEFAULT_GB_BUDGET)
    }
}

fn make_monic(p: &Polynomial, order: &TermOrder) -> Polynomial {
    match leading_term(p, order) {
        None => p.clone(),
        Some((_, c)) => {
            let inv = c.inv().expect("nonzero leading coefficient");
            p.scalar_mul(&inv).expect("same tag")
        }
    }
}

/// Remainder of multivariate division of `f` by the basis generators.
/// Deterministic: at each step the first listed generator whose leading term
/// divides the current leading term is used.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial, GroebnerError> {
    basis.order.covers(f)?;
    for g in &basis.generators {
        basis.order.covers(g)?;
    }
    let order = &basis.order;
    let mut p = f.clone();
    let mut r = Polynomial::zero(f.tag());
    while !p.is_zero() {
        let (lm, lc) = {
            let (m, c) = leading_term(&p, order).expect("nonzero");
            (m.clone(), c.clone())
        };
        let mut reduced = false;
        for g in &basis.generators {
            if g.is_zero() {
                continue;
            }
            let (gm, gc) = leading_term(g, order).expect("nonzero");
            if let Some(q) = gm.div_into(&lm) {
                let coeff = lc
                    .div(gc)
                    .expect("same tag")
                    .expect("nonzero leading coefficient");
                p = p.sub(&g.term_mul(&q, &coeff).expect("same tag")).expect("same tag");
                reduced = true;
                break;
            }
        }
        if !reduced {
            let mono = Polynomial::from_terms(f.tag(), [(lm.clone(), lc.clone())]).expect("tag");
            r = r.add(&mono).expect("same tag");
            p = p.sub(&mono).expect("same tag");
        }
    }
    Ok(r)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &TermOrder) -> Polynomial {
    let (fm, fc) = leading_term(f, order).expect("nonzero");
    let (gm, gc) = leading_term(g, order).expect("nonzero");
    let l = fm.lcm(gm);
    let mf = fm.div_into(&l).expect("lcm divisible");
    let mg = gm.div_into(&l).expect("lcm divisible");
    let a = f
        .term_mul(&mf, &fc.inv().expect("nonzero"))
        .expect("same tag");
    let b = g
        .term_mul(&mg, &gc.inv().expect("nonzero"))
        .expect("same tag");
    a.sub(&b).expect("same tag")
}

/// Compute the reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(
    gens: &[Polynomial],
    order: &TermOrder,
    budget: &mut StepBudget,
) -> Result<GroebnerBasis, GroebnerError> {
    for g in gens {
        order.covers(g)?;
    }
    let mut basis: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| make_monic(g, order))
        .collect();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }

    while !pairs.is_empty() {
        // normal strategy: minimal lcm degree, ties by smallest (i, j)
        let best = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, (i, j))| {
                let (mi, _) = leading_term(&basis[*i], order).expect("nonzero");
                let (mj, _) = leading_term(&basis[*j], order).expect("nonzero");
                (mi.lcm(mj).total_degree(), *i, *j)
            })
            .map(|(idx, _)| idx)
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(best);

        let (mi, _) = leading_term(&basis[i], order).expect("nonzero");
        let (mj, _) = leading_term(&basis[j], order).expect("nonzero");
        // product criterion: coprime leading monomials reduce to zero
        if mi.lcm(mj).total_degree() == mi.total_degree() + mj.total_degree() {
            continue;
        }

        budget.step()?;
        let s = s_polynomial(&basis[i], &basis[j], order);
        let current = GroebnerBasis {
            generators: basis.clone(),
            order: order.clone(),
            reduced: false,
        };
        let r = normal_form(&s, &current)?;
        if !r.is_zero() {
            let r = make_monic(&r, order);
            let new_idx = basis.len();
            basis.push(r);
            for k in 0..new_idx {
                pairs.push((k, new_idx));
            }
        }
    }

    Ok(reduce_basis(basis, order))
}

/// Minimalize then fully reduce and sort a basis whose S-polynomials all
/// reduce to zero.
fn reduce_basis(mut basis: Vec<Polynomial>, order: &TermOrder) -> GroebnerBasis {
    // minimalize: drop generators whose leading term another divides
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (mi, _) = leading_term(&basis[i], order).expect("nonzero");
        let mi = mi.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (mj, _) = leading_term(&basis[j], order).expect("nonzero");
            if mj.divides(&mi) && (mj != &mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    basis = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();

    // fully reduce each generator against the others
    let mut reduced = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<Polynomial> = basis
            .iter()
            .enumerate()
            .filter_map(|(j, g)| if j != i { Some(g.clone()) } else { None })
            .collect();
        let wrapper = GroebnerBasis {
            generators: others,
            order: order.clone(),
            reduced: false,
        };
        let r = normal_form(&basis[i], &wrapper).expect("coverage checked");
        if !r.is_zero() {
            reduced.push(make_monic(&r, order));
        }
    }

    reduced.sort_by(|a, b| {
        let (ma, _) = leading_term(a, order).expect("nonzero");
        let (mb, _) = leading_term(b, order).expect("nonzero");
        order.cmp(ma, mb)
    });
    GroebnerBasis {
        generators: reduced,
        order: order.clone(),
        reduced: true,
    }
}

/// Membership outcome of the raw engine layer, before germ-level witnesses
/// are attached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Membership {
    /// Normal form reached zero under a computed reduced basis.
    In { basis: GroebnerBasis },
    /// Nonzero normal form under a computed reduced basis.
    NotIn {
        basis: GroebnerBasis,
        remainder: Polynomial,
    },
    /// Budget ran out before the basis was complete.
    Exhausted { consumed: u64 },
}

/// Decide f ∈ (gens) with the natural grevlex order over the union support.
pub fn is_member(f: &Polynomial, gens: &[Polynomial], budget: &mut StepBudget) -> Membership {
    let order = TermOrder::grevlex_for(gens.iter().chain(std::iter::once(f)));
    is_member_under(f, gens, &order, budget)
}

pub fn is_member_under(
    f: &Polynomial,
    gens: &[Polynomial],
    order: &TermOrder,
    budget: &mut StepBudget,
) -> Membership {
    match buchberger(gens, order, budget) {
        Err(GroebnerError::BudgetExhausted { consumed }) => Membership::Exhausted { consumed },
        Err(GroebnerError::UnknownVariable(_)) => unreachable!("order built over union support"),
        Ok(basis) => {
            let r = normal_form(f, &basis).expect("coverage");
            if r.is_zero() {
                Membership::In { basis }
            } else {
                Membership::NotIn { basis, remainder: r }
            }
        }
    }
}

/// Generators of (gens) ∩ K[kept variables], by elimination.
pub fn eliminate(
    gens: &[Polynomial],
    drop: &BTreeSet<VarIndex>,
    budget: &mut StepBudget,
) -> Result<Vec<Polynomial>, GroebnerError> {
    let order = TermOrder::elimination_for(gens.iter(), drop);
    let basis = buchberger(gens, &order, budget)?;
    Ok(basis
        .generators()
        .iter()
        .filter(|g| g.support().is_disjoint(drop))
        .cloned()
        .collect())
}

/// All S-polynomials of the basis reduce to zero (Buchberger criterion).
pub fn passes_buchberger_criterion(basis: &GroebnerBasis) -> bool {
    let gens = basis.generators();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let s = s_polynomial(&gens[i], &gens[j], basis.order());
            match normal_form(&s, basis) {
                Ok(r) if r.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Macaulay-matrix membership oracle
// ---------------------------------------------------------------------------

/// Outcome of the degree-bounded linear-algebra membership oracle.
/// `Proved` implies true membership; `UnknownAtBound` only means no
/// representation exists within the degree bound.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleOutcome {
    Proved,
    UnknownAtBound,
}

/// Decide by exact linear algebra whether f = Σ h_i g_i with
/// deg(h_i g_i) <= degree_bound. Independent of the Buchberger path: the
/// search is row reduction over the span of all shifted generators.
pub fn macaulay_membership_oracle(
    f: &Polynomial,
    gens: &[Polynomial],
    degree_bound: u32,
) -> OracleOutcome {
    use std::collections::BTreeMap;

    let mut vars: BTreeSet<VarIndex> = f.support();
    for g in gens {
        vars.extend(g.support());
    }
    let vars: Vec<VarIndex> = vars.into_iter().collect();

    // echelon set keyed by leading monomial (natural grevlex)
    let mut echelon: BTreeMap<Monomial, Polynomial> = BTreeMap::new();

    let reduce = |p: &Polynomial, echelon: &BTreeMap<Monomial, Polynomial>| -> Polynomial {
        let mut p = p.clone();
        loop {
            let Some((lm, lc)) = p.terms_desc().next().map(|(m, c)| (m.clone(), c.clone()))
            else {
                return p;
            };
            match echelon.get(&lm) {
                None => return p,
                Some(row) => {
                    p = p.sub(&row.scalar_mul(&lc).expect("tag")).expect("tag");
                }
            }
        }
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let gdeg = g.total_degree();
        if gdeg > degree_bound {
            continue;
        }
        for m in monomials_up_to(&vars, degree_bound - gdeg) {
            let shifted = g
                .term_mul(&m, &Scalar::one(g.tag()))
                .expect("same tag");
            let mut r = reduce(&shifted, &echelon);
            loop {
                if r.is_zero() {
                    break;
                }
                let (lm, lc) = {
                    let (m, c) = r.terms_desc().next().expect("nonzero");
                    (m.clone(), c.clone())
                };
                if echelon.contains_key(&lm) {
                    r = reduce(&r, &echelon);
                    continue;
                }
                let monic = r.scalar_mul(&lc.inv().expect("nonzero")).expect("tag");
                echelon.insert(lm, monic);
                break;
            }
        }
    }

    if reduce(f, &echelon).is_zero() {
        OracleOutcome::Proved
    } else {
        OracleOutcome::UnknownAtBound
    }
}

/// All monomials in `vars` of total degree <= bound.
fn monomials_up_to(vars: &[VarIndex], bound: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    for &x in vars {
        let mut next = Vec::new();
        for m in &out {
            let room = bound - m.total_degree();
            for e in 0..=room {
                if e == 0 {
                    next.push(m.clone());
                } else {
                    next.push(m.mul(&Monomial::var(x).pow(e)));
                }
            }
        }
        out = next;
    }
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

    fn gb(gens: &[Polynomial]) -> GroebnerBasis {
        let order = TermOrder::grevlex_for(gens.iter());
        buchberger(gens, &order, &mut StepBudget::default()).unwrap()
    }

    #[test]
    fn generator_membership() {
        let basis = gb(&[p("x_1"), p("x_2")]);
        assert!(normal_form(&p("x_2"), &basis).unwrap().is_zero());
    }

    #[test]
    fn substitution_reduction() {
        // x1^4 mod (x1^2 - x2) = x2^2
        let basis = gb(&[p("x_1^2 - x_2")]);
        assert_eq!(normal_form(&p("x_1^4"), &basis).unwrap(), p("x_2^2"));
    }

    #[test]
    fn units_never_reduce() {
        let basis = gb(&[p("x_1")]);
        assert_eq!(normal_form(&p("1"), &basis).unwrap(), p("1"));
    }

    #[test]
    fn principal_ideal_basis() {
        let basis = gb(&[p("x_1")]);
        assert_eq!(basis.generators(), &[p("x_1")]);
        let unit = gb(&[p("1")]);
        assert_eq!(unit.generators(), &[p("1")]);
    }

    #[test]
    fn elimination_finds_quotient() {
        // (x1*x2, 1 - u*x1), eliminating u, yields an ideal containing x2
        // via x2 = u*(x1 x2) + x2*(1 - u*x1). Use x_9 as u.
        let gens = [p("x_1*x_2"), p("1 - x_9*x_1")];
        let drop: BTreeSet<VarIndex> = [v(9)].into_iter().collect();
        let elim = eliminate(&gens, &drop, &mut StepBudget::default()).unwrap();
        let basis = gb(&elim);
        assert!(normal_form(&p("x_2"), &basis).unwrap().is_zero());
    }

    #[test]
    fn elimination_of_projection() {
        // (x1 - x2) projects onto the whole x2-axis: no x2-only polynomial
        let gens = [p("x_1 - x_2")];
        let drop: BTreeSet<VarIndex> = [v(1)].into_iter().collect();
        let elim = eliminate(&gens, &drop, &mut StepBudget::default()).unwrap();
        assert!(elim.is_empty());
        // cross-check with the degree-bounded oracle: x2 has no bounded
        // representation over (x1 - x2) after elimination would have found it
        assert_eq!(
            macaulay_membership_oracle(&p("x_2^2"), &gens, 6),
            OracleOutcome::UnknownAtBound
        );
    }

    #[test]
    fn elimination_trivial() {
        let gens = [p("x_1"), p("x_2")];
        let drop: BTreeSet<VarIndex> = [v(1)].into_iter().collect();
        let elim = eliminate(&gens, &drop, &mut StepBudget::default()).unwrap();
        assert_eq!(elim, vec![p("x_2")]);
    }

    #[test]
    fn member_verdicts() {
        match is_member(&p("x_1 + x_2"), &[p("x_1"), p("x_2")], &mut StepBudget::default()) {
            Membership::In { .. } => {}
            other => panic!("expected membership, got {:?}", other),
        }
        match is_member(&p("x_1"), &[p("x_1^2")], &mut StepBudget::default()) {
            Membership::NotIn { remainder, .. } => assert_eq!(remainder, p("x_1")),
            other => panic!("expected non-membership, got {:?}", other),
        }
        match is_member(&p("x_1^4 - x_2^2"), &[p("x_1^2 - x_2")], &mut StepBudget::default()) {
            Membership::In { .. } => {}
            other => panic!("expected membership, got {:?}", other),
        }
    }

    #[test]
    fn budget_exhaustion_surfaces() {
        let gens = [p("x_1^2 + x_2*x_3"), p("x_2^3 - x_1*x_3"), p("x_3^2 - x_1*x_2")];
        let order = TermOrder::grevlex_for(gens.iter());
        let mut tiny = StepBudget::new(1);
        assert!(matches!(
            buchberger(&gens, &order, &mut tiny),
            Err(GroebnerError::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            macaulay_membership_oracle(&p("x_1"), &[p("x_1")], 1),
            OracleOutcome::Proved
        );
        // x2^2 = x1^4 - (x1^2 + x2)(x1^2 - x2)
        assert_eq!(
            macaulay_membership_oracle(&p("x_2^2"), &[p("x_1^2 - x_2"), p("x_1^4")], 4),
            OracleOutcome::Proved
        );
        assert_eq!(
            macaulay_membership_oracle(&p("1"), &[p("x_1")], 10),
            OracleOutcome::UnknownAtBound
        );
    }

    #[test]
    fn basis_is_reduced_and_idempotent() {
        let gens = [p("x_1^2 - x_2"), p("x_1*x_2 - x_3"), p("x_2^2 - x_1*x_3")];
        let basis = gb(&gens);
        assert!(basis.is_reduced());
        assert!(passes_buchberger_criterion(&basis));
        let again = gb(basis.generators());
        assert_eq!(again.generators(), basis.generators());
    }

    #[test]
    fn unknown_variable_rejected() {
        let order = TermOrder::GrevLex(vec![v(1)]);
        let basis = GroebnerBasis::unverified(vec![p("x_1")], order);
        assert!(matches!(
            normal_form(&p("x_2"), &basis),
            Err(GroebnerError::UnknownVariable(_))
        ));
    }
}
