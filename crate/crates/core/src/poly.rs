//! Sparse multivariate polynomials with variables indexed by positive
//! integers, over Q or Q(i).
//!
//! The variable pool is the countably infinite index set {1, 2, 3, ...};
//! every polynomial touches only finitely many of them. Terms live in a
//! `BTreeMap` keyed by `Monomial`, whose `Ord` is graded reverse
//! lexicographic with x_1 > x_2 > ..., so iteration order (and therefore
//! printing and structural equality) is canonical.

use crate::scalar::{check_tags, FieldMismatch, FieldTag, Scalar};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Index into the countably infinite variable pool; always >= 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarIndex(u32);

impl VarIndex {
    pub fn new(index: u32) -> Option<VarIndex> {
        if index >= 1 {
            Some(VarIndex(index))
        } else {
            None
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn next(self) -> VarIndex {
        VarIndex(self.0 + 1)
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{}", self.0)
    }
}

/// Convenience constructor used pervasively in tests.
pub fn v(index: u32) -> VarIndex {
    VarIndex::new(index).expect("variable index must be >= 1")
}

/// A power product; exponents are stored only when nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: BTreeMap<VarIndex, u32>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(x: VarIndex) -> Monomial {
        let mut exps = BTreeMap::new();
        exps.insert(x, 1);
        Monomial { exps }
    }

    pub fn from_exps(pairs: impl IntoIterator<Item = (VarIndex, u32)>) -> Monomial {
        let mut exps = BTreeMap::new();
        for (x, e) in pairs {
            if e > 0 {
                *exps.entry(x).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, x: VarIndex) -> u32 {
        self.exps.get(&x).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> impl Iterator<Item = (VarIndex, u32)> + '_ {
        self.exps.iter().map(|(x, e)| (*x, *e))
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarIndex> + '_ {
        self.exps.keys().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (x, e) in &other.exps {
            *exps.entry(*x).or_insert(0) += e;
        }
        Monomial { exps }
    }

    pub fn pow(&self, n: u32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|(x, e)| (*x, e * n)).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|(x, e)| other.exponent(*x) >= *e)
    }

    /// other / self, when divisible.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = BTreeMap::new();
        for (x, e) in &other.exps {
            let d = e - self.exponent(*x);
            if d > 0 {
                exps.insert(*x, d);
            }
        }
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (x, e) in &other.exps {
            let slot = exps.entry(*x).or_insert(0);
            if *slot < *e {
                *slot = *e;
            }
        }
        Monomial { exps }
    }

    /// Graded reverse lexicographic comparison with x_1 > x_2 > ... .
    /// Ties in total degree are broken at the least significant variable
    /// (largest index) where the exponents differ: the monomial with the
    /// smaller exponent there is the larger one.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.exps.iter().rev().peekable();
        let mut b = other.exps.iter().rev().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                // remaining exponents only on one side: that side has weight
                // on a larger index, hence is smaller in grevlex
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some((xa, ea)), Some((xb, eb))) => match xa.cmp(xb) {
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Equal => {
                        match ea.cmp(eb) {
                            Ordering::Greater => return Ordering::Less,
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Equal => {
                                a.next();
                                b.next();
                            }
                        }
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.grevlex_cmp(other)
    }
}

/// Sparse polynomial in canonical form: no zero coefficients stored, all
/// scalars share the polynomial's field tag, empty map = zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    tag: FieldTag,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(tag: FieldTag) -> Polynomial {
        Polynomial {
            tag,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(tag: FieldTag) -> Polynomial {
        Polynomial::constant(Scalar::one(tag))
    }

    pub fn constant(c: Scalar) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c.clone());
        }
        Polynomial { tag: c.tag(), terms }
    }

    pub fn var(tag: FieldTag, x: VarIndex) -> Polynomial {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(x), Scalar::one(tag));
        Polynomial { tag, terms }
    }

    pub fn from_terms(
        tag: FieldTag,
        pairs: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Polynomial, FieldMismatch> {
        let mut p = Polynomial::zero(tag);
        for (m, c) in pairs {
            check_tags(tag, c.tag())?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c).expect("same tag");
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in descending grevlex order (canonical print order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.tag))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// The minimal indexing set: all variables appearing with nonzero
    /// exponent. Empty for constants.
    pub fn support(&self) -> BTreeSet<VarIndex> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            s.extend(m.vars());
        }
        s
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, FieldMismatch> {
        check_tags(self.tag, other.tag)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, FieldMismatch> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            tag: self.tag,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, FieldMismatch> {
        check_tags(self.tag, other.tag)?;
        let mut out = Polynomial::zero(self.tag);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb)?);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Result<Polynomial, FieldMismatch> {
        check_tags(self.tag, c.tag())?;
        if c.is_zero() {
            return Ok(Polynomial::zero(self.tag));
        }
        let mut terms = BTreeMap::new();
        for (m, k) in &self.terms {
            terms.insert(m.clone(), k.mul(c)?);
        }
        Ok(Polynomial { tag: self.tag, terms })
    }

    /// Multiply by a single term.
    pub fn term_mul(&self, m: &Monomial, c: &Scalar) -> Result<Polynomial, FieldMismatch> {
        check_tags(self.tag, c.tag())?;
        if c.is_zero() {
            return Ok(Polynomial::zero(self.tag));
        }
        let mut terms = BTreeMap::new();
        for (mm, k) in &self.terms {
            terms.insert(mm.mul(m), k.mul(c)?);
        }
        Ok(Polynomial { tag: self.tag, terms })
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.tag);
        for _ in 0..n {
            acc = acc.mul(self).expect("same tag");
        }
        acc
    }

    /// Exact value at a base point; absent coordinates read as zero.
    pub fn evaluate(&self, x0: &BasePoint) -> Result<Scalar, FieldMismatch> {
        check_tags(self.tag, x0.tag)?;
        let mut acc = Scalar::zero(self.tag);
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (x, e) in m.exps() {
                val = val.mul(&x0.coordinate(x).pow(e))?;
            }
            acc = acc.add(&val)?;
        }
        Ok(acc)
    }

    /// p(x + x0): shift the origin to the base point.
    pub fn translate(&self, x0: &BasePoint) -> Result<Polynomial, FieldMismatch> {
        check_tags(self.tag, x0.tag)?;
        let mut out = Polynomial::zero(self.tag);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for (x, e) in m.exps() {
                let shifted = Polynomial::var(self.tag, x)
                    .add(&Polynomial::constant(x0.coordinate(x)))?;
                term = term.mul(&shifted.pow(e))?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Re-tag a rational polynomial as a Gaussian-rational one.
    pub fn embed_complex(&self) -> Polynomial {
        Polynomial {
            tag: FieldTag::Complex,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.embed_complex()))
                .collect(),
        }
    }
}

/// A point of K^T with all but finitely many coordinates zero.
/// Zero coordinates are elided.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasePoint {
    tag: FieldTag,
    coords: BTreeMap<VarIndex, Scalar>,
}

impl BasePoint {
    pub fn origin(tag: FieldTag) -> BasePoint {
        BasePoint {
            tag,
            coords: BTreeMap::new(),
        }
    }

    pub fn new(
        tag: FieldTag,
        coords: impl IntoIterator<Item = (VarIndex, Scalar)>,
    ) -> Result<BasePoint, FieldMismatch> {
        let mut map = BTreeMap::new();
        for (x, c) in coords {
            check_tags(tag, c.tag())?;
            if !c.is_zero() {
                map.insert(x, c);
            }
        }
        Ok(BasePoint { tag, coords: map })
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn coordinate(&self, x: VarIndex) -> Scalar {
        self.coords
            .get(&x)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.tag))
    }

    pub fn coords(&self) -> impl Iterator<Item = (VarIndex, &Scalar)> {
        self.coords.iter().map(|(x, c)| (*x, c))
    }

    pub fn support(&self) -> BTreeSet<VarIndex> {
        self.coords.keys().copied().collect()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn embed_complex(&self) -> BasePoint {
        BasePoint {
            tag: FieldTag::Complex,
            coords: self
                .coords
                .iter()
                .map(|(x, c)| (*x, c.embed_complex()))
                .collect(),
        }
    }
}
