//! Rational parametric curves through a base point and exact composition
//! of polynomials with them. A curve that lies in the zero set of every
//! generator of an ideal while a candidate germ is nonzero along it is a
//! replayable refutation of local real vanishing.

use crate::poly::{BasePoint, Polynomial, VarIndex};
use crate::scalar::{FieldMismatch, FieldTag, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Univariate polynomial in the curve parameter s, over Q.
/// Coefficients ascending by degree; trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> UniPoly {
        UniPoly::from_coeffs(vec![c])
    }

    /// The monomial s.
    pub fn s() -> UniPoly {
        UniPoly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> UniPoly {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn at_zero(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|k| k * c).collect())
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        let mut acc = UniPoly::constant(BigRational::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Canonical text in the parameter s, matching the polynomial printer's
    /// conventions: descending degree, "s^2 - 3*s + 1".
    pub fn canonical_text(&self) -> String {
        fn rat(r: &BigRational) -> String {
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = match deg {
                0 => String::new(),
                1 => "s".to_string(),
                d => format!("s^{}", d),
            };
            if mono.is_empty() {
                out.push_str(&rat(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", rat(&mag), mono));
            }
        }
        out
    }

    /// Parse the canonical text form; accepts the same affine-and-power
    /// shapes the printer emits plus parenthesised sums.
    pub fn parse(text: &str) -> Result<UniPoly, String> {
        UniParser {
            chars: text.chars().collect(),
            pos: 0,
        }
        .parse_expr_entry()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_text())
    }
}

struct UniParser {
    chars: Vec<char>,
    pos: usize,
}

impl UniParser {
    fn parse_expr_entry(mut self) -> Result<UniPoly, String> {
        self.skip_ws();
        let p = self.parse_expr()?;
        self.skip_ws();
        if self.pos != self.chars.len() {
            return Err(format!("trailing input at offset {}", self.pos));
        }
        Ok(p)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse_expr(&mut self) -> Result<UniPoly, String> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.parse_term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<UniPoly, String> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.parse_factor()?);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<UniPoly, String> {
        let base = self.parse_atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.parse_nat()?;
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn parse_atom(&mut self) -> Result<UniPoly, String> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.parse_factor()?.neg())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                if self.peek() != Some(')') {
                    return Err("expected ')'".to_string());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('s') => {
                self.pos += 1;
                Ok(UniPoly::s())
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.parse_nat()?;
                let mut r = BigRational::from_integer(BigInt::from(numer));
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let denom = self.parse_nat()?;
                    if denom == 0 {
                        return Err("zero denominator".to_string());
                    }
                    r /= BigRational::from_integer(BigInt::from(denom));
                }
                Ok(UniPoly::constant(r))
            }
            other => Err(format!("unexpected input {:?}", other)),
        }
    }

    fn parse_nat(&mut self) -> Result<u32, String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err("expected number".to_string());
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| "number too large".to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error(transparent)]
    FieldMismatch(#[from] FieldMismatch),
    #[error("curve component for {var} does not pass through the base point")]
    NotThroughBase { var: VarIndex },
    #[error("curves are defined over the real field")]
    ComplexCurve,
}

/// An exact parametric curve s -> z(s) in K^T with z(0) = x0.
/// Unlisted components are the constant base-point coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalCurve {
    base: BasePoint,
    components: BTreeMap<VarIndex, UniPoly>,
}

impl RationalCurve {
    pub fn new(
        base: BasePoint,
        components: impl IntoIterator<Item = (VarIndex, UniPoly)>,
    ) -> Result<RationalCurve, CurveError> {
        if base.tag() != FieldTag::Real {
            return Err(CurveError::ComplexCurve);
        }
        let mut map = BTreeMap::new();
        for (x, p) in components {
            let c0 = base.coordinate(x);
            if &p.at_zero() != c0.re() {
                return Err(CurveError::NotThroughBase { var: x });
            }
            map.insert(x, p);
        }
        Ok(RationalCurve {
            base,
            components: map,
        })
    }

    pub fn base(&self) -> &BasePoint {
        &self.base
    }

    pub fn components(&self) -> impl Iterator<Item = (VarIndex, &UniPoly)> {
        self.components.iter().map(|(x, p)| (*x, p))
    }

    pub fn component(&self, x: VarIndex) -> UniPoly {
        self.components
            .get(&x)
            .cloned()
            .unwrap_or_else(|| UniPoly::constant(self.base.coordinate(x).re().clone()))
    }

    /// Exact composition p(z(s)); identically zero iff the curve lies in Z(p).
    pub fn compose(&self, p: &Polynomial) -> Result<UniPoly, CurveError> {
        if p.tag() != FieldTag::Real {
            return Err(CurveError::FieldMismatch(FieldMismatch {
                left: p.tag(),
                right: FieldTag::Real,
            }));
        }
        let mut acc = UniPoly::zero();
        for (m, c) in p.terms() {
            let mut term = UniPoly::constant(c.re().clone());
            for (x, e) in m.exps() {
                term = term.mul(&self.component(x).pow(e));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

/// Standalone composition entry point mirroring the polynomial layer's
/// vocabulary.
pub fn compose_curve(p: &Polynomial, z: &RationalCurve) -> Result<UniPoly, CurveError> {
    z.compose(p)
}

/// A scalar value as a constant curve component helper.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    /// Real part as a rational, for curve verification paths.
    pub fn as_rational(&self) -> &BigRational {
        self.re()
    }
}
