//! Surface syntax for polynomials and parametric generator templates.
//!
//! Grammar:
//!   expr     := term (('+'|'-') term)*
//!   term     := factor ('*' factor)*
//!   factor   := atom ['^' nat]
//!   atom     := rational | 'i' | var | '-' factor | '(' expr ')'
//!   var      := 'x_' (nat | '{' affine '}')
//!   affine   := nat | [nat ['*']] param [('+'|'-') nat]
//!   rational := nat ['/' nat]
//!
//! Subscripts inside braces may mention the template parameter in affine
//! form a*k + b with a >= 0 and b >= 1, so instantiation at any k >= 0
//! yields a valid variable index. Whitespace is insignificant; '*' is
//! required for multiplication outside subscripts.

use crate::poly::{BasePoint, Monomial, Polynomial, VarIndex};
use crate::scalar::{FieldTag, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("subscript out of range at {line}:{col}: variable indices start at 1")]
    SubscriptOutOfRange { line: usize, col: usize },
    #[error("field error at {line}:{col}: imaginary unit requires the complex field")]
    FieldError { line: usize, col: usize },
    #[error("non-affine subscript at {line}:{col}")]
    NonAffineSubscript { line: usize, col: usize },
    #[error("unbound parameter '{name}' at {line}:{col}")]
    UnboundParameter {
        line: usize,
        col: usize,
        name: String,
    },
}

/// Affine subscript a*k + b. Plain literals have a = 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Subscript {
    Literal(u32),
    Affine { a: u32, param: String, b: u32 },
}

impl Subscript {
    pub fn instantiate(&self, k: u64) -> Option<VarIndex> {
        match self {
            Subscript::Literal(n) => VarIndex::new(*n),
            Subscript::Affine { a, b, .. } => {
                let value = (*a as u64).checked_mul(k)?.checked_add(*b as u64)?;
                VarIndex::new(u32::try_from(value).ok()?)
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Rational(BigRational),
    ImaginaryUnit,
    Var(Subscript),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn for_each_subscript<'a>(&'a self, f: &mut impl FnMut(&'a Subscript)) {
        match self {
            Expr::Var(s) => f(s),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.for_each_subscript(f);
                b.for_each_subscript(f);
            }
            Expr::Neg(a) => a.for_each_subscript(f),
            Expr::Pow(a, _) => a.for_each_subscript(f),
            Expr::Rational(_) | Expr::ImaginaryUnit => {}
        }
    }

    /// Fold to an exact polynomial, substituting the parameter when given.
    fn to_polynomial(&self, tag: FieldTag, k: Option<u64>) -> Result<Polynomial, ParseError> {
        let oops = || ParseError::Syntax {
            line: 0,
            col: 0,
            message: "subscript overflow during instantiation".to_string(),
        };
        match self {
            Expr::Rational(r) => Ok(Polynomial::constant(Scalar::from_rational(tag, r.clone()))),
            Expr::ImaginaryUnit => Ok(Polynomial::constant(Scalar::i())),
            Expr::Var(sub) => {
                let x = match (sub, k) {
                    (Subscript::Literal(_), _) => sub.instantiate(0),
                    (Subscript::Affine { .. }, Some(k)) => sub.instantiate(k),
                    (Subscript::Affine { .. }, None) => {
                        unreachable!("parameters rejected before folding")
                    }
                };
                Ok(Polynomial::var(tag, x.ok_or_else(oops)?))
            }
            Expr::Add(a, b) => Ok(a
                .to_polynomial(tag, k)?
                .add(&b.to_polynomial(tag, k)?)
                .expect("same tag")),
            Expr::Sub(a, b) => Ok(a
                .to_polynomial(tag, k)?
                .sub(&b.to_polynomial(tag, k)?)
                .expect("same tag")),
            Expr::Mul(a, b) => Ok(a
                .to_polynomial(tag, k)?
                .mul(&b.to_polynomial(tag, k)?)
                .expect("same tag")),
            Expr::Neg(a) => Ok(a.to_polynomial(tag, k)?.neg()),
            Expr::Pow(a, n) => Ok(a.to_polynomial(tag, k)?.pow(*n)),
        }
    }
}

/// A one-parameter family of polynomials; instantiation is defined for all
/// k >= 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorTemplate {
    param: String,
    body: Expr,
    source: String,
}

impl GeneratorTemplate {
    pub fn param(&self) -> &str {
        &self.param
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn instantiate(&self, k: u64, tag: FieldTag) -> Result<Polynomial, ParseError> {
        self.body.to_polynomial(tag, Some(k))
    }

    /// Variable indices the instantiation at k touches, straight from the
    /// affine images (no polynomial arithmetic). Cancellation can make the
    /// actual support smaller; this is the syntactic subscript image.
    pub fn subscript_image(&self, k: u64) -> Vec<VarIndex> {
        let mut out = Vec::new();
        self.body.for_each_subscript(&mut |s| {
            if let Some(x) = s.instantiate(k) {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        });
        out.sort();
        out
    }
}

impl fmt::Display for GeneratorTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)
    }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Nat(BigInt),
    Imag,
    Var(Subscript),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    allow_params: bool,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, allow_params: bool) -> Lexer<'a> {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            allow_params,
            _src: src,
        }
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn lex_nat(&mut self) -> Result<BigInt, ParseError> {
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        if digits.is_empty() {
            return Err(self.syntax("expected a number"));
        }
        Ok(digits.parse().expect("digits"))
    }

    fn lex_small_nat(&mut self) -> Result<u32, ParseError> {
        let (line, col) = (self.line, self.col);
        let n = self.lex_nat()?;
        u32::try_from(&n).map_err(|_| ParseError::Syntax {
            line,
            col,
            message: "number too large".to_string(),
        })
    }

    fn lex_subscript(&mut self) -> Result<Subscript, ParseError> {
        let (line, col) = (self.line, self.col);
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.lex_small_nat()?;
                if n < 1 {
                    return Err(ParseError::SubscriptOutOfRange { line, col });
                }
                Ok(Subscript::Literal(n))
            }
            Some('{') => {
                self.bump();
                let sub = self.lex_affine(line, col)?;
                self.skip_ws();
                if self.peek() != Some('}') {
                    return Err(self.syntax("expected '}' closing subscript"));
                }
                self.bump();
                Ok(sub)
            }
            _ => Err(self.syntax("expected subscript after 'x_'")),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn lex_ident(&mut self) -> String {
        let mut s = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            s.push(self.bump().unwrap());
        }
        s
    }

    /// affine := nat | [nat ['*']] param [('+'|'-') nat]
    fn lex_affine(&mut self, line: usize, col: usize) -> Result<Subscript, ParseError> {
        self.skip_ws();
        let mut coeff: Option<u32> = None;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = Some(self.lex_small_nat()?);
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
            }
        }
        let param = if matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            let name = self.lex_ident();
            Some(name)
        } else {
            None
        };
        self.skip_ws();
        match (coeff, param) {
            (Some(n), None) => {
                if n < 1 {
                    return Err(ParseError::SubscriptOutOfRange { line, col });
                }
                Ok(Subscript::Literal(n))
            }
            (coeff, Some(name)) => {
                if !self.allow_params {
                    return Err(ParseError::UnboundParameter {
                        line,
                        col,
                        name,
                    });
                }
                // reject k*k, k*m, kk and friends
                if matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '*') {
                    return Err(ParseError::NonAffineSubscript { line, col });
                }
                let a = coeff.unwrap_or(1);
                let mut b: i64 = 0;
                match self.peek() {
                    Some('+') => {
                        self.bump();
                        self.skip_ws();
                        b = self.lex_small_nat()? as i64;
                    }
                    Some('-') => {
                        self.bump();
                        self.skip_ws();
                        b = -(self.lex_small_nat()? as i64);
                    }
                    _ => {}
                }
                // instantiation at k = 0 must already be a valid index
                if a == 0 || b < 1 {
                    return Err(ParseError::SubscriptOutOfRange { line, col });
                }
                Ok(Subscript::Affine {
                    a,
                    param: name,
                    b: b as u32,
                })
            }
            (None, None) => Err(self.syntax("expected affine subscript")),
        }
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else { break };
            let tok = match c {
                '+' => {
                    self.bump();
                    Tok::Plus
                }
                '-' => {
                    self.bump();
                    Tok::Minus
                }
                '*' => {
                    self.bump();
                    Tok::Star
                }
                '/' => {
                    self.bump();
                    Tok::Slash
                }
                '^' => {
                    self.bump();
                    Tok::Caret
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                d if d.is_ascii_digit() => Tok::Nat(self.lex_nat()?),
                'x' if self.chars.get(self.pos + 1) == Some(&'_') => {
                    self.bump();
                    self.bump();
                    Tok::Var(self.lex_subscript()?)
                }
                'i' if !matches!(self.chars.get(self.pos + 1), Some(c2) if c2.is_ascii_alphanumeric()) =>
                {
                    self.bump();
                    Tok::Imag
                }
                other => {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        message: format!("unexpected character '{}'", other),
                    })
                }
            };
            out.push(Spanned { tok, line, col });
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn eof_error(&self) -> ParseError {
        let (line, col) = self
            .toks
            .last()
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1));
        ParseError::Syntax {
            line,
            col,
            message: "unexpected end of input".to_string(),
        }
    }

    fn unexpected(&self, s: &Spanned) -> ParseError {
        ParseError::Syntax {
            line: s.line,
            col: s.col,
            message: format!("unexpected token {:?}", s.tok),
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_term()?;
        while let Some(s) = self.peek() {
            match s.tok {
                Tok::Plus => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.parse_term()?));
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.parse_term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_factor()?;
        while matches!(self.peek(), Some(s) if s.tok == Tok::Star) {
            self.pos += 1;
            acc = Expr::Mul(Box::new(acc), Box::new(self.parse_factor()?));
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Expr, ParseError> {
        let atom = self.parse_atom()?;
        if matches!(self.peek(), Some(s) if s.tok == Tok::Caret) {
            self.pos += 1;
            let s = self.peek().cloned().ok_or_else(|| self.eof_error())?;
            match s.tok {
                Tok::Nat(ref n) => {
                    let e = u32::try_from(n).map_err(|_| ParseError::Syntax {
                        line: s.line,
                        col: s.col,
                        message: "exponent too large".to_string(),
                    })?;
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(atom), e))
                }
                _ => Err(self.unexpected(&s)),
            }
        } else {
            Ok(atom)
        }
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        let s = self.peek().cloned().ok_or_else(|| self.eof_error())?;
        match s.tok {
            Tok::Nat(ref n) => {
                self.pos += 1;
                let mut r = BigRational::from_integer(n.clone());
                if matches!(self.peek(), Some(t) if t.tok == Tok::Slash) {
                    self.pos += 1;
                    let d = self.peek().cloned().ok_or_else(|| self.eof_error())?;
                    match d.tok {
                        Tok::Nat(ref m) if !m.is_zero() => {
                            self.pos += 1;
                            r /= BigRational::from_integer(m.clone());
                        }
                        Tok::Nat(_) => {
                            return Err(ParseError::Syntax {
                                line: d.line,
                                col: d.col,
                                message: "zero denominator".to_string(),
                            })
                        }
                        _ => return Err(self.unexpected(&d)),
                    }
                }
                Ok(Expr::Rational(r))
            }
            Tok::Imag => {
                self.pos += 1;
                Ok(Expr::ImaginaryUnit)
            }
            Tok::Var(ref sub) => {
                self.pos += 1;
                Ok(Expr::Var(sub.clone()))
            }
            Tok::Minus => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.parse_factor()?)))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                let close = self.peek().cloned().ok_or_else(|| self.eof_error())?;
                if close.tok != Tok::RParen {
                    return Err(self.unexpected(&close));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected(&s)),
        }
    }
}

fn parse_expr_text(text: &str, allow_params: bool) -> Result<Expr, ParseError> {
    let toks = Lexer::new(text, allow_params).tokens()?;
    if toks.is_empty() {
        return Err(ParseError::Syntax {
            line: 1,
            col: 1,
            message: "empty expression".to_string(),
        });
    }
    let mut parser = Parser { toks, pos: 0 };
    let expr = parser.parse_expr()?;
    if let Some(s) = parser.peek() {
        return Err(parser.unexpected(s));
    }
    Ok(expr)
}

/// Parse a closed polynomial expression (no template parameters).
pub fn parse_poly(text: &str, tag: FieldTag) -> Result<Polynomial, ParseError> {
    let expr = parse_expr_text(text, false)?;
    if tag == FieldTag::Real {
        if let Some((line, col)) = find_imaginary(&expr) {
            return Err(ParseError::FieldError { line, col });
        }
    }
    expr.to_polynomial(tag, None)
}

fn find_imaginary(expr: &Expr) -> Option<(usize, usize)> {
    // positions are not tracked inside the AST; report the expression start
    match expr {
        Expr::ImaginaryUnit => Some((1, 1)),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            find_imaginary(a).or_else(|| find_imaginary(b))
        }
        Expr::Neg(a) | Expr::Pow(a, _) => find_imaginary(a),
        _ => None,
    }
}

/// Parse a one-parameter generator template.
pub fn parse_template(text: &str) -> Result<GeneratorTemplate, ParseError> {
    let expr = parse_expr_text(text, true)?;
    let mut params: Vec<String> = Vec::new();
    expr.for_each_subscript(&mut |s| {
        if let Subscript::Affine { param, .. } = s {
            if !params.contains(param) {
                params.push(param.clone());
            }
        }
    });
    match params.len() {
        0 => Err(ParseError::Syntax {
            line: 1,
            col: 1,
            message: "template has no free parameter".to_string(),
        }),
        1 => Ok(GeneratorTemplate {
            param: params.pop().unwrap(),
            body: expr,
            source: text.trim().to_string(),
        }),
        _ => Err(ParseError::Syntax {
            line: 1,
            col: 1,
            message: format!("template mentions several parameters: {:?}", params),
        }),
    }
}

/// Instantiate a template at k >= 0.
pub fn instantiate(
    t: &GeneratorTemplate,
    k: u64,
    tag: FieldTag,
) -> Result<Polynomial, ParseError> {
    t.instantiate(k, tag)
}

// ---------------------------------------------------------------------------
// Canonical printing
// ---------------------------------------------------------------------------

fn monomial_text(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (x, e) in m.exps() {
        if e == 1 {
            parts.push(format!("x_{}", x.get()));
        } else {
            parts.push(format!("x_{}^{}", x.get(), e));
        }
    }
    parts.join("*")
}

/// Deterministic canonical text form: terms in descending grevlex order,
/// parse_poly(print_canonical(p)) == p bit-exactly.
pub fn print_canonical(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (m, c) in p.terms_desc() {
        let mono = monomial_text(m);
        // mixed complex coefficients keep their own sign inside parens;
        // everything else splits the sign into the joiner
        if c.is_mixed() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            if mono.is_empty() {
                out.push_str(&format!("({})", c.canonical_text()));
            } else {
                out.push_str(&format!("({})*{}", c.canonical_text(), mono));
            }
            continue;
        }
        let negative = if c.im().is_zero() {
            c.re().is_negative()
        } else {
            c.im().is_negative()
        };
        let mag = if negative { c.neg() } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coeff_text = mag.canonical_text();
        if mono.is_empty() {
            out.push_str(&coeff_text);
        } else if mag.is_one() {
            out.push_str(&mono);
        } else if coeff_text == "i" {
            out.push_str(&format!("i*{}", mono));
        } else {
            out.push_str(&format!("{}*{}", coeff_text, mono));
        }
    }
    out
}

/// Canonical text of a scalar as a constant polynomial; round-trips through
/// `parse_scalar`.
pub fn print_scalar(c: &Scalar) -> String {
    print_canonical(&Polynomial::constant(c.clone()))
}

pub fn parse_scalar(text: &str, tag: FieldTag) -> Result<Scalar, ParseError> {
    let p = parse_poly(text, tag)?;
    if !p.support().is_empty() {
        return Err(ParseError::Syntax {
            line: 1,
            col: 1,
            message: "expected a constant".to_string(),
        });
    }
    Ok(p.coefficient(&Monomial::one()))
}

/// Canonical text of a base point: "{2: 5, 3: -1/2}"; origin prints "{}".
pub fn print_base_point(x0: &BasePoint) -> String {
    let mut parts = Vec::new();
    for (x, c) in x0.coords() {
        parts.push(format!("{}: {}", x.get(), print_scalar(c)));
    }
    format!("{{{}}}", parts.join(", "))
}

/// Parse a base point from its canonical text form, e.g. "{2: 5, 3: -1/2}".
pub fn parse_base_point(text: &str, tag: FieldTag) -> Result<BasePoint, ParseError> {
    let syntax = |message: String| ParseError::Syntax {
        line: 1,
        col: 1,
        message,
    };
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| syntax("base point must be enclosed in braces".to_string()))?
        .trim();
    let mut coords = Vec::new();
    if !inner.is_empty() {
        for entry in inner.split(',') {
            let (idx, value) = entry
                .split_once(':')
                .ok_or_else(|| syntax(format!("expected 'index: value', got {:?}", entry)))?;
            let idx: u32 = idx
                .trim()
                .parse()
                .map_err(|_| syntax(format!("bad variable index {:?}", idx.trim())))?;
            let x = VarIndex::new(idx)
                .ok_or(ParseError::SubscriptOutOfRange { line: 1, col: 1 })?;
            coords.push((x, parse_scalar(value, tag)?));
        }
    }
    BasePoint::new(tag, coords).map_err(|_| ParseError::FieldError { line: 1, col: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::v;
    use crate::scalar::FieldTag::{Complex, Real};

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Real, v(i))
    }

    #[test]
    fn family_generator_parses() {
        let p = parse_poly("x_1^2 + (x_2 - x_3)^2", Real).unwrap();
        let s: Vec<u32> = p.support().into_iter().map(VarIndex::get).collect();
        assert_eq!(s, vec![1, 2, 3]);
        assert_eq!(p.total_degree(), 2);
    }

    #[test]
    fn zero_parses() {
        assert!(parse_poly("0", Real).unwrap().is_zero());
    }

    #[test]
    fn gaussian_product() {
        let p = parse_poly("(x_1 + i*x_2)*(x_1 - i*x_2)", Complex).unwrap();
        let expect = parse_poly("x_1^2 + x_2^2", Complex).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn imaginary_under_real_rejected() {
        assert!(matches!(
            parse_poly("i*x_1", Real),
            Err(ParseError::FieldError { .. })
        ));
    }

    #[test]
    fn subscript_zero_rejected() {
        assert!(matches!(
            parse_poly("x_0", Real),
            Err(ParseError::SubscriptOutOfRange { .. })
        ));
    }

    #[test]
    fn template_round() {
        let t = parse_template("x_{2k+1}^2 + (x_{2k+2} - x_{2k+3})^2").unwrap();
        assert_eq!(t.param(), "k");
        let g0 = t.instantiate(0, Real).unwrap();
        assert_eq!(g0, parse_poly("x_1^2 + (x_2 - x_3)^2", Real).unwrap());
        let g1 = t.instantiate(1, Real).unwrap();
        assert_eq!(g1, parse_poly("x_3^2 + (x_4 - x_5)^2", Real).unwrap());
    }

    #[test]
    fn simple_template() {
        let t = parse_template("x_{k+1} - x_{k+2}").unwrap();
        let p = t.instantiate(41, Real).unwrap();
        assert_eq!(p, x(42).sub(&x(43)).unwrap());
    }

    #[test]
    fn coordinate_template_at_k41() {
        let t = parse_template("x_{k+1}").unwrap();
        assert_eq!(t.instantiate(41, Real).unwrap(), x(42));
    }

    #[test]
    fn non_affine_rejected() {
        assert!(matches!(
            parse_template("x_{k*k}"),
            Err(ParseError::NonAffineSubscript { .. })
        ));
    }

    #[test]
    fn unbound_parameter_in_poly() {
        assert!(matches!(
            parse_poly("x_{k+1}", Real),
            Err(ParseError::UnboundParameter { .. })
        ));
    }

    #[test]
    fn bare_parameter_subscript_rejected() {
        // x_k at k = 0 would be x_0
        assert!(matches!(
            parse_template("x_{k}"),
            Err(ParseError::SubscriptOutOfRange { .. })
        ));
    }

    #[test]
    fn print_forms() {
        assert_eq!(print_canonical(&Polynomial::zero(Real)), "0");
        let a = x(2).add(&x(1)).unwrap();
        let b = x(1).add(&x(2)).unwrap();
        assert_eq!(print_canonical(&a), print_canonical(&b));
        assert_eq!(print_canonical(&a), "x_1 + x_2");
        let sq = parse_poly("x_1*x_1", Real).unwrap();
        assert_eq!(print_canonical(&sq), "x_1^2");
    }

    #[test]
    fn print_parse_identity_examples() {
        for text in [
            "x_1^2 + (x_2 - x_3)^2",
            "3/2*x_1*x_5^2 - x_2 + 7",
            "-x_1 - 1/2",
        ] {
            let p = parse_poly(text, Real).unwrap();
            let printed = print_canonical(&p);
            assert_eq!(parse_poly(&printed, Real).unwrap(), p);
        }
        for text in ["(1 + 2*i)*x_1 - i", "i*x_1^2 + (2 - i)", "x_1 - i*x_2"] {
            let p = parse_poly(text, Complex).unwrap();
            let printed = print_canonical(&p);
            assert_eq!(parse_poly(&printed, Complex).unwrap(), p, "text: {}", printed);
        }
    }

    #[test]
    fn subscript_image_matches_support() {
        let t = parse_template("x_{2k+1}^2 + (x_{2k+2} - x_{2k+3})^2").unwrap();
        for k in 0..4 {
            let img: Vec<u32> = t.subscript_image(k).into_iter().map(VarIndex::get).collect();
            let sup: Vec<u32> = t
                .instantiate(k, Real)
                .unwrap()
                .support()
                .into_iter()
                .map(VarIndex::get)
                .collect();
            assert_eq!(img, sup);
        }
    }
}
