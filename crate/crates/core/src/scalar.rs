//! Exact scalars over Q and the Gaussian rationals Q(i).
//!
//! A `Scalar` carries a field tag so mixed-field arithmetic is caught at
//! runtime rather than silently coerced. The real part and imaginary part
//! are reduced `BigRational`s; a `Real` scalar always has zero imaginary
//! part.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Real,
    Complex,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Real => write!(f, "real"),
            FieldTag::Complex => write!(f, "complex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("field mismatch: {left} vs {right}")]
pub struct FieldMismatch {
    pub left: FieldTag,
    pub right: FieldTag,
}

/// An element of Q or Q(i), exact.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    tag: FieldTag,
    re: BigRational,
    im: BigRational,
}

pub(crate) fn check_tags(left: FieldTag, right: FieldTag) -> Result<(), FieldMismatch> {
    if left == right {
        Ok(())
    } else {
        Err(FieldMismatch { left, right })
    }
}

impl Scalar {
    pub fn zero(tag: FieldTag) -> Self {
        Scalar {
            tag,
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one(tag: FieldTag) -> Self {
        Scalar {
            tag,
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit; only meaningful under the complex tag.
    pub fn i() -> Self {
        Scalar {
            tag: FieldTag::Complex,
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_rational(tag: FieldTag, re: BigRational) -> Self {
        Scalar {
            tag,
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_integer(tag: FieldTag, n: i64) -> Self {
        Self::from_rational(tag, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn complex(re: BigRational, im: BigRational) -> Self {
        Scalar {
            tag: FieldTag::Complex,
            re,
            im,
        }
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Re-tag a real scalar as an element of Q(i).
    pub fn embed_complex(&self) -> Scalar {
        Scalar {
            tag: FieldTag::Complex,
            re: self.re.clone(),
            im: self.im.clone(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, FieldMismatch> {
        check_tags(self.tag, other.tag)?;
        Ok(Scalar {
            tag: self.tag,
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, FieldMismatch> {
        check_tags(self.tag, other.tag)?;
        Ok(Scalar {
            tag: self.tag,
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, FieldMismatch> {
        check_tags(self.tag, other.tag)?;
        Ok(Scalar {
            tag: self.tag,
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        })
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            tag: self.tag,
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Exact inverse; (a+bi)^-1 = (a-bi)/(a^2+b^2).
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Scalar {
            tag: self.tag,
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Option<Scalar>, FieldMismatch> {
        check_tags(self.tag, other.tag)?;
        match other.inv() {
            None => Ok(None),
            Some(inv) => Ok(Some(self.mul(&inv)?)),
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one(self.tag);
        for _ in 0..n {
            acc = acc.mul(self).expect("same tag");
        }
        acc
    }

    /// Canonical text. Pure real: "3/2", "-2". Pure imaginary: "i", "-i",
    /// "3/2*i". Mixed: "1 + 2*i" (no outer parens; callers add them when the
    /// scalar is attached to a monomial).
    pub fn canonical_text(&self) -> String {
        fn rat(r: &BigRational) -> String {
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        fn imag(r: &BigRational) -> String {
            if r.is_one() {
                "i".to_string()
            } else if (-r).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", rat(r))
            }
        }
        if self.im.is_zero() {
            rat(&self.re)
        } else if self.re.is_zero() {
            imag(&self.im)
        } else if self.im.is_negative() {
            format!("{} - {}", rat(&self.re), imag(&-self.im.clone()))
        } else {
            format!("{} + {}", rat(&self.re), imag(&self.im))
        }
    }

    /// True when the scalar needs parentheses before "*monomial".
    pub fn is_mixed(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn reduced_fractions() {
        let s = Scalar::from_rational(FieldTag::Real, q(2, 4));
        assert_eq!(s.re(), &q(1, 2));
    }

    #[test]
    fn complex_inverse() {
        let z = Scalar::complex(q(1, 1), q(2, 1));
        let inv = z.inv().unwrap();
        assert!(z.mul(&inv).unwrap().is_one());
    }

    #[test]
    fn mismatch_detected() {
        let a = Scalar::one(FieldTag::Real);
        let b = Scalar::one(FieldTag::Complex);
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn zero_imaginary_equals_embedded_real() {
        let a = Scalar::from_integer(FieldTag::Real, 5).embed_complex();
        let b = Scalar::complex(q(5, 1), q(0, 1));
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_text_forms() {
        assert_eq!(Scalar::from_integer(FieldTag::Real, -3).canonical_text(), "-3");
        assert_eq!(Scalar::i().canonical_text(), "i");
        assert_eq!(Scalar::complex(q(1, 2), q(-1, 1)).canonical_text(), "1/2 - i");
    }
}
