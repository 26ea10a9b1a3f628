//! Exact field abstraction for the numeric side of the pipeline.
//!
//! The collineation system is assembled and solved over an exact field. For
//! rational parameter samples that field is `Rational`; the theorem case
//! constrained to `n = sqrt(2) m` runs over the quadratic extension
//! `Q(sqrt 2)` instead, keeping the whole audit tolerance-free.

use std::fmt;

use crate::scalar::Rational;

pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    /// `sqrt 2` when the field contains it; `None` over the rationals.
    fn sqrt2_element() -> Option<Self> {
        None
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Option<Self> {
        Rational::one().div(self).ok()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

/// Element `a + b*sqrt(2)` of `Q(sqrt 2)` with exact rational parts.
///
/// Since `sqrt 2` is irrational, `a + b*sqrt2 = 0` iff `a = b = 0`, and the
/// conjugate norm `a^2 - 2 b^2` vanishes only at zero, so inversion is total
/// on nonzero elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sqrt2 {
    pub a: Rational,
    pub b: Rational,
}

impl Sqrt2 {
    pub fn new(a: Rational, b: Rational) -> Sqrt2 {
        Sqrt2 { a, b }
    }

    pub fn sqrt2() -> Sqrt2 {
        Sqrt2 {
            a: Rational::zero(),
            b: Rational::one(),
        }
    }
}

impl fmt::Display for Sqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let bs = if self.b.is_one() {
            "sqrt2".to_string()
        } else if (-self.b.clone()).is_one() {
            "-sqrt2".to_string()
        } else {
            format!("{}*sqrt2", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{}", bs)
        } else if self.b.is_negative() {
            write!(f, "{} - {}", self.a, bs.trim_start_matches('-'))
        } else {
            write!(f, "{} + {}", self.a, bs)
        }
    }
}

impl Field for Sqrt2 {
    fn sqrt2_element() -> Option<Self> {
        Some(Sqrt2::sqrt2())
    }
    fn zero() -> Self {
        Sqrt2::new(Rational::zero(), Rational::zero())
    }
    fn one() -> Self {
        Sqrt2::new(Rational::one(), Rational::zero())
    }
    fn add(&self, other: &Self) -> Self {
        Sqrt2::new(&self.a + &other.a, &self.b + &other.b)
    }
    fn sub(&self, other: &Self) -> Self {
        Sqrt2::new(&self.a - &other.a, &self.b - &other.b)
    }
    fn mul(&self, other: &Self) -> Self {
        // (a + b r)(c + d r) = ac + 2bd + (ad + bc) r,  r^2 = 2
        let two = Rational::from_int(2);
        Sqrt2::new(
            &(&self.a * &other.a) + &(&two * &(&self.b * &other.b)),
            &(&self.a * &other.b) + &(&self.b * &other.a),
        )
    }
    fn neg(&self) -> Self {
        Sqrt2::new(-self.a.clone(), -self.b.clone())
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let two = Rational::from_int(2);
        let norm = &(&self.a * &self.a) - &(&two * &(&self.b * &self.b));
        let ninv = Rational::one().div(&norm).expect("nonzero norm");
        Some(Sqrt2::new(&self.a * &ninv, &(-self.b.clone()) * &ninv))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        Sqrt2::new(r.clone(), Rational::zero())
    }
}
