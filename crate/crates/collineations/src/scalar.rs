//! Exact coefficient arithmetic: arbitrary-precision rationals and multivariate
//! polynomials over the fixed parameter set `{m, n, u, v}`.
//!
//! Every value is kept in canonical form so that structural equality is
//! mathematical equality and every downstream identity check is a strict
//! comparison, never a tolerance. The text rendering produced by `Display`
//! (graded-lex term order, `-m^2*n + 2*v^3` style) is the canonical form used
//! in JSON reports and fixture files and round-trips through the parser
//! bit-exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable {0} missing from assignment")]
    MissingVariable(Var),
    #[error("parse error in scalar `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// The closed variable set of the seven families. No other parameter ever
/// appears, which keeps the canonical term order trivial and total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum Var {
    #[serde(rename = "m")]
    M,
    #[serde(rename = "n")]
    N,
    #[serde(rename = "u")]
    U,
    #[serde(rename = "v")]
    V,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::M, Var::N, Var::U, Var::V];

    pub fn name(self) -> &'static str {
        match self {
            Var::M => "m",
            Var::N => "n",
            Var::U => "u",
            Var::V => "v",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "m" => Some(Var::M),
            "n" => Some(Var::N),
            "u" => Some(Var::U),
            "v" => Some(Var::V),
            _ => None,
        }
    }

    fn index(self) -> usize {
        match self {
            Var::M => 0,
            Var::N => 1,
            Var::U => 2,
            Var::V => 3,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Arbitrary-precision rational in lowest terms with positive denominator.
///
/// ```
/// use collineations::scalar::Rational;
/// let a: Rational = "1/2".parse().unwrap();
/// let b: Rational = "1/3".parse().unwrap();
/// assert_eq!((a + b).to_string(), "5/6");
/// ```
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` reduced to lowest terms. Errors when `den == 0`.
    pub fn new(num: i64, den: i64) -> Result<Rational, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Exact quotient; `b = 0` is an explicit error, never a panic.
    pub fn div(&self, b: &Rational) -> Result<Rational, ScalarError> {
        if b.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &b.0))
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Rational, ScalarError> {
        let bad = |reason: &str| ScalarError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s, None),
        };
        let num: BigInt = num_s.parse().map_err(|_| bad("bad integer"))?;
        let den: BigInt = match den_s {
            Some(d) => d.parse().map_err(|_| bad("bad denominator"))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

/// Exponent vector over `(m, n, u, v)`. Ordered graded-lexicographically:
/// total degree first, then lexicographic with `m` most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u16; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Monomial {
        let mut e = [0u16; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0u16; 4];
        for i in 0..4 {
            e[i] = self.0[i] + other.0[i];
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.0).cmp(&(other.degree(), other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(Var::ALL[i].name())?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial over the rationals in `m, n, u, v`.
///
/// Invariant: no stored term has a zero coefficient, and the term map is keyed
/// by graded-lex order, so a given polynomial has exactly one representation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(r: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Monomial::ONE, r);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), Rational::one());
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial has no variable part.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::ONE) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Terms in descending graded-lex order (the rendering order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut present = [false; 4];
        for mono in self.terms.keys() {
            for i in 0..4 {
                if mono.0[i] > 0 {
                    present[i] = true;
                }
            }
        }
        Var::ALL
            .iter()
            .copied()
            .filter(|v| present[v.index()])
            .collect()
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&mono) {
            Some(existing) => {
                let sum = existing + coeff;
                if !sum.is_zero() {
                    self.terms.insert(mono, sum);
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (mono, coeff) in &other.terms {
            out.add_term(*mono, coeff.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        self.mul(&Poly::constant(r.clone()))
    }

    /// Exact substitution. Every variable occurring in `self` must be covered
    /// by the assignment.
    pub fn eval(&self, assignment: &BTreeMap<Var, Rational>) -> Result<Rational, ScalarError> {
        let mut acc = Rational::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let var = Var::ALL[i];
                let val = assignment
                    .get(&var)
                    .ok_or(ScalarError::MissingVariable(var))?;
                for _ in 0..e {
                    term = &term * val;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Substitution into an arbitrary exact field (used for the quadratic
    /// extension sampling of the `n = sqrt(2) m` theorem case).
    pub fn eval_in<F: crate::field::Field>(
        &self,
        assignment: &BTreeMap<Var, F>,
    ) -> Result<F, ScalarError> {
        let mut acc = F::zero();
        for (mono, coeff) in &self.terms {
            let mut term = F::from_rational(coeff);
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let var = Var::ALL[i];
                let val = assignment
                    .get(&var)
                    .ok_or(ScalarError::MissingVariable(var))?;
                for _ in 0..e {
                    term = term.mul(val);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (mono, coeff)) in self.terms_desc().enumerate() {
            let neg = coeff.is_negative();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let a = coeff.abs();
            if *mono == Monomial::ONE {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", a, mono)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Poly, ScalarError> {
        parse_poly(s)
    }
}

/// Tagged union of the two coefficient domains. A `Rational` embeds as a
/// constant `Poly` when mixed; constant polynomials demote back to `Rational`,
/// so canonical form is unique across the union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rat(Rational),
    Poly(Poly),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(Rational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rat(Rational::from_int(n))
    }

    pub fn var(v: Var) -> Scalar {
        Scalar::Poly(Poly::var(v))
    }

    pub fn rational(r: Rational) -> Scalar {
        Scalar::Rat(r)
    }

    fn canonical(p: Poly) -> Scalar {
        match p.as_constant() {
            Some(c) => Scalar::Rat(c),
            None => Scalar::Poly(p),
        }
    }

    pub fn to_poly(&self) -> Poly {
        match self {
            Scalar::Rat(r) => Poly::constant(r.clone()),
            Scalar::Poly(p) => p.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Poly(p) => p.is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Poly(p) => p.as_constant(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => Scalar::canonical(self.to_poly().add(&other.to_poly())),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => Scalar::canonical(self.to_poly().sub(&other.to_poly())),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => Scalar::canonical(self.to_poly().mul(&other.to_poly())),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r.clone()),
            Scalar::Poly(p) => Scalar::Poly(p.neg()),
        }
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        self.mul(&Scalar::Rat(r.clone()))
    }

    pub fn eval(&self, assignment: &BTreeMap<Var, Rational>) -> Result<Rational, ScalarError> {
        match self {
            Scalar::Rat(r) => Ok(r.clone()),
            Scalar::Poly(p) => p.eval(assignment),
        }
    }

    pub fn eval_in<F: crate::field::Field>(
        &self,
        assignment: &BTreeMap<Var, F>,
    ) -> Result<F, ScalarError> {
        match self {
            Scalar::Rat(r) => Ok(F::from_rational(r)),
            Scalar::Poly(p) => p.eval_in(assignment),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", r),
            Scalar::Poly(p) => write!(f, "{}", p),
        }
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Scalar, ScalarError> {
        Ok(Scalar::canonical(parse_poly(s)?))
    }
}

/// Parse the flat sum-of-terms grammar produced by `Display`:
/// terms separated by top-level `+`/`-`, each a `*`-joined list of factors,
/// a factor being a rational literal or `var[^exp]`.
fn parse_poly(input: &str) -> Result<Poly, ScalarError> {
    let bad = |reason: String| ScalarError::Parse {
        input: input.to_string(),
        reason,
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(bad("empty input".into()));
    }
    // Split into signed terms.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut sign_neg = false;
    let mut chars = s.chars().peekable();
    // leading sign
    if let Some(&c) = chars.peek() {
        if c == '-' {
            sign_neg = true;
            chars.next();
        } else if c == '+' {
            chars.next();
        }
    }
    for c in chars {
        match c {
            '+' | '-' => {
                if current.trim().is_empty() {
                    return Err(bad("dangling sign".into()));
                }
                terms.push((sign_neg, std::mem::take(&mut current)));
                sign_neg = c == '-';
            }
            _ => current.push(c),
        }
    }
    if current.trim().is_empty() {
        return Err(bad("dangling sign".into()));
    }
    terms.push((sign_neg, current));

    let mut poly = Poly::zero();
    for (neg, term) in terms {
        let mut coeff = Rational::one();
        let mut mono = Monomial::ONE;
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(bad(format!("empty factor in term `{}`", term.trim())));
            }
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                let r: Rational = factor
                    .parse()
                    .map_err(|e: ScalarError| bad(format!("bad coefficient `{}`: {}", factor, e)))?;
                coeff = &coeff * &r;
            } else {
                let (name, exp_s) = match factor.split_once('^') {
                    Some((a, b)) => (a.trim(), Some(b.trim())),
                    None => (factor, None),
                };
                let var = Var::from_name(name)
                    .ok_or_else(|| bad(format!("unknown variable `{}`", name)))?;
                let exp: u16 = match exp_s {
                    Some(e) => e
                        .parse()
                        .map_err(|_| bad(format!("bad exponent `{}`", e)))?,
                    None => 1,
                };
                mono = mono.mul(&{
                    let mut m = Monomial::ONE;
                    m.0[var.index()] = exp;
                    m
                });
            }
        }
        if neg {
            coeff = -coeff;
        }
        poly.add_term(mono, coeff);
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn sc(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!((rat("1/2") + rat("1/3")).to_string(), "5/6");
        assert_eq!(rat("5/6").div(&rat("1/3")).unwrap().to_string(), "5/2");
        assert_eq!(rat("1").div(&rat("2")).unwrap().to_string(), "1/2");
        assert_eq!(rat("0").div(&rat("7/3")).unwrap().to_string(), "0");
        assert_eq!(
            rat("1").div(&Rational::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn rational_normalizes() {
        assert_eq!(rat("2/4").to_string(), "1/2");
        assert_eq!(rat("3/-6").to_string(), "-1/2");
        assert_eq!(rat("-0/5").to_string(), "0");
    }

    #[test]
    fn ring_identities() {
        let m = Scalar::var(Var::M);
        let n = Scalar::var(Var::N);
        let prod = m.add(&n).mul(&m.sub(&n));
        assert_eq!(prod.to_string(), "m^2 - n^2");
        // mn * n = mn^2, and -m^2 * n as in the G1 Lie derivative component
        assert_eq!(m.mul(&n).mul(&n).to_string(), "m*n^2");
        assert_eq!(m.mul(&m).neg().mul(&n).to_string(), "-m^2*n");
    }

    #[test]
    fn poly_eval() {
        let mut a = BTreeMap::new();
        a.insert(Var::M, rat("1"));
        a.insert(Var::N, rat("1"));
        a.insert(Var::U, rat("1"));
        let p = sc("-m*n*u");
        assert_eq!(p.eval(&a).unwrap().to_string(), "-1");

        let mut b = BTreeMap::new();
        b.insert(Var::M, rat("2"));
        b.insert(Var::N, rat("2"));
        assert!(sc("m^2 - n^2").eval(&b).unwrap().is_zero());

        let mut c = BTreeMap::new();
        c.insert(Var::N, rat("3"));
        c.insert(Var::U, rat("4"));
        assert_eq!(sc("n^2 + u^2").eval(&c).unwrap().to_string(), "25");

        assert_eq!(
            sc("m + v").eval(&c),
            Err(ScalarError::MissingVariable(Var::V))
        );
    }

    #[test]
    fn canonical_rendering_round_trips() {
        for s in [
            "-m^2*n + 2*v^3",
            "m^3 + 1/2*m*n^2",
            "3*m*n - 6*m*v - 2",
            "1/2*m^2*n - n^3",
            "-5/2",
            "0",
            "m",
            "m^2 + m*n + n^2",
        ] {
            let p = sc(s);
            assert_eq!(p.to_string(), s, "round trip of `{}`", s);
        }
    }

    #[test]
    fn constant_poly_demotes_to_rational() {
        let m = Scalar::var(Var::M);
        let diff = m.sub(&m);
        assert_eq!(diff, Scalar::Rat(Rational::zero()));
        let one = m.add(&Scalar::one()).sub(&m);
        assert_eq!(one, Scalar::Rat(Rational::one()));
    }

    #[test]
    fn graded_lex_order() {
        // degree dominates, then m-first lexicographic
        assert_eq!(sc("n^3 + m*n + u").to_string(), "n^3 + m*n + u");
        assert_eq!(sc("u + m*n + n^3").to_string(), "n^3 + m*n + u");
        assert_eq!(sc("m*v + m*n").to_string(), "m*n + m*v");
    }
}
