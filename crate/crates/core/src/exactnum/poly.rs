//! Dense univariate polynomials over ℚ.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{NumError, QuadElem, Rational};

/// A polynomial with rational coefficients, constant term first, never with a
/// trailing zero coefficient. The empty vector is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

/// Values a polynomial can be evaluated at by Horner's rule.
pub trait Horner: Clone {
    fn lift(c: &Rational, like: &Self) -> Self;
    fn h_add(&self, other: &Self) -> Self;
    fn h_mul(&self, other: &Self) -> Self;
}

impl Horner for Rational {
    fn lift(c: &Rational, _: &Self) -> Self {
        c.clone()
    }
    fn h_add(&self, other: &Self) -> Self {
        self + other
    }
    fn h_mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Horner for QuadElem {
    fn lift(c: &Rational, like: &Self) -> Self {
        QuadElem::from_rational(like.d(), c.clone())
    }
    fn h_add(&self, other: &Self) -> Self {
        self + other
    }
    fn h_mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        PolyQ::new(cs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: vec![] }
    }

    pub fn one() -> Self {
        PolyQ::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PolyQ::new(vec![c])
    }

    /// The monic linear polynomial `X - c`.
    pub fn x_minus(c: Rational) -> Self {
        PolyQ::new(vec![-c, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rational::is_one)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Option<PolyQ> {
        let lc = self.leading()?.clone();
        Some(PolyQ::new(self.coeffs.iter().map(|c| c / &lc).collect()))
    }

    pub fn scale(&self, k: &Rational) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval<T: Horner>(&self, x: &T) -> T {
        let zero = T::lift(&Rational::zero(), x);
        self.coeffs
            .iter()
            .rev()
            .fold(zero, |acc, c| acc.h_mul(x).h_add(&T::lift(c, x)))
    }

    pub fn derivative(&self) -> PolyQ {
        PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> PolyQ {
        (0..e).fold(PolyQ::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &PolyQ) -> (PolyQ, PolyQ) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyQ::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (PolyQ::new(quot), PolyQ::new(rem))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &PolyQ) -> Option<PolyQ> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic().unwrap_or_default()
    }

    fn check_reciprocal_domain(&self) -> Result<(), NumError> {
        if !self.is_monic() {
            return Err(NumError::InvalidPolynomial(format!("{self} is not monic")));
        }
        if self.constant_term().is_zero() {
            return Err(NumError::InvalidPolynomial(format!("{self} vanishes at 0")));
        }
        Ok(())
    }

    /// Monic normalization of `X^deg · p(1/X)`; the roots are inverted.
    pub fn reciprocal(&self) -> Result<PolyQ, NumError> {
        self.check_reciprocal_domain()?;
        let rev: Vec<Rational> = self.coeffs.iter().rev().cloned().collect();
        Ok(PolyQ::new(rev).monic().expect("constant term is nonzero"))
    }

    pub fn is_self_reciprocal(&self) -> Result<bool, NumError> {
        Ok(&self.reciprocal()? == self)
    }

    /// `(-1)^deg · p(-X)`: the monic polynomial with negated roots.
    pub fn neg_arg(&self) -> Result<PolyQ, NumError> {
        if !self.is_monic() {
            return Err(NumError::InvalidPolynomial(format!("{self} is not monic")));
        }
        let deg = self.coeffs.len() - 1;
        Ok(PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if (deg - i) % 2 == 1 { -c } else { c.clone() })
                .collect(),
        ))
    }
}

impl Ord for PolyQ {
    /// Degree first, then coefficients from the constant term upward.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for PolyQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&PolyQ> for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&PolyQ> for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&PolyQ> for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        PolyQ::new(out)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ({self})")
    }
}

impl Serialize for PolyQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<Rational>::deserialize(d)?;
        if coeffs.last().is_some_and(Rational::is_zero) {
            return Err(serde::de::Error::custom(
                "polynomial has a zero leading coefficient",
            ));
        }
        Ok(PolyQ::new(coeffs))
    }
}
