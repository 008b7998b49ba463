//! Elements `a + b√d` of a quadratic field ℚ(√d).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{arith, NumError, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawQuad")]
pub struct QuadElem {
    d: i64,
    a: Rational,
    b: Rational,
}

#[derive(Deserialize)]
struct RawQuad {
    d: i64,
    a: Rational,
    b: Rational,
}

impl TryFrom<RawQuad> for QuadElem {
    type Error = NumError;
    fn try_from(r: RawQuad) -> Result<Self, NumError> {
        QuadElem::new(r.d, r.a, r.b)
    }
}

impl QuadElem {
    /// `d` must be squarefree and different from 0 and 1.
    pub fn new(d: i64, a: Rational, b: Rational) -> Result<Self, NumError> {
        if d == 1 || !arith::is_squarefree(d) {
            return Err(NumError::BadField(d));
        }
        Ok(QuadElem { d, a, b })
    }

    pub(crate) fn from_rational(d: i64, a: Rational) -> Self {
        QuadElem {
            d,
            a,
            b: Rational::zero(),
        }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElem {
            d: self.d,
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_int(self.d) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        let c = self.conj();
        Some(QuadElem {
            d: self.d,
            a: &c.a * &n,
            b: &c.b * &n,
        })
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let one = QuadElem::from_rational(self.d, Rational::one());
        Some((0..e.unsigned_abs()).fold(one, |acc, _| &acc * &base))
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(
            self.d, other.d,
            "mixing elements of different quadratic fields"
        );
    }
}

impl Add<&QuadElem> for &QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &QuadElem) -> QuadElem {
        self.same_field(rhs);
        QuadElem {
            d: self.d,
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub<&QuadElem> for &QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &QuadElem) -> QuadElem {
        self.same_field(rhs);
        QuadElem {
            d: self.d,
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul<&QuadElem> for &QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &QuadElem) -> QuadElem {
        self.same_field(rhs);
        let d = Rational::from_int(self.d);
        QuadElem {
            d: self.d,
            a: &self.a * &rhs.a + d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            d: self.d,
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.a, self.b, self.d)
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
