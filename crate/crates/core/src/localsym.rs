//! Places of ℚ, normalized absolute values, Legendre and Hilbert symbols,
//! quadratic norm characters, the Δ₀ sign, and the Θ(−1) constants.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{arith, modp, valuation, NumError, PolyQ, QuadElem, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("zero argument")]
    Zero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("the Legendre symbol needs an odd prime, got {0}")]
    EvenPrime(u64),
    #[error("{0} does not define a quadratic field (need squarefree d ≠ 0, 1)")]
    BadField(i64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0} is not an integer")]
    NonIntegral(String),
    #[error("cannot factor {0}")]
    Factor(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// A place of ℚ; serialized as `"inf"` or the prime number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PlaceRepr", into = "PlaceRepr")]
pub enum PlaceQ {
    Infinite,
    Finite(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PlaceRepr {
    Prime(u64),
    Name(String),
}

impl TryFrom<PlaceRepr> for PlaceQ {
    type Error = LocalError;

    fn try_from(r: PlaceRepr) -> Result<Self, Self::Error> {
        match r {
            PlaceRepr::Prime(p) => PlaceQ::finite(p),
            PlaceRepr::Name(s) => match s.as_str() {
                "inf" | "infinite" | "∞" => Ok(PlaceQ::Infinite),
                other => other
                    .parse::<u64>()
                    .map_err(|_| LocalError::Unsupported(format!("place {other:?}")))
                    .and_then(PlaceQ::finite),
            },
        }
    }
}

impl From<PlaceQ> for PlaceRepr {
    fn from(v: PlaceQ) -> Self {
        match v {
            PlaceQ::Infinite => PlaceRepr::Name("inf".into()),
            PlaceQ::Finite(p) => PlaceRepr::Prime(p),
        }
    }
}

impl PlaceQ {
    pub fn finite(p: u64) -> Result<Self, LocalError> {
        if arith::is_prime_u64(p) {
            Ok(PlaceQ::Finite(p))
        } else {
            Err(LocalError::NotPrime(p))
        }
    }
}

impl fmt::Display for PlaceQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceQ::Infinite => write!(f, "∞"),
            PlaceQ::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// An element of {±1}; serialized as `1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum SignValue {
    Plus,
    Minus,
}

impl TryFrom<i8> for SignValue {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(SignValue::Plus),
            -1 => Ok(SignValue::Minus),
            _ => Err(format!("sign must be 1 or -1, got {v}")),
        }
    }
}

impl From<SignValue> for i8 {
    fn from(s: SignValue) -> Self {
        match s {
            SignValue::Plus => 1,
            SignValue::Minus => -1,
        }
    }
}

impl SignValue {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            SignValue::Minus
        } else {
            SignValue::Plus
        }
    }

    pub fn is_plus(self) -> bool {
        self == SignValue::Plus
    }
}

impl Mul for SignValue {
    type Output = SignValue;

    fn mul(self, o: SignValue) -> SignValue {
        SignValue::from_parity(self != o)
    }
}

impl std::iter::Product for SignValue {
    fn product<I: Iterator<Item = SignValue>>(iter: I) -> Self {
        iter.fold(SignValue::Plus, Mul::mul)
    }
}

impl fmt::Display for SignValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", i8::from(*self))
    }
}

fn nonzero(x: &Rational) -> Result<(), LocalError> {
    if x.is_zero() {
        Err(LocalError::Zero)
    } else {
        Ok(())
    }
}

/// `|x|_v`: `p^{−v_p(x)}` at a prime, the usual absolute value at ∞.
pub fn abs_norm(x: &Rational, v: PlaceQ) -> Result<Rational, LocalError> {
    nonzero(x)?;
    Ok(match v {
        PlaceQ::Infinite => x.abs(),
        PlaceQ::Finite(p) => {
            let e = valuation(x, p).expect("nonzero");
            Rational::from_int(p as i64).pow(-e).expect("p ≠ 0")
        }
    })
}

/// `∏_v |2|_v^{−t}`; only ∞ and 2 contribute.
pub fn two_power_product(t: u64) -> Rational {
    let two = Rational::from_int(2);
    [PlaceQ::Infinite, PlaceQ::Finite(2)]
        .into_iter()
        .map(|v| {
            abs_norm(&two, v)
                .expect("2 ≠ 0")
                .pow(-(t as i64))
                .expect("nonzero")
        })
        .product()
}

/// `(Θ⁺ − Θ⁻)(−1) = |2|_v^{−n}`.
pub fn theta_minus_one(n: u64, v: PlaceQ) -> Rational {
    abs_norm(&Rational::from_int(2), v)
        .expect("2 ≠ 0")
        .pow(-(n as i64))
        .expect("nonzero")
}

/// Legendre symbol `(a/p)` for an odd prime; `None` when `p | a`.
pub fn legendre(a: &BigInt, p: u64) -> Result<Option<SignValue>, LocalError> {
    if !arith::is_prime_u64(p) {
        return Err(LocalError::NotPrime(p));
    }
    if p == 2 {
        return Err(LocalError::EvenPrime(p));
    }
    let r = arith::mod_u64(a, p);
    Ok(match modp::euler_criterion(r, p) {
        0 => None,
        1 => Some(SignValue::Plus),
        _ => Some(SignValue::Minus),
    })
}

/// Integer in the same square class as `x` (`x · den² = num · den`).
fn square_class_integer(x: &Rational) -> BigInt {
    x.numer() * x.denom()
}

/// `x = p^e · u` with `u` prime to `p`.
fn split_p(x: &BigInt, p: u64) -> (u64, BigInt) {
    let pb = BigInt::from(p);
    let mut u = x.clone();
    let mut e = 0;
    while u.is_multiple_of(&pb) {
        u /= &pb;
        e += 1;
    }
    (e, u)
}

/// Quadratic Hilbert symbol `(a, b)_v`.
pub fn hilbert(a: &Rational, b: &Rational, v: PlaceQ) -> Result<SignValue, LocalError> {
    nonzero(a)?;
    nonzero(b)?;
    let p = match v {
        PlaceQ::Infinite => return Ok(SignValue::from_parity(a.is_negative() && b.is_negative())),
        PlaceQ::Finite(p) => PlaceQ::finite(p).map(|_| p)?,
    };
    let (alpha, u) = split_p(&square_class_integer(a), p);
    let (beta, w) = split_p(&square_class_integer(b), p);
    if p == 2 {
        let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u64().expect("small");
        let (u8_, w8) = (m8(&u), m8(&w));
        let eps = |x: u64| (x - 1) / 2 % 2;
        let omega = |x: u64| (x * x - 1) / 8 % 2;
        let e = eps(u8_) * eps(w8) + alpha * omega(w8) + beta * omega(u8_);
        return Ok(SignValue::from_parity(e % 2 == 1));
    }
    let eps_p = (p - 1) / 2 % 2;
    let mut s = SignValue::from_parity(alpha * beta * eps_p % 2 == 1);
    if beta % 2 == 1 {
        s = s * legendre(&u, p)?.expect("unit");
    }
    if alpha % 2 == 1 {
        s = s * legendre(&w, p)?.expect("unit");
    }
    Ok(s)
}

/// Every place where `(a, b)_v` can be nontrivial: ∞, 2, and primes dividing
/// the numerators or denominators of `a` and `b`.
pub fn relevant_places(a: &Rational, b: &Rational) -> Result<Vec<PlaceQ>, LocalError> {
    let mut primes = BTreeSet::from([2u64]);
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        let fs = arith::factor_big(&x.abs()).ok_or_else(|| LocalError::Factor(x.to_string()))?;
        for (q, _) in fs {
            let q = q
                .to_u64()
                .ok_or_else(|| LocalError::Factor(x.to_string()))?;
            primes.insert(q);
        }
    }
    Ok(std::iter::once(PlaceQ::Infinite)
        .chain(primes.into_iter().map(PlaceQ::Finite))
        .collect())
}

/// `∏_v (a, b)_v` over the relevant places; +1 by Hilbert reciprocity.
pub fn hilbert_product(a: &Rational, b: &Rational) -> Result<SignValue, LocalError> {
    relevant_places(a, b)?
        .into_iter()
        .map(|v| hilbert(a, b, v))
        .product()
}

fn check_field(d: i64) -> Result<(), LocalError> {
    if d == 0 || d == 1 || !arith::is_squarefree(d) {
        return Err(LocalError::BadField(d));
    }
    Ok(())
}

/// The norm character of `ℚ_v(√d)/ℚ_v` at `x`.
pub fn sgn_quadext(d: i64, x: &Rational, v: PlaceQ) -> Result<SignValue, LocalError> {
    check_field(d)?;
    hilbert(&Rational::from_int(d), x, v)
}

/// One factor of `K″`: split, or `ℚ(√d)` over `K″♯ = ℚ`, with its `a″`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "label", rename_all = "lowercase")]
pub enum SecondFactor {
    Split,
    Field { d: i64, a: QuadElem },
}

/// `Δ₀ = ∏_i sgn_{K″_i}(P(a″_i) · (−a″_i)^{−n′} · det(δ′+1))`.
///
/// `charpoly` is the characteristic polynomial of `δ′ ∈ Sp(2n′)`. When
/// `det_delta_prime_plus_one` is absent it is computed as `P(−1)`. Each
/// argument must be rational; other values of `a″` are unsupported.
pub fn delta_zero(
    charpoly: &PolyQ,
    factors: &[SecondFactor],
    nprime: u64,
    det_delta_prime_plus_one: Option<&Rational>,
    v: PlaceQ,
) -> Result<SignValue, LocalError> {
    let deg = charpoly.degree().unwrap_or(0) as u64;
    if deg != 2 * nprime || !charpoly.is_monic() {
        return Err(LocalError::Degenerate(format!(
            "characteristic polynomial of δ′ must be monic of degree {}",
            2 * nprime
        )));
    }
    let det = match det_delta_prime_plus_one {
        Some(d) => d.clone(),
        None => {
            let minus_one = Rational::from_int(-1);
            let sign = Rational::from_int(if deg % 2 == 0 { 1 } else { -1 });
            sign * charpoly.eval(&minus_one)
        }
    };
    if det.is_zero() {
        return Err(LocalError::Degenerate("det(δ′ + 1) = 0".into()));
    }
    let mut out = SignValue::Plus;
    for f in factors {
        let (d, a) = match f {
            SecondFactor::Split => continue,
            SecondFactor::Field { d, a } => (*d, a),
        };
        check_field(d)?;
        if a.d() != d {
            return Err(LocalError::Degenerate(format!(
                "a″ lies in ℚ(√{}), label says ℚ(√{d})",
                a.d()
            )));
        }
        if a.is_zero() {
            return Err(LocalError::Degenerate("a″ = 0".into()));
        }
        let neg_a_pow = (-a)
            .pow(-(nprime as i64))
            .ok_or_else(|| LocalError::Degenerate("a″ = 0".into()))?;
        let arg = &(&charpoly.eval(a) * &neg_a_pow) * &QuadElem::from_rational(d, det.clone());
        if !arg.is_rational() {
            return Err(LocalError::Unsupported(format!(
                "argument {arg:?} is not in ℚ"
            )));
        }
        let x = arg.a().clone();
        if x.is_zero() {
            return Err(LocalError::Degenerate("argument evaluates to 0".into()));
        }
        out = out * sgn_quadext(d, &x, v)?;
    }
    Ok(out)
}

/// Checks `(−1)^{q₁ − q₂} = e₁ · e₂`.
pub fn sign_ledger(
    q1: &Rational,
    q2: &Rational,
    e1: SignValue,
    e2: SignValue,
) -> Result<bool, LocalError> {
    let diff = q1 - q2;
    if !diff.is_integer() {
        return Err(LocalError::NonIntegral(diff.to_string()));
    }
    let odd = diff.numer().is_odd();
    Ok(SignValue::from_parity(odd) == e1 * e2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn fin(p: u64) -> PlaceQ {
        PlaceQ::Finite(p)
    }

    #[test]
    fn abs_norm_examples() {
        assert_eq!(abs_norm(&r("8"), fin(2)).unwrap(), r("1/8"));
        assert_eq!(abs_norm(&r("8"), PlaceQ::Infinite).unwrap(), r("8"));
        assert_eq!(abs_norm(&r("3/4"), fin(3)).unwrap(), r("1/3"));
        assert!(abs_norm(&r("0"), fin(3)).is_err());
    }

    #[test]
    fn theta_and_two_power() {
        for t in [0, 1, 3] {
            assert!(two_power_product(t).is_one());
        }
        assert_eq!(theta_minus_one(1, fin(2)), r("2"));
        assert_eq!(theta_minus_one(2, PlaceQ::Infinite), r("1/4"));
        assert!(theta_minus_one(3, fin(5)).is_one());
    }

    #[test]
    fn legendre_examples() {
        let l = |a: i64, p| legendre(&BigInt::from(a), p).unwrap();
        assert_eq!(l(2, 7), Some(SignValue::Plus));
        assert_eq!(l(3, 7), Some(SignValue::Minus));
        assert_eq!(l(7, 7), None);
        assert_eq!(l(-1, 5), Some(SignValue::Plus));
        assert!(legendre(&BigInt::from(1), 2).is_err());
        assert!(legendre(&BigInt::from(1), 9).is_err());
    }

    #[test]
    fn hilbert_examples() {
        let m1 = r("-1");
        assert_eq!(
            hilbert(&m1, &m1, PlaceQ::Infinite).unwrap(),
            SignValue::Minus
        );
        assert_eq!(hilbert(&m1, &m1, fin(2)).unwrap(), SignValue::Minus);
        assert_eq!(hilbert(&m1, &m1, fin(3)).unwrap(), SignValue::Plus);
        // (2, 3)_3 = (2/3) = −1 and (2, 3)_2 = −1.
        assert_eq!(hilbert(&r("2"), &r("3"), fin(3)).unwrap(), SignValue::Minus);
        assert_eq!(hilbert(&r("2"), &r("3"), fin(2)).unwrap(), SignValue::Minus);
        assert_eq!(
            hilbert_product(&r("2/9"), &r("-15/4")).unwrap(),
            SignValue::Plus
        );
    }

    #[test]
    fn sgn_quadext_examples() {
        assert_eq!(
            sgn_quadext(-1, &r("-1"), PlaceQ::Infinite).unwrap(),
            SignValue::Minus
        );
        assert_eq!(sgn_quadext(-1, &r("2"), fin(5)).unwrap(), SignValue::Plus);
        assert_eq!(
            sgn_quadext(5, &r("3"), PlaceQ::Infinite).unwrap(),
            SignValue::Plus
        );
        assert!(sgn_quadext(4, &r("3"), fin(5)).is_err());
    }

    #[test]
    fn delta_zero_worked_example() {
        // P = X² − 3X + 1, n′ = 1, a″ = i: argument P(i)·(−i)^{−1}·P(−1) = 15.
        let p = PolyQ::from_ints(&[1, -3, 1]);
        let i = QuadElem::new(-1, r("0"), r("1")).unwrap();
        let f = [SecondFactor::Field { d: -1, a: i }];
        let at = |v| delta_zero(&p, &f, 1, None, v).unwrap();
        assert_eq!(at(fin(5)), SignValue::Plus);
        assert_eq!(at(fin(3)), SignValue::Minus);
        assert_eq!(at(PlaceQ::Infinite), SignValue::Plus);
        assert_eq!(at(fin(2)), SignValue::Minus);
        assert_eq!(
            delta_zero(&p, &[SecondFactor::Split], 1, None, fin(3)).unwrap(),
            SignValue::Plus
        );
        assert_eq!(
            delta_zero(&p, &[], 1, None, fin(3)).unwrap(),
            SignValue::Plus
        );
    }

    #[test]
    fn delta_zero_rejects_irrational_argument() {
        let p = PolyQ::from_ints(&[1, -3, 1]);
        let a = QuadElem::new(-1, r("1"), r("1")).unwrap();
        let f = [SecondFactor::Field { d: -1, a }];
        assert!(matches!(
            delta_zero(&p, &f, 1, None, fin(3)),
            Err(LocalError::Unsupported(_))
        ));
    }

    #[test]
    fn sign_ledger_examples() {
        use SignValue::*;
        assert!(sign_ledger(&r("3"), &r("3"), Plus, Plus).unwrap());
        assert!(sign_ledger(&r("3"), &r("2"), Minus, Plus).unwrap());
        assert!(!sign_ledger(&r("3"), &r("2"), Plus, Plus).unwrap());
        assert!(sign_ledger(&r("1/2"), &r("0"), Plus, Plus).is_err());
    }

    #[test]
    fn place_json() {
        assert_eq!(serde_json::to_string(&PlaceQ::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<PlaceQ>("5").unwrap(), fin(5));
        assert!(serde_json::from_str::<PlaceQ>("6").is_err());
        assert_eq!(serde_json::to_string(&SignValue::Minus).unwrap(), "-1");
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (-300i64..=300, 1i64..=60)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn place() -> impl Strategy<Value = PlaceQ> {
        prop::sample::select(vec![0u64, 2, 3, 5, 7, 11, 13, 17]).prop_map(|p| {
            if p == 0 {
                PlaceQ::Infinite
            } else {
                PlaceQ::Finite(p)
            }
        })
    }

    proptest! {
        #[test]
        fn hilbert_is_bimultiplicative(a in nonzero_rational(), b in nonzero_rational(),
                                       c in nonzero_rational(), v in place()) {
            let h = |x: &Rational, y: &Rational| hilbert(x, y, v).unwrap();
            prop_assert_eq!(h(&a, &(&b * &c)), h(&a, &b) * h(&a, &c));
            prop_assert_eq!(h(&a, &b), h(&b, &a));
            prop_assert_eq!(h(&a, &-&a), SignValue::Plus);
        }

        #[test]
        fn hilbert_steinberg_relation(a in nonzero_rational(), v in place()) {
            let b = Rational::one() - &a;
            prop_assume!(!b.is_zero());
            prop_assert_eq!(hilbert(&a, &b, v).unwrap(), SignValue::Plus);
        }

        #[test]
        fn hilbert_reciprocity(a in nonzero_rational(), b in nonzero_rational()) {
            prop_assert_eq!(hilbert_product(&a, &b).unwrap(), SignValue::Plus);
        }

        #[test]
        fn square_classes(a in nonzero_rational(), b in nonzero_rational(),
                          s in nonzero_rational(), v in place()) {
            let a2 = &a * &(&s * &s);
            prop_assert_eq!(hilbert(&a, &b, v).unwrap(), hilbert(&a2, &b, v).unwrap());
        }

        #[test]
        fn abs_norm_product_formula(a in nonzero_rational()) {
            let places = relevant_places(&a, &a).unwrap();
            let prod: Rational = places.iter().map(|&v| abs_norm(&a, v).unwrap()).product();
            prop_assert!(prod.is_one());
        }

        #[test]
        fn delta_zero_square_class(s in nonzero_rational(), v in place()) {
            let p = PolyQ::from_ints(&[1, 0, 3, 0, 1]);
            let a = QuadElem::new(-3, Rational::zero(), Rational::one()).unwrap();
            let f = [SecondFactor::Field { d: -3, a }];
            let det = Rational::from_int(7);
            let base = delta_zero(&p, &f, 2, Some(&det), v).unwrap();
            let moved = delta_zero(&p, &f, 2, Some(&(&det * &(&s * &s))), v).unwrap();
            prop_assert_eq!(base, moved);
        }
    }
}
