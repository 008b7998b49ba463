//! Exact numeric substrate: rationals, polynomials over ℚ, quadratic-field
//! elements, and the polynomial operations used to describe eigenvalue data.

pub mod arith;
mod irreducible;
pub mod modp;
mod poly;
mod quad;
mod rational;

pub use irreducible::{
    irreducibility, is_irreducible_q, primitive_integer, reduce_mod, separable_mod, IrrCheck,
    Irreducibility,
};
pub use poly::{Horner, PolyQ};
pub use quad::QuadElem;
pub use rational::{valuation, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("{0} does not define a quadratic field (need squarefree d ≠ 0, 1)")]
    BadField(i64),
}

pub fn poly_reciprocal(p: &PolyQ) -> Result<PolyQ, NumError> {
    p.reciprocal()
}

pub fn is_self_reciprocal(p: &PolyQ) -> Result<bool, NumError> {
    p.is_self_reciprocal()
}

pub fn poly_neg_arg(p: &PolyQ) -> Result<PolyQ, NumError> {
    p.neg_arg()
}

pub fn poly_eval<T: Horner>(p: &PolyQ, x: &T) -> T {
    p.eval(x)
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        small_rational().prop_filter("nonzero", |r| !r.is_zero())
    }

    /// Monic polynomials with nonzero constant term.
    fn monic_unit() -> impl Strategy<Value = PolyQ> {
        (
            nonzero_rational(),
            prop::collection::vec(small_rational(), 0..5),
        )
            .prop_map(|(c0, mid)| {
                let mut cs = vec![c0];
                cs.extend(mid);
                cs.push(Rational::one());
                PolyQ::new(cs)
            })
    }

    fn quad(d: i64) -> impl Strategy<Value = QuadElem> {
        (small_rational(), small_rational()).prop_map(move |(a, b)| QuadElem::new(d, a, b).unwrap())
    }

    proptest! {
        #[test]
        fn reciprocal_is_involution(p in monic_unit()) {
            prop_assert_eq!(p.reciprocal().unwrap().reciprocal().unwrap(), p);
        }

        #[test]
        fn neg_arg_is_involution(p in monic_unit()) {
            prop_assert_eq!(p.neg_arg().unwrap().neg_arg().unwrap(), p);
        }

        #[test]
        fn reciprocal_commutes_with_neg_arg(p in monic_unit()) {
            let a = p.reciprocal().unwrap().neg_arg().unwrap();
            let b = p.neg_arg().unwrap().reciprocal().unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn reciprocal_inverts_roots(p in monic_unit(), x in nonzero_rational()) {
            // p*(1/x) vanishes exactly when p(x) does; more precisely
            // x^deg p(1/x) = p(0) · p*(x).
            let deg = p.degree().unwrap() as i64;
            let lhs = x.pow(deg).unwrap() * p.eval(&x.inv().unwrap());
            let rhs = p.constant_term() * p.reciprocal().unwrap().eval(&x);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn neg_arg_negates_roots(p in monic_unit(), x in small_rational()) {
            let deg = p.degree().unwrap() as i64;
            let sign = Rational::from_int(if deg % 2 == 0 { 1 } else { -1 });
            prop_assert_eq!(p.neg_arg().unwrap().eval(&x), sign * p.eval(&-&x));
        }

        #[test]
        fn eval_is_ring_homomorphism(
            p in monic_unit(),
            q in monic_unit(),
            xs in prop::collection::vec(small_rational(), 100),
        ) {
            let pq = &p * &q;
            let sum = &p + &q;
            for x in &xs {
                prop_assert_eq!(pq.eval(x), p.eval(x) * q.eval(x));
                prop_assert_eq!(sum.eval(x), p.eval(x) + q.eval(x));
            }
        }

        #[test]
        fn quad_norm_multiplicative(
            (x, y) in prop::sample::select(vec![-7i64, -3, -2, -1, 2, 3, 5, 6])
                .prop_flat_map(|d| (quad(d), quad(d))),
        ) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn quad_eval_matches_conjugate(p in monic_unit(), a in small_rational(), b in small_rational()) {
            // Rational coefficients commute with conjugation.
            let x = QuadElem::new(-3, a, b).unwrap();
            prop_assert_eq!(p.eval(&x.conj()), p.eval(&x).conj());
        }

        #[test]
        fn rational_json_roundtrip(r in small_rational()) {
            let s = serde_json::to_string(&r).unwrap();
            prop_assert_eq!(serde_json::from_str::<Rational>(&s).unwrap(), r);
        }
    }
}
