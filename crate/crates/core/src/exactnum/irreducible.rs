//! Best-effort irreducibility over ℚ.
//!
//! Exact for degree ≤ 5 (a reducible polynomial of degree ≤ 5 has a factor of
//! degree 1 or 2, and both searches are complete when they are not capped).
//! Above that, irreducibility is certified by reductions modulo small primes,
//! reducibility by a found factor, and anything else is `Unknown`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::arith::{divisors, mod_u64, primes_below};
use super::modp::FpPoly;
use super::{PolyQ, Rational};

/// Cap on candidate factors tried by each search.
const SEARCH_CAP: u64 = 200_000;
/// Number of good primes consulted for degree patterns.
const PATTERN_PRIMES: usize = 25;
/// Prime used to discard quadratic candidates before exact division.
const FILTER_PRIME: u64 = 1_000_003;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum IrrCheck {
    Linear,
    NoRationalRoot,
    RationalRoot { root: Rational },
    QuadraticFactor { factor: PolyQ },
    ExhaustiveLowDegree,
    IrreducibleModP { p: u64 },
    DegreePatterns { primes: Vec<u64> },
    CallerCertified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Irreducibility {
    Irreducible { by: IrrCheck },
    Reducible { by: IrrCheck },
    Unknown,
}

impl Irreducibility {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Irreducibility::Irreducible { .. } => Some(true),
            Irreducibility::Reducible { .. } => Some(false),
            Irreducibility::Unknown => None,
        }
    }
}

/// Primitive integer polynomial with the same roots, constant term first.
pub fn primitive_integer(p: &PolyQ) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    let sign = if ints.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

/// Reduction of a p-integral polynomial modulo `p`; `None` if some
/// coefficient has `p` in its denominator.
pub fn reduce_mod(p: &PolyQ, prime: u64) -> Option<FpPoly> {
    let bp = BigInt::from(prime);
    let mut out = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        if c.denom().is_multiple_of(&bp) {
            return None;
        }
        let n = mod_u64(c.numer(), prime);
        let d = mod_u64(c.denom(), prime);
        let dinv = super::arith::inv_mod(d, prime)?;
        out.push(((n as u128 * dinv as u128) % prime as u128) as u64);
    }
    Some(FpPoly::new(prime, out))
}

/// For a monic p-integral polynomial: does `p` avoid its discriminant?
/// Equivalent to the reduction being separable.
pub fn separable_mod(p: &PolyQ, prime: u64) -> Option<bool> {
    let r = reduce_mod(p, prime)?;
    if r.degree() != p.degree() {
        return None;
    }
    Some(r.degree() == Some(0) || r.is_squarefree())
}

fn rational_root(f: &[BigInt]) -> Result<Option<Rational>, ()> {
    if f[0].is_zero() {
        return Ok(Some(Rational::zero()));
    }
    let lead = f.last().expect("nonzero");
    let num_divs = divisors(&f[0]).ok_or(())?;
    let den_divs = divisors(lead).ok_or(())?;
    if (num_divs.len() as u64) * (den_divs.len() as u64) * 2 > SEARCH_CAP {
        return Err(());
    }
    let poly = PolyQ::new(f.iter().cloned().map(Rational::from_int).collect());
    let mut seen = BTreeSet::new();
    for s in &num_divs {
        for t in &den_divs {
            for sign in [1, -1] {
                let r = Rational::new(s * BigInt::from(sign), t.clone()).expect("t > 0");
                if seen.insert(r.clone()) && poly.eval(&r).is_zero() {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

fn quadratic_factor(f: &[BigInt]) -> Result<Option<PolyQ>, ()> {
    let lead = f.last().expect("nonzero");
    let num_divs = divisors(&f[0]).ok_or(())?;
    let den_divs = divisors(lead).ok_or(())?;
    // Cauchy bound on the roots: |r| < 1 + max |a_i / a_n|.
    let max_ratio = f[..f.len() - 1]
        .iter()
        .map(|c| Rational::new(c.abs(), lead.abs()).expect("nonzero lead"))
        .max()
        .unwrap_or_default();
    let cauchy = max_ratio + Rational::one();
    let poly = PolyQ::new(f.iter().cloned().map(Rational::from_int).collect());
    let fp = reduce_mod(&poly, FILTER_PRIME);
    let mut effort = 0u64;
    for u in &den_divs {
        let bound = (Rational::from_int(u.clone()) * Rational::from_int(2) * &cauchy)
            .numer()
            .to_i64()
            .ok_or(())?
            .abs()
            + 1;
        let span = 2 * bound as u64 + 1;
        effort += span * 2 * num_divs.len() as u64;
        if effort > SEARCH_CAP {
            return Err(());
        }
        for c in &num_divs {
            for c in [c.clone(), -c] {
                for b in -bound..=bound {
                    let cand = PolyQ::new(vec![
                        Rational::from_int(c.clone()),
                        Rational::from_int(b),
                        Rational::from_int(u.clone()),
                    ]);
                    if let (Some(fp), Some(cp)) = (&fp, reduce_mod(&cand, FILTER_PRIME)) {
                        if cp.degree() == Some(2) && !fp.rem(&cp).is_zero() {
                            continue;
                        }
                    }
                    if poly.div_exact(&cand).is_some() {
                        return Ok(Some(cand.monic().expect("nonzero")));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for &d in degs {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

fn modular_certificate(p: &PolyQ, f: &[BigInt]) -> Option<IrrCheck> {
    let n = f.len() - 1;
    let lead = f.last().expect("nonzero");
    let mut possible: BTreeSet<usize> = (1..n).collect();
    let mut used = Vec::new();
    for prime in primes_below(400) {
        if used.len() >= PATTERN_PRIMES {
            break;
        }
        if lead.is_multiple_of(&BigInt::from(prime)) {
            continue;
        }
        let Some(r) = reduce_mod(p, prime) else {
            continue;
        };
        if r.degree() != Some(n) || !r.is_squarefree() {
            continue;
        }
        let degs = r.factor_degrees();
        if degs == [n] {
            return Some(IrrCheck::IrreducibleModP { p: prime });
        }
        used.push(prime);
        let sums = subset_sums(&degs);
        possible.retain(|k| sums.contains(k));
        if possible.is_empty() {
            return Some(IrrCheck::DegreePatterns { primes: used });
        }
    }
    None
}

/// Irreducibility of a polynomial of positive degree over ℚ.
pub fn irreducibility(p: &PolyQ) -> Irreducibility {
    let Some(n) = p.degree().filter(|&d| d >= 1) else {
        return Irreducibility::Unknown;
    };
    if n == 1 {
        return Irreducibility::Irreducible {
            by: IrrCheck::Linear,
        };
    }
    let f = primitive_integer(p);
    let root = rational_root(&f);
    if let Ok(Some(r)) = &root {
        return Irreducibility::Reducible {
            by: IrrCheck::RationalRoot { root: r.clone() },
        };
    }
    if n <= 3 {
        return match root {
            Ok(_) => Irreducibility::Irreducible {
                by: IrrCheck::NoRationalRoot,
            },
            Err(()) => Irreducibility::Unknown,
        };
    }
    if let Some(cert) = modular_certificate(p, &f) {
        return Irreducibility::Irreducible { by: cert };
    }
    match quadratic_factor(&f) {
        Ok(Some(q)) => Irreducibility::Reducible {
            by: IrrCheck::QuadraticFactor { factor: q },
        },
        Ok(None) if n <= 5 && root.is_ok() => Irreducibility::Irreducible {
            by: IrrCheck::ExhaustiveLowDegree,
        },
        _ => Irreducibility::Unknown,
    }
}

pub fn is_irreducible_q(p: &PolyQ) -> Option<bool> {
    irreducibility(p).as_bool()
}
