//! Artin–Tate motives of the groups in scope, recorded as multisets of Tate
//! twists `ℚ(−e)`, with local L-values and finite-field point counts.
//!
//! Sp(2m) and SO(2m+1) share the motive `ℚ(−1) ⊕ ℚ(−3) ⊕ ⋯ ⊕ ℚ(1−2m)`.
//! GL and U atoms are kept as opaque inner-form labels: two such atoms give
//! equal summands exactly when kind, size and base field agree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classparam::{Atom, AtomKind, BaseField, GroupShape};
use crate::exactnum::{arith, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotiveError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "mark", content = "label", rename_all = "lowercase")]
pub enum ArtinMark {
    Trivial,
    Quadratic(String),
}

fn is_trivial(m: &ArtinMark) -> bool {
    *m == ArtinMark::Trivial
}

fn trivial() -> ArtinMark {
    ArtinMark::Trivial
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Summand {
    /// `ℚ(−e)` twisted by an Artin character.
    Twist {
        exponent: u64,
        #[serde(default = "trivial", skip_serializing_if = "is_trivial")]
        artin: ArtinMark,
    },
    /// Stand-in for the motive of a GL or U atom.
    InnerFormLabel {
        kind: AtomKind,
        size: u64,
        base: BaseField,
    },
}

impl Summand {
    pub fn twist(exponent: u64) -> Self {
        Summand::Twist {
            exponent,
            artin: ArtinMark::Trivial,
        }
    }
}

/// Multiset of summands; serialized as a sorted list with repetitions.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Summand>", into = "Vec<Summand>")]
pub struct TateMotive {
    summands: BTreeMap<Summand, u64>,
}

impl From<Vec<Summand>> for TateMotive {
    fn from(v: Vec<Summand>) -> Self {
        v.into_iter().collect()
    }
}

impl From<TateMotive> for Vec<Summand> {
    fn from(m: TateMotive) -> Self {
        m.iter().cloned().collect()
    }
}

impl FromIterator<Summand> for TateMotive {
    fn from_iter<I: IntoIterator<Item = Summand>>(iter: I) -> Self {
        let mut m = TateMotive::default();
        for s in iter {
            *m.summands.entry(s).or_insert(0) += 1;
        }
        m
    }
}

impl TateMotive {
    pub fn from_exponents(es: &[u64]) -> Self {
        es.iter().map(|&e| Summand::twist(e)).collect()
    }

    /// Summands in order, repeated by multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = &Summand> {
        self.summands
            .iter()
            .flat_map(|(s, &m)| std::iter::repeat(s).take(m as usize))
    }

    pub fn len(&self) -> usize {
        self.summands.values().sum::<u64>() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Direct sum.
    pub fn sum(&self, other: &TateMotive) -> TateMotive {
        self.iter().chain(other.iter()).cloned().collect()
    }

    /// Exponents of the explicit, trivially marked twists, or `None` if any
    /// summand is a label or carries an Artin character.
    pub fn explicit_exponents(&self) -> Option<Vec<u64>> {
        self.iter()
            .map(|s| match s {
                Summand::Twist {
                    exponent,
                    artin: ArtinMark::Trivial,
                } => Some(*exponent),
                _ => None,
            })
            .collect()
    }
}

fn atom_motive(a: &Atom) -> Result<Vec<Summand>, MotiveError> {
    match a.kind {
        AtomKind::Sp | AtomKind::SoOdd => {
            if a.base != BaseField::Rationals {
                return Err(MotiveError::Unsupported(format!(
                    "{a}: Sp/SO atoms over a number field"
                )));
            }
            let m = a.rank_parameter();
            Ok((1..=m).map(|i| Summand::twist(2 * i - 1)).collect())
        }
        AtomKind::Gl | AtomKind::U => Ok(vec![Summand::InnerFormLabel {
            kind: a.kind,
            size: a.size,
            base: a.base.clone(),
        }]),
    }
}

pub fn motive_of_shape(shape: &GroupShape) -> Result<TateMotive, MotiveError> {
    if shape.so_even_part.is_some() {
        return Err(MotiveError::Unsupported(
            "motive of an even orthogonal part".into(),
        ));
    }
    let mut out = Vec::new();
    for a in &shape.atoms {
        out.extend(atom_motive(a)?);
    }
    Ok(out.into())
}

pub fn motive_equal(a: &TateMotive, b: &TateMotive) -> bool {
    a == b
}

fn check_prime_power(q: u64) -> Result<(), MotiveError> {
    if arith::prime_power(q).is_none() {
        return Err(MotiveError::NotPrimePower(q));
    }
    Ok(())
}

/// `L(M^∨(1))` at a place with residue field of size `q`:
/// `∏ (1 − q^{−(e+1)})^{−1}`.
#[allow(non_snake_case)]
pub fn local_L_dual1(m: &TateMotive, q: u64) -> Result<Rational, MotiveError> {
    check_prime_power(q)?;
    let es = m.explicit_exponents().ok_or_else(|| {
        MotiveError::Unsupported("local L-value of opaque or twisted summands".into())
    })?;
    let qr = Rational::from_int(q as i64);
    Ok(es
        .into_iter()
        .map(|e| {
            let term = Rational::one() - qr.pow(-(e as i64 + 1)).expect("q ≠ 0");
            term.inv().expect("q ≥ 2")
        })
        .product())
}

/// `|Sp(2n, F_q)| = |SO(2n+1, F_q)| = q^{n²} ∏_{i=1}^n (q^{2i} − 1)`.
pub fn point_count(kind: AtomKind, n: u64, q: u64) -> Result<BigInt, MotiveError> {
    if !matches!(kind, AtomKind::Sp | AtomKind::SoOdd) {
        return Err(MotiveError::Unsupported(format!("point count of {kind:?}")));
    }
    check_prime_power(q)?;
    if q % 2 == 0 {
        return Err(MotiveError::Unsupported("even q".into()));
    }
    let qb = BigInt::from(q);
    let mut count = num_traits::pow(qb.clone(), (n * n) as usize);
    for i in 1..=n {
        count *= num_traits::pow(qb.clone(), (2 * i) as usize) - BigInt::one();
    }
    debug_assert!(!count.is_zero());
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::PolyQ;

    fn shape(atoms: Vec<Atom>) -> GroupShape {
        GroupShape {
            atoms,
            so_even_part: None,
        }
    }

    #[test]
    fn b_and_c_share_a_motive() {
        let sp4 = motive_of_shape(&shape(vec![Atom::sp(4)])).unwrap();
        let so5 = motive_of_shape(&shape(vec![Atom::so(5)])).unwrap();
        assert_eq!(sp4, TateMotive::from_exponents(&[1, 3]));
        assert!(motive_equal(&sp4, &so5));
        assert!(!motive_equal(&sp4, &TateMotive::from_exponents(&[1, 5])));
        assert!(motive_equal(&TateMotive::default(), &TateMotive::default()));
    }

    #[test]
    fn inner_forms_share_labels() {
        let base = BaseField::Number {
            degree: 2,
            label: PolyQ::from_ints(&[-5, 0, 1]),
        };
        let u2 = Atom {
            kind: AtomKind::U,
            size: 2,
            base,
        };
        let a = motive_of_shape(&shape(vec![u2.clone(), Atom::sp(2)])).unwrap();
        let b = motive_of_shape(&shape(vec![u2, Atom::so(3)])).unwrap();
        assert!(motive_equal(&a, &b));
        assert!(local_L_dual1(&a, 3).is_err());
    }

    #[test]
    fn l_values() {
        let m1 = TateMotive::from_exponents(&[1]);
        assert_eq!(local_L_dual1(&m1, 3).unwrap().to_string(), "9/8");
        let m13 = TateMotive::from_exponents(&[1, 3]);
        assert_eq!(local_L_dual1(&m13, 2).unwrap().to_string(), "64/45");
        assert!(local_L_dual1(&TateMotive::default(), 7).unwrap().is_one());
        assert!(local_L_dual1(&m1, 6).is_err());
    }

    #[test]
    fn point_counts() {
        assert_eq!(point_count(AtomKind::Sp, 1, 3).unwrap(), BigInt::from(24));
        assert_eq!(
            point_count(AtomKind::SoOdd, 1, 3).unwrap(),
            BigInt::from(24)
        );
        assert_eq!(
            point_count(AtomKind::Sp, 2, 3).unwrap(),
            BigInt::from(51840)
        );
        assert!(point_count(AtomKind::Sp, 1, 4).is_err());
        assert!(point_count(AtomKind::Gl, 1, 3).is_err());
    }

    #[test]
    fn motive_json_roundtrip() {
        let m = TateMotive::from_exponents(&[3, 1, 1]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"[{"type":"twist","exponent":1},{"type":"twist","exponent":1},{"type":"twist","exponent":3}]"#
        );
        assert_eq!(serde_json::from_str::<TateMotive>(&s).unwrap(), m);
    }
}
