//! Root systems of types A, B and C in the ε-basis.
//!
//! Coroots are identified with vectors in the η-basis through the trace form
//! `B_tr`, with `⟨ε_i, η_j⟩ = δ_ij`. Under that identification every coroot
//! has the same coordinates as its root (`H_{2ε_i} = 2η_i`, `H_{ε_i} = η_i`).
//! Type A_r lives in `r + 1` coordinates.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classparam::{AtomKind, GroupShape};
use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("{0} is not a root of {1}")]
    NotARoot(String, RootDatum),
    #[error("expected {expected} coordinates, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("torus point is singular: root {0} has ξ_α(t) = 1")]
    SingularPoint(String),
    #[error("torus coordinates must be nonzero")]
    ZeroCoordinate,
    #[error("t_{0} = -1 makes the B/C discriminant ratio vanish")]
    MinusOne(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDatum")]
pub struct RootDatum {
    family: Family,
    rank: usize,
}

#[derive(Deserialize)]
struct RawDatum {
    family: Family,
    rank: usize,
}

impl TryFrom<RawDatum> for RootDatum {
    type Error = RootError;
    fn try_from(r: RawDatum) -> Result<Self, RootError> {
        RootDatum::new(r.family, r.rank)
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}", self.family, self.rank)
    }
}

impl RootDatum {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        if rank == 0 {
            return Err(RootError::ZeroRank);
        }
        Ok(RootDatum { family, rank })
    }

    pub fn b(n: usize) -> Result<Self, RootError> {
        Self::new(Family::B, n)
    }

    pub fn c(n: usize) -> Result<Self, RootError> {
        Self::new(Family::C, n)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of ε-coordinates.
    pub fn ambient(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B | Family::C => self.rank,
        }
    }
}

/// A vector of rational coordinates in the ε-basis (or the η-basis for coroots).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    fn unit(len: usize, i: usize, c: i64) -> Weight {
        let mut v = vec![Rational::zero(); len];
        v[i] = Rational::from_int(c);
        Weight(v)
    }

    fn pair(len: usize, i: usize, j: usize, sj: i64) -> Weight {
        let mut v = Weight::unit(len, i, 1);
        v.0[j] = Rational::from_int(sj);
        v
    }

    pub fn pairing(&self, other: &Weight) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Rational::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A product of linear forms on the Cartan, stored as its factor multiset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymElement {
    pub factors: Vec<Weight>,
}

impl SymElement {
    pub fn eval(&self, lambda: &Weight) -> Rational {
        self.factors.iter().map(|h| lambda.pairing(h)).product()
    }
}

/// Positive roots: `ε_i − ε_j, ε_i + ε_j` for `i < j` in lexicographic order,
/// then `ε_i` (type B) or `2ε_i` (type C). Type A has only `ε_i − ε_j`.
pub fn positive_roots(rd: &RootDatum) -> Vec<Weight> {
    let len = rd.ambient();
    let mut out = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            out.push(Weight::pair(len, i, j, -1));
            if rd.family != Family::A {
                out.push(Weight::pair(len, i, j, 1));
            }
        }
    }
    match rd.family {
        Family::A => {}
        Family::B => out.extend((0..len).map(|i| Weight::unit(len, i, 1))),
        Family::C => out.extend((0..len).map(|i| Weight::unit(len, i, 2))),
    }
    out
}

pub fn all_roots(rd: &RootDatum) -> Vec<Weight> {
    let pos = positive_roots(rd);
    let neg: Vec<Weight> = pos.iter().map(Weight::neg).collect();
    pos.into_iter().chain(neg).collect()
}

pub fn rho(rd: &RootDatum) -> Weight {
    let len = rd.ambient();
    let half = Rational::new(1, 2).expect("nonzero");
    let mut acc = vec![Rational::zero(); len];
    for a in positive_roots(rd) {
        for (s, c) in acc.iter_mut().zip(&a.0) {
            *s += c;
        }
    }
    Weight(acc.into_iter().map(|c| c * &half).collect())
}

fn check_len(rd: &RootDatum, w: &Weight) -> Result<(), RootError> {
    if w.0.len() != rd.ambient() {
        return Err(RootError::RankMismatch {
            expected: rd.ambient(),
            got: w.0.len(),
        });
    }
    Ok(())
}

/// The coroot `H_α` in the η-basis.
pub fn coroot_btr(alpha: &Weight, rd: &RootDatum) -> Result<Weight, RootError> {
    check_len(rd, alpha)?;
    if !all_roots(rd).contains(alpha) {
        return Err(RootError::NotARoot(alpha.to_string(), *rd));
    }
    Ok(alpha.clone())
}

/// `ϖ = ∏_{α>0} H_α`.
pub fn varpi(rd: &RootDatum) -> SymElement {
    SymElement {
        factors: positive_roots(rd)
            .iter()
            .map(|a| coroot_btr(a, rd).expect("positive roots are roots"))
            .collect(),
    }
}

pub fn varpi_eval(rd: &RootDatum, lambda: &Weight) -> Result<Rational, RootError> {
    check_len(rd, lambda)?;
    Ok(varpi(rd).eval(lambda))
}

/// `(ϖ^C(ρ^B) / ϖ^C(ρ^C), ϖ^B(ρ^B) / ϖ^C(ρ^C))` for rank `n`.
pub fn lemma_2n_ratios(n: usize) -> Result<(Rational, Rational), RootError> {
    let c = RootDatum::c(n)?;
    let b = RootDatum::b(n)?;
    let (rho_b, rho_c) = (rho(&b), rho(&c));
    let denom = varpi_eval(&c, &rho_c)?;
    Ok((
        varpi_eval(&c, &rho_b)? / &denom,
        varpi_eval(&b, &rho_b)? / &denom,
    ))
}

pub fn exponents(rd: &RootDatum) -> Vec<u64> {
    let n = rd.rank as u64;
    match rd.family {
        Family::A => (1..=n).collect(),
        Family::B | Family::C => (1..=n).map(|i| 2 * i - 1).collect(),
    }
}

fn factorial(m: u64) -> BigInt {
    (1..=m).map(BigInt::from).product()
}

pub fn weyl_order(rd: &RootDatum) -> BigInt {
    match rd.family {
        Family::A => factorial(rd.rank as u64 + 1),
        Family::B | Family::C => BigInt::from(2).pow(rd.rank as u32) * factorial(rd.rank as u64),
    }
}

/// Steinberg's closed form
/// `ϖ(ρ) = 2^{-(dim − rank)/2} · ∏ m_i! · ∏_{α>0} B_tr(H_α, H_α)`
/// over the exponents `m_i`, for types B and C.
pub fn steinberg_rho_value(rd: &RootDatum) -> Result<Rational, RootError> {
    if rd.family == Family::A {
        return Err(RootError::Unsupported(
            "Steinberg's formula is only housed for types B and C".into(),
        ));
    }
    let pos = positive_roots(rd);
    // dim − rank = 2·|Φ⁺|.
    let two_power = Rational::two_pow(-(pos.len() as i64));
    let fact: Rational = exponents(rd)
        .into_iter()
        .map(|m| Rational::from_int(factorial(m)))
        .product();
    let norms: Rational = pos
        .iter()
        .map(|a| {
            let h = coroot_btr(a, rd).expect("positive roots are roots");
            h.pairing(&h)
        })
        .product();
    Ok(two_power * fact * norms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QContext {
    RealSplit,
    NonarchSplit,
    Compact,
}

/// Dimension of `Sp(2n)`, `SO(2n+1)` (parameter `n`) or `GL(m)`, `U(m)`.
pub fn group_dim(kind: AtomKind, n: u64) -> u64 {
    match kind {
        AtomKind::Sp | AtomKind::SoOdd => n * (2 * n + 1),
        AtomKind::Gl | AtomKind::U => n * n,
    }
}

/// `(dim G, q(G))` for `Sp(2n)`, `SO(2n+1)`, `GL(m)`, `U(m)`.
///
/// q is half the dimension of the symmetric space in the real case and the
/// split rank of the derived group in the nonarchimedean case.
pub fn dim_and_q(kind: AtomKind, n: u64, ctx: QContext) -> Result<(u64, Rational), RootError> {
    let unsupported = || {
        Err(RootError::Unsupported(format!(
            "no q-value for {kind:?} in context {ctx:?}"
        )))
    };
    let q = |num: u64, den: i64| Rational::new(num as i64, den).expect("nonzero");
    match kind {
        AtomKind::Sp | AtomKind::SoOdd => {
            let dim = group_dim(kind, n);
            let qv = match ctx {
                QContext::RealSplit => q(n * (n + 1), 2),
                QContext::NonarchSplit => q(n, 1),
                QContext::Compact => Rational::zero(),
            };
            Ok((dim, qv))
        }
        AtomKind::Gl => {
            let dim = group_dim(kind, n);
            match ctx {
                // SL(m, ℝ)/SO(m) has dimension (m² + m − 2)/2.
                QContext::RealSplit => Ok((dim, q((n * n + n).saturating_sub(2), 4))),
                QContext::NonarchSplit => Ok((dim, q(n.saturating_sub(1), 1))),
                QContext::Compact => unsupported(),
            }
        }
        AtomKind::U => match ctx {
            QContext::Compact => Ok((n * n, Rational::zero())),
            _ => unsupported(),
        },
    }
}

/// `ξ_α(t) = ∏ t_i^{α_i}` for an integral root α.
fn character(alpha: &Weight, t: &[Rational]) -> Rational {
    alpha
        .0
        .iter()
        .zip(t)
        .map(|(a, ti)| {
            let e = a.to_i64().expect("roots are integral");
            ti.pow(e).expect("nonzero coordinate")
        })
        .product()
}

/// `∏_{α ∈ Φ} (1 − ξ_α(t))` at a regular torus point.
pub fn weyl_discriminant(rd: &RootDatum, t: &[Rational]) -> Result<Rational, RootError> {
    if t.len() != rd.ambient() {
        return Err(RootError::RankMismatch {
            expected: rd.ambient(),
            got: t.len(),
        });
    }
    if t.iter().any(Rational::is_zero) {
        return Err(RootError::ZeroCoordinate);
    }
    let mut acc = Rational::one();
    for a in all_roots(rd) {
        let f = Rational::one() - character(&a, t);
        if f.is_zero() {
            return Err(RootError::SingularPoint(a.to_string()));
        }
        acc *= &f;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioKind {
    /// Both discriminants are nonzero and the value is their quotient.
    PointwiseQuotient,
    /// Some discriminant vanishes; the value is the continuous extension.
    LimitValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantRatio {
    pub value: Rational,
    pub kind: RatioKind,
}

/// `∏ (1 + t_i)(1 + t_i⁻¹)`, which equals `D^C(t) / D^B(t)` at regular points.
pub fn discriminant_ratio(n: usize, t: &[Rational]) -> Result<DiscriminantRatio, RootError> {
    let (b, c) = (RootDatum::b(n)?, RootDatum::c(n)?);
    if t.len() != n {
        return Err(RootError::RankMismatch {
            expected: n,
            got: t.len(),
        });
    }
    if t.iter().any(Rational::is_zero) {
        return Err(RootError::ZeroCoordinate);
    }
    let minus_one = -Rational::one();
    if let Some(i) = t.iter().position(|ti| *ti == minus_one) {
        return Err(RootError::MinusOne(i + 1));
    }
    let one = Rational::one();
    let value = t
        .iter()
        .map(|ti| (&one + ti) * (&one + ti.inv().expect("nonzero")))
        .product();
    let regular = weyl_discriminant(&b, t).is_ok() && weyl_discriminant(&c, t).is_ok();
    Ok(DiscriminantRatio {
        value,
        kind: if regular {
            RatioKind::PointwiseQuotient
        } else {
            RatioKind::LimitValue
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unipotent {
    Identity,
    Other,
}

/// Homogeneity exponent `dim G − dim G_u` of the germ attached to `u`.
/// For `u = 1` the centralizer is all of `G`, whatever the shape.
pub fn germ_exponent(_shape: &GroupShape, u: Unipotent) -> Result<u64, RootError> {
    match u {
        Unipotent::Identity => Ok(0),
        Unipotent::Other => Err(RootError::Unsupported(
            "only the identity unipotent class is housed".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn w(cs: &[&str]) -> Weight {
        Weight(cs.iter().map(|c| q(c)).collect())
    }

    #[test]
    fn positive_root_examples() {
        assert_eq!(positive_roots(&RootDatum::c(1).unwrap()), vec![w(&["2"])]);
        assert_eq!(
            positive_roots(&RootDatum::b(2).unwrap()),
            vec![
                w(&["1", "-1"]),
                w(&["1", "1"]),
                w(&["1", "0"]),
                w(&["0", "1"])
            ]
        );
        let a1 = RootDatum::new(Family::A, 1).unwrap();
        assert_eq!(positive_roots(&a1), vec![w(&["1", "-1"])]);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&RootDatum::c(2).unwrap()), w(&["2", "1"]));
        assert_eq!(rho(&RootDatum::b(2).unwrap()), w(&["3/2", "1/2"]));
        assert_eq!(rho(&RootDatum::c(1).unwrap()), w(&["1"]));
    }

    #[test]
    fn coroot_examples() {
        let c3 = RootDatum::c(3).unwrap();
        let b3 = RootDatum::b(3).unwrap();
        assert_eq!(
            coroot_btr(&w(&["2", "0", "0"]), &c3).unwrap(),
            w(&["2", "0", "0"])
        );
        assert_eq!(
            coroot_btr(&w(&["1", "0", "0"]), &b3).unwrap(),
            w(&["1", "0", "0"])
        );
        assert_eq!(
            coroot_btr(&w(&["1", "-1", "0"]), &c3).unwrap(),
            w(&["1", "-1", "0"])
        );
        assert!(coroot_btr(&w(&["1", "0", "0"]), &c3).is_err());
        assert!(coroot_btr(&w(&["1", "0"]), &c3).is_err());
    }

    #[test]
    fn varpi_examples() {
        let c1 = RootDatum::c(1).unwrap();
        let b1 = RootDatum::b(1).unwrap();
        assert_eq!(varpi_eval(&c1, &w(&["1"])).unwrap(), q("2"));
        assert_eq!(varpi_eval(&c1, &w(&["1/2"])).unwrap(), q("1"));
        assert_eq!(varpi_eval(&b1, &w(&["1/2"])).unwrap(), q("1/2"));
        assert!(varpi_eval(&b1, &w(&["1", "2"])).is_err());
    }

    #[test]
    fn lemma_2n_examples() {
        assert_eq!(lemma_2n_ratios(1).unwrap(), (q("1/2"), q("1/4")));
        assert_eq!(lemma_2n_ratios(2).unwrap(), (q("1/4"), q("1/16")));
        assert_eq!(lemma_2n_ratios(5).unwrap(), (q("1/32"), q("1/1024")));
        assert!(lemma_2n_ratios(0).is_err());
    }

    #[test]
    fn exponent_and_order_examples() {
        assert_eq!(exponents(&RootDatum::c(3).unwrap()), vec![1, 3, 5]);
        assert_eq!(exponents(&RootDatum::b(3).unwrap()), vec![1, 3, 5]);
        let a1 = RootDatum::new(Family::A, 1).unwrap();
        let a2 = RootDatum::new(Family::A, 2).unwrap();
        assert_eq!(exponents(&a1), vec![1]);
        assert_eq!(weyl_order(&RootDatum::c(2).unwrap()), BigInt::from(8));
        assert_eq!(weyl_order(&RootDatum::b(2).unwrap()), BigInt::from(8));
        assert_eq!(weyl_order(&a2), BigInt::from(6));
    }

    #[test]
    fn steinberg_examples() {
        assert_eq!(
            steinberg_rho_value(&RootDatum::c(1).unwrap()).unwrap(),
            q("2")
        );
        assert_eq!(
            steinberg_rho_value(&RootDatum::b(1).unwrap()).unwrap(),
            q("1/2")
        );
        assert_eq!(
            steinberg_rho_value(&RootDatum::c(2).unwrap()).unwrap(),
            q("24")
        );
        let a2 = RootDatum::new(Family::A, 2).unwrap();
        assert!(steinberg_rho_value(&a2).is_err());
    }

    #[test]
    fn dim_q_examples() {
        assert_eq!(
            dim_and_q(AtomKind::Sp, 2, QContext::RealSplit).unwrap(),
            (10, q("3"))
        );
        assert_eq!(
            dim_and_q(AtomKind::SoOdd, 2, QContext::RealSplit).unwrap(),
            (10, q("3"))
        );
        assert_eq!(
            dim_and_q(AtomKind::Sp, 3, QContext::NonarchSplit).unwrap(),
            (21, q("3"))
        );
        // GL(2, ℝ): SL(2,ℝ)/SO(2) is the upper half plane.
        assert_eq!(
            dim_and_q(AtomKind::Gl, 2, QContext::RealSplit).unwrap(),
            (4, q("1"))
        );
        assert!(dim_and_q(AtomKind::U, 2, QContext::RealSplit).is_err());
        assert!(dim_and_q(AtomKind::Gl, 2, QContext::Compact).is_err());
    }

    #[test]
    fn discriminant_examples() {
        let c1 = RootDatum::c(1).unwrap();
        let b1 = RootDatum::b(1).unwrap();
        assert_eq!(weyl_discriminant(&c1, &[q("4")]).unwrap(), q("-225/16"));
        assert_eq!(weyl_discriminant(&b1, &[q("4")]).unwrap(), q("-9/4"));
        assert!(matches!(
            weyl_discriminant(&c1, &[q("-1")]),
            Err(RootError::SingularPoint(_))
        ));
        assert_eq!(weyl_discriminant(&c1, &[q("2")]).unwrap(), q("-9/4"));
    }

    #[test]
    fn ratio_examples() {
        let r = discriminant_ratio(1, &[q("4")]).unwrap();
        assert_eq!(r.value, q("25/4"));
        assert_eq!(r.kind, RatioKind::PointwiseQuotient);
        let r = discriminant_ratio(1, &[q("1")]).unwrap();
        assert_eq!((r.value, r.kind), (q("4"), RatioKind::LimitValue));
        let r = discriminant_ratio(2, &[q("1"), q("1")]).unwrap();
        assert_eq!(r.value, q("16"));
        assert!(matches!(
            discriminant_ratio(1, &[q("-1")]),
            Err(RootError::MinusOne(1))
        ));
    }

    #[test]
    fn germ_identity() {
        let shape = GroupShape::default();
        assert_eq!(germ_exponent(&shape, Unipotent::Identity).unwrap(), 0);
        assert!(germ_exponent(&shape, Unipotent::Other).is_err());
    }
}
