//! Semisimple stable classes of Sp(2n) and SO(2k+1) as factored eigenvalue data.
//!
//! A class is described by the irreducible factors of its characteristic
//! polynomial away from ±1, each with a multiplicity (the rank of the
//! corresponding free module), plus the dimensions of the ±1 eigenspaces.
//! Factors come in two kinds:
//!
//! * `field`: `p` is self-reciprocal, so `K = ℚ[x]/(p)` is a field with the
//!   involution `x ↦ x⁻¹`; the commutant contributes a unitary group.
//! * `split`: `p ≠ p*`; the pair `{p, p*}` gives `K = K♯ × K♯` and the
//!   commutant contributes a general linear group. Only the smaller of the two
//!   (degree, then coefficients from the constant term up) is stored.
//!
//! Forms are not represented: two parameters are equal exactly when the
//! classes are stably conjugate (Sp) or conjugate under `O(V)(F̄)` (SO).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{irreducibility, IrrCheck, Irreducibility, NumError, PolyQ, Rational};
use crate::rootsys;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("invalid class parameter: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("characteristic polynomial does not come from a class: {0}")]
    NotAClass(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.message.as_str())
        .collect::<Vec<_>>()
        .join("; ")
}

/// One violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: String,
    pub message: String,
}

impl Violation {
    fn new(code: &str, message: impl Into<String>) -> Self {
        Violation {
            code: code.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    Field,
    Split,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitaryFactor {
    pub kind: FactorKind,
    pub poly: PolyQ,
    pub rank: u64,
    /// The caller vouches for irreducibility of `poly`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub certified: bool,
}

impl PartialOrd for UnitaryFactor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UnitaryFactor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.poly, self.kind, self.rank, self.certified).cmp(&(
            &other.poly,
            other.kind,
            other.rank,
            other.certified,
        ))
    }
}

impl UnitaryFactor {
    /// Build a factor from any monic irreducible `p` with `p(0), p(±1) ≠ 0`,
    /// deciding the kind and choosing the canonical split representative.
    pub fn from_poly(poly: PolyQ, rank: u64) -> Result<Self, NumError> {
        let star = poly.reciprocal()?;
        Ok(if star == poly {
            UnitaryFactor {
                kind: FactorKind::Field,
                poly,
                rank,
                certified: false,
            }
        } else {
            UnitaryFactor {
                kind: FactorKind::Split,
                poly: poly.min(star),
                rank,
                certified: false,
            }
        })
    }

    pub fn field(poly: PolyQ, rank: u64) -> Self {
        UnitaryFactor {
            kind: FactorKind::Field,
            poly,
            rank,
            certified: false,
        }
    }

    pub fn split(poly: PolyQ, rank: u64) -> Self {
        UnitaryFactor {
            kind: FactorKind::Split,
            poly,
            rank,
            certified: false,
        }
    }

    pub fn degree(&self) -> u64 {
        self.poly.degree().unwrap_or(0) as u64
    }

    /// Number of eigenvalues (without multiplicity) the factor accounts for.
    pub fn effective_degree(&self) -> u64 {
        match self.kind {
            FactorKind::Field => self.degree(),
            FactorKind::Split => 2 * self.degree(),
        }
    }

    /// Total dimension taken up in the ambient space.
    pub fn dimension(&self) -> u64 {
        self.effective_degree() * self.rank
    }

    /// Same factor with rank replaced.
    pub fn with_rank(&self, rank: u64) -> Self {
        UnitaryFactor {
            rank,
            ..self.clone()
        }
    }

    /// The factor whose eigenvalues are the negatives of these.
    pub fn sign_flipped(&self) -> Result<Self, NumError> {
        let mut f = UnitaryFactor::from_poly(self.poly.neg_arg()?, self.rank)?;
        f.certified = self.certified;
        Ok(f)
    }

    /// Identity of the factor ignoring its rank.
    pub fn key(&self) -> (FactorKind, PolyQ) {
        (self.kind, self.poly.clone())
    }

    fn structural_violations(&self, idx: usize) -> Vec<Violation> {
        let mut v = Vec::new();
        let at = |m: String| format!("factor {idx} ({}): {m}", self.poly);
        if self.rank == 0 {
            v.push(Violation::new("rank", at("rank must be positive".into())));
        }
        if !self.poly.is_monic() || self.poly.degree().unwrap_or(0) == 0 {
            v.push(Violation::new(
                "monic",
                at("must be monic of positive degree".into()),
            ));
            return v;
        }
        let one = Rational::one();
        for (x, code) in [
            (Rational::zero(), "root-zero"),
            (one.clone(), "root-plus-one"),
            (-one, "root-minus-one"),
        ] {
            if self.poly.eval(&x).is_zero() {
                v.push(Violation::new(code, at(format!("vanishes at {x}"))));
            }
        }
        if !v.is_empty() {
            return v;
        }
        let star = self
            .poly
            .reciprocal()
            .expect("checked monic with unit constant");
        match self.kind {
            FactorKind::Field => {
                if star != self.poly {
                    v.push(Violation::new(
                        "kind",
                        at("field kind requires a self-reciprocal polynomial".into()),
                    ));
                } else if self.degree() % 2 == 1 {
                    v.push(Violation::new(
                        "kind",
                        at("field kind requires even degree".into()),
                    ));
                }
            }
            FactorKind::Split => {
                if star == self.poly {
                    v.push(Violation::new(
                        "kind",
                        at("split kind requires p ≠ p*".into()),
                    ));
                } else if star < self.poly {
                    v.push(Violation::new(
                        "canonical",
                        at(format!("split representative should be {star}")),
                    ));
                }
            }
        }
        v
    }
}

impl fmt::Display for UnitaryFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            FactorKind::Field => "field",
            FactorKind::Split => "split",
        };
        write!(f, "{kind}[{}]^{}", self.poly, self.rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "group", rename = "Sp", from = "RawSp")]
pub struct SpClassParam {
    pub n: u64,
    #[serde(default)]
    pub factors: Vec<UnitaryFactor>,
    pub dim_plus: u64,
    pub dim_minus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "group", rename = "SO", from = "RawSo")]
pub struct SoClassParam {
    pub size: u64,
    #[serde(default)]
    pub factors: Vec<UnitaryFactor>,
    pub dim_plus: u64,
    pub dim_minus: u64,
}

// Deserialization goes through these so that a wrong "group" tag is rejected.
#[derive(Deserialize)]
enum SpTag {
    Sp,
}

#[derive(Deserialize)]
enum SoTag {
    #[serde(rename = "SO")]
    So,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSp {
    #[allow(dead_code)]
    group: SpTag,
    n: u64,
    #[serde(default)]
    factors: Vec<UnitaryFactor>,
    dim_plus: u64,
    dim_minus: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSo {
    #[allow(dead_code)]
    group: SoTag,
    size: u64,
    #[serde(default)]
    factors: Vec<UnitaryFactor>,
    dim_plus: u64,
    dim_minus: u64,
}

impl From<RawSp> for SpClassParam {
    fn from(r: RawSp) -> Self {
        SpClassParam {
            n: r.n,
            factors: r.factors,
            dim_plus: r.dim_plus,
            dim_minus: r.dim_minus,
        }
    }
}

impl From<RawSo> for SoClassParam {
    fn from(r: RawSo) -> Self {
        SoClassParam {
            size: r.size,
            factors: r.factors,
            dim_plus: r.dim_plus,
            dim_minus: r.dim_minus,
        }
    }
}

/// Sort factors and merge equal canonical representatives by adding ranks.
/// Returns the merged list and the keys that were merged.
pub(crate) fn merge_factors(
    factors: impl IntoIterator<Item = UnitaryFactor>,
) -> (Vec<UnitaryFactor>, Vec<UnitaryFactor>) {
    let mut map: BTreeMap<(PolyQ, FactorKind), UnitaryFactor> = BTreeMap::new();
    let mut merged = Vec::new();
    for f in factors {
        match map.get_mut(&(f.poly.clone(), f.kind)) {
            Some(existing) => {
                existing.rank += f.rank;
                existing.certified &= f.certified;
                merged.push(f.with_rank(0));
            }
            None => {
                map.insert((f.poly.clone(), f.kind), f);
            }
        }
    }
    merged.sort();
    merged.dedup();
    (map.into_values().collect(), merged)
}

fn irreducibility_notes(
    factors: &[UnitaryFactor],
) -> (Vec<Violation>, Vec<String>, Vec<FactorCheck>) {
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    let mut checks = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        if f.certified {
            checks.push(FactorCheck {
                factor: i,
                check: Some(IrrCheck::CallerCertified),
            });
            continue;
        }
        match irreducibility(&f.poly) {
            Irreducibility::Irreducible { by } => checks.push(FactorCheck {
                factor: i,
                check: Some(by),
            }),
            Irreducibility::Reducible { by } => {
                violations.push(Violation::new(
                    "irreducible",
                    format!("factor {i} ({}) is reducible", f.poly),
                ));
                checks.push(FactorCheck {
                    factor: i,
                    check: Some(by),
                });
            }
            Irreducibility::Unknown => {
                warnings.push(format!(
                    "factor {i} ({}): irreducibility could not be decided",
                    f.poly
                ));
                checks.push(FactorCheck {
                    factor: i,
                    check: None,
                });
            }
        }
    }
    (violations, warnings, checks)
}

fn shared_violations(factors: &[UnitaryFactor]) -> Vec<Violation> {
    let mut v: Vec<Violation> = factors
        .iter()
        .enumerate()
        .flat_map(|(i, f)| f.structural_violations(i))
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for f in factors {
        if !seen.insert((f.poly.clone(), f.kind)) {
            v.push(Violation::new(
                "distinct",
                format!("factor {} repeated; carry multiplicity in the rank", f.poly),
            ));
        }
    }
    v
}

/// Which check settled irreducibility of each factor (`None` = undecided).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorCheck {
    pub factor: usize,
    pub check: Option<IrrCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub warnings: Vec<String>,
    pub irreducibility: Vec<FactorCheck>,
}

impl SpClassParam {
    pub fn identity(n: u64) -> Self {
        SpClassParam {
            n,
            factors: vec![],
            dim_plus: 2 * n,
            dim_minus: 0,
        }
    }

    pub fn minus_identity(n: u64) -> Self {
        SpClassParam {
            n,
            factors: vec![],
            dim_plus: 0,
            dim_minus: 2 * n,
        }
    }

    fn structural(&self) -> Vec<Violation> {
        let mut v = shared_violations(&self.factors);
        if self.dim_plus % 2 == 1 {
            v.push(Violation::new("parity", "dim_plus must be even"));
        }
        if self.dim_minus % 2 == 1 {
            v.push(Violation::new("parity", "dim_minus must be even"));
        }
        let total: u64 = self
            .factors
            .iter()
            .map(UnitaryFactor::dimension)
            .sum::<u64>()
            + self.dim_plus
            + self.dim_minus;
        if total != 2 * self.n {
            v.push(Violation::new(
                "dimension",
                format!("dimensions add up to {total}, expected 2n = {}", 2 * self.n),
            ));
        }
        v
    }

    /// Structural invariants only (no irreducibility test).
    pub fn check(&self) -> Result<(), ClassError> {
        let v = self.structural();
        if v.is_empty() {
            Ok(())
        } else {
            Err(ClassError::Invalid(v))
        }
    }

    /// Sorted, merged, with canonical split representatives.
    pub fn canonical(&self) -> Result<Self, NumError> {
        let fs = self
            .factors
            .iter()
            .map(|f| {
                let mut g = UnitaryFactor::from_poly(f.poly.clone(), f.rank)?;
                g.certified = f.certified;
                Ok(g)
            })
            .collect::<Result<Vec<_>, NumError>>()?;
        Ok(SpClassParam {
            factors: merge_factors(fs).0,
            ..self.clone()
        })
    }
}

impl SoClassParam {
    pub fn identity(size: u64) -> Self {
        SoClassParam {
            size,
            factors: vec![],
            dim_plus: size,
            dim_minus: 0,
        }
    }

    /// `k` for `SO(2k+1)`.
    pub fn k(&self) -> u64 {
        self.size / 2
    }

    fn structural(&self) -> Vec<Violation> {
        let mut v = shared_violations(&self.factors);
        if self.size % 2 == 0 {
            v.push(Violation::new("parity", "size must be odd"));
        }
        if self.dim_minus % 2 == 1 {
            v.push(Violation::new("parity", "dim_minus must be even"));
        }
        if self.dim_plus % 2 == 0 {
            v.push(Violation::new("parity", "dim_plus must be odd"));
        }
        let total: u64 = self
            .factors
            .iter()
            .map(UnitaryFactor::dimension)
            .sum::<u64>()
            + self.dim_plus
            + self.dim_minus;
        if total != self.size {
            v.push(Violation::new(
                "dimension",
                format!("dimensions add up to {total}, expected {}", self.size),
            ));
        }
        v
    }

    pub fn check(&self) -> Result<(), ClassError> {
        let v = self.structural();
        if v.is_empty() {
            Ok(())
        } else {
            Err(ClassError::Invalid(v))
        }
    }

    pub fn canonical(&self) -> Result<Self, NumError> {
        let fs = self
            .factors
            .iter()
            .map(|f| {
                let mut g = UnitaryFactor::from_poly(f.poly.clone(), f.rank)?;
                g.certified = f.certified;
                Ok(g)
            })
            .collect::<Result<Vec<_>, NumError>>()?;
        Ok(SoClassParam {
            factors: merge_factors(fs).0,
            ..self.clone()
        })
    }
}

fn report(
    mut violations: Vec<Violation>,
    factors: &[UnitaryFactor],
) -> Result<ValidationReport, ClassError> {
    // Irreducibility only makes sense once the factor itself is well formed.
    let (irr_v, warnings, checks) = if violations.is_empty() {
        irreducibility_notes(factors)
    } else {
        (vec![], vec![], vec![])
    };
    violations.extend(irr_v);
    if violations.is_empty() {
        Ok(ValidationReport {
            valid: true,
            warnings,
            irreducibility: checks,
        })
    } else {
        Err(ClassError::Invalid(violations))
    }
}

pub fn validate_sp(p: &SpClassParam) -> Result<ValidationReport, ClassError> {
    report(p.structural(), &p.factors)
}

pub fn validate_so(p: &SoClassParam) -> Result<ValidationReport, ClassError> {
    report(p.structural(), &p.factors)
}

/// A characteristic polynomial as a multiset of monic irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct FactoredPoly(pub BTreeMap<PolyQ, u64>);

impl FactoredPoly {
    pub fn add(&mut self, p: PolyQ, m: u64) {
        if m > 0 {
            *self.0.entry(p).or_insert(0) += m;
        }
    }

    /// Remove `m` copies of `p`; `None` if there are fewer.
    pub fn remove(&mut self, p: &PolyQ, m: u64) -> Option<()> {
        if m == 0 {
            return Some(());
        }
        let e = self.0.get_mut(p)?;
        if *e < m {
            return None;
        }
        *e -= m;
        if *e == 0 {
            self.0.remove(p);
        }
        Some(())
    }

    pub fn degree(&self) -> u64 {
        self.0
            .iter()
            .map(|(p, m)| p.degree().unwrap_or(0) as u64 * m)
            .sum()
    }

    pub fn expand(&self) -> PolyQ {
        self.0
            .iter()
            .fold(PolyQ::one(), |acc, (p, m)| &acc * &p.pow(*m as usize))
    }

    /// Multiset with every root negated.
    pub fn sign_flipped(&self) -> Result<Self, NumError> {
        let mut out = FactoredPoly::default();
        for (p, m) in &self.0 {
            out.add(p.neg_arg()?, *m);
        }
        Ok(out)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, m) in &other.0 {
            out.add(p.clone(), *m);
        }
        out
    }

    pub fn multiplicity(&self, p: &PolyQ) -> u64 {
        self.0.get(p).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> Vec<(PolyQ, u64)> {
        self.0.iter().map(|(p, m)| (p.clone(), *m)).collect()
    }
}

pub(crate) fn x_minus_one() -> PolyQ {
    PolyQ::x_minus(Rational::one())
}

pub(crate) fn x_plus_one() -> PolyQ {
    PolyQ::x_minus(-Rational::one())
}

fn charpoly_of(factors: &[UnitaryFactor], plus: u64, minus: u64) -> Result<FactoredPoly, NumError> {
    let mut out = FactoredPoly::default();
    for f in factors {
        out.add(f.poly.clone(), f.rank);
        if f.kind == FactorKind::Split {
            out.add(f.poly.reciprocal()?, f.rank);
        }
    }
    out.add(x_minus_one(), plus);
    out.add(x_plus_one(), minus);
    Ok(out)
}

/// Either parameter kind, for operations that accept both.
#[derive(Debug, Clone, Copy)]
pub enum AnyParam<'a> {
    Sp(&'a SpClassParam),
    So(&'a SoClassParam),
}

pub fn char_poly(p: AnyParam<'_>) -> Result<FactoredPoly, ClassError> {
    match p {
        AnyParam::Sp(p) => {
            p.check()?;
            Ok(charpoly_of(&p.factors, p.dim_plus, p.dim_minus)?)
        }
        AnyParam::So(p) => {
            p.check()?;
            Ok(charpoly_of(&p.factors, p.dim_plus, p.dim_minus)?)
        }
    }
}

/// Group the factors of a characteristic polynomial back into class data:
/// `(factors, dim_plus, dim_minus)`.
fn factors_from_charpoly(cp: &FactoredPoly) -> Result<(Vec<UnitaryFactor>, u64, u64), ClassError> {
    let plus = cp.multiplicity(&x_minus_one());
    let minus = cp.multiplicity(&x_plus_one());
    let mut factors = Vec::new();
    for (p, m) in &cp.0 {
        if *p == x_minus_one() || *p == x_plus_one() {
            continue;
        }
        let f = UnitaryFactor::from_poly(p.clone(), *m)?;
        match f.kind {
            FactorKind::Field => factors.push(f),
            FactorKind::Split => {
                let star = p.reciprocal()?;
                if cp.multiplicity(&star) != *m {
                    return Err(ClassError::NotAClass(format!(
                        "{p} and its reciprocal {star} have different multiplicities"
                    )));
                }
                if f.poly == *p {
                    factors.push(f);
                }
            }
        }
    }
    factors.sort();
    Ok((factors, plus, minus))
}

pub fn sp_from_charpoly(cp: &FactoredPoly) -> Result<SpClassParam, ClassError> {
    let (factors, dim_plus, dim_minus) = factors_from_charpoly(cp)?;
    let deg = cp.degree();
    let p = SpClassParam {
        n: deg / 2,
        factors,
        dim_plus,
        dim_minus,
    };
    p.check()?;
    Ok(p)
}

pub fn so_from_charpoly(cp: &FactoredPoly) -> Result<SoClassParam, ClassError> {
    let (factors, dim_plus, dim_minus) = factors_from_charpoly(cp)?;
    let p = SoClassParam {
        size: cp.degree(),
        factors,
        dim_plus,
        dim_minus,
    };
    p.check()?;
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AtomKind {
    Sp,
    #[serde(rename = "SO_odd")]
    SoOdd,
    #[serde(rename = "GL")]
    Gl,
    U,
}

/// The base field of an atom: ℚ, or a number field named by a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "lowercase")]
pub enum BaseField {
    Rationals,
    Number { degree: u64, label: PolyQ },
}

impl BaseField {
    pub fn degree(&self) -> u64 {
        match self {
            BaseField::Rationals => 1,
            BaseField::Number { degree, .. } => *degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Atom {
    pub kind: AtomKind,
    /// Matrix size: `2n` for Sp, `2k+1` for SO, `m` for GL/U.
    pub size: u64,
    pub base: BaseField,
}

impl Atom {
    pub fn sp(size: u64) -> Self {
        Atom {
            kind: AtomKind::Sp,
            size,
            base: BaseField::Rationals,
        }
    }

    pub fn so(size: u64) -> Self {
        Atom {
            kind: AtomKind::SoOdd,
            size,
            base: BaseField::Rationals,
        }
    }

    /// The parameter `n` for Sp(2n)/SO(2n+1), or `m` for GL(m)/U(m).
    pub fn rank_parameter(&self) -> u64 {
        match self.kind {
            AtomKind::Sp | AtomKind::SoOdd => self.size / 2,
            AtomKind::Gl | AtomKind::U => self.size,
        }
    }

    /// Dimension over ℚ (restriction of scalars multiplies by the base degree).
    pub fn dimension(&self) -> u64 {
        self.base.degree() * rootsys::group_dim(self.kind, self.rank_parameter())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            AtomKind::Sp => "Sp",
            AtomKind::SoOdd => "SO",
            AtomKind::Gl => "GL",
            AtomKind::U => "U",
        };
        match &self.base {
            BaseField::Rationals => write!(f, "{name}({})", self.size),
            BaseField::Number { label, .. } => write!(f, "{name}({})/[{label}]", self.size),
        }
    }
}

/// A commutant recorded as a product of simple atoms. `so_even_part` is set
/// when an orthogonal group commutes with a `−1` eigenspace; that factor is
/// outside the atom kinds and its component group is not tracked.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GroupShape {
    pub atoms: Vec<Atom>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub so_even_part: Option<u64>,
}

impl GroupShape {
    pub fn dimension(&self) -> u64 {
        let extra = self.so_even_part.map_or(0, |r| r * r.saturating_sub(1) / 2);
        self.atoms.iter().map(Atom::dimension).sum::<u64>() + extra
    }

    pub fn concat(&self, other: &GroupShape) -> GroupShape {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        let so_even_part = match (self.so_even_part, other.so_even_part) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(0) + b.unwrap_or(0)),
        };
        GroupShape {
            atoms,
            so_even_part,
        }
    }
}

/// Trace polynomial: for a palindromic `p` of degree `2d`, the `q` of degree
/// `d` with `p(x) = x^d · q(x + 1/x)`. Defines the fixed field `K♯`.
pub fn trace_polynomial(p: &PolyQ) -> PolyQ {
    let deg = p.degree().expect("nonzero");
    let d = deg / 2;
    let y = PolyQ::from_ints(&[0, 1]);
    // D_k(y) = x^k + x^{-k}: D_0 = 2, D_1 = y, D_k = y·D_{k-1} − D_{k-2}.
    let mut dk = vec![PolyQ::from_ints(&[2]), y.clone()];
    for k in 2..=d {
        let next = &(&y * &dk[k - 1]) - &dk[k - 2];
        dk.push(next);
    }
    let mut q = PolyQ::constant(p.coeff(d));
    for (k, dk) in dk.iter().enumerate().skip(1) {
        q = &q + &dk.scale(&p.coeff(d + k));
    }
    q
}

/// Field label insensitive to the sign flip `x ↦ −x`, so that a factor and
/// its sign-flipped image name the same field.
pub fn field_label(f: &UnitaryFactor) -> Result<BaseField, NumError> {
    match f.kind {
        FactorKind::Field => {
            let q = trace_polynomial(&f.poly);
            let flipped = q.neg_arg()?;
            let d = q.degree().unwrap_or(0) as u64;
            Ok(BaseField::Number {
                degree: d,
                label: q.min(flipped),
            })
        }
        FactorKind::Split => {
            let p = &f.poly;
            let star = p.reciprocal()?;
            let label = [p.neg_arg()?, star.neg_arg()?, star, p.clone()]
                .into_iter()
                .min()
                .expect("nonempty");
            Ok(BaseField::Number {
                degree: f.degree(),
                label,
            })
        }
    }
}

fn unitary_atoms(factors: &[UnitaryFactor]) -> Result<Vec<Atom>, NumError> {
    factors
        .iter()
        .map(|f| {
            let base = field_label(f)?;
            let base = match base {
                BaseField::Number { degree: 1, .. } => BaseField::Rationals,
                other => other,
            };
            Ok(Atom {
                kind: match f.kind {
                    FactorKind::Field => AtomKind::U,
                    FactorKind::Split => AtomKind::Gl,
                },
                size: f.rank,
                base,
            })
        })
        .collect()
}

pub fn commutant_shape_sp(p: &SpClassParam) -> Result<GroupShape, ClassError> {
    p.check()?;
    let mut atoms = unitary_atoms(&p.factors)?;
    atoms.extend(
        [p.dim_plus, p.dim_minus]
            .into_iter()
            .filter(|&d| d > 0)
            .map(Atom::sp),
    );
    Ok(GroupShape {
        atoms,
        so_even_part: None,
    })
}

pub fn commutant_shape_so(p: &SoClassParam) -> Result<GroupShape, ClassError> {
    p.check()?;
    let mut atoms = unitary_atoms(&p.factors)?;
    if p.dim_plus > 1 {
        atoms.push(Atom::so(p.dim_plus));
    }
    Ok(GroupShape {
        atoms,
        so_even_part: (p.dim_minus > 0).then_some(p.dim_minus),
    })
}

/// Centralizer dimension read off the eigenvalue multiplicities alone.
pub fn centralizer_dim_from_charpoly(cp: &FactoredPoly, symplectic: bool) -> u64 {
    let mut generic = 0u64;
    let mut special = 0u64;
    for (p, m) in &cp.0 {
        if *p == x_minus_one() || *p == x_plus_one() {
            special += if symplectic {
                m * (m + 1) / 2
            } else {
                m * m.saturating_sub(1) / 2
            };
        } else {
            // Each root λ ≠ ±1 pairs with λ⁻¹; a pair of multiplicity m gives GL_m.
            generic += p.degree().unwrap_or(0) as u64 * m * m;
        }
    }
    generic / 2 + special
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> PolyQ {
        PolyQ::from_ints(cs)
    }

    fn golden() -> PolyQ {
        p(&[1, -3, 1])
    }

    #[test]
    fn validate_sp_examples() {
        assert!(validate_sp(&SpClassParam::identity(1)).is_ok());
        let d = SpClassParam {
            n: 2,
            factors: vec![UnitaryFactor::field(golden(), 1)],
            dim_plus: 2,
            dim_minus: 0,
        };
        let r = validate_sp(&d).unwrap();
        assert!(r.valid && r.warnings.is_empty());
        let bad = SpClassParam {
            n: 1,
            factors: vec![],
            dim_plus: 1,
            dim_minus: 0,
        };
        let Err(ClassError::Invalid(v)) = validate_sp(&bad) else {
            panic!("expected failure")
        };
        assert!(v.iter().any(|x| x.code == "parity"));
    }

    #[test]
    fn validate_lists_every_violation() {
        let bad = SpClassParam {
            n: 3,
            factors: vec![UnitaryFactor::split(
                PolyQ::x_minus("1/2".parse().unwrap()),
                1,
            )],
            dim_plus: 1,
            dim_minus: 1,
        };
        let Err(ClassError::Invalid(v)) = validate_sp(&bad) else {
            panic!("expected failure")
        };
        let codes: Vec<&str> = v.iter().map(|x| x.code.as_str()).collect();
        assert!(codes.contains(&"canonical"));
        assert!(codes.contains(&"parity"));
        assert!(codes.contains(&"dimension"));
    }

    #[test]
    fn reducible_factor_is_rejected() {
        // X^4 + X^2 + 1 = (X^2 + X + 1)(X^2 − X + 1) is palindromic but reducible.
        let f = p(&[1, 0, 1, 0, 1]);
        let d = SpClassParam {
            n: 2,
            factors: vec![UnitaryFactor::field(f, 1)],
            dim_plus: 0,
            dim_minus: 0,
        };
        let Err(ClassError::Invalid(v)) = validate_sp(&d) else {
            panic!("expected failure")
        };
        assert_eq!(v[0].code, "irreducible");
    }

    #[test]
    fn validate_so_examples() {
        assert!(validate_so(&SoClassParam::identity(3)).is_ok());
        let g = SoClassParam {
            size: 5,
            factors: vec![UnitaryFactor::split(p(&[-2, 1]), 1)],
            dim_plus: 3,
            dim_minus: 0,
        };
        assert!(validate_so(&g).is_ok());
        let bad = SoClassParam {
            size: 3,
            factors: vec![],
            dim_plus: 1,
            dim_minus: 1,
        };
        assert!(validate_so(&bad).is_err());
    }

    #[test]
    fn char_poly_examples() {
        let one = char_poly(AnyParam::Sp(&SpClassParam::identity(1))).unwrap();
        assert_eq!(one.entries(), vec![(x_minus_one(), 2)]);
        let so = char_poly(AnyParam::So(&SoClassParam::identity(3))).unwrap();
        assert_eq!(so.entries(), vec![(x_minus_one(), 3)]);
        let bad = SpClassParam {
            n: 2,
            factors: vec![UnitaryFactor::split(p(&[-2, 1]), 1)],
            dim_plus: 0,
            dim_minus: 0,
        };
        assert!(char_poly(AnyParam::Sp(&bad)).is_err());
        let good = SpClassParam { dim_plus: 2, ..bad };
        let cp = char_poly(AnyParam::Sp(&good)).unwrap();
        let half = PolyQ::x_minus("1/2".parse().unwrap());
        assert_eq!(cp.multiplicity(&p(&[-2, 1])), 1);
        assert_eq!(cp.multiplicity(&half), 1);
        assert_eq!(cp.multiplicity(&x_minus_one()), 2);
        assert_eq!(cp.degree(), 4);
    }

    #[test]
    fn commutant_examples() {
        assert_eq!(
            commutant_shape_sp(&SpClassParam::identity(1))
                .unwrap()
                .atoms,
            vec![Atom::sp(2)]
        );
        assert_eq!(
            commutant_shape_sp(&SpClassParam::minus_identity(1))
                .unwrap()
                .atoms,
            vec![Atom::sp(2)]
        );
        let d = SpClassParam {
            n: 2,
            factors: vec![UnitaryFactor::field(golden(), 1)],
            dim_plus: 2,
            dim_minus: 0,
        };
        let shape = commutant_shape_sp(&d).unwrap();
        assert_eq!(shape.atoms.len(), 2);
        assert_eq!(shape.atoms[0].kind, AtomKind::U);
        assert_eq!(shape.atoms[0].base, BaseField::Rationals);
        assert_eq!(shape.atoms[1], Atom::sp(2));

        assert_eq!(
            commutant_shape_so(&SoClassParam::identity(3))
                .unwrap()
                .atoms,
            vec![Atom::so(3)]
        );
        let g = SoClassParam {
            size: 5,
            factors: vec![UnitaryFactor::split(p(&[-2, 1]), 1)],
            dim_plus: 3,
            dim_minus: 0,
        };
        let s = commutant_shape_so(&g).unwrap();
        assert_eq!(s.atoms[0].kind, AtomKind::Gl);
        assert_eq!(s.atoms[1], Atom::so(3));
        let caveat = SoClassParam {
            size: 3,
            factors: vec![],
            dim_plus: 1,
            dim_minus: 2,
        };
        let s = commutant_shape_so(&caveat).unwrap();
        assert!(s.atoms.is_empty());
        assert_eq!(s.so_even_part, Some(2));
    }

    #[test]
    fn trace_polynomials() {
        // X^2 − 3X + 1 = X (y − 3) with y = X + 1/X.
        assert_eq!(trace_polynomial(&golden()), p(&[-3, 1]));
        // Φ5 = X^2 (y^2 + y − 1).
        assert_eq!(trace_polynomial(&p(&[1, 1, 1, 1, 1])), p(&[-1, 1, 1]));
    }

    #[test]
    fn labels_ignore_sign_flip() {
        let f = UnitaryFactor::field(p(&[1, 1, 1, 1, 1]), 1);
        let g = f.sign_flipped().unwrap();
        assert_eq!(g.poly, p(&[1, -1, 1, -1, 1]));
        assert_eq!(field_label(&f).unwrap(), field_label(&g).unwrap());
        let s = UnitaryFactor::split(p(&[-2, 1]), 1);
        let t = s.sign_flipped().unwrap();
        assert_eq!(field_label(&s).unwrap(), field_label(&t).unwrap());
    }

    #[test]
    fn canonical_merges_and_normalizes() {
        let d = SpClassParam {
            n: 3,
            factors: vec![
                UnitaryFactor::split(PolyQ::x_minus("1/2".parse().unwrap()), 1),
                UnitaryFactor::split(p(&[-2, 1]), 1),
            ],
            dim_plus: 2,
            dim_minus: 0,
        };
        let c = d.canonical().unwrap();
        assert_eq!(c.factors, vec![UnitaryFactor::split(p(&[-2, 1]), 2)]);
        assert!(c.check().is_ok());
    }

    #[test]
    fn json_schema() {
        let d = SpClassParam {
            n: 2,
            factors: vec![UnitaryFactor::field(golden(), 1)],
            dim_plus: 2,
            dim_minus: 0,
        };
        let js = serde_json::to_value(&d).unwrap();
        assert_eq!(
            js,
            serde_json::json!({
                "group": "Sp", "n": 2,
                "factors": [{"kind": "field", "poly": ["1", "-3", "1"], "rank": 1}],
                "dim_plus": 2, "dim_minus": 0
            })
        );
        let back: SpClassParam = serde_json::from_value(js).unwrap();
        assert_eq!(back, d);
        let so: SoClassParam = serde_json::from_str(
            r#"{"group":"SO","size":3,"factors":[],"dim_plus":3,"dim_minus":0}"#,
        )
        .unwrap();
        assert_eq!(so, SoClassParam::identity(3));
        assert!(serde_json::from_str::<SoClassParam>(
            r#"{"group":"Sp","size":3,"factors":[],"dim_plus":3,"dim_minus":0}"#
        )
        .is_err());
    }
}
