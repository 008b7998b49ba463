//! The bijection between equi-singular pairs and (δ, choice of factors), the
//! character κ, the integer `t`, and the matching of commutants.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::correspond::{correspond, flip_factor, FactorOrigin};
use super::{EndoDatum, EndoError, EquiSingPair, FactorSplit, GammaPair};
use crate::classparam::{
    commutant_shape_so, commutant_shape_sp, Atom, AtomKind, FactorKind, GroupShape, SoClassParam,
    SpClassParam,
};
use crate::rootsys::group_dim;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BijectionMode {
    /// δ must have only field-kind factors.
    #[default]
    Elliptic,
    /// Split factors are allowed and are placed by `gl_second`.
    Relaxed,
}

fn check_indices(
    delta: &SpClassParam,
    idx: &[usize],
    kind: FactorKind,
    what: &'static str,
) -> Result<BTreeSet<usize>, EndoError> {
    let mut seen = BTreeSet::new();
    for &i in idx {
        let f = delta.factors.get(i).ok_or(EndoError::BadIndex(i))?;
        if !seen.insert(i) {
            return Err(EndoError::BadIndex(i));
        }
        if f.kind != kind {
            return Err(EndoError::KindMismatch(i, what));
        }
    }
    Ok(seen)
}

/// Build the equi-singular pair attached to δ and a choice of factors.
///
/// `isecond` lists field-kind factor indices (into the canonical `δ.factors`)
/// sent to the second side; `gl_second` does the same for split-kind factors
/// and must be empty in elliptic mode. Every other factor goes to the first
/// side. The `+1` eigenspace of δ goes to γ′ and the `−1` eigenspace to γ″.
pub fn bijection_forward(
    delta: &SpClassParam,
    isecond: &[usize],
    gl_second: &[usize],
    mode: BijectionMode,
) -> Result<EquiSingPair, EndoError> {
    delta.check()?;
    if *delta != delta.canonical()? {
        return Err(EndoError::NotCanonical);
    }
    if mode == BijectionMode::Elliptic && delta.factors.iter().any(|f| f.kind == FactorKind::Split)
    {
        return Err(EndoError::NonElliptic);
    }
    let field = check_indices(
        delta,
        isecond,
        FactorKind::Field,
        "isecond takes field factors",
    )?;
    let split = check_indices(
        delta,
        gl_second,
        FactorKind::Split,
        "gl_second takes split factors",
    )?;
    let second: BTreeSet<usize> = field.union(&split).copied().collect();

    let mut fp = Vec::new();
    let mut fs = Vec::new();
    let mut iprime = Vec::new();
    for (i, f) in delta.factors.iter().enumerate() {
        if second.contains(&i) {
            fs.push(flip_factor(f)?);
        } else {
            fp.push(f.clone());
            iprime.push(i);
        }
    }
    let dim_p: u64 = fp.iter().map(|f| f.dimension()).sum();
    let dim_s: u64 = fs.iter().map(|f| f.dimension()).sum();
    let gp = SoClassParam {
        size: dim_p + delta.dim_plus + 1,
        factors: fp,
        dim_plus: delta.dim_plus + 1,
        dim_minus: 0,
    }
    .canonical()?;
    let gs = SoClassParam {
        size: dim_s + delta.dim_minus + 1,
        factors: fs,
        dim_plus: delta.dim_minus + 1,
        dim_minus: 0,
    }
    .canonical()?;
    let gamma = GammaPair(gp, gs);
    Ok(EquiSingPair {
        datum: gamma.datum(),
        gamma,
        delta: delta.clone(),
        split: FactorSplit {
            iprime,
            isecond: second.into_iter().collect(),
        },
    })
}

/// Output of the inverse map: δ with the factor split, and the split
/// separated by kind in the shape `bijection_forward` expects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversePair {
    pub delta: SpClassParam,
    pub split: FactorSplit,
    pub isecond: Vec<usize>,
    pub gl_second: Vec<usize>,
}

pub fn bijection_inverse(datum: EndoDatum, gamma: &GammaPair) -> Result<InversePair, EndoError> {
    if gamma.datum() != datum {
        return Err(EndoError::DatumMismatch(
            datum.nprime,
            datum.nsecond,
            2 * gamma.datum().n(),
        ));
    }
    let c = correspond(gamma)?;
    if let Some(f) = c.fused.first() {
        return Err(EndoError::NotEquiSingular(format!(
            "factor {f} arises on both sides"
        )));
    }
    if gamma.prime().dim_minus > 0 || gamma.second().dim_minus > 0 {
        return Err(EndoError::NotEquiSingular(
            "−1 is an eigenvalue of γ′ or γ″".into(),
        ));
    }
    let mut split = FactorSplit::default();
    let (mut isecond, mut gl_second) = (Vec::new(), Vec::new());
    for (i, (f, o)) in c.delta.factors.iter().zip(&c.origins).enumerate() {
        match o {
            FactorOrigin::Prime => split.iprime.push(i),
            _ => {
                split.isecond.push(i);
                match f.kind {
                    FactorKind::Field => isecond.push(i),
                    FactorKind::Split => gl_second.push(i),
                }
            }
        }
    }
    Ok(InversePair {
        delta: c.delta,
        split,
        isecond,
        gl_second,
    })
}

/// The character κ on `(ℤ/2)^{S′} × (ℤ/2)^{S″}`: trivial on the first block,
/// the product of signs on the second. Blocks are the field-kind factors of
/// δ on each side, listed by index into `δ.factors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaCharacter {
    pub sprime: usize,
    pub ssecond: usize,
    pub first_block: Vec<usize>,
    pub second_block: Vec<usize>,
}

impl KappaCharacter {
    /// `κ(x, y) = ∏ y_j` for sign vectors `x ∈ {±1}^{S′}`, `y ∈ {±1}^{S″}`.
    pub fn eval(&self, x: &[i8], y: &[i8]) -> Result<i8, EndoError> {
        if x.len() != self.sprime || y.len() != self.ssecond {
            return Err(EndoError::InvalidPair(format!(
                "κ takes {} + {} signs",
                self.sprime, self.ssecond
            )));
        }
        if x.iter().chain(y).any(|s| *s != 1 && *s != -1) {
            return Err(EndoError::InvalidPair("κ takes signs ±1".into()));
        }
        Ok(y.iter().product())
    }

    /// Indices of δ's factors on which κ is nontrivial.
    pub fn recovered_isecond(&self) -> &[usize] {
        &self.second_block
    }
}

pub fn kappa_of(pair: &EquiSingPair) -> Result<KappaCharacter, EndoError> {
    pair.check()?;
    let field = |idx: &[usize]| -> Vec<usize> {
        idx.iter()
            .copied()
            .filter(|&i| pair.delta.factors[i].kind == FactorKind::Field)
            .collect()
    };
    let first_block = field(&pair.split.iprime);
    let second_block = field(&pair.split.isecond);
    Ok(KappaCharacter {
        sprime: first_block.len(),
        ssecond: second_block.len(),
        first_block,
        second_block,
    })
}

/// `t = ½(dim V′_+ + dim V″_+ − 2) = ½(dim W_+ + dim W_−)`; both sides are
/// computed and must agree.
pub fn t_value(pair: &EquiSingPair) -> Result<u64, EndoError> {
    pair.check()?;
    let from_gamma = (pair.gamma.prime().dim_plus + pair.gamma.second().dim_plus - 2) / 2;
    let from_delta = (pair.delta.dim_plus + pair.delta.dim_minus) / 2;
    if from_gamma != from_delta {
        return Err(EndoError::InvalidPair(format!(
            "t from γ is {from_gamma}, from δ is {from_delta}"
        )));
    }
    Ok(from_gamma)
}

/// An `Sp(2a)` factor of `G_δ` against an `SO(2a+1)` factor of `H_γ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonstandardPair {
    pub sp: Atom,
    pub so: Atom,
    pub dimension: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutantPairing {
    pub g_shape: GroupShape,
    pub h_shape: GroupShape,
    /// Unitary atoms of `G_δ` with their inner-form partner in `H_γ`.
    pub inner_forms: Vec<(Atom, Atom)>,
    pub nonstandard: Vec<NonstandardPair>,
    pub unmatched_g: Vec<Atom>,
    pub unmatched_h: Vec<Atom>,
}

impl CommutantPairing {
    pub fn is_complete(&self) -> bool {
        self.unmatched_g.is_empty() && self.unmatched_h.is_empty()
    }
}

fn take_atom(pool: &mut Vec<Atom>, pred: impl Fn(&Atom) -> bool) -> Option<Atom> {
    pool.iter().position(pred).map(|i| pool.remove(i))
}

pub fn commutant_pair(pair: &EquiSingPair) -> Result<CommutantPairing, EndoError> {
    pair.check()?;
    let g_shape = commutant_shape_sp(&pair.delta)?;
    let h_shape =
        commutant_shape_so(pair.gamma.prime())?.concat(&commutant_shape_so(pair.gamma.second())?);
    let mut h_pool = h_shape.atoms.clone();
    let mut inner_forms = Vec::new();
    let mut nonstandard = Vec::new();
    let mut unmatched_g = Vec::new();

    let mut g_pool = Vec::new();
    for g in &g_shape.atoms {
        match g.kind {
            AtomKind::Gl | AtomKind::U => match take_atom(&mut h_pool, |h| h == g) {
                Some(h) => inner_forms.push((g.clone(), h)),
                None => unmatched_g.push(g.clone()),
            },
            _ => g_pool.push(g.clone()),
        }
    }
    // Sp(W_+) ↔ SO(V′_+) and Sp(W_−) ↔ SO(V″_+).
    let expected = [
        (pair.delta.dim_plus, pair.gamma.prime().dim_plus),
        (pair.delta.dim_minus, pair.gamma.second().dim_plus),
    ];
    for (w, v) in expected.into_iter().filter(|(w, _)| *w > 0) {
        let sp = take_atom(&mut g_pool, |g| g.kind == AtomKind::Sp && g.size == w);
        let so = take_atom(&mut h_pool, |h| h.kind == AtomKind::SoOdd && h.size == v);
        match (sp, so) {
            (Some(sp), Some(so))
                if group_dim(AtomKind::Sp, sp.size / 2)
                    == group_dim(AtomKind::SoOdd, so.size / 2) =>
            {
                nonstandard.push(NonstandardPair {
                    dimension: sp.dimension(),
                    sp,
                    so,
                })
            }
            (sp, so) => {
                unmatched_g.extend(sp);
                h_pool.extend(so);
            }
        }
    }
    unmatched_g.extend(g_pool);
    Ok(CommutantPairing {
        g_shape,
        h_shape,
        inner_forms,
        nonstandard,
        unmatched_g,
        unmatched_h: h_pool,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classparam::UnitaryFactor;
    use crate::exactnum::PolyQ;

    fn p(cs: &[i64]) -> PolyQ {
        PolyQ::from_ints(cs)
    }

    fn sample_delta() -> SpClassParam {
        SpClassParam {
            n: 5,
            factors: vec![
                UnitaryFactor::split(p(&[-2, 1]), 1),
                UnitaryFactor::field(p(&[1, 0, 1]), 1),
                UnitaryFactor::field(p(&[1, 1, 1]), 1),
            ],
            dim_plus: 2,
            dim_minus: 2,
        }
        .canonical()
        .unwrap()
    }

    #[test]
    fn identity_examples() {
        for n in 1..=4u64 {
            let plus = bijection_forward(
                &SpClassParam::identity(n),
                &[],
                &[],
                BijectionMode::Elliptic,
            )
            .unwrap();
            assert_eq!(plus.datum, EndoDatum::new(n, 0));
            assert_eq!(plus.gamma.prime(), &SoClassParam::identity(2 * n + 1));
            assert_eq!(t_value(&plus).unwrap(), n);

            let minus = bijection_forward(
                &SpClassParam::minus_identity(n),
                &[],
                &[],
                BijectionMode::Elliptic,
            )
            .unwrap();
            assert_eq!(minus.datum, EndoDatum::new(0, n));
            assert_eq!(minus.gamma.second(), &SoClassParam::identity(2 * n + 1));
            assert_eq!(t_value(&minus).unwrap(), n);
        }
    }

    #[test]
    fn forward_inverse_roundtrip_on_sample() {
        let d = sample_delta();
        let split_idx: Vec<usize> = (0..d.factors.len())
            .filter(|&i| d.factors[i].kind == FactorKind::Split)
            .collect();
        let field_idx: Vec<usize> = (0..d.factors.len())
            .filter(|&i| d.factors[i].kind == FactorKind::Field)
            .collect();
        assert!(bijection_forward(&d, &[], &[], BijectionMode::Elliptic).is_err());
        let e = bijection_forward(&d, &field_idx[..1], &split_idx, BijectionMode::Relaxed).unwrap();
        let inv = bijection_inverse(e.datum, &e.gamma).unwrap();
        assert_eq!(inv.delta, d);
        assert_eq!(inv.isecond, field_idx[..1].to_vec());
        assert_eq!(inv.gl_second, split_idx);
        let k = kappa_of(&e).unwrap();
        assert_eq!(k.recovered_isecond(), &field_idx[..1]);
        assert_eq!(k.eval(&[1], &[-1]).unwrap(), -1);
        assert_eq!(t_value(&e).unwrap(), 2);
        let cp = commutant_pair(&e).unwrap();
        assert!(cp.is_complete(), "{cp:?}");
        assert_eq!(cp.nonstandard.len(), 2);
    }

    #[test]
    fn forward_rejects_bad_indices() {
        let d = sample_delta();
        assert!(matches!(
            bijection_forward(&d, &[7], &[], BijectionMode::Relaxed),
            Err(EndoError::BadIndex(7))
        ));
        let split = d
            .factors
            .iter()
            .position(|f| f.kind == FactorKind::Split)
            .unwrap();
        assert!(matches!(
            bijection_forward(&d, &[split], &[], BijectionMode::Relaxed),
            Err(EndoError::KindMismatch(..))
        ));
    }

    #[test]
    fn inverse_rejects_non_equi_singular() {
        let g = GammaPair(
            SoClassParam {
                size: 3,
                factors: vec![],
                dim_plus: 1,
                dim_minus: 2,
            },
            SoClassParam::identity(1),
        );
        assert!(matches!(
            bijection_inverse(EndoDatum::new(1, 0), &g),
            Err(EndoError::NotEquiSingular(_))
        ));
    }
}
