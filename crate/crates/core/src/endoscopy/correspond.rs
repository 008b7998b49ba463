//! The eigenvalue correspondence `(γ′, γ″) ↦ δ`, equi-singularity, and fibers.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{EndoDatum, EndoError, GammaPair};
use crate::classparam::{merge_factors, SoClassParam, SpClassParam, UnitaryFactor};

/// Where a factor of δ came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorOrigin {
    Prime,
    Second,
    /// Fusion: the same factor arises from both sides.
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    pub datum: EndoDatum,
    pub delta: SpClassParam,
    /// Parallel to `delta.factors`.
    pub origins: Vec<FactorOrigin>,
    /// Factors of δ produced by both γ′ and the sign-flipped γ″ (rank shown is δ's).
    pub fused: Vec<UnitaryFactor>,
}

/// Sign flip that keeps the kind of a factor. Roots avoid ±1, so a field
/// factor cannot become split.
pub(super) fn flip_factor(f: &UnitaryFactor) -> Result<UnitaryFactor, EndoError> {
    let g = f.sign_flipped()?;
    if g.kind != f.kind {
        return Err(EndoError::InvalidPair(format!(
            "sign flip changed the kind of {f}"
        )));
    }
    Ok(g)
}

pub fn correspond(gamma: &GammaPair) -> Result<Correspondence, EndoError> {
    let (gp, gs) = (gamma.prime().canonical()?, gamma.second().canonical()?);
    gp.check()?;
    gs.check()?;
    let flipped = gs
        .factors
        .iter()
        .map(flip_factor)
        .collect::<Result<Vec<_>, _>>()?;
    let prime_keys: BTreeSet<_> = gp.factors.iter().map(UnitaryFactor::key).collect();
    let second_keys: BTreeSet<_> = flipped.iter().map(UnitaryFactor::key).collect();
    let (factors, _) = merge_factors(gp.factors.iter().cloned().chain(flipped));
    let origins: Vec<FactorOrigin> = factors
        .iter()
        .map(|f| {
            let k = f.key();
            match (prime_keys.contains(&k), second_keys.contains(&k)) {
                (true, true) => FactorOrigin::Both,
                (true, false) => FactorOrigin::Prime,
                _ => FactorOrigin::Second,
            }
        })
        .collect();
    let fused = factors
        .iter()
        .zip(&origins)
        .filter(|(_, o)| **o == FactorOrigin::Both)
        .map(|(f, _)| f.clone())
        .collect();
    // dim W_+ + 1 = dim V′_+ + dim V″_−,  dim W_− + 1 = dim V′_− + dim V″_+.
    let plus = gp.dim_plus + gs.dim_minus;
    let minus = gp.dim_minus + gs.dim_plus;
    let (Some(dim_plus), Some(dim_minus)) = (plus.checked_sub(1), minus.checked_sub(1)) else {
        return Err(EndoError::InvalidPair(
            "±1 eigenspaces too small to drop one eigenvalue".into(),
        ));
    };
    let datum = gamma.datum();
    let delta = SpClassParam {
        n: datum.n(),
        factors,
        dim_plus,
        dim_minus,
    };
    delta.check()?;
    Ok(Correspondence {
        datum,
        delta,
        origins,
        fused,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum SingularityWitness {
    Fusion { factor: UnitaryFactor },
    MinusEigenspace { side: String, dim: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquiSingVerdict {
    pub equi_singular: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<SingularityWitness>,
}

pub fn is_equi_singular(gamma: &GammaPair) -> Result<EquiSingVerdict, EndoError> {
    let c = correspond(gamma)?;
    let mut witnesses: Vec<SingularityWitness> = c
        .fused
        .into_iter()
        .map(|factor| SingularityWitness::Fusion { factor })
        .collect();
    for (side, g) in [("prime", gamma.prime()), ("second", gamma.second())] {
        if g.dim_minus > 0 {
            witnesses.push(SingularityWitness::MinusEigenspace {
                side: side.to_string(),
                dim: g.dim_minus,
            });
        }
    }
    Ok(EquiSingVerdict {
        equi_singular: witnesses.is_empty(),
        witnesses,
    })
}

/// All rank vectors `a` with `0 ≤ a_i ≤ r_i`.
fn rank_splits(ranks: &[u64]) -> Vec<Vec<u64>> {
    ranks.iter().fold(vec![vec![]], |acc, &r| {
        acc.into_iter()
            .flat_map(|prefix| {
                (0..=r).map(move |a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect()
    })
}

/// Every `γ` for `datum` with `correspond(γ) = δ`, in canonical order.
pub fn fiber(delta: &SpClassParam, datum: EndoDatum) -> Result<Vec<GammaPair>, EndoError> {
    delta.check()?;
    let delta = delta.canonical()?;
    if datum.n() != delta.n {
        return Err(EndoError::DatumMismatch(
            datum.nprime,
            datum.nsecond,
            2 * delta.n,
        ));
    }
    let flipped = delta
        .factors
        .iter()
        .map(flip_factor)
        .collect::<Result<Vec<_>, _>>()?;
    let ranks: Vec<u64> = delta.factors.iter().map(|f| f.rank).collect();
    let (size_p, size_s) = (2 * datum.nprime + 1, 2 * datum.nsecond + 1);
    let mut out = BTreeSet::new();
    for a in rank_splits(&ranks) {
        let mut fp = Vec::new();
        let mut fs = Vec::new();
        let (mut deg_p, mut deg_s) = (0u64, 0u64);
        for (i, &ai) in a.iter().enumerate() {
            let bi = ranks[i] - ai;
            if ai > 0 {
                let f = delta.factors[i].with_rank(ai);
                deg_p += f.dimension();
                fp.push(f);
            }
            if bi > 0 {
                let f = flipped[i].with_rank(bi);
                deg_s += f.dimension();
                fs.push(f);
            }
        }
        if deg_p >= size_p || deg_s >= size_s {
            continue;
        }
        // Free parameter: dim V′_− (even); the rest follows from the dimension
        // equations of the correspondence.
        let mut vm_p = 0;
        while deg_p + vm_p < size_p {
            let vp_p = size_p - deg_p - vm_p;
            let vp_s = (delta.dim_minus + 1).checked_sub(vm_p);
            let vm_s = (delta.dim_plus + 1).checked_sub(vp_p);
            if let (Some(vp_s), Some(vm_s)) = (vp_s, vm_s) {
                if deg_s + vp_s + vm_s == size_s {
                    let gp = SoClassParam {
                        size: size_p,
                        factors: fp.clone(),
                        dim_plus: vp_p,
                        dim_minus: vm_p,
                    };
                    let gs = SoClassParam {
                        size: size_s,
                        factors: fs.clone(),
                        dim_plus: vp_s,
                        dim_minus: vm_s,
                    };
                    let pair = GammaPair(gp.canonical()?, gs.canonical()?);
                    if pair.0.check().is_ok() && pair.1.check().is_ok() {
                        out.insert(pair);
                    }
                }
            }
            vm_p += 2;
        }
    }
    Ok(out.into_iter().collect())
}
