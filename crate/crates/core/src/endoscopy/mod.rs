//! Elliptic endoscopy for Sp(2n) on the level of stable class parameters.
//!
//! An endoscopic datum is an ordered pair `(n′, n″)` with `n′ + n″ = n`, with
//! group `H = SO(2n′+1) × SO(2n″+1)`. A pair `γ = (γ′, γ″)` corresponds to the
//! class `δ ∈ Sp(2n)` whose eigenvalues are those of `γ′` and the negatives of
//! those of `γ″`, with one eigenvalue `1` removed from each side.

mod bijection;
mod coeff;
mod correspond;

pub use bijection::{
    bijection_forward, bijection_inverse, commutant_pair, kappa_of, t_value, BijectionMode,
    CommutantPairing, InversePair, KappaCharacter, NonstandardPair,
};
pub use coeff::{
    endoscopic_group_shape, iota, nonramified_pair_check, tamagawa, NonramifiedVerdict,
};
pub use correspond::{
    correspond, fiber, is_equi_singular, Correspondence, EquiSingVerdict, FactorOrigin,
    SingularityWitness,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classparam::{ClassError, SoClassParam, SpClassParam};
use crate::exactnum::NumError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EndoError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("datum ({0}, {1}) does not fit Sp({2})")]
    DatumMismatch(u64, u64, u64),
    #[error("pair is not equi-singular: {0}")]
    NotEquiSingular(String),
    #[error("δ must be given in canonical form (sorted, merged factors)")]
    NotCanonical,
    #[error("factor index {0} is out of range or repeated")]
    BadIndex(usize),
    #[error("factor {0} has the wrong kind for this argument: {1}")]
    KindMismatch(usize, &'static str),
    #[error("δ has split factors and is not elliptic; use the relaxed mode")]
    NonElliptic,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconsistent pair: {0}")]
    InvalidPair(String),
}

/// An ordered pair `(n′, n″)`; serialized as `[n′, n″]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u64, u64)", into = "(u64, u64)")]
pub struct EndoDatum {
    pub nprime: u64,
    pub nsecond: u64,
}

impl From<(u64, u64)> for EndoDatum {
    fn from((nprime, nsecond): (u64, u64)) -> Self {
        EndoDatum { nprime, nsecond }
    }
}

impl From<EndoDatum> for (u64, u64) {
    fn from(d: EndoDatum) -> Self {
        (d.nprime, d.nsecond)
    }
}

impl EndoDatum {
    pub fn new(nprime: u64, nsecond: u64) -> Self {
        EndoDatum { nprime, nsecond }
    }

    pub fn n(&self) -> u64 {
        self.nprime + self.nsecond
    }
}

/// The `n + 1` data for Sp(2n), from `(n, 0)` down to `(0, n)`.
pub fn enumerate_endo_data(n: u64) -> Vec<EndoDatum> {
    (0..=n).rev().map(|np| EndoDatum::new(np, n - np)).collect()
}

/// `(γ′, γ″)` with `γ′ ∈ SO(2n′+1)` and `γ″ ∈ SO(2n″+1)`; serialized as a pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaPair(pub SoClassParam, pub SoClassParam);

impl GammaPair {
    pub fn prime(&self) -> &SoClassParam {
        &self.0
    }

    pub fn second(&self) -> &SoClassParam {
        &self.1
    }

    pub fn datum(&self) -> EndoDatum {
        EndoDatum::new(self.0.k(), self.1.k())
    }

    pub fn canonical(&self) -> Result<Self, NumError> {
        Ok(GammaPair(self.0.canonical()?, self.1.canonical()?))
    }
}

/// Partition of δ's factor indices by the side they come from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FactorSplit {
    pub iprime: Vec<usize>,
    pub isecond: Vec<usize>,
}

/// A matched `(γ′, γ″, δ)` with no fusion and no `−1` eigenvalues on the
/// orthogonal side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EquiSingPair {
    pub datum: EndoDatum,
    pub gamma: GammaPair,
    pub delta: SpClassParam,
    pub split: FactorSplit,
}

impl EquiSingPair {
    /// Re-derive δ and the split from γ and compare with the stored data.
    pub fn check(&self) -> Result<(), EndoError> {
        if self.gamma.datum() != self.datum {
            return Err(EndoError::InvalidPair(format!(
                "γ has sizes for ({}, {}), datum says ({}, {})",
                self.gamma.datum().nprime,
                self.gamma.datum().nsecond,
                self.datum.nprime,
                self.datum.nsecond
            )));
        }
        let inv = bijection_inverse(self.datum, &self.gamma)?;
        if inv.delta != self.delta {
            return Err(EndoError::InvalidPair("δ does not correspond to γ".into()));
        }
        if inv.split != self.split {
            return Err(EndoError::InvalidPair(
                "factor split does not match the origin of δ's factors".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endo_data_examples() {
        let pairs =
            |n| -> Vec<(u64, u64)> { enumerate_endo_data(n).into_iter().map(Into::into).collect() };
        assert_eq!(pairs(2), vec![(2, 0), (1, 1), (0, 2)]);
        assert_eq!(pairs(0), vec![(0, 0)]);
        assert_eq!(pairs(1), vec![(1, 0), (0, 1)]);
    }

    #[test]
    fn datum_json_is_a_pair() {
        let d = EndoDatum::new(1, 2);
        assert_eq!(serde_json::to_string(&d).unwrap(), "[1,2]");
        assert_eq!(serde_json::from_str::<EndoDatum>("[1,2]").unwrap(), d);
    }
}
