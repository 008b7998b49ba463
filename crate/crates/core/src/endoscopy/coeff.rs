//! The coefficient ι, Tamagawa numbers, and the non-ramification test.

use serde::{Deserialize, Serialize};

use super::{correspond, EndoDatum, EndoError, GammaPair};
use crate::classparam::{Atom, AtomKind, FactorKind, GroupShape, UnitaryFactor};
use crate::exactnum::{arith, separable_mod, valuation, PolyQ, Rational};

/// `ι(G, H)`: 1 for `n = 0`, 1/4 when both sides are nontrivial, else 1/2.
pub fn iota(datum: EndoDatum) -> Rational {
    let den = match (datum.nprime, datum.nsecond) {
        (0, 0) => 1,
        (a, b) if a >= 1 && b >= 1 => 4,
        _ => 2,
    };
    Rational::new(1, den).expect("nonzero")
}

/// `[SO(2n′+1), SO(2n″+1)]`, keeping trivial `SO(1)` atoms.
pub fn endoscopic_group_shape(datum: EndoDatum) -> GroupShape {
    GroupShape {
        atoms: vec![
            Atom::so(2 * datum.nprime + 1),
            Atom::so(2 * datum.nsecond + 1),
        ],
        so_even_part: None,
    }
}

/// Tamagawa number of a product of Sp and odd SO atoms over ℚ.
pub fn tamagawa(shape: &GroupShape) -> Result<Rational, EndoError> {
    if shape.so_even_part.is_some() {
        return Err(EndoError::Unsupported(
            "Tamagawa number of an even orthogonal part".into(),
        ));
    }
    shape.atoms.iter().try_fold(Rational::one(), |acc, a| {
        let t = match a.kind {
            AtomKind::Sp => 1,
            AtomKind::SoOdd if a.size >= 3 => 2,
            AtomKind::SoOdd => 1,
            AtomKind::Gl | AtomKind::U => {
                return Err(EndoError::Unsupported(format!("Tamagawa number of {a}")))
            }
        };
        Ok(acc * Rational::from_int(t))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonramifiedVerdict {
    pub nonramified: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub obstructions: Vec<String>,
}

fn poly_obstructions(f: &UnitaryFactor, p: u64, out: &mut Vec<String>) {
    let poly: &PolyQ = &f.poly;
    let pz = |r: &Rational| valuation(r, p);
    for c in poly.coeffs() {
        if pz(c).is_some_and(|v| v < 0) {
            out.push(format!("{poly}: coefficient {c} is not {p}-integral"));
            return;
        }
    }
    let leading = poly.leading().cloned().unwrap_or_else(Rational::zero);
    let ends = [("constant", poly.constant_term()), ("leading", leading)];
    for (name, c) in ends {
        if pz(&c) != Some(0) {
            out.push(format!(
                "{poly}: {name} coefficient {c} is not a {p}-adic unit"
            ));
        }
    }
    if f.kind == FactorKind::Field && separable_mod(poly, p) != Some(true) {
        out.push(format!("{poly}: reduction mod {p} is not separable"));
    }
}

/// Whether `(γ, δ)` is non-ramified at an odd prime `p`: all defining
/// polynomials are `p`-integral with unit end coefficients, and the field
/// factors stay separable mod `p`.
pub fn nonramified_pair_check(gamma: &GammaPair, p: u64) -> Result<NonramifiedVerdict, EndoError> {
    if !arith::is_prime_u64(p) {
        return Err(EndoError::Unsupported(format!("{p} is not a prime")));
    }
    if p == 2 {
        return Err(EndoError::Unsupported("the prime 2".into()));
    }
    let delta = correspond(gamma)?.delta;
    let mut obstructions = Vec::new();
    let factors = gamma
        .prime()
        .factors
        .iter()
        .chain(&gamma.second().factors)
        .chain(&delta.factors);
    for f in factors {
        poly_obstructions(f, p, &mut obstructions);
    }
    obstructions.dedup();
    Ok(NonramifiedVerdict {
        nonramified: obstructions.is_empty(),
        obstructions,
    })
}
