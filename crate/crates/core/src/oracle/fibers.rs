//! Fibers of the correspondence by matching characteristic polynomials.
//!
//! Writing `χ` for the characteristic polynomial as a multiset of irreducible
//! factors and `N` for the substitution `X ↦ −X`, a pair `(γ′, γ″)` maps to
//! `δ` exactly when `χ(γ′) + N(χ(γ″)) = χ(δ) + (X − 1) + (X + 1)`. The oracle
//! lists every orthogonal class over a fixed factor universe and looks up
//! matches, without splitting δ's factors.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::classparam::{FactorKind, SoClassParam, SpClassParam, UnitaryFactor};
use crate::endoscopy::{EndoDatum, GammaPair};
use crate::exactnum::{PolyQ, Rational};

use super::family::{factors_from_ranks, rank_vectors};

type Counts = Vec<u16>;

pub struct FiberOracle {
    universe: Vec<UnitaryFactor>,
    index: BTreeMap<PolyQ, usize>,
    neg: Vec<usize>,
    /// By matrix size: orthogonal classes keyed by their counts.
    by_size: HashMap<u64, HashMap<Counts, Vec<SoClassParam>>>,
}

impl FiberOracle {
    /// `universe` must be closed under the sign flip.
    pub fn new(universe: &[UnitaryFactor], max_size: u64) -> Self {
        let mut polys = BTreeSet::from([
            PolyQ::x_minus(Rational::one()),
            PolyQ::x_minus(-Rational::one()),
        ]);
        for f in universe {
            polys.insert(f.poly.clone());
            polys.insert(f.poly.reciprocal().expect("unit constant term"));
        }
        let index: BTreeMap<PolyQ, usize> = polys
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let neg = polys
            .iter()
            .map(|p| {
                let q = p.neg_arg().expect("nonzero");
                *index.get(&q).expect("universe closed under X ↦ −X")
            })
            .collect();
        let mut oracle = FiberOracle {
            universe: universe.iter().map(|f| f.with_rank(1)).collect(),
            index,
            neg,
            by_size: HashMap::new(),
        };
        for size in (1..=max_size).step_by(2) {
            let table = oracle.orthogonal_classes(size);
            oracle.by_size.insert(size, table);
        }
        oracle
    }

    fn counts(&self, factors: &[UnitaryFactor], plus: u64, minus: u64) -> Option<Counts> {
        let mut c = vec![0u16; self.index.len()];
        let mut add = |p: &PolyQ, m: u64| -> Option<()> {
            c[*self.index.get(p)?] += m as u16;
            Some(())
        };
        for f in factors {
            add(&f.poly, f.rank)?;
            if f.kind == FactorKind::Split {
                add(&f.poly.reciprocal().ok()?, f.rank)?;
            }
        }
        add(&PolyQ::x_minus(Rational::one()), plus)?;
        add(&PolyQ::x_minus(-Rational::one()), minus)?;
        Some(c)
    }

    fn orthogonal_classes(&self, size: u64) -> HashMap<Counts, Vec<SoClassParam>> {
        let mut out: HashMap<Counts, Vec<SoClassParam>> = HashMap::new();
        for (ranks, used) in rank_vectors(&self.universe, size - 1) {
            let rest = size - used;
            for minus in (0..rest).step_by(2) {
                let g = SoClassParam {
                    size,
                    factors: factors_from_ranks(&self.universe, &ranks),
                    dim_plus: rest - minus,
                    dim_minus: minus,
                }
                .canonical()
                .expect("valid factors");
                let c = self
                    .counts(&g.factors, g.dim_plus, g.dim_minus)
                    .expect("universe factor");
                out.entry(c).or_default().push(g);
            }
        }
        out
    }

    /// All `γ` for `datum` over `δ`, or `None` if δ uses a factor outside the
    /// universe or the sizes exceed the precomputed range.
    pub fn fiber(&self, delta: &SpClassParam, datum: EndoDatum) -> Option<BTreeSet<GammaPair>> {
        let mut target = self.counts(&delta.factors, delta.dim_plus, delta.dim_minus)?;
        target[self.index[&PolyQ::x_minus(Rational::one())]] += 1;
        target[self.index[&PolyQ::x_minus(-Rational::one())]] += 1;
        let firsts = self.by_size.get(&(2 * datum.nprime + 1))?;
        let seconds = self.by_size.get(&(2 * datum.nsecond + 1))?;
        let mut out = BTreeSet::new();
        for (c1, g1s) in firsts {
            if c1.iter().zip(&target).any(|(a, b)| a > b) {
                continue;
            }
            // χ(γ″) = N(target − χ(γ′)).
            let mut c2 = vec![0u16; target.len()];
            for (i, (t, a)) in target.iter().zip(c1).enumerate() {
                c2[self.neg[i]] = t - a;
            }
            if let Some(g2s) = seconds.get(&c2) {
                for g1 in g1s {
                    for g2 in g2s {
                        out.insert(GammaPair(g1.clone(), g2.clone()));
                    }
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{factor_pool, flip_closure};

    #[test]
    fn identity_fibers() {
        let oracle = FiberOracle::new(&flip_closure(&factor_pool()), 5);
        let plus = SpClassParam::identity(1);
        let f = oracle.fiber(&plus, EndoDatum::new(0, 1)).unwrap();
        let expected = GammaPair(
            SoClassParam::identity(1),
            SoClassParam {
                size: 3,
                factors: vec![],
                dim_plus: 1,
                dim_minus: 2,
            },
        );
        assert_eq!(f.into_iter().collect::<Vec<_>>(), vec![expected]);
    }
}
