//! The fixed test family: symplectic classes of rank at most `nmax` built
//! from a small pool of irreducible polynomials, with every feasible pair of
//! even `±1` eigenspace dimensions.

use std::collections::BTreeSet;

use crate::classparam::{SpClassParam, UnitaryFactor};
use crate::exactnum::PolyQ;

/// Rank-one templates: six field-kind factors and three split-kind ones.
pub fn factor_pool() -> Vec<UnitaryFactor> {
    let field = [
        &[1, 0, 1][..],
        &[1, 1, 1],
        &[1, -1, 1],
        &[1, -3, 1],
        &[1, 3, 1],
        &[1, 1, 1, 1, 1],
    ];
    let split = [&[-2, 1][..], &[2, 1], &[-3, 1]];
    field
        .iter()
        .chain(&split)
        .map(|cs| UnitaryFactor::from_poly(PolyQ::from_ints(cs), 1).expect("valid pool polynomial"))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// The pool together with the sign-flipped image of each factor.
pub fn flip_closure(pool: &[UnitaryFactor]) -> Vec<UnitaryFactor> {
    pool.iter()
        .flat_map(|f| [f.with_rank(1), f.sign_flipped().expect("flip").with_rank(1)])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Multisets of factors (as rank vectors over `pool`) of total dimension at
/// most `budget`.
pub(crate) fn rank_vectors(pool: &[UnitaryFactor], budget: u64) -> Vec<(Vec<u64>, u64)> {
    fn go(
        pool: &[UnitaryFactor],
        i: usize,
        left: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<(Vec<u64>, u64)>,
        used: u64,
    ) {
        if i == pool.len() {
            out.push((cur.clone(), used));
            return;
        }
        let d = pool[i].dimension();
        let mut r = 0;
        while r * d <= left {
            cur.push(r);
            go(pool, i + 1, left - r * d, cur, out, used + r * d);
            cur.pop();
            r += 1;
        }
    }
    let mut out = Vec::new();
    go(pool, 0, budget, &mut Vec::new(), &mut out, 0);
    out
}

pub(crate) fn factors_from_ranks(pool: &[UnitaryFactor], ranks: &[u64]) -> Vec<UnitaryFactor> {
    pool.iter()
        .zip(ranks)
        .filter(|(_, &r)| r > 0)
        .map(|(f, &r)| f.with_rank(r))
        .collect()
}

/// Every canonical `δ ∈ Sp(2n)`, `1 ≤ n ≤ nmax`, with factors from the pool.
pub fn generator_family(nmax: u64) -> Vec<SpClassParam> {
    let pool = factor_pool();
    let mut out = Vec::new();
    for n in 1..=nmax {
        for (ranks, used) in rank_vectors(&pool, 2 * n) {
            let rest = 2 * n - used;
            if rest % 2 == 1 {
                continue;
            }
            for plus in (0..=rest).step_by(2) {
                let delta = SpClassParam {
                    n,
                    factors: factors_from_ranks(&pool, &ranks),
                    dim_plus: plus,
                    dim_minus: rest - plus,
                }
                .canonical()
                .expect("pool factors are valid");
                out.push(delta);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_shape() {
        let pool = factor_pool();
        assert_eq!(pool.len(), 9);
        // X² ± X + 1, X² ± 3X + 1 pair up; Φ₅ gains Φ₁₀; X + 2 and X − 3 gain partners.
        assert_eq!(flip_closure(&pool).len(), 11);
    }

    #[test]
    fn family_is_valid_and_distinct() {
        let fam = generator_family(3);
        let set: BTreeSet<_> = fam.iter().map(|d| format!("{d:?}")).collect();
        assert_eq!(set.len(), fam.len());
        for d in &fam {
            d.check().unwrap();
        }
        // n = 1: (W₊, W₋) ∈ {(2, 0), (0, 2)}, or one of the 8 dimension-2 factors.
        assert_eq!(fam.iter().filter(|d| d.n == 1).count(), 2 + 8);
    }
}
