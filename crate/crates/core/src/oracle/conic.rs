//! `(a, b)_p = +1` iff `z² = a x² + b y²` has a primitive solution over ℤ_p.
//!
//! With `v_p(a), v_p(b) ≤ 1`, any primitive solution has a partial
//! derivative of valuation at most `v_p(2) + 1`, so a primitive solution
//! modulo `p^k` with `k ≥ 2(v_p(2) + 1) + 1` lifts by Hensel's lemma. That
//! gives `k = 3` for odd `p` and `k = 5` for `p = 2`; one extra power of 2 is
//! used as margin.

use crate::localsym::SignValue;

/// Precision used for each prime.
pub fn precision(p: u64) -> u32 {
    if p == 2 {
        6
    } else {
        3
    }
}

fn strip_squares(mut a: i64, p: u64) -> i64 {
    let p2 = (p * p) as i64;
    while a % p2 == 0 {
        a /= p2;
    }
    a
}

/// Squares modulo `p^k`, reused across many `(a, b)`.
pub struct ConicTable {
    p: u64,
    m: i128,
    any_sq: Vec<bool>,
    unit_sq: Vec<bool>,
}

impl ConicTable {
    pub fn new(p: u64, k: u32) -> Self {
        let m = p.pow(k) as i128;
        let mut any_sq = vec![false; m as usize];
        let mut unit_sq = vec![false; m as usize];
        for z in 0..m {
            let s = (z * z % m) as usize;
            any_sq[s] = true;
            if z % p as i128 != 0 {
                unit_sq[s] = true;
            }
        }
        ConicTable {
            p,
            m,
            any_sq,
            unit_sq,
        }
    }

    /// Table at the precision that decides the Hilbert symbol.
    pub fn for_prime(p: u64) -> Self {
        ConicTable::new(p, precision(p))
    }

    /// Primitive solvability of `z² ≡ a x² + b y² (mod p^k)`.
    ///
    /// Up to unit scaling a primitive triple has `x = 1`, or `p | x` and
    /// `y = 1`, or `p | x, y` with `z` a unit; each case is one or two loops
    /// against a table of squares.
    pub fn solvable(&self, a: i64, b: i64) -> bool {
        assert!(a != 0 && b != 0, "nonzero coefficients");
        let (a, b) = (
            strip_squares(a, self.p) as i128,
            strip_squares(b, self.p) as i128,
        );
        let m = self.m;
        let red = |x: i128| x.rem_euclid(m) as usize;
        let step = self.p as usize;
        let x_one = || (0..m).any(|y| self.any_sq[red(a + b * y * y)]);
        let y_one = || {
            (0..m)
                .step_by(step)
                .any(|x| self.any_sq[red(a * x * x + b)])
        };
        let both_p = || {
            (0..m).step_by(step).any(|x| {
                (0..m)
                    .step_by(step)
                    .any(|y| self.unit_sq[red(a * x * x + b * y * y)])
            })
        };
        x_one() || y_one() || both_p()
    }

    pub fn hilbert(&self, a: i64, b: i64) -> SignValue {
        SignValue::from_parity(!self.solvable(a, b))
    }
}

pub fn solvable_mod(a: i64, b: i64, p: u64, k: u32) -> bool {
    ConicTable::new(p, k).solvable(a, b)
}

pub fn hilbert_by_conic(a: i64, b: i64, p: u64) -> SignValue {
    ConicTable::for_prime(p).hilbert(a, b)
}
