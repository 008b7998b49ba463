//! Order of a finite isometry group by enumerating matrices over `F_p`
//! column by column.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    /// Antidiagonal alternating form of even size.
    Symplectic,
    /// Antidiagonal symmetric form, restricted to determinant 1.
    Orthogonal,
}

/// Gram matrix of the form of the given kind and size over `F_p`.
pub fn gram(kind: FormKind, size: usize, p: u64) -> Vec<Vec<u64>> {
    let mut g = vec![vec![0; size]; size];
    for (i, row) in g.iter_mut().enumerate() {
        let j = size - 1 - i;
        row[j] = match kind {
            FormKind::Orthogonal => 1,
            FormKind::Symplectic if i < size / 2 => 1,
            FormKind::Symplectic => p - 1,
        };
    }
    g
}

fn all_vectors(size: usize, p: u64) -> Vec<Vec<u64>> {
    (0..size).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect()
    })
}

fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if r != c {
            m.swap(r, c);
            det = (p - det) % p;
        }
        det = det * m[c][c] % p;
        let inv = crate::exactnum::arith::pow_mod(m[c][c], p - 2, p);
        let (top, rest) = m.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in rest.iter_mut() {
            let f = row[c] * inv % p;
            for (x, &y) in row[c..n].iter_mut().zip(&pivot[c..n]) {
                *x = (*x + p * p - f * y % p) % p;
            }
        }
    }
    det
}

/// Number of `M ∈ GL_n(F_p)` with `Mᵀ G M = G`, optionally with `det M = 1`.
/// `p` must be an odd prime.
pub fn count_isometries(g: &[Vec<u64>], p: u64, det_one: bool) -> u64 {
    let n = g.len();
    let vecs = all_vectors(n, p);
    // B(u, v) = uᵀ G v; store G v for each candidate v.
    let gv: Vec<Vec<u64>> = vecs
        .iter()
        .map(|v| {
            (0..n)
                .map(|i| (0..n).map(|j| g[i][j] * v[j]).sum::<u64>() % p)
                .collect()
        })
        .collect();
    let pair = |u: usize, v: usize| -> u64 {
        vecs[u].iter().zip(&gv[v]).map(|(a, b)| a * b).sum::<u64>() % p
    };
    let mut cols: Vec<usize> = Vec::with_capacity(n);
    let mut count = 0u64;

    fn go(
        cols: &mut Vec<usize>,
        n: usize,
        ncand: usize,
        g: &[Vec<u64>],
        pair: &dyn Fn(usize, usize) -> u64,
        finish: &mut dyn FnMut(&[usize]),
    ) {
        let j = cols.len();
        if j == n {
            finish(cols);
            return;
        }
        for v in 0..ncand {
            if pair(v, v) != g[j][j] {
                continue;
            }
            if cols.iter().enumerate().all(|(i, &c)| pair(c, v) == g[i][j]) {
                cols.push(v);
                go(cols, n, ncand, g, pair, finish);
                cols.pop();
            }
        }
    }

    let mut finish = |cols: &[usize]| {
        if det_one {
            let m: Vec<Vec<u64>> = (0..n)
                .map(|i| cols.iter().map(|&c| vecs[c][i]).collect())
                .collect();
            if det_mod(m, p) != 1 {
                return;
            }
        }
        count += 1;
    };
    go(&mut cols, n, vecs.len(), g, &pair, &mut finish);
    count
}

/// `|Sp(2n, F_p)|` or `|SO(2n+1, F_p)|` by enumeration.
pub fn group_order(kind: FormKind, n: usize, p: u64) -> u64 {
    match kind {
        FormKind::Symplectic => count_isometries(&gram(kind, 2 * n, p), p, false),
        FormKind::Orthogonal => count_isometries(&gram(kind, 2 * n + 1, p), p, true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        // SL(2, F_3) has order 24.
        assert_eq!(group_order(FormKind::Symplectic, 1, 3), 24);
        assert_eq!(group_order(FormKind::Orthogonal, 1, 3), 24);
        assert_eq!(group_order(FormKind::Symplectic, 1, 5), 120);
    }

    #[test]
    fn determinant() {
        assert_eq!(det_mod(vec![vec![1, 2], vec![3, 4]], 5), 3);
        assert_eq!(det_mod(vec![vec![0, 1], vec![1, 0]], 7), 6);
    }
}
