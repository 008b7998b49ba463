//! Polynomials over a prime field F_p with coefficients in `u64`, constant term first.

use super::arith::{inv_mod, pow_mod};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p).expect("nonzero leading coefficient");
                FpPoly::new(
                    self.p,
                    self.c
                        .iter()
                        .map(|&x| Self::mulmod(x, inv, self.p))
                        .collect(),
                )
            }
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        FpPoly::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = o.c.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::new(self.p, vec![]);
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + Self::mulmod(a, b, p)) % p;
            }
        }
        FpPoly::new(p, out)
    }

    pub fn rem(&self, m: &Self) -> Self {
        let dm = m.degree().expect("reduction modulo zero");
        let p = self.p;
        let inv = inv_mod(m.c[dm], p).expect("unit leading coefficient");
        let mut r = self.c.clone();
        while r.len() > dm {
            let k = r.len() - 1 - dm;
            let f = Self::mulmod(*r.last().unwrap(), inv, p);
            for (j, &mc) in m.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - Self::mulmod(f, mc, p)) % p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        FpPoly::new(p, r)
    }

    pub fn div_exact(&self, m: &Self) -> Self {
        let dm = m.degree().expect("division by zero");
        let p = self.p;
        let inv = inv_mod(m.c[dm], p).expect("unit leading coefficient");
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len().saturating_sub(dm)];
        while r.len() > dm {
            let k = r.len() - 1 - dm;
            let f = Self::mulmod(*r.last().unwrap(), inv, p);
            q[k] = f;
            for (j, &mc) in m.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - Self::mulmod(f, mc, p)) % p;
            }
            r.pop();
        }
        debug_assert!(r.iter().all(|&x| x == 0));
        FpPoly::new(p, q)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        FpPoly::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &x)| Self::mulmod(x, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = FpPoly::new(self.p, vec![1]).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).degree() == Some(0)
    }

    /// Degrees of the irreducible factors of a monic squarefree polynomial
    /// (distinct-degree factorization, then counting).
    pub fn factor_degrees(&self) -> Vec<usize> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = FpPoly::x(p);
        let mut h = x.clone();
        let mut d = 0usize;
        while let Some(df) = f.degree() {
            if df == 0 {
                break;
            }
            d += 1;
            if 2 * d > df {
                out.push(df);
                break;
            }
            h = h.powmod(p, &f);
            let g = h.sub(&x).gcd(&f);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 {
                out.extend(std::iter::repeat(d).take(dg / d));
                f = f.div_exact(&g);
                h = h.rem(&f);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &c| (Self::mulmod(acc, x, p) + c) % p)
    }
}

/// `x^((p-1)/2)` mod p, i.e. Euler's criterion value in {0, 1, p-1}.
pub fn euler_criterion(a: u64, p: u64) -> u64 {
    pow_mod(a % p, (p - 1) / 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_five_mod_small_primes() {
        let phi5 = FpPoly::new(2, vec![1, 1, 1, 1, 1]);
        assert_eq!(phi5.factor_degrees(), vec![4]);
        // 11 ≡ 1 mod 5: splits completely.
        let phi5 = FpPoly::new(11, vec![1, 1, 1, 1, 1]);
        assert_eq!(phi5.factor_degrees(), vec![1, 1, 1, 1]);
        // 19 ≡ 4 mod 5: order 2, two quadratics.
        let phi5 = FpPoly::new(19, vec![1, 1, 1, 1, 1]);
        assert_eq!(phi5.factor_degrees(), vec![2, 2]);
    }

    #[test]
    fn factor_degrees_agree_with_root_count() {
        // (x-1)(x-2)(x^2+1) over F_7; x^2+1 is irreducible since 7 ≡ 3 mod 4.
        let f = FpPoly::new(7, vec![6, 1])
            .mul(&FpPoly::new(7, vec![5, 1]))
            .mul(&FpPoly::new(7, vec![1, 0, 1]));
        assert!(f.is_squarefree());
        assert_eq!(f.factor_degrees(), vec![1, 1, 2]);
        let roots = (0..7).filter(|&x| f.eval(x) == 0).count();
        assert_eq!(roots, 2);
    }

    #[test]
    fn squarefree_detects_repeated_root() {
        let f = FpPoly::new(5, vec![1, 2, 1]);
        assert!(!f.is_squarefree());
    }
}
