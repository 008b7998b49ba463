//! Sweep of the library's invariants with deterministic pseudo-randomness,
//! producing one report row per check.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classparam::{Atom, AtomKind, FactorKind, GroupShape, SpClassParam};
use crate::endoscopy::{
    bijection_forward, bijection_inverse, commutant_pair, endoscopic_group_shape,
    enumerate_endo_data, fiber, iota, is_equi_singular, kappa_of, t_value, tamagawa, BijectionMode,
    EquiSingPair,
};
use crate::exactnum::{arith, PolyQ, QuadElem, Rational};
use crate::localsym::{
    delta_zero, hilbert, hilbert_product, sign_ledger, theta_minus_one, two_power_product, PlaceQ,
    SecondFactor, SignValue,
};
use crate::motive::{local_L_dual1, motive_equal, motive_of_shape, point_count};
use crate::oracle::{
    factor_pool, flip_closure, generator_family, matrices, ConicTable, FiberOracle, FormKind,
};
use crate::rootsys::{
    dim_and_q, discriminant_ratio, exponents, lemma_2n_ratios, positive_roots, rho,
    steinberg_rho_value, varpi_eval, weyl_discriminant, weyl_order, QContext, RootDatum,
};

/// Largest rank for which the endoscopy sweep enumerates the full family.
pub const FAMILY_CAP: u64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("nmax must be at least 1")]
    BadNmax,
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Rootsys,
    Endoscopy,
    Motive,
    Localsym,
}

impl std::str::FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "all" => Suite::All,
            "rootsys" => Suite::Rootsys,
            "endoscopy" => Suite::Endoscopy,
            "motive" => Suite::Motive,
            "localsym" => Suite::Localsym,
            other => return Err(VerifyError::UnknownSuite(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub module: String,
    pub check: String,
    pub anchor: String,
    pub passed: bool,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub nmax: u64,
    pub seed: u64,
    pub passed: bool,
    pub rows: Vec<CheckRow>,
}

type CheckResult = Result<u64, String>;

struct Rows<'a> {
    module: &'a str,
    rows: Vec<CheckRow>,
}

impl Rows<'_> {
    fn run(&mut self, check: &str, anchor: &str, f: impl FnOnce() -> CheckResult) {
        let (passed, cases, counterexample) = match f() {
            Ok(n) => (true, n, None),
            Err(e) => (false, 0, Some(e)),
        };
        self.rows.push(CheckRow {
            module: self.module.to_string(),
            check: check.to_string(),
            anchor: anchor.to_string(),
            passed,
            cases,
            counterexample,
        });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    loop {
        let num = rng.gen_range(-bound..=bound);
        if num != 0 {
            return Rational::new(num, rng.gen_range(1..=bound)).expect("den ≥ 1");
        }
    }
}

fn rootsys_rows(nmax: u64, rng: &mut ChaCha8Rng) -> Vec<CheckRow> {
    let mut r = Rows {
        module: "rootsys",
        rows: vec![],
    };
    for n in 1..=nmax as usize {
        r.run(&format!("lemma2n: 2^-n ratio, n={n}"), "lemma-2n", || {
            let (a, b) = lemma_2n_ratios(n).map_err(|e| e.to_string())?;
            ensure(
                a == Rational::two_pow(-(n as i64)) && b == Rational::two_pow(-2 * n as i64),
                || format!("n={n}: ({a}, {b})"),
            )?;
            Ok(1)
        });
    }
    r.run(
        "steinberg: closed form equals ϖ(ρ)",
        "steinberg-rho",
        || {
            let mut cases = 0;
            for n in 1..=nmax as usize {
                for rd in [RootDatum::b(n), RootDatum::c(n)] {
                    let rd = rd.map_err(|e| e.to_string())?;
                    let a = steinberg_rho_value(&rd).map_err(|e| e.to_string())?;
                    let b = varpi_eval(&rd, &rho(&rd)).map_err(|e| e.to_string())?;
                    ensure(a == b, || format!("{rd}: {a} vs {b}"))?;
                    cases += 1;
                }
            }
            Ok(cases)
        },
    );
    r.run(
        "twinning: B_n and C_n invariants agree",
        "bc-twinning",
        || {
            for n in 1..=nmax as usize {
                let (b, c) = (RootDatum::b(n).unwrap(), RootDatum::c(n).unwrap());
                ensure(
                    exponents(&b) == exponents(&c)
                        && weyl_order(&b) == weyl_order(&c)
                        && positive_roots(&b).len() == positive_roots(&c).len(),
                    || format!("n={n}"),
                )?;
                for ctx in [
                    QContext::RealSplit,
                    QContext::NonarchSplit,
                    QContext::Compact,
                ] {
                    let sp = dim_and_q(AtomKind::Sp, n as u64, ctx).map_err(|e| e.to_string())?;
                    let so =
                        dim_and_q(AtomKind::SoOdd, n as u64, ctx).map_err(|e| e.to_string())?;
                    ensure(sp == so, || format!("n={n}, {ctx:?}"))?;
                }
            }
            Ok(nmax)
        },
    );
    r.run(
        "discriminant: closed form equals D^C/D^B",
        "discriminant-ratio",
        || {
            let mut cases = 0;
            for n in 1..=nmax.min(6) as usize {
                let (b, c) = (RootDatum::b(n).unwrap(), RootDatum::c(n).unwrap());
                let mut done = 0;
                while done < 20 {
                    let t: Vec<Rational> = (0..n).map(|_| random_rational(rng, 9)).collect();
                    let (Ok(db), Ok(dc)) = (weyl_discriminant(&b, &t), weyl_discriminant(&c, &t))
                    else {
                        continue;
                    };
                    let v = discriminant_ratio(n, &t).map_err(|e| e.to_string())?.value;
                    ensure(v == dc / db, || format!("n={n}, t={t:?}"))?;
                    done += 1;
                    cases += 1;
                }
            }
            Ok(cases)
        },
    );
    r.rows
}

fn forward_images(family: &[SpClassParam]) -> Result<Vec<EquiSingPair>, String> {
    let mut out = Vec::new();
    for delta in family {
        let idx = |k: FactorKind| -> Vec<usize> {
            (0..delta.factors.len())
                .filter(|&i| delta.factors[i].kind == k)
                .collect()
        };
        let (field, split) = (idx(FactorKind::Field), idx(FactorKind::Split));
        for mask in 0..1u32 << (field.len() + split.len()) {
            let pick = |v: &[usize], off: usize| -> Vec<usize> {
                v.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> (i + off) & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect()
            };
            let (s, gl) = (pick(&field, 0), pick(&split, field.len()));
            let e = bijection_forward(delta, &s, &gl, BijectionMode::Relaxed)
                .map_err(|e| format!("{delta:?}: {e}"))?;
            let inv = bijection_inverse(e.datum, &e.gamma).map_err(|e| e.to_string())?;
            ensure(
                inv.delta == *delta && inv.isecond == s && inv.gl_second == gl,
                || format!("round trip fails at {delta:?}, I″ = {s:?}"),
            )?;
            let k = kappa_of(&e).map_err(|e| e.to_string())?;
            ensure(k.second_block == s, || format!("κ misses I″ at {delta:?}"))?;
            out.push(e);
        }
    }
    Ok(out)
}

fn endoscopy_rows(nmax: u64) -> Vec<CheckRow> {
    let mut r = Rows {
        module: "endoscopy",
        rows: vec![],
    };
    let cap = nmax.min(FAMILY_CAP);
    let family = generator_family(cap);
    let images = forward_images(&family);
    r.run(
        &format!("bijection: round trip, n ≤ {cap}"),
        "bijection",
        || {
            images
                .as_ref()
                .map(|v| v.len() as u64)
                .map_err(Clone::clone)
        },
    );
    r.run(
        "bijection: forward images are equi-singular",
        "equi-singular",
        || {
            let images = images.as_ref().map_err(Clone::clone)?;
            for e in images {
                let v = is_equi_singular(&e.gamma).map_err(|e| e.to_string())?;
                ensure(v.equi_singular, || format!("{e:?}"))?;
            }
            Ok(images.len() as u64)
        },
    );
    r.run(
        "bijection: inverse then forward is the identity",
        "bijection",
        || {
            let mut cases = 0;
            for delta in &family {
                for datum in enumerate_endo_data(delta.n) {
                    for g in fiber(delta, datum).map_err(|e| e.to_string())? {
                        if !is_equi_singular(&g)
                            .map_err(|e| e.to_string())?
                            .equi_singular
                        {
                            continue;
                        }
                        let inv = bijection_inverse(datum, &g).map_err(|e| e.to_string())?;
                        let e = bijection_forward(
                            &inv.delta,
                            &inv.isecond,
                            &inv.gl_second,
                            BijectionMode::Relaxed,
                        )
                        .map_err(|e| e.to_string())?;
                        ensure(e.gamma == g, || format!("{g:?}"))?;
                        cases += 1;
                    }
                }
            }
            Ok(cases)
        },
    );
    r.run("fiber: matches the char-poly oracle", "fiber", || {
        let oracle = FiberOracle::new(&flip_closure(&factor_pool()), 2 * cap + 1);
        let mut cases = 0;
        for delta in &family {
            for datum in enumerate_endo_data(delta.n) {
                let ours: BTreeSet<_> = fiber(delta, datum)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .collect();
                let theirs = oracle
                    .fiber(delta, datum)
                    .ok_or("outside oracle universe")?;
                ensure(ours == theirs, || format!("{delta:?} at {datum:?}"))?;
                cases += 1;
            }
        }
        Ok(cases)
    });
    r.run("coefficients: ι·τ(H) = 1", "iota-tamagawa", || {
        let mut cases = 0;
        for n in 1..=nmax {
            for d in enumerate_endo_data(n) {
                let t = tamagawa(&endoscopic_group_shape(d)).map_err(|e| e.to_string())?;
                ensure((iota(d) * t).is_one(), || format!("{d:?}"))?;
                cases += 1;
            }
        }
        Ok(cases)
    });
    r.run(
        "commutants: matched, equal motives, t agrees",
        "commutant-pairing",
        || {
            let images = images.as_ref().map_err(Clone::clone)?;
            for e in images {
                let cp = commutant_pair(e).map_err(|e| e.to_string())?;
                ensure(cp.is_complete(), || format!("unmatched atoms: {cp:?}"))?;
                let gm = motive_of_shape(&cp.g_shape).map_err(|e| e.to_string())?;
                let hm = motive_of_shape(&cp.h_shape).map_err(|e| e.to_string())?;
                ensure(motive_equal(&gm, &hm), || format!("motives differ: {e:?}"))?;
                t_value(e).map_err(|e| e.to_string())?;
            }
            Ok(images.len() as u64)
        },
    );
    r.rows
}

fn motive_rows(nmax: u64, rng: &mut ChaCha8Rng) -> Vec<CheckRow> {
    let mut r = Rows {
        module: "motive",
        rows: vec![],
    };
    let shape = |atoms: Vec<Atom>| GroupShape {
        atoms,
        so_even_part: None,
    };
    r.run(
        "L-value: L(M^∨(1))⁻¹ = q^-dim |G(F_q)|",
        "nonramified-measure",
        || {
            let mut cases = 0;
            for n in 1..=nmax.min(8) {
                let m =
                    motive_of_shape(&shape(vec![Atom::sp(2 * n)])).map_err(|e| e.to_string())?;
                for q in [3u64, 5, 7, 9] {
                    let l = local_L_dual1(&m, q).map_err(|e| e.to_string())?;
                    for kind in [AtomKind::Sp, AtomKind::SoOdd] {
                        let c = point_count(kind, n, q).map_err(|e| e.to_string())?;
                        let rhs = Rational::from_int(q as i64)
                            .pow(-((n * (2 * n + 1)) as i64))
                            .expect("q ≠ 0")
                            * Rational::from_int(c);
                        ensure(l.inv() == Some(rhs), || format!("{kind:?}, n={n}, q={q}"))?;
                        cases += 1;
                    }
                }
            }
            Ok(cases)
        },
    );
    r.run("point count: enumeration over F_p", "point-count", || {
        let cases = [
            (FormKind::Symplectic, AtomKind::Sp, 1, 3),
            (FormKind::Symplectic, AtomKind::Sp, 1, 5),
            (FormKind::Orthogonal, AtomKind::SoOdd, 1, 3),
        ];
        for (form, kind, n, p) in cases {
            let e = matrices::group_order(form, n, p);
            let f = point_count(kind, n as u64, p).map_err(|e| e.to_string())?;
            ensure(BigInt::from(e) == f, || {
                format!("{kind:?} n={n} p={p}: {e} vs {f}")
            })?;
        }
        Ok(cases.len() as u64)
    });
    r.run("motive: additive over products", "motive-product", || {
        let pick = |rng: &mut ChaCha8Rng| -> Vec<Atom> {
            (0..rng.gen_range(0..4))
                .map(|_| {
                    let m = rng.gen_range(0..=nmax);
                    if rng.gen_bool(0.5) {
                        Atom::sp(2 * m)
                    } else {
                        Atom::so(2 * m + 1)
                    }
                })
                .collect()
        };
        for _ in 0..50 {
            let (a, b) = (shape(pick(rng)), shape(pick(rng)));
            let lhs = motive_of_shape(&a.concat(&b)).map_err(|e| e.to_string())?;
            let rhs = motive_of_shape(&a)
                .and_then(|x| motive_of_shape(&b).map(|y| x.sum(&y)))
                .map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("{a:?} × {b:?}"))?;
        }
        Ok(50)
    });
    r.rows
}

fn localsym_rows(nmax: u64, rng: &mut ChaCha8Rng) -> Vec<CheckRow> {
    let mut r = Rows {
        module: "localsym",
        rows: vec![],
    };
    r.run(
        "hilbert: agrees with conic solvability, p ≤ 13",
        "hilbert-oracle",
        || {
            let mut cases = 0;
            for p in arith::primes_below(14) {
                let table = ConicTable::for_prime(p);
                for a in (-30i64..=30).filter(|&a| a != 0) {
                    for b in (-30i64..=30).filter(|&b| b != 0) {
                        let h = hilbert(
                            &Rational::from_int(a),
                            &Rational::from_int(b),
                            PlaceQ::Finite(p),
                        )
                        .map_err(|e| e.to_string())?;
                        ensure(h == table.hilbert(a, b), || format!("({a}, {b})_{p}"))?;
                        cases += 1;
                    }
                }
            }
            Ok(cases)
        },
    );
    let corpus: Vec<(Rational, Rational)> = (0..500)
        .map(|_| (random_rational(rng, 200), random_rational(rng, 200)))
        .collect();
    for (i, chunk) in corpus.chunks(100).enumerate() {
        r.run(
            &format!("product formula: batch {}", i + 1),
            "hilbert-reciprocity",
            || {
                for (a, b) in chunk {
                    let p = hilbert_product(a, b).map_err(|e| e.to_string())?;
                    ensure(p == SignValue::Plus, || format!("({a}, {b})"))?;
                }
                Ok(chunk.len() as u64)
            },
        );
    }
    r.run(
        "hilbert: symmetric, bimultiplicative, (a, −a) = 1",
        "hilbert-symbol",
        || {
            let places = [0u64, 2, 3, 5, 7, 11];
            for _ in 0..300 {
                let (a, b, c) = (
                    random_rational(rng, 60),
                    random_rational(rng, 60),
                    random_rational(rng, 60),
                );
                let v = match places[rng.gen_range(0..places.len())] {
                    0 => PlaceQ::Infinite,
                    p => PlaceQ::Finite(p),
                };
                let h = |x: &Rational, y: &Rational| hilbert(x, y, v).expect("nonzero");
                ensure(
                    h(&a, &(&b * &c)) == h(&a, &b) * h(&a, &c)
                        && h(&a, &b) == h(&b, &a)
                        && h(&a, &-&a) == SignValue::Plus,
                    || format!("({a}, {b}, {c}) at {v}"),
                )?;
            }
            Ok(300)
        },
    );
    r.run(
        "theta: global product of |2|^-n is 1",
        "theta-minus-one",
        || {
            let places: Vec<PlaceQ> = std::iter::once(PlaceQ::Infinite)
                .chain(arith::primes_below(100).into_iter().map(PlaceQ::Finite))
                .collect();
            for n in 0..=nmax.max(10) {
                let p: Rational = places.iter().map(|&v| theta_minus_one(n, v)).product();
                ensure(p.is_one() && two_power_product(n).is_one(), || {
                    format!("n={n}")
                })?;
            }
            Ok(nmax.max(10) + 1)
        },
    );
    r.run(
        "delta0: invariant under square classes",
        "delta-zero",
        || {
            let p = PolyQ::from_ints(&[1, -3, 1]);
            let i = QuadElem::new(-1, Rational::zero(), Rational::one()).expect("ℚ(i)");
            let f = [SecondFactor::Field { d: -1, a: i }];
            let det = Rational::from_int(5);
            for _ in 0..100 {
                let s = random_rational(rng, 40);
                let v = match rng.gen_range(0..4) {
                    0 => PlaceQ::Infinite,
                    k => PlaceQ::Finite([2, 3, 5][k - 1]),
                };
                let base = delta_zero(&p, &f, 1, Some(&det), v).map_err(|e| e.to_string())?;
                let scaled = &det * &(&s * &s);
                let moved = delta_zero(&p, &f, 1, Some(&scaled), v).map_err(|e| e.to_string())?;
                ensure(base == moved, || format!("square {s} at {v}"))?;
            }
            Ok(100)
        },
    );
    r.run(
        "sign ledger: q_G = q_H for Sp(2n), SO(2n+1)",
        "q-sign",
        || {
            for n in 1..=nmax {
                let (_, q1) =
                    dim_and_q(AtomKind::Sp, n, QContext::RealSplit).map_err(|e| e.to_string())?;
                let (_, q2) = dim_and_q(AtomKind::SoOdd, n, QContext::RealSplit)
                    .map_err(|e| e.to_string())?;
                let ok = sign_ledger(&q1, &q2, SignValue::Plus, SignValue::Plus)
                    .map_err(|e| e.to_string())?;
                ensure(ok, || format!("n={n}"))?;
            }
            Ok(nmax)
        },
    );
    r.rows
}

pub fn verify(suite: Suite, nmax: u64, seed: u64) -> Result<Report, VerifyError> {
    if nmax == 0 {
        return Err(VerifyError::BadNmax);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let want = |s: Suite| suite == Suite::All || suite == s;
    let mut rows = Vec::new();
    if want(Suite::Rootsys) {
        rows.extend(rootsys_rows(nmax, &mut rng));
    }
    if want(Suite::Endoscopy) {
        rows.extend(endoscopy_rows(nmax));
    }
    if want(Suite::Motive) {
        rows.extend(motive_rows(nmax, &mut rng));
    }
    if want(Suite::Localsym) {
        rows.extend(localsym_rows(nmax, &mut rng));
    }
    Ok(Report {
        suite,
        nmax,
        seed,
        passed: rows.iter().all(|r| r.passed),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rootsys_report_has_lemma_rows() {
        let rep = verify(Suite::Rootsys, 10, 1).unwrap();
        assert!(rep.passed);
        let lemma = rep
            .rows
            .iter()
            .filter(|r| r.check.starts_with("lemma2n: 2^-n ratio"))
            .count();
        assert_eq!(lemma, 10);
    }

    #[test]
    fn localsym_report_has_product_formula_rows() {
        let rep = verify(Suite::Localsym, 2, 3).unwrap();
        assert!(
            rep.passed,
            "{:#?}",
            rep.rows.iter().filter(|r| !r.passed).collect::<Vec<_>>()
        );
        assert!(rep
            .rows
            .iter()
            .any(|r| r.check.starts_with("product formula")));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify(Suite::Motive, 3, 11).unwrap();
        let b = verify(Suite::Motive, 3, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.passed);
    }

    #[test]
    fn nmax_zero_is_rejected() {
        assert_eq!(verify(Suite::All, 0, 0), Err(VerifyError::BadNmax));
    }
}
