//! The command table. Each command names the library operations it reaches;
//! each library operation is reached by exactly one command.

use serde_json::Value;

use crate::commands as c;
use crate::{CliError, Options, Produced};

pub(crate) type Handler = fn(Value, &Options) -> Result<Produced, CliError>;

/// One `"op"` value of a command and the library operation behind it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpSpec {
    pub op: &'static str,
    pub operation: &'static str,
}

#[derive(Clone, Copy)]
pub struct CommandSpec {
    pub name: &'static str,
    /// Traceability anchor echoed as `paper_ref` in every envelope.
    pub anchor: &'static str,
    pub summary: &'static str,
    /// The first entry is the default when `"op"` is absent.
    pub ops: &'static [OpSpec],
    pub(crate) handler: Handler,
}

impl std::fmt::Debug for CommandSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CommandSpec")
            .field("name", &self.name)
            .field("ops", &self.ops)
            .finish()
    }
}

const fn op(op: &'static str, operation: &'static str) -> OpSpec {
    OpSpec { op, operation }
}

pub static REGISTRY: &[CommandSpec] = &[
    CommandSpec {
        name: "poly",
        anchor: "polynomials",
        summary: "reciprocal, sign flip, evaluation and irreducibility of polynomials over Q",
        ops: &[
            op("reciprocal", "poly_reciprocal"),
            op("self-reciprocal", "is_self_reciprocal"),
            op("neg-arg", "poly_neg_arg"),
            op("eval", "poly_eval"),
            op("irreducible", "is_irreducible_q"),
        ],
        handler: c::poly,
    },
    CommandSpec {
        name: "classparam",
        anchor: "class-parameters",
        summary: "validate Sp/SO class parameters and expand characteristic polynomials",
        ops: &[
            op("validate-sp", "validate_sp"),
            op("validate-so", "validate_so"),
            op("char-poly", "char_poly"),
        ],
        handler: c::classparam,
    },
    CommandSpec {
        name: "roots",
        anchor: "root-systems-bc",
        summary: "positive roots, coroots, exponents, Weyl orders, dimensions and q-values",
        ops: &[
            op("positive", "positive_roots"),
            op("coroot", "coroot_btr"),
            op("exponents", "exponents"),
            op("weyl-order", "weyl_order"),
            op("dim-q", "dim_and_q"),
            op("germ", "germ_exponent"),
        ],
        handler: c::roots,
    },
    CommandSpec {
        name: "rho",
        anchor: "half-sum-rho",
        summary: "half-sum of positive roots",
        ops: &[op("rho", "rho")],
        handler: c::rho,
    },
    CommandSpec {
        name: "varpi",
        anchor: "varpi-product",
        summary: "evaluate the product of positive coroots at a weight",
        ops: &[op("varpi", "varpi_eval")],
        handler: c::varpi,
    },
    CommandSpec {
        name: "lemma2n",
        anchor: "lemma-2n",
        summary: "the ratios 2^-n and 2^-2n of varpi values at rho",
        ops: &[op("lemma2n", "lemma_2n_ratios")],
        handler: c::lemma2n,
    },
    CommandSpec {
        name: "steinberg",
        anchor: "steinberg-rho",
        summary: "closed-form value of varpi at rho",
        ops: &[op("steinberg", "steinberg_rho_value")],
        handler: c::steinberg,
    },
    CommandSpec {
        name: "discriminant",
        anchor: "weyl-discriminant",
        summary: "Weyl discriminants and the C/B discriminant ratio",
        ops: &[
            op("ratio", "discriminant_ratio"),
            op("weyl", "weyl_discriminant"),
        ],
        handler: c::discriminant,
    },
    CommandSpec {
        name: "endo-data",
        anchor: "endoscopic-data",
        summary: "list the endoscopic data (n', n'') of Sp(2n)",
        ops: &[op("endo-data", "enumerate_endo_data")],
        handler: c::endo_data,
    },
    CommandSpec {
        name: "correspond",
        anchor: "class-correspondence",
        summary: "the Sp(2n) class matching a pair of SO classes",
        ops: &[op("correspond", "correspond")],
        handler: c::correspond,
    },
    CommandSpec {
        name: "equising",
        anchor: "equi-singular",
        summary: "equi-singularity verdicts and good-reduction checks",
        ops: &[
            op("check", "is_equi_singular"),
            op("nonramified", "nonramified_pair_check"),
        ],
        handler: c::equising,
    },
    CommandSpec {
        name: "fiber",
        anchor: "correspondence-fiber",
        summary: "all SO pairs over a given Sp class",
        ops: &[op("fiber", "fiber")],
        handler: c::fiber,
    },
    CommandSpec {
        name: "bijection",
        anchor: "bijection",
        summary: "the map between (delta, factor choice) and equi-singular pairs, both ways",
        ops: &[
            op("forward", "bijection_forward"),
            op("inverse", "bijection_inverse"),
        ],
        handler: c::bijection,
    },
    CommandSpec {
        name: "kappa",
        anchor: "kappa-character",
        summary: "the character kappa attached to an equi-singular pair",
        ops: &[op("kappa", "kappa_of")],
        handler: c::kappa,
    },
    CommandSpec {
        name: "tvalue",
        anchor: "t-value",
        summary: "half the total multiplicity of the eigenvalues +1 and -1",
        ops: &[op("tvalue", "t_value")],
        handler: c::tvalue,
    },
    CommandSpec {
        name: "commutants",
        anchor: "commutant-pairing",
        summary: "commutant shapes and their matching across an equi-singular pair",
        ops: &[
            op("pair", "commutant_pair"),
            op("sp", "commutant_shape_sp"),
            op("so", "commutant_shape_so"),
        ],
        handler: c::commutants,
    },
    CommandSpec {
        name: "iota",
        anchor: "coefficient-iota",
        summary: "the stabilization coefficient of an endoscopic datum",
        ops: &[op("iota", "iota")],
        handler: c::iota,
    },
    CommandSpec {
        name: "tamagawa",
        anchor: "tamagawa-tau",
        summary: "Tamagawa number of a group shape or of the group attached to a datum",
        ops: &[
            op("tamagawa", "tamagawa"),
            op("endoscopic-group", "endoscopic_group_shape"),
        ],
        handler: c::tamagawa,
    },
    CommandSpec {
        name: "motive",
        anchor: "artin-tate-motive",
        summary: "Artin-Tate motive of a group shape, and motive equality",
        ops: &[
            op("of-shape", "motive_of_shape"),
            op("equal", "motive_equal"),
        ],
        handler: c::motive,
    },
    CommandSpec {
        name: "lfactor",
        anchor: "local-l-value",
        summary: "local L-value of the dual motive twisted by one",
        ops: &[op("lfactor", "local_L_dual1")],
        handler: c::lfactor,
    },
    CommandSpec {
        name: "point-count",
        anchor: "finite-field-order",
        summary: "order of Sp(2n, F_q) or SO(2n+1, F_q)",
        ops: &[op("point-count", "point_count")],
        handler: c::point_count,
    },
    CommandSpec {
        name: "hilbert",
        anchor: "hilbert-symbol",
        summary: "Hilbert and Legendre symbols, quadratic norm characters, sign ledger",
        ops: &[
            op("hilbert", "hilbert"),
            op("legendre", "legendre"),
            op("sgn", "sgn_quadext"),
            op("sign-ledger", "sign_ledger"),
            op("abs-norm", "abs_norm"),
            op("product", "hilbert_product"),
        ],
        handler: c::hilbert,
    },
    CommandSpec {
        name: "delta0",
        anchor: "transfer-sign",
        summary: "the sign factor of the transfer factor at a place",
        ops: &[op("delta0", "delta_zero")],
        handler: c::delta0,
    },
    CommandSpec {
        name: "theta",
        anchor: "theta-at-minus-one",
        summary: "local values |2|^-n and global products of powers of |2|",
        ops: &[
            op("theta", "theta_minus_one"),
            op("two-power", "two_power_product"),
        ],
        handler: c::theta,
    },
    CommandSpec {
        name: "verify",
        anchor: "invariant-sweep",
        summary: "run the invariant suites and report each check",
        ops: &[op("verify", "verify")],
        handler: c::verify,
    },
];

pub fn lookup(name: &str) -> Option<&'static CommandSpec> {
    REGISTRY.iter().find(|c| c.name == name)
}

pub fn command_names() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|c| c.name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn names_and_ops_are_unique() {
        let names: BTreeSet<_> = command_names().collect();
        assert_eq!(names.len(), REGISTRY.len());
        for c in REGISTRY {
            let ops: BTreeSet<_> = c.ops.iter().map(|o| o.op).collect();
            assert_eq!(ops.len(), c.ops.len(), "{}", c.name);
        }
    }
}
