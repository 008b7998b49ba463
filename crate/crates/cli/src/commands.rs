//! Command handlers: decode the arguments, call the library, encode the result.

use std::fmt::Display;

use metastab::classparam::{
    char_poly, commutant_shape_so, commutant_shape_sp, validate_so, validate_sp, AnyParam,
    AtomKind, GroupShape, SoClassParam, SpClassParam,
};
use metastab::endoscopy::{
    bijection_forward, bijection_inverse, commutant_pair, correspond as correspond_of,
    endoscopic_group_shape, enumerate_endo_data, fiber as fiber_of, iota as iota_of,
    is_equi_singular, kappa_of, nonramified_pair_check, t_value, tamagawa as tamagawa_of,
    BijectionMode, EndoDatum, EquiSingPair, GammaPair,
};
use metastab::exactnum::{
    irreducibility, is_self_reciprocal, poly_eval, poly_neg_arg, poly_reciprocal, PolyQ, QuadElem,
    Rational,
};
use metastab::localsym::{
    abs_norm, delta_zero, hilbert as hilbert_at, hilbert_product, legendre, relevant_places,
    sgn_quadext, sign_ledger, theta_minus_one, two_power_product, PlaceQ, SecondFactor, SignValue,
};
use metastab::motive::{
    local_L_dual1, motive_equal, motive_of_shape, point_count as count_of, TateMotive,
};
use metastab::rootsys::{
    coroot_btr, dim_and_q, discriminant_ratio, exponents, germ_exponent, lemma_2n_ratios,
    positive_roots, rho as rho_of, steinberg_rho_value, varpi_eval, weyl_discriminant, weyl_order,
    QContext, RootDatum, Unipotent, Weight,
};
use metastab::verify::{verify as run_verify, Suite};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::registry::lookup;
use crate::{CliError, Options, Produced};

const DEFAULT_NMAX: u64 = 4;

fn args<T: DeserializeOwned>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Input(e.to_string()))
}

fn domain(e: impl Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn done(t: impl Serialize) -> Result<Produced, CliError> {
    let result = serde_json::to_value(t).map_err(domain)?;
    Ok(Produced { result, ok: true })
}

/// Split off the `"op"` field, defaulting to the command's first op.
fn take_op(command: &str, mut v: Value) -> Result<(&'static str, Value), CliError> {
    let spec = lookup(command).expect("handler for a registered command");
    let obj = v
        .as_object_mut()
        .ok_or_else(|| CliError::Input("expected a JSON object".into()))?;
    let op = match obj.remove("op") {
        None => spec.ops[0].op,
        Some(Value::String(s)) => spec
            .ops
            .iter()
            .find(|o| o.op == s)
            .map(|o| o.op)
            .ok_or_else(|| {
                let known: Vec<_> = spec.ops.iter().map(|o| o.op).collect();
                CliError::Input(format!(
                    "unknown op {s:?} for {command}; expected one of {known:?}"
                ))
            })?,
        Some(_) => return Err(CliError::Input("\"op\" must be a string".into())),
    };
    Ok((op, v))
}

fn unwired(command: &str, op: &str) -> ! {
    unreachable!("{command}: op {op:?} is registered but has no handler")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyArg {
    p: PolyQ,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Point {
    Rational(Rational),
    Quad(QuadElem),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvalArgs {
    p: PolyQ,
    x: Point,
}

pub(crate) fn poly(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (op, v) = take_op("poly", v)?;
    match op {
        "reciprocal" => done(poly_reciprocal(&args::<PolyArg>(v)?.p).map_err(domain)?),
        "self-reciprocal" => done(is_self_reciprocal(&args::<PolyArg>(v)?.p).map_err(domain)?),
        "neg-arg" => done(poly_neg_arg(&args::<PolyArg>(v)?.p).map_err(domain)?),
        "eval" => {
            let a: EvalArgs = args(v)?;
            match a.x {
                Point::Rational(x) => done(poly_eval(&a.p, &x)),
                Point::Quad(x) => done(poly_eval(&a.p, &x)),
            }
        }
        "irreducible" => {
            let verdict = irreducibility(&args::<PolyArg>(v)?.p);
            done(json!({ "irreducible": verdict.as_bool(), "evidence": verdict }))
        }
        other => unwired("poly", other),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamArg<T> {
    param: T,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyOwned {
    Sp(SpClassParam),
    So(SoClassParam),
}

pub(crate) fn classparam(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (op, v) = take_op("classparam", v)?;
    match op {
        "validate-sp" => {
            done(validate_sp(&args::<ParamArg<SpClassParam>>(v)?.param).map_err(domain)?)
        }
        "validate-so" => {
            done(validate_so(&args::<ParamArg<SoClassParam>>(v)?.param).map_err(domain)?)
        }
        "char-poly" => {
            let p = args::<ParamArg<AnyOwned>>(v)?.param;
            let cp = match &p {
                AnyOwned::Sp(p) => char_poly(AnyParam::Sp(p)),
                AnyOwned::So(p) => char_poly(AnyParam::So(p)),
            }
            .map_err(domain)?;
            let factors: Vec<_> = cp
                .entries()
                .into_iter()
                .map(|(poly, multiplicity)| json!({ "poly": poly, "multiplicity": multiplicity }))
                .collect();
            done(json!({ "factors": factors, "expanded": cp.expand() }))
        }
        other => unwired("classparam", other),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumArg {
    datum: RootDatum,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorootArgs {
    datum: RootDatum,
    alpha: Weight,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DimQArgs {
    kind: AtomKind,
    n: u64,
    context: QContext,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GermArgs {
    shape: GroupShape,
    unipotent: Unipotent,
}

pub(crate) fn roots(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (op, v) = take_op("roots", v)?;
    match op {
        "positive" => done(positive_roots(&args::<DatumArg>(v)?.datum)),
        "coroot" => {
            let a: CorootArgs = args(v)?;
            done(coroot_btr(&a.alpha, &a.datum).map_err(domain)?)
        }
        "exponents" => done(exponents(&args::<DatumArg>(v)?.datum)),
        "weyl-order" => done(weyl_order(&args::<DatumArg>(v)?.datum).to_string()),
        "dim-q" => {
            let a: DimQArgs = args(v)?;
            let (dim, q) = dim_and_q(a.kind, a.n, a.context).map_err(domain)?;
            done(json!({ "dim": dim, "q": q }))
        }
        "germ" => {
            let a: GermArgs = args(v)?;
            done(germ_exponent(&a.shape, a.unipotent).map_err(domain)?)
        }
        other => unwired("roots", other),
    }
}

pub(crate) fn rho(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("rho", v)?;
    done(rho_of(&args::<DatumArg>(v)?.datum))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VarpiArgs {
    datum: RootDatum,
    lambda: Weight,
}

pub(crate) fn varpi(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("varpi", v)?;
    let a: VarpiArgs = args(v)?;
    done(varpi_eval(&a.datum, &a.lambda).map_err(domain)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RankArg {
    n: u64,
}

pub(crate) fn lemma2n(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("lemma2n", v)?;
    let n = usize::try_from(args::<RankArg>(v)?.n).map_err(domain)?;
    let (first, second) = lemma_2n_ratios(n).map_err(domain)?;
    done([first, second])
}

pub(crate) fn steinberg(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("steinberg", v)?;
    done(steinberg_rho_value(&args::<DatumArg>(v)?.datum).map_err(domain)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RatioArgs {
    n: u64,
    t: Vec<Rational>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeylArgs {
    datum: RootDatum,
    t: Vec<Rational>,
}

pub(crate) fn discriminant(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (op, v) = take_op("discriminant", v)?;
    match op {
        "ratio" => {
            let a: RatioArgs = args(v)?;
            let n = usize::try_from(a.n).map_err(domain)?;
            done(discriminant_ratio(n, &a.t).map_err(domain)?)
        }
        "weyl" => {
            let a: WeylArgs = args(v)?;
            done(weyl_discriminant(&a.datum, &a.t).map_err(domain)?)
        }
        other => unwired("discriminant", other),
    }
}

pub(crate) fn endo_data(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("endo-data", v)?;
    done(enumerate_endo_data(args::<RankArg>(v)?.n))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaArg {
    gamma: GammaPair,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NonramifiedArgs {
    gamma: GammaPair,
    p: u64,
}

pub(crate) fn correspond(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("correspond", v)?;
    done(correspond_of(&args::<GammaArg>(v)?.gamma).map_err(domain)?)
}

pub(crate) fn equising(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (op, v) = take_op("equising", v)?;
    match op {
        "check" => done(is_equi_singular(&args::<GammaArg>(v)?.gamma).map_err(domain)?),
        "nonramified" => {
            let a: NonramifiedArgs = args(v)?;
            done(nonramified_pair_check(&a.gamma, a.p).map_err(domain)?)
        }
        other => unwired("equising", other),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FiberArgs {
    delta: SpClassParam,
    datum: EndoDatum,
}

pub(crate) fn fiber(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("fiber", v)?;
    let a: FiberArgs = args(v)?;
    done(fiber_of(&a.delta, a.datum).map_err(domain)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ForwardArgs {
    delta: SpClassParam,
    #[serde(default)]
    isecond: Vec<usize>,
    #[serde(default)]
    gl_second: Vec<usize>,
    #[serde(default)]
    mode: BijectionMode,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InverseArgs {
    datum: EndoDatum,
    gamma: GammaPair,
}

pub(crate) fn bijection(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (op, v) = take_op("bijection", v)?;
    match op {
        "forward" => {
            let a: ForwardArgs = args(v)?;
            done(bijection_forward(&a.delta, &a.isecond, &a.gl_second, a.mode).map_err(domain)?)
        }
        "inverse" => {
            let a: InverseArgs = args(v)?;
            done(bijection_inverse(a.datum, &a.gamma).map_err(domain)?)
        }
        other => unwired("bijection", other),
    }
}

/// An equi-singular pair given directly, by the forward data, or by
/// `(datum, gamma)`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairArgs {
    pair: Option<EquiSingPair>,
    delta: Option<SpClassParam>,
    #[serde(default)]
    isecond: Vec<usize>,
    #[serde(default)]
    gl_second: Vec<usize>,
    mode: Option<BijectionMode>,
    datum: Option<EndoDatum>,
    gamma: Option<GammaPair>,
}

impl PairArgs {
    fn resolve(self) -> Result<EquiSingPair, CliError> {
        let forward_only =
            !self.isecond.is_empty() || !self.gl_second.is_empty() || self.mode.is_some();
        match (self.pair, self.delta, self.datum, self.gamma) {
            (Some(pair), None, None, None) if !forward_only => {
                pair.check().map_err(domain)?;
                Ok(pair)
            }
            (None, Some(delta), None, None) => bijection_forward(
                &delta,
                &self.isecond,
                &self.gl_second,
                self.mode.unwrap_or_default(),
            )
            .map_err(domain),
            (None, None, Some(datum), Some(gamma)) if !forward_only => {
                let inv = bijection_inverse(datum, &gamma).map_err(domain)?;
                bijection_forward(
                    &inv.delta,
                    &inv.isecond,
                    &inv.gl_second,
                    BijectionMode::Relaxed,
                )
                .map_err(domain)
            }
            _ => Err(CliError::Input(
                "give exactly one of: pair; delta with isecond/gl_second/mode; datum with gamma"
                    .into(),
            )),
        }
    }
}

pub(crate) fn kappa(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("kappa", v)?;
    let pair = args::<PairArgs>(v)?.resolve()?;
    done(kappa_of(&pair).map_err(domain)?)
}

pub(crate) fn tvalue(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("tvalue", v)?;
    let pair = args::<PairArgs>(v)?.resolve()?;
    done(t_value(&pair).map_err(domain)?)
}

pub(crate) fn commutants(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (op, v) = take_op("commutants", v)?;
    match op {
        "pair" => {
            let pair = args::<PairArgs>(v)?.resolve()?;
            done(commutant_pair(&pair).map_err(domain)?)
        }
        "sp" => {
            done(commutant_shape_sp(&args::<ParamArg<SpClassParam>>(v)?.param).map_err(domain)?)
        }
        "so" => {
            done(commutant_shape_so(&args::<ParamArg<SoClassParam>>(v)?.param).map_err(domain)?)
        }
        other => unwired("commutants", other),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EndoDatumArg {
    datum: EndoDatum,
}

pub(crate) fn iota(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("iota", v)?;
    done(iota_of(args::<EndoDatumArg>(v)?.datum))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeArg {
    shape: GroupShape,
}

pub(crate) fn tamagawa(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (op, v) = take_op("tamagawa", v)?;
    match op {
        "tamagawa" => {
            let shape = match v.get("datum") {
                Some(_) => endoscopic_group_shape(args::<EndoDatumArg>(v)?.datum),
                None => args::<ShapeArg>(v)?.shape,
            };
            done(tamagawa_of(&shape).map_err(domain)?)
        }
        "endoscopic-group" => done(endoscopic_group_shape(args::<EndoDatumArg>(v)?.datum)),
        other => unwired("tamagawa", other),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EqualArgs {
    a: TateMotive,
    b: TateMotive,
}

pub(crate) fn motive(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (op, v) = take_op("motive", v)?;
    match op {
        "of-shape" => done(motive_of_shape(&args::<ShapeArg>(v)?.shape).map_err(domain)?),
        "equal" => {
            let a: EqualArgs = args(v)?;
            done(motive_equal(&a.a, &a.b))
        }
        other => unwired("motive", other),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LfactorArgs {
    motive: Option<TateMotive>,
    shape: Option<GroupShape>,
    q: u64,
}

pub(crate) fn lfactor(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("lfactor", v)?;
    let a: LfactorArgs = args(v)?;
    let m = match (a.motive, a.shape) {
        (Some(m), None) => m,
        (None, Some(s)) => motive_of_shape(&s).map_err(domain)?,
        _ => return Err(CliError::Input("give exactly one of motive, shape".into())),
    };
    done(local_L_dual1(&m, a.q).map_err(domain)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CountArgs {
    kind: AtomKind,
    n: u64,
    q: u64,
}

pub(crate) fn point_count(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("point-count", v)?;
    let a: CountArgs = args(v)?;
    done(count_of(a.kind, a.n, a.q).map_err(domain)?.to_string())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HilbertArgs {
    a: Rational,
    b: Rational,
    place: PlaceQ,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LegendreArgs {
    a: Rational,
    p: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SgnArgs {
    d: i64,
    x: Rational,
    place: PlaceQ,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LedgerArgs {
    q1: Rational,
    q2: Rational,
    e1: SignValue,
    e2: SignValue,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NormArgs {
    x: Rational,
    place: PlaceQ,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductArgs {
    a: Rational,
    b: Rational,
}

pub(crate) fn hilbert(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (op, v) = take_op("hilbert", v)?;
    match op {
        "hilbert" => {
            let a: HilbertArgs = args(v)?;
            done(hilbert_at(&a.a, &a.b, a.place).map_err(domain)?)
        }
        "legendre" => {
            let a: LegendreArgs = args(v)?;
            if !a.a.is_integer() {
                return Err(CliError::Input(format!(
                    "legendre needs an integer, got {}",
                    a.a
                )));
            }
            let value = legendre(a.a.numer(), a.p).map_err(domain)?;
            done(value.map_or(0, i8::from))
        }
        "sgn" => {
            let a: SgnArgs = args(v)?;
            done(sgn_quadext(a.d, &a.x, a.place).map_err(domain)?)
        }
        "sign-ledger" => {
            let a: LedgerArgs = args(v)?;
            done(sign_ledger(&a.q1, &a.q2, a.e1, a.e2).map_err(domain)?)
        }
        "abs-norm" => {
            let a: NormArgs = args(v)?;
            done(abs_norm(&a.x, a.place).map_err(domain)?)
        }
        "product" => {
            let a: ProductArgs = args(v)?;
            let places = relevant_places(&a.a, &a.b).map_err(domain)?;
            let product = hilbert_product(&a.a, &a.b).map_err(domain)?;
            done(json!({ "places": places, "product": product }))
        }
        other => unwired("hilbert", other),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Delta0Args {
    charpoly: PolyQ,
    factors: Vec<SecondFactor>,
    nprime: u64,
    det: Option<Rational>,
    place: PlaceQ,
}

pub(crate) fn delta0(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("delta0", v)?;
    let a: Delta0Args = args(v)?;
    done(delta_zero(&a.charpoly, &a.factors, a.nprime, a.det.as_ref(), a.place).map_err(domain)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaArgs {
    n: u64,
    place: PlaceQ,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoPowerArgs {
    t: u64,
}

pub(crate) fn theta(v: Value, _: &Options) -> Result<Produced, CliError> {
    let (op, v) = take_op("theta", v)?;
    match op {
        "theta" => {
            let a: ThetaArgs = args(v)?;
            done(theta_minus_one(a.n, a.place))
        }
        "two-power" => done(two_power_product(args::<TwoPowerArgs>(v)?.t)),
        other => unwired("theta", other),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyArgs {
    suite: Option<String>,
    nmax: Option<u64>,
    seed: Option<u64>,
}

/// Flags take precedence over fields of the input document.
pub(crate) fn verify(v: Value, opts: &Options) -> Result<Produced, CliError> {
    let (_, v) = take_op("verify", v)?;
    let a: VerifyArgs = args(v)?;
    let suite: Suite = opts
        .suite
        .clone()
        .or(a.suite)
        .as_deref()
        .unwrap_or("all")
        .parse()
        .map_err(|e| CliError::Input(format!("{e}")))?;
    let nmax = opts.nmax.or(a.nmax).unwrap_or(DEFAULT_NMAX);
    let seed = opts.seed.or(a.seed).unwrap_or(0);
    let report = run_verify(suite, nmax, seed).map_err(|e| CliError::Input(e.to_string()))?;
    let ok = report.passed;
    let result = serde_json::to_value(report).map_err(domain)?;
    Ok(Produced { result, ok })
}
