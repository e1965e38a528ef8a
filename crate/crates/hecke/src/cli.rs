//! The `hecke` command line.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_core::derived::{
    cohomology, glue_inverse_limit, hecke_quotient, idempotent_split, nilpotent_kernel_exponent, nullhomotopy,
    random_complex, random_square_zero_input, random_tower, square_zero_check, tower_round_trip, FiniteComplex,
};
use hecke_core::heckepoly::{
    build_p_g, build_p_m, char_poly, dual_twist_char_poly, eisenstein_consistency, verify_factorization, HeckePoly,
};
use hecke_core::modpk::PrimePower;
use hecke_core::oracle::{coset_count, CosetOracle, DoubleCosetLabel, TallyFn};
use hecke_core::satake::{
    parabolic_satake_gl_with, rationality_check, satake_gl_basis, unitary_basis, unitary_satake, ExponentConvention,
    Side, UnitaryCase,
};
use hecke_core::weights::{is_dominant, GLWeight, TwistVariant, UnitaryWeight};
use hecke_core::ZMod;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::io::{self, s, strings, FormatError};
use crate::parallel::parallel_tally;
use crate::report::{Format, Report};

pub const THREADS_ENV: &str = "HECKE_THREADS";

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Exact Hecke algebra computations")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Worker threads for the coset oracle; 0 lets rayon decide.
    #[arg(long, env = THREADS_ENV, default_value_t = 0, global = true)]
    pub threads: usize,
    /// Adds wall-clock time to the report (the output is then not reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Satake images of Hecke operators.
    #[command(subcommand)]
    Satake(SatakeCmd),
    /// Hecke polynomials.
    #[command(subcommand)]
    Heckepoly(HeckepolyCmd),
    /// Brute-force coset enumeration for GL_n(Q_p).
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Weight bookkeeping.
    #[command(subcommand)]
    Weights(WeightsCmd),
    /// Complexes over Z/p^N and their derived Hecke algebras.
    #[command(subcommand)]
    Complex(ComplexCmd),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CaseArg {
    Split,
    Inert,
}

impl From<CaseArg> for UnitaryCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Split => UnitaryCase::Split,
            CaseArg::Inert => UnitaryCase::Inert,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    Halved,
    Printed,
}

impl From<ConventionArg> for ExponentConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Halved => ExponentConvention::Halved,
            ConventionArg::Printed => ExponentConvention::Printed,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum SatakeCmd {
    /// T_{GL_n,i} in Satake coordinates.
    Gl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: Option<usize>,
    },
    /// T_{G,w,i} on U(n,n) and its image on Res GL_n.
    Unitary {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        i: Option<usize>,
    },
    /// The unnormalized Satake transform to a standard Levi of GL_n.
    Transform {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        partition: Vec<usize>,
        #[arg(long, value_enum, default_value = "halved")]
        convention: ConventionArg,
        #[arg(long)]
        i: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PolySide {
    /// P_{G,w} on the unitary group.
    G,
    /// P_{M,w} on the Levi.
    W,
    /// P_{M,w^c} on the Levi.
    Wc,
}

#[derive(Args, Debug)]
pub struct NumericPoly {
    /// Hecke values a_1..a_m; the polynomial is X^m + sum (-1)^j q^{j(j-1)/2} a_j X^{m-j}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    values: Vec<i64>,
    #[arg(long)]
    q: i64,
    #[arg(long, default_value_t = 101)]
    modulus: u64,
}

#[derive(Subcommand, Debug)]
pub enum HeckepolyCmd {
    /// Coefficients of P_{G,w} or P_{M,w}, low degree first.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, value_enum, default_value = "g")]
        side: PolySide,
    },
    /// The dual polynomial and the dual-twist polynomial of numeric Hecke values.
    Dual(NumericPoly),
    /// Cyclotomic and character twists of numeric Hecke values.
    Twist {
        #[command(flatten)]
        poly: NumericPoly,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        cyclotomic: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        character: i64,
    },
    /// Eisenstein polynomial against the parabolic pullback at a Levi point.
    Eisenstein {
        #[arg(long, value_delimiter = ',')]
        partition: Vec<usize>,
        /// Values of the block variables, in block order.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Vec<i64>,
        #[arg(long = "sqrt-q")]
        sqrt_q: i64,
        #[arg(long, default_value_t = 101)]
        modulus: u64,
    },
    /// Exact check of the factorization of the unitary Hecke polynomial.
    VerifyFactorization {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        case: CaseArg,
    },
}

#[derive(Args, Debug)]
pub struct Bounds {
    /// Largest exponent spread allowed in a label.
    #[arg(long, default_value_t = 2)]
    max_exponent: i64,
    #[arg(long, default_value_t = 3)]
    max_n: usize,
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    /// Left cosets in the double coset of diag(p^a).
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        label: Vec<i64>,
        /// Lists the Hermite forms of the cosets.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Structure constants of a product of double cosets.
    Convolve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<i64>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Constant term along a standard Levi, and which exponent convention matches it.
    ConstantTerm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',')]
        partition: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        label: Vec<i64>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Enumerated structure constants against products of Satake images.
    Compare {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required_unless_present = "all")]
        a: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required_unless_present = "all")]
        b: Vec<i64>,
        /// Every pair of labels with exponents in [0, max-exponent].
        #[arg(long, conflicts_with_all = ["a", "b"])]
        all: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    Plain,
    Regular,
}

impl From<VariantArg> for TwistVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Plain => TwistVariant::Plain,
            VariantArg::Regular => TwistVariant::Regular,
        }
    }
}

#[derive(Args, Debug)]
pub struct LambdaArg {
    /// One `lambda:lambda_c` pair per embedding, e.g. `1,0:0,-1`; repeat for more embeddings.
    #[arg(long, required = true, allow_hyphen_values = true)]
    lambda: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum WeightsCmd {
    /// The U(2n) weight of a GL_n x GL_n weight.
    Dict(LambdaArg),
    /// Twist by det^w, or by the minimal dominant twist of a variant.
    Twist {
        #[command(flatten)]
        lambda: LambdaArg,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "variant")]
        w: Option<i64>,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
    },
    /// The small-weight bound for a U(2n) weight.
    LanSuh {
        /// One component per embedding; repeat for more embeddings.
        #[arg(long, required = true, allow_hyphen_values = true)]
        a: Vec<String>,
        /// Number of embeddings; must match the number of components.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        p: u64,
    },
    /// The Levi small-weight bound for a GL_n x GL_n weight.
    LeviCheck {
        #[command(flatten)]
        lambda: LambdaArg,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Args, Debug)]
pub struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, default_value_t = 2)]
    exponent: u32,
    /// Number of degrees.
    #[arg(long, default_value_t = 3)]
    len: usize,
    #[arg(long, default_value_t = 3)]
    max_rank: usize,
}

#[derive(Subcommand, Debug)]
pub enum ComplexCmd {
    /// H^i as invariant factors.
    Cohomology {
        /// Complex as JSON, inline or a path.
        #[arg(long)]
        complex: String,
    },
    /// A homotopy h with dh + hd = f, if one exists.
    Nullhomotopy {
        #[arg(long)]
        complex: String,
        /// Target complex; defaults to the source.
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        map: String,
    },
    /// The algebra generated by endomorphisms up to homotopy, with its nilpotency.
    Quotient {
        #[arg(long)]
        complex: String,
        /// List of endomorphisms.
        #[arg(long)]
        ops: String,
    },
    /// The square-zero lemma, on one input or on seeded random triangles.
    SquareZero {
        /// Object with fields a, b, u, s, t.
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Splits the complex along lifted idempotents of the algebra of the operators.
    Idempotents {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        ops: String,
    },
    /// Glues a tower f_1..f_N of maps mod p^k; random when no tower is given.
    Glue {
        #[arg(long, requires = "tower")]
        complex: Option<String>,
        #[arg(long, requires = "complex")]
        tower: Option<String>,
        #[command(flatten)]
        random: RandomArgs,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct UsageError(String);

impl From<FormatError> for UsageError {
    fn from(e: FormatError) -> Self {
        UsageError(e.0)
    }
}

impl From<hecke_core::Error> for UsageError {
    fn from(e: hecke_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, UsageError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let start = Instant::now();
    match pool.install(|| dispatch(&cli.command)) {
        Ok(mut report) => {
            if cli.timing {
                report.set("elapsed_ms", s(start.elapsed().as_millis()));
            }
            Outcome { code: report.exit_code(), stdout: report.render(cli.format), stderr: String::new() }
        }
        Err(UsageError(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Satake(c) => satake(c),
        Command::Heckepoly(c) => heckepoly(c),
        Command::Oracle(c) => oracle(c),
        Command::Weights(c) => weights(c),
        Command::Complex(c) => complex(c),
    }
}

fn indices(n: usize, i: Option<usize>) -> Result<Vec<usize>> {
    match i {
        Some(i) if i == 0 || i > n => usage(format!("--i must be in 1..={n}")),
        Some(i) => Ok(vec![i]),
        None => Ok((1..=n).collect()),
    }
}

fn satake(cmd: &SatakeCmd) -> Result<Report> {
    match cmd {
        SatakeCmd::Gl { n, i } => {
            let mut r = Report::new("satake gl", json!({ "n": s(n) }));
            let mut out = Vec::new();
            let mut rational = true;
            for i in indices(*n, *i)? {
                let h = satake_gl_basis(*n, i)?;
                rational &= rationality_check(&h);
                out.push(json!({ "i": s(i), "image": s(h.poly()) }));
            }
            r.set("operators", Value::Array(out)).set("rational", Value::Bool(rational));
            Ok(r)
        }
        SatakeCmd::Unitary { n, case, i } => {
            let case = UnitaryCase::from(*case);
            let mut r = Report::new("satake unitary", json!({ "n": s(n), "case": s(format!("{case:?}").to_lowercase()) }));
            let mut out = Vec::new();
            for i in indices(2 * n, *i)? {
                let h = unitary_basis(case, *n, i)?;
                let image = unitary_satake(case, *n, &h)?;
                out.push(json!({ "i": s(i), "operator": s(h.poly()), "levi_image": s(image.poly()), "rational": rationality_check(&h) }));
            }
            r.set("operators", Value::Array(out));
            Ok(r)
        }
        SatakeCmd::Transform { n, partition, convention, i } => {
            let conv = ExponentConvention::from(*convention);
            let mut r = Report::new(
                "satake transform",
                json!({ "n": s(n), "partition": strings(partition), "convention": s(format!("{conv:?}").to_lowercase()) }),
            );
            let mut out = Vec::new();
            for i in indices(*n, *i)? {
                let h = satake_gl_basis(*n, i)?;
                let image = parabolic_satake_gl_with(*n, partition, &h, conv)?;
                out.push(json!({ "i": s(i), "image": s(image.poly()) }));
            }
            r.set("operators", Value::Array(out));
            Ok(r)
        }
    }
}

fn zmod_poly(p: &NumericPoly) -> Result<(HeckePoly<ZMod>, ZMod)> {
    if p.modulus < 2 || p.modulus >= 1 << 62 {
        return usage("--modulus must be in [2, 2^62)");
    }
    let q = ZMod::new(p.q, p.modulus);
    let values: Vec<ZMod> = p.values.iter().map(|v| ZMod::new(*v, p.modulus)).collect();
    Ok((char_poly(&values, &q), q))
}

fn poly_json<R: hecke_core::Ring + std::fmt::Display>(p: &HeckePoly<R>) -> Value {
    strings(p.coeffs().iter().map(|c| c.to_string()))
}

fn numeric_inputs(p: &NumericPoly) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("values".into(), strings(&p.values));
    m.insert("q".into(), s(p.q));
    m.insert("modulus".into(), s(p.modulus));
    m
}

fn heckepoly(cmd: &HeckepolyCmd) -> Result<Report> {
    match cmd {
        HeckepolyCmd::Build { n, case, side } => {
            let c = UnitaryCase::from(*case);
            let poly = match side {
                PolySide::G => build_p_g(c, *n)?,
                PolySide::W => build_p_m(c, *n, Side::W)?,
                PolySide::Wc => build_p_m(c, *n, Side::Wc)?,
            };
            let side_name = format!("{side:?}").to_lowercase();
            let mut r = Report::new(
                "heckepoly build",
                json!({ "n": s(n), "case": s(format!("{case:?}").to_lowercase()), "side": s(side_name) }),
            );
            r.set("degree", s(poly.degree())).set("coefficients", poly_json(&poly));
            Ok(r)
        }
        HeckepolyCmd::Dual(p) => {
            let (poly, q) = zmod_poly(p)?;
            let mut r = Report::new("heckepoly dual", Value::Object(numeric_inputs(p)));
            let values: Vec<ZMod> = p.values.iter().map(|v| ZMod::new(*v, p.modulus)).collect();
            let dual = poly.dual()?;
            let dual_twist = dual_twist_char_poly(&values, &q)?;
            r.set("polynomial", poly_json(&poly))
                .set("dual", poly_json(&dual))
                .set("dual_twist", poly_json(&dual_twist));
            let involution = dual.dual()? == poly;
            r.verdict(involution);
            Ok(r)
        }
        HeckepolyCmd::Twist { poly: p, cyclotomic, character } => {
            let (poly, q) = zmod_poly(p)?;
            let mut inputs = numeric_inputs(p);
            inputs.insert("cyclotomic".into(), s(cyclotomic));
            inputs.insert("character".into(), s(character));
            let mut r = Report::new("heckepoly twist", Value::Object(inputs));
            let twisted = poly.cyclotomic_twist(*cyclotomic, &q)?.character_twist(&ZMod::new(*character, p.modulus))?;
            r.set("polynomial", poly_json(&poly))
                .set("twisted", poly_json(&twisted))
                .set("twisted_values", strings(twisted.hecke_values(&q)?));
            Ok(r)
        }
        HeckepolyCmd::Eisenstein { partition, z, sqrt_q, modulus } => {
            if *modulus < 2 || *modulus >= 1 << 62 {
                return usage("--modulus must be in [2, 2^62)");
            }
            let n: usize = partition.iter().sum();
            if z.len() != n {
                return usage(format!("--z needs {n} values"));
            }
            let zs: Vec<ZMod> = z.iter().map(|v| ZMod::new(*v, *modulus)).collect();
            let check = eisenstein_consistency(partition, &zs, &ZMod::new(*sqrt_q, *modulus))?;
            let mut r = Report::new(
                "heckepoly eisenstein",
                json!({ "partition": strings(partition), "z": strings(z), "sqrt_q": s(sqrt_q), "modulus": s(modulus) }),
            );
            r.set("eisenstein", poly_json(&check.eisenstein)).set("pullback", poly_json(&check.pullback));
            r.verdict(check.agree());
            Ok(r)
        }
        HeckepolyCmd::VerifyFactorization { n, case } => {
            let rep = verify_factorization(*n, (*case).into())?;
            let mut r = Report::new(
                "heckepoly verify-factorization",
                json!({ "n": s(n), "case": s(format!("{case:?}").to_lowercase()) }),
            );
            r.verdict(rep.ok);
            r.set("lhs", strings(&rep.lhs)).set("rhs", strings(&rep.rhs));
            Ok(r)
        }
    }
}

fn label(n: usize, exps: &[i64], bounds: &Bounds) -> Result<DoubleCosetLabel> {
    if n == 0 || n > bounds.max_n {
        return usage(format!("n must be in 1..={} (raise --max-n to go further)", bounds.max_n));
    }
    if exps.len() != n {
        return usage(format!("label {exps:?} needs {n} exponents"));
    }
    let l = DoubleCosetLabel::new(exps.to_vec())?;
    let spread = l.exponents().last().unwrap() - l.exponents()[0];
    if spread > bounds.max_exponent {
        return usage(format!("label {l} exceeds --max-exponent {}", bounds.max_exponent));
    }
    Ok(l)
}

fn prime(p: u64) -> Result<u64> {
    if !hecke_core::weights::is_prime(p) {
        return usage(format!("{p} is not prime"));
    }
    Ok(p)
}

fn all_labels(n: usize, max: i64) -> Vec<DoubleCosetLabel> {
    fn rec(k: usize, lo: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<DoubleCosetLabel>) {
        if k == cur.len() {
            out.push(DoubleCosetLabel::new(cur.clone()).expect("sorted label"));
            return;
        }
        for v in lo..=max {
            cur[k] = v;
            rec(k + 1, v, max, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, 0, max, &mut vec![0; n], &mut out);
    out
}

fn constants_json(m: &std::collections::BTreeMap<DoubleCosetLabel, u64>) -> Value {
    Value::Object(m.iter().map(|(l, c)| (l.to_string(), s(c))).collect())
}

fn oracle(cmd: &OracleCmd) -> Result<Report> {
    let tally: TallyFn = &parallel_tally;
    match cmd {
        OracleCmd::Enumerate { n, p, label: exps, list, bounds } => {
            let l = label(*n, exps, bounds)?;
            let mut o = CosetOracle::new(prime(*p)?)?;
            let cosets = o.cosets(&l)?;
            let mut r = Report::new("oracle enumerate", json!({ "n": s(n), "p": s(p), "label": s(&l) }));
            r.set("count", s(cosets.len())).set("expected", s(coset_count(*p, &l)));
            if *list {
                r.set("cosets", Value::Array(cosets.iter().map(|c| Value::Array(c.rows().into_iter().map(strings).collect())).collect()));
            }
            r.verdict(coset_count(*p, &l) == cosets.len().into());
            Ok(r)
        }
        OracleCmd::Convolve { n, p, a, b, bounds } => {
            let (a, b) = (label(*n, a, bounds)?, label(*n, b, bounds)?);
            let mut o = CosetOracle::new(prime(*p)?)?;
            let conv = o.convolve_with(&a, &b, tally)?;
            let mut r = Report::new("oracle convolve", json!({ "n": s(n), "p": s(p), "a": s(&a), "b": s(&b) }));
            r.set("constants", constants_json(&conv.constants)).set("pairs", s(conv.pairs));
            Ok(r)
        }
        OracleCmd::ConstantTerm { n, p, partition, label: exps, bounds } => {
            let l = label(*n, exps, bounds)?;
            let mut o = CosetOracle::new(prime(*p)?)?;
            let ct = o.constant_term(partition, &l)?;
            let coefficients: Map<String, Value> = ct
                .coefficients
                .iter()
                .map(|(ls, c)| (ls.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("x"), s(c)))
                .collect();
            let halved = o.parabolic_check(partition, &l, ExponentConvention::Halved)?.agree();
            let printed = o.parabolic_check(partition, &l, ExponentConvention::Printed)?.agree();
            let verdict = match (halved, printed) {
                (true, false) => "halved exponents are the unique match".to_string(),
                (false, true) => "printed exponents are the unique match".to_string(),
                (h, pr) => format!("no unique match (halved: {h}, printed: {pr})"),
            };
            let mut r = Report::new(
                "oracle constant-term",
                json!({ "n": s(n), "p": s(p), "partition": strings(partition), "label": s(&l) }),
            );
            r.set("coefficients", Value::Object(coefficients))
                .set("representatives", s(ct.representatives))
                .set("conventions", json!({ "halved": halved, "printed": printed }))
                .set("verdict", s(verdict));
            r.verdict(halved);
            Ok(r)
        }
        OracleCmd::Compare { n, p, a, b, all, bounds } => {
            let pairs: Vec<(DoubleCosetLabel, DoubleCosetLabel)> = if *all {
                label(*n, &vec![0; *n], bounds)?;
                let ls = all_labels(*n, bounds.max_exponent);
                ls.iter().flat_map(|x| ls.iter().map(move |y| (x.clone(), y.clone()))).collect()
            } else {
                vec![(label(*n, a, bounds)?, label(*n, b, bounds)?)]
            };
            let mut o = CosetOracle::new(prime(*p)?)?;
            let mut inputs = Map::new();
            inputs.insert("n".into(), s(n));
            inputs.insert("p".into(), s(p));
            if *all {
                inputs.insert("max_exponent".into(), s(bounds.max_exponent));
            } else {
                inputs.insert("a".into(), s(&pairs[0].0));
                inputs.insert("b".into(), s(&pairs[0].1));
            }
            let mut r = Report::new("oracle compare", Value::Object(inputs));
            let mut discrepancies = Vec::new();
            let mut results = Vec::new();
            for (x, y) in &pairs {
                let rep = o.compare_with(x, y, tally)?;
                for d in &rep.discrepancies {
                    discrepancies.push(s(format!("{x}*{y}: {d}")));
                }
                if !*all {
                    r.set("oracle", constants_json(&rep.oracle));
                    r.set("expansion", Value::Object(rep.expansion.iter().map(|(l, c)| (l.to_string(), s(c))).collect()));
                }
                results.push(rep.agree());
            }
            r.set("pairs", s(pairs.len())).set("discrepancies", Value::Array(discrepancies));
            r.verdict(results.iter().all(|x| *x));
            Ok(r)
        }
    }
}

fn parse_ints(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| UsageError(format!("not an integer: {t:?}"))))
        .collect()
}

fn gl_weight(arg: &LambdaArg) -> Result<GLWeight> {
    let components = arg
        .lambda
        .iter()
        .map(|c| match c.split_once(':') {
            Some((l, lc)) => Ok((parse_ints(l)?, parse_ints(lc)?)),
            None => usage(format!("expected `lambda:lambda_c`, got {c:?}")),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GLWeight::new(components)?)
}

fn gl_json(w: &GLWeight) -> Value {
    Value::Array(w.components.iter().map(|(l, lc)| json!({ "lambda": strings(l), "lambda_c": strings(lc) })).collect())
}

fn unitary_json(w: &UnitaryWeight) -> Value {
    Value::Array(w.components.iter().map(strings).collect())
}

fn weights(cmd: &WeightsCmd) -> Result<Report> {
    match cmd {
        WeightsCmd::Dict(arg) => {
            let w = gl_weight(arg)?;
            let mut r = Report::new("weights dict", json!({ "lambda": gl_json(&w) }));
            match w.to_unitary() {
                Ok(a) => {
                    r.set("a", unitary_json(&a)).set("strict", Value::Bool(a.is_strict()));
                    r.verdict(true);
                }
                Err(e) => {
                    r.set("reason", s(e));
                    r.verdict(false);
                }
            }
            Ok(r)
        }
        WeightsCmd::Twist { lambda, w, variant } => {
            let weight = gl_weight(lambda)?;
            let shift = match (w, variant) {
                (Some(w), _) => *w,
                (None, Some(v)) => weight.minimal_dominant_twist((*v).into()),
                (None, None) => return usage("give --w or --variant"),
            };
            let twisted = weight.twist(shift);
            let mut r = Report::new("weights twist", json!({ "lambda": gl_json(&weight) }));
            r.set("w", s(shift))
                .set("plain_bound", s(weight.minimal_dominant_twist(TwistVariant::Plain)))
                .set("regular_bound", s(weight.minimal_dominant_twist(TwistVariant::Regular)))
                .set("twisted", gl_json(&twisted));
            match twisted.to_unitary() {
                Ok(a) => {
                    let dominant = a.components.iter().all(|c| is_dominant(c));
                    r.set("a", unitary_json(&a)).set("strict", Value::Bool(a.is_strict()));
                    r.verdict(dominant);
                }
                Err(e) => {
                    r.set("reason", s(e));
                    r.verdict(false);
                }
            }
            Ok(r)
        }
        WeightsCmd::LanSuh { a, d, p } => {
            let components = a.iter().map(|c| parse_ints(c)).collect::<Result<Vec<_>>>()?;
            if let Some(d) = d {
                if *d != components.len() {
                    return usage(format!("--d {d} but {} components given", components.len()));
                }
            }
            let w = UnitaryWeight::new(components)?;
            let rep = w.lan_suh_check(*p);
            let mut r = Report::new("weights lan-suh", json!({ "a": unitary_json(&w), "d": s(w.components.len()), "p": s(p) }));
            r.verdict(rep.ok);
            r.set("bound", s(rep.bound)).set("norm", s(rep.norm)).set("min_prime", s(rep.min_prime));
            if let Some(reason) = rep.reason {
                r.set("reason", s(reason));
            }
            Ok(r)
        }
        WeightsCmd::LeviCheck { lambda, p } => {
            let w = gl_weight(lambda)?;
            let rep = w.levi_lan_suh_check(*p)?;
            let mut r = Report::new("weights levi-check", json!({ "lambda": gl_json(&w), "p": s(p) }));
            r.verdict(rep.ok);
            r.set("bound", s(rep.bound));
            Ok(r)
        }
    }
}

fn cohomology_json(c: &FiniteComplex) -> Value {
    Value::Object(cohomology(c).into_iter().map(|(i, f)| (i.to_string(), strings(f))).collect())
}

fn random_ring(args: &RandomArgs) -> Result<PrimePower> {
    prime(args.p)?;
    if !(1..=8).contains(&args.exponent) || args.len == 0 || args.max_rank == 0 {
        return usage("random complexes need 1 <= exponent <= 8, len >= 1, max-rank >= 1");
    }
    Ok(PrimePower::new(args.p, args.exponent)?)
}

fn random_inputs(args: &RandomArgs) -> Value {
    json!({ "seed": s(args.seed), "p": s(args.p), "exponent": s(args.exponent), "len": s(args.len), "max_rank": s(args.max_rank) })
}

fn complex(cmd: &ComplexCmd) -> Result<Report> {
    match cmd {
        ComplexCmd::Cohomology { complex } => {
            let c = io::parse_complex(&io::load(complex)?)?;
            let mut r = Report::new("complex cohomology", json!({ "complex": io::encode_complex(&c) }));
            r.set("amplitude", s(c.amplitude())).set("cohomology", cohomology_json(&c));
            Ok(r)
        }
        ComplexCmd::Nullhomotopy { complex, target, map } => {
            let c = io::parse_complex(&io::load(complex)?)?;
            let d = match target {
                Some(t) => io::parse_complex(&io::load(t)?)?,
                None => c.clone(),
            };
            let f = io::parse_chain_map(&io::load(map)?, &c, &d)?;
            let mut r = Report::new(
                "complex nullhomotopy",
                json!({ "complex": io::encode_complex(&c), "target": io::encode_complex(&d), "map": io::encode_chain_map(&f) }),
            );
            let h = nullhomotopy(&c, &d, &f)?;
            r.set("homotopy", h.as_ref().map_or(Value::Null, io::encode_homotopy));
            r.verdict(h.is_some());
            Ok(r)
        }
        ComplexCmd::Quotient { complex, ops } => {
            let c = io::parse_complex(&io::load(complex)?)?;
            let fs = io::parse_endomorphisms(&io::load(ops)?, &c)?;
            let t = hecke_quotient(&c, &fs)?;
            let nil = nilpotent_kernel_exponent(&t)?;
            let mut r = Report::new(
                "complex quotient",
                json!({ "complex": io::encode_complex(&c), "ops": fs.iter().map(io::encode_chain_map).collect::<Vec<_>>() }),
            );
            r.set("rank", s(t.rank()))
                .set("words", Value::Array(t.words.iter().map(strings).collect()))
                .set("invariant_factors", strings(&t.invariant_factors))
                .set(
                    "structure",
                    Value::Array(t.structure.iter().map(|row| Value::Array(row.iter().map(strings).collect())).collect()),
                )
                .set(
                    "nilpotency",
                    json!({ "exponent": s(nil.exponent), "amplitude": s(nil.amplitude), "kernel_generators": s(nil.kernel_generators) }),
                );
            r.verdict(nil.within_amplitude());
            Ok(r)
        }
        ComplexCmd::SquareZero { input, trials, random } => {
            if let Some(input) = input {
                let v = io::load(input)?;
                let get = |k: &str| v.get(k).ok_or_else(|| UsageError(format!("missing field `{k}`")));
                let a = io::parse_complex(get("a")?)?;
                let b = io::parse_complex(get("b")?)?;
                let u = io::parse_chain_map(get("u")?, &a, &b)?;
                let st = io::parse_chain_map(get("s")?, &b, &b)?;
                let tt = io::parse_chain_map(get("t")?, &b, &b)?;
                let ok = square_zero_check(&a, &b, &u, &st, &tt)?;
                let mut r = Report::new("complex square-zero", v.clone());
                r.verdict(ok);
                return Ok(r);
            }
            let ring = random_ring(random)?;
            let mut rng = ChaCha8Rng::seed_from_u64(random.seed);
            let mut inputs = random_inputs(random);
            inputs["trials"] = s(trials);
            let mut r = Report::new("complex square-zero", inputs);
            let (mut passed, mut nilpotent) = (0usize, 0usize);
            let mut exponents = Vec::new();
            for _ in 0..*trials {
                let x = random_square_zero_input(ring, random.len, random.max_rank, &mut rng)?;
                passed += usize::from(square_zero_check(&x.a, &x.b, &x.u, &x.s, &x.t)?);
                let nil = nilpotent_kernel_exponent(&hecke_quotient(&x.b, &[x.s.clone(), x.t.clone()])?)?;
                nilpotent += usize::from(nil.within_amplitude());
                exponents.push(nil.exponent);
            }
            r.set("square_zero", s(passed))
                .set("within_amplitude", s(nilpotent))
                .set("max_nilpotency_exponent", s(exponents.iter().max().copied().unwrap_or(0)));
            r.verdict(passed == *trials && nilpotent == *trials);
            Ok(r)
        }
        ComplexCmd::Idempotents { complex, ops } => {
            let c = io::parse_complex(&io::load(complex)?)?;
            let fs = io::parse_endomorphisms(&io::load(ops)?, &c)?;
            let t = hecke_quotient(&c, &fs)?;
            let split = idempotent_split(&t)?;
            let mut r = Report::new(
                "complex idempotents",
                json!({ "complex": io::encode_complex(&c), "ops": fs.iter().map(io::encode_chain_map).collect::<Vec<_>>() }),
            );
            let summands: Vec<Value> = split
                .summands
                .iter()
                .map(|x| {
                    json!({
                        "idempotent": strings(&x.idempotent),
                        "iterations": s(x.iterations),
                        "complex": io::encode_complex(&x.complex),
                        "cohomology": cohomology_json(&x.complex),
                    })
                })
                .collect();
            r.set("model", io::encode_complex(&split.model.complex))
                .set("summands", Value::Array(summands))
                .set("max_iterations", s(split.max_iterations()));
            r.verdict(split.is_complete() && split.cohomology_matches(&c));
            Ok(r)
        }
        ComplexCmd::Glue { complex, tower, random } => {
            let (c, maps, inputs) = match (complex, tower) {
                (Some(cx), Some(tw)) => {
                    let c = io::parse_complex(&io::load(cx)?)?;
                    let maps = io::parse_tower(&io::load(tw)?, &c)?;
                    let inputs = json!({
                        "complex": io::encode_complex(&c),
                        "tower": maps.iter().map(io::encode_chain_map).collect::<Vec<_>>(),
                    });
                    (c, maps, inputs)
                }
                _ => {
                    let ring = random_ring(random)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(random.seed);
                    let c = random_complex(ring, 0, random.len, random.max_rank, &mut rng);
                    let maps = random_tower(&c, &mut rng)?;
                    let mut inputs = random_inputs(random);
                    inputs["complex"] = io::encode_complex(&c);
                    (c, maps, inputs)
                }
            };
            if maps.len() != c.ring().exponent() as usize {
                return usage(format!("the tower needs {} levels", c.ring().exponent()));
            }
            let mut r = Report::new("complex glue", inputs);
            match glue_inverse_limit(&c, &maps) {
                Ok(g) => {
                    let ok = tower_round_trip(&c, &g, &maps)?;
                    r.set("glued", io::encode_chain_map(&g));
                    r.verdict(ok);
                }
                Err(hecke_core::Error::IncompatibleTower(k)) => {
                    r.set("incompatible_at", s(k));
                    r.verdict(false);
                }
                Err(e) => return Err(e.into()),
            }
            Ok(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out(args: &[&str]) -> Outcome {
        run(std::iter::once("hecke").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(out(&["oracle", "convolve", "--n", "2"]).code, 2);
        assert_eq!(out(&["oracle", "convolve", "--n", "2", "--p", "4", "--a", "0,1", "--b", "0,1"]).code, 2);
        assert_eq!(out(&["oracle", "enumerate", "--n", "2", "--p", "2", "--label", "0,3"]).code, 2);
        assert_eq!(out(&["weights", "lan-suh", "--a", "3,2,1,0", "--d", "2", "--p", "13"]).code, 2);
        assert!(out(&["satake", "gl"]).stderr.contains("--n"));
    }

    #[test]
    fn false_checks_exit_one() {
        let r = out(&["weights", "lan-suh", "--a", "3,2,1,0", "--p", "11"]);
        assert_eq!(r.code, 1);
        assert!(r.stdout.contains("\"bound\": \"12\""));
    }
}
