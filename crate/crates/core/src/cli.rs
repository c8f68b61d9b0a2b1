//! The `planemorph` command surface.
//!
//! Every subcommand prints human text by default and a JSON transcript with
//! `--json`. Exit codes: 0 on success, 1 on a mathematical negative (not
//! Keller, rejected, not applicable, not found, ...), 2 on a usage error.
//!
//! All expressions on one command line are parsed in a shared field tower,
//! so `sqrt(2)` written twice names one generator.

use std::fmt::Debug;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::cmw::{alpha_restriction_check, express_in, AlphaRestriction, CmwError, RestrictionMode};
use crate::endo::Endo;
use crate::engines::{
    degree1_reduce, druzkowski2, invert_via_symmetry, parity_classify, symmetrize_deg2, symmetrize_image,
    symmetrize_search, wang_special, Degree1Reduction, EngineError, InversionRoute, LinearForm, ParityOutcome,
    SearchLimits, SymmetrizationTranscript, SymmetrizeOptions, WangBranch,
};
use crate::field::{FieldError, FieldTower};
use crate::harness::{random_keller_with_quadratic_x, FieldMode, GenSpec, HarnessError};
use crate::involution::{classify, verify_conjugation, Builtin, InvolutionError};
use crate::json::{certificate_value, endo_value, factors_value, tower_of, tower_strings, CertificateJson};
use crate::parse::{parse_endo_in, parse_poly_in, ParseError};
use crate::poly::{Parity, Poly};
use crate::tame::{self, TameError};

#[derive(Debug, Parser)]
#[command(name = "planemorph", version, about = "Exact computations with polynomial automorphisms of the plane")]
pub struct Cli {
    /// Emit a machine-readable JSON transcript instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A map given either as `-p P -q Q` or as `--map "x -> P; y -> Q"`.
#[derive(Debug, Args)]
pub struct MapArgs {
    /// Image of x.
    #[arg(short = 'p', long = "p", allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Image of y.
    #[arg(short = 'q', long = "q", allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Whole map, `[name:] x -> P; y -> Q`.
    #[arg(short = 'm', long, allow_hyphen_values = true, conflicts_with_all = ["p", "q"])]
    pub map: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InvertMethod {
    /// Decompose into tame factors and invert the certificate.
    Tame,
    /// Symmetrize first, check the α-restriction property, then invert.
    Symmetry,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Symmetric,
    Skew,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobian determinant of a map.
    Jacobian(MapArgs),
    /// `g ∘ f`: substitute g's images into f's.
    Compose {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Apply a map to a polynomial.
    Apply {
        #[command(flatten)]
        map: MapArgs,
        #[arg(short = 'r', long, allow_hyphen_values = true)]
        r: String,
    },
    /// Tame factorization certificate of a Keller map.
    Decompose(MapArgs),
    /// Inverse of a map, or of a certificate file.
    Invert {
        #[command(flatten)]
        map: MapArgs,
        /// Certificate JSON as written by `decompose --json`.
        #[arg(long, conflicts_with_all = ["p", "q", "map"])]
        cert: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "tame")]
        method: InvertMethod,
        /// Real towers only (symmetry method).
        #[arg(long)]
        real: bool,
    },
    /// Conjugacy class of an involution (builtin name or map).
    ClassifyInvolution {
        #[arg(allow_hyphen_values = true)]
        involution: String,
    },
    /// Whether `g s = t g`; `s`, `t` are builtin names or maps.
    VerifyConjugation {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Univariate H with H(A) = R.
    CmwExpress {
        #[arg(short = 'a', long = "a", allow_hyphen_values = true)]
        a: String,
        #[arg(short = 'r', long = "r", allow_hyphen_values = true)]
        r: String,
    },
    /// α restricted to the image ring of a map with α-(skew-)symmetric p.
    AlphaRestriction {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, value_enum, default_value = "symmetric")]
        mode: ModeArg,
    },
    /// Inverse of a Keller map with an image of degree one.
    Degree1(MapArgs),
    /// Inverse of a Keller map with both images of degree at most two.
    Wang(MapArgs),
    /// Make a quadratic p symmetric under an involution of Jacobian −1.
    Symmetrize {
        #[arg(short = 'p', long = "p", allow_hyphen_values = true)]
        p: String,
        /// Jacobian mate; when given the pair is checked to be Keller.
        #[arg(short = 'q', long = "q", allow_hyphen_values = true)]
        q: Option<String>,
        /// Only adjoin square roots of positive reals.
        #[arg(long)]
        real: bool,
    },
    /// Parity cases of p on both axes.
    Parity(MapArgs),
    /// Bounded search for moves making A symmetric.
    SearchSymmetrize {
        #[arg(short = 'a', long = "a", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 2)]
        depth: u32,
        #[arg(long, default_value_t = 3)]
        degree_cap: u32,
        #[arg(long, default_value_t = 1)]
        height_cap: u32,
        #[arg(long, default_value_t = 2_000_000)]
        max_nodes: u64,
    },
    /// Drużkowski map (x + l1³, y + l2³) for linear forms l1, l2.
    Druzkowski {
        #[arg(long, allow_hyphen_values = true)]
        l1: String,
        #[arg(long, allow_hyphen_values = true)]
        l2: String,
    },
    /// Random tame automorphism with its certificate.
    RandomTame {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        factors: u32,
        #[arg(long, default_value_t = 3)]
        max_elem_degree: u32,
        #[arg(long, default_value_t = 5)]
        height: u32,
        #[arg(long, default_value = "rational")]
        field: String,
        /// Rejection-sample until deg p ≤ 2.
        #[arg(long)]
        quadratic_x: bool,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// A mathematical negative: `kind` is a stable tag.
    Negative { kind: String, message: String },
}

/// Variant name of a `Debug` value, used as a stable error tag.
fn variant<E: Debug>(e: &E) -> String {
    let s = format!("{e:?}");
    s.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

fn negative<E: Debug + std::fmt::Display>(e: E) -> CliError {
    CliError::Negative { kind: variant(&e), message: e.to_string() }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Tame(t) => t.into(),
            EngineError::Cmw(c) => c.into(),
            EngineError::Field(f) => f.into(),
            e => negative(e),
        }
    }
}

macro_rules! negatives {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                negative(e)
            }
        }
    )*};
}
negatives!(TameError, CmwError, InvolutionError, FieldError);

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::UnknownFieldMode(_) => CliError::Usage(e.to_string()),
            e => negative(e),
        }
    }
}

/// A successful command: its JSON transcript and its text rendering.
struct Report {
    json: Value,
    text: String,
}

impl Report {
    fn new(json: Value) -> Self {
        let text = render_text(&json, 0);
        Report { json, text }
    }

    fn with_text(json: Value, text: impl Into<String>) -> Self {
        Report { json, text: text.into() }
    }
}

/// Indented `key: value` lines for the human output.
fn render_text(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                match val {
                    Value::Object(_) | Value::Array(_) if !is_flat(val) => {
                        out.push_str(&format!("{pad}{k}:\n{}", render_text(val, indent + 1)));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_flat(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar(item)));
                } else {
                    out.push_str(&format!("{pad}-\n{}", render_text(item, indent + 1)));
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

struct Ctx {
    tower: FieldTower,
}

impl Ctx {
    fn poly(&mut self, src: &str) -> Result<Poly, CliError> {
        Ok(parse_poly_in(src, &mut self.tower)?)
    }

    fn endo(&mut self, src: &str) -> Result<Endo, CliError> {
        Ok(parse_endo_in(src, &mut self.tower)?.endo)
    }

    fn map(&mut self, m: &MapArgs) -> Result<Endo, CliError> {
        match (&m.map, &m.p, &m.q) {
            (Some(text), None, None) => self.endo(text),
            (None, Some(p), Some(q)) => Ok(Endo::new(self.poly(p)?, self.poly(q)?)),
            _ => Err(CliError::Usage("give a map with --map or with both -p and -q".into())),
        }
    }

    /// A builtin name or a map.
    fn involution(&mut self, src: &str) -> Result<Endo, CliError> {
        match Builtin::from_str(src.trim()) {
            Ok(b) => Ok(b.endo()),
            Err(_) => self.endo(src),
        }
    }
}

fn restriction_value(r: &AlphaRestriction) -> Value {
    json!({
        "mode": r.mode.to_string(),
        "alpha_p": r.alpha_p.to_string(),
        "alpha_q": r.alpha_q.to_string(),
        "H": r.h.render("t"),
        "formal_jacobian": r.formal_jacobian.to_string(),
    })
}

fn transcript_value(t: &SymmetrizationTranscript) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| json!({ "label": s.label, "g": endo_value(&s.g), "factors": factors_value(&s.certificate.factors) }))
        .collect();
    json!({
        "case": t.case,
        "input": t.input.to_string(),
        "negated": t.negated,
        "steps": steps,
        "witness": t.witness.to_string(),
        "target": t.target.name(),
        "symmetry": t.symmetry.to_string(),
        "tower": tower_strings(&t.tower),
    })
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::AllEven => "all_even",
        Parity::AllOdd => "all_odd",
        Parity::Mixed => "mixed",
    }
}

fn parity_value(o: &ParityOutcome) -> Value {
    let findings: Vec<Value> = o
        .findings
        .iter()
        .map(|f| {
            json!({
                "case": f.case(),
                "axis": f.axis.label(),
                "parity": parity_name(f.parity),
                "involution": f.involution.name(),
                "symmetry": f.symmetry.to_string(),
            })
        })
        .collect();
    json!({ "findings": findings })
}

fn degree1_value(d: &Degree1Reduction) -> Value {
    json!({
        "swapped": d.swapped,
        "normalizer": endo_value(&d.normalizer),
        "reduced": endo_value(&d.reduced),
        "e": d.e.to_string(),
        "a": d.a.to_string(),
        "H": d.h.render("x"),
        "inverse": endo_value(&d.inverse),
    })
}

fn route_name(r: InversionRoute) -> &'static str {
    match r {
        InversionRoute::Quadratic => "quadratic",
        InversionRoute::QuadraticSwapped => "quadratic_swapped",
        InversionRoute::Parity => "parity",
    }
}

fn branch_name(b: WangBranch) -> &'static str {
    match b {
        WangBranch::Affine => "affine",
        WangBranch::MuZero => "mu_zero",
        WangBranch::LambdaZero => "lambda_zero",
        WangBranch::Shear => "shear",
    }
}

fn linear_form(ctx: &mut Ctx, src: &str, flag: &str) -> Result<LinearForm, CliError> {
    let p = ctx.poly(src)?;
    LinearForm::from_poly(&p).ok_or_else(|| CliError::Usage(format!("{flag} must be a linear form a*x + b*y, got {p}")))
}

fn execute(cmd: &Command) -> Result<Report, CliError> {
    let mut ctx = Ctx { tower: FieldTower::rationals() };
    Ok(match cmd {
        Command::Jacobian(m) => {
            let f = ctx.map(m)?;
            let jac = f.jacobian();
            let keller = f.is_keller();
            Report::with_text(json!({ "jacobian": jac.to_string(), "keller": keller }), jac.to_string())
        }
        Command::Compose { g, f } => {
            let (g, f) = (ctx.endo(g)?, ctx.endo(f)?);
            let h = Endo::compose(&g, &f);
            Report::with_text(json!({ "composite": endo_value(&h) }), h.to_string())
        }
        Command::Apply { map, r } => {
            let f = ctx.map(map)?;
            let out = f.apply(&ctx.poly(r)?);
            Report::with_text(json!({ "result": out.to_string() }), out.to_string())
        }
        Command::Decompose(m) => {
            let cert = tame::decompose(&ctx.map(m)?)?;
            let text = cert.factors.iter().map(|f| format!("{f}\n")).collect::<String>();
            Report::with_text(certificate_value(&cert), text.trim_end())
        }
        Command::Invert { map, cert, method, real } => match (cert, method) {
            (Some(path), _) => {
                let raw = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                let cj: CertificateJson =
                    serde_json::from_str(&raw).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                let h = tame::invert(&cj.read()?)?;
                Report::with_text(json!({ "method": "certificate", "inverse": endo_value(&h) }), h.to_string())
            }
            (None, InvertMethod::Tame) => {
                let cert = tame::decompose(&ctx.map(map)?)?;
                let h = tame::invert(&cert)?;
                let json = json!({ "method": "tame", "inverse": endo_value(&h), "certificate": certificate_value(&cert) });
                Report::with_text(json, h.to_string())
            }
            (None, InvertMethod::Symmetry) => {
                let f = ctx.map(map)?;
                let inv = invert_via_symmetry(&f, SymmetrizeOptions { real: *real })?;
                let mut m = Map::new();
                m.insert("method".into(), json!("symmetry"));
                m.insert("route".into(), json!(route_name(inv.route)));
                if let Some(t) = &inv.transcript {
                    m.insert("transcript".into(), transcript_value(t));
                }
                if let Some(p) = &inv.parity {
                    m.insert("parity".into(), parity_value(p));
                }
                m.insert("delta".into(), json!(inv.delta.name()));
                m.insert("symmetry".into(), json!(inv.symmetry.to_string()));
                m.insert("conjugator".into(), endo_value(&inv.conjugator));
                m.insert("conjugated".into(), endo_value(&inv.conjugated));
                m.insert("restriction".into(), restriction_value(&inv.restriction));
                m.insert("inverse".into(), endo_value(&inv.inverse));
                m.insert("tower".into(), json!(tower_strings(&tower_of([&inv.inverse.p, &inv.inverse.q]))));
                Report::new(Value::Object(m))
            }
        },
        Command::ClassifyInvolution { involution } => {
            let s = ctx.involution(involution)?;
            let class = classify(&s)?;
            let json = json!({ "involution": endo_value(&s), "class": class.to_string(), "jacobian": s.jacobian().to_string() });
            Report::with_text(json, class.to_string())
        }
        Command::VerifyConjugation { g, s, t } => {
            let (g, s, t) = (ctx.endo(g)?, ctx.involution(s)?, ctx.involution(t)?);
            if !verify_conjugation(&g, &s, &t)? {
                return Err(CliError::Negative {
                    kind: "NotConjugate".into(),
                    message: format!("g s != t g for g = ({g}), s = ({s}), t = ({t})"),
                });
            }
            Report::with_text(json!({ "conjugate": true, "g": endo_value(&g), "s": endo_value(&s), "t": endo_value(&t) }), "true")
        }
        Command::CmwExpress { a, r } => {
            let (a, r) = (ctx.poly(a)?, ctx.poly(r)?);
            let h = express_in(&a, &r)?;
            Report::with_text(json!({ "A": a.to_string(), "R": r.to_string(), "H": h.render("t") }), format!("H(t) = {}", h.render("t")))
        }
        Command::AlphaRestriction { map, mode } => {
            let mode = match mode {
                ModeArg::Symmetric => RestrictionMode::SymmetricP,
                ModeArg::Skew => RestrictionMode::SkewP,
            };
            Report::new(restriction_value(&alpha_restriction_check(&ctx.map(map)?, mode)?))
        }
        Command::Degree1(m) => Report::new(degree1_value(&degree1_reduce(&ctx.map(m)?)?)),
        Command::Wang(m) => {
            let w = wang_special(&ctx.map(m)?)?;
            Report::new(json!({
                "branch": branch_name(w.branch),
                "lambda": w.lambda.to_string(),
                "mu": w.mu.to_string(),
                "r_tilde": w.r_tilde.to_string(),
                "r": w.r.as_ref().map(ToString::to_string),
                "shear": endo_value(&w.shear),
                "degree1": degree1_value(&w.degree1),
                "inverse": endo_value(&w.inverse),
            }))
        }
        Command::Symmetrize { p, q, real } => {
            let opts = SymmetrizeOptions { real: *real };
            let p = ctx.poly(p)?;
            let t = match q {
                Some(q) => symmetrize_deg2(&Endo::new(p, ctx.poly(q)?), opts)?,
                None => symmetrize_image(&p, opts)?,
            };
            Report::new(transcript_value(&t))
        }
        Command::Parity(m) => Report::new(parity_value(&parity_classify(&ctx.map(m)?)?)),
        Command::SearchSymmetrize { a, depth, degree_cap, height_cap, max_nodes } => {
            let limits = SearchLimits { depth: *depth, degree_cap: *degree_cap, height_cap: *height_cap, max_nodes: *max_nodes };
            let r = symmetrize_search(&ctx.poly(a)?, limits)?;
            Report::new(json!({
                "steps": r.steps.iter().map(endo_value).collect::<Vec<_>>(),
                "witness": r.witness.to_string(),
                "target": r.target.name(),
                "symmetry": r.symmetry.to_string(),
                "nodes": r.nodes,
            }))
        }
        Command::Druzkowski { l1, l2 } => {
            let (l1, l2) = (linear_form(&mut ctx, l1, "--l1")?, linear_form(&mut ctx, l2, "--l2")?);
            let d = druzkowski2(&l1, &l2)?;
            Report::new(json!({
                "map": endo_value(&d.map),
                "conjugator": endo_value(&d.conjugator),
                "lambda": d.lambda.to_string(),
                "mu": d.mu.to_string(),
                "inverse": endo_value(&d.inverse),
            }))
        }
        Command::RandomTame { seed, factors, max_elem_degree, height, field, quadratic_x } => {
            if *factors == 0 {
                return Err(CliError::Usage("--factors must be at least 1".into()));
            }
            let spec = GenSpec {
                seed: *seed,
                factor_count: *factors,
                max_elem_degree: *max_elem_degree,
                coeff_height: *height,
                field_mode: FieldMode::from_str(field)?,
            };
            let (f, cert, attempts) = if *quadratic_x {
                random_keller_with_quadratic_x(&spec)?
            } else {
                let (f, cert) = crate::harness::random_tame(&spec);
                (f, cert, 1)
            };
            let json = json!({
                "spec": {
                    "seed": spec.seed,
                    "factors": spec.factor_count,
                    "max_elem_degree": spec.max_elem_degree,
                    "height": spec.coeff_height,
                    "field": spec.field_mode.to_string(),
                },
                "attempts": attempts,
                "map": endo_value(&f),
                "certificate": certificate_value(&cert),
            });
            Report::with_text(json, f.to_string())
        }
    })
}

/// Parses `args` (program name first), runs the command and writes its
/// output to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (code, json, text) = match execute(&cli.command) {
        Ok(r) => (0, r.json, r.text),
        Err(CliError::Usage(message)) => {
            (2, json!({ "error": "usage", "message": message }), format!("usage error: {message}"))
        }
        Err(CliError::Negative { kind, message }) => {
            (1, json!({ "error": kind, "message": message }), format!("{kind}: {message}"))
        }
    };
    let written = if cli.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&json).expect("json values serialize"))
    } else {
        writeln!(out, "{}", text.trim_end())
    };
    if written.is_err() {
        return 2;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("planemorph").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn jacobian_of_exchange() {
        assert_eq!(call(&["jacobian", "-p", "y", "-q", "x"]), (0, "-1\n".into()));
    }

    #[test]
    fn druzkowski_rejects() {
        let (code, out) = call(&["druzkowski", "--l1", "y", "--l2", "x"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("Rejected"), "{out}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["jacobian", "-p", "2xy", "-q", "x"]).0, 2);
        assert_eq!(call(&["jacobian", "-p", "x"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
    }

    #[test]
    fn symmetrize_case_label() {
        let (code, out) = call(&["--json", "symmetrize", "-p", "2*x*y + 3*x"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["case"], "I(2)");
    }
}
