use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jacobi_orbits::audit::{run_audit_with, Execution, SamplerConfig};
use jacobi_orbits::complex_orbits::{classify_kc, kc_action, same_kc_orbit, KcElem, PcElem};
use jacobi_orbits::jacobi::{sj_action, JacobiAlgElem, JacobiGroupElem, SiegelJacobiPoint};
use jacobi_orbits::real_orbits::{classify, witness_with_tol, WITNESS_TOL};
use jacobi_orbits::scalar::format_rational;
use jacobi_orbits::sl2::{cayley, classify_sl2, ks_map, ks_rescale, sl2_triple_through, Sl2Elem, Sl2OrbitLabel, Sl2Triple};
use jacobi_orbits::Error;

/// Exact adjoint-orbit computations for the Jacobi group.
///
/// Elements are JSON objects with rational strings, e.g.
/// '{"x":"0","y":"1/2","z":"1/2","p":"0","q":"0","r":"3"}'.
/// Pass "-" to read an argument from stdin.
#[derive(Parser)]
#[command(name = "jacobi", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Orbit label of an algebra element.
    Classify { v: String },
    /// c1, f, I and rho.
    Invariants { v: String },
    /// [v1, v2].
    Bracket { v1: String, v2: String },
    /// Ad(g) v.
    Adjoint { g: String, v: String },
    /// g1 g2.
    Mul { g1: String, g2: String },
    /// g^-1.
    Inv { g: String },
    /// 4x4 matrix of a group or algebra element.
    Embed { elem: String },
    /// Conjugator from the canonical representative to v.
    Witness {
        v: String,
        /// Residual bound for floating-point witnesses.
        #[arg(long, default_value_t = WITNESS_TOL)]
        tol: f64,
    },
    /// Orbit dimension.
    Dim { v: String },
    /// Orbit label of {"x","y","z"} in sl2(R).
    ClassifySl2 { e: String },
    /// KS triple through a positive multiple of a nilpotent element.
    KsComplete { e: String },
    /// Cayley transform of a real KS triple [h, e, f].
    Cayley { triple: String },
    /// Image of a nilpotent sl2 label, e.g. '{"family":"NPlus"}' or NPlus.
    KsMap { label: String },
    /// K_C orbit label of H(x, y, p, q).
    ClassifyKc { h: String },
    /// k.H for k = {"a","b","kappa"} with a^2 + b^2 = 1.
    KcAct { k: String, h: String },
    /// Exact orbit test for two elements H(x, y, p, q).
    SameOrbitKc { h1: String, h2: String },
    /// Action on a point {"tau":{"re","im"},"zeta":{"re","im"}} (floats).
    ActSj { g: String, point: String },
    /// Seeded randomized audit.
    Audit {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        height_bound: u32,
        /// Exit with 3 when any claim is flagged.
        #[arg(long)]
        fail_on_flag: bool,
        /// Run claims and trials on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

enum Out {
    Json(Value),
    /// JSON plus a text rendering.
    Both(Value, String),
}

struct Failure {
    code: &'static str,
    message: String,
    exit: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: e.code(), message: e.to_string(), exit: if e.is_validation() { 1 } else { 2 } }
    }
}

fn parse_err(msg: impl Into<String>) -> Failure {
    Error::Parse(msg.into()).into()
}

fn read_json(arg: &str) -> Result<Value, Failure> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| parse_err(e.to_string()))?;
        s
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| parse_err(format!("invalid JSON: {e}")))
}

fn typed<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, Failure> {
    serde_json::from_value(read_json(arg)?).map_err(|e| parse_err(e.to_string()))
}

fn alg(arg: &str) -> Result<JacobiAlgElem, Failure> {
    typed(arg)
}

fn group(arg: &str) -> Result<JacobiGroupElem, Failure> {
    Ok(JacobiGroupElem::from_json(&read_json(arg)?)?)
}

fn alg_text(v: &JacobiAlgElem) -> String {
    let c: Vec<String> = v.coords().iter().map(format_rational).collect();
    format!("G({})", c.join(", "))
}

fn group_text(g: &JacobiGroupElem) -> String {
    let f = format_rational;
    format!(
        "(({}, {}), ({}, {})), ({}, {}, {})",
        f(&g.a),
        f(&g.b),
        f(&g.c),
        f(&g.d),
        f(&g.lambda),
        f(&g.mu),
        f(&g.kappa)
    )
}

fn alg_out(v: &JacobiAlgElem) -> Out {
    Out::Both(v.to_json(), alg_text(v))
}

fn run(cmd: Cmd) -> Result<(Out, u8), Failure> {
    let out = match cmd {
        Cmd::Classify { v } => {
            let l = classify(&alg(&v)?);
            Out::Both(l.to_json(), l.to_string())
        }
        Cmd::Invariants { v } => Out::Json(alg(&v)?.invariants().to_json()),
        Cmd::Bracket { v1, v2 } => alg_out(&alg(&v1)?.bracket(&alg(&v2)?)),
        Cmd::Adjoint { g, v } => alg_out(&alg(&v)?.adjoint(&group(&g)?)),
        Cmd::Mul { g1, g2 } => {
            let g = group(&g1)?.mul(&group(&g2)?);
            Out::Both(g.to_json(), group_text(&g))
        }
        Cmd::Inv { g } => {
            let g = group(&g)?.inv();
            Out::Both(g.to_json(), group_text(&g))
        }
        Cmd::Embed { elem } => {
            let v = read_json(&elem)?;
            if v.get("a").is_some() {
                Out::Json(JacobiGroupElem::from_json(&v)?.embed().to_json())
            } else {
                let a: JacobiAlgElem = serde_json::from_value(v).map_err(|e| parse_err(e.to_string()))?;
                Out::Json(a.embed().to_json())
            }
        }
        Cmd::Witness { v, tol } => {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(parse_err("tol must be a finite nonnegative number"));
            }
            Out::Json(witness_with_tol(&alg(&v)?, tol)?.to_json())
        }
        Cmd::Dim { v } => {
            let d = alg(&v)?.orbit_dimension();
            Out::Both(json!({ "dimension": d }), d.to_string())
        }
        Cmd::ClassifySl2 { e } => {
            let l = classify_sl2(&typed::<Sl2Elem>(&e)?);
            Out::Both(l.to_json(), l.to_string())
        }
        Cmd::KsComplete { e } => {
            let e = ks_rescale(&typed::<Sl2Elem>(&e)?)?;
            let t = sl2_triple_through(&e)?;
            Out::Json(json!({ "e": e.to_json(), "triple": t.to_json() }))
        }
        Cmd::Cayley { triple } => {
            let t = Sl2Triple::from_json(&read_json(&triple)?)?
                .real_part()
                .ok_or_else(|| parse_err("cayley takes a real triple"))?;
            Out::Json(cayley(&t)?.to_json())
        }
        Cmd::KsMap { label } => {
            let v = serde_json::from_str(&label).unwrap_or_else(|_| json!({ "family": label }));
            let v = match v {
                Value::String(s) => json!({ "family": s }),
                other => other,
            };
            let l = ks_map(&Sl2OrbitLabel::from_json(&v)?)?;
            Out::Both(l.to_json(), l.to_string())
        }
        Cmd::ClassifyKc { h } => {
            let l = classify_kc(&typed::<PcElem>(&h)?);
            Out::Both(l.to_json(), l.to_string())
        }
        Cmd::KcAct { k, h } => {
            let k = KcElem::from_json(&read_json(&k)?)?;
            let w = kc_action(&k, &typed::<PcElem>(&h)?);
            Out::Both(w.to_json(), w.to_string())
        }
        Cmd::SameOrbitKc { h1, h2 } => {
            let w = same_kc_orbit(&typed::<PcElem>(&h1)?, &typed::<PcElem>(&h2)?);
            let same = w.is_some();
            Out::Both(json!({ "same": same, "witness": w.map(|w| w.to_json()) }), same.to_string())
        }
        Cmd::ActSj { g, point } => {
            let g = group(&g)?;
            let pt: SiegelJacobiPoint = typed(&point)?;
            if pt.tau.im <= 0.0 {
                return Err(parse_err("tau must lie in the upper half plane"));
            }
            Out::Json(serde_json::to_value(sj_action(&g, &pt)).map_err(|e| parse_err(e.to_string()))?)
        }
        Cmd::Audit { seed, trials, height_bound, fail_on_flag, sequential } => {
            let cfg = SamplerConfig::new(seed, trials, height_bound)?;
            let exec = if sequential { Execution::Sequential } else { Execution::default() };
            let report = run_audit_with(&cfg, exec);
            let code = if fail_on_flag && report.has_flags() { 3 } else { 0 };
            return Ok((Out::Both(report.to_json(), report.to_text()), code));
        }
    };
    Ok((out, 0))
}

fn render(out: Out, format: Format) -> String {
    match (out, format) {
        (Out::Both(_, text), Format::Text) => format!("{}\n", text.trim_end()),
        (Out::Json(v), _) | (Out::Both(v, _), _) => format!("{v}\n"),
    }
}

fn fail(f: &Failure) -> ExitCode {
    eprintln!("{}", json!({ "error": f.code, "message": f.message }));
    ExitCode::from(f.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail(&Failure { code: "UsageError", message: e.to_string().trim_end().to_string(), exit: 1 });
        }
    };
    let (out, code) = match run(cli.cmd) {
        Ok(r) => r,
        Err(f) => return fail(&f),
    };
    let text = render(out, cli.format);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return fail(&Failure { code: "IoError", message: e.to_string(), exit: 2 });
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
