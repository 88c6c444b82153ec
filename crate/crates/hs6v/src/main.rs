//! `hs6v`: build R- and K-matrices, evaluate the generating function, run
//! verification suites and the golden table check.
//!
//! Exit codes: 0 success, 1 verification failure, 2 singular parameters,
//! 64 usage error, 74 output error. `HS6V_SEED` sets the default seed.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hs6v::golden::run_golden;
use hs6v::json::{kmatrix_json, nmatrix_json, params_json, tensor_json, text};
use hs6v::runner::run_suite;
use hs6v_core::boundary::{
    build_k, genfun_eval, genfun_residuals, k_defining_residual, n_closed, stochastic_residual, BoundaryParams,
    GenFunSource, KRoute,
};
use hs6v_core::lattice::{
    build_r, build_rbar, build_s, build_s_degenerate, build_s_factorized, DegenerateKind, ModelParams, Weight,
};
use hs6v_core::verify::{Suite, SuiteOptions};
use hs6v_core::{Error, Scalar};
use serde_json::{json, Value};

const EXIT_FAIL: u8 = 1;
const EXIT_SINGULAR: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

fn rational(s: &str) -> Result<Scalar, String> {
    s.parse().map_err(|e| format!("{e}: {s:?}"))
}

#[derive(Parser, Debug)]
#[command(name = "hs6v", version, about = "Exact higher-spin stochastic six vertex R- and K-matrices")]
struct Cli {
    /// Write JSON here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit an R-matrix tensor on V_I ⊗ V_J.
    Rmat(RmatArgs),
    /// Emit a boundary K-matrix.
    Kmat(KmatArgs),
    /// Evaluate the generating function F(u, v).
    Genfun(GenfunArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Compare the closed-form N-matrix with the tabulated spin-1 and spin-2 entries.
    Golden,
}

#[derive(Args, Debug)]
struct RmatArgs {
    #[arg(long, num_args = 2, value_names = ["I", "J"], value_parser = clap::value_parser!(u32).range(1..))]
    weights: Vec<u32>,
    #[arg(long, value_parser = rational)]
    lambda: Option<Scalar>,
    /// Square root of q.
    #[arg(long, value_parser = rational)]
    h: Scalar,
    /// plain, symmetric, stochastic, factorized or degenerate:<kind>.
    #[arg(long, default_value = "stochastic")]
    gauge: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Seed,
    Recurrence,
    Closed,
    Upper,
    Lower,
}

impl From<RouteArg> for KRoute {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Seed => KRoute::Seed,
            RouteArg::Recurrence => KRoute::Recurrence,
            RouteArg::Closed => KRoute::Closed,
            RouteArg::Upper => KRoute::Upper,
            RouteArg::Lower => KRoute::Lower,
        }
    }
}

#[derive(Args, Debug)]
struct BoundaryArgs {
    #[arg(long, value_parser = rational)]
    h: Scalar,
    /// Spectral point.
    #[arg(long, value_parser = rational)]
    y: Scalar,
    /// Sets t_+ = t², t_- = 1.
    #[arg(long, value_parser = rational, conflicts_with_all = ["t_plus", "t_minus"])]
    t: Option<Scalar>,
    #[arg(long, value_parser = rational)]
    t_plus: Option<Scalar>,
    #[arg(long, value_parser = rational)]
    t_minus: Option<Scalar>,
    #[arg(long, value_parser = rational)]
    nu: Scalar,
    #[arg(long, value_parser = rational, default_value = "1")]
    mu: Scalar,
}

#[derive(Args, Debug)]
struct KmatArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    spin: u32,
    #[arg(long, value_enum, default_value = "closed")]
    route: RouteArg,
    #[command(flatten)]
    boundary: BoundaryArgs,
    /// Also report the defining-relation residual and stochasticity.
    #[arg(long)]
    check: bool,
    /// Emit the N-matrix instead (closed route only).
    #[arg(long)]
    n_matrix: bool,
}

#[derive(Args, Debug)]
struct GenfunArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    spin: u32,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    u: Scalar,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    v: Scalar,
    #[command(flatten)]
    boundary: BoundaryArgs,
    /// Also report the residuals of the difference equations at (u, v).
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, env = "HS6V_SEED", default_value_t = 1)]
    seed: u64,
    /// Defaults to one pass over the suite's configurations.
    #[arg(long)]
    trials: Option<u64>,
    /// Largest external index for the Φ relation.
    #[arg(long, default_value_t = 3)]
    max_index: usize,
}

enum Failure {
    Usage(String),
    Singular(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_singular() {
            Failure::Singular(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn boundary_params(b: &BoundaryArgs, route: KRoute) -> Result<BoundaryParams, Failure> {
    let (h, y, nu, mu) = (b.h.clone(), b.y.clone(), b.nu.clone(), b.mu.clone());
    let p = match route {
        KRoute::Upper => {
            if b.t.is_some() || b.t_plus.is_some() {
                return Err(Failure::Usage("the upper route fixes t_+ = 0; drop --t/--t-plus".into()));
            }
            let tm = b.t_minus.clone().unwrap_or_else(Scalar::one);
            BoundaryParams::new(h, y, Scalar::zero(), tm, mu, nu, None)
        }
        KRoute::Lower => {
            if b.t.is_some() || b.t_minus.is_some() {
                return Err(Failure::Usage("the lower route fixes t_- = 0; drop --t/--t-minus".into()));
            }
            let tp = b.t_plus.clone().unwrap_or_else(Scalar::one);
            BoundaryParams::new(h, y, tp, Scalar::zero(), mu, nu, None)
        }
        _ => match (&b.t, &b.t_plus, &b.t_minus) {
            (Some(t), _, _) => BoundaryParams::from_t(h, y, t.clone(), mu, nu),
            (None, Some(tp), Some(tm)) if route != KRoute::Closed => {
                BoundaryParams::new(h, y, tp.clone(), tm.clone(), mu, nu, None)
            }
            _ => {
                return Err(Failure::Usage(match route {
                    KRoute::Closed => "the closed route needs --t".into(),
                    _ => "give --t, or both --t-plus and --t-minus".into(),
                }))
            }
        },
    };
    Ok(p?)
}

fn cmd_rmat(a: &RmatArgs) -> Result<Value, Failure> {
    let (i_w, j_w) = (Weight::new(a.weights[0])?, Weight::new(a.weights[1])?);
    if let Some(kind) = a.gauge.strip_prefix("degenerate:") {
        let kind = DegenerateKind::from_id(kind).ok_or_else(|| {
            let ids: Vec<_> = DegenerateKind::ALL.iter().map(|k| k.id()).collect();
            Failure::Usage(format!("unknown degenerate point {kind:?}; expected one of {}", ids.join(", ")))
        })?;
        if a.lambda.is_some() {
            return Err(Failure::Usage("a degenerate gauge fixes λ; drop --lambda".into()));
        }
        let t = build_s_degenerate(kind, i_w, j_w, &a.h)?;
        return Ok(tensor_json(&t, &a.h, &kind.lambda(i_w, j_w, &a.h)?));
    }
    let lambda = a.lambda.clone().ok_or_else(|| Failure::Usage("--lambda is required".into()))?;
    let p = ModelParams::new(a.h.clone(), lambda.clone())?;
    let t = match a.gauge.as_str() {
        "plain" => build_r(i_w, j_w, &p)?,
        "symmetric" => build_rbar(i_w, j_w, &p)?,
        "stochastic" => build_s(i_w, j_w, &p)?,
        "factorized" => build_s_factorized(i_w, j_w, &p)?,
        g => return Err(Failure::Usage(format!("unknown gauge {g:?}"))),
    };
    Ok(tensor_json(&t, &a.h, &lambda))
}

fn cmd_kmat(a: &KmatArgs) -> Result<Value, Failure> {
    let route = KRoute::from(a.route);
    let p = boundary_params(&a.boundary, route)?;
    let spin = Weight::new(a.spin)?;
    if a.n_matrix {
        if route != KRoute::Closed {
            return Err(Failure::Usage("--n-matrix needs --route closed".into()));
        }
        return Ok(nmatrix_json(&n_closed(spin, &p)?, &p));
    }
    let k = build_k(route, spin, &p)?;
    let mut out = kmatrix_json(&k, &p);
    out["route"] = route.id().into();
    if a.check {
        let residual = k_defining_residual(&k, &p)?;
        out["check"] = json!({
            "defining_residual": text(&residual),
            "status": if residual.is_zero() { "pass" } else { "fail" },
            "stochastic": stochastic_residual(&k).is_zero(),
        });
        if !residual.is_zero() {
            return Err(Failure::Verification(out));
        }
    }
    Ok(out)
}

fn cmd_genfun(a: &GenfunArgs) -> Result<Value, Failure> {
    let p = boundary_params(&a.boundary, KRoute::Closed)?;
    let spin = Weight::new(a.spin)?;
    let f = genfun_eval(&a.u, &a.v, spin, &p)?;
    let mut out = json!({
        "spin": a.spin,
        "params": params_json(&p),
        "u": text(&f.u),
        "v": text(&f.v),
        "value": text(&f.value),
    });
    if a.check {
        let r = genfun_residuals(&a.u, &a.v, spin, &p, GenFunSource::ClosedForm)?;
        let ok = r.iter().all(Scalar::is_zero);
        out["residuals"] = r.iter().map(text).collect::<Vec<_>>().into();
        out["status"] = if ok { "pass" } else { "fail" }.into();
        if !ok {
            return Err(Failure::Verification(out));
        }
    }
    Ok(out)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Value, Failure> {
    let suite = Suite::from_id(&a.suite).ok_or_else(|| {
        let ids: Vec<_> = Suite::ALL.iter().map(|s| s.id()).collect();
        Failure::Usage(format!("unknown suite {:?}; expected one of {}", a.suite, ids.join(", ")))
    })?;
    let trials = a.trials.unwrap_or(suite.configs() as u64);
    let run = run_suite(suite, &SuiteOptions { max_index: a.max_index }, a.seed, trials);
    let out = hs6v::json::suite_json(&run);
    if run.passed() {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn cmd_golden() -> Result<Value, Failure> {
    let entries = run_golden()?;
    let mismatches = entries.iter().filter(|e| !e.matches()).count();
    let out = json!({
        "entries": entries.iter().map(|e| json!({
            "spin": e.spin,
            "draw": e.draw,
            "j": e.j,
            "l": e.l,
            "expected": text(&e.expected),
            "actual": text(&e.actual),
            "match": e.matches(),
        })).collect::<Vec<_>>(),
        "summary": { "checked": entries.len(), "mismatches": mismatches },
    });
    if mismatches == 0 {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn emit(v: &Value, output: &Option<PathBuf>) -> Result<(), String> {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    match output {
        Some(path) => std::fs::write(path, s).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(s.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Rmat(a) => cmd_rmat(a),
        Command::Kmat(a) => cmd_kmat(a),
        Command::Genfun(a) => cmd_genfun(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Golden => cmd_golden(),
    };
    let (value, code) = match result {
        Ok(v) => (Some(v), 0),
        Err(Failure::Verification(v)) => (Some(v), EXIT_FAIL),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            (None, EXIT_USAGE)
        }
        Err(Failure::Singular(m)) => {
            eprintln!("singular: {m}");
            (None, EXIT_SINGULAR)
        }
    };
    if let Some(v) = value {
        if let Err(m) = emit(&v, &cli.output) {
            eprintln!("error: {m}");
            return ExitCode::from(EXIT_IO);
        }
    }
    ExitCode::from(code)
}
