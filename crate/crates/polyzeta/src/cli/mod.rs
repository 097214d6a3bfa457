//! The `polyzeta` command-line front end.
//!
//! Subcommands: `dual` (composition combinatorics), `eval` (single values),
//! `expand` (exact finite-sum expansions), `verify` (identity suites),
//! `table` (batch evaluation as CSV).
//!
//! Exit codes: 0 success / all-pass, 1 verification failure, 2 usage or
//! parse error, 3 numeric domain error. Machine output (`--format json`) is
//! a single schema-stable document per invocation with `command`, `inputs`,
//! `result`, `version` and `timestamp` fields; floats print with 15
//! significant digits.

use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde_json::{json, Value};

use crate::compositions::{all_of_weight, Composition};
use crate::error::Error;
use crate::formulas::{
    expand_eta, expand_psi, expand_thm21_rhs, expand_xi, kt_conjecture_sum, Expansion, Variant,
};
use crate::series::{self, EvalResult, HurwitzShift, Memo};
use crate::verify::{default_grid, parse_grid, run_suite, IdentityCase, IdentityReport};

const CACHE_ENV: &str = "POLYZETA_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "polyzeta",
    version,
    about = "Multiple zeta / zeta-star / T-values, polylogarithms, and the \
             integral identities that connect them",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cache directory for computed values (overrides POLYZETA_CACHE_DIR)
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<String>,
    /// Bypass the on-disk cache entirely
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Latex,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the reversal, Hoffman dual, and dual zeta index of a composition
    Dual {
        /// Composition literal, e.g. 2,1,4 or 1^3,2
        composition: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Evaluate zeta / zstar / t (with --alpha) or li / a (with --x)
    Eval(EvalArgs),
    /// Print an exact expansion: xi, psi, eta, thm21, or ktsum
    Expand(ExpandArgs),
    /// Run an identity suite and report residuals
    Verify(VerifyArgs),
    /// Batch evaluation as CSV
    Table(TableArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Value kind: zeta, zstar, t, li, or a
    kind: String,
    /// Composition literal
    composition: String,
    /// Shift parameter (zeta / zstar / t), must be < 1
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Series point (li / a)
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    /// Absolute tolerance (defaults by weight)
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Args)]
struct ExpandArgs {
    /// Expansion target: xi, psi, eta, thm21, or ktsum
    target: String,
    /// Composition literal (xi / psi / eta / thm21)
    #[arg(long)]
    k: Option<String>,
    /// Log power (xi / psi / eta / thm21)
    #[arg(long, default_value_t = 0)]
    klog: u32,
    /// Variant for thm21: zeta or t
    #[arg(long, default_value = "zeta")]
    variant: String,
    /// Shift parameter for thm21
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    /// First parameter for ktsum (>= 2)
    #[arg(long)]
    p: Option<u32>,
    /// Second parameter for ktsum (>= 1)
    #[arg(long)]
    q: Option<u32>,
    /// Order parameter for ktsum (>= 0)
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Named suite to run
    #[arg(long, default_value = "default", conflicts_with = "grid")]
    suite: String,
    /// Grid file: one case per line, `id key=value ...`
    #[arg(long)]
    grid: Option<String>,
    /// Worker threads
    #[arg(long, default_value_t = 4)]
    parallel: usize,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// Value kind: zeta, zstar, or t
    kind: String,
    /// All admissible compositions with weight up to this bound
    #[arg(long, conflicts_with_all = ["depth", "k"])]
    weight_upto: Option<u32>,
    /// Fixed depth (currently depth 1, combined with --k)
    #[arg(long)]
    depth: Option<usize>,
    /// Inclusive part range for depth-1 indices, e.g. 2..6
    #[arg(long)]
    k: Option<String>,
    /// Shift parameter
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    /// Absolute tolerance (defaults by weight)
    #[arg(long)]
    tol: Option<f64>,
}

/// Parse args, dispatch, and map errors to exit codes.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors
            e.exit();
        }
    };
    let memo = build_memo(&cli);
    let outcome = match &cli.command {
        Command::Dual {
            composition,
            format,
        } => cmd_dual(composition, *format),
        Command::Eval(args) => cmd_eval(args, &memo),
        Command::Expand(args) => cmd_expand(args),
        Command::Verify(args) => cmd_verify(args, &memo),
        Command::Table(args) => cmd_table(args, &memo),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::InvalidArgument(_) => 2,
                Error::Domain(_) | Error::Divergent(_) | Error::Accuracy { .. } => 3,
            }
        }
    }
}

fn build_memo(cli: &Cli) -> Memo {
    if cli.no_cache {
        return Memo::new();
    }
    let dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var(CACHE_ENV).ok());
    match dir {
        Some(d) if !d.is_empty() => Memo::with_disk(d),
        _ => Memo::new(),
    }
}

fn timestamp() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn emit_json(command: &str, inputs: Value, result: Value) {
    let doc = json!({
        "command": command,
        "inputs": inputs,
        "result": result,
        "version": env!("CARGO_PKG_VERSION"),
        "timestamp": timestamp(),
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("valid json")
    );
}

/// 15 significant digits.
fn fmt_f(v: f64) -> String {
    format!("{v:.14e}")
}

fn cmd_dual(literal: &str, format: Format) -> crate::Result<i32> {
    let k = Composition::from_str(literal)?;
    let reversal = k.reverse();
    let dual = k.hoffman_dual();
    let mzv_dual = k.mzv_dual_index();
    match format {
        Format::Json => emit_json(
            "dual",
            json!({ "composition": k.to_string() }),
            json!({
                "reversal": reversal.to_string(),
                "dual": dual.to_string(),
                "mzv_dual": mzv_dual.to_string(),
                "weight": k.weight(),
                "depth": k.depth(),
                "admissible": k.is_admissible(),
            }),
        ),
        _ => {
            println!("reversal: {reversal}");
            println!("dual: {dual}");
            println!("mzv-dual: {mzv_dual}");
        }
    }
    Ok(0)
}

fn eval_dispatch(
    kind: &str,
    k: &Composition,
    alpha: Option<f64>,
    x: Option<f64>,
    tol: f64,
    memo: &Memo,
) -> crate::Result<EvalResult> {
    let shift_kind = matches!(kind, "zeta" | "zstar" | "zeta_star" | "t");
    if shift_kind && x.is_some() {
        return Err(Error::InvalidArgument(format!(
            "--x does not apply to kind '{kind}'"
        )));
    }
    if !shift_kind && alpha.is_some() {
        return Err(Error::InvalidArgument(format!(
            "--alpha does not apply to kind '{kind}'"
        )));
    }
    match kind {
        "zeta" => memo.zeta(k, HurwitzShift::new(alpha.unwrap_or(0.0))?, tol),
        "zstar" | "zeta_star" => memo.zeta_star(k, HurwitzShift::new(alpha.unwrap_or(0.0))?, tol),
        "t" => memo.t_value(k, HurwitzShift::new(alpha.unwrap_or(0.0))?, tol),
        "li" => {
            let x = x.ok_or_else(|| Error::InvalidArgument("li needs --x".into()))?;
            memo.li(k, x, tol)
        }
        "a" => {
            let x = x.ok_or_else(|| Error::InvalidArgument("a needs --x".into()))?;
            memo.a_function(k, x, tol)
        }
        other => Err(Error::Parse(format!(
            "unknown kind '{other}' (expected zeta, zstar, t, li, a)"
        ))),
    }
}

fn cmd_eval(args: &EvalArgs, memo: &Memo) -> crate::Result<i32> {
    let k = Composition::from_str(&args.composition)?;
    let tol = args.tol.unwrap_or_else(|| series::default_tol(k.weight()));
    let r = eval_dispatch(&args.kind, &k, args.alpha, args.x, tol, memo)?;
    match args.format {
        Format::Json => {
            let mut inputs = json!({
                "kind": args.kind,
                "composition": k.to_string(),
                "tol": tol,
            });
            if let Some(a) = args.alpha {
                inputs["alpha"] = json!(a);
            }
            if let Some(x) = args.x {
                inputs["x"] = json!(x);
            }
            emit_json(
                "eval",
                inputs,
                json!({
                    "value": r.value,
                    "err_estimate": r.err_estimate,
                    "terms_used": r.terms_used,
                    "method": r.method.name(),
                }),
            );
        }
        _ => {
            let arg_note = match (args.alpha, args.x) {
                (Some(a), _) => format!("; {}", 1.0 - a),
                (_, Some(x)) => format!("; x={x}"),
                _ => String::new(),
            };
            println!(
                "{}({}{}) = {}  (err <= {:.2e}, {} terms, {})",
                args.kind,
                k,
                arg_note,
                fmt_f(r.value),
                r.err_estimate,
                r.terms_used,
                r.method.name()
            );
        }
    }
    Ok(0)
}

/// Distribute the scalar into the coefficients and render sign-aware:
/// `2*zeta(3,2,1) + 2*zeta(2,3,1) + 1*zeta(2,2,2)` or `-1*zstar(3)`.
fn expansion_folded_text(e: &Expansion) -> String {
    if e.terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in e.terms.iter().enumerate() {
        let c = &e.scalar * &t.coefficient;
        if i == 0 {
            out.push_str(&format!("{c}"));
        } else if c.is_negative() {
            out.push_str(&format!(" - {}", -c.clone()));
        } else {
            out.push_str(&format!(" + {c}"));
        }
        out.push('*');
        out.push_str(t.kind.name());
        out.push('(');
        out.push_str(&t.index.to_string());
        if let Some(second) = &t.index2 {
            out.push_str(&format!(")*{}({}", t.kind.name(), second));
        }
        if t.alpha != 0.0 {
            out.push_str(&format!("; {}", 1.0 - t.alpha));
        }
        out.push(')');
    }
    out
}

fn expansion_json(e: &Expansion) -> Value {
    let terms: Vec<Value> = e
        .terms
        .iter()
        .map(|t| {
            json!({
                "coefficient": t.coefficient.to_string(),
                "kind": t.kind.name(),
                "index": t.index.parts(),
                "index2": t.index2.as_ref().map(|c| c.parts().to_vec()),
                "hurwitz_argument": 1.0 - t.alpha,
                "log_power": t.log_power,
                "point": t.point,
            })
        })
        .collect();
    json!({
        "scalar": {
            "numer": e.scalar.numer().to_string(),
            "denom": e.scalar.denom().to_string(),
        },
        "terms": terms,
        "text": expansion_folded_text(e),
    })
}

fn cmd_expand(args: &ExpandArgs) -> crate::Result<i32> {
    let need_k = || -> crate::Result<Composition> {
        let lit = args
            .k
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("this target needs --k".into()))?;
        Composition::from_str(lit)
    };
    let expansion = match args.target.as_str() {
        "xi" => expand_xi(&need_k()?, args.klog),
        "psi" => expand_psi(&need_k()?, args.klog),
        "eta" => expand_eta(&need_k()?, args.klog),
        "thm21" => {
            let variant = match args.variant.as_str() {
                "zeta" => Variant::Zeta,
                "t" | "T" => Variant::TValue,
                other => {
                    return Err(Error::Parse(format!(
                        "unknown variant '{other}' (expected zeta or t)"
                    )))
                }
            };
            if args.alpha >= 1.0 {
                return Err(Error::Domain(format!(
                    "shift parameter must be < 1, got {}",
                    args.alpha
                )));
            }
            expand_thm21_rhs(&need_k()?, args.klog, variant, args.alpha)
        }
        "ktsum" => {
            let (p, q, m) = match (args.p, args.q, args.m) {
                (Some(p), Some(q), Some(m)) => (p, q, m),
                _ => {
                    return Err(Error::InvalidArgument(
                        "ktsum needs --p, --q and --m".into(),
                    ))
                }
            };
            kt_conjecture_sum(p, q, m)?
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown expand target '{other}' (expected xi, psi, eta, thm21, ktsum)"
            )))
        }
    };
    match args.format {
        Format::Json => {
            let inputs = json!({
                "target": args.target,
                "k": args.k,
                "klog": args.klog,
                "variant": args.variant,
                "alpha": args.alpha,
                "p": args.p,
                "q": args.q,
                "m": args.m,
            });
            emit_json("expand", inputs, expansion_json(&expansion));
        }
        Format::Latex => println!("{}", expansion.to_latex()),
        _ => println!("{}", expansion_folded_text(&expansion)),
    }
    Ok(0)
}

fn report_json(r: &IdentityReport) -> Value {
    fn f(v: f64) -> Value {
        if v.is_finite() {
            json!(v)
        } else {
            Value::Null
        }
    }
    json!({
        "id": r.case.id,
        "params": r.case.describe(),
        "tol": r.case.tol,
        "lhs": f(r.lhs),
        "rhs": f(r.rhs),
        "lhs_err": f(r.lhs_err),
        "rhs_err": f(r.rhs_err),
        "residual": f(r.residual),
        "pass": r.pass,
        "skipped": r.skipped,
        "wall_ms": r.wall_time.as_secs_f64() * 1e3,
    })
}

fn cmd_verify(args: &VerifyArgs, memo: &Memo) -> crate::Result<i32> {
    let grid: Vec<IdentityCase> = match &args.grid {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read '{path}': {e}")))?;
            parse_grid(&text)?
        }
        None => match args.suite.as_str() {
            "default" => default_grid(),
            other => {
                return Err(Error::Parse(format!(
                    "unknown suite '{other}' (expected 'default')"
                )))
            }
        },
    };
    let reports = run_suite(&grid, args.parallel, memo);
    let passed = reports.iter().filter(|r| r.pass).count();
    let skipped = reports.iter().filter(|r| r.skipped.is_some()).count();
    let failed = reports.len() - passed - skipped;
    match args.format {
        Format::Json => {
            let inputs = json!({
                "suite": args.grid.is_none().then(|| args.suite.clone()),
                "grid": args.grid,
                "parallel": args.parallel,
                "cases": grid.len(),
            });
            let result = json!({
                "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
                "passed": passed,
                "failed": failed,
                "skipped": skipped,
            });
            emit_json("verify", inputs, result);
        }
        _ => {
            for r in &reports {
                if let Some(reason) = &r.skipped {
                    println!("SKIP {} {}  ({reason})", r.case.id, r.case.describe());
                } else {
                    println!(
                        "{} {} {}  residual {:.3e} (tol {:.1e}, errs {:.1e}/{:.1e}) [{:.1}ms]",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.case.id,
                        r.case.describe(),
                        r.residual,
                        r.case.tol,
                        r.lhs_err,
                        r.rhs_err,
                        r.wall_time.as_secs_f64() * 1e3,
                    );
                }
            }
            println!(
                "summary: {} cases, {} passed, {} failed, {} skipped",
                reports.len(),
                passed,
                failed,
                skipped
            );
        }
    }
    Ok(if passed == reports.len() { 0 } else { 1 })
}

fn cmd_table(args: &TableArgs, memo: &Memo) -> crate::Result<i32> {
    if !matches!(args.kind.as_str(), "zeta" | "zstar" | "zeta_star" | "t") {
        return Err(Error::Parse(format!(
            "table supports zeta, zstar and t (got '{}')",
            args.kind
        )));
    }
    let shift = HurwitzShift::new(args.alpha)?;
    let mut indices: Vec<Composition> = Vec::new();
    if let Some(w_max) = args.weight_upto {
        for w in 2..=w_max {
            indices.extend(all_of_weight(w).into_iter().filter(|k| k.is_admissible()));
        }
    } else if let Some(range) = &args.k {
        let depth = args.depth.unwrap_or(1);
        if depth != 1 {
            return Err(Error::InvalidArgument(
                "part ranges are supported for depth 1 only".into(),
            ));
        }
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| Error::Parse(format!("bad range '{range}', expected like 2..6")))?;
        let lo: u32 = lo
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad range start '{lo}'")))?;
        let hi: u32 = hi
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad range end '{hi}'")))?;
        for kk in lo.max(2)..=hi.min(60) {
            indices.push(Composition::single(kk)?);
        }
    } else {
        return Err(Error::InvalidArgument(
            "table needs --weight-upto or --k".into(),
        ));
    }
    println!("kind,index,weight,depth,hurwitz_argument,value,err_estimate,terms_used,method");
    for k in &indices {
        let tol = args.tol.unwrap_or_else(|| series::default_tol(k.weight()));
        let r = match args.kind.as_str() {
            "zeta" => memo.zeta(k, shift, tol)?,
            "zstar" | "zeta_star" => memo.zeta_star(k, shift, tol)?,
            _ => memo.t_value(k, shift, tol)?,
        };
        println!(
            "{},\"{}\",{},{},{},{},{:.2e},{},{}",
            args.kind,
            k,
            k.weight(),
            k.depth(),
            1.0 - args.alpha,
            fmt_f(r.value),
            r.err_estimate,
            r.terms_used,
            r.method.name()
        );
    }
    Ok(0)
}
