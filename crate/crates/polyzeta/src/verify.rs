//! Identity registry and suite runner: every supported identity is keyed by
//! a short id, instantiated with parameters, and checked by evaluating both
//! sides independently and comparing the residual against
//! 10 x (sum of error estimates) and an absolute per-case ceiling.
//!
//! Registry ids:
//!
//! | id             | parameters        | sides                                   |
//! |----------------|-------------------|-----------------------------------------|
//! | `thm2.1-zeta`  | k, klog, alpha    | log-weighted Li integral vs expansion   |
//! | `thm2.1-T`     | k, klog, alpha    | log-weighted A integral vs expansion    |
//! | `thm2.3`       | k, alpha          | transformed-Li integral vs zeta-star    |
//! | `cor2.2-xi`    | k, klog           | xi integral vs zeta expansion           |
//! | `cor2.2-psi`   | k, klog           | psi integral vs T expansion             |
//! | `cor2.4`       | k, klog           | eta integral vs zeta-star expansion     |
//! | `thm3.2-zeta`  | p, q, m           | symmetric double-zeta formula           |
//! | `thm3.2-T`     | p, q, m           | symmetric double-T formula              |
//! | `cor3.4-zeta`  | p, q              | m = p specialization (zeta)             |
//! | `cor3.4-T`     | p, q              | m = p specialization (T)                |
//! | `kta-change`   | p, q, t           | A-function transformation identity      |
//! | `example-li22` | alpha             | the worked Li_{2,2} log integral        |
//!
//! Precondition violations inside a case are recorded as structured skips;
//! the suite keeps running.

use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::formulas::{
    self, a_transform_sides, cor34_check, expand_eta, expand_psi, expand_thm21_rhs, expand_xi,
    sym_sides, Variant,
};
use crate::quadrature::{
    eta_value_by_integral, integrate, psi_value_by_integral, xi_value_by_integral, Family,
    IntegrandSpec,
};
use crate::series::{HurwitzShift, Memo};

/// The closed set of identity ids.
pub const IDENTITY_IDS: &[&str] = &[
    "thm2.1-zeta",
    "thm2.1-T",
    "thm2.3",
    "cor2.2-xi",
    "cor2.2-psi",
    "cor2.4",
    "thm3.2-zeta",
    "thm3.2-T",
    "cor3.4-zeta",
    "cor3.4-T",
    "kta-change",
    "example-li22",
];

/// Parameter record; unused fields keep their defaults.
#[derive(Clone, Debug)]
pub struct CaseParams {
    pub k: Option<Composition>,
    pub k_log: u32,
    pub alpha: f64,
    pub p: u32,
    pub q: u32,
    pub m: u32,
    pub t: f64,
}

impl Default for CaseParams {
    fn default() -> Self {
        CaseParams {
            k: None,
            k_log: 0,
            alpha: 0.0,
            p: 2,
            q: 1,
            m: 2,
            t: 0.5,
        }
    }
}

/// One identity instance to check.
#[derive(Clone, Debug)]
pub struct IdentityCase {
    pub id: String,
    pub params: CaseParams,
    pub tol: f64,
}

impl IdentityCase {
    pub fn new(id: &str, params: CaseParams, tol: f64) -> Result<IdentityCase> {
        if !IDENTITY_IDS.contains(&id) {
            return Err(Error::Parse(format!(
                "unknown identity id '{id}' (known: {})",
                IDENTITY_IDS.join(", ")
            )));
        }
        Ok(IdentityCase {
            id: id.to_string(),
            params,
            tol,
        })
    }

    /// Human-readable parameter summary.
    pub fn describe(&self) -> String {
        let p = &self.params;
        let mut parts = Vec::new();
        if let Some(k) = &p.k {
            parts.push(format!("k={k}"));
        }
        match self.id.as_str() {
            "thm2.1-zeta" | "thm2.1-T" | "cor2.2-xi" | "cor2.2-psi" | "cor2.4" => {
                parts.push(format!("klog={}", p.k_log));
            }
            _ => {}
        }
        match self.id.as_str() {
            "thm2.1-zeta" | "thm2.1-T" | "thm2.3" | "example-li22" => {
                parts.push(format!("alpha={}", p.alpha));
            }
            _ => {}
        }
        match self.id.as_str() {
            "thm3.2-zeta" | "thm3.2-T" => {
                parts.push(format!("p={} q={} m={}", p.p, p.q, p.m));
            }
            "cor3.4-zeta" | "cor3.4-T" => {
                parts.push(format!("p={} q={}", p.p, p.q));
            }
            "kta-change" => {
                parts.push(format!("p={} q={} t={}", p.p, p.q, p.t));
            }
            _ => {}
        }
        parts.join(" ")
    }
}

/// Outcome of one case.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub case: IdentityCase,
    pub lhs: f64,
    pub rhs: f64,
    pub lhs_err: f64,
    pub rhs_err: f64,
    pub residual: f64,
    pub pass: bool,
    /// precondition violation or evaluation failure, with the reason
    pub skipped: Option<String>,
    pub wall_time: Duration,
}

fn need_k(params: &CaseParams) -> Result<&Composition> {
    params
        .k
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("this identity needs a composition k=".into()))
}

fn sides_for(case: &IdentityCase, memo: &Memo) -> Result<formulas::Sides> {
    let p = &case.params;
    let tol = case.tol;
    let quad_tol = tol * 0.45;
    let series_tol = tol * 0.05;
    match case.id.as_str() {
        "thm2.1-zeta" | "thm2.1-T" => {
            let k = need_k(p)?;
            let (family, variant) = if case.id == "thm2.1-zeta" {
                (Family::Thm21Zeta, Variant::Zeta)
            } else {
                (Family::Thm21T, Variant::TValue)
            };
            let spec = IntegrandSpec {
                family,
                index: k.clone(),
                log_power: p.k_log,
                alpha: p.alpha,
            };
            let lhs = integrate(&spec, quad_tol)?;
            let (rhs, rhs_err) =
                expand_thm21_rhs(k, p.k_log, variant, p.alpha).evaluate(memo, series_tol)?;
            Ok(formulas::Sides {
                lhs: lhs.value,
                rhs,
                lhs_err: lhs.err_estimate,
                rhs_err,
            })
        }
        "thm2.3" => {
            let k = need_k(p)?;
            let spec = IntegrandSpec {
                family: Family::Thm23Eta,
                index: k.clone(),
                log_power: 0,
                alpha: p.alpha,
            };
            let lhs = integrate(&spec, quad_tol)?;
            let dual = k.mzv_dual_index();
            let star = memo.zeta_star(&dual, HurwitzShift::new(p.alpha)?, series_tol)?;
            let sign = if k.depth() % 2 == 0 { 1.0 } else { -1.0 };
            Ok(formulas::Sides {
                lhs: lhs.value,
                rhs: sign * star.value,
                lhs_err: lhs.err_estimate,
                rhs_err: star.err_estimate,
            })
        }
        "cor2.2-xi" => {
            let k = need_k(p)?;
            let lhs = xi_value_by_integral(k, p.k_log, quad_tol)?;
            let (rhs, rhs_err) = expand_xi(k, p.k_log).evaluate(memo, series_tol)?;
            Ok(formulas::Sides {
                lhs: lhs.value,
                rhs,
                lhs_err: lhs.err_estimate,
                rhs_err,
            })
        }
        "cor2.2-psi" => {
            let k = need_k(p)?;
            let lhs = psi_value_by_integral(k, p.k_log, quad_tol)?;
            let (rhs, rhs_err) = expand_psi(k, p.k_log).evaluate(memo, series_tol)?;
            Ok(formulas::Sides {
                lhs: lhs.value,
                rhs,
                lhs_err: lhs.err_estimate,
                rhs_err,
            })
        }
        "cor2.4" => {
            let k = need_k(p)?;
            let lhs = eta_value_by_integral(k, p.k_log, quad_tol)?;
            let (rhs, rhs_err) = expand_eta(k, p.k_log).evaluate(memo, series_tol)?;
            Ok(formulas::Sides {
                lhs: lhs.value,
                rhs,
                lhs_err: lhs.err_estimate,
                rhs_err,
            })
        }
        "thm3.2-zeta" => sym_sides(p.p, p.q, p.m, Variant::Zeta, memo, tol * 0.5),
        "thm3.2-T" => sym_sides(p.p, p.q, p.m, Variant::TValue, memo, tol * 0.5),
        "cor3.4-zeta" | "cor3.4-T" => {
            let variant = if case.id == "cor3.4-zeta" {
                Variant::Zeta
            } else {
                Variant::TValue
            };
            let report = cor34_check(p.p, p.q, variant, memo, tol * 0.5)?;
            if p.q % 2 == 0 && !report.rhs_terms.is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "even q = {} must cancel the product side exactly, got '{}'",
                    p.q,
                    report.rhs_terms.to_text()
                )));
            }
            Ok(report.sides)
        }
        "kta-change" => a_transform_sides(p.p, p.q, p.t, memo, tol * 0.5),
        "example-li22" => {
            let k = Composition::new(vec![2, 2])?;
            let spec = IntegrandSpec {
                family: Family::Thm21Zeta,
                index: k.clone(),
                log_power: 1,
                alpha: p.alpha,
            };
            let lhs = integrate(&spec, quad_tol)?;
            let (rhs, rhs_err) =
                expand_thm21_rhs(&k, 1, Variant::Zeta, p.alpha).evaluate(memo, series_tol)?;
            Ok(formulas::Sides {
                lhs: lhs.value,
                rhs,
                lhs_err: lhs.err_estimate,
                rhs_err,
            })
        }
        other => Err(Error::Parse(format!("unknown identity id '{other}'"))),
    }
}

/// Evaluate one case; failures become structured skips, never panics.
pub fn run_case(case: &IdentityCase, memo: &Memo) -> IdentityReport {
    let start = Instant::now();
    match sides_for(case, memo) {
        Ok(sides) => {
            let residual = sides.residual();
            let pass = residual <= 10.0 * (sides.lhs_err + sides.rhs_err) && residual <= case.tol;
            IdentityReport {
                case: case.clone(),
                lhs: sides.lhs,
                rhs: sides.rhs,
                lhs_err: sides.lhs_err,
                rhs_err: sides.rhs_err,
                residual,
                pass,
                skipped: None,
                wall_time: start.elapsed(),
            }
        }
        Err(e) => IdentityReport {
            case: case.clone(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            lhs_err: f64::NAN,
            rhs_err: f64::NAN,
            residual: f64::NAN,
            pass: false,
            skipped: Some(e.to_string()),
            wall_time: start.elapsed(),
        },
    }
}

/// Run every case, optionally across threads; the report order always
/// matches the input order.
pub fn run_suite(grid: &[IdentityCase], parallelism: usize, memo: &Memo) -> Vec<IdentityReport> {
    if grid.is_empty() {
        return Vec::new();
    }
    let workers = parallelism.max(1).min(grid.len());
    if workers == 1 {
        return grid.iter().map(|c| run_case(c, memo)).collect();
    }
    let slots: Mutex<Vec<Option<IdentityReport>>> = Mutex::new(vec![None; grid.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= grid.len() {
                    break;
                }
                let report = run_case(&grid[i], memo);
                slots.lock().unwrap()[i] = Some(report);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

fn comp(parts: &[u32]) -> Composition {
    Composition::new(parts.to_vec()).expect("static composition")
}

/// The default verification grid: every identity at parameters where the
/// 1e-5 / 1e-6 ceilings are comfortably reachable.
pub fn default_grid() -> Vec<IdentityCase> {
    let k6 = [
        comp(&[1]),
        comp(&[2]),
        comp(&[1, 1]),
        comp(&[2, 1]),
        comp(&[1, 2]),
        comp(&[2, 2]),
    ];
    let alphas = [0.0, -0.5];
    let mut grid = Vec::new();
    let mut push = |id: &str, params: CaseParams, tol: f64| {
        grid.push(IdentityCase::new(id, params, tol).expect("registry id"));
    };
    for id in ["thm2.1-zeta", "thm2.1-T"] {
        for k in &k6 {
            for k_log in 0..=2 {
                for &alpha in &alphas {
                    push(
                        id,
                        CaseParams {
                            k: Some(k.clone()),
                            k_log,
                            alpha,
                            ..Default::default()
                        },
                        1e-5,
                    );
                }
            }
        }
    }
    for k in &k6 {
        for &alpha in &alphas {
            push(
                "thm2.3",
                CaseParams {
                    k: Some(k.clone()),
                    alpha,
                    ..Default::default()
                },
                1e-5,
            );
        }
    }
    for id in ["cor2.2-xi", "cor2.2-psi", "cor2.4"] {
        for k in &k6 {
            for k_log in 0..=2 {
                push(
                    id,
                    CaseParams {
                        k: Some(k.clone()),
                        k_log,
                        ..Default::default()
                    },
                    1e-5,
                );
            }
        }
    }
    for id in ["thm3.2-zeta", "thm3.2-T"] {
        for p in [2, 3] {
            for q in [1, 2, 3] {
                for m in [2, 3] {
                    push(
                        id,
                        CaseParams {
                            p,
                            q,
                            m,
                            ..Default::default()
                        },
                        1e-6,
                    );
                }
            }
        }
    }
    for id in ["cor3.4-zeta", "cor3.4-T"] {
        for p in [2, 3] {
            for q in [1, 2, 3, 4] {
                push(
                    id,
                    CaseParams {
                        p,
                        q,
                        ..Default::default()
                    },
                    1e-5,
                );
            }
        }
    }
    for p in [2, 3] {
        for q in [1, 2] {
            for t in [0.3, 0.5, 0.7] {
                push(
                    "kta-change",
                    CaseParams {
                        p,
                        q,
                        t,
                        ..Default::default()
                    },
                    1e-5,
                );
            }
        }
    }
    push("example-li22", CaseParams::default(), 1e-5);
    grid
}

/// Parse a grid file: one case per line, `id key=value ...`; `#` starts a
/// comment. Keys: k, klog, alpha, p, q, m, t, tol.
pub fn parse_grid(text: &str) -> Result<Vec<IdentityCase>> {
    let mut grid = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let id = tokens.next().expect("nonempty line");
        let mut params = CaseParams::default();
        let mut tol = 1e-5;
        for tok in tokens {
            let (key, value) = tok.split_once('=').ok_or_else(|| {
                Error::Parse(format!(
                    "line {}: expected key=value, got '{tok}'",
                    lineno + 1
                ))
            })?;
            let bad =
                |what: &str| Error::Parse(format!("line {}: bad {what} '{value}'", lineno + 1));
            match key {
                "k" => params.k = Some(Composition::from_str(value)?),
                "klog" => params.k_log = value.parse().map_err(|_| bad("klog"))?,
                "alpha" => params.alpha = value.parse().map_err(|_| bad("alpha"))?,
                "p" => params.p = value.parse().map_err(|_| bad("p"))?,
                "q" => params.q = value.parse().map_err(|_| bad("q"))?,
                "m" => params.m = value.parse().map_err(|_| bad("m"))?,
                "t" => params.t = value.parse().map_err(|_| bad("t"))?,
                "tol" => tol = value.parse().map_err(|_| bad("tol"))?,
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown key '{other}'",
                        lineno + 1
                    )))
                }
            }
        }
        grid.push(
            IdentityCase::new(id, params, tol)
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?,
        );
    }
    Ok(grid)
}
