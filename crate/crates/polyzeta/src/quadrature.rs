//! Tanh-sinh evaluation of the singular integrals over (0,1):
//!
//! - `Thm21Zeta`:  int_0^1 Li_k(x) log^p(1-x) / (x (1-x)^a) dx
//! - `Thm21T`:     int_0^1 A(k;x) log^p(w) / (x w^a) dx,  w = (1-x)/(1+x)
//! - `Thm23Eta`:   int_0^1 Li_k(x/(x-1)) log^p(1-x) / (x (1-x)^a) dx
//!
//! The interval is cut at 1 - eps with eps chosen so that a closed-form
//! bound on the discarded segment is below tol/4; the bound uses the exact
//! majorants Li_k(x) <= L^r/r!, A(k;x) <= L2^r/r! (L = -ln(1-x),
//! L2 = -ln w), or the value at 1 when the index is admissible. The bound is
//! added to the reported error estimate, never to the value.
//!
//! Factors at nodes close to 1 are evaluated by the Taylor march along
//! v = -ln(1-x); the eta family sums the march over all refinements of the
//! index. Node errors are accumulated with their quadrature weights.

use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::series::{self, HurwitzShift, March, MarchKind};

/// Which of the three integral shapes to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Thm21Zeta,
    Thm21T,
    Thm23Eta,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Thm21Zeta => "thm21_zeta",
            Family::Thm21T => "thm21_t",
            Family::Thm23Eta => "thm23_eta",
        }
    }
}

/// A fully specified integrand.
#[derive(Clone, Debug)]
pub struct IntegrandSpec {
    pub family: Family,
    pub index: Composition,
    pub log_power: u32,
    pub alpha: f64,
}

/// Quadrature output: value, total error estimate (quadrature discrepancy +
/// discarded-segment bound + node evaluation errors), node count, and where
/// the domain was cut (`split_point` = 1 - `endpoint_gap`, clamped into
/// (0,1) when the gap is below machine resolution).
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub nodes_used: u64,
    pub split_point: f64,
    pub endpoint_gap: f64,
}

/// a! e^{-z} sum_{j<=a} z^j/j!  (upper incomplete gamma at integer a+1).
fn igamma_int(a: usize, z: f64) -> f64 {
    if z > 700.0 {
        return 0.0;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 1..=a {
        term *= z / j as f64;
        sum += term;
    }
    let fact: f64 = (1..=a).fold(1.0, |acc, i| acc * i as f64);
    fact * (-z).exp() * sum
}

/// int_0^{e^{-v}} (-ln u)^a u^{-alpha} du = beta^{-(a+1)} Gamma(a+1, beta v).
fn log_power_tail(a: usize, v: f64, alpha: f64) -> f64 {
    let beta = 1.0 - alpha;
    igamma_int(a, beta * v) / beta.powi(a as i32 + 1)
}

/// Majorant of the Li/A factor on the discarded segment as a polynomial in
/// L = -ln(gap): list of (coefficient, degree), plus a constant bound when
/// the factor stays bounded (admissible index).
struct Majorant {
    poly: Vec<(f64, usize)>,
    constant: Option<f64>,
}

fn factor_majorant(spec: &IntegrandSpec) -> Result<Majorant> {
    let k = &spec.index;
    let r = k.depth();
    let w = k.weight() as usize;
    match spec.family {
        Family::Thm21Zeta | Family::Thm21T => {
            if k.is_admissible() {
                let value_at_one = match spec.family {
                    Family::Thm21Zeta => series::eval_zeta(k, HurwitzShift::ZERO, 1e-6)?,
                    _ => series::eval_t(k, HurwitzShift::ZERO, 1e-6)?,
                };
                Ok(Majorant {
                    poly: vec![],
                    constant: Some(value_at_one.value.abs() + value_at_one.err_estimate + 1e-9),
                })
            } else {
                let fact: f64 = (1..=r).fold(1.0, |acc, i| acc * i as f64);
                Ok(Majorant {
                    poly: vec![(1.0 / fact, r)],
                    constant: None,
                })
            }
        }
        Family::Thm23Eta => {
            // |sum over refinements| <= sum_d C(w-r, d-r) L^d / d!
            let mut poly = Vec::new();
            for d in r..=w {
                let (n, kk) = (w - r, d - r);
                let mut choose = 1.0;
                for i in 0..kk {
                    choose = choose * (n - i) as f64 / (i + 1) as f64;
                }
                let fact: f64 = (1..=d).fold(1.0, |acc, i| acc * i as f64);
                poly.push((choose / fact, d));
            }
            Ok(Majorant {
                poly,
                constant: None,
            })
        }
    }
}

/// Bound on the discarded right-end segment when the cut sits at gap e^{-v}
/// in the relevant logarithmic variable (1-x for the zeta/eta families,
/// w = (1-x)/(1+x) for the T family).
fn segment_bound(spec: &IntegrandSpec, maj: &Majorant, v: f64) -> f64 {
    let p = spec.log_power as usize;
    // 1/x <= 1.01 on the segment for gap <= e^{-8}; in w-space the measure
    // dx/x = 2 dw/(1-w^2) <= 2.01 dw
    let jac = match spec.family {
        Family::Thm21T => 2.01,
        _ => 1.01,
    };
    let mut total = 0.0;
    if let Some(c) = maj.constant {
        total += c * log_power_tail(p, v, spec.alpha);
    }
    for &(c, d) in &maj.poly {
        total += c * log_power_tail(p + d, v, spec.alpha);
    }
    jac * total
}

/// Smallest v >= 8 with segment bound <= target; None if unreachable.
fn solve_cut(spec: &IntegrandSpec, maj: &Majorant, target: f64) -> Option<f64> {
    let mut v = 8.0f64;
    while v <= 660.0 {
        if segment_bound(spec, maj, v) <= target {
            return Some(v);
        }
        v *= 1.3;
    }
    None
}

const MARCH_GAP: f64 = 0.08;
const NODE_TOL: f64 = 1e-11;

/// Per-node factor evaluation, marching near 1 and summing refinements for
/// the eta family.
struct FactorEval {
    family: Family,
    /// (parts, all_ones) per summand; a single entry for the thm21 families
    summands: Vec<(Vec<u32>, bool)>,
    sign: f64,
    march: Option<March>,
}

impl FactorEval {
    fn new(spec: &IntegrandSpec) -> FactorEval {
        let summands: Vec<(Vec<u32>, bool)> = match spec.family {
            Family::Thm23Eta => spec
                .index
                .refinements()
                .into_iter()
                .map(|c| {
                    let all_ones = c.parts().iter().all(|&p| p == 1);
                    (c.parts().to_vec(), all_ones)
                })
                .collect(),
            _ => {
                let all_ones = spec.index.parts().iter().all(|&p| p == 1);
                vec![(spec.index.parts().to_vec(), all_ones)]
            }
        };
        let sign = if spec.family == Family::Thm23Eta && spec.index.depth() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        FactorEval {
            family: spec.family,
            summands,
            sign,
            march: None,
        }
    }

    fn ensure_march(&mut self) {
        if self.march.is_none() {
            let kind = match self.family {
                Family::Thm21T => MarchKind::A,
                _ => MarchKind::Li,
            };
            let roots: Vec<Vec<u32>> = self
                .summands
                .iter()
                .filter(|(_, ones)| !ones)
                .map(|(c, _)| c.clone())
                .collect();
            self.march = Some(March::new(kind, &roots));
        }
    }

    /// Factor value and error at the node; `gap` = 1-x exactly.
    fn eval(&mut self, x: f64, gap: f64) -> (f64, f64) {
        let is_a = self.family == Family::Thm21T;
        let need_march = gap < MARCH_GAP && self.summands.iter().any(|(_, ones)| !ones);
        let mut march_vals: Option<Vec<f64>> = None;
        let mut march_err = 0.0;
        if need_march {
            self.ensure_march();
            let v = -gap.ln();
            let (vals, err) = self.march.as_mut().unwrap().eval_at_v(v);
            march_vals = Some(vals);
            march_err = err;
        }
        // iterated integrals of a single form: Li_{1^d} = L^d/d! and
        // A_{1^d} = L2^d/d! with L2 = 2 artanh x
        let l = -gap.ln();
        let l2 = (2.0 - gap).ln() - gap.ln();
        let mut total = 0.0;
        let mut err = 0.0;
        for (parts, all_ones) in &self.summands {
            if *all_ones {
                let d = parts.len() as i32;
                let fact: f64 = (1..=parts.len()).fold(1.0, |acc, i| acc * i as f64);
                let base = if is_a { l2 } else { l };
                let val = base.powi(d) / fact;
                total += val;
                err += 4e-16 * val.abs();
                continue;
            }
            if let Some(vals) = &march_vals {
                let m = self.march.as_ref().unwrap();
                total += vals[m.state_index(parts)];
                err += march_err;
                continue;
            }
            let idx = Composition::new(parts.clone()).unwrap();
            let out = if is_a {
                series::eval_a(&idx, x, NODE_TOL)
            } else {
                series::eval_li(&idx, x, NODE_TOL)
            };
            match out {
                Ok(r) => {
                    total += r.value;
                    err += r.err_estimate;
                }
                // unreachable for x in (0,1); keep the estimate honest
                Err(_) => err += f64::INFINITY,
            }
        }
        (self.sign * total, err)
    }
}

/// Integrand value and evaluation-error at a node given x and gap = 1-x.
fn integrand(spec: &IntegrandSpec, factor: &mut FactorEval, x: f64, gap: f64) -> (f64, f64) {
    if x <= 0.0 {
        return (0.0, 0.0);
    }
    let p = spec.log_power as i32;
    match spec.family {
        Family::Thm21T => {
            let w = gap / (2.0 - gap);
            let g = w.ln().powi(p) * w.powf(-spec.alpha) / x;
            let (a, aerr) = factor.eval(x, gap);
            (a * g, aerr * g.abs())
        }
        _ => {
            let g = gap.ln().powi(p) * gap.powf(-spec.alpha) / x;
            let (li, lierr) = factor.eval(x, gap);
            (li * g, lierr * g.abs())
        }
    }
}

/// Evaluate the integral described by `spec` to absolute tolerance `tol`.
pub fn integrate(spec: &IntegrandSpec, tol: f64) -> Result<QuadResult> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !spec.alpha.is_finite() || spec.alpha >= 1.0 {
        return Err(Error::Divergent(format!(
            "the integral diverges for shift parameter {} >= 1",
            spec.alpha
        )));
    }

    let maj = factor_majorant(spec)?;
    let v_cut = solve_cut(spec, &maj, tol / 4.0).ok_or(Error::Accuracy {
        requested: tol,
        achieved: f64::INFINITY,
    })?;
    let remainder = segment_bound(spec, &maj, v_cut);

    // cut expressed as a gap in x
    let eps_x = match spec.family {
        Family::Thm21T => {
            let w = (-v_cut).exp();
            2.0 * w / (1.0 + w)
        }
        _ => (-v_cut).exp(),
    };
    let b = 1.0 - eps_x; // may round to 1.0 for tiny eps_x; gaps stay exact

    let mut factor = FactorEval::new(spec);
    let half_pi = std::f64::consts::FRAC_PI_2;

    let mut nodes: u64 = 0;
    let mut node_err = 0.0f64;
    let eval_phi = |t: f64, factor: &mut FactorEval, node_err: &mut f64| -> f64 {
        let theta = half_pi * t.sinh();
        let sigma = if theta >= 0.0 {
            let e = (-2.0 * theta).exp();
            e / (1.0 + e)
        } else {
            1.0 / (1.0 + (2.0 * theta).exp())
        };
        let density = b * std::f64::consts::PI * sigma * (1.0 - sigma) * t.cosh();
        if density == 0.0 {
            return 0.0;
        }
        let x = b * (1.0 - sigma);
        let gap = eps_x + b * sigma;
        let (f, ferr) = integrand(spec, factor, x, gap);
        *node_err += density * ferr;
        density * f
    };

    let h0 = 0.5f64;
    let t_limit = 6.7f64;
    let floor = tol * 1e-6;

    // level 0
    let mut sum = eval_phi(0.0, &mut factor, &mut node_err);
    nodes += 1;
    for dir in [1.0f64, -1.0] {
        let mut streak = 0;
        let mut i = 1;
        while (i as f64) * h0 <= t_limit {
            let c = eval_phi(dir * i as f64 * h0, &mut factor, &mut node_err);
            nodes += 1;
            sum += c;
            if c.abs() < floor {
                streak += 1;
                if streak >= 3 {
                    break;
                }
            } else {
                streak = 0;
            }
            i += 1;
        }
    }
    let mut h = h0;
    let mut value = h * sum;
    let mut err_quad = f64::INFINITY;

    for level in 1..=10 {
        h *= 0.5;
        let mut add = 0.0;
        for dir in [1.0f64, -1.0] {
            let mut streak = 0;
            let mut i = 1; // odd multiples of the refined step
            while (i as f64) * h <= t_limit {
                let c = eval_phi(dir * i as f64 * h, &mut factor, &mut node_err);
                nodes += 1;
                add += c;
                if c.abs() < floor {
                    streak += 1;
                    if streak >= 3 {
                        break;
                    }
                } else {
                    streak = 0;
                }
                i += 2;
            }
        }
        sum += add;
        let new_value = h * sum;
        err_quad = (new_value - value).abs();
        value = new_value;
        let projected = err_quad + remainder + h * node_err;
        if projected <= 0.9 * tol && level >= 3 {
            break;
        }
    }

    let err_estimate = err_quad + remainder + h * node_err + 1e-15 * value.abs();
    if !err_estimate.is_finite() || err_estimate > tol {
        return Err(Error::Accuracy {
            requested: tol,
            achieved: err_estimate,
        });
    }
    Ok(QuadResult {
        value,
        err_estimate,
        nodes_used: nodes,
        split_point: b.min(1.0 - f64::EPSILON / 2.0),
        endpoint_gap: eps_x,
    })
}

fn factorial_f(n: u32) -> f64 {
    (1..=n as u64).fold(1.0, |acc, i| acc * i as f64)
}

/// xi(k_log + 1; k) as ((-1)^{k_log}/k_log!) times the Thm21Zeta integral at
/// shift parameter 0.
pub fn xi_value_by_integral(k: &Composition, k_log: u32, tol: f64) -> Result<QuadResult> {
    let spec = IntegrandSpec {
        family: Family::Thm21Zeta,
        index: k.clone(),
        log_power: k_log,
        alpha: 0.0,
    };
    let scale = if k_log % 2 == 0 { 1.0 } else { -1.0 } / factorial_f(k_log);
    let inner = integrate(&spec, tol * factorial_f(k_log))?;
    Ok(QuadResult {
        value: scale * inner.value,
        err_estimate: scale.abs() * inner.err_estimate,
        ..inner
    })
}

/// psi(k_log + 1; k), same scaling against the Thm21T integral.
pub fn psi_value_by_integral(k: &Composition, k_log: u32, tol: f64) -> Result<QuadResult> {
    let spec = IntegrandSpec {
        family: Family::Thm21T,
        index: k.clone(),
        log_power: k_log,
        alpha: 0.0,
    };
    let scale = if k_log % 2 == 0 { 1.0 } else { -1.0 } / factorial_f(k_log);
    let inner = integrate(&spec, tol * factorial_f(k_log))?;
    Ok(QuadResult {
        value: scale * inner.value,
        err_estimate: scale.abs() * inner.err_estimate,
        ..inner
    })
}

/// eta(k_log + 1; k) as ((-1)^{k_log - 1}/k_log!) times the Thm23Eta
/// integral with the extra log^{k_log}(1-x) factor, at shift parameter 0.
pub fn eta_value_by_integral(k: &Composition, k_log: u32, tol: f64) -> Result<QuadResult> {
    let spec = IntegrandSpec {
        family: Family::Thm23Eta,
        index: k.clone(),
        log_power: k_log,
        alpha: 0.0,
    };
    let scale = if k_log % 2 == 1 { 1.0 } else { -1.0 } / factorial_f(k_log);
    let inner = integrate(&spec, tol * factorial_f(k_log))?;
    Ok(QuadResult {
        value: scale * inner.value,
        err_estimate: scale.abs() * inner.err_estimate,
        ..inner
    })
}
