//! Floating-point evaluation, with error estimates, of the nested series:
//! Hurwitz-type multiple zeta values zeta(k; 1-a), their star variants,
//! Hurwitz-type multiple T-values T(k; 1-a), multiple polylogarithms
//! Li_k(x), and the level-two A-function A(k; x).
//!
//! The shift convention follows the parametrized identities: a
//! [`HurwitzShift`] holds the parameter `a < 1`, and every evaluator returns
//! the value at second argument `1 - a`, so `a = 0` reproduces the unshifted
//! values. Concretely the zeta denominators are (n_i - a)^{k_i} and the
//! T-value denominators are (2 m_i - (r+1-i) - a)^{k_i}.

mod emtail;
mod march;
mod memo;
mod power;

use crate::compositions::Composition;
use crate::error::{Error, Result};

pub use memo::Memo;

pub(crate) use march::{Kind as MarchKind, March};

/// The real shift parameter `a < 1`; evaluators produce values at `1 - a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HurwitzShift {
    alpha: f64,
}

impl HurwitzShift {
    pub const ZERO: HurwitzShift = HurwitzShift { alpha: 0.0 };

    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha >= 1.0 {
            return Err(Error::Domain(format!(
                "shift parameter must be a finite real < 1, got {alpha}"
            )));
        }
        Ok(HurwitzShift { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The second argument 1 - a of the evaluated value.
    pub fn hurwitz_argument(&self) -> f64 {
        1.0 - self.alpha
    }
}

/// How a value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Series,
    ClosedForm,
    CoarseningSum,
    RefinementSum,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::ClosedForm => "closed_form",
            Method::CoarseningSum => "coarsening_sum",
            Method::RefinementSum => "refinement_sum",
        }
    }
}

/// A computed value with an absolute error estimate and work counter.
#[derive(Clone, Copy, Debug)]
pub struct EvalResult {
    pub value: f64,
    pub err_estimate: f64,
    pub terms_used: u64,
    pub method: Method,
}

impl EvalResult {
    fn new(value: f64, err_estimate: f64, terms_used: u64, method: Method) -> EvalResult {
        EvalResult {
            value,
            err_estimate: err_estimate.max(1e-16 * value.abs()),
            terms_used,
            method,
        }
    }
}

/// The value families the evaluators cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Zeta,
    ZetaStar,
    TValue,
    Li,
    AFunction,
}

impl ValueKind {
    pub fn name(&self) -> &'static str {
        match self {
            ValueKind::Zeta => "zeta",
            ValueKind::ZetaStar => "zstar",
            ValueKind::TValue => "t",
            ValueKind::Li => "li",
            ValueKind::AFunction => "a",
        }
    }
}

/// Either a Hurwitz shift (zeta / zeta-star / T) or a series point (Li / A).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Argument {
    Shift(HurwitzShift),
    Point(f64),
}

/// A fully specified evaluation request.
#[derive(Clone, Debug)]
pub struct EvalTarget {
    pub kind: ValueKind,
    pub index: Composition,
    pub argument: Argument,
}

impl EvalTarget {
    pub fn evaluate(&self, tol: f64) -> Result<EvalResult> {
        match (self.kind, self.argument) {
            (ValueKind::Zeta, Argument::Shift(s)) => eval_zeta(&self.index, s, tol),
            (ValueKind::ZetaStar, Argument::Shift(s)) => eval_zeta_star(&self.index, s, tol),
            (ValueKind::TValue, Argument::Shift(s)) => eval_t(&self.index, s, tol),
            (ValueKind::Li, Argument::Point(x)) => eval_li(&self.index, x, tol),
            (ValueKind::AFunction, Argument::Point(x)) => eval_a(&self.index, x, tol),
            _ => Err(Error::InvalidArgument(
                "argument type does not match the value kind".into(),
            )),
        }
    }
}

/// Default tolerance by weight: 1e-8 up to weight 4, 1e-6 for 5-6, 1e-5 above.
pub fn default_tol(weight: u32) -> f64 {
    if weight <= 4 {
        1e-8
    } else if weight <= 6 {
        1e-6
    } else {
        1e-5
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be a positive real, got {tol}"
        )));
    }
    Ok(())
}

/// Hurwitz-type multiple zeta value zeta(k; 1-a).
pub fn eval_zeta(k: &Composition, shift: HurwitzShift, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    if !k.is_admissible() {
        return Err(Error::Divergent(format!(
            "zeta({k}; ...) diverges: first part must be >= 2"
        )));
    }
    let a = shift.alpha();
    let levels: Vec<emtail::Level> = k
        .parts()
        .iter()
        .map(|&p| emtail::Level {
            part: p,
            shift: -a,
            scale: 1.0,
        })
        .collect();
    let (value, err, terms) = emtail::eval_nested(&levels, 1.0, emtail::DEFAULT_CUT);
    Ok(EvalResult::new(value, err, terms, Method::Series))
}

/// Hurwitz-type multiple zeta star value: the sum of zeta over all
/// coarsenings of the index.
pub fn eval_zeta_star(k: &Composition, shift: HurwitzShift, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    if !k.is_admissible() {
        return Err(Error::Divergent(format!(
            "zeta*({k}; ...) diverges: first part must be >= 2"
        )));
    }
    let pieces = k.coarsenings();
    let each = tol / pieces.len() as f64;
    let mut value = 0.0;
    let mut err = 0.0;
    let mut terms = 0;
    for l in &pieces {
        let r = eval_zeta(l, shift, each)?;
        value += r.value;
        err += r.err_estimate;
        terms += r.terms_used;
    }
    Ok(EvalResult::new(value, err, terms, Method::CoarseningSum))
}

/// Hurwitz-type multiple T-value T(k; 1-a).
pub fn eval_t(k: &Composition, shift: HurwitzShift, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    if !k.is_admissible() {
        return Err(Error::Divergent(format!(
            "T({k}; ...) diverges: first part must be >= 2"
        )));
    }
    let a = shift.alpha();
    let r = k.depth();
    if r == 1 && a == 0.0 {
        // odd-part identity: T(k) = 2 (1 - 2^{-k}) zeta(k)
        let kk = k.parts()[0];
        let z = eval_zeta(k, shift, tol / 2.0)?;
        let factor = 2.0 * (1.0 - 0.5f64.powi(kk as i32));
        return Ok(EvalResult::new(
            factor * z.value,
            factor * z.err_estimate,
            z.terms_used,
            Method::ClosedForm,
        ));
    }
    let levels: Vec<emtail::Level> = k
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| emtail::Level {
            part: p,
            shift: -((r - i) as f64 + a) / 2.0,
            scale: 0.5f64.powi(p as i32),
        })
        .collect();
    let prefactor = (1u64 << r) as f64;
    let (value, err, terms) = emtail::eval_nested(&levels, prefactor, emtail::DEFAULT_CUT);
    Ok(EvalResult::new(value, err, terms, Method::Series))
}

/// Point beyond which Li / A evaluation switches to the Taylor march.
const MARCH_THRESHOLD: f64 = 0.92;
/// Term cap for the direct series.
const SERIES_TERM_CAP: u64 = 20_000_000;

/// Multiple polylogarithm Li_k(x), x in [-1, 1].
pub fn eval_li(k: &Composition, x: f64, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    if !x.is_finite() || !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("Li requires x in [-1, 1], got {x}")));
    }
    if x == 1.0 {
        if !k.is_admissible() {
            return Err(Error::Divergent(format!(
                "Li({k}; 1) diverges: first part must be >= 2"
            )));
        }
        let z = eval_zeta(k, HurwitzShift::ZERO, tol)?;
        return Ok(EvalResult::new(
            z.value,
            z.err_estimate,
            z.terms_used,
            Method::ClosedForm,
        ));
    }
    if x == 0.0 {
        return Ok(EvalResult::new(0.0, 0.0, 0, Method::ClosedForm));
    }
    if k.parts().iter().all(|&p| p == 1) {
        // Li_{1,...,1}(x) = (-ln(1-x))^d / d!
        let d = k.depth() as i32;
        let l = -(-x).ln_1p();
        let value = l.powi(d) / (1..=d as u64).product::<u64>() as f64;
        return Ok(EvalResult::new(
            value,
            (d as f64 + 2.0) * 2.3e-16 * value.abs(),
            d as u64,
            Method::ClosedForm,
        ));
    }
    if x > MARCH_THRESHOLD {
        let mut m = March::new(MarchKind::Li, &[k.parts().to_vec()]);
        let v = -(-x).ln_1p();
        let (vals, err) = m.eval_at_v(v);
        let value = vals[m.state_index(k.parts())];
        let terms = (v / 0.75) as u64 * 26;
        return Ok(EvalResult::new(value, err, terms, Method::Series));
    }
    let out = power::li_forward(k.parts(), x, tol, SERIES_TERM_CAP);
    Ok(EvalResult::new(
        out.value,
        out.err,
        out.terms,
        Method::Series,
    ))
}

/// Li_k(x/(x-1)) computed from the refinement sum
/// (-1)^{depth} sum over refinements l of Li_l(x), valid for all x in [0,1).
pub fn eval_li_landen(k: &Composition, x: f64, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    if !x.is_finite() || !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "the refinement form requires x in [0, 1), got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(EvalResult::new(0.0, 0.0, 0, Method::RefinementSum));
    }
    let refs = k.refinements();
    let each = tol / refs.len() as f64;
    let sign = if k.depth() % 2 == 0 { 1.0 } else { -1.0 };
    let mut value = 0.0;
    let mut err = 0.0;
    let mut terms = 0;
    for l in &refs {
        let r = eval_li(l, x, each)?;
        value += r.value;
        err += r.err_estimate;
        terms += r.terms_used;
    }
    Ok(EvalResult::new(
        sign * value,
        err,
        terms,
        Method::RefinementSum,
    ))
}

/// Level-two polylogarithm A(k; x) = 2^r Ath(k; x), x in [0, 1],
/// (k_1, x) != (1, 1).
pub fn eval_a(k: &Composition, x: f64, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("A requires x in [0, 1], got {x}")));
    }
    if x == 1.0 {
        if !k.is_admissible() {
            return Err(Error::Divergent(format!(
                "A({k}; 1) diverges: (k_1, x) = (1, 1) is excluded"
            )));
        }
        let t = eval_t(k, HurwitzShift::ZERO, tol)?;
        return Ok(EvalResult::new(
            t.value,
            t.err_estimate,
            t.terms_used,
            Method::ClosedForm,
        ));
    }
    if x == 0.0 {
        return Ok(EvalResult::new(0.0, 0.0, 0, Method::ClosedForm));
    }
    if k.depth() == 1 {
        // odd part of the polylogarithm: A(k; x) = 2 (Li_k(x) - 2^{-k} Li_k(x^2))
        let kk = k.parts()[0] as i32;
        let full = eval_li(k, x, tol / 2.0)?;
        let even = eval_li(k, x * x, tol / 2.0)?;
        let value = 2.0 * (full.value - 0.5f64.powi(kk) * even.value);
        let err = 2.0 * (full.err_estimate + 0.5f64.powi(kk) * even.err_estimate);
        return Ok(EvalResult::new(
            value,
            err,
            full.terms_used + even.terms_used,
            Method::ClosedForm,
        ));
    }
    if x > MARCH_THRESHOLD {
        let mut m = March::new(MarchKind::A, &[k.parts().to_vec()]);
        let v = -(-x).ln_1p();
        let (vals, err) = m.eval_at_v(v);
        let value = vals[m.state_index(k.parts())];
        let terms = (v / 0.75) as u64 * 26;
        return Ok(EvalResult::new(value, err, terms, Method::Series));
    }
    let out = power::a_forward(k.parts(), x, tol, SERIES_TERM_CAP);
    Ok(EvalResult::new(
        out.value,
        out.err,
        out.terms,
        Method::Series,
    ))
}
