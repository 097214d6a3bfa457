//! Exact finite-sum expansions and the identities built from them.
//!
//! The central object is [`Expansion`]: an exact rational prefactor times a
//! merged list of coefficient-weighted terms (zeta / zeta-star / T values at
//! a Hurwitz shift, products of depth-one values, A-function values, log
//! powers). Expansions are produced by:
//!
//! - [`expand_thm21_rhs`]: the binomial-weighted sum over weak compositions
//!   j with |j| = p over the dual index, for both the zeta and T variants;
//! - [`expand_xi`], [`expand_psi`], [`expand_eta`]: the explicit formulas for
//!   the xi / psi / eta special values, with their signs normalized;
//! - [`kt_conjecture_sum`]: the binomial combination of double T-values;
//! - [`cor34_rhs_expansion`]: the product side of the symmetric-formula
//!   specialization, merged so that even q cancels exactly.
//!
//! [`sym_sides`], [`cor34_check`] and [`a_transform_sides`] evaluate both
//! sides of the corresponding identities numerically.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::compositions::{binom_product, binomial, enumerate_weak, Composition};
use crate::error::{Error, Result};
use crate::series::{HurwitzShift, Memo};

/// What a term's main factor is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    Zeta,
    ZetaStar,
    TValue,
    ZetaProduct,
    TValueProduct,
    AFunction,
    LogPower,
}

impl TermKind {
    pub fn name(&self) -> &'static str {
        match self {
            TermKind::Zeta => "zeta",
            TermKind::ZetaStar => "zstar",
            TermKind::TValue => "T",
            TermKind::ZetaProduct => "zeta*zeta",
            TermKind::TValueProduct => "T*T",
            TermKind::AFunction => "A",
            TermKind::LogPower => "log",
        }
    }
}

/// coefficient * kind(index[, index2]; shift) * log^{log_power}(point).
#[derive(Clone, Debug)]
pub struct ExpansionTerm {
    pub coefficient: BigRational,
    pub kind: TermKind,
    pub index: Composition,
    pub index2: Option<Composition>,
    /// Hurwitz shift parameter for zeta / zeta-star / T terms.
    pub alpha: f64,
    /// Series point for A-function terms and the base of the log factor.
    pub point: Option<f64>,
    pub log_power: u32,
}

type TermKey = (TermKind, Vec<u32>, Option<Vec<u32>>, u64, Option<u64>, u32);

impl ExpansionTerm {
    fn merge_key(&self) -> TermKey {
        (
            self.kind,
            self.index.parts().to_vec(),
            self.index2.as_ref().map(|c| c.parts().to_vec()),
            self.alpha.to_bits(),
            self.point.map(f64::to_bits),
            self.log_power,
        )
    }
}

/// scalar * sum of merged terms.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub scalar: BigRational,
    pub terms: Vec<ExpansionTerm>,
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

impl Expansion {
    /// Merge terms with identical keys (emission order preserved, zero
    /// coefficients dropped).
    pub fn merged(scalar: BigRational, raw: Vec<ExpansionTerm>) -> Expansion {
        let mut terms: Vec<ExpansionTerm> = Vec::new();
        for t in raw {
            if let Some(existing) = terms.iter_mut().find(|e| e.merge_key() == t.merge_key()) {
                existing.coefficient += &t.coefficient;
            } else {
                terms.push(t);
            }
        }
        terms.retain(|t| !t.coefficient.is_zero());
        Expansion { scalar, terms }
    }

    /// Number of terms after merging.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluate numerically through the memo cache.
    pub fn evaluate(&self, memo: &Memo, tol: f64) -> Result<(f64, f64)> {
        if self.terms.is_empty() {
            return Ok((0.0, 0.0));
        }
        let scalar = rational_to_f64(&self.scalar);
        let budget = tol / (self.terms.len() as f64 * scalar.abs().max(1.0));
        let mut value = 0.0;
        let mut err = 0.0;
        for t in &self.terms {
            let c = rational_to_f64(&t.coefficient);
            let per = (budget / c.abs().max(1.0)).max(1e-14);
            let shift = HurwitzShift::new(t.alpha)?;
            let (mut v, mut e) = match t.kind {
                TermKind::Zeta => {
                    let r = memo.zeta(&t.index, shift, per)?;
                    (r.value, r.err_estimate)
                }
                TermKind::ZetaStar => {
                    let r = memo.zeta_star(&t.index, shift, per)?;
                    (r.value, r.err_estimate)
                }
                TermKind::TValue => {
                    let r = memo.t_value(&t.index, shift, per)?;
                    (r.value, r.err_estimate)
                }
                TermKind::ZetaProduct | TermKind::TValueProduct => {
                    let second = t.index2.as_ref().ok_or_else(|| {
                        Error::InvalidArgument("product term without second index".into())
                    })?;
                    let (a, b) = if t.kind == TermKind::ZetaProduct {
                        (
                            memo.zeta(&t.index, shift, per)?,
                            memo.zeta(second, shift, per)?,
                        )
                    } else {
                        (
                            memo.t_value(&t.index, shift, per)?,
                            memo.t_value(second, shift, per)?,
                        )
                    };
                    (
                        a.value * b.value,
                        a.err_estimate * b.value.abs()
                            + b.err_estimate * a.value.abs()
                            + a.err_estimate * b.err_estimate,
                    )
                }
                TermKind::AFunction => {
                    let x = t.point.ok_or_else(|| {
                        Error::InvalidArgument("A-function term without a point".into())
                    })?;
                    let r = memo.a_function(&t.index, x, per)?;
                    (r.value, r.err_estimate)
                }
                TermKind::LogPower => (1.0, 0.0),
            };
            if t.log_power > 0 {
                let x = t
                    .point
                    .ok_or_else(|| Error::InvalidArgument("log factor without a point".into()))?;
                let lp = x.ln().powi(t.log_power as i32);
                e *= lp.abs();
                v *= lp;
            }
            value += c * v;
            err += c.abs() * e;
        }
        Ok((scalar * value, scalar.abs() * err))
    }

    /// Canonical text form: `scalar * [c1*kind(i1) + c2*kind(i2) + ...]`,
    /// the scalar omitted when it is 1, the shift printed as a second
    /// argument when it differs from 1.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.scalar.is_one() {
            let _ = write!(out, "{} * [", self.scalar);
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "{}*{}({}", t.coefficient, t.kind.name(), t.index);
            if let Some(second) = &t.index2 {
                let _ = write!(out, ")*{}({}", t.kind.name(), second);
            }
            if t.alpha != 0.0 {
                let _ = write!(out, "; {}", 1.0 - t.alpha);
            }
            out.push(')');
            if t.log_power > 0 {
                let _ = write!(out, "*log^{}({})", t.log_power, t.point.unwrap_or(f64::NAN));
            }
        }
        if self.terms.is_empty() {
            out.push('0');
        }
        if !self.scalar.is_one() {
            out.push(']');
        }
        out
    }

    /// LaTeX rendering with \zeta, \zeta^\star and T.
    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        if !self.scalar.is_one() {
            let _ = write!(out, "{}\\left[", latex_rational(&self.scalar));
        }
        for (i, t) in self.terms.iter().enumerate() {
            let c = &t.coefficient;
            if i > 0 && c.is_positive() {
                out.push('+');
            }
            if c.is_one() {
                // coefficient 1 omitted
            } else if (-c.clone()).is_one() {
                out.push('-');
            } else {
                let _ = write!(out, "{}", latex_rational(c));
            }
            let name = match t.kind {
                TermKind::Zeta | TermKind::ZetaProduct => "\\zeta",
                TermKind::ZetaStar => "\\zeta^\\star",
                TermKind::TValue | TermKind::TValueProduct => "T",
                TermKind::AFunction => "\\mathrm{A}",
                TermKind::LogPower => "\\log",
            };
            let shift = if t.alpha != 0.0 {
                format!(";{}", 1.0 - t.alpha)
            } else {
                String::new()
            };
            let _ = write!(out, "{}({}{})", name, t.index, shift);
            if let Some(second) = &t.index2 {
                let _ = write!(out, "{}({}{})", name, second, shift);
            }
            if t.log_power > 0 {
                let _ = write!(out, "\\log^{{{}}}(t)", t.log_power);
            }
        }
        if self.terms.is_empty() {
            out.push('0');
        }
        if !self.scalar.is_one() {
            out.push_str("\\right]");
        }
        out
    }
}

fn latex_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else if r.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -r.numer(), r.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn big_factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn sign_big(neg: bool) -> BigInt {
    if neg {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// Which value family a parametrized identity is instantiated with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Zeta,
    TValue,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Zeta => "zeta",
            Variant::TValue => "T",
        }
    }
}

/// The expansion of the log-weighted integral over the dual index:
/// scalar (-1)^p p!, terms B(m; j) V(m + j; 1-a) over all weak compositions
/// j of p with length n = weight(k) + 1 - depth(k), where m is the dual
/// index of k and V is zeta or T.
pub fn expand_thm21_rhs(
    k: &Composition,
    log_power: u32,
    variant: Variant,
    alpha: f64,
) -> Expansion {
    let dual = k.mzv_dual_index();
    let n = dual.depth();
    let kind = match variant {
        Variant::Zeta => TermKind::Zeta,
        Variant::TValue => TermKind::TValue,
    };
    let mut terms = Vec::new();
    for j in enumerate_weak(log_power, n) {
        let coeff = binom_product(&dual, &j).expect("depths match by construction");
        let index = dual.add(&j).expect("depths match by construction");
        terms.push(ExpansionTerm {
            coefficient: BigRational::from_integer(coeff),
            kind,
            index,
            index2: None,
            alpha,
            point: None,
            log_power: 0,
        });
    }
    let scalar = BigRational::from_integer(sign_big(log_power % 2 == 1) * big_factorial(log_power));
    Expansion::merged(scalar, terms)
}

/// xi(p+1; k) = sum_j B(m; j) zeta(m + j): the sign (-1)^p p! cancels
/// against the integral prefactor, so the scalar is 1.
pub fn expand_xi(k: &Composition, log_power: u32) -> Expansion {
    let mut e = expand_thm21_rhs(k, log_power, Variant::Zeta, 0.0);
    e.scalar = BigRational::one();
    e
}

/// psi(p+1; k) = sum_j B(m; j) T(m + j).
pub fn expand_psi(k: &Composition, log_power: u32) -> Expansion {
    let mut e = expand_thm21_rhs(k, log_power, Variant::TValue, 0.0);
    e.scalar = BigRational::one();
    e
}

/// eta(p+1; k) = (-1)^{r-1} sum_j B(m; j) zeta-star(m + j).
pub fn expand_eta(k: &Composition, log_power: u32) -> Expansion {
    let mut e = expand_thm21_rhs(k, log_power, Variant::Zeta, 0.0);
    for t in &mut e.terms {
        t.kind = TermKind::ZetaStar;
    }
    e.scalar = BigRational::from_integer(sign_big(k.depth() % 2 == 0));
    e
}

/// sum_{i+j=m} C(p+i-1,i) C(q+j-1,j) T(p+i, q+j); defined for m >= 0 (the
/// membership statement needs m+p+q even, which is deliberately not
/// enforced here).
pub fn kt_conjecture_sum(p: u32, q: u32, m: u32) -> Result<Expansion> {
    if p < 2 || q < 1 {
        return Err(Error::InvalidArgument(format!(
            "conjecture sum needs p >= 2, q >= 1 (got p={p}, q={q})"
        )));
    }
    let mut terms = Vec::new();
    for i in 0..=m {
        let j = m - i;
        let coeff = binomial((p + i - 1) as u64, i as u64) * binomial((q + j - 1) as u64, j as u64);
        terms.push(ExpansionTerm {
            coefficient: BigRational::from_integer(coeff),
            kind: TermKind::TValue,
            index: Composition::new(vec![p + i, q + j])?,
            index2: None,
            alpha: 0.0,
            point: None,
            log_power: 0,
        });
    }
    Ok(Expansion::merged(BigRational::one(), terms))
}

/// Both evaluated sides of an identity, with their error estimates.
#[derive(Clone, Copy, Debug)]
pub struct Sides {
    pub lhs: f64,
    pub rhs: f64,
    pub lhs_err: f64,
    pub rhs_err: f64,
}

impl Sides {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

fn depth_one(n: u32) -> Composition {
    Composition::new(vec![n]).expect("positive part")
}

fn eval_v_err(memo: &Memo, variant: Variant, parts: &[u32], tol: f64) -> Result<(f64, f64)> {
    let k = Composition::new(parts.to_vec())?;
    let r = match variant {
        Variant::Zeta => memo.zeta(&k, HurwitzShift::ZERO, tol)?,
        Variant::TValue => memo.t_value(&k, HurwitzShift::ZERO, tol)?,
    };
    Ok((r.value, r.err_estimate))
}

/// The symmetric double-value formula: for p, m >= 2 and q >= 1,
///
/// ```text
/// sum_{i+j=m-1} C(p+i-1,i) C(q+j-1,j) V(p+i, q+j)
///   - (-1)^q sum_{i+j=p-1} C(m+i-1,i) C(q+j-1,j) V(m+i, q+j)
///   = sum_{i+j=q-1} (-1)^j C(m+i-1,i) C(p+j-1,j) V(m+i) V(p+j)
/// ```
///
/// Returns the two sides; m = 1 sits outside the stated hypotheses and is
/// reachable only through [`sym_sides_outside_hypotheses`].
pub fn sym_sides(p: u32, q: u32, m: u32, variant: Variant, memo: &Memo, tol: f64) -> Result<Sides> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "the symmetric formula is stated for m >= 2 (got m={m}); \
             use the outside-hypotheses entry point to probe m = 1"
        )));
    }
    sym_sides_unchecked(p, q, m, variant, memo, tol)
}

/// [`sym_sides`] flattened to (lhs, rhs, residual).
pub fn sym_residual(
    p: u32,
    q: u32,
    m: u32,
    variant: Variant,
    memo: &Memo,
    tol: f64,
) -> Result<(f64, f64, f64)> {
    let s = sym_sides(p, q, m, variant, memo, tol)?;
    Ok((s.lhs, s.rhs, s.residual()))
}

/// The m = 1 boundary of the symmetric formula, exposed separately because
/// it lies outside the stated hypotheses.
pub fn sym_sides_outside_hypotheses(
    p: u32,
    q: u32,
    variant: Variant,
    memo: &Memo,
    tol: f64,
) -> Result<Sides> {
    sym_sides_unchecked(p, q, 1, variant, memo, tol)
}

fn sym_sides_unchecked(
    p: u32,
    q: u32,
    m: u32,
    variant: Variant,
    memo: &Memo,
    tol: f64,
) -> Result<Sides> {
    if p < 2 || q < 1 || m < 1 {
        return Err(Error::InvalidArgument(format!(
            "symmetric formula needs p >= 2, q >= 1, m >= 1 (got p={p}, q={q}, m={m})"
        )));
    }
    let per = tol / (2 * (p + q + m)) as f64;
    let mut lhs = 0.0;
    let mut lhs_err = 0.0;
    for i in 0..=(m - 1) {
        let j = m - 1 - i;
        let c = (binomial((p + i - 1) as u64, i as u64) * binomial((q + j - 1) as u64, j as u64))
            .to_f64()
            .unwrap();
        let (v, e) = eval_v_err(memo, variant, &[p + i, q + j], per)?;
        lhs += c * v;
        lhs_err += c * e;
    }
    let sign_q = if q % 2 == 0 { 1.0 } else { -1.0 };
    for i in 0..=(p - 1) {
        let j = p - 1 - i;
        let c = (binomial((m + i - 1) as u64, i as u64) * binomial((q + j - 1) as u64, j as u64))
            .to_f64()
            .unwrap();
        let (v, e) = eval_v_err(memo, variant, &[m + i, q + j], per)?;
        lhs -= sign_q * c * v;
        lhs_err += c * e;
    }
    let mut rhs = 0.0;
    let mut rhs_err = 0.0;
    for i in 0..=(q - 1) {
        let j = q - 1 - i;
        let sign_j = if j % 2 == 0 { 1.0 } else { -1.0 };
        let c = (binomial((m + i - 1) as u64, i as u64) * binomial((p + j - 1) as u64, j as u64))
            .to_f64()
            .unwrap();
        // multiply in a canonical order so the even-q antisymmetric pairs
        // cancel exactly
        let (lo, hi) = if m + i <= p + j {
            (m + i, p + j)
        } else {
            (p + j, m + i)
        };
        let (va, ea) = eval_v_err(memo, variant, &[lo], per)?;
        let (vb, eb) = eval_v_err(memo, variant, &[hi], per)?;
        rhs += sign_j * c * (va * vb);
        rhs_err += c * (ea * vb.abs() + eb * va.abs());
    }
    Ok(Sides {
        lhs,
        rhs,
        lhs_err,
        rhs_err,
    })
}

/// The product side of the m = p specialization as a merged expansion; for
/// even q the antisymmetric pairing cancels to the empty term list.
pub fn cor34_rhs_expansion(p: u32, q: u32, variant: Variant) -> Result<Expansion> {
    if p < 2 || q < 1 {
        return Err(Error::InvalidArgument(format!(
            "specialized formula needs p >= 2, q >= 1 (got p={p}, q={q})"
        )));
    }
    let kind = match variant {
        Variant::Zeta => TermKind::ZetaProduct,
        Variant::TValue => TermKind::TValueProduct,
    };
    let mut terms = Vec::new();
    for i in 0..=(q - 1) {
        let j = q - 1 - i;
        let coeff = sign_big(j % 2 == 1)
            * binomial((p + i - 1) as u64, i as u64)
            * binomial((p + j - 1) as u64, j as u64);
        let (lo, hi) = if i <= j {
            (p + i, p + j)
        } else {
            (p + j, p + i)
        };
        terms.push(ExpansionTerm {
            coefficient: BigRational::from_integer(coeff),
            kind,
            index: depth_one(lo),
            index2: Some(depth_one(hi)),
            alpha: 0.0,
            point: None,
            log_power: 0,
        });
    }
    Ok(Expansion::merged(BigRational::one(), terms))
}

/// Outcome of the m = p specialization check.
#[derive(Clone, Debug)]
pub struct Cor34Report {
    pub sides: Sides,
    /// merged product-side term list (empty exactly when q is even)
    pub rhs_terms: Expansion,
}

/// (1 - (-1)^q) sum_{i+j=p-1} C(p+i-1,i) C(q+j-1,j) V(p+i, q+j)
///   = sum_{i+j=q-1} (-1)^j C(p+i-1,i) C(p+j-1,j) V(p+i) V(p+j).
pub fn cor34_check(p: u32, q: u32, variant: Variant, memo: &Memo, tol: f64) -> Result<Cor34Report> {
    if p < 2 || q < 1 {
        return Err(Error::InvalidArgument(format!(
            "specialized formula needs p >= 2, q >= 1 (got p={p}, q={q})"
        )));
    }
    let per = tol / (2 * (p + q)) as f64;
    let factor = if q % 2 == 0 { 0.0 } else { 2.0 };
    let mut lhs = 0.0;
    let mut lhs_err = 0.0;
    if factor != 0.0 {
        for i in 0..=(p - 1) {
            let j = p - 1 - i;
            let c = (binomial((p + i - 1) as u64, i as u64)
                * binomial((q + j - 1) as u64, j as u64))
            .to_f64()
            .unwrap();
            let (v, e) = eval_v_err(memo, variant, &[p + i, q + j], per)?;
            lhs += factor * c * v;
            lhs_err += factor * c * e;
        }
    }
    let rhs_terms = cor34_rhs_expansion(p, q, variant)?;
    let (rhs, rhs_err) = rhs_terms.evaluate(memo, tol / 2.0)?;
    Ok(Cor34Report {
        sides: Sides {
            lhs,
            rhs,
            lhs_err,
            rhs_err,
        },
        rhs_terms,
    })
}

/// Both sides of the arctangent-type transformation at argument
/// (1-t)/(1+t):
///
///   lhs = A({1}_{q-1}, 2, {1}_{p-2}; (1-t)/(1+t))
///   rhs = (-1)^{q-1} sum_{j<q} C(p+j-1,j)/(q-1-j)! T(p+j) log^{q-1-j}(t)
///       + (-1)^{p+q-1} sum_{j<p} (-1)^j C(q+j-1,j)/(p-1-j)! log^{p-1-j}(t) A(q+j; t).
pub fn a_transform_sides(p: u32, q: u32, t: f64, memo: &Memo, tol: f64) -> Result<Sides> {
    if p < 2 || q < 1 {
        return Err(Error::InvalidArgument(format!(
            "transformation needs p >= 2, q >= 1 (got p={p}, q={q})"
        )));
    }
    if !(t.is_finite() && t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!(
            "transformation argument must lie strictly inside (0,1), got {t}"
        )));
    }
    // lhs index ({1}_{q-1}, 2, {1}_{p-2})
    let mut parts = vec![1u32; (q - 1) as usize];
    parts.push(2);
    parts.resize((q - 1 + 1 + p - 2) as usize, 1);
    let lhs_index = Composition::new(parts)?;
    let x = (1.0 - t) / (1.0 + t);
    let per = tol / (2 * (p + q)) as f64;
    let lhs_r = memo.a_function(&lhs_index, x, per)?;

    let logt = t.ln();
    let sign_q1 = if (q - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let sign_pq1 = if (p + q - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let mut rhs = 0.0;
    let mut rhs_err = 0.0;
    for j in 0..q {
        let c = binomial((p + j - 1) as u64, j as u64).to_f64().unwrap()
            / (1..=(q - 1 - j) as u64).fold(1.0, |acc, i| acc * i as f64);
        let (tv, te) = eval_v_err(memo, Variant::TValue, &[p + j], per)?;
        let lp = logt.powi((q - 1 - j) as i32);
        rhs += sign_q1 * c * tv * lp;
        rhs_err += c * te * lp.abs();
    }
    for j in 0..p {
        let sign_j = if j % 2 == 0 { 1.0 } else { -1.0 };
        let c = binomial((q + j - 1) as u64, j as u64).to_f64().unwrap()
            / (1..=(p - 1 - j) as u64).fold(1.0, |acc, i| acc * i as f64);
        let a = memo.a_function(&depth_one(q + j), t, per)?;
        let lp = logt.powi((p - 1 - j) as i32);
        rhs += sign_pq1 * sign_j * c * lp * a.value;
        rhs_err += c * lp.abs() * a.err_estimate;
    }
    Ok(Sides {
        lhs: lhs_r.value,
        rhs,
        lhs_err: lhs_r.err_estimate,
        rhs_err,
    })
}
