//! High-accuracy evaluation of Li_k(x) and A(k; x) close to x = 1 by Taylor
//! marching along v = -ln(1-x).
//!
//! Both families satisfy a closed first-order system under the variable v:
//! with w = e^{-v} (= 1-x),
//!
//!   d/dv Li_(1,rest)   = Li_rest
//!   d/dv Li_(k1,rest)  = phi(v) Li_(k1-1,rest),   phi = w/(1-w) = (1-x)/x
//!   d/dv A_(1,rest)    = psi(v) A_rest,           psi = 2/(2-w) = 2/(1+x)
//!   d/dv A_(k1,rest)   = phi(v) A_(k1-1,rest)
//!
//! The state vector is the closure of the requested compositions under these
//! reductions. Starting values at x = 1/2 come from the direct series; from
//! there the march takes analytic Taylor steps (radius limited only by the
//! poles of phi at v = 2 pi i k), caching checkpoints so repeated queries at
//! scattered depths cost one step each.

use std::collections::HashMap;

use super::power::{a_forward, li_forward};

/// Taylor order per step.
const P: usize = 26;
/// Checkpoint spacing in v.
const STEP: f64 = 0.75;
/// March starting point: v0 = ln 2, i.e. x = 1/2.
const V0: f64 = core::f64::consts::LN_2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Li,
    A,
}

#[derive(Clone, Copy, Debug)]
enum Rule {
    /// Constant 1 (empty composition).
    Const,
    /// Derivative is the state itself (leading part 1, Li case).
    Direct(usize),
    /// Derivative is phi * state.
    Phi(usize),
    /// Derivative is psi * state (leading part 1, A case).
    Psi(usize),
}

pub(crate) struct March {
    kind: Kind,
    #[allow(dead_code)]
    comps: Vec<Vec<u32>>,
    rules: Vec<Rule>,
    index: HashMap<Vec<u32>, usize>,
    /// (v, state values, accumulated step-error bound)
    checkpoints: Vec<(f64, Vec<f64>, f64)>,
}

impl March {
    /// Build the closure of `roots` and initialize at x = 1/2.
    pub fn new(kind: Kind, roots: &[Vec<u32>]) -> March {
        let mut comps: Vec<Vec<u32>> = Vec::new();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut stack: Vec<Vec<u32>> = roots.to_vec();
        stack.push(Vec::new());
        while let Some(c) = stack.pop() {
            if index.contains_key(&c) {
                continue;
            }
            index.insert(c.clone(), comps.len());
            comps.push(c.clone());
            if !c.is_empty() {
                let child = if c[0] >= 2 {
                    let mut d = c.clone();
                    d[0] -= 1;
                    d
                } else {
                    c[1..].to_vec()
                };
                stack.push(child);
            }
        }
        let rules = comps
            .iter()
            .map(|c| {
                if c.is_empty() {
                    Rule::Const
                } else if c[0] >= 2 {
                    let mut d = c.clone();
                    d[0] -= 1;
                    Rule::Phi(index[&d])
                } else {
                    let rest = c[1..].to_vec();
                    match kind {
                        Kind::Li => Rule::Direct(index[&rest]),
                        Kind::A => Rule::Psi(index[&rest]),
                    }
                }
            })
            .collect();
        let mut init = Vec::with_capacity(comps.len());
        let mut init_err = 0.0f64;
        for c in &comps {
            if c.is_empty() {
                init.push(1.0);
            } else {
                let out = match kind {
                    Kind::Li => li_forward(c, 0.5, 1e-16, 4000),
                    Kind::A => a_forward(c, 0.5, 1e-16, 4000),
                };
                init.push(out.value);
                init_err = init_err.max(out.err);
            }
        }
        March {
            kind,
            comps,
            rules,
            index,
            checkpoints: vec![(V0, init, init_err)],
        }
    }

    pub fn state_index(&self, parts: &[u32]) -> usize {
        self.index[parts]
    }

    /// One Taylor step of size h from (v, y); returns new values and a bound
    /// on the local truncation error.
    fn step(&self, v: f64, y: &[f64], h: f64) -> (Vec<f64>, f64) {
        let s = y.len();
        let w0 = (-v).exp();
        // Taylor coefficients (in the step-local variable) of w = w0 e^{-tau}
        let mut w = [0.0f64; P];
        w[0] = w0;
        for j in 1..P {
            w[j] = -w[j - 1] / j as f64;
        }
        // phi = w / (1 - w)
        let mut phi = [0.0f64; P];
        phi[0] = w0 / (1.0 - w0);
        for j in 1..P {
            let mut acc = w[j];
            for i in 1..=j {
                acc += w[i] * phi[j - i];
            }
            phi[j] = acc / (1.0 - w0);
        }
        // psi = 2 / (2 - w)
        let mut psi = [0.0f64; P];
        if self.kind == Kind::A {
            psi[0] = 2.0 / (2.0 - w0);
            for j in 1..P {
                let mut acc = 0.0;
                for i in 1..=j {
                    acc += w[i] * psi[j - i];
                }
                psi[j] = acc / (2.0 - w0);
            }
        }
        // state Taylor coefficients
        let mut coef = vec![[0.0f64; P]; s];
        for (i, c) in coef.iter_mut().enumerate() {
            c[0] = y[i];
            let _ = i;
        }
        for j in 0..P - 1 {
            for i in 0..s {
                let d = match self.rules[i] {
                    Rule::Const => 0.0,
                    Rule::Direct(t) => coef[t][j],
                    Rule::Phi(t) => (0..=j).map(|q| phi[q] * coef[t][j - q]).sum(),
                    Rule::Psi(t) => (0..=j).map(|q| psi[q] * coef[t][j - q]).sum(),
                };
                coef[i][j + 1] = d / (j + 1) as f64;
            }
        }
        let mut out = vec![0.0f64; s];
        let mut err = 0.0f64;
        for i in 0..s {
            let mut acc = 0.0;
            for j in (0..P).rev() {
                acc = acc * h + coef[i][j];
            }
            out[i] = acc;
            let top = coef[i][P - 1].abs() * h.powi((P - 1) as i32)
                + coef[i][P - 2].abs() * h.powi((P - 2) as i32);
            err = err.max(2.0 * top);
        }
        (out, err)
    }

    fn extend_to(&mut self, v: f64) {
        loop {
            let (cv, cy, ce) = {
                let last = self.checkpoints.last().unwrap();
                (last.0, last.1.clone(), last.2)
            };
            if cv + STEP > v {
                return;
            }
            let (ny, se) = self.step(cv, &cy, STEP);
            self.checkpoints.push((cv + STEP, ny, ce + se));
        }
    }

    /// All state values at v = -ln(1-x) >= ln 2, plus an error bound.
    pub fn eval_at_v(&mut self, v: f64) -> (Vec<f64>, f64) {
        assert!(v >= V0 - 1e-12, "march only runs for x >= 1/2");
        self.extend_to(v);
        let (cv, cy, ce) = {
            let ck = self
                .checkpoints
                .iter()
                .rev()
                .find(|(cv, _, _)| *cv <= v + 1e-12)
                .unwrap();
            (ck.0, ck.1.clone(), ck.2)
        };
        let h = v - cv;
        if h.abs() < 1e-300 {
            return (cy, ce);
        }
        let (y, se) = self.step(cv, &cy, h);
        (y, ce + se)
    }

    #[cfg(test)]
    pub fn comps(&self) -> &[Vec<u32>] {
        &self.comps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_contains_descendants() {
        let m = March::new(Kind::Li, &[vec![1, 1, 2]]);
        for c in [vec![1, 1, 2], vec![1, 2], vec![2], vec![1], vec![]] {
            assert!(m.comps().contains(&c), "missing {c:?}");
        }
    }

    #[test]
    fn li_march_matches_series_at_moderate_x() {
        let mut m = March::new(Kind::Li, &[vec![2, 1], vec![1, 2]]);
        for x in [0.6f64, 0.8, 0.9] {
            let v = -(-x).ln_1p();
            let (vals, err) = m.eval_at_v(v);
            for (c, want_tol) in [(vec![2u32, 1u32], 1e-12), (vec![1, 2], 1e-12)] {
                let series = li_forward(&c, x, 1e-14, 2_000_000);
                assert!(series.converged);
                let got = vals[m.state_index(&c)];
                assert!(
                    (got - series.value).abs() < want_tol + err + series.err,
                    "Li_{c:?}({x}): march {got} vs series {}",
                    series.value
                );
            }
        }
    }

    #[test]
    fn li_march_dilog_reflection_near_one() {
        // Li_2(x) = pi^2/6 - ln(x) ln(1-x) - Li_2(1-x), evaluated at 1-x = 1e-9
        let u = 1e-9f64;
        let x = 1.0 - u;
        let v = -u.ln();
        let mut m = March::new(Kind::Li, &[vec![2]]);
        let (vals, err) = m.eval_at_v(v);
        let got = vals[m.state_index(&[2])];
        // Li_2(u) for tiny u
        let li2_u = u + u * u / 4.0;
        let want = std::f64::consts::PI.powi(2) / 6.0 - x.ln() * u.ln() - li2_u;
        assert!(err < 1e-10, "err {err}");
        assert!((got - want).abs() < 1e-12, "march {got} want {want}");
    }

    #[test]
    fn li_march_all_ones_exact() {
        // Li_{1,1,1}(x) = v^3/6
        let mut m = March::new(Kind::Li, &[vec![1, 1, 1]]);
        for v in [2.0f64, 10.0, 35.0] {
            let (vals, err) = m.eval_at_v(v);
            let got = vals[m.state_index(&[1, 1, 1])];
            let want = v * v * v / 6.0;
            assert!(
                (got - want).abs() < 1e-12 * want + err,
                "v={v}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn a_march_matches_series() {
        let mut m = March::new(Kind::A, &[vec![2, 1]]);
        for x in [0.6f64, 0.85] {
            let v = -(-x).ln_1p();
            let (vals, err) = m.eval_at_v(v);
            let series = a_forward(&[2, 1], x, 1e-14, 2_000_000);
            assert!(series.converged);
            let got = vals[m.state_index(&[2, 1])];
            assert!(
                (got - series.value).abs() < 1e-12 + err + series.err,
                "A_(2,1)({x}): march {got} vs series {}",
                series.value
            );
        }
    }

    #[test]
    fn a_march_depth_one_artanh() {
        // A(1; x) = ln((1+x)/(1-x)) = v + ln(2 - e^{-v})
        let mut m = March::new(Kind::A, &[vec![1]]);
        for v in [1.5f64, 6.0, 20.0] {
            let (vals, err) = m.eval_at_v(v);
            let got = vals[m.state_index(&[1])];
            let want = v + (2.0 - (-v).exp()).ln();
            assert!((got - want).abs() < 1e-12 + err, "v={v}: {got} vs {want}");
        }
    }
}
