//! Forward power-series evaluation of multiple polylogarithms Li_k(x) and of
//! the odd-indexed level-two A-function, with explicit truncation-tail
//! bounds.
//!
//! The nested inner sums are carried as rolling cumulative values, so one
//! outer step costs O(depth). The tail after N outer terms is bounded by the
//! smaller of a geometric envelope and |x|^{N+1} times the closed-form
//! integral bound of the power-log tail (inner sums of any composition are
//! majorized by powers of 1 + ln n).

/// integral_L^inf e^{-a s} (1+s)^p ds via I(p) = e^{-aL}(1+L)^p/a + (p/a) I(p-1).
pub(crate) fn iexp(p: usize, l: f64, a: f64) -> f64 {
    let e = (-a * l).exp();
    let mut res = e / a; // I(0)
    for q in 1..=p {
        res = e * (1.0 + l).powi(q as i32) / a + (q as f64 / a) * res;
    }
    res
}

/// Tail bound for sum_{n>N} |x|^n n^{-k1} (1+ln n)^{r-1}.
fn tail_bound(x_abs: f64, n: u64, k1: u32, depth: usize) -> f64 {
    let nf = n as f64;
    let p = depth - 1;
    let mut best = f64::INFINITY;
    if k1 >= 2 {
        // |x|^{N+1} * integral bound of the power-log tail
        let b = x_abs.powi((n + 1).min(2_000_000_000) as i32) * iexp(p, nf.ln(), k1 as f64 - 1.0);
        best = best.min(b);
    }
    // geometric envelope
    let env = x_abs.powi((n + 1).min(2_000_000_000) as i32)
        * ((n + 1) as f64).powi(-(k1 as i32))
        * (1.0 + ((n + 1) as f64).ln()).powi(p as i32);
    let rho = x_abs * (1.0 + 1.0 / ((n + 1) as f64 * (1.0 + ((n + 1) as f64).ln()))).powi(p as i32);
    if rho < 0.9999 {
        best = best.min(env / (1.0 - rho));
    }
    best
}

pub(crate) struct SeriesOut {
    pub value: f64,
    pub err: f64,
    pub terms: u64,
    /// true when the requested tolerance was met
    #[allow(dead_code)]
    pub converged: bool,
}

/// Li_k(x) by direct nested summation, |x| < 1 (or x = 1 handled upstream).
pub(crate) fn li_forward(parts: &[u32], x: f64, tol: f64, n_max: u64) -> SeriesOut {
    let r = parts.len();
    let k1 = parts[0];
    let x_abs = x.abs();
    // inner[j] = G_{j+2}(n) = sum over the chain below the outer index
    let mut inner = vec![0.0f64; r.saturating_sub(1) + 1];
    *inner.last_mut().unwrap() = 1.0; // sentinel for the innermost level
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut xp = 1.0f64;
    let mut n: u64 = 0;
    let mut tail = f64::INFINITY;
    while n < n_max {
        n += 1;
        if n >= 2 {
            let m = (n - 1) as f64;
            for j in 0..r.saturating_sub(1) {
                inner[j] += m.powi(-(parts[j + 1] as i32)) * inner[j + 1];
            }
        }
        xp *= x;
        if xp == 0.0 {
            tail = 0.0;
            break;
        }
        let term = xp * (n as f64).powi(-(k1 as i32)) * inner[0];
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if n >= 8 {
            tail = tail_bound(x_abs, n, k1, r);
            if tail <= tol * 0.5 {
                break;
            }
        }
    }
    let rounding = (4e-16 + 2.2e-15 * n as f64 / 1e6) * sum.abs() + 1e-300;
    SeriesOut {
        value: sum,
        err: tail + rounding,
        terms: n,
        converged: tail <= tol * 0.5,
    }
}

/// A(k; x) by direct summation over the m-indices, 0 <= x < 1.
pub(crate) fn a_forward(parts: &[u32], x: f64, tol: f64, n_max: u64) -> SeriesOut {
    let r = parts.len();
    let k1 = parts[0];
    let two_r = (1u64 << r) as f64;
    let mut inner = vec![0.0f64; r.saturating_sub(1) + 1];
    *inner.last_mut().unwrap() = 1.0;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut m: u64 = 0;
    let mut tail = f64::INFINITY;
    // x^{2m-r} maintained incrementally from the first valid outer index
    let mut xp: Option<f64> = None;
    while m < n_max {
        m += 1;
        if m >= 2 {
            let mi = (m - 1) as f64;
            for j in 0..r.saturating_sub(1) {
                // denominator of level j+2 (0-based j): 2 m - (r + 1 - (j+2))
                let den = 2.0 * mi - (r as f64 - (j + 1) as f64);
                if den > 0.0 {
                    inner[j] += den.powi(-(parts[j + 1] as i32)) * inner[j + 1];
                }
            }
        }
        let den1 = 2.0 * m as f64 - r as f64;
        if den1 <= 0.0 {
            continue;
        }
        let xpow = match xp {
            Some(prev) => {
                let v = prev * x * x;
                xp = Some(v);
                v
            }
            None => {
                let v = x.powi((2 * m as i64 - r as i64) as i32);
                xp = Some(v);
                v
            }
        };
        if xpow == 0.0 {
            tail = 0.0;
            break;
        }
        let term = xpow * den1.powi(-(k1 as i32)) * inner[0];
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if m >= 8 {
            // outer variable n = 2m - r; inner sums grow like (1+ln(n+r))^{r-1}
            let n_eq = 2 * m - r as u64;
            let fudge = ((1.0 + ((n_eq + r as u64) as f64).ln()) / (1.0 + (n_eq as f64).ln()))
                .powi((r - 1) as i32);
            tail = fudge * tail_bound(x, n_eq, k1, r);
            if two_r * tail <= tol * 0.5 {
                break;
            }
        }
    }
    let value = two_r * sum;
    let tail_total = two_r * tail;
    let rounding = (4e-16 + 2.2e-15 * m as f64 / 1e6) * value.abs() + 1e-300;
    SeriesOut {
        value,
        err: tail_total + rounding,
        terms: m,
        converged: tail_total <= tol * 0.5,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iexp_against_quadrature() {
        // integral_2^inf e^{-s}(1+s)^2 ds = e^{-2} (1+ (1+s)^2 + 2(1+s)) at ...
        // check against a crude Riemann sum instead
        for (p, l, a) in [(0usize, 1.5f64, 1.0f64), (2, 2.0, 1.5), (3, 3.0, 0.5)] {
            let mut acc = 0.0;
            let h = 1e-4;
            let mut s = l;
            while s < l + 80.0 {
                acc += (-a * (s + h / 2.0)).exp() * (1.0 + s + h / 2.0).powi(p as i32) * h;
                s += h;
            }
            let got = iexp(p, l, a);
            assert!(
                (got - acc).abs() < 1e-3 * acc.abs() + 1e-12,
                "p={p} l={l} a={a}: got {got} want {acc}"
            );
        }
    }

    #[test]
    fn li_one_is_minus_log() {
        let out = li_forward(&[1], 0.5, 1e-12, 1_000_000);
        assert!(out.converged);
        assert!(
            (out.value - std::f64::consts::LN_2).abs() < 1e-12,
            "{}",
            out.value
        );
        assert!((out.value - std::f64::consts::LN_2).abs() <= out.err);
    }

    #[test]
    fn li_dilog_at_half() {
        // Li_2(1/2) = pi^2/12 - ln^2(2)/2
        let want = std::f64::consts::PI.powi(2) / 12.0 - std::f64::consts::LN_2.powi(2) / 2.0;
        let out = li_forward(&[2], 0.5, 1e-13, 1_000_000);
        assert!((out.value - want).abs() < 1e-13, "{}", out.value);
    }

    #[test]
    fn li_depth_two_all_ones() {
        // Li_{1,1}(x) = ln^2(1-x)/2
        for x in [0.3f64, -0.6, 0.85] {
            let want = (1.0f64 - x).ln().powi(2) / 2.0;
            let out = li_forward(&[1, 1], x, 1e-12, 4_000_000);
            assert!(out.converged, "x={x}");
            assert!(
                (out.value - want).abs() < 1e-11,
                "x={x}: {} vs {want}",
                out.value
            );
        }
    }

    #[test]
    fn a_depth_one_is_scaled_artanh() {
        // A(1; x) = ln((1+x)/(1-x))
        for x in [0.25f64, 0.5, 0.8] {
            let want = ((1.0 + x) / (1.0 - x)).ln();
            let out = a_forward(&[1], x, 1e-12, 4_000_000);
            assert!(out.converged);
            assert!((out.value - want).abs() < 1e-12, "x={x}: {}", out.value);
        }
    }

    #[test]
    fn a_depth_two_against_brute_force() {
        // brute force over the defining double sum (r = 2)
        let parts = [2u32, 1u32];
        let x: f64 = 0.7;
        let mut brute = 0.0;
        for m1 in 1..4000u64 {
            let d1 = 2.0 * m1 as f64 - 2.0;
            if d1 <= 0.0 {
                continue;
            }
            let mut g = 0.0;
            for m2 in 1..m1 {
                let d2 = 2.0 * m2 as f64 - 1.0;
                g += d2.powi(-(parts[1] as i32));
            }
            brute += x.powi((2 * m1 - 2) as i32) * d1.powi(-(parts[0] as i32)) * g;
        }
        brute *= 4.0;
        let out = a_forward(&parts, x, 1e-12, 4_000_000);
        assert!(
            (out.value - brute).abs() < 1e-10,
            "{} vs {brute}",
            out.value
        );
    }
}
