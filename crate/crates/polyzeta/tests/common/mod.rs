//! Brute-force reference evaluators for the oracle tests: plain forward
//! nested partial sums, no tail machinery beyond the final extrapolation
//! the assertions apply. Deliberately independent of the library's
//! backward tail-series evaluation path.
#![allow(dead_code)] // each integration test compiles its own copy

/// Forward partial sum of the shifted nested zeta sum, outer index <= n_max.
pub fn zeta_brute(parts: &[u32], alpha: f64, n_max: u64) -> f64 {
    let r = parts.len();
    // inner[j] = nested sum over the chain below the outer index, depth j+2
    let mut inner = vec![0.0f64; r];
    inner[r - 1] = 1.0;
    let mut total = 0.0;
    for n in 1..=n_max {
        if n >= 2 {
            let m = (n - 1) as f64;
            for j in 0..r - 1 {
                inner[j] += (m - alpha).powi(-(parts[j + 1] as i32)) * inner[j + 1];
            }
        }
        total += (n as f64 - alpha).powi(-(parts[0] as i32)) * inner[0];
    }
    total
}

/// Forward partial sum of the shifted nested T sum (2^r prefactor included).
pub fn t_brute(parts: &[u32], alpha: f64, m_max: u64) -> f64 {
    let r = parts.len();
    let mut inner = vec![0.0f64; r];
    inner[r - 1] = 1.0;
    let mut total = 0.0;
    for m in 1..=m_max {
        if m >= 2 {
            let mm = (m - 1) as f64;
            for j in 0..r - 1 {
                // depth j+2 denominator: 2 m - (r - 1 - j) - alpha
                let den = 2.0 * mm - (r as f64 - 1.0 - j as f64) - alpha;
                if den > 0.0 {
                    inner[j] += den.powi(-(parts[j + 1] as i32)) * inner[j + 1];
                }
            }
        }
        let den = 2.0 * m as f64 - r as f64 - alpha;
        if den > 0.0 {
            total += den.powi(-(parts[0] as i32)) * inner[0];
        }
    }
    total * (1u64 << r) as f64
}

/// Forward partial sum of Li_k(x).
pub fn li_brute(parts: &[u32], x: f64, n_max: u64) -> f64 {
    let r = parts.len();
    let mut inner = vec![0.0f64; r];
    inner[r - 1] = 1.0;
    let mut total = 0.0;
    let mut xp = 1.0;
    for n in 1..=n_max {
        if n >= 2 {
            let m = (n - 1) as f64;
            for j in 0..r - 1 {
                inner[j] += m.powi(-(parts[j + 1] as i32)) * inner[j + 1];
            }
        }
        xp *= x;
        total += xp * (n as f64).powi(-(parts[0] as i32)) * inner[0];
    }
    total
}

/// Forward partial sum of A(k; x) over the m-indices.
pub fn a_brute(parts: &[u32], x: f64, m_max: u64) -> f64 {
    let r = parts.len();
    let mut inner = vec![0.0f64; r];
    inner[r - 1] = 1.0;
    let mut total = 0.0;
    for m in 1..=m_max {
        if m >= 2 {
            let mm = (m - 1) as f64;
            for j in 0..r - 1 {
                let den = 2.0 * mm - (r as f64 - 1.0 - j as f64);
                if den > 0.0 {
                    inner[j] += den.powi(-(parts[j + 1] as i32)) * inner[j + 1];
                }
            }
        }
        let den = 2.0 * m as f64 - r as f64;
        if den > 0.0 {
            total += x.powi(den as i32) * den.powi(-(parts[0] as i32)) * inner[0];
        }
    }
    total * (1u64 << r) as f64
}

/// Assert `value` equals the limit of the brute partial sums: the tail
/// beyond 2N is estimated by extrapolating the (N, 2N) increment, valid for
/// the power-law-with-logs decay of every sum here (ratio <= ~1), with a 4x
/// safety factor.
pub fn assert_matches_brute(what: &str, value: f64, err: f64, brute: impl Fn(u64) -> f64, n: u64) {
    let s1 = brute(n);
    let s2 = brute(2 * n);
    let slack = 4.0 * (s2 - s1).abs() + err + 1e-12;
    assert!(
        (value - s2).abs() <= slack,
        "{what}: engine {value} vs brute {s2} (increment {:.3e}, slack {slack:.3e})",
        (s2 - s1).abs()
    );
}

pub const PI: f64 = std::f64::consts::PI;
pub const LN_2: f64 = std::f64::consts::LN_2;
/// zeta(3), reference constant.
pub const ZETA3: f64 = 1.202_056_903_159_594_3;
