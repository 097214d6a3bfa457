//! Euler-Maclaurin tail machinery for the nested Hurwitz-type sums.
//!
//! A multiple zeta / T sum over n_1 > n_2 > ... > n_r > 0 is evaluated
//! outermost-first: the tail function of each level,
//! H_i(m) = sum_{n > m} w_i(n) H_{i-1}(n) with w_i(n) = s_i (n + c_i)^{-k_i},
//! is carried as a truncated asymptotic series in 1/(m + c_i). Composing one
//! level means re-expanding around the next shift, multiplying by the power
//! factor, and applying the Euler-Maclaurin tail formula term by term. The
//! final value is assembled from an exact backward recursion over m <= M with
//! the series supplying the seed H_i(M).
//!
//! Every truncation (dropped high-order coefficient, Euler-Maclaurin cutoff,
//! re-expansion tail) is accumulated into a bound valid at the evaluation
//! cut, so the reported error estimate is a genuine bound up to rounding.

/// Number of asymptotic coefficients carried (powers u^0 .. u^{ORDER-1}).
const ORDER: usize = 32;

/// Bernoulli numbers B_2, B_4, ..., B_30.
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    54.971_177_944_862_16,
    -529.124_242_424_242_4,
    6_192.123_188_405_797,
    -86_580.253_113_553_12,
    1_425_517.166_666_666_7,
    -27_298_231.067_816_093,
    601_580_873.900_642_4,
];

/// Euler-Maclaurin correction terms to use (B_2 .. B_{2*EM_TERMS}).
const EM_TERMS: usize = 12;

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Rising factorial j (j+1) ... (j+s-1).
fn rising(j: usize, s: usize) -> f64 {
    (0..s).fold(1.0, |acc, i| acc * (j + i) as f64)
}

/// Truncated asymptotic series sum_j coef[j] / (x + shift)^j, together with
/// an accumulated bound `slop` on everything dropped along the way, valid
/// for evaluation at x >= m_ref.
#[derive(Clone, Debug)]
pub(crate) struct AsymSeries {
    pub shift: f64,
    pub coef: [f64; ORDER],
    pub slop: f64,
    pub m_ref: f64,
}

impl AsymSeries {
    fn u_ref(&self) -> f64 {
        1.0 / (self.m_ref + self.shift)
    }

    /// scale / (x + shift)^k as an exact series.
    pub fn power(k: usize, scale: f64, shift: f64, m_ref: f64) -> AsymSeries {
        let mut coef = [0.0; ORDER];
        if k < ORDER {
            coef[k] = scale;
        }
        AsymSeries {
            shift,
            coef,
            slop: if k < ORDER { 0.0 } else { scale.abs() },
            m_ref,
        }
    }

    /// Multiply by scale / (x + shift)^k (same shift).
    pub fn mul_power(&self, k: usize, scale: f64) -> AsymSeries {
        let mut out = AsymSeries {
            shift: self.shift,
            coef: [0.0; ORDER],
            slop: self.slop * scale.abs(),
            m_ref: self.m_ref,
        };
        let u = self.u_ref();
        for j in 0..ORDER {
            let c = self.coef[j] * scale;
            if c == 0.0 {
                continue;
            }
            if j + k < ORDER {
                out.coef[j + k] = c;
            } else {
                out.slop += c.abs() * u.powi((j + k) as i32);
            }
        }
        out
    }

    /// Re-expand around a different shift.
    pub fn reshift(&self, new_shift: f64) -> AsymSeries {
        if new_shift == self.shift {
            return self.clone();
        }
        let delta = self.shift - new_shift;
        let mut out = AsymSeries {
            shift: new_shift,
            coef: [0.0; ORDER],
            slop: self.slop,
            m_ref: self.m_ref,
        };
        let u_new = 1.0 / (self.m_ref + new_shift);
        debug_assert!((delta * u_new).abs() < 0.5, "re-expansion ratio too large");
        for j in 0..ORDER {
            let c = self.coef[j];
            if c == 0.0 {
                continue;
            }
            if j == 0 {
                out.coef[0] += c;
                continue;
            }
            // (x+c_old)^{-j} = sum_t (-1)^t C(j+t-1,t) delta^t (x+c_new)^{-(j+t)}
            let mut binom = 1.0;
            let mut dpow = 1.0;
            let mut t = 0usize;
            loop {
                if j + t < ORDER {
                    let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
                    out.coef[j + t] += c * sign * binom * dpow;
                } else {
                    // geometric remainder of the re-expansion
                    let ratio = (delta * u_new).abs() * (j + t) as f64 / (t + 1) as f64;
                    let head = c.abs() * binom * dpow.abs() * u_new.powi((j + t) as i32);
                    out.slop += head / (1.0 - ratio.min(0.5));
                    break;
                }
                binom *= (j + t) as f64 / (t + 1) as f64;
                dpow *= delta;
                t += 1;
                if binom * dpow.abs() * c.abs() < 1e-320 {
                    break;
                }
            }
        }
        out
    }

    /// Euler-Maclaurin tail: from a summand series f, build the series of
    /// T(m) = sum_{n > m} f(n). Every input power must be >= 2.
    pub fn em_tail(&self) -> AsymSeries {
        // summing the slop over n > m amplifies it by at most
        // (m_ref + shift)/(p - 1) where p >= ORDER-1 is the slowest
        // dropped power
        let slop_amp = ((self.m_ref + self.shift) / (ORDER as f64 - 2.0)).max(1.0) * 1.2;
        let mut out = AsymSeries {
            shift: self.shift,
            coef: [0.0; ORDER],
            slop: self.slop * slop_amp,
            m_ref: self.m_ref,
        };
        let u = self.u_ref();
        debug_assert!(
            self.coef[0].abs() < 1e-300 && self.coef[1].abs() < 1e-300,
            "tail of a non-convergent summand"
        );
        for j in 2..ORDER {
            let d = self.coef[j];
            if d == 0.0 {
                continue;
            }
            // integral and half-term
            out.coef[j - 1] += d / (j as f64 - 1.0);
            out.coef[j] -= d / 2.0;
            // Bernoulli corrections; the first term not kept (either past the
            // coefficient window or past EM_TERMS) bounds the remainder
            let mut complete = true;
            for i in 1..=EM_TERMS {
                let idx = j + 2 * i - 1;
                let term = d * BERNOULLI_EVEN[i - 1] / factorial(2 * i) * rising(j, 2 * i - 1);
                if idx < ORDER {
                    out.coef[idx] += term;
                } else {
                    out.slop += 2.0 * term.abs() * u.powi(idx as i32);
                    complete = false;
                    break;
                }
            }
            if complete {
                let i = EM_TERMS + 1;
                let omitted = d * BERNOULLI_EVEN[i - 1] / factorial(2 * i) * rising(j, 2 * i - 1);
                out.slop += 2.0 * omitted.abs() * u.powi((j + 2 * i - 1) as i32);
            }
        }
        out
    }

    /// Evaluate at x (>= m_ref), returning (value, error bound).
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let u = 1.0 / (x + self.shift);
        let mut acc = 0.0;
        for j in (0..ORDER).rev() {
            acc = acc * u + self.coef[j];
        }
        let guard = self.coef[ORDER - 1].abs() * u.powi((ORDER - 1) as i32);
        (acc, self.slop + guard)
    }
}

/// One level of a nested sum: term scale / (n + shift)^{part}.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub part: u32,
    pub shift: f64,
    pub scale: f64,
}

/// Evaluate prefactor * sum_{n_1 > ... > n_r > 0} prod_i w_i(n_i) with
/// w_i as in `Level`, using tail series seeded at the cut `m`. Levels are
/// ordered outermost first; level i contributes only indices n > r-1-i
/// (smaller ones cannot occur in a strictly decreasing chain).
fn nested_at_cut(levels: &[Level], prefactor: f64, cut: usize) -> (f64, f64) {
    let r = levels.len();
    let m_ref = cut as f64;

    // tail expansions per level
    let mut tails: Vec<AsymSeries> = Vec::with_capacity(r);
    for (i, lv) in levels.iter().enumerate() {
        let summand = if i == 0 {
            AsymSeries::power(lv.part as usize, lv.scale, lv.shift, m_ref)
        } else {
            tails[i - 1]
                .reshift(lv.shift)
                .mul_power(lv.part as usize, lv.scale)
        };
        tails.push(summand.em_tail());
    }

    // exact backward recursion, outermost level first
    let mut h_prev: Vec<f64> = Vec::new();
    let mut low_prev = 0usize;
    let mut err = 0.0f64;
    for (i, lv) in levels.iter().enumerate() {
        let low = r - 1 - i;
        let (seed, seed_err) = tails[i].eval(m_ref);
        let mut h = vec![0.0f64; cut - low + 1];
        h[cut - low] = seed;
        let mut amp = 0.0f64;
        let mut comp = 0.0f64; // Kahan compensation
        let mut run = seed;
        for m in (low..cut).rev() {
            let n = m + 1;
            let w = lv.scale * (n as f64 + lv.shift).powi(-(lv.part as i32));
            let inner = if i == 0 { 1.0 } else { h_prev[n - low_prev] };
            let term = w * inner;
            let y = term - comp;
            let t = run + y;
            comp = (t - run) - y;
            run = t;
            h[m - low] = run;
            amp += w.abs();
        }
        // the seed error of every earlier level is amplified by this level's
        // total weight; fold in this level's own seed error afterwards
        err = err * amp + seed_err;
        h_prev = h;
        low_prev = low;
    }
    (prefactor * h_prev[0], prefactor.abs() * err)
}

/// Full evaluation with a doubling check of the cut. The cut always exceeds
/// the depth so that every level has a tabulation range.
pub(crate) fn eval_nested(levels: &[Level], prefactor: f64, cut: usize) -> (f64, f64, u64) {
    let cut = cut.max(2 * levels.len());
    let (v_half, _) = nested_at_cut(levels, prefactor, cut);
    let (v, bound) = nested_at_cut(levels, prefactor, 2 * cut);
    let discrepancy = (v - v_half).abs();
    let rounding = 4e-16 * v.abs() + 1e-300;
    let terms = (3 * cut * levels.len()) as u64;
    let err = (bound + discrepancy + rounding).max(1e-16 * v.abs());
    (v, err, terms)
}

pub(crate) const DEFAULT_CUT: usize = 64;
