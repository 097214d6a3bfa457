//! Acceptance suite: each test drives one criterion end to end, prints a
//! pass/fail line, and enforces the stated tolerance and runtime budget.

mod common;

use std::time::Instant;

use common::*;
use polyzeta::compositions::{all_of_weight, Composition};
use polyzeta::formulas::{
    a_transform_sides, cor34_check, cor34_rhs_expansion, expand_eta, expand_psi, expand_thm21_rhs,
    expand_xi, sym_sides, Variant,
};
use polyzeta::quadrature::{
    eta_value_by_integral, integrate, psi_value_by_integral, xi_value_by_integral, Family,
    IntegrandSpec,
};
use polyzeta::series::{eval_t, eval_zeta, eval_zeta_star, HurwitzShift, Memo};

fn comp(parts: &[u32]) -> Composition {
    Composition::new(parts.to_vec()).unwrap()
}

fn shift(alpha: f64) -> HurwitzShift {
    HurwitzShift::new(alpha).unwrap()
}

fn verdict(number: u32, name: &str, ok: bool, detail: String) {
    println!(
        "acceptance criterion {number:2} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    if !ok {
        println!("  {detail}");
    }
    assert!(ok, "criterion {number} ({name}): {detail}");
}

#[test]
fn criterion_01_worked_log_integral() {
    let start = Instant::now();
    let spec = IntegrandSpec {
        family: Family::Thm21Zeta,
        index: comp(&[2, 2]),
        log_power: 1,
        alpha: 0.0,
    };
    let lhs = integrate(&spec, 4e-6).unwrap();
    // -2 zeta(3,2,1) - 2 zeta(2,3,1) - zeta(2,2,2), each from the series
    let z321 = eval_zeta(&comp(&[3, 2, 1]), shift(0.0), 1e-9).unwrap();
    let z231 = eval_zeta(&comp(&[2, 3, 1]), shift(0.0), 1e-9).unwrap();
    let z222 = eval_zeta(&comp(&[2, 2, 2]), shift(0.0), 1e-9).unwrap();
    let rhs = -2.0 * z321.value - 2.0 * z231.value - z222.value;
    let residual = (lhs.value - rhs).abs();
    let elapsed = start.elapsed();
    verdict(
        1,
        "worked log-weighted Li_{2,2} integral",
        residual <= 1e-5 && elapsed.as_secs() <= 60,
        format!(
            "lhs {} rhs {rhs} residual {residual:.3e} (limit 1e-5), {elapsed:.2?} (limit 60s)",
            lhs.value
        ),
    );
}

#[test]
fn criterion_02_log_weighted_integrals_full_grid() {
    let start = Instant::now();
    let memo = Memo::new();
    let k6 = [
        comp(&[1]),
        comp(&[2]),
        comp(&[1, 1]),
        comp(&[2, 1]),
        comp(&[1, 2]),
        comp(&[2, 2]),
    ];
    let mut worst = 0.0f64;
    let mut worst_case = String::new();
    let mut cases = 0;
    for (family, variant) in [
        (Family::Thm21Zeta, Variant::Zeta),
        (Family::Thm21T, Variant::TValue),
    ] {
        for k in &k6 {
            for log_power in 0..=2u32 {
                for alpha in [0.0, -0.5] {
                    let spec = IntegrandSpec {
                        family,
                        index: k.clone(),
                        log_power,
                        alpha,
                    };
                    let lhs = integrate(&spec, 4.5e-6).unwrap();
                    let (rhs, _) = expand_thm21_rhs(k, log_power, variant, alpha)
                        .evaluate(&memo, 1e-8)
                        .unwrap();
                    let residual = (lhs.value - rhs).abs();
                    cases += 1;
                    if residual > worst {
                        worst = residual;
                        worst_case = format!(
                            "{} k={k} log_power={log_power} alpha={alpha}",
                            if variant == Variant::Zeta {
                                "zeta"
                            } else {
                                "T"
                            }
                        );
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        2,
        "log-weighted integral vs expansion, both variants, full grid",
        worst <= 1e-5 && elapsed.as_secs() <= 900,
        format!(
            "{cases} cases, worst residual {worst:.3e} at [{worst_case}] (limit 1e-5), \
             {elapsed:.2?} (limit 15min)"
        ),
    );
}

#[test]
fn criterion_03_transformed_li_integral() {
    let memo = Memo::new();
    let mut worst = 0.0f64;
    let mut detail = String::new();
    for parts in [&[1u32][..], &[2], &[1, 1], &[2, 1], &[1, 2]] {
        let k = comp(parts);
        for alpha in [0.0, -0.5] {
            let spec = IntegrandSpec {
                family: Family::Thm23Eta,
                index: k.clone(),
                log_power: 0,
                alpha,
            };
            let lhs = integrate(&spec, 4.5e-6).unwrap();
            let star = memo
                .zeta_star(&k.mzv_dual_index(), shift(alpha), 1e-9)
                .unwrap();
            let sign = if k.depth().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            let residual = (lhs.value - sign * star.value).abs();
            if residual > worst {
                worst = residual;
                detail = format!("k={k} alpha={alpha}");
            }
        }
    }
    verdict(
        3,
        "transformed-argument Li integral vs zeta-star",
        worst <= 1e-5,
        format!("worst residual {worst:.3e} at [{detail}] (limit 1e-5)"),
    );
}

#[test]
fn criterion_04_xi_psi_base_values() {
    let memo = Memo::new();
    let one = comp(&[1]);
    let mut fails = Vec::new();
    let mut check = |name: &str, integral: f64, expansion: f64, constant: f64| {
        for (a, b, what) in [
            (integral, expansion, "integral vs expansion"),
            (integral, constant, "integral vs constant"),
            (expansion, constant, "expansion vs constant"),
        ] {
            if (a - b).abs() > 1e-6 {
                fails.push(format!("{name} {what}: {a} vs {b}"));
            }
        }
    };
    let xi0 = xi_value_by_integral(&one, 0, 1e-7).unwrap();
    let (xe0, _) = expand_xi(&one, 0).evaluate(&memo, 1e-9).unwrap();
    check("xi(1;1)", xi0.value, xe0, PI * PI / 6.0);
    let xi1 = xi_value_by_integral(&one, 1, 1e-7).unwrap();
    let (xe1, _) = expand_xi(&one, 1).evaluate(&memo, 1e-9).unwrap();
    check("xi(2;1)", xi1.value, xe1, 2.0 * ZETA3);
    let ps0 = psi_value_by_integral(&one, 0, 1e-7).unwrap();
    let (pe0, _) = expand_psi(&one, 0).evaluate(&memo, 1e-9).unwrap();
    check("psi(1;1)", ps0.value, pe0, PI * PI / 4.0);
    let ps1 = psi_value_by_integral(&one, 1, 1e-7).unwrap();
    let (pe1, _) = expand_psi(&one, 1).evaluate(&memo, 1e-9).unwrap();
    check("psi(2;1)", ps1.value, pe1, 3.5 * ZETA3);
    verdict(
        4,
        "xi and psi base values to 1e-6",
        fails.is_empty(),
        fails.join("; "),
    );
}

#[test]
fn criterion_05_eta_base_values() {
    let memo = Memo::new();
    let mut fails = Vec::new();

    let e1 = eta_value_by_integral(&comp(&[1]), 0, 1e-7).unwrap();
    let (x1, _) = expand_eta(&comp(&[1]), 0).evaluate(&memo, 1e-9).unwrap();
    for (a, b, what) in [
        (e1.value, x1, "eta(1;1) integral vs expansion"),
        (e1.value, PI * PI / 6.0, "eta(1;1) integral vs pi^2/6"),
    ] {
        if (a - b).abs() > 1e-6 {
            fails.push(format!("{what}: {a} vs {b}"));
        }
    }

    let e11 = eta_value_by_integral(&comp(&[1, 1]), 0, 1e-7).unwrap();
    let (x11, _) = expand_eta(&comp(&[1, 1]), 0).evaluate(&memo, 1e-9).unwrap();
    if (e11.value - x11).abs() > 1e-6 {
        fails.push(format!(
            "eta(1;1,1) integral vs expansion: {} vs {x11}",
            e11.value
        ));
    }
    // pinned target for eta(1;1,1)
    let pinned = -2.0 * ZETA3;
    if (e11.value - pinned).abs() > 1e-6 {
        fails.push(format!(
            "eta(1;1,1) vs pinned -2*zeta(3) = {pinned}: integral and expansion agree on \
             {} = -zeta*(3) (the dual index of (1,1) is (3), and the defining integral \
             reduces to -int_0^1 ln^2(1-x)/(2x) dx = -zeta(3)); the pinned value equals \
             -zeta*(2,1), the value attached to dual index (2,1), which does not arise here",
            e11.value
        ));
    }
    verdict(
        5,
        "eta base values to 1e-6",
        fails.is_empty(),
        fails.join("; "),
    );
}

#[test]
fn criterion_06_symmetric_double_value_formula() {
    let memo = Memo::new();
    let mut worst = 0.0f64;
    let mut detail = String::new();
    for variant in [Variant::Zeta, Variant::TValue] {
        for p in [2, 3] {
            for q in [1, 2, 3] {
                for m in [2, 3] {
                    let s = sym_sides(p, q, m, variant, &memo, 1e-8).unwrap();
                    let residual = s.residual();
                    if residual > worst {
                        worst = residual;
                        detail = format!("{} p={p} q={q} m={m}", variant.name());
                    }
                }
            }
        }
    }
    // the specific double-T consequence: 2T(2,2) + 4T(3,1) = T(2)^2 = pi^4/16
    let t22 = eval_t(&comp(&[2, 2]), shift(0.0), 1e-10).unwrap();
    let t31 = eval_t(&comp(&[3, 1]), shift(0.0), 1e-10).unwrap();
    let combo = 2.0 * t22.value + 4.0 * t31.value;
    let target = PI.powi(4) / 16.0;
    let combo_residual = (combo - target).abs();
    verdict(
        6,
        "symmetric double-value formula, both variants",
        worst <= 1e-6 && combo_residual <= 1e-6,
        format!(
            "worst grid residual {worst:.3e} at [{detail}] (limit 1e-6); \
             2T(2,2)+4T(3,1) = {combo} vs pi^4/16 = {target} (residual {combo_residual:.3e})"
        ),
    );
}

#[test]
fn criterion_07_specialized_formula() {
    let memo = Memo::new();
    let mut fails = Vec::new();
    for variant in [Variant::Zeta, Variant::TValue] {
        for p in [2u32, 3] {
            for q in [2u32, 4] {
                // even q: the merged product side must cancel exactly
                let e = cor34_rhs_expansion(p, q, variant).unwrap();
                if !e.is_empty() {
                    fails.push(format!(
                        "even q: p={p} q={q} {} left residue '{}'",
                        variant.name(),
                        e.to_text()
                    ));
                }
            }
            for q in [1u32, 3] {
                let r = cor34_check(p, q, variant, &memo, 1e-7).unwrap();
                if r.sides.residual() > 1e-5 {
                    fails.push(format!(
                        "odd q: p={p} q={q} {} residual {:.3e}",
                        variant.name(),
                        r.sides.residual()
                    ));
                }
            }
        }
    }
    verdict(
        7,
        "m=p specialization: even-q exact cancellation, odd-q residuals",
        fails.is_empty(),
        fails.join("; "),
    );
}

#[test]
fn criterion_08_a_transformation_identity() {
    let memo = Memo::new();
    let mut worst = 0.0f64;
    let mut detail = String::new();
    for p in [2, 3] {
        for q in [1, 2] {
            for t in [0.3, 0.5, 0.7] {
                let s = a_transform_sides(p, q, t, &memo, 1e-7).unwrap();
                if s.residual() > worst {
                    worst = s.residual();
                    detail = format!("p={p} q={q} t={t}");
                }
            }
        }
    }
    verdict(
        8,
        "A-function transformation identity",
        worst <= 1e-5,
        format!("worst residual {worst:.3e} at [{detail}] (limit 1e-5)"),
    );
}

#[test]
fn criterion_09_combinatorics_exhaustive() {
    let start = Instant::now();
    let mut checked = 0u64;
    let mut fails = 0u64;
    for w in 1..=12u32 {
        for k in all_of_weight(w) {
            let d = k.hoffman_dual();
            let ok = d.hoffman_dual() == k
                && d.weight() == k.weight()
                && d.depth() as u32 == k.weight() + 1 - k.depth() as u32
                && k.reverse().hoffman_dual() == k.hoffman_dual().reverse();
            checked += 1;
            if !ok {
                fails += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        9,
        "dual involution / weight / depth / commutation, weight <= 12",
        fails == 0 && checked == (1 << 12) - 1 && elapsed.as_secs() <= 10,
        format!("{checked} compositions, {fails} failures, {elapsed:.2?} (limit 10s)"),
    );
}

#[test]
fn criterion_10_series_oracles() {
    let mut fails = Vec::new();
    let z21 = eval_zeta(&comp(&[2, 1]), shift(0.0), 1e-9).unwrap();
    let z3 = eval_zeta(&comp(&[3]), shift(0.0), 1e-9).unwrap();
    if (z21.value - z3.value).abs() > 1e-7 {
        fails.push(format!(
            "zeta(2,1) vs zeta(3): {} vs {}",
            z21.value, z3.value
        ));
    }
    let s21 = eval_zeta_star(&comp(&[2, 1]), shift(0.0), 1e-9).unwrap();
    if (s21.value - 2.0 * ZETA3).abs() > 1e-7 {
        fails.push(format!("zeta*(2,1) vs 2 zeta(3): {}", s21.value));
    }
    for k in 2..=6u32 {
        let t = eval_t(&comp(&[k]), shift(0.0), 1e-9).unwrap();
        let z = eval_zeta(&comp(&[k]), shift(0.0), 1e-9).unwrap();
        let want = 2.0 * (1.0 - 0.5f64.powi(k as i32)) * z.value;
        if (t.value - want).abs() > 1e-7 {
            fails.push(format!("T({k}) odd-part identity: {} vs {want}", t.value));
        }
    }
    for w in 1..=4u32 {
        for k in all_of_weight(w) {
            let a = eval_zeta(&k.plus_first(), shift(0.0), 1e-9).unwrap();
            let b = eval_zeta(&k.mzv_dual_index(), shift(0.0), 1e-9).unwrap();
            if (a.value - b.value).abs() > 1e-7 {
                fails.push(format!("duality at k={k}: {} vs {}", a.value, b.value));
            }
        }
    }
    verdict(
        10,
        "series oracle identities to 1e-7",
        fails.is_empty(),
        fails.join("; "),
    );
}
