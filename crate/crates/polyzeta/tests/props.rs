//! Property sweeps: exhaustive combinatorics over small weights, randomized
//! checks at larger weights, and the cross-evaluator consistency rules.

mod common;

use common::*;
use polyzeta::compositions::{all_of_weight, binomial, enumerate_weak, Composition};
use polyzeta::series::{eval_li, eval_li_landen, eval_zeta, eval_zeta_star, HurwitzShift};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn shift(alpha: f64) -> HurwitzShift {
    HurwitzShift::new(alpha).unwrap()
}

#[test]
fn dual_properties_exhaustive_weight_12() {
    let mut count = 0u64;
    for w in 1..=12u32 {
        for k in all_of_weight(w) {
            let d = k.hoffman_dual();
            assert_eq!(d.hoffman_dual(), k, "involution at {k}");
            assert_eq!(d.weight(), k.weight(), "weight at {k}");
            assert_eq!(
                d.depth() as u32,
                k.weight() + 1 - k.depth() as u32,
                "depth formula at {k}"
            );
            assert_eq!(
                k.reverse().hoffman_dual(),
                k.hoffman_dual().reverse(),
                "commutation at {k}"
            );
            count += 1;
        }
    }
    assert_eq!(count, (1u64 << 12) - 1);
}

#[test]
fn dual_properties_random_large_weights() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..500 {
        let depth = rng.gen_range(1..=12);
        let parts: Vec<u32> = (0..depth).map(|_| rng.gen_range(1..=6)).collect();
        let k = Composition::new(parts).unwrap();
        let d = k.hoffman_dual();
        assert_eq!(d.hoffman_dual(), k);
        assert_eq!(d.weight(), k.weight());
        assert_eq!(d.depth() as u32, k.weight() + 1 - k.depth() as u32);
        assert_eq!(k.reverse().hoffman_dual(), k.hoffman_dual().reverse());
    }
}

#[test]
fn weak_composition_totals() {
    for total in 0..=7u32 {
        for length in 1..=5usize {
            let all = enumerate_weak(total, length);
            let expect = binomial((total as usize + length - 1) as u64, (length - 1) as u64);
            assert_eq!(all.len().to_string(), expect.to_string());
            for w in &all {
                assert_eq!(w.total(), total);
                assert_eq!(w.len(), length);
            }
        }
    }
}

#[test]
fn refinement_coarsening_inverse_weight_10() {
    for w in 1..=10u32 {
        let all = all_of_weight(w);
        for l in &all {
            for k in l.coarsenings() {
                assert!(
                    k.refinements().contains(l),
                    "l={l} coarsens to k={k} but is not among its refinements"
                );
            }
        }
    }
}

#[test]
fn star_equals_coarsening_sum_weight_5() {
    for alpha in [0.0, -0.5] {
        for w in 2..=5u32 {
            for k in all_of_weight(w).into_iter().filter(|k| k.is_admissible()) {
                let star = eval_zeta_star(&k, shift(alpha), 1e-9).unwrap();
                let mut total = 0.0;
                let mut err = 0.0;
                for l in k.coarsenings() {
                    let r = eval_zeta(&l, shift(alpha), 1e-10).unwrap();
                    total += r.value;
                    err += r.err_estimate;
                }
                assert!(
                    (star.value - total).abs() <= star.err_estimate + err + 1e-12,
                    "k={k} alpha={alpha}"
                );
            }
        }
    }
}

#[test]
fn shift_telescoping_depth_one() {
    // moving the shift argument from 1 to 2 drops exactly the first term
    for k in 2..=6u32 {
        let k1 = Composition::single(k).unwrap();
        let at_one = eval_zeta(&k1, shift(0.0), 1e-10).unwrap();
        let at_two = eval_zeta(&k1, shift(-1.0), 1e-10).unwrap();
        assert!(
            (at_two.value - (at_one.value - 1.0)).abs()
                <= at_one.err_estimate + at_two.err_estimate + 1e-14,
            "k={k}"
        );
    }
}

#[test]
fn landen_consistency_small_arguments() {
    // both routes to Li_k(x/(x-1)) whenever |x/(x-1)| is comfortably < 1
    for w in 1..=4u32 {
        for k in all_of_weight(w) {
            for x in [0.1, 0.2, 0.3, 0.4] {
                let via_refinements = eval_li_landen(&k, x, 1e-10).unwrap();
                let y = x / (x - 1.0);
                assert!(y.abs() <= 0.9);
                let direct = eval_li(&k, y, 1e-10).unwrap();
                assert!(
                    (via_refinements.value - direct.value).abs()
                        <= via_refinements.err_estimate + direct.err_estimate + 1e-11,
                    "k={k} x={x}: {} vs {}",
                    via_refinements.value,
                    direct.value
                );
            }
        }
    }
}

#[test]
fn mzv_duality_via_series() {
    // the dual description of plus_first(k), checked numerically
    for w in 1..=4u32 {
        for k in all_of_weight(w) {
            let a = eval_zeta(&k.plus_first(), shift(0.0), 1e-9).unwrap();
            let b = eval_zeta(&k.mzv_dual_index(), shift(0.0), 1e-9).unwrap();
            assert!((a.value - b.value).abs() <= a.err_estimate + b.err_estimate + 1e-10);
        }
    }
}

#[test]
fn brute_forces_agree_with_each_other() {
    // the test oracles themselves: zeta via the T parity sum at level one
    // (T(k) sums over odd denominators only)
    let z2_odd = t_brute(&[2], 0.0, 40_000) / 2.0; // sum over odd n of n^{-2}
    let z2 = zeta_brute(&[2], 0.0, 80_000);
    // sum over odds = (1 - 2^{-2}) zeta(2)
    assert!((z2_odd - 0.75 * z2).abs() < 1e-4);
    let li_at_one = li_brute(&[2], 1.0, 50_000);
    assert!((li_at_one - z2).abs() < 1e-4);
}
