//! Exact combinatorics of integer compositions: weight, depth, admissibility,
//! reversal, Hoffman dual, the dual index of a multiple zeta value,
//! coarsening/refinement enumeration, weak compositions, and the binomial
//! weight B(k; j) = prod_i C(k_i + j_i - 1, j_i).
//!
//! All arithmetic on coefficients is exact (`BigInt`); the empty composition
//! is rejected everywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// A composition: a finite ordered sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    /// Build a composition, rejecting empty sequences and zero parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument(
                "composition must have at least one part".into(),
            ));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "composition parts must be >= 1".into(),
            ));
        }
        Ok(Composition { parts })
    }

    /// Depth-1 composition (k).
    pub fn single(k: u32) -> Result<Self> {
        Composition::new(vec![k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    /// First part >= 2; guarantees convergence of the attached series.
    pub fn is_admissible(&self) -> bool {
        self.parts[0] >= 2
    }

    /// Parts in reverse order. Involution.
    pub fn reverse(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }

    /// Hoffman dual: swap the commas and plus signs in the expansion of the
    /// composition into a sum of 1's. Preserves the weight; sends depth r to
    /// weight + 1 - r. Involution.
    pub fn hoffman_dual(&self) -> Composition {
        let w = self.weight() as usize;
        // cut[i] == true when a comma sits after the (i+1)-th unit, i = 0..w-2
        let mut cut = vec![true; w.saturating_sub(1)];
        let mut pos = 0usize;
        for &p in &self.parts {
            for _ in 1..p {
                cut[pos] = false;
                pos += 1;
            }
            if pos < cut.len() {
                // boundary between parts stays a comma here, swapped below
                pos += 1;
            }
        }
        let mut parts = Vec::new();
        let mut run = 1u32;
        for keep in cut.iter().map(|&c| !c) {
            if keep {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        Composition { parts }
    }

    /// (k_1 + 1, k_2, ..., k_r). The result is always admissible.
    pub fn plus_first(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts[0] += 1;
        Composition { parts }
    }

    /// The index of the dual multiple zeta value of `plus_first(self)`:
    /// reverse, take the Hoffman dual, then add 1 to the first part.
    pub fn mzv_dual_index(&self) -> Composition {
        self.reverse().hoffman_dual().plus_first()
    }

    /// Componentwise sum with a weak composition of the same length.
    pub fn add(&self, j: &WeakComposition) -> Result<Composition> {
        if self.depth() != j.len() {
            return Err(Error::InvalidArgument(format!(
                "length mismatch: composition depth {} vs weak composition length {}",
                self.depth(),
                j.len()
            )));
        }
        let parts = self
            .parts
            .iter()
            .zip(j.parts())
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Composition { parts })
    }

    /// All compositions obtained by summing adjacent blocks, the input
    /// included. 2^(depth-1) results, ordered by ascending merge mask
    /// (bit i set merges the boundary after part i+1).
    pub fn coarsenings(&self) -> Vec<Composition> {
        let r = self.depth();
        let mut out = Vec::with_capacity(1 << (r - 1));
        for mask in 0u64..(1u64 << (r - 1)) {
            let mut parts = vec![self.parts[0]];
            for i in 1..r {
                if mask >> (i - 1) & 1 == 1 {
                    *parts.last_mut().unwrap() += self.parts[i];
                } else {
                    parts.push(self.parts[i]);
                }
            }
            out.push(Composition { parts });
        }
        out
    }

    /// All compositions that coarsen to the input: every part split into a
    /// composition of itself, combined over all parts. 2^(weight-depth)
    /// results.
    pub fn refinements(&self) -> Vec<Composition> {
        let mut out: Vec<Vec<u32>> = vec![Vec::new()];
        for &p in &self.parts {
            let splits = compositions_raw(p);
            let mut next = Vec::with_capacity(out.len() * splits.len());
            for prefix in &out {
                for s in &splits {
                    let mut v = prefix.clone();
                    v.extend_from_slice(s);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(|parts| Composition { parts }).collect()
    }
}

fn compositions_raw(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n).rev() {
        for mut rest in compositions_raw(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All 2^(w-1) compositions of weight `w`, first part descending.
pub fn all_of_weight(w: u32) -> Vec<Composition> {
    assert!(w >= 1, "weight must be >= 1");
    compositions_raw(w)
        .into_iter()
        .map(|parts| Composition { parts })
        .collect()
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.parts, f)
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// A weak composition: a fixed-length sequence of nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeakComposition {
    parts: Vec<u32>,
}

impl WeakComposition {
    pub fn new(parts: Vec<u32>) -> Self {
        WeakComposition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }
}

impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.parts, f)
    }
}

fn fmt_parts(parts: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{}", p)?;
    }
    Ok(())
}

/// All weak compositions of `total` into `length` parts, lexicographically
/// descending (largest first part first). Count = C(total+length-1, length-1).
pub fn enumerate_weak(total: u32, length: usize) -> Vec<WeakComposition> {
    fn rec(total: u32, length: usize, prefix: &mut Vec<u32>, out: &mut Vec<WeakComposition>) {
        if length == 1 {
            prefix.push(total);
            out.push(WeakComposition::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            rec(total - first, length - 1, prefix, out);
            prefix.pop();
        }
    }
    assert!(length >= 1, "weak compositions need length >= 1");
    let mut out = Vec::new();
    rec(total, length, &mut Vec::new(), &mut out);
    out
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// B(k; j) = prod_i C(k_i + j_i - 1, j_i), exactly.
pub fn binom_product(k: &Composition, j: &WeakComposition) -> Result<BigInt> {
    if k.depth() != j.len() {
        return Err(Error::InvalidArgument(format!(
            "length mismatch: composition depth {} vs weak composition length {}",
            k.depth(),
            j.len()
        )));
    }
    let mut acc = BigInt::one();
    for (&ki, &ji) in k.parts().iter().zip(j.parts()) {
        acc *= binomial(ki as u64 + ji as u64 - 1, ji as u64);
    }
    Ok(acc)
}

impl FromStr for Composition {
    type Err = Error;

    /// Comma-separated positive integers, optional surrounding parentheses,
    /// with the repetition shorthand `b^r` for b repeated r times
    /// (`1^3,2` parses as (1,1,1,2)).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s)
            .trim();
        if s.is_empty() {
            return Err(Error::Parse("empty composition literal".into()));
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(Error::Parse(format!("empty part in '{}'", s)));
            }
            let (base, reps) = match tok.split_once('^') {
                Some((b, r)) => {
                    let reps: u32 = r
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad repetition count '{}'", r)))?;
                    (b.trim(), reps)
                }
                None => (tok, 1),
            };
            let base: u32 = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad part '{}'", tok)))?;
            if base == 0 {
                return Err(Error::Parse("composition parts must be >= 1".into()));
            }
            for _ in 0..reps {
                parts.push(base);
            }
        }
        Composition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn weight_depth_admissible() {
        assert_eq!(comp(&[1, 1, 2, 1]).weight(), 5);
        assert_eq!(comp(&[2]).weight(), 2);
        assert_eq!(comp(&[2, 1, 4]).weight(), 7);
        assert_eq!(comp(&[2, 1, 4]).depth(), 3);
        assert!(comp(&[2, 1]).is_admissible());
        assert!(!comp(&[1, 2]).is_admissible());
    }

    #[test]
    fn empty_and_zero_rejected() {
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::new(vec![2, 0, 1]).is_err());
    }

    #[test]
    fn reversal() {
        assert_eq!(comp(&[2, 1, 4]).reverse(), comp(&[4, 1, 2]));
        assert_eq!(comp(&[3]).reverse(), comp(&[3]));
        let k = comp(&[1, 3, 2, 2]);
        assert_eq!(k.reverse().reverse(), k);
    }

    #[test]
    fn hoffman_dual_examples() {
        assert_eq!(comp(&[1, 1, 2, 1]).hoffman_dual(), comp(&[3, 2]));
        assert_eq!(comp(&[2, 1, 4]).hoffman_dual(), comp(&[1, 3, 1, 1, 1]));
        assert_eq!(comp(&[1]).hoffman_dual(), comp(&[1]));
        assert_eq!(comp(&[1, 1]).hoffman_dual(), comp(&[2]));
        assert_eq!(comp(&[2, 2]).hoffman_dual(), comp(&[1, 2, 1]));
    }

    #[test]
    fn hoffman_dual_involution_exhaustive() {
        for w in 1..=10 {
            for k in all_of_weight(w) {
                let d = k.hoffman_dual();
                assert_eq!(d.weight(), k.weight());
                assert_eq!(d.depth() as u32, k.weight() + 1 - k.depth() as u32);
                assert_eq!(d.hoffman_dual(), k, "dual of dual of {k}");
            }
        }
    }

    #[test]
    fn plus_first_examples() {
        assert_eq!(comp(&[1, 2, 1]).plus_first(), comp(&[2, 2, 1]));
        assert_eq!(comp(&[1]).plus_first(), comp(&[2]));
        assert_eq!(comp(&[3, 2]).plus_first(), comp(&[4, 2]));
        assert!(comp(&[1]).plus_first().is_admissible());
    }

    #[test]
    fn mzv_dual_index_examples() {
        assert_eq!(comp(&[2, 2]).mzv_dual_index(), comp(&[2, 2, 1]));
        assert_eq!(comp(&[1]).mzv_dual_index(), comp(&[2]));
        // (q, p-1) dualizes to ({1}_{q-1}, 2, {1}_{p-2}): q=2,p=3 and q=3,p=2
        assert_eq!(comp(&[2, 2]).hoffman_dual(), comp(&[1, 2, 1]));
        assert_eq!(comp(&[3, 1]).hoffman_dual(), comp(&[1, 1, 2]));
    }

    #[test]
    fn binom_product_examples() {
        let k = comp(&[2, 2, 1]);
        let b = |j: &[u32]| binom_product(&k, &WeakComposition::new(j.to_vec())).unwrap();
        assert_eq!(b(&[1, 0, 0]), BigInt::from(2));
        assert_eq!(b(&[0, 1, 0]), BigInt::from(2));
        assert_eq!(b(&[0, 0, 1]), BigInt::from(1));
        assert_eq!(b(&[0, 0, 0]), BigInt::from(1));
        assert!(binom_product(&k, &WeakComposition::new(vec![1, 0])).is_err());
    }

    #[test]
    fn binom_product_is_one_iff_trivial_factors() {
        // B(k; j) = 1 exactly when each factor C(k_i+j_i-1, j_i) = 1,
        // i.e. j_i = 0 or k_i = 1.
        for w in 1..=6 {
            for k in all_of_weight(w) {
                for j in enumerate_weak(3, k.depth()) {
                    let b = binom_product(&k, &j).unwrap();
                    let trivial = k
                        .parts()
                        .iter()
                        .zip(j.parts())
                        .all(|(&ki, &ji)| ji == 0 || ki == 1);
                    assert!(b >= BigInt::one());
                    assert_eq!(b == BigInt::one(), trivial, "k={k} j={j}");
                }
            }
        }
    }

    #[test]
    fn add_componentwise() {
        let k = comp(&[2, 2, 1]);
        let sum = |j: &[u32]| k.add(&WeakComposition::new(j.to_vec())).unwrap();
        assert_eq!(sum(&[1, 0, 0]), comp(&[3, 2, 1]));
        assert_eq!(sum(&[0, 1, 0]), comp(&[2, 3, 1]));
        assert_eq!(sum(&[0, 0, 0]), k);
        assert!(k.add(&WeakComposition::new(vec![1])).is_err());
    }

    #[test]
    fn enumerate_weak_order_and_count() {
        let ws = enumerate_weak(1, 3);
        let parts: Vec<&[u32]> = ws.iter().map(|w| w.parts()).collect();
        assert_eq!(parts, vec![&[1, 0, 0][..], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(enumerate_weak(0, 4).len(), 1);
        assert_eq!(enumerate_weak(0, 4)[0].parts(), &[0, 0, 0, 0]);
        assert_eq!(enumerate_weak(2, 2).len(), 3);
        for total in 0..=6u32 {
            for length in 1..=4usize {
                let expect = binomial(total as u64 + length as u64 - 1, length as u64 - 1);
                assert_eq!(BigInt::from(enumerate_weak(total, length).len()), expect);
            }
        }
        let ws = enumerate_weak(3, 3);
        for pair in ws.windows(2) {
            assert!(pair[0].parts() > pair[1].parts());
        }
    }

    #[test]
    fn coarsenings_examples() {
        let cs = |p: &[u32]| comp(p).coarsenings();
        assert_eq!(cs(&[2, 1]), vec![comp(&[2, 1]), comp(&[3])]);
        assert_eq!(
            cs(&[1, 1, 1]),
            vec![comp(&[1, 1, 1]), comp(&[2, 1]), comp(&[1, 2]), comp(&[3])]
        );
        assert_eq!(cs(&[4]), vec![comp(&[4])]);
    }

    #[test]
    fn refinements_examples() {
        assert_eq!(comp(&[2]).refinements(), vec![comp(&[2]), comp(&[1, 1])]);
        assert_eq!(comp(&[1]).refinements(), vec![comp(&[1])]);
        assert_eq!(comp(&[2, 1]).refinements().len(), 2);
        for w in 1..=7 {
            for k in all_of_weight(w) {
                let expect = 1usize << (k.weight() as usize - k.depth());
                assert_eq!(k.refinements().len(), expect, "k={k}");
            }
        }
    }

    #[test]
    fn refinement_coarsening_duality_exhaustive() {
        for w in 1..=8 {
            let all = all_of_weight(w);
            for k in &all {
                let refs = k.refinements();
                for l in &all {
                    let via_ref = refs.contains(l);
                    let via_coarse = l.coarsenings().contains(k);
                    assert_eq!(via_ref, via_coarse, "k={k} l={l}");
                }
            }
        }
    }

    #[test]
    fn dual_commutes_with_reversal() {
        for w in 1..=10 {
            for k in all_of_weight(w) {
                assert_eq!(
                    k.reverse().hoffman_dual(),
                    k.hoffman_dual().reverse(),
                    "k={k}"
                );
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let p = |s: &str| s.parse::<Composition>().unwrap();
        assert_eq!(p("2,1,4"), comp(&[2, 1, 4]));
        assert_eq!(p("( 2, 1 ,4 )"), comp(&[2, 1, 4]));
        assert_eq!(p("1^3,2"), comp(&[1, 1, 1, 2]));
        assert_eq!(p("2,1^2"), comp(&[2, 1, 1]));
        assert_eq!(p("3"), comp(&[3]));
        assert_eq!(comp(&[1, 3, 1, 1, 1]).to_string(), "1,3,1,1,1");
        assert!("".parse::<Composition>().is_err());
        assert!("2,0".parse::<Composition>().is_err());
        assert!("2,,1".parse::<Composition>().is_err());
        assert!("a,b".parse::<Composition>().is_err());
        for w in 1..=7 {
            for k in all_of_weight(w) {
                assert_eq!(k.to_string().parse::<Composition>().unwrap(), k);
            }
        }
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(
            binomial(64, 32),
            "1832624140942590534".parse::<BigInt>().unwrap()
        );
    }
}
