//! Cosets of Γ⁰(N) in Sl₂(ℤ), degrees of the modular polynomials of 𝔴_N^s,
//! height factors and the polynomials Φ_N^c themselves for small N.

mod heights;
mod modpoly;

pub use heights::{comparison_table, deg_j, height_factor, sigma, FuncDesc, HeightEntry, DOUBLE_LEVEL_BOUND};
pub use modpoly::{modular_polynomial, BivariatePoly};

use num_rational::Ratio;
use thiserror::Error;

use crate::invariant::canonical_exponents;
use crate::numeric::{gcd, prime_divisors, Mat2};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModularError {
    #[error("level must be at least 2, got {0}")]
    BadLevel(i64),
    #[error("malformed function descriptor: {0}")]
    BadDescriptor(String),
    #[error("modular polynomial too large for interpolation (N = {0})")]
    TooLarge(i64),
    #[error("rounding failed: residual {0}")]
    Rounding(f64),
}

/// ψ(N) = N ∏_{p | N} (1 + 1/p), the index of Γ⁰(N).
pub fn psi(n: i64) -> i64 {
    prime_divisors(n).iter().fold(n, |acc, p| acc / p * (p + 1))
}

/// Smallest μ ≥ 1 with gcd(μk − 1, N) = 1.
pub fn mu(k: i64, n: i64) -> i64 {
    (1..).find(|m| gcd(m * k - 1, n) == 1).expect("μ exists")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSet {
    pub n: i64,
    pub matrices: Vec<Mat2>,
}

impl CosetSet {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

/// Representatives of Γ⁰(N)\Γ: T^ν (0 ≤ ν < N), S, and
/// M_{k,k'} = [k, kk' − 1; 1, k'] for 1 < k < N, gcd(k, N) > 1, 0 ≤ k' < μ(k).
pub fn cosets(n: i64) -> Result<CosetSet, ModularError> {
    if n < 2 {
        return Err(ModularError::BadLevel(n));
    }
    let mut matrices: Vec<Mat2> = (0..n).map(Mat2::t_pow).collect();
    matrices.push(Mat2::S);
    for k in (2..n).filter(|&k| gcd(k, n) > 1) {
        for kp in 0..mu(k, n) {
            matrices.push(Mat2::new(k, k * kp - 1, 1, kp));
        }
    }
    Ok(CosetSet { n, matrices })
}

/// Γ⁰(N)·M = Γ⁰(N)·M' iff M'M⁻¹ has upper right entry ≡ 0 mod N.
pub fn same_coset(n: i64, m: &Mat2, mp: &Mat2) -> bool {
    mp.mul(&m.inverse()).b % n == 0
}

/// S(N) = Σ μ(k)(1 − δ_k²/N) over 1 < k < N with 1 < δ_k = gcd(k, N) < √N.
#[allow(non_snake_case)]
pub fn S_of_N(n: i64) -> i64 {
    let num: i64 = (2..n)
        .map(|k| (k, gcd(k, n)))
        .filter(|&(_, d)| d > 1 && d * d < n)
        .map(|(k, d)| mu(k, n) * (n - d * d))
        .sum();
    assert_eq!(num % n, 0, "S({n}) is not integral");
    num / n
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub n: i64,
    pub s: i64,
    pub psi: i64,
    pub sn: i64,
    pub deg_j: i64,
}

pub fn degrees(n: i64) -> Result<DegreeData, ModularError> {
    if n < 2 {
        return Err(ModularError::BadLevel(n));
    }
    let s = canonical_exponents(n).s;
    let sn = S_of_N(n);
    let num = s * (n - 1 + sn);
    assert_eq!(num % 24, 0, "deg_J not integral for N = {n}");
    Ok(DegreeData { n, s, psi: psi(n), sn, deg_j: num / 24 })
}

/// Total q-order of the conjugates of 𝔴_N^s with negative order, times −1;
/// equals deg_J by the counting argument.
pub fn negative_order_total(n: i64) -> Ratio<i64> {
    let s = canonical_exponents(n).s;
    let cs = cosets(n).expect("valid level");
    let mut total = Ratio::from_integer(0);
    for m in &cs.matrices {
        let ord = if m.c == 0 {
            Ratio::new(-s * (n - 1), 24 * n)
        } else if *m == Mat2::S {
            Ratio::new(s * (n - 1), 24)
        } else {
            let d = gcd(m.a, n);
            Ratio::new(s * (d * d - n), 24 * n)
        };
        if ord < Ratio::from_integer(0) {
            total -= ord;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::factor;

    #[test]
    fn coset_examples() {
        assert_eq!(cosets(2).unwrap().len(), 3);
        assert_eq!(mu(2, 6), 1);
        assert_eq!(mu(3, 6), 2);
        assert_eq!(mu(4, 6), 2);
        assert_eq!(cosets(6).unwrap().len(), 12);
        for p in [3, 5, 7, 11, 13] {
            assert_eq!(cosets(p).unwrap().len() as i64, p + 1);
        }
    }

    #[test]
    fn cosets_are_a_transversal() {
        for n in 2..=60 {
            let cs = cosets(n).unwrap();
            assert_eq!(cs.len() as i64, psi(n), "N={n}");
            for (i, a) in cs.matrices.iter().enumerate() {
                assert_eq!(a.det(), 1);
                for b in &cs.matrices[..i] {
                    assert!(!same_coset(n, a, b), "N={n}: {a} ~ {b}");
                }
            }
        }
    }

    #[test]
    fn s_examples() {
        assert_eq!(S_of_N(6), 1);
        assert_eq!(S_of_N(16), 3);
        assert_eq!(S_of_N(81), 16);
        assert_eq!(S_of_N(7), 0);
        assert_eq!(S_of_N(49), 0);
    }

    #[test]
    fn s_closed_forms() {
        for n in 2..=200i64 {
            let f = factor(n);
            let want = match f.as_slice() {
                [(l, k)] => {
                    let m = (*k as i64 - 1) / 2;
                    if k % 2 == 1 {
                        (l.pow(m as u32) - 1).pow(2)
                    } else {
                        (l.pow(m as u32) - 1) * (l.pow(m as u32 + 1) - 1)
                    }
                }
                [(p1, 1), (p2, 1)] => p2 - p1,
                _ => continue,
            };
            assert_eq!(S_of_N(n), want, "N={n}");
        }
    }

    #[test]
    fn degree_examples() {
        let d = degrees(2).unwrap();
        assert_eq!((d.psi, d.deg_j), (3, 1));
        let d = degrees(6).unwrap();
        assert_eq!((d.psi, d.deg_j), (12, 6));
        let d = degrees(16).unwrap();
        assert_eq!((d.psi, d.deg_j), (24, 6));
        for n in 2..=200 {
            assert_eq!(negative_order_total(n), Ratio::from_integer(degrees(n).unwrap().deg_j), "N={n}");
        }
    }
}
