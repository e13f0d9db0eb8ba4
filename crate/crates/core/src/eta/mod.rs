//! Dedekind η, the functions 𝔴_N = η(z/N)/η(z) and j, and class polynomials
//! assembled from their singular values.

mod classpoly;

pub use classpoly::{class_polynomial, precision_estimate, AlgebraicPoly, EvalError, Variant};

use thiserror::Error;

use crate::numeric::{kronecker, odd_part, real_to_f64, BigComplex, Mat2, RootOfUnity24};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EtaError {
    #[error("argument must lie in the upper half plane")]
    NotInUpperHalfPlane,
}

/// A point of the upper half plane together with the matrix that moves it
/// into the standard fundamental domain.
#[derive(Clone, Debug)]
pub struct EtaArg {
    pub z: BigComplex,
    pub trail: Mat2,
}

impl EtaArg {
    /// Reduces `z` by translations and inversions; `trail·z₀ = z`.
    pub fn reduce(z: &BigComplex) -> Result<Self, EtaError> {
        Ok(reduce_tracked(z)?.0)
    }
}

/// Reduction that also returns the multiplier m with η(z₀) = m·η(z).
fn reduce_tracked(z0: &BigComplex) -> Result<(EtaArg, BigComplex), EtaError> {
    if real_to_f64(z0.im()) <= 0.0 || z0.im().is_negative() || z0.im().is_zero() {
        return Err(EtaError::NotInUpperHalfPlane);
    }
    let prec = z0.prec();
    let mut z = z0.clone();
    let mut trail = Mat2::I;
    let mut factor = BigComplex::one(prec);
    let mut k24 = 0i64;
    // below the working precision |z| = 1 cannot be decided
    let tol = 1e-12f64.max(2f64.powi(16 - prec.min(1000) as i32));
    for _ in 0..1000 {
        let n = real_to_f64(z.re()).round() as i64;
        if n != 0 {
            z = z.sub(&BigComplex::from_i64(n, 0, prec));
            trail = Mat2::t_pow(-n).mul(&trail);
            // η(w + n) = ζ₂₄ⁿ η(w)
            k24 += n;
        }
        let (x, y) = z.to_f64();
        if x * x + y * y >= 1.0 - tol {
            break;
        }
        // η(w) = η(−1/w) / √(−iw)
        let s = z.mul_i().neg().sqrt();
        factor = factor.div(&s);
        z = z.recip().neg();
        trail = Mat2::S.mul(&trail);
    }
    let factor = factor.mul(&RootOfUnity24::new(k24).to_complex(prec));
    Ok((EtaArg { z, trail }, factor))
}

/// ∏(1 − qᵐ) via the pentagonal number theorem, for |q| small.
fn pentagonal_series(q: &BigComplex, prec: usize) -> BigComplex {
    let stop = -(prec as f64) - 16.0;
    let q2 = q.sqr();
    let mut sum = BigComplex::one(prec);
    let mut qk = q.clone(); // q^k
    let mut qa = q.clone(); // q^{k(3k−1)/2}
    let mut odd = q.powi(3); // q^{2k+1}
    let mut k = 1i64;
    loop {
        let qb = qa.mul(&qk); // q^{k(3k+1)/2}
        let term = qa.add(&qb);
        sum = if k % 2 == 1 { sum.sub(&term) } else { sum.add(&term) };
        if qa.log2_abs() < stop {
            break;
        }
        qa = qb.mul(&odd);
        odd = odd.mul(&q2);
        qk = qk.mul(q);
        k += 1;
    }
    sum
}

/// Dedekind η(z) = q^{1/24} ∏(1 − qᵐ), q = e^{2πiz}.
pub fn eta(z: &BigComplex, prec: usize) -> Result<BigComplex, EtaError> {
    let y = real_to_f64(z.im());
    let guard = 32 + (1.0 / y.max(1e-300)).log2().max(0.0).ceil() as usize * 2;
    let w = prec + guard;
    let (arg, factor) = reduce_tracked(&z.with_prec(w))?;
    let q24 = arg.z.div_i64(24).exp_2pi_i();
    let q = arg.z.exp_2pi_i();
    let v = factor.mul(&q24).mul(&pentagonal_series(&q, w));
    Ok(v.with_prec(prec))
}

/// The 24th root of unity ε(M) with η(Mz) = ε(M)·√(cz + d)·η(z); M is
/// normalised (c ≥ 0, and d > 0 if c = 0) before use.
pub fn epsilon_eta(m: &Mat2) -> RootOfUnity24 {
    let Mat2 { a, b, c, d } = m.normalised();
    let (lc, c1) = if c == 0 { (1, 1) } else { odd_part(c) };
    let (a_, b_, c_, d_) = (a as i128, b as i128, c as i128, d as i128);
    let (lc, c1_) = (lc as i128, c1 as i128);
    let x = a_ * b_ + c_ * (d_ * (1 - a_ * a_) - a_) + 3 * c1_ * (a_ - 1) + 3 * lc * (a_ * a_ - 1) / 2;
    RootOfUnity24::from_sign(kronecker(a, c1)).mul(RootOfUnity24::new(x.rem_euclid(24) as i64))
}

/// The root of unity ε with 𝔴_N ∘ M = ε·𝔴_N for M = [a, N·b₀; c, d] in
/// Γ⁰(N); `None` if N ∤ b.
pub fn epsilon_w(n: i64, m: &Mat2) -> Option<RootOfUnity24> {
    if m.b % n != 0 {
        return None;
    }
    let Mat2 { a, b, c, d } = m.normalised();
    let b0 = b / n;
    let (ln, n1) = odd_part(n);
    let (_, c1) = if c == 0 { (1, 1) } else { odd_part(c) };
    let (a_, c_, d_, n_) = (a as i128, c as i128, d as i128, n as i128);
    let (b0, ln, n1_, c1) = (b0 as i128, ln as i128, n1 as i128, c1 as i128);
    let x = (n_ - 1) * (-b0 * a_ + c_ * (d_ * (1 - a_ * a_) - a_))
        + 6 * (c1 * (n1_ - 1) * (a_ - 1) / 2)
        + 12 * (ln * (a_ * a_ - 1) / 8);
    Some(RootOfUnity24::from_sign(kronecker(a, n1)).mul(RootOfUnity24::new(x.rem_euclid(24) as i64)))
}

/// 𝔴_N(z)^e = (η(z/N)/η(z))^e.
pub fn weber_w(n: i64, e: i64, z: &BigComplex, prec: usize) -> Result<BigComplex, EtaError> {
    let w = prec + 16 + (e.unsigned_abs().max(1) as f64).log2().ceil() as usize;
    let num = eta(&z.with_prec(w).div_i64(n), w)?;
    let den = eta(&z.with_prec(w), w)?;
    Ok(num.div(&den).powi(e).with_prec(prec))
}

/// j(z) = (𝔴₂²⁴ + 16)³ / 𝔴₂²⁴.
pub fn j_invariant(z: &BigComplex, prec: usize) -> Result<BigComplex, EtaError> {
    let w = prec + 32;
    let f = weber_w(2, 24, z, w)?;
    let t = f.add(&BigComplex::from_i64(16, 0, w));
    Ok(t.sqr().mul(&t).div(&f).with_prec(prec))
}
