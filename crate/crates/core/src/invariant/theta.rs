//! The exponent θ with 𝔴_N ∘ M₁⁻¹ = (u'/N₁)·ζ₂₄^θ·𝔴_N, and a builder for
//! test instances (form, u, v) satisfying its hypotheses.

use thiserror::Error;

use crate::numeric::{gcd, inv_mod, is_prime, modp, odd_part, sqrt_mod};
use crate::quadforms::{conductor_of, QuadForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error("norm p = {0} is not positive")]
    NotPositive(i64),
    #[error("p = {p} is not prime to 6Nc = {m}")]
    NotCoprime { p: i64, m: i64 },
    #[error("p = {p} does not divide u = {u}")]
    PDoesNotDivideU { p: i64, u: i64 },
    #[error("Np = {np} does not divide C = {c}")]
    NpDoesNotDivideC { np: i64, c: i64 },
}

/// θ for the matrix M₁⁻¹ = [u', −vC/p; vA, u/p] attached to π = u + vAα.
pub fn theta(n: i64, f: &QuadForm, u: i64, v: i64) -> Result<i128, ThetaError> {
    let (a, b, c) = (f.a as i128, f.b as i128, f.c as i128);
    let (n_, u_, v_) = (n as i128, u as i128, v as i128);
    let up = u_ - v_ * b;
    let p = u_ * up + v_ * v_ * a * c;
    if p <= 0 {
        return Err(ThetaError::NotPositive(p as i64));
    }
    let m = 6 * n * conductor_of(f.disc());
    if gcd((p % m as i128) as i64, m) != 1 {
        return Err(ThetaError::NotCoprime { p: p as i64, m });
    }
    if u_ % p != 0 {
        return Err(ThetaError::PDoesNotDivideU { p: p as i64, u });
    }
    if c % (n_ * p) != 0 {
        return Err(ThetaError::NpDoesNotDivideC { np: (n_ * p) as i64, c: f.c });
    }
    let (_, v1) = odd_part(v);
    let (_, a1) = odd_part(f.a);
    let (ln, n1) = odd_part(n);
    let (v1, a1, n1, ln) = (v1 as i128, a1 as i128, n1 as i128, ln as i128);
    let t = (n_ - 1) * v_ * (up * (c / (n_ * p)) + a * ((u_ / p) * (1 - up * up) - up))
        + 3 * v1 * a1 * (n1 - 1) * (up - 1)
        + 3 * ln * (up * up - 1) / 2;
    Ok(t)
}

/// A form [A, B, C] with Np | C and (u, v) with p = N(u + vAα), p | u.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaInstance {
    pub form: QuadForm,
    pub u: i64,
    pub v: i64,
    pub p: i64,
}

/// Keeps translated coefficients inside i64.
const MAX_NORM: i64 = 20_000;

/// Starting from a form with N | C and a pair (u₀, v) of prime norm p ∤ 6Nc,
/// translates α by a multiple of 24N so that p | C and normalises (u, v) so
/// that p | u.
pub fn build_theta_instance(n: i64, form: &QuadForm, u0: i64, v: i64) -> Option<ThetaInstance> {
    let (a, b, c) = (form.a, form.b, form.c);
    if v == 0 || c % n != 0 {
        return None;
    }
    let p = u0 * (u0 - v * b) + v * v * a * c;
    if p <= 3 || p > MAX_NORM || !is_prime(p as u64) || gcd(p, 6 * n * conductor_of(form.disc())) != 1 {
        return None;
    }
    // root x of AX² + BX + C mod p
    let x = if a % p == 0 {
        modp(-c * inv_mod(b, p)?, p)
    } else {
        let t = sqrt_mod(form.disc(), p)?.value_i64();
        modp((t - b) * inv_mod(2 * a, p)?, p)
    };
    debug_assert_eq!(modp(a * x * x + b * x + c, p), 0);
    let k = modp(x * inv_mod(24 * n, p)?, p);
    let y = 24 * k * n;
    let f = QuadForm { a, b: b + 2 * a * y, c: a * y * y + b * y + c };
    let u = u0 + y * v * a;
    let up = u - v * f.b;
    let (u, v) = if u % p == 0 { (u, v) } else { (up, -v) };
    debug_assert_eq!(u as i128 * (u - v * f.b) as i128 + (v * v * f.a) as i128 * f.c as i128, p as i128);
    (u % p == 0 && f.c % (n * p) == 0).then_some(ThetaInstance { form: f, u, v, p })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_examples() {
        let f = QuadForm { a: 1, b: 9, c: 21 };
        assert_eq!(theta(3, &f, 7, 1), Ok(-24));
        assert_eq!(theta(3, &f, 7, 2), Ok(-552));
        let g = QuadForm { a: 1, b: 20, c: 110 };
        assert_eq!(theta(5, &g, 11, 1), Ok(-476));
    }

    #[test]
    fn precondition_errors() {
        let f = QuadForm { a: 1, b: 9, c: 21 };
        assert_eq!(theta(3, &f, 8, 1), Err(ThetaError::PDoesNotDivideU { p: 13, u: 8 }));
        assert_eq!(theta(3, &f, 6, 1), Err(ThetaError::NotCoprime { p: 3, m: 18 }));
        assert!(matches!(theta(7, &f, 7, 1), Err(ThetaError::NotCoprime { .. })));
    }

    #[test]
    fn builder_produces_valid_instances() {
        let f = QuadForm { a: 1, b: 3, c: 5 };
        let mut built = 0;
        for u0 in -30..30 {
            for v in 1..6 {
                if let Some(inst) = build_theta_instance(5, &f, u0, v) {
                    assert!(theta(5, &inst.form, inst.u, inst.v).is_ok());
                    assert_eq!(inst.form.disc(), -11);
                    built += 1;
                }
            }
        }
        assert!(built > 20);
    }
}
