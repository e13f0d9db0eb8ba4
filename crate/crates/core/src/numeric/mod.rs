//! Exact integer helpers and the arbitrary-precision complex type.
//!
//! Everything here is small-modulus arithmetic: levels, discriminants and
//! moduli are desk-scale and fit comfortably in `i64`, with `i128` used for
//! intermediate products.

mod complex;
mod matrix;

pub use complex::{pi, BigComplex, Real};
pub(crate) use complex::{real_from_bigint, real_to_f64, round_real};
pub use matrix::Mat2;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Greatest common divisor, always nonnegative.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Nonnegative remainder.
pub fn modp(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// Extended Euclid: returns (g, x, y) with ax + by = g = gcd(a, b) >= 0.
pub fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let (g, x, _) = xgcd(modp(a, m), m);
    (g == 1).then(|| modp(x, m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = 17u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division factorisation of |n|, primes ascending. `factor(0)` and
/// `factor(±1)` are empty.
pub fn factor(n: i64) -> Vec<(i64, u32)> {
    let mut n = n.unsigned_abs();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p as i64, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as i64, 1));
    }
    out
}

pub fn prime_divisors(n: i64) -> Vec<i64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).any(|x| x >= 0 && x * x == n)
}

/// Kronecker symbol (a/n).
pub fn kronecker(a: i64, n: i64) -> i32 {
    assert!(n != 0, "kronecker symbol with n = 0");
    let mut a = a as i128;
    let mut n = n as i128;
    let mut sign = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }
    let mut twos = 0;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
    }
    // Jacobi symbol (a/n), n odd positive
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: i64, p: i64) -> u32 {
    assert!(n != 0 && p > 1);
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Writes n = n₁·2^λ with n₁ odd and returns (λ, n₁). By convention the
/// zero input gives (1, 1).
pub fn odd_part(n: i64) -> (u32, i64) {
    if n == 0 {
        return (1, 1);
    }
    let l = n.trailing_zeros();
    (l, n >> l)
}

/// A residue class `value mod modulus`, stored with `0 <= value < modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    pub value: BigInt,
    pub modulus: BigInt,
}

impl Residue {
    pub fn new(value: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Self {
        let modulus = modulus.into();
        assert!(modulus > BigInt::from(0), "modulus must be positive");
        let value = value.into().mod_floor(&modulus);
        Residue { value, modulus }
    }

    pub fn value_i64(&self) -> i64 {
        self.value.to_i64().expect("residue exceeds i64")
    }

    pub fn modulus_i64(&self) -> i64 {
        self.modulus.to_i64().expect("modulus exceeds i64")
    }
}

/// All square roots of `a` modulo p^k, ascending.
fn sqrt_prime_power(a: i64, p: i64, k: u32) -> Vec<i64> {
    let mut roots: Vec<i64> = (0..p).filter(|&x| modp(x * x - a, p) == 0).collect();
    let mut pk = p;
    for _ in 1..k {
        let next = pk * p;
        let mut lifted = Vec::new();
        for &r in &roots {
            for t in 0..p {
                let x = r + t * pk;
                if ((x as i128 * x as i128 - a as i128).rem_euclid(next as i128)) == 0 {
                    lifted.push(x);
                }
            }
        }
        roots = lifted;
        pk = next;
        if roots.is_empty() {
            break;
        }
    }
    roots.sort_unstable();
    roots
}

/// All square roots of `a` modulo `m`, ascending.
pub fn sqrt_mod_all(a: i64, m: i64) -> Vec<i64> {
    assert!(m >= 1);
    let mut roots = vec![0i64];
    let mut modulus = 1i64;
    for (p, k) in factor(m) {
        let pk = p.pow(k);
        let local = sqrt_prime_power(modp(a, pk), p, k);
        if local.is_empty() {
            return Vec::new();
        }
        let inv = inv_mod(modulus, pk).unwrap();
        let mut next = Vec::with_capacity(roots.len() * local.len());
        for &r in &roots {
            for &s in &local {
                // x ≡ r (mod modulus), x ≡ s (mod pk)
                let t = ((s - r) as i128 * inv as i128).rem_euclid(pk as i128) as i64;
                next.push(r + modulus * t);
            }
        }
        roots = next;
        modulus *= pk;
    }
    roots.sort_unstable();
    roots
}

/// Smallest nonnegative square root of `a` modulo `m`, if any.
pub fn sqrt_mod(a: i64, m: i64) -> Option<Residue> {
    sqrt_mod_all(a, m).first().map(|&b| Residue::new(b, m))
}

/// A 24th root of unity ζ₂₄^k, exponent kept in [0, 24). Signs are absorbed
/// as ζ₂₄^12 = −1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity24 {
    k: u8,
}

impl RootOfUnity24 {
    pub const ONE: RootOfUnity24 = RootOfUnity24 { k: 0 };

    pub fn new(k: i64) -> Self {
        RootOfUnity24 { k: k.rem_euclid(24) as u8 }
    }

    pub fn from_sign(s: i32) -> Self {
        match s {
            1 => Self::ONE,
            -1 => Self::new(12),
            _ => panic!("sign must be ±1, got {s}"),
        }
    }

    pub fn exponent(self) -> i64 {
        self.k as i64
    }

    pub fn mul(self, o: Self) -> Self {
        Self::new(self.k as i64 + o.k as i64)
    }

    pub fn inv(self) -> Self {
        Self::new(-(self.k as i64))
    }

    pub fn pow(self, e: i64) -> Self {
        Self::new((self.k as i64 * e.rem_euclid(24)) % 24)
    }

    pub fn to_complex(self, prec: usize) -> BigComplex {
        BigComplex::root_of_unity(self.k as i64, 24, prec)
    }

    /// Snaps a numerical value to the nearest 24th root of unity, returning it
    /// together with the distance.
    pub fn snap(z: &BigComplex) -> (Self, f64) {
        let (re, im) = z.to_f64();
        let mut best = (Self::ONE, f64::INFINITY);
        for k in 0..24 {
            let t = std::f64::consts::PI * k as f64 / 12.0;
            let d = ((re - t.cos()).powi(2) + (im - t.sin()).powi(2)).sqrt();
            if d < best.1 {
                best = (Self::new(k), d);
            }
        }
        best
    }
}

impl std::fmt::Display for RootOfUnity24 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ζ24^{}", self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(1, 7), 1);
        assert_eq!(kronecker(-1, 3), -1);
        assert_eq!(kronecker(-40, 7), 1);
        assert_eq!(kronecker(2, 7), 1);
        assert_eq!(kronecker(3, 8), -1);
        assert_eq!(kronecker(5, 8), -1);
        assert_eq!(kronecker(7, 8), 1);
        assert_eq!(kronecker(6, 9), 0);
    }

    fn legendre_euler(a: i64, p: i64) -> i32 {
        let mut r = 1i64;
        let mut b = modp(a, p);
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        match r {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in (3..200).filter(|&p| is_prime(p as u64)) {
            for a in -300..300 {
                assert_eq!(kronecker(a, p), legendre_euler(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(odd_part(48), (4, 3));
        assert_eq!(valuation(21, 3), 1);
        assert_eq!(odd_part(0), (1, 1));
        assert_eq!(odd_part(-12), (2, -3));
    }

    #[test]
    fn sqrt_mod_examples() {
        assert_eq!(sqrt_mod(9, 60).unwrap().value_i64(), 3);
        assert_eq!(sqrt_mod(0, 24).unwrap().value_i64(), 0);
        assert_eq!(sqrt_mod(modp(-11, 20), 20).unwrap().value_i64(), 3);
        assert!(sqrt_mod(2, 5).is_none());
        assert_eq!(sqrt_mod(5, 1).unwrap().value_i64(), 0);
    }

    #[test]
    fn sqrt_mod_agrees_with_scan_small() {
        for m in 1..=400i64 {
            let squares: Vec<bool> = {
                let mut v = vec![false; m as usize];
                for x in 0..m {
                    v[(x * x % m) as usize] = true;
                }
                v
            };
            for a in 0..m {
                let scan = (0..m).find(|x| (x * x - a) % m == 0);
                let got = sqrt_mod(a, m).map(|r| r.value_i64());
                assert_eq!(got, scan, "a={a} m={m}");
                assert_eq!(got.is_some(), squares[a as usize]);
            }
        }
    }

    #[test]
    fn root_of_unity_arith() {
        let z = RootOfUnity24::new(5);
        assert_eq!(z.mul(z.inv()), RootOfUnity24::ONE);
        assert_eq!(z.pow(24), RootOfUnity24::ONE);
        assert_eq!(RootOfUnity24::from_sign(-1).exponent(), 12);
        assert_eq!(RootOfUnity24::new(-3).exponent(), 21);
        let (s, d) = RootOfUnity24::snap(&z.to_complex(128));
        assert_eq!(s, z);
        assert!(d < 1e-15);
    }

    proptest! {
        #[test]
        fn kronecker_multiplicative(a in -500i64..500, b in -500i64..500, n in 1i64..400) {
            prop_assume!(gcd(a, n) == 1 && gcd(b, n) == 1);
            prop_assert_eq!(kronecker(a, n) * kronecker(b, n), kronecker(a * b, n));
        }

        #[test]
        fn sqrt_mod_oracle(a in -1_000_000i64..1_000_000, m in 1i64..1_000_000) {
            let got = sqrt_mod(a, m).map(|r| r.value_i64());
            let scan = (0..m).find(|&x| ((x as i128) * (x as i128) - a as i128).rem_euclid(m as i128) == 0);
            prop_assert_eq!(got, scan);
        }
    }
}
