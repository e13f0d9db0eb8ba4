use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

/// Binary floating point real with per-value precision.
pub type Real = BigFloat;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// π to `prec` bits.
pub fn pi(prec: usize) -> Real {
    with_consts(|cc| cc.pi(prec, RM))
}

pub(crate) fn real_from_i64(v: i64, prec: usize) -> Real {
    BigFloat::from_i64(v, prec)
}

pub(crate) fn real_from_bigint(v: &BigInt, prec: usize) -> Real {
    if v.is_zero() {
        return BigFloat::from_i64(0, prec);
    }
    let (sign, digits) = v.to_u64_digits();
    let words: Vec<Word> = digits.iter().map(|&d| d as Word).collect();
    let s = if sign == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
    let x = BigFloat::from_words(&words, s, (64 * words.len()) as i32);
    x.add(&BigFloat::from_i64(0, prec), prec.max(64 * words.len()), RM)
}

pub(crate) fn real_to_f64(x: &Real) -> f64 {
    match x.as_raw_parts() {
        None => f64::NAN,
        Some((m, _, s, e, _)) => {
            if x.is_zero() {
                return 0.0;
            }
            let top = *m.last().unwrap() as f64;
            let below = if m.len() > 1 { m[m.len() - 2] as f64 } else { 0.0 };
            let mant = (top + below / 18446744073709551616.0) / 18446744073709551616.0;
            let v = mant * 2f64.powi(e.clamp(-2000, 2000));
            if s == Sign::Neg {
                -v
            } else {
                v
            }
        }
    }
}

/// log2 |x|, or `None` for zero.
pub(crate) fn real_log2_abs(x: &Real) -> Option<f64> {
    if x.is_zero() {
        return None;
    }
    let (m, _, _, e, _) = x.as_raw_parts()?;
    let top = *m.last().unwrap() as f64 / 18446744073709551616.0;
    Some(e as f64 + top.log2())
}

/// Converts an integer-valued real to an exact integer.
pub(crate) fn integral_to_bigint(x: &Real) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let (m, _, s, e, _) = x.as_raw_parts().expect("finite value");
    let mant = BigUint::from_slice(
        &m.iter().flat_map(|&w| [w as u32, (w >> 32) as u32]).collect::<Vec<u32>>(),
    );
    let shift = e as i64 - 64 * m.len() as i64;
    let mag = if shift >= 0 { mant << shift as usize } else { mant >> (-shift) as usize };
    let v = BigInt::from(mag);
    if s == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Nearest integer to `x` and the absolute rounding distance.
pub(crate) fn round_real(x: &Real, prec: usize) -> (BigInt, f64) {
    if x.is_nan() || x.is_inf() {
        return (BigInt::zero(), f64::INFINITY);
    }
    let r = x.round(0, RM);
    let d = x.sub(&r, prec, RM).abs();
    (integral_to_bigint(&r), real_to_f64(&d))
}

/// Complex number with both parts carried at `prec` bits.
/// Transcendental functions in astro-float need a full word.
const MIN_PREC: usize = 64;

#[derive(Clone, Debug)]
pub struct BigComplex {
    re: Real,
    im: Real,
    prec: usize,
}

impl BigComplex {
    pub fn new(re: Real, im: Real, prec: usize) -> Self {
        let prec = prec.max(MIN_PREC);
        BigComplex { re, im, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_i64(0, 0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, 0, prec)
    }

    pub fn i(prec: usize) -> Self {
        Self::from_i64(0, 1, prec)
    }

    pub fn from_i64(re: i64, im: i64, prec: usize) -> Self {
        let prec = prec.max(MIN_PREC);
        BigComplex { re: real_from_i64(re, prec), im: real_from_i64(im, prec), prec }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        let prec = prec.max(MIN_PREC);
        BigComplex { re: BigFloat::from_f64(re, prec), im: BigFloat::from_f64(im, prec), prec }
    }

    pub fn from_bigint(re: &BigInt, im: &BigInt, prec: usize) -> Self {
        let prec = prec.max(MIN_PREC);
        BigComplex { re: real_from_bigint(re, prec), im: real_from_bigint(im, prec), prec }
    }

    pub fn from_real(re: Real, prec: usize) -> Self {
        let prec = prec.max(MIN_PREC);
        BigComplex { re, im: real_from_i64(0, prec), prec }
    }

    /// exp(2πik/n).
    pub fn root_of_unity(k: i64, n: i64, prec: usize) -> Self {
        let k = k.rem_euclid(n);
        match (4 * k) % n == 0 {
            // exact for the quarter turns
            true => match 4 * k / n {
                0 => Self::one(prec),
                1 => Self::i(prec),
                2 => Self::from_i64(-1, 0, prec),
                _ => Self::from_i64(0, -1, prec),
            },
            false => {
                let p = prec + 64;
                let t = pi(p).mul(&real_from_i64(2 * k, p), p, RM).div(&real_from_i64(n, p), p, RM);
                let (c, s) = with_consts(|cc| (t.cos(p, RM, cc), t.sin(p, RM, cc)));
                BigComplex { re: c, im: s, prec }.with_prec(prec)
            }
        }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn re(&self) -> &Real {
        &self.re
    }

    pub fn im(&self) -> &Real {
        &self.im
    }

    /// Rounds both parts to `prec` bits.
    pub fn with_prec(&self, prec: usize) -> Self {
        let prec = prec.max(MIN_PREC);
        let z = real_from_i64(0, prec);
        BigComplex { re: self.re.add(&z, prec, RM), im: self.im.add(&z, prec, RM), prec }
    }

    fn p(&self, o: &Self) -> usize {
        self.prec.max(o.prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.p(o);
        BigComplex { re: self.re.add(&o.re, p, RM), im: self.im.add(&o.im, p, RM), prec: p }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.p(o);
        BigComplex { re: self.re.sub(&o.re, p, RM), im: self.im.sub(&o.im, p, RM), prec: p }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: self.re.neg(), im: self.im.neg(), prec: self.prec }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: self.im.neg(), prec: self.prec }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p(o);
        let w = p + 64;
        let re = self.re.mul(&o.re, w, RM).sub(&self.im.mul(&o.im, w, RM), p, RM);
        let im = self.re.mul(&o.im, w, RM).add(&self.im.mul(&o.re, w, RM), p, RM);
        BigComplex { re, im, prec: p }
    }

    pub fn sqr(&self) -> Self {
        self.mul(self)
    }

    pub fn mul_real(&self, r: &Real) -> Self {
        let p = self.prec;
        BigComplex { re: self.re.mul(r, p, RM), im: self.im.mul(r, p, RM), prec: p }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul_real(&real_from_i64(k, 64))
    }

    pub fn div_real(&self, r: &Real) -> Self {
        let p = self.prec;
        BigComplex { re: self.re.div(r, p, RM), im: self.im.div(r, p, RM), prec: p }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self.div_real(&real_from_i64(k, 64))
    }

    /// Multiplication by i.
    pub fn mul_i(&self) -> Self {
        BigComplex { re: self.im.neg(), im: self.re.clone(), prec: self.prec }
    }

    /// |z|².
    pub fn norm(&self) -> Real {
        let w = self.prec + 64;
        self.re.mul(&self.re, w, RM).add(&self.im.mul(&self.im, w, RM), self.prec, RM)
    }

    pub fn abs(&self) -> Real {
        self.norm().sqrt(self.prec, RM)
    }

    pub fn recip(&self) -> Self {
        let n = self.norm();
        let p = self.prec;
        BigComplex { re: self.re.div(&n, p, RM), im: self.im.neg().div(&n, p, RM), prec: p }
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.p(o);
        let w = p + 64;
        let n = o.norm();
        let re = self.re.mul(&o.re, w, RM).add(&self.im.mul(&o.im, w, RM), w, RM);
        let im = self.im.mul(&o.re, w, RM).sub(&self.re.mul(&o.im, w, RM), w, RM);
        BigComplex { re: re.div(&n, p, RM), im: im.div(&n, p, RM), prec: p }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec;
        let w = p + 32;
        let (m, c, s) = with_consts(|cc| (self.re.exp(w, RM, cc), self.im.cos(w, RM, cc), self.im.sin(w, RM, cc)));
        BigComplex { re: m.mul(&c, p, RM), im: m.mul(&s, p, RM), prec: p }
    }

    /// exp(2πi·z).
    pub fn exp_2pi_i(&self) -> Self {
        let w = self.prec + 32;
        let tp = pi(w).mul(&real_from_i64(2, 64), w, RM);
        BigComplex { re: self.im.mul(&tp, w, RM).neg(), im: self.re.mul(&tp, w, RM), prec: w }
            .exp()
            .with_prec(self.prec)
    }

    /// Principal square root (nonnegative real part).
    pub fn sqrt(&self) -> Self {
        let p = self.prec;
        if self.re.is_zero() && self.im.is_zero() {
            return Self::zero(p);
        }
        let w = p + 32;
        let r = self.abs();
        let two = real_from_i64(2, 64);
        if !self.re.is_negative() {
            let u = r.add(&self.re, w, RM).div(&two, w, RM).sqrt(w, RM);
            let v = self.im.div(&u.mul(&two, w, RM), w, RM);
            BigComplex { re: u, im: v, prec: p }.with_prec(p)
        } else {
            let mut v = r.sub(&self.re, w, RM).div(&two, w, RM).sqrt(w, RM);
            if self.im.is_negative() {
                v = v.neg();
            }
            let u = self.im.div(&v.mul(&two, w, RM), w, RM);
            BigComplex { re: u, im: v, prec: p }.with_prec(p)
        }
    }

    pub fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.prec);
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (real_to_f64(&self.re), real_to_f64(&self.im))
    }

    /// |z| as an f64 (may underflow to 0 for tiny values).
    pub fn abs_f64(&self) -> f64 {
        let (a, b) = self.to_f64();
        a.hypot(b)
    }

    /// log2 |z|, robust for values far outside the f64 range.
    pub fn log2_abs(&self) -> f64 {
        let e = real_log2_abs;
        match (e(&self.re), e(&self.im)) {
            (None, None) => f64::NEG_INFINITY,
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => {
                let (hi, lo) = if a > b { (a, b) } else { (b, a) };
                hi + 0.5 * (1.0 + 2f64.powf(2.0 * (lo - hi))).log2()
            }
        }
    }
}

impl std::fmt::Display for BigComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (a, b) = self.to_f64();
        write!(f, "{a:e}{}{:e}i", if b < 0.0 { "-" } else { "+" }, b.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn bigint_round_trip() {
        for v in [0i64, 1, -1, 186624, -640320, i64::MAX, i64::MIN + 1] {
            let b = BigInt::from(v);
            let r = real_from_bigint(&b, 128);
            assert_eq!(integral_to_bigint(&r), b);
        }
        let big: BigInt = "-262537412640768000".parse::<BigInt>().unwrap() * BigInt::from(10).pow(40);
        assert_eq!(integral_to_bigint(&real_from_bigint(&big, 256)), big);
    }

    #[test]
    fn rounding() {
        let x = BigFloat::from_f64(-2.75, 128);
        let (n, d) = round_real(&x, 128);
        assert_eq!(n, BigInt::from(-3));
        assert!((d - 0.25).abs() < 1e-15);
    }

    #[test]
    fn elementary_functions() {
        let p = 192;
        let i = BigComplex::i(p);
        assert!(i.sqr().add(&BigComplex::one(p)).abs_f64() < 1e-50);
        let z = BigComplex::from_f64(-3.0, 4.0, p);
        let s = z.sqrt();
        assert!(s.sub(&BigComplex::from_i64(1, 2, p)).abs_f64() < 1e-50);
        let w = BigComplex::from_f64(0.25, 0.0, p).exp_2pi_i();
        assert!(w.sub(&i).abs_f64() < 1e-50);
        let r = BigComplex::root_of_unity(1, 24, p).powi(24);
        assert!(r.sub(&BigComplex::one(p)).abs_f64() < 1e-50);
        let q = z.div(&s);
        assert!(q.mul(&s).sub(&z).abs_f64() < 1e-50);
        assert!((BigComplex::from_i64(3, 4, p).log2_abs() - 5f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn sqrt_branch() {
        let p = 128;
        for (a, b) in [(-4.0, 1e-30), (-4.0, -1e-30), (0.0, 2.0), (0.0, -2.0)] {
            let r = BigComplex::from_f64(a, b, p).sqrt();
            assert!(!r.re().is_negative());
        }
    }

    #[test]
    fn multiplication_error_bound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &p in &[64usize, 128, 256, 512] {
            for _ in 0..200 {
                let mut r = || rng.gen_range(-1e6..1e6);
                let a = BigComplex::from_f64(r(), r(), p);
                let b = BigComplex::from_f64(r(), r(), p);
                let got = a.mul(&b);
                let exact = a.with_prec(2 * p).mul(&b.with_prec(2 * p));
                let err = got.with_prec(2 * p).sub(&exact);
                let rel = err.log2_abs() - exact.log2_abs();
                assert!(rel < -(p as f64) + 4.0, "p={p} rel=2^{rel}");
            }
        }
    }
}
