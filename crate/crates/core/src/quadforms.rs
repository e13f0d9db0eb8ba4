//! Positive definite binary quadratic forms [A, B, C] = AX² + BXY + CY².

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::numeric::{gcd, inv_mod, modp, BigComplex, Mat2, Real, Residue};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("discriminant {0} is not negative")]
    NotNegative(i64),
    #[error("{0} is not congruent to 0 or 1 mod 4")]
    BadResidue(i64),
    #[error("form [{0}, {1}, {2}] is not primitive")]
    NotPrimitive(i64, i64, i64),
    #[error("form [{0}, {1}, {2}] is not positive definite")]
    NotDefinite(i64, i64, i64),
    #[error("{b}² is not congruent to {d} mod {m}")]
    NoAnchor { d: i64, b: i64, m: i64 },
    #[error("no representative coprime to {m} found within bound {bound} for class {class}")]
    SearchExhausted { m: i64, bound: i64, class: usize },
}

/// How the generator ω of the maximal order is defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Omega {
    /// ω = (1 + √Δ)/2, for Δ ≡ 1 (mod 4).
    HalfIntegral,
    /// ω = √(Δ/4), for 4 | Δ.
    Root,
}

/// A negative discriminant D = c²Δ with Δ fundamental.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Discriminant {
    d: i64,
    fundamental: i64,
    conductor: i64,
}

fn squarefree(n: i64) -> bool {
    crate::numeric::factor(n).iter().all(|&(_, k)| k == 1)
}

pub fn is_fundamental(delta: i64) -> bool {
    match modp(delta, 4) {
        1 => squarefree(delta),
        0 => {
            let m = delta / 4;
            matches!(modp(m, 4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

impl Discriminant {
    pub fn new(d: i64) -> Result<Self, FormError> {
        if d >= 0 {
            return Err(FormError::NotNegative(d));
        }
        if !matches!(modp(d, 4), 0 | 1) {
            return Err(FormError::BadResidue(d));
        }
        let mut c = (((-d) as f64).sqrt() as i64) + 1;
        while c >= 1 {
            if d % (c * c) == 0 && is_fundamental(d / (c * c)) {
                return Ok(Discriminant { d, fundamental: d / (c * c), conductor: c });
            }
            c -= 1;
        }
        unreachable!("every discriminant has a fundamental part")
    }

    pub fn value(&self) -> i64 {
        self.d
    }

    pub fn fundamental(&self) -> i64 {
        self.fundamental
    }

    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    pub fn omega_kind(&self) -> Omega {
        if modp(self.fundamental, 4) == 1 {
            Omega::HalfIntegral
        } else {
            Omega::Root
        }
    }

    /// ω as a complex number.
    pub fn omega(&self, prec: usize) -> BigComplex {
        let s = Real::from_i64(-self.fundamental, prec + 32).sqrt(prec + 32, astro_float::RoundingMode::ToEven);
        let re = match self.omega_kind() {
            Omega::HalfIntegral => 1,
            Omega::Root => 0,
        };
        BigComplex::new(Real::from_i64(re, prec), s, prec).div_i64(2)
    }

    /// √D = i√|D|.
    pub fn sqrt_d(&self, prec: usize) -> BigComplex {
        let s = Real::from_i64(-self.d, prec + 64).sqrt(prec, astro_float::RoundingMode::ToEven);
        BigComplex::new(Real::from_i64(0, prec), s, prec)
    }

    /// Class number via the analytic formula, independent of form enumeration.
    pub fn class_number_formula(&self) -> i64 {
        let delta = self.fundamental;
        let w = match delta {
            -3 => 6,
            -4 => 4,
            _ => 2,
        };
        let n = -delta;
        let s: i64 = (1..=n).map(|a| crate::numeric::kronecker(delta, a) as i64 * a).sum();
        assert_eq!((w * s) % (2 * n), 0, "class number formula not integral");
        let h_delta = -w * s / (2 * n);
        let c = self.conductor;
        if c == 1 {
            return h_delta;
        }
        let unit_index = match delta {
            -3 => 3,
            -4 => 2,
            _ => 1,
        };
        // h(D) = h(Δ)·c/[O_K*:O*]·∏(1 − (Δ/p)/p), kept integral
        let mut num = h_delta * c;
        let mut den = unit_index;
        for p in crate::numeric::prime_divisors(c) {
            num *= p - crate::numeric::kronecker(delta, p) as i64;
            den *= p;
        }
        num / den
    }
}

/// A primitive positive definite form [A, B, C].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, FormError> {
        let f = QuadForm { a, b, c };
        if f.disc() >= 0 || a <= 0 {
            return Err(FormError::NotDefinite(a, b, c));
        }
        if gcd(gcd(a, b), c) != 1 {
            return Err(FormError::NotPrimitive(a, b, c));
        }
        Ok(f)
    }

    /// The form [A, B, (B² − D)/(4A)]; requires 4A | B² − D.
    pub fn from_ab(a: i64, b: i64, d: i64) -> Option<Self> {
        let num = b * b - d;
        (num % (4 * a) == 0).then(|| QuadForm { a, b, c: num / (4 * a) })
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// The form (x, y) ↦ f(m.a x + m.b y, m.c x + m.d y).
    pub fn transform(&self, m: &Mat2) -> QuadForm {
        let (a, b, c) = (self.a, self.b, self.c);
        QuadForm {
            a: self.eval(m.a, m.c),
            b: 2 * a * m.a * m.b + b * (m.a * m.d + m.b * m.c) + 2 * c * m.c * m.d,
            c: self.eval(m.b, m.d),
        }
    }

    pub fn inverse(&self) -> QuadForm {
        QuadForm { a: self.a, b: -self.b, c: self.c }
    }

    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a && self.a <= self.c && !(self.b < 0 && (self.b.abs() == self.a || self.a == self.c))
    }

    /// The unique reduced form equivalent to `self`.
    pub fn reduce(&self) -> Result<QuadForm, FormError> {
        let d = self.disc();
        if d >= 0 || self.a <= 0 {
            return Err(FormError::NotDefinite(self.a, self.b, self.c));
        }
        if gcd(gcd(self.a, self.b), self.c) != 1 {
            return Err(FormError::NotPrimitive(self.a, self.b, self.c));
        }
        Ok(self.reduce_unchecked())
    }

    pub(crate) fn reduce_unchecked(&self) -> QuadForm {
        let d = self.disc();
        let (mut a, mut b, mut c) = (self.a, self.b, self.c);
        loop {
            if b <= -a || b > a {
                let k = (a - b).div_euclid(2 * a);
                b += 2 * a * k;
                c = (b * b - d) / (4 * a);
            }
            if a > c {
                (a, b, c) = (c, -b, a);
                continue;
            }
            if (a == c || b == a) && b < 0 {
                b = -b;
            }
            return QuadForm { a, b, c };
        }
    }

    pub fn is_equivalent(&self, o: &QuadForm) -> bool {
        self.disc() == o.disc() && self.reduce_unchecked() == o.reduce_unchecked()
    }

    /// The root α = (−B + √D)/(2A) in the upper half plane.
    pub fn root(&self, prec: usize) -> BigComplex {
        let w = prec + 32;
        let s = Real::from_i64(-self.disc(), w).sqrt(w, astro_float::RoundingMode::ToEven);
        BigComplex::new(Real::from_i64(-self.b, w), s, w).div_i64(2 * self.a).with_prec(prec)
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// All reduced primitive forms of discriminant D, principal form first,
/// ordered by (A, B).
pub fn class_representatives(disc: &Discriminant) -> Vec<QuadForm> {
    let d = disc.value();
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            if modp(b - d, 2) != 0 {
                continue;
            }
            if let Some(f) = QuadForm::from_ab(a, b, d) {
                if f.c >= a && !(b < 0 && a == f.c) && gcd(gcd(a, b), f.c) == 1 {
                    out.push(f);
                }
            }
        }
        a += 1;
    }
    out
}

/// A set of class representatives [A_i, B_i, C_i] with gcd(A_i, M) = 1 and
/// B_i ≡ B₁ (mod 2M).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NSystem {
    pub level: i64,
    pub forms: Vec<QuadForm>,
    pub anchor: Residue,
}

impl NSystem {
    /// Checks the defining congruences and that the forms represent every
    /// class exactly once.
    pub fn validate(&self, disc: &Discriminant) -> bool {
        let m = self.level;
        let b1 = self.anchor.value_i64();
        let reps = class_representatives(disc);
        let mut reduced: Vec<QuadForm> = self.forms.iter().map(|f| f.reduce_unchecked()).collect();
        reduced.sort();
        let mut expect = reps.clone();
        expect.sort();
        self.forms.len() == reps.len()
            && reduced == expect
            && self
                .forms
                .iter()
                .all(|f| f.disc() == disc.value() && gcd(f.a, m) == 1 && modp(f.b - b1, 2 * m) == 0)
    }
}

const SEARCH_BOUND: i64 = 64;

/// Builds an M-system whose forms follow the order of
/// [`class_representatives`] and whose B-coefficients are ≡ `b_target`
/// (mod 2M).
pub fn n_system(disc: &Discriminant, m: i64, b_target: &Residue) -> Result<NSystem, FormError> {
    let d = disc.value();
    let bt = modp(b_target.value.to_i64().expect("small residue"), 2 * m);
    if modp(bt * bt - d, 4) != 0 {
        return Err(FormError::NoAnchor { d, b: bt, m: 4 });
    }
    let reps = class_representatives(disc);
    let mut forms = Vec::with_capacity(reps.len());
    for (idx, rep) in reps.iter().enumerate() {
        if idx == 0 {
            forms.push(QuadForm::from_ab(1, bt, d).expect("anchor solves the congruence"));
            continue;
        }
        forms.push(anchor_class(rep, m, bt, idx)?);
    }
    Ok(NSystem { level: m, forms, anchor: Residue::new(BigInt::from(bt), BigInt::from(2 * m)) })
}

fn anchor_class(rep: &QuadForm, m: i64, bt: i64, idx: usize) -> Result<QuadForm, FormError> {
    let d = rep.disc();
    let mut bound = 1;
    while bound <= SEARCH_BOUND {
        let mut best: Option<(i64, i64, i64)> = None;
        for x in -bound..=bound {
            for y in 0..=bound {
                if gcd(x, y) != 1 || (y == 0 && x != 1) {
                    continue;
                }
                let v = rep.eval(x, y);
                if gcd(v, m) == 1 && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, x, y));
                }
            }
        }
        if let Some((a1, x, y)) = best {
            // complete (x, y) to [x, z; y, w] of determinant 1
            let (_, u, v) = crate::numeric::xgcd(x, y);
            let mat = Mat2::new(x, -v, y, u);
            debug_assert_eq!(mat.det(), 1);
            let f = rep.transform(&mat);
            debug_assert_eq!(f.a, a1);
            let k0 = modp((bt - f.b) / 2 * inv_mod(a1, m).unwrap(), m);
            let step = 2 * a1 * m;
            let mut b = f.b + 2 * a1 * k0;
            // minimal |B| in (−MA', MA']
            b = modp(b + a1 * m, step) - a1 * m;
            if b == -a1 * m {
                b += step;
            }
            let g = QuadForm::from_ab(a1, b, d).expect("translate stays integral");
            return Ok(g);
        }
        bound *= 2;
    }
    Err(FormError::SearchExhausted { m, bound: SEARCH_BOUND, class: idx })
}

/// Exhaustive count of reduced forms written independently of
/// [`class_representatives`]: scans all (A, B, C) with C bounded.
pub fn count_reduced_exhaustive(d: i64) -> usize {
    let mut n = 0;
    let lim = ((-d as f64) / 3.0).sqrt() as i64 + 1;
    for a in 1..=lim {
        for b in -a..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm { a, b, c: num / (4 * a) };
            if f.is_reduced() && gcd(gcd(f.a, f.b), f.c) == 1 {
                n += 1;
            }
        }
    }
    n
}

/// Conductor of a negative discriminant.
pub fn conductor_of(d: i64) -> i64 {
    Discriminant::new(d).map(|x| x.conductor()).expect("negative discriminant")
}

pub fn is_discriminant(d: i64) -> bool {
    d < 0 && matches!(modp(d, 4), 0 | 1)
}
