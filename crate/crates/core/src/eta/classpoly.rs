use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use super::{weber_w, EtaError};
use crate::invariant::{InvariantChoice, RealityClass};
use crate::numeric::{real_from_bigint, round_real, BigComplex};
use crate::quadforms::{class_representatives, n_system, Discriminant, FormError, NSystem};

const MAX_RESIDUAL: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Plain,
    TimesSqrtD,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Eta(#[from] EtaError),
    #[error("rounding failed at {prec} bits: residual {residual}")]
    Rounding { prec: usize, residual: f64 },
}

/// Monic polynomial with coefficients x + yω, constant term first.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicPoly {
    pub disc: Discriminant,
    pub coeffs: Vec<(BigInt, BigInt)>,
    pub max_residual: f64,
    pub prec: usize,
}

impl AlgebraicPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|(_, y)| y.is_zero())
    }

    /// Evaluates the coefficients as complex numbers.
    pub fn to_complex(&self, prec: usize) -> Vec<BigComplex> {
        let w = self.disc.omega(prec);
        self.coeffs
            .iter()
            .map(|(x, y)| BigComplex::from_bigint(x, &BigInt::zero(), prec).add(&w.mul(&BigComplex::from_bigint(y, &BigInt::zero(), prec))))
            .collect()
    }
}

/// Working precision in bits. The largest |f(α)| over the class of a
/// reduced form [a, b, c] is about exp(κ·π√|D|/a), κ = e(N − 1)/(24N).
pub fn precision_estimate(choice: &InvariantChoice, system: &NSystem) -> usize {
    let d = choice.d as f64;
    let kappa = choice.e as f64 * (choice.n - 1) as f64 / (24 * choice.n) as f64;
    let disc = Discriminant::new(choice.d).expect("valid discriminant");
    let inv_a: f64 = class_representatives(&disc).iter().map(|f| 1.0 / f.a as f64).sum();
    let h = system.forms.len() as f64;
    let height = kappa * std::f64::consts::PI * (-d).sqrt() * inv_a / std::f64::consts::LN_2;
    (height + 3.5 * h + 64.0).ceil() as usize
}

fn poly_mul(p: &[BigComplex], q: &[BigComplex]) -> Vec<BigComplex> {
    let prec = p[0].prec();
    let mut out = vec![BigComplex::zero(prec); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = out[i + j].add(&a.mul(b));
        }
    }
    out
}

/// ∏(X − vᵢ) by a balanced product tree, constant term first.
fn product_tree(values: &[BigComplex]) -> Vec<BigComplex> {
    match values.len() {
        0 => unreachable!("empty class group"),
        1 => vec![values[0].neg(), BigComplex::one(values[0].prec())],
        n => {
            let (l, r) = values.split_at(n / 2);
            let (pl, pr) = rayon::join(|| product_tree(l), || product_tree(r));
            poly_mul(&pl, &pr)
        }
    }
}

fn round_coeff(z: &BigComplex, omega: Option<&BigComplex>, prec: usize) -> ((BigInt, BigInt), f64) {
    match omega {
        None => {
            let (x, dx) = round_real(z.re(), prec);
            let dy = z.im().clone();
            let dy = BigComplex::from_real(dy, prec).abs_f64();
            ((x, BigInt::zero()), dx.max(dy))
        }
        Some(w) => {
            let yq = BigComplex::from_real(z.im().clone(), prec).div_real(w.im());
            let (y, dy) = round_real(yq.re(), prec);
            let rest = z.sub(&w.mul(&BigComplex::from_real(real_from_bigint(&y, prec), prec)));
            let (x, dx) = round_real(rest.re(), prec);
            let di = BigComplex::from_real(rest.im().clone(), prec).abs_f64();
            ((x, y), dx.max(dy).max(di))
        }
    }
}

fn evaluate(choice: &InvariantChoice, system: &NSystem, variant: Variant, prec: usize) -> Result<AlgebraicPoly, EvalError> {
    let disc = Discriminant::new(choice.d)?;
    let values: Vec<BigComplex> = system
        .forms
        .par_iter()
        .map(|f| weber_w(choice.n, choice.e, &f.root(prec), prec))
        .collect::<Result<_, _>>()?;
    let values = match variant {
        Variant::Plain => values,
        Variant::TimesSqrtD => {
            let s = disc.sqrt_d(prec);
            values.iter().map(|v| v.mul(&s)).collect()
        }
    };
    let poly = product_tree(&values);
    let rational = matches!(
        (choice.reality, variant),
        (RealityClass::RationalPoly, Variant::Plain) | (RealityClass::RationalAfterSqrtD, Variant::TimesSqrtD)
    );
    let omega = disc.omega(prec);
    let omega = (!rational).then_some(&omega);
    let mut coeffs = Vec::with_capacity(poly.len());
    let mut max_residual = 0f64;
    for z in &poly {
        let (c, r) = round_coeff(z, omega, prec);
        max_residual = max_residual.max(if r.is_nan() { f64::INFINITY } else { r });
        coeffs.push(c);
    }
    // at hopeless precision even the leading coefficient is lost
    if coeffs.last() != Some(&(BigInt::one(), BigInt::zero())) {
        max_residual = f64::INFINITY;
    }
    Ok(AlgebraicPoly { disc, coeffs, max_residual, prec })
}

/// H_D[f] = ∏(X − f(αᵢ)) over the roots of the (s/e)N-system selected by
/// `choice`, with f = 𝔴_N^e or √D·𝔴_N^e.
pub fn class_polynomial(choice: &InvariantChoice, variant: Variant, prec: Option<usize>) -> Result<AlgebraicPoly, EvalError> {
    let disc = Discriminant::new(choice.d)?;
    let system = n_system(&disc, choice.level, &choice.b)?;
    let mut bits = prec.unwrap_or_else(|| {
        let extra = match variant {
            Variant::Plain => 0.0,
            Variant::TimesSqrtD => system.forms.len() as f64 * (-(choice.d as f64)).log2() / 2.0,
        };
        precision_estimate(choice, &system) + extra.ceil() as usize
    });
    let mut last = 0.0;
    for _ in 0..2 {
        let p = evaluate(choice, &system, variant, bits)?;
        if p.max_residual < MAX_RESIDUAL {
            return Ok(p);
        }
        last = p.max_residual;
        bits *= 2;
    }
    Err(EvalError::Rounding { prec: bits / 2, residual: last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::select_invariant;

    fn ints(p: &AlgebraicPoly) -> Vec<(i64, i64)> {
        p.coeffs.iter().map(|(x, y)| (i64::try_from(x).unwrap(), i64::try_from(y).unwrap())).collect()
    }

    #[test]
    fn small_examples() {
        let c = select_invariant(5, -11).unwrap();
        let p = class_polynomial(&c, Variant::Plain, None).unwrap();
        assert_eq!(ints(&p), vec![(-1, -1), (1, 0)]);
        let c = select_invariant(3, -24).unwrap();
        let p = class_polynomial(&c, Variant::Plain, None).unwrap();
        assert_eq!(ints(&p), vec![(729, 0), (-162, 0), (1, 0)]);
    }

    #[test]
    fn estimate_has_floor() {
        let c = select_invariant(6, -12).unwrap();
        let disc = Discriminant::new(-12).unwrap();
        let sys = n_system(&disc, c.level, &c.b).unwrap();
        assert!(precision_estimate(&c, &sys) >= 64);
    }
}
