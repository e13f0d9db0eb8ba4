use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{cosets, degrees, ModularError};
use crate::eta::{j_invariant, weber_w};
use crate::numeric::{real_from_bigint, round_real, BigComplex};

/// Polynomial in F and J with integer coefficients; `coeffs[i][k]` belongs
/// to F^i J^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    pub coeffs: Vec<Vec<BigInt>>,
}

impl BivariatePoly {
    pub fn deg_f(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn deg_j(&self) -> usize {
        self.coeffs.iter().map(|c| c.iter().rposition(|x| !x.is_zero()).unwrap_or(0)).max().unwrap_or(0)
    }

    pub fn eval(&self, f: &BigComplex, j: &BigComplex) -> BigComplex {
        let p = f.prec();
        let mut acc = BigComplex::zero(p);
        for row in self.coeffs.iter().rev() {
            let mut c = BigComplex::zero(p);
            for x in row.iter().rev() {
                c = c.mul(j).add(&BigComplex::from_real(real_from_bigint(x, p), p));
            }
            acc = acc.mul(f).add(&c);
        }
        acc
    }
}

fn j_poly(row: &[BigInt]) -> Vec<String> {
    let mut terms = Vec::new();
    for (k, c) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let mono = match k {
            0 => String::new(),
            1 => "J".to_string(),
            _ => format!("J^{k}"),
        };
        let t = match (k, c.abs().is_one()) {
            (0, _) => c.to_string(),
            (_, true) => format!("{}{mono}", if c.is_negative() { "-" } else { "" }),
            _ => format!("{c}*{mono}"),
        };
        terms.push(t);
    }
    terms
}

fn join_signed(terms: &[String]) -> String {
    let mut s = String::new();
    for t in terms {
        if !s.is_empty() && !t.starts_with('-') {
            s.push('+');
        }
        s.push_str(t);
    }
    s
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate().rev() {
            let terms = j_poly(row);
            if terms.is_empty() {
                continue;
            }
            let fm = match i {
                0 => String::new(),
                1 => "F".to_string(),
                _ => format!("F^{i}"),
            };
            let c = join_signed(&terms);
            let t = if i == 0 {
                c
            } else if terms.len() > 1 {
                format!("({c})*{fm}")
            } else if c == "1" {
                fm
            } else if c == "-1" {
                format!("-{fm}")
            } else {
                format!("{c}*{fm}")
            };
            parts.push(t);
        }
        write!(f, "{}", join_signed(&parts))
    }
}

/// Newton interpolation through (xs[k], ys[k]); ascending coefficients.
fn interpolate(xs: &[BigComplex], ys: &[BigComplex]) -> Vec<BigComplex> {
    let n = xs.len();
    let mut a = ys.to_vec();
    for l in 1..n {
        for k in (l..n).rev() {
            a[k] = a[k].sub(&a[k - 1]).div(&xs[k].sub(&xs[k - l]));
        }
    }
    let p = xs[0].prec();
    let mut poly = vec![a[n - 1].clone()];
    for k in (0..n - 1).rev() {
        // poly·(X − x_k) + a_k
        let mut next = vec![BigComplex::zero(p); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(&xs[k]));
        }
        next[0] = next[0].add(&a[k]);
        poly = next;
    }
    poly
}

fn attempt(n: i64, prec: usize, y0: f64) -> Result<(BivariatePoly, f64), ModularError> {
    let deg = degrees(n)?;
    let cs = cosets(n)?;
    let samples = deg.deg_j as usize + 1;
    let evals: Vec<(BigComplex, Vec<BigComplex>)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let x = (k as f64 + 0.37) / samples as f64;
            let z = BigComplex::from_f64(x, y0, prec);
            let j = j_invariant(&z, prec).expect("upper half plane");
            let mut poly = vec![BigComplex::one(prec)];
            for m in &cs.matrices {
                let v = weber_w(n, deg.s, &m.act(&z), prec).expect("upper half plane");
                let mut next = vec![BigComplex::zero(prec); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] = next[i + 1].add(c);
                    next[i] = next[i].sub(&c.mul(&v));
                }
                poly = next;
            }
            (j, poly)
        })
        .collect();
    let js: Vec<BigComplex> = evals.iter().map(|e| e.0.clone()).collect();
    let mut coeffs = Vec::with_capacity(deg.psi as usize + 1);
    let mut residual = 0f64;
    for i in 0..=deg.psi as usize {
        let ys: Vec<BigComplex> = evals.iter().map(|e| e.1[i].clone()).collect();
        let row: Vec<BigInt> = interpolate(&js, &ys)
            .iter()
            .map(|c| {
                let (x, d) = round_real(c.re(), prec);
                let im = BigComplex::from_real(c.im().clone(), prec).abs_f64();
                residual = residual.max(d).max(im);
                x
            })
            .collect();
        coeffs.push(row);
    }
    Ok((BivariatePoly { coeffs }, residual))
}

/// Φ_N^c = ∏ (F − 𝔴_N^s∘M) over the cosets, as a polynomial in F and J,
/// by interpolation in J at points on the line Im z = 1.1.
pub fn modular_polynomial(n: i64) -> Result<BivariatePoly, ModularError> {
    if n > 8 {
        return Err(ModularError::TooLarge(n));
    }
    let deg = degrees(n)?;
    let mut prec = 192 + 12 * (deg.psi * (deg.deg_j + 1)) as usize;
    let mut last = f64::INFINITY;
    for y0 in [1.1, 1.17, 1.23] {
        let (p, r) = attempt(n, prec, y0)?;
        if r < 0.01 {
            return Ok(p);
        }
        last = r;
        prec *= 2;
    }
    Err(ModularError::Rounding(last))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi2() {
        let p = modular_polynomial(2).unwrap();
        assert_eq!(p.to_string(), "F^3+48*F^2+(768-J)*F+4096");
    }

    #[test]
    fn display_rules() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let p = BivariatePoly { coeffs: vec![b(&[0, 0, -3]), b(&[-1]), b(&[1, 2])] };
        assert_eq!(p.to_string(), "(1+2*J)*F^2-F-3*J^2");
    }
}
