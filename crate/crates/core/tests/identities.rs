use proptest::prelude::*;

use weber_core::eta::{class_polynomial, epsilon_eta, eta, j_invariant, weber_w, Variant};
use weber_core::invariant::select_invariant;
use weber_core::modular::{comparison_table, cosets, same_coset, FuncDesc};
use weber_core::numeric::{gcd, is_prime, xgcd, Mat2};
use weber_core::quadforms::{class_representatives, is_discriminant, Discriminant};
use weber_core::{BigComplex, RootOfUnity24};

const PREC: usize = 128;

fn close(a: &BigComplex, b: &BigComplex) -> bool {
    a.sub(b).log2_abs() - b.log2_abs() < -100.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eta_translation(x in -3.0f64..3.0, y in 0.3f64..2.0) {
        let z = BigComplex::from_f64(x, y, PREC);
        let lhs = eta(&z.add(&BigComplex::one(PREC)), PREC).unwrap();
        let rhs = RootOfUnity24::new(1).to_complex(PREC).mul(&eta(&z, PREC).unwrap());
        prop_assert!(close(&lhs, &rhs));
    }

    #[test]
    fn eta_inversion(x in -1.0f64..1.0, y in 0.3f64..2.0) {
        let z = BigComplex::from_f64(x, y, PREC);
        let lhs = eta(&z.recip().neg(), PREC).unwrap();
        let rhs = z.mul_i().neg().sqrt().mul(&eta(&z, PREC).unwrap());
        prop_assert!(close(&lhs, &rhs));
    }

    #[test]
    fn epsilon_is_sign_invariant(a in -30i64..30, c in 1i64..30) {
        prop_assume!(gcd(a, c) == 1);
        let (_, x, y) = xgcd(a, c);
        let m = Mat2::new(a, -y, c, x);
        let neg = Mat2::new(-a, y, -c, -x);
        prop_assert_eq!(epsilon_eta(&m), epsilon_eta(&neg));
    }

    #[test]
    fn j_is_modular(x in -1.0f64..1.0, y in 0.5f64..1.5) {
        let z = BigComplex::from_f64(x, y, PREC);
        let j = j_invariant(&z, PREC).unwrap();
        prop_assert!(close(&j_invariant(&z.add(&BigComplex::one(PREC)), PREC).unwrap(), &j));
        prop_assert!(close(&j_invariant(&z.recip().neg(), PREC).unwrap(), &j));
    }

    /// (w_N^e)^k = w_N^(ek)
    #[test]
    fn weber_powers(n in 2i64..12, e in 1i64..5, x in -1.0f64..1.0, y in 0.5f64..1.5) {
        let z = BigComplex::from_f64(x, y, PREC);
        let w = weber_w(n, 1, &z, PREC).unwrap();
        prop_assert!(close(&weber_w(n, e, &z, PREC).unwrap(), &w.powi(e)));
    }

    #[test]
    fn coset_transversal(n in 2i64..40, a in -20i64..20, c in -20i64..20) {
        prop_assume!(gcd(a, c) == 1);
        let (_, x, y) = xgcd(a, c);
        let m = Mat2::new(a, -y, c, x);
        let set = cosets(n).unwrap();
        let hits = set.matrices.iter().filter(|r| same_coset(n, &m, r)).count();
        prop_assert_eq!(hits, 1);
    }

    #[test]
    fn class_number_positive(k in 1i64..2500) {
        let d = -k;
        prop_assume!(is_discriminant(d));
        let disc = Discriminant::new(d).unwrap();
        let reps = class_representatives(&disc);
        prop_assert!(!reps.is_empty());
        prop_assert!(reps.iter().all(|f| f.is_reduced() && f.disc() == d));
        prop_assert_eq!(reps.len() as i64, disc.class_number_formula());
    }

    #[test]
    fn descriptor_round_trip(p1 in 2i64..60, p2 in 2i64..60, e in 1i64..4, single in any::<bool>()) {
        prop_assume!(single || (is_prime(p1 as u64) && is_prime(p2 as u64)));
        let f = if single { FuncDesc::Single { n: p1, e } } else { FuncDesc::Double { p1: p1.min(p2), p2: p1.max(p2), e } };
        let back: FuncDesc = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn class_polynomials_are_monic_of_class_number_degree() {
    for (n, d) in [(2, -15), (3, -23), (5, -31), (7, -55), (13, -43), (4, -71), (6, -47)] {
        let c = match select_invariant(n, d) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let h = class_representatives(&Discriminant::new(d).unwrap()).len();
        let p = class_polynomial(&c, Variant::Plain, None).unwrap();
        assert_eq!(p.degree(), h, "N={n} D={d}");
        assert_eq!(p.coeffs.last().unwrap(), &(1.into(), 0.into()));
        assert!(p.max_residual < 0.01);
    }
}

#[test]
fn heights_sorted() {
    let t = comparison_table(num_rational::Ratio::from_integer(10), 30);
    assert!(t.windows(2).all(|w| w[0].gain >= w[1].gain));
    assert_eq!(t[0].func.to_string(), "w_2");
}
