//! Which powers 𝔴_N^e of the Weber function 𝔴_N give class invariants for a
//! discriminant D, and under which congruence conditions on B.
//!
//! A condition `r:R` on the middle coefficient of a form [A, B, C] means
//! B² ≡ D + 4rN (mod 4RN); `0:1` is the plain requirement B² ≡ D (mod 4N).

mod props;
mod table;
mod theta;

pub use props::{prop_applies, BForce, Gain, PropCase, PropName};
pub use table::{db4_rows, generate_condition_table, render_residues, ConditionTable, Db4Row, TableRow};
pub use theta::{build_theta_instance, theta, ThetaError, ThetaInstance};

use thiserror::Error;

use crate::numeric::{is_square, kronecker, modp, prime_divisors, sqrt_mod, valuation, Residue};
use crate::quadforms::Discriminant;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("inadmissible at p={p}: D={d} has no square root modulo 4N for N={n}")]
    Inadmissible { n: i64, d: i64, p: i64 },
    #[error("level N={0} must be at least 2")]
    BadLevel(i64),
    #[error("{p} is not prime to 2cD for D={d}")]
    CharacterPrime { d: i64, p: i64 },
    #[error("unknown proposition {0}")]
    UnknownProposition(String),
}

/// t = 24/gcd(N − 1, 24) and the canonical exponent s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExponentData {
    pub n: i64,
    pub t: i64,
    pub s: i64,
    pub is_square_n: bool,
}

pub fn canonical_exponents(n: i64) -> ExponentData {
    assert!(n >= 2, "level must be at least 2");
    let t = 24 / crate::numeric::gcd(n - 1, 24);
    let sq = is_square(n);
    let s = if t % 2 == 1 && !sq { 2 * t } else { t };
    ExponentData { n, t, s, is_square_n: sq }
}

/// Local test at a prime p | N: whether D has a square root
/// modulo the p-part of 4N.
fn locally_admissible(disc: &Discriminant, n: i64, p: i64) -> bool {
    let vn = valuation(n, p);
    let c = disc.conductor();
    let vc = if c % p == 0 { valuation(c, p) } else { 0 };
    match kronecker(disc.fundamental(), p) {
        1 => true,
        -1 => vn <= 2 * vc,
        _ => vn <= 2 * vc + 1,
    }
}

/// The first prime p | N at which D fails to be a square modulo 4N.
pub fn failing_prime(disc: &Discriminant, n: i64) -> Option<i64> {
    prime_divisors(n).into_iter().find(|&p| !locally_admissible(disc, n, p))
}

/// Smallest B in [0, 2N) with B² ≡ D (mod 4N).
pub fn admissible(disc: &Discriminant, n: i64) -> Result<Residue, InvariantError> {
    if n < 2 {
        return Err(InvariantError::BadLevel(n));
    }
    let d = disc.value();
    let local = failing_prime(disc, n);
    let direct = sqrt_mod(d, 4 * n);
    debug_assert_eq!(local.is_none(), direct.is_some(), "local and global tests disagree for D={d}, N={n}");
    match (local, direct) {
        (None, Some(b)) => Ok(Residue::new(b.value_i64() % (2 * n), 2 * n)),
        (Some(p), _) => Err(InvariantError::Inadmissible { n, d, p }),
        (None, None) => unreachable!("D ≡ 0, 1 mod 4 is a square modulo 4"),
    }
}

/// Generic character values at a prime p ∤ 2cD: (p/q) for odd q | D, then
/// χ₄ and/or χ₈ as dictated by D/4 mod 8.
pub fn generic_characters(disc: &Discriminant, p: i64) -> Result<Vec<i32>, InvariantError> {
    let d = disc.value();
    if crate::numeric::gcd(p, 2 * disc.conductor() * d) != 1 {
        return Err(InvariantError::CharacterPrime { d, p });
    }
    let mut out: Vec<i32> = prime_divisors(d).into_iter().filter(|&q| q != 2).map(|q| kronecker(p, q)).collect();
    let chi4 = kronecker(-4, p);
    let chi8 = kronecker(8, p);
    if d % 4 == 0 {
        match modp(d / 4, 8) {
            3 | 4 | 7 => out.push(chi4),
            2 => out.push(chi8),
            6 => out.push(chi4 * chi8),
            0 => {
                out.push(chi4);
                out.push(chi8);
            }
            _ => {}
        }
    }
    Ok(out)
}

/// A single condition r:R.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BCondition {
    pub r: i64,
    pub modulus: i64,
}

impl BCondition {
    pub const TRIVIAL: BCondition = BCondition { r: 0, modulus: 1 };

    pub fn new(r: i64, modulus: i64) -> Self {
        BCondition { r: modp(r, modulus), modulus }
    }

    /// Whether B² ≡ D + 4rN (mod 4RN).
    pub fn holds(&self, n: i64, d: i64, b: i64) -> bool {
        let m = 4 * self.modulus * n;
        modp(b * b - d - 4 * self.r * n, m) == 0
    }

    /// Whether some B satisfies the condition.
    pub fn solvable(&self, n: i64, d: i64) -> bool {
        sqrt_mod(d + 4 * self.r * n, 4 * self.modulus * n).is_some()
    }
}

impl std::fmt::Display for BCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.r, self.modulus)
    }
}

/// Intersection of an optional 3-adic and an optional 2-adic condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Condition {
    pub three: Option<BCondition>,
    pub two: Option<BCondition>,
}

impl Condition {
    pub const TRIVIAL: Condition = Condition { three: None, two: None };

    /// The combined condition r:R with R = R₃R₂ and r by CRT.
    pub fn combined(&self) -> BCondition {
        let a = self.three.unwrap_or(BCondition::TRIVIAL);
        let b = self.two.unwrap_or(BCondition::TRIVIAL);
        let m = a.modulus * b.modulus;
        let r = (0..m).find(|x| x % a.modulus == a.r && x % b.modulus == b.r).expect("coprime moduli");
        BCondition::new(r, m)
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.two, self.three) {
            (None, None) => write!(f, "0:1"),
            (Some(x), None) | (None, Some(x)) => write!(f, "{x}"),
            (Some(x), Some(y)) => write!(f, "{x}∩{y}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RealityClass {
    RationalPoly,
    RationalAfterSqrtD,
    ComplexQuadratic,
}

impl RealityClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            RealityClass::RationalPoly => "rationalPoly",
            RealityClass::RationalAfterSqrtD => "rationalAfterSqrtD",
            RealityClass::ComplexQuadratic => "complexQuadratic",
        }
    }
}

impl std::fmt::Display for RealityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Reality of the class polynomial for the exponent e and anchor B.
pub fn classify_reality(n: i64, d: i64, e: i64, b: i64) -> RealityClass {
    let s = canonical_exponents(n).s;
    assert_eq!(s % e, 0, "e must divide s");
    let k = s / e;
    if d % n == 0 && b % (k * n) == 0 {
        RealityClass::RationalPoly
    } else if modp(n, 8) != 1 && d % n == 0 && k % 2 == 0 && b % (k / 2 * n) == 0 && b % (k * n) != 0 {
        RealityClass::RationalAfterSqrtD
    } else {
        RealityClass::ComplexQuadratic
    }
}

/// Outcome of exponent selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantChoice {
    pub n: i64,
    pub d: i64,
    pub e: i64,
    pub s: i64,
    pub condition: Condition,
    /// Anchor B modulo 2M.
    pub b: Residue,
    pub level: i64,
    pub propositions: Vec<PropCase>,
    pub reality: RealityClass,
}

impl InvariantChoice {
    pub fn b_value(&self) -> i64 {
        self.b.value_i64()
    }
}

/// 2-adic and 3-adic divisibility of θ guaranteed without further conditions.
fn baseline_xi_eta(n: i64) -> (u32, u32) {
    let eta = u32::from((n - 1) % 3 == 0);
    let xi = if n % 2 == 1 { valuation(n - 1, 2).min(3) } else { 0 };
    (xi, eta)
}

/// Smallest admissible exponent when θ is known to be divisible by
/// 2^ξ·3^η.
fn exponent_from(n: i64, xi: u32, eta: u32) -> i64 {
    let e = (1i64 << (3 - xi.min(3))) * 3i64.pow(1 - eta.min(1));
    if e % 2 == 1 && !is_square(n) {
        2 * e
    } else {
        e
    }
}

/// Exponent reached by the given propositions.
pub fn exponent_for(n: i64, three: Option<&Gain>, two: Option<&Gain>) -> i64 {
    let (mut xi, mut eta) = baseline_xi_eta(n);
    if three.is_some() {
        eta = 1;
    }
    if let Some(g) = two {
        let gained = match g.case.prop {
            PropName::Prop21 => valuation(n - 1, 2) + 1,
            PropName::Prop20 => 1,
            PropName::Prop44 | PropName::Prop412 => 2,
            PropName::Prop8 => 3,
            _ => unreachable!("not a 2-adic proposition"),
        };
        xi = xi.max(gained);
    }
    exponent_from(n, xi, eta)
}

/// Candidate 3-adic and 2-adic propositions that fire for (N, D).
fn candidates(n: i64, d: i64) -> (Vec<(BCondition, Gain)>, Vec<(BCondition, Gain)>) {
    let mut three = Vec::new();
    for prop in [PropName::Prop30, PropName::Prop32] {
        for r in 1..3 {
            let c = BCondition::new(r, 3);
            if let Some(g) = prop_applies(prop, n, d, c) {
                three.push((c, g));
            }
        }
    }
    let mut two = Vec::new();
    let conds: &[(PropName, &[i64], i64)] = &[
        (PropName::Prop21, &[0], 1),
        (PropName::Prop20, &[1, 0], 2),
        (PropName::Prop412, &[3], 4),
        (PropName::Prop44, &[1], 4),
        (PropName::Prop8, &[3, 7, 1, 5], 8),
    ];
    for &(prop, rs, m) in conds {
        for &r in rs {
            let c = BCondition::new(r, m);
            if let Some(g) = prop_applies(prop, n, d, c) {
                two.push((c, g));
            }
        }
    }
    (three, two)
}

/// All (e, condition, propositions) reachable for (N, D), restricted to
/// combinations where every proposition lowers the exponent and the
/// combined condition on B is solvable.
pub fn reachable(n: i64, d: i64) -> Vec<(i64, Condition, Vec<Gain>)> {
    let (three, two) = candidates(n, d);
    let mut out = Vec::new();
    let base = exponent_for(n, None, None);
    out.push((base, Condition::TRIVIAL, Vec::new()));
    let opt3: Vec<Option<&(BCondition, Gain)>> = std::iter::once(None).chain(three.iter().map(Some)).collect();
    let opt2: Vec<Option<&(BCondition, Gain)>> = std::iter::once(None).chain(two.iter().map(Some)).collect();
    for a in &opt3 {
        for b in &opt2 {
            if a.is_none() && b.is_none() {
                continue;
            }
            let ga = a.map(|x| &x.1);
            let gb = b.map(|x| &x.1);
            let e = exponent_for(n, ga, gb);
            if ga.is_some() && e >= exponent_for(n, None, gb) {
                continue;
            }
            if gb.is_some() && e >= exponent_for(n, ga, None) {
                continue;
            }
            let cond = Condition { three: a.map(|x| x.0), two: b.map(|x| x.0) };
            let nontrivial = |c: Option<BCondition>| c.filter(|c| c.modulus > 1);
            let cond = Condition { three: nontrivial(cond.three), two: nontrivial(cond.two) };
            if !cond.combined().solvable(n, d) {
                continue;
            }
            let gains: Vec<Gain> = ga.into_iter().chain(gb).cloned().collect();
            out.push((e, cond, gains));
        }
    }
    out
}

fn prop_rank(gains: &[Gain]) -> Vec<(u8, char)> {
    gains.iter().map(|g| (g.case.prop.order(), g.case.case.unwrap_or(' '))).collect()
}

/// Picks the minimal exponent for (N, D), preferring smaller R and then
/// smaller r among equal exponents.
pub fn select_invariant(n: i64, d: i64) -> Result<InvariantChoice, InvariantError> {
    let disc = Discriminant::new(d).map_err(|_| InvariantError::Inadmissible { n, d, p: 2 })?;
    admissible(&disc, n)?;
    let s = canonical_exponents(n).s;
    let best = reachable(n, d)
        .into_iter()
        .min_by_key(|(e, c, g)| {
            let k = c.combined();
            (*e, k.modulus, k.r, prop_rank(g))
        })
        .expect("the trivial choice is always reachable");
    let (e, condition, gains) = best;
    let level = s / e * n;
    let b = witness(n, d, &condition, level);
    Ok(InvariantChoice {
        n,
        d,
        e,
        s,
        condition,
        b: Residue::new(b, 2 * level),
        level,
        propositions: gains.iter().map(|g| g.case).collect(),
        reality: classify_reality(n, d, e, b),
    })
}

/// Smallest B in [0, 2M) satisfying the condition, with multiples of M
/// preferred so that the polynomial can come out rational.
fn witness(n: i64, d: i64, cond: &Condition, level: i64) -> i64 {
    let k = cond.combined();
    for b in [0, level] {
        if k.holds(n, d, b) {
            return b;
        }
    }
    (0..2 * level).find(|&b| k.holds(n, d, b)).expect("condition solvable modulo 4RN with R | s/e")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    #[test]
    fn exponents() {
        let ex = |n| {
            let e = canonical_exponents(n);
            (e.t, e.s)
        };
        assert_eq!(ex(2), (24, 24));
        assert_eq!(ex(9), (3, 3));
        assert_eq!(ex(5), (6, 6));
        assert_eq!(ex(7), (4, 4));
        assert_eq!(ex(17), (3, 6));
        assert_eq!(ex(25), (1, 1));
        for n in 2..200 {
            let e = canonical_exponents(n);
            assert_eq!(24 % e.s, 0);
            assert_eq!(exponent_for(n, None, None), e.s, "N={n}");
        }
    }

    #[test]
    fn admissibility() {
        assert_eq!(admissible(&disc(-11), 5).unwrap().value_i64(), 3);
        assert_eq!(admissible(&disc(-3), 5), Err(InvariantError::Inadmissible { n: 5, d: -3, p: 5 }));
        assert_eq!(admissible(&disc(-24), 6).unwrap().value_i64(), 0);
    }

    #[test]
    fn admissibility_local_global_agree() {
        for d in (-3000..-2).filter(|&d| modp(d, 4) < 2) {
            let dd = disc(d);
            for n in 2..60 {
                assert_eq!(failing_prime(&dd, n).is_none(), sqrt_mod(d, 4 * n).is_some(), "D={d} N={n}");
            }
        }
    }

    #[test]
    fn characters() {
        assert_eq!(generic_characters(&disc(-4), 5).unwrap(), vec![1]);
        assert_eq!(generic_characters(&disc(-32), 7).unwrap(), vec![-1, 1]);
        assert!(generic_characters(&disc(-15), 2).is_err());
    }

    #[test]
    fn characters_trivial_on_principal_primes() {
        // primes of the form x² + xy + ((1−D)/4)y² or x² + (−D/4)y² lie in the principal genus
        for d in [-15i64, -20, -24, -32, -36, -56, -84, -120, -160, -420] {
            let dd = disc(d);
            for x in 1..40i64 {
                for y in 1..20i64 {
                    let p = if d % 4 == 0 { x * x - d / 4 * y * y } else { x * x + x * y + (1 - d) / 4 * y * y };
                    if crate::numeric::is_prime(p as u64) && crate::numeric::gcd(p, 2 * d) == 1 {
                        assert!(generic_characters(&dd, p).unwrap().iter().all(|&c| c == 1), "D={d} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn selection_examples() {
        let c = select_invariant(5, -11).unwrap();
        assert_eq!((c.e, c.condition.to_string(), c.b_value(), c.level), (2, "1:3".into(), 3, 15));
        let c = select_invariant(6, -12).unwrap();
        assert_eq!((c.e, c.condition.to_string()), (24, "0:1".into()));
        let c = select_invariant(4, -7).unwrap();
        assert_eq!((c.e, c.condition.to_string()), (1, "3:8".into()));
        let c = select_invariant(2, -72).unwrap();
        assert_eq!((c.e, c.condition.to_string()), (6, "3:4".into()));
        assert!(select_invariant(5, -3).is_err());
    }

    #[test]
    fn reality_examples() {
        assert_eq!(classify_reality(3, -24, 12, 12), RealityClass::RationalPoly);
        assert_eq!(classify_reality(2, -72, 6, 12), RealityClass::RationalAfterSqrtD);
        assert_eq!(classify_reality(5, -11, 2, 3), RealityClass::ComplexQuadratic);
    }

    #[test]
    fn witness_meets_forced_congruences() {
        for n in 2..=25 {
            for d in (-2000..-2).filter(|&d| modp(d, 4) < 2) {
                let Ok(c) = select_invariant(n, d) else { continue };
                let b = c.b_value();
                assert!(c.condition.combined().holds(n, d, b));
                assert_eq!(modp(b * b - d, 4 * n), 0);
                assert_eq!(c.s % c.e, 0);
                for g in c.propositions.iter() {
                    if let Some(force) = props::forced_for(*g, n) {
                        assert!(force.check(b), "N={n} D={d} {g} B={b} {force:?}");
                    }
                }
            }
        }
    }
}
