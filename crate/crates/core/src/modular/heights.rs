use std::fmt;

use num_rational::Ratio;

use super::{degrees, psi, ModularError, S_of_N};
use crate::numeric::{gcd, is_prime, is_square};

/// 𝔴_N^e, or the double η-quotient 𝔴_{p₁,p₂}^e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FuncDesc {
    Double { p1: i64, p2: i64, e: i64 },
    Single { n: i64, e: i64 },
}

impl fmt::Display for FuncDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (base, e) = match self {
            FuncDesc::Single { n, e } => (format!("w_{n}"), *e),
            FuncDesc::Double { p1, p2, e } => (format!("w_{p1},{p2}"), *e),
        };
        if e == 1 {
            write!(f, "{base}")
        } else {
            write!(f, "{base}^{e}")
        }
    }
}

impl std::str::FromStr for FuncDesc {
    type Err = ModularError;

    /// Parses `w_N`, `w_N^e`, `w_p,q` or `w_p,q^e`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModularError::BadDescriptor(s.to_string());
        let body = s.trim().strip_prefix("w_").ok_or_else(bad)?;
        let (base, e) = match body.split_once('^') {
            Some((b, e)) => (b, e.parse::<i64>().map_err(|_| bad())?),
            None => (body, 1),
        };
        let nums: Vec<i64> = base.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let d = match nums.as_slice() {
            [n] => FuncDesc::Single { n: *n, e },
            [p1, p2] => FuncDesc::Double { p1: *p1.min(p2), p2: *p1.max(p2), e },
            _ => return Err(bad()),
        };
        d.validate().map(|_| d)
    }
}

impl FuncDesc {
    fn validate(&self) -> Result<(), ModularError> {
        let ok = match *self {
            FuncDesc::Single { n, e } => n >= 2 && e >= 1,
            FuncDesc::Double { p1, p2, e } => is_prime(p1 as u64) && is_prime(p2 as u64) && e >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(ModularError::BadDescriptor(self.to_string()))
        }
    }
}

/// σ = 24/gcd(24, (p₁ − 1)(p₂ − 1)).
pub fn sigma(p1: i64, p2: i64) -> i64 {
    24 / gcd(24, (p1 - 1) * (p2 - 1))
}

/// c(f) = deg_J Φ[f] / deg_F Φ[f] as an exact rational.
pub fn height_factor(f: &FuncDesc) -> Result<Ratio<i64>, ModularError> {
    f.validate()?;
    Ok(match *f {
        FuncDesc::Single { n, e } => Ratio::new(e * (n - 1 + S_of_N(n)), 24 * psi(n)),
        FuncDesc::Double { p1, p2, e } if p1 == p2 => Ratio::new(e * (p1 - 1) * (p1 - 1), 12 * p1 * (p1 + 1)),
        FuncDesc::Double { p1, p2, e } => Ratio::new(e * (p1 - 1) * (p2 - 1), 12 * (p1 + 1) * (p2 + 1)),
    })
}

/// Degree in J of the modular polynomial of the full power.
pub fn deg_j(f: &FuncDesc) -> i64 {
    match *f {
        FuncDesc::Single { n, .. } => degrees(n).expect("valid level").deg_j,
        FuncDesc::Double { p1, p2, .. } => sigma(p1, p2) * (p1 - 1) * (p2 - 1) / 12,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightEntry {
    pub func: FuncDesc,
    pub gain: Ratio<i64>,
    pub deg_j: i64,
}

/// Powers 𝔴_N^e (e | s) listed in the comparison: N a square, e even,
/// 3 | e, and Weber's 𝔣₁ = 𝔴₂ itself.
fn single_listed(n: i64, e: i64) -> bool {
    is_square(n) || e % 2 == 0 || e % 3 == 0 || n == 2
}

/// Double quotients are only listed for p₁p₂ up to this bound.
pub const DOUBLE_LEVEL_BOUND: i64 = 200;

/// All functions with gain 1/c(f) ≥ `min_gain` and deg_J ≤ `max_deg_j`,
/// by decreasing gain; double quotients first among equal gains.
pub fn comparison_table(min_gain: Ratio<i64>, max_deg_j: i64) -> Vec<HeightEntry> {
    let mut out = Vec::new();
    // deg_J ≥ (N − 1)/24 bounds N
    for n in 2..=24 * max_deg_j + 1 {
        let s = degrees(n).expect("valid level").s;
        for e in (1..=s).filter(|e| s % e == 0 && single_listed(n, *e)) {
            out.push(FuncDesc::Single { n, e });
        }
    }
    let primes: Vec<i64> = (2..=DOUBLE_LEVEL_BOUND / 2).filter(|&p| is_prime(p as u64)).collect();
    for &p1 in &primes {
        for &p2 in primes.iter().filter(|&&p| p >= p1 && p1 * p <= DOUBLE_LEVEL_BOUND) {
            out.push(FuncDesc::Double { p1, p2, e: sigma(p1, p2) });
        }
    }
    let mut rows: Vec<HeightEntry> = out
        .into_iter()
        .map(|func| HeightEntry { func, gain: height_factor(&func).expect("well formed").recip(), deg_j: deg_j(&func) })
        .filter(|h| h.gain >= min_gain && h.deg_j <= max_deg_j)
        .collect();
    rows.sort_by(|a, b| b.gain.cmp(&a.gain).then(a.func.cmp(&b.func)));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Ratio<i64> {
        Ratio::new(a, b)
    }

    #[test]
    fn examples() {
        assert_eq!(height_factor(&"w_2".parse().unwrap()).unwrap(), r(1, 72));
        assert_eq!(height_factor(&"w_25".parse().unwrap()).unwrap(), r(1, 30));
        assert_eq!(height_factor(&"w_5,7".parse().unwrap()).unwrap(), r(1, 24));
        assert!("w_4,7".parse::<FuncDesc>().is_err());
        assert!("v_3".parse::<FuncDesc>().is_err());
    }

    #[test]
    fn special_rows_agree_with_general() {
        for l in (2..60i64).filter(|&l| is_prime(l as u64)) {
            let e = 2;
            let f = |n| height_factor(&FuncDesc::Single { n, e }).unwrap();
            assert_eq!(f(l), r(e * (l - 1), 24 * (l + 1)));
            assert_eq!(f(l * l), r(e * (l - 1), 24 * l));
            if l > 3 {
                assert_eq!(deg_j(&FuncDesc::Single { n: l * l, e }) * 24, l * l - 1);
            }
            for p2 in (l + 1..60).filter(|&p| is_prime(p as u64)) {
                assert_eq!(f(l * p2), r(e * (p2 - 1), 24 * (p2 + 1)));
            }
        }
    }

    #[test]
    fn power_rule() {
        let c1 = height_factor(&FuncDesc::Single { n: 13, e: 1 }).unwrap();
        let c2 = height_factor(&FuncDesc::Single { n: 13, e: 2 }).unwrap();
        assert_eq!(c2, c1 * 2);
    }

    #[test]
    fn table_ends() {
        let t = comparison_table(r(13, 1), 20);
        assert_eq!(t[0].func.to_string(), "w_2");
        assert_eq!((t[0].gain, t[0].deg_j), (r(72, 1), 1));
        let last = t.last().unwrap();
        assert_eq!((last.func.to_string(), last.gain, last.deg_j), ("w_23^2".to_string(), r(144, 11), 11));
    }
}
