//! Sufficient conditions for θ to be divisible by 3 or by a power of 2.

use super::{BCondition, InvariantError};
use crate::numeric::{is_square, modp, odd_part};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropName {
    Prop30,
    Prop32,
    Prop21,
    Prop20,
    Prop44,
    Prop412,
    Prop8,
}

impl PropName {
    pub const ALL: [PropName; 7] = [
        PropName::Prop30,
        PropName::Prop32,
        PropName::Prop21,
        PropName::Prop20,
        PropName::Prop44,
        PropName::Prop412,
        PropName::Prop8,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PropName::Prop30 => "PROP30",
            PropName::Prop32 => "PROP32",
            PropName::Prop21 => "PROP21",
            PropName::Prop20 => "PROP20",
            PropName::Prop44 => "PROP44",
            PropName::Prop412 => "PROP412",
            PropName::Prop8 => "PROP8",
        }
    }

    pub fn is_three_adic(&self) -> bool {
        matches!(self, PropName::Prop30 | PropName::Prop32)
    }

    /// Position in the row order of the condition tables.
    pub(crate) fn order(&self) -> u8 {
        match self {
            PropName::Prop30 | PropName::Prop32 => 0,
            PropName::Prop21 => 1,
            PropName::Prop20 => 2,
            PropName::Prop412 => 3,
            PropName::Prop44 => 4,
            PropName::Prop8 => 5,
        }
    }
}

impl std::str::FromStr for PropName {
    type Err = InvariantError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "PROP30" => PropName::Prop30,
            "PROP32" => PropName::Prop32,
            "PROP21" => PropName::Prop21,
            "PROP20" => PropName::Prop20,
            "PROP44" => PropName::Prop44,
            "PROP412" => PropName::Prop412,
            "PROP8" => PropName::Prop8,
            _ => return Err(InvariantError::UnknownProposition(s.to_string())),
        })
    }
}

/// A proposition together with the sub-case that fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropCase {
    pub prop: PropName,
    pub case: Option<char>,
}

impl std::fmt::Display for PropCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.prop.as_str())?;
        if let Some(c) = self.case {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Congruence on B implied by a proposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BForce {
    /// m | B
    Divisible(i64),
    /// m ∤ B
    NotDivisible(i64),
    /// m ∥ B, for m a power of 2
    Exactly(i64),
}

impl BForce {
    pub fn check(&self, b: i64) -> bool {
        match *self {
            BForce::Divisible(m) => b % m == 0,
            BForce::NotDivisible(m) => b % m != 0,
            BForce::Exactly(m) => b % m == 0 && b % (2 * m) != 0,
        }
    }
}

/// What a proposition yields: θ becomes divisible by `divisor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gain {
    pub divisor: i64,
    pub case: PropCase,
    pub forced: Option<BForce>,
}

fn v2(n: i64) -> u32 {
    odd_part(n).0
}

/// B-congruence stated by the proposition case, if any.
pub fn forced_for(case: PropCase, n: i64) -> Option<BForce> {
    use PropName::*;
    match (case.prop, case.case) {
        (Prop30, Some('a')) | (Prop32, _) => Some(BForce::Divisible(3)),
        (Prop30, Some('b')) => Some(BForce::NotDivisible(3)),
        (Prop412, Some('b')) => Some(BForce::Divisible(4)),
        (Prop412, Some('c')) => Some(BForce::Exactly(2)),
        (Prop8, Some('b')) if v2(n) == 2 => Some(BForce::Exactly(4)),
        (Prop8, Some('b')) => Some(BForce::Divisible(8)),
        (Prop8, Some('c')) if v2(n) == 2 => Some(BForce::Divisible(8)),
        (Prop8, Some('c')) => Some(BForce::Exactly(4)),
        _ => None,
    }
}

/// Whether `prop` guarantees extra divisibility of θ for (N, D) under the
/// condition `cond`, which must also be solvable in B.
pub fn prop_applies(prop: PropName, n: i64, d: i64, cond: BCondition) -> Option<Gain> {
    use PropName::*;
    let (r, m) = (cond.r, cond.modulus);
    let d8 = modp(d, 8);
    let case = match prop {
        Prop30 if n % 3 == 0 && m == 3 => match r {
            1 if d % 3 == 0 => Some('a'),
            2 if modp(d, 3) == 1 => Some('b'),
            _ => None,
        },
        Prop32 if modp(n, 3) == 2 && m == 3 && (r == 1 || r == 2) && modp(d, 3) == r => Some(' '),
        Prop21 if n % 2 == 1 && d % 2 != 0 && m == 1 => Some(' '),
        Prop20 if n % 2 == 0 && m == 2 => match r {
            1 => Some('a'),
            0 if d8 == 1 => Some('b'),
            _ => None,
        },
        Prop44 if n % 2 == 0 && m == 4 && r == 1 => {
            if d8 == 1 {
                Some('a')
            } else if d % 16 == 0 {
                Some('b')
            } else if v2(n) == 1 && v2(d) == 2 {
                Some('c')
            } else {
                None
            }
        }
        Prop412 if n % 2 == 0 && m == 4 && r == 3 => {
            if d8 == 1 {
                Some('a')
            } else if v2(d) == 3 && v2(n) == 1 {
                Some('b')
            } else if v2(d) == 2 && n % 4 == 0 {
                Some('c')
            } else {
                None
            }
        }
        Prop8 if n % 2 == 0 && is_square(n) && m == 8 => match r {
            3 | 7 if d8 == 1 => Some('a'),
            1 if d % 32 == 0 => Some('b'),
            5 if v2(d) == 4 => Some('c'),
            _ => None,
        },
        _ => None,
    }?;
    if !cond.solvable(n, d) {
        return None;
    }
    let case = PropCase { prop, case: (case != ' ').then_some(case) };
    let divisor = match prop {
        Prop30 | Prop32 => 3,
        Prop21 | Prop20 => 2,
        Prop44 | Prop412 => 4,
        Prop8 => 8,
    };
    Some(Gain { divisor, case, forced: forced_for(case, n) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let g = prop_applies(PropName::Prop32, 5, -11, BCondition::new(1, 3)).unwrap();
        assert_eq!((g.divisor, g.forced), (3, Some(BForce::Divisible(3))));
        let g = prop_applies(PropName::Prop21, 7, -3, BCondition::TRIVIAL).unwrap();
        assert_eq!(g.divisor, 2);
        let g = prop_applies(PropName::Prop44, 6, -15, BCondition::new(1, 4)).unwrap();
        assert_eq!((g.divisor, g.case.case), (4, Some('a')));
        assert!(prop_applies(PropName::Prop32, 5, -40, BCondition::new(1, 3)).is_none());
        assert!("PROP99".parse::<PropName>().is_err());
        assert_eq!("prop412".parse::<PropName>().unwrap(), PropName::Prop412);
    }
}
