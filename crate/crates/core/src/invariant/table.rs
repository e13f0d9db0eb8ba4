//! Condition tables: for every residue class of D modulo 4·R·N, the minimal
//! exponent and the condition on B achieving it.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{canonical_exponents, reachable, BCondition, Condition, PropCase};
use crate::numeric::{is_square, modp, sqrt_mod};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub condition: Condition,
    pub residues: Vec<i64>,
    pub e: i64,
    pub propositions: Vec<PropCase>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionTable {
    pub n: i64,
    pub s: i64,
    pub modulus: i64,
    pub rows: Vec<TableRow>,
}

/// Largest R that any proposition can impose at level N.
fn max_r(n: i64) -> i64 {
    let r3 = if modp(n, 3) != 1 { 3 } else { 1 };
    let r2 = match (n % 2 == 0, is_square(n)) {
        (true, true) => 8,
        (true, false) => 4,
        _ => 1,
    };
    r3 * r2
}

/// Best (e, condition, propositions) for a single D.
pub(crate) fn best_choice(n: i64, d: i64) -> (i64, Condition, Vec<PropCase>) {
    let (e, c, g) = reachable(n, d)
        .into_iter()
        .min_by_key(|(e, c, g)| {
            let k = c.combined();
            (*e, k.modulus, k.r, super::prop_rank(g))
        })
        .expect("trivial choice");
    (e, c, g.iter().map(|x| x.case).collect())
}

fn row_key(row: &TableRow) -> (i64, i64, u8, char, i64) {
    let r3 = row.condition.three.map_or(0, |c| c.r);
    let two = row.propositions.iter().find(|p| !p.prop.is_three_adic());
    let (ord, case) = two.map_or((0, ' '), |p| (p.prop.order(), p.case.unwrap_or(' ')));
    let r2 = row.condition.two.map_or(0, |c: BCondition| c.r);
    (-row.e, r3, ord, case, r2)
}

pub fn generate_condition_table(n: i64) -> ConditionTable {
    let s = canonical_exponents(n).s;
    let modulus = 4 * max_r(n) * n;
    let picks: Vec<(i64, (i64, Condition, Vec<PropCase>))> = (0..modulus)
        .into_par_iter()
        .filter(|&x| sqrt_mod(x, 4 * n).is_some())
        .map(|x| (x, best_choice(n, x - modulus)))
        .collect();
    let mut groups: BTreeMap<String, TableRow> = BTreeMap::new();
    for (x, (e, condition, propositions)) in picks {
        let key = format!("{e}|{condition}|{propositions:?}");
        groups
            .entry(key)
            .or_insert_with(|| TableRow { condition, residues: Vec::new(), e, propositions })
            .residues
            .push(x);
    }
    let mut rows: Vec<TableRow> = groups.into_values().collect();
    rows.sort_by_key(row_key);
    ConditionTable { n, s, modulus, rows }
}

impl ConditionTable {
    /// Row containing the residue class of D.
    pub fn row_for(&self, d: i64) -> Option<&TableRow> {
        let x = modp(d, self.modulus);
        self.rows.iter().find(|r| r.residues.contains(&x))
    }
}

/// Renders a residue list, collapsing complete progressions a + km.
pub fn render_residues(residues: &[i64], modulus: i64) -> String {
    if residues.len() > 12 {
        let a = residues[0];
        for m in (1..modulus).filter(|m| modulus % m == 0) {
            if residues.len() as i64 == modulus / m && residues.iter().all(|&x| modp(x - a, m) == 0) {
                return format!("≡ {} mod {}", modp(a, m), m);
            }
        }
    }
    residues.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl std::fmt::Display for ConditionTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "N = {}, s = {}, D mod {}", self.n, self.s, self.modulus)?;
        for row in &self.rows {
            let props: Vec<String> = row.propositions.iter().map(|p| p.to_string()).collect();
            let props = if props.is_empty() { "-".to_string() } else { props.join("+") };
            writeln!(
                f,
                "{} | {} | {} | {}",
                row.condition,
                render_residues(&row.residues, self.modulus),
                row.e,
                props
            )?;
        }
        Ok(())
    }
}

/// One line of the mod-8 analysis of (B/2)² ≡ D/4 + rN (mod 8) for even N
/// and even D: the admissible values of B/2 modulo 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Db4Row {
    pub rn_mod8: i64,
    pub d4_mod8: i64,
    pub b_half_mod4: Vec<i64>,
}

/// All solvable (rN mod 8, D/4 mod 8) pairs with the forced B/2 mod 4.
pub fn db4_rows() -> Vec<Db4Row> {
    let mut out = Vec::new();
    for rn in [0, 2, 4, 6] {
        for d4 in 0..8 {
            let b: Vec<i64> = (0..4).filter(|&h| (0..2).any(|k| modp((h + 4 * k) * (h + 4 * k) - d4 - rn, 8) == 0)).collect();
            if !b.is_empty() {
                out.push(Db4Row { rn_mod8: rn, d4_mod8: d4, b_half_mod4: b });
            }
        }
    }
    out
}
