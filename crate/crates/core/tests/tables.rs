use weber_core::invariant::{
    db4_rows, exponent_for, generate_condition_table, prop_applies, select_invariant, BCondition, Condition, PropName,
};
use weber_core::numeric::sqrt_mod;

/// Minimal exponent and all conditions reaching it, found by trying every
/// proposition with every r:R directly.
fn brute_force(n: i64, d: i64) -> (i64, Vec<String>) {
    let mut three = vec![None];
    let mut two = vec![None];
    for prop in PropName::ALL {
        for m in [1, 2, 3, 4, 8] {
            for r in 0..m {
                if let Some(g) = prop_applies(prop, n, d, BCondition::new(r, m)) {
                    let slot = if prop.is_three_adic() { &mut three } else { &mut two };
                    slot.push(Some((BCondition::new(r, m), g)));
                }
            }
        }
    }
    let mut best = (i64::MAX, Vec::new());
    for a in &three {
        for b in &two {
            let e = exponent_for(n, a.as_ref().map(|x| &x.1), b.as_ref().map(|x| &x.1));
            let keep = |c: Option<BCondition>| c.filter(|c| c.modulus > 1);
            let cond = Condition { three: keep(a.as_ref().map(|x| x.0)), two: keep(b.as_ref().map(|x| x.0)) };
            if !cond.combined().solvable(n, d) {
                continue;
            }
            if e < best.0 {
                best = (e, vec![cond.to_string()]);
            } else if e == best.0 {
                best.1.push(cond.to_string());
            }
        }
    }
    best
}

#[test]
fn tables_agree_with_brute_force() {
    for n in (2..=16).chain([21, 25]) {
        let t = generate_condition_table(n);
        let mut covered = 0;
        for row in &t.rows {
            for &x in &row.residues {
                let (e, conds) = brute_force(n, x - t.modulus);
                assert_eq!(row.e, e, "N={n} D≡{x}");
                assert!(conds.contains(&row.condition.to_string()), "N={n} D≡{x}: {} not in {conds:?}", row.condition);
                covered += 1;
            }
        }
        let squares = (0..t.modulus).filter(|&x| sqrt_mod(x, 4 * n).is_some()).count();
        assert_eq!(covered, squares, "N={n}");
    }
}

#[test]
fn db4_consistency() {
    let db4 = db4_rows();
    for n in [2, 4, 6, 8, 10, 12, 14, 16] {
        let t = generate_condition_table(n);
        for row in &t.rows {
            let Some(two) = row.condition.two else { continue };
            if !row.propositions.iter().any(|p| matches!(p.prop, PropName::Prop44 | PropName::Prop412)) {
                continue;
            }
            for &x in row.residues.iter().filter(|x| *x % 2 == 0) {
                let d = x - t.modulus;
                let b = select_invariant(n, d).unwrap().b_value();
                let rn = (two.r * n).rem_euclid(8);
                let d4 = (d / 4).rem_euclid(8);
                let hit = db4.iter().find(|r| r.rn_mod8 == rn && r.d4_mod8 == d4);
                let hit = hit.unwrap_or_else(|| panic!("N={n} D={d}: no DB4 row for rN≡{rn}, D/4≡{d4}"));
                assert!(hit.b_half_mod4.contains(&(b / 2).rem_euclid(4)), "N={n} D={d} B={b}");
            }
        }
    }
}

#[test]
fn selection_matches_table() {
    for n in [3, 4, 5, 6, 7, 9, 16] {
        let t = generate_condition_table(n);
        for d in (-400i64..0).filter(|d| d.rem_euclid(4) <= 1) {
            let Ok(c) = select_invariant(n, d) else { continue };
            let row = t.row_for(d).unwrap();
            assert_eq!((c.e, c.condition), (row.e, row.condition), "N={n} D={d}");
        }
    }
}
