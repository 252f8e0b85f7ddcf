//! Reference tables, regenerated from the library.
//!
//! Each table is rendered as a header line followed by one row per line,
//! cells separated by ` | `. The checked-in files under `golden/` hold the
//! expected output behind `#` comment lines.

use num_bigint::BigUint;
use pellform::{enumerate_family, f_poly_coeffs, f_seq, make_entry, FamilyEntry, Result};

pub const TABLE_NAMES: [&str; 4] = ["intro-j2", "intro-j3", "fn", "main"];

pub const GOLDEN_INTRO_J2: &str = include_str!("../golden/intro-j2.txt");
pub const GOLDEN_INTRO_J3: &str = include_str!("../golden/intro-j3.txt");
pub const GOLDEN_FN: &str = include_str!("../golden/fn.txt");
pub const GOLDEN_MAIN: &str = include_str!("../golden/main.txt");

/// `(m, k, ell)` of every row of the main table, in order.
pub const MAIN_ROWS: [(usize, u64, u64); 25] = [
    (3, 1, 0),
    (3, 1, 1),
    (3, 1, 2),
    (3, 1, 3),
    (3, 2, 4),
    (3, 3, 0),
    (3, 4, 1),
    (3, 5, 0),
    (4, 1, 0),
    (4, 1, 1),
    (4, 2, 1),
    (4, 3, 0),
    (5, 2, 2),
    (5, 2, 4),
    (5, 2, 6),
    (5, 4, 2),
    (6, 1, 0),
    (6, 1, 1),
    (6, 2, 1),
    (7, 1, 0),
    (7, 2, 2),
    (9, 1, 0),
    (10, 1, 0),
    (12, 1, 0),
    (13, 1, 0),
];

/// `(k, ell)` of the period-three rows.
pub const INTRO_J3_ROWS: [(u64, u64); 7] = [(2, 1), (2, 2), (2, 3), (4, 1), (4, 2), (6, 1), (8, 1)];

/// Golden text with its `#` comment lines removed.
pub fn strip_comments(golden: &str) -> String {
    golden
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

fn render(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(" | ");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(" | "));
        out.push('\n');
    }
    out
}

/// Period two, every `e <= 4`, sorted by `(e, k)`.
pub fn intro_j2() -> Result<String> {
    let mut entries: Vec<FamilyEntry> = Vec::new();
    for k in 1..=8u64 {
        let fam = enumerate_family(2, &BigUint::from(k), 8)?;
        entries.extend(
            fam.entries
                .into_iter()
                .filter(|e| e.e <= BigUint::from(4u32)),
        );
    }
    entries.sort_by(|a, b| (&a.e, &a.params.k).cmp(&(&b.e, &b.params.k)));
    Ok(render(
        &["e", "k", "d", "x", "y"],
        entries.iter().map(|e| {
            vec![
                e.e.to_string(),
                e.params.k.to_string(),
                e.d.to_string(),
                e.x.to_string(),
                e.y.to_string(),
            ]
        }),
    ))
}

pub fn intro_j3() -> Result<String> {
    let rows = INTRO_J3_ROWS
        .iter()
        .map(|&(k, ell)| make_entry(3, &BigUint::from(k), &BigUint::from(ell)))
        .collect::<Result<Vec<_>>>()?;
    Ok(render(
        &["e", "k", "d", "x", "y"],
        rows.iter().map(|e| {
            vec![
                e.e.to_string(),
                e.params.k.to_string(),
                e.d.to_string(),
                e.x.to_string(),
                e.y.to_string(),
            ]
        }),
    ))
}

/// `f_{-2} ..= f_11`, symbolic in `k` unless a value is given.
pub fn fn_table(k: Option<&BigUint>) -> Result<String> {
    let cells: Vec<String> = match k {
        Some(k) => f_seq(k, 11)?.values.iter().map(|v| v.to_string()).collect(),
        None => ["1".to_string(), "0".to_string()]
            .into_iter()
            .chain((0..=11).map(|n| f_poly_coeffs(n).render()))
            .collect(),
    };
    Ok(render(
        &["n", "f_n"],
        cells
            .into_iter()
            .zip(-2i64..)
            .map(|(v, n)| vec![n.to_string(), v]),
    ))
}

pub fn main_table() -> Result<String> {
    let rows = MAIN_ROWS
        .iter()
        .map(|&(m, k, ell)| make_entry(m + 1, &BigUint::from(k), &BigUint::from(ell)))
        .collect::<Result<Vec<_>>>()?;
    Ok(render(
        &["m", "k", "f_{m-1}", "f_m", "ell", "e", "d", "f_m*e+f_{m-1}"],
        rows.iter().map(|e| {
            vec![
                e.params.m.to_string(),
                e.params.k.to_string(),
                e.f_m_minus_1.to_string(),
                e.f_m.to_string(),
                e.params.ell.to_string(),
                e.e.to_string(),
                e.d.to_string(),
                e.x.to_string(),
            ]
        }),
    ))
}

/// Renders a table by name; `None` for an unknown name.
pub fn table(name: &str, k: Option<&BigUint>) -> Option<Result<String>> {
    Some(match name {
        "intro-j2" => intro_j2(),
        "intro-j3" => intro_j3(),
        "fn" => fn_table(k),
        "main" => main_table(),
        _ => return None,
    })
}
