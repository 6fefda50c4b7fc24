//! Reference tables shipped as CSV fixtures, printed at four decimals.
//! Numeric values are compared after identical half-up rounding, so the
//! agreement bound is 5e-5 absolute.

use crate::preorders::PreorderLabel;
use crate::{AfError, Result};

/// Absolute agreement bound for 4-decimal table values.
pub const TABLE_TOL: f64 = 5e-5;

/// One parsed numeric fixture: a header row and rows of f64 columns,
/// the first column being the period position.
#[derive(Debug, Clone)]
pub struct GoldenTable {
    pub name: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl GoldenTable {
    /// Column index by header name.
    pub fn column(&self, header: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == header)
            .ok_or_else(|| AfError::Config(format!("{}: no column '{header}'", self.name)))
    }
}

/// One row of a relation fixture: a pair of positions and the expected
/// verdicts for the five tabulated labels.
#[derive(Debug, Clone)]
pub struct GoldenRelations {
    pub name: &'static str,
    pub labels: Vec<PreorderLabel>,
    pub rows: Vec<(i64, i64, Vec<bool>)>,
}

fn parse_table(name: &'static str, text: &str) -> GoldenTable {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let columns: Vec<String> = lines
        .next()
        .expect("fixture has a header")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|cell| cell.parse::<f64>().expect("numeric fixture cell"))
                .collect()
        })
        .collect();
    GoldenTable {
        name,
        columns,
        rows,
    }
}

fn parse_relations(name: &'static str, text: &str) -> GoldenRelations {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines.next().expect("fixture has a header").split(',').collect();
    let labels = header[2..]
        .iter()
        .map(|s| s.parse::<PreorderLabel>().expect("label header"))
        .collect();
    let rows = lines
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            let x = cells[0].parse().expect("x cell");
            let y = cells[1].parse().expect("y cell");
            let verdicts = cells[2..]
                .iter()
                .map(|c| match *c {
                    "true" => true,
                    "false" => false,
                    other => panic!("bad verdict cell {other}"),
                })
                .collect();
            (x, y, verdicts)
        })
        .collect();
    GoldenRelations { name, labels, rows }
}

/// The ld table: n = 6, window 2; columns for the triple's arithmetic
/// averages and the base function's geometric and harmonic ones.
pub fn ld_table() -> GoldenTable {
    parse_table("ld_n6_m2", include_str!("../fixtures/ld_n6_m2.csv"))
}

/// The totient table: n = 8, all three averages at windows 3 and 5.
pub fn phi_table() -> GoldenTable {
    parse_table("phi_n8_m3_m5", include_str!("../fixtures/phi_n8_m3_m5.csv"))
}

/// The reciprocal Chebyshev table: n = 17, window 5.
pub fn htheta_table() -> GoldenTable {
    parse_table("htheta_n17_m5", include_str!("../fixtures/htheta_n17_m5.csv"))
}

/// Relation rows of the ld triple at n = 6, window 2.
pub fn ld_relations() -> GoldenRelations {
    parse_relations(
        "relations_ld_n6_m2",
        include_str!("../fixtures/relations_ld_n6_m2.csv"),
    )
}

/// Relation rows of the divisor-count triple at n = 13, window 2.
pub fn tau_relations() -> GoldenRelations {
    parse_relations(
        "relations_tau_n13_m2",
        include_str!("../fixtures/relations_tau_n13_m2.csv"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        let t = ld_table();
        assert_eq!(t.rows.len(), 6);
        assert_eq!(t.columns.len(), 7);
        assert_eq!(t.column("f_gm").unwrap(), 5);
        assert!(t.column("nope").is_err());

        assert_eq!(phi_table().rows.len(), 8);
        assert_eq!(htheta_table().rows.len(), 17);

        let r = ld_relations();
        assert_eq!(r.rows.len(), 4);
        assert_eq!(r.labels.len(), 5);
        assert_eq!(r.labels[0].to_string(), "f+");
        assert_eq!(tau_relations().rows.len(), 2);
    }
}
