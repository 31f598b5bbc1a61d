//! Golden metric tables for the built-in piecewise families over GF(2^6),
//! GF(2^10) and GF(2^12), and a cell-by-cell checker.
//!
//! The values are embedded as data so table verification is hermetic. All of
//! them are representation-independent, so any validated field for the right
//! degree reproduces them.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::constructions::{corollary1, corollary2, PiecewiseSpec};
use crate::funcrep::AffineMap;
use crate::gf2n::Field;
use crate::spectra;
use crate::{Error, Result};

/// Identifier of a golden table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TableId {
    /// Inverse-modified Gold over GF(2^6): degree / nonlinearity / delta.
    T2,
    /// Inverse-modified Gold over GF(2^10): degree / nonlinearity / delta.
    T3,
    /// Inverse-modified Bracken-Leander over GF(2^12): degree / NL / delta.
    T4,
    /// Boomerang uniformity of the T2 functions.
    T5,
    /// Boomerang uniformity of the T3 functions.
    T6,
}

impl TableId {
    pub fn parse(text: &str) -> Result<TableId> {
        match text.to_ascii_uppercase().as_str() {
            "T2" => Ok(TableId::T2),
            "T3" => Ok(TableId::T3),
            "T4" => Ok(TableId::T4),
            "T5" => Ok(TableId::T5),
            "T6" => Ok(TableId::T6),
            other => Err(Error::Format(format!(
                "unknown table `{other}` (expected T2..T6)"
            ))),
        }
    }

    pub fn all() -> [TableId; 5] {
        [TableId::T2, TableId::T3, TableId::T4, TableId::T5, TableId::T6]
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One golden row: metric values for the function built from one affine map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub struct RowValues {
    pub degree: Option<u32>,
    pub nonlinearity: Option<u32>,
    pub delta: Option<u32>,
    pub beta: Option<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowReport {
    /// The affine map in recipe syntax, e.g. `w*x^2+w`.
    pub map: String,
    /// Full recipe of the materialized function.
    pub recipe: String,
    pub expected: RowValues,
    pub computed: RowValues,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub table_id: TableId,
    pub n: u32,
    pub s: u32,
    pub nl_bound: i64,
    pub rows: Vec<RowReport>,
    /// Pass only if every cell matches its golden value exactly.
    pub verdict: bool,
}

/// Field parameters of a table family.
pub fn table_shape(id: TableId) -> (u32, u32, u32) {
    // (n, s, k)
    match id {
        TableId::T2 | TableId::T5 => (6, 2, 2),
        TableId::T3 | TableId::T6 => (10, 2, 2),
        TableId::T4 => (12, 4, 3),
    }
}

/// The five affine maps of a table family, in row order.
pub fn table_maps(id: TableId, field: &Field) -> Result<Vec<AffineMap>> {
    let w = field
        .omega()
        .ok_or_else(|| Error::Internal("table fields always have even degree".into()))?;
    let w2 = field.mul(w, w);
    let s = table_shape(id).1;
    let rows: Vec<(Vec<u64>, u64)> = match id {
        TableId::T2 | TableId::T3 | TableId::T5 | TableId::T6 => vec![
            (vec![1, 0], 0),    // x
            (vec![1, 0], w),    // x + w
            (vec![0, w], w),    // w x^2 + w
            (vec![w, 0], 0),    // w x
            (vec![0, w2], w),   // w^2 x^2 + w
        ],
        TableId::T4 => vec![
            (vec![0, 1, 0, 0], 0),  // x^2
            (vec![0, 1, 0, 0], 1),  // x^2 + 1
            (vec![0, w2, 0, 0], w), // w^2 x^2 + w
            (vec![1, 0, 0, 0], w),  // x + w
            (vec![0, w, 0, 0], 0),  // w x^2
        ],
    };
    rows.into_iter()
        .map(|(linear, constant)| AffineMap::new(field, s, linear, constant))
        .collect()
}

/// Golden (degree, nonlinearity, delta) triples, or beta values, per row.
fn golden(id: TableId) -> Vec<RowValues> {
    let triple = |rows: [(u32, u32, u32); 5]| {
        rows.into_iter()
            .map(|(degree, nl, delta)| RowValues {
                degree: Some(degree),
                nonlinearity: Some(nl),
                delta: Some(delta),
                beta: None,
            })
            .collect()
    };
    let beta = |rows: [u32; 5]| {
        rows.into_iter()
            .map(|b| RowValues {
                beta: Some(b),
                ..RowValues::default()
            })
            .collect()
    };
    match id {
        TableId::T2 => triple([(2, 24, 4), (4, 20, 6), (5, 20, 6), (5, 22, 6), (5, 22, 6)]),
        TableId::T3 => triple([
            (2, 480, 4),
            (8, 476, 6),
            (9, 476, 6),
            (9, 478, 6),
            (9, 478, 6),
        ]),
        TableId::T4 => triple([
            (3, 1984, 4),
            (8, 1976, 6),
            (11, 1976, 6),
            (11, 1978, 6),
            (11, 1980, 6),
        ]),
        TableId::T5 => beta([4, 12, 12, 16, 12]),
        TableId::T6 => beta([4, 8, 8, 8, 8]),
    }
}

/// Builds the five piecewise functions of a table family in row order.
pub fn table_pieces(id: TableId) -> Result<Vec<PiecewiseSpec>> {
    let (n, s, k) = table_shape(id);
    let field = Arc::new(Field::new(n, None, Some(s))?);
    let id_map = AffineMap::identity(&field, s)?;
    table_maps(id, &field)?
        .iter()
        .map(|a| match id {
            TableId::T4 => corollary2(&field, s, k, a, &id_map),
            _ => corollary1(&field, s, k, a, &id_map),
        })
        .collect()
}

/// Builds every function of a table and compares each metric cell against
/// the golden value.
pub fn run_table(id: TableId) -> Result<TableReport> {
    let (n, s, _) = table_shape(id);
    let pieces = table_pieces(id)?;
    let expected = golden(id);
    let mut rows = Vec::with_capacity(pieces.len());
    let mut verdict = true;

    for (piece, expected) in pieces.iter().zip(expected) {
        let lut = piece.materialize()?;
        let mut computed = RowValues::default();
        if expected.degree.is_some() {
            computed.degree = Some(lut.algebraic_degree()?);
        }
        if expected.nonlinearity.is_some() {
            computed.nonlinearity = Some(spectra::walsh(&lut)?.nonlinearity);
        }
        if expected.delta.is_some() {
            computed.delta = Some(spectra::ddt(&lut)?.uniformity);
        }
        if expected.beta.is_some() {
            computed.beta = Some(spectra::bct(&lut)?.uniformity);
        }
        let pass = computed == expected;
        verdict &= pass;
        let map = piece
            .provenance()
            .split("affine_inv(")
            .nth(1)
            .and_then(|r| r.split(')').next())
            .unwrap_or("?")
            .to_string();
        rows.push(RowReport {
            map,
            recipe: piece.provenance().to_string(),
            expected,
            computed,
            pass,
        });
    }

    Ok(TableReport {
        table_id: id,
        n,
        s,
        nl_bound: spectra::nl_lower_bound(n, s)?,
        rows,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_maps_are_consistent() {
        for id in TableId::all() {
            let (n, s, _) = table_shape(id);
            let field = Field::new(n, None, Some(s)).unwrap();
            let maps = table_maps(id, &field).unwrap();
            assert_eq!(maps.len(), 5);
        }
    }

    #[test]
    fn t2_reproduces() {
        let report = run_table(TableId::T2).unwrap();
        assert!(report.verdict, "{report:?}");
        assert_eq!(report.nl_bound, 20);
        assert_eq!(report.rows[0].map, "x");
        assert_eq!(report.rows[3].map, "w*x");
    }

    #[test]
    fn t5_matches_except_last_row() {
        // The published beta for the w^2*x^2+w row is 12, but the function
        // computes 10 (bucket-pair, literal-definition and quartic
        // brute-force enumerations all agree, and the value is
        // representation-independent). The golden data keeps the published
        // value, so the checker must flag exactly that cell.
        let report = run_table(TableId::T5).unwrap();
        assert!(!report.verdict);
        for row in &report.rows[..4] {
            assert!(row.pass, "{row:?}");
        }
        let last = &report.rows[4];
        assert_eq!(last.expected.beta, Some(12));
        assert_eq!(last.computed.beta, Some(10));
    }

    #[test]
    fn t6_reproduces() {
        let report = run_table(TableId::T6).unwrap();
        assert!(report.verdict, "{report:?}");
    }

    #[test]
    fn table_id_parsing() {
        assert_eq!(TableId::parse("t3").unwrap(), TableId::T3);
        assert!(TableId::parse("T9").is_err());
    }
}
