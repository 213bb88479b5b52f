//! Parameter tables: formula predictions next to computed values.

use std::fmt::Write as _;

use num_rational::Ratio;
use thiserror::Error;

use crate::covering::{d_cover, find_gluing_cycle, CoverError, CoverSpec};
use crate::css::{build_css, formulas, CodeParams, CssError};
use crate::distance::{distance, DistanceError, Method};
use crate::generators::{
    builtin, gen_even, gen_odd, Builtin, EvenFamilyParams, GenError, OddFamilyParams,
};
use crate::map::PolygonalMap;

#[derive(Debug, Error)]
pub enum TableError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Css(#[from] CssError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    pub map_type: String,
    pub expected: CodeParams,
    pub computed: CodeParams,
    /// Limit of `k/n` as the family parameter grows, where one is stated.
    pub rate_limit: Option<Ratio<u64>>,
}

impl TableRow {
    pub fn ok(&self) -> bool {
        self.expected == self.computed
    }

    pub fn rate(&self) -> Ratio<u64> {
        self.computed.rate()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(TableRow::ok)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.title);
        let header = [
            "map", "type", "expected", "computed", "rate", "limit", "status",
        ];
        let body: Vec<[String; 7]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.label.clone(),
                    r.map_type.clone(),
                    r.expected.to_string(),
                    r.computed.to_string(),
                    r.rate().to_string(),
                    r.rate_limit.map_or("-".into(), |l| l.to_string()),
                    if r.ok() {
                        "OK".into()
                    } else {
                        "MISMATCH".into()
                    },
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|i| {
                body.iter()
                    .map(|r| r[i].len())
                    .chain([header[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut line = |cells: &[&str]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&header);
        for r in &body {
            let cells: Vec<&str> = r.iter().map(String::as_str).collect();
            line(&cells);
        }
        out
    }
}

fn computed_params(map: &PolygonalMap) -> Result<CodeParams, TableError> {
    let code = build_css(map)?;
    let d = distance(&code, map, Method::Bfs)?.d_min;
    Ok(CodeParams {
        n: code.n() as u64,
        k: code.k() as u64,
        d: Some(d as u64),
    })
}

fn row(
    label: String,
    map: &PolygonalMap,
    expected: CodeParams,
    limit: Option<Ratio<u64>>,
) -> Result<TableRow, TableError> {
    Ok(TableRow {
        label,
        map_type: map.vertex_type().to_string(),
        expected,
        computed: computed_params(map)?,
        rate_limit: limit,
    })
}

/// The two printed maps against their stated codes.
pub fn t1_k3() -> Result<Table, TableError> {
    let k3 = builtin(Builtin::K3);
    let n1 = builtin(Builtin::N1);
    let stated = |n, k, d| CodeParams { n, k, d: Some(d) };
    Ok(Table {
        title: "K3 and N1".into(),
        rows: vec![
            row("k3".into(), &k3, stated(40, 3, 4), None)?,
            row("n1".into(), &n1, stated(42, 4, 3), None)?,
        ],
    })
}

/// Odd and even generator families over `m1 ∈ 3..=m1_max`, `m2 ∈ 0..=m2_max`.
pub fn t2_families(m1_max: u32, m2_max: u64) -> Result<Table, TableError> {
    let mut rows = Vec::new();
    for m1 in 3..=m1_max {
        for m2 in 0..=m2_max {
            let map = gen_odd(&OddFamilyParams::new(m1, m2)?)?;
            rows.push(row(
                format!("odd({m1},{m2})"),
                &map,
                formulas::odd_family(m1, m2),
                None,
            )?);
        }
    }
    for m1 in 3..=m1_max {
        for m2 in 0..=m2_max {
            let map = gen_even(&EvenFamilyParams::new(m1, m2)?)?;
            rows.push(row(
                format!("even({m1},{m2})"),
                &map,
                formulas::even_family(m1, m2),
                None,
            )?);
        }
    }
    Ok(Table {
        title: "Equivelar families".into(),
        rows,
    })
}

/// d-fold covers of N1 and K3 for `d ∈ 1..=d_max`.
pub fn t3_covers(d_max: usize) -> Result<Table, TableError> {
    let mut rows = Vec::new();
    type Formula = fn(u64) -> CodeParams;
    let families: [(Builtin, Formula, Ratio<u64>); 2] = [
        (
            Builtin::N1,
            formulas::n1_cover,
            formulas::n1_cover_rate_limit(),
        ),
        (
            Builtin::K3,
            formulas::k3_cover,
            formulas::k3_cover_rate_limit(),
        ),
    ];
    for (which, formula, limit) in families {
        let base = builtin(which);
        let cycle = find_gluing_cycle(&base)?;
        for d in 1..=d_max {
            let cover = d_cover(&base, &CoverSpec::new(cycle.clone(), d)?)?;
            rows.push(row(
                format!("{which} d={d}"),
                &cover,
                formula(d as u64),
                Some(limit),
            )?);
        }
    }
    Ok(Table {
        title: "Cyclic covers".into(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t1_rows_match() {
        let t = t1_k3().unwrap();
        assert!(t.all_ok());
        assert_eq!(t.rows[0].computed.to_string(), "[[40,3,4]]");
        assert_eq!(t.rows[1].computed.to_string(), "[[42,4,3]]");
    }

    #[test]
    fn t3_single_sheet_rates() {
        let t = t3_covers(1).unwrap();
        assert!(t.all_ok());
        let rates: Vec<String> = t.rows.iter().map(|r| r.rate().to_string()).collect();
        assert_eq!(rates, ["2/21", "3/40"]);
    }

    #[test]
    fn render_flags_mismatch() {
        let mut t = t1_k3().unwrap();
        t.rows[0].expected.d = Some(5);
        let text = t.render();
        assert!(text.contains("MISMATCH"));
        assert!(text.lines().nth(1).unwrap().starts_with("map"));
        assert!(!t.all_ok());
    }
}
