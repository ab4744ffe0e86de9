use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::basis::CellBasis;
use crate::cases::{exact, Case};
use crate::error::{Error, Result};
use crate::limiting::Choice;
use crate::solver::Field;

pub const CSV_HEADER: [&str; 5] = ["x", "u_num", "u_exact", "cell", "choice"];

/// One dense sample of a discontinuous nodal solution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRow {
    pub x: f64,
    pub u_num: f64,
    pub u_exact: f64,
    pub cell: usize,
    pub choice: &'static str,
}

/// `samples` equally spaced points per cell, left edge included, right edge
/// excluded, so `x` increases strictly across the domain.
pub fn dense_rows(
    field: &Field<f64>,
    basis: &CellBasis<f64>,
    case: &Case,
    t: f64,
    samples: usize,
    choices: Option<&[Choice]>,
) -> Vec<SampleRow> {
    let mut rows = Vec::with_capacity(field.n_cells() * samples);
    for i in 0..field.n_cells() {
        let choice = choices.map_or(Choice::High, |c| c[i]).name();
        for s in 0..samples {
            let xi = -1.0 + 2.0 * s as f64 / samples as f64;
            let x = field.node_x(i, xi);
            rows.push(SampleRow {
                x,
                u_num: basis.eval(field.cell(i), xi),
                u_exact: exact(case, x, t),
                cell: i,
                choice,
            });
        }
    }
    rows
}

fn ensure_parent(path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    Ok(())
}

pub fn write_csv(path: &Path, rows: &[SampleRow]) -> Result<()> {
    ensure_parent(path)?;
    let wrap = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(wrap)?;
    for row in rows {
        w.serialize(row).map_err(wrap)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_json<S: Serialize>(path: &Path, value: &S) -> Result<()> {
    ensure_parent(path)?;
    let text = serde_json::to_string_pretty(value).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    fs::write(path, text + "\n").map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
