//! Algebra and derivation files.
//!
//! An algebra file is a JSON object with `p`, optional `labels`, a `table`
//! and, for explicit structure constants, a `unit`:
//!
//! ```json
//! {"p": 3, "labels": ["1", "x"], "table": {"structure_constants": [[[1,0],[0,1]],[[0,1],[0,0]]]}, "unit": [1, 0]}
//! {"p": 3, "table": {"group_cayley": [[0,1,2],[1,2,0],[2,0,1]]}}
//! {"p": 3, "table": {"truncated_poly": 3}}
//! {"p": 3, "table": {"matrix_over": {"truncated_poly": 1}, "m": 2}}
//! ```
//!
//! `structure_constants[i][j]` is the coefficient vector of `e_i e_j`. A
//! structure-constant table nested under `matrix_over` carries its own
//! `unit` (and optionally `labels`). Inputs of the form `builtin:c<n>` and
//! `builtin:s3` name the built-in group algebras.
//!
//! A derivation file is `{"matrix": rows}` where column `j` holds the
//! coordinates of the image of `e_j`. Entries may be negative.

use std::path::Path;

use hochschild_core::builtin;
use hochschild_core::hochschild::LinearEndo;
use hochschild_core::{Algebra, FpMatrix, Prime, MAX_DIM};
use serde::Deserialize;

use crate::error::{CliError, Result};

/// Environment variable lowering the dimension cap.
pub const MAX_DIM_ENV: &str = "HH1_MAX_DIM";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub p: u32,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    pub table: TableSpec,
    #[serde(default)]
    pub unit: Option<Vec<u32>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum TableSpec {
    StructureConstants {
        structure_constants: Vec<Vec<Vec<u32>>>,
        #[serde(default)]
        unit: Option<Vec<u32>>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
    GroupCayley {
        group_cayley: Vec<Vec<usize>>,
    },
    TruncatedPoly {
        truncated_poly: usize,
    },
    MatrixOver {
        matrix_over: Box<TableSpec>,
        m: usize,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DerivationFile {
    matrix: Vec<Vec<i64>>,
}

/// Which built-in an algebra came from, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Cyclic(usize),
    S3,
}

#[derive(Clone, Debug)]
pub struct LoadedAlgebra {
    pub algebra: Algebra,
    pub builtin: Option<Builtin>,
    /// Bytes the report digest is taken over.
    pub source: Vec<u8>,
}

/// The active dimension cap: `HH1_MAX_DIM` if set, never above [`MAX_DIM`].
pub fn dimension_cap() -> Result<usize> {
    match std::env::var(MAX_DIM_ENV) {
        Err(_) => Ok(MAX_DIM),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|n| n.min(MAX_DIM))
            .map_err(|_| {
                CliError::Input(format!("{MAX_DIM_ENV}={v} is not a non-negative integer"))
            }),
    }
}

pub fn check_cap(dim: usize) -> Result<()> {
    let cap = dimension_cap()?;
    if dim > cap {
        return Err(CliError::Input(format!(
            "algebra dimension {dim} exceeds the cap of {cap}"
        )));
    }
    Ok(())
}

fn prime(p: u32) -> Result<Prime> {
    Prime::new(p).map_err(CliError::from)
}

/// Loads `builtin:<name>` (using `p`) or an algebra file.
pub fn load_algebra(input: &str, p: u32) -> Result<LoadedAlgebra> {
    let loaded = if let Some(name) = input.strip_prefix("builtin:") {
        let q = prime(p)?;
        let (algebra, which) = match name {
            "s3" => (builtin::s3_group_algebra(q)?, Builtin::S3),
            _ => {
                let n = name
                    .strip_prefix('c')
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| (1..=builtin::MAX_CYCLIC_ORDER).contains(&n))
                    .ok_or_else(|| {
                        CliError::Input(format!(
                            "unknown built-in {name:?}; expected s3 or c1..c{}",
                            builtin::MAX_CYCLIC_ORDER
                        ))
                    })?;
                (builtin::cyclic_group_algebra(n, q)?, Builtin::Cyclic(n))
            }
        };
        LoadedAlgebra {
            algebra,
            builtin: Some(which),
            source: format!("builtin:{name};p={p}").into_bytes(),
        }
    } else {
        let text = read(Path::new(input))?;
        LoadedAlgebra {
            algebra: parse_algebra(&text)?,
            builtin: None,
            source: text.into_bytes(),
        }
    };
    check_cap(loaded.algebra.dim())?;
    Ok(loaded)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn json_error(what: &str, e: serde_json::Error) -> CliError {
    // serde_json's message carries the line and column
    CliError::Input(format!("{what}: {e}"))
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| json_error("algebra file", e))?;
    let p = prime(file.p)?;
    let algebra = match file.table {
        TableSpec::StructureConstants {
            structure_constants,
            unit,
            labels,
        } => {
            if unit.is_some() || labels.is_some() {
                return Err(CliError::Input(
                    "top-level structure constants take `unit` and `labels` beside `table`".into(),
                ));
            }
            let unit = file
                .unit
                .ok_or_else(|| CliError::Input("structure constants need a `unit`".into()))?;
            let labels = file
                .labels
                .clone()
                .unwrap_or_else(|| default_labels(structure_constants.len()));
            check_cap(structure_constants.len())?;
            return Ok(Algebra::from_structure_constants(
                p,
                labels,
                &structure_constants,
                unit,
            )?);
        }
        table => {
            if file.unit.is_some() {
                return Err(CliError::Input(
                    "`unit` is only used with structure constants".into(),
                ));
            }
            build_table(p, table)?
        }
    };
    match file.labels {
        None => Ok(algebra),
        Some(labels) => relabel(&algebra, labels),
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

fn relabel(a: &Algebra, labels: Vec<String>) -> Result<Algebra> {
    if labels.len() != a.dim() {
        return Err(CliError::Input(format!(
            "{} labels for an algebra of dimension {}",
            labels.len(),
            a.dim()
        )));
    }
    match a.group() {
        Some(g) => Ok(Algebra::group_algebra(
            g.cayley().to_vec(),
            labels,
            a.prime(),
        )?),
        None => Ok(Algebra::from_structure_constants(
            a.prime(),
            labels,
            &a.structure_constants(),
            a.unit().into_coeffs(),
        )?),
    }
}

fn build_table(p: Prime, table: TableSpec) -> Result<Algebra> {
    Ok(match table {
        TableSpec::StructureConstants {
            structure_constants,
            unit,
            labels,
        } => {
            let unit = unit.ok_or_else(|| {
                CliError::Input("nested structure constants need a `unit`".into())
            })?;
            let labels = labels.unwrap_or_else(|| default_labels(structure_constants.len()));
            check_cap(structure_constants.len())?;
            Algebra::from_structure_constants(p, labels, &structure_constants, unit)?
        }
        TableSpec::GroupCayley { group_cayley } => {
            check_cap(group_cayley.len())?;
            let labels = (0..group_cayley.len()).map(|i| format!("g{i}")).collect();
            Algebra::group_algebra(group_cayley, labels, p)?
        }
        TableSpec::TruncatedPoly { truncated_poly } => {
            check_cap(truncated_poly)?;
            Algebra::truncated_poly(p, truncated_poly)?
        }
        TableSpec::MatrixOver { matrix_over, m } => {
            let inner = build_table(p, *matrix_over)?;
            check_cap(inner.dim().saturating_mul(m.saturating_mul(m)))?;
            Algebra::matrix_algebra(&inner, m)?
        }
    })
}

/// `f0`, `f1`, `f2` on `builtin:c3`, or a derivation file.
pub fn load_derivation(spec: &str, on: &LoadedAlgebra) -> Result<(LinearEndo, Vec<u8>)> {
    if let Some(k) = ["f0", "f1", "f2"].iter().position(|&n| n == spec) {
        if on.builtin != Some(Builtin::Cyclic(3)) {
            return Err(CliError::Input(format!(
                "{spec} is only defined on builtin:c3"
            )));
        }
        let d = builtin::c3_derivation(k, on.algebra.prime())?;
        return Ok((d, spec.as_bytes().to_vec()));
    }
    let text = read(Path::new(spec))?;
    let d = parse_derivation(&text, &on.algebra)?;
    Ok((d, text.into_bytes()))
}

pub fn parse_derivation(text: &str, a: &Algebra) -> Result<LinearEndo> {
    let file: DerivationFile =
        serde_json::from_str(text).map_err(|e| json_error("derivation file", e))?;
    if file.matrix.len() != a.dim() || file.matrix.iter().any(|r| r.len() != a.dim()) {
        return Err(CliError::Input(format!(
            "derivation matrix must be {0}x{0}",
            a.dim()
        )));
    }
    Ok(LinearEndo::try_new(FpMatrix::from_rows(
        a.prime(),
        &file.matrix,
    )?)?)
}
