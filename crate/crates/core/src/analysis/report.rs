//! CSV output of the analysis tables.
//!
//! * `ert.csv`: `problem_id,problem_name,dimension,instance_id,algorithm,target,ert,successes,runs`
//! * `ecdf.csv`: `algorithm,budget,fraction`
//! * `glicko2.csv`: `rank,algorithm,rating,deviation,volatility`
//! * `winfrac.csv`: `algorithm` followed by one column per opponent
//!
//! Infinite ERT values are written as `inf`.

use std::path::Path;

use super::{AnalysisError, EcdfCurve, InstanceKey, RatedAlgorithm, WinMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct ErtRow {
    pub instance: InstanceKey,
    pub algorithm: String,
    pub target: f64,
    pub ert: f64,
    pub successes: usize,
    pub runs: usize,
}

fn write_rows(path: &Path, header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), AnalysisError> {
    let wrap = |source| AnalysisError::Csv { path: path.to_path_buf(), source };
    let mut writer = csv::Writer::from_path(path).map_err(wrap)?;
    writer.write_record(header).map_err(wrap)?;
    for row in rows {
        writer.write_record(&row).map_err(wrap)?;
    }
    writer.flush().map_err(|e| wrap(e.into()))
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

pub fn write_ert_csv(path: &Path, rows: &[ErtRow]) -> Result<(), AnalysisError> {
    let header = strings(&["problem_id", "problem_name", "dimension", "instance_id", "algorithm", "target", "ert", "successes", "runs"]);
    write_rows(
        path,
        &header,
        rows.iter().map(|r| {
            vec![
                r.instance.problem_id.to_string(),
                r.instance.problem_name.clone(),
                r.instance.dimension.to_string(),
                r.instance.instance_id.to_string(),
                r.algorithm.clone(),
                r.target.to_string(),
                r.ert.to_string(),
                r.successes.to_string(),
                r.runs.to_string(),
            ]
        }),
    )
}

pub fn write_ecdf_csv(path: &Path, curves: &[EcdfCurve]) -> Result<(), AnalysisError> {
    write_rows(
        path,
        &strings(&["algorithm", "budget", "fraction"]),
        curves.iter().flat_map(|c| {
            c.budgets.iter().zip(&c.values).map(|(b, v)| vec![c.algorithm.clone(), b.to_string(), v.to_string()])
        }),
    )
}

pub fn write_glicko2_csv(path: &Path, ranked: &[RatedAlgorithm]) -> Result<(), AnalysisError> {
    write_rows(
        path,
        &strings(&["rank", "algorithm", "rating", "deviation", "volatility"]),
        ranked.iter().enumerate().map(|(i, r)| {
            vec![
                (i + 1).to_string(),
                r.algorithm.clone(),
                r.state.rating.to_string(),
                r.state.deviation.to_string(),
                r.state.volatility.to_string(),
            ]
        }),
    )
}

pub fn write_winfrac_csv(path: &Path, matrix: &WinMatrix) -> Result<(), AnalysisError> {
    let header: Vec<String> = std::iter::once("algorithm".to_string()).chain(matrix.algorithms.iter().cloned()).collect();
    write_rows(
        path,
        &header,
        matrix.algorithms.iter().zip(&matrix.values).map(|(name, row)| {
            std::iter::once(name.clone()).chain(row.iter().map(|v| v.to_string())).collect()
        }),
    )
}
