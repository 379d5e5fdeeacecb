//! On-disk run data.
//!
//! Layout below a dataset root:
//!
//! ```text
//! <root>/<suite>/data_f<pid>_<pname>/run_d<dim>_i<inst>.dat
//! <root>/<suite>/data_f<pid>_<pname>/run_d<dim>_i<inst>.json
//! ```
//!
//! A `.dat` file holds one block per run. Each block starts with the line
//! `"evaluations" "raw_y"` followed by `<evaluation> <fitness>` lines, one
//! per improvement of the best-so-far fitness plus a final line at the
//! budget. Fitness values carry six significant digits. The `.json` file
//! next to it describes the runs of the block file (see [`ExperimentMeta`]).

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;
use walkdir::WalkDir;

use crate::algorithms::{Improvement, RunTrace};

pub const FORMAT_VERSION: u32 = 1;
pub const HEADER: &str = "\"evaluations\" \"raw_y\"";

#[derive(Debug, Error)]
pub enum LogError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("trace has no improvement records")]
    EmptyTrace,
    #[error("{path}:{line}: {reason}")]
    Malformed { path: PathBuf, line: usize, reason: String },
    #[error("{path}: unsupported format version {version} (expected {FORMAT_VERSION})")]
    UnsupportedVersion { path: PathBuf, version: u32 },
    #[error("{path}: meta lists {meta} runs but the data file holds {data}")]
    RunCountMismatch { path: PathBuf, meta: usize, data: usize },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("no runs found below {0}")]
    EmptyDataset(PathBuf),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> LogError + '_ {
    move |source| LogError::Io { path: path.to_path_buf(), source }
}

/// Renders `x` like C's `%.6g`.
pub fn format_fitness(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Directory holding the files of one problem.
pub fn problem_dir(root: &Path, suite: &str, problem_id: u32, problem_name: &str) -> PathBuf {
    root.join(suite).join(format!("data_f{problem_id}_{problem_name}"))
}

/// Data file of one (problem, dimension, instance) cell.
pub fn trace_path(root: &Path, suite: &str, trace: &RunTrace) -> PathBuf {
    problem_dir(root, suite, trace.problem_id, &trace.problem_name)
        .join(format!("run_d{}_i{}.dat", trace.dimension, trace.instance_id))
}

/// Lines written for one run, header included.
pub fn render_trace(trace: &RunTrace) -> Result<String, LogError> {
    if trace.records.is_empty() {
        return Err(LogError::EmptyTrace);
    }
    let mut out = String::with_capacity(16 * (trace.records.len() + 2));
    out.push_str(HEADER);
    out.push('\n');
    for r in &trace.records {
        out.push_str(&format!("{} {}\n", r.evaluation, format_fitness(r.fitness)));
    }
    let last = trace.records.last().expect("non-empty");
    if last.evaluation != trace.evaluations {
        out.push_str(&format!("{} {}\n", trace.evaluations, format_fitness(last.fitness)));
    }
    Ok(out)
}

/// Appends `trace` to its data file and returns the file path.
pub fn write_trace(trace: &RunTrace, root: &Path, suite: &str) -> Result<PathBuf, LogError> {
    let text = render_trace(trace)?;
    let path = trace_path(root, suite, trace);
    let dir = path.parent().expect("nested path");
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut file = OpenOptions::new().create(true).append(true).open(&path).map_err(io_err(&path))?;
    file.write_all(text.as_bytes()).map_err(io_err(&path))?;
    Ok(path)
}

/// Per-run entry of an [`ExperimentMeta`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub seed: u64,
    pub final_fitness: f64,
    pub evaluations: u64,
    /// Number of improvement lines of the run in the data file.
    pub records: usize,
}

/// Description of the runs stored in one data file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentMeta {
    pub version: u32,
    pub suite: String,
    pub problem_id: u32,
    pub problem_name: String,
    pub dimension: usize,
    pub instance_id: u32,
    pub algorithm: String,
    pub parameters: BTreeMap<String, f64>,
    pub budget: u64,
    pub runs: Vec<RunMeta>,
}

impl ExperimentMeta {
    /// Meta for `traces`, which must all belong to the same cell.
    ///
    /// # Panics
    /// If `traces` is empty.
    pub fn from_traces(suite: &str, parameters: BTreeMap<String, f64>, traces: &[RunTrace]) -> Self {
        let first = traces.first().expect("at least one trace");
        Self {
            version: FORMAT_VERSION,
            suite: suite.to_string(),
            problem_id: first.problem_id,
            problem_name: first.problem_name.clone(),
            dimension: first.dimension,
            instance_id: first.instance_id,
            algorithm: first.algorithm.clone(),
            parameters,
            budget: first.budget,
            runs: traces
                .iter()
                .map(|t| RunMeta {
                    seed: t.seed,
                    final_fitness: t.final_fitness,
                    evaluations: t.evaluations,
                    records: t.records.len(),
                })
                .collect(),
        }
    }

    pub fn path(&self, root: &Path) -> PathBuf {
        self.data_path(root).with_extension("json")
    }

    pub fn data_path(&self, root: &Path) -> PathBuf {
        problem_dir(root, &self.suite, self.problem_id, &self.problem_name)
            .join(format!("run_d{}_i{}.dat", self.dimension, self.instance_id))
    }
}

/// Writes `meta` as pretty-printed JSON next to its data file.
pub fn write_meta(meta: &ExperimentMeta, root: &Path) -> Result<PathBuf, LogError> {
    let path = meta.path(root);
    let dir = path.parent().expect("nested path");
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let file = File::create(&path).map_err(io_err(&path))?;
    let mut writer = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut writer, meta).map_err(|source| LogError::Json { path: path.clone(), source })?;
    writer.write_all(b"\n").and_then(|_| writer.flush()).map_err(io_err(&path))?;
    Ok(path)
}

/// Writes an IOHprofiler-style `.info` index for `meta` into the suite
/// directory, so that external analyzers can pick up the `.dat` files.
/// This is a compatibility export only.
pub fn write_ioh_info(meta: &ExperimentMeta, root: &Path) -> Result<PathBuf, LogError> {
    let dir = root.join(&meta.suite);
    let path = dir.join(format!("IOHprofiler_f{}_{}.info", meta.problem_id, meta.problem_name));
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    let data = meta.data_path(Path::new(""));
    let data = data.strip_prefix(&meta.suite).unwrap_or(&data);
    let runs: Vec<String> =
        meta.runs.iter().map(|r| format!("{}:{}|{}", meta.instance_id, r.evaluations, format_fitness(r.final_fitness))).collect();
    let text = format!(
        "suite = \"{}\", funcId = {}, funcName = \"{}\", DIM = {}, maximization = \"T\", algId = \"{}\", algInfo = \"\"\n%\n{}, {}\n",
        meta.suite,
        meta.problem_id,
        meta.problem_name,
        meta.dimension,
        meta.algorithm,
        data.display(),
        runs.join(", ")
    );
    let mut file = OpenOptions::new().create(true).append(true).open(&path).map_err(io_err(&path))?;
    file.write_all(text.as_bytes()).map_err(io_err(&path))?;
    Ok(path)
}

/// Improvement blocks of a data file, one per run.
pub fn parse_dat(text: &str, path: &Path) -> Result<Vec<Vec<Improvement>>, LogError> {
    let malformed = |line: usize, reason: String| LogError::Malformed { path: path.to_path_buf(), line, reason };
    let mut runs: Vec<Vec<Improvement>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        if raw == HEADER {
            runs.push(Vec::new());
            continue;
        }
        let run = runs.last_mut().ok_or_else(|| malformed(line, "data line before the first header".into()))?;
        let mut tokens = raw.split_whitespace();
        let (Some(e), Some(f), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(malformed(line, format!("expected `<evaluation> <fitness>`, found `{raw}`")));
        };
        let evaluation: u64 = e.parse().map_err(|_| malformed(line, format!("invalid evaluation `{e}`")))?;
        let fitness: f64 = f.parse().map_err(|_| malformed(line, format!("invalid fitness `{f}`")))?;
        if run.last().is_some_and(|r| r.evaluation >= evaluation) {
            return Err(malformed(line, "evaluations must increase within a run".into()));
        }
        run.push(Improvement { evaluation, fitness });
    }
    Ok(runs)
}

/// Reads every run below `root`, ordered by meta path and run index.
///
/// Record fitness values come back at the six-digit resolution of the data
/// file; final fitness values are exact. Records that coincide after
/// rounding are merged and the last record carries the exact final value.
pub fn read_dataset(root: &Path) -> Result<Vec<RunTrace>, LogError> {
    let mut metas: Vec<PathBuf> = WalkDir::new(root)
        .sort_by_file_name()
        .into_iter()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().is_file() && e.path().extension().is_some_and(|x| x == "json"))
        .map(|e| e.into_path())
        .collect();
    metas.sort();
    let mut traces = Vec::new();
    for meta_path in metas {
        let text = fs::read_to_string(&meta_path).map_err(io_err(&meta_path))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|source| LogError::Json { path: meta_path.clone(), source })?;
        let version = value.get("version").and_then(|v| v.as_u64()).unwrap_or(0) as u32;
        if version != FORMAT_VERSION {
            return Err(LogError::UnsupportedVersion { path: meta_path, version });
        }
        let meta: ExperimentMeta =
            serde_json::from_value(value).map_err(|source| LogError::Json { path: meta_path.clone(), source })?;
        let dat_path = meta_path.with_extension("dat");
        let dat = fs::read_to_string(&dat_path).map_err(io_err(&dat_path))?;
        let blocks = parse_dat(&dat, &dat_path)?;
        if blocks.len() != meta.runs.len() {
            return Err(LogError::RunCountMismatch { path: dat_path, meta: meta.runs.len(), data: blocks.len() });
        }
        for (run, mut block) in meta.runs.iter().zip(blocks) {
            if run.records == 0 || block.len() < run.records {
                return Err(LogError::Malformed {
                    path: dat_path.clone(),
                    line: 0,
                    reason: format!("run with seed {} has fewer lines than its {} records", run.seed, run.records),
                });
            }
            block.truncate(run.records);
            let mut records: Vec<Improvement> = Vec::with_capacity(block.len());
            for mut r in block {
                r.fitness = r.fitness.min(run.final_fitness);
                match records.last() {
                    Some(prev) if prev.fitness >= r.fitness => {}
                    _ => records.push(r),
                }
            }
            let last = records.last_mut().expect("non-empty");
            last.fitness = run.final_fitness;
            traces.push(RunTrace {
                algorithm: meta.algorithm.clone(),
                problem_id: meta.problem_id,
                problem_name: meta.problem_name.clone(),
                instance_id: meta.instance_id,
                dimension: meta.dimension,
                seed: run.seed,
                budget: meta.budget,
                evaluations: run.evaluations,
                records,
                final_fitness: run.final_fitness,
                final_point: None,
            });
        }
    }
    if traces.is_empty() {
        return Err(LogError::EmptyDataset(root.to_path_buf()));
    }
    Ok(traces)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn trace(records: &[(u64, f64)], budget: u64, seed: u64) -> RunTrace {
        RunTrace {
            algorithm: "rls".into(),
            problem_id: 2000,
            problem_name: "MaxCut".into(),
            instance_id: 1,
            dimension: 3,
            seed,
            budget,
            evaluations: budget,
            records: records.iter().map(|&(evaluation, fitness)| Improvement { evaluation, fitness }).collect(),
            final_fitness: records.last().map_or(0.0, |r| r.1),
            final_point: None,
        }
    }

    #[test]
    fn six_significant_digits() {
        assert_eq!(format_fitness(4.0), "4");
        assert_eq!(format_fitness(-3.0), "-3");
        assert_eq!(format_fitness(0.0), "0");
        assert_eq!(format_fitness(1.0 / 3.0), "0.333333");
        assert_eq!(format_fitness(123456.7), "123457");
        assert_eq!(format_fitness(1234567.0), "1.23457e+06");
        assert_eq!(format_fitness(0.0001234567), "0.000123457");
        assert_eq!(format_fitness(0.00001234567), "1.23457e-05");
        assert_eq!(format_fitness(-2.5), "-2.5");
        assert_eq!(format_fitness(999999.7), "1e+06");
    }

    #[test]
    fn writes_header_records_and_final_line() {
        let dir = tempfile::tempdir().unwrap();
        let t = trace(&[(1, -3.0), (5, 0.0), (17, 4.0)], 100, 0);
        let path = write_trace(&t, dir.path(), "suite").unwrap();
        assert!(path.ends_with("suite/data_f2000_MaxCut/run_d3_i1.dat"));
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text, "\"evaluations\" \"raw_y\"\n1 -3\n5 0\n17 4\n100 4\n");
        write_trace(&t, dir.path(), "suite").unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.matches(HEADER).count(), 2);
        assert!(matches!(write_trace(&trace(&[], 10, 0), dir.path(), "suite"), Err(LogError::EmptyTrace)));
    }

    #[test]
    fn no_duplicate_final_line() {
        let t = trace(&[(1, 1.0), (10, 2.0)], 10, 0);
        assert_eq!(render_trace(&t).unwrap().lines().count(), 3);
    }

    fn write_cell(root: &Path, traces: &[RunTrace]) {
        for t in traces {
            write_trace(t, root, "s").unwrap();
        }
        write_meta(&ExperimentMeta::from_traces("s", BTreeMap::new(), traces), root).unwrap();
    }

    #[test]
    fn meta_consistency_and_version() {
        let dir = tempfile::tempdir().unwrap();
        let traces: Vec<_> = (0..3).map(|s| trace(&[(1, 1.0), (4, 2.0 + s as f64)], 20, s)).collect();
        for t in &traces[..2] {
            write_trace(t, dir.path(), "s").unwrap();
        }
        let meta_path = write_meta(&ExperimentMeta::from_traces("s", BTreeMap::new(), &traces), dir.path()).unwrap();
        assert!(matches!(read_dataset(dir.path()), Err(LogError::RunCountMismatch { meta: 3, data: 2, .. })));

        write_trace(&traces[2], dir.path(), "s").unwrap();
        assert_eq!(read_dataset(dir.path()).unwrap(), traces);

        let text = fs::read_to_string(&meta_path).unwrap().replace("\"version\": 1", "\"version\": 7");
        fs::write(&meta_path, text).unwrap();
        assert!(matches!(read_dataset(dir.path()), Err(LogError::UnsupportedVersion { version: 7, .. })));
    }

    #[test]
    fn malformed_lines_are_located() {
        let p = Path::new("x.dat");
        let err = parse_dat("\"evaluations\" \"raw_y\"\n1 2\n3 abc\n", p).unwrap_err();
        assert!(matches!(err, LogError::Malformed { line: 3, .. }));
        assert!(matches!(parse_dat("1 2\n", p), Err(LogError::Malformed { line: 1, .. })));
        assert!(matches!(parse_dat("\"evaluations\" \"raw_y\"\n5 2\n5 3\n", p), Err(LogError::Malformed { line: 3, .. })));
    }

    #[test]
    fn empty_directory_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(read_dataset(dir.path()), Err(LogError::EmptyDataset(_))));
    }

    #[test]
    fn ioh_info_lists_runs() {
        let dir = tempfile::tempdir().unwrap();
        let traces = vec![trace(&[(1, 1.5)], 10, 0), trace(&[(1, 2.0)], 10, 1)];
        let meta = ExperimentMeta::from_traces("s", BTreeMap::new(), &traces);
        let path = write_ioh_info(&meta, dir.path()).unwrap();
        let text = fs::read_to_string(path).unwrap();
        assert!(text.contains("funcId = 2000"));
        assert!(text.contains("data_f2000_MaxCut/run_d3_i1.dat, 1:10|1.5, 1:10|2"));
    }

    proptest! {
        #[test]
        fn round_trip_preserves_records(
            steps in prop::collection::vec((1u64..50, 1i32..1000), 1..20),
            extra in 0u64..30,
            seed in any::<u64>(),
        ) {
            let mut records = Vec::new();
            let (mut e, mut f) = (1u64, -500i32);
            for (i, &(de, df)) in steps.iter().enumerate() {
                if i > 0 {
                    e += de;
                }
                f += df;
                records.push((e, f as f64 / 4.0));
            }
            let t = trace(&records, e + extra, seed);
            let dir = tempfile::tempdir().unwrap();
            write_cell(dir.path(), std::slice::from_ref(&t));
            prop_assert_eq!(read_dataset(dir.path()).unwrap(), vec![t]);
        }
    }
}
