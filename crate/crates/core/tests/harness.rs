use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use submodbench::algorithms::{run_labeled, AlgorithmSpec};
use submodbench::analysis::{compute_ert, group_traces, quantile_target, final_table};
use submodbench::harness::{cmd_oracle, execute, AlgorithmConfig, ProblemConfig, RunConfig};
use submodbench::logger::{format_fitness, read_dataset};
use submodbench::rng::derive_run_seed;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn problem(kind: &str, file: &str, cost: Option<&str>) -> ProblemConfig {
    ProblemConfig {
        kind: kind.into(),
        instance: fixture(file),
        format: None,
        cost: cost.map(str::to_string),
        simulations: None,
        instance_id: None,
        one_indexed: false,
        penalty_weight: None,
        penalty_exponent: None,
    }
}

fn config(output: &Path) -> RunConfig {
    RunConfig {
        suite: "it".into(),
        output: output.to_path_buf(),
        runs: 4,
        budget: 300,
        seed: 17,
        workers: 2,
        ioh_info: true,
        problems: vec![
            problem("max-coverage", "cov12.txt", Some("linear-degree:budget=15")),
            problem("max-influence", "influence8.snap", Some("uniform:budget=2")),
            problem("pwt", "tiny.ttp", None),
        ],
        algorithms: vec![
            AlgorithmConfig { name: "2rate-ea".into(), label: None, params: BTreeMap::new() },
            AlgorithmConfig { name: "oll-ea".into(), label: Some("oll".into()), params: [("lambda".to_string(), 4.0)].into() },
        ],
    }
}

#[test]
fn grid_round_trips_through_the_dataset() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path());
    let summary = execute(&cfg).unwrap();
    assert_eq!(summary.traces_written, 2 * 3 * 4);
    let traces = read_dataset(dir.path()).unwrap();
    assert_eq!(traces.len(), 24);

    // every stored trace equals a fresh execution of its cell alone
    let problems: Vec<_> = cfg.problems.iter().enumerate().map(|(i, p)| p.build(i).unwrap()).collect();
    for t in &traces {
        let alg = cfg.algorithms.iter().find(|a| a.label() == t.algorithm).unwrap();
        let p = problems.iter().find(|p| p.kind().id() == t.problem_id).unwrap();
        let spec: AlgorithmSpec = alg.spec().unwrap();
        let run = (0..cfg.runs).find(|&k| derive_run_seed(cfg.seed, alg.label(), p.kind().key(), p.instance_id().into(), k) == t.seed);
        assert!(run.is_some(), "seed of {} not derived from the config", t.algorithm);
        let mut fresh = run_labeled(&spec, alg.label(), p, cfg.budget, t.seed).unwrap();
        fresh.final_point = None;
        // intermediate records are stored at 6 significant digits, the final value exactly
        let last = fresh.records.len() - 1;
        for (i, r) in fresh.records.iter_mut().enumerate() {
            if i != last {
                r.fitness = format_fitness(r.fitness).parse().unwrap();
            }
        }
        assert_eq!(&fresh, t);
    }

    // analysis results are identical before and after the round trip
    let grouped_disk = group_traces(traces);
    let finals = final_table(&grouped_disk);
    for (key, algs) in &grouped_disk {
        let (_, target) = quantile_target(&finals[key], 0.02).unwrap();
        for runs in algs.values() {
            let fresh: Vec<_> = runs
                .iter()
                .map(|t| {
                    let alg = cfg.algorithms.iter().find(|a| a.label() == t.algorithm).unwrap();
                    let p = problems.iter().find(|p| p.kind().id() == t.problem_id).unwrap();
                    run_labeled(&alg.spec().unwrap(), alg.label(), p, cfg.budget, t.seed).unwrap()
                })
                .collect();
            assert_eq!(compute_ert(runs, target), compute_ert(&fresh, target));
        }
    }
    assert!(dir.path().join("oll/it/IOHprofiler_f2300_PackWhileTravel.info").exists());
}

#[test]
fn duplicate_instances_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config(dir.path());
    let mut dup = cfg.problems[0].clone();
    dup.instance_id = Some(1);
    cfg.problems.push(dup);
    assert_eq!(execute(&cfg).unwrap_err().exit_code(), 2);
}

#[test]
fn oracle_on_fixtures() {
    let report = cmd_oracle(&problem("max-influence", "influence8.snap", None)).unwrap();
    assert_eq!((report.submodular, report.monotone), (Some(true), Some(true)));
    assert!(!report.has_violation());
    let report = cmd_oracle(&problem("max-cut", "triangle.gset", None)).unwrap();
    assert_eq!(report.submodular, Some(true));
    // negative edge weights break submodularity
    let report = cmd_oracle(&problem("max-cut", "cut14.gset", None)).unwrap();
    assert_eq!(report.submodular, Some(false));
    let report = cmd_oracle(&problem("pwt", "tiny.ttp", None)).unwrap();
    assert_eq!(report.submodular, None);
    assert!(report.render().contains("submodular: n/a"));
}
