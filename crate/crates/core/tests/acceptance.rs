//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use submodbench::algorithms::{run, AlgorithmName, AlgorithmSpec, RunTrace};
use submodbench::analysis::{
    self, budget_grid, compute_ecdf, compute_ert, glicko2_rank, group_traces, pairwise_win_fraction,
    Glicko2, InstanceKey, PairingMode,
};
use submodbench::constraints::{BaseCost, ChanceBound, ChanceParams, CostModel};
use submodbench::harness::{execute, AlgorithmConfig, ProblemConfig, RunConfig};
use submodbench::instance::generate::{random_digraph, random_graph, random_ttp};
use submodbench::instance::{DirectedGraph, Item, TtpInstance, UndirectedGraph};
use submodbench::logger::read_dataset;
use submodbench::problems::oracle::{check_monotone, check_submodular_exhaustive, objective_table};
use submodbench::problems::{brute_force_optimum, estimate_influence, exact_influence_expectation, Problem};
use submodbench::rng::{Purpose, RngStream};
use submodbench::BitString;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed <= limit
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn coverage_instance(n: usize, rng: &mut ChaCha8Rng) -> Arc<UndirectedGraph> {
    let p = rng.random_range(0.15..0.5);
    Arc::new(random_graph(n, p, |_: &mut ChaCha8Rng| 1.0, rng))
}

/// Small random instances of each problem kind, tagged with whether the
/// RLS success check applies (max-cut and uniform-cost coverage).
fn oracle_instances(rng: &mut ChaCha8Rng) -> Vec<(Problem, bool)> {
    let mut out = Vec::new();
    for i in 0..50 {
        let n = rng.random_range(4..=12);
        let g = coverage_instance(n, rng);
        if i % 2 == 0 {
            let b = rng.random_range(1..=n / 2) as f64;
            out.push((Problem::max_coverage(g, CostModel::uniform(n, b).unwrap()).unwrap(), true));
        } else {
            let b = rng.random_range(2.0..3.0 * n as f64);
            let cost = CostModel::from_degrees(BaseCost::LinearDegree, &g.degrees(), b).unwrap();
            out.push((Problem::max_coverage(g, cost).unwrap(), false));
        }
    }
    for _ in 0..50 {
        let n = rng.random_range(4..=12);
        let p = rng.random_range(0.2..0.6);
        let g = random_graph(n, p, |r: &mut ChaCha8Rng| r.random_range(1..=5) as f64, rng);
        out.push((Problem::max_cut(Arc::new(g)), true));
    }
    for _ in 0..50 {
        let n = rng.random_range(4..=10);
        let arcs = rng.random_range(n..=12);
        let g = Arc::new(random_digraph(n, arcs, rng));
        let b = rng.random_range(1..=3) as f64;
        out.push((Problem::max_influence(g, CostModel::uniform(n, b).unwrap(), 100).unwrap(), false));
    }
    for _ in 0..50 {
        let m = rng.random_range(2..=12);
        let cities = rng.random_range(2..=4);
        out.push((Problem::pwt(Arc::new(random_ttp(cities, m, rng))), false));
    }
    out
}

fn is_local_optimum(p: &Problem, x: &BitString) -> bool {
    let f = p.evaluate_exact(x).unwrap().fitness;
    (0..x.len()).all(|i| {
        let mut y = x.clone();
        y.flip(i);
        p.evaluate_exact(&y).unwrap().fitness <= f
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let instances = oracle_instances(&mut rng);
    let optima: Vec<f64> = instances.par_iter().map(|(p, _)| brute_force_optimum(p).unwrap().1).collect();

    let exceed: usize = instances
        .par_iter()
        .zip(&optima)
        .enumerate()
        .map(|(i, ((p, _), &opt))| {
            let budget = if p.simulations().is_some() { 300 } else { 1000 };
            AlgorithmName::ALL
                .iter()
                .filter(|&&name| {
                    let trace = run(&AlgorithmSpec::new(name), p, budget, i as u64).unwrap();
                    let point = trace.final_point.as_ref().unwrap();
                    let value = p.evaluate_exact(point).unwrap().fitness;
                    value > opt + 1e-9
                })
                .count()
        })
        .sum();

    let rls = AlgorithmSpec::parse("rls").unwrap();
    // unsuccessful runs are checked to end in a point without a strictly
    // better single-bit neighbour
    let per_instance: Vec<(&'static str, usize, usize)> = instances
        .par_iter()
        .zip(&optima)
        .filter(|((_, rls_check), _)| *rls_check)
        .map(|((p, _), &opt)| {
            let budget = 50 * (1u64 << p.dimension());
            let mut hits = 0;
            let mut not_local = 0;
            for s in 0..30u64 {
                let t = run(&rls, p, budget, 1000 + s).unwrap();
                if t.final_fitness >= opt - 1e-9 {
                    hits += 1;
                } else if !is_local_optimum(p, t.final_point.as_ref().unwrap()) {
                    not_local += 1;
                }
            }
            (p.kind().key(), hits, not_local)
        })
        .collect();
    let not_local: usize = per_instance.iter().map(|h| h.2).sum();
    let mut by_kind = String::new();
    for kind in ["max-coverage", "max-cut"] {
        let hits: Vec<usize> = per_instance.iter().filter(|h| h.0 == kind).map(|h| h.1).collect();
        let total: usize = hits.iter().sum();
        let full = hits.iter().filter(|&&h| h >= 27).count();
        by_kind.push_str(&format!(
            "; {kind}: {total}/{} runs, {full}/{} instances at >=27/30",
            30 * hits.len(),
            hits.len()
        ));
    }
    let hits: usize = per_instance.iter().map(|h| h.1).sum();
    let total = 30 * per_instance.len();
    let rate = hits as f64 / total as f64;
    let elapsed = start.elapsed();
    outcome(
        exceed == 0 && rate >= 0.9 && within(elapsed, Duration::from_secs(120)),
        format!(
            "{} instances, {} runs above optimum; RLS optimum rate {hits}/{total} = {:.3}{by_kind}; \
             unsuccessful runs not at a 1-flip local optimum: {not_local}; {:.1}s",
            instances.len(),
            exceed,
            rate,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut failures = Vec::new();
    for i in 0..100 {
        let n = rng.random_range(2..=8);
        let g = Arc::new(random_graph(n, rng.random_range(0.2..0.8), |r: &mut ChaCha8Rng| r.random_range(0.1..5.0), &mut rng));
        let cov = Problem::max_coverage(g.clone(), CostModel::uniform(n, n as f64).unwrap()).unwrap();
        let cut = Problem::max_cut(g);
        let arcs = rng.random_range(0..=12.min(n * (n - 1)));
        let d = Arc::new(random_digraph(n, arcs, &mut rng));
        let inf = Problem::max_influence(d, CostModel::uniform(n, n as f64).unwrap(), 1).unwrap();
        for (name, p, monotone) in [("coverage", &cov, true), ("cut", &cut, false), ("influence", &inf, true)] {
            let table = objective_table(p).unwrap();
            if check_submodular_exhaustive(&table, 1e-9).is_some() {
                failures.push(format!("graph {i} {name} not submodular"));
            }
            if monotone && check_monotone(&table, 1e-9).is_some() {
                failures.push(format!("graph {i} {name} not monotone"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && within(elapsed, Duration::from_secs(60)),
        format!("100 graphs x 3 objectives, {} violations {:?}; {:.1}s", failures.len(), failures.first(), elapsed.as_secs_f64()),
    )
}

fn criterion_3() -> Outcome {
    let ones = |n: usize, k: usize| BitString::from_bits((0..n).map(|i| i < k).collect());
    let cheb = CostModel::uniform(5, 10.0)
        .unwrap()
        .with_chance(ChanceBound::Chebyshev, ChanceParams::new(0.5, 0.1).unwrap())
        .unwrap()
        .cost_chebyshev(&ones(5, 3))
        .unwrap();
    let cher = CostModel::uniform(5, 10.0)
        .unwrap()
        .with_chance(ChanceBound::Chernoff, ChanceParams::new(1.0, 0.1).unwrap())
        .unwrap()
        .cost_chernoff(&ones(5, 2))
        .unwrap();
    let cher_hand = 2.0 + (10f64.ln() * 4.0).sqrt();

    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut collapse_failures = 0;
    for _ in 0..10_000 {
        let n = rng.random_range(1..40);
        let costs: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..100.0)).collect();
        let alpha = rng.random_range(1e-6..=0.5);
        let x = BitString::random(n, &mut rng);
        let base = CostModel::explicit(costs, 1e9).unwrap();
        let expected = base.expected_cost(&x).unwrap();
        let params = ChanceParams::new(0.0, alpha).unwrap();
        let a = base.clone().with_chance(ChanceBound::Chebyshev, params).unwrap().cost(&x).unwrap();
        let b = base.with_chance(ChanceBound::Chernoff, params).unwrap().cost(&x).unwrap();
        if a != expected || b != expected {
            collapse_failures += 1;
        }
    }
    let pass = (cheb - 4.5).abs() <= 1e-9 && (cher - cher_hand).abs() <= 1e-9 && (cher - 5.03486).abs() < 1e-5 && collapse_failures == 0;
    outcome(pass, format!("chebyshev {cheb:.12}, chernoff {cher:.12}, delta=0 collapse failures {collapse_failures}/10000"))
}

/// Exact mean and variance of the spread by enumerating live-arc worlds.
fn spread_moments(g: &DirectedGraph, seeds: &[usize]) -> (f64, f64) {
    let arcs = g.arcs();
    let n = g.node_count();
    let (mut mean, mut second) = (0.0, 0.0);
    for world in 0..1u64 << arcs.len() {
        let mut prob = 1.0;
        for (i, a) in arcs.iter().enumerate() {
            prob *= if world >> i & 1 == 1 { a.prob } else { 1.0 - a.prob };
        }
        if prob == 0.0 {
            continue;
        }
        let mut active = vec![false; n];
        let mut stack: Vec<usize> = seeds.to_vec();
        for &s in seeds {
            active[s] = true;
        }
        while let Some(u) = stack.pop() {
            for (i, a) in arcs.iter().enumerate() {
                if a.from == u && world >> i & 1 == 1 && !active[a.to] {
                    active[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        let reached = active.iter().filter(|&&b| b).count() as f64;
        mean += prob * reached;
        second += prob * reached * reached;
    }
    (mean, second - mean * mean)
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut worst = 30;
    let mut mismatch = 0.0f64;
    for graph in 0..20 {
        let n = rng.random_range(3..=9);
        let arcs = rng.random_range(1..=12.min(n * (n - 1)));
        let g = random_digraph(n, arcs, &mut rng);
        let k = rng.random_range(1..=2.min(n));
        let mut seeds: Vec<usize> = rand::seq::index::sample(&mut rng, n, k).into_vec();
        seeds.sort_unstable();
        let exact = exact_influence_expectation(&g, &seeds).unwrap();
        let (mean, var) = spread_moments(&g, &seeds);
        mismatch = mismatch.max((mean - exact).abs());
        let se = (var / 1000.0).sqrt();
        let x = BitString::from_bits((0..n).map(|v| seeds.contains(&v)).collect());
        let inside = (0..30u64)
            .filter(|&rep| {
                let mut sim = RngStream::new(graph * 100 + rep, Purpose::Simulation);
                let est = estimate_influence(&g, &x, 1000, &mut sim);
                (est - exact).abs() <= 3.0 * se + 1e-12
            })
            .count();
        worst = worst.min(inside);
    }
    outcome(
        worst >= 28 && mismatch < 1e-9,
        format!("worst graph {worst}/30 repetitions within 3 SE; exact vs enumeration oracle max diff {mismatch:.1e}"),
    )
}

fn criterion_5() -> Outcome {
    let mut sim = RngStream::from_seed(0);
    let single = |items: Vec<Item>| Problem::pwt(Arc::new(TtpInstance::new(vec![5.0], items, 1.0, 2.0, 3.0, 1.0).unwrap()));
    let p = single(vec![Item { city: 0, profit: 10, weight: 3 }]);
    let a = p.evaluate(&BitString::parse("1").unwrap(), &mut sim).fitness;
    let b = p.evaluate(&BitString::parse("0").unwrap(), &mut sim).fitness;
    let p = single(vec![Item { city: 0, profit: 1, weight: 2 }, Item { city: 0, profit: 1, weight: 2 }]);
    let c = p.evaluate(&BitString::parse("11").unwrap(), &mut sim).fitness;
    let examples = a == 5.0 && b == -2.5 && c == -6.0;

    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut violations = 0;
    for _ in 0..50 {
        let m = rng.random_range(1..=12);
        let cities = rng.random_range(1..=5);
        let p = Problem::pwt(Arc::new(random_ttp(cities, m, &mut rng)));
        let (mut min_feasible, mut max_infeasible) = (f64::INFINITY, f64::NEG_INFINITY);
        for mask in 0..1u64 << m {
            let e = p.evaluate(&BitString::from_mask(mask, m), &mut sim);
            if e.feasible {
                min_feasible = min_feasible.min(e.fitness);
            } else {
                max_infeasible = max_infeasible.max(e.fitness);
            }
        }
        if max_infeasible >= min_feasible {
            violations += 1;
        }
    }
    outcome(examples && violations == 0, format!("examples ({a}, {b}, {c}); ordering violations {violations}/50"))
}

fn synthetic_instance() -> Problem {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let g = Arc::new(random_graph(200, 0.05, |_: &mut ChaCha8Rng| 1.0, &mut rng));
    Problem::max_coverage(g, CostModel::uniform(200, 10.0).unwrap()).unwrap()
}

fn runs(problem: &Problem, key: &str, budget: u64) -> Vec<RunTrace> {
    let spec = AlgorithmSpec::parse(key).unwrap();
    (0..30u64).into_par_iter().map(|s| run(&spec, problem, budget, 7000 + s).unwrap()).collect()
}

fn criterion_6(problem: &Problem) -> (Outcome, Vec<RunTrace>) {
    let start = Instant::now();
    let rs = runs(problem, "rs", 10_000);
    let feasible_rs = rs.iter().filter(|t| t.final_fitness >= 0.0).count();
    let mut detail = format!("random search feasible in {feasible_rs}/30 runs");
    let mut pass = feasible_rs == 0;
    let mut all = rs;
    for key in ["1+1-ea", "rls", "ghc"] {
        let traces = runs(problem, key, 1000);
        let ok = traces.iter().filter(|t| t.final_fitness >= 1.0).count();
        pass &= ok == 30;
        detail.push_str(&format!("; {key} f'>=1 in {ok}/30"));
        all.extend(traces);
    }
    let elapsed = start.elapsed();
    pass &= within(elapsed, Duration::from_secs(300));
    detail.push_str(&format!("; {:.1}s", elapsed.as_secs_f64()));
    (outcome(pass, detail), all)
}

/// One-sided Mann-Whitney U test of `H1: a tends to exceed b`, normal
/// approximation with tie correction. Returns the p-value.
fn mann_whitney_greater(a: &[f64], b: &[f64]) -> f64 {
    let mut pooled: Vec<(f64, usize)> = a.iter().map(|&x| (x, 0)).chain(b.iter().map(|&x| (x, 1))).collect();
    pooled.sort_by(|x, y| x.0.total_cmp(&y.0));
    let n = pooled.len();
    let mut ranks = vec![0.0; n];
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && pooled[j + 1].0 == pooled[i].0 {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        tie_term += t * t * t - t;
        for r in &mut ranks[i..=j] {
            *r = (i + j) as f64 / 2.0 + 1.0;
        }
        i = j + 1;
    }
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let r1: f64 = pooled.iter().zip(&ranks).filter(|(p, _)| p.1 == 0).map(|(_, r)| r).sum();
    let u = r1 - n1 * (n1 + 1.0) / 2.0;
    let mean = n1 * n2 / 2.0;
    let nn = n1 + n2;
    let var = n1 * n2 / 12.0 * ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
    if var == 0.0 {
        return if u > mean { 0.0 } else { 1.0 };
    }
    let z = (u - mean - 0.5) / var.sqrt();
    1.0 - Normal::standard().cdf(z)
}

fn criterion_7(problem: &Problem) -> (Outcome, Vec<RunTrace>) {
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let ghc = runs(problem, "ghc", 100_000);
    let rs = runs(problem, "rs", 100_000);
    let ea = runs(problem, "1+1-ea", 100_000);
    let ghc_2000: Vec<f64> = ghc.iter().map(|t| t.best_at(2000).unwrap()).collect();
    let rs_best = mean(&rs.iter().map(|t| t.final_fitness).collect::<Vec<_>>());
    let ghc_final: Vec<f64> = ghc.iter().map(|t| t.final_fitness).collect();
    let ea_final: Vec<f64> = ea.iter().map(|t| t.final_fitness).collect();
    let p_rs = mann_whitney_greater(&ghc_2000, &rs.iter().map(|t| t.final_fitness).collect::<Vec<_>>());
    let p_ea = mann_whitney_greater(&ea_final, &ghc_final);
    let pass = mean(&ghc_2000) >= rs_best && mean(&ea_final) >= mean(&ghc_final) && p_rs < 0.05 && p_ea < 0.05;
    let detail = format!(
        "gHC mean at 2000 = {:.3} vs random search best {:.3} (p={p_rs:.2e}); (1+1)-EA final {:.3} vs gHC final {:.3} (p={p_ea:.2e})",
        mean(&ghc_2000),
        rs_best,
        mean(&ea_final),
        mean(&ghc_final)
    );
    let mut all = ghc;
    all.extend(rs);
    all.extend(ea);
    (outcome(pass, detail), all)
}

fn criterion_8(datasets: &[Vec<RunTrace>]) -> Outcome {
    let trace = |alg: &str, records: &[(u64, f64)], budget: u64| RunTrace {
        algorithm: alg.into(),
        problem_id: 1,
        problem_name: "P".into(),
        instance_id: 1,
        dimension: 3,
        seed: 0,
        budget,
        evaluations: budget,
        records: records.iter().map(|&(evaluation, fitness)| submodbench::algorithms::Improvement { evaluation, fitness }).collect(),
        final_fitness: records.last().unwrap().1,
        final_point: None,
    };
    let ert = compute_ert(
        &[
            trace("a", &[(1, 0.0), (10, 5.0)], 100),
            trace("a", &[(1, 0.0), (20, 5.0)], 100),
            trace("a", &[(1, 0.0), (30, 4.0)], 100),
        ],
        5.0,
    );

    let mut monotone = true;
    for data in datasets {
        let grouped = group_traces(data.iter().cloned());
        let max = data.iter().map(|t| t.budget).max().unwrap_or(1);
        for c in compute_ecdf(&grouped, &budget_grid(max, 60), 25) {
            monotone &= c.values.windows(2).all(|w| w[0] <= w[1]) && c.values.iter().all(|v| (0.0..=1.0).contains(v));
        }
    }

    let key = |i| InstanceKey { problem_id: 1, problem_name: "P".into(), dimension: 3, instance_id: i };
    let mut table = analysis::FinalTable::new();
    for i in 0..3 {
        let algs: BTreeMap<String, Vec<f64>> = [
            ("a".to_string(), vec![30.0, 31.0, 32.0]),
            ("b".to_string(), vec![20.0, 21.0, 22.0]),
            ("c".to_string(), vec![10.0, 11.0, 12.0]),
        ]
        .into_iter()
        .collect();
        table.insert(key(i), algs);
    }
    let ranked = glicko2_rank(&table, 25, &Glicko2::default(), &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
    let order: Vec<&str> = ranked.iter().map(|r| r.algorithm.as_str()).collect();

    let mut wt = analysis::FinalTable::new();
    wt.insert(
        key(0),
        [("a".to_string(), vec![5.0, 5.0, 1.0, 4.0, 0.0]), ("b".to_string(), vec![1.0, 2.0, 3.0, 3.0, 9.0])].into_iter().collect(),
    );
    let frac = pairwise_win_fraction(&wt, PairingMode::Paired).unwrap().get("a", "b").unwrap();

    let pass = ert == 65.0 && monotone && order == ["a", "b", "c"] && frac == 0.6;
    outcome(pass, format!("ERT {ert}; ECDF monotone on {} datasets: {monotone}; glicko2 order {order:?}; win fraction {frac}", datasets.len()))
}

fn smoke_config(output: &Path, workers: usize) -> RunConfig {
    let problem = |kind: &str, file: &str, cost: Option<&str>| ProblemConfig {
        kind: kind.into(),
        instance: fixture(file),
        format: None,
        cost: cost.map(str::to_string),
        simulations: None,
        instance_id: None,
        one_indexed: false,
        penalty_weight: None,
        penalty_exponent: None,
    };
    let algorithm = |name: &str| AlgorithmConfig { name: name.into(), label: None, params: BTreeMap::new() };
    RunConfig {
        suite: "smoke".into(),
        output: output.to_path_buf(),
        runs: 5,
        budget: 1000,
        seed: 99,
        workers,
        ioh_info: false,
        problems: vec![problem("max-coverage", "cov12.txt", Some("uniform:budget=4")), problem("max-cut", "cut14.gset", None)],
        algorithms: vec![algorithm("1+1-ea"), algorithm("sa-auto"), algorithm("umda")],
    }
}

fn dat_files(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    walkdir::WalkDir::new(root)
        .into_iter()
        .filter_map(|e| e.ok())
        .filter(|e| e.path().extension().is_some_and(|x| x == "dat"))
        .map(|e| (e.path().strip_prefix(root).unwrap().to_path_buf(), fs::read(e.path()).unwrap()))
        .collect()
}

fn criterion_9() -> (Outcome, Vec<RunTrace>) {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let outputs: Vec<PathBuf> = ["w1a", "w1b", "w8"].iter().map(|d| dir.path().join(d)).collect();
    let mut written = 0;
    for (out, workers) in outputs.iter().zip([1, 1, 8]) {
        written = execute(&smoke_config(out, workers)).unwrap().traces_written;
    }
    let files: Vec<_> = outputs.iter().map(|o| dat_files(o)).collect();
    let identical = files[0] == files[1] && files[0] == files[2];
    let dataset = read_dataset(&outputs[0]).unwrap();
    let elapsed = start.elapsed();
    let pass = identical && written == 30 && files[0].len() == 6 && within(elapsed, Duration::from_secs(60));
    (
        outcome(
            pass,
            format!("{written} traces in {} .dat files, byte-identical across runs and workers 1/8: {identical}; {:.1}s", files[0].len(), elapsed.as_secs_f64()),
        ),
        dataset,
    )
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let g = coverage_instance(20, &mut rng);
    let problems = [
        Problem::max_coverage(g.clone(), CostModel::uniform(20, 5.0).unwrap()).unwrap(),
        Problem::max_cut(g),
        Problem::max_influence(Arc::new(random_digraph(15, 30, &mut rng)), CostModel::uniform(15, 3.0).unwrap(), 10).unwrap(),
        Problem::pwt(Arc::new(random_ttp(4, 16, &mut rng))),
    ];
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for p in &problems {
        for name in AlgorithmName::ALL {
            for budget in [1u64, 7, 100, 1003] {
                let t = run(&AlgorithmSpec::new(name), p, budget, budget).unwrap();
                checked += 1;
                if t.evaluations != budget || t.validate().is_err() {
                    mismatches.push(format!("{name} on {} budget {budget}: {}", p.kind().key(), t.evaluations));
                }
            }
        }
    }
    outcome(mismatches.is_empty(), format!("{checked} runs, {} mismatches {:?}", mismatches.len(), mismatches.first()))
}

fn main() -> ExitCode {
    let report = |n: usize, o: &Outcome| {
        println!("criterion {n:>2}: {}  {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        o.pass
    };
    let mut all = true;
    all &= report(1, &criterion_1());
    all &= report(2, &criterion_2());
    all &= report(3, &criterion_3());
    all &= report(4, &criterion_4());
    all &= report(5, &criterion_5());
    let problem = synthetic_instance();
    let (c6, d6) = criterion_6(&problem);
    all &= report(6, &c6);
    let (c7, d7) = criterion_7(&problem);
    all &= report(7, &c7);
    let (c9, d9) = criterion_9();
    all &= report(8, &criterion_8(&[d6, d7, d9]));
    all &= report(9, &c9);
    all &= report(10, &criterion_10());
    if all {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: some criteria failed");
        ExitCode::FAILURE
    }
}
