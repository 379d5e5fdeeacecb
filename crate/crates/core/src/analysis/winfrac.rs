use super::{algorithms, AnalysisError, FinalTable};

/// How runs of two algorithms are matched up on an instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairingMode {
    /// Run `k` against run `k`; run counts must agree.
    #[default]
    Paired,
    /// Every run against every run.
    AllPairs,
}

/// Entry `(a, b)` is the fraction of comparisons in which `a` ends
/// strictly better than `b`. Ties count for neither side. The diagonal is
/// 0.5; pairs that never meet are NaN.
#[derive(Clone, Debug, PartialEq)]
pub struct WinMatrix {
    pub algorithms: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl WinMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.algorithms.iter().position(|x| x == a)?;
        let j = self.algorithms.iter().position(|x| x == b)?;
        Some(self.values[i][j])
    }
}

pub fn pairwise_win_fraction(table: &FinalTable, mode: PairingMode) -> Result<WinMatrix, AnalysisError> {
    let names = algorithms(table);
    let k = names.len();
    let mut wins = vec![vec![0u64; k]; k];
    let mut games = vec![vec![0u64; k]; k];
    for (instance, algs) in table {
        let present: Vec<(usize, &String, &Vec<f64>)> =
            algs.iter().map(|(n, v)| (names.binary_search(n).expect("collected name"), n, v)).collect();
        for (x, &(i, name_i, runs_i)) in present.iter().enumerate() {
            for &(j, name_j, runs_j) in &present[x + 1..] {
                let pairs: Vec<(f64, f64)> = match mode {
                    PairingMode::Paired => {
                        if runs_i.len() != runs_j.len() {
                            return Err(AnalysisError::UnequalRuns {
                                instance: instance.to_string(),
                                first: name_i.clone(),
                                first_runs: runs_i.len(),
                                second: name_j.clone(),
                                second_runs: runs_j.len(),
                            });
                        }
                        runs_i.iter().copied().zip(runs_j.iter().copied()).collect()
                    }
                    PairingMode::AllPairs => {
                        runs_i.iter().flat_map(|&a| runs_j.iter().map(move |&b| (a, b))).collect()
                    }
                };
                for (a, b) in pairs {
                    games[i][j] += 1;
                    games[j][i] += 1;
                    if a > b {
                        wins[i][j] += 1;
                    } else if b > a {
                        wins[j][i] += 1;
                    }
                }
            }
        }
    }
    let values = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match (i == j, games[i][j]) {
                    (true, _) => 0.5,
                    (false, 0) => f64::NAN,
                    (false, g) => wins[i][j] as f64 / g as f64,
                })
                .collect()
        })
        .collect();
    Ok(WinMatrix { algorithms: names, values })
}
