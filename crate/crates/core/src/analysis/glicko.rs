use std::f64::consts::PI;

use rand::Rng;

use super::{algorithms, AnalysisError, FinalTable};

const SCALE: f64 = 173.7178;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Glicko2State {
    pub rating: f64,
    pub deviation: f64,
    pub volatility: f64,
}

impl Default for Glicko2State {
    fn default() -> Self {
        Self { rating: 1500.0, deviation: 350.0, volatility: 0.06 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Win,
    Draw,
    Loss,
}

impl Outcome {
    pub fn score(self) -> f64 {
        match self {
            Outcome::Win => 1.0,
            Outcome::Draw => 0.5,
            Outcome::Loss => 0.0,
        }
    }

    fn compare(a: f64, b: f64) -> Self {
        if a > b {
            Outcome::Win
        } else if a < b {
            Outcome::Loss
        } else {
            Outcome::Draw
        }
    }

    fn reverse(self) -> Self {
        match self {
            Outcome::Win => Outcome::Loss,
            Outcome::Draw => Outcome::Draw,
            Outcome::Loss => Outcome::Win,
        }
    }
}

/// Glicko-2 rating system parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Glicko2 {
    pub tau: f64,
    pub tolerance: f64,
}

impl Default for Glicko2 {
    fn default() -> Self {
        Self { tau: 0.5, tolerance: 1e-6 }
    }
}

impl Glicko2 {
    /// New state of `player` after one rating period with `games` against
    /// opponents given by their pre-period states.
    pub fn update(&self, player: Glicko2State, games: &[(Glicko2State, Outcome)]) -> Glicko2State {
        let mu = (player.rating - 1500.0) / SCALE;
        let phi = player.deviation / SCALE;
        let sigma = player.volatility;
        if games.is_empty() {
            let phi_star = (phi * phi + sigma * sigma).sqrt();
            return Glicko2State { deviation: phi_star * SCALE, ..player };
        }

        let mut inv_v = 0.0;
        let mut sum = 0.0;
        for (opponent, outcome) in games {
            let mu_j = (opponent.rating - 1500.0) / SCALE;
            let phi_j = opponent.deviation / SCALE;
            let g = 1.0 / (1.0 + 3.0 * phi_j * phi_j / (PI * PI)).sqrt();
            let e = 1.0 / (1.0 + (-g * (mu - mu_j)).exp());
            inv_v += g * g * e * (1.0 - e);
            sum += g * (outcome.score() - e);
        }
        let v = 1.0 / inv_v;
        let delta = v * sum;

        let new_sigma = self.volatility(phi, sigma, v, delta);
        let phi_star = (phi * phi + new_sigma * new_sigma).sqrt();
        let new_phi = 1.0 / (1.0 / (phi_star * phi_star) + 1.0 / v).sqrt();
        let new_mu = mu + new_phi * new_phi * sum;
        Glicko2State { rating: new_mu * SCALE + 1500.0, deviation: new_phi * SCALE, volatility: new_sigma }
    }

    /// Illinois iteration for the new volatility.
    fn volatility(&self, phi: f64, sigma: f64, v: f64, delta: f64) -> f64 {
        let tau = self.tau;
        let a = (sigma * sigma).ln();
        let d2 = delta * delta;
        let p2 = phi * phi;
        let f = |x: f64| {
            let ex = x.exp();
            ex * (d2 - p2 - v - ex) / (2.0 * (p2 + v + ex).powi(2)) - (x - a) / (tau * tau)
        };
        let mut big_a = a;
        let mut big_b = if d2 > p2 + v {
            (d2 - p2 - v).ln()
        } else {
            let mut k = 1.0;
            while f(a - k * tau) < 0.0 {
                k += 1.0;
            }
            a - k * tau
        };
        let mut fa = f(big_a);
        let mut fb = f(big_b);
        while (big_b - big_a).abs() > self.tolerance {
            let c = big_a + (big_a - big_b) * fa / (fb - fa);
            let fc = f(c);
            if fc * fb <= 0.0 {
                big_a = big_b;
                fa = fb;
            } else {
                fa /= 2.0;
            }
            big_b = c;
            fb = fc;
        }
        (big_a / 2.0).exp()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatedAlgorithm {
    pub algorithm: String,
    pub state: Glicko2State,
}

/// Rates algorithms by sampled games on final fitness values.
///
/// For every instance and unordered pair of algorithms present on it,
/// `games_per_pair` games are played, each between a uniformly drawn run of
/// either algorithm; the higher final fitness wins and equal values draw.
/// The games of one instance form one rating period. The result is sorted
/// by decreasing rating.
pub fn glicko2_rank<R: Rng + ?Sized>(
    table: &FinalTable,
    games_per_pair: usize,
    system: &Glicko2,
    rng: &mut R,
) -> Result<Vec<RatedAlgorithm>, AnalysisError> {
    let names = algorithms(table);
    if names.len() < 2 {
        return Err(AnalysisError::TooFewAlgorithms(names.len()));
    }
    let mut states = vec![Glicko2State::default(); names.len()];
    for algs in table.values() {
        let present: Vec<(usize, &Vec<f64>)> = algs
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(name, v)| (names.binary_search(name).expect("collected name"), v))
            .collect();
        let mut games: Vec<Vec<(Glicko2State, Outcome)>> = vec![Vec::new(); names.len()];
        for (i, &(a, runs_a)) in present.iter().enumerate() {
            for &(b, runs_b) in &present[i + 1..] {
                for _ in 0..games_per_pair {
                    let fa = runs_a[rng.random_range(0..runs_a.len())];
                    let fb = runs_b[rng.random_range(0..runs_b.len())];
                    let outcome = Outcome::compare(fa, fb);
                    games[a].push((states[b], outcome));
                    games[b].push((states[a], outcome.reverse()));
                }
            }
        }
        states = states.iter().zip(&games).map(|(&s, g)| system.update(s, g)).collect();
    }
    let mut rated: Vec<RatedAlgorithm> =
        names.into_iter().zip(states).map(|(algorithm, state)| RatedAlgorithm { algorithm, state }).collect();
    rated.sort_by(|x, y| y.state.rating.total_cmp(&x.state.rating).then_with(|| x.algorithm.cmp(&y.algorithm)));
    Ok(rated)
}
