use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::TransitionMatrix;
use crate::exec::Exec;

/// Trials per independently seeded batch. Fixed so results do not depend
/// on the execution policy.
const BATCH: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationStats {
    pub trials: usize,
    pub max_steps: usize,
    /// Mean number of times `t ∈ [0, max_steps]` with `X_t = start`.
    pub mean_visits: f64,
    /// Sample standard deviation of the visit count over `√trials`.
    pub std_error: f64,
    /// Fraction of trials with `X_t = start` for some `t ≥ 1`.
    pub return_frequency: f64,
}

#[derive(Default)]
struct Tally {
    visits: u64,
    squares: u128,
    returned: u64,
}

/// Monte-Carlo walks from `start`.
///
/// Batch `i` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `i`,
/// and tallies are integers, so the output is identical under either
/// execution policy.
pub fn simulate(
    pi: &TransitionMatrix,
    start: usize,
    max_steps: usize,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> SimulationStats {
    assert!(trials >= 1, "at least one trial");
    // Cumulative probabilities per row; the last bucket absorbs rounding.
    let table: Vec<(Vec<usize>, Vec<f64>)> = (0..pi.len())
        .map(|x| {
            let row = pi.row(x);
            let mut acc = 0.0;
            let mut cum: Vec<f64> = row
                .iter()
                .map(|(_, p)| {
                    acc += p.to_f64().unwrap();
                    acc
                })
                .collect();
            *cum.last_mut().unwrap() = 1.0;
            (row.iter().map(|(y, _)| *y).collect(), cum)
        })
        .collect();

    let batches = trials.div_ceil(BATCH);
    let tallies = exec.map_range(batches, |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        let count = BATCH.min(trials - b * BATCH);
        let mut t = Tally::default();
        for _ in 0..count {
            let mut x = start;
            let mut visits = 1u64;
            for _ in 0..max_steps {
                let (targets, cum) = &table[x];
                x = if targets.len() == 1 {
                    targets[0]
                } else {
                    let u: f64 = rng.random();
                    targets[cum.partition_point(|&c| c <= u).min(targets.len() - 1)]
                };
                if x == start {
                    visits += 1;
                }
            }
            t.visits += visits;
            t.squares += u128::from(visits) * u128::from(visits);
            t.returned += u64::from(visits > 1);
        }
        t
    });
    let total = tallies.iter().fold(Tally::default(), |a, t| Tally {
        visits: a.visits + t.visits,
        squares: a.squares + t.squares,
        returned: a.returned + t.returned,
    });
    let n = trials as f64;
    let mean = total.visits as f64 / n;
    let var = if trials > 1 {
        ((total.squares as f64) - n * mean * mean).max(0.0) / (n - 1.0)
    } else {
        0.0
    };
    SimulationStats {
        trials,
        max_steps,
        mean_visits: mean,
        std_error: (var / n).sqrt(),
        return_frequency: total.returned as f64 / n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::build_pi;
    use crate::walk::tests::path5;

    #[test]
    fn absorbing_start() {
        let pi = TransitionMatrix::parse("a: a=1\n").unwrap();
        let s = simulate(&pi, 0, 7, 10, 1, Exec::Sequential);
        assert_eq!(s.mean_visits, 8.0);
        assert_eq!(s.std_error, 0.0);
    }

    #[test]
    fn flip_chain_visits() {
        let pi = TransitionMatrix::parse("x: y=1\ny: x=1\n").unwrap();
        let s = simulate(&pi, 0, 100, 10_000, 7, Exec::Sequential);
        assert_eq!(s.mean_visits, 51.0);
        assert_eq!(s.return_frequency, 1.0);
    }

    #[test]
    fn no_return_to_transient_vertex() {
        let (g, u) = path5();
        let pi = build_pi(&g, &u).unwrap();
        let s = simulate(&pi, 2, 200, 5000, 3, Exec::default());
        assert_eq!(s.return_frequency, 0.0);
        assert_eq!(s.mean_visits, 1.0);
    }

    #[test]
    fn policies_give_identical_output() {
        let pi = TransitionMatrix::parse("x: y=1/3, z=2/3\ny: x=1/2, z=1/2\nz: x=1\n").unwrap();
        let a = simulate(&pi, 0, 50, 9000, 11, Exec::Sequential);
        let b = simulate(&pi, 0, 50, 9000, 11, Exec::Parallel);
        assert_eq!(a, b);
    }
}
