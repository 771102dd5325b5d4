use super::{Graph, Permutation};
use crate::error::GraphError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform random permutation of `0..n` by seeded Fisher–Yates.
pub fn random_permutation(n: usize, seed: u64) -> Result<Permutation, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    Ok(Permutation(p))
}

/// G(n, p): every unordered pair is an edge independently with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::Probability(p));
    }
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            // gen::<f64>() is in [0, 1), so p = 1 always fires and p = 0 never does
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_permutation() {
        assert_eq!(random_permutation(1, 9).unwrap().as_slice(), &[0]);
        assert_eq!(random_permutation(0, 9), Err(GraphError::Empty));
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(
            random_permutation(20, 7).unwrap(),
            random_permutation(20, 7).unwrap()
        );
        assert_ne!(
            random_permutation(20, 7).unwrap(),
            random_permutation(20, 8).unwrap()
        );
        assert_eq!(
            erdos_renyi(15, 0.3, 1).unwrap(),
            erdos_renyi(15, 0.3, 1).unwrap()
        );
    }

    #[test]
    fn permutation_positions_uniform() {
        // Each (position, value) cell is Binomial(draws, 1/n); allow 3 sigma
        // plus a small slack for the 100 simultaneous cells.
        let (n, draws) = (10usize, 10_000u64);
        let mut counts = vec![vec![0u32; n]; n];
        for seed in 0..draws {
            let p = random_permutation(n, seed).unwrap();
            for (pos, &val) in p.as_slice().iter().enumerate() {
                counts[pos][val] += 1;
            }
        }
        let mean = draws as f64 / n as f64;
        let sigma = (draws as f64 * 0.1 * 0.9).sqrt();
        let mut outside = 0;
        for row in &counts {
            for &c in row {
                if (f64::from(c) - mean).abs() > 3.0 * sigma {
                    outside += 1;
                }
            }
        }
        // ~0.27% of 100 cells expected outside 3 sigma
        assert!(outside <= 2, "{outside} cells outside 3 sigma");
    }

    #[test]
    fn edge_probability_extremes() {
        assert_eq!(erdos_renyi(6, 0.0, 3).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(6, 1.0, 3).unwrap(), Graph::complete(6).unwrap());
        assert_eq!(erdos_renyi(6, 1.5, 3), Err(GraphError::Probability(1.5)));
    }

    #[test]
    fn mean_edge_count() {
        // Binomial(190, 0.5): mean 95, sd sqrt(47.5); the mean of 1000 draws
        // has sd sqrt(47.5 / 1000).
        let total: usize = (0..1000)
            .map(|s| erdos_renyi(20, 0.5, s).unwrap().edge_count())
            .sum();
        let mean = total as f64 / 1000.0;
        let sd = (47.5f64 / 1000.0).sqrt();
        assert!((mean - 95.0).abs() < 3.0 * sd, "mean edge count {mean}");
    }
}
