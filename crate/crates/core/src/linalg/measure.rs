use rand::Rng;

use super::{seeded_rng, StateVector};

/// One standard-basis measurement outcome, deterministic in `seed`.
pub fn measure_sample(state: &StateVector, seed: u64) -> usize {
    measure_samples(state, 1, seed)[0]
}

/// `shots` independent outcomes drawn from `|<x|state>|^2`, using one
/// generator stream seeded with `seed`.
pub fn measure_samples(state: &StateVector, shots: usize, seed: u64) -> Vec<usize> {
    let mut cumulative = Vec::with_capacity(state.dim());
    let mut acc = 0.0;
    for a in state.amplitudes() {
        acc += a.norm_sqr();
        cumulative.push(acc);
    }
    // Never return an outcome of zero probability, even when the total mass
    // sits slightly below 1.
    let last = state
        .amplitudes()
        .iter()
        .rposition(|a| a.norm_sqr() > 0.0)
        .unwrap_or(0);
    let mut rng = seeded_rng(seed);
    (0..shots)
        .map(|_| {
            let u: f64 = rng.random::<f64>() * acc;
            cumulative.partition_point(|&c| c <= u).min(last)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn delta_state_always_returns_its_index() {
        let s = StateVector::basis(3, 5).unwrap();
        assert!(measure_samples(&s, 1000, 42).iter().all(|&x| x == 5));
        assert_eq!(measure_sample(&s, 7), 5);
    }

    #[test]
    fn deterministic_given_seed() {
        let s = StateVector::uniform(4).unwrap();
        assert_eq!(measure_samples(&s, 64, 3), measure_samples(&s, 64, 3));
        assert_ne!(measure_samples(&s, 64, 3), measure_samples(&s, 64, 4));
    }

    #[test]
    fn uniform_frequencies_pass_chi_square() {
        let s = StateVector::uniform(2).unwrap();
        let shots = 100_000;
        let mut counts = [0usize; 4];
        for x in measure_samples(&s, shots, 2024) {
            counts[x] += 1;
        }
        let expected = shots as f64 / 4.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // 3 degrees of freedom, 99.9th percentile.
        assert!(chi2 < 16.27, "chi2 = {chi2}, counts {counts:?}");
        for c in counts {
            assert!((c as f64 / shots as f64 - 0.25).abs() < 0.01);
        }
    }

    #[test]
    fn biased_coin_frequency() {
        let s = StateVector::new(
            1,
            vec![Complex64::new(0.9f64.sqrt(), 0.0), Complex64::new(0.1f64.sqrt(), 0.0)],
        )
        .unwrap();
        let shots = 100_000;
        let zeros = measure_samples(&s, shots, 11).iter().filter(|&&x| x == 0).count();
        let f = zeros as f64 / shots as f64;
        assert!((0.89..=0.91).contains(&f), "frequency {f}");
    }
}
