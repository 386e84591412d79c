//! Monte Carlo volume estimation, the independent noisy cross-check.
//!
//! Points are sampled uniformly from the exact bounding box of the body and
//! tested against its facets in floating point.  The boundary has measure
//! zero, so the estimator is unbiased up to float rounding of the facet
//! evaluations, far below the statistical error at any sample count.

use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::scalar::to_f64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Minimum sample count accepted.
pub const MC_MIN_SAMPLES: usize = 100;

/// Estimate the volume of a bounded polytope by rejection sampling.
/// Returns the estimate and its binomial standard error.
pub fn mc_volume(p: &Polytope, samples: usize, seed: u64) -> Result<(f64, f64)> {
    if samples < MC_MIN_SAMPLES {
        return Err(Error::BadParams(format!(
            "need at least {MC_MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let verts = p.vertices()?;
    let dim = p.ambient_dim();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for v in &verts {
        for j in 0..dim {
            let c = to_f64(&v[j]);
            lo[j] = lo[j].min(c);
            hi[j] = hi[j].max(c);
        }
    }
    let mut box_vol = 1.0;
    for j in 0..dim {
        box_vol *= hi[j] - lo[j];
    }
    if box_vol <= 0.0 {
        return Ok((0.0, 0.0));
    }
    let facets: Vec<(Vec<f64>, f64)> = p
        .halfspaces()?
        .iter()
        .map(|h| (h.normal.iter().map(to_f64).collect(), to_f64(&h.offset)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    let mut x = vec![0.0f64; dim];
    for _ in 0..samples {
        for j in 0..dim {
            let u: f64 = rng.gen();
            x[j] = lo[j] + u * (hi[j] - lo[j]);
        }
        let inside = facets.iter().all(|(normal, offset)| {
            let dot: f64 = normal.iter().zip(&x).map(|(a, b)| a * b).sum();
            dot >= *offset
        });
        if inside {
            hits += 1;
        }
    }
    let p_hat = hits as f64 / samples as f64;
    let estimate = box_vol * p_hat;
    let stderr = box_vol * (p_hat * (1.0 - p_hat) / samples as f64).sqrt();
    Ok((estimate, stderr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_traits::{One, Zero};

    fn unit_cube(dim: usize) -> Polytope {
        let lo = vec![crate::scalar::Rat::zero(); dim];
        let hi = vec![crate::scalar::Rat::one(); dim];
        Polytope::axis_box(&lo, &hi).unwrap()
    }

    fn standard_simplex_3d() -> Polytope {
        let z = rat(0);
        let o = rat(1);
        Polytope::from_vrep(
            3,
            vec![
                vec![z.clone(), z.clone(), z.clone()],
                vec![o.clone(), z.clone(), z.clone()],
                vec![z.clone(), o.clone(), z.clone()],
                vec![z.clone(), z.clone(), o.clone()],
            ],
        )
        .unwrap()
    }

    #[test]
    fn too_few_samples_are_rejected() {
        let p = unit_cube(2);
        assert!(matches!(mc_volume(&p, 99, 0), Err(Error::BadParams(_))));
        assert!(mc_volume(&p, 100, 0).is_ok());
    }

    #[test]
    fn unit_cube_estimate_is_exact() {
        let p = unit_cube(3);
        let (est, err) = mc_volume(&p, 500, 11).unwrap();
        assert_eq!(est, 1.0);
        assert_eq!(err, 0.0);
    }

    #[test]
    fn simplex_estimate_is_within_three_sigma() {
        let p = standard_simplex_3d();
        let (est, err) = mc_volume(&p, 20_000, 5).unwrap();
        let truth = 1.0 / 6.0;
        assert!(err > 0.0);
        assert!((est - truth).abs() <= 3.0 * err, "est {est}, err {err}");
    }

    #[test]
    fn same_seed_reproduces_and_new_seed_varies() {
        let p = standard_simplex_3d();
        let a = mc_volume(&p, 2_000, 42).unwrap();
        let b = mc_volume(&p, 2_000, 42).unwrap();
        assert_eq!(a, b);
        let truth = 1.0 / 6.0;
        for seed in 0..8u64 {
            let (est, err) = mc_volume(&p, 20_000, seed).unwrap();
            assert!((est - truth).abs() <= 3.5 * err, "seed {seed}: est {est}, err {err}");
        }
    }

    #[test]
    fn degenerate_box_reports_zero() {
        let z = rat(0);
        let o = rat(1);
        let p = Polytope::from_vrep(
            2,
            vec![vec![z.clone(), z.clone()], vec![o.clone(), z.clone()]],
        )
        .unwrap();
        let (est, err) = mc_volume(&p, 200, 0).unwrap();
        assert_eq!((est, err), (0.0, 0.0));
    }
}
