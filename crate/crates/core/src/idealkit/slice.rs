//! Degrees by counting points on random linear sections.

use rand::Rng;
use rayon::prelude::*;

use super::points::{rational_points_with, PointOptions, Strategy};
use super::Ideal;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::projgeo::ProjectivePoint;
use crate::random::{random_matrix, rng_from_seed};

/// Restriction of `ideal` (of dimension `dim`) to a random linear subspace
/// of dimension `N - dim`, parametrized by the returned full-rank
/// `(N+1) x (N+1-dim)` matrix.
pub fn random_slice<R: Rng + ?Sized>(ideal: &Ideal, dim: usize, rng: &mut R) -> (Ideal, Matrix) {
    let f = ideal.field();
    let cols = ideal.nvars() - dim;
    loop {
        let a = random_matrix(f, ideal.nvars(), cols, rng);
        if a.rank() < cols {
            continue;
        }
        let gens = ideal.generators().iter().map(|g| g.compose_linear(&a)).collect();
        return (Ideal::new(gens).expect("nonempty"), a);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceOutcome {
    /// Geometric point count of each trial.
    pub counts: Vec<usize>,
    /// Count reached by more than half the trials.
    pub mode: usize,
}

/// Modal number of geometric points (over `F_{q^k}`, `k <= k_max`) on
/// `trials` random sections of complementary dimension.
pub fn slice_degree<R: Rng + ?Sized>(
    ideal: &Ideal,
    dim: usize,
    trials: usize,
    k_max: usize,
    rng: &mut R,
) -> Result<SliceOutcome> {
    if dim == 0 || dim >= ideal.nvars() {
        return Err(Error::InvalidParameters(format!("slicing needs 1 <= dim < {}", ideal.nvars())));
    }
    let seeds: Vec<u64> = (0..trials).map(|_| rng.gen()).collect();
    let opts = PointOptions {
        k_max,
        strategy: Strategy::Algebraic,
        ..PointOptions::default()
    };
    let counts = seeds
        .par_iter()
        .map(|&s| {
            let (slice, _) = random_slice(ideal, dim, &mut rng_from_seed(s));
            rational_points_with(&slice, opts).map(|p| p.count())
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut best = (0usize, 0usize);
    for &c in &counts {
        let n = counts.iter().filter(|&&x| x == c).count();
        if n > best.1 || (n == best.1 && c < best.0) {
            best = (c, n);
        }
    }
    if best.1 * 2 <= counts.len() {
        return Err(Error::Inconclusive(counts));
    }
    Ok(SliceOutcome { counts, mode: best.0 })
}

/// Points of `V(I)` over the coefficient field found on random sections,
/// stopping at `target` points or after `max_slices` sections.
pub fn sample_points<R: Rng + ?Sized>(
    ideal: &Ideal,
    dim: usize,
    target: usize,
    max_slices: usize,
    rng: &mut R,
) -> Result<Vec<ProjectivePoint>> {
    let f = ideal.field();
    let opts = PointOptions {
        k_max: 1,
        strategy: Strategy::Algebraic,
        ..PointOptions::default()
    };
    let mut out = Vec::new();
    for _ in 0..max_slices {
        if out.len() >= target {
            break;
        }
        let (slice, a) = random_slice(ideal, dim, rng);
        for p in rational_points_with(&slice, opts)?.rational() {
            out.push(ProjectivePoint::new(f, a.mul_vec(p.coords()))?);
        }
    }
    out.truncate(target);
    Ok(out)
}
