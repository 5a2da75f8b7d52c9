//! Seeded random sampling of polynomials, matrices and points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::{monomials_of_degree, Polynomial};

/// Deterministic generator for a seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A homogeneous polynomial of degree `d` with every coefficient sampled.
pub fn random_homogeneous<R: Rng + ?Sized>(field: &Field, nvars: usize, d: u32, rng: &mut R) -> Polynomial {
    let terms: Vec<_> = monomials_of_degree(nvars, d)
        .into_iter()
        .map(|m| (m, field.sample(rng)))
        .collect();
    Polynomial::from_terms(field, nvars, terms)
}

/// Like [`random_homogeneous`] but resampled until nonzero.
pub fn random_nonzero_homogeneous<R: Rng + ?Sized>(
    field: &Field,
    nvars: usize,
    d: u32,
    rng: &mut R,
) -> Polynomial {
    loop {
        let f = random_homogeneous(field, nvars, d, rng);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_matrix<R: Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, field.sample(rng));
        }
    }
    m
}

pub fn random_invertible_matrix<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// A nonzero vector of length `n`.
pub fn random_nonzero_vector<R: Rng + ?Sized>(
    field: &Field,
    n: usize,
    rng: &mut R,
) -> Vec<crate::field::FieldElement> {
    loop {
        let v: Vec<_> = (0..n).map(|_| field.sample(rng)).collect();
        if v.iter().any(|x| !field.is_zero(x)) {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneous_sampling_is_seeded() {
        let f = Field::prime(10007).unwrap();
        let a = random_homogeneous(&f, 4, 3, &mut rng_from_seed(9));
        let b = random_homogeneous(&f, 4, 3, &mut rng_from_seed(9));
        assert_eq!(a, b);
        assert!(a.is_homogeneous());
        assert_eq!(a.degree(), Some(3));
    }
}
