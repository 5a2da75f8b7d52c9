//! Fixed inputs for the benchmarks in `benches/`.

use fano_core::fano::{random_pointed_hypersurface, sigma_system};
use fano_core::voisin::{normal_form_cubic, NormalFormCubic};
use fano_core::{Field, Ideal};

pub const SEED: u64 = 1;

/// `(n, d, m)` cases with finite line schemes.
pub const LINE_CASES: [(usize, u32, u32); 3] = [(3, 3, 2), (4, 3, 1), (4, 4, 2)];

pub fn line_scheme(p: u64, n: usize, d: u32, m: u32) -> Ideal {
    let f = Field::prime(p).expect("prime");
    sigma_system(&random_pointed_hypersurface(n, d, m, &f, SEED).expect("valid case"))
        .expect("system")
        .ideal()
}

pub fn cubic(r: usize) -> NormalFormCubic {
    normal_form_cubic(r, &Field::prime(10007).expect("prime"), SEED).expect("valid r")
}
