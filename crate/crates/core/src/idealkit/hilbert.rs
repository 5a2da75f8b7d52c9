//! Hilbert series of monomial ideals by recursive pivoting, and the
//! projective dimension and degree they determine.

use std::collections::HashMap;

use super::groebner::{buchberger, GroebnerBasis};
use super::Ideal;
use crate::error::{Error, Result};
use crate::poly::Monomial;

/// Numerator `N(t)` of `HS(S/M) = N(t) / (1 - t)^n`, coefficients ascending.
pub type Numerator = Vec<i128>;

fn trim(mut p: Numerator) -> Numerator {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add(a: &[i128], b: &[i128]) -> Numerator {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn mul(a: &[i128], b: &[i128]) -> Numerator {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// `1 - t^d`
fn one_minus(d: u32) -> Numerator {
    let mut p = vec![0; d as usize + 1];
    p[0] += 1;
    p[d as usize] -= 1;
    trim(p)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.clone()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

/// Recursive computation with memoization on the minimal generating set.
struct Numerators {
    memo: HashMap<Vec<Monomial>, Numerator>,
}

impl Numerators {
    fn compute(&mut self, gens: Vec<Monomial>) -> Numerator {
        let gens = minimalize(gens);
        if gens.is_empty() {
            return vec![1];
        }
        if let Some(n) = self.memo.get(&gens) {
            return n.clone();
        }
        let nvars = gens[0].nvars();
        // variable occurring in the most generators
        let counts: Vec<usize> = (0..nvars)
            .map(|v| gens.iter().filter(|g| g.exponents()[v] > 0).count())
            .collect();
        let (v, &c) = counts
            .iter()
            .enumerate()
            .max_by_key(|&(i, c)| (*c, std::cmp::Reverse(i)))
            .unwrap();
        let result = if c <= 1 {
            // pairwise coprime
            gens.iter()
                .fold(vec![1], |acc, g| mul(&acc, &one_minus(g.degree())))
        } else {
            let e = gens
                .iter()
                .map(|g| g.exponents()[v])
                .filter(|&x| x > 0)
                .min()
                .unwrap();
            let pivot = Monomial::var(nvars, v, e);
            let mut with = gens.clone();
            with.push(pivot.clone());
            let colon: Vec<Monomial> = gens
                .iter()
                .map(|g| {
                    let mut x = g.exponents().to_vec();
                    x[v] = x[v].saturating_sub(e);
                    Monomial::new(&x)
                })
                .collect();
            let a = self.compute(with);
            let b = self.compute(colon);
            let mut shifted = vec![0; e as usize];
            shifted.extend(b);
            add(&a, &shifted)
        };
        self.memo.insert(gens, result.clone());
        result
    }
}

/// Hilbert series numerator of `S / (gens)` for a monomial ideal.
pub fn hilbert_numerator(gens: &[Monomial]) -> Numerator {
    Numerators {
        memo: HashMap::new(),
    }
    .compute(gens.to_vec())
}

/// Projective invariants of a homogeneous ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    nvars: usize,
    /// Projective dimension; `-1` for the empty scheme.
    pub dimension: i64,
    /// Degree; 0 for the empty scheme.
    pub degree: u128,
    pub numerator: Numerator,
}

impl HilbertData {
    pub fn from_numerator(nvars: usize, numerator: Numerator) -> HilbertData {
        if numerator.is_empty() {
            return HilbertData {
                nvars,
                dimension: -1,
                degree: 0,
                numerator,
            };
        }
        // divide by (1 - t) while t = 1 is a root
        let mut h = numerator.clone();
        let mut a = 0usize;
        while h.iter().sum::<i128>() == 0 {
            let mut q = vec![0i128; h.len() - 1];
            // h = (1 - t) q  =>  q_i = sum_{j<=i} h_j
            let mut acc = 0;
            for i in 0..q.len() {
                acc += h[i];
                q[i] = acc;
            }
            h = trim(q);
            a += 1;
        }
        let krull = nvars as i64 - a as i64;
        if krull <= 0 {
            return HilbertData {
                nvars,
                dimension: -1,
                degree: 0,
                numerator,
            };
        }
        HilbertData {
            nvars,
            dimension: krull - 1,
            degree: h.iter().sum::<i128>() as u128,
            numerator,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.dimension < 0
    }

    /// `dim_k (S/I)_d`.
    pub fn hilbert_function(&self, d: u64) -> u128 {
        let n = self.nvars as u64;
        if n == 0 {
            return self.numerator.get(d as usize).copied().unwrap_or(0) as u128;
        }
        let mut total: i128 = 0;
        for (i, &c) in self.numerator.iter().enumerate() {
            if i as u64 > d {
                break;
            }
            total += c * binomial(d - i as u64 + n - 1, n - 1) as i128;
        }
        total as u128
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Dimension and degree of a homogeneous ideal.
pub fn hilbert_data(ideal: &Ideal) -> Result<HilbertData> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let gb = buchberger(ideal)?;
    Ok(hilbert_data_of_basis(&gb))
}

/// Invariants from an already computed basis; the order must be graded.
pub fn hilbert_data_of_basis(gb: &GroebnerBasis) -> HilbertData {
    let lms = gb.leading_monomials();
    let num = if lms.iter().any(Monomial::is_one) {
        Vec::new()
    } else {
        hilbert_numerator(&lms)
    };
    HilbertData::from_numerator(gb.nvars(), num)
}
