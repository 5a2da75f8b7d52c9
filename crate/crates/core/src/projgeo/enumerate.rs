//! Exhaustive enumeration of `P^N(F_q)`.
//!
//! Order: points are stratified by pivot position `j = 0..=N` (coordinates
//! before `j` are zero, coordinate `j` is one); inside a stratum the free
//! coordinates `x_{j+1}, ..., x_N` run through element indices
//! lexicographically, `x_{j+1}` most significant.

use std::sync::Arc;

use rayon::prelude::*;

use super::ProjectivePoint;
use crate::error::{Error, Result};
use crate::field::{Field, LogTable, LOG_ZERO};
use crate::poly::Polynomial;

/// Default ceiling on the number of enumerated points.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

const CHUNK: u128 = 1 << 15;

#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    field: Field,
    n: usize,
    q: u128,
}

impl ProjectiveSpace {
    pub fn new(field: &Field, n: usize) -> Result<ProjectiveSpace> {
        let q = field
            .order()
            .ok_or_else(|| Error::UnsupportedField("enumeration needs a finite field".into()))?;
        Ok(ProjectiveSpace {
            field: field.clone(),
            n,
            q,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `(q^{N+1} - 1)/(q - 1)`, saturating.
    pub fn size(&self) -> u128 {
        let mut total: u128 = 0;
        let mut pw: u128 = 1;
        for _ in 0..=self.n {
            total = total.saturating_add(pw);
            pw = pw.saturating_mul(self.q);
        }
        total
    }

    pub fn check_budget(&self, budget: u128) -> Result<()> {
        let size = self.size();
        if size > budget {
            return Err(Error::BudgetExceeded {
                requested: size,
                budget,
            });
        }
        Ok(())
    }

    /// Stratum and offset of a global index.
    fn locate(&self, mut index: u128) -> (usize, u128) {
        for j in 0..=self.n {
            let len = self.q.pow((self.n - j) as u32);
            if index < len {
                return (j, index);
            }
            index -= len;
        }
        panic!("point index out of range");
    }

    /// Element indices of all coordinates of point `index`; zero-prefix
    /// coordinates are 0 and the pivot is the index of 1.
    fn digits(&self, index: u128) -> (usize, Vec<u128>) {
        let (j, mut off) = self.locate(index);
        let mut d = vec![0u128; self.n + 1];
        for slot in d[j + 1..].iter_mut().rev() {
            *slot = off % self.q;
            off /= self.q;
        }
        d[j] = 1;
        (j, d)
    }

    pub fn point_at(&self, index: u128) -> ProjectivePoint {
        let (_, d) = self.digits(index);
        ProjectivePoint {
            coords: d.iter().map(|&i| self.field.element_from_index(i)).collect(),
        }
    }

    pub fn index_of(&self, p: &ProjectivePoint) -> u128 {
        let j = p.pivot();
        let start: u128 = (0..j).map(|s| self.q.pow((self.n - s) as u32)).sum();
        let off = p.coords[j + 1..]
            .iter()
            .fold(0u128, |acc, c| acc * self.q + self.field.index_of(c));
        start + off
    }

    pub fn points(&self, budget: u128) -> Result<impl Iterator<Item = ProjectivePoint> + '_> {
        self.check_budget(budget)?;
        Ok((0..self.size()).map(move |i| self.point_at(i)))
    }
}

/// A polynomial compiled for evaluation on logarithms of coordinates.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    /// (log of coefficient, start, len) into `factors`
    terms: Vec<(u32, u32, u32)>,
    /// (variable, exponent)
    factors: Vec<(u32, u64)>,
}

impl CompiledPoly {
    pub fn new(table: &LogTable, f: &Polynomial) -> CompiledPoly {
        let mut terms = Vec::with_capacity(f.num_terms());
        let mut factors = Vec::new();
        for (m, c) in f.terms() {
            let start = factors.len() as u32;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    factors.push((i as u32, e as u64));
                }
            }
            terms.push((table.log_of(c), start, factors.len() as u32 - start));
        }
        CompiledPoly { terms, factors }
    }

    #[inline]
    pub fn eval(&self, table: &LogTable, logs: &[u32]) -> u32 {
        let mut acc = LOG_ZERO;
        'terms: for &(c, start, len) in &self.terms {
            let mut s = c as u64;
            for &(v, e) in &self.factors[start as usize..(start + len) as usize] {
                let l = logs[v as usize];
                if l == LOG_ZERO {
                    continue 'terms;
                }
                s += l as u64 * e;
            }
            acc = table.add(acc, table.reduce_exponent(s));
        }
        acc
    }
}

/// Parallel exhaustive scanner over `P^N(F_q)` working on logarithms.
#[derive(Clone, Debug)]
pub struct LogScanner {
    space: ProjectiveSpace,
    table: Arc<LogTable>,
}

impl LogScanner {
    pub fn new(field: &Field, n: usize) -> Result<LogScanner> {
        Ok(LogScanner {
            space: ProjectiveSpace::new(field, n)?,
            table: Arc::new(LogTable::new(field)?),
        })
    }

    pub fn space(&self) -> &ProjectiveSpace {
        &self.space
    }

    pub fn table(&self) -> &LogTable {
        &self.table
    }

    pub fn compile(&self, f: &Polynomial) -> CompiledPoly {
        CompiledPoly::new(&self.table, f)
    }

    /// Indices of the points whose coordinate logs satisfy `keep`, ascending.
    pub fn scan<F>(&self, budget: u128, keep: F) -> Result<Vec<u128>>
    where
        F: Fn(&[u32]) -> bool + Sync,
    {
        self.space.check_budget(budget)?;
        let size = self.space.size();
        let chunks = size.div_ceil(CHUNK);
        let mut hits: Vec<u128> = (0..chunks)
            .into_par_iter()
            .flat_map_iter(|c| {
                let lo = c * CHUNK;
                let hi = (lo + CHUNK).min(size);
                self.scan_range(lo, hi, &keep)
            })
            .collect();
        hits.sort_unstable();
        Ok(hits)
    }

    fn scan_range<F: Fn(&[u32]) -> bool>(&self, lo: u128, hi: u128, keep: &F) -> Vec<u128> {
        let n = self.space.n;
        let q = self.space.q as u32;
        let t = &*self.table;
        let (mut j, d) = self.space.digits(lo);
        let mut digits: Vec<u32> = d.iter().map(|&x| x as u32).collect();
        let mut logs: Vec<u32> = digits.iter().map(|&x| t.log_of_index(x)).collect();
        let mut out = Vec::new();
        let mut idx = lo;
        while idx < hi {
            if keep(&logs) {
                out.push(idx);
            }
            idx += 1;
            // odometer on the free coordinates
            let mut pos = n;
            loop {
                if pos == j {
                    // stratum exhausted: move the pivot right
                    j += 1;
                    if j > n {
                        return out;
                    }
                    for i in 0..=n {
                        digits[i] = if i == j { 1 } else { 0 };
                        logs[i] = t.log_of_index(digits[i]);
                    }
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < q {
                    logs[pos] = t.log_of_index(digits[pos]);
                    break;
                }
                digits[pos] = 0;
                logs[pos] = LOG_ZERO;
                pos -= 1;
            }
        }
        out
    }

    pub fn point(&self, index: u128) -> ProjectivePoint {
        self.space.point_at(index)
    }

    /// Common zeros of `gens`, in enumeration order.
    pub fn common_zeros(&self, gens: &[Polynomial], budget: u128) -> Result<Vec<ProjectivePoint>> {
        let compiled: Vec<CompiledPoly> = gens.iter().map(|g| self.compile(g)).collect();
        let t = &*self.table;
        let hits = self.scan(budget, |logs| {
            compiled.iter().all(|c| c.eval(t, logs) == LOG_ZERO)
        })?;
        Ok(hits.into_iter().map(|i| self.point(i)).collect())
    }
}
