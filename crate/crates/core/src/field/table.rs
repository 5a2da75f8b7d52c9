//! Discrete-log tables for small finite fields, used by the exhaustive
//! point scanners. Elements are carried as logarithms to a fixed primitive
//! element; addition goes through the Zech logarithm table.

use super::{primitive_element, Field, FieldElement};
use crate::error::{Error, Result};

/// Log of zero.
pub const LOG_ZERO: u32 = u32::MAX;

/// Largest field order for which tables are built.
pub const MAX_TABLE_ORDER: u128 = 1 << 20;

#[derive(Clone, Debug)]
pub struct LogTable {
    field: Field,
    /// `q - 1`
    group_order: u32,
    /// log -> element index
    exp: Vec<u32>,
    /// element index -> log
    log: Vec<u32>,
    /// n -> log(1 + g^n)
    zech: Vec<u32>,
    neg_shift: u32,
}

impl LogTable {
    pub fn new(field: &Field) -> Result<LogTable> {
        let q = field
            .order()
            .filter(|q| *q <= MAX_TABLE_ORDER)
            .ok_or_else(|| Error::UnsupportedField(format!("{field} is too large for log tables")))?;
        let g = primitive_element(field)?;
        let n = (q - 1) as u32;
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![LOG_ZERO; q as usize];
        let mut x = field.one();
        for i in 0..n {
            let idx = field.index_of(&x) as u32;
            exp[i as usize] = idx;
            log[idx as usize] = i;
            x = field.mul(&x, &g);
        }
        let one = field.one();
        let zech = (0..n)
            .map(|i| {
                let e = field.add(&one, &field.element_from_index(exp[i as usize] as u128));
                log[field.index_of(&e) as usize]
            })
            .collect();
        let neg_shift = if field.characteristic() == 2 { 0 } else { n / 2 };
        Ok(LogTable {
            field: field.clone(),
            group_order: n,
            exp,
            log,
            zech,
            neg_shift,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.group_order + 1
    }

    #[inline]
    pub fn log_of_index(&self, idx: u32) -> u32 {
        self.log[idx as usize]
    }

    #[inline]
    pub fn index_of_log(&self, l: u32) -> u32 {
        if l == LOG_ZERO {
            0
        } else {
            self.exp[l as usize]
        }
    }

    pub fn log_of(&self, e: &FieldElement) -> u32 {
        self.log[self.field.index_of(e) as usize]
    }

    pub fn element(&self, l: u32) -> FieldElement {
        self.field.element_from_index(self.index_of_log(l) as u128)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == LOG_ZERO || b == LOG_ZERO {
            return LOG_ZERO;
        }
        let s = a as u64 + b as u64;
        (s % self.group_order as u64) as u32
    }

    /// `g^{a} * g^{sum}` where `sum` is an unreduced exponent.
    #[inline]
    pub fn reduce_exponent(&self, e: u64) -> u32 {
        (e % self.group_order as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == LOG_ZERO {
            return b;
        }
        if b == LOG_ZERO {
            return a;
        }
        let n = self.group_order;
        let d = if b >= a { b - a } else { b + n - a };
        let z = self.zech[d as usize];
        if z == LOG_ZERO {
            return LOG_ZERO;
        }
        let s = a + z;
        if s >= n {
            s - n
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == LOG_ZERO {
            return a;
        }
        let s = a + self.neg_shift;
        if s >= self.group_order {
            s - self.group_order
        } else {
            s
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert_ne!(a, LOG_ZERO, "inverse of zero");
        if a == 0 {
            0
        } else {
            self.group_order - a
        }
    }

    /// Rank of a dense matrix of logs (row-major, `cols` wide).
    pub fn rank(&self, rows: usize, cols: usize, data: &mut [u32]) -> usize {
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| data[r * cols + c] != LOG_ZERO) else {
                continue;
            };
            for j in 0..cols {
                data.swap(pivot * cols + j, rank * cols + j);
            }
            let inv = self.inv(data[rank * cols + c]);
            for r in 0..rows {
                if r == rank || data[r * cols + c] == LOG_ZERO {
                    continue;
                }
                let factor = self.neg(self.mul(data[r * cols + c], inv));
                for j in c..cols {
                    let t = self.mul(factor, data[rank * cols + j]);
                    data[r * cols + j] = self.add(data[r * cols + j], t);
                }
            }
            rank += 1;
        }
        rank
    }
}
