//! Jacobian criterion: a point of `V(I)` is singular when the Jacobian of
//! the generators has rank below the codimension there.

use super::hilbert::hilbert_data;
use super::points::{has_exact_degree, level_field, rational_points_with, FoundPoint, PointOptions, PointSet, Strategy};
use super::Ideal;
use crate::error::{Error, Result};
use crate::field::{FieldElement, LOG_ZERO, MAX_TABLE_ORDER};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::projgeo::{LogScanner, ProjectivePoint, ProjectiveSpace};

/// Jacobian of `gens` at `point`: one row per generator.
pub fn jacobian_matrix(gens: &[Polynomial], point: &[FieldElement]) -> Matrix {
    let f = gens[0].field();
    let rows = gens
        .iter()
        .map(|g| g.gradient().iter().map(|d| d.eval(point)).collect())
        .collect();
    Matrix::from_rows(f, rows).expect("gradients share a length")
}

pub fn jacobian_rank(gens: &[Polynomial], point: &ProjectivePoint) -> usize {
    jacobian_matrix(gens, point.coords()).rank()
}

fn det(m: &[Vec<Polynomial>]) -> Polynomial {
    match m.len() {
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(m[0][0].field(), m[0][0].nvars());
            for j in 0..n {
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &det(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out.sort();
    out
}

/// Nonzero `size x size` minors of the Jacobian of `gens`.
pub fn minors_ideal(gens: &[Polynomial], size: usize) -> Vec<Polynomial> {
    let jac: Vec<Vec<Polynomial>> = gens.iter().map(Polynomial::gradient).collect();
    let n = gens[0].nvars();
    let mut out = Vec::new();
    for rows in combinations(gens.len(), size) {
        for cols in combinations(n, size) {
            let sub: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect())
                .collect();
            let d = det(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

/// Singular points of `V(I)` over `F_{q^k}`, `k <= k_max`. The codimension
/// is taken from the Hilbert series. Spaces within the budget are scanned;
/// otherwise the rank-drop ideal is solved when zero-dimensional.
pub fn singular_points(ideal: &Ideal, opts: PointOptions) -> Result<PointSet> {
    let hd = hilbert_data(ideal)?;
    let base = ideal.field().clone();
    if hd.is_empty() {
        return Ok(PointSet {
            base,
            k_max: opts.k_max,
            points: Vec::new(),
            skipped: Vec::new(),
        });
    }
    let codim = ideal.ambient_dim() - hd.dimension as usize;
    let gens: Vec<Polynomial> = ideal.generators().iter().filter(|g| !g.is_zero()).cloned().collect();
    let fits = |k: usize| -> Result<bool> {
        Ok(match level_field(&base, k)? {
            None => true,
            Some(t) => {
                t.order().is_some_and(|q| q <= MAX_TABLE_ORDER)
                    && ProjectiveSpace::new(&t, ideal.ambient_dim())?.size() <= opts.budget
            }
        })
    };
    let scan_all = match opts.strategy {
        Strategy::Exhaustive => true,
        Strategy::Algebraic => false,
        Strategy::Auto => (1..=opts.k_max).map(fits).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b),
    };
    if !scan_all {
        let mut aug = gens.clone();
        aug.extend(minors_ideal(&gens, codim));
        let aug = Ideal::new(aug)?;
        return rational_points_with(
            &aug,
            PointOptions {
                strategy: Strategy::Algebraic,
                ..opts
            },
        )
        .map_err(|e| match e {
            Error::NotZeroDimensional => Error::BudgetExceeded {
                requested: ProjectiveSpace::new(&base, ideal.ambient_dim())
                    .map(|s| s.size())
                    .unwrap_or(u128::MAX),
                budget: opts.budget,
            },
            other => other,
        });
    }

    let e = base.degree();
    let mut set = PointSet {
        base: base.clone(),
        k_max: opts.k_max,
        points: Vec::new(),
        skipped: Vec::new(),
    };
    for k in 1..=opts.k_max {
        let Some(target) = level_field(&base, k)? else {
            set.skipped.push(k);
            continue;
        };
        let emb = base.embedding_into(&target)?;
        let lifted: Vec<Polynomial> = gens.iter().map(|g| g.map_coefficients(&emb)).collect();
        let sc = LogScanner::new(&target, ideal.ambient_dim())?;
        let t = sc.table();
        let cg: Vec<_> = lifted.iter().map(|g| sc.compile(g)).collect();
        let cj: Vec<Vec<_>> = lifted
            .iter()
            .map(|g| g.gradient().iter().map(|d| sc.compile(d)).collect())
            .collect();
        let nv = ideal.nvars();
        let hits = sc.scan(opts.budget, |logs| {
            if !cg.iter().all(|c| c.eval(t, logs) == LOG_ZERO) {
                return false;
            }
            let mut m: Vec<u32> = cj.iter().flat_map(|row| row.iter().map(|c| c.eval(t, logs))).collect();
            if codim == 1 && cj.len() == 1 {
                return m.iter().all(|&x| x == LOG_ZERO);
            }
            t.rank(cj.len(), nv, &mut m) < codim
        })?;
        let mut pts: Vec<ProjectivePoint> = hits
            .into_iter()
            .map(|i| sc.point(i))
            .filter(|p| has_exact_degree(&target, e, k, p))
            .collect();
        pts.sort();
        set.points.extend(pts.into_iter().map(|point| FoundPoint {
            degree: k,
            field: target.clone(),
            point,
        }));
    }
    Ok(set)
}
