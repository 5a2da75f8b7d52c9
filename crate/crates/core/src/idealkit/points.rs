//! Geometric points of an ideal over `F_{q^k}`, `k <= k_max`, each listed
//! once at its exact degree of definition.

use super::solve::solve_projective;
use super::Ideal;
use crate::error::{Error, Result};
use crate::field::{prime_factors, Field, FieldKind, MAX_EXT_DEGREE, MAX_TABLE_ORDER};
use crate::projgeo::{LogScanner, ProjectivePoint, ProjectiveSpace, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Scan when the space fits the budget, otherwise solve algebraically.
    #[default]
    Auto,
    /// Exhaustive enumeration of `P^N(F_{q^k})`.
    Exhaustive,
    /// Gröbner basis and eliminants; zero-dimensional ideals only.
    Algebraic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointOptions {
    pub k_max: usize,
    pub budget: u128,
    pub strategy: Strategy,
}

impl Default for PointOptions {
    fn default() -> Self {
        PointOptions {
            k_max: 2,
            budget: DEFAULT_BUDGET,
            strategy: Strategy::Auto,
        }
    }
}

/// A point with coordinates in `F_{q^k}`, not defined over a smaller field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundPoint {
    pub degree: usize,
    pub field: Field,
    pub point: ProjectivePoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub base: Field,
    pub k_max: usize,
    pub points: Vec<FoundPoint>,
    /// Levels `k <= k_max` that exceed the supported extension degree.
    pub skipped: Vec<usize>,
}

impl PointSet {
    /// Number of geometric points found.
    pub fn count(&self) -> usize {
        self.points.len()
    }

    /// Points defined over the base field.
    pub fn rational(&self) -> impl Iterator<Item = &ProjectivePoint> {
        self.points.iter().filter(|p| p.degree == 1).map(|p| &p.point)
    }

    /// `(k, number of points of exact degree k)` for the nonempty levels.
    pub fn degree_profile(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for p in &self.points {
            match out.last_mut() {
                Some((k, c)) if *k == p.degree => *c += 1,
                _ => out.push((p.degree, 1)),
            }
        }
        out
    }
}

/// Field `F_{q^k}` for `q = p^e`, the default extension of degree `e k`.
pub(crate) fn level_field(base: &Field, k: usize) -> Result<Option<Field>> {
    let (p, e) = match base.kind() {
        FieldKind::Prime { p } => (*p as u64, 1),
        FieldKind::Extension { p, k, .. } => (*p as u64, *k),
        FieldKind::Rationals => {
            return Err(Error::UnsupportedField("point search needs a finite field".into()))
        }
    };
    if k == 1 {
        return Ok(Some(base.clone()));
    }
    if e * k > MAX_EXT_DEGREE {
        return Ok(None);
    }
    Field::extension(p, e * k).map(Some)
}

/// Whether a point over `F_{q^k}` is defined over no proper subfield
/// containing `F_q`.
pub(crate) fn has_exact_degree(target: &Field, base_degree: usize, k: usize, p: &ProjectivePoint) -> bool {
    prime_factors(k as u128).into_iter().all(|l| {
        let sub = base_degree * k / l as usize;
        !p.coords().iter().all(|c| target.in_subfield(c, sub))
    })
}

pub fn rational_points(ideal: &Ideal, k_max: usize) -> Result<PointSet> {
    rational_points_with(
        ideal,
        PointOptions {
            k_max,
            ..PointOptions::default()
        },
    )
}

pub fn rational_points_with(ideal: &Ideal, opts: PointOptions) -> Result<PointSet> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let base = ideal.field().clone();
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
        let lifted = ideal.map_coefficients(&base.embedding_into(&target)?);
        let mut pts = points_over(&lifted, opts)?;
        pts.retain(|p| has_exact_degree(&target, e, k, p));
        pts.sort();
        set.points.extend(pts.into_iter().map(|point| FoundPoint {
            degree: k,
            field: target.clone(),
            point,
        }));
    }
    Ok(set)
}

fn points_over(ideal: &Ideal, opts: PointOptions) -> Result<Vec<ProjectivePoint>> {
    let f = ideal.field();
    // `None` when the field order or the space size overflows u128
    let space = ProjectiveSpace::new(f, ideal.ambient_dim()).ok();
    let size = space.as_ref().map_or(u128::MAX, |s| s.size());
    let scannable = f.order().is_some_and(|q| q <= MAX_TABLE_ORDER) && size <= opts.budget;
    let scan = || -> Result<Vec<ProjectivePoint>> {
        if f.order().is_some_and(|q| q <= MAX_TABLE_ORDER) {
            LogScanner::new(f, ideal.ambient_dim())?.common_zeros(ideal.generators(), opts.budget)
        } else {
            let space = space.clone().ok_or(Error::BudgetExceeded {
                requested: size,
                budget: opts.budget,
            })?;
            let pts = space
                .points(opts.budget)?
                .filter(|p| ideal.generators().iter().all(|g| p.vanishes(g)))
                .collect();
            Ok(pts)
        }
    };
    match opts.strategy {
        Strategy::Exhaustive => scan(),
        Strategy::Algebraic => solve_projective(ideal),
        Strategy::Auto if scannable => scan(),
        Strategy::Auto => match solve_projective(ideal) {
            Err(Error::NotZeroDimensional) => Err(Error::BudgetExceeded {
                requested: size,
                budget: opts.budget,
            }),
            other => other,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, Polynomial};

    fn ideal(texts: &[&str], n: usize, f: &Field) -> Ideal {
        let names = Polynomial::default_names(n);
        Ideal::new(texts.iter().map(|t| parse(t, &names, f).unwrap()).collect()).unwrap()
    }

    #[test]
    fn coordinate_point() {
        for f in [Field::prime(7).unwrap(), Field::prime(10007).unwrap()] {
            let s = rational_points(&ideal(&["x0", "x1"], 3, &f), 2).unwrap();
            assert_eq!(s.count(), 1);
            assert_eq!(s.points[0].point, ProjectivePoint::from_u64(&f, &[0, 0, 1]).unwrap());
        }
    }

    #[test]
    fn conic_over_f5() {
        let f = Field::prime(5).unwrap();
        let s = rational_points(&ideal(&["x0^2 + x1^2"], 2, &f), 1).unwrap();
        assert_eq!(s.count(), 2);
        // over F_7, -1 is not a square: the pair appears at degree 2
        let f = Field::prime(7).unwrap();
        let s = rational_points(&ideal(&["x0^2 + x1^2"], 2, &f), 2).unwrap();
        assert_eq!(s.degree_profile(), vec![(2, 2)]);
    }

    #[test]
    fn circle_and_hyperbola_points() {
        let texts = ["x0^2 + x1^2 - x2^2", "x0*x1 - x2^2"];
        // 12 | q - 1 exactly when all four points are rational
        let f13 = Field::prime(13).unwrap();
        assert_eq!(rational_points(&ideal(&texts, 3, &f13), 1).unwrap().count(), 4);
        let f7 = Field::prime(7).unwrap();
        let s = rational_points(&ideal(&texts, 3, &f7), 2).unwrap();
        assert_eq!(s.degree_profile(), vec![(2, 4)]);
        let big = Field::prime(10007).unwrap();
        let opts = PointOptions {
            k_max: 2,
            strategy: Strategy::Algebraic,
            ..PointOptions::default()
        };
        let s = rational_points_with(&ideal(&texts, 3, &big), opts).unwrap();
        assert_eq!(s.degree_profile(), vec![(2, 4)]);
    }

    #[test]
    fn strategies_agree() {
        let f = Field::prime(11).unwrap();
        let mut rng = crate::random::rng_from_seed(8);
        for _ in 0..5 {
            let gens = vec![
                crate::random::random_homogeneous(&f, 3, 2, &mut rng),
                crate::random::random_homogeneous(&f, 3, 3, &mut rng),
            ];
            let i = Ideal::new(gens).unwrap();
            let run = |strategy| {
                rational_points_with(&i, PointOptions { k_max: 3, strategy, ..PointOptions::default() }).unwrap()
            };
            assert_eq!(run(Strategy::Exhaustive), run(Strategy::Algebraic));
        }
    }

    #[test]
    fn budget_exceeded_for_curves_over_large_fields() {
        let f = Field::prime(10007).unwrap();
        let i = ideal(&["x0*x1 - x2^2"], 4, &f);
        assert!(matches!(rational_points(&i, 1), Err(Error::BudgetExceeded { .. })));
    }
}
