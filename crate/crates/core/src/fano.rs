//! Lines through a point of multiplicity `m` on a hypersurface of degree `d`
//! in `P^n`. Writing `f = sum_{i=m}^{d} x_0^{d-i} f_i(x_1, ..., x_n)` with the
//! point at `[1:0:...:0]`, the line to `(0:x_1:...:x_n)` lies on the
//! hypersurface iff every `f_i` vanishes there, so the lines form
//! `V(f_m, ..., f_d)` in the hyperplane `x_0 = 0`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::idealkit::{
    hilbert_data, jacobian_rank, rational_points_with, sample_points, slice_degree, Attempt, Check, Ideal,
    PointOptions, SerializedPoint, Strategy, VarietyReport,
};
use crate::poly::Polynomial;
use crate::projgeo::{chart_at_base, line_through, move_to_base_point, ProjectivePoint, DEFAULT_BUDGET};
use crate::random::{random_nonzero_homogeneous, rng_from_seed};

/// Reseeding attempts before a pipeline reports failure.
pub const MAX_ATTEMPTS: u64 = 5;

/// A hypersurface `V(f)` with a point `y` of claimed multiplicity `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedHypersurface {
    pub f: Polynomial,
    pub y: ProjectivePoint,
    pub m: u32,
}

impl PointedHypersurface {
    pub fn new(f: Polynomial, y: ProjectivePoint, m: u32) -> Result<PointedHypersurface> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if y.coords().len() != f.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "point in P^{} for a polynomial in {} variables",
                y.dim(),
                f.nvars()
            )));
        }
        Ok(PointedHypersurface { f, y, m })
    }

    /// `n` for a hypersurface in `P^n`.
    pub fn n(&self) -> usize {
        self.f.nvars() - 1
    }

    pub fn d(&self) -> u32 {
        self.f.degree().expect("nonzero")
    }
}

/// Range where the line scheme has the expected dimension `m + n - 2 - d`.
pub fn validate_parameters(n: usize, d: u32, m: u32) -> Result<()> {
    if n < 2 || m < 1 || m > d {
        return Err(Error::InvalidParameters(format!(
            "need n >= 2 and 1 <= m <= d, got n={n} d={d} m={m}"
        )));
    }
    if d as i64 > m as i64 + n as i64 - 2 {
        return Err(Error::InvalidParameters(format!(
            "d={d} exceeds m+n-2={}; the line scheme would have negative expected dimension",
            m as i64 + n as i64 - 2
        )));
    }
    Ok(())
}

/// `f = sum_{i=m}^{d} x_0^{d-i} f_i` with random `f_i`, `f_m` nonzero, and
/// `y = [1:0:...:0]`.
pub fn random_pointed_hypersurface(n: usize, d: u32, m: u32, field: &Field, seed: u64) -> Result<PointedHypersurface> {
    validate_parameters(n, d, m)?;
    if field.is_finite() && field.characteristic() <= d as u64 {
        return Err(Error::InvalidParameters(format!(
            "characteristic {} does not exceed the degree {d}",
            field.characteristic()
        )));
    }
    let mut rng = rng_from_seed(seed);
    let nv = n + 1;
    let x0 = Polynomial::var(field, nv, 0);
    let shift: Vec<Polynomial> = (1..nv).map(|i| Polynomial::var(field, nv, i)).collect();
    let mut f = Polynomial::zero(field, nv);
    for i in m..=d {
        let fi = random_nonzero_homogeneous(field, n, i, &mut rng).substitute(&shift);
        f = &f + &(&x0.pow(d - i) * &fi);
    }
    PointedHypersurface::new(f, ProjectivePoint::base(field, n), m)
}

/// Generators `f_m, ..., f_d` of the line scheme in `P^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSystem {
    pub n: usize,
    pub d: u32,
    pub m: u32,
    /// `generators[k]` has degree `m + k` (or is zero).
    pub generators: Vec<Polynomial>,
}

impl SigmaSystem {
    pub fn expected_dim(&self) -> i64 {
        self.m as i64 + self.n as i64 - 2 - self.d as i64
    }

    /// `d!/(m-1)!` when the scheme is expected to be finite.
    pub fn expected_count(&self) -> Option<u128> {
        (self.expected_dim() == 0).then(|| expected_count(self.d, self.m))
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(self.generators.clone()).expect("at least one generator")
    }
}

/// Reads off `f_m, ..., f_d` after moving `y` to `[1:0:...:0]`.
pub fn sigma_system(ph: &PointedHypersurface) -> Result<SigmaSystem> {
    let field = ph.f.field();
    let moved = ph.f.linear_substitute(&move_to_base_point(field, &ph.y))?;
    let chart = chart_at_base(&moved);
    let found = chart.min_degree().ok_or(Error::MultiplicityMismatch {
        claimed: ph.m,
        found: u32::MAX,
    })?;
    if found != ph.m {
        return Err(Error::MultiplicityMismatch { claimed: ph.m, found });
    }
    let d = ph.d();
    let generators = (ph.m..=d).map(|i| chart.homogeneous_component(i)).collect();
    Ok(SigmaSystem {
        n: ph.n(),
        d,
        m: ph.m,
        generators,
    })
}

/// `prod_{i=m}^{d} i = d!/(m-1)!`.
pub fn expected_count(d: u32, m: u32) -> u128 {
    (m..=d).map(|i| i as u128).product()
}

/// Whether the line from `y = [1:0:...:0]` to `(0 : x)` lies on `V(f)`, by
/// substituting the parametrization.
pub fn line_lies_on(ph: &PointedHypersurface, x: &ProjectivePoint) -> Result<bool> {
    let field = ph.f.field();
    let mut coords = vec![field.zero()];
    coords.extend(x.coords().iter().cloned());
    let y2 = ProjectivePoint::new(field, coords)?;
    Ok(line_through(field, &ph.y, &y2)?.lies_in(&ph.f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Extension degrees searched for points of finite schemes.
    pub k_max: usize,
    /// Random sections used for slice degrees.
    pub trials: usize,
    pub budget: u128,
    /// Points sampled for smoothness on positive-dimensional schemes.
    pub sample_target: usize,
    pub max_slices: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            k_max: 6,
            trials: 2,
            budget: DEFAULT_BUDGET,
            sample_target: 50,
            max_slices: 400,
        }
    }
}

/// Dimension, degree, points and smoothness of the line scheme, each
/// compared with its prediction.
pub fn analyze_sigma(ph: &PointedHypersurface, opts: &AnalysisOptions, seed: u64) -> Result<VarietyReport> {
    let (n, d, m) = (ph.n(), ph.d(), ph.m);
    validate_parameters(n, d, m)?;
    let sys = sigma_system(ph)?;
    let ideal = sys.ideal();
    let field = ph.f.field();
    let mut rng = rng_from_seed(seed ^ 0x51ce);

    let mut report = VarietyReport::new("lines-through", field, n - 1);
    report.param("n", n);
    report.param("d", d);
    report.param("m", m);
    report.generators = ideal.generator_texts();
    let codim = (d - m + 1) as i64;
    let expected_dim = sys.expected_dim();
    let bezout = expected_count(d, m);
    report.predict("dimension", expected_dim);
    report.predict("degree", bezout);
    report.predict("codimension", codim);

    let hd = hilbert_data(&ideal)?;
    report.dimension = hd.dimension;
    report.degree = hd.degree;
    report.is_complete_intersection = hd.dimension == (n as i64 - 1) - codim;
    report.check(Check::compare("dimension", expected_dim, hd.dimension));
    report.check(Check::compare("degree", bezout, hd.degree));
    report.check(Check::holds("complete intersection", report.is_complete_intersection));

    let gens = ideal.generators().to_vec();
    if hd.dimension == 0 {
        report.predict("count", bezout);
        let pts = rational_points_with(
            &ideal,
            PointOptions {
                k_max: opts.k_max,
                budget: opts.budget,
                strategy: Strategy::Auto,
            },
        )?;
        let reduced = pts.points.iter().all(|p| {
            let lifted: Vec<Polynomial> = gens
                .iter()
                .map(|g| g.map_coefficients(&field.embedding_into(&p.field).unwrap()))
                .collect();
            jacobian_rank(&lifted, &p.point) == n - 1
        });
        report.solutions = SerializedPoint::from_set(&pts);
        report.check(Check::holds("solutions reduced", reduced));
        let found = pts.count() as u128;
        if found < hd.degree {
            report.check(Check::flagged(
                "count",
                hd.degree,
                found,
                &format!("points in higher extension (searched k <= {})", opts.k_max),
            ));
        } else {
            report.check(Check::compare("count", hd.degree, found));
        }
        let profile: Vec<String> = pts.degree_profile().iter().map(|(k, c)| format!("{c}@{k}")).collect();
        report.notes.push(format!("residue degrees: {}", profile.join(" ")));
    } else if hd.dimension > 0 && field.is_finite() {
        let dim = hd.dimension as usize;
        if opts.trials > 0 {
            match slice_degree(&ideal, dim, opts.trials, opts.k_max, &mut rng) {
                Ok(s) => report.check(Check::compare("slice degree", hd.degree, s.mode)),
                Err(Error::Inconclusive(counts)) => report.check(Check::flagged(
                    "slice degree",
                    hd.degree,
                    format!("{counts:?}"),
                    "no stable count among sections",
                )),
                Err(e) => return Err(e),
            }
        }
        let sample = sample_points(&ideal, dim, opts.sample_target, opts.max_slices, &mut rng)?;
        let smooth = sample.iter().all(|p| jacobian_rank(&gens, p) == codim as usize);
        report.check(Check::holds("smooth at sampled points", smooth));
        report.notes.push(format!("{} points sampled for smoothness", sample.len()));
        if sample.len() < opts.sample_target {
            report.check(Check::flagged(
                "sampled points",
                opts.sample_target,
                sample.len(),
                "fewer rational points on sections than requested",
            ));
        }
    }
    report.notes.push("only the given point is analyzed; other singular points are not excluded".into());
    Ok(report)
}

/// Random instance with reseeding: on a failed check the seed is bumped, up
/// to [`MAX_ATTEMPTS`] times; every attempt is logged.
pub fn lines_through_random(
    n: usize,
    d: u32,
    m: u32,
    field: &Field,
    seed: u64,
    opts: &AnalysisOptions,
) -> Result<VarietyReport> {
    validate_parameters(n, d, m)?;
    let mut attempts = Vec::new();
    let mut last = None;
    for a in 0..MAX_ATTEMPTS {
        let s = seed.wrapping_add(a);
        let outcome = random_pointed_hypersurface(n, d, m, field, s).and_then(|ph| analyze_sigma(&ph, opts, s));
        match outcome {
            Ok(mut r) => {
                let ok = r.passed();
                attempts.push(Attempt {
                    seed: s,
                    outcome: describe(&r),
                });
                r.param("seed", s);
                if ok {
                    r.attempts = attempts;
                    r.finish();
                    return Ok(r);
                }
                last = Some(r);
            }
            Err(e @ (Error::BudgetExceeded { .. } | Error::InvalidParameters(_) | Error::ResourceLimit(_))) => {
                return Err(e)
            }
            Err(e) => attempts.push(Attempt {
                seed: s,
                outcome: format!("error: {e}"),
            }),
        }
    }
    let mut r = last.ok_or_else(|| Error::DegenerateInstance(format!("{MAX_ATTEMPTS} attempts failed")))?;
    r.attempts = attempts;
    r.finish();
    Ok(r)
}

pub(crate) fn describe(r: &VarietyReport) -> String {
    let bad: Vec<&str> = r.mismatches().iter().map(|c| c.name.as_str()).collect();
    if bad.is_empty() {
        if r.flagged() {
            "pass (flagged)".into()
        } else {
            "pass".into()
        }
    } else {
        format!("mismatch: {}", bad.join(", "))
    }
}

/// Samples a point of `P^{n-1}` uniformly among nonzero vectors.
pub fn random_point<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> ProjectivePoint {
    ProjectivePoint::new(field, crate::random::random_nonzero_vector(field, n, rng)).expect("nonzero")
}

/// Random complete intersection of the given degrees in `P^n`.
pub fn random_complete_intersection(n: usize, degrees: &[u32], field: &Field, seed: u64) -> Result<Ideal> {
    if degrees.is_empty() || degrees.len() > n || degrees.contains(&0) {
        return Err(Error::InvalidParameters(format!(
            "need 1 to {n} positive degrees, got {degrees:?}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    Ideal::new(
        degrees
            .iter()
            .map(|&d| random_nonzero_homogeneous(field, n + 1, d, &mut rng))
            .collect(),
    )
}

/// Dimension, Bezout degree and sampled smoothness of `V(g_1, ..., g_k)`.
pub fn analyze_complete_intersection(ideal: &Ideal, opts: &AnalysisOptions, seed: u64) -> Result<VarietyReport> {
    let field = ideal.field();
    let n = ideal.ambient_dim();
    let gens = ideal.generators().to_vec();
    let k = gens.len();
    let degrees: Vec<u32> = gens.iter().map(|g| g.degree().unwrap_or(0)).collect();
    let mut report = VarietyReport::new("complete-intersection", field, n);
    report.param(
        "degrees",
        degrees.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
    );
    report.generators = ideal.generator_texts();
    let expected_dim = n as i64 - k as i64;
    let bezout: u128 = degrees.iter().map(|&d| d as u128).product();
    report.predict("dimension", expected_dim);
    report.predict("degree", bezout);
    let hd = hilbert_data(ideal)?;
    report.dimension = hd.dimension;
    report.degree = hd.degree;
    report.is_complete_intersection = hd.dimension == expected_dim;
    report.check(Check::compare("dimension", expected_dim, hd.dimension));
    report.check(Check::compare("degree", bezout, hd.degree));
    if hd.dimension > 0 && field.is_finite() {
        let mut rng = rng_from_seed(seed ^ 0xc1);
        let sample = sample_points(ideal, hd.dimension as usize, opts.sample_target, opts.max_slices, &mut rng)?;
        let smooth = sample.iter().all(|p| jacobian_rank(&gens, p) == k);
        report.check(Check::holds("smooth at sampled points", smooth));
        report.notes.push(format!("{} points sampled for smoothness", sample.len()));
        if sample.len() < opts.sample_target {
            report.check(Check::flagged(
                "sampled points",
                opts.sample_target,
                sample.len(),
                "fewer rational points on sections than requested",
            ));
        }
    }
    report.finish();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealkit::sample_points;
    use crate::poly::parse;
    use crate::projgeo::ProjectiveSpace;

    fn fp() -> Field {
        Field::prime(10007).unwrap()
    }

    #[test]
    fn shapes() {
        let f = fp();
        let ph = random_pointed_hypersurface(3, 3, 2, &f, 1).unwrap();
        let sys = sigma_system(&ph).unwrap();
        assert_eq!(sys.generators.iter().map(|g| g.degree()).collect::<Vec<_>>(), vec![Some(2), Some(3)]);
        assert_eq!(sys.generators[0].nvars(), 3);
        let ph = random_pointed_hypersurface(4, 3, 1, &f, 1).unwrap();
        assert_eq!(sigma_system(&ph).unwrap().generators.len(), 3);
        let ph = random_pointed_hypersurface(3, 4, 3, &f, 1).unwrap();
        assert_eq!(sigma_system(&ph).unwrap().generators.len(), 2);
        let ph = random_pointed_hypersurface(3, 3, 3, &f, 1).unwrap();
        assert_eq!(sigma_system(&ph).unwrap().generators.len(), 1);
        assert_eq!(
            random_pointed_hypersurface(3, 3, 2, &f, 5).unwrap(),
            random_pointed_hypersurface(3, 3, 2, &f, 5).unwrap()
        );
    }

    #[test]
    fn parameter_range() {
        let f = fp();
        assert!(matches!(random_pointed_hypersurface(3, 4, 2, &f, 0), Err(Error::InvalidParameters(_))));
        assert!(matches!(random_pointed_hypersurface(3, 2, 3, &f, 0), Err(Error::InvalidParameters(_))));
        assert!(matches!(random_pointed_hypersurface(3, 3, 0, &f, 0), Err(Error::InvalidParameters(_))));
        assert!(random_pointed_hypersurface(3, 3, 2, &Field::prime(3).unwrap(), 0).is_err());
    }

    #[test]
    fn components_are_read_off() {
        let f = fp();
        let names = Polynomial::default_names(4);
        let g = parse("x0*x1^2 + x2^3", &names, &f).unwrap();
        let ph = PointedHypersurface::new(g, ProjectivePoint::base(&f, 3), 2).unwrap();
        let sys = sigma_system(&ph).unwrap();
        let n3 = Polynomial::default_names(3);
        assert_eq!(sys.generators, vec![parse("x0^2", &n3, &f).unwrap(), parse("x1^3", &n3, &f).unwrap()]);
        let wrong = PointedHypersurface::new(ph.f.clone(), ph.y.clone(), 1).unwrap();
        assert_eq!(sigma_system(&wrong), Err(Error::MultiplicityMismatch { claimed: 1, found: 2 }));
    }

    #[test]
    fn moved_point_gives_the_same_scheme() {
        let f = fp();
        let mut rng = rng_from_seed(4);
        let ph = random_pointed_hypersurface(3, 3, 2, &f, 9).unwrap();
        let a = crate::random::random_invertible_matrix(&f, 4, &mut rng);
        let moved = ph.f.linear_substitute(&a.inverse().unwrap()).unwrap();
        let y = ProjectivePoint::new(&f, a.column(0)).unwrap();
        let sys = sigma_system(&PointedHypersurface::new(moved, y, 2).unwrap()).unwrap();
        let hd = hilbert_data(&sys.ideal()).unwrap();
        assert_eq!((hd.dimension, hd.degree), (0, 6));
    }

    #[test]
    fn count_identity() {
        let fact = |k: u32| (1..=k as u128).product::<u128>();
        for d in 1..=8u32 {
            for m in 1..=d {
                assert_eq!(expected_count(d, m) * fact(m - 1), fact(d));
            }
        }
        assert_eq!(expected_count(3, 2), 6);
        assert_eq!(expected_count(3, 1), 6);
        assert_eq!(expected_count(2, 1), 2);
    }

    #[test]
    fn quadric_surface_lines_by_enumeration() {
        // count lines through a point of a random smooth quadric surface by
        // testing every direction in the hyperplane x0 = 0
        let f = Field::prime(13).unwrap();
        for seed in 0..5 {
            let ph = random_pointed_hypersurface(3, 2, 1, &f, seed).unwrap();
            let dirs = ProjectiveSpace::new(&f, 2).unwrap();
            let on: usize = dirs
                .points(DEFAULT_BUDGET)
                .unwrap()
                .filter(|x| line_lies_on(&ph, x).unwrap())
                .count();
            let sys = sigma_system(&ph).unwrap();
            let pts = rational_points_with(&sys.ideal(), PointOptions { k_max: 2, ..PointOptions::default() }).unwrap();
            assert_eq!(pts.rational().count(), on);
            assert_eq!(pts.count(), 2);
        }
    }

    #[test]
    fn line_membership_equivalence() {
        let f = fp();
        let ph = random_pointed_hypersurface(5, 3, 2, &f, 3).unwrap();
        let sys = sigma_system(&ph).unwrap();
        let ideal = sys.ideal();
        let mut rng = rng_from_seed(17);
        let mut on = sample_points(&ideal, 2, 50, 400, &mut rng).unwrap();
        assert_eq!(on.len(), 50);
        let off: Vec<ProjectivePoint> = (0..50).map(|_| random_point(&f, 5, &mut rng)).collect();
        on.extend(off);
        let mut hits = 0;
        for x in &on {
            let all_vanish = sys.generators.iter().all(|g| x.vanishes(g));
            assert_eq!(line_lies_on(&ph, x).unwrap(), all_vanish);
            hits += all_vanish as usize;
        }
        assert_eq!(hits, 50);
    }

    #[test]
    fn nodal_cubic_surface_report() {
        let f = fp();
        let r = lines_through_random(3, 3, 2, &f, 1, &AnalysisOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!((r.dimension, r.degree), (0, 6));
    }

    #[test]
    fn curve_of_lines() {
        let f = fp();
        let r = lines_through_random(5, 3, 2, &f, 1, &AnalysisOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!((r.dimension, r.degree), (2, 6));
        assert!(r.is_complete_intersection);
    }

    #[test]
    fn complete_intersections_in_p4() {
        let f = Field::prime(10007).unwrap();
        for (degs, deg) in [(vec![2, 2], "4"), (vec![2, 3], "6")] {
            let i = random_complete_intersection(4, &degs, &f, 3).unwrap();
            let r = analyze_complete_intersection(&i, &AnalysisOptions { sample_target: 10, ..Default::default() }, 3)
                .unwrap();
            assert!(r.passed(), "{}", r.to_json());
            assert_eq!(r.degree.to_string(), deg);
            assert_eq!(r.dimension, 2);
        }
        assert!(random_complete_intersection(2, &[2, 2, 2], &f, 0).is_err());
    }
}
