//! Cubics in the normal form `x_{r+1}^2 x_0 + sum_i x_{r+1+i} Q_i` on
//! `P^{2r+1}`: their nodes on `P = {x_{r+1} = ... = x_{2r+1} = 0}` and the
//! scheme of lines through a node.

use std::collections::BTreeSet;

use serde_json::json;

use crate::error::{Error, Result};
use crate::fano::{describe, AnalysisOptions, MAX_ATTEMPTS};
use crate::field::{Embedding, Field};
use crate::idealkit::{
    hilbert_data, jacobian_rank, minors_ideal, rational_points_with, singular_points, slice_degree, Attempt,
    Check, FoundPoint, Ideal, PointOptions, SerializedPoint, Strategy, VarietyReport,
};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial};
use crate::projgeo::{chart_at_base, move_to_base_point, ProjectivePoint};
use crate::random::{random_homogeneous, rng_from_seed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormCubic {
    pub r: usize,
    pub f: Polynomial,
    /// `Q_1, ..., Q_r` in all `2r + 2` variables.
    pub quadrics: Vec<Polynomial>,
}

impl NormalFormCubic {
    pub fn field(&self) -> &Field {
        self.f.field()
    }

    pub fn nvars(&self) -> usize {
        2 * self.r + 2
    }

    /// `x_{r+1}^2 x_0 + sum_i x_{r+1+i} Q_i`.
    fn assemble(field: &Field, r: usize, quadrics: &[Polynomial]) -> Polynomial {
        let n = 2 * r + 2;
        let mut f = &Polynomial::var(field, n, r + 1).pow(2) * &Polynomial::var(field, n, 0);
        for (i, q) in quadrics.iter().enumerate() {
            f = &f + &(&Polynomial::var(field, n, r + 2 + i) * q);
        }
        f
    }

    /// `f` equals the normal form assembled from its quadrics.
    pub fn has_normal_form(&self) -> bool {
        self.quadrics.len() == self.r
            && self.quadrics.iter().all(|q| q.is_zero() || (q.is_homogeneous() && q.degree() == Some(2)))
            && self.f == NormalFormCubic::assemble(self.field(), self.r, &self.quadrics)
    }

    /// `f` restricted to `x_{r+2} = ... = x_{2r+1} = 0`, in `x_0, ..., x_{r+1}`.
    pub fn restriction_to_h(&self) -> Polynomial {
        let zero = self.field().zero();
        (self.r + 2..self.nvars())
            .rev()
            .fold(self.f.clone(), |g, i| g.specialize(i, &zero))
    }

    /// `Q_i(x_0, ..., x_r, 0, ..., 0)` in `r + 1` variables.
    pub fn restricted_quadrics(&self) -> Vec<Polynomial> {
        let zero = self.field().zero();
        self.quadrics
            .iter()
            .map(|q| (self.r + 1..self.nvars()).rev().fold(q.clone(), |g, i| g.specialize(i, &zero)))
            .collect()
    }
}

/// Normal-form cubic with every coefficient of every `Q_i` sampled.
pub fn normal_form_cubic(r: usize, field: &Field, seed: u64) -> Result<NormalFormCubic> {
    if r == 0 {
        return Err(Error::InvalidParameters("r must be at least 1".into()));
    }
    if !field.is_finite() || field.characteristic() <= 3 {
        return Err(Error::InvalidParameters(format!(
            "normal-form cubics need a finite field of characteristic above 3, got {field}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let quadrics: Vec<Polynomial> = (0..r).map(|_| random_homogeneous(field, 2 * r + 2, 2, &mut rng)).collect();
    let f = NormalFormCubic::assemble(field, r, &quadrics);
    Ok(NormalFormCubic { r, f, quadrics })
}

/// Certificate that a point is a simple double point of `V(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeCertificate {
    pub point: ProjectivePoint,
    /// Field of the coordinates and its degree over the base field.
    pub field: Field,
    pub degree: usize,
    pub partials_vanish: bool,
    pub multiplicity: Option<u32>,
    pub quadratic_part_rank: usize,
    pub is_simple_double_point: bool,
}

impl NodeCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "point": self.point.to_strings(&self.field),
            "field": self.field.label(),
            "degree": self.degree.to_string(),
            "partials_vanish": self.partials_vanish,
            "multiplicity": self.multiplicity.map_or("none".to_string(), |m| m.to_string()),
            "quadratic_part_rank": self.quadratic_part_rank.to_string(),
            "is_simple_double_point": self.is_simple_double_point,
        })
    }
}

/// Rank of a quadratic form through its symmetric Gram matrix; needs odd
/// characteristic.
pub fn quadratic_form_rank(q: &Polynomial) -> usize {
    let f = q.field();
    let n = q.nvars();
    let half = f.inv(&f.from_u64(2)).expect("odd characteristic");
    let mut g = Matrix::zeros(f, n, n);
    for (m, c) in q.terms() {
        let vars: Vec<usize> = (0..n).filter(|&i| m.exponents()[i] > 0).collect();
        match vars.as_slice() {
            [i] => g.set(*i, *i, c.clone()),
            [i, j] => {
                let h = f.mul(c, &half);
                g.set(*i, *j, h.clone());
                g.set(*j, *i, h);
            }
            _ => panic!("not a quadratic form"),
        }
    }
    g.rank()
}

/// Certifies `point` (over `emb.target()`) as a node of `V(f)`.
pub fn certify_node(f: &Polynomial, emb: &Embedding, degree: usize, point: &ProjectivePoint) -> Result<NodeCertificate> {
    let target = emb.target();
    let g = f.map_coefficients(emb);
    let partials_vanish = g.gradient().iter().all(|d| point.vanishes(d)) && point.vanishes(&g);
    let moved = g.linear_substitute(&move_to_base_point(target, point))?;
    let chart = chart_at_base(&moved);
    let multiplicity = chart.min_degree();
    let rank = quadratic_form_rank(&chart.homogeneous_component(2));
    let full = f.nvars() - 1;
    Ok(NodeCertificate {
        point: point.clone(),
        field: target.clone(),
        degree,
        partials_vanish,
        multiplicity,
        quadratic_part_rank: rank,
        is_simple_double_point: partials_vanish && multiplicity == Some(2) && rank == full,
    })
}

/// Nodes of the normal-form cubic: zeros of the restricted quadrics in
/// `P^r`, found over extensions of degree up to `2^r` and certified.
pub fn nodes(nfc: &NormalFormCubic) -> Result<Vec<NodeCertificate>> {
    if !nfc.has_normal_form() {
        return Err(Error::DegenerateInstance("polynomial is not in normal form".into()));
    }
    let r = nfc.r;
    let expected = 1u128 << r;
    let ideal = Ideal::new(nfc.restricted_quadrics())?;
    let hd = hilbert_data(&ideal)?;
    if hd.dimension != 0 || hd.degree != expected {
        return Err(Error::DegenerateInstance(format!(
            "restricted quadrics have dimension {} and degree {}",
            hd.dimension, hd.degree
        )));
    }
    let pts = rational_points_with(
        &ideal,
        PointOptions {
            k_max: expected as usize,
            strategy: Strategy::Algebraic,
            ..PointOptions::default()
        },
    )?;
    if pts.count() as u128 != expected {
        return Err(Error::DegenerateInstance(format!(
            "{} distinct nodes instead of {expected}",
            pts.count()
        )));
    }
    let base = nfc.field();
    let mut out = Vec::new();
    for FoundPoint { degree, field, point } in &pts.points {
        let mut coords = point.coords().to_vec();
        coords.resize(nfc.nvars(), field.zero());
        let node = ProjectivePoint::new(field, coords)?;
        let cert = certify_node(&nfc.f, &base.embedding_into(field)?, *degree, &node)?;
        if !cert.is_simple_double_point {
            return Err(Error::DegenerateInstance(format!(
                "point {:?} is not a simple double point",
                node.to_strings(field)
            )));
        }
        out.push(cert);
    }
    Ok(out)
}

/// `(f_2, f_3)` with `f = x_0 f_2 + f_3` after moving `node` to
/// `[1:0:...:0]`; lives in `P^{2r}` over the node's field.
pub fn sigma_y_system(nfc: &NormalFormCubic, node: &NodeCertificate) -> Result<Ideal> {
    let emb = nfc.field().embedding_into(&node.field)?;
    let g = nfc.f.map_coefficients(&emb);
    let moved = g.linear_substitute(&move_to_base_point(&node.field, &node.point))?;
    let chart = chart_at_base(&moved);
    let found = chart.min_degree().unwrap_or(u32::MAX);
    if found != 2 {
        return Err(Error::MultiplicityMismatch { claimed: 2, found });
    }
    Ideal::new(vec![chart.homogeneous_component(2), chart.homogeneous_component(3)])
}

/// Image in `P^{2r}` of the line from `node` to `other`, in the coordinates
/// used by [`sigma_y_system`].
pub fn line_direction(node: &NodeCertificate, other: &ProjectivePoint) -> Result<ProjectivePoint> {
    let m = move_to_base_point(&node.field, &node.point).inverse()?;
    let v = m.mul_vec(other.coords());
    ProjectivePoint::new(&node.field, v[1..].to_vec())
}

/// Invariants of `Σ_y = V(f_2, f_3)` and of its singular locus.
pub fn analyze_sigma_y(ideal: &Ideal, r: usize, opts: &AnalysisOptions, seed: u64) -> Result<VarietyReport> {
    let field = ideal.field();
    let ambient = ideal.ambient_dim();
    let mut report = VarietyReport::new("sigma-y", field, ambient);
    report.param("r", r);
    report.generators = ideal.generator_texts();
    let hd = hilbert_data(ideal)?;
    report.dimension = hd.dimension;
    report.degree = hd.degree;
    report.is_complete_intersection = hd.dimension == ambient as i64 - 2;
    if r >= 2 {
        report.predict("dimension", 2 * r - 2);
        report.predict("degree", 6);
        report.check(Check::compare("dimension", 2 * r - 2, hd.dimension));
        report.check(Check::compare("degree", 6, hd.degree));
        report.check(Check::holds("complete intersection", report.is_complete_intersection));
    }
    let mut rng = rng_from_seed(seed ^ 0x5e);
    if hd.dimension > 0 && opts.trials > 0 {
        match slice_degree(ideal, hd.dimension as usize, opts.trials, opts.k_max, &mut rng) {
            Ok(s) => report.check(Check::compare("slice degree", hd.degree, s.mode)),
            Err(Error::Inconclusive(c)) => report.check(Check::flagged(
                "slice degree",
                hd.degree,
                format!("{c:?}"),
                "no stable count among sections",
            )),
            Err(e) => return Err(e),
        }
    }

    // singular locus: where the Jacobian of (f_2, f_3) drops rank
    let gens = ideal.generators().to_vec();
    let mut drop = gens.clone();
    drop.extend(minors_ideal(&gens, 2));
    let drop = Ideal::new(drop)?;
    let sd = hilbert_data(&drop)?;
    report.notes.push(format!(
        "singular locus: dimension {}, degree {}",
        if sd.is_empty() { "empty".to_string() } else { sd.dimension.to_string() },
        sd.degree
    ));
    report.predict("singular_locus_dimension_at_most", (2 * r) as i64 - 4);
    if r == 2 {
        report.predict("singular_points", 3);
        report.check(Check::compare("singular locus dimension", 0, sd.dimension));
        report.check(Check::compare("singular locus degree", 3, sd.degree));
        if sd.dimension == 0 {
            let pts = rational_points_with(
                &drop,
                PointOptions {
                    k_max: 3,
                    strategy: Strategy::Algebraic,
                    budget: opts.budget,
                },
            )?;
            let reduced = pts.points.iter().all(|p| {
                let emb = field.embedding_into(&p.field).unwrap();
                let lifted: Vec<Polynomial> = drop.generators().iter().map(|g| g.map_coefficients(&emb)).collect();
                jacobian_rank(&lifted, &p.point) == ambient
            });
            report.check(Check::compare("singular points", 3, pts.count()));
            report.check(Check::holds("singular points reduced", reduced));
            report.singular_points = SerializedPoint::from_set(&pts);
        }
    } else if r >= 3 {
        report.check(Check::holds(
            "singular locus dimension <= 2r-4",
            sd.dimension <= (2 * r) as i64 - 4,
        ));
    }
    Ok(report)
}

/// Options for the full node and line-scheme demonstration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DemoOptions {
    pub analysis: AnalysisOptions,
    /// Extension degrees for an exhaustive singular-point scan of `V(f)`;
    /// `None` skips it.
    pub scan_k_max: Option<usize>,
    /// Check that the Jacobian ideal of `f` has degree `2^r`.
    pub jacobian_degree: bool,
}

impl Default for DemoOptions {
    fn default() -> Self {
        DemoOptions {
            analysis: AnalysisOptions::default(),
            scan_k_max: None,
            jacobian_degree: true,
        }
    }
}

fn demo_once(r: usize, field: &Field, seed: u64, opts: &DemoOptions) -> Result<VarietyReport> {
    let nfc = normal_form_cubic(r, field, seed)?;
    let certs = nodes(&nfc)?;

    // node with the smallest field of definition
    let y = certs.iter().min_by_key(|c| c.degree).expect("nodes exist");
    let ideal = sigma_y_system(&nfc, y)?;
    let mut report = analyze_sigma_y(&ideal, r, &opts.analysis, seed)?;
    report.pipeline = "voisin-demo".into();
    report.field = field.label();
    report.param("r", r);
    report.param("seed", seed);
    report.param("node_field", y.field.label());
    report.certificates = certs.iter().map(NodeCertificate::to_json).collect();
    report.predict("nodes", 1u64 << r);
    report.check(Check::compare("nodes", 1u64 << r, certs.len()));
    report.check(Check::holds(
        "nodes are simple double points",
        certs.iter().all(|c| c.is_simple_double_point && c.quadratic_part_rank == 2 * r + 1),
    ));
    report.check(Check::holds("normal form", nfc.has_normal_form()));

    // V(f) meets x_{r+2} = ... = x_{2r+1} = 0 in x_{r+1}^2 x_0 = 0, the planes P and P'
    let h = nfc.restriction_to_h();
    let expected_h = &Polynomial::var(field, r + 2, r + 1).pow(2) * &Polynomial::var(field, r + 2, 0);
    report.check(Check::holds("restriction to H is x_{r+1}^2 x_0", h == expected_h));
    let in_p = certs
        .iter()
        .all(|c| c.point.coords()[r + 1..].iter().all(|x| c.field.is_zero(x)));
    report.check(Check::holds("nodes lie in P", in_p));

    if opts.jacobian_degree {
        let jac = Ideal::new(nfc.f.gradient())?;
        let jd = hilbert_data(&jac)?;
        report.check(Check::compare("singular scheme of V(f)", format!("dim 0, degree {}", 1u64 << r), format!("dim {}, degree {}", jd.dimension, jd.degree)));
    }

    if let Some(k) = opts.scan_k_max {
        let scanned = singular_points(
            &Ideal::new(vec![nfc.f.clone()])?,
            PointOptions {
                k_max: k,
                budget: opts.analysis.budget,
                strategy: Strategy::Exhaustive,
            },
        )?;
        let known: BTreeSet<(usize, ProjectivePoint)> = certs.iter().map(|c| (c.degree, c.point.clone())).collect();
        let found: BTreeSet<(usize, ProjectivePoint)> =
            scanned.points.iter().map(|p| (p.degree, p.point.clone())).collect();
        let visible: BTreeSet<_> = known.iter().filter(|(d, _)| *d <= k).cloned().collect();
        report.check(Check::compare("scanned singular points", visible.len(), found.len()));
        report.check(Check::holds("scan finds only nodes", found == visible));
        report.singular_points = SerializedPoint::from_set(&scanned);
    }

    // the other nodes project to singular points of Σ_y
    if r == 2 {
        let mut dirs = BTreeSet::new();
        let mut singular = true;
        for c in certs.iter().filter(|c| c.point != y.point || c.field != y.field) {
            let Some(top) = crate::idealkit::points::level_field(field, lcm(c.degree, y.degree))? else {
                singular = false;
                continue;
            };
            let yc = lift_cert(y, &top)?;
            let d = line_direction(&yc, &c.point.map(&c.field.embedding_into(&top)?))?;
            let emb = y.field.embedding_into(&top)?;
            let gens: Vec<Polynomial> = ideal.generators().iter().map(|g| g.map_coefficients(&emb)).collect();
            singular &= gens.iter().all(|g| d.vanishes(g)) && jacobian_rank(&gens, &d) < 2;
            dirs.insert(d.to_strings(&top).join(","));
        }
        report.check(Check::holds(
            "other nodes give singular points of sigma_y",
            singular && dirs.len() == (1 << r) - 1,
        ));
    }
    Ok(report)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn lift_cert(c: &NodeCertificate, top: &Field) -> Result<NodeCertificate> {
    let emb = c.field.embedding_into(top)?;
    Ok(NodeCertificate {
        point: c.point.map(&emb),
        field: top.clone(),
        ..c.clone()
    })
}

/// Full pipeline with reseeding on degenerate instances or failed checks.
pub fn voisin_demo(r: usize, field: &Field, seed: u64, opts: &DemoOptions) -> Result<VarietyReport> {
    if r == 0 {
        return Err(Error::InvalidParameters("r must be at least 1".into()));
    }
    let mut attempts = Vec::new();
    let mut last = None;
    for a in 0..MAX_ATTEMPTS {
        let s = seed.wrapping_add(a);
        match demo_once(r, field, s, opts) {
            Ok(mut rep) => {
                attempts.push(Attempt {
                    seed: s,
                    outcome: describe(&rep),
                });
                if rep.passed() {
                    rep.attempts = attempts;
                    rep.finish();
                    return Ok(rep);
                }
                last = Some(rep);
            }
            Err(e @ (Error::InvalidParameters(_) | Error::BudgetExceeded { .. } | Error::ResourceLimit(_))) => {
                return Err(e)
            }
            Err(e) => attempts.push(Attempt {
                seed: s,
                outcome: format!("error: {e}"),
            }),
        }
    }
    let mut rep = last.ok_or_else(|| Error::DegenerateInstance(format!("{MAX_ATTEMPTS} attempts failed")))?;
    rep.attempts = attempts;
    rep.finish();
    Ok(rep)
}

/// Monomial check used by tests: every term of `f` other than
/// `x_{r+1}^2 x_0` contains one of `x_{r+2}, ..., x_{2r+1}`.
pub fn terms_are_structured(nfc: &NormalFormCubic) -> bool {
    let r = nfc.r;
    let lead = Monomial::var(nfc.nvars(), r + 1, 2).mul(&Monomial::var(nfc.nvars(), 0, 1));
    nfc.f
        .terms()
        .all(|(m, _)| *m == lead || m.exponents()[r + 2..].iter().any(|&e| e > 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> Field {
        Field::prime(10007).unwrap()
    }

    #[test]
    fn normal_form_shape() {
        let f = fp();
        for r in 1..=3 {
            let nfc = normal_form_cubic(r, &f, 7).unwrap();
            assert!(nfc.has_normal_form());
            assert!(terms_are_structured(&nfc));
            assert_eq!(nfc.f.nvars(), 2 * r + 2);
            assert_eq!(nfc.quadrics.len(), r);
            // P lies in V(f)
            let zero = f.zero();
            let on_p = (r + 1..2 * r + 2).rev().fold(nfc.f.clone(), |g, i| g.specialize(i, &zero));
            assert!(on_p.is_zero());
        }
        assert!(normal_form_cubic(0, &f, 0).is_err());
        assert!(normal_form_cubic(1, &Field::prime(3).unwrap(), 0).is_err());
    }

    #[test]
    fn gram_rank() {
        let f = fp();
        let names = Polynomial::default_names(3);
        let q = crate::poly::parse("x0*x1 + x2^2", &names, &f).unwrap();
        assert_eq!(quadratic_form_rank(&q), 3);
        let q = crate::poly::parse("x0^2 + 2*x0*x1 + x1^2", &names, &f).unwrap();
        assert_eq!(quadratic_form_rank(&q), 1);
    }

    #[test]
    fn node_counts() {
        let f = fp();
        for r in 1..=2 {
            let nfc = normal_form_cubic(r, &f, 3).unwrap();
            let certs = nodes(&nfc).unwrap();
            assert_eq!(certs.len(), 1 << r);
            assert!(certs.iter().all(|c| c.quadratic_part_rank == 2 * r + 1));
        }
    }

    #[test]
    fn sigma_y_degrees() {
        let f = fp();
        let nfc = normal_form_cubic(2, &f, 3).unwrap();
        let certs = nodes(&nfc).unwrap();
        let i = sigma_y_system(&nfc, &certs[0]).unwrap();
        assert_eq!(i.nvars(), 5);
        let degs: Vec<_> = i.generators().iter().map(|g| g.degree()).collect();
        assert_eq!(degs, vec![Some(2), Some(3)]);
    }

    #[test]
    fn demo_r2() {
        let rep = voisin_demo(2, &fp(), 1, &DemoOptions::default()).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
    }

    #[test]
    fn scan_sees_only_nodes() {
        let opts = DemoOptions {
            scan_k_max: Some(2),
            ..DemoOptions::default()
        };
        for seed in 0..3 {
            let rep = voisin_demo(1, &Field::prime(7).unwrap(), seed, &opts).unwrap();
            assert!(rep.passed(), "{}", rep.to_json());
        }
    }

    #[test]
    fn restriction_to_h() {
        let f = fp();
        let nfc = normal_form_cubic(3, &f, 11).unwrap();
        let h = nfc.restriction_to_h();
        assert_eq!(h.to_string(), "x0*x4^2");
    }
}
