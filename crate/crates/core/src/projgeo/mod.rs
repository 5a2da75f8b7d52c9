//! Projective points and subspaces, coordinate changes and exhaustive
//! enumeration of `P^N(F_q)`.

mod enumerate;

pub use enumerate::{CompiledPoly, LogScanner, ProjectiveSpace, DEFAULT_BUDGET};

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};
use crate::linalg::Matrix;
use crate::poly::Polynomial;

/// A point of `P^N` in canonical form: the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<FieldElement>,
}

impl ProjectivePoint {
    pub fn new(field: &Field, coords: Vec<FieldElement>) -> Result<ProjectivePoint> {
        let pivot = coords
            .iter()
            .position(|c| !field.is_zero(c))
            .ok_or(Error::ZeroPoint)?;
        let s = field.inv(&coords[pivot])?;
        let coords = coords
            .iter()
            .enumerate()
            .map(|(i, c)| if i < pivot { field.zero() } else { field.mul(c, &s) })
            .collect();
        Ok(ProjectivePoint { coords })
    }

    /// The point `[1:0:...:0]` of `P^n`.
    pub fn base(field: &Field, n: usize) -> ProjectivePoint {
        let mut coords = vec![field.zero(); n + 1];
        coords[0] = field.one();
        ProjectivePoint { coords }
    }

    pub fn from_u64(field: &Field, coords: &[u64]) -> Result<ProjectivePoint> {
        ProjectivePoint::new(field, coords.iter().map(|&c| field.from_u64(c)).collect())
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// `N` for a point of `P^N`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Index of the first nonzero coordinate.
    pub fn pivot(&self) -> usize {
        self.coords
            .iter()
            .position(|c| !is_zero_payload(c))
            .expect("canonical points are nonzero")
    }

    pub fn map(&self, emb: &Embedding) -> ProjectivePoint {
        ProjectivePoint {
            coords: self.coords.iter().map(|c| emb.apply(c)).collect(),
        }
    }

    pub fn vanishes(&self, f: &Polynomial) -> bool {
        f.field().is_zero(&f.eval(&self.coords))
    }

    /// Coordinates as printed strings, the JSON form of a point.
    pub fn to_strings(&self, field: &Field) -> Vec<String> {
        self.coords.iter().map(|c| field.format(c)).collect()
    }
}

fn is_zero_payload(c: &FieldElement) -> bool {
    match c {
        FieldElement::Rational(r) => num_traits::Zero::is_zero(r),
        FieldElement::Residue(r) => *r == 0,
        FieldElement::Ext(e) => e.iter().all(|&x| x == 0),
    }
}

/// A linear subspace of `P^N` given by independent linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    ambient: usize,
    forms: Vec<Polynomial>,
}

impl LinearSubspace {
    pub fn new(ambient: usize, forms: Vec<Polynomial>) -> Result<LinearSubspace> {
        if forms.iter().any(|f| f.nvars() != ambient + 1) {
            return Err(Error::DimensionMismatch("form in the wrong ring".into()));
        }
        if forms.iter().any(|f| f.degree() != Some(1) || !f.is_homogeneous()) {
            return Err(Error::InvalidParameters("defining forms must be linear".into()));
        }
        if let Some(first) = forms.first() {
            let field = first.field();
            let rows = forms
                .iter()
                .map(|f| {
                    (0..=ambient)
                        .map(|i| f.coefficient(&crate::poly::Monomial::var(ambient + 1, i, 1)))
                        .collect()
                })
                .collect();
            if Matrix::from_rows(field, rows)?.rank() < forms.len() {
                return Err(Error::InvalidParameters("defining forms are dependent".into()));
            }
        }
        Ok(LinearSubspace { ambient, forms })
    }

    /// The coordinate subspace where the listed variables vanish.
    pub fn coordinate(field: &Field, ambient: usize, vanishing: &[usize]) -> LinearSubspace {
        let forms = vanishing
            .iter()
            .map(|&i| Polynomial::var(field, ambient + 1, i))
            .collect();
        LinearSubspace::new(ambient, forms).expect("distinct coordinates are independent")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn dim(&self) -> isize {
        self.ambient as isize - self.forms.len() as isize
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.forms.iter().all(|f| p.vanishes(f))
    }
}

/// An invertible matrix whose first column is `y`; the other columns are the
/// unit vectors `e_i` for `i` different from the pivot of `y`. Substituting
/// it into `f` moves `y` to `[1:0:...:0]`.
pub fn move_to_base_point(field: &Field, y: &ProjectivePoint) -> Matrix {
    let n = y.coords.len();
    let pivot = y.pivot();
    let mut m = Matrix::zeros(field, n, n);
    for (i, c) in y.coords.iter().enumerate() {
        m.set(i, 0, c.clone());
    }
    for (col, i) in (1..).zip((0..n).filter(|&i| i != pivot)) {
        m.set(i, col, field.one());
    }
    m
}

/// The line `{u p + v q}` through two distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    p: ProjectivePoint,
    q: ProjectivePoint,
}

pub fn line_through(field: &Field, y: &ProjectivePoint, y2: &ProjectivePoint) -> Result<Line> {
    if y.coords.len() != y2.coords.len() {
        return Err(Error::DimensionMismatch("points in different spaces".into()));
    }
    let m = Matrix::from_columns(field, &[y.coords.clone(), y2.coords.clone()])?;
    if m.rank() < 2 {
        return Err(Error::EqualPoints);
    }
    Ok(Line {
        p: y.clone(),
        q: y2.clone(),
    })
}

impl Line {
    pub fn endpoints(&self) -> (&ProjectivePoint, &ProjectivePoint) {
        (&self.p, &self.q)
    }

    /// The `(N+1) x 2` matrix of the parametrization `(u, v) ↦ u p + v q`.
    pub fn matrix(&self, field: &Field) -> Matrix {
        Matrix::from_columns(field, &[self.p.coords.clone(), self.q.coords.clone()])
            .expect("equal lengths")
    }

    pub fn point_at(&self, field: &Field, u: &FieldElement, v: &FieldElement) -> Result<ProjectivePoint> {
        let coords = self
            .p
            .coords
            .iter()
            .zip(&self.q.coords)
            .map(|(a, b)| field.add(&field.mul(u, a), &field.mul(v, b)))
            .collect();
        ProjectivePoint::new(field, coords)
    }

    /// `f(u p + v q)`, a binary form in `(u, v)`.
    pub fn restrict(&self, f: &Polynomial) -> Polynomial {
        f.compose_linear(&self.matrix(f.field()))
    }

    /// The line lies in `V(f)` iff the restriction vanishes identically.
    pub fn lies_in(&self, f: &Polynomial) -> bool {
        self.restrict(f).is_zero()
    }
}

/// `f(1, x_1, ..., x_n)`: the affine chart at `[1:0:...:0]`.
pub fn chart_at_base(f: &Polynomial) -> Polynomial {
    f.specialize(0, &f.field().one())
}

/// Multiplicity of `V(f)` at `[1:0:...:0]`: the lowest degree in the affine
/// chart. `None` when the chart polynomial is zero.
pub fn multiplicity_at_base(f: &Polynomial) -> Option<u32> {
    chart_at_base(f).min_degree()
}

/// Multiplicity of `V(f)` at `y`.
pub fn multiplicity_at(f: &Polynomial, y: &ProjectivePoint) -> Result<Option<u32>> {
    let m = move_to_base_point(f.field(), y);
    Ok(multiplicity_at_base(&f.linear_substitute(&m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::random::{random_homogeneous, random_nonzero_vector, rng_from_seed};

    fn fp() -> Field {
        Field::prime(10007).unwrap()
    }

    #[test]
    fn canonical_form() {
        let f = Field::prime(7).unwrap();
        let p = ProjectivePoint::from_u64(&f, &[0, 3, 6]).unwrap();
        assert_eq!(p.coords(), &[f.zero(), f.one(), f.from_u64(2)]);
        assert_eq!(p, ProjectivePoint::from_u64(&f, &[0, 2, 4]).unwrap());
        assert_eq!(ProjectivePoint::from_u64(&f, &[0, 0]), Err(Error::ZeroPoint));
        assert_eq!(p.pivot(), 1);
    }

    #[test]
    fn move_examples() {
        let f = fp();
        let y = ProjectivePoint::from_u64(&f, &[1, 0, 0]).unwrap();
        assert_eq!(move_to_base_point(&f, &y), Matrix::identity(&f, 3));
        let y = ProjectivePoint::from_u64(&f, &[0, 1, 0]).unwrap();
        let m = move_to_base_point(&f, &y);
        assert_eq!(m.column(0), y.coords().to_vec());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn move_then_inverse_is_identity() {
        let f = fp();
        let mut rng = rng_from_seed(11);
        for _ in 0..100 {
            let y = ProjectivePoint::new(&f, random_nonzero_vector(&f, 5, &mut rng)).unwrap();
            let m = move_to_base_point(&f, &y);
            let inv = m.inverse().unwrap();
            assert_eq!(m.mul(&inv), Matrix::identity(&f, 5));
            let v = random_nonzero_vector(&f, 5, &mut rng);
            assert_eq!(inv.mul_vec(&m.mul_vec(&v)), v);
            let e0 = ProjectivePoint::new(&f, inv.mul_vec(y.coords())).unwrap();
            assert_eq!(e0, ProjectivePoint::base(&f, 4));
        }
    }

    #[test]
    fn multiplicity_survives_moving() {
        let f = fp();
        let mut rng = rng_from_seed(12);
        for m in [1u32, 2, 3] {
            for _ in 0..10 {
                // f with multiplicity m at the base point, then moved to a random y
                let mut g = Polynomial::zero(&f, 4);
                let x0 = Polynomial::var(&f, 4, 0);
                for i in m..=3 {
                    let fi = random_homogeneous(&f, 3, i, &mut rng);
                    let shifted = fi.substitute(&[
                        Polynomial::var(&f, 4, 1),
                        Polynomial::var(&f, 4, 2),
                        Polynomial::var(&f, 4, 3),
                    ]);
                    g = &g + &(&x0.pow(3 - i) * &shifted);
                }
                assert_eq!(multiplicity_at_base(&g), Some(m));
                let a = crate::random::random_invertible_matrix(&f, 4, &mut rng);
                let moved = g.linear_substitute(&a.inverse().unwrap()).unwrap();
                let y = ProjectivePoint::new(&f, a.column(0)).unwrap();
                assert_eq!(multiplicity_at(&moved, &y).unwrap(), Some(m));
            }
        }
    }

    #[test]
    fn line_restriction() {
        let f = fp();
        let names = Polynomial::default_names(3);
        let y = ProjectivePoint::from_u64(&f, &[1, 0, 0]).unwrap();
        let y2 = ProjectivePoint::from_u64(&f, &[0, 1, 0]).unwrap();
        let l = line_through(&f, &y, &y2).unwrap();
        assert_eq!(l.restrict(&Polynomial::var(&f, 3, 2)), Polynomial::zero(&f, 2));
        assert_eq!(line_through(&f, &y, &y), Err(Error::EqualPoints));

        // f = x0^{d-i} f_i: restriction is sum u^{d-i} v^i f_i(y')
        let g = parse("x0^2*x1 + x0*x1*x2 + x2^3 + 5*x1^3", &names, &f).unwrap();
        let y2 = ProjectivePoint::from_u64(&f, &[0, 1, 3]).unwrap();
        let l = line_through(&f, &y, &y2).unwrap();
        let r = l.restrict(&g);
        let uv = Polynomial::default_names(2);
        let expected = parse("x0^2*x1 + 3*x0*x1^2 + 32*x1^3", &uv, &f).unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn lines_on_a_quadric() {
        let f = fp();
        let q = parse("x0*x3 - x1*x2", &Polynomial::default_names(4), &f).unwrap();
        let a = ProjectivePoint::from_u64(&f, &[1, 0, 0, 0]).unwrap();
        let b = ProjectivePoint::from_u64(&f, &[0, 1, 0, 0]).unwrap();
        let c = ProjectivePoint::from_u64(&f, &[0, 0, 0, 1]).unwrap();
        assert!(a.vanishes(&q) && b.vanishes(&q) && c.vanishes(&q));
        let on = line_through(&f, &a, &b).unwrap();
        let off = line_through(&f, &a, &c).unwrap();
        assert!(on.lies_in(&q));
        assert!(!off.lies_in(&q));
        // the coefficient oracle agrees with pointwise evaluation
        let mut rng = rng_from_seed(3);
        let (u, v) = (f.sample(&mut rng), f.sample_nonzero(&mut rng));
        assert!(on.point_at(&f, &u, &v).unwrap().vanishes(&q));
        assert!(!off.point_at(&f, &f.one(), &f.one()).unwrap().vanishes(&q));
    }

    #[test]
    fn subspaces() {
        let f = fp();
        let h = LinearSubspace::coordinate(&f, 3, &[0]);
        assert_eq!(h.dim(), 2);
        assert!(h.contains(&ProjectivePoint::from_u64(&f, &[0, 1, 2, 3]).unwrap()));
        let x0 = Polynomial::var(&f, 4, 0);
        assert!(LinearSubspace::new(3, vec![x0.clone(), x0.scale(&f.from_u64(2))]).is_err());
    }
}
