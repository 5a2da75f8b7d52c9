//! Zero-dimensional solving over a finite field: Gröbner basis, eliminant
//! of the first variable from the quotient algebra, roots, back substitution.

use super::groebner::{buchberger, GroebnerBasis};
use super::Ideal;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, UniPoly};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial};
use crate::projgeo::ProjectivePoint;

/// Monomials outside the leading-term ideal of a zero-dimensional basis,
/// sorted. Errors when the quotient is infinite-dimensional.
pub fn standard_monomials(gb: &GroebnerBasis) -> Result<Vec<Monomial>> {
    let n = gb.nvars();
    let lms = gb.leading_monomials();
    let mut bounds = vec![None; n];
    for m in &lms {
        if let Some(v) = m.pure_power_var() {
            let e = m.exponents()[v];
            bounds[v] = Some(bounds[v].map_or(e, |b: u16| b.min(e)));
        }
    }
    if lms.iter().any(Monomial::is_one) {
        return Ok(Vec::new());
    }
    let bounds: Vec<u16> = bounds
        .into_iter()
        .collect::<Option<_>>()
        .ok_or(Error::NotZeroDimensional)?;
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fn rec(i: usize, cur: &mut Vec<u16>, bounds: &[u16], lms: &[Monomial], out: &mut Vec<Monomial>) {
        if i == cur.len() {
            let m = Monomial::new(cur);
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            return;
        }
        for e in 0..bounds[i] {
            cur[i] = e;
            // prune: once divisible, larger exponents stay divisible
            let partial = Monomial::new(cur);
            if lms.iter().any(|l| l.divides(&partial)) {
                break;
            }
            rec(i + 1, cur, bounds, lms, out);
        }
        cur[i] = 0;
    }
    rec(0, &mut cur, &bounds, &lms, &mut out);
    out.sort();
    Ok(out)
}

/// Minimal polynomial of multiplication by `x_0` on the quotient.
fn eliminant(gb: &GroebnerBasis, basis: &[Monomial]) -> UniPoly {
    let f = gb.field();
    let n = gb.nvars();
    let x0 = Polynomial::var(f, n, 0);
    let to_vec = |p: &Polynomial| -> Vec<FieldElement> {
        basis.iter().map(|m| p.coefficient(m)).collect()
    };
    let mut cur = Polynomial::constant(f, n, f.one());
    let mut cols = vec![to_vec(&cur)];
    loop {
        let m = Matrix::from_columns(f, &cols).expect("equal lengths");
        let ker = m.kernel();
        if let Some(c) = ker.into_iter().next() {
            return UniPoly::new(f, c).monic();
        }
        cur = gb.reduce(&(&cur * &x0));
        cols.push(to_vec(&cur));
    }
}

/// All solutions in `F^n` of a zero-dimensional affine system over a finite
/// field, sorted.
pub fn solve_affine(field: &Field, nvars: usize, gens: &[Polynomial]) -> Result<Vec<Vec<FieldElement>>> {
    if gens.iter().any(|g| g.field() != field || g.nvars() != nvars) {
        return Err(Error::DimensionMismatch("generators outside the given ring".into()));
    }
    let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nvars == 0 {
        return Ok(if gens.is_empty() { vec![Vec::new()] } else { Vec::new() });
    }
    if gens.is_empty() {
        return Err(Error::NotZeroDimensional);
    }
    let gb = buchberger(&Ideal::new(gens)?)?;
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    let basis = standard_monomials(&gb)?;
    let elim = eliminant(&gb, &basis);
    let mut out = Vec::new();
    for a in elim.roots()? {
        let sub: Vec<Polynomial> = gb.polynomials().iter().map(|g| g.specialize(0, &a)).collect();
        for mut rest in solve_affine(field, nvars - 1, &sub)? {
            rest.insert(0, a.clone());
            out.push(rest);
        }
    }
    out.sort();
    Ok(out)
}

/// Points over the coefficient field of a zero-dimensional homogeneous
/// ideal, found chart by chart (`x_{<j} = 0`, `x_j = 1`).
pub fn solve_projective(ideal: &Ideal) -> Result<Vec<ProjectivePoint>> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let f = ideal.field();
    let n = ideal.nvars();
    let mut out = Vec::new();
    for j in 0..n {
        let mut prefix = vec![f.zero(); j];
        prefix.push(f.one());
        let gens: Vec<Polynomial> = ideal
            .generators()
            .iter()
            .map(|g| g.specialize_prefix(&prefix))
            .collect();
        for sol in solve_affine(f, n - j - 1, &gens)? {
            let mut coords = prefix.clone();
            coords.extend(sol);
            out.push(ProjectivePoint::new(f, coords)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::projgeo::{LogScanner, DEFAULT_BUDGET};
    use crate::random::{random_homogeneous, rng_from_seed};

    #[test]
    fn affine_example() {
        let f = Field::prime(101).unwrap();
        let names = Polynomial::default_names(2);
        let gens = vec![
            parse("x0^2 - 4", &names, &f).unwrap(),
            parse("x1 - x0 - 1", &names, &f).unwrap(),
        ];
        let sols = solve_affine(&f, 2, &gens).unwrap();
        assert_eq!(sols, vec![vec![f.from_u64(2), f.from_u64(3)], vec![f.from_i64(-2), f.from_i64(-1)]]);
    }

    #[test]
    fn positive_dimension_is_rejected() {
        let f = Field::prime(101).unwrap();
        let g = parse("x0*x1", &Polynomial::default_names(2), &f).unwrap();
        assert_eq!(solve_affine(&f, 2, &[g]), Err(Error::NotZeroDimensional));
    }

    #[test]
    fn projective_solver_matches_scan() {
        for (p, k) in [(7u64, 1usize), (7, 2), (11, 1), (5, 3)] {
            let f = Field::extension(p, k).unwrap();
            let mut rng = rng_from_seed(p * 10 + k as u64);
            for _ in 0..4 {
                let gens: Vec<_> = (0..2).map(|_| random_homogeneous(&f, 3, 2, &mut rng)).collect();
                let ideal = Ideal::new(gens.clone()).unwrap();
                let mut solved = solve_projective(&ideal).unwrap();
                let mut scanned = LogScanner::new(&f, 2)
                    .unwrap()
                    .common_zeros(&gens, DEFAULT_BUDGET)
                    .unwrap();
                solved.sort();
                scanned.sort();
                assert_eq!(solved, scanned);
            }
        }
    }

    #[test]
    fn points_on_the_hyperplane_at_infinity() {
        let f = Field::prime(13).unwrap();
        let names = Polynomial::default_names(3);
        let i = Ideal::new(vec![
            parse("x0", &names, &f).unwrap(),
            parse("x1*x2", &names, &f).unwrap(),
        ])
        .unwrap();
        let pts = solve_projective(&i).unwrap();
        assert_eq!(pts.len(), 2);
    }
}
