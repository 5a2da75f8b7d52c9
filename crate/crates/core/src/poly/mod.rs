//! Sparse multivariate polynomials with exact coefficients.

mod monomial;
mod parse;

pub use monomial::{monomials_of_degree, Monomial, MonomialOrder};
pub use parse::parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};
use crate::linalg::Matrix;

/// A polynomial in `nvars` variables: a map from exponent vectors to nonzero
/// coefficients. The zero polynomial has no terms and no degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(field: &Field, nvars: usize) -> Polynomial {
        Polynomial {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: FieldElement) -> Polynomial {
        Polynomial::from_terms(field, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> Polynomial {
        assert!(i < nvars, "variable index {i} out of range");
        Polynomial::from_terms(field, nvars, [(Monomial::var(nvars, i, 1), field.one())])
    }

    /// Sums like terms and drops zero coefficients.
    pub fn from_terms(
        field: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Polynomial {
        let mut p = Polynomial::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// A linear form `sum coeffs[i] * x_i`.
    pub fn linear_form(field: &Field, coeffs: &[FieldElement]) -> Polynomial {
        let n = coeffs.len();
        Polynomial::from_terms(
            field,
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i, 1), c.clone())),
        )
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m.exponents()[i]).max().unwrap_or(0)
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert!(self.field == other.field, "field mismatch");
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero(&self.field, self.nvars);
        }
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), self.field.mul(x, c)))
                .collect(),
        }
    }

    /// Multiplies by a monomial with coefficient.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero(&self.field, self.nvars);
        }
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, x)| (t.mul(m), self.field.mul(x, c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.field, self.nvars, self.field.one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c).unwrap()),
        }
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars, "point has wrong length");
        let f = &self.field;
        let mut powers: Vec<Vec<FieldElement>> = point.iter().map(|x| vec![f.one(), x.clone()]).collect();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = f.mul(table.last().unwrap(), &point[i]);
                    table.push(next);
                }
                t = f.mul(&t, &table[e as usize]);
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars, "variable index {i} out of range");
        let f = &self.field;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[i];
            if e == 0 {
                return None;
            }
            let mut d = m.clone();
            d.exponents_mut()[i] -= 1;
            Some((d, f.mul(c, &f.from_u64(e as u64))))
        });
        Polynomial::from_terms(f, self.nvars, terms.collect::<Vec<_>>())
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.partial_derivative(i)).collect()
    }

    /// Splits into homogeneous pieces keyed by degree; pieces that vanish are
    /// absent.
    pub fn homogeneous_components(&self) -> Result<BTreeMap<u32, Polynomial>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(&self.field, self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Replaces `x_i` by `images[i]`; all images share one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let f = &self.field;
        let target_nvars = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::constant(f, target_nvars, f.one()), p.clone()])
            .collect();
        let mut acc = Polynomial::zero(f, target_nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(f, target_nvars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// `f ∘ M`: the polynomial `v ↦ f(M v)`, for `M` square and invertible.
    pub fn linear_substitute(&self, m: &Matrix) -> Result<Polynomial> {
        if m.rows() != self.nvars || m.cols() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for {} variables",
                m.rows(),
                m.cols(),
                self.nvars
            )));
        }
        if m.rank() < self.nvars {
            return Err(Error::SingularMatrix);
        }
        Ok(self.compose_linear(m))
    }

    /// `v ↦ f(M v)` for any `nvars x c` matrix, giving a polynomial in `c`
    /// variables. Used to restrict to parametrized linear subspaces.
    pub fn compose_linear(&self, m: &Matrix) -> Polynomial {
        assert_eq!(m.rows(), self.nvars);
        let images: Vec<Polynomial> = (0..self.nvars)
            .map(|i| Polynomial::linear_form(&self.field, m.row(i)))
            .collect();
        if images.is_empty() {
            return self.clone();
        }
        self.substitute(&images)
    }

    /// Sets `x_i = value` and removes the variable.
    pub fn specialize(&self, i: usize, value: &FieldElement) -> Polynomial {
        assert!(i < self.nvars);
        let f = &self.field;
        let mut out = Polynomial::zero(f, self.nvars - 1);
        let mut powers = vec![f.one()];
        for (m, c) in &self.terms {
            let e = m.exponents()[i] as usize;
            while powers.len() <= e {
                let next = f.mul(powers.last().unwrap(), value);
                powers.push(next);
            }
            out.add_term(m.remove_var(i), f.mul(c, &powers[e]));
        }
        out
    }

    /// Sets the leading variables to fixed values, removing them.
    pub fn specialize_prefix(&self, values: &[FieldElement]) -> Polynomial {
        values
            .iter()
            .fold(self.clone(), |acc, v| acc.specialize(0, v))
    }

    /// Adds `extra` variables at the end (exponent zero).
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        let n = self.nvars + extra;
        Polynomial {
            field: self.field.clone(),
            nvars: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.resize(n, 0);
                    (Monomial::new(&e), c.clone())
                })
                .collect(),
        }
    }

    /// Removes variable `i`, which must not occur.
    pub fn drop_var(&self, i: usize) -> Result<Polynomial> {
        if self.degree_in(i) > 0 {
            return Err(Error::DimensionMismatch(format!("variable x{i} occurs")));
        }
        Ok(self.specialize(i, &self.field.zero()))
    }

    pub fn map_coefficients(&self, emb: &Embedding) -> Polynomial {
        Polynomial::from_terms(
            emb.target(),
            self.nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), emb.apply(c)))
                .collect::<Vec<_>>(),
        )
    }

    /// Text form with the given variable names, terms in decreasing grevlex
    /// order.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(b.0, a.0));
        let mut out = String::new();
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            let (negative, magnitude) = match self.field.signed_repr(c) {
                Some(pair) => pair,
                None => (false, format!("({})", self.field.format(c))),
            };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if factors.is_empty() {
                out.push_str(&magnitude);
            } else {
                if magnitude != "1" {
                    out.push_str(&magnitude);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&Polynomial::default_names(self.nvars)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.field, self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_compatible(rhs);
        let f = &self.field;
        let mut out = Polynomial::zero(f, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), f.mul(c1, c2));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::random::random_homogeneous;

    fn fp() -> Field {
        Field::prime(10007).unwrap()
    }

    fn p(text: &str, n: usize, f: &Field) -> Polynomial {
        parse(text, &Polynomial::default_names(n), f).unwrap()
    }

    #[test]
    fn homogeneous_components_examples() {
        let f = fp();
        let g = p("x1^2 + x2^3", 3, &f);
        let comps = g.homogeneous_components().unwrap();
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(comps[&2], p("x1^2", 3, &f));
        assert_eq!(comps[&3], p("x2^3", 3, &f));
        let h = p("x0^2*x1 + 3*x2^3", 3, &f);
        assert_eq!(h.homogeneous_components().unwrap().len(), 1);
        assert_eq!(
            Polynomial::zero(&f, 3).homogeneous_components(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn nodal_cubic_has_no_low_degree_part() {
        // x0*(x1*x2 + x2*x3 + x1*x3) + x1^3 + x2^3 + x3^3 has a node at [1:0:0:0]
        let f = fp();
        let g = p("x0*x1*x2 + x0*x2*x3 + x0*x1*x3 + x1^3 + x2^3 + x3^3", 4, &f);
        let affine = g.specialize(0, &f.one());
        let comps = affine.homogeneous_components().unwrap();
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn derivative_examples() {
        let f = fp();
        assert_eq!(p("x0^2*x1", 2, &f).partial_derivative(0), p("2*x0*x1", 2, &f));
        assert!(p("17", 2, &f).partial_derivative(1).is_zero());
    }

    #[test]
    fn euler_relation_on_random_cubics() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for _ in 0..30 {
            let g = random_homogeneous(&f, 4, 3, &mut rng);
            let mut lhs = Polynomial::zero(&f, 4);
            for i in 0..4 {
                lhs = &lhs + &(&Polynomial::var(&f, 4, i) * &g.partial_derivative(i));
            }
            assert_eq!(lhs, g.scale(&f.from_u64(3)));
        }
    }

    #[test]
    fn substitution_examples() {
        let f = fp();
        let g = p("x0^3 + 5*x0*x1 - x1^2", 2, &f);
        assert_eq!(g.linear_substitute(&Matrix::identity(&f, 2)).unwrap(), g);
        let swap = Matrix::from_rows(&f, vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]).unwrap();
        assert_eq!(p("x0", 2, &f).linear_substitute(&swap).unwrap(), p("x1", 2, &f));
        let singular = Matrix::zeros(&f, 2, 2);
        assert_eq!(g.linear_substitute(&singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn substitution_matches_evaluation_oracle() {
        let f = fp();
        let g = p("x0^2 + x1^2", 2, &f);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let m = loop {
            let rows = (0..2).map(|_| (0..2).map(|_| f.sample(&mut rng)).collect()).collect();
            let m = Matrix::from_rows(&f, rows).unwrap();
            if m.rank() == 2 {
                break m;
            }
        };
        let h = g.linear_substitute(&m).unwrap();
        for _ in 0..20 {
            let v: Vec<_> = (0..2).map(|_| f.sample(&mut rng)).collect();
            assert_eq!(h.eval(&v), g.eval(&m.mul_vec(&v)));
        }
    }

    #[test]
    fn substitution_is_multiplicative() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = random_homogeneous(&f, 3, 2, &mut rng);
        let b = random_homogeneous(&f, 3, 3, &mut rng);
        let rows = (0..3).map(|_| (0..3).map(|_| f.sample(&mut rng)).collect()).collect();
        let m = Matrix::from_rows(&f, rows).unwrap();
        let lhs = (&a * &b).linear_substitute(&m).unwrap();
        let rhs = &a.linear_substitute(&m).unwrap() * &b.linear_substitute(&m).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.degree(), Some(5));
    }

    #[test]
    fn specialize_removes_variable() {
        let f = fp();
        let g = p("x0*x1^2 + x2^3", 3, &f);
        assert_eq!(g.specialize(0, &f.one()), p("x0^2 + x1^3", 2, &f));
        assert_eq!(g.specialize(0, &f.zero()), p("x1^3", 2, &f));
    }

    fn random_poly(f: &Field, seed: u64) -> Polynomial {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Polynomial::zero(f, 3);
        for d in 0..=3 {
            g = &g + &random_homogeneous(f, 3, d, &mut rng);
        }
        g
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn ring_axioms(s1 in 0u64..1000, s2 in 0u64..1000, s3 in 0u64..1000) {
            let f = fp();
            let (a, b, c) = (random_poly(&f, s1), random_poly(&f, s2), random_poly(&f, s3));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }

        #[test]
        fn eval_is_a_homomorphism(s1 in 0u64..1000, s2 in 0u64..1000, pt in 0u64..1000) {
            let f = fp();
            let (a, b) = (random_poly(&f, s1), random_poly(&f, s2));
            let mut rng = ChaCha8Rng::seed_from_u64(pt);
            for _ in 0..5 {
                let v: Vec<_> = (0..3).map(|_| f.sample(&mut rng)).collect();
                prop_assert_eq!((&a + &b).eval(&v), f.add(&a.eval(&v), &b.eval(&v)));
                prop_assert_eq!((&a * &b).eval(&v), f.mul(&a.eval(&v), &b.eval(&v)));
            }
        }

        #[test]
        fn components_reassemble(s in 0u64..1000) {
            let f = fp();
            let a = random_poly(&f, s);
            let comps = a.homogeneous_components().unwrap();
            let mut sum = Polynomial::zero(&f, 3);
            for (d, c) in &comps {
                prop_assert!(c.is_homogeneous());
                prop_assert_eq!(c.degree(), Some(*d));
                sum = &sum + c;
            }
            prop_assert_eq!(sum, a);
        }

        #[test]
        fn text_round_trip(s in 0u64..1000, rational in proptest::bool::ANY) {
            let f = if rational { Field::rationals() } else { fp() };
            let a = random_poly(&f, s);
            let names = Polynomial::default_names(3);
            prop_assert_eq!(parse(&a.to_text(&names), &names, &f).unwrap(), a);
        }
    }
}
