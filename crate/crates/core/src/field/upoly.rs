use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Field, FieldElement};
use crate::error::{Error, Result};

/// Dense univariate polynomial over a [`Field`], coefficients ascending and
/// trimmed (no trailing zeros).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> UniPoly {
        let mut p = UniPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly::new(field, Vec::new())
    }

    pub fn constant(field: &Field, c: FieldElement) -> UniPoly {
        UniPoly::new(field, vec![c])
    }

    /// `t^n`
    pub fn monomial(field: &Field, n: usize) -> UniPoly {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = field.one();
        UniPoly::new(field, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|x| f.mul(x, c)).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let coeffs = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        UniPoly::new(f, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(f);
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(f, coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc_inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if f.is_zero(&rem[i]) {
                continue;
            }
            let c = f.mul(&rem[i], &lc_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, d));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(f, quot), UniPoly::new(f, rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &UniPoly, modulus: &UniPoly) -> UniPoly {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &UniPoly) -> UniPoly {
        let mut base = self.rem(modulus);
        let mut acc = UniPoly::constant(&self.field, self.field.one()).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus);
            }
        }
        acc
    }

    pub fn pow_mod_big(&self, e: &BigUint, modulus: &UniPoly) -> UniPoly {
        let base = self.rem(modulus);
        let mut acc = UniPoly::constant(&self.field, self.field.one()).rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if e.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// `h^{q}` mod `modulus`, where `q` is the order of the coefficient field,
    /// computed as `k` successive `p`-th powers.
    fn frobenius_mod(&self, modulus: &UniPoly) -> UniPoly {
        let p = self.field.characteristic();
        let mut h = self.rem(modulus);
        for _ in 0..self.field.degree() {
            h = h.pow_mod(p, modulus);
        }
        h
    }

    fn require_finite(&self) -> Result<()> {
        if self.field.is_finite() {
            Ok(())
        } else {
            Err(Error::UnsupportedField(format!(
                "{} is not a finite field",
                self.field
            )))
        }
    }

    /// Irreducibility over a finite coefficient field `F_q`: no factor of
    /// degree `i <= deg/2`, checked by `gcd(t^{q^i} - t, f) = 1`.
    pub fn is_irreducible(&self) -> Result<bool> {
        self.require_finite()?;
        let Some(d) = self.degree() else {
            return Ok(false);
        };
        if d == 0 {
            return Ok(false);
        }
        let f = self.monic();
        let t = UniPoly::monomial(&self.field, 1);
        let mut h = t.rem(&f);
        for _ in 1..=d / 2 {
            h = h.frobenius_mod(&f);
            if f.gcd(&h.sub(&t)).degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Distinct roots in the coefficient field, sorted.
    pub fn roots(&self) -> Result<Vec<FieldElement>> {
        self.require_finite()?;
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let t = UniPoly::monomial(&self.field, 1);
        let split = f.gcd(&t.frobenius_mod(&f).sub(&t));
        let mut roots = Vec::new();
        let q = self.field.order_big().unwrap();
        let half = (q - BigUint::one()) >> 1;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        split_linear(&split, &half, &mut rng, &mut roots);
        roots.sort();
        Ok(roots)
    }
}

/// Equal-degree splitting of a product of distinct linear factors
/// (Cantor–Zassenhaus, odd characteristic).
fn split_linear(g: &UniPoly, half: &BigUint, rng: &mut ChaCha8Rng, out: &mut Vec<FieldElement>) {
    let field = g.field().clone();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let c = &g.coefficients()[0];
            let lc = &g.coefficients()[1];
            out.push(field.neg(&field.div(c, lc).unwrap()));
        }
        Some(_) if field.characteristic() == 2 => {
            // trace splitting is not needed for the odd fields used here;
            // fall back to exhaustive search over small fields
            let q = field.order().expect("small field");
            for i in 0..q {
                let x = field.element_from_index(i);
                if field.is_zero(&g.eval(&x)) {
                    out.push(x);
                }
            }
        }
        Some(d) => loop {
            let shift = field.sample(rng);
            let base = UniPoly::new(&field, vec![shift, field.one()]);
            let w = base.pow_mod_big(half, g);
            let h = g.gcd(&w.sub(&UniPoly::constant(&field, field.one())));
            let hd = h.degree().unwrap_or(0);
            if hd > 0 && hd < d {
                let (other, _) = g.div_rem(&h);
                split_linear(&h, half, rng, out);
                split_linear(&other.monic(), half, rng, out);
                return;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &Field, c: &[i64]) -> UniPoly {
        UniPoly::new(f, c.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn roots_of_split_polynomial() {
        let f = Field::prime(10007).unwrap();
        // (t - 3)(t + 5)(t - 100)^2
        let p = poly(&f, &[-3, 1])
            .mul(&poly(&f, &[5, 1]))
            .mul(&poly(&f, &[-100, 1]))
            .mul(&poly(&f, &[-100, 1]));
        let roots = p.roots().unwrap();
        let mut expected = vec![f.from_i64(3), f.from_i64(-5), f.from_i64(100)];
        expected.sort();
        assert_eq!(roots, expected);
    }

    #[test]
    fn roots_in_extension_match_exhaustive_search() {
        let f = Field::extension(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let coeffs: Vec<_> = (0..5).map(|_| f.sample(&mut rng)).collect();
            let p = UniPoly::new(&f, coeffs);
            if p.degree().unwrap_or(0) == 0 {
                continue;
            }
            let brute: Vec<_> = (0..25)
                .map(|i| f.element_from_index(i))
                .filter(|x| f.is_zero(&p.eval(x)))
                .collect();
            let mut brute = brute;
            brute.sort();
            assert_eq!(p.roots().unwrap(), brute);
        }
    }

    #[test]
    fn t_squared_plus_one() {
        let f3 = Field::prime(3).unwrap();
        assert!(poly(&f3, &[1, 0, 1]).is_irreducible().unwrap());
        let f5 = Field::prime(5).unwrap();
        assert!(!poly(&f5, &[1, 0, 1]).is_irreducible().unwrap());
        assert_eq!(poly(&f5, &[1, 0, 1]).roots().unwrap().len(), 2);
    }

    #[test]
    fn division_identity() {
        let f = Field::rationals();
        let a = poly(&f, &[1, 2, 3, 4, 5]);
        let b = poly(&f, &[7, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }
}
