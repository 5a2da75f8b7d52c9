//! Exact coefficient fields: the rationals, prime fields `F_p` and simple
//! extensions `F_p[t]/(m(t))`.
//!
//! A [`Field`] is a cheap, shareable handle; [`FieldElement`] is a plain
//! payload whose meaning is fixed by the field it is used with. Mixing
//! payloads from different fields is a logic error and panics.

mod table;
mod upoly;

pub use table::{LogTable, LOG_ZERO, MAX_TABLE_ORDER};
pub use upoly::UniPoly;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest supported extension degree `k` for `F_{p^k}`.
pub const MAX_EXT_DEGREE: usize = 12;

/// Working prime for every pipeline unless overridden.
pub const DEFAULT_PRIME: u32 = 10007;

/// Default bound `B` for sampling rationals uniformly from `[-B, B]`.
pub const DEFAULT_RATIONAL_BOUND: i64 = 50;

/// Seed used by [`Field::extension`], so that `F_{p^k}` is one fixed field
/// throughout a process.
pub const DEFAULT_EXTENSION_SEED: u64 = 0;

const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime { p: u32 },
    /// `F_p[t]/(modulus)`; the modulus is monic, coefficients ascending.
    Extension { p: u32, k: usize, modulus: Vec<u32> },
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldConfig {
    kind: FieldKind,
    rational_bound: i64,
    lazy_reduce: bool,
}

impl FieldConfig {
    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn rational_bound(&self) -> i64 {
        self.rational_bound
    }
}

/// Shared handle to a [`FieldConfig`].
#[derive(Clone)]
pub struct Field(Arc<FieldConfig>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// An element of some [`Field`], always stored in canonical form: a reduced
/// fraction, a least residue, or a coefficient vector reduced modulo the
/// defining polynomial (unused slots zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Rational(BigRational),
    Residue(u32),
    Ext([u32; MAX_EXT_DEGREE]),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Builds `F_{p^k}` with a modulus found by seeded random search and a
/// gcd-based irreducibility test. `k = 1` yields the prime field itself.
pub fn build_extension(p: u64, k: usize, seed: u64) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(Error::UnsupportedField(format!("prime {p} exceeds 2^31 - 1")));
    }
    if k == 0 || k > MAX_EXT_DEGREE {
        return Err(Error::UnsupportedField(format!(
            "extension degree {k} outside 1..={MAX_EXT_DEGREE}"
        )));
    }
    let base = Field::prime(p)?;
    if k == 1 {
        return Ok(base);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 8) ^ k as u64);
    loop {
        let mut coeffs: Vec<FieldElement> = (0..k).map(|_| base.sample(&mut rng)).collect();
        if base.is_zero(&coeffs[0]) {
            continue;
        }
        coeffs.push(base.one());
        let candidate = UniPoly::new(&base, coeffs);
        if candidate.is_irreducible()? {
            let modulus = candidate
                .coefficients()
                .iter()
                .map(|c| base.residue(c))
                .collect();
            return Field::from_modulus(p, modulus);
        }
    }
}

impl Field {
    fn wrap(kind: FieldKind) -> Field {
        let lazy_reduce = match &kind {
            FieldKind::Extension { p, .. } => (*p as u64) < (1 << 26),
            _ => false,
        };
        Field(Arc::new(FieldConfig {
            kind,
            rational_bound: DEFAULT_RATIONAL_BOUND,
            lazy_reduce,
        }))
    }

    pub fn rationals() -> Field {
        Field::wrap(FieldKind::Rationals)
    }

    pub fn rationals_with_bound(bound: i64) -> Field {
        Field(Arc::new(FieldConfig {
            kind: FieldKind::Rationals,
            rational_bound: bound.abs(),
            lazy_reduce: false,
        }))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::UnsupportedField(format!("prime {p} exceeds 2^31 - 1")));
        }
        Ok(Field::wrap(FieldKind::Prime { p: p as u32 }))
    }

    /// The canonical `F_{p^k}` of this crate (fixed modulus per `(p, k)`).
    pub fn extension(p: u64, k: usize) -> Result<Field> {
        build_extension(p, k, DEFAULT_EXTENSION_SEED)
    }

    /// `F_p[t]/(modulus)` for a monic modulus given by ascending coefficients.
    pub fn from_modulus(p: u64, modulus: Vec<u32>) -> Result<Field> {
        let base = Field::prime(p)?;
        let k = modulus.len().saturating_sub(1);
        if k == 0 || k > MAX_EXT_DEGREE || modulus[k] != 1 {
            return Err(Error::UnsupportedField(
                "modulus must be monic of degree 1..=12".into(),
            ));
        }
        if k == 1 {
            return Ok(base);
        }
        let m = UniPoly::new(
            &base,
            modulus.iter().map(|&c| base.from_u64(c as u64)).collect(),
        );
        if !m.is_irreducible()? {
            return Err(Error::UnsupportedField("modulus is reducible".into()));
        }
        let modulus = modulus.iter().map(|&c| c % p as u32).collect();
        Ok(Field::wrap(FieldKind::Extension {
            p: p as u32,
            k,
            modulus,
        }))
    }

    pub fn config(&self) -> &FieldConfig {
        &self.0
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    pub fn label(&self) -> String {
        match &self.0.kind {
            FieldKind::Rationals => "QQ".to_string(),
            FieldKind::Prime { p } => format!("F_{p}"),
            FieldKind::Extension { p, k, .. } => format!("F_{p}^{k}"),
        }
    }

    /// Defining polynomial in the generator `a`, for extension fields.
    pub fn modulus_text(&self) -> Option<String> {
        match &self.0.kind {
            FieldKind::Extension { modulus, .. } => {
                let mut e = [0u32; MAX_EXT_DEGREE];
                let k = modulus.len() - 1;
                e[..k].copy_from_slice(&modulus[..k]);
                Some(format!("a^{k}+{}", format_ext(&e, k)))
            }
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.kind {
            FieldKind::Rationals => 0,
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => *p as u64,
        }
    }

    /// Degree over the prime field (1 for `F_p` and for the rationals).
    pub fn degree(&self) -> usize {
        match &self.0.kind {
            FieldKind::Extension { k, .. } => *k,
            _ => 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.0.kind, FieldKind::Rationals)
    }

    /// Number of elements, when finite and representable.
    pub fn order(&self) -> Option<u128> {
        match &self.0.kind {
            FieldKind::Rationals => None,
            FieldKind::Prime { p } => Some(*p as u128),
            FieldKind::Extension { p, k, .. } => (*p as u128).checked_pow(*k as u32),
        }
    }

    pub fn order_big(&self) -> Option<BigUint> {
        match &self.0.kind {
            FieldKind::Rationals => None,
            FieldKind::Prime { p } => Some(BigUint::from(*p)),
            FieldKind::Extension { p, k, .. } => Some(BigUint::from(*p).pow(*k as u32)),
        }
    }

    pub fn prime_field(&self) -> Result<Field> {
        match &self.0.kind {
            FieldKind::Rationals => Err(Error::UnsupportedField("rationals".into())),
            FieldKind::Prime { .. } => Ok(self.clone()),
            FieldKind::Extension { p, .. } => Field::prime(*p as u64),
        }
    }

    pub fn zero(&self) -> FieldElement {
        match &self.0.kind {
            FieldKind::Rationals => FieldElement::Rational(BigRational::zero()),
            FieldKind::Prime { .. } => FieldElement::Residue(0),
            FieldKind::Extension { .. } => FieldElement::Ext([0; MAX_EXT_DEGREE]),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        match &self.0.kind {
            FieldKind::Rationals => FieldElement::Rational(BigRational::from_integer(n.into())),
            FieldKind::Prime { p } => FieldElement::Residue((n % *p as u64) as u32),
            FieldKind::Extension { p, .. } => {
                let mut e = [0; MAX_EXT_DEGREE];
                e[0] = (n % *p as u64) as u32;
                FieldElement::Ext(e)
            }
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let e = self.from_u64(n.unsigned_abs());
        if n < 0 {
            self.neg(&e)
        } else {
            e
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match &self.0.kind {
            FieldKind::Rationals => FieldElement::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => {
                let r = n.mod_floor(&BigInt::from(*p)).to_u64().expect("residue fits");
                self.from_u64(r)
            }
        }
    }

    /// Image of the fraction `num/den`; fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        if den.is_zero() {
            return Err(Error::ZeroInversion);
        }
        match &self.0.kind {
            FieldKind::Rationals => Ok(FieldElement::Rational(BigRational::new(
                num.clone(),
                den.clone(),
            ))),
            _ => {
                let d = self.from_bigint(den);
                let inv = self.inv(&d)?;
                Ok(self.mul(&self.from_bigint(num), &inv))
            }
        }
    }

    /// The generator `a` of an extension field (for prime fields, 1 is not a
    /// generator; this returns `None`).
    pub fn generator(&self) -> Option<FieldElement> {
        match &self.0.kind {
            FieldKind::Extension { .. } => {
                let mut e = [0; MAX_EXT_DEGREE];
                e[1] = 1;
                Some(FieldElement::Ext(e))
            }
            _ => None,
        }
    }

    /// Element with the given coefficients in the power basis `1, a, a^2, ...`.
    pub fn from_coefficients(&self, coeffs: &[u64]) -> FieldElement {
        match &self.0.kind {
            FieldKind::Extension { p, k, .. } => {
                assert!(coeffs.len() <= *k, "too many coefficients for {}", self.label());
                let mut e = [0; MAX_EXT_DEGREE];
                for (slot, c) in e.iter_mut().zip(coeffs) {
                    *slot = (c % *p as u64) as u32;
                }
                FieldElement::Ext(e)
            }
            _ => {
                assert!(coeffs.len() <= 1);
                self.from_u64(coeffs.first().copied().unwrap_or(0))
            }
        }
    }

    /// Least residue of an element of a prime field.
    pub fn residue(&self, e: &FieldElement) -> u32 {
        match e {
            FieldElement::Residue(r) => *r,
            other => panic!("{other:?} is not a residue of {}", self.label()),
        }
    }

    pub fn contains(&self, e: &FieldElement) -> bool {
        match (&self.0.kind, e) {
            (FieldKind::Rationals, FieldElement::Rational(_)) => true,
            (FieldKind::Prime { p }, FieldElement::Residue(r)) => r < p,
            (FieldKind::Extension { p, k, .. }, FieldElement::Ext(c)) => {
                c[..*k].iter().all(|x| x < p) && c[*k..].iter().all(|x| *x == 0)
            }
            _ => false,
        }
    }

    /// Canonical representative of a possibly unreduced payload.
    pub fn normalize(&self, e: &FieldElement) -> FieldElement {
        match (&self.0.kind, e) {
            (FieldKind::Rationals, FieldElement::Rational(r)) => {
                FieldElement::Rational(BigRational::new(r.numer().clone(), r.denom().clone()))
            }
            (FieldKind::Prime { p }, FieldElement::Residue(r)) => FieldElement::Residue(r % p),
            (FieldKind::Extension { p, k, .. }, FieldElement::Ext(c)) => {
                let mut wide = [0u64; 2 * MAX_EXT_DEGREE - 1];
                for (w, x) in wide.iter_mut().zip(c.iter()) {
                    *w = *x as u64 % *p as u64;
                }
                FieldElement::Ext(self.ext_reduce(&mut wide, MAX_EXT_DEGREE.max(*k)))
            }
            (_, other) => panic!("{other:?} does not belong to {}", self.label()),
        }
    }

    pub fn is_zero(&self, e: &FieldElement) -> bool {
        match e {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Residue(r) => *r == 0,
            FieldElement::Ext(c) => c.iter().all(|x| *x == 0),
        }
    }

    pub fn is_one(&self, e: &FieldElement) -> bool {
        match e {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Residue(r) => *r == 1,
            FieldElement::Ext(c) => c[0] == 1 && c[1..].iter().all(|x| *x == 0),
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (&self.0.kind, a, b) {
            (FieldKind::Prime { p }, FieldElement::Residue(x), FieldElement::Residue(y)) => {
                let s = *x as u64 + *y as u64;
                FieldElement::Residue((if s >= *p as u64 { s - *p as u64 } else { s }) as u32)
            }
            (FieldKind::Extension { p, k, .. }, FieldElement::Ext(x), FieldElement::Ext(y)) => {
                let mut out = [0u32; MAX_EXT_DEGREE];
                for i in 0..*k {
                    let s = x[i] as u64 + y[i] as u64;
                    out[i] = (if s >= *p as u64 { s - *p as u64 } else { s }) as u32;
                }
                FieldElement::Ext(out)
            }
            (FieldKind::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x + y)
            }
            _ => self.mismatch(a, b),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match (&self.0.kind, a) {
            (FieldKind::Prime { p }, FieldElement::Residue(x)) => {
                FieldElement::Residue(if *x == 0 { 0 } else { p - x })
            }
            (FieldKind::Extension { p, k, .. }, FieldElement::Ext(x)) => {
                let mut out = [0u32; MAX_EXT_DEGREE];
                for i in 0..*k {
                    out[i] = if x[i] == 0 { 0 } else { p - x[i] };
                }
                FieldElement::Ext(out)
            }
            (FieldKind::Rationals, FieldElement::Rational(x)) => FieldElement::Rational(-x),
            _ => self.mismatch(a, a),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (&self.0.kind, a, b) {
            (FieldKind::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x - y)
            }
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (&self.0.kind, a, b) {
            (FieldKind::Prime { p }, FieldElement::Residue(x), FieldElement::Residue(y)) => {
                FieldElement::Residue(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (FieldKind::Extension { .. }, FieldElement::Ext(x), FieldElement::Ext(y)) => {
                FieldElement::Ext(self.ext_mul(x, y))
            }
            (FieldKind::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x * y)
            }
            _ => self.mismatch(a, b),
        }
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::ZeroInversion);
        }
        Ok(match (&self.0.kind, a) {
            (FieldKind::Prime { p }, FieldElement::Residue(x)) => {
                FieldElement::Residue(inv_mod(*x as u64, *p as u64) as u32)
            }
            (FieldKind::Extension { p, k, modulus }, FieldElement::Ext(x)) => {
                FieldElement::Ext(ext_inv(x, *p as u64, *k, modulus))
            }
            (FieldKind::Rationals, FieldElement::Rational(x)) => FieldElement::Rational(x.recip()),
            _ => self.mismatch(a, a),
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    pub fn pow_big(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// `a^p`, the Frobenius endomorphism.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        match &self.0.kind {
            FieldKind::Rationals => a.clone(),
            FieldKind::Prime { .. } => a.clone(),
            FieldKind::Extension { p, .. } => self.pow(a, *p as u64),
        }
    }

    /// Whether `a` lies in the subfield `F_{p^j}`, i.e. `a^{p^j} = a`.
    pub fn in_subfield(&self, a: &FieldElement, j: usize) -> bool {
        let mut x = a.clone();
        for _ in 0..j {
            x = self.frobenius(&x);
        }
        x == *a
    }

    /// Uniform element of a finite field, or a uniform integer in `[-B, B]`
    /// for the rationals.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        match &self.0.kind {
            FieldKind::Rationals => {
                let b = self.0.rational_bound;
                FieldElement::Rational(BigRational::from_integer(rng.gen_range(-b..=b).into()))
            }
            FieldKind::Prime { p } => FieldElement::Residue(rng.gen_range(0..*p)),
            FieldKind::Extension { p, k, .. } => {
                let mut e = [0; MAX_EXT_DEGREE];
                for slot in e.iter_mut().take(*k) {
                    *slot = rng.gen_range(0..*p);
                }
                FieldElement::Ext(e)
            }
        }
    }

    pub fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let e = self.sample(rng);
            if !self.is_zero(&e) {
                return e;
            }
        }
    }

    /// Element number `index` in the base-`p` digit enumeration of a finite
    /// field (digit `i` is the coefficient of `a^i`).
    pub fn element_from_index(&self, mut index: u128) -> FieldElement {
        match &self.0.kind {
            FieldKind::Rationals => panic!("the rationals are not enumerable here"),
            FieldKind::Prime { p } => FieldElement::Residue((index % *p as u128) as u32),
            FieldKind::Extension { p, k, .. } => {
                let mut e = [0; MAX_EXT_DEGREE];
                for slot in e.iter_mut().take(*k) {
                    *slot = (index % *p as u128) as u32;
                    index /= *p as u128;
                }
                FieldElement::Ext(e)
            }
        }
    }

    pub fn index_of(&self, e: &FieldElement) -> u128 {
        match (&self.0.kind, e) {
            (FieldKind::Prime { .. }, FieldElement::Residue(r)) => *r as u128,
            (FieldKind::Extension { p, k, .. }, FieldElement::Ext(c)) => c[..*k]
                .iter()
                .rev()
                .fold(0u128, |acc, x| acc * *p as u128 + *x as u128),
            _ => panic!("{e:?} is not an element of a finite field {}", self.label()),
        }
    }

    pub fn format(&self, e: &FieldElement) -> String {
        match (&self.0.kind, e) {
            (_, FieldElement::Rational(r)) => r.to_string(),
            (_, FieldElement::Residue(r)) => r.to_string(),
            (FieldKind::Extension { k, .. }, FieldElement::Ext(c)) => format_ext(c, *k),
            (_, FieldElement::Ext(c)) => format_ext(c, MAX_EXT_DEGREE),
        }
    }

    /// Whether the element is an integer multiple of 1 whose absolute value
    /// is small; used by the printer to choose signs.
    pub(crate) fn signed_repr(&self, e: &FieldElement) -> Option<(bool, String)> {
        match e {
            FieldElement::Rational(r) => Some((r.is_negative(), r.abs().to_string())),
            FieldElement::Residue(r) => Some((false, r.to_string())),
            FieldElement::Ext(_) => None,
        }
    }

    /// Embedding of this field into `target`, when `target` is a finite
    /// extension of it. The image of the generator is the least root of the
    /// modulus in `target`.
    pub fn embedding_into(&self, target: &Field) -> Result<Embedding> {
        if self == target {
            return Ok(Embedding {
                source: self.clone(),
                target: target.clone(),
                generator_image: None,
            });
        }
        match (&self.0.kind, &target.0.kind) {
            (FieldKind::Prime { p }, FieldKind::Extension { p: q, .. }) if p == q => Ok(Embedding {
                source: self.clone(),
                target: target.clone(),
                generator_image: None,
            }),
            (FieldKind::Extension { p, k, modulus }, FieldKind::Extension { p: q, k: kk, .. })
                if p == q && kk % k == 0 =>
            {
                let m = UniPoly::new(
                    target,
                    modulus.iter().map(|&c| target.from_u64(c as u64)).collect(),
                );
                let roots = m.roots()?;
                let alpha = roots.into_iter().next().ok_or_else(|| {
                    Error::UnsupportedField(format!("{} does not embed in {}", self, target))
                })?;
                Ok(Embedding {
                    source: self.clone(),
                    target: target.clone(),
                    generator_image: Some(alpha),
                })
            }
            _ => Err(Error::UnsupportedField(format!(
                "{} does not embed in {}",
                self, target
            ))),
        }
    }

    fn mismatch(&self, a: &FieldElement, b: &FieldElement) -> ! {
        panic!("operands {a:?}, {b:?} do not belong to {}", self.label())
    }

    fn ext_mul(&self, x: &[u32; MAX_EXT_DEGREE], y: &[u32; MAX_EXT_DEGREE]) -> [u32; MAX_EXT_DEGREE] {
        let (p, k) = match &self.0.kind {
            FieldKind::Extension { p, k, .. } => (*p as u64, *k),
            _ => unreachable!(),
        };
        let mut wide = [0u64; 2 * MAX_EXT_DEGREE - 1];
        if self.0.lazy_reduce {
            for i in 0..k {
                if x[i] == 0 {
                    continue;
                }
                for j in 0..k {
                    wide[i + j] += x[i] as u64 * y[j] as u64;
                }
            }
        } else {
            for i in 0..k {
                if x[i] == 0 {
                    continue;
                }
                for j in 0..k {
                    wide[i + j] = (wide[i + j] + x[i] as u64 * y[j] as u64) % p;
                }
            }
        }
        self.ext_reduce(&mut wide, 2 * k - 1)
    }

    /// Reduces the first `len` wide coefficients modulo the field's modulus.
    fn ext_reduce(&self, wide: &mut [u64; 2 * MAX_EXT_DEGREE - 1], len: usize) -> [u32; MAX_EXT_DEGREE] {
        let (p, k, modulus) = match &self.0.kind {
            FieldKind::Extension { p, k, modulus } => (*p as u64, *k, modulus),
            _ => unreachable!(),
        };
        let lazy = self.0.lazy_reduce;
        for i in (k..len).rev() {
            let c = wide[i] % p;
            wide[i] = 0;
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for j in 0..k {
                let t = neg * modulus[j] as u64;
                wide[i - k + j] = if lazy { wide[i - k + j] + t } else { (wide[i - k + j] + t) % p };
            }
        }
        let mut out = [0u32; MAX_EXT_DEGREE];
        for i in 0..k {
            out[i] = (wide[i] % p) as u32;
        }
        out
    }
}

/// Ring homomorphism between two finite fields of the same characteristic.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    generator_image: Option<FieldElement>,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, e: &FieldElement) -> FieldElement {
        if self.source == self.target {
            return e.clone();
        }
        match e {
            FieldElement::Residue(r) => self.target.from_u64(*r as u64),
            FieldElement::Ext(c) => {
                let alpha = self.generator_image.as_ref().expect("extension source");
                let mut acc = self.target.zero();
                for &x in c.iter().rev() {
                    acc = self.target.mul(&acc, alpha);
                    acc = self.target.add(&acc, &self.target.from_u64(x as u64));
                }
                acc
            }
            FieldElement::Rational(_) => panic!("rationals do not embed into finite fields"),
        }
    }
}

fn format_ext(c: &[u32; MAX_EXT_DEGREE], k: usize) -> String {
    let mut parts = Vec::new();
    for i in (0..k.min(MAX_EXT_DEGREE)).rev() {
        let x = c[i];
        if x == 0 {
            continue;
        }
        parts.push(match (i, x) {
            (0, _) => x.to_string(),
            (1, 1) => "a".to_string(),
            (1, _) => format!("{x}*a"),
            (_, 1) => format!("a^{i}"),
            _ => format!("{x}*a^{i}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u64
}

/// Inverse in `F_p[t]/(m)` by the extended Euclidean algorithm.
fn ext_inv(x: &[u32; MAX_EXT_DEGREE], p: u64, k: usize, modulus: &[u32]) -> [u32; MAX_EXT_DEGREE] {
    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    fn sub_scaled(a: &mut Vec<u64>, b: &[u64], c: u64, shift: usize, p: u64) {
        if a.len() < b.len() + shift {
            a.resize(b.len() + shift, 0);
        }
        for (i, bi) in b.iter().enumerate() {
            a[i + shift] = (a[i + shift] + p - (c * bi) % p) % p;
        }
        trim(a);
    }
    let mut r0: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
    let mut r1: Vec<u64> = x[..k].iter().map(|&c| c as u64).collect();
    trim(&mut r1);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        // r0 = q r1 + rem; s_new = s0 - q s1
        let lc_inv = inv_mod(*r1.last().unwrap(), p);
        let mut quotient = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
        let mut rem = r0.clone();
        while rem.len() >= r1.len() && !rem.is_empty() {
            let shift = rem.len() - r1.len();
            let c = rem.last().unwrap() * lc_inv % p;
            quotient[shift] = c;
            sub_scaled(&mut rem, &r1, c, shift, p);
        }
        let mut s_new = s0.clone();
        for (shift, c) in quotient.iter().enumerate() {
            if *c != 0 {
                sub_scaled(&mut s_new, &s1, *c, shift, p);
            }
        }
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s_new);
    }
    // r0 is a nonzero constant
    let c = inv_mod(r0[0], p);
    let mut out = [0u32; MAX_EXT_DEGREE];
    for (i, s) in s0.iter().enumerate().take(k) {
        out[i] = (s * c % p) as u32;
    }
    out
}

/// Finds a generator of the multiplicative group of a finite field, scanning
/// elements in index order.
pub(crate) fn primitive_element(field: &Field) -> Result<FieldElement> {
    let q = field
        .order()
        .ok_or_else(|| Error::UnsupportedField(field.label()))?;
    let factors = prime_factors(q - 1);
    for idx in 1..q {
        let g = field.element_from_index(idx);
        if factors
            .iter()
            .all(|l| !field.is_one(&field.pow(&g, ((q - 1) / l) as u64)))
        {
            return Ok(g);
        }
    }
    Err(Error::UnsupportedField(format!("{} has no primitive element", field)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fields() -> Vec<Field> {
        vec![
            Field::rationals(),
            Field::prime(7).unwrap(),
            Field::prime(10007).unwrap(),
            Field::extension(3, 2).unwrap(),
            Field::extension(7, 3).unwrap(),
            Field::extension(10007, 4).unwrap(),
        ]
    }

    #[test]
    fn inverse_examples() {
        for f in fields() {
            assert_eq!(f.inv(&f.one()).unwrap(), f.one());
            assert_eq!(f.inv(&f.zero()), Err(Error::ZeroInversion));
        }
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.inv(&f7.from_u64(3)).unwrap(), f7.from_u64(5));
        let q = Field::rationals();
        let a = q.from_fraction(&BigInt::from(-2), &BigInt::from(3)).unwrap();
        let b = q.from_fraction(&BigInt::from(-3), &BigInt::from(2)).unwrap();
        assert_eq!(q.inv(&a).unwrap(), b);
    }

    #[test]
    fn degree_one_extension_is_prime_field() {
        let f = build_extension(5, 1, 99).unwrap();
        assert_eq!(f.kind(), &FieldKind::Prime { p: 5 });
        assert_eq!(build_extension(9, 2, 0).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn quadratic_modulus_over_f3_has_no_root() {
        let f = Field::extension(3, 2).unwrap();
        let FieldKind::Extension { modulus, .. } = f.kind() else { panic!() };
        for x in 0..3u32 {
            let v = (modulus[0] + modulus[1] * x + modulus[2] * x * x) % 3;
            assert_ne!(v, 0, "modulus {modulus:?} has root {x}");
        }
    }

    #[test]
    fn cubic_modulus_over_f7_is_irreducible() {
        let f = Field::extension(7, 3).unwrap();
        let FieldKind::Extension { modulus, .. } = f.kind() else { panic!() };
        // independent check: gcd(t^7 - t, m) = gcd(t^49 - t, m) = 1 using
        // plain integer polynomial arithmetic mod 7
        let base = Field::prime(7).unwrap();
        let m = UniPoly::new(&base, modulus.iter().map(|&c| base.from_u64(c as u64)).collect());
        let t = UniPoly::monomial(&base, 1);
        for i in [7u64, 49] {
            let h = t.pow_mod(i, &m).sub(&t);
            assert_eq!(h.gcd(&m).degree(), Some(0));
        }
        // and no root in F_7 by exhaustion
        for x in 0..7u64 {
            assert!(!base.is_zero(&m.eval(&base.from_u64(x))));
        }
    }

    #[test]
    fn extension_is_deterministic_per_seed() {
        let a = build_extension(10007, 3, 5).unwrap();
        let b = build_extension(10007, 3, 5).unwrap();
        assert_eq!(a.kind(), b.kind());
    }

    #[test]
    fn sampling_is_deterministic_and_bounded() {
        for f in fields() {
            let mut r1 = ChaCha8Rng::seed_from_u64(11);
            let mut r2 = ChaCha8Rng::seed_from_u64(11);
            assert_eq!(f.sample(&mut r1), f.sample(&mut r2));
        }
        let q = Field::rationals_with_bound(1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let FieldElement::Rational(r) = q.sample(&mut rng) else { panic!() };
            assert!(r.is_integer() && r.numer().abs() <= BigInt::from(1));
        }
    }

    #[test]
    fn sampling_f7_is_uniform() {
        let f = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut counts = [0u32; 7];
        for _ in 0..7000 {
            counts[f.residue(&f.sample(&mut rng)) as usize] += 1;
        }
        // binomial(7000, 1/7): sigma = sqrt(7000 * 1/7 * 6/7)
        let sigma = (7000.0f64 / 7.0 * 6.0 / 7.0).sqrt();
        for c in counts {
            assert!((c as f64 - 1000.0).abs() < 5.0 * sigma, "{counts:?}");
        }
    }

    #[test]
    fn index_round_trip() {
        let f = Field::extension(5, 3).unwrap();
        for i in 0..125u128 {
            assert_eq!(f.index_of(&f.element_from_index(i)), i);
        }
    }

    #[test]
    fn embedding_respects_arithmetic() {
        let small = Field::extension(7, 2).unwrap();
        let big = Field::extension(7, 6).unwrap();
        let emb = small.embedding_into(&big).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = small.sample(&mut rng);
            let b = small.sample(&mut rng);
            assert_eq!(emb.apply(&small.mul(&a, &b)), big.mul(&emb.apply(&a), &emb.apply(&b)));
            assert_eq!(emb.apply(&small.add(&a, &b)), big.add(&emb.apply(&a), &emb.apply(&b)));
            assert!(big.in_subfield(&emb.apply(&a), 2));
        }
        assert!(Field::extension(7, 4).unwrap().embedding_into(&big).is_err());
    }

    #[test]
    fn primitive_element_generates() {
        let f = Field::extension(3, 2).unwrap();
        let g = primitive_element(&f).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        let mut x = f.one();
        for _ in 0..8 {
            seen.insert(x.clone());
            x = f.mul(&x, &g);
        }
        assert_eq!(seen.len(), 8);
    }

    fn axioms(f: &Field, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            let a = f.sample(&mut rng);
            let b = f.sample(&mut rng);
            let c = f.sample(&mut rng);
            assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            assert!(f.is_zero(&f.sub(&a, &a)));
            if !f.is_zero(&a) {
                assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            }
            let n = f.normalize(&a);
            assert_eq!(f.normalize(&n), n);
            assert!(f.contains(&n));
        }
    }

    #[test]
    fn field_axioms_hold() {
        for (i, f) in fields().iter().enumerate() {
            axioms(f, i as u64);
        }
    }

    #[test]
    fn frobenius_fixes_everything_after_k_steps() {
        for f in fields().into_iter().filter(|f| f.is_finite()) {
            let mut rng = ChaCha8Rng::seed_from_u64(77);
            let q = f.order_big().unwrap();
            for _ in 0..50 {
                let a = f.sample(&mut rng);
                assert!(f.in_subfield(&a, f.degree()));
                assert_eq!(f.pow_big(&a, &q), a);
            }
        }
    }

    proptest! {
        #[test]
        fn prime_field_matches_integer_arithmetic(a in 0u64..10007, b in 1u64..10007) {
            let f = Field::prime(10007).unwrap();
            let x = f.from_u64(a);
            let y = f.from_u64(b);
            prop_assert_eq!(f.mul(&x, &y), f.from_u64(a * b % 10007));
            prop_assert_eq!(f.mul(&f.div(&x, &y).unwrap(), &y), x);
        }
    }
}
