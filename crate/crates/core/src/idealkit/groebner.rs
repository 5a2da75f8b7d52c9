//! Buchberger's algorithm with the normal selection strategy and both
//! Buchberger criteria.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::Signed;

use super::Ideal;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// Ceilings that turn runaway computations into [`Error::ResourceLimit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerLimits {
    pub max_basis: usize,
    pub max_pairs: usize,
    /// Largest numerator or denominator size over the rationals, in bits.
    pub max_coeff_bits: u64,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits {
            max_basis: 5_000,
            max_pairs: 2_000_000,
            max_coeff_bits: 4_096,
        }
    }
}

type Term = (Monomial, FieldElement);

/// Terms sorted strictly decreasing in the monomial order.
type Dense = Vec<Term>;

struct Ctx<'a> {
    field: &'a Field,
    order: MonomialOrder,
    limits: GroebnerLimits,
}

impl Ctx<'_> {
    fn dense(&self, p: &Polynomial) -> Dense {
        let mut t: Dense = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        t.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        t
    }

    fn monic(&self, mut p: Dense) -> Dense {
        if let Some((_, lc)) = p.first() {
            if !self.field.is_one(lc) {
                let s = self.field.inv(lc).expect("nonzero leading coefficient");
                for t in p.iter_mut() {
                    t.1 = self.field.mul(&t.1, &s);
                }
            }
        }
        p
    }

    /// `a - c * m * b`
    fn sub_mul(&self, a: &[Term], c: &FieldElement, m: &Monomial, b: &[Term]) -> Dense {
        let f = self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bj: Option<Term> = None;
        loop {
            if bj.is_none() && j < b.len() {
                bj = Some((b[j].0.mul(m), f.neg(&f.mul(c, &b[j].1))));
                j += 1;
            }
            match (a.get(i), bj.as_ref()) {
                (None, None) => break,
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (None, Some(_)) => out.push(bj.take().unwrap()),
                (Some(x), Some(y)) => match self.order.cmp(&x.0, &y.0) {
                    Ordering::Greater => {
                        out.push(x.clone());
                        i += 1;
                    }
                    Ordering::Less => out.push(bj.take().unwrap()),
                    Ordering::Equal => {
                        let s = f.add(&x.1, &y.1);
                        if !f.is_zero(&s) {
                            out.push((x.0.clone(), s));
                        }
                        i += 1;
                        bj = None;
                    }
                },
            }
        }
        out
    }

    /// Full reduction of `p` modulo the monic polynomials `basis`.
    fn reduce(&self, p: Dense, basis: &[Dense]) -> Result<Dense> {
        let mut rest = p;
        let mut start = 0;
        let mut done: Dense = Vec::new();
        while start < rest.len() {
            let (lm, lc) = (&rest[start].0, &rest[start].1);
            match basis.iter().find(|g| !g.is_empty() && g[0].0.divides(lm)) {
                Some(g) => {
                    let q = lm.div(&g[0].0).expect("divisible");
                    let lc = lc.clone();
                    rest = self.sub_mul(&rest[start..], &lc, &q, g);
                    start = 0;
                    self.check_size(&rest)?;
                }
                None => {
                    done.push(rest[start].clone());
                    start += 1;
                }
            }
        }
        Ok(done)
    }

    fn check_size(&self, p: &[Term]) -> Result<()> {
        for (_, c) in p {
            if let FieldElement::Rational(r) = c {
                let bits = r.numer().abs().bits().max(r.denom().bits());
                if bits > self.limits.max_coeff_bits {
                    return Err(Error::ResourceLimit(format!(
                        "coefficient of {bits} bits exceeds {}",
                        self.limits.max_coeff_bits
                    )));
                }
            }
        }
        Ok(())
    }

    fn spoly(&self, a: &[Term], b: &[Term]) -> Dense {
        let l = a[0].0.lcm(&b[0].0);
        let ma = l.div(&a[0].0).unwrap();
        let mb = l.div(&b[0].0).unwrap();
        let ta: Dense = a.iter().map(|(m, c)| (m.mul(&ma), c.clone())).collect();
        self.sub_mul(&ta, &self.field.one(), &mb, b)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// A reduced Gröbner basis: monic, interreduced, sorted by ascending leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: Field,
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.leading_term(self.order).unwrap().0.clone())
            .collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(Polynomial::is_constant)
    }

    /// Normal form of `p` modulo the basis.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let ctx = Ctx {
            field: &self.field,
            order: self.order,
            limits: GroebnerLimits {
                max_coeff_bits: u64::MAX,
                ..GroebnerLimits::default()
            },
        };
        let basis: Vec<Dense> = self.polys.iter().map(|g| ctx.dense(g)).collect();
        let r = ctx.reduce(ctx.dense(p), &basis).expect("no size limit");
        Polynomial::from_terms(&self.field, self.nvars, r)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn into_ideal(self) -> Ideal {
        Ideal::from_parts(&self.field, self.nvars, self.polys, self.order)
    }
}

pub fn buchberger(ideal: &Ideal) -> Result<GroebnerBasis> {
    buchberger_with_limits(ideal, GroebnerLimits::default())
}

pub fn buchberger_with_limits(ideal: &Ideal, limits: GroebnerLimits) -> Result<GroebnerBasis> {
    let field = ideal.field().clone();
    let ctx = Ctx {
        field: &field,
        order: ideal.order(),
        limits,
    };
    let order = ideal.order();
    let mut basis: Vec<Dense> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |basis: &mut Vec<Dense>,
               pairs: &mut Vec<Pair>,
               pending: &mut HashSet<(usize, usize)>,
               g: Dense|
     -> Result<()> {
        if basis.len() >= limits.max_basis {
            return Err(Error::ResourceLimit(format!("basis exceeds {} elements", limits.max_basis)));
        }
        let j = basis.len();
        for (i, h) in basis.iter().enumerate() {
            if h.is_empty() {
                continue;
            }
            // product criterion
            if h[0].0.is_coprime(&g[0].0) {
                continue;
            }
            pairs.push(Pair {
                i,
                j,
                lcm: h[0].0.lcm(&g[0].0),
            });
            pending.insert((i, j));
        }
        if pairs.len() > limits.max_pairs {
            return Err(Error::ResourceLimit(format!("more than {} pairs", limits.max_pairs)));
        }
        basis.push(g);
        Ok(())
    };

    for g in ideal.generators() {
        if g.is_zero() {
            continue;
        }
        let r = ctx.monic(ctx.reduce(ctx.dense(g), &basis)?);
        if !r.is_empty() {
            add(&mut basis, &mut pairs, &mut pending, r)?;
        }
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm, ties by index
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        pending.remove(&(pair.i, pair.j));

        // chain criterion
        let chained = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k][0].0.divides(&pair.lcm)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chained {
            continue;
        }

        let s = ctx.spoly(&basis[pair.i], &basis[pair.j]);
        let r = ctx.monic(ctx.reduce(s, &basis)?);
        if !r.is_empty() {
            add(&mut basis, &mut pairs, &mut pending, r)?;
        }
    }

    // minimalize
    let lms: Vec<Monomial> = basis.iter().map(|g| g[0].0.clone()).collect();
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len()).any(|k| {
                k != i && lms[k].divides(&lms[i]) && (lms[k] != lms[i] || k < i)
            })
        })
        .collect();
    let minimal: Vec<Dense> = keep.iter().map(|&i| basis[i].clone()).collect();

    // interreduce tails
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<Dense> = minimal
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, h)| h.clone())
            .collect();
        let head = g[0].clone();
        let tail = ctx.reduce(g[1..].to_vec(), &others)?;
        let mut p = vec![head];
        p.extend(tail);
        reduced.push(p);
    }
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let polys = reduced
        .into_iter()
        .map(|g| Polynomial::from_terms(&field, ideal.nvars(), g))
        .collect();
    Ok(GroebnerBasis {
        field: field.clone(),
        nvars: ideal.nvars(),
        order,
        polys,
    })
}

/// S-polynomial of two polynomials with respect to `order`.
pub fn s_polynomial(a: &Polynomial, b: &Polynomial, order: MonomialOrder) -> Polynomial {
    let ctx = Ctx {
        field: a.field(),
        order,
        limits: GroebnerLimits::default(),
    };
    let (da, db) = (ctx.monic(ctx.dense(a)), ctx.monic(ctx.dense(b)));
    Polynomial::from_terms(a.field(), a.nvars(), ctx.spoly(&da, &db))
}
