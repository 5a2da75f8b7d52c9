//! Ideals: Gröbner bases, Hilbert series, point finding over finite fields,
//! Jacobian singularity analysis and slice degrees.

mod groebner;
mod hilbert;
pub(crate) mod points;
mod report;
mod singular;
mod slice;
mod solve;

pub use groebner::{buchberger, buchberger_with_limits, s_polynomial, GroebnerBasis, GroebnerLimits};
pub use hilbert::{hilbert_data, hilbert_data_of_basis, hilbert_numerator, HilbertData, Numerator};
pub use points::{rational_points, rational_points_with, FoundPoint, PointOptions, PointSet, Strategy};
pub use report::{Attempt, Check, CheckStatus, SerializedPoint, VarietyReport, NOT_COMPUTED};
pub use singular::{jacobian_matrix, jacobian_rank, minors_ideal, singular_points};
pub use slice::{random_slice, sample_points, slice_degree, SliceOutcome};
pub use solve::{solve_affine, solve_projective, standard_monomials};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{MonomialOrder, Polynomial};

/// Generators in a common ring with a chosen monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    field: Field,
    nvars: usize,
    gens: Vec<Polynomial>,
    order: MonomialOrder,
}

impl Ideal {
    /// Ideal with the default (grevlex) order. The list must be nonempty and
    /// share one ring.
    pub fn new(gens: Vec<Polynomial>) -> Result<Ideal> {
        let first = gens
            .first()
            .ok_or_else(|| Error::InvalidParameters("an ideal needs at least one generator".into()))?;
        let (field, nvars) = (first.field().clone(), first.nvars());
        if gens.iter().any(|g| g.nvars() != nvars || *g.field() != field) {
            return Err(Error::DimensionMismatch("generators live in different rings".into()));
        }
        Ok(Ideal {
            field,
            nvars,
            gens,
            order: MonomialOrder::default(),
        })
    }

    pub(crate) fn from_parts(field: &Field, nvars: usize, gens: Vec<Polynomial>, order: MonomialOrder) -> Ideal {
        Ideal {
            field: field.clone(),
            nvars,
            gens,
            order,
        }
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Ideal {
        self.order = order;
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `N` for an ideal of `P^N`.
    pub fn ambient_dim(&self) -> usize {
        self.nvars - 1
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero() || g.is_homogeneous())
    }

    /// Product of the generator degrees, the Bézout bound on the degree.
    pub fn bezout_bound(&self) -> u128 {
        self.gens
            .iter()
            .filter_map(Polynomial::degree)
            .map(|d| d as u128)
            .product()
    }

    pub fn map_coefficients(&self, emb: &crate::field::Embedding) -> Ideal {
        Ideal {
            field: emb.target().clone(),
            nvars: self.nvars,
            gens: self.gens.iter().map(|g| g.map_coefficients(emb)).collect(),
            order: self.order,
        }
    }

    pub fn generator_texts(&self) -> Vec<String> {
        self.gens.iter().map(ToString::to_string).collect()
    }
}
