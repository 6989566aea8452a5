//! Certificates about polyomino ideals: König-type generator selections, Knutson
//! determinant products, the permutation combinatorics behind the ladder argument and
//! the parallelogram extraction pipeline.

mod chi;
mod extraction;
mod feasibility;
mod knutson;
mod konig;
mod report;

pub use chi::{
    chi_check, chi_sweep, min_pair, permutation_sign, s_set, sn_partition, swap_positions,
    ChiCase, ChiError, ChiSweepRow, ChiWitness,
};
pub use extraction::{
    extraction_pipeline, ComponentCheck, ExtractionBranch, ExtractionReport, PartCheck,
};
pub use feasibility::{fourier_motzkin_feasible, positive_integer_weights, simplex_feasible};
pub use knutson::{
    check_initial_product, check_initial_product_with_order, check_lemma_detfk, knutson_polynomial,
    knutson_polynomial_with_order,
    DetMembership, InitialProductCheck, KnutsonFactor, KnutsonPolynomial,
};
pub use konig::{
    konig_search, konig_search_with, konig_weights, strategy_plan, verify_konig, HeightStatus,
    KonigCertificate, KonigClaim, KonigSearchOutcome, KonigSlot, KonigStrategy,
    KonigVerification, DEFAULT_NODE_LIMIT, MAX_GENERIC_CELLS,
};
pub use report::{
    knutson_certify, FSummary, KnutsonReport, KnutsonRoute, Outcome, RouteAttempt, Subcheck, Verdict,
};

use crate::grid::{CellCollection, GridError, Interval, Vertex};
use crate::groebner::{GroebnerError, IdealPresentation};
use crate::lattice::LatticeError;
use crate::polyring::{Monomial, MonomialOrder, OrderScheme, PolyError, Polynomial};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl CertError {
    pub fn is_budget(&self) -> bool {
        match self {
            CertError::Groebner(e) => e.is_budget(),
            CertError::Lattice(LatticeError::Groebner(e)) => e.is_budget(),
            _ => false,
        }
    }
}

/// The generator `x_a x_b − x_c x_d` of an inner interval with diagonal `{a, b}` and
/// anti-diagonal `{c, d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InnerBinomial {
    pub interval: Interval,
    pub diagonal_pair: (Vertex, Vertex),
    pub antidiagonal_pair: (Vertex, Vertex),
    #[serde(serialize_with = "crate::serialize_display")]
    pub polynomial: Polynomial,
}

impl InnerBinomial {
    pub fn new(interval: Interval) -> Self {
        let diagonal_pair = interval.diagonal();
        let antidiagonal_pair = interval.anti_diagonal();
        let polynomial = Polynomial::binomial(
            Monomial::product([diagonal_pair.0, diagonal_pair.1]),
            Monomial::product([antidiagonal_pair.0, antidiagonal_pair.1]),
        );
        InnerBinomial {
            interval,
            diagonal_pair,
            antidiagonal_pair,
            polynomial,
        }
    }

    pub fn diagonal_monomial(&self) -> Monomial {
        Monomial::product([self.diagonal_pair.0, self.diagonal_pair.1])
    }

    pub fn antidiagonal_monomial(&self) -> Monomial {
        Monomial::product([self.antidiagonal_pair.0, self.antidiagonal_pair.1])
    }
}

/// The inner binomials of a collection of cells, one per inner interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyominoIdeal {
    pub binomials: Vec<InnerBinomial>,
    pub ambient: Vec<Vertex>,
}

impl PolyominoIdeal {
    pub fn presentation(&self) -> IdealPresentation {
        IdealPresentation::with_ambient(
            self.binomials.iter().map(|b| b.polynomial.clone()).collect(),
            self.ambient.iter().copied(),
        )
    }

    pub fn len(&self) -> usize {
        self.binomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.binomials.is_empty()
    }
}

pub fn polyomino_ideal(p: &CellCollection) -> PolyominoIdeal {
    PolyominoIdeal {
        binomials: p.inner_intervals().into_iter().map(InnerBinomial::new).collect(),
        ambient: p.vertices(),
    }
}

/// `I_P` inside the polynomial ring over `ambient` (which must contain `V(P)`).
pub fn polyomino_ideal_in(p: &CellCollection, ambient: &[Vertex]) -> IdealPresentation {
    let mut ideal = polyomino_ideal(p);
    ideal.ambient = ambient
        .iter()
        .copied()
        .chain(ideal.ambient.iter().copied())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    ideal.presentation()
}

/// Graded reverse lex with `x_{i,j} < x_{k,l}` iff `i < k`, or `i = k` and `j < l`.
pub fn discussion_order(_p: &CellCollection) -> MonomialOrder {
    MonomialOrder::column_major(OrderScheme::GradedRevLex)
}

/// Graded reverse lex with `x_{i,j} < x_{k,l}` iff `j < l`, or `j = l` and `i < k`.
pub fn order6(_p: &CellCollection) -> MonomialOrder {
    MonomialOrder::row_major(OrderScheme::GradedRevLex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    #[test]
    fn single_cell_ideal() {
        let p = CellCollection::from_coords(&[(1, 1)]);
        let ideal = polyomino_ideal(&p);
        assert_eq!(ideal.len(), 1);
        assert_eq!(
            ideal.binomials[0].polynomial,
            parse_polynomial("x[1,1]*x[2,2] - x[1,2]*x[2,1]").unwrap()
        );
    }

    #[test]
    fn square_has_nine_binomials() {
        let p = CellCollection::from_coords(&[(1, 1), (2, 1), (1, 2), (2, 2)]);
        assert_eq!(polyomino_ideal(&p).len(), 9);
    }

    #[test]
    fn antidiagonal_term_leads_under_discussion_order() {
        let p = CellCollection::from_coords(&[(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)]);
        let order = discussion_order(&p);
        for b in polyomino_ideal(&p).binomials {
            let (lead, _) = b.polynomial.initial_term(&order).unwrap();
            assert_eq!(lead, b.antidiagonal_monomial());
        }
    }

    #[test]
    fn discussion_order_on_a_square() {
        let order = discussion_order(&CellCollection::from_coords(&[(1, 1)]));
        let mut vars = vec![
            Vertex::new(2, 2),
            Vertex::new(1, 2),
            Vertex::new(2, 1),
            Vertex::new(1, 1),
        ];
        order.sort_ascending(&mut vars);
        assert_eq!(
            vars,
            vec![Vertex::new(1, 1), Vertex::new(1, 2), Vertex::new(2, 1), Vertex::new(2, 2)]
        );
        let mut vars6 = vars.clone();
        order6(&CellCollection::from_coords(&[(1, 1)])).sort_ascending(&mut vars6);
        assert_eq!(
            vars6,
            vec![Vertex::new(1, 1), Vertex::new(2, 1), Vertex::new(1, 2), Vertex::new(2, 2)]
        );
    }
}
