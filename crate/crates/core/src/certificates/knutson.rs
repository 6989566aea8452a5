//! Determinants `f_k` along the anti-diagonal partition and their initial terms.

use super::{discussion_order, polyomino_ideal_in, CertError};
use crate::grid::{antidiagonal_partition, staircase_cells, AntidiagonalBlock, Cell, CellCollection, Vertex};
use crate::groebner::{reduced_groebner_basis, Budget};
use crate::polyring::{determinant, Monomial, MonomialOrder, Polynomial, SymbolicMatrix};
use serde::Serialize;

/// `f_k = det(M_k)` for one block, signed so that its initial coefficient is `+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnutsonFactor {
    pub block: AntidiagonalBlock,
    pub matrix: SymbolicMatrix,
    pub polynomial: Polynomial,
    pub initial: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnutsonPolynomial {
    pub factors: Vec<KnutsonFactor>,
    pub order: MonomialOrder,
}

/// Products with at most this many expanded terms are multiplied out.
const FULL_PRODUCT_TERMS: usize = 20_000;

impl KnutsonPolynomial {
    /// `in(f) = ∏ in(f_k)`.
    pub fn initial(&self) -> Monomial {
        self.factors
            .iter()
            .fold(Monomial::one(), |acc, f| acc.mul(&f.initial))
    }

    /// `in(g)` with `g` the product over blocks with at least two vertices.
    pub fn initial_without_singletons(&self) -> Monomial {
        self.factors
            .iter()
            .filter(|f| f.block.len() >= 2)
            .fold(Monomial::one(), |acc, f| acc.mul(&f.initial))
    }

    pub fn degree(&self) -> u32 {
        self.initial().degree()
    }

    /// Upper bound on the number of terms of the expanded product.
    pub fn expanded_size_bound(&self) -> usize {
        self.factors
            .iter()
            .fold(1usize, |acc, f| acc.saturating_mul(f.polynomial.len()))
    }

    /// `f = ∏ f_k`, or `None` when the expansion would be too large.
    pub fn f(&self) -> Option<Polynomial> {
        self.product(|_| true)
    }

    /// `g = ∏_{|V_k| >= 2} f_k`.
    pub fn g(&self) -> Option<Polynomial> {
        self.product(|f| f.block.len() >= 2)
    }

    fn product(&self, keep: impl Fn(&KnutsonFactor) -> bool) -> Option<Polynomial> {
        let chosen: Vec<&KnutsonFactor> = self.factors.iter().filter(|f| keep(f)).collect();
        let bound = chosen
            .iter()
            .fold(1usize, |acc, f| acc.saturating_mul(f.polynomial.len()));
        if bound > FULL_PRODUCT_TERMS {
            return None;
        }
        Some(chosen.iter().fold(Polynomial::one(), |acc, f| &acc * &f.polynomial))
    }
}

fn block_matrix(p: &CellCollection, block: &AntidiagonalBlock) -> SymbolicMatrix {
    let n = block.len();
    let (ik, jk) = block.matrix_origin();
    let verts = p.vertex_set();
    let mut m = SymbolicMatrix::zeros(n);
    for a in 1..=n {
        for b in 1..=n {
            if let Some(v) = Vertex::try_new(ik as i64 + a as i64, jk as i64 + b as i64) {
                if verts.contains(&v) {
                    m.set(a - 1, b - 1, Polynomial::var(v));
                }
            }
        }
    }
    m
}

/// All `f_k` with signs normalised under `order`.
pub fn knutson_polynomial_with_order(
    p: &CellCollection,
    order: &MonomialOrder,
) -> Result<KnutsonPolynomial, CertError> {
    let mut factors = Vec::new();
    for block in antidiagonal_partition(p) {
        let matrix = block_matrix(p, &block);
        let det = determinant(&matrix)?;
        let polynomial = det.with_positive_lead(order);
        let (initial, _) = polynomial.initial_term(order)?;
        factors.push(KnutsonFactor {
            block,
            matrix,
            polynomial,
            initial,
        });
    }
    Ok(KnutsonPolynomial {
        factors,
        order: order.clone(),
    })
}

/// All `f_k` under the discussion order.
pub fn knutson_polynomial(p: &CellCollection) -> Result<KnutsonPolynomial, CertError> {
    knutson_polynomial_with_order(p, &discussion_order(p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InitialProductCheck {
    pub passed: bool,
    #[serde(serialize_with = "crate::serialize_display")]
    pub initial: Monomial,
    #[serde(serialize_with = "crate::serialize_display")]
    pub expected: Monomial,
    /// `"expanded"` when `f` was multiplied out, `"factorwise"` otherwise.
    pub method: &'static str,
    /// Same comparison for `g` against the product over non-singleton blocks.
    pub g_passed: bool,
}

/// Does `in(f)` equal the product of all vertex variables?
pub fn check_initial_product(p: &CellCollection) -> Result<InitialProductCheck, CertError> {
    check_initial_product_with_order(p, &discussion_order(p))
}

pub fn check_initial_product_with_order(
    p: &CellCollection,
    order: &MonomialOrder,
) -> Result<InitialProductCheck, CertError> {
    let kp = knutson_polynomial_with_order(p, order)?;
    let expected = Monomial::product(p.vertices());
    let (initial, method) = match kp.f() {
        Some(f) => (f.initial_term(order)?.0, "expanded"),
        None => (kp.initial(), "factorwise"),
    };
    let g_expected = Monomial::product(
        kp.factors
            .iter()
            .filter(|f| f.block.len() >= 2)
            .flat_map(|f| f.block.vertices.iter().copied()),
    );
    let g_initial = match kp.g() {
        Some(g) => g.initial_term(order)?.0,
        None => kp.initial_without_singletons(),
    };
    Ok(InitialProductCheck {
        passed: initial == expected,
        initial,
        expected,
        method,
        g_passed: g_initial == g_expected,
    })
}

/// Membership verdicts for one `f_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetMembership {
    pub k: usize,
    /// `f_k ∉ I_{P_{k-1}}`.
    pub not_in_previous: bool,
    /// `(C, f_k ∈ I_{P_{k-1} ∪ {C}})` for each `C ∈ C_k`.
    pub in_extended: Vec<(Cell, bool)>,
}

impl DetMembership {
    pub fn passed(&self) -> bool {
        self.not_in_previous && self.in_extended.iter().all(|(_, ok)| *ok)
    }
}

/// `f_k ∉ I_{P_{k-1}}` and `f_k ∈ I_{P_{k-1} ∪ {C}}` for every `C ∈ C_k`, all inside the
/// ring over `V(P)`.
pub fn check_lemma_detfk(
    p: &CellCollection,
    k: usize,
    budget: &Budget,
) -> Result<DetMembership, CertError> {
    let kp = knutson_polynomial(p)?;
    let idx = k
        .checked_sub(1)
        .filter(|&x| x < kp.factors.len())
        .ok_or_else(|| CertError::Precondition(format!("no block with index {k}")))?;
    let factor = &kp.factors[idx];
    if factor.block.cells.is_empty() {
        return Err(CertError::Precondition(format!("block {k} has no cells")));
    }
    let previous = if idx == 0 {
        CellCollection::empty()
    } else {
        kp.factors[idx - 1].block.prefix.clone()
    };
    let staircase = staircase_cells(&factor.block);
    if !staircase.iter().all(|c| factor.block.prefix.contains(c)) {
        return Err(CertError::Precondition(format!(
            "the staircase below block {k} is not contained in P_{k}"
        )));
    }
    let ambient = p.vertices();
    let order = discussion_order(p);
    let f = &factor.polynomial;
    let member = |cells: &CellCollection| -> Result<bool, CertError> {
        if cells.is_empty() {
            return Ok(f.is_zero());
        }
        let ideal = polyomino_ideal_in(cells, &ambient);
        if ideal.is_zero() {
            return Ok(f.is_zero());
        }
        Ok(reduced_groebner_basis(&ideal, &order, budget)?.contains(f))
    };
    let not_in_previous = !member(&previous)?;
    let mut in_extended = Vec::new();
    for c in &factor.block.cells {
        let mut ext = previous.clone();
        ext.insert(*c);
        in_extended.push((*c, member(&ext)?));
    }
    Ok(DetMembership {
        k,
        not_in_previous,
        in_extended,
    })
}
