//! Integer exponent lattices and a primality test for pure-difference binomial ideals.
//!
//! Over the rationals a binomial ideal `I` with exponent lattice `L` is prime exactly when
//! it equals the lattice ideal of the saturation `Sat(L) = (L ⊗ ℚ) ∩ ℤⁿ`.

mod normal_form;

pub use normal_form::{hermite, identity, int_determinant, mat_mul, smith, IntMatrix, Smith};

use crate::grid::Vertex;
use crate::groebner::{
    ideal_equal, reduced_groebner_basis, saturate_by_all_variables, Budget, GroebnerError,
    IdealPresentation, SaturationRoute,
};
use crate::polyring::{Monomial, MonomialOrder, Polynomial};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("generator `{0}` is not a difference of two monomials")]
    NotBinomial(String),
    #[error("variable {0} is missing from the ambient list")]
    UnknownVariable(Vertex),
    #[error("exponent {0} does not fit in 32 bits")]
    ExponentOverflow(BigInt),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// A sublattice of `ℤ^variables`, stored by its Hermite normal form rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    pub variables: Vec<Vertex>,
    pub basis: Vec<Vec<BigInt>>,
}

impl IntegerLattice {
    /// The lattice spanned by `rows`; zero and dependent rows are dropped.
    pub fn from_rows(variables: Vec<Vertex>, rows: Vec<Vec<BigInt>>) -> Self {
        let n = variables.len();
        assert!(rows.iter().all(|r| r.len() == n), "row length must match the variables");
        let (h, _) = hermite(&rows);
        IntegerLattice {
            variables,
            basis: h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        IntegerLattice::from_rows(self.variables.clone(), rows).basis == self.basis
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> bool {
        other.basis.iter().all(|r| self.contains(r))
    }

    /// Elementary divisors of the basis matrix.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        if self.basis.is_empty() {
            return Vec::new();
        }
        smith(&self.basis).elementary_divisors()
    }

    /// `[Sat(L) : L]`.
    pub fn saturation_index(&self) -> BigInt {
        self.elementary_divisors().iter().product()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation_index().is_one()
    }

    /// One basis row per line, entries separated by spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.basis {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// `x^{v⁺} − x^{v⁻}`.
    pub fn binomial_of(&self, v: &[BigInt]) -> Result<Polynomial, LatticeError> {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (x, var) in v.iter().zip(&self.variables) {
            let e = x
                .abs()
                .to_u32()
                .ok_or_else(|| LatticeError::ExponentOverflow(x.clone()))?;
            if x.is_positive() {
                plus.push((*var, e));
            } else if x.is_negative() {
                minus.push((*var, e));
            }
        }
        Ok(Polynomial::binomial(Monomial::from_pairs(plus), Monomial::from_pairs(minus)))
    }
}

impl fmt::Display for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn exponent_row(m1: &Monomial, m2: &Monomial, variables: &[Vertex]) -> Result<Vec<BigInt>, LatticeError> {
    let mut row = vec![BigInt::zero(); variables.len()];
    for (sign, m) in [(1i64, m1), (-1, m2)] {
        for (v, e) in m.iter() {
            let k = variables
                .binary_search(&v)
                .map_err(|_| LatticeError::UnknownVariable(v))?;
            row[k] += BigInt::from(sign) * BigInt::from(e);
        }
    }
    Ok(row)
}

/// The lattice spanned by `exp(m₁) − exp(m₂)` over generators `m₁ − m₂`, in the
/// ambient variables of `ideal`.
pub fn exponent_lattice(ideal: &IdealPresentation) -> Result<IntegerLattice, LatticeError> {
    let variables = ideal.ambient.clone();
    let rows = ideal
        .generators
        .iter()
        .map(|g| {
            let (m1, m2) = g
                .as_pure_binomial()
                .ok_or_else(|| LatticeError::NotBinomial(g.to_string()))?;
            exponent_row(&m1, &m2, &variables)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntegerLattice::from_rows(variables, rows))
}

/// `(L ⊗ ℚ) ∩ ℤⁿ`: from `U·B·V = D`, the first `r` rows of `V⁻¹` span the saturation.
pub fn saturate_lattice(l: &IntegerLattice) -> IntegerLattice {
    if l.basis.is_empty() {
        return l.clone();
    }
    let s = smith(&l.basis);
    let r = s.elementary_divisors().len();
    IntegerLattice::from_rows(l.variables.clone(), s.v_inv[..r].to_vec())
}

/// Ideal of basis binomials, saturated by the product of all ambient variables.
pub fn lattice_ideal(
    l: &IntegerLattice,
    ambient: &[Vertex],
    budget: &Budget,
) -> Result<IdealPresentation, LatticeError> {
    for v in &l.variables {
        if !ambient.contains(v) {
            return Err(LatticeError::UnknownVariable(*v));
        }
    }
    let gens = l
        .basis
        .iter()
        .map(|row| l.binomial_of(row))
        .collect::<Result<Vec<_>, _>>()?;
    let ideal = IdealPresentation::with_ambient(gens, ambient.iter().copied());
    Ok(saturate_by_all_variables(&ideal, SaturationRoute::Auto, budget)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PrimalityVerdict {
    Prime,
    NotPrime {
        #[serde(serialize_with = "crate::serialize_display")]
        witness: Polynomial,
    },
    Inconclusive {
        reason: String,
    },
}

impl PrimalityVerdict {
    pub fn is_prime(&self) -> bool {
        matches!(self, PrimalityVerdict::Prime)
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, PrimalityVerdict::Inconclusive { .. })
    }
}

impl fmt::Display for PrimalityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimalityVerdict::Prime => write!(f, "prime (over the rationals)"),
            PrimalityVerdict::NotPrime { witness } => {
                write!(f, "not prime (over the rationals); witness {witness}")
            }
            PrimalityVerdict::Inconclusive { reason } => write!(f, "inconclusive: {reason}"),
        }
    }
}

/// Decides primality of a pure-difference binomial ideal over the rationals.
///
/// The witness for a non-prime verdict is a binomial of least degree lying in the
/// lattice ideal of `Sat(L)` but not in `I`.
pub fn is_prime_binomial(
    ideal: &IdealPresentation,
    budget: &Budget,
) -> Result<PrimalityVerdict, LatticeError> {
    let l = exponent_lattice(ideal)?;
    let sat = saturate_lattice(&l);
    if !l.is_saturated() {
        let witness = sat
            .basis
            .iter()
            .filter(|v| !l.contains(v))
            .map(|v| sat.binomial_of(v))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .min_by_key(|p| (p.total_degree().unwrap_or(0), p.to_string()))
            .expect("a saturated basis row lies outside L");
        return Ok(PrimalityVerdict::NotPrime { witness });
    }
    match prime_by_lattice_ideal(ideal, &sat, budget) {
        Ok(v) => Ok(v),
        Err(LatticeError::Groebner(e)) if e.is_budget() => Ok(PrimalityVerdict::Inconclusive {
            reason: e.to_string(),
        }),
        Err(e) => Err(e),
    }
}

fn prime_by_lattice_ideal(
    ideal: &IdealPresentation,
    sat: &IntegerLattice,
    budget: &Budget,
) -> Result<PrimalityVerdict, LatticeError> {
    let k = lattice_ideal(sat, &ideal.ambient, budget)?;
    let order = MonomialOrder::default();
    if ideal_equal(ideal, &k, &order, budget)? {
        return Ok(PrimalityVerdict::Prime);
    }
    let gi = reduced_groebner_basis(ideal, &order, budget)?;
    let gk = reduced_groebner_basis(&k, &order, budget)?;
    let witness = gk
        .elements
        .into_iter()
        .filter(|g| !gi.contains(g))
        .min_by_key(|p| (p.total_degree().unwrap_or(0), p.to_string()))
        .expect("I is strictly contained in its lattice ideal");
    Ok(PrimalityVerdict::NotPrime { witness })
}
