//! Square matrices of polynomials and their determinants.

use super::{PolyError, Polynomial};
use itertools::Itertools;

/// Largest dimension accepted by [`determinant`].
pub const MAX_DETERMINANT_SIZE: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    n: usize,
    entries: Vec<Polynomial>,
}

impl SymbolicMatrix {
    /// An `n × n` matrix of zeros.
    pub fn zeros(n: usize) -> Self {
        SymbolicMatrix {
            n,
            entries: vec![Polynomial::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self, PolyError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(PolyError::NotSquare);
        }
        Ok(SymbolicMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, p: Polynomial) {
        self.entries[row * self.n + col] = p;
    }
}

/// Laplace expansion along rows, memoised over column subsets.
///
/// `minors[mask]` is the determinant of the first `|mask|` rows restricted to the
/// columns in `mask`.
pub fn determinant(m: &SymbolicMatrix) -> Result<Polynomial, PolyError> {
    let n = m.size();
    if n > MAX_DETERMINANT_SIZE {
        return Err(PolyError::SizeGuard {
            n,
            max: MAX_DETERMINANT_SIZE,
        });
    }
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let full = (1usize << n) - 1;
    let mut minors: Vec<Polynomial> = vec![Polynomial::zero(); full + 1];
    minors[0] = Polynomial::one();
    for mask in 1..=full {
        let row = mask.count_ones() as usize - 1;
        let mut acc = Polynomial::zero();
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = m.get(row, col);
            let rest = &minors[mask & !(1 << col)];
            if entry.is_zero() || rest.is_zero() {
                continue;
            }
            let later = (mask >> (col + 1)).count_ones();
            let term = entry * rest;
            acc = if later % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        minors[mask] = acc;
    }
    Ok(minors[full].clone())
}

/// The permutation-sum definition, for cross-checking small sizes.
pub fn permutation_determinant(m: &SymbolicMatrix) -> Polynomial {
    let n = m.size();
    let mut total = Polynomial::zero();
    for perm in (0..n).permutations(n) {
        let inversions = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        let mut prod = Polynomial::one();
        for (row, &col) in perm.iter().enumerate() {
            prod = &prod * m.get(row, col);
            if prod.is_zero() {
                break;
            }
        }
        total = if inversions % 2 == 0 {
            &total + &prod
        } else {
            &total - &prod
        };
    }
    total
}
