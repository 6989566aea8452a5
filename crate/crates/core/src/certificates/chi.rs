//! The property `χ(n, l, σ)` and the pairing of `S_n` it induces.
//!
//! Permutations are 1-based value lists: `sigma[i - 1] = σ(i)`.

use itertools::Itertools;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChiError {
    #[error("need n >= 2 and 2 <= l <= n, got n = {n}, l = {l}")]
    Range { n: usize, l: usize },
    #[error("{0:?} is not a permutation of 1..=n")]
    NotPermutation(Vec<usize>),
    #[error("no witness for n = {n}, l = {l}, sigma = {sigma:?}")]
    NoWitness { n: usize, l: usize, sigma: Vec<usize> },
    #[error("pairing of S_{n} for l = {l} is not a partition: {detail}")]
    NotPartition { n: usize, l: usize, detail: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChiCase {
    /// `i < l` with `l + max(σ(i), σ(l)) <= n + 2`.
    A { i: usize },
    /// `i < j` with `j + max(σ(i), σ(j)) <= n + 1`.
    B { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiWitness {
    pub n: usize,
    pub l: usize,
    pub sigma: Vec<usize>,
    pub case: ChiCase,
}

impl ChiWitness {
    /// Re-checks the inequality behind the witness.
    pub fn holds(&self) -> bool {
        let s = |x: usize| self.sigma[x - 1];
        match self.case {
            ChiCase::A { i } => i < self.l && self.l + s(i).max(s(self.l)) <= self.n + 2,
            ChiCase::B { i, j } => i < j && j <= self.n && j + s(i).max(s(j)) <= self.n + 1,
        }
    }
}

fn validate(n: usize, l: usize, sigma: &[usize]) -> Result<(), ChiError> {
    if n < 2 || l < 2 || l > n {
        return Err(ChiError::Range { n, l });
    }
    let values: BTreeSet<usize> = sigma.iter().copied().collect();
    if sigma.len() != n || values != (1..=n).collect() {
        return Err(ChiError::NotPermutation(sigma.to_vec()));
    }
    Ok(())
}

/// A witness for `χ(n, l, σ)`: case A with the least `i` if possible, otherwise case B
/// with the least `(j, i)`.
pub fn chi_check(n: usize, l: usize, sigma: &[usize]) -> Result<ChiWitness, ChiError> {
    validate(n, l, sigma)?;
    let s = |x: usize| sigma[x - 1];
    let witness = |case| ChiWitness {
        n,
        l,
        sigma: sigma.to_vec(),
        case,
    };
    if let Some(i) = (1..l).find(|&i| l + s(i).max(s(l)) <= n + 2) {
        return Ok(witness(ChiCase::A { i }));
    }
    for j in 2..=n {
        if let Some(i) = (1..j).find(|&i| j + s(i).max(s(j)) <= n + 1) {
            return Ok(witness(ChiCase::B { i, j }));
        }
    }
    Err(ChiError::NoWitness {
        n,
        l,
        sigma: sigma.to_vec(),
    })
}

/// `S(n, l, σ)`: pairs `(i, j)`, `i < j`, with either `j = l` and case A for `i`, or
/// case B for `(i, j)`. Sorted by `(i + j, i)`.
pub fn s_set(n: usize, l: usize, sigma: &[usize]) -> Result<Vec<(usize, usize)>, ChiError> {
    validate(n, l, sigma)?;
    let s = |x: usize| sigma[x - 1];
    let mut out = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            let m = s(i).max(s(j));
            if (j == l && l + m <= n + 2) || j + m <= n + 1 {
                out.push((i, j));
            }
        }
    }
    out.sort_by_key(|&(i, j)| (i + j, i));
    Ok(out)
}

/// The least element of `S(n, l, σ)` under `(i + j, i)`.
pub fn min_pair(n: usize, l: usize, sigma: &[usize]) -> Result<(usize, usize), ChiError> {
    s_set(n, l, sigma)?
        .first()
        .copied()
        .ok_or_else(|| ChiError::NoWitness {
            n,
            l,
            sigma: sigma.to_vec(),
        })
}

/// `σ ∘ (i j)`.
pub fn swap_positions(sigma: &[usize], i: usize, j: usize) -> Vec<usize> {
    let mut out = sigma.to_vec();
    out.swap(i - 1, j - 1);
    out
}

/// `+1` for even permutations, `-1` for odd ones.
pub fn permutation_sign(sigma: &[usize]) -> i32 {
    let inversions = (0..sigma.len())
        .flat_map(|a| (a + 1..sigma.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| sigma[a] > sigma[b])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Pairs every even `σ` with `σ ∘ (i_σ j_σ)` and checks that the pairs cover `S_n`
/// exactly once.
pub fn sn_partition(n: usize, l: usize) -> Result<Vec<(Vec<usize>, Vec<usize>)>, ChiError> {
    if n < 2 || l < 2 || l > n {
        return Err(ChiError::Range { n, l });
    }
    let mut pairs = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for sigma in (1..=n).permutations(n) {
        if permutation_sign(&sigma) != 1 {
            continue;
        }
        let (i, j) = min_pair(n, l, &sigma)?;
        let partner = swap_positions(&sigma, i, j);
        for p in [&sigma, &partner] {
            if !seen.insert(p.clone()) {
                return Err(ChiError::NotPartition {
                    n,
                    l,
                    detail: format!("{p:?} occurs twice"),
                });
            }
        }
        pairs.push((sigma, partner));
    }
    let total: usize = (1..=n).product();
    if seen.len() != total {
        return Err(ChiError::NotPartition {
            n,
            l,
            detail: format!("{} of {total} permutations covered", seen.len()),
        });
    }
    Ok(pairs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiSweepRow {
    pub n: usize,
    pub checks: usize,
    pub case_a: usize,
    pub case_b: usize,
}

/// Runs `chi_check` over every `2 <= n <= max_n`, every `l` and every `σ`.
pub fn chi_sweep(max_n: usize) -> Result<Vec<ChiSweepRow>, ChiError> {
    let mut rows = Vec::new();
    for n in 2..=max_n {
        let mut row = ChiSweepRow {
            n,
            checks: 0,
            case_a: 0,
            case_b: 0,
        };
        for sigma in (1..=n).permutations(n) {
            for l in 2..=n {
                let w = chi_check(n, l, &sigma)?;
                row.checks += 1;
                match w.case {
                    ChiCase::A { .. } => row.case_a += 1,
                    ChiCase::B { .. } => row.case_b += 1,
                }
            }
        }
        rows.push(row);
    }
    Ok(rows)
}
