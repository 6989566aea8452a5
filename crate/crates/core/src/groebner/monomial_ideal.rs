//! Monomial ideals and the cover combinatorics of squarefree ones.

use super::GroebnerError;
use crate::grid::Vertex;
use crate::polyring::Monomial;
use std::collections::BTreeSet;

/// Variable limit for exhaustive cover enumeration.
pub const MAX_COVER_VARIABLES: usize = 25;

/// A monomial ideal stored by its minimal generators, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Keeps the minimal generators.
    pub fn new(gens: impl IntoIterator<Item = Monomial>) -> Self {
        let all: BTreeSet<Monomial> = gens.into_iter().collect();
        let generators = all
            .iter()
            .filter(|m| !all.iter().any(|n| n != *m && n.divides(m)))
            .cloned()
            .collect();
        MonomialIdeal { generators }
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(|m| m.is_squarefree())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn as_squarefree(&self) -> Option<SquarefreeMonomialIdeal> {
        self.is_squarefree().then(|| SquarefreeMonomialIdeal {
            generators: self.generators.clone(),
        })
    }
}

/// A squarefree monomial ideal, i.e. the edge ideal of a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeMonomialIdeal {
    pub generators: Vec<Monomial>,
}

impl SquarefreeMonomialIdeal {
    /// `None` when some generator is not squarefree.
    pub fn new(gens: impl IntoIterator<Item = Monomial>) -> Option<Self> {
        MonomialIdeal::new(gens).as_squarefree()
    }

    pub fn variables(&self) -> Vec<Vertex> {
        self.generators
            .iter()
            .flat_map(|m| m.support())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Minimal vertex covers of the generator supports, each sorted; the list is
    /// sorted by size and then lexicographically.
    pub fn minimal_primes(&self) -> Result<Vec<Vec<Vertex>>, GroebnerError> {
        let vars = self.variables();
        if vars.len() > MAX_COVER_VARIABLES {
            return Err(GroebnerError::TooManyVariables {
                count: vars.len(),
                limit: MAX_COVER_VARIABLES,
            });
        }
        let edges: Vec<u32> = self
            .generators
            .iter()
            .map(|m| {
                m.support()
                    .iter()
                    .map(|v| 1u32 << vars.binary_search(v).expect("listed variable"))
                    .fold(0, |a, b| a | b)
            })
            .collect();
        let mut covers = BTreeSet::new();
        branch(&edges, 0, &mut covers);
        let covers: Vec<u32> = covers.into_iter().collect();
        let mut minimal: Vec<Vec<Vertex>> = covers
            .iter()
            .copied()
            .filter(|&c| !covers.iter().any(|&d| d != c && d & c == d))
            .map(|c| {
                (0..vars.len())
                    .filter(|k| c & (1 << k) != 0)
                    .map(|k| vars[k])
                    .collect()
            })
            .collect();
        minimal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(minimal)
    }

    /// The least size of a minimal prime.
    pub fn height(&self) -> Result<usize, GroebnerError> {
        Ok(self
            .minimal_primes()?
            .iter()
            .map(|c| c.len())
            .min()
            .unwrap_or(0))
    }

    /// All minimal primes have the same size.
    pub fn is_unmixed(&self) -> Result<bool, GroebnerError> {
        let sizes: BTreeSet<usize> = self.minimal_primes()?.iter().map(|c| c.len()).collect();
        Ok(sizes.len() <= 1)
    }
}

/// Branches on the vertices of the first uncovered edge.
fn branch(edges: &[u32], chosen: u32, out: &mut BTreeSet<u32>) {
    match edges.iter().find(|&&e| e & chosen == 0) {
        None => {
            out.insert(chosen);
        }
        Some(&e) => {
            for k in 0..32 {
                if e & (1 << k) != 0 {
                    branch(edges, chosen | (1 << k), out);
                }
            }
        }
    }
}

/// Height of a squarefree monomial ideal given as plain monomials.
pub fn monomial_height(gens: &[Monomial]) -> Result<usize, GroebnerError> {
    SquarefreeMonomialIdeal::new(gens.iter().cloned())
        .ok_or_else(|| GroebnerError::Precondition("monomials are not squarefree".into()))?
        .height()
}
