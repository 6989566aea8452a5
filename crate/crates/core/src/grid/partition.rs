//! The anti-diagonal partition of `V(P)` and its cell chains.

use super::{Cell, CellCollection, Vertex};
use serde::Serialize;
use std::collections::BTreeSet;

/// One block `V_k` of the partition together with `C_k` and `P_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntidiagonalBlock {
    /// 1-based index `k`.
    pub k: usize,
    /// `v_{k,1}, …, v_{k,n_k}`, each step moving by `(+1, -1)`.
    pub vertices: Vec<Vertex>,
    /// `C_{k,l}` has upper-left vertex `v_{k,l}` and lower-right vertex `v_{k,l+1}`.
    pub cells: Vec<Cell>,
    /// `P_k = C_1 ∪ … ∪ C_k`.
    pub prefix: CellCollection,
}

impl AntidiagonalBlock {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `(i_k, j_k)` with `v_{k,1} = (i_k + 1, j_k + n_k)`; `j_k` may be zero.
    pub fn matrix_origin(&self) -> (u32, u32) {
        let v = self.vertices[0];
        (v.i - 1, v.j - self.vertices.len() as u32)
    }
}

/// Splits `V(P)` into maximal chains joined through cells of `P` along anti-diagonals.
///
/// Blocks are ordered by the first vertex under `(i + j, i)`.
pub fn antidiagonal_partition(p: &CellCollection) -> Vec<AntidiagonalBlock> {
    let vertices = p.vertex_set();
    // v is the upper-left vertex of the cell with lower-left (v.i, v.j - 1).
    let below_right = |v: Vertex| -> Option<Cell> {
        Cell::try_new(v.i as i64, v.j as i64 - 1).filter(|c| p.contains(c))
    };
    // v is the lower-right vertex of the cell with lower-left (v.i - 1, v.j).
    let above_left = |v: Vertex| -> Option<Cell> {
        Cell::try_new(v.i as i64 - 1, v.j as i64).filter(|c| p.contains(c))
    };
    let mut chains: Vec<(Vec<Vertex>, Vec<Cell>)> = Vec::new();
    for &v in &vertices {
        if above_left(v).is_some() {
            continue;
        }
        let mut chain = vec![v];
        let mut cells = Vec::new();
        let mut cur = v;
        while let Some(c) = below_right(cur) {
            cells.push(c);
            cur = c.lower_right();
            chain.push(cur);
        }
        chains.push((chain, cells));
    }
    chains.sort_by_key(|(chain, _)| (chain[0].i + chain[0].j, chain[0].i));
    let mut prefix = CellCollection::empty();
    chains
        .into_iter()
        .enumerate()
        .map(|(idx, (vertices, cells))| {
            for c in &cells {
                prefix.insert(*c);
            }
            AntidiagonalBlock {
                k: idx + 1,
                vertices,
                cells,
                prefix: prefix.clone(),
            }
        })
        .collect()
}

/// The staircase rooted at a block: cells with upper-left vertex `(i_k+u, j_k+v)` for
/// `1 <= u <= n_k-1`, `2 <= v <= n_k`, `u + v <= n_k + 1`.
pub fn staircase_cells(block: &AntidiagonalBlock) -> Vec<Cell> {
    let n = block.len() as u32;
    let (ik, jk) = block.matrix_origin();
    let mut out = BTreeSet::new();
    for u in 1..n {
        for v in 2..=n {
            if u + v <= n + 1 {
                out.insert(Cell::new(ik + u, jk + v - 1));
            }
        }
    }
    out.into_iter().collect()
}
