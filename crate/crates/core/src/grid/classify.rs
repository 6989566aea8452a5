//! Classification predicates for cell collections.

use super::{Cell, CellCollection, Vertex};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Every classification flag of a collection, each computed from its definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub is_polyomino: bool,
    pub is_thin: bool,
    pub is_row_convex: bool,
    pub is_col_convex: bool,
    pub is_convex: bool,
    pub is_parallelogram: bool,
    pub is_ladder: bool,
    pub left_most_vertices: Vec<Vertex>,
    pub is_simple: bool,
    pub closed_path: Option<Vec<Cell>>,
    pub weakly_closed_path: Option<Vec<Cell>>,
    pub thin_thm51: bool,
    pub thin_reflected: bool,
    pub thin_cellwise_intersections: bool,
}

pub fn classify(p: &CellCollection) -> ClassificationRecord {
    let is_polyomino = p.is_polyomino();
    let is_thin = p.is_thin();
    let is_row_convex = runs_contiguous(&p.rows());
    let is_col_convex = runs_contiguous(&p.columns());
    let is_convex = is_row_convex && is_col_convex;
    let is_parallelogram = is_polyomino && is_convex && vertex_sublattice(p);
    let left_most_vertices = left_most_vertices(p);
    let is_ladder = is_polyomino
        && is_row_convex
        && left_most_vertices
            .iter()
            .skip(1)
            .all(|a| p.contains_at(a.i as i64, a.j as i64 - 1));
    let closed_path = find_closed_path(p);
    let weakly_closed_path = if closed_path.is_none() {
        find_weakly_closed_path(p)
    } else {
        None
    };
    ClassificationRecord {
        is_polyomino,
        is_thin,
        is_row_convex,
        is_col_convex,
        is_convex,
        is_parallelogram,
        is_ladder,
        left_most_vertices,
        is_simple: is_simple(p),
        closed_path,
        weakly_closed_path,
        thin_thm51: thin_conditions(p),
        thin_reflected: thin_conditions(&p.reflect_vertical()),
        thin_cellwise_intersections: is_polyomino && is_thin && cellwise_intersections(p),
    }
}

fn runs_contiguous(lines: &BTreeMap<u32, Vec<u32>>) -> bool {
    lines.values().all(|xs| {
        let mut xs = xs.clone();
        xs.sort_unstable();
        xs.windows(2).all(|w| w[1] == w[0] + 1)
    })
}

fn vertex_sublattice(p: &CellCollection) -> bool {
    let vs = p.vertex_set();
    vs.iter().all(|a| {
        vs.iter().all(|b| {
            vs.contains(&Vertex::new(a.i.min(b.i), a.j.min(b.j)))
                && vs.contains(&Vertex::new(a.i.max(b.i), a.j.max(b.j)))
        })
    })
}

/// For each row of vertices, the one with the least column; sorted by row.
fn left_most_vertices(p: &CellCollection) -> Vec<Vertex> {
    let mut best: BTreeMap<u32, u32> = BTreeMap::new();
    for v in p.vertex_set() {
        best.entry(v.j)
            .and_modify(|i| *i = (*i).min(v.i))
            .or_insert(v.i);
    }
    best.into_iter().map(|(j, i)| Vertex::new(i, j)).collect()
}

/// Complement connectivity inside the bounding box padded by one cell.
fn is_simple(p: &CellCollection) -> bool {
    let Some(((lo_i, lo_j), (hi_i, hi_j))) = p.bounding_box() else {
        return true;
    };
    // Shift by one so the padding ring stays in positive coordinates.
    let (x0, y0, x1, y1) = (lo_i as i64, lo_j as i64, hi_i as i64 + 2, hi_j as i64 + 2);
    let inside = |x: i64, y: i64| x >= x0 && x <= x1 && y >= y0 && y <= y1;
    let in_p = |x: i64, y: i64| p.contains_at(x - 1, y - 1);
    let mut outside = 0usize;
    for x in x0..=x1 {
        for y in y0..=y1 {
            if !in_p(x, y) {
                outside += 1;
            }
        }
    }
    let mut seen = BTreeSet::from([(x0, y0)]);
    let mut queue = VecDeque::from([(x0, y0)]);
    while let Some((x, y)) = queue.pop_front() {
        for (dx, dy) in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
            let (nx, ny) = (x + dx, y + dy);
            if inside(nx, ny) && !in_p(nx, ny) && seen.insert((nx, ny)) {
                queue.push_back((nx, ny));
            }
        }
    }
    seen.len() == outside
}

/// No three cells stepping down-right along an anti-diagonal, plus the end-cell
/// conditions on every maximal vertical and horizontal inner interval.
fn thin_conditions(p: &CellCollection) -> bool {
    if p.is_empty() || !p.is_thin() {
        return false;
    }
    let has = |i: i64, j: i64| p.contains_at(i, j);
    for c in p.iter() {
        let (a, b) = (c.i() as i64, c.j() as i64);
        if has(a + 1, b - 1) && has(a + 2, b - 2) {
            return false;
        }
    }
    for iv in p.maximal_inner_intervals() {
        let (i1, j1) = (iv.low.i as i64, iv.low.j as i64);
        let (i2, j2) = (iv.high.i as i64, iv.high.j as i64);
        if iv.is_vertical() && (has(i1 - 1, j2) || has(i1 + 1, j1 - 1)) {
            return false;
        }
        if iv.is_horizontal() && (has(i1 - 1, j1 + 1) || has(i2, j1 - 1)) {
            return false;
        }
    }
    true
}

/// Any two maximal inner intervals meet in a cell or not at all.
fn cellwise_intersections(p: &CellCollection) -> bool {
    let max = p.maximal_inner_intervals();
    for (x, a) in max.iter().enumerate() {
        for b in &max[x + 1..] {
            if let Some(common) = a.intersection(b) {
                if !common.is_cell() {
                    return false;
                }
            }
        }
    }
    true
}

fn vertex_sets_disjoint(a: &Cell, b: &Cell) -> bool {
    a.common_vertices(b).is_empty()
}

/// Cyclic distance between positions `x` and `y` on a cycle of length `n`.
fn cyclic_distance(x: usize, y: usize, n: usize) -> usize {
    let d = x.abs_diff(y) % n;
    d.min(n - d)
}

/// Checks the closed-path conditions for the cyclic sequence `seq` (with `A_n = A_0`
/// implicit) covering exactly the cells of `p`.
pub fn check_closed_path(p: &CellCollection, seq: &[Cell]) -> bool {
    let n = seq.len();
    if n < 6 || !covers_exactly(p, seq) {
        return false;
    }
    let edges_ok = (0..n).all(|k| seq[k].shares_edge(&seq[(k + 1) % n]));
    edges_ok && locality_holds(seq)
}

/// Checks the weakly-closed-path conditions: consecutive cells share an edge except
/// `A_{n-1}` and `A_0`, which share exactly one vertex.
pub fn check_weakly_closed_path(p: &CellCollection, seq: &[Cell]) -> bool {
    let n = seq.len();
    if n < 6 || !covers_exactly(p, seq) {
        return false;
    }
    let edges_ok = (0..n - 1).all(|k| seq[k].shares_edge(&seq[k + 1]));
    edges_ok && seq[0].common_vertices(&seq[n - 1]).len() == 1 && locality_holds(seq)
}

fn covers_exactly(p: &CellCollection, seq: &[Cell]) -> bool {
    let set: BTreeSet<Cell> = seq.iter().copied().collect();
    set.len() == seq.len() && &set == p.cell_set()
}

fn locality_holds(seq: &[Cell]) -> bool {
    let n = seq.len();
    (0..n).all(|x| {
        (0..n).all(|y| cyclic_distance(x, y, n) <= 2 || vertex_sets_disjoint(&seq[x], &seq[y]))
    })
}

fn find_closed_path(p: &CellCollection) -> Option<Vec<Cell>> {
    if p.len() < 6 || p.iter().any(|c| p.degree(c) != 2) {
        return None;
    }
    let start = *p.iter().next()?;
    // The least cell has its neighbours above and to the right; going up first
    // traverses the cycle clockwise.
    let up = start.offset(0, 1)?;
    if !p.contains(&up) {
        return None;
    }
    let mut seq = vec![start, up];
    while seq.len() < p.len() {
        let cur = seq[seq.len() - 1];
        let prev = seq[seq.len() - 2];
        let next = cur
            .neighbours()
            .into_iter()
            .find(|n| p.contains(n) && *n != prev)?;
        if next == start {
            return None;
        }
        seq.push(next);
    }
    check_closed_path(p, &seq).then_some(seq)
}

fn find_weakly_closed_path(p: &CellCollection) -> Option<Vec<Cell>> {
    if p.len() < 6 || p.iter().any(|c| p.degree(c) > 3) {
        return None;
    }
    if p.iter().filter(|c| p.degree(c) == 3).count() > 2 {
        return None;
    }
    let cells = p.cells();
    for (x, a) in cells.iter().enumerate() {
        for b in &cells[x + 1..] {
            if a.common_vertices(b).len() != 1 {
                continue;
            }
            let mut path = vec![*a];
            let mut used = BTreeSet::from([*a]);
            if hamiltonian_path(p, *b, &mut path, &mut used) {
                return Some(path);
            }
        }
    }
    None
}

fn hamiltonian_path(
    p: &CellCollection,
    end: Cell,
    path: &mut Vec<Cell>,
    used: &mut BTreeSet<Cell>,
) -> bool {
    let cur = *path.last().expect("path starts non-empty");
    if path.len() == p.len() {
        return cur == end && check_weakly_closed_path(p, path);
    }
    for n in cur.neighbours() {
        if !p.contains(&n) || used.contains(&n) || (n == end && path.len() + 1 != p.len()) {
            continue;
        }
        path.push(n);
        used.insert(n);
        if hamiltonian_path(p, end, path, used) {
            return true;
        }
        path.pop();
        used.remove(&n);
    }
    false
}
