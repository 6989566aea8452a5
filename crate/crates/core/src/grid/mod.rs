//! Cells, intervals and finite collections of cells on the positive integer grid.
//!
//! Every ordered output in this module uses the row-major convention: vertices and
//! cells compare by `(j, i)`.

mod classify;
mod collapse;
mod parse;
mod partition;
mod render;

pub use classify::{
    check_closed_path, check_weakly_closed_path, classify, ClassificationRecord,
};
pub use collapse::{check_collapse_datum, find_collapse_datum, CollapseDatum};
pub(crate) use collapse::side_collapse_candidates;
pub use parse::{parse_ascii_art, parse_auto, parse_coordinates};
pub use partition::{antidiagonal_partition, staircase_cells, AntidiagonalBlock};
pub use render::{render, RenderFormat};

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// Errors raised while building or parsing cell collections.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GridError {
    #[error("empty cell collection")]
    Empty,
    #[error("duplicate cell ({i},{j})")]
    DuplicateCell { i: u32, j: u32 },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A lattice point `(i, j)` with `i, j >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub i: u32,
    pub j: u32,
}

impl Vertex {
    /// Panics if either coordinate is zero.
    pub fn new(i: u32, j: u32) -> Self {
        assert!(i >= 1 && j >= 1, "vertex coordinates must be positive");
        Vertex { i, j }
    }

    pub fn try_new(i: i64, j: i64) -> Option<Self> {
        if i >= 1 && j >= 1 && i <= u32::MAX as i64 && j <= u32::MAX as i64 {
            Some(Vertex {
                i: i as u32,
                j: j as u32,
            })
        } else {
            None
        }
    }

    pub fn offset(self, di: i64, dj: i64) -> Option<Self> {
        Self::try_new(self.i as i64 + di, self.j as i64 + dj)
    }

    /// Componentwise `<=`.
    pub fn le_componentwise(self, other: Vertex) -> bool {
        self.i <= other.i && self.j <= other.j
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.j, self.i).cmp(&(other.j, other.i))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// The unit square `[a, a + (1,1)]`, identified by its lower-left vertex `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub lower_left: Vertex,
}

impl Cell {
    pub fn new(i: u32, j: u32) -> Self {
        Cell {
            lower_left: Vertex::new(i, j),
        }
    }

    pub fn try_new(i: i64, j: i64) -> Option<Self> {
        Vertex::try_new(i, j).map(|lower_left| Cell { lower_left })
    }

    pub fn i(&self) -> u32 {
        self.lower_left.i
    }

    pub fn j(&self) -> u32 {
        self.lower_left.j
    }

    pub fn offset(&self, di: i64, dj: i64) -> Option<Cell> {
        self.lower_left.offset(di, dj).map(|lower_left| Cell { lower_left })
    }

    pub fn lower_right(&self) -> Vertex {
        Vertex::new(self.i() + 1, self.j())
    }

    pub fn upper_left(&self) -> Vertex {
        Vertex::new(self.i(), self.j() + 1)
    }

    pub fn upper_right(&self) -> Vertex {
        Vertex::new(self.i() + 1, self.j() + 1)
    }

    /// The four corners in row-major order.
    pub fn vertices(&self) -> [Vertex; 4] {
        [
            self.lower_left,
            self.lower_right(),
            self.upper_left(),
            self.upper_right(),
        ]
    }

    pub fn as_interval(&self) -> Interval {
        Interval {
            low: self.lower_left,
            high: self.upper_right(),
        }
    }

    /// Edge-adjacent cells with positive coordinates.
    pub fn neighbours(&self) -> Vec<Cell> {
        [(-1, 0), (1, 0), (0, -1), (0, 1)]
            .iter()
            .filter_map(|&(di, dj)| self.offset(di, dj))
            .collect()
    }

    pub fn shares_edge(&self, other: &Cell) -> bool {
        let di = (self.i() as i64 - other.i() as i64).abs();
        let dj = (self.j() as i64 - other.j() as i64).abs();
        di + dj == 1
    }

    /// Common vertices of two cells.
    pub fn common_vertices(&self, other: &Cell) -> Vec<Vertex> {
        let mine = self.vertices();
        other
            .vertices()
            .into_iter()
            .filter(|v| mine.contains(v))
            .collect()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i(), self.j())
    }
}

/// A grid interval `[low, high]` with `low <= high` componentwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub low: Vertex,
    pub high: Vertex,
}

impl Interval {
    pub fn new(low: Vertex, high: Vertex) -> Option<Self> {
        low.le_componentwise(high).then_some(Interval { low, high })
    }

    pub fn is_proper(&self) -> bool {
        self.low.i < self.high.i && self.low.j < self.high.j
    }

    pub fn width(&self) -> u32 {
        self.high.i - self.low.i
    }

    pub fn height(&self) -> u32 {
        self.high.j - self.low.j
    }

    pub fn is_cell(&self) -> bool {
        self.width() == 1 && self.height() == 1
    }

    /// The diagonal corners `(a, b) = (low, high)`.
    pub fn diagonal(&self) -> (Vertex, Vertex) {
        (self.low, self.high)
    }

    /// The anti-diagonal corners `(c, d)`: upper-left then lower-right.
    pub fn anti_diagonal(&self) -> (Vertex, Vertex) {
        (
            Vertex::new(self.low.i, self.high.j),
            Vertex::new(self.high.i, self.low.j),
        )
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for j in self.low.j..self.high.j {
            for i in self.low.i..self.high.i {
                out.push(Cell::new(i, j));
            }
        }
        out
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.low.le_componentwise(v) && v.le_componentwise(self.high)
    }

    pub fn contains_cell(&self, c: &Cell) -> bool {
        self.contains_vertex(c.lower_left) && self.contains_vertex(c.upper_right())
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.contains_vertex(other.low) && self.contains_vertex(other.high)
    }

    /// Point-set intersection, if non-empty.
    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let low = Vertex {
            i: self.low.i.max(other.low.i),
            j: self.low.j.max(other.low.j),
        };
        let high = Vertex {
            i: self.high.i.min(other.high.i),
            j: self.high.j.min(other.high.j),
        };
        Interval::new(low, high)
    }

    /// True for a one-cell-wide vertical run.
    pub fn is_vertical(&self) -> bool {
        self.width() == 1
    }

    /// True for a one-cell-high horizontal run.
    pub fn is_horizontal(&self) -> bool {
        self.height() == 1
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.low, self.high).cmp(&(other.low, other.high))
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.low, self.high)
    }
}

/// A finite set of cells.
///
/// Public constructors reject the empty collection; intermediate results such as the
/// prefix unions of an anti-diagonal partition may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct CellCollection {
    cells: BTreeSet<Cell>,
}

impl CellCollection {
    /// Builds a non-empty collection, rejecting duplicates.
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Result<Self, GridError> {
        let mut set = BTreeSet::new();
        for c in cells {
            if !set.insert(c) {
                return Err(GridError::DuplicateCell { i: c.i(), j: c.j() });
            }
        }
        if set.is_empty() {
            return Err(GridError::Empty);
        }
        Ok(CellCollection { cells: set })
    }

    /// Builds a collection from `(i, j)` lower-left coordinates; panics on bad input.
    pub fn from_coords(coords: &[(u32, u32)]) -> Self {
        Self::new(coords.iter().map(|&(i, j)| Cell::new(i, j))).expect("valid cell list")
    }

    /// Collects cells, ignoring duplicates; may be empty.
    pub fn from_set(cells: impl IntoIterator<Item = Cell>) -> Self {
        CellCollection {
            cells: cells.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        CellCollection::default()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.contains(c)
    }

    pub fn contains_at(&self, i: i64, j: i64) -> bool {
        Cell::try_new(i, j).is_some_and(|c| self.cells.contains(&c))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cell> + '_ {
        self.cells.iter()
    }

    pub fn cells(&self) -> Vec<Cell> {
        self.cells.iter().copied().collect()
    }

    pub fn cell_set(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn insert(&mut self, c: Cell) -> bool {
        self.cells.insert(c)
    }

    pub fn remove(&mut self, c: &Cell) -> bool {
        self.cells.remove(c)
    }

    pub fn union(&self, other: &CellCollection) -> CellCollection {
        CellCollection {
            cells: self.cells.union(&other.cells).copied().collect(),
        }
    }

    pub fn difference(&self, other: &CellCollection) -> CellCollection {
        CellCollection {
            cells: self.cells.difference(&other.cells).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &CellCollection) -> bool {
        self.cells.is_subset(&other.cells)
    }

    /// `V(P)`, sorted row-major.
    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.cells.iter().flat_map(|c| c.vertices()).collect()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.vertex_set().into_iter().collect()
    }

    /// Minimal and maximal lower-left coordinates `((min_i, min_j), (max_i, max_j))`.
    pub fn bounding_box(&self) -> Option<((u32, u32), (u32, u32))> {
        let first = self.cells.iter().next()?;
        let (mut lo_i, mut lo_j, mut hi_i, mut hi_j) = (first.i(), first.j(), first.i(), first.j());
        for c in &self.cells {
            lo_i = lo_i.min(c.i());
            hi_i = hi_i.max(c.i());
            lo_j = lo_j.min(c.j());
            hi_j = hi_j.max(c.j());
        }
        Some(((lo_i, lo_j), (hi_i, hi_j)))
    }

    /// Translation by `(di, dj)`; `None` if a coordinate would drop below 1.
    pub fn translate(&self, di: i64, dj: i64) -> Option<CellCollection> {
        let cells: Option<BTreeSet<Cell>> = self.cells.iter().map(|c| c.offset(di, dj)).collect();
        cells.map(|cells| CellCollection { cells })
    }

    /// Translate so that the minimal coordinates are 1.
    pub fn normalized(&self) -> CellCollection {
        match self.bounding_box() {
            None => self.clone(),
            Some(((lo_i, lo_j), _)) => self
                .translate(1 - lo_i as i64, 1 - lo_j as i64)
                .expect("normalisation stays positive"),
        }
    }

    /// Mirror image across a vertical line, kept inside the same bounding box.
    pub fn reflect_vertical(&self) -> CellCollection {
        match self.bounding_box() {
            None => self.clone(),
            Some(((lo_i, _), (hi_i, _))) => CellCollection {
                cells: self
                    .cells
                    .iter()
                    .map(|c| Cell::new(lo_i + hi_i - c.i(), c.j()))
                    .collect(),
            },
        }
    }

    /// Number of edge-neighbours of `c` inside the collection.
    pub fn degree(&self, c: &Cell) -> usize {
        c.neighbours().iter().filter(|n| self.contains(n)).count()
    }

    /// Edge-connected components, each sorted, listed by their least cell.
    pub fn components(&self) -> Vec<CellCollection> {
        let mut seen: BTreeSet<Cell> = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.cells {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(c) = queue.pop_front() {
                comp.insert(c);
                for n in c.neighbours() {
                    if self.contains(&n) && seen.insert(n) {
                        queue.push_back(n);
                    }
                }
            }
            out.push(CellCollection { cells: comp });
        }
        out
    }

    /// Non-empty and edge-connected.
    pub fn is_polyomino(&self) -> bool {
        !self.is_empty() && self.components().len() == 1
    }

    pub fn is_thin(&self) -> bool {
        !self.cells.iter().any(|c| {
            self.contains_at(c.i() as i64 + 1, c.j() as i64)
                && self.contains_at(c.i() as i64, c.j() as i64 + 1)
                && self.contains_at(c.i() as i64 + 1, c.j() as i64 + 1)
        })
    }

    /// Whether every cell of `interval` belongs to the collection.
    pub fn covers_interval(&self, interval: &Interval) -> bool {
        interval.cells().iter().all(|c| self.contains(c))
    }

    /// All inner intervals, sorted by `(low, high)`.
    pub fn inner_intervals(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        for c in &self.cells {
            let (x, y) = (c.i(), c.j());
            let mut max_w = u32::MAX;
            let mut h = 0u32;
            loop {
                let mut w = 0u32;
                while w < max_w && self.contains(&Cell::new(x + w, y + h)) {
                    w += 1;
                }
                if w == 0 {
                    break;
                }
                max_w = w;
                for width in 1..=w {
                    out.push(Interval {
                        low: Vertex::new(x, y),
                        high: Vertex::new(x + width, y + h + 1),
                    });
                }
                h += 1;
            }
        }
        out.sort();
        out
    }

    /// Inner intervals maximal under inclusion, sorted.
    pub fn maximal_inner_intervals(&self) -> Vec<Interval> {
        let all = self.inner_intervals();
        all.iter()
            .filter(|a| !all.iter().any(|b| b != *a && b.contains_interval(a)))
            .copied()
            .collect()
    }

    /// The cells of each row, keyed by row index.
    pub(crate) fn rows(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut rows: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for c in &self.cells {
            rows.entry(c.j()).or_default().push(c.i());
        }
        rows
    }

    pub(crate) fn columns(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut cols: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for c in &self.cells {
            cols.entry(c.i()).or_default().push(c.j());
        }
        for v in cols.values_mut() {
            v.sort_unstable();
        }
        cols
    }
}

impl CellCollection {
    /// `(i,j) (i,j) ...` on one line.
    pub fn to_inline(&self) -> String {
        self.cells
            .iter()
            .map(|c| format!("({},{})", c.i(), c.j()))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for CellCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            writeln!(f, "{} {}", c.i(), c.j())?;
        }
        Ok(())
    }
}

impl FromIterator<Cell> for CellCollection {
    fn from_iter<T: IntoIterator<Item = Cell>>(iter: T) -> Self {
        CellCollection::from_set(iter)
    }
}
