//! Collapse data `(I, J, P^I)` for simple thin polyominoes.

use super::{classify, Cell, CellCollection, GridError, Interval};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseDatum {
    pub i: Interval,
    pub j: Interval,
    pub pi: CellCollection,
}

impl CollapseDatum {
    /// The cell `I ∩ J`.
    pub fn crossing_cell(&self) -> Cell {
        let common = self.i.intersection(&self.j).expect("I meets J");
        Cell {
            lower_left: common.low,
        }
    }
}

/// Exhaustive search over maximal-interval pairs `(I, J)` and subsets `P^I ⊆ J`,
/// preferring smaller `P^I`.
///
/// Returns `Ok(None)` only when no datum exists.
pub fn find_collapse_datum(p: &CellCollection) -> Result<Option<CollapseDatum>, GridError> {
    let rec = classify(p);
    let maximal = p.maximal_inner_intervals();
    if !(rec.is_polyomino && rec.is_simple && rec.is_thin) {
        return Err(GridError::Precondition(
            "collapse data need a simple thin polyomino".into(),
        ));
    }
    if maximal.len() < 2 {
        return Err(GridError::Precondition(
            "collapse data need at least two maximal inner intervals".into(),
        ));
    }
    Ok(collapse_candidates(p, &maximal, 1).into_iter().next())
}

/// Up to `limit` valid data, in order of increasing `|P^I|`.
pub(crate) fn collapse_candidates(
    p: &CellCollection,
    maximal: &[Interval],
    limit: usize,
) -> Vec<CollapseDatum> {
    let pairs = unique_crossings(maximal);
    let mut out = Vec::new();
    let max_j = pairs
        .iter()
        .map(|(_, j)| j.cells().len())
        .max()
        .unwrap_or(0);
    for size in 0..max_j {
        for (i, j) in &pairs {
            let c = i.intersection(j).expect("crossing").low;
            let rest: Vec<Cell> = j.cells().into_iter().filter(|x| x.lower_left != c).collect();
            if size > rest.len() {
                continue;
            }
            let mut cur = Vec::new();
            let done = for_each_subset(&rest, size, 0, &mut cur, &mut |subset| {
                let datum = CollapseDatum {
                    i: *i,
                    j: *j,
                    pi: CellCollection::from_set(subset.iter().copied()),
                };
                if check_with(p, maximal, &datum) {
                    out.push(datum);
                }
                out.len() >= limit
            });
            if done {
                return out;
            }
        }
    }
    out
}

/// Pairs `(I, J)` where `J` is the only maximal interval meeting `I` in a cell.
fn unique_crossings(maximal: &[Interval]) -> Vec<(Interval, Interval)> {
    let mut out = Vec::new();
    for i in maximal {
        let crossing: Vec<&Interval> = maximal
            .iter()
            .filter(|j| *j != i && i.intersection(j).is_some_and(|x| x.is_cell()))
            .collect();
        if crossing.len() == 1 {
            out.push((*i, *crossing[0]));
        }
    }
    out
}

/// Visits the `k`-subsets of `items` in lexicographic order until `visit` returns true.
fn for_each_subset(
    items: &[Cell],
    k: usize,
    start: usize,
    cur: &mut Vec<Cell>,
    visit: &mut dyn FnMut(&[Cell]) -> bool,
) -> bool {
    if cur.len() == k {
        return visit(cur);
    }
    for x in start..items.len() {
        if items.len() - x < k - cur.len() {
            break;
        }
        cur.push(items[x]);
        if for_each_subset(items, k, x + 1, cur, visit) {
            return true;
        }
        cur.pop();
    }
    false
}

/// Valid data whose `P^I` is empty or one whole side of `J` beyond `I ∩ J`.
pub(crate) fn side_collapse_candidates(p: &CellCollection) -> Vec<CollapseDatum> {
    let maximal = p.maximal_inner_intervals();
    let mut out = Vec::new();
    for (i, j) in unique_crossings(&maximal) {
        let c = i.intersection(&j).expect("crossing").low;
        let cells = j.cells();
        let before: Vec<Cell> = cells.iter().copied().filter(|x| x.lower_left < c).collect();
        let after: Vec<Cell> = cells.iter().copied().filter(|x| x.lower_left > c).collect();
        for side in [Vec::new(), before, after] {
            let datum = CollapseDatum {
                i,
                j,
                pi: CellCollection::from_set(side),
            };
            if check_with(p, &maximal, &datum) && !out.contains(&datum) {
                out.push(datum);
            }
        }
    }
    out
}

/// Independent check of the three collapse-datum conditions.
pub fn check_collapse_datum(p: &CellCollection, d: &CollapseDatum) -> bool {
    check_with(p, &p.maximal_inner_intervals(), d)
}

fn check_with(p: &CellCollection, maximal: &[Interval], d: &CollapseDatum) -> bool {
    if !maximal.contains(&d.i) || !maximal.contains(&d.j) || d.i == d.j {
        return false;
    }
    let meets_in_cell = |a: &Interval, b: &Interval| {
        a.intersection(b).is_some_and(|x| x.is_cell())
    };
    let partners: Vec<&Interval> = maximal
        .iter()
        .filter(|k| **k != d.i && meets_in_cell(&d.i, k))
        .collect();
    if partners != vec![&d.j] {
        return false;
    }
    let j_cells = CellCollection::from_set(d.j.cells());
    if !d.pi.is_subset(&j_cells) {
        return false;
    }
    let common = d.i.intersection(&d.j).expect("cell intersection");
    let c = Cell {
        lower_left: common.low,
    };
    if d.pi.contains(&c) {
        return false;
    }
    let removed = CellCollection::from_set(d.i.cells()).union(&d.pi);
    let rest = p.difference(&removed);
    rest.is_polyomino()
}
