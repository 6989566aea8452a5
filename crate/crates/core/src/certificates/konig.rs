//! König-type certificates: `|P|` inner binomials whose claimed terms are pairwise
//! coprime and are initial terms under one weight order.

use super::feasibility::{positive_integer_weights, simplex_feasible};
use super::{discussion_order, polyomino_ideal, CertError, InnerBinomial};
use crate::grid::{classify, side_collapse_candidates, Cell, CellCollection, Interval, Vertex};
use crate::groebner::{
    reduced_groebner_basis, Budget, GroebnerBasis, SquarefreeMonomialIdeal, MAX_COVER_VARIABLES,
};
use crate::polyring::Monomial;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

pub const DEFAULT_NODE_LIMIT: u64 = 200_000;

/// Largest collection the generic search accepts.
pub const MAX_GENERIC_CELLS: usize = 20;

/// Which term of `x_a x_b − x_c x_d` is meant to be the initial one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum KonigClaim {
    Diagonal,
    AntiDiagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KonigSlot {
    pub interval: Interval,
    pub claim: KonigClaim,
}

impl KonigSlot {
    pub fn new(interval: Interval, claim: KonigClaim) -> Self {
        KonigSlot { interval, claim }
    }

    pub fn claimed_pair(&self) -> (Vertex, Vertex) {
        match self.claim {
            KonigClaim::Diagonal => self.interval.diagonal(),
            KonigClaim::AntiDiagonal => self.interval.anti_diagonal(),
        }
    }

    pub fn other_pair(&self) -> (Vertex, Vertex) {
        match self.claim {
            KonigClaim::Diagonal => self.interval.anti_diagonal(),
            KonigClaim::AntiDiagonal => self.interval.diagonal(),
        }
    }

    pub fn claimed_monomial(&self) -> Monomial {
        let (a, b) = self.claimed_pair();
        Monomial::product([a, b])
    }

    pub fn other_monomial(&self) -> Monomial {
        let (a, b) = self.other_pair();
        Monomial::product([a, b])
    }

    pub fn binomial(&self) -> InnerBinomial {
        InnerBinomial::new(self.interval)
    }

    /// The slot of `interval` claiming `{u, v}`, if that pair is a diagonal of it.
    fn claiming(interval: Interval, u: Vertex, v: Vertex) -> Option<KonigSlot> {
        let same = |(a, b): (Vertex, Vertex)| (a == u && b == v) || (a == v && b == u);
        if same(interval.diagonal()) {
            Some(KonigSlot::new(interval, KonigClaim::Diagonal))
        } else if same(interval.anti_diagonal()) {
            Some(KonigSlot::new(interval, KonigClaim::AntiDiagonal))
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KonigStrategy {
    /// Depth-first search over all inner intervals.
    Generic,
    /// A single row or column of cells; every cell claims its anti-diagonal.
    Interval,
    /// One interval per cell of a weakly closed path, in path order.
    WeaklyClosedTable,
    /// Collapse along a datum, solve the smaller polyomino and extend cell by cell.
    SimpleThinRecursive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KonigCertificate {
    pub strategy: KonigStrategy,
    pub chosen: Vec<KonigSlot>,
    /// Positive integer weights on `V(P)`.
    pub weights: Vec<(Vertex, i64)>,
    pub height_claim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum KonigSearchOutcome {
    Found(KonigCertificate),
    /// The strategies ran to completion. `complete` is true when the generic search
    /// was among them, so that no certificate exists.
    Exhausted { nodes: u64, complete: bool },
    NodeLimit { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HeightStatus {
    Confirmed { height: usize },
    Mismatch { expected: usize, found: usize },
    Assumed { reason: String },
}

impl std::fmt::Display for HeightStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HeightStatus::Confirmed { height } => write!(f, "confirmed {height}"),
            HeightStatus::Mismatch { expected, found } => {
                write!(f, "mismatch: expected {expected}, found {found}")
            }
            HeightStatus::Assumed { reason } => write!(f, "assumed ({reason})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KonigVerification {
    pub inner_intervals: bool,
    pub count_matches: bool,
    pub coprime: bool,
    pub weights_strict: bool,
    pub height: HeightStatus,
}

impl KonigVerification {
    pub fn passed(&self) -> bool {
        self.inner_intervals
            && self.count_matches
            && self.coprime
            && self.weights_strict
            && !matches!(self.height, HeightStatus::Mismatch { .. })
    }
}

struct Search<'a> {
    index: BTreeMap<Vertex, usize>,
    nodes: u64,
    limit: u64,
    hit_limit: bool,
    target: usize,
    p: &'a CellCollection,
}

impl<'a> Search<'a> {
    fn new(p: &'a CellCollection, limit: u64) -> Self {
        Search {
            index: p.vertices().into_iter().enumerate().map(|(k, v)| (v, k)).collect(),
            nodes: 0,
            limit,
            hit_limit: false,
            target: p.len(),
            p,
        }
    }

    /// Counts a node; false once the limit is reached.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.limit {
            self.hit_limit = true;
        }
        !self.hit_limit
    }

    fn row(&self, slot: &KonigSlot) -> Vec<i64> {
        let mut r = vec![0i64; self.index.len()];
        let (a, b) = slot.claimed_pair();
        let (c, d) = slot.other_pair();
        r[self.index[&a]] += 1;
        r[self.index[&b]] += 1;
        r[self.index[&c]] -= 1;
        r[self.index[&d]] -= 1;
        r
    }

    fn feasible(&self, slots: &[KonigSlot]) -> bool {
        let rows: Vec<Vec<i64>> = slots.iter().map(|s| self.row(s)).collect();
        simplex_feasible(&rows, self.index.len()).is_some()
    }
}

fn claims_disjoint(slots: &[KonigSlot]) -> bool {
    let mut seen = BTreeSet::new();
    slots.iter().all(|s| {
        let (a, b) = s.claimed_pair();
        seen.insert(a) && seen.insert(b)
    })
}

fn candidates(p: &CellCollection) -> Vec<KonigSlot> {
    p.inner_intervals()
        .into_iter()
        .flat_map(|i| {
            [
                KonigSlot::new(i, KonigClaim::AntiDiagonal),
                KonigSlot::new(i, KonigClaim::Diagonal),
            ]
        })
        .collect()
}

fn generic(s: &mut Search) -> Option<Vec<KonigSlot>> {
    let cands = candidates(s.p);
    let mut chosen = Vec::new();
    let mut used = BTreeSet::new();
    generic_dfs(s, &cands, 0, &mut chosen, &mut used).then_some(chosen)
}

fn generic_dfs(
    s: &mut Search,
    cands: &[KonigSlot],
    start: usize,
    chosen: &mut Vec<KonigSlot>,
    used: &mut BTreeSet<Vertex>,
) -> bool {
    let need = s.target - chosen.len();
    if need == 0 {
        return true;
    }
    if 2 * need > s.index.len() - used.len() {
        return false;
    }
    for x in start..cands.len() {
        if cands.len() - x < need {
            break;
        }
        let (a, b) = cands[x].claimed_pair();
        if used.contains(&a) || used.contains(&b) {
            continue;
        }
        if !s.tick() {
            return false;
        }
        chosen.push(cands[x]);
        if s.feasible(chosen) {
            used.insert(a);
            used.insert(b);
            if generic_dfs(s, cands, x + 1, chosen, used) {
                return true;
            }
            used.remove(&a);
            used.remove(&b);
        }
        chosen.pop();
        if s.hit_limit {
            return false;
        }
    }
    false
}

fn is_bar(p: &CellCollection) -> Option<Interval> {
    let maximal = p.maximal_inner_intervals();
    match maximal.as_slice() {
        [only] if (only.is_horizontal() || only.is_vertical()) && only.cells().len() == p.len() => {
            Some(*only)
        }
        _ => None,
    }
}

fn interval_slots(p: &CellCollection) -> Option<Vec<KonigSlot>> {
    is_bar(p)?;
    Some(
        p.cells()
            .into_iter()
            .map(|c| KonigSlot::new(c.as_interval(), KonigClaim::AntiDiagonal))
            .collect(),
    )
}

fn weakly_closed(s: &mut Search, path: &[Cell]) -> Option<Vec<KonigSlot>> {
    let cands = candidates(s.p);
    let per_cell: Vec<Vec<KonigSlot>> = path
        .iter()
        .map(|c| cands.iter().copied().filter(|x| x.interval.contains_cell(c)).collect())
        .collect();
    let mut chosen = Vec::new();
    let mut used = BTreeSet::new();
    wct_dfs(s, &per_cell, &mut chosen, &mut used).then_some(chosen)
}

fn wct_dfs(
    s: &mut Search,
    per_cell: &[Vec<KonigSlot>],
    chosen: &mut Vec<KonigSlot>,
    used: &mut BTreeSet<Vertex>,
) -> bool {
    let k = chosen.len();
    if k == per_cell.len() {
        return true;
    }
    for slot in &per_cell[k] {
        let (a, b) = slot.claimed_pair();
        if used.contains(&a) || used.contains(&b) || chosen.contains(slot) {
            continue;
        }
        if !s.tick() {
            return false;
        }
        chosen.push(*slot);
        if s.feasible(chosen) {
            used.insert(a);
            used.insert(b);
            if wct_dfs(s, per_cell, chosen, used) {
                return true;
            }
            used.remove(&a);
            used.remove(&b);
        }
        chosen.pop();
        if s.hit_limit {
            return false;
        }
    }
    false
}

/// Solves `p` by collapsing it, solving the collapsed polyomino and adding the removed
/// cells back one at a time.
fn recursive(s: &mut Search, p: &CellCollection) -> Option<Vec<KonigSlot>> {
    if let Some(slots) = interval_slots(p) {
        return s.feasible(&slots).then_some(slots);
    }
    if !p.is_polyomino() || p.maximal_inner_intervals().len() < 2 {
        return None;
    }
    for datum in side_collapse_candidates(p) {
        let c = datum.crossing_cell();
        let mut reduced = p
            .difference(&CellCollection::from_set(datum.i.cells()))
            .difference(&datum.pi);
        reduced.insert(c);
        if reduced.len() >= p.len() || !reduced.is_polyomino() {
            continue;
        }
        let Some(base) = recursive(s, &reduced) else {
            if s.hit_limit {
                return None;
            }
            continue;
        };
        let steps = extension_steps(&datum.i, &datum.j, &datum.pi, c);
        let mut slots = base;
        if extend(s, &mut slots, &steps) {
            return Some(slots);
        }
        if s.hit_limit {
            return None;
        }
    }
    None
}

/// `(new cell, adjacent cell already present)` pairs: one side of `I`, then `P^I` away
/// from the crossing cell, then the other side of `I`.
fn extension_steps(i: &Interval, j: &Interval, pi: &CellCollection, c: Cell) -> Vec<(Cell, Cell)> {
    let chain = |cells: Vec<Cell>| -> Vec<(Cell, Cell)> {
        let mut out = Vec::new();
        let mut prev = c;
        for x in cells {
            out.push((x, prev));
            prev = x;
        }
        out
    };
    let side = |cells: Vec<Cell>| -> (Vec<Cell>, Vec<Cell>) {
        let mut before: Vec<Cell> = cells.iter().copied().filter(|x| *x < c).collect();
        before.reverse();
        let after = cells.into_iter().filter(|x| *x > c).collect();
        (before, after)
    };
    let (i_before, i_after) = side(i.cells());
    let (j_before, j_after) = side(j.cells());
    let pi_chain: Vec<Cell> = if j_before.iter().any(|x| pi.contains(x)) {
        j_before
    } else if j_after.iter().any(|x| pi.contains(x)) {
        j_after
    } else {
        Vec::new()
    };
    let (first, last) = if i_before.is_empty() {
        (i_after, i_before)
    } else {
        (i_before, i_after)
    };
    let mut steps = chain(first);
    steps.extend(chain(pi_chain));
    steps.extend(chain(last));
    steps
}

fn extend(s: &mut Search, slots: &mut Vec<KonigSlot>, steps: &[(Cell, Cell)]) -> bool {
    let Some(&(new, prev)) = steps.first() else {
        return true;
    };
    let di = new.i() as i64 - prev.i() as i64;
    let dj = new.j() as i64 - prev.j() as i64;
    let shared = new.common_vertices(&prev);
    if shared.len() != 2 {
        return false;
    }
    let used: BTreeSet<Vertex> = slots
        .iter()
        .flat_map(|x| {
            let (a, b) = x.claimed_pair();
            [a, b]
        })
        .collect();
    let step = |v: Vertex| v.offset(di, dj).expect("new cell vertex");
    let cell_slot = |u: Vertex, v: Vertex| KonigSlot::claiming(new.as_interval(), u, v);
    let mut options: Vec<Vec<KonigSlot>> = Vec::new();
    for (k, &w) in shared.iter().enumerate() {
        if used.contains(&w) {
            continue;
        }
        let other = shared[1 - k];
        if let Some(fresh) = cell_slot(w, step(other)) {
            let mut next = slots.clone();
            next.push(fresh);
            options.push(next);
        }
    }
    for (x, slot) in slots.iter().enumerate() {
        let Some(hull) = hull_with(&slot.interval, &new) else {
            continue;
        };
        if !slot.interval.contains_cell(&prev) {
            continue;
        }
        let (p1, p2) = slot.claimed_pair();
        let (a, d) = match (shared.contains(&p1), shared.contains(&p2)) {
            (true, false) => (p1, p2),
            (false, true) => (p2, p1),
            _ => continue,
        };
        let b = if shared[0] == a { shared[1] } else { shared[0] };
        let (Some(grown), Some(fresh)) = (
            KonigSlot::claiming(hull, step(a), d),
            cell_slot(a, step(b)),
        ) else {
            continue;
        };
        let mut next = slots.clone();
        next[x] = grown;
        next.push(fresh);
        if claims_disjoint(&next) {
            options.push(next);
        }
    }
    for option in options {
        if !s.tick() {
            return false;
        }
        if !s.feasible(&option) {
            continue;
        }
        let mut attempt = option;
        if extend(s, &mut attempt, &steps[1..]) {
            *slots = attempt;
            return true;
        }
        if s.hit_limit {
            return false;
        }
    }
    false
}

/// The bar `interval ∪ new` if `new` continues `interval` in a straight line.
fn hull_with(interval: &Interval, new: &Cell) -> Option<Interval> {
    let low = Vertex::new(
        interval.low.i.min(new.lower_left.i),
        interval.low.j.min(new.lower_left.j),
    );
    let ur = new.upper_right();
    let high = Vertex::new(interval.high.i.max(ur.i), interval.high.j.max(ur.j));
    let hull = Interval::new(low, high)?;
    let bar = hull.is_horizontal() || hull.is_vertical();
    (bar && hull.cells().len() == interval.cells().len() + 1 && !interval.contains_cell(new))
        .then_some(hull)
}

/// Positive integer weights making every claimed term strictly heavier, if any exist.
pub fn konig_weights(p: &CellCollection, slots: &[KonigSlot]) -> Option<Vec<(Vertex, i64)>> {
    let s = Search::new(p, 0);
    if slots
        .iter()
        .any(|x| !s.index.contains_key(&x.interval.low) || !s.index.contains_key(&x.interval.high))
    {
        return None;
    }
    let rows: Vec<Vec<i64>> = slots.iter().map(|x| s.row(x)).collect();
    let w = simplex_feasible(&rows, s.index.len())?;
    let ints = positive_integer_weights(&w, &rows);
    s.index
        .keys()
        .zip(ints)
        .map(|(v, x)| x.to_i64().map(|x| (*v, x)))
        .collect()
}

fn certificate(
    p: &CellCollection,
    strategy: KonigStrategy,
    mut chosen: Vec<KonigSlot>,
) -> Result<KonigCertificate, CertError> {
    chosen.sort();
    let weights = konig_weights(p, &chosen)
        .ok_or_else(|| CertError::Precondition("weights do not fit in 64 bits".into()))?;
    Ok(KonigCertificate {
        strategy,
        chosen,
        weights,
        height_claim: p.len(),
    })
}

/// Runs one strategy. Non-generic strategies that fail report `complete: false`.
pub fn konig_search_with(
    p: &CellCollection,
    strategy: KonigStrategy,
    node_limit: u64,
) -> Result<KonigSearchOutcome, CertError> {
    if p.is_empty() {
        return Err(CertError::Precondition("empty collection of cells".into()));
    }
    if strategy == KonigStrategy::Generic && p.len() > MAX_GENERIC_CELLS {
        return Err(CertError::Precondition(format!(
            "generic search is limited to {MAX_GENERIC_CELLS} cells"
        )));
    }
    let mut s = Search::new(p, node_limit);
    let found = match strategy {
        KonigStrategy::Generic => generic(&mut s),
        KonigStrategy::Interval => interval_slots(p).filter(|x| s.feasible(x)),
        KonigStrategy::WeaklyClosedTable => match classify(p).weakly_closed_path {
            Some(path) => weakly_closed(&mut s, &path),
            None => None,
        },
        KonigStrategy::SimpleThinRecursive => {
            let rec = classify(p);
            if rec.is_polyomino && rec.is_simple && rec.is_thin {
                recursive(&mut s, p)
            } else {
                None
            }
        }
    };
    Ok(match found {
        Some(chosen) => KonigSearchOutcome::Found(certificate(p, strategy, chosen)?),
        None if s.hit_limit => KonigSearchOutcome::NodeLimit { nodes: s.nodes },
        None => KonigSearchOutcome::Exhausted {
            nodes: s.nodes,
            complete: strategy == KonigStrategy::Generic,
        },
    })
}

/// The strategies tried by [`konig_search`], most specific first.
pub fn strategy_plan(p: &CellCollection) -> Vec<KonigStrategy> {
    let rec = classify(p);
    let mut plan = Vec::new();
    if is_bar(p).is_some() {
        plan.push(KonigStrategy::Interval);
    }
    if rec.weakly_closed_path.is_some() {
        plan.push(KonigStrategy::WeaklyClosedTable);
    }
    if rec.is_polyomino && rec.is_simple && rec.is_thin && plan.is_empty() {
        plan.push(KonigStrategy::SimpleThinRecursive);
    }
    if p.len() <= MAX_GENERIC_CELLS {
        plan.push(KonigStrategy::Generic);
    }
    plan
}

/// Tries [`strategy_plan`] in order, sharing the node limit.
pub fn konig_search(p: &CellCollection, node_limit: u64) -> Result<KonigSearchOutcome, CertError> {
    let mut spent = 0u64;
    let mut last = None;
    for strategy in strategy_plan(p) {
        let remaining = node_limit.saturating_sub(spent);
        let outcome = konig_search_with(p, strategy, remaining)?;
        match outcome {
            KonigSearchOutcome::Found(_) => return Ok(outcome),
            KonigSearchOutcome::NodeLimit { nodes } => {
                return Ok(KonigSearchOutcome::NodeLimit { nodes: spent + nodes })
            }
            KonigSearchOutcome::Exhausted { nodes, complete } => {
                spent += nodes;
                last = Some(KonigSearchOutcome::Exhausted {
                    nodes: spent,
                    complete,
                });
            }
        }
    }
    Ok(last.unwrap_or(KonigSearchOutcome::Exhausted {
        nodes: 0,
        complete: false,
    }))
}

/// Checks a certificate from scratch.
///
/// The height check compares `|P|` with the height of the radical of the initial ideal
/// of `I_P`; it is marked as assumed, with a reason, when the ideal is too large.
pub fn verify_konig(
    p: &CellCollection,
    cert: &KonigCertificate,
    budget: &Budget,
) -> Result<KonigVerification, CertError> {
    let height = height_status(p, budget)?;
    Ok(verify_parts(p, cert, height))
}

/// [`verify_konig`] with a reduced basis of `I_P` that is already known.
pub(crate) fn verify_konig_with_basis(
    p: &CellCollection,
    cert: &KonigCertificate,
    basis: &GroebnerBasis,
) -> Result<KonigVerification, CertError> {
    let height = match cover_guard(p) {
        Some(assumed) => assumed,
        None => height_from_basis(p, basis)?,
    };
    Ok(verify_parts(p, cert, height))
}

fn verify_parts(p: &CellCollection, cert: &KonigCertificate, height: HeightStatus) -> KonigVerification {
    let inner: BTreeSet<Interval> = p.inner_intervals().into_iter().collect();
    let inner_intervals = cert.chosen.iter().all(|s| inner.contains(&s.interval));
    let count_matches = cert.chosen.len() == p.len() && cert.height_claim == p.len();
    let distinct: BTreeSet<Interval> = cert.chosen.iter().map(|s| s.interval).collect();
    let monomials: Vec<Monomial> = cert.chosen.iter().map(|s| s.claimed_monomial()).collect();
    let coprime = distinct.len() == cert.chosen.len()
        && monomials.iter().all(|m| m.is_squarefree())
        && cert.chosen.iter().zip(&monomials).all(|(s, m)| {
            let b = s.binomial();
            *m == b.diagonal_monomial() || *m == b.antidiagonal_monomial()
        })
        && (0..monomials.len())
            .all(|a| (a + 1..monomials.len()).all(|b| monomials[a].is_coprime(&monomials[b])));
    let weight: BTreeMap<Vertex, i64> = cert.weights.iter().copied().collect();
    let positive = p.vertices().iter().all(|v| weight.get(v).is_some_and(|w| *w > 0));
    let weigh = |m: &Monomial| -> Option<i128> {
        m.iter()
            .map(|(v, e)| weight.get(&v).map(|w| *w as i128 * e as i128))
            .sum()
    };
    let weights_strict = positive
        && cert.chosen.iter().all(|s| {
            matches!(
                (weigh(&s.claimed_monomial()), weigh(&s.other_monomial())),
                (Some(a), Some(b)) if a > b
            )
        });
    KonigVerification {
        inner_intervals,
        count_matches,
        coprime,
        weights_strict,
        height,
    }
}

fn cover_guard(p: &CellCollection) -> Option<HeightStatus> {
    let vars = p.vertices().len();
    (vars > MAX_COVER_VARIABLES).then(|| HeightStatus::Assumed {
        reason: format!("{vars} variables exceed the cover limit of {MAX_COVER_VARIABLES}"),
    })
}

fn height_status(p: &CellCollection, budget: &Budget) -> Result<HeightStatus, CertError> {
    if let Some(assumed) = cover_guard(p) {
        return Ok(assumed);
    }
    let ideal = polyomino_ideal(p).presentation();
    if ideal.is_zero() {
        return Ok(HeightStatus::Mismatch {
            expected: p.len(),
            found: 0,
        });
    }
    match reduced_groebner_basis(&ideal, &discussion_order(p), budget) {
        Ok(gb) => height_from_basis(p, &gb),
        Err(e) if e.is_budget() => Ok(HeightStatus::Assumed {
            reason: e.to_string(),
        }),
        Err(e) => Err(e.into()),
    }
}

fn height_from_basis(p: &CellCollection, gb: &GroebnerBasis) -> Result<HeightStatus, CertError> {
    let radical = SquarefreeMonomialIdeal::new(
        gb.initial_monomials()
            .iter()
            .map(|m| Monomial::product(m.support())),
    )
    .expect("supports are squarefree");
    let found = radical.height()?;
    Ok(if found == p.len() {
        HeightStatus::Confirmed { height: found }
    } else {
        HeightStatus::Mismatch {
            expected: p.len(),
            found,
        }
    })
}

impl KonigCertificate {
    /// One line per slot: `interval claim`.
    pub fn to_text(&self) -> String {
        let mut out = format!("strategy: {:?}\nheight: {}\n", self.strategy, self.height_claim);
        for s in &self.chosen {
            let (a, b) = s.claimed_pair();
            out.push_str(&format!("{} {:?} {}{}\n", s.interval, s.claim, a, b));
        }
        out.push_str("weights:");
        for (v, w) in &self.weights {
            out.push_str(&format!(" {v}={w}"));
        }
        out.push('\n');
        out
    }

    /// The largest weight, handy for sanity output.
    pub fn max_weight(&self) -> i64 {
        self.weights.iter().map(|(_, w)| w.abs()).max().unwrap_or(0)
    }
}
