//! A parallelogram polyomino with a parallelogram sub-polyomino removed.

use super::{discussion_order, polyomino_ideal, polyomino_ideal_in, CertError};
use super::knutson::check_initial_product;
use super::knutson_polynomial;
use crate::grid::{antidiagonal_partition, classify, CellCollection, Interval, Vertex};
use crate::groebner::{ideal_equal, reduced_groebner_basis, Budget};
use crate::polyring::Polynomial;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtractionBranch {
    Simple,
    NonSimple,
}

/// One edge-connected component of `Q_1` or `Q_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCheck {
    pub cells: CellCollection,
    /// `in(g)` for the product `g` over the blocks with at least two vertices.
    pub g_initial: String,
    /// `in(g)` is the product of the variables of those blocks.
    pub g_initial_product: bool,
    /// Vertices shared with another component.
    pub gluing_vertices: Vec<Vertex>,
    /// No gluing vertex divides `in(g)`.
    pub coprime_with_gluing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartCheck {
    pub name: &'static str,
    pub cells: CellCollection,
    pub components: Vec<ComponentCheck>,
    /// Any two components share at most one vertex.
    pub meets_in_vertices: bool,
    /// Every inner interval of the part lies in one component.
    pub generators_split: bool,
}

impl PartCheck {
    pub fn passed(&self) -> bool {
        self.meets_in_vertices
            && self.generators_split
            && self
                .components
                .iter()
                .all(|c| c.g_initial_product && c.coprime_with_gluing)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtractionReport {
    pub p: CellCollection,
    pub a: usize,
    pub b: usize,
    pub q1: CellCollection,
    pub q2: CellCollection,
    /// No inner interval of `P` contains cells of both `C_a` and `C_b`.
    pub condition_holds: bool,
    pub blocking_interval: Option<Interval>,
    /// `I_{Q_1} + I_{Q_2} = I_P`; `None` if the budget ran out.
    pub sum_equality: Option<bool>,
    /// The reduced basis under the discussion order is the set of inner binomials.
    pub basis_is_generators: Option<bool>,
    pub parts: Vec<PartCheck>,
    pub branch: ExtractionBranch,
    pub skipped: Option<String>,
}

impl ExtractionReport {
    /// The condition, the sum equality and the basis claim agree and all part checks pass.
    pub fn passed(&self) -> bool {
        if !self.condition_holds {
            return self.sum_equality != Some(true) && self.skipped.is_none();
        }
        self.sum_equality == Some(true)
            && self.basis_is_generators == Some(true)
            && self.parts.iter().all(PartCheck::passed)
    }

    pub fn to_text(&self) -> String {
        let opt = |x: Option<bool>| match x {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "skipped",
        };
        let mut out = String::new();
        out.push_str(&format!("p: {}\n", self.p.to_inline()));
        out.push_str(&format!("a: {}\n", self.a));
        out.push_str(&format!("b: {}\n", self.b));
        out.push_str(&format!("q1: {}\n", self.q1.to_inline()));
        out.push_str(&format!("q2: {}\n", self.q2.to_inline()));
        out.push_str(&format!("condition: {}\n", self.condition_holds));
        if let Some(i) = &self.blocking_interval {
            out.push_str(&format!("blocking-interval: {i}\n"));
        }
        out.push_str(&format!("sum-equality: {}\n", opt(self.sum_equality)));
        out.push_str(&format!("basis-is-generators: {}\n", opt(self.basis_is_generators)));
        out.push_str(&format!(
            "branch: {}\n",
            match self.branch {
                ExtractionBranch::Simple => "simple",
                ExtractionBranch::NonSimple => "non-simple",
            }
        ));
        for part in &self.parts {
            out.push_str(&format!(
                "part {}: {} components, {}\n",
                part.name,
                part.components.len(),
                if part.passed() { "pass" } else { "fail" }
            ));
            for c in &part.components {
                out.push_str(&format!(
                    "  component {}: in(g) = {}, gluing = [{}]\n",
                    c.cells.to_inline(),
                    c.g_initial,
                    c.gluing_vertices
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
            }
        }
        if let Some(s) = &self.skipped {
            out.push_str(&format!("skipped: {s}\n"));
        }
        out.push_str(&format!("passed: {}\n", self.passed()));
        out
    }
}

fn part_check(name: &'static str, part: &CellCollection) -> Result<PartCheck, CertError> {
    let components = part.components();
    let vertex_sets: Vec<BTreeSet<Vertex>> = components.iter().map(|c| c.vertex_set()).collect();
    let mut meets_in_vertices = true;
    for x in 0..vertex_sets.len() {
        for y in x + 1..vertex_sets.len() {
            if vertex_sets[x].intersection(&vertex_sets[y]).count() > 1 {
                meets_in_vertices = false;
            }
        }
    }
    let generators_split = part
        .inner_intervals()
        .iter()
        .all(|i| components.iter().any(|c| c.covers_interval(i)));
    let mut checks = Vec::new();
    for (x, comp) in components.iter().enumerate() {
        let gluing: Vec<Vertex> = vertex_sets[x]
            .iter()
            .copied()
            .filter(|v| {
                vertex_sets
                    .iter()
                    .enumerate()
                    .any(|(y, s)| y != x && s.contains(v))
            })
            .collect();
        let kp = knutson_polynomial(comp)?;
        let g_in = kp.initial_without_singletons();
        let product = check_initial_product(comp)?;
        checks.push(ComponentCheck {
            cells: comp.clone(),
            g_initial: g_in.to_string(),
            g_initial_product: product.g_passed,
            coprime_with_gluing: gluing.iter().all(|v| g_in.exponent(*v) == 0),
            gluing_vertices: gluing,
        });
    }
    Ok(PartCheck {
        name,
        cells: part.clone(),
        components: checks,
        meets_in_vertices,
        generators_split,
    })
}

/// Runs the pipeline on `P = Q ∖ Q'`.
pub fn extraction_pipeline(
    q: &CellCollection,
    qp: &CellCollection,
    budget: &Budget,
) -> Result<ExtractionReport, CertError> {
    if qp.is_empty() {
        return Err(CertError::Precondition("the removed part is empty".into()));
    }
    if !classify(q).is_parallelogram || !classify(qp).is_parallelogram {
        return Err(CertError::Precondition("both inputs must be parallelogram polyominoes".into()));
    }
    if !qp.is_subset(q) {
        return Err(CertError::Precondition("the removed part is not inside the outer one".into()));
    }
    let p = q.difference(qp);
    if p.is_empty() {
        return Err(CertError::Precondition("nothing is left after the removal".into()));
    }
    let blocks = antidiagonal_partition(&p);
    let inner_vertices = qp.vertex_set();
    let touching: Vec<usize> = blocks
        .iter()
        .filter(|bl| bl.vertices.iter().any(|v| inner_vertices.contains(v)))
        .map(|bl| bl.k)
        .collect();
    let (a, b) = match (touching.first(), touching.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => {
            return Err(CertError::Precondition(
                "no block of the partition meets the removed part".into(),
            ))
        }
    };
    let cells_of = |ks: &mut dyn Iterator<Item = usize>| {
        CellCollection::from_set(ks.flat_map(|k| blocks[k - 1].cells.iter().copied()))
    };
    let q1 = cells_of(&mut (1..b));
    let q2 = cells_of(&mut (a + 1..=blocks.len()));
    let ca: BTreeSet<_> = blocks[a - 1].cells.iter().copied().collect();
    let cb: BTreeSet<_> = blocks[b - 1].cells.iter().copied().collect();
    let blocking_interval = p.inner_intervals().into_iter().find(|i| {
        let cells = i.cells();
        cells.iter().any(|c| ca.contains(c)) && cells.iter().any(|c| cb.contains(c))
    });
    let condition_holds = blocking_interval.is_none();
    let branch = if classify(&p).is_simple {
        ExtractionBranch::Simple
    } else {
        ExtractionBranch::NonSimple
    };
    let mut report = ExtractionReport {
        p: p.clone(),
        a,
        b,
        q1: q1.clone(),
        q2: q2.clone(),
        condition_holds,
        blocking_interval,
        sum_equality: None,
        basis_is_generators: None,
        parts: Vec::new(),
        branch,
        skipped: None,
    };
    let order = discussion_order(&p);
    let ambient = p.vertices();
    let whole = polyomino_ideal(&p).presentation();
    let sum = polyomino_ideal_in(&q1, &ambient).sum(&polyomino_ideal_in(&q2, &ambient));
    match ideal_equal(&sum, &whole, &order, budget) {
        Ok(eq) => report.sum_equality = Some(eq),
        Err(e) if e.is_budget() => {
            report.skipped = Some(e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    }
    if !condition_holds {
        return Ok(report);
    }
    match reduced_groebner_basis(&whole, &order, budget) {
        Ok(gb) => {
            let monic = |ps: &[Polynomial]| -> BTreeSet<String> {
                ps.iter().map(|g| g.monic(&order).to_text(&order)).collect()
            };
            let gens: Vec<Polynomial> = polyomino_ideal(&p)
                .binomials
                .into_iter()
                .map(|b| b.polynomial)
                .collect();
            report.basis_is_generators =
                Some(gb.elements.len() == gens.len() && monic(&gb.elements) == monic(&gens));
        }
        Err(e) if e.is_budget() => {
            report.skipped = Some(e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    }
    for (name, part) in [("q1", &q1), ("q2", &q2)] {
        if !part.is_empty() {
            report.parts.push(part_check(name, part)?);
        }
    }
    Ok(report)
}
