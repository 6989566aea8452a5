//! Gröbner bases and ideal-level operations over the rationals.

mod engine;
mod monomial_ideal;

pub use monomial_ideal::{monomial_height, MonomialIdeal, SquarefreeMonomialIdeal, MAX_COVER_VARIABLES};

pub(crate) use engine::{DMono, DPoly, DenseOrder, Ring};
use engine::Counter;

use crate::grid::Vertex;
use crate::polyring::{Monomial, MonomialOrder, OrderScheme, Polynomial};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BudgetKind {
    Pairs,
    TermOperations,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("budget exceeded: more than {limit} {}", match kind { BudgetKind::Pairs => "S-pairs", BudgetKind::TermOperations => "term operations" })]
    Budget { kind: BudgetKind, limit: u64 },
    #[error("{count} variables exceed the limit of {limit}")]
    TooManyVariables { count: usize, limit: usize },
    #[error("{0}")]
    Precondition(String),
}

impl GroebnerError {
    pub fn is_budget(&self) -> bool {
        matches!(self, GroebnerError::Budget { .. })
    }
}

/// Resource limits for one computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_pairs: u64,
    pub max_term_ops: u64,
    pub max_variables: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 20_000,
            max_term_ops: 1_000_000,
            max_variables: 60,
        }
    }
}

impl Budget {
    pub fn new(max_pairs: u64, max_term_ops: u64) -> Self {
        Budget {
            max_pairs,
            max_term_ops,
            ..Budget::default()
        }
    }

    /// Scales pair and term limits by `factor`.
    pub fn scaled(&self, factor: u64) -> Self {
        Budget {
            max_pairs: self.max_pairs.saturating_mul(factor),
            max_term_ops: self.max_term_ops.saturating_mul(factor),
            max_variables: self.max_variables,
        }
    }
}

/// An ideal given by generators inside a polynomial ring over `ambient`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealPresentation {
    #[serde(serialize_with = "serialize_polys")]
    pub generators: Vec<Polynomial>,
    pub ambient: Vec<Vertex>,
}

fn serialize_polys<S: serde::Serializer>(polys: &[Polynomial], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(polys.len()))?;
    for p in polys {
        seq.serialize_element(&p.to_string())?;
    }
    seq.end()
}

impl IdealPresentation {
    /// Drops zero generators; the ambient ring is spanned by the appearing variables.
    pub fn new(generators: Vec<Polynomial>) -> Self {
        let ambient: BTreeSet<Vertex> = generators.iter().flat_map(|g| g.variables()).collect();
        Self::with_ambient(generators, ambient)
    }

    /// Drops zero generators and widens `ambient` to cover every appearing variable.
    pub fn with_ambient(generators: Vec<Polynomial>, ambient: impl IntoIterator<Item = Vertex>) -> Self {
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let mut amb: BTreeSet<Vertex> = ambient.into_iter().collect();
        for g in &generators {
            amb.extend(g.variables());
        }
        IdealPresentation {
            generators,
            ambient: amb.into_iter().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    /// `I + J`.
    pub fn sum(&self, other: &IdealPresentation) -> IdealPresentation {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        IdealPresentation::with_ambient(gens, self.ambient.iter().chain(&other.ambient).copied())
    }
}

/// A Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub elements: Vec<Polynomial>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn initial_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.initial_term(&self.order).expect("non-zero element").0)
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.elements, &self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Canonical text lines, one element per line, preceded by the order descriptor.
    pub fn to_text(&self) -> String {
        let mut out = format!("order: {}\n", self.order.descriptor());
        for g in &self.elements {
            out.push_str(&g.to_text(&self.order));
            out.push('\n');
        }
        out
    }
}

fn ring_for<'a>(
    polys: impl IntoIterator<Item = &'a Polynomial>,
    extra: impl IntoIterator<Item = Vertex>,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<Ring, GroebnerError> {
    let mut vars: BTreeSet<Vertex> = extra.into_iter().collect();
    for p in polys {
        vars.extend(p.variables());
    }
    Ring::new(vars, order, 0, budget)
}

/// The S-polynomial `lcm/in(f)·f/lc(f) − lcm/in(g)·g/lc(g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let budget = Budget {
        max_variables: usize::MAX,
        ..Budget::default()
    };
    let ring = ring_for([f, g], [], order, &budget).expect("no variable limit");
    ring.to_sparse(&ring.s_polynomial(&ring.to_dense(f), &ring.to_dense(g)))
}

/// Full multivariate division remainder; divisors are tried in the order given.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let budget = Budget {
        max_pairs: u64::MAX,
        max_term_ops: u64::MAX,
        max_variables: usize::MAX,
    };
    let ring = ring_for(divisors.iter().chain([f]), [], order, &budget).expect("no variable limit");
    let dense: Vec<DPoly> = divisors.iter().map(|g| ring.to_dense(g)).collect();
    let mut counter = Counter::new(&budget);
    let r = ring
        .normal_form(&ring.to_dense(f), &dense, &mut counter)
        .expect("unbounded budget");
    ring.to_sparse(&r)
}

/// A (not necessarily reduced) Gröbner basis.
pub fn buchberger(
    ideal: &IdealPresentation,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, GroebnerError> {
    let ring = ring_for(&ideal.generators, ideal.ambient.iter().copied(), order, budget)?;
    let gens: Vec<DPoly> = ideal.generators.iter().map(|g| ring.to_dense(g)).collect();
    let mut counter = Counter::new(budget);
    let basis = ring.groebner(&gens, &mut counter)?;
    Ok(GroebnerBasis {
        elements: basis.iter().map(|g| ring.to_sparse(g)).collect(),
        order: order.clone(),
        reduced: false,
    })
}

/// Turns a Gröbner basis into the reduced one.
pub fn reduce(gb: &GroebnerBasis, budget: &Budget) -> Result<GroebnerBasis, GroebnerError> {
    let ring = ring_for(&gb.elements, [], &gb.order, budget)?;
    let dense: Vec<DPoly> = gb.elements.iter().map(|g| ring.to_dense(g)).collect();
    let mut counter = Counter::new(budget);
    let reduced = ring.reduce_basis(dense, &mut counter)?;
    Ok(GroebnerBasis {
        elements: reduced.iter().map(|g| ring.to_sparse(g)).collect(),
        order: gb.order.clone(),
        reduced: true,
    })
}

/// The reduced Gröbner basis of `ideal` under `order`.
pub fn reduced_groebner_basis(
    ideal: &IdealPresentation,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, GroebnerError> {
    let ring = ring_for(&ideal.generators, ideal.ambient.iter().copied(), order, budget)?;
    let gens: Vec<DPoly> = ideal.generators.iter().map(|g| ring.to_dense(g)).collect();
    let mut counter = Counter::new(budget);
    let basis = ring.groebner(&gens, &mut counter)?;
    let reduced = ring.reduce_basis(basis, &mut counter)?;
    Ok(GroebnerBasis {
        elements: reduced.iter().map(|g| ring.to_sparse(g)).collect(),
        order: order.clone(),
        reduced: true,
    })
}

/// Buchberger's criterion: every S-pair reduces to zero modulo `elements`.
pub fn is_groebner_basis(elements: &[Polynomial], order: &MonomialOrder) -> bool {
    for (x, f) in elements.iter().enumerate() {
        for g in &elements[x + 1..] {
            let s = s_polynomial(f, g, order);
            if !normal_form(&s, elements, order).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn ideal_membership(
    f: &Polynomial,
    ideal: &IdealPresentation,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<bool, GroebnerError> {
    if f.is_zero() {
        return Ok(true);
    }
    if ideal.is_zero() {
        return Ok(false);
    }
    let gb = reduced_groebner_basis(ideal, order, budget)?;
    Ok(gb.contains(f))
}

/// Equality of ideals by comparing reduced bases under `order`.
pub fn ideal_equal(
    a: &IdealPresentation,
    b: &IdealPresentation,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<bool, GroebnerError> {
    let ga = reduced_groebner_basis(a, order, budget)?;
    let gb = reduced_groebner_basis(b, order, budget)?;
    Ok(ga.elements == gb.elements)
}

/// How [`saturate`] computes `I : m^∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SaturationRoute {
    /// `I + (t·m − 1)` under an elimination order, intersected with the original ring.
    Rabinowitsch,
    /// One variable of `m` at a time: graded reverse lex with that variable smallest,
    /// then strip its powers from every basis element. Needs homogeneous generators.
    VariableByVariable,
    /// `VariableByVariable` for homogeneous input, otherwise `Rabinowitsch`.
    Auto,
}

/// `I : m^∞`.
pub fn saturate(
    ideal: &IdealPresentation,
    m: &Monomial,
    route: SaturationRoute,
    budget: &Budget,
) -> Result<IdealPresentation, GroebnerError> {
    let route = match route {
        SaturationRoute::Auto if ideal.is_homogeneous() => SaturationRoute::VariableByVariable,
        SaturationRoute::Auto => SaturationRoute::Rabinowitsch,
        r => r,
    };
    if ideal.is_zero() || m.is_one() {
        return Ok(ideal.clone());
    }
    let ambient: Vec<Vertex> = ideal
        .ambient
        .iter()
        .copied()
        .chain(m.support())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    match route {
        SaturationRoute::Rabinowitsch => rabinowitsch(ideal, m, &ambient, budget),
        SaturationRoute::VariableByVariable => {
            if !ideal.is_homogeneous() {
                return Err(GroebnerError::Precondition(
                    "variable-by-variable saturation needs homogeneous generators".into(),
                ));
            }
            let mut current = ideal.generators.clone();
            for v in m.support() {
                current = saturate_one_variable(&current, v, &ambient, budget)?;
            }
            Ok(IdealPresentation::with_ambient(current, ambient))
        }
        SaturationRoute::Auto => unreachable!(),
    }
}

/// `I : (∏ ambient variables)^∞`.
pub fn saturate_by_all_variables(
    ideal: &IdealPresentation,
    route: SaturationRoute,
    budget: &Budget,
) -> Result<IdealPresentation, GroebnerError> {
    let m = Monomial::product(ideal.ambient.iter().copied());
    saturate(ideal, &m, route, budget)
}

fn rabinowitsch(
    ideal: &IdealPresentation,
    m: &Monomial,
    ambient: &[Vertex],
    budget: &Budget,
) -> Result<IdealPresentation, GroebnerError> {
    let base = MonomialOrder::default();
    let ring = Ring::new(ambient.iter().copied(), &base, 1, budget)?;
    let mut gens: Vec<DPoly> = ideal.generators.iter().map(|g| ring.to_dense(g)).collect();
    let tm = ring.aux_var(0).mul(&ring.to_dense_mono(m));
    gens.push(engine::dense_binomial(&ring, tm, ring.one()));
    let mut counter = Counter::new(budget);
    let basis = ring.groebner(&gens, &mut counter)?;
    let basis = ring.reduce_basis(basis, &mut counter)?;
    let t = ring.vars.len();
    let kept: Vec<Polynomial> = basis
        .iter()
        .filter(|g| g.iter().all(|(mono, _)| mono.exps[t] == 0))
        .map(|g| ring.to_sparse(g))
        .collect();
    Ok(IdealPresentation::with_ambient(kept, ambient.iter().copied()))
}

fn saturate_one_variable(
    gens: &[Polynomial],
    v: Vertex,
    ambient: &[Vertex],
    budget: &Budget,
) -> Result<Vec<Polynomial>, GroebnerError> {
    let base = MonomialOrder::default();
    let mut vars: Vec<Vertex> = ambient.iter().copied().filter(|w| *w != v).collect();
    base.sort_ascending(&mut vars);
    vars.insert(0, v);
    if vars.len() > budget.max_variables {
        return Err(GroebnerError::TooManyVariables {
            count: vars.len(),
            limit: budget.max_variables,
        });
    }
    let ring = Ring::from_sorted(vars, 0, DenseOrder::GradedRevLex);
    let dense: Vec<DPoly> = gens.iter().map(|g| ring.to_dense(g)).collect();
    let mut counter = Counter::new(budget);
    let basis = ring.groebner(&dense, &mut counter)?;
    let basis = ring.reduce_basis(basis, &mut counter)?;
    Ok(basis
        .into_iter()
        .map(|g| {
            let k = g.iter().map(|(m, _)| m.exps[0]).min().unwrap_or(0);
            let stripped: DPoly = g
                .into_iter()
                .map(|(m, c)| {
                    let mut e = m.exps.clone();
                    e[0] -= k;
                    (DMono::new(e), c)
                })
                .collect();
            ring.to_sparse(&stripped)
        })
        .collect())
}

/// `I : m`, via `I ∩ (m)` computed as `(t·I + (1 − t)·m) ∩ k[x]`.
pub fn colon_by_monomial(
    ideal: &IdealPresentation,
    m: &Monomial,
    budget: &Budget,
) -> Result<IdealPresentation, GroebnerError> {
    if ideal.is_zero() || m.is_one() {
        return Ok(ideal.clone());
    }
    let ambient: BTreeSet<Vertex> = ideal.ambient.iter().copied().chain(m.support()).collect();
    let ring = Ring::new(ambient.iter().copied(), &MonomialOrder::default(), 1, budget)?;
    let t = ring.aux_var(0);
    let mut gens: Vec<DPoly> = ideal
        .generators
        .iter()
        .map(|g| {
            ring.to_dense(g)
                .into_iter()
                .map(|(mono, c)| (mono.mul(&t), c))
                .collect()
        })
        .collect();
    let dm = ring.to_dense_mono(m);
    gens.push(engine::dense_binomial(&ring, dm.clone(), dm.mul(&t)));
    let mut counter = Counter::new(budget);
    let basis = ring.groebner(&gens, &mut counter)?;
    let basis = ring.reduce_basis(basis, &mut counter)?;
    let tpos = ring.vars.len();
    let quotients: Vec<Polynomial> = basis
        .iter()
        .filter(|g| g.iter().all(|(mono, _)| mono.exps[tpos] == 0))
        .map(|g| {
            let q: DPoly = g.iter().map(|(mono, c)| (mono.div(&dm), c.clone())).collect();
            ring.to_sparse(&q)
        })
        .collect();
    Ok(IdealPresentation::with_ambient(quotients, ambient))
}

/// The initial ideal generated by the leading monomials of the reduced basis.
pub fn initial_ideal(
    ideal: &IdealPresentation,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<MonomialIdeal, GroebnerError> {
    let gb = reduced_groebner_basis(ideal, order, budget)?;
    Ok(MonomialIdeal::new(gb.initial_monomials()))
}

/// Convenience wrapper: graded reverse lex over column-major variables.
pub fn default_order() -> MonomialOrder {
    MonomialOrder::column_major(OrderScheme::GradedRevLex)
}
