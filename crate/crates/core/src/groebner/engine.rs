//! Dense-exponent Buchberger engine.
//!
//! Variables are indexed by rank in the active order (index 0 is the smallest).
//! Auxiliary variables, when present, occupy the top indices.

use super::{Budget, BudgetKind, GroebnerError};
use crate::grid::Vertex;
use crate::polyring::{Monomial, MonomialOrder, OrderScheme, Polynomial, Rational};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum DenseOrder {
    Lex,
    GradedLex,
    GradedRevLex,
    /// Total degree in the auxiliary block first, then graded reverse lex.
    EliminateAux,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct DMono {
    pub exps: Vec<u32>,
    pub deg: u32,
    sev: u64,
}

impl DMono {
    pub fn new(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        let sev = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (k, _)| acc | (1u64 << (k % 64)));
        DMono { exps, deg, sev }
    }

    pub fn divides(&self, other: &DMono) -> bool {
        self.sev & !other.sev == 0
            && self.deg <= other.deg
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &DMono) -> DMono {
        DMono::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming divisibility.
    pub fn div(&self, other: &DMono) -> DMono {
        DMono::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &DMono) -> DMono {
        DMono::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &DMono) -> bool {
        self.sev & other.sev == 0 || self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Terms sorted descending by the ring order; coefficients non-zero.
pub(crate) type DPoly = Vec<(DMono, Rational)>;

pub(crate) struct Ring {
    pub vars: Vec<Vertex>,
    pub aux: usize,
    pub order: DenseOrder,
    index: HashMap<Vertex, usize>,
}

pub(crate) struct Counter<'a> {
    pub budget: &'a Budget,
    pub term_ops: u64,
    pub pairs: u64,
}

impl<'a> Counter<'a> {
    pub fn new(budget: &'a Budget) -> Self {
        Counter {
            budget,
            term_ops: 0,
            pairs: 0,
        }
    }

    fn charge(&mut self, ops: u64) -> Result<(), GroebnerError> {
        self.term_ops += ops;
        if self.term_ops > self.budget.max_term_ops {
            return Err(GroebnerError::Budget {
                kind: BudgetKind::TermOperations,
                limit: self.budget.max_term_ops,
            });
        }
        Ok(())
    }

    fn charge_pair(&mut self) -> Result<(), GroebnerError> {
        self.pairs += 1;
        if self.pairs > self.budget.max_pairs {
            return Err(GroebnerError::Budget {
                kind: BudgetKind::Pairs,
                limit: self.budget.max_pairs,
            });
        }
        Ok(())
    }
}

impl Ring {
    /// A ring over `vars` (any order) sorted by `order`, plus `aux` extra variables.
    pub fn new(
        vars: impl IntoIterator<Item = Vertex>,
        order: &MonomialOrder,
        aux: usize,
        budget: &Budget,
    ) -> Result<Ring, GroebnerError> {
        let mut vars: Vec<Vertex> = vars.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        order.sort_ascending(&mut vars);
        if vars.len() + aux > budget.max_variables {
            return Err(GroebnerError::TooManyVariables {
                count: vars.len() + aux,
                limit: budget.max_variables,
            });
        }
        let dense = match order.scheme {
            OrderScheme::Lex => DenseOrder::Lex,
            OrderScheme::GradedLex => DenseOrder::GradedLex,
            OrderScheme::GradedRevLex => DenseOrder::GradedRevLex,
        };
        Ok(Self::from_sorted(vars, aux, if aux > 0 { DenseOrder::EliminateAux } else { dense }))
    }

    /// A ring whose variables are already sorted ascending.
    pub fn from_sorted(vars: Vec<Vertex>, aux: usize, order: DenseOrder) -> Ring {
        let index = vars.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        Ring {
            vars,
            aux,
            order,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len() + self.aux
    }

    pub fn cmp(&self, a: &DMono, b: &DMono) -> Ordering {
        match self.order {
            DenseOrder::Lex => lex(a, b),
            DenseOrder::GradedLex => a.deg.cmp(&b.deg).then_with(|| lex(a, b)),
            DenseOrder::GradedRevLex => a.deg.cmp(&b.deg).then_with(|| revlex(a, b)),
            DenseOrder::EliminateAux => {
                let base = self.vars.len();
                let da: u32 = a.exps[base..].iter().sum();
                let db: u32 = b.exps[base..].iter().sum();
                da.cmp(&db)
                    .then_with(|| a.deg.cmp(&b.deg))
                    .then_with(|| revlex(a, b))
            }
        }
    }

    pub fn one(&self) -> DMono {
        DMono::new(vec![0; self.nvars()])
    }

    pub fn aux_var(&self, k: usize) -> DMono {
        let mut e = vec![0; self.nvars()];
        e[self.vars.len() + k] = 1;
        DMono::new(e)
    }

    pub fn to_dense_mono(&self, m: &Monomial) -> DMono {
        let mut e = vec![0; self.nvars()];
        for (v, x) in m.iter() {
            e[self.index[&v]] = x;
        }
        DMono::new(e)
    }

    pub fn to_dense(&self, p: &Polynomial) -> DPoly {
        let mut out: DPoly = p
            .terms()
            .map(|(m, c)| (self.to_dense_mono(m), c.clone()))
            .collect();
        out.sort_by(|a, b| self.cmp(&b.0, &a.0));
        out
    }

    /// Converts back; auxiliary exponents must be zero.
    pub fn to_sparse(&self, p: &DPoly) -> Polynomial {
        Polynomial::from_terms(p.iter().map(|(m, c)| {
            debug_assert!(m.exps[self.vars.len()..].iter().all(|&e| e == 0));
            let pairs = self
                .vars
                .iter()
                .zip(&m.exps)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (*v, e));
            (Monomial::from_pairs(pairs), c.clone())
        }))
    }

    pub fn sort(&self, p: &mut DPoly) {
        p.sort_by(|a, b| self.cmp(&b.0, &a.0));
    }

    pub fn monic(&self, p: DPoly) -> DPoly {
        match p.first() {
            None => p,
            Some((_, c)) if c.is_one() => p,
            Some((_, c)) => {
                let inv = c.recip();
                p.into_iter().map(|(m, a)| (m, a * &inv)).collect()
            }
        }
    }

    /// `p - coef * q * g`, merging sorted term lists.
    fn sub_mul(&self, p: &[(DMono, Rational)], coef: &Rational, q: &DMono, g: &DPoly) -> DPoly {
        let mut out = Vec::with_capacity(p.len() + g.len());
        let mut a = 0;
        let mut shifted = g.iter().map(|(m, c)| (m.mul(q), c * coef)).peekable();
        loop {
            match (p.get(a), shifted.peek()) {
                (None, None) => break,
                (Some(t), None) => {
                    out.push(t.clone());
                    a += 1;
                }
                (None, Some(_)) => {
                    let (m, c) = shifted.next().expect("peeked");
                    out.push((m, -c));
                }
                (Some((pm, pc)), Some((sm, _))) => match self.cmp(pm, sm) {
                    Ordering::Greater => {
                        out.push((pm.clone(), pc.clone()));
                        a += 1;
                    }
                    Ordering::Less => {
                        let (m, c) = shifted.next().expect("peeked");
                        out.push((m, -c));
                    }
                    Ordering::Equal => {
                        let (_, c) = shifted.next().expect("peeked");
                        let r = pc - c;
                        if !r.is_zero() {
                            out.push((pm.clone(), r));
                        }
                        a += 1;
                    }
                },
            }
        }
        out
    }

    /// Full reduction; divisors are tried in list order.
    pub fn normal_form(
        &self,
        f: &DPoly,
        basis: &[DPoly],
        counter: &mut Counter<'_>,
    ) -> Result<DPoly, GroebnerError> {
        let mut p: DPoly = f.clone();
        let mut start = 0usize;
        let mut rem: DPoly = Vec::new();
        while start < p.len() {
            let (m, c) = &p[start];
            let divisor = basis.iter().find(|g| !g.is_empty() && g[0].0.divides(m));
            match divisor {
                Some(g) => {
                    let q = m.div(&g[0].0);
                    let coef = c / &g[0].1;
                    counter.charge((p.len() - start + g.len()) as u64)?;
                    p = self.sub_mul(&p[start..], &coef, &q, g);
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        Ok(rem)
    }

    pub fn s_polynomial(&self, f: &DPoly, g: &DPoly) -> DPoly {
        let l = f[0].0.lcm(&g[0].0);
        let qf = l.div(&f[0].0);
        let qg = l.div(&g[0].0);
        let left: DPoly = f
            .iter()
            .map(|(m, c)| (m.mul(&qf), c / &f[0].1))
            .collect();
        let coef = g[0].1.recip();
        self.sub_mul(&left, &coef, &qg, g)
    }

    /// Buchberger's algorithm with the coprime and chain criteria and normal selection.
    pub fn groebner(
        &self,
        gens: &[DPoly],
        counter: &mut Counter<'_>,
    ) -> Result<Vec<DPoly>, GroebnerError> {
        let mut basis: Vec<DPoly> = Vec::new();
        let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
        let mut open: HashSet<(usize, usize)> = HashSet::new();
        for g in gens {
            if g.is_empty() {
                continue;
            }
            let g = self.monic(g.clone());
            let k = basis.len();
            for i in 0..k {
                let deg = basis[i][0].0.lcm(&g[0].0).deg;
                pending.insert((deg, k, i));
                open.insert((i, k));
            }
            basis.push(g);
        }
        while let Some(&key) = pending.iter().next() {
            pending.remove(&key);
            let (_, j, i) = key;
            open.remove(&(i, j));
            let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
            if li.coprime(lj) {
                continue;
            }
            let l = li.lcm(lj);
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k][0].0.divides(&l)
                    && !open.contains(&(i.min(k), i.max(k)))
                    && !open.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            counter.charge_pair()?;
            let s = self.s_polynomial(&basis[i], &basis[j]);
            let h = self.normal_form(&s, &basis, counter)?;
            if h.is_empty() {
                continue;
            }
            let h = self.monic(h);
            let k = basis.len();
            for i in 0..k {
                let deg = basis[i][0].0.lcm(&h[0].0).deg;
                pending.insert((deg, k, i));
                open.insert((i, k));
            }
            basis.push(h);
        }
        Ok(basis)
    }

    /// Minimal, inter-reduced, monic basis sorted ascending by leading monomial.
    pub fn reduce_basis(
        &self,
        basis: Vec<DPoly>,
        counter: &mut Counter<'_>,
    ) -> Result<Vec<DPoly>, GroebnerError> {
        let mut minimal: Vec<DPoly> = Vec::new();
        for (x, g) in basis.iter().enumerate() {
            if g.is_empty() {
                continue;
            }
            let redundant = basis.iter().enumerate().any(|(y, h)| {
                y != x
                    && !h.is_empty()
                    && h[0].0.divides(&g[0].0)
                    && (h[0].0 != g[0].0 || y < x)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut reduced = Vec::with_capacity(minimal.len());
        for x in 0..minimal.len() {
            let others: Vec<DPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(y, _)| *y != x)
                .map(|(_, g)| g.clone())
                .collect();
            let r = self.normal_form(&minimal[x], &others, counter)?;
            reduced.push(self.monic(r));
        }
        reduced.sort_by(|a, b| self.cmp(&a[0].0, &b[0].0));
        Ok(reduced)
    }
}

fn lex(a: &DMono, b: &DMono) -> Ordering {
    for k in (0..a.exps.len()).rev() {
        match a.exps[k].cmp(&b.exps[k]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn revlex(a: &DMono, b: &DMono) -> Ordering {
    for k in 0..a.exps.len() {
        match a.exps[k].cmp(&b.exps[k]) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

/// Dense polynomial helpers for callers that build polynomials in the ring directly.
pub(crate) fn dense_binomial(ring: &Ring, a: DMono, b: DMono) -> DPoly {
    let mut p = vec![(a, Rational::one()), (b, -Rational::one())];
    ring.sort(&mut p);
    p
}
