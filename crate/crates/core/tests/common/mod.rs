#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use polyideal::certificates::{discussion_order, polyomino_ideal};
use polyideal::grid::{
    antidiagonal_partition, classify, staircase_cells, Cell, CellCollection, CollapseDatum, Interval, Vertex,
};
use polyideal::groebner::{
    ideal_membership, reduced_groebner_basis, saturate_by_all_variables, Budget, GroebnerError,
    IdealPresentation, SaturationRoute,
};
use polyideal::lattice::{hermite, smith, IntMatrix};
use polyideal::polyring::{compare, Monomial, MonomialOrder, Polynomial, Rational, SymbolicMatrix};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub type Check = Result<(), String>;

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------- grid oracles ----------

fn cell_set(p: &CellCollection) -> BTreeSet<(u32, u32)> {
    p.iter().map(|c| (c.i(), c.j())).collect()
}

/// Every proper interval inside the bounding box whose cells all lie in `p`.
pub fn brute_inner_intervals(p: &CellCollection) -> BTreeSet<Interval> {
    let cells = cell_set(p);
    let mut out = BTreeSet::new();
    let Some(((i0, j0), (i1, j1))) = p.bounding_box() else {
        return out;
    };
    for a in i0..=i1 + 1 {
        for b in j0..=j1 + 1 {
            for c in a + 1..=i1 + 1 {
                for d in b + 1..=j1 + 1 {
                    let full = (a..c).all(|x| (b..d).all(|y| cells.contains(&(x, y))));
                    if full {
                        out.insert(Interval::new(Vertex::new(a, b), Vertex::new(c, d)).unwrap());
                    }
                }
            }
        }
    }
    out
}

fn interval_contains(big: &Interval, small: &Interval) -> bool {
    big.low.i <= small.low.i && big.low.j <= small.low.j && small.high.i <= big.high.i && small.high.j <= big.high.j
}

pub fn brute_maximal(p: &CellCollection) -> BTreeSet<Interval> {
    let all = brute_inner_intervals(p);
    all.iter()
        .filter(|a| !all.iter().any(|b| b != *a && interval_contains(b, a)))
        .copied()
        .collect()
}

pub fn edge_connected(cells: &BTreeSet<(u32, u32)>) -> bool {
    let Some(&start) = cells.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((i, j)) = queue.pop_front() {
        let nbrs = [(i + 1, j), (i.wrapping_sub(1), j), (i, j + 1), (i, j.wrapping_sub(1))];
        for n in nbrs {
            if cells.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len() == cells.len()
}

/// No bounded region of the complement: flood the outside from a padded border.
pub fn hole_free(cells: &BTreeSet<(u32, u32)>) -> bool {
    let (mut lo_i, mut lo_j, mut hi_i, mut hi_j) = (i64::MAX, i64::MAX, i64::MIN, i64::MIN);
    for &(i, j) in cells {
        lo_i = lo_i.min(i as i64);
        lo_j = lo_j.min(j as i64);
        hi_i = hi_i.max(i as i64);
        hi_j = hi_j.max(j as i64);
    }
    let inside = |i: i64, j: i64| i >= lo_i - 1 && i <= hi_i + 1 && j >= lo_j - 1 && j <= hi_j + 1;
    let filled = |i: i64, j: i64| i >= 1 && j >= 1 && cells.contains(&(i as u32, j as u32));
    let mut seen = BTreeSet::from([(lo_i - 1, lo_j - 1)]);
    let mut queue = VecDeque::from([(lo_i - 1, lo_j - 1)]);
    while let Some((i, j)) = queue.pop_front() {
        for (a, b) in [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
            if inside(a, b) && !filled(a, b) && seen.insert((a, b)) {
                queue.push_back((a, b));
            }
        }
    }
    let window = (hi_i - lo_i + 3) * (hi_j - lo_j + 3);
    seen.len() as i64 + cells.len() as i64 == window
}

/// The three defining conditions, re-derived from the brute-force maximal intervals.
pub fn collapse_conditions(p: &CellCollection, d: &CollapseDatum) -> Check {
    let maximal = brute_maximal(p);
    ensure(maximal.contains(&d.i) && maximal.contains(&d.j), || "I or J not maximal".into())?;
    let cells_of = |x: &Interval| -> BTreeSet<(u32, u32)> {
        (x.low.i..x.high.i)
            .flat_map(|a| (x.low.j..x.high.j).map(move |b| (a, b)))
            .collect()
    };
    let i_cells = cells_of(&d.i);
    let meeting: Vec<&Interval> = maximal
        .iter()
        .filter(|k| **k != d.i && cells_of(k).intersection(&i_cells).count() == 1)
        .collect();
    ensure(meeting == vec![&d.j], || format!("intervals meeting I in a cell: {meeting:?}"))?;
    let j_cells = cells_of(&d.j);
    let pi = cell_set(&d.pi);
    ensure(pi.is_subset(&j_cells), || "P^I not inside J".into())?;
    let common: Vec<_> = i_cells.intersection(&j_cells).copied().collect();
    ensure(!pi.contains(&common[0]), || "P^I contains the crossing cell".into())?;
    ensure(pi.is_empty() || edge_connected(&pi), || "P^I not connected".into())?;
    let rest: BTreeSet<_> = cell_set(p)
        .difference(&i_cells.union(&pi).copied().collect())
        .copied()
        .collect();
    ensure(!rest.is_empty() && edge_connected(&rest), || "remainder is not a polyomino".into())
}

pub fn check_inner_intervals(p: &CellCollection) -> Check {
    let lib: BTreeSet<Interval> = p.inner_intervals().into_iter().collect();
    let brute = brute_inner_intervals(p);
    ensure(lib == brute, || {
        format!(
            "{}: missing {:?}, extra {:?}",
            p.to_inline(),
            brute.difference(&lib).collect::<Vec<_>>(),
            lib.difference(&brute).collect::<Vec<_>>()
        )
    })?;
    let lib_max: BTreeSet<Interval> = p.maximal_inner_intervals().into_iter().collect();
    ensure(lib_max == brute_maximal(p), || format!("{}: maximal intervals differ", p.to_inline()))
}

pub fn check_classify(p: &CellCollection) -> Check {
    let r = classify(p);
    let cells = cell_set(p);
    ensure(r == classify(p), || "classify is not deterministic".into())?;
    ensure(r.is_convex == (r.is_row_convex && r.is_col_convex), || "convex".into())?;
    ensure(!r.is_parallelogram || r.is_convex, || "parallelogram without convexity".into())?;
    ensure(!(r.closed_path.is_some() && r.weakly_closed_path.is_some()), || "both path kinds".into())?;
    ensure(!r.thin_thm51 || r.is_thin, || "thin conditions on a thick collection".into())?;
    ensure(r.is_polyomino == edge_connected(&cells), || "connectivity".into())?;
    if r.is_polyomino {
        ensure(r.is_simple == hole_free(&cells), || format!("{}: simplicity", p.to_inline()))?;
    }
    for (di, dj) in [(1, 0), (0, 2), (3, 1)] {
        let moved = p.translate(di, dj).unwrap();
        ensure(classify(&moved) == shift_record(&r, di as u32, dj as u32), || {
            format!("{}: translation by ({di},{dj})", p.to_inline())
        })?;
    }
    Ok(())
}

fn shift_record(
    r: &polyideal::grid::ClassificationRecord,
    di: u32,
    dj: u32,
) -> polyideal::grid::ClassificationRecord {
    let mut out = r.clone();
    let cell = |c: &Cell| Cell::new(c.i() + di, c.j() + dj);
    out.left_most_vertices = r
        .left_most_vertices
        .iter()
        .map(|v| Vertex::new(v.i + di, v.j + dj))
        .collect();
    out.closed_path = r.closed_path.as_ref().map(|s| s.iter().map(cell).collect());
    out.weakly_closed_path = r.weakly_closed_path.as_ref().map(|s| s.iter().map(cell).collect());
    out
}

pub fn check_partition(p: &CellCollection) -> Check {
    let blocks = antidiagonal_partition(p);
    let mut seen = BTreeSet::new();
    for b in &blocks {
        for v in &b.vertices {
            ensure(seen.insert(*v), || format!("{}: {v} in two blocks", p.to_inline()))?;
        }
        for w in b.vertices.windows(2) {
            ensure(w[1].i == w[0].i + 1 && w[1].j + 1 == w[0].j, || "step is not (+1,-1)".into())?;
        }
    }
    ensure(seen == p.vertex_set(), || "blocks do not cover V(P)".into())?;
    for w in blocks.windows(2) {
        let (a, b) = (w[0].vertices[0], w[1].vertices[0]);
        let before = a.i + a.j < b.i + b.j || (a.i + a.j == b.i + b.j && a.i < b.i);
        ensure(before, || format!("blocks {} and {} out of order", w[0].k, w[1].k))?;
    }
    Ok(())
}

/// For ladders: each non-empty `P_k` holds the staircase of `V_k` and is connected and simple.
pub fn check_ladder_prefixes(p: &CellCollection) -> Check {
    for b in antidiagonal_partition(p) {
        if b.cells.is_empty() {
            continue;
        }
        let n = b.vertices.len() as u32;
        let first = b.vertices[0];
        let (ik, jk) = (first.i - 1, first.j - n);
        // cells with upper-left vertex (ik+u, jk+v), u >= 1, v >= 2, u + v <= n + 1
        let mut expected = BTreeSet::new();
        for u in 1..n {
            for v in 2..=n + 1 - u {
                expected.insert((ik + u, jk + v - 1));
            }
        }
        let lib: BTreeSet<_> = staircase_cells(&b).iter().map(|c| (c.i(), c.j())).collect();
        ensure(lib == expected, || format!("staircase of block {}", b.k))?;
        let prefix = cell_set(&b.prefix);
        ensure(expected.is_subset(&prefix), || {
            format!("{}: staircase of block {} not in P_k", p.to_inline(), b.k)
        })?;
        ensure(edge_connected(&prefix) && hole_free(&prefix), || {
            format!("{}: P_{} not a simple polyomino", p.to_inline(), b.k)
        })?;
    }
    Ok(())
}

// ---------- polynomial oracles ----------

pub fn q(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn var(i: u32, j: u32) -> Vertex {
    Vertex::new(i, j)
}

pub fn leading(f: &Polynomial, order: &MonomialOrder) -> (Monomial, Rational) {
    let mut best: Option<(Monomial, Rational)> = None;
    for (m, c) in f.terms() {
        let better = match &best {
            None => true,
            Some((b, _)) => compare(order, m, b) == Ordering::Greater,
        };
        if better {
            best = Some((m.clone(), c.clone()));
        }
    }
    best.expect("non-zero polynomial")
}

/// Plain multivariate division written against the sparse representation only.
pub fn remainder(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let leads: Vec<(Monomial, Rational)> = divisors.iter().map(|g| leading(g, order)).collect();
    let mut p = f.clone();
    let mut r = Polynomial::zero();
    while !p.is_zero() {
        let (m, c) = leading(&p, order);
        let hit = leads.iter().position(|(lm, _)| lm.divides(&m));
        match hit {
            Some(k) => {
                let (lm, lc) = &leads[k];
                let quot = lm.quotient_of(&m).unwrap();
                let factor = c / lc;
                p = &p - &divisors[k].mul_monomial(&quot).scale(&factor);
            }
            None => {
                r.add_term(m.clone(), c.clone());
                p = &p - &Polynomial::term(m, c);
            }
        }
    }
    r
}

pub fn s_pair(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (mf, cf) = leading(f, order);
    let (mg, cg) = leading(g, order);
    let l = mf.lcm(&mg);
    let a = f.mul_monomial(&mf.quotient_of(&l).unwrap()).scale(&(Rational::one() / cf));
    let b = g.mul_monomial(&mg.quotient_of(&l).unwrap()).scale(&(Rational::one() / cg));
    &a - &b
}

/// Reduced-basis shape plus Buchberger's criterion, all through [`remainder`].
pub fn check_reduced_basis(elements: &[Polynomial], order: &MonomialOrder) -> Check {
    let leads: Vec<Monomial> = elements.iter().map(|g| leading(g, order).0).collect();
    for (x, g) in elements.iter().enumerate() {
        ensure(leading(g, order).1.is_one(), || format!("{g} is not monic"))?;
        for (m, _) in g.terms() {
            for (y, l) in leads.iter().enumerate() {
                ensure(x == y || !l.divides(m), || format!("{g} is not inter-reduced"))?;
            }
        }
    }
    for x in 0..elements.len() {
        for y in x + 1..elements.len() {
            let s = s_pair(&elements[x], &elements[y], order);
            ensure(remainder(&s, elements, order).is_zero(), || {
                format!("S({}, {}) does not reduce to zero", elements[x], elements[y])
            })?;
        }
    }
    Ok(())
}

/// All monomials of degree `d` in `vars`.
pub fn monomials_of_degree(vars: &[Vertex], d: u32) -> Vec<Monomial> {
    if d == 0 {
        return vec![Monomial::one()];
    }
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u32, Vec<(Vertex, u32)>)> = vec![(0, d, Vec::new())];
    while let Some((start, left, acc)) = stack.pop() {
        if left == 0 {
            out.push(Monomial::from_pairs(acc));
            continue;
        }
        for k in start..vars.len() {
            let mut next = acc.clone();
            match next.last_mut() {
                Some((v, e)) if *v == vars[k] => *e += 1,
                _ => next.push((vars[k], 1)),
            }
            stack.push((k, left - 1, next));
        }
    }
    out
}

/// Rank of a dense rational matrix by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let p = rows[r][c].clone();
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let factor = &rows[k][c] / &p;
                for x in c..cols {
                    let sub = &rows[r][x] * &factor;
                    rows[k][x] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// Membership of a homogeneous `f` in the ideal of homogeneous `gens`: `f` lies in the
/// span of `m·g` over all monomials `m` with `deg(m·g) = deg f`.
pub fn span_membership(f: &Polynomial, gens: &[Polynomial]) -> bool {
    if f.is_zero() {
        return true;
    }
    let d = f.total_degree().unwrap();
    let vars: Vec<Vertex> = gens
        .iter()
        .flat_map(|g| g.variables())
        .chain(f.variables())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut products = Vec::new();
    for g in gens {
        let dg = g.total_degree().unwrap();
        if dg <= d {
            for m in monomials_of_degree(&vars, d - dg) {
                products.push(g.mul_monomial(&m));
            }
        }
    }
    let mut columns: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in products.iter().chain(std::iter::once(f)) {
        for (m, _) in p.terms() {
            let next = columns.len();
            columns.entry(m.clone()).or_insert(next);
        }
    }
    let to_row = |p: &Polynomial| {
        let mut row = vec![Rational::zero(); columns.len()];
        for (m, c) in p.terms() {
            row[columns[m]] = c.clone();
        }
        row
    };
    let base: Vec<Vec<Rational>> = products.iter().map(to_row).collect();
    let mut with_f = base.clone();
    with_f.push(to_row(f));
    rank(base) == rank(with_f)
}

/// Determinant as the signed sum over all permutations.
pub fn permutation_sum(m: &SymbolicMatrix) -> Polynomial {
    let n = m.size();
    let mut total = Polynomial::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
        let mut term = Polynomial::constant(q(if inversions % 2 == 0 { 1 } else { -1 }));
        for (row, &col) in perm.iter().enumerate() {
            term = &term * m.get(row, col);
        }
        total = &total + &term;
        // next permutation in lexicographic order
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| perm[k] < perm[k + 1]) else {
            break;
        };
        let l = (k + 1..n).rev().find(|&l| perm[k] < perm[l]).unwrap();
        perm.swap(k, l);
        perm[k + 1..].reverse();
    }
    total
}

// ---------- integer matrices ----------

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).map(|k| &row[k] * &b[k][c]).sum())
                .collect()
        })
        .collect()
}

/// Exact determinant over the rationals.
pub fn det(m: &IntMatrix) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut result = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&k| !a[k][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            result = -result;
        }
        let pivot = a[c][c].clone();
        result *= &pivot;
        for k in c + 1..n {
            let factor = &a[k][c] / &pivot;
            for x in c..n {
                let sub = &a[c][x] * &factor;
                a[k][x] -= sub;
            }
        }
    }
    assert!(result.is_integer());
    result.to_integer()
}

pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

/// `U·A = H` with `U` unimodular and `H` echelon; `U·A·V = D` with `U`, `V` unimodular,
/// `V·V⁻¹ = 1` and a divisibility chain on the diagonal.
pub fn check_normal_forms(a: &IntMatrix) -> Check {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let (h, u) = hermite(a);
    ensure(mul(&u, a) == h, || "U·A != H".into())?;
    ensure(is_unit(&det(&u)), || "Hermite transform not unimodular".into())?;
    let mut last_pivot: Option<usize> = None;
    let mut zero_seen = false;
    for row in &h {
        match row.iter().position(|x| !x.is_zero()) {
            None => zero_seen = true,
            Some(c) => {
                ensure(!zero_seen, || "non-zero row below a zero row".into())?;
                ensure(last_pivot.is_none_or(|l| c > l), || "pivots not increasing".into())?;
                ensure(row[c].is_positive(), || "non-positive pivot".into())?;
                last_pivot = Some(c);
            }
        }
    }
    let s = smith(a);
    ensure(mul(&mul(&s.u, a), &s.v) == s.d, || "U·A·V != D".into())?;
    ensure(is_unit(&det(&s.u)) && is_unit(&det(&s.v)), || "Smith transforms not unimodular".into())?;
    let identity: IntMatrix = (0..n)
        .map(|r| (0..n).map(|c| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    ensure(mul(&s.v, &s.v_inv) == identity, || "V·V⁻¹ != 1".into())?;
    for r in 0..m {
        for c in 0..n {
            ensure(r == c || s.d[r][c].is_zero(), || "D is not diagonal".into())?;
        }
    }
    let divisors = s.elementary_divisors();
    for w in divisors.windows(2) {
        ensure((&w[1] % &w[0]).is_zero(), || "divisibility chain broken".into())?;
    }
    Ok(())
}

// ---------- polyomino ideals ----------

/// Exponent-difference rows of the inner binomials, over `V(P)`.
pub fn binomial_rows(p: &CellCollection) -> IntMatrix {
    let vars = p.vertices();
    polyomino_ideal(p)
        .binomials
        .iter()
        .map(|b| {
            let (m1, m2) = b.polynomial.as_pure_binomial().unwrap();
            vars.iter()
                .map(|v| BigInt::from(m1.exponent(*v) as i64 - m2.exponent(*v) as i64))
                .collect()
        })
        .collect()
}

/// Reduced basis independent of generator order; `remainder` confirms the basis shape.
pub fn check_canonical_basis(p: &CellCollection, budget: &Budget) -> Result<bool, GroebnerError> {
    let order = discussion_order(p);
    let ideal = polyomino_ideal(p).presentation();
    if ideal.is_zero() {
        return Ok(true);
    }
    let gb = reduced_groebner_basis(&ideal, &order, budget)?;
    let n = ideal.generators.len();
    let mut shuffles = vec![ideal.generators.iter().rev().cloned().collect::<Vec<_>>()];
    shuffles.push((0..n).map(|k| ideal.generators[(k + n / 2) % n].clone()).collect());
    // scaled and sign-flipped copies generate the same ideal
    shuffles.push(
        ideal
            .generators
            .iter()
            .enumerate()
            .map(|(k, g)| g.scale(&q(if k % 2 == 0 { -3 } else { 2 })))
            .collect(),
    );
    for gens in shuffles {
        let other = reduced_groebner_basis(&IdealPresentation::with_ambient(gens, ideal.ambient.clone()), &order, budget)?;
        if other.elements != gb.elements {
            return Ok(false);
        }
    }
    Ok(check_reduced_basis(&gb.elements, &order).is_ok())
}

/// Saturation by all variables is extensive and idempotent.
pub fn check_saturation(p: &CellCollection, budget: &Budget) -> Result<bool, GroebnerError> {
    let ideal = polyomino_ideal(p).presentation();
    if ideal.is_zero() {
        return Ok(true);
    }
    let order = discussion_order(p);
    let once = saturate_by_all_variables(&ideal, SaturationRoute::Auto, budget)?;
    for g in &ideal.generators {
        if !ideal_membership(g, &once, &order, budget)? {
            return Ok(false);
        }
    }
    let twice = saturate_by_all_variables(&once, SaturationRoute::Auto, budget)?;
    let a = reduced_groebner_basis(&once, &order, budget)?;
    let b = reduced_groebner_basis(&twice, &order, budget)?;
    Ok(a.elements == b.elements)
}

// ---------- random binomial ideals ----------

#[derive(Clone, Debug)]
pub struct MembershipInstance {
    pub generators: Vec<Polynomial>,
    pub candidate: Polynomial,
}

fn random_monomial(rng: &mut impl rand::Rng, vars: &[Vertex], degree: u32) -> Monomial {
    Monomial::from_pairs((0..degree).map(|_| (vars[rng.gen_range(0..vars.len())], 1)).fold(
        BTreeMap::new(),
        |mut acc: BTreeMap<Vertex, u32>, (v, e)| {
            *acc.entry(v).or_default() += e;
            acc
        },
    ))
}

/// Homogeneous binomials in at most eight variables and of degree at most three, with a
/// candidate that is a combination of the generators in about half the cases.
pub fn membership_instance(rng: &mut impl rand::Rng) -> MembershipInstance {
    let nvars = rng.gen_range(3..=8);
    let vars: Vec<Vertex> = (1..=nvars).map(|k| var(k, 1 + k % 3)).collect();
    let count = rng.gen_range(1..=4);
    let mut generators = Vec::new();
    while generators.len() < count {
        let d = rng.gen_range(1..=3);
        let a = random_monomial(rng, &vars, d);
        let b = random_monomial(rng, &vars, d);
        if a != b {
            generators.push(Polynomial::binomial(a, b));
        }
    }
    let target = rng.gen_range(1..=3u32);
    let mut candidate = Polynomial::zero();
    if rng.gen_bool(0.5) {
        for g in &generators {
            let dg = g.total_degree().unwrap();
            if dg <= target && rng.gen_bool(0.7) {
                let m = random_monomial(rng, &vars, target - dg);
                let c = q(rng.gen_range(-3..=3));
                candidate = &candidate + &g.mul_monomial(&m).scale(&c);
            }
        }
        if rng.gen_bool(0.3) {
            candidate.add_term(random_monomial(rng, &vars, target), q(1));
        }
    } else {
        for _ in 0..rng.gen_range(1..=3) {
            candidate.add_term(random_monomial(rng, &vars, target), q(rng.gen_range(-2..=2)));
        }
    }
    MembershipInstance { generators, candidate }
}

/// Normal form against the reduced basis, compared with [`span_membership`].
pub fn membership_agrees(inst: &MembershipInstance, budget: &Budget) -> Result<(bool, bool), GroebnerError> {
    let ideal = IdealPresentation::new(inst.generators.clone());
    let order = MonomialOrder::column_major(polyideal::polyring::OrderScheme::GradedRevLex);
    let gb = reduced_groebner_basis(&ideal, &order, budget)?;
    let by_nf = polyideal::groebner::normal_form(&inst.candidate, &gb.elements, &order).is_zero();
    Ok((by_nf, span_membership(&inst.candidate, &inst.generators)))
}
