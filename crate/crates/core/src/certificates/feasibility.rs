//! Exact feasibility of `A·w >= 1, w >= 0` over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

/// Phase I of the simplex method with Bland's rule. Returns a feasible `w` if one exists.
pub fn simplex_feasible(rows: &[Vec<i64>], nvars: usize) -> Option<Vec<Q>> {
    let m = rows.len();
    if m == 0 {
        return Some(vec![Q::zero(); nvars]);
    }
    // columns: w (nvars) | surplus (m) | artificial (m) | rhs
    let cols = nvars + 2 * m;
    let mut t: Vec<Vec<Q>> = rows
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let mut row = vec![Q::zero(); cols + 1];
            for (x, &a) in r.iter().enumerate() {
                row[x] = Q::from_integer(BigInt::from(a));
            }
            row[nvars + k] = -Q::one();
            row[nvars + m + k] = Q::one();
            row[cols] = Q::one();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (0..m).map(|k| nvars + m + k).collect();
    // reduced costs for minimising the sum of artificials
    let mut cost = vec![Q::zero(); cols + 1];
    for row in &t {
        for c in 0..nvars + m {
            cost[c] -= &row[c];
        }
        cost[cols] -= &row[cols];
    }
    loop {
        let Some(enter) = (0..cols).find(|&c| cost[c].is_negative()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for r in 0..m {
            if !t[r][enter].is_positive() {
                continue;
            }
            let ratio = &t[r][cols] / &t[r][enter];
            leave = match leave {
                None => Some(r),
                Some(best) => {
                    let best_ratio = &t[best][cols] / &t[best][enter];
                    if ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[best]) {
                        Some(r)
                    } else {
                        Some(best)
                    }
                }
            };
        }
        let r = leave.expect("phase I objective is bounded below");
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = t[r].clone();
        for (other, row) in t.iter_mut().enumerate() {
            if other == r || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        let f = cost[enter].clone();
        for (x, p) in cost.iter_mut().zip(&pivot_row) {
            *x -= &f * p;
        }
        basis[r] = enter;
    }
    if !cost[cols].is_zero() {
        return None;
    }
    let mut w = vec![Q::zero(); nvars];
    for (r, &b) in basis.iter().enumerate() {
        if b < nvars {
            w[b] = t[r][cols].clone();
        }
    }
    Some(w)
}

/// Fourier–Motzkin elimination on `A·w >= 1, w >= 0`.
pub fn fourier_motzkin_feasible(rows: &[Vec<i64>], nvars: usize) -> bool {
    // each constraint: (coefficients, bound) meaning coeffs·w >= bound
    let mut system: Vec<(Vec<Q>, Q)> = rows
        .iter()
        .map(|r| (r.iter().map(|&a| Q::from_integer(a.into())).collect(), Q::one()))
        .collect();
    for x in 0..nvars {
        let mut e = vec![Q::zero(); nvars];
        e[x] = Q::one();
        system.push((e, Q::zero()));
    }
    for x in 0..nvars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for (c, b) in system {
            if c[x].is_positive() {
                pos.push((c, b));
            } else if c[x].is_negative() {
                neg.push((c, b));
            } else {
                rest.push((c, b));
            }
        }
        for (cp, bp) in &pos {
            for (cn, bn) in &neg {
                let fp = -cn[x].clone();
                let fnn = cp[x].clone();
                let c: Vec<Q> = cp.iter().zip(cn).map(|(a, b)| a * &fp + b * &fnn).collect();
                let b = bp * &fp + bn * &fnn;
                rest.push(normalize(c, b));
            }
        }
        rest.sort();
        rest.dedup();
        system = rest;
    }
    system.iter().all(|(_, b)| !b.is_positive())
}

fn normalize(c: Vec<Q>, b: Q) -> (Vec<Q>, Q) {
    let scale = c
        .iter()
        .chain(std::iter::once(&b))
        .map(|q| q.abs())
        .filter(|q| !q.is_zero())
        .max();
    match scale {
        Some(s) => (c.into_iter().map(|q| q / &s).collect(), b / &s),
        None => (c, b),
    }
}

/// Scales a non-negative rational solution to integers and shifts it to be positive.
///
/// The shift keeps every row satisfied when each row sums to zero, i.e. when it
/// compares two monomials of the same degree.
pub fn positive_integer_weights(w: &[Q], rows: &[Vec<i64>]) -> Vec<BigInt> {
    let lcm = w
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = w.iter().map(|q| (q * Q::from_integer(lcm.clone())).to_integer()).collect();
    if rows.iter().all(|r| r.iter().sum::<i64>() == 0) {
        for x in ints.iter_mut() {
            *x += 1;
        }
    }
    ints
}
