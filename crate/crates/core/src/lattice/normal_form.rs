//! Hermite and Smith normal forms over the integers, with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn int_determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `row[target] += q · row[source]`.
fn add_row(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src) {
        *t += q * s;
    }
}

fn add_col(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] += q * s;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for x in m[r].iter_mut() {
        *x = -x.clone();
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U·A = H`, `U` unimodular,
/// `H` in echelon form with positive pivots and reduced entries above each pivot.
/// Zero rows sit at the bottom.
pub fn hermite(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut h = a.clone();
    let mut u = identity(m);
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        loop {
            let pivot = (row..m)
                .filter(|&r| !h[r][col].is_zero())
                .min_by(|&x, &y| h[x][col].abs().cmp(&h[y][col].abs()));
            let Some(p) = pivot else { break };
            h.swap(row, p);
            u.swap(row, p);
            let mut done = true;
            for r in row + 1..m {
                if h[r][col].is_zero() {
                    continue;
                }
                let q = -h[r][col].div_floor(&h[row][col]);
                add_row(&mut h, r, row, &q);
                add_row(&mut u, r, row, &q);
                if !h[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[row][col].is_zero() {
            continue;
        }
        if h[row][col].is_negative() {
            negate_row(&mut h, row);
            negate_row(&mut u, row);
        }
        for r in 0..row {
            let q = -h[r][col].div_floor(&h[row][col]);
            add_row(&mut h, r, row, &q);
            add_row(&mut u, r, row, &q);
        }
        row += 1;
    }
    (h, u)
}

/// Smith normal form of an `m × n` matrix.
#[derive(Clone, Debug)]
pub struct Smith {
    /// `U·A·V = D`.
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`.
    pub v_inv: IntMatrix,
}

impl Smith {
    /// Non-zero diagonal entries; each divides the next.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len())))
            .map(|k| self.d[k][k].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

pub fn smith(a: &IntMatrix) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut v_inv = identity(n);
    for t in 0..m.min(n) {
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[i][j].is_zero())
            .min_by(|&(a1, b1), &(a2, b2)| d[a1][b1].abs().cmp(&d[a2][b2].abs()));
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        v_inv.swap(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = -d[i][t].div_floor(&d[t][t]);
                add_row(&mut d, i, t, &q);
                add_row(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    clean = false;
                    d.swap(t, i);
                    u.swap(t, i);
                }
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = -d[t][j].div_floor(&d[t][t]);
                add_col(&mut d, j, t, &q);
                add_col(&mut v, j, t, &q);
                // column op `c_j += q c_t` is undone by `r_t -= q r_j` on the inverse
                add_row(&mut v_inv, t, j, &-q.clone());
                if !d[t][j].is_zero() {
                    clean = false;
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    v_inv.swap(t, j);
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d[i][j].is_multiple_of(&d[t][t]));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    add_row(&mut d, t, i, &one);
                    add_row(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    Smith { d, u, v, v_inv }
}
