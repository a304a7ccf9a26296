//! Exact integer matrix routines: Hermite normal form, fraction-free
//! determinant and characteristic polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// Upper-triangular Hermite normal form of the row lattice of `rows`.
///
/// Pivots are positive and entries above a pivot lie in `[0, pivot)`. Panics
/// unless the rows span a lattice of full rank `ncols`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], ncols: usize) -> Matrix {
    let mut m: Matrix = rows.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
    for c in 0..ncols {
        loop {
            let pivot = (c..m.len())
                .filter(|&r| !m[r][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(p) = pivot else {
                panic!("hermite_normal_form: lattice is not of full rank");
            };
            m.swap(c, p);
            let mut done = true;
            for r in c + 1..m.len() {
                if m[r][c].is_zero() {
                    continue;
                }
                let q = m[r][c].div_floor(&m[c][c]);
                let (head, tail) = m.split_at_mut(r);
                for (x, y) in tail[0].iter_mut().zip(&head[c]) {
                    *x -= &q * y;
                }
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[c][c].is_negative() {
            for x in m[c].iter_mut() {
                *x = -&*x;
            }
        }
        m.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    m.truncate(ncols);
    for c in 0..ncols {
        for r in 0..c {
            let q = m[r][c].div_floor(&m[c][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = m.split_at_mut(c);
            for (x, y) in head[r].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
    }
    m
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Matrix = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Characteristic polynomial `det(yI - A)`, degree-ascending and monic, by
/// Faddeev–LeVerrier (every division is exact for integer `A`).
pub fn char_poly(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk: Matrix = vec![vec![BigInt::zero(); n]; n];
    let mut c_prev = BigInt::one();
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c_prev;
        }
        let am = mul(a, &next);
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        let c = -trace / BigInt::from(k);
        coeffs[n - k] = c.clone();
        c_prev = c;
        mk = next;
    }
    coeffs
}

pub fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * &b[k][j];
            }
        }
    }
    out
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}
