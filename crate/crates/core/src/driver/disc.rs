use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::intpoly::IntPolynomial;
use crate::matrix;

/// `disc(f) = (-1)^{n(n-1)/2} Res(f, f')` for monic `f` of degree at least 2.
pub fn discriminant(f: &IntPolynomial) -> BigInt {
    let n = f.degree().expect("discriminant of zero");
    assert!(n >= 2 && f.is_monic(), "discriminant needs a monic polynomial of degree >= 2");
    let df = f.derivative();
    let size = 2 * n - 1;
    let mut syl = vec![vec![BigInt::zero(); size]; size];
    // rows hold descending coefficients, shifted right by the row index
    for r in 0..n - 1 {
        for i in 0..=n {
            syl[r][r + i] = f.coeff(n - i);
        }
    }
    for r in 0..n {
        for i in 0..n {
            syl[n - 1 + r][r + i] = df.coeff(n - 1 - i);
        }
    }
    let res = matrix::determinant(&syl);
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

/// Removes every prime `p <= n` from `|d|`, returning the stripped part and the cofactor.
pub fn strip_small_primes(d: &BigInt, n: usize) -> (BTreeMap<u64, u32>, BigInt) {
    assert!(!d.is_zero(), "strip_small_primes: zero discriminant");
    let mut rest = d.abs();
    let mut small = BTreeMap::new();
    for p in (2..=n as u64).filter(|&p| num_prime::nt_funcs::is_prime64(p)) {
        let bp = BigInt::from(p);
        let mut k = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += 1;
        }
        if k > 0 {
            small.insert(p, k);
        }
    }
    (small, rest)
}
