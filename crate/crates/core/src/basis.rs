//! Candidate `N`-integral bases built from quotients and polygon ordinates,
//! and integer modules given by a denominator and a triangular matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::intpoly::IntPolynomial;
use crate::matrix::{self, Matrix};
use crate::newton::{NumberFieldInput, RegularityReport};

/// `numerator(theta) / N^exponent` with its `(i, j, k)` origin.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement {
    pub numerator: IntPolynomial,
    pub exponent: u32,
    pub origin: (usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisCandidate {
    pub modulus: BigInt,
    pub elements: Vec<BasisElement>,
    /// `Some(true)` once `N` is known squarefree.
    pub modulus_squarefree: Option<bool>,
    pub all_slopes_integral: bool,
}

impl BasisCandidate {
    /// True when the candidate is a genuine `N`-integral basis.
    pub fn is_valid(&self) -> bool {
        self.all_slopes_integral || self.modulus_squarefree == Some(true)
    }
}

/// All `q_{i,j} x^k / N^floor(y_{i,j})`, `1 <= j <= l_i`, `0 <= k < deg g_i`.
pub fn basis_candidate(report: &RegularityReport, modulus_squarefree: Option<bool>) -> Result<BasisCandidate, Error> {
    if !report.regular {
        return Err(Error::Contract("basis candidate requested for a non-regular report".into()));
    }
    let mut elements = Vec::new();
    for (i, fac) in report.factors.iter().enumerate() {
        let deg_g = fac.g.degree().unwrap();
        for (j, fl) in (1..=fac.ell).zip(fac.polygon.floors()) {
            let q = fac.expansion.quotient(j);
            for k in 0..deg_g {
                elements.push(BasisElement { numerator: q.shift(k), exponent: fl, origin: (i, j, k) });
            }
        }
    }
    Ok(BasisCandidate {
        modulus: report.modulus.clone(),
        elements,
        modulus_squarefree,
        all_slopes_integral: report.all_slopes_integral(),
    })
}

/// `sum_i deg g_i * sum_j floor(y_{i,j})`.
pub fn index_exponent(report: &RegularityReport) -> u64 {
    report
        .factors
        .iter()
        .map(|f| f.polygon.floor_sum() * f.g.degree().unwrap() as u64)
        .sum()
}

/// Coordinates of `h(theta)` in `1, theta, ..., theta^{n-1}`.
pub fn coordinates(h: &IntPolynomial, f: &NumberFieldInput) -> Vec<BigInt> {
    let r = h.rem_monic(f.poly());
    (0..f.degree()).map(|i| r.coeff(i)).collect()
}

/// Matrix of multiplication by `h(theta)`, row `k` holding `h theta^k`.
pub fn multiplication_matrix(h: &IntPolynomial, f: &NumberFieldInput) -> Matrix {
    let n = f.degree();
    let mut rows = Vec::with_capacity(n);
    let mut cur = h.rem_monic(f.poly());
    for _ in 0..n {
        rows.push((0..n).map(|i| cur.coeff(i)).collect());
        cur = cur.shift(1).rem_monic(f.poly());
    }
    rows
}

/// Whether `numerator(theta) / d` is an algebraic integer.
pub fn integrality_check(numerator: &IntPolynomial, d: &BigInt, f: &NumberFieldInput) -> bool {
    assert!(d.is_positive(), "integrality_check: denominator must be positive");
    let cp = matrix::char_poly(&multiplication_matrix(numerator, f));
    let n = f.degree();
    // char poly of M/d has coefficient c_{n-k} / d^k at y^{n-k}
    let mut dk = BigInt::one();
    for k in 1..=n {
        dk *= d;
        if !cp[n - k].is_multiple_of(&dk) {
            return false;
        }
    }
    true
}

/// Determinant of the numerator matrix of a candidate.
pub fn numerator_determinant(cand: &BasisCandidate, f: &NumberFieldInput) -> BigInt {
    let rows: Matrix = cand.elements.iter().map(|e| coordinates(&e.numerator, f)).collect();
    matrix::determinant(&rows)
}

/// A full-rank module `(1/D) * rowspace(rows)` inside `Q(theta)`, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleBasis {
    pub denominator: BigInt,
    pub rows: Matrix,
}

impl ModuleBasis {
    /// Normal form of `(1/D) * rowspace(rows)`; `rows` may have more than `n` rows.
    pub fn from_rows(denominator: BigInt, rows: &[Vec<BigInt>], n: usize) -> Self {
        assert!(denominator.is_positive(), "module denominator must be positive");
        let mut h = matrix::hermite_normal_form(rows, n);
        let g = h.iter().flatten().fold(denominator.clone(), |acc, x| acc.gcd(x));
        let denominator = if g.is_one() {
            denominator
        } else {
            for x in h.iter_mut().flatten() {
                *x /= &g;
            }
            denominator / &g
        };
        ModuleBasis { denominator, rows: h }
    }

    /// `Z[theta]`.
    pub fn power_basis(n: usize) -> Self {
        ModuleBasis { denominator: BigInt::one(), rows: matrix::identity(n) }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// `(M : Z[theta]) = D^n / det`, when `Z[theta]` is contained in `M`.
    pub fn index_over_order(&self) -> BigRational {
        let n = self.dimension();
        let det: BigInt = (0..n).map(|i| self.rows[i][i].clone()).product();
        BigRational::new(num_traits::pow(self.denominator.clone(), n), det)
    }

    /// Whether `Z[theta]` is contained in the module.
    pub fn contains_power_basis(&self) -> bool {
        let n = self.dimension();
        let mut stacked = self.rows.clone();
        for i in 0..n {
            let mut r = vec![BigInt::zero(); n];
            r[i] = self.denominator.clone();
            stacked.push(r);
        }
        ModuleBasis::from_rows(self.denominator.clone(), &stacked, n) == *self
    }

    /// The elements `row(theta) / D`, as polynomials with a shared denominator.
    pub fn elements(&self) -> Vec<IntPolynomial> {
        self.rows.iter().map(|r| IntPolynomial::from_ints(r.iter().cloned())).collect()
    }

    /// Discriminant `det(Tr(w_i w_j))` of the module.
    pub fn discriminant(&self, f: &NumberFieldInput) -> BigRational {
        let n = self.dimension();
        let s = power_sums(f, 2 * n - 1);
        let t: Matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = BigInt::zero();
                        for (a, x) in self.rows[i].iter().enumerate() {
                            if x.is_zero() {
                                continue;
                            }
                            for (b, y) in self.rows[j].iter().enumerate() {
                                acc += x * y * &s[a + b];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        BigRational::new(matrix::determinant(&t), num_traits::pow(self.denominator.clone(), 2 * n))
    }
}

/// Traces `Tr(theta^k)` for `k < count` by Newton's identities.
pub fn power_sums(f: &NumberFieldInput, count: usize) -> Vec<BigInt> {
    let n = f.degree();
    let c = |i: usize| f.poly().coeff(i);
    let mut s: Vec<BigInt> = Vec::with_capacity(count);
    for k in 0..count {
        let v = if k == 0 {
            BigInt::from(n)
        } else {
            let mut acc = if k <= n { BigInt::from(k) * c(n - k) } else { BigInt::zero() };
            for i in 1..k.min(n + 1) {
                acc += c(n - i) * &s[k - i];
            }
            -acc
        };
        s.push(v);
    }
    s
}

/// Module spanned by a candidate: `D = N^max e`, rows scaled to the common denominator.
pub fn to_module_basis(cand: &BasisCandidate, f: &NumberFieldInput) -> ModuleBasis {
    let n = f.degree();
    let top = cand.elements.iter().map(|e| e.exponent).max().unwrap_or(0);
    let d = num_traits::pow(cand.modulus.clone(), top as usize);
    let rows: Matrix = cand
        .elements
        .iter()
        .map(|e| {
            let scale = num_traits::pow(cand.modulus.clone(), (top - e.exponent) as usize);
            coordinates(&e.numerator, f).into_iter().map(|c| c * &scale).collect()
        })
        .collect();
    ModuleBasis::from_rows(d, &rows, n)
}
