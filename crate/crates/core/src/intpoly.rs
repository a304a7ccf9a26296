//! Integer polynomials and the shared text format.
//!
//! The text format is a degree-ascending list of decimal coefficients, e.g.
//! `[-49, 0, 0, 1]` for `x^3 - 49`. Coefficients may optionally be quoted.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::modint::ModulusContext;
use crate::modpoly::ModPolynomial;
use crate::poly::{Integers, Poly};

/// Polynomial in `Z[x]`.
pub type IntPolynomial = Poly<Integers>;

impl IntPolynomial {
    pub fn from_ints<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        Poly::new(Integers, coeffs.into_iter().map(Into::into).collect())
    }

    /// Parses the bracketed decimal list format.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected a bracketed coefficient list, got {t:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Poly::zero(Integers));
        }
        let coeffs = inner
            .split(',')
            .map(|c| parse_int(c.trim().trim_matches('"')))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(Integers, coeffs))
    }

    /// The text format, e.g. `[-49, 0, 0, 1]`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }

    /// Reduction modulo `N`.
    pub fn reduce(&self, ctx: &ModulusContext) -> ModPolynomial {
        self.map(ctx.clone(), |c| ctx.reduce(c))
    }

    /// Canonical integer lift of a residue polynomial, coefficients in `[0, N)`.
    pub fn lift(p: &ModPolynomial) -> Self {
        p.map(Integers, |c| c.clone())
    }

    /// Coefficientwise exact division by an integer. `None` if some coefficient
    /// is not divisible.
    pub fn div_exact_int(&self, d: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs().len());
        for c in self.coeffs() {
            let (q, r) = num_integer::Integer::div_rem(c, d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Poly::new(Integers, out))
    }

    /// `x^k` as an integer polynomial.
    pub fn x_pow(k: usize) -> Self {
        Poly::monomial(Integers, BigInt::one(), k)
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        IntPolynomial::parse(s)
    }
}

pub(crate) fn parse_int(s: &str) -> Result<BigInt, Error> {
    let s = s.trim();
    let digits = s.strip_prefix('+').unwrap_or(s);
    BigInt::from_str(digits).map_err(|_| Error::Parse(format!("not a decimal integer: {s:?}")))
}
