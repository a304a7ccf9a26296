//! Polynomials over `A = Z/NZ`: division, hooked gcd and squarefree decomposition.

use num_bigint::BigInt;

use crate::modint::{HookOutcome, ModulusContext};
use crate::poly::Poly;

/// Polynomial in `(Z/NZ)[x]`, coefficients stored as canonical lifts.
pub type ModPolynomial = Poly<ModulusContext>;

/// Monic, pairwise coprime factors `g_i` with strictly increasing exponents `l_i >= 1`
/// and `f = prod g_i^{l_i}` in `A[x]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeDecomposition {
    pub pairs: Vec<(ModPolynomial, u32)>,
}

impl SquarefreeDecomposition {
    /// `prod g_i^{l_i}`.
    pub fn product(&self, ctx: &ModulusContext) -> ModPolynomial {
        self.pairs
            .iter()
            .fold(Poly::one(ctx.clone()), |acc, (g, l)| acc.mul(&g.pow(*l)))
    }
}

impl ModPolynomial {
    pub fn from_ints_mod<T: Into<BigInt>>(ctx: &ModulusContext, coeffs: impl IntoIterator<Item = T>) -> Self {
        Poly::new(ctx.clone(), coeffs.into_iter().map(|c| ctx.reduce(&c.into())).collect())
    }
}

/// `h = g*q + r`, `deg r < deg g`, for `g` with unit leading coefficient.
pub fn quotrem(h: &ModPolynomial, g: &ModPolynomial) -> (ModPolynomial, ModPolynomial) {
    h.quotrem(g)
}

/// Monic `d` with `f A[x] + g A[x] = d A[x]`, or a proper divisor of `N`.
pub fn gcd0(f: &ModPolynomial, g: &ModPolynomial) -> HookOutcome<ModPolynomial> {
    Poly::gcd_hooked(f, g)
}

/// [`gcd0`] with Bezout cofactors `(d, r, s)`, `r f + s g = d`.
pub fn xgcd0(
    f: &ModPolynomial,
    g: &ModPolynomial,
) -> HookOutcome<(ModPolynomial, ModPolynomial, ModPolynomial)> {
    Poly::xgcd_hooked(f, g)
}

/// Squarefree decomposition of a monic `f`. Requires `deg f < p` for all `p | N`.
pub fn sfd0(f: &ModPolynomial) -> HookOutcome<SquarefreeDecomposition> {
    Poly::squarefree_decomposition(f).map(|pairs| SquarefreeDecomposition { pairs })
}

/// `ord_g(h)` for nonzero `h` and monic `g` of positive degree.
pub fn ord_mod(h: &ModPolynomial, g: &ModPolynomial) -> u32 {
    Poly::ord(h, g)
}
