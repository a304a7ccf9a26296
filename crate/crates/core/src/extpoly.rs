//! The extension `A1 = A[x]/(g)` and polynomials over it in a new variable `y`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::modint::{Hook, HookOutcome, ModulusContext};
use crate::modpoly::{xgcd0, ModPolynomial};
use crate::poly::{CoeffRing, HookedRing, Poly};

struct ExtInner {
    ctx: ModulusContext,
    g: ModPolynomial,
}

/// `A[x]/(g)` for a monic `g` of positive degree. Elements are residues of degree `< deg g`.
#[derive(Clone)]
pub struct ExtRing(Arc<ExtInner>);

/// Polynomial in `y` over `A[x]/(g)`.
pub type ExtPolynomial = Poly<ExtRing>;

impl fmt::Debug for ExtRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[x]/({:?})", self.0.ctx, self.0.g)
    }
}

impl PartialEq for ExtRing {
    fn eq(&self, other: &Self) -> bool {
        self.0.ctx == other.0.ctx && self.0.g == other.0.g
    }
}

impl ExtRing {
    /// Panics unless `g` is monic of positive degree.
    pub fn new(g: ModPolynomial) -> Self {
        assert!(g.is_monic() && g.degree() >= Some(1), "extension needs a monic g of positive degree");
        ExtRing(Arc::new(ExtInner { ctx: g.ring().clone(), g }))
    }

    pub fn base(&self) -> &ModulusContext {
        &self.0.ctx
    }

    pub fn modulus_poly(&self) -> &ModPolynomial {
        &self.0.g
    }

    /// The class of `a` in `A[x]/(g)`.
    pub fn element(&self, a: &ModPolynomial) -> ModPolynomial {
        a.rem_monic(&self.0.g)
    }

    /// Builds a polynomial in `y` from coefficient classes, degree-ascending.
    pub fn poly(&self, coeffs: &[ModPolynomial]) -> ExtPolynomial {
        Poly::new(self.clone(), coeffs.iter().map(|c| self.element(c)).collect())
    }

    /// Inverse of a nonzero class, or a monic proper factor of `g`, or a divisor of `N`.
    pub fn unit_or_factor(&self, alpha: &ModPolynomial) -> HookOutcome<ModPolynomial> {
        assert!(!alpha.is_zero(), "unit_or_factor: zero element");
        let (d, r, _) = xgcd0(alpha, &self.0.g)?;
        if d.is_one() {
            Ok(self.element(&r))
        } else {
            Err(Hook::FactorOfG(d))
        }
    }
}

impl CoeffRing for ExtRing {
    type Elem = ModPolynomial;

    fn zero(&self) -> ModPolynomial {
        Poly::zero(self.0.ctx.clone())
    }
    fn one(&self) -> ModPolynomial {
        Poly::one(self.0.ctx.clone())
    }
    fn is_zero(&self, a: &ModPolynomial) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &ModPolynomial, b: &ModPolynomial) -> ModPolynomial {
        a.add(b)
    }
    fn sub(&self, a: &ModPolynomial, b: &ModPolynomial) -> ModPolynomial {
        a.sub(b)
    }
    fn neg(&self, a: &ModPolynomial) -> ModPolynomial {
        a.neg()
    }
    fn mul(&self, a: &ModPolynomial, b: &ModPolynomial) -> ModPolynomial {
        a.mul(b).rem_monic(&self.0.g)
    }
    fn embed(&self, n: &BigInt) -> ModPolynomial {
        Poly::constant(self.0.ctx.clone(), self.0.ctx.reduce(n))
    }
}

impl HookedRing for ExtRing {
    fn inverse(&self, a: &ModPolynomial) -> HookOutcome<ModPolynomial> {
        self.unit_or_factor(a)
    }
}

/// Monic `d` with `f A1[y] + g1 A1[y] = d A1[y]`, or a hook.
pub fn gcd1(f: &ExtPolynomial, g1: &ExtPolynomial) -> HookOutcome<ExtPolynomial> {
    Poly::gcd_hooked(f, g1)
}

/// Squarefree decomposition over `A1` of a monic `f`.
pub fn sfd1(f: &ExtPolynomial) -> HookOutcome<Vec<(ExtPolynomial, u32)>> {
    Poly::squarefree_decomposition(f)
}

/// Normalizes `r` to monic and certifies it squarefree through [`sfd1`].
pub fn certify_squarefree(r: &ExtPolynomial) -> HookOutcome<bool> {
    let monic = r.make_monic()?;
    Ok(sfd1(&monic)?.iter().all(|(_, e)| *e == 1))
}
