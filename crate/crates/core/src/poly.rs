//! Dense univariate polynomials over an abstract coefficient ring.
//!
//! The same code serves three rings: the integers, residues modulo `N`, and the
//! extension `(Z/NZ)[x]/(g)`. The rings that can detect zero divisors implement
//! [`HookedRing`]; over those, gcd and squarefree decomposition are available and
//! stop early with a [`Hook`](crate::modint::Hook) when a non-unit leading coefficient shows up.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::modint::HookOutcome;

/// A commutative ring with identity, passed around as a (cheaply clonable) value.
pub trait CoeffRing: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Image of an integer under the canonical map `Z -> R`.
    fn embed(&self, n: &BigInt) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A ring whose unit test either inverts or surrenders structural information.
pub trait HookedRing: CoeffRing {
    /// Inverse of a nonzero element, or the hook raised by the zero divisor.
    fn inverse(&self, a: &Self::Elem) -> HookOutcome<Self::Elem>;
}

/// The ring of rational integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn embed(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
}

/// Dense polynomial, degree-ascending, with no trailing zero coefficients.
#[derive(Clone)]
pub struct Poly<R: CoeffRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: CoeffRing> PartialEq for Poly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: CoeffRing> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<R: CoeffRing> Poly<R> {
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Self {
        let mut p = Poly { ring, coeffs };
        p.trim();
        p
    }

    pub fn zero(ring: R) -> Self {
        Poly { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Poly::new(ring, vec![one])
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Poly::new(ring, vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(ring: R, c: R::Elem, deg: usize) -> Self {
        let mut coeffs = vec![ring.zero(); deg];
        coeffs.push(c);
        Poly::new(ring, coeffs)
    }

    pub fn x(ring: R) -> Self {
        let one = ring.one();
        Poly::monomial(ring, one, 1)
    }

    fn trim(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if self.ring.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.ring.is_one(&self.coeffs[0])
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| self.ring.is_one(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => self.ring.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(self.ring.clone(), coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Poly::new(self.ring.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ring.clone());
        }
        let mut coeffs = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = self.ring.mul(a, b);
                coeffs[i + j] = self.ring.add(&coeffs[i + j], &t);
            }
        }
        Poly::new(self.ring.clone(), coeffs)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        Poly::new(self.ring.clone(), coeffs)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ring.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { ring: self.ring.clone(), coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.ring.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.ring.mul(&self.ring.embed(&BigInt::from(i)), c))
            .collect();
        Poly::new(self.ring.clone(), coeffs)
    }

    /// Maps every coefficient into another ring.
    pub fn map<S: CoeffRing>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S> {
        Poly::new(ring, self.coeffs.iter().map(f).collect())
    }

    /// Division with remainder by a monic divisor. Works over any ring.
    ///
    /// Panics if `g` is not monic.
    pub fn div_rem_monic(&self, g: &Self) -> (Self, Self) {
        assert!(g.is_monic(), "div_rem_monic: divisor must be monic");
        let dg = g.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dg {
            return (Poly::zero(self.ring.clone()), self.clone());
        }
        let mut q = vec![self.ring.zero(); r.len() - dg];
        for s in (0..q.len()).rev() {
            let c = r[s + dg].clone();
            if self.ring.is_zero(&c) {
                continue;
            }
            for (i, gc) in g.coeffs.iter().enumerate() {
                let t = self.ring.mul(&c, gc);
                r[s + i] = self.ring.sub(&r[s + i], &t);
            }
            q[s] = c;
        }
        r.truncate(dg);
        (Poly::new(self.ring.clone(), q), Poly::new(self.ring.clone(), r))
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, g: &Self) -> Self {
        self.div_rem_monic(g).1
    }

    /// Horner evaluation at a ring element.
    pub fn eval(&self, at: &R::Elem) -> R::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ring.zero(), |acc, c| self.ring.add(&self.ring.mul(&acc, at), c))
    }
}

impl<R: HookedRing> Poly<R> {
    /// Multiplies by the inverse of the leading coefficient.
    ///
    /// Panics on the zero polynomial.
    pub fn make_monic(&self) -> HookOutcome<Self> {
        let lead = self.lead().expect("make_monic: zero polynomial");
        if self.ring.is_one(lead) {
            return Ok(self.clone());
        }
        let inv = self.ring.inverse(lead)?;
        Ok(self.scale(&inv))
    }

    /// `Quotrem` for an almost-monic divisor: `self = g*q + r` with `deg r < deg g`.
    ///
    /// Panics if the leading coefficient of `g` is not a unit; callers normalize
    /// through [`Poly::make_monic`] first when that is not already known.
    pub fn quotrem(&self, g: &Self) -> (Self, Self) {
        let lead = g.lead().expect("quotrem: zero divisor polynomial");
        if self.ring.is_one(lead) {
            return self.div_rem_monic(g);
        }
        let inv = match self.ring.inverse(lead) {
            Ok(inv) => inv,
            Err(_) => panic!("quotrem: leading coefficient of the divisor is not a unit"),
        };
        let (q, r) = self.div_rem_monic(&g.scale(&inv));
        (q.scale(&inv), r)
    }

    /// Euclid with hooks: the monic generator of `(f, g)`, unless a leading
    /// coefficient turns out to be a zero divisor.
    ///
    /// Panics when both inputs are zero.
    pub fn gcd_hooked(f: &Self, g: &Self) -> HookOutcome<Self> {
        assert!(!(f.is_zero() && g.is_zero()), "gcd of two zero polynomials");
        let mut f = f.clone();
        let mut g = g.clone();
        while !g.is_zero() {
            g = g.make_monic()?;
            let (_, r) = f.div_rem_monic(&g);
            f = std::mem::replace(&mut g, r);
        }
        f.make_monic()
    }

    /// Extended Euclid with hooks: `(d, r, s)` with `r*f + s*g = d`, `d` monic.
    pub fn xgcd_hooked(f: &Self, g: &Self) -> HookOutcome<(Self, Self, Self)> {
        assert!(!(f.is_zero() && g.is_zero()), "gcd of two zero polynomials");
        let ring = f.ring.clone();
        // invariants: r0*f + s0*g = a, r1*f + s1*g = b
        let (mut a, mut r0, mut s0) = (f.clone(), Poly::one(ring.clone()), Poly::zero(ring.clone()));
        let (mut b, mut r1, mut s1) = (g.clone(), Poly::zero(ring.clone()), Poly::one(ring.clone()));
        while !b.is_zero() {
            let inv = b.ring.inverse(b.lead().unwrap())?;
            b = b.scale(&inv);
            r1 = r1.scale(&inv);
            s1 = s1.scale(&inv);
            let (q, rem) = a.div_rem_monic(&b);
            let r2 = r0.sub(&q.mul(&r1));
            let s2 = s0.sub(&q.mul(&s1));
            a = std::mem::replace(&mut b, rem);
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let inv = a.ring.inverse(a.lead().unwrap())?;
        Ok((a.scale(&inv), r0.scale(&inv), s0.scale(&inv)))
    }

    /// Squarefree decomposition of a monic polynomial, following the classical
    /// field routine step by step with every gcd replaced by [`Poly::gcd_hooked`].
    ///
    /// The output exponents are strictly increasing and start at 1.
    pub fn squarefree_decomposition(f: &Self) -> HookOutcome<Vec<(Self, u32)>> {
        assert!(f.is_monic(), "squarefree decomposition needs a monic input");
        let mut out = Vec::new();
        let mut f = f.clone();
        let d = Poly::gcd_hooked(&f, &f.derivative())?;
        let mut g = f.div_rem_monic(&d).0;
        let mut j = 1u32;
        while !f.is_one() {
            f = f.div_rem_monic(&g).0;
            let h = Poly::gcd_hooked(&f, &g)?;
            let t = g.div_rem_monic(&h).0;
            if !t.is_one() {
                out.push((t, j));
            }
            g = h;
            j += 1;
        }
        Ok(out)
    }

    /// Largest `k` with `g^k | h` (repeated exact division). `g` must be monic
    /// of positive degree and `h` nonzero.
    pub fn ord(h: &Self, g: &Self) -> u32 {
        assert!(!h.is_zero(), "ord of the zero polynomial");
        assert!(g.is_monic() && g.degree() >= Some(1), "ord needs a monic g of positive degree");
        let mut k = 0;
        let mut cur = h.clone();
        loop {
            let (q, r) = cur.div_rem_monic(g);
            if !r.is_zero() {
                return k;
            }
            cur = q;
            k += 1;
        }
    }
}

