//! Residue arithmetic in `A = Z/NZ` with divisor-detecting primitives.
//!
//! `N` is never assumed prime. Whenever an operation needs a unit and meets a
//! zero divisor instead, it returns a [`Hook`] carrying a proper divisor of `N`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::modpoly::ModPolynomial;
use crate::poly::{CoeffRing, HookedRing};

/// Structural information surrendered by a failed unit test.
#[derive(Clone, Debug, PartialEq)]
pub enum Hook {
    /// A proper divisor `d` of the modulus, `1 < d < N`.
    DivisorOfN(BigInt),
    /// A monic proper factor of the polynomial defining an extension ring.
    FactorOfG(ModPolynomial),
}

impl fmt::Display for Hook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hook::DivisorOfN(d) => write!(f, "proper divisor {d} of the modulus"),
            Hook::FactorOfG(h) => write!(f, "proper factor {h:?} of the extension polynomial"),
        }
    }
}

/// Either a value or the hook that interrupted its computation.
pub type HookOutcome<T> = Result<T, Hook>;

/// An `N`-adic ordinate: a non-negative integer or the value of `v_N(0)`.
///
/// `Infinity` orders above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ordinate {
    Finite(u32),
    Infinity,
}

impl Ordinate {
    pub fn finite(self) -> Option<u32> {
        match self {
            Ordinate::Finite(k) => Some(k),
            Ordinate::Infinity => None,
        }
    }
}

#[derive(Debug)]
struct ModulusInner {
    modulus: BigInt,
    degree_bound: usize,
    small_primes_stripped: bool,
}

/// The modulus `N >= 2` and the ring `A = Z/NZ`.
///
/// Cloning is cheap; all clones share one allocation.
#[derive(Clone)]
pub struct ModulusContext(Arc<ModulusInner>);

impl fmt::Debug for ModulusContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}Z", self.0.modulus)
    }
}

impl PartialEq for ModulusContext {
    fn eq(&self, other: &Self) -> bool {
        self.0.modulus == other.0.modulus
    }
}

impl ModulusContext {
    pub fn new(modulus: BigInt) -> Result<Self, Error> {
        Self::with_degree_bound(modulus, 0)
    }

    /// Builds the context and records whether every prime divisor of `N`
    /// exceeds `degree_bound` (checked by trial division up to the bound).
    pub fn with_degree_bound(modulus: BigInt, degree_bound: usize) -> Result<Self, Error> {
        if modulus < BigInt::from(2) {
            return Err(Error::InvalidInput(format!("modulus must be at least 2, got {modulus}")));
        }
        let small_primes_stripped =
            (2..=degree_bound as u64).all(|p| !(&modulus % p).is_zero());
        Ok(ModulusContext(Arc::new(ModulusInner {
            modulus,
            degree_bound,
            small_primes_stripped,
        })))
    }

    pub fn modulus(&self) -> &BigInt {
        &self.0.modulus
    }

    pub fn degree_bound(&self) -> usize {
        self.0.degree_bound
    }

    /// True when no prime up to the degree bound divides `N`.
    pub fn small_primes_stripped(&self) -> bool {
        self.0.small_primes_stripped
    }

    /// Canonical lift in `[0, N)`.
    pub fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.0.modulus)
    }

    pub fn residue(&self, a: &BigInt) -> Residue {
        Residue { value: self.reduce(a), ctx: self.clone() }
    }

    /// The positive divisor `m | N` with `a = m * unit`; `N` for `a = 0`.
    pub fn gcd_with_modulus(&self, a: &BigInt) -> BigInt {
        self.reduce(a).gcd(&self.0.modulus)
    }

    /// Inverse of `a`, or the divisor `gcd(a, N)` when `a` is not a unit.
    ///
    /// Panics if `a = 0` in `A`.
    pub fn invert_or_divisor(&self, a: &BigInt) -> HookOutcome<BigInt> {
        let a = self.reduce(a);
        assert!(!a.is_zero(), "invert_or_divisor: zero has no inverse");
        let e = a.extended_gcd(&self.0.modulus);
        if e.gcd.is_one() {
            Ok(self.reduce(&e.x))
        } else {
            Err(Hook::DivisorOfN(e.gcd))
        }
    }

    /// `N`-adic valuation with a hook: `k` with `|a| = N^k b`, `gcd(b, N) = 1`,
    /// or the divisor `gcd(r, N)` of the first nonzero remainder `r`.
    ///
    /// Panics if `a = 0`; see [`ModulusContext::valuation`] for the total version.
    pub fn val_n(&self, a: &BigInt) -> HookOutcome<u32> {
        assert!(!a.is_zero(), "val_n: v_N(0) is infinite");
        let n = &self.0.modulus;
        let mut q = a.abs();
        let mut k = 0u32;
        loop {
            let (q1, r) = q.div_rem(n);
            if !r.is_zero() {
                let d = r.gcd(n);
                return if d.is_one() { Ok(k) } else { Err(Hook::DivisorOfN(d)) };
            }
            q = q1;
            k += 1;
        }
    }

    /// [`ModulusContext::val_n`] extended by `v_N(0) = Infinity`.
    pub fn valuation(&self, a: &BigInt) -> HookOutcome<Ordinate> {
        if a.is_zero() {
            Ok(Ordinate::Infinity)
        } else {
            self.val_n(a).map(Ordinate::Finite)
        }
    }
}

impl CoeffRing for ModulusContext {
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
        let s = a + b;
        if s >= self.0.modulus {
            s - &self.0.modulus
        } else {
            s
        }
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a - b;
        if s.is_negative() {
            s + &self.0.modulus
        } else {
            s
        }
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        if a.is_zero() {
            a.clone()
        } else {
            &self.0.modulus - a
        }
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) % &self.0.modulus
    }
    fn embed(&self, n: &BigInt) -> BigInt {
        self.reduce(n)
    }
}

impl HookedRing for ModulusContext {
    fn inverse(&self, a: &BigInt) -> HookOutcome<BigInt> {
        self.invert_or_divisor(a)
    }
}

/// An element of `Z/NZ`, stored as its canonical lift.
#[derive(Clone, Debug, PartialEq)]
pub struct Residue {
    value: BigInt,
    ctx: ModulusContext,
}

impl Residue {
    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn context(&self) -> &ModulusContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn mul(&self, other: &Residue) -> Residue {
        Residue { value: self.ctx.mul(&self.value, &other.value), ctx: self.ctx.clone() }
    }

    pub fn gcd_with_modulus(&self) -> BigInt {
        self.ctx.gcd_with_modulus(&self.value)
    }

    pub fn invert_or_divisor(&self) -> HookOutcome<Residue> {
        self.ctx
            .invert_or_divisor(&self.value)
            .map(|value| Residue { value, ctx: self.ctx.clone() })
    }
}
