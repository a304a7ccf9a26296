use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::refine::{coprime_base, perfect_root};
use crate::error::Error;

/// Integers asserted squarefree by the caller, checked for consistency on construction.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Hints {
    values: Vec<BigInt>,
}

const HINT_SQUARE_BOUND: u64 = 10_000;

impl Hints {
    /// Rejects hints that are `<= 1`, not pairwise coprime, perfect powers, or
    /// divisible by `p^2` for a prime `p` below a trial bound.
    pub fn new(values: Vec<BigInt>) -> Result<Self, Error> {
        let small = num_prime::nt_funcs::primes(HINT_SQUARE_BOUND);
        for (i, h) in values.iter().enumerate() {
            if h <= &BigInt::one() {
                return Err(Error::InvalidInput(format!("hint {h} must exceed 1")));
            }
            if perfect_root(h).1 > 1 {
                return Err(Error::InvalidInput(format!("hint {h} is a perfect power")));
            }
            if let Some(p) = small.iter().find(|&&p| h.is_multiple_of(&BigInt::from(p * p))) {
                return Err(Error::InvalidInput(format!("hint {h} is divisible by {p}^2")));
            }
            if let Some(o) = values[..i].iter().find(|o| !o.gcd(h).is_one()) {
                return Err(Error::InvalidInput(format!("hints {o} and {h} are not coprime")));
            }
        }
        Ok(Hints { values })
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Work limits for the factoring backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorBudget {
    /// Iterations per Pollard rho attempt.
    pub rho_iterations: usize,
    /// Rho attempts (distinct polynomial offsets) per composite.
    pub rho_attempts: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { rho_iterations: 1 << 20, rho_attempts: 4 }
    }
}

/// The backend gave up on this cofactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unfactored(pub BigInt);

fn to_biguint(x: &BigInt) -> BigUint {
    x.to_biguint().expect("positive")
}

/// Prime factorization within the budget. Primality is BPSW probable-prime.
pub fn factor_integer(m: &BigInt, budget: &FactorBudget) -> Result<BTreeMap<BigInt, u32>, Unfactored> {
    assert!(m >= &BigInt::one(), "factor_integer: positive input required");
    let mut out = BTreeMap::new();
    let add = |p: BigInt, k: u32, out: &mut BTreeMap<BigInt, u32>| *out.entry(p).or_insert(0) += k;
    if let Some(small) = m.to_u64() {
        for (p, k) in num_prime::nt_funcs::factorize64(small) {
            add(BigInt::from(p), k as u32, &mut out);
        }
        return Ok(out);
    }
    let (found, rest) = num_prime::factor::trial_division(
        num_prime::nt_funcs::primes(10_000).into_iter(),
        to_biguint(m),
        None,
    );
    for (p, k) in found {
        add(BigInt::from(p), k as u32, &mut out);
    }
    let rest = match rest {
        Ok(r) | Err(r) => BigInt::from_biguint(Sign::Plus, r),
    };
    let mut stack = vec![(rest, 1u32)];
    while let Some((c, mult)) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if let Some(small) = c.to_u64() {
            for (p, k) in num_prime::nt_funcs::factorize64(small) {
                add(BigInt::from(p), k as u32 * mult, &mut out);
            }
            continue;
        }
        let cu = to_biguint(&c);
        if num_prime::nt_funcs::is_prime(&cu, None).probably() {
            add(c, mult, &mut out);
            continue;
        }
        let (r, k) = perfect_root(&c);
        if k > 1 {
            stack.push((r, mult * k));
            continue;
        }
        let split = (1..=budget.rho_attempts).find_map(|offset| {
            let (d, _) = num_prime::factor::pollard_rho(
                &cu,
                BigUint::from(2u32),
                BigUint::from(offset),
                budget.rho_iterations,
            );
            d.filter(|d| !d.is_one() && d != &cu)
        });
        match split {
            Some(d) => {
                let d = BigInt::from_biguint(Sign::Plus, d);
                let q = &c / &d;
                stack.push((d, mult));
                stack.push((q, mult));
            }
            None => return Err(Unfactored(c)),
        }
    }
    Ok(out)
}

/// `m = prod s_j^{e_j}` with `s_j` squarefree and pairwise coprime, exponents increasing.
///
/// Bases dividing a hint are accepted as squarefree; the rest go to the backend.
pub fn squarefree_factor_int(
    m: &BigInt,
    hints: &Hints,
    budget: &FactorBudget,
) -> Result<Vec<(BigInt, u32)>, Unfactored> {
    assert!(m > &BigInt::one(), "squarefree_factor_int: m must exceed 1");
    let mut parts = coprime_base(vec![(m.clone(), 1)]);
    loop {
        let mut changed = false;
        for h in hints.values() {
            let mut next = Vec::with_capacity(parts.len() + 1);
            for (b, e) in parts.drain(..) {
                let g = b.gcd(h);
                if !g.is_one() && g != b {
                    next.push((&b / &g, e));
                    next.push((g, e));
                    changed = true;
                } else {
                    next.push((b, e));
                }
            }
            parts = coprime_base(next);
        }
        if !changed {
            break;
        }
    }
    let mut groups: BTreeMap<u32, BigInt> = BTreeMap::new();
    let mut put = |e: u32, s: BigInt| {
        let slot = groups.entry(e).or_insert_with(BigInt::one);
        *slot *= s;
    };
    for (b, e) in parts {
        if hints.values().iter().any(|h| h.is_multiple_of(&b)) {
            put(e, b);
            continue;
        }
        for (p, k) in factor_integer(&b, budget)? {
            put(e * k, p);
        }
    }
    Ok(groups.into_iter().filter(|(_, s)| !s.is_zero()).map(|(e, s)| (s, e)).collect())
}
