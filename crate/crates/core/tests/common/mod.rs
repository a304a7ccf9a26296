//! Independent oracles shared by the integration suites: small prime-field
//! polynomial arithmetic, a Berkowitz characteristic polynomial, a brute-force
//! local maximal order, and generators for test fields.

#![allow(dead_code)]


use std::collections::BTreeMap;
use std::fmt::Debug;

use nbasis::driver::{self, Mode, RunConfig, RunReport, Status};
use nbasis::basis::ModuleBasis;
use nbasis::newton::NumberFieldInput;
use nbasis::{IntPolynomial, ModPolynomial, ModulusContext};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

// ---------------------------------------------------------------- fixtures

pub struct WorkedExample {
    pub p: BigInt,
    pub q: BigInt,
    pub a: BigInt,
    pub f: NumberFieldInput,
    pub b: BigInt,
    pub b_prime: BigInt,
}

pub const WORKED_B: &str = "112256427919169602951704061945106107497185115424039980350061529421722938869723676007941839422932978008036753065979";
pub const WORKED_B_PRIME: &str = "258638809925766765200726158721524471675212789912561680483792872992197630558791833856045295665609912136344999241131327";

/// `b` and `b'` with one interior digit dropped.
pub const WORKED_B_TRUNCATED: &str = "11225642791916960295170406194510610749718511542403998035006152942172293886972367007941839422932978008036753065979";
pub const WORKED_B_PRIME_TRUNCATED: &str = "25863880992576676520072615872152447167521789912561680483792872992197630558791833856045295665609912136344999241131327";

pub fn worked_example() -> WorkedExample {
    let p = BigInt::from(281474976710677u64);
    let q = BigInt::from(1099511627791u64);
    let a = &p * &q * &q;
    let g = IntPolynomial::from_ints([2, 1, 1]);
    let shift = IntPolynomial::from_ints([&a * (&a - 1)]);
    let c = IntPolynomial::from_ints([BigInt::from(4) * &a * &a * &a]);
    let f = NumberFieldInput::new(g.mul(&g).mul(&g.add(&shift)).sub(&c)).unwrap();
    WorkedExample { p, q, a, f, b: WORKED_B.parse().unwrap(), b_prime: WORKED_B_PRIME.parse().unwrap() }
}

/// `(x-1)^2 (x-2)^2 + 7^2 (2(x-1) + 7^2)`, irreducible; at 7 the residual
/// polynomial attached to the factor `x - 1` is a square.
pub fn non_regular_quartic() -> NumberFieldInput {
    NumberFieldInput::new(IntPolynomial::from_ints([2307, 86, 13, -6, 1])).unwrap()
}

pub fn nf(v: &[i64]) -> NumberFieldInput {
    NumberFieldInput::new(IntPolynomial::from_ints(v.iter().copied())).unwrap()
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

// ---------------------------------------------------------- integer helpers

pub fn small_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..hi).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Trial-division factorization of a small positive integer.
pub fn factor_small(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut d = 2;
    while d * d <= n {
        while u64::is_multiple_of(n, d) {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

pub fn valuation(a: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut a = a.abs();
    let mut k = 0;
    while !a.is_zero() && a.is_multiple_of(&p) {
        a /= &p;
        k += 1;
    }
    k
}

// -------------------------------------------------------- field polynomials

/// A finite field given by its operations; elements are plain values.
pub trait Field: Clone + Debug {
    type E: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn of_u64(&self, n: u64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool {
        *a == self.zero()
    }
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fp(pub u64);

impl Field for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(!u64::is_multiple_of(*a, self.0), "inverse of zero");
        // Fermat
        let mut r = 1u64;
        let mut b = *a % self.0;
        let mut e = self.0 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }
    fn of_u64(&self, n: u64) -> u64 {
        n % self.0
    }
}

/// `F_p[x]/(phi)` for an irreducible monic `phi`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fq {
    pub base: Fp,
    pub phi: Vec<u64>,
}

impl Field for Fq {
    type E = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        Vec::new()
    }
    fn one(&self) -> Vec<u64> {
        vec![1]
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        padd(&self.base, a, b)
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        pneg(&self.base, a)
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        pdivrem(&self.base, &pmul(&self.base, a, b), &self.phi).1
    }
    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        let (d, s, _) = pxgcd(&self.base, a, &self.phi);
        assert_eq!(d, vec![1], "inverse of a non-unit");
        pdivrem(&self.base, &s, &self.phi).1
    }
    fn of_u64(&self, n: u64) -> Vec<u64> {
        trim(&self.base, vec![n % self.base.0])
    }
}

pub fn trim<F: Field>(k: &F, mut a: Vec<F::E>) -> Vec<F::E> {
    while a.last().is_some_and(|c| k.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn padd<F: Field>(k: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let n = a.len().max(b.len());
    let z = k.zero();
    trim(k, (0..n).map(|i| k.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
}

pub fn pneg<F: Field>(k: &F, a: &[F::E]) -> Vec<F::E> {
    a.iter().map(|c| k.neg(c)).collect()
}

pub fn psub<F: Field>(k: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    padd(k, a, &pneg(k, b))
}

pub fn pmul<F: Field>(k: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, out)
}

pub fn pscale<F: Field>(k: &F, a: &[F::E], c: &F::E) -> Vec<F::E> {
    trim(k, a.iter().map(|x| k.mul(x, c)).collect())
}

pub fn pdivrem<F: Field>(k: &F, a: &[F::E], b: &[F::E]) -> (Vec<F::E>, Vec<F::E>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(k, a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = k.inv(b.last().unwrap());
    let mut q = vec![k.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let s = r.len() - b.len();
        let c = k.mul(r.last().unwrap(), &inv);
        for (i, bc) in b.iter().enumerate() {
            r[s + i] = k.sub(&r[s + i], &k.mul(&c, bc));
        }
        q[s] = c;
        r = trim(k, r);
    }
    (trim(k, q), r)
}

pub fn monic<F: Field>(k: &F, a: &[F::E]) -> Vec<F::E> {
    match a.last() {
        None => Vec::new(),
        Some(l) => pscale(k, a, &k.inv(l)),
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn pgcd<F: Field>(k: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let (mut a, mut b) = (trim(k, a.to_vec()), trim(k, b.to_vec()));
    while !b.is_empty() {
        let r = pdivrem(k, &a, &b).1;
        a = b;
        b = r;
    }
    monic(k, &a)
}

type Poly<F> = Vec<<F as Field>::E>;

/// `(d, s, t)` with `s a + t b = d` monic.
pub fn pxgcd<F: Field>(k: &F, a: &[F::E], b: &[F::E]) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (trim(k, a.to_vec()), trim(k, b.to_vec()));
    let (mut s0, mut s1) = (vec![k.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![k.one()]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(k, &r0, &r1);
        let s2 = psub(k, &s0, &pmul(k, &q, &s1));
        let t2 = psub(k, &t0, &pmul(k, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = k.inv(r0.last().unwrap());
    (pscale(k, &r0, &inv), pscale(k, &s0, &inv), pscale(k, &t0, &inv))
}

pub fn pderiv<F: Field>(k: &F, a: &[F::E]) -> Vec<F::E> {
    trim(k, a.iter().enumerate().skip(1).map(|(i, c)| k.mul(&k.of_u64(i as u64), c)).collect())
}

/// Canonical squarefree decomposition by Yun's algorithm (characteristic
/// larger than the degree). Factors are monic, exponents increasing.
pub fn psfd<F: Field>(k: &F, f: &[F::E]) -> Vec<(Vec<F::E>, u32)> {
    let f = monic(k, f);
    let mut out = Vec::new();
    let df = pderiv(k, &f);
    let a0 = pgcd(k, &f, &df);
    let mut b = pdivrem(k, &f, &a0).0;
    let mut c = pdivrem(k, &df, &a0).0;
    let mut d = psub(k, &c, &pderiv(k, &b));
    let mut i = 1;
    while b.len() > 1 {
        let a = pgcd(k, &b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = pdivrem(k, &b, &a).0;
        c = pdivrem(k, &d, &a).0;
        d = psub(k, &c, &pderiv(k, &b));
        i += 1;
    }
    out
}

pub fn ppow<F: Field>(k: &F, a: &[F::E], e: u32) -> Vec<F::E> {
    (0..e).fold(vec![k.one()], |acc, _| pmul(k, &acc, a))
}

/// Rabin-style irreducibility over `F_p` for monic `f`.
pub fn irreducible_mod_p(p: u64, f: &[u64]) -> bool {
    let k = Fp(p);
    let f = trim(&k, f.to_vec());
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    // gcd(x^{p^i} - x, f) = 1 for all i <= n/2
    let mut cur = vec![0u64, 1];
    for _ in 1..=n / 2 {
        // cur <- cur^p mod f
        let mut r = vec![1u64];
        let mut b = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                r = pdivrem(&k, &pmul(&k, &r, &b), &f).1;
            }
            b = pdivrem(&k, &pmul(&k, &b, &b), &f).1;
            e >>= 1;
        }
        cur = r;
        let g = pgcd(&k, &psub(&k, &cur, &[0, 1]), &f);
        if g.len() > 1 {
            return false;
        }
    }
    pgcd(&k, &f, &pderiv(&k, &f)).len() == 1
}

pub fn reduce_mod_p(f: &IntPolynomial, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    trim(&Fp(p), f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

pub fn mod_poly_to_fp(f: &ModPolynomial, p: u64) -> Vec<u64> {
    reduce_mod_p(&IntPolynomial::lift(f), p)
}

/// True if `f` is irreducible modulo some prime below 200 (hence over `Z`).
pub fn certified_irreducible(f: &IntPolynomial) -> bool {
    small_primes(2, 200).into_iter().any(|p| irreducible_mod_p(p, &reduce_mod_p(f, p)))
}

// ------------------------------------------------------------ integer algebra

/// Characteristic polynomial by Berkowitz' division-free algorithm,
/// degree-ascending.
pub fn berkowitz(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    // v holds the char poly of the leading r x r block, degree-descending
    let mut v = vec![BigInt::one()];
    v.push(-a[0][0].clone());
    for r in 1..n {
        // Toeplitz column for the (r+1) x (r+1) block
        let rrow: Vec<BigInt> = (0..r).map(|j| a[r][j].clone()).collect();
        let scol: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        let mut t = vec![BigInt::one(), -a[r][r].clone()];
        let mut cur = scol.clone();
        for _ in 0..r {
            let val: BigInt = rrow.iter().zip(&cur).map(|(x, y)| x * y).sum();
            t.push(-val);
            cur = (0..r).map(|i| (0..r).map(|j| &a[i][j] * &cur[j]).sum()).collect();
        }
        let mut nv = vec![BigInt::zero(); r + 2];
        for (i, ti) in t.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i + j < r + 2 {
                    nv[i + j] += ti * vj;
                }
            }
        }
        v = nv;
    }
    v.reverse();
    v
}

/// Multiplication-by-`h(theta)` matrix, row `k` the coordinates of `h theta^k`.
pub fn mult_matrix(h: &IntPolynomial, f: &NumberFieldInput) -> Vec<Vec<BigInt>> {
    let n = f.degree();
    let mut cur = h.rem_monic(f.poly());
    let mut rows = Vec::new();
    for _ in 0..n {
        rows.push((0..n).map(|i| cur.coeff(i)).collect());
        cur = cur.shift(1).rem_monic(f.poly());
    }
    rows
}

/// `h(theta)/d` integral, decided through the Berkowitz characteristic polynomial.
pub fn is_integral(h: &IntPolynomial, d: &BigInt, f: &NumberFieldInput) -> bool {
    let cp = berkowitz(&mult_matrix(h, f));
    let n = f.degree();
    let mut dk = BigInt::one();
    (1..=n).all(|k| {
        dk *= d;
        cp[n - k].is_multiple_of(&dk)
    })
}

/// Every element of a module basis is integral.
pub fn module_is_integral(m: &ModuleBasis, f: &NumberFieldInput) -> bool {
    m.elements().iter().all(|e| is_integral(e, &m.denominator, f))
}

/// The `p`-maximal order containing `Z[theta]`, by brute-force saturation:
/// repeatedly adjoin `y/p` for integral `y/p` with `y` in `M/pM`.
pub fn brute_p_maximal(f: &NumberFieldInput, p: u64) -> ModuleBasis {
    let n = f.degree();
    let pb = BigInt::from(p);
    let mut m = ModuleBasis::power_basis(n);
    'grow: loop {
        let total = (p as usize).pow(n as u32);
        for idx in 1..total {
            let mut digits = Vec::with_capacity(n);
            let mut t = idx;
            for _ in 0..n {
                digits.push(BigInt::from((t % p as usize) as u64));
                t /= p as usize;
            }
            // y = sum digits_i * w_i, w_i = rows_i / D
            let mut y = vec![BigInt::zero(); n];
            for (c, row) in digits.iter().zip(&m.rows) {
                for (yi, ri) in y.iter_mut().zip(row) {
                    *yi += c * ri;
                }
            }
            let yp = IntPolynomial::from_ints(y.iter().cloned());
            if is_integral(&yp, &(&m.denominator * &pb), f) {
                let mut rows = m.rows.iter().map(|r| r.iter().map(|x| x * &pb).collect()).collect::<Vec<_>>();
                rows.push(y);
                let next = ModuleBasis::from_rows(&m.denominator * &pb, &rows, n);
                if next != m {
                    m = next;
                    continue 'grow;
                }
            }
        }
        return m;
    }
}

/// `p`-part of the index: the `p`-valuation of `(M : Z[theta])`.
pub fn index_valuation(m: &ModuleBasis, p: u64) -> i64 {
    let idx = m.index_over_order();
    valuation(idx.numer(), p) as i64 - valuation(idx.denom(), p) as i64
}

// ------------------------------------------------------------- generators

/// A monic integer polynomial of degree `deg g` whose reduction mod `m` is `g mod m`.
pub fn random_monic(rng: &mut impl Rng, deg: usize, bound: i64) -> IntPolynomial {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    c.push(1);
    IntPolynomial::from_ints(c)
}

/// `G^l H + sum_{j<l} N^{e_j} c_j G^j` with random small data: typically has an
/// interesting principal polygon at every prime of `N`.
pub fn random_polygon_field(rng: &mut impl Rng, n_mod: &BigInt, deg: usize) -> IntPolynomial {
    loop {
        let dg = if deg >= 4 && rng.gen_bool(0.3) { 2 } else { 1 };
        let max_l = deg / dg;
        let l = rng.gen_range(1..=max_l);
        let dh = deg - l * dg;
        let g = random_monic(rng, dg, 5);
        let h = random_monic(rng, dh, 5);
        let mut f = g.pow(l as u32).mul(&h);
        for j in 0..l {
            let e = rng.gen_range(1..=3u32);
            let c = IntPolynomial::from_ints((0..dg).map(|_| rng.gen_range(-4i64..=4)));
            let term = c.mul(&g.pow(j as u32)).mul(&IntPolynomial::from_ints([num_traits::pow(n_mod.clone(), e as usize)]));
            f = f.add(&term);
        }
        if f.degree() == Some(deg) && f.is_monic() {
            return f;
        }
    }
}

pub fn run_explicit(f: &NumberFieldInput, n: &BigInt) -> RunReport {
    driver::run(f, &RunConfig::new(Mode::Explicit(n.clone()))).unwrap()
}

/// Patches the independent prime-modulus runs; `None` if any is not `ok`.
pub fn patch_prime_runs(f: &NumberFieldInput, primes: &[u64]) -> Option<ModuleBasis> {
    let mut parts = Vec::new();
    for &p in primes {
        let rep = run_explicit(f, &BigInt::from(p));
        if rep.status != Status::Ok {
            return None;
        }
        parts.push((BigInt::from(p), rep.patched.unwrap()));
    }
    Some(driver::patch_bases(&parts, f.degree()).unwrap())
}

/// Reduction of a residue polynomial modulo a prime divisor of its modulus.
pub fn red_p(ctx_p: &ModulusContext, a: &ModPolynomial) -> ModPolynomial {
    IntPolynomial::lift(a).reduce(ctx_p)
}
