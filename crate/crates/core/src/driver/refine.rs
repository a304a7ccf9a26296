use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};

/// Largest `k` and root `r` with `b = r^k`.
pub fn perfect_root(b: &BigInt) -> (BigInt, u32) {
    let mut base = b.clone();
    let mut mult = 1u32;
    let mut k = 2u32;
    while base.bits() > k as u64 {
        if num_prime::nt_funcs::is_prime64(k as u64) {
            let r = base.nth_root(k);
            if Pow::pow(&r, k) == base {
                base = r;
                mult *= k;
                continue;
            }
        }
        k += 1;
    }
    (base, mult)
}

/// Refines a factored product into pairwise coprime bases that are not perfect
/// powers. The product of `base^exponent` is preserved; output is sorted by base.
pub fn coprime_base(parts: Vec<(BigInt, u32)>) -> Vec<(BigInt, u32)> {
    let mut v: Vec<(BigInt, u32)> = parts.into_iter().filter(|(b, _)| !b.is_one()).collect();
    'outer: loop {
        v.sort();
        let mut merged: Vec<(BigInt, u32)> = Vec::with_capacity(v.len());
        for (b, e) in v.drain(..) {
            match merged.last_mut() {
                Some((lb, le)) if *lb == b => *le += e,
                _ => merged.push((b, e)),
            }
        }
        v = merged;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let g = v[i].0.gcd(&v[j].0);
                if g.is_one() {
                    continue;
                }
                let (bi, ei) = v[i].clone();
                let (bj, ej) = v.swap_remove(j);
                v.swap_remove(i);
                v.push((&bi / &g, ei));
                v.push((&bj / &g, ej));
                v.push((g, ei + ej));
                v.retain(|(b, _)| !b.is_one());
                continue 'outer;
            }
        }
        break;
    }
    let mut out: Vec<(BigInt, u32)> = v
        .into_iter()
        .map(|(b, e)| {
            let (r, k) = perfect_root(&b);
            (r, e * k)
        })
        .collect();
    out.sort();
    out
}

/// Splits `current` at `new_divisor` and refines to a coprime base.
///
/// Panics unless `new_divisor` is a proper divisor of some entry.
pub fn coprime_refine(current: &[BigInt], new_divisor: &BigInt) -> Vec<(BigInt, u32)> {
    let d = new_divisor;
    let pos = current
        .iter()
        .position(|m| d > &BigInt::one() && d < m && m.is_multiple_of(d))
        .expect("coprime_refine: divisor must properly divide an entry");
    let mut parts: Vec<(BigInt, u32)> = current.iter().map(|m| (m.clone(), 1)).collect();
    let m = parts.swap_remove(pos).0;
    parts.push((&m / d, 1));
    parts.push((d.clone(), 1));
    coprime_base(parts)
}

/// `prod base^exponent`.
pub fn expand(parts: &[(BigInt, u32)]) -> BigInt {
    parts.iter().map(|(b, e)| Pow::pow(b, *e)).product()
}
