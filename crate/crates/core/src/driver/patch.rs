use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::basis::ModuleBasis;
use crate::error::Error;

/// `M_1 + ... + M_k + Z[theta]` over the common denominator `prod D_i`.
pub fn patch_bases(parts: &[(BigInt, ModuleBasis)], n: usize) -> Result<ModuleBasis, Error> {
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if !parts[i].0.gcd(&parts[j].0).is_one() {
                return Err(Error::Contract(format!(
                    "patch_bases: moduli {} and {} are not coprime",
                    parts[i].0, parts[j].0
                )));
            }
        }
    }
    let d: BigInt = parts.iter().map(|(_, m)| m.denominator.clone()).product();
    let mut rows = Vec::with_capacity((parts.len() + 1) * n);
    for (_, m) in parts {
        let scale = &d / &m.denominator;
        rows.extend(m.rows.iter().map(|r| r.iter().map(|x| x * &scale).collect::<Vec<_>>()));
    }
    for i in 0..n {
        let mut r = vec![BigInt::zero(); n];
        r[i] = d.clone();
        rows.push(r);
    }
    Ok(ModuleBasis::from_rows(d, &rows, n))
}
