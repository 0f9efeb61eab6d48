use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::FieldCtx;

use super::{PolyRing, Polynomial};

pub const MAX_CYCLOTOMIC_ORDER: u64 = 4096;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `Φ_m(x)` reduced mod `q`, by dividing `x^k - 1` by the cyclotomic
/// polynomials of the proper divisors of `k`, for each divisor `k` of `m` in
/// increasing order.
pub fn cyclotomic_poly(m: u64, ctx: &FieldCtx) -> Result<Polynomial> {
    let q = ctx.q();
    if m == 0 || m > MAX_CYCLOTOMIC_ORDER || gcd(m, q) != 1 {
        return Err(Error::BadModulus { m, q, limit: MAX_CYCLOTOMIC_ORDER });
    }
    let ring = PolyRing::new(ctx);
    let divisors: Vec<u64> = (1..=m).filter(|k| m % k == 0).collect();
    let mut known: BTreeMap<u64, Polynomial> = BTreeMap::new();
    for &k in &divisors {
        let lower: Vec<Polynomial> = known.iter().filter(|(&j, _)| k % j == 0).map(|(_, p)| p.clone()).collect();
        let denom = ring.product(&lower);
        let phi = ring.div_exact(&Polynomial::x_pow_minus_one(ctx, k as usize), &denom)?;
        known.insert(k, phi);
    }
    Ok(known.remove(&m).expect("m divides itself"))
}
