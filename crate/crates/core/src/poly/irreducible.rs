//! Irreducibility over `F_q`: Rabin's test, plus closed-form criteria for
//! binomials `x^l - a` and compositions `g(x^k)`.

use crate::error::{Error, Result};
use crate::field::{distinct_prime_factors, factorize, FieldCtx, Fq};

use super::frobenius::Frobenius;
use super::{PolyRing, Polynomial};

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_input(f: &Polynomial) -> Result<()> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    Ok(())
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(q^n) = x (mod f)`
/// and `gcd(x^(q^(n/p)) - x, f) = 1` for every prime `p | n`.
pub fn is_irreducible_generic(f: &Polynomial, ctx: &FieldCtx) -> Result<bool> {
    check_input(f)?;
    let n = f.deg();
    if n == 1 {
        return Ok(true);
    }
    if f.coeff(0).is_zero() {
        return Ok(false);
    }
    let ring = PolyRing::new(ctx);
    let primes = distinct_prime_factors(n as u64);
    let frob = Frobenius::new(&ring, f, n);
    let x = ring.rem(&Polynomial::x(), f)?;
    let mut h = x.clone();
    for i in 1..=n {
        h = frob.apply(&h);
        if primes.iter().any(|&p| n / p as usize == i) {
            let g = ring.gcd(&ring.sub(&h, &x), f);
            if !g.is_one() {
                return Ok(false);
            }
        }
    }
    Ok(h == x)
}

/// Criterion for `x^l - a` with `a ≠ 0` of order `k`: irreducible iff every
/// prime factor of `l` divides `k` but not `(q-1)/k`, and `4 | l` implies
/// `4 | q-1`.
pub fn binomial_irreducible(ctx: &FieldCtx, l: u64, a: Fq) -> bool {
    if l == 1 {
        return true;
    }
    if a.is_zero() {
        return false;
    }
    let k = ctx.element_order(a).expect("nonzero");
    if k == 1 {
        return false;
    }
    let cofactor = (ctx.q() - 1) / k;
    let primes_ok = distinct_prime_factors(l).into_iter().all(|p| k % p == 0 && cofactor % p != 0);
    primes_ok && (l % 4 != 0 || (ctx.q() - 1) % 4 == 0)
}

/// Factorization of `q^l - 1` when it is cheap to get.
fn group_order_factors(q: u64, l: usize) -> Option<(u64, Vec<u64>)> {
    match l {
        1 => Some((q - 1, distinct_prime_factors(q - 1))),
        2 => {
            let mut ps = distinct_prime_factors(q - 1);
            ps.extend(distinct_prime_factors(q + 1));
            ps.sort_unstable();
            ps.dedup();
            Some(((q - 1).checked_mul(q + 1)?, ps))
        }
        _ => {
            let n = q.checked_pow(l as u32)?.checked_sub(1)?;
            (n < 1 << 40).then(|| (n, factorize(n).into_iter().map(|(p, _)| p).collect()))
        }
    }
}

/// Order of `x` modulo the irreducible `g` (equivalently, of any root of
/// `g`), or `None` when `q^deg(g) - 1` is too large to factor here.
pub fn order_of_root(g: &Polynomial, ctx: &FieldCtx) -> Option<u64> {
    let l = g.deg();
    if l == 0 || g.coeff(0).is_zero() {
        return None;
    }
    let (mut order, primes) = group_order_factors(ctx.q(), l)?;
    let ring = PolyRing::new(ctx);
    let x = Polynomial::x();
    let one = ring.rem(&Polynomial::one(), g).ok()?;
    if ring.powmod(&x, order as u128, g) != one {
        return None;
    }
    for p in primes {
        while order % p == 0 && ring.powmod(&x, (order / p) as u128, g) == one {
            order /= p;
        }
    }
    Some(order)
}

/// Criterion for `g(x^k)` with `g` irreducible of degree `l`, `g(0) ≠ 0` and
/// root order `e`: irreducible iff every prime factor of `k` divides `e`,
/// `gcd(k, (q^l - 1)/e) = 1`, and `4 | k` implies `4 | q^l - 1`.
///
/// Returns `None` when the root order cannot be computed cheaply.
pub fn composed_irreducible(g: &Polynomial, k: u64, ctx: &FieldCtx) -> Result<Option<bool>> {
    check_input(g)?;
    if g.coeff(0).is_zero() {
        return Ok(Some(k == 1 && g.deg() == 1));
    }
    if !is_irreducible_generic(g, ctx)? {
        return Ok(Some(false));
    }
    if k == 1 {
        return Ok(Some(true));
    }
    let l = g.deg();
    let Some((group, _)) = group_order_factors(ctx.q(), l) else {
        return Ok(None);
    };
    let Some(e) = order_of_root(g, ctx) else {
        return Ok(None);
    };
    let primes_ok = distinct_prime_factors(k).into_iter().all(|p| e % p == 0);
    let coprime = gcd_u64(k, group / e) == 1;
    let four_ok = k % 4 != 0 || group % 4 == 0;
    Ok(Some(primes_ok && coprime && four_ok))
}

/// Irreducibility of a monic `f` of positive degree.
///
/// Binomials and polynomials of the form `g(x^k)` with `deg g <= 2` go
/// through the closed-form criteria; everything else through Rabin's test.
pub fn is_irreducible(f: &Polynomial, ctx: &FieldCtx) -> Result<bool> {
    check_input(f)?;
    let n = f.deg();
    if n == 1 {
        return Ok(true);
    }
    let support: Vec<usize> = f.support().collect();
    if support.len() == 2 && support[0] == 0 {
        return Ok(binomial_irreducible(ctx, n as u64, ctx.neg(f.coeff(0))));
    }
    if f.coeff(0).is_zero() {
        return Ok(false);
    }
    let stride = support.iter().fold(0usize, |g, &i| gcd_u64(g as u64, i as u64) as usize);
    if stride > 1 && n / stride <= 2 {
        let g = Polynomial::from_fq(f.coeffs().iter().step_by(stride).copied().collect());
        if let Some(ans) = composed_irreducible(&g, stride as u64, ctx)? {
            return Ok(ans);
        }
    }
    is_irreducible_generic(f, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::is_prime;

    fn f(q: u64) -> FieldCtx {
        FieldCtx::new(q).unwrap()
    }

    fn poly(ctx: &FieldCtx, c: &[i64]) -> Polynomial {
        Polynomial::from_i64(ctx, c)
    }

    #[test]
    fn examples() {
        let c = f(23);
        // x^4 + 16x^2 - 16
        assert_eq!(is_irreducible(&poly(&c, &[-16, 0, 16, 0, 1]), &c), Ok(true));
        assert_eq!(is_irreducible_generic(&poly(&c, &[-16, 0, 16, 0, 1]), &c), Ok(true));
        for q in [3u64, 7, 11, 19, 23, 31] {
            let c = f(q);
            assert_eq!(is_irreducible(&poly(&c, &[1, 0, 1]), &c), Ok(true));
        }
        // x^4 + γ with γ = 4: 4 does not divide q - 1 = 22
        assert_eq!(is_irreducible(&poly(&c, &[4, 0, 0, 0, 1]), &c), Ok(false));
        assert_eq!(is_irreducible_generic(&poly(&c, &[4, 0, 0, 0, 1]), &c), Ok(false));
    }

    #[test]
    fn input_errors() {
        let c = f(7);
        assert_eq!(is_irreducible(&poly(&c, &[3]), &c), Err(Error::ConstantPolynomial));
        assert_eq!(is_irreducible(&Polynomial::zero(), &c), Err(Error::ConstantPolynomial));
        assert_eq!(is_irreducible(&poly(&c, &[1, 2]), &c), Err(Error::NonMonic));
    }

    fn primes_upto(n: u64) -> impl Iterator<Item = u64> {
        (3..=n).step_by(2).filter(|&q| is_prime(q))
    }

    #[test]
    fn degree_two_and_three_match_root_existence() {
        for q in primes_upto(31) {
            let c = f(q);
            let ring = PolyRing::new(&c);
            for deg in [2usize, 3] {
                let count = q.pow(deg as u32);
                for idx in 0..count {
                    let mut coeffs = Vec::with_capacity(deg + 1);
                    let mut v = idx;
                    for _ in 0..deg {
                        coeffs.push(Fq(v % q));
                        v /= q;
                    }
                    coeffs.push(Fq::ONE);
                    let p = Polynomial::from_fq(coeffs);
                    let has_root = (0..q).any(|x| ring.eval(&p, Fq(x)).is_zero());
                    assert_eq!(is_irreducible_generic(&p, &c), Ok(!has_root), "q={q} {p:?}");
                    assert_eq!(is_irreducible(&p, &c), Ok(!has_root), "q={q} {p:?}");
                }
            }
        }
    }

    #[test]
    fn binomial_criterion_matches_generic() {
        for q in primes_upto(31) {
            let c = f(q);
            for l in 1..=16usize {
                for a in 0..q {
                    let p = Polynomial::binomial(&c, l, Fq(a));
                    let generic = is_irreducible_generic(&p, &c).unwrap();
                    assert_eq!(binomial_irreducible(&c, l as u64, Fq(a)), generic, "q={q} l={l} a={a}");
                }
            }
        }
    }

    #[test]
    fn composition_criterion_matches_generic() {
        for q in [3u64, 5, 7, 11, 13] {
            let c = f(q);
            let ring = PolyRing::new(&c);
            for a in 0..q {
                for b in 1..q {
                    let g = Polynomial::from_fq(vec![Fq(b), Fq(a), Fq::ONE]);
                    for k in [1u64, 2, 3, 4, 6, 8] {
                        let composed = ring.inflate(&g, k as usize);
                        let generic = is_irreducible_generic(&composed, &c).unwrap();
                        let fast = composed_irreducible(&g, k, &c).unwrap().unwrap();
                        assert_eq!(fast, generic, "q={q} g={g:?} k={k}");
                    }
                }
            }
        }
    }
}
