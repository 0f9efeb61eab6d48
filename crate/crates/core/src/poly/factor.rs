//! Complete factorization over `F_q`: squarefree decomposition, distinct-degree
//! splitting, then Cantor-Zassenhaus equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

use super::frobenius::Frobenius;
use super::{PolyRing, Polynomial};

pub const MAX_ORACLE_DEGREE: usize = 4096;

const SEED: u64 = 0x5eed_c1c1_0f4c_7042;

/// All monic irreducible factors of `f`, repeated by multiplicity and sorted.
/// The leading coefficient of `f` is dropped; constants factor as the empty
/// list.
pub fn brute_factor(f: &Polynomial, ctx: &FieldCtx) -> Result<Vec<Polynomial>> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if f.deg() > MAX_ORACLE_DEGREE {
        return Err(Error::DegreeTooLarge { degree: f.deg(), limit: MAX_ORACLE_DEGREE });
    }
    let ring = PolyRing::new(ctx);
    let f = ring.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&ring, &f) {
        for (block, k) in distinct_degree(&ring, &part) {
            let mut irreducibles = Vec::new();
            equal_degree(&ring, &block, k, &mut rng, &mut irreducibles);
            for g in irreducibles {
                out.extend(std::iter::repeat_n(g, mult));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `f = Π g_i^i` with each `g_i` squarefree; returns the nontrivial `(g_i, i)`.
fn squarefree_decomposition(ring: &PolyRing, f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let p = ring.field().q() as usize;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let mut c = ring.gcd(f, &ring.derivative(f));
    let mut w = ring.div_exact(f, &c).expect("gcd divides f");
    let mut i = 1;
    while !w.is_one() {
        let y = ring.gcd(&w, &c);
        let fac = ring.div_exact(&w, &y).expect("gcd divides w");
        if !fac.is_one() {
            out.push((fac, i));
        }
        c = ring.div_exact(&c, &y).expect("gcd divides c");
        w = y;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power; over a prime field its p-th root just compresses exponents
        let root = Polynomial::from_fq(c.coeffs().iter().step_by(p).copied().collect());
        for (g, m) in squarefree_decomposition(ring, &root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic `f` into `(product of all degree-k factors, k)`.
fn distinct_degree(ring: &PolyRing, f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    if rest.deg() == 0 {
        return out;
    }
    let mut frob = Frobenius::new(ring, f, f.deg() / 2);
    let x = Polynomial::x();
    let mut h = ring.rem(&x, f).expect("nonzero");
    let mut k = 0;
    while rest.deg() >= 2 * (k + 1) {
        k += 1;
        h = frob.apply(&h);
        let g = ring.gcd(&rest, &ring.sub(&h, &x));
        if !g.is_one() {
            rest = ring.div_exact(&rest, &g).expect("gcd divides rest");
            let modulus = frob.shrink_to(&rest).clone();
            if !modulus.is_zero() && modulus.deg() > 0 {
                h = ring.rem(&h, &modulus).expect("nonzero");
            }
            out.push((g, k));
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Splits `f`, a product of distinct irreducibles all of degree `k`.
fn equal_degree(ring: &PolyRing, f: &Polynomial, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Polynomial>) {
    let n = f.deg();
    if n == k {
        out.push(f.clone());
        return;
    }
    let field = ring.field();
    let q = field.q();
    let frob = (k > 1).then(|| Frobenius::new(ring, f, k));
    let one = Polynomial::one();
    loop {
        let a = Polynomial::from_fq((0..n).map(|_| Fq(rng.random_range(0..q))).collect());
        if a.deg() == 0 {
            continue;
        }
        // b = a^((q^k - 1)/2) = (a^(1 + q + ... + q^(k-1)))^((q-1)/2)
        let mut norm = a.clone();
        if let Some(frob) = &frob {
            let mut conj = a.clone();
            for _ in 1..k {
                conj = frob.apply(&conj);
                norm = ring.mulmod(&norm, &conj, f);
            }
        }
        let b = ring.powmod(&norm, ((q - 1) / 2) as u128, f);
        let g = ring.gcd(f, &ring.sub(&b, &one));
        if g.deg() > 0 && g.deg() < n {
            let h = ring.div_exact(f, &g).expect("gcd divides f");
            equal_degree(ring, &g, k, rng, out);
            equal_degree(ring, &h, k, rng, out);
            return;
        }
    }
}
