//! Prime field arithmetic and the number theory around the multiplicative group.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus (exclusive). Products of two residues fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A canonical residue in `[0, q)`.
///
/// `Fq` does not carry its modulus; every arithmetic operation goes through a
/// [`FieldCtx`], which re-canonicalizes its result.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
#[repr(transparent)]
pub struct Fq(pub(crate) u64);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field `F_q` together with the 2-adic split `q - 1 = 2^s * t_odd`
/// and the least primitive root.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldCtx {
    q: u64,
    s: u32,
    t_odd: u64,
    g: Fq,
    /// Distinct prime factors of `q - 1`, ascending.
    group_primes: Vec<u64>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("q", &self.q)
            .field("s", &self.s)
            .field("t_odd", &self.t_odd)
            .field("g", &self.g)
            .finish()
    }
}

impl FieldCtx {
    /// Builds the context for `F_q`. `q` must be an odd prime below 2^31.
    pub fn new(q: u64) -> Result<Self> {
        if q >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(q));
        }
        if q % 2 == 0 {
            return Err(Error::EvenModulus(q));
        }
        if q < 3 || !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        let s = (q - 1).trailing_zeros();
        let t_odd = (q - 1) >> s;
        let group_primes = distinct_prime_factors(q - 1);
        let mut ctx = FieldCtx { q, s, t_odd, g: Fq::ONE, group_primes };
        ctx.g = (2..q).map(Fq).find(|&a| ctx.is_generator(a)).expect("F_q^* is cyclic");
        Ok(ctx)
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Exponent of 2 in `q - 1`.
    #[inline]
    pub fn s(&self) -> u32 {
        self.s
    }

    /// Odd part of `q - 1`.
    #[inline]
    pub fn t_odd(&self) -> u64 {
        self.t_odd
    }

    /// The least primitive root of `F_q`.
    #[inline]
    pub fn generator(&self) -> Fq {
        self.g
    }

    pub fn group_primes(&self) -> &[u64] {
        &self.group_primes
    }

    #[inline]
    pub fn elem(&self, v: u64) -> Fq {
        Fq(v % self.q)
    }

    #[inline]
    pub fn elem_i64(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(self.q as i64) as u64)
    }

    /// Balanced representative in `(-q/2, q/2]`.
    pub fn balanced(&self, a: Fq) -> i64 {
        if a.0 > self.q / 2 {
            a.0 as i64 - self.q as i64
        } else {
            a.0 as i64
        }
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let s = a.0 + b.0;
        Fq(if s >= self.q { s - self.q } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        Fq(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.q - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(if a.0 == 0 { 0 } else { self.q - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(a.0 * b.0 % self.q)
    }

    /// `a^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Multiplicative order of `a`, found by stripping prime factors of `q - 1`.
    pub fn element_order(&self, a: Fq) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut order = self.q - 1;
        for &p in &self.group_primes {
            while order % p == 0 && self.pow(a, order / p) == Fq::ONE {
                order /= p;
            }
        }
        Ok(order)
    }

    fn is_generator(&self, a: Fq) -> bool {
        self.group_primes.iter().all(|&p| self.pow(a, (self.q - 1) / p) != Fq::ONE)
    }

    /// Legendre symbol via Euler's criterion.
    pub fn legendre(&self, a: Fq) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if self.pow(a, (self.q - 1) / 2) == Fq::ONE {
            1
        } else {
            -1
        }
    }

    /// Square root of `a`, returning the smaller of the two canonical roots.
    ///
    /// Uses `a^((q+1)/4)` when `q = 3 mod 4` and Tonelli-Shanks otherwise.
    pub fn sqrt(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Ok(Fq::ZERO);
        }
        if self.legendre(a) != 1 {
            return Err(Error::NonResidue(a.0));
        }
        let r = if self.q % 4 == 3 { self.pow(a, (self.q + 1) / 4) } else { self.tonelli_shanks(a) };
        debug_assert_eq!(self.mul(r, r), a);
        Ok(r.min(self.neg(r)))
    }

    fn tonelli_shanks(&self, a: Fq) -> Fq {
        // z = g^t_odd generates the 2-Sylow subgroup.
        let mut m = self.s;
        let mut c = self.pow(self.g, self.t_odd);
        let mut t = self.pow(a, self.t_odd);
        let mut r = self.pow(a, self.t_odd.div_ceil(2));
        while t != Fq::ONE {
            let mut i = 0;
            let mut t2 = t;
            while t2 != Fq::ONE {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        r
    }

    /// `g^((q-1)/m)`, an element of order exactly `m`.
    pub fn root_of_unity(&self, m: u64) -> Result<Fq> {
        if m == 0 || (self.q - 1) % m != 0 {
            return Err(Error::OrderDoesNotDivide { order: m, group_order: self.q - 1 });
        }
        Ok(self.pow(self.g, (self.q - 1) / m))
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Primality for any `u64`: Miller-Rabin with a base set that is deterministic
/// below 2^64, confirmed by trial division when `n < 2^32`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let r = (n - 1).trailing_zeros();
    let probably = [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022].iter().all(|&base| {
        let a = base % n;
        if a == 0 {
            return true;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                return true;
            }
        }
        false
    });
    if !probably {
        return false;
    }
    if n < 1 << 32 {
        let mut p = 41;
        while p * p <= n {
            if n % p == 0 {
                return false;
            }
            p += 2;
        }
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn distinct_prime_factors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}
