//! The quadratic extension `F_{q^2} = F_q[δ]/(δ² + 1)` for `q ≡ 3 (mod 4)`.
//!
//! Since `-1` is a non-residue for such `q`, `δ² = -1` always defines the
//! extension, and the Frobenius `x ↦ x^q` is conjugation `a + bδ ↦ a - bδ`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::trace::TraceTable;

/// `a + b·δ` with `δ² = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExtElement {
    pub a: Fq,
    pub b: Fq,
}

impl ExtElement {
    pub const ZERO: ExtElement = ExtElement { a: Fq::ZERO, b: Fq::ZERO };
    pub const ONE: ExtElement = ExtElement { a: Fq::ONE, b: Fq::ZERO };
    pub const DELTA: ExtElement = ExtElement { a: Fq::ZERO, b: Fq::ONE };

    pub fn from_base(a: Fq) -> Self {
        ExtElement { a, b: Fq::ZERO }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Context for `F_Q`, `Q = q²`, with `Q - 1 = 2^u · v_odd` and a fixed element
/// `beta_top` of order `2^u`.
#[derive(Debug, Clone)]
pub struct ExtCtx {
    base: FieldCtx,
    u: u32,
    v_odd: u64,
    beta_top: ExtElement,
    // index k holds the trace table for level k (3 <= k <= u)
    pub(crate) tables: Vec<OnceLock<TraceTable>>,
}

impl ExtCtx {
    pub fn new(base: &FieldCtx) -> Result<Self> {
        let q = base.q();
        if q % 4 != 3 {
            return Err(Error::NotThreeModFour(q));
        }
        let big_q_minus_1 = q * q - 1;
        let u = big_q_minus_1.trailing_zeros();
        let v_odd = big_q_minus_1 >> u;
        debug_assert!(u >= 3);
        let mut ctx = ExtCtx {
            base: base.clone(),
            u,
            v_odd,
            beta_top: ExtElement::ONE,
            tables: (0..=u).map(|_| OnceLock::new()).collect(),
        };
        ctx.beta_top = ctx.find_beta_top();
        Ok(ctx)
    }

    /// First `c` in lexicographic `(a, b)` order whose `v_odd`-th power has order `2^u`.
    fn find_beta_top(&self) -> ExtElement {
        let q = self.base.q();
        let minus_one = ExtElement::from_base(self.base.neg(Fq::ONE));
        for a in 0..q {
            for b in 0..q {
                let c = ExtElement { a: Fq(a), b: Fq(b) };
                if c.is_zero() {
                    continue;
                }
                let cand = self.pow(c, self.v_odd);
                let mut half = cand;
                for _ in 0..self.u - 1 {
                    half = self.mul(half, half);
                }
                if half == minus_one {
                    return cand;
                }
            }
        }
        unreachable!("F_Q^* is cyclic, so an element of order 2^u exists")
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    /// Exponent of 2 in `q² - 1`.
    pub fn u(&self) -> u32 {
        self.u
    }

    pub fn v_odd(&self) -> u64 {
        self.v_odd
    }

    pub fn beta_top(&self) -> ExtElement {
        self.beta_top
    }

    pub fn add(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        let f = &self.base;
        ExtElement { a: f.add(x.a, y.a), b: f.add(x.b, y.b) }
    }

    pub fn sub(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        let f = &self.base;
        ExtElement { a: f.sub(x.a, y.a), b: f.sub(x.b, y.b) }
    }

    pub fn neg(&self, x: ExtElement) -> ExtElement {
        let f = &self.base;
        ExtElement { a: f.neg(x.a), b: f.neg(x.b) }
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, c: Fq, x: ExtElement) -> ExtElement {
        let f = &self.base;
        ExtElement { a: f.mul(c, x.a), b: f.mul(c, x.b) }
    }

    pub fn mul(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        let f = &self.base;
        // (a + bδ)(c + dδ) = (ac - bd) + (ad + bc)δ
        ExtElement { a: f.sub(f.mul(x.a, y.a), f.mul(x.b, y.b)), b: f.add(f.mul(x.a, y.b), f.mul(x.b, y.a)) }
    }

    pub fn pow(&self, x: ExtElement, mut e: u64) -> ExtElement {
        let mut base = x;
        let mut acc = ExtElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: ExtElement) -> Result<ExtElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x^{-1} = conj(x) / N(x)
        let n_inv = self.base.inv(self.norm(x))?;
        Ok(self.scale(n_inv, self.frobenius(x)))
    }

    /// `x^q`, i.e. conjugation.
    pub fn frobenius(&self, x: ExtElement) -> ExtElement {
        ExtElement { a: x.a, b: self.base.neg(x.b) }
    }

    /// `x + x^q`; always lands in the base field.
    pub fn trace(&self, x: ExtElement) -> Fq {
        self.base.add(x.a, x.a)
    }

    /// `x^(q+1) = a² + b²`.
    pub fn norm(&self, x: ExtElement) -> Fq {
        let f = &self.base;
        f.add(f.mul(x.a, x.a), f.mul(x.b, x.b))
    }

    /// Quadratic character `x^(q+1)` on the 2-power subgroup. For
    /// `x = β_{2^k}` this is `+1` when `k < u` and `-1` when `k = u`.
    pub fn chi(&self, x: ExtElement) -> Result<Fq> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.norm(x))
    }

    /// `χ(β_{2^k})` without building the element.
    pub fn chi_level(&self, k: u32) -> Fq {
        if k == self.u {
            self.base.neg(Fq::ONE)
        } else {
            Fq::ONE
        }
    }

    /// `β_{2^k} = beta_top^(2^(u-k))`, of order exactly `2^k`.
    pub fn beta(&self, k: u32) -> Result<ExtElement> {
        if k > self.u {
            return Err(Error::KOutOfRange { k, min: 0, max: self.u });
        }
        let mut b = self.beta_top;
        for _ in k..self.u {
            b = self.mul(b, b);
        }
        Ok(b)
    }

    /// Multiplicative order, by stripping prime factors of `q² - 1`.
    pub fn order(&self, x: ExtElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let q = self.base.q();
        let mut primes = crate::field::distinct_prime_factors(q - 1);
        primes.extend(crate::field::distinct_prime_factors(q + 1));
        primes.sort_unstable();
        primes.dedup();
        let mut order = q * q - 1;
        for p in primes {
            while order % p == 0 && self.pow(x, order / p) == ExtElement::ONE {
                order /= p;
            }
        }
        Ok(order)
    }
}
