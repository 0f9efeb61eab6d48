//! Dense univariate polynomials over `F_q` and the generic algorithms used to
//! check factorizations independently of how they were produced.

mod cyclotomic;
mod factor;
mod frobenius;
mod irreducible;
pub mod text;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

pub use cyclotomic::{cyclotomic_poly, MAX_CYCLOTOMIC_ORDER};
pub use factor::{brute_factor, MAX_ORACLE_DEGREE};
pub use irreducible::{
    binomial_irreducible, composed_irreducible, is_irreducible, is_irreducible_generic, order_of_root,
};

/// Degree at or above which multiplication switches from schoolbook to Karatsuba.
pub const KARATSUBA_THRESHOLD: usize = 64;

/// Coefficients in ascending degree, no trailing zeros. The zero polynomial
/// has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Fq>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs)
    }
}

/// Orders by degree, then by coefficients from the top down.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![Fq::ONE] }
    }

    pub fn x() -> Self {
        Polynomial { coeffs: vec![Fq::ZERO, Fq::ONE] }
    }

    /// From already-canonical coefficients; trailing zeros are trimmed.
    pub fn from_fq(mut coeffs: Vec<Fq>) -> Self {
        trim(&mut coeffs);
        Polynomial { coeffs }
    }

    /// From arbitrary integers, reduced mod `q`.
    pub fn from_u64(ctx: &FieldCtx, coeffs: &[u64]) -> Self {
        Self::from_fq(coeffs.iter().map(|&c| ctx.elem(c)).collect())
    }

    pub fn from_i64(ctx: &FieldCtx, coeffs: &[i64]) -> Self {
        Self::from_fq(coeffs.iter().map(|&c| ctx.elem_i64(c)).collect())
    }

    /// `x^m - c`.
    pub fn binomial(ctx: &FieldCtx, m: usize, c: Fq) -> Self {
        let mut coeffs = vec![Fq::ZERO; m + 1];
        coeffs[m] = Fq::ONE;
        coeffs[0] = ctx.sub(coeffs[0], c);
        Self::from_fq(coeffs)
    }

    /// `x^m - 1`.
    pub fn x_pow_minus_one(ctx: &FieldCtx, m: usize) -> Self {
        Self::binomial(ctx, m, Fq::ONE)
    }

    /// `c·x^m`.
    pub fn monomial(m: usize, c: Fq) -> Self {
        let mut coeffs = vec![Fq::ZERO; m + 1];
        coeffs[m] = c;
        Self::from_fq(coeffs)
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fq::ONE
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fq::ONE
    }

    /// Indices of nonzero coefficients.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }
}

fn trim(v: &mut Vec<Fq>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Delayed reduction: products of residues are summed in a `u64` and only
/// reduced once `batch` of them may have accumulated.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Lazy {
    pub q: u64,
    pub batch: usize,
}

impl Lazy {
    pub fn new(q: u64) -> Self {
        let max_prod = (q - 1) * (q - 1);
        let batch = (u64::MAX - q).checked_div(max_prod).map_or(usize::MAX, |b| b as usize);
        Lazy { q, batch: batch.max(1) }
    }

    #[inline]
    pub fn reduce_all(&self, v: &mut [u64]) {
        for x in v.iter_mut() {
            *x %= self.q;
        }
    }
}

fn add_into(acc: &mut [Fq], src: &[Fq], q: u64) {
    for (a, &b) in acc.iter_mut().zip(src) {
        let s = a.0 + b.0;
        a.0 = if s >= q { s - q } else { s };
    }
}

fn sub_into(acc: &mut [Fq], src: &[Fq], q: u64) {
    for (a, &b) in acc.iter_mut().zip(src) {
        a.0 = if a.0 >= b.0 { a.0 - b.0 } else { a.0 + q - b.0 };
    }
}

fn schoolbook(a: &[Fq], b: &[Fq], lazy: Lazy) -> Vec<Fq> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    let mut pending = 0usize;
    for (i, ai) in a.iter().enumerate() {
        if ai.0 == 0 {
            continue;
        }
        let row = &mut out[i..i + b.len()];
        for (o, bj) in row.iter_mut().zip(b) {
            *o += ai.0 * bj.0;
        }
        pending += 1;
        if pending == lazy.batch {
            lazy.reduce_all(&mut out);
            pending = 0;
        }
    }
    out.into_iter().map(|x| Fq(x % lazy.q)).collect()
}

/// Karatsuba product of raw coefficient slices (result untrimmed, length
/// `a.len() + b.len() - 1`).
fn karatsuba(a: &[Fq], b: &[Fq], lazy: Lazy) -> Vec<Fq> {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.is_empty() {
        return Vec::new();
    }
    if b.len() < KARATSUBA_THRESHOLD {
        return schoolbook(a, b, lazy);
    }
    let q = lazy.q;
    let half = a.len().div_ceil(2);
    if b.len() <= half {
        // unbalanced: slice `a` into blocks of b's length
        let mut out = vec![Fq::ZERO; a.len() + b.len() - 1];
        for (i, chunk) in a.chunks(b.len()).enumerate() {
            let part = karatsuba(chunk, b, lazy);
            let off = i * b.len();
            add_into(&mut out[off..off + part.len()], &part, q);
        }
        return out;
    }
    let (a0, a1) = a.split_at(half);
    let (b0, b1) = b.split_at(half);
    let z0 = karatsuba(a0, b0, lazy);
    let z2 = karatsuba(a1, b1, lazy);
    let mut sa = a0.to_vec();
    add_into(&mut sa, a1, q);
    let mut sb = b0.to_vec();
    add_into(&mut sb, b1, q);
    let mut z1 = karatsuba(&sa, &sb, lazy);
    sub_into(&mut z1, &z0, q);
    sub_into(&mut z1, &z2, q);

    let mut out = vec![Fq::ZERO; a.len() + b.len() - 1];
    add_into(&mut out[..z0.len()], &z0, q);
    add_into(&mut out[half..half + z1.len()], &z1, q);
    add_into(&mut out[2 * half..2 * half + z2.len()], &z2, q);
    out
}

/// Polynomial arithmetic over a fixed prime field.
#[derive(Debug, Clone)]
pub struct PolyRing {
    field: FieldCtx,
    lazy: Lazy,
}

impl PolyRing {
    pub fn new(field: &FieldCtx) -> Self {
        PolyRing { field: field.clone(), lazy: Lazy::new(field.q()) }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub(crate) fn lazy(&self) -> Lazy {
        self.lazy
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let (long, short) = if f.coeffs.len() >= g.coeffs.len() { (f, g) } else { (g, f) };
        let mut out = long.coeffs.clone();
        add_into(&mut out, &short.coeffs, self.field.q());
        Polynomial::from_fq(out)
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        Polynomial { coeffs: f.coeffs.iter().map(|&c| self.field.neg(c)).collect() }
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut out = f.coeffs.clone();
        if out.len() < g.coeffs.len() {
            out.resize(g.coeffs.len(), Fq::ZERO);
        }
        sub_into(&mut out, &g.coeffs, self.field.q());
        Polynomial::from_fq(out)
    }

    pub fn scale(&self, c: Fq, f: &Polynomial) -> Polynomial {
        Polynomial::from_fq(f.coeffs.iter().map(|&a| self.field.mul(c, a)).collect())
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        Polynomial::from_fq(karatsuba(&f.coeffs, &g.coeffs, self.lazy))
    }

    /// Multiplies out a list of polynomials with a balanced product tree.
    pub fn product(&self, factors: &[Polynomial]) -> Polynomial {
        match factors.len() {
            0 => Polynomial::one(),
            1 => factors[0].clone(),
            n => {
                let (l, r) = factors.split_at(n / 2);
                self.mul(&self.product(l), &self.product(r))
            }
        }
    }

    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        if f.is_zero() || f.is_monic() {
            return f.clone();
        }
        let inv = self.field.inv(f.leading()).expect("nonzero leading coefficient");
        self.scale(inv, f)
    }

    /// Remainder of `a` modulo the monic `m`, with lazy accumulation. When
    /// `quotient` is given it receives the quotient coefficients.
    fn rem_monic_raw(&self, a: &[Fq], m: &[Fq], mut quotient: Option<&mut Vec<Fq>>) -> Vec<Fq> {
        let dm = m.len() - 1;
        if a.len() <= dm {
            if let Some(qv) = quotient {
                qv.clear();
            }
            return a.to_vec();
        }
        let lazy = self.lazy;
        let q = lazy.q;
        let mut work: Vec<u64> = a.iter().map(|c| c.0).collect();
        if let Some(qv) = quotient.as_deref_mut() {
            qv.clear();
            qv.resize(a.len() - dm, Fq::ZERO);
        }
        let mut pending = 0usize;
        for top in (dm..a.len()).rev() {
            let c = work[top] % q;
            if let Some(qv) = quotient.as_deref_mut() {
                qv[top - dm] = Fq(c);
            }
            if c == 0 {
                continue;
            }
            let neg = q - c;
            let base = top - dm;
            for (w, mj) in work[base..top].iter_mut().zip(&m[..dm]) {
                *w += neg * mj.0;
            }
            pending += 1;
            if pending == lazy.batch {
                lazy.reduce_all(&mut work[..top]);
                pending = 0;
            }
        }
        work.truncate(dm);
        work.into_iter().map(|x| Fq(x % q)).collect()
    }

    /// Quotient and remainder. Errors on division by the zero polynomial.
    pub fn divmod(&self, a: &Polynomial, b: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = b.leading();
        let lc_inv = self.field.inv(lc)?;
        let mb = self.scale(lc_inv, b);
        let mut quot = Vec::new();
        let r = self.rem_monic_raw(&a.coeffs, &mb.coeffs, Some(&mut quot));
        let quot = Polynomial::from_fq(quot);
        Ok((self.scale(lc_inv, &quot), Polynomial::from_fq(r)))
    }

    pub fn rem(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if b.is_monic() {
            return Ok(Polynomial::from_fq(self.rem_monic_raw(&a.coeffs, &b.coeffs, None)));
        }
        Ok(self.divmod(a, b)?.1)
    }

    /// Exact division; panics in debug builds if `b` does not divide `a`.
    pub fn div_exact(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.divmod(a, b)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut a = self.monic(f);
        let mut b = self.monic(g);
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("b is nonzero");
            a = b;
            b = self.monic(&r);
        }
        a
    }

    pub fn derivative(&self, f: &Polynomial) -> Polynomial {
        Polynomial::from_fq(
            f.coeffs.iter().enumerate().skip(1).map(|(i, &c)| self.field.mul(self.field.elem(i as u64), c)).collect(),
        )
    }

    pub fn mulmod(&self, a: &Polynomial, b: &Polynomial, m: &Polynomial) -> Polynomial {
        self.rem(&self.mul(a, b), m).expect("nonzero modulus")
    }

    pub fn powmod(&self, a: &Polynomial, mut e: u128, m: &Polynomial) -> Polynomial {
        let mut base = self.rem(a, m).expect("nonzero modulus");
        let mut acc = self.rem(&Polynomial::one(), m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        acc
    }

    /// `f(x^k)`.
    pub fn inflate(&self, f: &Polynomial, k: usize) -> Polynomial {
        if f.is_zero() || k == 1 {
            return f.clone();
        }
        let mut coeffs = vec![Fq::ZERO; f.deg() * k + 1];
        for (i, &c) in f.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Polynomial::from_fq(coeffs)
    }

    pub fn eval(&self, f: &Polynomial, x: Fq) -> Fq {
        f.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }
}
