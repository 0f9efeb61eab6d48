//! Explicit irreducible factorizations of `x^(2^n·d) - 1` and `Φ_{2^n·d}(x)`.
//!
//! Everything is organized by level: `x^(2^n·d) - 1 = Π_{k=0..n} Φ_{2^k}(x^d)`
//! and each block `Φ_{2^k}(x^d)` splits into factors built from `γ^j`
//! (`γ` a primitive `d`-th root of unity) and either the 2-power roots of
//! unity of `F_q` (`q ≡ 1 mod 4`) or the trace tables of `F_{q²}`
//! (`q ≡ 3 mod 4`).

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::ExtCtx;
use crate::field::{is_prime, FieldCtx, Fq};
use crate::poly::{brute_factor, cyclotomic_poly, is_irreducible, PolyRing, Polynomial, MAX_CYCLOTOMIC_ORDER};
use crate::subgroups::{build_rootset, RootSet, SpecialPrime};
use crate::trace::trace_sequence;

/// Upper bound on the number of factors the engine will emit.
pub const MAX_FACTORS: u64 = 1 << 24;

/// Upper bound on `2^n·d`.
pub const MAX_MODULUS_DEGREE: u64 = 1 << 48;

/// Largest target degree for which [`verify`] multiplies the factors out.
pub const MAX_PRODUCT_DEGREE: u64 = 1 << 16;

/// A monic factor `x^(2^r) - c` or `x^(2^(r+1)) + a·x^(2^r) + c`.
///
/// A linear factor `x - c` is the binomial with `r = 0`. Trinomials always
/// have `a ≠ 0`; [`FactorShape::trinomial`] turns `a = 0` into a binomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorShape {
    Binomial { r: u32, c: Fq },
    Trinomial { r: u32, a: Fq, c: Fq },
}

impl FactorShape {
    /// `x - c`.
    pub fn linear(c: Fq) -> Self {
        FactorShape::Binomial { r: 0, c }
    }

    /// `x^(2^r) - c`.
    pub fn binomial(r: u32, c: Fq) -> Self {
        FactorShape::Binomial { r, c }
    }

    /// `x^(2^(r+1)) + a·x^(2^r) + c`.
    pub fn trinomial(ctx: &FieldCtx, r: u32, a: Fq, c: Fq) -> Self {
        if a.is_zero() {
            FactorShape::Binomial { r: r + 1, c: ctx.neg(c) }
        } else {
            FactorShape::Trinomial { r, a, c }
        }
    }

    pub fn r(&self) -> u32 {
        match *self {
            FactorShape::Binomial { r, .. } | FactorShape::Trinomial { r, .. } => r,
        }
    }

    pub fn degree(&self) -> u64 {
        match *self {
            FactorShape::Binomial { r, .. } => 1 << r,
            FactorShape::Trinomial { r, .. } => 2 << r,
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, FactorShape::Binomial { r: 0, .. })
    }

    /// `"linear"`, `"binomial"` or `"trinomial"`.
    pub fn kind(&self) -> &'static str {
        match self {
            FactorShape::Binomial { r: 0, .. } => "linear",
            FactorShape::Binomial { .. } => "binomial",
            FactorShape::Trinomial { .. } => "trinomial",
        }
    }

    /// `[c]` for binomials, `[a, c]` for trinomials.
    pub fn coefficients(&self) -> Vec<Fq> {
        match *self {
            FactorShape::Binomial { c, .. } => vec![c],
            FactorShape::Trinomial { a, c, .. } => vec![a, c],
        }
    }

    pub fn expand(&self, ctx: &FieldCtx) -> Polynomial {
        match *self {
            FactorShape::Binomial { r, c } => Polynomial::binomial(ctx, 1 << r, c),
            FactorShape::Trinomial { r, a, c } => {
                let low = 1usize << r;
                let mut coeffs = vec![Fq::ZERO; 2 * low + 1];
                coeffs[0] = c;
                coeffs[low] = a;
                coeffs[2 * low] = Fq::ONE;
                Polynomial::from_fq(coeffs)
            }
        }
    }

    /// Recognizes `f` as one of the two templates, if it is one.
    pub fn from_polynomial(f: &Polynomial, ctx: &FieldCtx) -> Option<Self> {
        if !f.is_monic() || f.deg() == 0 {
            return None;
        }
        let n = f.deg();
        let inner: Vec<usize> = f.support().filter(|&i| i != 0 && i != n).collect();
        match inner.as_slice() {
            [] if n.is_power_of_two() => Some(FactorShape::binomial(n.trailing_zeros(), ctx.neg(f.coeff(0)))),
            [m] if n == 2 * m && m.is_power_of_two() => {
                Some(FactorShape::trinomial(ctx, m.trailing_zeros(), f.coeff(*m), f.coeff(0)))
            }
            _ => None,
        }
    }

    fn tag(&self) -> u8 {
        match self {
            FactorShape::Binomial { .. } => 0,
            FactorShape::Trinomial { .. } => 1,
        }
    }
}

/// By degree, then binomials before trinomials, then coefficients as
/// canonical residues.
impl Ord for FactorShape {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.tag().cmp(&other.tag()))
            .then_with(|| self.coefficients().cmp(&other.coefficients()))
    }
}

impl PartialOrd for FactorShape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which formula family produced a factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    #[serde(rename = "q1mod4")]
    Q1Mod4,
    #[serde(rename = "q3mod4")]
    Q3Mod4,
    #[serde(rename = "special-2t1")]
    Special2t1,
    #[serde(rename = "special-4t1")]
    Special4t1,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Q1Mod4 => "q1mod4",
            CaseTag::Q3Mod4 => "q3mod4",
            CaseTag::Special2t1 => "special-2t1",
            CaseTag::Special4t1 => "special-4t1",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The polynomial being factored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Target {
    /// `x^(2^n·d) - 1`.
    #[serde(rename = "x^m-1")]
    XPowMinusOne,
    /// `Φ_{2^n·d}(x)`.
    #[serde(rename = "cyclotomic")]
    Cyclotomic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub q: u64,
    pub d: u64,
    pub n: u32,
    pub case: CaseTag,
    pub target: Target,
    /// Sorted by [`FactorShape`]'s order.
    pub factors: Vec<FactorShape>,
}

impl Factorization {
    /// `2^n·d`.
    pub fn order(&self) -> u64 {
        self.d << self.n
    }

    /// Degree of the polynomial being factored.
    pub fn modulus_degree(&self) -> u64 {
        match self.target {
            Target::XPowMinusOne => self.order(),
            Target::Cyclotomic => totient_2n_d(self.n, self.d),
        }
    }

    pub fn degree_sum(&self) -> u64 {
        self.factors.iter().map(FactorShape::degree).sum()
    }

    pub fn expanded(&self, ctx: &FieldCtx) -> Vec<Polynomial> {
        self.factors.iter().map(|f| f.expand(ctx)).collect()
    }

    /// The polynomial being factored, computed independently of the factors.
    pub fn target_polynomial(&self, ctx: &FieldCtx) -> Result<Polynomial> {
        let m = self.order();
        if m > MAX_PRODUCT_DEGREE {
            return Err(Error::DegreeTooLarge { degree: m as usize, limit: MAX_PRODUCT_DEGREE as usize });
        }
        match self.target {
            Target::XPowMinusOne => Ok(Polynomial::x_pow_minus_one(ctx, m as usize)),
            Target::Cyclotomic if m <= MAX_CYCLOTOMIC_ORDER => cyclotomic_poly(m, ctx),
            Target::Cyclotomic => {
                // Φ_{2^n d}(x) = Φ_{2^n}(x^d) / Φ_{2^n}(x) for d an odd prime
                let ring = PolyRing::new(ctx);
                let half = 1usize << (self.n - 1);
                let one = Polynomial::one();
                let num = ring.add(&Polynomial::monomial(half * self.d as usize, Fq::ONE), &one);
                let den = ring.add(&Polynomial::monomial(half, Fq::ONE), &one);
                ring.div_exact(&num, &den)
            }
        }
    }
}

fn totient_2n_d(n: u32, d: u64) -> u64 {
    // d is 1 or an odd prime whenever this is called for a cyclotomic target
    let two_part = if n == 0 { 1 } else { 1u64 << (n - 1) };
    let odd_part = if d == 1 { 1 } else { d - 1 };
    two_part * odd_part
}

/// The ingredients shared by every level: `γ`, the `α_{2^k}`, and for
/// `q ≡ 3 mod 4` the extension with its trace tables.
struct Levels<'a> {
    ctx: &'a FieldCtx,
    roots: RootSet,
    ext: Option<ExtCtx>,
}

impl<'a> Levels<'a> {
    fn new(ctx: &'a FieldCtx, d: u64) -> Result<Self> {
        let roots = build_rootset(ctx, d)?;
        let ext = if ctx.q() % 4 == 3 { Some(ExtCtx::new(ctx)?) } else { None };
        Ok(Levels { ctx, roots, ext })
    }

    /// The level at which the factors become binomials (`s`) or trinomials (`u`).
    fn boundary(&self) -> u32 {
        match &self.ext {
            None => self.ctx.s(),
            Some(ext) => ext.u(),
        }
    }

    /// Number of factors of `Φ_{2^k}(x^d)` contributed by one `j`.
    fn count_per_j(&self, k: u32) -> u64 {
        let b = self.boundary();
        match (&self.ext, k) {
            (_, 0) => 1,
            (None, k) => 1 << (k.min(b) - 1),
            (Some(_), 1) => 1,
            (Some(_), k) => 1 << (k.min(b) - 2),
        }
    }

    /// Traces used at level `k` of the `q ≡ 3 mod 4` branch.
    fn traces(&self, k: u32) -> Result<Vec<Fq>> {
        let ext = self.ext.as_ref().expect("q = 3 mod 4");
        if k == 2 {
            return Ok(vec![Fq::ZERO]);
        }
        let table = trace_sequence(ext, k)?;
        Ok(if k == ext.u() { table.first_half().to_vec() } else { table.traces.clone() })
    }

    /// Irreducible factors of `Φ_{2^k}(x^d)` that carry `γ^j`.
    fn emit(&self, k: u32, j: u64, traces: &[Fq], out: &mut Vec<FactorShape>) {
        let f = self.ctx;
        let g = f.pow(self.roots.gamma, j);
        match &self.ext {
            None => {
                let s = f.s();
                let level = k.min(s);
                if k == 0 {
                    out.push(FactorShape::linear(g));
                    return;
                }
                let alpha = self.roots.alpha(level);
                let alpha_sq = f.mul(alpha, alpha);
                let mut a = alpha;
                for _ in 0..1u64 << (level - 1) {
                    out.push(FactorShape::binomial(k - level, f.mul(a, g)));
                    a = f.mul(a, alpha_sq);
                }
            }
            Some(ext) => {
                let u = ext.u();
                match k {
                    0 => out.push(FactorShape::linear(g)),
                    1 => out.push(FactorShape::linear(f.neg(g))),
                    k if k < u => {
                        let g2 = f.mul(g, g);
                        for &tau in traces {
                            out.push(FactorShape::trinomial(f, 0, f.neg(f.mul(g, tau)), g2));
                        }
                    }
                    k => {
                        let c = f.mul(ext.chi_level(u), f.mul(g, g));
                        for &tau in traces {
                            let a = f.mul(g, tau);
                            out.push(FactorShape::trinomial(f, k - u, a, c));
                            out.push(FactorShape::trinomial(f, k - u, f.neg(a), c));
                        }
                    }
                }
            }
        }
    }

    /// Factors of `Φ_{2^k}(x^d)` for the given range of `j`, fanned out over `j`.
    fn emit_level(&self, k: u32, js: std::ops::Range<u64>) -> Result<Vec<FactorShape>> {
        let traces = match &self.ext {
            Some(_) if k >= 2 => self.traces(k.min(self.boundary()))?,
            _ => Vec::new(),
        };
        let chunks: Vec<Vec<FactorShape>> = js
            .into_par_iter()
            .map(|j| {
                let mut v = Vec::new();
                self.emit(k, j, &traces, &mut v);
                v
            })
            .collect();
        Ok(chunks.into_iter().flatten().collect())
    }
}

fn check_n(n: u32, d: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::DegenerateN);
    }
    if n >= 48 || (d << n) > MAX_MODULUS_DEGREE {
        return Err(Error::ModulusDegreeTooLarge { n, d, limit: MAX_MODULUS_DEGREE });
    }
    Ok(())
}

fn check_count(count: u64) -> Result<()> {
    if count > MAX_FACTORS {
        return Err(Error::TooManyFactors { count, limit: MAX_FACTORS });
    }
    Ok(())
}

fn default_case(ctx: &FieldCtx) -> CaseTag {
    if ctx.q() % 4 == 1 {
        CaseTag::Q1Mod4
    } else {
        CaseTag::Q3Mod4
    }
}

fn special_case(ctx: &FieldCtx) -> Result<(u64, CaseTag)> {
    match SpecialPrime::detect(ctx.q()) {
        Some(SpecialPrime::TwoTPlusOne { t }) => Ok((t, CaseTag::Special2t1)),
        Some(SpecialPrime::FourTPlusOne { t }) => Ok((t, CaseTag::Special4t1)),
        None => Err(Error::NotSpecialPrimePair(ctx.q())),
    }
}

fn factor_full(ctx: &FieldCtx, d: u64, n: u32, case: CaseTag) -> Result<Factorization> {
    let levels = Levels::new(ctx, d)?;
    check_n(n, d)?;
    check_count(d.saturating_mul((0..=n).map(|k| levels.count_per_j(k)).sum()))?;
    let mut factors = Vec::new();
    for k in 0..=n {
        factors.extend(levels.emit_level(k, 0..d)?);
    }
    factors.sort();
    Ok(Factorization { q: ctx.q(), d, n, case, target: Target::XPowMinusOne, factors })
}

/// The complete factorization of `x^(2^n·d) - 1` into monic irreducibles.
///
/// `d` must be odd and divide `q - 1`, and `n >= 1`.
pub fn factor_x2nd_minus_1(ctx: &FieldCtx, d: u64, n: u32) -> Result<Factorization> {
    factor_full(ctx, d, n, default_case(ctx))
}

/// [`factor_x2nd_minus_1`] for `q = 2t+1` or `q = 4t+1` with `t` an odd
/// prime, taking `d = t` and `γ = 4` (resp. `γ = 16`).
pub fn factor_special(ctx: &FieldCtx, n: u32) -> Result<Factorization> {
    let (t, case) = special_case(ctx)?;
    factor_full(ctx, t, n, case)
}

fn cyclotomic_full(ctx: &FieldCtx, d: u64, n: u32, case: CaseTag) -> Result<Factorization> {
    if d < 3 || d % 2 == 0 || !is_prime(d) {
        return Err(Error::BadDivisor { d, reason: "must be an odd prime" });
    }
    let levels = Levels::new(ctx, d)?;
    let min = levels.boundary();
    if n < min {
        return Err(Error::NTooSmall { n, min });
    }
    check_n(n, d)?;
    check_count((d - 1).saturating_mul(levels.count_per_j(n)))?;
    let mut factors = levels.emit_level(n, 1..d)?;
    factors.sort();
    Ok(Factorization { q: ctx.q(), d, n, case, target: Target::Cyclotomic, factors })
}

/// The factorization of `Φ_{2^n·d}(x)` for an odd prime `d | q - 1`.
///
/// Needs `n >= s` when `q ≡ 1 mod 4` and `n >= u` when `q ≡ 3 mod 4`.
pub fn factor_cyclotomic(ctx: &FieldCtx, d: u64, n: u32) -> Result<Factorization> {
    cyclotomic_full(ctx, d, n, default_case(ctx))
}

/// [`factor_cyclotomic`] with `d = t` for the special primes.
pub fn factor_cyclotomic_special(ctx: &FieldCtx, n: u32) -> Result<Factorization> {
    let (t, case) = special_case(ctx)?;
    cyclotomic_full(ctx, t, n, case)
}

/// One decomposable block `Φ_{2^k}(x^d)` and the irreducible factors it
/// splits into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderBlock {
    pub level: u32,
    /// `x^d - 1` at level 0, otherwise `Φ_{2^min(k,s)}(x^(2^(k - min(k,s))·d))`.
    pub polynomial: Polynomial,
    pub factors: Vec<FactorShape>,
}

/// The blocks `x^d - 1`, `Φ_{2^k}(x^d)` for `1 <= k <= min(n, s)`, and
/// `Φ_{2^s}(x^(2^r·d))` for `1 <= r <= n - s`, whose product is
/// `x^(2^n·d) - 1`.
pub fn cyclotomic_ladder(ctx: &FieldCtx, d: u64, n: u32) -> Result<Vec<LadderBlock>> {
    let levels = Levels::new(ctx, d)?;
    check_n(n, d)?;
    if d << n > MAX_PRODUCT_DEGREE {
        return Err(Error::DegreeTooLarge { degree: (d << n) as usize, limit: MAX_PRODUCT_DEGREE as usize });
    }
    let ring = PolyRing::new(ctx);
    let s = ctx.s();
    let mut blocks = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let polynomial = if k == 0 {
            Polynomial::x_pow_minus_one(ctx, d as usize)
        } else {
            let low = k.min(s);
            // Φ_{2^low}(y) = y^(2^(low-1)) + 1
            let phi = ring.add(&Polynomial::monomial(1 << (low - 1), Fq::ONE), &Polynomial::one());
            ring.inflate(&phi, (1usize << (k - low)) * d as usize)
        };
        let mut factors = levels.emit_level(k, 0..d)?;
        factors.sort();
        blocks.push(LadderBlock { level: k, polynomial, factors });
    }
    Ok(blocks)
}

/// Outcome of checking a factorization against the independent oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verification {
    /// The expanded factors multiply to the target polynomial.
    pub product_ok: bool,
    /// Every factor is irreducible.
    pub irreducible_ok: bool,
    /// The brute-force factorization of the target equals the emitted
    /// factors as a multiset; `None` when the target exceeds the oracle limit.
    pub oracle_match: Option<bool>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.product_ok && self.irreducible_ok && self.oracle_match != Some(false)
    }
}

/// Checks `fact` by multiplying out, testing each factor for irreducibility,
/// and, when `modulus_degree <= oracle_limit`, comparing against
/// [`brute_factor`].
pub fn verify(fact: &Factorization, ctx: &FieldCtx, oracle_limit: u64) -> Result<Verification> {
    let ring = PolyRing::new(ctx);
    let target = fact.target_polynomial(ctx)?;
    let mut expanded = fact.expanded(ctx);
    let product_ok = ring.product(&expanded) == target;
    let irreducible_ok =
        expanded.par_iter().map(|f| is_irreducible(f, ctx)).collect::<Result<Vec<bool>>>()?.into_iter().all(|b| b);
    let oracle_match = if fact.modulus_degree() <= oracle_limit {
        expanded.sort();
        Some(brute_factor(&target, ctx)? == expanded)
    } else {
        None
    };
    Ok(Verification { product_ok, irreducible_ok, oracle_match })
}
