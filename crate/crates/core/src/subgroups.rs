//! The square subgroup `S_q`, the odd-order subgroup `O_q`, their generators
//! for the special primes `q = 2t+1` and `q = 4t+1`, and the root set the
//! factor engine draws its coefficients from.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx, Fq};

/// Above this size `|S_q|` and `|O_q|` are taken from their formulas instead
/// of counted element by element.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000;

/// Which closed-form generator family applies to `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecialPrime {
    /// `q = 2t + 1`, `t` an odd prime.
    TwoTPlusOne { t: u64 },
    /// `q = 4t + 1`, `t` an odd prime.
    FourTPlusOne { t: u64 },
}

impl SpecialPrime {
    pub fn detect(q: u64) -> Option<Self> {
        let t2 = (q - 1) / 2;
        if q % 2 == 1 && t2 % 2 == 1 && t2 >= 3 && is_prime(t2) {
            return Some(SpecialPrime::TwoTPlusOne { t: t2 });
        }
        if (q - 1) % 4 == 0 {
            let t4 = (q - 1) / 4;
            if t4 % 2 == 1 && t4 >= 3 && is_prime(t4) {
                return Some(SpecialPrime::FourTPlusOne { t: t4 });
            }
        }
        None
    }

    pub fn t(self) -> u64 {
        match self {
            SpecialPrime::TwoTPlusOne { t } | SpecialPrime::FourTPlusOne { t } => t,
        }
    }
}

pub fn is_square(ctx: &FieldCtx, a: Fq) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(ctx.legendre(a) == 1)
}

pub fn has_odd_order(ctx: &FieldCtx, a: Fq) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(ctx.pow(a, ctx.t_odd()) == Fq::ONE)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Verified,
    Failed,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub status: ClaimStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupReport {
    pub q: u64,
    pub special: Option<SpecialPrime>,
    pub s_q_order: u64,
    pub o_q_order: u64,
    pub o_q_generator: Fq,
    pub s_q_generator: Option<Fq>,
    pub claims: Vec<Claim>,
}

impl SubgroupReport {
    pub fn failed(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.status == ClaimStatus::Failed)
    }

    pub fn all_hold(&self) -> bool {
        self.failed().next().is_none()
    }

    pub fn claim(&self, name: &str) -> Option<ClaimStatus> {
        self.claims.iter().find(|c| c.name == name).map(|c| c.status)
    }
}

/// Builds the report and checks every structural claim that applies to `q`.
pub fn subgroup_report(ctx: &FieldCtx) -> SubgroupReport {
    let q = ctx.q();
    let t_odd = ctx.t_odd();
    let special = SpecialPrime::detect(q);
    let mut claims = Vec::new();
    let mut claim = |name: &str, status: ClaimStatus| claims.push(Claim { name: name.to_string(), status });
    let check = |ok: bool| if ok { ClaimStatus::Verified } else { ClaimStatus::Failed };

    let exhaustive = q <= EXHAUSTIVE_LIMIT;
    let (s_q_order, o_q_order) = if exhaustive {
        let mut squares = 0;
        let mut odd = 0;
        let mut odd_not_square = 0;
        for a in 1..q {
            let a = Fq(a);
            let sq = ctx.legendre(a) == 1;
            let od = ctx.pow(a, t_odd) == Fq::ONE;
            squares += sq as u64;
            odd += od as u64;
            odd_not_square += (od && !sq) as u64;
        }
        claim("o_q-subset-of-s_q", check(odd_not_square == 0));
        (squares, odd)
    } else {
        claim("o_q-subset-of-s_q", check(ctx.legendre(ctx.root_of_unity(t_odd).unwrap()) == 1));
        ((q - 1) / 2, t_odd)
    };
    claim("s_q-order", check(s_q_order == (q - 1) / 2));
    claim("o_q-order", check(o_q_order == t_odd));
    let s = ctx.s();
    claim("s_q-minus-o_q-order", check(s_q_order - o_q_order == ((1u64 << (s - 1)) - 1) * t_odd));
    claim("o_q-equals-s_q-iff-3-mod-4", check((s_q_order == o_q_order) == (q % 4 == 3)));
    let expected_legendre_2 = if ((q * q - 1) / 8) % 2 == 0 { 1 } else { -1 };
    claim("legendre-of-2", check(ctx.legendre(Fq(2 % q)) == expected_legendre_2));

    let generic_o = ctx.root_of_unity(t_odd).expect("t_odd divides q - 1");
    let generic_s = ctx.mul(ctx.generator(), ctx.generator());
    let (o_q_generator, s_q_generator) = match special {
        Some(SpecialPrime::TwoTPlusOne { t }) => {
            let four = ctx.elem(4);
            let ord4 = ctx.element_order(four).unwrap();
            let squares_match = if exhaustive {
                let mut powers: Vec<u64> = Vec::with_capacity(t as usize);
                let mut x = Fq::ONE;
                for _ in 0..t {
                    powers.push(x.0);
                    x = ctx.mul(x, four);
                }
                powers.sort_unstable();
                powers.dedup();
                let squares: Vec<u64> = (1..q).filter(|&a| ctx.legendre(Fq(a)) == 1).collect();
                powers == squares
            } else {
                ord4 == t
            };
            claim("four-generates-o_q-equals-s_q", check(ord4 == t && squares_match));
            claim("t-generates-o_q", ClaimStatus::NotApplicable);
            claim("sixteen-generates-o_q", ClaimStatus::NotApplicable);
            (four, Some(four))
        }
        Some(SpecialPrime::FourTPlusOne { t }) => {
            let tt = ctx.elem(t);
            let ord_t = ctx.element_order(tt).unwrap();
            let ord4 = ctx.element_order(ctx.elem(4)).unwrap();
            let ord16 = ctx.element_order(ctx.elem(16)).unwrap();
            claim("four-generates-o_q-equals-s_q", ClaimStatus::NotApplicable);
            claim("t-generates-o_q", check(ord_t == t));
            claim("t-is-square", check(ctx.legendre(tt) == 1));
            let root_is_square = ctx.sqrt(tt).map(|r| ctx.legendre(r) == 1).unwrap_or(false);
            claim("sqrt-t-is-square", check(root_is_square));
            claim("four-generates-s_q", check(ord4 == 2 * t));
            claim("sixteen-generates-o_q", check(ord16 == t));
            let o_gen = if ord16 == t { ctx.elem(16) } else { tt };
            let s_gen = if ord4 == 2 * t { Some(ctx.elem(4)) } else { Some(generic_s) };
            (o_gen, s_gen)
        }
        None => {
            claim("four-generates-o_q-equals-s_q", ClaimStatus::NotApplicable);
            claim("t-generates-o_q", ClaimStatus::NotApplicable);
            claim("sixteen-generates-o_q", ClaimStatus::NotApplicable);
            (generic_o, Some(generic_s))
        }
    };

    SubgroupReport { q, special, s_q_order, o_q_order, o_q_generator, s_q_generator, claims }
}

/// The roots of unity the factorization formulas are written in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSet {
    pub d: u64,
    /// Primitive `d`-th root of unity.
    pub gamma: Fq,
    /// `alphas[k - 1]` is a primitive `2^k`-th root, `1 <= k <= s`.
    pub alphas: Vec<Fq>,
    pub sqrt_minus_one: Option<Fq>,
    pub sqrt_t: Option<Fq>,
}

impl RootSet {
    /// `α_{2^k}` for `1 <= k <= s`.
    pub fn alpha(&self, k: u32) -> Fq {
        self.alphas[k as usize - 1]
    }
}

/// `√t` as a power of 4: with `16^i = t`, `(4^i)² = t`.
fn sqrt_t_from_sixteen(ctx: &FieldCtx, t: u64) -> Option<Fq> {
    let sixteen = ctx.elem(16);
    let target = ctx.elem(t);
    let mut x = Fq::ONE;
    for i in 0..t {
        if x == target {
            return Some(ctx.pow(ctx.elem(4), i));
        }
        x = ctx.mul(x, sixteen);
    }
    None
}

pub fn build_rootset(ctx: &FieldCtx, d: u64) -> Result<RootSet> {
    let q = ctx.q();
    if d == 0 || d % 2 == 0 {
        return Err(Error::BadDivisor { d, reason: "must be odd and positive" });
    }
    if (q - 1) % d != 0 {
        return Err(Error::BadDivisor { d, reason: "must divide q - 1" });
    }
    let special = SpecialPrime::detect(q);
    let mut gamma = ctx.root_of_unity(d)?;
    match special {
        Some(SpecialPrime::TwoTPlusOne { t }) if d == t => gamma = ctx.elem(4),
        Some(SpecialPrime::FourTPlusOne { t }) if d == t && ctx.element_order(ctx.elem(16))? == t => {
            gamma = ctx.elem(16)
        }
        _ => {}
    }
    debug_assert_eq!(ctx.element_order(gamma), Ok(d));

    let mut alphas: Vec<Fq> = (1..=ctx.s()).map(|k| ctx.root_of_unity(1 << k)).collect::<Result<_>>()?;

    let (sqrt_minus_one, sqrt_t) = match special {
        Some(SpecialPrime::FourTPlusOne { t }) => {
            let root_t = sqrt_t_from_sixteen(ctx, t).map_or_else(|| ctx.sqrt(ctx.elem(t)), Ok)?;
            let i = ctx.mul(ctx.elem(2), root_t);
            // s = 2 here, so α_4 is the square root of -1 itself
            alphas[1] = i;
            (Some(i), Some(root_t))
        }
        _ if q % 4 == 1 => (Some(ctx.sqrt(ctx.neg(Fq::ONE))?), None),
        _ => (None, None),
    };

    Ok(RootSet { d, gamma, alphas, sqrt_minus_one, sqrt_t })
}
