//! Traces of odd powers of primitive `2^k`-th roots of unity in `F_{q²}`.
//!
//! For a primitive `2^k`-th root `β` (with `β^(q+1) = χ = ±1`), the values
//! `T(β^m)` obey the Lucas-style recursion
//!
//! ```text
//! T(β^(2i-1)) = T(β)·T((β²)^(i-1)) - χ·T(β^(2i-3))
//! ```
//!
//! seeded by `T(β_4) = 0` and `T(β_{2^k}) = (T(β_{2^(k-1)}) + 2χ)^((q+1)/4)`.
//! Only base-field arithmetic is needed; the extension is used to cross-check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::{ExtCtx, ExtElement};
use crate::field::Fq;

/// The `2^(k-2)` distinct traces at level `k`: the first half from the
/// recursion, the second half their negatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceTable {
    pub k: u32,
    pub traces: Vec<Fq>,
}

impl TraceTable {
    /// The recursion-generated entries `T(β^(2i-1))`, `1 <= i <= 2^(k-3)`.
    pub fn first_half(&self) -> &[Fq] {
        &self.traces[..self.traces.len() / 2]
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }
}

/// `T(β_{2^k})` for the recursion's root at level `k`. Level 2 gives 0.
pub fn initial_trace(ctx: &ExtCtx, k: u32) -> Result<Fq> {
    let u = ctx.u();
    if !(2..=u).contains(&k) {
        return Err(Error::KOutOfRange { k, min: 2, max: u });
    }
    let f = ctx.base();
    let mut t = Fq::ZERO;
    for level in 3..=k {
        let chi = ctx.chi_level(level);
        let arg = f.add(t, f.add(chi, chi));
        t = f.pow(arg, (f.q() + 1) / 4);
    }
    Ok(t)
}

/// The trace table at level `k`, memoized inside `ctx`.
pub fn trace_sequence(ctx: &ExtCtx, k: u32) -> Result<&TraceTable> {
    let u = ctx.u();
    if !(3..=u).contains(&k) {
        return Err(Error::KOutOfRange { k, min: 3, max: u });
    }
    Ok(ctx.tables[k as usize].get_or_init(|| build_table(ctx, k)))
}

fn build_table(ctx: &ExtCtx, k: u32) -> TraceTable {
    let f = ctx.base();
    let t1 = initial_trace(ctx, k).expect("level checked by caller");
    let chi = ctx.chi_level(k);
    let half = 1usize << (k - 3);
    let mut traces = Vec::with_capacity(2 * half);
    // T(β^-1) = χ·T(β), which makes the i = 1 step return T(β) itself.
    let mut prev = f.mul(chi, t1);
    for i in 1..=half {
        let lower = trace_of_power(ctx, k - 1, (i - 1) as u64);
        let next = f.sub(f.mul(t1, lower), f.mul(chi, prev));
        traces.push(next);
        prev = next;
    }
    for i in 0..half {
        traces.push(f.neg(traces[i]));
    }
    TraceTable { k, traces }
}

/// `T(β^m)` where `β` is the recursion's primitive `2^level`-th root.
///
/// Reduces `m` with `β^(2^(level-1)) = -1` and `T(β^-m) = χ^m·T(β^m)` until it
/// lands in the first half of a trace table, or drops to a lower level when
/// `m` is even.
pub fn trace_of_power(ctx: &ExtCtx, level: u32, m: u64) -> Fq {
    let f = ctx.base();
    let two = f.add(Fq::ONE, Fq::ONE);
    let mut m = m % (1u64 << level);
    if m == 0 {
        return two;
    }
    match level {
        0 => return two,
        1 => return if m % 2 == 0 { two } else { f.neg(two) },
        2 => return if m % 2 == 1 { Fq::ZERO } else { trace_of_power(ctx, 1, m / 2) },
        _ => {}
    }
    if m % 2 == 0 {
        return trace_of_power(ctx, level - 1, m / 2);
    }
    let half_period = 1u64 << (level - 1);
    let mut negate = false;
    if m >= half_period {
        m -= half_period;
        negate = !negate;
    }
    let quarter = 1u64 << (level - 2);
    let mut scale = Fq::ONE;
    if m > quarter {
        // β^m = -β^-(half_period - m), and T(β^-j) = χ·T(β^j) for odd j
        m = half_period - m;
        negate = !negate;
        scale = ctx.chi_level(level);
    }
    let table = trace_sequence(ctx, level).expect("level >= 3");
    let v = f.mul(scale, table.traces[(m / 2) as usize]);
    if negate {
        f.neg(v)
    } else {
        v
    }
}

/// An odd power of `beta(k)` whose trace equals [`initial_trace`], i.e. the
/// root the recursion implicitly works with.
pub fn aligned_beta(ctx: &ExtCtx, k: u32) -> Result<ExtElement> {
    let target = initial_trace(ctx, k)?;
    let b = ctx.beta(k)?;
    let b2 = ctx.mul(b, b);
    let mut cur = b;
    for _ in 0..(1u64 << k.saturating_sub(1)).max(1) {
        if ctx.trace(cur) == target {
            return Ok(cur);
        }
        cur = ctx.mul(cur, b2);
    }
    unreachable!("every level has a primitive root with the recursion's trace")
}

/// `[T(β'^m)]` by direct exponentiation in `F_{q²}`, one entry per Frobenius
/// orbit `{m, q·m mod 2^k}` of odd exponents `m < 2^k`, taking the smaller
/// exponent of each orbit and listing them in increasing order. `β'` is
/// [`aligned_beta`].
///
/// Below level `u` the orbits are `{m, -m}` and the representatives are
/// exactly `m = 2i - 1` for `1 <= i <= 2^(k-2)`. At level `u` the orbits are
/// `{m, 2^(k-1) - m}`, so `T(β'^(2i-1))` over that same range would repeat
/// each value twice.
pub fn direct_traces(ctx: &ExtCtx, k: u32) -> Result<Vec<Fq>> {
    let u = ctx.u();
    if !(3..=u).contains(&k) {
        return Err(Error::KOutOfRange { k, min: 3, max: u });
    }
    let b = aligned_beta(ctx, k)?;
    let modulus = 1u64 << k;
    let q = ctx.base().q() % modulus;
    Ok((1..modulus).step_by(2).filter(|&m| m <= m * q % modulus).map(|m| ctx.trace(ctx.pow(b, m))).collect())
}

/// `[T(β'^(2i-1)) : 1 <= i <= 2^(k-2)]` with `β'` from [`aligned_beta`],
/// without identifying conjugate exponents.
pub fn odd_power_traces(ctx: &ExtCtx, k: u32) -> Result<Vec<Fq>> {
    let u = ctx.u();
    if !(3..=u).contains(&k) {
        return Err(Error::KOutOfRange { k, min: 3, max: u });
    }
    let b = aligned_beta(ctx, k)?;
    Ok((1..=(1u64 << (k - 2))).map(|i| ctx.trace(ctx.pow(b, 2 * i - 1))).collect())
}
