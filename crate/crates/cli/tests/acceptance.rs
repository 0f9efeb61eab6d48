//! The acceptance suite: one PASS/FAIL line per criterion, nonzero exit if
//! any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use cyclofactor::field::is_prime;
use cyclofactor::poly::brute_factor;
use cyclofactor::subgroups::ClaimStatus;
use cyclofactor::trace::{aligned_beta, direct_traces, initial_trace};
use cyclofactor::{
    build_rootset, factor_special, factor_x2nd_minus_1, subgroup_report, trace_sequence, ExtCtx, FactorShape, FieldCtx,
    Fq, Polynomial, SpecialPrime,
};
use cyclofactor_cli::document::{decode_document, OutputDocument};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclofactor")).args(args).output().expect("the cyclofactor binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Runs a factoring command with `--verify --format json`, requiring exit 0
/// and a verification block that passed.
fn verified_document(args: &[&str]) -> Result<OutputDocument, String> {
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--verify", "--format", "json"]);
    let (code, stdout) = cli(&full);
    ensure!(code == 0, "`{}` exited with {code}", full.join(" "));
    let text = String::from_utf8(stdout).map_err(|e| e.to_string())?;
    let doc = decode_document(&text).map_err(|e| e.to_string())?;
    let v = doc.verification.ok_or("no verification block")?;
    ensure!(v.product_ok, "`{}`: product check failed", args.join(" "));
    ensure!(v.irreducible_ok, "`{}`: a factor is reducible", args.join(" "));
    ensure!(v.oracle_match != Some(false), "`{}`: brute-force factorization differs", args.join(" "));
    Ok(doc)
}

fn has_factor(doc: &OutputDocument, r: u32, coefficients: &[u64]) -> bool {
    doc.factors.iter().any(|f| f.r == r && f.coefficients == coefficients)
}

fn sorted_pair(ctx: &FieldCtx, x: Fq) -> [u64; 2] {
    let mut v = [x.value(), ctx.neg(x).value()];
    v.sort_unstable();
    v
}

fn timed(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(())
}

/// `x^(2^(r+1)) + a·x^(2^r) + c` with `c = -g^(2j)` and `a = ±g^j·η` for some
/// `1 <= j < d` and `η` in `etas`.
fn matches_trinomial_template(ctx: &FieldCtx, shape: &FactorShape, g: u64, d: u64, etas: &[u64]) -> bool {
    let FactorShape::Trinomial { a, c, .. } = *shape else {
        return false;
    };
    let g = ctx.elem(g);
    (1..d).any(|j| {
        let gj = ctx.pow(g, j);
        c == ctx.neg(ctx.mul(gj, gj))
            && etas.iter().any(|&eta| {
                let m = ctx.mul(gj, ctx.elem(eta));
                a == m || a == ctx.neg(m)
            })
    })
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for (n, count) in [(3, 865), (4, 1211)] {
        let doc = verified_document(&["factor", "--special", "--q", "347", "--n", &n.to_string()])?;
        ensure!(doc.factors.len() == count, "n={n}: {} factors, expected {count}", doc.factors.len());
        ensure!(count == 173 * (2 * n - 1), "count formula");
        // x^(2^(n-2)) ± 107·x^(2^(n-3)) - 1 at j = 0
        let r = n as u32 - 3;
        ensure!(
            has_factor(&doc, r, &[107, 346]) && has_factor(&doc, r, &[240, 346]),
            "n={n}: trinomials with trace 107 missing"
        );
    }
    let ctx = FieldCtx::new(347).unwrap();
    let ext = ExtCtx::new(&ctx).unwrap();
    ensure!(initial_trace(&ext, 3).unwrap().value() == 107, "T(β_8) != 107");
    timed(Duration::from_secs(60), start)?;
    Ok("865 and 1211 factors, T(beta_8)=107, verified within 60 s".into())
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let small = verified_document(&["factor", "--q", "23", "--d", "11", "--n", "5"])?;
    ensure!(small.factors.len() == 143, "x^352-1: {} factors", small.factors.len());
    ensure!(small.verification.unwrap().oracle_match == Some(true), "x^352-1: brute-force comparison did not run");
    let big = verified_document(&["factor", "--q", "23", "--d", "11", "--n", "6"])?;
    ensure!(big.factors.len() == 187, "x^704-1: {} factors", big.factors.len());
    let phi = verified_document(&["cyclotomic", "--q", "23", "--d", "11", "--n", "5"])?;
    ensure!(phi.factors.len() == 40, "Φ_352: {} factors", phi.factors.len());
    let ctx = FieldCtx::new(23).unwrap();
    let shapes = phi.shapes().map_err(|e| e.to_string())?;
    for s in &shapes {
        ensure!(s.degree() == 4, "Φ_352 factor {s:?} is not quartic");
        ensure!(matches_trinomial_template(&ctx, s, 4, 11, &[4, 7]), "Φ_352 factor {s:?} off template");
    }
    let ext = ExtCtx::new(&ctx).unwrap();
    let mut table: Vec<u64> = trace_sequence(&ext, 4).unwrap().traces.iter().map(|t| t.value()).collect();
    table.sort_unstable();
    ensure!(table == [4, 7, 16, 19], "trace table k=4 is {table:?}");
    timed(Duration::from_secs(120), start)?;
    Ok("143/187/40 factors, trace table {4, 7, 16, 19}, oracle match, within 120 s".into())
}

fn criterion_3() -> Check {
    for n in [2u64, 3] {
        let doc = verified_document(&["factor", "--special", "--q", "149", "--n", &n.to_string()])?;
        ensure!(doc.factors.len() as u64 == 74 * n, "n={n}: {} factors", doc.factors.len());
        let r = n as u32 - 2;
        ensure!(has_factor(&doc, r, &[44]) && has_factor(&doc, r, &[105]), "n={n}: x^(2^r) ∓ √-1 missing");
    }
    let ctx = FieldCtx::new(149).unwrap();
    let roots = build_rootset(&ctx, 37).unwrap();
    let i = roots.sqrt_minus_one.ok_or("no sqrt(-1)")?;
    ensure!(sorted_pair(&ctx, i) == [44, 105], "sqrt(-1) pair {:?}", sorted_pair(&ctx, i));
    // 2·16^9 is 2·4^i with 16^i = t = 37
    let closed = ctx.mul(ctx.elem(2), ctx.pow(ctx.elem(16), 9));
    ensure!(ctx.pow(ctx.elem(16), 18) == ctx.elem(37), "16^18 != 37");
    ensure!(sorted_pair(&ctx, closed) == [44, 105], "2·16^9 = {}", closed.value());
    Ok("148 and 222 factors, sqrt(-1) pair {44, 105}, products exact".into())
}

fn criterion_4() -> Check {
    for n in [2u64, 3] {
        let doc = verified_document(&["factor", "--special", "--q", "53", "--n", &n.to_string()])?;
        ensure!(doc.factors.len() as u64 == 26 * n, "n={n}: {} factors", doc.factors.len());
    }
    let ctx = FieldCtx::new(53).unwrap();
    let roots = build_rootset(&ctx, 13).unwrap();
    let i = roots.sqrt_minus_one.ok_or("no sqrt(-1)")?;
    let r = roots.sqrt_t.ok_or("no sqrt(13)")?;
    ensure!(sorted_pair(&ctx, i) == [23, 30], "sqrt(-1) pair {:?}", sorted_pair(&ctx, i));
    ensure!(sorted_pair(&ctx, r) == [15, 38], "sqrt(13) pair {:?}", sorted_pair(&ctx, r));
    ensure!(ctx.mul(r, r) == ctx.elem(13), "sqrt(13) squared");
    Ok("52 and 78 factors, sqrt(-1) pair {23, 30}, sqrt(13) pair {15, 38}".into())
}

fn criterion_5() -> Check {
    let doc = verified_document(&["cyclotomic", "--q", "59", "--d", "29", "--n", "4"])?;
    ensure!(doc.factors.len() == 56, "{} factors", doc.factors.len());
    let ctx = FieldCtx::new(59).unwrap();
    for s in doc.shapes().map_err(|e| e.to_string())? {
        ensure!(s.kind() == "trinomial" && s.degree() == 4, "{s:?} is not a quartic trinomial");
        ensure!(matches_trinomial_template(&ctx, &s, 4, 29, &[36]), "{s:?} is not x^4 ± 4^j·36·x^2 - 16^j");
    }
    Ok("56 quartic trinomials x^4 ± 4^j·36·x^2 - 16^j, all irreducible".into())
}

fn odd_divisors(m: u64) -> Vec<u64> {
    (1..=m).step_by(2).filter(|d| m % d == 0).collect()
}

fn criterion_6() -> Check {
    let mut checked = [0usize; 4];
    for q in (3..300u64).step_by(2).filter(|&q| is_prime(q)) {
        let ctx = FieldCtx::new(q).unwrap();
        let s = ctx.s();
        // u is only defined through F_{q²} when q ≡ 3 mod 4
        let u = if q % 4 == 3 { ExtCtx::new(&ctx).unwrap().u() } else { 0 };
        for d in odd_divisors(q - 1) {
            let mut n = 1u32;
            while d << n <= 2048 {
                let count = factor_x2nd_minus_1(&ctx, d, n).map_err(|e| e.to_string())?.factors.len() as u64;
                let expected = if q % 4 == 1 && n > s {
                    checked[0] += 1;
                    Some((1u64 << (s - 1)) * (n - s + 2) as u64 * d)
                } else if q % 4 == 3 && n >= u {
                    checked[1] += 1;
                    Some(d * ((1u64 << (u - 2)) * (n - u + 2) as u64 + 1))
                } else {
                    None
                };
                if let Some(e) = expected {
                    ensure!(count == e, "q={q} d={d} n={n}: {count} factors, formula gives {e}");
                }
                n += 1;
            }
        }
        if let Some(SpecialPrime::FourTPlusOne { t }) = SpecialPrime::detect(q) {
            let mut n = 2u32;
            while t << n <= 2048 {
                let count = factor_special(&ctx, n).map_err(|e| e.to_string())?.factors.len() as u64;
                ensure!(count == 2 * n as u64 * t, "q={q} n={n}: {count} factors, expected 2nt");
                checked[2] += 1;
                n += 1;
            }
        }
        if let (Some(SpecialPrime::TwoTPlusOne { t }), 3) = (SpecialPrime::detect(q), u) {
            let mut n = 3u32;
            while t << n <= 2048 {
                let count = factor_special(&ctx, n).map_err(|e| e.to_string())?.factors.len() as u64;
                ensure!(count == t * (2 * n as u64 - 1), "q={q} n={n}: {count} factors, expected t(2n-1)");
                checked[3] += 1;
                n += 1;
            }
        }
    }
    ensure!(checked.iter().all(|&c| c > 0), "a formula family was never exercised: {checked:?}");
    Ok(format!(
        "{} (q≡1 mod 4), {} (q≡3 mod 4), {} (4t+1), {} (2t+1, u=3) cases, zero failures",
        checked[0], checked[1], checked[2], checked[3]
    ))
}

/// Seed and caps for the randomized oracle comparison.
const ORACLE_SEED: u64 = 0x5eed_0007;
const ORACLE_SAMPLES: usize = 100;
const ORACLE_MAX_Q: u64 = 300;
const ORACLE_MAX_ORDER: u64 = 2048;

fn criterion_7() -> Check {
    let mut valid = Vec::new();
    for q in (3..ORACLE_MAX_Q).step_by(2).filter(|&q| is_prime(q)) {
        for d in odd_divisors(q - 1) {
            let mut n = 1u32;
            while d << n <= ORACLE_MAX_ORDER {
                valid.push((q, d, n));
                n += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut max_degree = 0;
    for _ in 0..ORACLE_SAMPLES {
        let (q, d, n) = valid[rng.random_range(0..valid.len())];
        let ctx = FieldCtx::new(q).unwrap();
        let fact = factor_x2nd_minus_1(&ctx, d, n).map_err(|e| e.to_string())?;
        let mut mine = fact.expanded(&ctx);
        mine.sort();
        let target = Polynomial::x_pow_minus_one(&ctx, (d << n) as usize);
        let brute = brute_factor(&target, &ctx).map_err(|e| e.to_string())?;
        ensure!(brute == mine, "q={q} d={d} n={n}: engine and brute force disagree");
        max_degree = max_degree.max(d << n);
    }
    Ok(format!(
        "{ORACLE_SAMPLES} random triples (q < {ORACLE_MAX_Q}, 2^n·d <= {ORACLE_MAX_ORDER}, largest {max_degree}), zero mismatches"
    ))
}

fn criterion_8() -> Check {
    let (mut primes, mut pairs) = (0, 0);
    let special_claims =
        ["four-generates-o_q-equals-s_q", "t-generates-o_q", "sixteen-generates-o_q", "four-generates-s_q"];
    for q in (3..2000u64).step_by(2).filter(|&q| is_prime(q)) {
        let report = subgroup_report(&FieldCtx::new(q).unwrap());
        if let Some(c) = report.failed().next() {
            return Err(format!("q={q}: claim {} failed", c.name));
        }
        ensure!(report.claim("legendre-of-2") == Some(ClaimStatus::Verified), "q={q}: legendre-of-2 not checked");
        ensure!(report.o_q_order == (q - 1) >> (q - 1).trailing_zeros(), "q={q}: |O_q|");
        primes += 1;
        if report.special.is_some() {
            let verified = special_claims.iter().filter(|c| report.claim(c) == Some(ClaimStatus::Verified)).count();
            ensure!(verified > 0, "q={q}: special pair but no generator claim was checked");
            pairs += 1;
        }
    }
    Ok(format!("{primes} odd primes, {pairs} special pairs, zero failures"))
}

fn criterion_9() -> Check {
    let mut levels = 0;
    for q in (3..500u64).step_by(2).filter(|&q| q % 4 == 3 && is_prime(q)) {
        let ctx = FieldCtx::new(q).unwrap();
        let ext = ExtCtx::new(&ctx).unwrap();
        let two = ctx.elem(2);
        for k in 3..=ext.u() {
            let mut rec = trace_sequence(&ext, k).unwrap().traces.clone();
            let mut direct = direct_traces(&ext, k).unwrap();
            rec.sort_unstable();
            direct.sort_unstable();
            ensure!(rec == direct, "q={q} k={k}: recursion {rec:?} vs direct {direct:?}");

            let chi = ext.chi_level(k);
            let t_k = initial_trace(&ext, k).unwrap();
            let t_lower = initial_trace(&ext, k - 1).unwrap();
            ensure!(ctx.sub(ctx.mul(t_k, t_k), ctx.mul(two, chi)) == t_lower, "q={q} k={k}: scalar square");

            let b = aligned_beta(&ext, k).unwrap();
            ensure!(ext.order(b).unwrap() == 1 << k, "q={q} k={k}: β has the wrong order");
            ensure!(ext.chi(b).unwrap() == chi, "q={q} k={k}: χ(β)");
            let tb = ext.trace(b);
            ensure!(
                ctx.sub(ctx.mul(tb, tb), ctx.mul(two, chi)) == ext.trace(ext.mul(b, b)),
                "q={q} k={k}: T(β)² - 2χ != T(β²)"
            );
            levels += 1;
        }
    }
    Ok(format!("{levels} (q, k) levels, multisets and consistency squares agree"))
}

const DETERMINISM_RUNS: &[&[&str]] = &[
    &["factor", "--q", "23", "--d", "11", "--n", "6", "--verify"],
    &["factor", "--q", "23", "--d", "11", "--n", "6", "--verify", "--format", "json", "--jobs", "4"],
    &["factor", "--special", "--q", "347", "--n", "3", "--format", "json", "--pretty", "balanced"],
    &["factor", "--special", "--q", "149", "--n", "3", "--verify"],
    &["cyclotomic", "--q", "59", "--d", "29", "--n", "4", "--verify", "--format", "json"],
    &["cyclotomic", "--q", "13", "--d", "3", "--n", "2", "--verify"],
    &["subgroup", "--q", "53", "--format", "json"],
    &["subgroup", "--q", "23"],
    &["examples"],
    &["examples", "--format", "json"],
];

fn suite_outputs() -> Vec<(i32, Vec<u8>)> {
    DETERMINISM_RUNS.iter().map(|args| cli(args)).collect()
}

fn criterion_10() -> Check {
    let first = suite_outputs();
    let second = suite_outputs();
    for ((args, a), b) in DETERMINISM_RUNS.iter().zip(&first).zip(&second) {
        ensure!(a.0 == 0, "`{}` exited with {}", args.join(" "), a.0);
        ensure!(a == b, "`{}` differs between runs", args.join(" "));
    }
    let serial = cli(&["factor", "--q", "23", "--d", "11", "--n", "6", "--format", "json", "--verify"]);
    let parallel =
        cli(&["factor", "--q", "23", "--d", "11", "--n", "6", "--format", "json", "--verify", "--jobs", "4"]);
    ensure!(serial == parallel, "--jobs 4 output differs from --jobs 1");
    let bytes: usize = first.iter().map(|o| o.1.len()).sum();
    Ok(format!("{} commands run twice, {bytes} bytes identical; --jobs 1 and 4 agree", DETERMINISM_RUNS.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("worked example q=347", criterion_1),
        ("worked example q=23", criterion_2),
        ("worked example q=149", criterion_3),
        ("worked example q=53", criterion_4),
        ("worked example q=59", criterion_5),
        ("count formulas", criterion_6),
        ("oracle equivalence", criterion_7),
        ("subgroup structure", criterion_8),
        ("trace recursion", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(format!("panic: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS  criterion {:>2}  {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL  criterion {:>2}  {name}: {why}", i + 1);
            }
        }
    }
    println!("{}/{} acceptance criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
