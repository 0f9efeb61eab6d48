//! Reference data for the five worked examples, and the runner that
//! recomputes them and diffs the results.

use cyclofactor::ext::ExtCtx;
use cyclofactor::trace::initial_trace;
use cyclofactor::{
    build_rootset, factor_cyclotomic, factor_special, factor_x2nd_minus_1, trace_sequence, FactorShape, Factorization,
    FieldCtx, Fq, Result,
};
use serde::Serialize;

/// One factor expected to appear, as `(r, coefficients)` in the document
/// encoding: `[c]` for `x^(2^r) - c`, `[a, c]` for the trinomial.
type Sample = (u32, &'static [u64]);

enum Run {
    Factor { d: u64, n: u32 },
    Special { n: u32 },
    Cyclotomic { d: u64, n: u32 },
}

struct CountCheck {
    run: Run,
    count: usize,
    samples: &'static [Sample],
}

struct Golden {
    q: u64,
    counts: &'static [CountCheck],
    /// `(k, table)` for `q ≡ 3 mod 4`.
    traces: &'static [(u32, &'static [u64])],
    /// Unordered `{√-1, -√-1}` and `{√t, -√t}` for `q = 4t+1`.
    sqrt_minus_one: Option<[u64; 2]>,
    sqrt_t: Option<[u64; 2]>,
}

const GOLDEN: &[Golden] = &[
    Golden {
        q: 347,
        counts: &[
            CountCheck {
                run: Run::Special { n: 3 },
                count: 865,
                // x^2 ± 107x - 1
                samples: &[(0, &[107, 346]), (0, &[240, 346])],
            },
            CountCheck { run: Run::Special { n: 4 }, count: 1211, samples: &[(1, &[107, 346])] },
        ],
        traces: &[(3, &[107, 240])],
        sqrt_minus_one: None,
        sqrt_t: None,
    },
    Golden {
        q: 23,
        counts: &[
            // x^2 ± 4·4x - 16 and x^4 ± 4·7x^2 - 16 at j = 1
            CountCheck { run: Run::Factor { d: 11, n: 5 }, count: 143, samples: &[(0, &[16, 7]), (1, &[5, 7])] },
            CountCheck { run: Run::Factor { d: 11, n: 6 }, count: 187, samples: &[(2, &[16, 7]), (2, &[7, 7])] },
            CountCheck {
                run: Run::Cyclotomic { d: 11, n: 5 },
                count: 40,
                samples: &[(1, &[16, 7]), (1, &[7, 7]), (1, &[5, 7]), (1, &[18, 7])],
            },
        ],
        traces: &[(3, &[18, 5]), (4, &[4, 7, 19, 16])],
        sqrt_minus_one: None,
        sqrt_t: None,
    },
    Golden {
        q: 149,
        counts: &[
            CountCheck { run: Run::Special { n: 2 }, count: 148, samples: &[(0, &[44]), (0, &[105])] },
            CountCheck { run: Run::Special { n: 3 }, count: 222, samples: &[(1, &[44]), (1, &[105])] },
        ],
        traces: &[],
        sqrt_minus_one: Some([44, 105]),
        sqrt_t: None,
    },
    Golden {
        q: 53,
        counts: &[
            CountCheck { run: Run::Special { n: 2 }, count: 52, samples: &[(0, &[30]), (0, &[23])] },
            CountCheck { run: Run::Special { n: 3 }, count: 78, samples: &[(1, &[30]), (1, &[23])] },
        ],
        traces: &[],
        sqrt_minus_one: Some([30, 23]),
        sqrt_t: Some([15, 38]),
    },
    Golden {
        q: 59,
        counts: &[CountCheck {
            run: Run::Cyclotomic { d: 29, n: 4 },
            count: 56,
            // x^4 ± 4·36x^2 - 16
            samples: &[(1, &[26, 43]), (1, &[33, 43])],
        }],
        traces: &[(3, &[36, 23])],
        sqrt_minus_one: None,
        sqrt_t: None,
    },
];

/// The primes that have reference data.
pub fn example_primes() -> Vec<u64> {
    GOLDEN.iter().map(|g| g.q).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub what: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleOutcome {
    pub q: u64,
    pub checks: Vec<CheckLine>,
}

impl ExampleOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn line(what: String, expected: String, actual: String) -> CheckLine {
    let ok = expected == actual;
    CheckLine { what, expected, actual, ok }
}

fn run_one(ctx: &FieldCtx, run: &Run) -> Result<(String, Factorization)> {
    Ok(match *run {
        Run::Factor { d, n } => (format!("factor --d {d} --n {n}"), factor_x2nd_minus_1(ctx, d, n)?),
        Run::Special { n } => (format!("factor --special --n {n}"), factor_special(ctx, n)?),
        Run::Cyclotomic { d, n } => (format!("cyclotomic --d {d} --n {n}"), factor_cyclotomic(ctx, d, n)?),
    })
}

fn encode(shape: &FactorShape) -> (u32, Vec<u64>) {
    (shape.r(), shape.coefficients().iter().map(|c| c.value()).collect())
}

fn sorted_pair(ctx: &FieldCtx, x: Fq) -> String {
    let mut v = [x.value(), ctx.neg(x).value()];
    v.sort_unstable();
    format!("{v:?}")
}

fn sorted_list(v: &[u64]) -> String {
    let mut v = v.to_vec();
    v.sort_unstable();
    format!("{v:?}")
}

/// Recomputes one worked example. With `perturb`, one computed coefficient
/// is shifted before comparison, which must make the example fail.
fn check_example(g: &Golden, perturb: bool) -> Result<ExampleOutcome> {
    let ctx = FieldCtx::new(g.q)?;
    let mut checks = Vec::new();
    let mut perturb = perturb;
    for c in g.counts {
        let (label, fact) = run_one(&ctx, &c.run)?;
        checks.push(line(format!("{label}: factor count"), c.count.to_string(), fact.factors.len().to_string()));
        let mut present: Vec<(u32, Vec<u64>)> = fact.factors.iter().map(encode).collect();
        if std::mem::take(&mut perturb) {
            let (r, coeffs) = c.samples[0];
            if let Some(hit) = present.iter_mut().find(|(pr, pc)| *pr == r && pc.as_slice() == coeffs) {
                hit.1[0] = (hit.1[0] + 1) % g.q;
            }
        }
        for &(r, coeffs) in c.samples {
            let found = present.iter().any(|(pr, pc)| *pr == r && pc.as_slice() == coeffs);
            checks.push(line(
                format!("{label}: factor r={r} coefficients={coeffs:?}"),
                "present".to_string(),
                if found { "present" } else { "missing" }.to_string(),
            ));
        }
    }
    if !g.traces.is_empty() {
        let ext = ExtCtx::new(&ctx)?;
        for &(k, expected) in g.traces {
            let table = trace_sequence(&ext, k)?;
            let actual: Vec<u64> = table.traces.iter().map(|t| t.value()).collect();
            checks.push(line(format!("trace table k={k}"), sorted_list(expected), sorted_list(&actual)));
            if k == 3 {
                checks.push(line(
                    "initial trace k=3".to_string(),
                    expected[0].to_string(),
                    initial_trace(&ext, 3)?.value().to_string(),
                ));
            }
        }
    }
    if g.sqrt_minus_one.is_some() || g.sqrt_t.is_some() {
        let roots = build_rootset(&ctx, (g.q - 1) / 4)?;
        if let (Some(expected), Some(i)) = (g.sqrt_minus_one, roots.sqrt_minus_one) {
            checks.push(line("sqrt(-1) pair".to_string(), sorted_list(&expected), sorted_pair(&ctx, i)));
        }
        if let (Some(expected), Some(r)) = (g.sqrt_t, roots.sqrt_t) {
            checks.push(line("sqrt(t) pair".to_string(), sorted_list(&expected), sorted_pair(&ctx, r)));
        }
    }
    Ok(ExampleOutcome { q: g.q, checks })
}

/// Reruns every worked example, or just the one for `only`.
pub fn run_examples(only: Option<u64>, perturb: bool) -> Result<Vec<ExampleOutcome>> {
    GOLDEN.iter().filter(|g| only.is_none_or(|q| q == g.q)).map(|g| check_example(g, perturb)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_examples_pass() {
        let out = run_examples(None, false).unwrap();
        assert_eq!(out.len(), 5);
        for o in &out {
            assert!(o.passed(), "{o:#?}");
        }
    }

    #[test]
    fn perturbation_is_detected() {
        for q in example_primes() {
            let out = run_examples(Some(q), true).unwrap();
            assert_eq!(out.len(), 1);
            assert!(!out[0].passed(), "q={q}");
        }
    }

    #[test]
    fn unknown_prime_selects_nothing() {
        assert!(run_examples(Some(7), false).unwrap().is_empty());
    }
}
