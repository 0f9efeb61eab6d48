use cyclofactor::field::is_prime;
use cyclofactor::poly::{binomial_irreducible, brute_factor, cyclotomic_poly, is_irreducible, is_irreducible_generic};
use cyclofactor::{
    cyclotomic_ladder, factor_cyclotomic, factor_special, factor_x2nd_minus_1, trace_sequence, verify, Error, ExtCtx,
    FactorShape, FieldCtx, Fq, PolyRing, Polynomial, SpecialPrime,
};

fn odd_primes(below: u64) -> impl Iterator<Item = u64> {
    (3..below).step_by(2).filter(|&q| is_prime(q))
}

fn odd_divisors(m: u64) -> Vec<u64> {
    (1..=m).step_by(2).filter(|d| m % d == 0).collect()
}

/// Every `(q, d, n)` with `q < q_below`, `d` an odd divisor of `q - 1`,
/// `n >= 1` and `2^n·d <= max_order`.
fn triples(q_below: u64, max_order: u64) -> Vec<(u64, u64, u32)> {
    let mut out = Vec::new();
    for q in odd_primes(q_below) {
        for d in odd_divisors(q - 1) {
            let mut n = 1;
            while d << n <= max_order {
                out.push((q, d, n));
                n += 1;
            }
        }
    }
    out
}

#[test]
fn product_is_x_pow_m_minus_one_everywhere_below_the_cap() {
    let triples = triples(300, 4096);
    assert!(triples.len() > 1000);
    for (q, d, n) in triples {
        let ctx = FieldCtx::new(q).unwrap();
        let ring = PolyRing::new(&ctx);
        let f = factor_x2nd_minus_1(&ctx, d, n).unwrap();
        let m = (d << n) as usize;
        assert_eq!(f.degree_sum(), m as u64, "q={q} d={d} n={n}");
        assert_eq!(ring.product(&f.expanded(&ctx)), Polynomial::x_pow_minus_one(&ctx, m), "q={q} d={d} n={n}");
        assert!(f.factors.windows(2).all(|w| w[0] < w[1]), "not sorted and distinct: q={q} d={d} n={n}");
    }
}

#[test]
fn emitted_factors_are_irreducible() {
    for (q, d, n) in triples(80, 512) {
        let ctx = FieldCtx::new(q).unwrap();
        let f = factor_x2nd_minus_1(&ctx, d, n).unwrap();
        for shape in &f.factors {
            let p = shape.expand(&ctx);
            assert!(is_irreducible(&p, &ctx).unwrap(), "q={q} d={d} n={n} {shape:?}");
        }
    }
}

#[test]
fn matches_brute_force_on_small_targets() {
    for (q, d, n) in triples(60, 160) {
        let ctx = FieldCtx::new(q).unwrap();
        let f = factor_x2nd_minus_1(&ctx, d, n).unwrap();
        let mut mine = f.expanded(&ctx);
        mine.sort();
        let target = Polynomial::x_pow_minus_one(&ctx, (d << n) as usize);
        assert_eq!(brute_factor(&target, &ctx).unwrap(), mine, "q={q} d={d} n={n}");
    }
}

#[test]
fn special_and_general_paths_agree() {
    for q in odd_primes(2000) {
        if SpecialPrime::detect(q).is_none() {
            continue;
        }
        let ctx = FieldCtx::new(q).unwrap();
        let t = SpecialPrime::detect(q).unwrap().t();
        for n in 1..=4 {
            let special = factor_special(&ctx, n).unwrap();
            let general = factor_x2nd_minus_1(&ctx, t, n).unwrap();
            assert_eq!(special.factors, general.factors, "q={q} n={n}");
            assert_ne!(special.case, general.case);
        }
    }
}

#[test]
fn non_special_primes_are_rejected_by_the_special_path() {
    let ctx = FieldCtx::new(17).unwrap();
    assert!(matches!(factor_special(&ctx, 2), Err(Error::NotSpecialPrimePair(17))));
}

#[test]
fn cyclotomic_factors_multiply_to_the_cyclotomic_polynomial() {
    let mut checked = 0;
    for q in odd_primes(200) {
        let ctx = FieldCtx::new(q).unwrap();
        let ring = PolyRing::new(&ctx);
        for d in odd_divisors(q - 1).into_iter().filter(|&d| d > 1 && is_prime(d)) {
            for n in 1..=12 {
                if d << n > 4096 {
                    break;
                }
                match factor_cyclotomic(&ctx, d, n) {
                    Ok(f) => {
                        let phi = cyclotomic_poly(d << n, &ctx).unwrap();
                        assert_eq!(ring.product(&f.expanded(&ctx)), phi, "q={q} d={d} n={n}");
                        assert_eq!(f.degree_sum(), f.modulus_degree());
                        checked += 1;
                    }
                    Err(Error::NTooSmall { min, .. }) => assert!(n < min),
                    Err(e) => panic!("q={q} d={d} n={n}: {e}"),
                }
            }
        }
    }
    assert!(checked > 200);
}

#[test]
fn ladder_blocks_split_into_their_assigned_factors() {
    for (q, d, n) in triples(120, 1024) {
        let ctx = FieldCtx::new(q).unwrap();
        let ring = PolyRing::new(&ctx);
        let blocks = cyclotomic_ladder(&ctx, d, n).unwrap();
        assert_eq!(blocks.len(), n as usize + 1);
        let all: Vec<Polynomial> = blocks.iter().map(|b| b.polynomial.clone()).collect();
        assert_eq!(ring.product(&all), Polynomial::x_pow_minus_one(&ctx, (d << n) as usize));
        let mut from_blocks: Vec<FactorShape> = Vec::new();
        for b in &blocks {
            let expanded: Vec<Polynomial> = b.factors.iter().map(|f| f.expand(&ctx)).collect();
            assert_eq!(ring.product(&expanded), b.polynomial, "q={q} d={d} n={n} level={}", b.level);
            from_blocks.extend_from_slice(&b.factors);
        }
        from_blocks.sort();
        assert_eq!(from_blocks, factor_x2nd_minus_1(&ctx, d, n).unwrap().factors);
    }
}

/// `x^2 - c` for every primitive `2^k`-th root `c` in `F_q`: reducible below
/// level `s`, irreducible at `s`.
#[test]
fn binomial_boundary_for_one_mod_four() {
    for q in odd_primes(400).filter(|q| q % 4 == 1) {
        let ctx = FieldCtx::new(q).unwrap();
        let s = ctx.s();
        for k in 1..=s {
            let alpha = ctx.root_of_unity(1 << k).unwrap();
            for e in (1..1u64 << k).step_by(2) {
                let c = ctx.pow(alpha, e);
                let expected = k == s;
                let p = Polynomial::binomial(&ctx, 2, c);
                assert_eq!(binomial_irreducible(&ctx, 2, c), expected, "q={q} k={k}");
                assert_eq!(is_irreducible_generic(&p, &ctx).unwrap(), expected, "q={q} k={k}");
            }
        }
    }
}

/// `x^4 - τ·x^2 + χ` built from level-`k` traces: reducible below level `u`,
/// irreducible at `u`.
#[test]
fn trinomial_boundary_for_three_mod_four() {
    for q in odd_primes(500).filter(|q| q % 4 == 3) {
        let ctx = FieldCtx::new(q).unwrap();
        let ext = ExtCtx::new(&ctx).unwrap();
        let u = ext.u();
        for k in 3..=u {
            let chi = ext.chi_level(k);
            for &tau in &trace_sequence(&ext, k).unwrap().traces {
                let p = Polynomial::from_fq(vec![chi, Fq::ZERO, ctx.neg(tau), Fq::ZERO, Fq::ONE]);
                let expected = k == u;
                assert_eq!(is_irreducible(&p, &ctx).unwrap(), expected, "q={q} k={k}");
                assert_eq!(is_irreducible_generic(&p, &ctx).unwrap(), expected, "q={q} k={k}");
                let quad = Polynomial::from_fq(vec![chi, ctx.neg(tau), Fq::ONE]);
                assert!(is_irreducible_generic(&quad, &ctx).unwrap(), "q={q} k={k}");
            }
        }
    }
}

#[test]
fn documented_small_cases() {
    let ctx = FieldCtx::new(13).unwrap();
    let f = factor_cyclotomic(&ctx, 3, 2).unwrap();
    let v = verify(&f, &ctx, 4096).unwrap();
    assert!(v.passed() && v.oracle_match == Some(true));
    assert_eq!(f.target_polynomial(&ctx).unwrap(), cyclotomic_poly(12, &ctx).unwrap());

    let ctx = FieldCtx::new(149).unwrap();
    let f = factor_x2nd_minus_1(&ctx, 37, 2).unwrap();
    assert_eq!(f.factors.len(), 148);
    assert!(f.factors.iter().all(FactorShape::is_linear));

    let ctx = FieldCtx::new(5).unwrap();
    let f = factor_x2nd_minus_1(&ctx, 1, 1).unwrap();
    let expected = vec![FactorShape::linear(ctx.elem(1)), FactorShape::linear(ctx.elem(4))];
    let mut got = f.factors.clone();
    got.sort();
    let mut want = expected;
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn verification_of_the_larger_examples() {
    let ctx = FieldCtx::new(23).unwrap();
    let f = factor_x2nd_minus_1(&ctx, 11, 6).unwrap();
    assert_eq!(f.factors.len(), 187);
    let v = verify(&f, &ctx, 2048).unwrap();
    assert!(v.passed(), "{v:?}");
    assert_eq!(v.oracle_match, Some(true));
}
