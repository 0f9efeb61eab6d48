#![no_main]

use cyclofactor::poly::text::{format_polynomial, parse_polynomial, CoeffStyle};
use cyclofactor::FieldCtx;
use libfuzzer_sys::fuzz_target;

const PRIMES: [u64; 4] = [3, 23, 347, 2_147_483_647];

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let ctx = FieldCtx::new(PRIMES[selector as usize % PRIMES.len()]).unwrap();
    let Ok(f) = parse_polynomial(text, &ctx) else {
        return;
    };
    if f.deg() > 4096 {
        return;
    }
    for style in [CoeffStyle::Canonical, CoeffStyle::Balanced] {
        let printed = format_polynomial(&f, &ctx, style);
        assert_eq!(parse_polynomial(&printed, &ctx).unwrap(), f, "{printed}");
    }
});
