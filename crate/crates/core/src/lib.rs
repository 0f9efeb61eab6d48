//! Explicit factorizations of `x^(2^n·d) - 1` and of the cyclotomic
//! polynomials `Φ_{2^n·d}(x)` into irreducibles over a prime field `F_q`,
//! together with a generic polynomial toolkit that checks them
//! independently.
//!
//! ```
//! use cyclofactor::{factor_x2nd_minus_1, FieldCtx};
//!
//! let ctx = FieldCtx::new(23).unwrap();
//! let f = factor_x2nd_minus_1(&ctx, 11, 5).unwrap();
//! assert_eq!(f.factors.len(), 143);
//! assert_eq!(f.degree_sum(), 352);
//! ```

pub mod engine;
pub mod error;
pub mod ext;
pub mod field;
pub mod poly;
pub mod subgroups;
pub mod trace;

pub use engine::{
    cyclotomic_ladder, factor_cyclotomic, factor_cyclotomic_special, factor_special, factor_x2nd_minus_1, verify,
    CaseTag, FactorShape, Factorization, LadderBlock, Target, Verification,
};
pub use error::{Error, Result};
pub use ext::{ExtCtx, ExtElement};
pub use field::{FieldCtx, Fq};
pub use poly::{PolyRing, Polynomial};
pub use subgroups::{build_rootset, subgroup_report, RootSet, SpecialPrime, SubgroupReport};
pub use trace::{trace_sequence, TraceTable};
