use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is even; only odd primes are supported")]
    EvenModulus(u64),
    #[error("modulus {0} is out of range (need 3 <= q < 2^31)")]
    ModulusTooLarge(u64),
    #[error("operation is undefined on the zero element")]
    ZeroElement,
    #[error("{0} is not a quadratic residue")]
    NonResidue(u64),
    #[error("{order} does not divide q - 1 = {group_order}")]
    OrderDoesNotDivide { order: u64, group_order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("level {k} outside the supported range {min}..={max}")]
    KOutOfRange { k: u32, min: u32, max: u32 },
    #[error("the quadratic extension is only built for q = 3 mod 4 (got q = {0})")]
    NotThreeModFour(u64),
    #[error("d = {d} is not a valid divisor: {reason}")]
    BadDivisor { d: u64, reason: &'static str },
    #[error("n must be at least 1")]
    DegenerateN,
    #[error("2^{n}·{d} exceeds the supported degree {limit}")]
    ModulusDegreeTooLarge { n: u32, d: u64, limit: u64 },
    #[error("the factorization would have {count} factors, above the limit {limit}")]
    TooManyFactors { count: u64, limit: u64 },
    #[error("n = {n} is below the irreducibility threshold {min}")]
    NTooSmall { n: u32, min: u32 },
    #[error("q = {0} is neither 2t+1 nor 4t+1 with t an odd prime")]
    NotSpecialPrimePair(u64),
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("degree {degree} exceeds the oracle limit {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("modulus {m} shares a factor with q = {q}, or exceeds {limit}")]
    BadModulus { m: u64, q: u64, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
