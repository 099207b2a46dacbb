use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus must be at least 3, got {0}")]
    ModulusTooSmall(u64),
    #[error("{0} is even; the modulus must be an odd prime")]
    EvenModulus(u64),
    #[error("{p} is composite{}", witness(*.divisor))]
    Composite { p: u64, divisor: Option<u64> },
    #[error("exponent m must be positive")]
    ZeroExponent,
    #[error("character index a = {a} is 0 mod {p}; the principal character is excluded")]
    PrincipalCharacter { p: u64, a: u64 },
    #[error("domain is empty")]
    EmptyDomain,
    #[error("value {value} appears more than once in the domain")]
    DuplicateValue { value: u64 },
    #[error("value {value} has zero multiplicity")]
    ZeroMultiplicity { value: u64 },
    #[error("k = {k} exceeds the domain size n = {n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("m = {m} does not divide p - 1 = {}; use m = gcd(m, p - 1) = {gcd} instead", .p - 1)]
    ExponentNotDivisor { m: u64, p: u64, gcd: u64 },
    #[error("hypothesis m < p^(1 - delta) fails for m = {m}, p = {p}, delta = {delta}")]
    HypothesisViolated { m: u64, p: u64, delta: f64 },
    #[error("elementary layer {k} has a non-integral coefficient at residue {b}")]
    NonIntegral { k: usize, b: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

fn witness(divisor: Option<u64>) -> String {
    match divisor {
        Some(d) => format!(" (divisible by {d})"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
