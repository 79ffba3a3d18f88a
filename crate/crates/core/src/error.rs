use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("constant polynomial has no irreducibility status")]
    ConstantPolynomial,
    #[error("cannot factor the zero polynomial")]
    FactorZero,
    #[error("twisting requires a nonzero scalar")]
    ZeroTwist,
    #[error("polynomial must be monic: {0}")]
    NotMonic(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("oracle operator would be {size}x{size}; pass the override to allow more than 4096 rows")]
    OracleTooLarge { size: usize },
    #[error("distance enumeration needs {count} codewords, above the bound {bound}")]
    EnumerationBound { count: u128, bound: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
