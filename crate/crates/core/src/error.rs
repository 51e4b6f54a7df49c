use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too small for random sampling (need > 2^20)")]
    ModulusTooSmall(u64),
    #[error("modulus {0} exceeds 2^62")]
    ModulusTooLarge(u64),
    #[error("random sampling requires a prime field")]
    RandomOverRationals,
    #[error("denominator {denominator} is divisible by the modulus {prime}")]
    DenominatorDivisible { denominator: String, prime: u64 },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),
    #[error("too many variables: {0} (at most {max})", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),
    #[error("variable index {index} out of range for {nvars} variables")]
    VarOutOfRange { index: usize, nvars: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("homogeneous degrees differ: {0} vs {1}")]
    DegreeMismatch(i32, i32),
    #[error("matrix has wrong shape: expected {expected_rows} rows, got {rows}")]
    MatrixShape { expected_rows: usize, rows: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("weight {index} is zero; weights must be nonzero")]
    ZeroWeight { index: usize },
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("Groebner resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("factor {0} is not squarefree")]
    NotSquarefree(usize),
    #[error("factors {0} and {1} share a common factor")]
    NotCoprime(usize, usize),
    #[error("need the same number of factors and weights ({factors} vs {weights})")]
    WeightCount { factors: usize, weights: usize },
    #[error("at least one factor is required")]
    NoFactors,
    #[error("the weighted degree is zero")]
    ZeroTotalDegree,
    #[error("the weights annihilate the differential: every component vanishes")]
    DegenerateMap,
    #[error("Euler contraction is nonzero: the form does not descend to projective space")]
    NotProjectiveForm,
    #[error("the 1-form is identically zero")]
    ZeroForm,
    #[error("the 1-form is not integrable")]
    NotIntegrable,
    #[error("the singular set has a codimension-one component")]
    SingularCodimOne,
    #[error("no acceptable generic linear section after {0} attempts")]
    InvariantSubspace(usize),
    #[error("level {level} outside the admissible range {range}")]
    InvalidLevel { level: i64, range: String },
    #[error("no zero-dimensional reduced trial within the retry budget")]
    NoZeroDimensionalTrial,
    #[error("trials disagree and no strict majority exists")]
    Unstable,
    #[error("weights of mixed sign: non-resonance hypothesis cannot be verified")]
    HypothesisUnverified,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
