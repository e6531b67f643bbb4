use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable `{0}` has degree zero; the grading must be positive")]
    ZeroDegreeVariable(String),
    #[error("variable name `{0}` is declared twice")]
    DuplicateVariableName(String),
    #[error("variable `{name}` has a degree of length {got}, expected {expected}")]
    DegreeLength { name: String, got: usize, expected: usize },
    #[error("{0} is not a prime modulus below 2^31")]
    NonPrimeModulus(u64),
    #[error("polynomial is not homogeneous for the grading")]
    NotHomogeneous,
    #[error("the zero polynomial has no multidegree")]
    ZeroPolynomial,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("coefficient {0} has a denominator divisible by the characteristic")]
    DenominatorVanishes(String),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("the variable degrees are not separable along the chosen blocks")]
    BlocksNotSeparable,
    #[error("block index {0} is out of range")]
    BadBlock(usize),
    #[error("the ring is not standard multigraded")]
    NotStandardGraded,
    #[error("the prime is not a minimal prime of the ideal")]
    NotMinimalPrime,
    #[error("the ideal is not squarefree")]
    NotSquarefree,
    #[error("the ideal is not a monomial ideal")]
    NotMonomial,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("the simplicial complex has {0} vertices, more than the supported 25")]
    TooManyVertices(usize),
    #[error("{0} variables exceed the supported 64")]
    TooManyVariables(usize),
    #[error("K(1-t) has terms of total degree below the codimension")]
    LowerDegreeTermsPresent,
    #[error("the projective scheme is empty")]
    EmptyScheme,
    #[error("Hilbert function bound {0} is too large (at most 8 per coordinate)")]
    BoundTooLarge(u32),
    #[error("field too small for generic coordinates: need p >= 10007, got {0}")]
    FieldTooSmall(u32),
    #[error("gin trials disagree; raise the trial count or change the seed")]
    Unstable,
    #[error("the order does not satisfy x_(i,0) > x_(i,1) > ... in block {0}")]
    OrderNotBlockDescending(usize),
    #[error("size too large: {0}")]
    TooLarge(String),
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("points have different lengths")]
    DimensionMismatch,
}
