use thiserror::Error;

/// Errors raised by tower construction, code construction and the
/// equivalence machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("defining polynomial has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("defining polynomial is not monic")]
    NotMonic,
    #[error("coefficient {0} is not reduced modulo the characteristic")]
    BadCoefficient(u32),
    #[error("defining polynomial is reducible over the prime field")]
    ReduciblePolynomial,
    #[error("defining polynomial is irreducible but its root is not a primitive element")]
    NotPrimitive,
    #[error("field of order {order} exceeds the table limit {limit}")]
    FieldTooLarge { order: u64, limit: u64 },
    #[error("element {code} is not a valid field element")]
    BadElement { code: u32 },
    #[error("element is not in the subfield of degree {degree}")]
    NotInSubfield { degree: u32 },
    #[error("subfield degrees {a}/{b} are not compatible with ambient degree {ambient}")]
    BadDegrees { a: u32, b: u32, ambient: u32 },
    #[error("no admissible element exists in even characteristic")]
    EvenCharacteristic,
    #[error("operands belong to different field towers")]
    TowerMismatch,
    #[error("expected {expected} coefficients, got {found}")]
    BadLength { expected: usize, found: usize },
    #[error("basis is not linearly independent over the base field")]
    DependentBasis,
    #[error("nonzero coefficient at index {index} outside the declared support")]
    BadSupport { index: usize },
    #[error("step {s} is not coprime to {modulus}")]
    BadStep { s: u32, modulus: u32 },
    #[error("parameter k = {k} outside the supported range {min}..={max}")]
    BadK { k: u32, min: u32, max: u32 },
    #[error("eta violates the norm condition N(eta) != (-1)^(kN)")]
    BadEta,
    #[error("gamma must have a non-square norm in the base field")]
    BadGamma,
    #[error("twist exponent h = {h} must lie in 0..{modulus}")]
    BadTwist { h: u32, modulus: u32 },
    #[error("enumeration of {size} codewords exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u64 },
    #[error("equivalence map component is not bijective")]
    NonBijectiveComponent,
    #[error("outside the supported regime: {0}")]
    OutOfRegime(String),
    #[error("zero divisor: {x} * {y} = 0")]
    ZeroDivisorFound { x: u32, y: u32 },
    #[error("multiplication is not biadditive")]
    NotBiadditive,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
