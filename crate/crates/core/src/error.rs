use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in this crate.
///
/// Variants named `*Violated`, [`Error::NoPairFound`] and
/// [`Error::ConstructionFailed`] mean a mathematical claim failed for the
/// given input. Callers must surface them, never retry or ignore them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u64),
    ModulusTooLarge(u64),
    /// Theorem entry points need an odd prime.
    EvenModulus,
    ModulusMismatch { left: u32, right: u32 },
    ZeroInverse,
    NotADivisor { d: u64, order: u64 },
    DivisionByZeroPoly,
    ZeroPolynomial,
    NonMonicDivisor,
    IndexOutOfRange { index: usize, max: usize },
    ModulusTooLargeForBivariate { p: u32, max_p: u32 },
    ParamsOutOfRange(&'static str),
    EmptySet,
    ZeroInA,
    DuplicatePoint { a: u32, b: u32 },
    ExceptionalSetInvalid { value: u32 },
    AllCoefficientsZero,
    MultiplicityDeficit { root: u32, found: usize, required: usize },
    ZeroInput,
    RangeTooLarge,
    CoprimeIdentityViolated { distinct: usize, pairs: usize },
    BadG(u64),
    NoPairFound { target: u32, g: u64, h: u64 },
    ConstructionFailed { target: u32 },
    BadResidueClass,
    TooFewPoints,
    CollinearInput,
    CorollaryViolated { size: usize, d: u64 },
    SearchBudgetExceeded { nodes: u64 },
    BoundViolated { claimed: u64, observed: u64 },
}

impl Error {
    /// A mathematical claim failed, as opposed to bad input.
    pub fn is_violation(&self) -> bool {
        matches!(
            self,
            Error::CoprimeIdentityViolated { .. }
                | Error::NoPairFound { .. }
                | Error::ConstructionFailed { .. }
                | Error::CorollaryViolated { .. }
                | Error::BoundViolated { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::ModulusTooLarge(n) => write!(f, "modulus {n} does not fit below 2^31"),
            Error::EvenModulus => write!(f, "an odd prime modulus is required"),
            Error::ModulusMismatch { left, right } => {
                write!(f, "operands live in different fields (p = {left} and p = {right})")
            }
            Error::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            Error::NotADivisor { d, order } => write!(f, "{d} does not divide {order}"),
            Error::DivisionByZeroPoly => write!(f, "division by the zero polynomial"),
            Error::ZeroPolynomial => write!(f, "operation undefined for the zero polynomial"),
            Error::NonMonicDivisor => write!(f, "divisor is not monic in x"),
            Error::IndexOutOfRange { index, max } => {
                write!(f, "coefficient index {index} outside 0..={max}")
            }
            Error::ModulusTooLargeForBivariate { p, max_p } => write!(
                f,
                "bivariate division with x-degree p is limited to p <= {max_p}, got p = {p}"
            ),
            Error::ParamsOutOfRange(why) => write!(f, "parameters out of range: {why}"),
            Error::EmptySet => write!(f, "set must be nonempty"),
            Error::ZeroInA => write!(f, "the strengthened variant requires 0 not in A"),
            Error::DuplicatePoint { a, b } => write!(f, "duplicate point ({a}, {b})"),
            Error::ExceptionalSetInvalid { value } => {
                write!(f, "slice at y = {value} does not divide x^p - x")
            }
            Error::AllCoefficientsZero => {
                write!(f, "slice is x^p + c: every intermediate coefficient vanishes")
            }
            Error::MultiplicityDeficit { root, found, required } => write!(
                f,
                "root {root} has multiplicity {found}, at least {required} required"
            ),
            Error::ZeroInput => write!(f, "input must be nonzero"),
            Error::RangeTooLarge => write!(f, "range too large: need 2*alpha^2 < p"),
            Error::CoprimeIdentityViolated { distinct, pairs } => write!(
                f,
                "{distinct} distinct ratios but {pairs} coprime pairs (expected twice as many)"
            ),
            Error::BadG(g) => write!(f, "g = {g} must satisfy 2 <= g <= p"),
            Error::NoPairFound { target, g, h } => write!(
                f,
                "no congruent pair for target {target} with g = {g}, h = {h}"
            ),
            Error::ConstructionFailed { target } => {
                write!(f, "no expressible k-th root of {target}")
            }
            Error::BadResidueClass => write!(f, "p must be 1 mod 4"),
            Error::TooFewPoints => write!(f, "at least two points are required"),
            Error::CollinearInput => write!(f, "point set is collinear"),
            Error::CorollaryViolated { size, d } => {
                write!(f, "|A| = {size} gives |A|(|A|-1) > d = {d}")
            }
            Error::SearchBudgetExceeded { nodes } => {
                write!(f, "search budget of {nodes} nodes exhausted")
            }
            Error::BoundViolated { claimed, observed } => {
                write!(f, "observed {observed} violates the claimed bound {claimed}")
            }
        }
    }
}

impl core::error::Error for Error {}
