use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the library can report.
///
/// [`Error::name`] gives a stable identifier that the command-line front end
/// prints on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidGroup(&'static str),
    InvalidElement,
    InvalidBlock(&'static str),
    InvalidParameter(&'static str),
    TooLarge { order: u64, bound: u64 },
    NotAUnit { value: u64, modulus: u64 },
    NotPrime(u64),
    NotPrimePower(u64),
    ReducibleModulus,
    DoesNotDivide { divisor: u64, value: u64 },
    FiveExcluded,
    NotAutomorphism(&'static str),
    OrderOverflow { bound: u64 },
    NotSemiregular,
    TrivialAutomorphismGroup,
    NotClosed,
    RequiresAbelianOddOrder,
    PairingFailure,
    CongruenceViolation { modulus: u64, k: u64 },
    DivisibleByThree,
    EvenOrderU,
    NotUnitCondition(u64),
    EvenOrder,
    RequiresAbelian,
    NotSpanning,
    NotSubgroup,
    NotNormal,
    IndexNotPrime(u64),
    SmallPrimeFactor { prime: u64, k: u64 },
    InputNotDF(&'static str),
    InputNotDDF,
    BadChain(&'static str),
    VerificationFailed(&'static str),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::InvalidElement => "InvalidElement",
            Error::InvalidBlock(_) => "InvalidBlock",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotAUnit { .. } => "NotAUnit",
            Error::NotPrime(_) => "NotPrime",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::ReducibleModulus => "ReducibleModulus",
            Error::DoesNotDivide { .. } => "DoesNotDivide",
            Error::FiveExcluded => "FiveExcluded",
            Error::NotAutomorphism(_) => "NotAutomorphism",
            Error::OrderOverflow { .. } => "OrderOverflow",
            Error::NotSemiregular => "NotSemiregular",
            Error::TrivialAutomorphismGroup => "TrivialAutomorphismGroup",
            Error::NotClosed => "NotClosed",
            Error::RequiresAbelianOddOrder => "RequiresAbelianOddOrder",
            Error::PairingFailure => "PairingFailure",
            Error::CongruenceViolation { .. } => "CongruenceViolation",
            Error::DivisibleByThree => "DivisibleByThree",
            Error::EvenOrderU => "EvenOrderU",
            Error::NotUnitCondition(_) => "NotUnitCondition",
            Error::EvenOrder => "EvenOrder",
            Error::RequiresAbelian => "RequiresAbelian",
            Error::NotSpanning => "NotSpanning",
            Error::NotSubgroup => "NotSubgroup",
            Error::NotNormal => "NotNormal",
            Error::IndexNotPrime(_) => "IndexNotPrime",
            Error::SmallPrimeFactor { .. } => "SmallPrimeFactor",
            Error::InputNotDF(_) => "InputNotDF",
            Error::InputNotDDF => "InputNotDDF",
            Error::BadChain(_) => "BadChain",
            Error::VerificationFailed(_) => "VerificationFailed",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGroup(why) => write!(f, "invalid group: {why}"),
            Error::InvalidElement => f.write_str("element does not belong to the group"),
            Error::InvalidBlock(why) => write!(f, "invalid block: {why}"),
            Error::InvalidParameter(why) => write!(f, "invalid parameter: {why}"),
            Error::TooLarge { order, bound } => {
                write!(f, "group of order {order} exceeds the enumeration bound {bound}")
            }
            Error::NotAUnit { value, modulus } => write!(f, "{value} is not a unit modulo {modulus}"),
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::NotPrimePower(n) => write!(f, "{n} is not a prime power"),
            Error::ReducibleModulus => f.write_str("field modulus is reducible"),
            Error::DoesNotDivide { divisor, value } => write!(f, "{divisor} does not divide {value}"),
            Error::FiveExcluded => f.write_str("p = 5 is excluded from the Pisano construction"),
            Error::NotAutomorphism(why) => write!(f, "not an automorphism: {why}"),
            Error::OrderOverflow { bound } => write!(f, "automorphism order exceeds {bound}"),
            Error::NotSemiregular => f.write_str("automorphism group is not fixed-point-free"),
            Error::TrivialAutomorphismGroup => f.write_str("automorphism group must be non-trivial"),
            Error::NotClosed => f.write_str("automorphism list is not closed under composition"),
            Error::RequiresAbelianOddOrder => f.write_str("splitting needs an abelian group and odd v*k"),
            Error::PairingFailure => f.write_str("an orbit coincides with its own negation"),
            Error::CongruenceViolation { modulus, k } => {
                write!(f, "{modulus} is not congruent to 1 modulo {k}")
            }
            Error::DivisibleByThree => f.write_str("q must not be divisible by 3"),
            Error::EvenOrderU => f.write_str("unit group U must have odd order"),
            Error::NotUnitCondition(u) => write!(f, "u^2 - 1 is not a unit for u = {u}"),
            Error::EvenOrder => f.write_str("group order must be odd"),
            Error::RequiresAbelian => f.write_str("group must be abelian"),
            Error::NotSpanning => f.write_str("blocks do not partition the non-zero elements"),
            Error::NotSubgroup => f.write_str("element set is not a subgroup"),
            Error::NotNormal => f.write_str("subgroup is not normal"),
            Error::IndexNotPrime(i) => write!(f, "subgroup index {i} is not prime"),
            Error::SmallPrimeFactor { prime, k } => {
                write!(f, "prime factor {prime} of the group order does not exceed k = {k}")
            }
            Error::InputNotDF(which) => write!(f, "input is not a difference family: {which}"),
            Error::InputNotDDF => f.write_str("input is not a (v,k,k-1) disjoint difference family"),
            Error::BadChain(why) => write!(f, "bad normal series: {why}"),
            Error::VerificationFailed(what) => write!(f, "brute-force verification failed: {what}"),
        }
    }
}

impl core::error::Error for Error {}
