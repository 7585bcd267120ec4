use thiserror::Error;

/// Everything that can go wrong across field construction, curve
/// construction, and the census front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is unsupported: p must exceed 3")]
    SmallCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the supported bound 2^32")]
    OrderTooLarge { p: u64, k: u32 },
    #[error("{0} is not a prime power p^k with p > 3")]
    InadmissibleOrder(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("encoding {index} is out of range for a field of {order} elements")]
    IndexOutOfRange { index: u64, order: u64 },
    #[error("coefficient list has {given} entries but the extension degree is {degree}")]
    TooManyCoefficients { given: usize, degree: u32 },
    #[error("lambda = {0} gives a singular curve: need lambda(lambda - 1) != 0")]
    SingularLambda(u64),
    #[error("curve parameters must satisfy ab(a - b) != 0")]
    SingularPair,
    #[error("curve is singular: discriminant is zero")]
    SingularCurve,
    #[error("transform scale u must be nonzero")]
    ZeroScale,
    #[error("curve is not in short form (a1 = a3 = 0)")]
    NotShortForm,
    #[error("stratification is defined only for q = 1 (mod 4); got q = {0}")]
    NotOneModFour(u64),
}
