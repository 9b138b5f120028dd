use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NonPrimeCharacteristic(u64),
    FieldTooSmall {
        q: u64,
    },
    FieldTooLarge {
        q: u64,
        cap: u64,
    },
    InvalidElementCode {
        code: u64,
        q: u32,
    },
    ZeroInput,
    MNotDividingGroupOrder {
        m: u64,
        order: u32,
    },
    /// A required coefficient of a Carlitz form is zero, or the form is too short.
    MalformedForm(&'static str),
    IndexOutOfRange {
        index: usize,
        max: usize,
    },
    NotInL1,
    NotAPermutation,
    BudgetExceeded {
        limit: u64,
    },
    ParameterOutOfRange(&'static str),
    ConstantG,
    ZeroCoefficient,
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    Parse(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrimeCharacteristic(p) => write!(f, "characteristic {p} is not prime"),
            Error::FieldTooSmall { q } => write!(f, "field order {q} is below 3"),
            Error::FieldTooLarge { q, cap } => write!(f, "field order {q} exceeds cap {cap}"),
            Error::InvalidElementCode { code, q } => {
                write!(f, "element code {code} is outside [0, {q})")
            }
            Error::ZeroInput => f.write_str("input must be nonzero"),
            Error::MNotDividingGroupOrder { m, order } => {
                write!(f, "{m} does not divide the group order {order}")
            }
            Error::MalformedForm(why) => write!(f, "malformed Carlitz form: {why}"),
            Error::IndexOutOfRange { index, max } => {
                write!(f, "index {index} out of range 0..={max}")
            }
            Error::NotInL1 => f.write_str("last approximant is affine (alpha_n = 0 or n = 0)"),
            Error::NotAPermutation => f.write_str("map is not a permutation"),
            Error::BudgetExceeded { limit } => write!(f, "work budget of {limit} exceeded"),
            Error::ParameterOutOfRange(why) => write!(f, "parameter out of range: {why}"),
            Error::ConstantG => f.write_str("g must be non-constant"),
            Error::ZeroCoefficient => f.write_str("coefficient must be nonzero"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected length {expected}, found {found}")
            }
            Error::Parse(why) => write!(f, "parse error: {why}"),
        }
    }
}

impl core::error::Error for Error {}
