use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("invalid prime context: {0}")]
    InvalidPrime(String),
    #[error("type is {found}, operation requires the mixed case (sum a_i = 2m)")]
    NotMixed { found: &'static str },
    #[error("degenerate lambda: {0}")]
    DegenerateLambda(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("singular generator {0}")]
    SingularGenerator(String),
    #[error("group closure refused for p = {p} > {limit}; set {env} = 1 to override")]
    SizeGuard { p: u32, limit: u32, env: &'static str },
    #[error("exceptional type: {0}")]
    Exceptional(String),
    #[error("no permutation of the branch points gives gcd(m, a1+a3, a2+a3) != m")]
    DEqualsM,
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Consistency(_) => 3,
            Error::DEqualsM => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::error::Error::Consistency(format!($($arg)*)));
        }
    };
}
pub(crate) use ensure;
