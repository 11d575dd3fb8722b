use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("image sequence is not a bijection")]
    NotBijection,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("element is not a member of the group")]
    NotMember,
    #[error("group is not transitive on the realized point set")]
    NotTransitive,
    #[error("subgroup generators do not lie in the group")]
    NotSubgroup,
    #[error("{what} exceeds cap: need {need}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        need: u128,
        cap: u128,
    },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("tuple product is not the identity")]
    ProductNotOne,
    #[error("tuple does not generate the group")]
    NotGenerating,
    #[error("tuple generates an intransitive group")]
    IntransitiveTuple,
    #[error("genus formula gave a negative value; tuple is inconsistent")]
    NegativeGenus,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable process exit code contract: 2 usage/parse, 3 cap exceeded,
    /// 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Unsupported(_) => 2,
            Error::CapExceeded { .. } => 3,
            _ => 1,
        }
    }
}
