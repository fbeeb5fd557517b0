use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid set specification: {0}")]
    InvalidSpec(String),
    #[error("invalid density {num}/{den}")]
    InvalidDensity { num: u64, den: u64 },
    #[error("the universe of Most must be infinite")]
    UniverseNotInfinite,
    #[error("most-intersection of an empty collection is undefined")]
    EmptyCollection,
    #[error("no density certificate for element {0}")]
    CertificateRequired(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("regex syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("symbol {symbol:?} at position {pos} is not in the alphabet")]
    SymbolNotInAlphabet { symbol: char, pos: usize },
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("product construction exceeds {limit} states")]
    ProductTooLarge { limit: usize },
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
}
