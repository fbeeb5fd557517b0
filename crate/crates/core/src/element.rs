use alloc::string::{String, ToString};
use core::fmt;

/// A member of a collection: either a natural number or a symbol.
///
/// Naturals order before symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Nat(u64),
    Sym(String),
}

impl Element {
    pub fn sym(s: &str) -> Self {
        Element::Sym(s.to_string())
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Element::Nat(n) => Some(*n),
            Element::Sym(_) => None,
        }
    }
}

impl From<u64> for Element {
    fn from(n: u64) -> Self {
        Element::Nat(n)
    }
}

impl From<&str> for Element {
    fn from(s: &str) -> Self {
        Element::sym(s)
    }
}

impl From<String> for Element {
    fn from(s: String) -> Self {
        Element::Sym(s)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Nat(n) => write!(f, "{n}"),
            Element::Sym(s) => f.write_str(s),
        }
    }
}
