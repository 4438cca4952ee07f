use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("law is not associative at ({a}·{b})·{c}")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("law has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("malformed table: {0}")]
    BadTable(String),
    #[error("unknown group name `{0}`")]
    UnknownName(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },
    #[error("{what} has size {size}, above the cap {cap}")]
    CapExceeded { what: String, size: usize, cap: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("associated subgroups are not conjugate in the base")]
    NotConjugate,
    #[error("automorphism does not preserve H")]
    AlphaDoesNotPreserveH,
    #[error("Iso(H, K) is empty")]
    EmptyIsoSet,
    #[error("the two extensions have different base groups")]
    BaseMismatch,
    #[error("hypothesis not verified: {0}")]
    HypothesisNotVerified(String),
    #[error("not an isomorphism: {0}")]
    NotAnIsomorphism(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap_check(what: &str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what: what.to_string(), size, cap })
    } else {
        Ok(())
    }
}
