use thiserror::Error;

/// Errors raised by the finite and symbolic lattice machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid element id {id} (carrier has {size} elements)")]
    InvalidId { id: usize, size: usize },

    #[error("duplicate element name {0:?}")]
    DuplicateName(String),

    #[error("element ids must be 0..n-1; found id {found} at position {position}")]
    NonContiguousIds { position: usize, found: usize },

    #[error("relation is not antisymmetric: {0} and {1} are mutually related")]
    NotAntisymmetric(String, String),

    #[error("poset is not a lattice: {0} and {1} have no {2}")]
    NotALattice(String, String, &'static str),

    #[error("empty carrier")]
    Empty,

    #[error("carrier too large: {size} elements, at most {max} supported")]
    TooLarge { size: usize, max: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("malformed input: {0}")]
    Input(String),
}

impl Error {
    /// True for errors that signal a configured cap rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceCap(_) | Error::TooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
