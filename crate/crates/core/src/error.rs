use alloc::string::String;

use crate::AtomId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown character {ch:?} at column {column}")]
    UnknownCharacter { ch: char, column: usize },
    #[error("line does not end with '.'")]
    MissingTerminator,
    #[error("empty block at column {column}")]
    EmptyBlock { column: usize },
    #[error("atom {atom} appears twice in block {block}")]
    DuplicateAtomInBlock { block: usize, atom: AtomId },
    #[error("{atoms} atoms do not fit the 90-symbol alphabet")]
    TooManyAtoms { atoms: usize },
    #[error("atom {atom} is out of range for a diagram with {atom_count} atoms")]
    AtomOutOfRange { atom: usize, atom_count: usize },
    #[error("index {index} is out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("blocks {0} and {1} share two or more atoms")]
    PreconditionViolated(usize, usize),
    #[error("diagram is not an admissible Greechie diagram")]
    NotAdmissible,
    #[error("diagram fails the MMP conditions")]
    NotValidated,
    #[error("element does not belong to this lattice")]
    ForeignElement,
    #[error("vector has {got} entries, diagram has {expected} atoms")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vector is not a state")]
    NotAState,
    #[error("the state polytope is empty")]
    Infeasible,
    #[error("permutation has {got} points, diagram has {expected} atoms")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid generation spec: {0}")]
    InvalidSpec(String),
    #[error("brute-force enumeration too large ({0} candidate block sets)")]
    TooLarge(u128),
}
