//! The MMP text format and the structural checks on diagrams.

mod loops;
mod text;
mod transform;
mod validate;

pub use loops::{girth, is_loop, longest_loop, shortest_loop, Girth, LoopProfile};
pub use text::{atom_char, atom_from_char, parse_mmp, serialize_mmp, ALPHABET};
pub use transform::{drop_atom_from_block, drop_blocks, dual, element_count, Renumbering};
pub use validate::{is_connected, validate, ValidationReport};
