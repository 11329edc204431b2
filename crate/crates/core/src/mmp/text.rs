use alloc::string::String;
use alloc::vec::Vec;

use crate::{AtomId, Block, Error, MmpDiagram, Result};

/// The 90 atom symbols, in label order: atom `i` is written `ALPHABET[i]`.
pub const ALPHABET: &[u8; 90] =
    b"123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz!\"#$%&'()*-/:;<=>?@[\\]^_`{|}~";

const NOT_IN_ALPHABET: u8 = u8::MAX;

const fn build_lookup() -> [u8; 128] {
    let mut table = [NOT_IN_ALPHABET; 128];
    let mut i = 0;
    while i < ALPHABET.len() {
        table[ALPHABET[i] as usize] = i as u8;
        i += 1;
    }
    table
}

static LOOKUP: [u8; 128] = build_lookup();

pub fn atom_from_char(ch: char) -> Option<AtomId> {
    let code = ch as u32;
    if code >= 128 {
        return None;
    }
    match LOOKUP[code as usize] {
        NOT_IN_ALPHABET => None,
        i => Some(AtomId(i as usize)),
    }
}

pub fn atom_char(atom: AtomId) -> Option<char> {
    ALPHABET.get(atom.0).map(|&b| b as char)
}

/// Parses one line such as `123,345.`.
///
/// Surrounding whitespace is ignored. The atom count is one more than the
/// highest symbol used; skipped symbols are reported by validation, not here.
pub fn parse_mmp(text: &str) -> Result<MmpDiagram> {
    let line = text.trim();
    let body = line.strip_suffix('.').ok_or(Error::MissingTerminator)?;

    let mut blocks = Vec::new();
    let mut atoms: Vec<AtomId> = Vec::new();
    let mut highest: Option<usize> = None;
    let mut start_column = 0;
    // A sentinel comma closes the last block.
    for (column, ch) in body.chars().chain(core::iter::once(',')).enumerate() {
        if ch == ',' {
            if atoms.is_empty() {
                return Err(Error::EmptyBlock { column: start_column });
            }
            let block_index = blocks.len();
            let block = Block::new(atoms.drain(..)).map_err(|atom| Error::DuplicateAtomInBlock {
                block: block_index,
                atom,
            })?;
            blocks.push(block);
            start_column = column + 1;
            continue;
        }
        let atom = atom_from_char(ch).ok_or(Error::UnknownCharacter { ch, column })?;
        highest = Some(highest.map_or(atom.0, |h| h.max(atom.0)));
        atoms.push(atom);
    }

    MmpDiagram::new(highest.map_or(0, |h| h + 1), blocks)
}

/// Writes the diagram as one MMP line, blocks in stored order, atoms in
/// alphabet order inside each block.
pub fn serialize_mmp(d: &MmpDiagram) -> Result<String> {
    if d.atom_count() > ALPHABET.len() {
        return Err(Error::TooManyAtoms { atoms: d.atom_count() });
    }
    let mut out = String::with_capacity(d.block_count() * 4 + 1);
    for (i, block) in d.blocks().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        for a in block.iter() {
            out.push(ALPHABET[a.0] as char);
        }
    }
    out.push('.');
    Ok(out)
}
