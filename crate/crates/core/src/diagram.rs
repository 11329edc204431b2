use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Index of an atom (vertex) inside its diagram, 0-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct AtomId(pub usize);

impl AtomId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for AtomId {
    fn from(i: usize) -> Self {
        AtomId(i)
    }
}

/// A block (edge): a set of atoms kept sorted ascending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Block {
    atoms: Vec<AtomId>,
}

impl Block {
    /// Builds a block, sorting the atoms. Returns the repeated atom on failure.
    pub fn new<I>(atoms: I) -> core::result::Result<Self, AtomId>
    where
        I: IntoIterator,
        I::Item: Into<AtomId>,
    {
        let mut atoms: Vec<AtomId> = atoms.into_iter().map(Into::into).collect();
        atoms.sort_unstable();
        for w in atoms.windows(2) {
            if w[0] == w[1] {
                return Err(w[0]);
            }
        }
        Ok(Block { atoms })
    }

    pub fn atoms(&self) -> &[AtomId] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, atom: AtomId) -> bool {
        self.atoms.binary_search(&atom).is_ok()
    }

    /// Number of atoms shared with `other` (both sides are sorted).
    pub fn intersection_len(&self, other: &Block) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < self.atoms.len() && j < other.atoms.len() {
            match self.atoms[i].cmp(&other.atoms[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    /// The first shared atom, if any.
    pub fn common_atom(&self, other: &Block) -> Option<AtomId> {
        self.atoms.iter().copied().find(|a| other.contains(*a))
    }

    pub fn iter(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.atoms.iter().copied()
    }
}

/// A hypergraph of atoms and blocks: the common representation of MMP and
/// Greechie diagrams.
///
/// Only the range of the atom indices is checked on construction. The MMP
/// conditions are checked by [`crate::mmp::validate`], so that duals and
/// intermediate fragments stay representable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct MmpDiagram {
    atom_count: usize,
    blocks: Vec<Block>,
}

impl MmpDiagram {
    pub fn new(atom_count: usize, blocks: Vec<Block>) -> Result<Self> {
        for block in &blocks {
            if let Some(&a) = block.atoms().last() {
                if a.0 >= atom_count {
                    return Err(Error::AtomOutOfRange { atom: a.0, atom_count });
                }
            }
        }
        Ok(MmpDiagram { atom_count, blocks })
    }

    /// Convenience constructor from raw index lists.
    pub fn from_indices<B, I>(atom_count: usize, blocks: B) -> Result<Self>
    where
        B: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let mut out = Vec::new();
        for (bi, b) in blocks.into_iter().enumerate() {
            let block = Block::new(b).map_err(|atom| Error::DuplicateAtomInBlock { block: bi, atom })?;
            out.push(block);
        }
        Self::new(atom_count, out)
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Block {
        &self.blocks[i]
    }

    /// For every atom, the indices of the blocks containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = alloc::vec![Vec::new(); self.atom_count];
        for (bi, b) in self.blocks.iter().enumerate() {
            for a in b.iter() {
                inc[a.0].push(bi);
            }
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0; self.atom_count];
        for b in &self.blocks {
            for a in b.iter() {
                deg[a.0] += 1;
            }
        }
        deg
    }

    /// True when every pair of blocks shares at most one atom.
    pub fn is_linear(&self) -> bool {
        self.first_heavy_pair().is_none()
    }

    /// First pair of blocks (in index order) sharing two or more atoms.
    pub(crate) fn first_heavy_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                if self.blocks[i].intersection_len(&self.blocks[j]) >= 2 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Block index lists, handy for tests and interchange.
    pub fn to_index_lists(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(AtomId::index).collect())
            .collect()
    }
}
