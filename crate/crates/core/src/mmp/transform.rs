use alloc::vec;
use alloc::vec::Vec;

use super::validate::validate;
use crate::{AtomId, Block, Error, MmpDiagram, Result};

/// Old atom index -> new atom index (`None` when the atom disappeared).
pub type Renumbering = Vec<Option<AtomId>>;

/// Incidence dual: one atom per block, one block per atom (the blocks that
/// contained it). The result need not satisfy the MMP conditions.
pub fn dual(d: &MmpDiagram) -> MmpDiagram {
    let blocks = d
        .incidence()
        .into_iter()
        .map(|bs| Block::new(bs).expect("block indices are distinct"))
        .collect();
    MmpDiagram::new(d.block_count(), blocks).expect("indices below block count")
}

/// Removes the given blocks and compacts the atoms that are still in use,
/// keeping their relative order.
pub fn drop_blocks(d: &MmpDiagram, indices: &[usize]) -> Result<(MmpDiagram, Renumbering)> {
    let mut dropped = vec![false; d.block_count()];
    for &i in indices {
        if i >= d.block_count() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: d.block_count(),
            });
        }
        dropped[i] = true;
    }
    let kept: Vec<Block> = d
        .blocks()
        .iter()
        .zip(&dropped)
        .filter(|(_, &gone)| !gone)
        .map(|(b, _)| b.clone())
        .collect();
    Ok(compact(d.atom_count(), kept))
}

/// Removes one atom from one block, then compacts unused atoms.
pub fn drop_atom_from_block(d: &MmpDiagram, block: usize, atom: AtomId) -> Result<(MmpDiagram, Renumbering)> {
    if block >= d.block_count() {
        return Err(Error::IndexOutOfRange {
            index: block,
            len: d.block_count(),
        });
    }
    if !d.block(block).contains(atom) {
        return Err(Error::IndexOutOfRange {
            index: atom.0,
            len: d.block(block).len(),
        });
    }
    let mut blocks = d.blocks().to_vec();
    blocks[block] = Block::new(d.block(block).iter().filter(|&a| a != atom)).expect("subset");
    Ok(compact(d.atom_count(), blocks))
}

fn compact(atom_count: usize, blocks: Vec<Block>) -> (MmpDiagram, Renumbering) {
    let mut used = vec![false; atom_count];
    for b in &blocks {
        for a in b.iter() {
            used[a.0] = true;
        }
    }
    let mut map = vec![None; atom_count];
    let mut next = 0;
    for (old, &u) in used.iter().enumerate() {
        if u {
            map[old] = Some(AtomId(next));
            next += 1;
        }
    }
    let blocks = blocks
        .into_iter()
        .map(|b| Block::new(b.iter().map(|a| map[a.0].expect("used atom"))).expect("bijective"))
        .collect();
    (MmpDiagram::new(next, blocks).expect("compacted"), map)
}

/// Number of elements of the pasted lattice:
/// `2 + 2A + sum over blocks of size k >= 4 of (2^k - 2 - 2k)`.
pub fn element_count(d: &MmpDiagram) -> Result<u128> {
    if !validate(d).greechie_admissible {
        return Err(Error::NotAdmissible);
    }
    let mut count = 2 + 2 * d.atom_count() as u128;
    for b in d.blocks() {
        let k = b.len() as u32;
        if k >= 4 {
            let subsets = 1u128.checked_shl(k).expect("block size below 128");
            count += subsets - 2 - 2 * k as u128;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::{parse_mmp, serialize_mmp, validate};

    #[test]
    fn dual_of_two_blocks() {
        let d = dual(&parse_mmp("123,345.").unwrap());
        assert_eq!(d.atom_count(), 2);
        let sizes: Vec<usize> = d.blocks().iter().map(Block::len).collect();
        assert_eq!(sizes, vec![1, 1, 2, 1, 1]);
        assert!(!validate(&d).mmp_ii());
    }

    #[test]
    fn drop_nothing_is_identity() {
        let d = parse_mmp("123,345,567.").unwrap();
        let (e, map) = drop_blocks(&d, &[]).unwrap();
        assert_eq!(e, d);
        assert!(map.iter().enumerate().all(|(i, m)| *m == Some(AtomId(i))));
    }

    #[test]
    fn drop_compacts_atoms() {
        let d = parse_mmp("123,345,567.").unwrap();
        let (e, map) = drop_blocks(&d, &[0]).unwrap();
        assert_eq!(serialize_mmp(&e).unwrap(), "123,345.");
        assert_eq!(map[0], None);
        assert_eq!(map[2], Some(AtomId(0)));
        assert_eq!(drop_blocks(&d, &[3]), Err(Error::IndexOutOfRange { index: 3, len: 3 }));
    }

    #[test]
    fn drop_atom() {
        let d = parse_mmp("1234,456.").unwrap();
        let (e, _) = drop_atom_from_block(&d, 0, AtomId(1)).unwrap();
        assert_eq!(serialize_mmp(&e).unwrap(), "123,345.");
        assert!(drop_atom_from_block(&d, 1, AtomId(0)).is_err());
    }

    #[test]
    fn element_counts() {
        assert_eq!(element_count(&parse_mmp("123.").unwrap()), Ok(8));
        assert_eq!(element_count(&parse_mmp("1234.").unwrap()), Ok(16));
        assert_eq!(element_count(&parse_mmp("123,345.").unwrap()), Ok(12));
        assert_eq!(
            element_count(&parse_mmp("123,345,567,781.").unwrap()),
            Err(Error::NotAdmissible)
        );
    }
}
