//! Canonical labelling, isomorphism and automorphisms of diagrams.
//!
//! The canonical form is the least sorted block list over all labellings
//! reached by the individualization-refinement search in [`search`]. It is
//! invariant under relabelling, so two diagrams are isomorphic exactly when
//! their canonical forms coincide.

mod search;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;

use crate::mmp::{dual, serialize_mmp, validate};
use crate::{AtomId, Block, Error, MmpDiagram, Result};

pub(crate) use search::{find, orbits};

/// A bijection on the atoms: `apply(a)` is the image of `a`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &m in &mapping {
            if m >= mapping.len() || seen[m] {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    len: mapping.len(),
                });
            }
            seen[m] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply(&self, a: AtomId) -> AtomId {
        AtomId(self.mapping[a.0])
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (a, &m) in self.mapping.iter().enumerate() {
            inv[m] = a;
        }
        Permutation { mapping: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation {
            mapping: other.mapping.iter().map(|&m| self.mapping[m]).collect(),
        }
    }
}

/// Maps every block atomwise; block order is kept.
pub fn relabel(d: &MmpDiagram, pi: &Permutation) -> Result<MmpDiagram> {
    if pi.len() != d.atom_count() {
        return Err(Error::SizeMismatch {
            expected: d.atom_count(),
            got: pi.len(),
        });
    }
    let blocks = d
        .blocks()
        .iter()
        .map(|b| Block::new(b.iter().map(|a| pi.apply(a))).expect("bijection"))
        .collect();
    MmpDiagram::new(d.atom_count(), blocks)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalForm {
    /// The canonical diagram: blocks sorted, atoms sorted inside blocks.
    pub canonical: MmpDiagram,
    /// Original atom -> canonical atom.
    pub labeling: Permutation,
    pub automorphism_count: BigUint,
    /// Generators of the automorphism group (on the original atoms).
    pub generators: Vec<Permutation>,
}

impl CanonicalForm {
    /// The canonical diagram in MMP notation.
    pub fn canonical_text(&self) -> Result<String> {
        serialize_mmp(&self.canonical)
    }
}

/// Canonical form of a diagram satisfying the MMP conditions.
pub fn canonical_form(d: &MmpDiagram) -> Result<CanonicalForm> {
    if !validate(d).mmp() {
        return Err(Error::NotValidated);
    }
    Ok(canonical_form_unchecked(d))
}

/// Canonical form without the MMP check. Used on generator intermediates,
/// which satisfy the conditions by construction.
pub fn canonical_form_unchecked(d: &MmpDiagram) -> CanonicalForm {
    let result = search::search(d);
    let blocks = result
        .cert
        .into_iter()
        .map(|b| Block::new(b).expect("distinct labels"))
        .collect();
    CanonicalForm {
        canonical: MmpDiagram::new(d.atom_count(), blocks).expect("labels in range"),
        labeling: Permutation {
            mapping: result.labeling,
        },
        automorphism_count: result.group_order,
        generators: result
            .generators
            .into_iter()
            .map(|mapping| Permutation { mapping })
            .collect(),
    }
}

fn sorted_blocks(d: &MmpDiagram) -> Vec<Block> {
    let mut b = d.blocks().to_vec();
    b.sort_unstable();
    b
}

/// A permutation `pi` with `relabel(d1, pi)` equal to `d2` up to block order,
/// or `None` when the diagrams are not isomorphic.
pub fn are_isomorphic(d1: &MmpDiagram, d2: &MmpDiagram) -> Option<Permutation> {
    if d1.atom_count() != d2.atom_count() || d1.block_count() != d2.block_count() {
        return None;
    }
    let (c1, c2) = (canonical_form_unchecked(d1), canonical_form_unchecked(d2));
    if c1.canonical != c2.canonical {
        return None;
    }
    let pi = c2.labeling.inverse().compose(&c1.labeling);
    let image = relabel(d1, &pi).expect("same size");
    (sorted_blocks(&image) == sorted_blocks(d2)).then_some(pi)
}

/// True when the diagram is isomorphic to its incidence dual.
pub fn is_self_dual(d: &MmpDiagram) -> bool {
    let dd = dual(d);
    validate(&dd).mmp() && are_isomorphic(d, &dd).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::parse_mmp;

    #[test]
    fn permutation_algebra() {
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn relabel_identity_and_size() {
        let d = parse_mmp("123,345.").unwrap();
        assert_eq!(relabel(&d, &Permutation::identity(5)).unwrap(), d);
        assert_eq!(
            relabel(&d, &Permutation::identity(4)),
            Err(Error::SizeMismatch { expected: 5, got: 4 })
        );
    }

    #[test]
    fn automorphisms_of_small_diagrams() {
        let block = parse_mmp("123.").unwrap();
        assert_eq!(canonical_form(&block).unwrap().automorphism_count, BigUint::from(6u32));
        let pentagon = parse_mmp("123,345,567,789,9A1.").unwrap();
        // Dihedral group of order 10 acting on the pentagon.
        assert_eq!(
            canonical_form(&pentagon).unwrap().automorphism_count,
            BigUint::from(10u32)
        );
        let two = parse_mmp("123,456.").unwrap();
        assert_eq!(canonical_form(&two).unwrap().automorphism_count, BigUint::from(72u32));
    }

    #[test]
    fn isomorphism_witness() {
        let a = parse_mmp("123,345.").unwrap();
        let b = parse_mmp("135,124.").unwrap();
        let pi = are_isomorphic(&a, &b).unwrap();
        let mut img = relabel(&a, &pi).unwrap().blocks().to_vec();
        img.sort();
        let mut target = b.blocks().to_vec();
        target.sort();
        assert_eq!(img, target);
        assert!(are_isomorphic(&a, &parse_mmp("123,456.").unwrap()).is_none());
    }

    #[test]
    fn rejects_invalid() {
        assert_eq!(canonical_form(&parse_mmp("12.").unwrap()), Err(Error::NotValidated));
    }
}
