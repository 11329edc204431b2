//! The pasted orthomodular lattice of an admissible Greechie diagram.
//!
//! Each block `B` contributes the Boolean algebra of its subsets. Subsets of
//! different blocks are identified when they denote the same element: the
//! empty set is `0`, the full block is `1`, singletons are atoms and
//! complements of singletons are coatoms. Everything else is a middle element
//! private to its block. Two elements are comparable exactly when they are
//! subsets of one common block with the first contained in the second.
//!
//! Joins and meets are not tabulated; order, orthocomplement and the extension
//! of atom states are enough for the analyses in this crate.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::mmp::validate;
use crate::states::{is_state, StateVector};
use crate::{AtomId, Error, MmpDiagram, Rational, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OmlElement {
    Zero,
    One,
    Atom(AtomId),
    /// Orthocomplement of the atom.
    Coatom(AtomId),
    /// Subset `atoms` of block `block` with `2 <= |atoms| <= |block| - 2`.
    Mid {
        block: usize,
        atoms: Vec<AtomId>,
    },
}

/// Position of an element in [`OmlPoset::elements`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementId(pub usize);

/// `constant + sum(coefficient * x_atom)`: the value of an element under the
/// state with atom values `x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineForm {
    pub constant: i64,
    pub terms: Vec<(AtomId, i64)>,
}

impl AffineForm {
    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::from_integer(self.constant.into());
        for &(a, c) in &self.terms {
            acc += &values[a.0] * Rational::from_integer(c.into());
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct OmlPoset {
    source: MmpDiagram,
    elements: Vec<OmlElement>,
    index: BTreeMap<OmlElement, ElementId>,
    /// `orthogonal[p * A + q]`: atoms p and q share a block.
    orthogonal: Vec<bool>,
    /// Per block: element id of the subset with the given bitmask.
    subset_ids: Vec<Vec<ElementId>>,
    ortho: Vec<ElementId>,
}

pub const ZERO: ElementId = ElementId(0);
pub const ONE: ElementId = ElementId(1);

/// Builds the pasted lattice. The diagram must be Greechie-admissible.
pub fn build_oml(d: &MmpDiagram) -> Result<OmlPoset> {
    if !validate(d).greechie_admissible {
        return Err(Error::NotAdmissible);
    }
    for b in d.blocks() {
        // Subsets are addressed by bitmask.
        assert!(b.len() < 32, "blocks with 32 or more atoms are not supported");
    }
    let n = d.atom_count();
    let mut elements = vec![OmlElement::Zero, OmlElement::One];
    elements.extend((0..n).map(|a| OmlElement::Atom(AtomId(a))));
    elements.extend((0..n).map(|a| OmlElement::Coatom(AtomId(a))));
    let atom_id = |a: AtomId| ElementId(2 + a.0);
    let coatom_id = |a: AtomId| ElementId(2 + n + a.0);

    let mut subset_ids = Vec::with_capacity(d.block_count());
    for (bi, block) in d.blocks().iter().enumerate() {
        let k = block.len();
        let full = (1u32 << k) - 1;
        let mut ids = Vec::with_capacity(1 << k);
        for mask in 0..=full {
            let size = mask.count_ones() as usize;
            let id = if size == 0 {
                ZERO
            } else if size == k {
                ONE
            } else if size == 1 {
                atom_id(block.atoms()[mask.trailing_zeros() as usize])
            } else if size == k - 1 {
                coatom_id(block.atoms()[(full & !mask).trailing_zeros() as usize])
            } else {
                let atoms = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| block.atoms()[i])
                    .collect();
                elements.push(OmlElement::Mid { block: bi, atoms });
                ElementId(elements.len() - 1)
            };
            ids.push(id);
        }
        subset_ids.push(ids);
    }

    let mut orthogonal = vec![false; n * n];
    for b in d.blocks() {
        for p in b.iter() {
            for q in b.iter() {
                if p != q {
                    orthogonal[p.0 * n + q.0] = true;
                }
            }
        }
    }

    let mut ortho = vec![ZERO; elements.len()];
    ortho[0] = ONE;
    ortho[1] = ZERO;
    for a in 0..n {
        ortho[atom_id(AtomId(a)).0] = coatom_id(AtomId(a));
        ortho[coatom_id(AtomId(a)).0] = atom_id(AtomId(a));
    }
    for (bi, ids) in subset_ids.iter().enumerate() {
        let full = (1usize << d.block(bi).len()) - 1;
        for (mask, &id) in ids.iter().enumerate() {
            if id.0 >= 2 + 2 * n {
                ortho[id.0] = ids[full & !mask];
            }
        }
    }

    let index = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), ElementId(i)))
        .collect();

    Ok(OmlPoset {
        source: d.clone(),
        elements,
        index,
        orthogonal,
        subset_ids,
        ortho,
    })
}

impl OmlPoset {
    pub fn source(&self) -> &MmpDiagram {
        &self.source
    }

    pub fn elements(&self) -> &[OmlElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> {
        (0..self.elements.len()).map(ElementId)
    }

    pub fn element(&self, id: ElementId) -> &OmlElement {
        &self.elements[id.0]
    }

    pub fn id_of(&self, e: &OmlElement) -> Result<ElementId> {
        self.index.get(e).copied().ok_or(Error::ForeignElement)
    }

    pub fn atom(&self, a: AtomId) -> ElementId {
        ElementId(2 + a.0)
    }

    pub fn coatom(&self, a: AtomId) -> ElementId {
        ElementId(2 + self.source.atom_count() + a.0)
    }

    fn orthogonal_atoms(&self, p: AtomId, q: AtomId) -> bool {
        self.orthogonal[p.0 * self.source.atom_count() + q.0]
    }

    /// Order relation on element ids.
    pub fn leq_id(&self, x: ElementId, y: ElementId) -> bool {
        use OmlElement::*;
        if x == y || x == ZERO || y == ONE {
            return true;
        }
        match (&self.elements[x.0], &self.elements[y.0]) {
            (One, _) | (_, Zero) => false,
            (Atom(p), Coatom(q)) => p != q && self.orthogonal_atoms(*p, *q),
            (Atom(p), Mid { atoms, .. }) => atoms.binary_search(p).is_ok(),
            (Mid { block, atoms }, Coatom(q)) => {
                self.source.block(*block).contains(*q) && atoms.binary_search(q).is_err()
            }
            (Mid { block: b1, atoms: s1 }, Mid { block: b2, atoms: s2 }) => {
                b1 == b2 && s1.iter().all(|a| s2.binary_search(a).is_ok())
            }
            _ => false,
        }
    }

    pub fn leq(&self, x: &OmlElement, y: &OmlElement) -> Result<bool> {
        Ok(self.leq_id(self.id_of(x)?, self.id_of(y)?))
    }

    pub fn ortho_id(&self, x: ElementId) -> ElementId {
        self.ortho[x.0]
    }

    pub fn ortho(&self, x: &OmlElement) -> Result<OmlElement> {
        Ok(self.elements[self.ortho_id(self.id_of(x)?).0].clone())
    }

    /// `x ⊥ y`, i.e. `x <= y'`.
    pub fn orthogonal_id(&self, x: ElementId, y: ElementId) -> bool {
        self.leq_id(x, self.ortho_id(y))
    }

    /// Value of the element as an affine function of the atom values.
    pub fn measure(&self, x: ElementId) -> AffineForm {
        match &self.elements[x.0] {
            OmlElement::Zero => AffineForm {
                constant: 0,
                terms: Vec::new(),
            },
            OmlElement::One => AffineForm {
                constant: 1,
                terms: Vec::new(),
            },
            OmlElement::Atom(p) => AffineForm {
                constant: 0,
                terms: vec![(*p, 1)],
            },
            OmlElement::Coatom(p) => AffineForm {
                constant: 1,
                terms: vec![(*p, -1)],
            },
            OmlElement::Mid { atoms, .. } => AffineForm {
                constant: 0,
                terms: atoms.iter().map(|&a| (a, 1)).collect(),
            },
        }
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between. In a
    /// pasting these are exactly the block-local covers `S ⊂ S ∪ {q}`.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for (bi, ids) in self.subset_ids.iter().enumerate() {
            let k = self.source.block(bi).len();
            for (mask, &lower) in ids.iter().enumerate() {
                for q in 0..k {
                    if mask & (1 << q) == 0 {
                        out.push((lower, ids[mask | (1 << q)]));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Extends an atom state to every element.
    pub fn extend_state(&self, m: &StateVector) -> Result<Vec<Rational>> {
        if !is_state(&self.source, m)? {
            return Err(Error::NotAState);
        }
        Ok(self.ids().map(|x| self.value(m, x)).collect())
    }

    /// Value of one element under `m` (no state check).
    pub fn value(&self, m: &StateVector, x: ElementId) -> Rational {
        match &self.elements[x.0] {
            OmlElement::Zero => Rational::zero(),
            OmlElement::One => Rational::one(),
            _ => self.measure(x).eval(m.values()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::parse_mmp;

    #[test]
    fn single_block_is_boolean_cube() {
        let p = build_oml(&parse_mmp("123.").unwrap()).unwrap();
        assert_eq!(p.len(), 8);
        let a0 = p.atom(AtomId(0));
        let a1 = p.atom(AtomId(1));
        assert!(p.leq_id(a0, p.coatom(AtomId(1))));
        assert!(!p.leq_id(a0, a1));
        assert!(!p.leq_id(a0, p.coatom(AtomId(0))));
        assert_eq!(p.covers().len(), 12);
    }

    #[test]
    fn two_blocks_twelve_elements() {
        // a = atom shared by both blocks: blocks {a,b,c} and {a,d,e}.
        let p = build_oml(&parse_mmp("123,345.").unwrap()).unwrap();
        assert_eq!(p.len(), 12);
        let (a, b, c, d) = (AtomId(2), AtomId(0), AtomId(1), AtomId(3));
        assert!(p.leq_id(p.atom(a), p.coatom(b)));
        assert!(p.leq_id(p.atom(c), p.coatom(b)));
        assert!(p.leq_id(p.atom(a), p.coatom(d)));
        assert!(!p.leq_id(p.atom(b), p.coatom(d)));
    }

    #[test]
    fn four_block_middle_elements() {
        let p = build_oml(&parse_mmp("1234.").unwrap()).unwrap();
        assert_eq!(p.len(), 16);
        let mid = OmlElement::Mid {
            block: 0,
            atoms: vec![AtomId(0), AtomId(1)],
        };
        let comp = OmlElement::Mid {
            block: 0,
            atoms: vec![AtomId(2), AtomId(3)],
        };
        assert_eq!(p.ortho(&mid).unwrap(), comp);
        assert!(p.leq(&OmlElement::Atom(AtomId(0)), &mid).unwrap());
        assert!(p.leq(&mid, &OmlElement::Coatom(AtomId(3))).unwrap());
        assert!(!p.leq(&mid, &OmlElement::Coatom(AtomId(0))).unwrap());
        assert_eq!(p.leq(&OmlElement::Atom(AtomId(9)), &mid), Err(Error::ForeignElement));
    }

    #[test]
    fn rejects_square() {
        assert_eq!(
            build_oml(&parse_mmp("123,345,567,781.").unwrap()).unwrap_err(),
            Error::NotAdmissible
        );
    }
}
