//! Labels and JSON export of the pasted lattice.

use oml_core::lattice::{OmlElement, OmlPoset};
use oml_core::mmp::atom_char;
use oml_core::AtomId;
use serde::Serialize;

fn atom_label(a: AtomId) -> String {
    atom_char(a).map_or_else(|| format!("#{}", a.0), String::from)
}

/// `0`, `0'` (the unit, so that it cannot clash with atom `1`), `a`, `a'`
/// (orthocomplement of atom `a`), or `(abc)` for a join of atoms inside one
/// block.
pub fn element_label(e: &OmlElement) -> String {
    match e {
        OmlElement::Zero => "0".into(),
        OmlElement::One => "0'".into(),
        OmlElement::Atom(a) => atom_label(*a),
        OmlElement::Coatom(a) => format!("{}'", atom_label(*a)),
        OmlElement::Mid { atoms, .. } => {
            let inner: String = atoms.iter().map(|&a| atom_label(a)).collect();
            format!("({inner})")
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    /// Covering pairs `[lower, upper]` by element index.
    pub covers: Vec<[usize; 2]>,
    /// Orthocomplement of every element, by index.
    pub ortho: Vec<usize>,
}

pub fn poset_json(p: &OmlPoset) -> PosetJson {
    PosetJson {
        elements: p.elements().iter().map(element_label).collect(),
        covers: p.covers().into_iter().map(|(x, y)| [x.0, y.0]).collect(),
        ortho: p.ids().map(|x| p.ortho_id(x).0).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use oml_core::lattice::build_oml;
    use oml_core::mmp::parse_mmp;

    #[test]
    fn single_block_poset() {
        let d = parse_mmp("123.").unwrap();
        let j = poset_json(&build_oml(&d).unwrap());
        assert_eq!(j.elements, ["0", "0'", "1", "2", "3", "1'", "2'", "3'"]);
        assert_eq!(j.covers.len(), 12);
        assert_eq!(j.ortho[0], 1);
    }
}
