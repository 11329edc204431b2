use alloc::vec;
use alloc::vec::Vec;

use super::loops::{girth, Girth};
use crate::{AtomId, MmpDiagram};

/// Findings of [`validate`]. Nothing in here is an error: the report states
/// facts and [`ValidationReport::greechie_admissible`] combines them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    /// Condition (i): atoms contained in no block.
    pub uncovered_atoms: Vec<AtomId>,
    /// Condition (ii): blocks with fewer than 3 atoms.
    pub small_blocks: Vec<usize>,
    /// Condition (iii): block pairs meeting in `n - 2` atoms with one of
    /// them holding fewer than `n` atoms. Covers repeated blocks.
    pub overlapping_pairs: Vec<(usize, usize)>,
    /// Every symbol up to the atom count is used.
    pub alphabet_contiguous: bool,
    /// Block pairs sharing two or more atoms.
    pub heavy_pairs: Vec<(usize, usize)>,
    /// `None` when some blocks share two or more atoms.
    pub girth: Option<Girth>,
    pub connected: bool,
    pub greechie_admissible: bool,
}

impl ValidationReport {
    pub fn mmp_i(&self) -> bool {
        self.uncovered_atoms.is_empty()
    }

    pub fn mmp_ii(&self) -> bool {
        self.small_blocks.is_empty()
    }

    pub fn mmp_iii(&self) -> bool {
        self.overlapping_pairs.is_empty()
    }

    /// All three MMP conditions hold.
    pub fn mmp(&self) -> bool {
        self.mmp_i() && self.mmp_ii() && self.mmp_iii()
    }
}

pub fn validate(d: &MmpDiagram) -> ValidationReport {
    let degrees = d.degrees();
    let uncovered_atoms: Vec<AtomId> = degrees
        .iter()
        .enumerate()
        .filter(|(_, &k)| k == 0)
        .map(|(a, _)| AtomId(a))
        .collect();
    let small_blocks: Vec<usize> = d
        .blocks()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.len() < 3)
        .map(|(i, _)| i)
        .collect();

    let mut overlapping_pairs = Vec::new();
    let mut heavy_pairs = Vec::new();
    for i in 0..d.block_count() {
        for j in i + 1..d.block_count() {
            let (bi, bj) = (d.block(i), d.block(j));
            let shared = bi.intersection_len(bj);
            if shared == 0 {
                continue;
            }
            if bi.len().min(bj.len()) < shared + 2 {
                overlapping_pairs.push((i, j));
            }
            if shared >= 2 {
                heavy_pairs.push((i, j));
            }
        }
    }

    let girth = if heavy_pairs.is_empty() {
        Some(girth(d).expect("linear diagram"))
    } else {
        None
    };
    let alphabet_contiguous = uncovered_atoms.is_empty();
    let connected = is_connected(d);
    let greechie_admissible = uncovered_atoms.is_empty()
        && small_blocks.is_empty()
        && overlapping_pairs.is_empty()
        && alphabet_contiguous
        && heavy_pairs.is_empty()
        && girth.is_some_and(|g| g.at_least(5));

    ValidationReport {
        uncovered_atoms,
        small_blocks,
        overlapping_pairs,
        alphabet_contiguous,
        heavy_pairs,
        girth,
        connected,
        greechie_admissible,
    }
}

/// True iff the bipartite atom/block incidence graph is connected.
pub fn is_connected(d: &MmpDiagram) -> bool {
    let atoms = d.atom_count();
    let total = atoms + d.block_count();
    if total <= 1 {
        return true;
    }
    let incidence = d.incidence();
    let mut seen = vec![false; total];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        let mut visit = |w: usize, seen: &mut Vec<bool>, stack: &mut Vec<usize>| {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        };
        if v < atoms {
            for &b in &incidence[v] {
                visit(atoms + b, &mut seen, &mut stack);
            }
        } else {
            for a in d.block(v - atoms).iter() {
                visit(a.0, &mut seen, &mut stack);
            }
        }
    }
    reached == total
}
