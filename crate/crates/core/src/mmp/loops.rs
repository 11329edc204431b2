//! Loops of blocks and the girth of a diagram.
//!
//! A loop of order `n >= 3` is a cyclic sequence of distinct blocks in which
//! consecutive blocks share exactly one atom, the `n` junction atoms are
//! distinct and non-consecutive blocks are disjoint. For diagrams whose blocks
//! pairwise share at most one atom, the shortest loop corresponds to a shortest
//! cycle of the atom/block incidence graph.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{AtomId, Error, MmpDiagram, Result};

/// Minimal loop order, or `Infinite` for diagrams without loops.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= bound,
            Girth::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinite"),
        }
    }
}

/// A loop given by its blocks in cyclic order. `junctions[i]` is the atom
/// shared by `blocks[i]` and `blocks[(i + 1) % n]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LoopProfile {
    pub blocks: Vec<usize>,
    pub junctions: Vec<AtomId>,
}

impl LoopProfile {
    pub fn order(&self) -> usize {
        self.blocks.len()
    }
}

fn require_linear(d: &MmpDiagram) -> Result<()> {
    match d.first_heavy_pair() {
        Some((i, j)) => Err(Error::PreconditionViolated(i, j)),
        None => Ok(()),
    }
}

/// Checks the loop definition for a cyclic block sequence and returns its
/// profile.
pub fn is_loop(d: &MmpDiagram, blocks: &[usize]) -> Option<LoopProfile> {
    let n = blocks.len();
    if n < 3 || blocks.iter().any(|&b| b >= d.block_count()) {
        return None;
    }
    for i in 0..n {
        for j in i + 1..n {
            if blocks[i] == blocks[j] {
                return None;
            }
        }
    }
    let mut junctions = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (d.block(blocks[i]), d.block(blocks[(i + 1) % n]));
        if a.intersection_len(b) != 1 {
            return None;
        }
        junctions.push(a.common_atom(b)?);
    }
    let mut sorted = junctions.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    for i in 0..n {
        for j in i + 1..n {
            let consecutive = j == i + 1 || (i == 0 && j == n - 1);
            if !consecutive && d.block(blocks[i]).intersection_len(d.block(blocks[j])) != 0 {
                return None;
            }
        }
    }
    Some(LoopProfile {
        blocks: blocks.to_vec(),
        junctions,
    })
}

/// Cycle length and the two vertices where the BFS fronts met.
type CycleEnd = (usize, usize, usize);

/// Incidence graph: vertices `0..A` are atoms, `A..A+B` are blocks.
struct Incidence {
    atoms: usize,
    adj: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(d: &MmpDiagram) -> Self {
        let atoms = d.atom_count();
        let mut adj = vec![Vec::new(); atoms + d.block_count()];
        for (bi, b) in d.blocks().iter().enumerate() {
            for a in b.iter() {
                adj[a.0].push(atoms + bi);
                adj[atoms + bi].push(a.0);
            }
        }
        Incidence { atoms, adj }
    }

    /// BFS from `root`; returns the shortest cycle seen as (length, u, w)
    /// together with distances and parents.
    fn bfs_cycle(&self, root: usize) -> (Option<CycleEnd>, Vec<usize>, Vec<usize>) {
        let n = self.adj.len();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut best: Option<CycleEnd> = None;
        let mut queue = VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if let Some((len, _, _)) = best {
                if 2 * dist[u] >= len {
                    break;
                }
            }
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    if best.is_none_or(|(l, _, _)| len < l) {
                        best = Some((len, u, w));
                    }
                }
            }
        }
        (best, dist, parent)
    }

    fn path_to_root(parent: &[usize], mut v: usize) -> Vec<usize> {
        let mut path = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            path.push(v);
        }
        path
    }
}

/// The girth: order of the shortest loop, `Infinite` when there is none.
///
/// Requires every pair of blocks to share at most one atom.
pub fn girth(d: &MmpDiagram) -> Result<Girth> {
    Ok(match shortest_loop(d)? {
        Some(l) => Girth::Finite(l.order()),
        None => Girth::Infinite,
    })
}

/// A loop of minimal order, if any.
pub fn shortest_loop(d: &MmpDiagram) -> Result<Option<LoopProfile>> {
    require_linear(d)?;
    let inc = Incidence::new(d);
    let mut best: Option<(usize, usize)> = None;
    // Every cycle passes through a block vertex, so block roots suffice.
    for root in inc.atoms..inc.adj.len() {
        if let (Some((len, _, _)), _, _) = inc.bfs_cycle(root) {
            if best.is_none_or(|(l, _)| len < l) {
                best = Some((len, root));
            }
        }
    }
    let Some((len, root)) = best else {
        return Ok(None);
    };
    let (found, _, parent) = inc.bfs_cycle(root);
    let (found_len, u, w) = found.expect("cycle seen on first pass");
    debug_assert_eq!(found_len, len);
    // Walk root -> u, then w -> root; at the global minimum both paths are
    // disjoint apart from the root.
    let mut left = Incidence::path_to_root(&parent, u);
    left.reverse();
    let right = Incidence::path_to_root(&parent, w);
    let mut cycle = left;
    cycle.extend(right.into_iter().take_while(|&v| v != root));
    debug_assert_eq!(cycle.len(), len);
    // The cycle starts at a block (the root) and alternates block, atom, ...
    let blocks: Vec<usize> = cycle.iter().step_by(2).map(|&v| v - inc.atoms).collect();
    let profile = is_loop(d, &blocks).expect("shortest incidence cycle is a loop");
    Ok(Some(profile))
}

/// A loop of maximal order, found by exhaustive search over induced block
/// cycles. Exponential in the worst case, fine for the diagram sizes here.
pub fn longest_loop(d: &MmpDiagram) -> Result<Option<LoopProfile>> {
    require_linear(d)?;
    let m = d.block_count();
    let mut shared = vec![None; m * m];
    let mut neighbours = vec![Vec::new(); m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                if let Some(a) = d.block(i).common_atom(d.block(j)) {
                    shared[i * m + j] = Some(a);
                    neighbours[i].push(j);
                }
            }
        }
    }
    let mut search = LongestLoop {
        m,
        shared,
        neighbours,
        path: Vec::new(),
        junctions: Vec::new(),
        touching: vec![0; m],
        in_path: vec![false; m],
        best: Vec::new(),
    };
    for start in 0..m {
        // A loop rooted at `start` only uses larger blocks.
        if m - start <= search.best.len().max(2) {
            continue;
        }
        search.push(start, None);
        search.extend(start);
        search.pop();
    }
    if search.best.is_empty() {
        return Ok(None);
    }
    Ok(is_loop(d, &search.best))
}

struct LongestLoop {
    m: usize,
    shared: Vec<Option<AtomId>>,
    neighbours: Vec<Vec<usize>>,
    path: Vec<usize>,
    junctions: Vec<AtomId>,
    /// Number of path blocks sharing an atom with each block.
    touching: Vec<usize>,
    in_path: Vec<bool>,
    best: Vec<usize>,
}

impl LongestLoop {
    fn shared(&self, a: usize, b: usize) -> Option<AtomId> {
        self.shared[a * self.m + b]
    }

    fn push(&mut self, b: usize, junction: Option<AtomId>) {
        self.path.push(b);
        self.in_path[b] = true;
        if let Some(j) = junction {
            self.junctions.push(j);
        }
        for &n in &self.neighbours[b] {
            self.touching[n] += 1;
        }
    }

    fn pop(&mut self) {
        let b = self.path.pop().expect("non-empty path");
        self.in_path[b] = false;
        if !self.path.is_empty() {
            self.junctions.pop();
        }
        for &n in &self.neighbours[b] {
            self.touching[n] -= 1;
        }
    }

    /// Path length plus every block that could still join the loop.
    fn upper_bound(&self, start: usize) -> usize {
        let last = self.path.last().copied();
        let mut free = 0;
        for c in start + 1..self.m {
            if self.in_path[c] {
                continue;
            }
            let mut allowed = 0;
            if let Some(l) = last {
                if self.shared(l, c).is_some() {
                    allowed += 1;
                }
                if l != start && self.shared(start, c).is_some() {
                    allowed += 1;
                }
            }
            if self.touching[c] <= allowed {
                free += 1;
            }
        }
        self.path.len() + free
    }

    fn extend(&mut self, start: usize) {
        let last = *self.path.last().expect("non-empty path");
        let entry = self.junctions.last().copied();
        let candidates = self.neighbours[last].clone();
        for c in candidates {
            if c <= start || self.in_path[c] {
                continue;
            }
            let exit = self.shared(last, c).expect("neighbour shares an atom");
            if Some(exit) == entry {
                continue;
            }
            let closes = self.path.len() >= 2 && self.shared(start, c).is_some();
            if closes {
                // `c` touches `last` and `start` only; it must close the loop.
                if self.touching[c] != 2 || c < self.path[1] {
                    continue;
                }
                let back = self.shared(c, start).expect("checked above");
                if back == exit || back == self.junctions[0] {
                    continue;
                }
                if self.path.len() + 1 > self.best.len() {
                    self.best = self.path.clone();
                    self.best.push(c);
                }
                continue;
            }
            if self.touching[c] != 1 {
                continue;
            }
            self.push(c, Some(exit));
            if self.upper_bound(start) > self.best.len() {
                self.extend(start);
            }
            self.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::parse_mmp;

    #[test]
    fn pentagon_has_girth_five() {
        let d = parse_mmp("123,345,567,789,9A1.").unwrap();
        assert_eq!(girth(&d).unwrap(), Girth::Finite(5));
        let l = shortest_loop(&d).unwrap().unwrap();
        assert_eq!(l.order(), 5);
        assert_eq!(longest_loop(&d).unwrap().unwrap().order(), 5);
    }

    #[test]
    fn two_blocks_have_no_loop() {
        let d = parse_mmp("123,345.").unwrap();
        assert_eq!(girth(&d).unwrap(), Girth::Infinite);
        assert!(longest_loop(&d).unwrap().is_none());
    }

    #[test]
    fn square_and_triangle() {
        let d = parse_mmp("123,345,567,781.").unwrap();
        assert_eq!(girth(&d).unwrap(), Girth::Finite(4));
        let d = parse_mmp("123,345,561.").unwrap();
        assert_eq!(girth(&d).unwrap(), Girth::Finite(3));
        // Three blocks through one atom are not a loop.
        let d = parse_mmp("123,145,167.").unwrap();
        assert_eq!(girth(&d).unwrap(), Girth::Infinite);
    }

    #[test]
    fn heavy_pair_is_rejected() {
        let d = parse_mmp("123,234.").unwrap();
        assert_eq!(girth(&d), Err(Error::PreconditionViolated(0, 1)));
    }

    #[test]
    fn girth_ordering() {
        assert!(Girth::Finite(100) < Girth::Infinite);
        assert!(Girth::Infinite.at_least(5));
        assert!(!Girth::Finite(4).at_least(5));
    }
}
