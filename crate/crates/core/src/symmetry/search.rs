//! Individualization-refinement search on the atom/block incidence graph.
//!
//! Vertices `0..A` are atoms, `A..A+B` blocks. The root partition puts atoms
//! before blocks and is refined to an equitable partition; the search then
//! individualizes atoms of the first smallest non-singleton atom cell. Leaves
//! are discrete on atoms and yield a labelling; the least certificate wins.
//! Automorphisms found along the way prune equivalent subtrees and give the
//! group order from the first path.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;

use crate::MmpDiagram;

pub(crate) type Certificate = Vec<Vec<usize>>;

struct Graph {
    atoms: usize,
    adj: Vec<Vec<usize>>,
}

#[derive(Clone)]
struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    fn root(g: &Graph) -> Self {
        let total = g.adj.len();
        let mut cells = Vec::new();
        if g.atoms > 0 {
            cells.push((0..g.atoms).collect());
        }
        if total > g.atoms {
            cells.push((g.atoms..total).collect());
        }
        let mut p = Partition {
            cells,
            cell_of: vec![0; total],
        };
        p.reindex();
        p
    }

    fn reindex(&mut self) {
        for (ci, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                self.cell_of[v] = ci;
            }
        }
    }

    /// Splits cells by the multiset of neighbouring cells until stable.
    fn refine(&mut self, g: &Graph) {
        let mut keyed: Vec<(Vec<usize>, usize)> = Vec::new();
        loop {
            let mut next = Vec::with_capacity(self.cells.len());
            for cell in &self.cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                keyed.clear();
                for &v in cell {
                    let mut sig: Vec<usize> = g.adj[v].iter().map(|&w| self.cell_of[w]).collect();
                    sig.sort_unstable();
                    keyed.push((sig, v));
                }
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            let changed = next.len() != self.cells.len();
            self.cells = next;
            if !changed {
                return;
            }
            self.reindex();
        }
    }

    /// First smallest non-singleton cell made of atoms.
    fn target_cell(&self, atoms: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (ci, cell) in self.cells.iter().enumerate() {
            if cell.len() > 1 && cell[0] < atoms && best.is_none_or(|b| cell.len() < self.cells[b].len()) {
                best = Some(ci);
            }
        }
        best
    }

    fn individualize(&self, cell: usize, v: usize) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        cells.extend_from_slice(&self.cells[..cell]);
        cells.push(vec![v]);
        cells.push(self.cells[cell].iter().copied().filter(|&w| w != v).collect());
        cells.extend_from_slice(&self.cells[cell + 1..]);
        let mut p = Partition {
            cells,
            cell_of: self.cell_of.clone(),
        };
        p.reindex();
        p
    }
}

struct Leaf {
    /// Atom -> canonical position.
    labeling: Vec<usize>,
    cert: Certificate,
    path: Vec<usize>,
}

enum Flow {
    Continue,
    JumpTo(usize),
}

/// Result of the search.
pub(crate) struct SearchResult {
    pub labeling: Vec<usize>,
    pub cert: Certificate,
    pub generators: Vec<Vec<usize>>,
    pub group_order: BigUint,
}

struct Search<'a> {
    g: Graph,
    d: &'a MmpDiagram,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

pub(crate) fn certificate(d: &MmpDiagram, labeling: &[usize]) -> Certificate {
    let mut cert: Certificate = d
        .blocks()
        .iter()
        .map(|b| {
            let mut img: Vec<usize> = b.iter().map(|a| labeling[a.0]).collect();
            img.sort_unstable();
            img
        })
        .collect();
    cert.sort_unstable();
    cert
}

pub(crate) fn search(d: &MmpDiagram) -> SearchResult {
    let atoms = d.atom_count();
    let mut adj = vec![Vec::new(); atoms + d.block_count()];
    for (bi, b) in d.blocks().iter().enumerate() {
        for a in b.iter() {
            adj[a.0].push(atoms + bi);
            adj[atoms + bi].push(a.0);
        }
    }
    let mut s = Search {
        g: Graph { atoms, adj },
        d,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut root = Partition::root(&s.g);
    root.refine(&s.g);
    let mut path = Vec::new();
    s.descend(root, &mut path);

    let first = s.first.take().expect("search reaches a leaf");
    let best = s.best.take().expect("search reaches a leaf");
    let mut group_order = BigUint::from(1u32);
    for level in 0..first.path.len() {
        let fixed = &first.path[..level];
        let uf = orbits(atoms, s.generators.iter().filter(|g| fixes(g, fixed)));
        let root_v = find(&uf, first.path[level]);
        let size = (0..atoms).filter(|&a| find(&uf, a) == root_v).count();
        group_order *= BigUint::from(size);
    }
    SearchResult {
        labeling: best.labeling,
        cert: best.cert,
        generators: s.generators,
        group_order,
    }
}

fn fixes(g: &[usize], points: &[usize]) -> bool {
    points.iter().all(|&p| g[p] == p)
}

pub(crate) fn orbits<'g>(n: usize, gens: impl Iterator<Item = &'g Vec<usize>>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    for g in gens {
        for (x, &y) in g.iter().enumerate() {
            let (rx, ry) = (find(&parent, x), find(&parent, y));
            if rx != ry {
                let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
                parent[hi] = lo;
            }
        }
    }
    parent
}

pub(crate) fn find(parent: &[usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    fn descend(&mut self, part: Partition, path: &mut Vec<usize>) -> Flow {
        let Some(target) = part.target_cell(self.g.atoms) else {
            return self.leaf(&part, path);
        };
        let level = path.len();
        let mut cell = part.cells[target].clone();
        cell.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for v in cell {
            if !explored.is_empty() {
                let uf = orbits(self.g.atoms, self.generators.iter().filter(|g| fixes(g, path)));
                let rv = find(&uf, v);
                if explored.iter().any(|&u| find(&uf, u) == rv) {
                    continue;
                }
            }
            let mut child = part.individualize(target, v);
            child.refine(&self.g);
            path.push(v);
            let flow = self.descend(child, path);
            path.pop();
            explored.push(v);
            if let Flow::JumpTo(l) = flow {
                if l < level {
                    return flow;
                }
            }
        }
        Flow::Continue
    }

    fn leaf(&mut self, part: &Partition, path: &[usize]) -> Flow {
        let labeling: Vec<usize> = (0..self.g.atoms).map(|a| part.cell_of[a]).collect();
        let cert = certificate(self.d, &labeling);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                labeling: labeling.clone(),
                cert: cert.clone(),
                path: path.to_vec(),
            };
            self.first = Some(leaf);
            self.best = Some(Leaf {
                labeling,
                cert,
                path: path.to_vec(),
            });
            return Flow::Continue;
        };
        if cert == first.cert {
            let gen = automorphism(&first.labeling, &labeling);
            let jump = common_prefix(path, &first.path);
            self.generators.push(gen);
            return Flow::JumpTo(jump);
        }
        let best = self.best.as_ref().expect("set with first");
        match cert.cmp(&best.cert) {
            core::cmp::Ordering::Less => {
                self.best = Some(Leaf {
                    labeling,
                    cert,
                    path: path.to_vec(),
                });
                Flow::Continue
            }
            core::cmp::Ordering::Equal => {
                let gen = automorphism(&best.labeling, &labeling);
                let jump = common_prefix(path, &best.path);
                self.generators.push(gen);
                Flow::JumpTo(jump)
            }
            core::cmp::Ordering::Greater => Flow::Continue,
        }
    }
}

/// The atom map sending the leaf labelled `from` onto the leaf labelled `to`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut inverse_to = vec![0; to.len()];
    for (a, &l) in to.iter().enumerate() {
        inverse_to[l] = a;
    }
    from.iter().map(|&l| inverse_to[l]).collect()
}
