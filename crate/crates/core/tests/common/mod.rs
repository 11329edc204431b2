#![allow(dead_code)]

use oml_core::mmp::validate;
use oml_core::MmpDiagram;
use proptest::prelude::*;

pub const PENTAGON: &str = "123,345,567,789,9A1.";
pub const SAMPLES: &[&str] = &[
    "123.",
    "123,345.",
    "123,345,567,789,9A1.",
    "123,345,567,789,9A1,2BC.",
    "123,345,567,789,9AB,BC1.",
    "123,456,789.",
    "1234,4567,789A,ABCD,D1EF.",
];

/// Drops unused atom indices, keeping the relative order of the rest.
pub fn compact(atom_count: usize, blocks: &[Vec<usize>]) -> MmpDiagram {
    let mut map = vec![None; atom_count];
    let mut next = 0;
    for b in blocks {
        for &a in b {
            if map[a].is_none() {
                map[a] = Some(0);
            }
        }
    }
    for slot in map.iter_mut() {
        if slot.is_some() {
            *slot = Some(next);
            next += 1;
        }
    }
    MmpDiagram::from_indices(
        next,
        blocks
            .iter()
            .map(|b| b.iter().map(|&a| map[a].unwrap()).collect::<Vec<_>>()),
    )
    .unwrap()
}

/// Greedily keeps the candidate blocks that preserve Greechie admissibility.
pub fn greedy_admissible(atom_pool: usize, candidates: &[Vec<usize>], max_blocks: usize) -> MmpDiagram {
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for c in candidates {
        if kept.len() == max_blocks {
            break;
        }
        let mut b = c.clone();
        b.sort_unstable();
        b.dedup();
        if b.len() < 3 {
            continue;
        }
        kept.push(b);
        if !validate(&compact(atom_pool, &kept)).greechie_admissible {
            kept.pop();
        }
    }
    compact(atom_pool, &kept)
}

/// Random Greechie-admissible diagrams with block sizes 3 to `max_size`.
pub fn admissible(atom_pool: usize, max_size: usize, max_blocks: usize) -> impl Strategy<Value = MmpDiagram> {
    prop::collection::vec(prop::collection::vec(0..atom_pool, 3..=max_size), 1..=3 * max_blocks)
        .prop_map(move |c| greedy_admissible(atom_pool, &c, max_blocks))
}

/// Random 3-uniform diagrams with no validity constraints beyond distinct atoms.
pub fn triple_soup(atom_pool: usize, max_blocks: usize) -> impl Strategy<Value = MmpDiagram> {
    prop::collection::vec(
        prop::sample::subsequence((0..atom_pool).collect::<Vec<_>>(), 3),
        1..=max_blocks,
    )
    .prop_map(move |bs| compact(atom_pool, &bs))
}

pub fn atoms_share_block(d: &MmpDiagram) -> Vec<Vec<bool>> {
    let n = d.atom_count();
    let mut m = vec![vec![false; n]; n];
    for b in d.blocks() {
        for p in b.iter() {
            for q in b.iter() {
                m[p.0][q.0] = true;
            }
        }
    }
    m
}

fn sorted_blocks(d: &MmpDiagram, map: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = d
        .blocks()
        .iter()
        .map(|b| {
            let mut v: Vec<usize> = b.iter().map(|a| map[a.0]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    out.sort();
    out
}

/// Atoms in breadth-first order over the collinearity graph, so that every
/// atom after the first of its component is collinear with an earlier one.
fn bfs_order(share: &[Vec<bool>]) -> Vec<usize> {
    let n = share.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in 0..n {
                if share[v][w] && !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    order: Vec<usize>,
    df: Vec<usize>,
    dt: Vec<usize>,
    cf: Vec<Vec<bool>>,
    ct: Vec<Vec<bool>>,
    map: Vec<usize>,
    used: Vec<bool>,
    check: &'a mut dyn FnMut(&[usize]) -> bool,
}

impl Search<'_> {
    fn go(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return (self.check)(&self.map);
        }
        let a = self.order[i];
        for t in 0..self.order.len() {
            if self.used[t] || self.df[a] != self.dt[t] {
                continue;
            }
            if (0..i).any(|j| {
                let b = self.order[j];
                self.cf[a][b] != self.ct[t][self.map[b]]
            }) {
                continue;
            }
            self.map[a] = t;
            self.used[t] = true;
            let more = self.go(i + 1);
            self.used[t] = false;
            if !more {
                return false;
            }
        }
        true
    }
}

/// Every bijection `from -> to` carrying blocks onto blocks, found by plain
/// backtracking with degree and collinearity pruning. Calls `found` for each
/// one and stops early when it returns `false`.
pub fn isomorphisms(from: &MmpDiagram, to: &MmpDiagram, mut found: impl FnMut(&[usize]) -> bool) {
    let n = from.atom_count();
    if n != to.atom_count() || from.block_count() != to.block_count() {
        return;
    }
    let target = sorted_blocks(to, &(0..n).collect::<Vec<_>>());
    let mut check = |m: &[usize]| {
        if sorted_blocks(from, m) == target {
            found(m)
        } else {
            true
        }
    };
    let cf = atoms_share_block(from);
    let mut search = Search {
        order: bfs_order(&cf),
        df: from.degrees(),
        dt: to.degrees(),
        cf,
        ct: atoms_share_block(to),
        map: vec![usize::MAX; n],
        used: vec![false; n],
        check: &mut check,
    };
    search.go(0);
}

pub fn brute_automorphism_count(d: &MmpDiagram) -> u64 {
    let mut count = 0;
    isomorphisms(d, d, |_| {
        count += 1;
        true
    });
    count
}

pub fn brute_isomorphic(a: &MmpDiagram, b: &MmpDiagram) -> bool {
    let mut any = false;
    isomorphisms(a, b, |_| {
        any = true;
        false
    });
    any
}
