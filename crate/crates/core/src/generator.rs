//! Isomorph-free generation of Greechie diagrams by canonical augmentation.
//!
//! A partial diagram uses atoms `0..used`. Children add one block made of a
//! set `S` of existing atoms plus fresh atoms. Only one `S` per orbit of the
//! parent's automorphism group is tried, and a child is kept only when its new
//! block lies in the automorphism orbit of its designated block: the
//! removable block whose canonical image is lexicographically greatest. Every
//! isomorphism class is therefore produced exactly once, without storing the
//! classes already seen.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use crate::mmp::{girth, is_connected, validate, Girth};
use crate::symmetry::{canonical_form_unchecked, find, orbits, CanonicalForm};
use crate::{Block, Error, MmpDiagram, Result};

/// Parameters of a census.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub atom_count: usize,
    pub block_count: usize,
    pub block_size: usize,
    pub min_girth: usize,
    pub require_connected: bool,
    pub min_atom_degree: usize,
}

impl GenSpec {
    /// Default conventions: 3-element blocks, girth at least 5, connected,
    /// every atom in at least one block.
    pub fn new(atom_count: usize, block_count: usize) -> Self {
        GenSpec {
            atom_count,
            block_count,
            block_size: 3,
            min_girth: 5,
            require_connected: true,
            min_atom_degree: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_size < 3 {
            return Err(Error::InvalidSpec(format!(
                "block_size must be at least 3, got {}",
                self.block_size
            )));
        }
        if self.min_girth < 5 {
            return Err(Error::InvalidSpec(format!(
                "min_girth must be at least 5, got {}",
                self.min_girth
            )));
        }
        if self.block_size >= 32 {
            return Err(Error::InvalidSpec(format!(
                "block_size must be below 32, got {}",
                self.block_size
            )));
        }
        if self.min_atom_degree == 0 {
            return Err(Error::InvalidSpec("min_atom_degree must be at least 1".into()));
        }
        Ok(())
    }

    fn remaining_ok(&self, d: &MmpDiagram) -> bool {
        let used = d.atom_count();
        if used > self.atom_count {
            return false;
        }
        let b = d.block_count();
        if b == 0 {
            return true;
        }
        let r = self.block_count - b;
        let k = self.block_size;
        let fresh_per_block = if self.require_connected { k - 1 } else { k };
        if used + r * fresh_per_block < self.atom_count {
            return false;
        }
        let deficit: usize = d
            .degrees()
            .iter()
            .map(|&deg| self.min_atom_degree.saturating_sub(deg))
            .sum::<usize>()
            + (self.atom_count - used) * self.min_atom_degree;
        deficit <= r * k
    }

    fn final_ok(&self, d: &MmpDiagram) -> bool {
        d.atom_count() == self.atom_count && d.degrees().iter().all(|&deg| deg >= self.min_atom_degree)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenStats {
    /// Search nodes accepted by the parent test, the root included.
    pub nodes_explored: u64,
    pub canonical_rejections: u64,
    /// Candidate extensions cut because they would close a short loop.
    pub girth_prunes: u64,
    pub emitted_count: u64,
    pub wall_time: Duration,
}

impl GenStats {
    pub fn merge(&mut self, other: &GenStats) {
        self.nodes_explored += other.nodes_explored;
        self.canonical_rejections += other.canonical_rejections;
        self.girth_prunes += other.girth_prunes;
        self.emitted_count += other.emitted_count;
        self.wall_time += other.wall_time;
    }
}

/// An independent subtree of the search.
#[derive(Clone, Debug)]
pub struct Task {
    /// Position in the deterministic task order.
    pub index: usize,
    pub diagram: MmpDiagram,
    generators: Vec<Vec<usize>>,
}

/// Emits every class of `spec` once, in canonical form and deterministic order.
pub fn generate<F>(spec: &GenSpec, mut sink: F) -> Result<GenStats>
where
    F: FnMut(&CanonicalForm),
{
    let clock = Clock::start();
    let (tasks, mut stats) = split(spec, 0)?;
    for task in &tasks {
        stats.merge(&run_task(spec, task, &mut sink));
    }
    stats.wall_time = clock.elapsed();
    Ok(stats)
}

/// Number of classes of `spec`.
pub fn census(spec: &GenSpec) -> Result<u64> {
    Ok(generate(spec, |_| {})?.emitted_count)
}

/// Expands the search tree to `depth` blocks and returns the nodes there as
/// tasks, in the order a sequential run would visit them. Classes with fewer
/// blocks than `depth` are not possible, so the depth is capped at
/// `block_count`.
pub fn split(spec: &GenSpec, depth: usize) -> Result<(Vec<Task>, GenStats)> {
    spec.validate()?;
    let clock = Clock::start();
    let mut stats = GenStats::default();
    let root = Node {
        diagram: MmpDiagram::new(0, Vec::new()).expect("empty diagram"),
        generators: Vec::new(),
    };
    if spec.block_count == 0 {
        return Ok((Vec::new(), stats));
    }
    stats.nodes_explored += 1;
    let depth = depth.min(spec.block_count);
    let mut level = vec![root];
    for _ in 0..depth {
        let mut next = Vec::new();
        for node in &level {
            children(spec, node, &mut stats, |child| next.push(child));
        }
        level = next;
    }
    let tasks = level
        .into_iter()
        .enumerate()
        .map(|(index, node)| Task {
            index,
            diagram: node.diagram,
            generators: node.generators,
        })
        .collect();
    stats.wall_time = clock.elapsed();
    Ok((tasks, stats))
}

/// Runs one subtree. Emissions follow the sequential order within the task.
pub fn run_task<F>(spec: &GenSpec, task: &Task, mut sink: F) -> GenStats
where
    F: FnMut(&CanonicalForm),
{
    let clock = Clock::start();
    let mut stats = GenStats::default();
    let node = Node {
        diagram: task.diagram.clone(),
        generators: task.generators.clone(),
    };
    if node.diagram.block_count() == spec.block_count {
        if spec.final_ok(&node.diagram) {
            stats.emitted_count += 1;
            sink(&canonical_form_unchecked(&node.diagram));
        }
    } else {
        dfs(spec, &node, &mut stats, &mut sink);
    }
    stats.wall_time = clock.elapsed();
    stats
}

struct Node {
    diagram: MmpDiagram,
    generators: Vec<Vec<usize>>,
}

fn dfs<F>(spec: &GenSpec, node: &Node, stats: &mut GenStats, sink: &mut F)
where
    F: FnMut(&CanonicalForm),
{
    let last = node.diagram.block_count() + 1 == spec.block_count;
    let mut kids = Vec::new();
    children(spec, node, stats, |child| kids.push(child));
    for child in kids {
        if last {
            if spec.final_ok(&child.diagram) {
                stats.emitted_count += 1;
                sink(&canonical_form_unchecked(&child.diagram));
            }
        } else {
            dfs(spec, &child, stats, sink);
        }
    }
}

/// Calls `f` on every accepted child of `node`, in candidate order.
fn children(spec: &GenSpec, node: &Node, stats: &mut GenStats, mut f: impl FnMut(Node)) {
    let d = &node.diagram;
    let used = d.atom_count();
    let k = spec.block_size;
    let dist = atom_distances(d, spec.min_girth - 2);
    let min_shared = usize::from(spec.require_connected && d.block_count() > 0);

    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    for j in min_shared..=k.min(used) {
        let fresh = k - j;
        if used + fresh > spec.atom_count {
            continue;
        }
        let mut subsets = Vec::new();
        choose_spread(&dist, spec.min_girth - 1, j, 0, &mut current, &mut subsets, stats);
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in subsets {
            if seen.contains(&s) {
                continue;
            }
            orbit_of_set(&s, &node.generators, &mut seen);
            let mut block = s;
            block.extend(used..used + fresh);
            candidates.push(block);
        }
    }
    candidates.sort_unstable();

    for block in candidates {
        let atoms = (*block.last().expect("nonempty block") + 1).max(used);
        let mut blocks = d.blocks().to_vec();
        blocks.push(Block::new(block.iter().copied()).expect("distinct atoms"));
        let child = MmpDiagram::new(atoms, blocks).expect("atoms in range");
        if !spec.remaining_ok(&child) {
            continue;
        }
        let cf = canonical_form_unchecked(&child);
        if !is_designated(&child, &cf, child.block_count() - 1, spec.require_connected) {
            stats.canonical_rejections += 1;
            continue;
        }
        stats.nodes_explored += 1;
        f(Node {
            diagram: child,
            generators: cf.generators.iter().map(|g| g.mapping().to_vec()).collect(),
        });
    }
}

/// Block distance between atoms (number of blocks on a shortest chain),
/// capped: entries above `cap` read `usize::MAX`.
fn atom_distances(d: &MmpDiagram, cap: usize) -> Vec<Vec<usize>> {
    let n = d.atom_count();
    let inc = d.incidence();
    let mut out = vec![vec![usize::MAX; n]; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row = &mut out[s];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(a) = queue.pop_front() {
            if row[a] >= cap {
                continue;
            }
            for &bi in &inc[a] {
                for b in d.block(bi).iter() {
                    if row[b.0] == usize::MAX {
                        row[b.0] = row[a] + 1;
                        queue.push_back(b.0);
                    }
                }
            }
        }
    }
    out
}

/// All `j`-subsets (ascending) whose atoms are pairwise at block distance at
/// least `spread`.
fn choose_spread(
    dist: &[Vec<usize>],
    spread: usize,
    j: usize,
    from: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    stats: &mut GenStats,
) {
    if current.len() == j {
        out.push(current.clone());
        return;
    }
    let n = dist.len();
    for a in from..n {
        if n - a < j - current.len() {
            break;
        }
        let mut ok = true;
        for &c in current.iter() {
            let dd = dist[c][a];
            if dd < spread {
                if dd >= 2 {
                    stats.girth_prunes += 1;
                }
                ok = false;
                break;
            }
        }
        if ok {
            current.push(a);
            choose_spread(dist, spread, j, a + 1, current, out, stats);
            current.pop();
        }
    }
}

fn orbit_of_set(s: &[usize], gens: &[Vec<usize>], seen: &mut BTreeSet<Vec<usize>>) {
    let mut stack = vec![s.to_vec()];
    seen.insert(s.to_vec());
    while let Some(t) = stack.pop() {
        for g in gens {
            let mut img: Vec<usize> = t.iter().map(|&a| g[a]).collect();
            img.sort_unstable();
            if seen.insert(img.clone()) {
                stack.push(img);
            }
        }
    }
}

/// Blocks whose removal keeps the required structure: any block, or, when
/// connectivity is required, the blocks whose removal leaves the rest
/// connected.
fn removable(d: &MmpDiagram, require_connected: bool) -> Vec<bool> {
    let m = d.block_count();
    if !require_connected {
        return vec![true; m];
    }
    let inc = d.incidence();
    let mut adj = vec![Vec::new(); m];
    for blocks in &inc {
        for (x, &p) in blocks.iter().enumerate() {
            for &q in &blocks[x + 1..] {
                adj[p].push(q);
                adj[q].push(p);
            }
        }
    }
    (0..m)
        .map(|skip| {
            let start = usize::from(skip == 0);
            if start >= m {
                return true;
            }
            let mut seen = vec![false; m];
            seen[skip] = true;
            seen[start] = true;
            let mut stack = vec![start];
            let mut count = 1;
            while let Some(p) = stack.pop() {
                for &q in &adj[p] {
                    if !seen[q] {
                        seen[q] = true;
                        count += 1;
                        stack.push(q);
                    }
                }
            }
            count == m - 1
        })
        .collect()
}

/// The removable block with the lexicographically greatest canonical image.
fn designated_block(d: &MmpDiagram, cf: &CanonicalForm, require_connected: bool) -> usize {
    let rem = removable(d, require_connected);
    let mut best: Option<(Vec<usize>, usize)> = None;
    for (bi, b) in d.blocks().iter().enumerate() {
        if !rem[bi] {
            continue;
        }
        let mut img: Vec<usize> = b.iter().map(|a| cf.labeling.apply(a).0).collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|(bimg, _)| img > *bimg) {
            best = Some((img, bi));
        }
    }
    best.expect("a connected diagram has a removable block").1
}

/// True when block `target` is in the automorphism orbit of the designated
/// block.
fn is_designated(d: &MmpDiagram, cf: &CanonicalForm, target: usize, require_connected: bool) -> bool {
    let designated = designated_block(d, cf, require_connected);
    if designated == target {
        return true;
    }
    let index: BTreeMap<&Block, usize> = d.blocks().iter().enumerate().map(|(i, b)| (b, i)).collect();
    let block_perms: Vec<Vec<usize>> = cf
        .generators
        .iter()
        .map(|g| {
            d.blocks()
                .iter()
                .map(|b| {
                    let img = Block::new(b.iter().map(|a| g.apply(a))).expect("bijection");
                    index[&img]
                })
                .collect()
        })
        .collect();
    let uf = orbits(d.block_count(), block_perms.iter());
    find(&uf, designated) == find(&uf, target)
}

fn remove_block(d: &MmpDiagram, bi: usize) -> MmpDiagram {
    crate::mmp::drop_blocks(d, &[bi]).expect("index in range").0
}

/// Outcome of [`membership_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// The diagram is emitted by [`generate`]; `chain` lists the block counts
    /// of the canonical ancestors that were checked.
    Reached { chain: usize },
    /// The diagram itself violates the spec.
    NotInSpec,
    /// An ancestor violates a pruning rule at the given block count.
    PrunedAt(usize),
}

/// Decides whether `d` is emitted by [`generate`] for `spec` without running
/// the search: follows the chain of designated-block deletions down to the
/// empty diagram and checks every pruning rule along the way.
pub fn membership_probe(spec: &GenSpec, d: &MmpDiagram) -> Result<Membership> {
    spec.validate()?;
    let report = validate(d);
    let in_spec = report.greechie_admissible
        && d.block_count() == spec.block_count
        && d.blocks().iter().all(|b| b.len() == spec.block_size)
        && report.girth.is_some_and(|g| g.at_least(spec.min_girth))
        && (!spec.require_connected || report.connected)
        && spec.final_ok(d);
    if !in_spec {
        return Ok(Membership::NotInSpec);
    }
    let mut current = d.clone();
    let mut chain = 0;
    while current.block_count() > 0 {
        let b = current.block_count();
        let ok = spec.remaining_ok(&current)
            && (!spec.require_connected || is_connected(&current))
            && girth(&current).is_ok_and(|g| g >= Girth::Finite(spec.min_girth));
        if !ok {
            return Ok(Membership::PrunedAt(b));
        }
        let cf = canonical_form_unchecked(&current);
        let designated = designated_block(&current, &cf, spec.require_connected);
        current = remove_block(&current, designated);
        chain += 1;
    }
    Ok(Membership::Reached { chain })
}

/// Largest number of candidate block sets [`brute_force_generate`] accepts.
pub const BRUTE_FORCE_LIMIT: u128 = 100_000_000;

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Independent oracle: tries every set of `block_count` blocks over
/// `atom_count` labelled atoms and keeps one canonical form per class, sorted.
pub fn brute_force_generate(spec: &GenSpec) -> Result<Vec<CanonicalForm>> {
    spec.validate()?;
    let n = spec.atom_count;
    let k = spec.block_size;
    let blocks_total = binomial(n as u128, k as u128);
    let candidates = binomial(blocks_total, spec.block_count as u128);
    if candidates > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(candidates));
    }
    let mut all_blocks = Vec::new();
    let mut current = Vec::new();
    k_subsets(n, k, 0, &mut current, &mut all_blocks);

    let mut found: BTreeMap<MmpDiagram, CanonicalForm> = BTreeMap::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut cover = vec![0usize; n];
    let mut visit = |chosen: &[usize]| {
        let blocks: Vec<Block> = chosen
            .iter()
            .map(|&i| Block::new(all_blocks[i].iter().copied()).expect("distinct"))
            .collect();
        let d = MmpDiagram::new(n, blocks).expect("in range");
        let degrees_ok = d.degrees().iter().all(|&deg| deg >= spec.min_atom_degree);
        if !degrees_ok || (spec.require_connected && !is_connected(&d)) {
            return;
        }
        if !girth(&d).is_ok_and(|g| g >= Girth::Finite(spec.min_girth)) {
            return;
        }
        let cf = canonical_form_unchecked(&d);
        found.entry(cf.canonical.clone()).or_insert(cf);
    };
    if spec.block_count > 0 {
        pick_blocks(&all_blocks, spec.block_count, 0, &mut chosen, &mut cover, &mut visit);
    }
    Ok(found.into_values().collect())
}

fn k_subsets(n: usize, k: usize, from: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    for a in from..n {
        if n - a < k - current.len() {
            break;
        }
        current.push(a);
        k_subsets(n, k, a + 1, current, out);
        current.pop();
    }
}

/// Chooses blocks in increasing order, pairwise sharing at most one atom.
/// Blocks come in lexicographic order, so once a block starts above the
/// smallest uncovered atom that atom can never be covered.
fn pick_blocks<F: FnMut(&[usize])>(
    all: &[Vec<usize>],
    want: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    cover: &mut [usize],
    visit: &mut F,
) {
    if chosen.len() == want {
        if cover.iter().all(|&c| c > 0) {
            visit(chosen);
        }
        return;
    }
    let uncovered = cover.iter().filter(|&&c| c == 0).count();
    let k = all.first().map_or(0, Vec::len);
    if uncovered > (want - chosen.len()) * k {
        return;
    }
    let first_uncovered = cover.iter().position(|&c| c == 0).unwrap_or(usize::MAX);
    for i in from..all.len() {
        if all[i][0] > first_uncovered {
            break;
        }
        let linear = chosen
            .iter()
            .all(|&c| all[c].iter().filter(|a| all[i].contains(a)).count() <= 1);
        if !linear {
            continue;
        }
        for &a in &all[i] {
            cover[a] += 1;
        }
        chosen.push(i);
        pick_blocks(all, want, i + 1, chosen, cover, visit);
        chosen.pop();
        for &a in &all[i] {
            cover[a] -= 1;
        }
    }
}

#[cfg(feature = "std")]
struct Clock(std::time::Instant);

#[cfg(feature = "std")]
impl Clock {
    fn start() -> Self {
        Clock(std::time::Instant::now())
    }

    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

/// Without `std` there is no clock and `wall_time` stays zero.
#[cfg(not(feature = "std"))]
struct Clock;

#[cfg(not(feature = "std"))]
impl Clock {
    fn start() -> Self {
        Clock
    }

    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::parse_mmp;
    use crate::symmetry::canonical_form;

    fn classes(spec: &GenSpec) -> Vec<MmpDiagram> {
        let mut out = Vec::new();
        generate(spec, |cf| out.push(cf.canonical.clone())).unwrap();
        out.sort();
        out
    }

    #[test]
    fn spec_validation() {
        let mut s = GenSpec::new(6, 2);
        assert!(s.validate().is_ok());
        s.block_size = 2;
        assert!(matches!(s.validate(), Err(Error::InvalidSpec(_))));
        let mut s = GenSpec::new(6, 2);
        s.min_girth = 4;
        assert!(matches!(generate(&s, |_| {}), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn tiny_specs() {
        assert_eq!(census(&GenSpec::new(3, 1)).unwrap(), 1);
        assert_eq!(census(&GenSpec::new(5, 2)).unwrap(), 1);
        let mut s = GenSpec::new(6, 2);
        assert_eq!(census(&s).unwrap(), 0);
        s.require_connected = false;
        assert_eq!(census(&s).unwrap(), 1);
    }

    #[test]
    fn pentagon_is_generated() {
        let pentagon = canonical_form(&parse_mmp("123,345,567,789,9A1.").unwrap())
            .unwrap()
            .canonical;
        assert!(classes(&GenSpec::new(10, 5)).contains(&pentagon));
    }

    #[test]
    fn agrees_with_oracle_on_small_specs() {
        for (a, b) in [(7, 3), (9, 4), (10, 4), (8, 4)] {
            for connected in [true, false] {
                let mut s = GenSpec::new(a, b);
                s.require_connected = connected;
                let oracle: Vec<MmpDiagram> = brute_force_generate(&s)
                    .unwrap()
                    .into_iter()
                    .map(|c| c.canonical)
                    .collect();
                assert_eq!(classes(&s), oracle, "{s:?}");
            }
        }
    }

    #[test]
    fn split_matches_sequential() {
        let s = GenSpec::new(10, 5);
        let whole = {
            let mut v = Vec::new();
            generate(&s, |cf| v.push(cf.canonical.clone())).unwrap();
            v
        };
        let (tasks, _) = split(&s, 3).unwrap();
        let mut parts = Vec::new();
        for t in &tasks {
            run_task(&s, t, |cf| parts.push(cf.canonical.clone()));
        }
        assert_eq!(whole, parts);
    }

    #[test]
    fn oracle_guard() {
        assert!(matches!(
            brute_force_generate(&GenSpec::new(15, 5)),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn probe_follows_parent_chain() {
        let pentagon = parse_mmp("123,345,567,789,9A1.").unwrap();
        assert_eq!(
            membership_probe(&GenSpec::new(10, 5), &pentagon).unwrap(),
            Membership::Reached { chain: 5 }
        );
        assert_eq!(
            membership_probe(&GenSpec::new(10, 4), &pentagon).unwrap(),
            Membership::NotInSpec
        );
    }
}
