//! Graphviz rendering of Greechie diagrams.
//!
//! Atoms are nodes. A largest loop is pinned on a circle in loop order and its
//! blocks are drawn as paths along it, so the loop becomes the outer face.
//! Other 3-atom blocks are drawn as triangles and longer blocks as paths. The
//! output is meant for `neato` and is byte-for-byte deterministic.

use std::f64::consts::PI;
use std::fmt::Write;

use oml_core::mmp::{atom_char, longest_loop, validate};
use oml_core::{AtomId, Error, MmpDiagram, Result};

const PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

fn label(a: AtomId) -> String {
    match atom_char(a) {
        Some('"') => "\\\"".into(),
        Some('\\') => "\\\\".into(),
        Some(c) => c.to_string(),
        None => format!("#{}", a.0),
    }
}

/// Atoms of the loop in cyclic order, each block contributing its entry
/// junction followed by its inner atoms.
fn loop_atoms(d: &MmpDiagram, blocks: &[usize], junctions: &[AtomId]) -> Vec<Vec<AtomId>> {
    let n = blocks.len();
    (0..n)
        .map(|i| {
            let entry = junctions[(i + n - 1) % n];
            let exit = junctions[i];
            let mut path = vec![entry];
            path.extend(d.block(blocks[i]).iter().filter(|&a| a != entry && a != exit));
            path.push(exit);
            path
        })
        .collect()
}

pub fn render_dot(d: &MmpDiagram) -> Result<String> {
    if !validate(d).greechie_admissible {
        return Err(Error::NotAdmissible);
    }
    let outer = longest_loop(d)?;
    let mut out = String::new();
    out.push_str("graph greechie {\n");
    out.push_str("  layout=neato;\n");
    out.push_str("  node [shape=circle, width=0.3, fixedsize=true, fontsize=10];\n");
    out.push_str("  edge [penwidth=2];\n");

    let mut pinned: Vec<Option<(f64, f64)>> = vec![None; d.atom_count()];
    let mut loop_paths: Vec<Option<Vec<AtomId>>> = vec![None; d.block_count()];
    if let Some(lp) = &outer {
        let paths = loop_atoms(d, &lp.blocks, &lp.junctions);
        let ring: Vec<AtomId> = paths.iter().flat_map(|p| p[..p.len() - 1].iter().copied()).collect();
        let radius = (ring.len() as f64 * 0.6 / (2.0 * PI)).max(1.0);
        for (i, &a) in ring.iter().enumerate() {
            let angle = PI / 2.0 - 2.0 * PI * i as f64 / ring.len() as f64;
            pinned[a.0] = Some((radius * angle.cos(), radius * angle.sin()));
        }
        for (&b, p) in lp.blocks.iter().zip(paths) {
            loop_paths[b] = Some(p);
        }
    }

    for (a, pin) in pinned.iter().enumerate() {
        let id = AtomId(a);
        match pin {
            Some((x, y)) => writeln!(out, "  a{a} [label=\"{}\", pos=\"{x:.3},{y:.3}!\"];", label(id)),
            None => writeln!(out, "  a{a} [label=\"{}\"];", label(id)),
        }
        .expect("writing to a String");
    }

    for (bi, b) in d.blocks().iter().enumerate() {
        let color = PALETTE[bi % PALETTE.len()];
        let atoms: Vec<AtomId> = match &loop_paths[bi] {
            Some(p) => p.clone(),
            None => b.atoms().to_vec(),
        };
        let mut chain: Vec<String> = atoms.iter().map(|a| format!("a{}", a.0)).collect();
        if loop_paths[bi].is_none() && atoms.len() == 3 {
            chain.push(chain[0].clone());
        }
        writeln!(out, "  {} [color=\"{color}\"];", chain.join(" -- ")).expect("writing to a String");
    }
    out.push_str("}\n");
    Ok(out)
}
