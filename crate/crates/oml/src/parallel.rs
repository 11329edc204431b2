//! Multi-threaded generation with resumable checkpoints.
//!
//! The search tree is cut at a fixed depth into tasks. Tasks run on a worker
//! pool and their results are merged in task order, so the output does not
//! depend on the number of workers. A checkpoint file records every finished
//! task with its emitted diagrams; a resumed run skips those tasks.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use oml_core::generator::{run_task, split, GenSpec, GenStats};
use oml_core::mmp::serialize_mmp;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default depth at which the search tree is cut into tasks.
pub const DEFAULT_SPLIT_DEPTH: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub atom_count: usize,
    pub block_count: usize,
    pub block_size: usize,
    pub min_girth: usize,
    pub require_connected: bool,
    pub min_atom_degree: usize,
}

impl From<&GenSpec> for SpecJson {
    fn from(s: &GenSpec) -> Self {
        SpecJson {
            atom_count: s.atom_count,
            block_count: s.block_count,
            block_size: s.block_size,
            min_girth: s.min_girth,
            require_connected: s.require_connected,
            min_atom_degree: s.min_atom_degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletedTask {
    pub task: usize,
    /// The task's root diagram in MMP notation (empty for the empty root).
    pub prefix: String,
    pub emitted: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub spec: SpecJson,
    pub split_depth: usize,
    pub task_count: usize,
    pub completed: Vec<CompletedTask>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string_pretty(self)?;
        fs::write(&tmp, text).map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
    }
}

#[derive(Clone, Debug)]
pub struct ParallelOptions {
    pub workers: usize,
    pub split_depth: usize,
    pub checkpoint: Option<PathBuf>,
}

impl Default for ParallelOptions {
    fn default() -> Self {
        ParallelOptions {
            workers: 1,
            split_depth: DEFAULT_SPLIT_DEPTH,
            checkpoint: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParallelRun {
    /// Canonical MMP lines in deterministic order.
    pub lines: Vec<String>,
    /// Statistics of the tasks run now (resumed tasks are not counted).
    pub stats: GenStats,
    pub resumed_tasks: usize,
}

fn prefix_text(d: &oml_core::MmpDiagram) -> String {
    if d.block_count() == 0 {
        String::new()
    } else {
        serialize_mmp(d).expect("generated diagrams fit the alphabet")
    }
}

pub fn generate_parallel(spec: &GenSpec, opts: &ParallelOptions) -> Result<ParallelRun> {
    let clock = Instant::now();
    let (tasks, mut stats) = split(spec, opts.split_depth)?;
    let spec_json = SpecJson::from(spec);

    let mut checkpoint = Checkpoint {
        spec: spec_json.clone(),
        split_depth: opts.split_depth,
        task_count: tasks.len(),
        completed: Vec::new(),
    };
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let old = Checkpoint::load(path)?;
            if old.spec != spec_json || old.split_depth != opts.split_depth || old.task_count != tasks.len() {
                return Err(Error::Checkpoint(format!(
                    "{} was written for a different spec or split depth",
                    path.display()
                )));
            }
            for c in &old.completed {
                let matches = tasks.get(c.task).is_some_and(|t| prefix_text(&t.diagram) == c.prefix);
                if !matches {
                    return Err(Error::Checkpoint(format!("task {} has a different prefix", c.task)));
                }
            }
            checkpoint = old;
        } else {
            checkpoint.save(path)?;
        }
    }

    let mut results: Vec<Option<Vec<String>>> = vec![None; tasks.len()];
    for c in &checkpoint.completed {
        results[c.task] = Some(c.emitted.clone());
    }
    let resumed_tasks = checkpoint.completed.len();
    let pending: Vec<usize> = (0..tasks.len()).filter(|&i| results[i].is_none()).collect();

    let shared = Mutex::new((checkpoint, GenStats::default(), None::<Error>));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .expect("thread pool");
    let fresh: Vec<(usize, Vec<String>)> = pool.install(|| {
        pending
            .par_iter()
            .map(|&i| {
                let task = &tasks[i];
                let mut emitted = Vec::new();
                let s = run_task(spec, task, |cf| {
                    emitted.push(cf.canonical_text().expect("generated diagrams fit the alphabet"))
                });
                let mut guard = shared.lock().expect("no poisoned lock");
                guard.1.merge(&s);
                if let Some(path) = &opts.checkpoint {
                    guard.0.completed.push(CompletedTask {
                        task: i,
                        prefix: prefix_text(&task.diagram),
                        emitted: emitted.clone(),
                    });
                    guard.0.completed.sort_by_key(|c| c.task);
                    if let Err(e) = guard.0.save(path) {
                        guard.2.get_or_insert(e);
                    }
                }
                (i, emitted)
            })
            .collect()
    });
    let (_, task_stats, failure) = shared.into_inner().expect("no poisoned lock");
    if let Some(e) = failure {
        return Err(e);
    }
    for (i, emitted) in fresh {
        results[i] = Some(emitted);
    }
    stats.merge(&task_stats);
    stats.wall_time = clock.elapsed();
    Ok(ParallelRun {
        lines: results.into_iter().flatten().flatten().collect(),
        stats,
        resumed_tasks,
    })
}
