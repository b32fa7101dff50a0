//! Exhaustive search for Hamilton paths whose induced orientation is an AOF
//! (optionally Holt-Klee) orientation.
//!
//! An acyclic orientation containing a directed Hamilton path has exactly one
//! topological order, so enumerating Hamilton paths and orienting every edge
//! forward along the path covers all Hamilton AOF orientations. Reversal
//! preserves both properties, so each undirected path is reported once, in
//! the direction whose first vertex has the smaller index.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use log::{debug, info};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::CombinatorialPolytope;
use crate::hamilton::{check_aof_with, check_holt_klee_with, orientation_from_path, FaceTable, HamiltonPath};

/// Depth-first Hamilton path enumerator with connectivity and dead-end pruning.
struct Walker<'a> {
    adj: &'a [Vec<usize>],
    visited: Vec<bool>,
    path: Vec<usize>,
    /// In-degree histogram bound; `None` disables the filter.
    h: Option<&'a [i64]>,
    hist: Vec<i64>,
    stop: &'a AtomicBool,
    deadline: Option<Instant>,
    nodes: u64,
    stack: Vec<usize>,
    seen: Vec<bool>,
}

impl<'a> Walker<'a> {
    fn new(adj: &'a [Vec<usize>], h: Option<&'a [i64]>, stop: &'a AtomicBool, deadline: Option<Instant>) -> Self {
        let nv = adj.len();
        let dmax = adj.iter().map(Vec::len).max().unwrap_or(0);
        Walker {
            adj,
            visited: vec![false; nv],
            path: Vec::with_capacity(nv),
            h,
            hist: vec![0; dmax + 1],
            stop,
            deadline,
            nodes: 0,
            stack: Vec::with_capacity(nv),
            seen: vec![false; nv],
        }
    }

    /// Number of already placed neighbours of `v`.
    fn indegree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&w| self.visited[w]).count()
    }

    fn push(&mut self, v: usize) -> bool {
        let d = self.indegree(v);
        self.hist[d] += 1;
        self.visited[v] = true;
        self.path.push(v);
        match self.h {
            Some(h) => self.hist[d] <= h.get(d).copied().unwrap_or(0),
            None => true,
        }
    }

    fn pop(&mut self) {
        let v = self.path.pop().unwrap();
        self.visited[v] = false;
        let d = self.indegree(v);
        self.hist[d] -= 1;
    }

    /// The unvisited vertices must be reachable from the head and at most one may be a forced endpoint.
    fn feasible(&mut self) -> bool {
        let nv = self.adj.len();
        let remaining = nv - self.path.len();
        if remaining == 0 {
            return true;
        }
        let head = *self.path.last().unwrap();
        let mut forced_ends = 0;
        for v in 0..nv {
            if self.visited[v] {
                continue;
            }
            let avail = self.adj[v].iter().filter(|&&w| !self.visited[w] || w == head).count();
            if avail == 0 {
                return false;
            }
            if avail == 1 && remaining > 1 {
                forced_ends += 1;
                if forced_ends > 1 {
                    return false;
                }
            }
        }
        self.seen.iter_mut().for_each(|s| *s = false);
        self.stack.clear();
        self.stack.push(head);
        self.seen[head] = true;
        let mut reached = 0;
        while let Some(x) = self.stack.pop() {
            for &w in &self.adj[x] {
                if !self.visited[w] && !self.seen[w] {
                    self.seen[w] = true;
                    reached += 1;
                    self.stack.push(w);
                }
            }
        }
        reached == remaining
    }

    fn interrupted(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        self.stop.load(Ordering::Relaxed)
    }

    /// Extends the current path in every way; returns false when interrupted.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize])) -> bool {
        if self.interrupted() {
            return false;
        }
        if self.path.len() == self.adj.len() {
            if self.path[0] < *self.path.last().unwrap() {
                visit(&self.path);
            }
            return true;
        }
        let head = *self.path.last().unwrap();
        for i in 0..self.adj[head].len() {
            let w = self.adj[head][i];
            if self.visited[w] {
                continue;
            }
            let ok = self.push(w) && self.feasible();
            let cont = !ok || self.run(visit);
            self.pop();
            if !cont {
                return false;
            }
        }
        true
    }

    /// Places a whole prefix; false when some vertex repeats, is not adjacent, or breaks a filter.
    fn start(&mut self, prefix: &[usize]) -> bool {
        for (i, &v) in prefix.iter().enumerate() {
            if self.visited[v] || (i > 0 && !self.adj[prefix[i - 1]].contains(&v)) {
                return false;
            }
            if !self.push(v) {
                return false;
            }
        }
        !prefix.is_empty() && self.feasible()
    }
}

/// Calls `visit` once per undirected Hamilton path; returns the number of paths.
pub fn enumerate_hamilton_paths(adj: &[Vec<usize>], mut visit: impl FnMut(&[usize])) -> u64 {
    let stop = AtomicBool::new(false);
    let mut count = 0;
    if adj.len() == 1 {
        visit(&[0]);
        return 1;
    }
    for s in 0..adj.len() {
        let mut w = Walker::new(adj, None, &stop, None);
        if w.start(&[s]) {
            w.run(&mut |p| {
                count += 1;
                visit(p);
            });
        }
    }
    count
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub require_holt_klee: bool,
    /// Prune partial paths whose in-degree histogram already exceeds the h-vector.
    pub prune_h: bool,
    pub jobs: usize,
    pub prefix_depth: usize,
    pub budget: Option<Duration>,
    /// Witness lists keep only the lexicographically smallest paths.
    pub max_witnesses: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            require_holt_klee: true,
            prune_h: true,
            jobs: 0,
            prefix_depth: 4,
            budget: None,
            max_witnesses: 100,
        }
    }
}

/// Resumable search state.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Checkpoint {
    pub prefix_depth: usize,
    pub completed_prefixes: Vec<Vec<usize>>,
    /// Hamilton AOF witnesses (smallest first, truncated).
    pub witnesses: Vec<Vec<usize>>,
    #[serde(default)]
    pub holt_klee_witnesses: Vec<Vec<usize>>,
    #[serde(default)]
    pub paths_examined: u64,
    #[serde(default)]
    pub aof_count: u64,
    #[serde(default)]
    pub holt_klee_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchOutcome {
    pub polytope: String,
    /// Complete Hamilton paths reached by the search (after h-vector pruning when enabled).
    pub hamilton_paths_examined: u64,
    pub aof_count: u64,
    pub holt_klee_count: Option<u64>,
    pub aof_witnesses: Vec<Vec<usize>>,
    pub holt_klee_witnesses: Vec<Vec<usize>>,
    pub exhausted: bool,
}

#[derive(Default)]
struct Tally {
    examined: u64,
    aof: u64,
    hk: u64,
    aof_w: Vec<Vec<usize>>,
    hk_w: Vec<Vec<usize>>,
}

fn keep_smallest(list: &mut Vec<Vec<usize>>, cap: usize) {
    list.sort();
    list.dedup();
    list.truncate(cap);
}

/// Valid prefixes of length `depth` in lexicographic order.
fn prefixes(adj: &[Vec<usize>], h: Option<&[i64]>, depth: usize) -> Vec<Vec<usize>> {
    let stop = AtomicBool::new(false);
    let mut out = Vec::new();
    fn grow(w: &mut Walker, depth: usize, out: &mut Vec<Vec<usize>>) {
        if w.path.len() == depth || w.path.len() == w.adj.len() {
            out.push(w.path.clone());
            return;
        }
        let head = *w.path.last().unwrap();
        let mut next = w.adj[head].clone();
        next.sort_unstable();
        for v in next {
            if w.visited[v] {
                continue;
            }
            if w.push(v) && w.feasible() {
                grow(w, depth, out);
            }
            w.pop();
        }
    }
    for s in 0..adj.len() {
        let mut w = Walker::new(adj, h, &stop, None);
        if w.start(&[s]) {
            grow(&mut w, depth.max(1), &mut out);
        }
    }
    out
}

/// Searches all Hamilton paths of `p` for AOF (and Holt-Klee) orientations.
pub fn search_hamilton_aof(
    p: &CombinatorialPolytope,
    name: &str,
    opts: &SearchOptions,
    resume: Option<Checkpoint>,
) -> (SearchOutcome, Checkpoint) {
    let faces = FaceTable::new(p).expect("search needs a simple polytope");
    let adj = p.adjacency();
    let h: Option<&[i64]> = opts.prune_h.then_some(faces.h.as_slice());
    let depth = resume.as_ref().map_or(opts.prefix_depth, |c| c.prefix_depth);
    let mut ck = resume.unwrap_or(Checkpoint { prefix_depth: depth, ..Default::default() });
    let done: std::collections::HashSet<Vec<usize>> = ck.completed_prefixes.iter().cloned().collect();
    let todo: Vec<Vec<usize>> = prefixes(adj, h, depth).into_iter().filter(|x| !done.contains(x)).collect();
    info!("{name}: {} prefixes of depth {depth} to search, {} already done", todo.len(), done.len());

    let stop = AtomicBool::new(false);
    let deadline = opts.budget.map(|b| Instant::now() + b);
    let finished: Mutex<Vec<(Vec<usize>, Tally)>> = Mutex::new(Vec::new());
    let work = |prefix: &Vec<usize>| {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            stop.store(true, Ordering::Relaxed);
        }
        if stop.load(Ordering::Relaxed) {
            return;
        }
        let mut walker = Walker::new(adj, h, &stop, deadline);
        let mut t = Tally::default();
        let complete = if !walker.start(prefix) {
            true
        } else if prefix.len() == adj.len() {
            if prefix[0] < prefix[prefix.len() - 1] {
                record(p, &faces, opts, prefix, &mut t);
            }
            true
        } else {
            walker.run(&mut |path| record(p, &faces, opts, path, &mut t))
        };
        if complete {
            keep_smallest(&mut t.aof_w, opts.max_witnesses);
            keep_smallest(&mut t.hk_w, opts.max_witnesses);
            finished.lock().unwrap().push((prefix.clone(), t));
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().expect("thread pool");
    pool.install(|| todo.par_iter().for_each(work));

    let mut results = finished.into_inner().unwrap();
    results.sort_by(|a, b| a.0.cmp(&b.0));
    for (prefix, t) in results {
        ck.completed_prefixes.push(prefix);
        ck.paths_examined += t.examined;
        ck.aof_count += t.aof;
        ck.holt_klee_count += t.hk;
        ck.witnesses.extend(t.aof_w);
        ck.holt_klee_witnesses.extend(t.hk_w);
    }
    ck.completed_prefixes.sort();
    keep_smallest(&mut ck.witnesses, opts.max_witnesses);
    keep_smallest(&mut ck.holt_klee_witnesses, opts.max_witnesses);
    let exhausted = ck.completed_prefixes.len() == done.len() + todo.len();
    debug!("{name}: exhausted = {exhausted}");
    let outcome = SearchOutcome {
        polytope: name.to_string(),
        hamilton_paths_examined: ck.paths_examined,
        aof_count: ck.aof_count,
        holt_klee_count: opts.require_holt_klee.then_some(ck.holt_klee_count),
        aof_witnesses: ck.witnesses.clone(),
        holt_klee_witnesses: if opts.require_holt_klee { ck.holt_klee_witnesses.clone() } else { Vec::new() },
        exhausted,
    };
    (outcome, ck)
}

fn record(p: &CombinatorialPolytope, faces: &FaceTable, opts: &SearchOptions, path: &[usize], t: &mut Tally) {
    t.examined += 1;
    let hp = HamiltonPath { order: path.to_vec() };
    let o = orientation_from_path(&hp, p);
    if !check_aof_with(&o, p, faces).is_aof() {
        return;
    }
    t.aof += 1;
    push_bounded(&mut t.aof_w, path, opts.max_witnesses);
    if opts.require_holt_klee && check_holt_klee_with(&o, p, faces).unwrap_or(false) {
        t.hk += 1;
        push_bounded(&mut t.hk_w, path, opts.max_witnesses);
    }
}

fn push_bounded(list: &mut Vec<Vec<usize>>, path: &[usize], cap: usize) {
    list.push(path.to_vec());
    if list.len() > cap.saturating_mul(4).max(4) {
        keep_smallest(list, cap);
    }
}
