use std::collections::BTreeSet;

use monopath_core::combinatorics::{generate_dual_cyclic, generate_qtilde, CombinatorialPolytope};
use monopath_core::hamilton::{build_path, check_aof, check_holt_klee, orientation_from_path, HamiltonPath};
use monopath_core::search::{enumerate_hamilton_paths, search_hamilton_aof, SearchOptions};

/// Plain backtracking over vertex sequences, no pruning; canonical direction first < last.
fn naive_paths(adj: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    fn go(adj: &[Vec<usize>], path: &mut Vec<usize>, used: &mut [bool], out: &mut BTreeSet<Vec<usize>>) {
        if path.len() == adj.len() {
            if path[0] < path[path.len() - 1] {
                out.insert(path.clone());
            }
            return;
        }
        let head = *path.last().unwrap();
        for v in 0..adj.len() {
            if !used[v] && adj[head].contains(&v) {
                used[v] = true;
                path.push(v);
                go(adj, path, used, out);
                path.pop();
                used[v] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..adj.len() {
        let mut used = vec![false; adj.len()];
        used[s] = true;
        go(adj, &mut vec![s], &mut used, &mut out);
    }
    out
}

fn aof_paths_naive(p: &CombinatorialPolytope) -> BTreeSet<Vec<usize>> {
    naive_paths(p.adjacency())
        .into_iter()
        .filter(|path| {
            let o = orientation_from_path(&HamiltonPath { order: path.clone() }, p);
            check_aof(&o, p).unwrap().is_aof()
        })
        .collect()
}

fn all_witnesses() -> SearchOptions {
    SearchOptions { max_witnesses: usize::MAX, ..Default::default() }
}

#[test]
fn enumeration_matches_naive_count() {
    for p in [
        generate_qtilde(4, 0).unwrap(),
        generate_qtilde(4, 1).unwrap(),
        generate_qtilde(4, 2).unwrap(),
        generate_dual_cyclic(4, 6).unwrap(),
    ] {
        let mut seen = BTreeSet::new();
        let count = enumerate_hamilton_paths(p.adjacency(), |path| {
            seen.insert(path.to_vec());
        });
        let naive = naive_paths(p.adjacency());
        assert_eq!(count as usize, naive.len());
        assert_eq!(seen, naive);
    }
}

#[test]
fn search_is_complete_on_small_instances() {
    for m in 0..=2 {
        let q = generate_qtilde(4, m).unwrap();
        let (out, _) = search_hamilton_aof(&q, "q", &all_witnesses(), None);
        let expected: Vec<Vec<usize>> = aof_paths_naive(&q).into_iter().collect();
        assert!(out.exhausted);
        assert_eq!(out.aof_witnesses, expected, "m={m}");
        assert_eq!(out.aof_count as usize, expected.len());
    }
}

#[test]
fn witnesses_reverify_and_nest() {
    let p = generate_dual_cyclic(4, 7).unwrap();
    let (out, _) = search_hamilton_aof(&p, "C4(7)", &all_witnesses(), None);
    let aof: BTreeSet<_> = out.aof_witnesses.iter().collect();
    assert!(!out.holt_klee_witnesses.is_empty());
    for w in &out.holt_klee_witnesses {
        assert!(aof.contains(w));
        let o = orientation_from_path(&HamiltonPath { order: w.clone() }, &p);
        assert!(check_aof(&o, &p).unwrap().is_aof());
        assert!(check_holt_klee(&o, &p).unwrap());
    }
}

#[test]
fn pruning_does_not_change_witnesses() {
    let p = generate_dual_cyclic(4, 7).unwrap();
    let pruned = search_hamilton_aof(&p, "C4(7)", &all_witnesses(), None).0;
    let plain = search_hamilton_aof(&p, "C4(7)", &SearchOptions { prune_h: false, ..all_witnesses() }, None).0;
    assert_eq!(pruned.aof_witnesses, plain.aof_witnesses);
    assert_eq!(pruned.holt_klee_witnesses, plain.holt_klee_witnesses);
    assert!(plain.hamilton_paths_examined > pruned.hamilton_paths_examined);
}

#[test]
fn result_independent_of_workers_and_prefix_depth() {
    let q = generate_qtilde(4, 3).unwrap();
    let base = search_hamilton_aof(&q, "q3", &SearchOptions { jobs: 1, prefix_depth: 1, ..Default::default() }, None).0;
    for (jobs, depth) in [(2, 3), (4, 5), (8, 2)] {
        let other = search_hamilton_aof(&q, "q3", &SearchOptions { jobs, prefix_depth: depth, ..Default::default() }, None).0;
        assert_eq!(base, other, "jobs={jobs} depth={depth}");
    }
    assert!(base.aof_witnesses.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn constructed_path_found_up_to_m4() {
    for m in 0..=4 {
        let q = generate_qtilde(4, m).unwrap();
        let (out, _) = search_hamilton_aof(&q, "q", &all_witnesses(), None);
        let mut ours = build_path(m).unwrap().order;
        if ours[0] > ours[ours.len() - 1] {
            ours.reverse();
        }
        assert!(out.holt_klee_witnesses.contains(&ours), "m={m}");
    }
}

#[test]
fn checkpoint_round_trips_through_json() {
    let p = generate_dual_cyclic(4, 7).unwrap();
    let opts = SearchOptions { budget: Some(std::time::Duration::ZERO), ..Default::default() };
    let (_, ck) = search_hamilton_aof(&p, "C4(7)", &opts, None);
    let text = serde_json::to_string(&ck).unwrap();
    assert!(text.contains("\"prefixDepth\"") && text.contains("\"completedPrefixes\"") && text.contains("\"witnesses\""));
    let back = serde_json::from_str(&text).unwrap();
    let resumed = search_hamilton_aof(&p, "C4(7)", &SearchOptions::default(), Some(back)).0;
    let fresh = search_hamilton_aof(&p, "C4(7)", &SearchOptions::default(), None).0;
    assert_eq!(resumed, fresh);
}
