use std::collections::BTreeMap;

use monopath_core::combinatorics::{generate_qtilde, CombinatorialPolytope};
use monopath_core::hamilton::{build_path, check_aof, orientation_from_path, Orientation};
use monopath_core::realization::{realize, RealizeOptions};
use monopath_core::Rational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All nonempty faces of dimension >= 1, found by intersecting facet sets directly.
fn faces_oracle(p: &CombinatorialPolytope) -> Vec<Vec<usize>> {
    let mut faces: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    for mask in 1u64..(1 << p.n) {
        let k = mask.count_ones() as usize;
        if k >= p.d {
            continue;
        }
        let verts: Vec<usize> = (0..p.len())
            .filter(|&v| p.vertices[v].0.iter().map(|&f| 1u64 << (f - 1)).fold(0, |a, b| a | b) & mask == mask)
            .collect();
        if verts.len() > 1 {
            faces.insert(verts, ());
        }
    }
    let all: Vec<usize> = (0..p.len()).collect();
    faces.insert(all, ());
    faces.into_keys().collect()
}

fn unique_sinks_oracle(p: &CombinatorialPolytope, o: &Orientation, faces: &[Vec<usize>]) -> bool {
    faces.iter().all(|face| {
        let sinks = face
            .iter()
            .filter(|&&v| !o.arcs.iter().any(|&(a, b)| a == v && face.contains(&b)))
            .count();
        sinks == 1
    }) && !p.is_empty()
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn built_paths_are_aof_for_all_m() {
    for m in 0..=10 {
        let q = generate_qtilde(4, m).unwrap();
        let path = build_path(m).unwrap();
        let o = orientation_from_path(&path, &q);
        let r = check_aof(&o, &q).unwrap();
        let want = [1, m + 1, binom(m as i64 + 2, 2) as usize, m + 1, 1];
        assert!(r.acyclic && r.unique_sink_per_face && r.histogram_matches_h, "m={m}");
        assert_eq!(r.indegree_histogram, want, "m={m}");
    }
}

#[test]
fn face_oracle_agrees_on_built_paths() {
    for m in 0..=3 {
        let q = generate_qtilde(4, m).unwrap();
        let faces = faces_oracle(&q);
        let o = orientation_from_path(&build_path(m).unwrap(), &q);
        assert!(unique_sinks_oracle(&q, &o, &faces), "m={m}");
    }
}

/// Random vertex orders plus generic linear objectives on a realization: both kinds of
/// acyclic orientation, the second always AOF.
#[test]
fn histogram_and_face_criteria_agree_on_random_orientations() {
    let q = generate_qtilde(4, 2).unwrap();
    let faces = faces_oracle(&q);
    let real = realize(2, &RealizeOptions { certify: false, ..Default::default() }).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut aof, mut not_aof) = (0, 0);
    for trial in 0..200 {
        let rank: Vec<usize> = if trial % 2 == 0 {
            let mut r: Vec<usize> = (0..q.len()).collect();
            r.shuffle(&mut rng);
            r
        } else {
            let c: Vec<Rational> = (0..4).map(|_| Rational::from_integer(rng.gen_range(-1000i64..=1000).into())).collect();
            let vals: Vec<Rational> = real.coords.iter().map(|x| (0..4).map(|i| &c[i] * &x[i]).sum()).collect();
            let mut idx: Vec<usize> = (0..q.len()).collect();
            idx.sort_by(|&a, &b| vals[a].cmp(&vals[b]));
            if idx.windows(2).any(|w| vals[w[0]] == vals[w[1]]) {
                continue;
            }
            let mut r = vec![0; q.len()];
            for (k, &v) in idx.iter().enumerate() {
                r[v] = k;
            }
            r
        };
        let o = Orientation::from_ranks(&q, &rank);
        let rep = check_aof(&o, &q).unwrap();
        assert!(rep.acyclic);
        assert_eq!(rep.histogram_matches_h, rep.unique_sink_per_face, "trial {trial}");
        assert_eq!(rep.unique_sink_per_face, unique_sinks_oracle(&q, &o, &faces), "trial {trial}");
        if rep.is_aof() {
            aof += 1;
        } else {
            not_aof += 1;
        }
    }
    assert!(aof > 50 && not_aof > 50, "aof={aof} not_aof={not_aof}");
}

#[test]
fn m1_path_matches_listing() {
    let q = generate_qtilde(4, 1).unwrap();
    let listed: Vec<Vec<u32>> = vec![
        vec![3, 4, 5, 6],
        vec![2, 3, 4, 6],
        vec![1, 2, 3, 6],
        vec![1, 2, 3, 4],
        vec![1, 3, 4, 5],
        vec![1, 2, 4, 5],
        vec![2, 4, 5, 6],
        vec![1, 2, 5, 6],
        vec![1, 3, 5, 6],
    ];
    let got: Vec<Vec<u32>> = build_path(1).unwrap().labels(&q).iter().map(|l| l.0.clone()).collect();
    assert_eq!(got, listed);
}
