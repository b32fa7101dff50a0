use monopath_core::combinatorics::{
    check_isomorphic, generate_dual_cyclic, generate_qtilde, h_vector, permute_label, CombinatorialPolytope,
};
use proptest::prelude::*;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Vertex count of a simple polar-to-neighborly d-polytope with n facets (d even).
fn ubt_count(d: usize, n: usize) -> usize {
    binom(n - d / 2, d / 2) + binom(n - 1 - d / 2, d / 2 - 1)
}

#[test]
fn vertex_counts_match_closed_form() {
    for d in [4, 6, 8] {
        for m in 0..=8 {
            let q = generate_qtilde(d, m).unwrap();
            assert_eq!(q.len(), ubt_count(d, m + d + 1), "d={d} m={m}");
            assert!(q.check_simple().is_ok());
        }
    }
    assert_eq!(generate_qtilde(6, 2).unwrap().len(), 30);
}

#[test]
fn dual_cyclic_counts() {
    for n in 5..=12 {
        let p = generate_dual_cyclic(4, n).unwrap();
        assert_eq!(p.len(), n * (n - 3) / 2);
        assert!(p.check_simple().is_ok());
    }
}

#[test]
fn h_vectors_are_neighborly() {
    for m in 0..=6 {
        let q = generate_qtilde(4, m).unwrap();
        let want = vec![1, m as i64 + 1, binom(m + 2, 2) as i64, m as i64 + 1, 1];
        assert_eq!(h_vector(&q).unwrap(), want);
        assert_eq!(h_vector(&generate_dual_cyclic(4, m + 5).unwrap()).unwrap(), want);
    }
}

#[test]
fn rejects_bad_parameters() {
    assert!(generate_qtilde(5, 1).is_err());
    assert!(generate_qtilde(2, 1).is_err());
    assert!(generate_dual_cyclic(4, 4).is_err());
}

#[test]
fn isomorphic_to_dual_cyclic_only_for_small_m() {
    for m in 0..=5 {
        let q = generate_qtilde(4, m).unwrap();
        let c = generate_dual_cyclic(4, m + 5).unwrap();
        let witness = check_isomorphic(&q, &c);
        assert_eq!(witness.is_some(), m <= 2, "m={m}");
        if let Some(sigma) = witness {
            let mut mapped: Vec<_> = q.vertices.iter().map(|v| permute_label(v, &sigma)).collect();
            mapped.sort();
            assert_eq!(mapped, c.vertices);
        }
    }
}

fn relabeled(p: &CombinatorialPolytope, sigma: &[u32]) -> CombinatorialPolytope {
    let labels = p.vertices.iter().map(|v| permute_label(v, sigma)).collect();
    CombinatorialPolytope::from_labels(p.d, p.n, labels).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn isomorphism_survives_relabeling(m in 0usize..5, seed in any::<u64>()) {
        let q = generate_qtilde(4, m).unwrap();
        let n = q.n as u32;
        let mut sigma: Vec<u32> = (1..=n).collect();
        let mut s = seed;
        for i in (1..sigma.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            sigma.swap(i, (s >> 33) as usize % (i + 1));
        }
        let r = relabeled(&q, &sigma);
        let w = check_isomorphic(&q, &r);
        prop_assert!(w.is_some());
        prop_assert_eq!(relabeled(&q, &w.unwrap()).vertices, r.vertices);
    }

    #[test]
    fn graph_is_regular_and_connected(m in 0usize..9) {
        let q = generate_qtilde(4, m).unwrap();
        prop_assert!(q.is_connected());
        prop_assert!((0..q.len()).all(|v| q.neighbors(v).len() == 4));
        prop_assert_eq!(q.edges.len(), 2 * q.len());
    }
}
