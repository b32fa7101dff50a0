//! Coordinate size control between inductive steps.
//!
//! The facet planes are rounded to dyadic rationals of increasing precision
//! and the vertices recomputed as intersections of their four planes. A
//! rounding is accepted only when the new arrangement still has every
//! labelled vertex strictly inside all other facets and the path is still
//! strictly increasing in `x4`. Since every vertex then keeps its `d`
//! labelled neighbours, the polytope keeps its combinatorial type.

use num_traits::{Signed, Zero};

use super::{facet_plane, Stage};
use crate::geometry::{round_dyadic, solve4, Hyperplane, Rational, Vec4};

const MAX_PRECISION: u32 = 4096;

/// Returns snapped coordinates and the precision `k` (multiples of `2^-k`) that worked.
pub(crate) fn snap_facets(stage: &Stage, coords: &[Vec4]) -> Option<(Vec<Vec4>, u32)> {
    let planes: Vec<Hyperplane> =
        (1..=stage.n).map(|f| facet_plane(&stage.comb, coords, f)).collect::<Result<_, _>>().ok()?;
    let scaled: Vec<Hyperplane> = planes
        .iter()
        .map(|h| {
            let mx = h.normal.0.iter().chain([&h.offset]).map(|x| x.abs()).max().unwrap();
            Hyperplane { normal: h.normal.scale(&mx.recip()), offset: &h.offset / &mx }
        })
        .collect();
    let mut k = 8;
    while k <= MAX_PRECISION {
        if let Some(c) = try_precision(stage, &scaled, k) {
            return Some((c, k));
        }
        k += 8;
    }
    None
}

fn try_precision(stage: &Stage, scaled: &[Hyperplane], k: u32) -> Option<Vec<Vec4>> {
    let rounded: Vec<Hyperplane> = scaled
        .iter()
        .map(|h| Hyperplane {
            normal: Vec4(std::array::from_fn(|i| round_dyadic(&h.normal[i], k))),
            offset: round_dyadic(&h.offset, k),
        })
        .collect();
    if rounded.iter().any(|h| h.normal.is_zero()) {
        return None;
    }
    let mut out = Vec::with_capacity(stage.comb.len());
    for lab in &stage.comb.vertices {
        let rows: [Vec4; 4] = std::array::from_fn(|i| rounded[lab.0[i] as usize - 1].normal.clone());
        let rhs: [Rational; 4] = std::array::from_fn(|i| rounded[lab.0[i] as usize - 1].offset.clone());
        let x = solve4(&rows, &rhs).ok()?;
        for (f, h) in rounded.iter().enumerate() {
            if !lab.contains(f as u32 + 1) && !h.eval(&x).is_positive() {
                return None;
            }
        }
        out.push(x);
    }
    if !stage.path_increasing(&out) {
        return None;
    }
    debug_assert!(out.iter().zip(&stage.comb.vertices).all(|(x, l)| l
        .0
        .iter()
        .all(|&f| rounded[f as usize - 1].eval(x).is_zero())));
    Some(out)
}
