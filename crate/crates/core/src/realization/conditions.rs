//! The positioning conditions (M1)–(M6) as exact predicates.

use serde::{Deserialize, Serialize};

use super::{RealizationError, RealizedPolytope, Stage};
use crate::hamilton::build_path_labels;
use crate::geometry::{int, rank, Rational, Vec4};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MReport {
    /// `x4` strictly increasing along the path.
    pub m1: bool,
    /// `F^2` lies in `{x1 = 0}`.
    pub m2: bool,
    /// `F^3` spans `{x1 = 0}` and the polytope lies in `{x1 ≥ 0}`.
    pub m3: bool,
    /// `x2` vanishes at the source, is negative on the rest of `F^2`, and `β_2 < (v_1)_2`.
    pub m4: bool,
    /// `π(F^2)` is two-dimensional.
    pub m5: bool,
    /// `{x3 = 0}` separates odd tips from even tips, and on `F^3` its lowest point lies on `conv{α, β}`.
    pub m6: bool,
    /// That lowest point has the same height as `τ`.
    pub alpha_next_at_tau: bool,
}

impl MReport {
    pub fn all(&self) -> bool {
        self.m1 && self.m2 && self.m3 && self.m4 && self.m5 && self.m6 && self.alpha_next_at_tau
    }

    pub fn first_failure(&self) -> String {
        let named = [
            ("M1", self.m1),
            ("M2", self.m2),
            ("M3", self.m3),
            ("M4", self.m4),
            ("M5", self.m5),
            ("M6", self.m6),
            ("alpha_next_at_tau", self.alpha_next_at_tau),
        ];
        named.iter().find(|(_, ok)| !ok).map_or("none".into(), |(n, _)| n.to_string())
    }
}

/// Height where edge `pq` meets `{x3 = 0}`, if it crosses strictly.
fn crossing_height(p: &Vec4, q: &Vec4) -> Option<Rational> {
    let zero = int(0);
    if (p[2] < zero) == (q[2] < zero) || p[2] == zero || q[2] == zero {
        return None;
    }
    let mu = &p[2] / (&p[2] - &q[2]);
    Some(p.lerp(q, &mu)[3].clone())
}

/// Evaluates (M1)–(M6) on a realized polytope.
pub fn check_conditions_m(q: &RealizedPolytope) -> Result<MReport, RealizationError> {
    let stage = Stage::new(q.m, &build_path_labels(q.m)?)?;
    Ok(check_stage(&stage, &q.coords))
}

pub(crate) fn check_stage(stage: &Stage, x: &[Vec4]) -> MReport {
    let zero = int(0);
    let nv = stage.comb.len();
    let f2 = stage.f2();
    let in_f3 = |v: usize| stage.on_facet(v, stage.n);

    let m1 = stage.path_increasing(x);
    let m2 = f2.iter().all(|&v| x[v][0] == zero);
    let m3 = (0..nv).all(|v| if in_f3(v) { x[v][0] == zero } else { x[v][0] > zero });
    let m4 = x[stage.alpha][1] == zero
        && f2.iter().filter(|&&v| v != stage.alpha).all(|&v| x[v][1] < zero)
        && x[stage.beta][1] < x[stage.v1][1];
    let pts: Vec<Vec<Rational>> = f2
        .iter()
        .map(|&v| vec![&x[v][2] - &x[f2[0]][2], &x[v][3] - &x[f2[0]][3]])
        .collect();
    let m5 = rank(&pts) == 2;

    let separated = (0..nv).all(|v| if stage.is_odd(v) { x[v][2] < zero } else { x[v][2] > zero });
    let ab = crossing_height(&x[stage.alpha], &x[stage.beta]);
    let lowest = ab.as_ref().is_some_and(|h0| {
        stage.comb.edges.iter().all(|&(u, w)| {
            if !(in_f3(u) && in_f3(w)) || (u, w) == (stage.alpha.min(stage.beta), stage.alpha.max(stage.beta)) {
                return true;
            }
            crossing_height(&x[u], &x[w]).is_none_or(|h| h > *h0)
        })
    });
    let m6 = separated && lowest;
    let alpha_next_at_tau = ab.is_some_and(|h| h == x[stage.tau][3]);
    MReport { m1, m2, m3, m4, m5, m6, alpha_next_at_tau }
}
