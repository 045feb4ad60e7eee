//! Lower bounds on the optimal broadcast time and closed-form predictions of
//! the simple algorithm's completion time.
//!
//! The predictors never build a scheme. They are kept independent of the
//! scheduler so the two can be checked against each other.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::topology::{KCycleGraph, Originator, TopologyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("a single-cycle graph has no cycle other than the originator's")]
    NoValidJ,
    #[error("distance must be at least 1 for a cycle originator")]
    ZeroDistance,
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// `k + 1`: the center calls each cycle at least once and the last one
    /// needs a further round.
    pub lb_degree: u32,
    /// Best per-cycle bound.
    pub lb_cycle: u32,
    /// Cycle index achieving `lb_cycle`.
    pub witness_j: usize,
    pub combined: u32,
}

fn ceil_half(x: usize) -> u32 {
    x.div_ceil(2) as u32
}

fn best<I: Iterator<Item = (usize, u32)>>(terms: I) -> (usize, u32) {
    terms.fold((0, 0), |acc, (j, v)| if v > acc.1 { (j, v) } else { acc })
}

/// Bounds for the center as originator: `k + 1` and
/// `ceil((l_j + 2j - 1) / 2)` for every cycle `j`.
pub fn lb_center(g: &KCycleGraph) -> BoundReport {
    let lb_degree = g.k() as u32 + 1;
    let (witness_j, lb_cycle) = best(
        g.lengths()
            .iter()
            .enumerate()
            .map(|(i, &l)| (i + 1, ceil_half(l + 2 * (i + 1) - 1))),
    );
    BoundReport {
        lb_degree,
        lb_cycle,
        witness_j,
        combined: lb_degree.max(lb_cycle),
    }
}

/// Per-cycle terms `d + ceil((l_j + 2r - 1) / 2)` for every `j != m`, where
/// `r` is the rank of `C_j` among the cycles other than `C_m` (`r = j` before
/// `m`, `r = j - 1` after it). The center is informed no earlier than round
/// `d`, so the `r` longest other cycles cannot all be entered before round
/// `d + r`. Using `j` in place of `r` overshoots the optimum, e.g. on `[5,5]`
/// from `1:1`, where 4 rounds suffice.
fn cycle_terms(g: &KCycleGraph, m: usize, d: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
    g.lengths()
        .iter()
        .enumerate()
        .map(|(i, &l)| (i + 1, l))
        .filter(move |&(j, _)| j != m)
        .map(move |(j, l)| {
            let rank = if j < m { j } else { j - 1 };
            (j, d as u32 + ceil_half(l + 2 * rank - 1))
        })
}

/// Bounds for an originator at distance `d` on cycle `m`: the per-cycle
/// terms over `j != m`, combined with `k + 1` and the center's bound.
pub fn lb_on_cycle(g: &KCycleGraph, m: usize, d: usize) -> Result<BoundReport, BoundsError> {
    if d == 0 {
        return Err(BoundsError::ZeroDistance);
    }
    if g.k() == 1 {
        return Err(BoundsError::NoValidJ);
    }
    let center = lb_center(g);
    let (witness_j, lb_cycle) = best(cycle_terms(g, m, d));
    Ok(BoundReport {
        lb_degree: center.lb_degree,
        lb_cycle,
        witness_j,
        combined: center.lb_degree.max(center.combined).max(lb_cycle),
    })
}

/// Only the terms that follow from the cycle-originator lemma and `k + 1`,
/// without borrowing the center's bound. Falls back to `k + 1` alone for a
/// single cycle.
pub fn lb_on_cycle_own(g: &KCycleGraph, m: usize, d: usize) -> u32 {
    cycle_terms(g, m, d).map(|(_, v)| v).fold(g.k() as u32 + 1, u32::max)
}

/// The combined lower bound for any originator. A single cycle has no
/// cycle-originator term, so the center's bound stands in.
pub fn lower_bound(g: &KCycleGraph, o: Originator) -> Result<BoundReport, BoundsError> {
    g.check_originator(o)?;
    match o {
        Originator::Center => Ok(lb_center(g)),
        Originator::OnCycle { cycle, .. } => {
            let d = g.originator_distance(o)?;
            match lb_on_cycle(g, cycle, d) {
                Err(BoundsError::NoValidJ) => Ok(lb_center(g)),
                other => other,
            }
        }
    }
}

/// Completion time of the simple algorithm from the center:
/// `max_i min(i + l_i - 1, ceil((2i - 2 + k + l_i) / 2))`.
pub fn predicted_time_center(g: &KCycleGraph) -> u32 {
    let k = g.k();
    g.lengths()
        .iter()
        .enumerate()
        .map(|(idx, &l)| {
            let i = idx + 1;
            ((i + l - 1) as u32).min(ceil_half(2 * i - 2 + k + l))
        })
        .max()
        .unwrap_or(0)
}

/// Completion time of the simple algorithm from a vertex at distance `d` on
/// cycle `m`.
///
/// A cycle `i < m` is first called at `d + i`, a cycle `i > m` one round
/// earlier at `d + i - 1`, and both get their second call at `d + k - 1 + i`.
/// The originator's own cycle has up to three fronts and is traced vertex by
/// vertex.
pub fn predicted_time_on_cycle(g: &KCycleGraph, m: usize, d: usize) -> u32 {
    let k = g.k();
    let others = g
        .lengths()
        .iter()
        .enumerate()
        .filter(|(idx, _)| idx + 1 != m)
        .map(|(idx, &l)| {
            let i = idx + 1;
            if i < m {
                ((d + i + l - 1) as u32).min(ceil_half(2 * i + k + 2 * d - 3 + l))
            } else {
                ((d + i + l - 2) as u32).min(ceil_half(2 * i + k + 2 * d - 4 + l))
            }
        })
        .max()
        .unwrap_or(0);
    let own = origin_cycle_completion(g.len_of(m), d, (d + k - 1 + m) as u32);
    others.max(own).max(d as u32)
}

/// Completion of the originator's cycle of `l` vertices when the originator
/// sits at distance `d` from the center, calls toward the center in round 1
/// and away in round 2, and the center calls the far arm end at round
/// `center_call` if it is still uninformed.
fn origin_cycle_completion(l: usize, d: usize, center_call: u32) -> u32 {
    // near side: d - 1 cycle vertices informed in rounds 1..d-1
    let near = d.saturating_sub(1) as u32;
    // far side: l - d vertices; the j-th from the originator is reached by
    // the originator's second front at round j + 1, or by the center's front
    // entering at the far arm end
    let far_len = l - d;
    let far_end_front = far_len as u32 + 1;
    let center_useful = center_call <= far_end_front;
    let far = (1..=far_len)
        .map(|j| {
            let by_origin = j as u32 + 1;
            if center_useful {
                by_origin.min(center_call + (far_len - j) as u32)
            } else {
                by_origin
            }
        })
        .max()
        .unwrap_or(0);
    near.max(far)
}

/// Predicted completion for any originator.
pub fn predicted_time(g: &KCycleGraph, o: Originator) -> Result<u32, TopologyError> {
    g.check_originator(o)?;
    Ok(match o {
        Originator::Center => predicted_time_center(g),
        Originator::OnCycle { cycle, .. } => predicted_time_on_cycle(g, cycle, g.originator_distance(o)?),
    })
}
