//! Scheme construction with forced forwarding.
//!
//! Every informed degree-2 vertex calls its uninformed neighbour in the next
//! round. The only genuine choices are the originator's call order and the
//! center's calls, which a [`CenterPolicy`] decides round by round. Runs in
//! O(n + rounds) plus whatever the policy spends.

use thiserror::Error;

use crate::broadcast::{BroadcastScheme, Call};
use crate::topology::{Arm, KCycleGraph, Originator, VertexId};

const UNINFORMED: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("center policy stalled with {remaining} vertices uninformed after round {round}")]
    Stalled { round: u32, remaining: usize },
}

/// Which neighbour a cycle originator calls in round 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OriginatorOrder {
    /// Along the shorter path to the center first. Ties go toward position 1.
    TowardCenterFirst,
    AwayFromCenterFirst,
}

struct State<'g> {
    g: &'g KCycleGraph,
    /// 1-based owning cycle per dense index, 0 for the center.
    owner: Vec<usize>,
    times: Vec<u32>,
    remaining: Vec<usize>,
    informed: usize,
}

impl<'g> State<'g> {
    fn new(g: &'g KCycleGraph) -> Self {
        let mut owner = vec![0usize; g.n()];
        for c in 1..=g.k() {
            let start = g.index_of(VertexId::on(c, 1)).unwrap();
            owner[start..start + g.len_of(c)].fill(c);
        }
        State {
            g,
            owner,
            times: vec![UNINFORMED; g.n()],
            remaining: g.lengths().to_vec(),
            informed: 0,
        }
    }

    fn start(&self, c: usize) -> usize {
        // position 1 of cycle c; cheap because offsets are stored in the graph
        self.g.index_of(VertexId::on(c, 1)).unwrap()
    }

    fn vertex(&self, i: usize) -> VertexId {
        match self.owner[i] {
            0 => VertexId::Center,
            c => VertexId::on(c, i - self.start(c) + 1),
        }
    }

    fn neighbours(&self, i: usize) -> [usize; 2] {
        let c = self.owner[i];
        let start = self.start(c);
        let l = self.g.len_of(c);
        let prev = if i == start { 0 } else { i - 1 };
        let next = if i == start + l - 1 { 0 } else { i + 1 };
        [prev, next]
    }

    fn mark(&mut self, i: usize, round: u32) {
        self.times[i] = round;
        self.informed += 1;
        if self.owner[i] != 0 {
            self.remaining[self.owner[i] - 1] -= 1;
        }
    }
}

/// Read-only view of the broadcast state at the start of a round.
pub struct RoundView<'a> {
    g: &'a KCycleGraph,
    times: &'a [u32],
    remaining: &'a [usize],
    round: u32,
}

impl RoundView<'_> {
    pub fn round(&self) -> u32 {
        self.round
    }

    pub fn graph(&self) -> &KCycleGraph {
        self.g
    }

    pub fn informed(&self, v: VertexId) -> bool {
        let i = self.g.index_of(v).expect("policy asked about a foreign vertex");
        self.times[i] < self.round
    }

    /// Uninformed vertices left on `cycle` (1-based) at the start of the round.
    pub fn remaining(&self, cycle: usize) -> usize {
        self.remaining[cycle - 1]
    }

    pub fn arm_open(&self, cycle: usize, arm: Arm) -> bool {
        !self.informed(self.g.arm_end(cycle, arm))
    }
}

/// Decides the center's call in each round once the center is informed.
pub trait CenterPolicy {
    fn next_call(&mut self, view: &RoundView<'_>) -> Option<VertexId>;

    /// True once the policy will never call again after `round`.
    fn exhausted(&self, round: u32) -> bool;
}

/// Builds the scheme, stopping in the round the last vertex is informed.
///
/// A receiver claimed by the center is not called again by a forwarding
/// vertex in the same round; between two forwarders converging on one vertex
/// the earlier-informed one calls and the other idles.
pub fn build_scheme(
    g: &KCycleGraph,
    o: Originator,
    order: OriginatorOrder,
    policy: &mut dyn CenterPolicy,
) -> Result<BroadcastScheme, EngineError> {
    let mut st = State::new(g);
    let origin = g
        .index_of(o.vertex())
        .expect("originator must be checked by the caller");
    st.mark(origin, 0);

    let origin_calls: Option<[usize; 2]> = match o {
        Originator::Center => None,
        Originator::OnCycle { cycle, pos } => {
            let l = g.len_of(cycle);
            let [prev, next] = st.neighbours(origin);
            let (near, far) = if pos <= l + 1 - pos { (prev, next) } else { (next, prev) };
            Some(match order {
                OriginatorOrder::TowardCenterFirst => [near, far],
                OriginatorOrder::AwayFromCenterFirst => [far, near],
            })
        }
    };

    let mut rounds: Vec<Vec<Call>> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    let mut next_frontier: Vec<usize> = Vec::new();
    let mut round = 0u32;

    while st.informed < g.n() {
        round += 1;
        let mut calls = Vec::new();
        next_frontier.clear();

        if st.times[0] < round {
            let view = RoundView {
                g,
                times: &st.times,
                remaining: &st.remaining,
                round,
            };
            if let Some(target) = policy.next_call(&view) {
                debug_assert!(g.adjacent(VertexId::Center, target), "center cannot call {target}");
                let ti = g.index_of(target).expect("policy returned a foreign vertex");
                if st.times[ti] == UNINFORMED {
                    st.mark(ti, round);
                    calls.push(Call::new(VertexId::Center, target));
                    next_frontier.push(ti);
                }
            }
        }

        if let Some(oc) = origin_calls {
            if round <= 2 {
                let to = oc[round as usize - 1];
                if st.times[to] == UNINFORMED {
                    st.mark(to, round);
                    calls.push(Call::new(st.vertex(origin), st.vertex(to)));
                    next_frontier.push(to);
                }
            }
        }

        for &v in &frontier {
            if v == 0 {
                continue;
            }
            if let Some(&to) = st.neighbours(v).iter().find(|&&w| st.times[w] == UNINFORMED) {
                st.mark(to, round);
                calls.push(Call::new(st.vertex(v), st.vertex(to)));
                next_frontier.push(to);
            }
        }

        let idle = calls.is_empty();
        rounds.push(calls);
        std::mem::swap(&mut frontier, &mut next_frontier);
        if idle && frontier.is_empty() && round >= 2 && policy.exhausted(round) {
            return Err(EngineError::Stalled {
                round,
                remaining: g.n() - st.informed,
            });
        }
    }
    Ok(BroadcastScheme { rounds })
}

/// Fixed per-round center targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanTarget {
    Arm(usize, Arm),
    /// Whichever arm end of the cycle is still uninformed, arm A first.
    OpenArm(usize),
}

/// A center policy replaying a precomputed table indexed by round.
pub struct PlanPolicy {
    table: Vec<Option<PlanTarget>>,
}

impl PlanPolicy {
    pub fn new(entries: impl IntoIterator<Item = (u32, PlanTarget)>) -> Self {
        let mut table = Vec::new();
        for (round, target) in entries {
            let r = round as usize;
            if table.len() <= r {
                table.resize(r + 1, None);
            }
            debug_assert!(table[r].is_none(), "two planned center calls in round {round}");
            table[r] = Some(target);
        }
        PlanPolicy { table }
    }
}

impl CenterPolicy for PlanPolicy {
    fn next_call(&mut self, view: &RoundView<'_>) -> Option<VertexId> {
        let g = view.graph();
        match self.table.get(view.round() as usize).copied().flatten()? {
            PlanTarget::Arm(c, arm) => Some(g.arm_end(c, arm)),
            PlanTarget::OpenArm(c) => [Arm::A, Arm::B]
                .into_iter()
                .find(|&arm| view.arm_open(c, arm))
                .map(|arm| g.arm_end(c, arm)),
        }
    }

    fn exhausted(&self, round: u32) -> bool {
        round as usize + 1 >= self.table.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::broadcast::validate;

    #[test]
    fn forwarding_alone_finishes_a_single_cycle() {
        let g = KCycleGraph::new(&[6]).unwrap();
        let o = Originator::OnCycle { cycle: 1, pos: 2 };
        let mut idle = PlanPolicy::new([]);
        let s = build_scheme(&g, o, OriginatorOrder::TowardCenterFirst, &mut idle).unwrap();
        // the idle center does not pass the message on, so the far front
        // covers positions 3..6 alone
        assert_eq!(validate(&g, o, &s), Ok(5));
        assert_eq!(s.rounds[0], vec![Call::new(VertexId::on(1, 2), VertexId::on(1, 1))]);
    }

    #[test]
    fn idle_center_stalls() {
        let g = KCycleGraph::new(&[3, 3]).unwrap();
        let mut idle = PlanPolicy::new([]);
        let err = build_scheme(&g, Originator::Center, OriginatorOrder::TowardCenterFirst, &mut idle);
        assert!(matches!(err, Err(EngineError::Stalled { .. })));
    }

    #[test]
    fn center_wins_a_contested_receiver() {
        // C1 called at 1 on arm A; its front reaches position 2 at round 2,
        // the same round the center calls arm B.
        let g = KCycleGraph::new(&[2]).unwrap();
        let mut plan = PlanPolicy::new([(1, PlanTarget::Arm(1, Arm::A)), (2, PlanTarget::Arm(1, Arm::B))]);
        let s = build_scheme(&g, Originator::Center, OriginatorOrder::TowardCenterFirst, &mut plan).unwrap();
        assert_eq!(s.rounds[1], vec![Call::new(VertexId::Center, VertexId::on(1, 2))]);
        assert_eq!(validate(&g, Originator::Center, &s), Ok(2));
    }
}
