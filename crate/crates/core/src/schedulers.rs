//! Broadcast schedulers for k-cycle graphs.
//!
//! * [`simple_k_cycle`]: the center calls every cycle twice in a fixed order
//!   decided up front from the cycle lengths alone.
//! * [`s_cycle`] and [`a_cycle`]: the two earlier baselines, reconstructed
//!   from their published one-paragraph descriptions.
//! * [`palindrome_schedule`]: calls `C_i` at rounds `i` and `2k + 1 - i`,
//!   optimal when all cycles share one length.
//!
//! All schedulers let interior vertices forward every round and drop any
//! center call whose target is already informed, without shifting later
//! calls.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::broadcast::BroadcastScheme;
use crate::engine::{build_scheme, CenterPolicy, EngineError, OriginatorOrder, PlanPolicy, PlanTarget, RoundView};
use crate::topology::{Arm, KCycleGraph, Originator, TopologyError, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScheduleError {
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("the palindrome schedule needs the center as originator")]
    NotCenterOriginator,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("unknown scheduler `{0}` (expected simple, scycle, acycle or palindrome)")]
    UnknownScheduler(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheduler {
    Simple,
    SCycle,
    ACycle,
    Palindrome,
}

impl Scheduler {
    pub const ALL: [Scheduler; 4] = [
        Scheduler::Simple,
        Scheduler::SCycle,
        Scheduler::ACycle,
        Scheduler::Palindrome,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheduler::Simple => "simple",
            Scheduler::SCycle => "scycle",
            Scheduler::ACycle => "acycle",
            Scheduler::Palindrome => "palindrome",
        }
    }

    pub fn schedule(self, g: &KCycleGraph, o: Originator) -> Result<BroadcastScheme, ScheduleError> {
        match self {
            Scheduler::Simple => simple_k_cycle(g, o),
            Scheduler::SCycle => s_cycle(g, o),
            Scheduler::ACycle => a_cycle(g, o),
            Scheduler::Palindrome => {
                if o.is_center() {
                    palindrome_schedule(g)
                } else {
                    Err(ScheduleError::NotCenterOriginator)
                }
            }
        }
    }
}

impl fmt::Display for Scheduler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheduler {
    type Err = ScheduleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheduler::ALL
            .into_iter()
            .find(|sch| sch.name() == s)
            .ok_or_else(|| ScheduleError::UnknownScheduler(s.to_string()))
    }
}

/// One call made by the center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CenterCall {
    pub round: u32,
    pub cycle: usize,
    pub arm: Arm,
}

/// The center's calls in round order.
pub type CenterCallPlan = Vec<CenterCall>;

/// Extracts the center's calls from a scheme.
pub fn plan_of(g: &KCycleGraph, scheme: &BroadcastScheme) -> CenterCallPlan {
    scheme
        .calls()
        .filter(|(_, call)| call.from == VertexId::Center)
        .filter_map(|(round, call)| match call.to {
            VertexId::Cycle { cycle, pos } if g.contains(call.to) => Some(CenterCall {
                round,
                cycle,
                arm: if pos == 1 { Arm::A } else { Arm::B },
            }),
            _ => None,
        })
        .collect()
}

/// Planned center rounds of the simple algorithm. Cycle `m` is the
/// originator's cycle, `d` its distance to the center; `m = 0, d = 0` for a
/// center originator.
pub fn simple_plan(k: usize, m: usize, d: usize) -> Vec<(u32, PlanTarget)> {
    let k = k as u32;
    let d = d as u32;
    let mut plan = Vec::with_capacity(2 * k as usize);
    if m == 0 {
        for i in 1..=k {
            plan.push((i, PlanTarget::Arm(i as usize, Arm::A)));
        }
        for i in 1..=k {
            plan.push((k + i, PlanTarget::Arm(i as usize, Arm::B)));
        }
        return plan;
    }
    let m32 = m as u32;
    for i in 1..m32 {
        plan.push((d + i, PlanTarget::Arm(i as usize, Arm::A)));
    }
    for i in m32 + 1..=k {
        plan.push((d + i - 1, PlanTarget::Arm(i as usize, Arm::A)));
    }
    for i in 1..=k {
        let target = if i == m32 {
            PlanTarget::OpenArm(m)
        } else {
            PlanTarget::Arm(i as usize, Arm::B)
        };
        plan.push((d + k - 1 + i, target));
    }
    plan
}

/// The simple k-cycle algorithm.
///
/// From the center: `C_i` is called at rounds `i` (arm A) and `k + i` (arm B).
/// From a vertex at distance `d` on `C_m`: the originator calls toward the
/// center, then away; the center, informed at round `d`, calls
/// `C_1..C_{m-1}` at `d+1..d+m-1`, `C_{m+1}..C_k` at `d+m..d+k-1`, and every
/// `C_i` again at `d+k-1+i`.
pub fn simple_k_cycle(g: &KCycleGraph, o: Originator) -> Result<BroadcastScheme, ScheduleError> {
    g.check_originator(o)?;
    let d = g.originator_distance(o)?;
    let m = match o {
        Originator::Center => 0,
        Originator::OnCycle { cycle, .. } => cycle,
    };
    let mut policy = PlanPolicy::new(simple_plan(g.k(), m, d));
    Ok(build_scheme(g, o, OriginatorOrder::TowardCenterFirst, &mut policy)?)
}

/// Center calls `C_i` at rounds `i` and `2k + 1 - i`.
pub fn palindrome_schedule(g: &KCycleGraph) -> Result<BroadcastScheme, ScheduleError> {
    let k = g.k() as u32;
    let plan = (1..=k).flat_map(|i| {
        [
            (i, PlanTarget::Arm(i as usize, Arm::A)),
            (2 * k + 1 - i, PlanTarget::Arm(i as usize, Arm::B)),
        ]
    });
    let mut policy = PlanPolicy::new(plan);
    Ok(build_scheme(
        g,
        Originator::Center,
        OriginatorOrder::TowardCenterFirst,
        &mut policy,
    )?)
}

/// Cycle status as the baselines see it.
fn never_informed(view: &RoundView<'_>, c: usize) -> bool {
    view.remaining(c) == view.graph().len_of(c)
}

/// An arm end of a partly informed cycle that a center call can still speed
/// up. With a single remaining vertex the cycle's own front gets there first.
fn open_arm_of_started(view: &RoundView<'_>, c: usize) -> Option<Arm> {
    if never_informed(view, c) || view.remaining(c) < 2 {
        return None;
    }
    [Arm::B, Arm::A].into_iter().find(|&arm| view.arm_open(c, arm))
}

/// Greedy two-list baseline. Each round the head of the never-informed list
/// (most uninformed vertices) competes with the head of the once-informed
/// list. A second call roughly halves what is left of a started cycle, so the
/// started head wins only when half its remaining count still exceeds the
/// untouched head's length; ties go to the never-informed list.
struct SCyclePolicy;

impl CenterPolicy for SCyclePolicy {
    fn next_call(&mut self, view: &RoundView<'_>) -> Option<VertexId> {
        let g = view.graph();
        let mut never: Option<(usize, usize)> = None;
        let mut once: Option<(usize, usize, Arm)> = None;
        for c in 1..=g.k() {
            let left = view.remaining(c);
            if left == 0 {
                continue;
            }
            if never_informed(view, c) {
                if never.is_none_or(|(_, best)| left > best) {
                    never = Some((c, left));
                }
            } else if let Some(arm) = open_arm_of_started(view, c) {
                if once.is_none_or(|(_, best, _)| left > best) {
                    once = Some((c, left, arm));
                }
            }
        }
        let pick = match (never, once) {
            (Some((c, _)), None) => (c, Arm::A),
            (None, Some((c, _, arm))) => (c, arm),
            (Some((cn, un)), Some((co, uo, arm))) => {
                if uo.div_ceil(2) > un {
                    (co, arm)
                } else {
                    (cn, Arm::A)
                }
            }
            (None, None) => return None,
        };
        Some(g.arm_end(pick.0, pick.1))
    }

    fn exhausted(&self, _round: u32) -> bool {
        // only stops calling once nothing useful is left
        true
    }
}

/// The greedy two-list baseline.
pub fn s_cycle(g: &KCycleGraph, o: Originator) -> Result<BroadcastScheme, ScheduleError> {
    g.check_originator(o)?;
    Ok(build_scheme(
        g,
        o,
        OriginatorOrder::TowardCenterFirst,
        &mut SCyclePolicy,
    )?)
}

/// First calls to the smaller half of the cycles, then the larger half, each
/// in decreasing length; afterwards second calls in decreasing order of the
/// vertices left when the first phase ended.
struct ACyclePolicy {
    first_phase: Vec<usize>,
    start: Option<u32>,
    second_phase: Option<Vec<(usize, Arm)>>,
}

impl ACyclePolicy {
    fn new(g: &KCycleGraph, skip: usize) -> Self {
        // cycles are stored longest first
        let cycles: Vec<usize> = (1..=g.k()).filter(|&c| c != skip).collect();
        let small = cycles.len() / 2;
        let (large, smallest) = cycles.split_at(cycles.len() - small);
        let first_phase = smallest.iter().chain(large.iter()).copied().collect();
        ACyclePolicy {
            first_phase,
            start: None,
            second_phase: None,
        }
    }
}

impl CenterPolicy for ACyclePolicy {
    fn next_call(&mut self, view: &RoundView<'_>) -> Option<VertexId> {
        let g = view.graph();
        let start = *self.start.get_or_insert(view.round());
        let step = (view.round() - start) as usize;
        if let Some(&c) = self.first_phase.get(step) {
            return Some(g.arm_end(c, Arm::A));
        }
        let second = self.second_phase.get_or_insert_with(|| {
            let mut order: Vec<(usize, usize, Arm)> = (1..=g.k())
                .filter_map(|c| open_arm_of_started(view, c).map(|arm| (c, view.remaining(c), arm)))
                .collect();
            order.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            order.into_iter().map(|(c, _, arm)| (c, arm)).collect()
        });
        second
            .get(step - self.first_phase.len())
            .map(|&(c, arm)| g.arm_end(c, arm))
    }

    fn exhausted(&self, round: u32) -> bool {
        match (self.start, &self.second_phase) {
            (Some(start), Some(second)) => (round - start) as usize + 1 >= self.first_phase.len() + second.len(),
            _ => false,
        }
    }
}

/// The split-order baseline.
pub fn a_cycle(g: &KCycleGraph, o: Originator) -> Result<BroadcastScheme, ScheduleError> {
    g.check_originator(o)?;
    let skip = match o {
        Originator::Center => 0,
        Originator::OnCycle { cycle, .. } => cycle,
    };
    let mut policy = ACyclePolicy::new(g, skip);
    Ok(build_scheme(g, o, OriginatorOrder::TowardCenterFirst, &mut policy)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::broadcast::validate;

    fn time(s: Scheduler, lengths: &[usize], o: Originator) -> u32 {
        let g = KCycleGraph::new(lengths).unwrap();
        let scheme = s.schedule(&g, o).unwrap();
        validate(&g, o, &scheme).unwrap()
    }

    fn call(round: u32, cycle: usize, arm: Arm) -> CenterCall {
        CenterCall { round, cycle, arm }
    }

    #[test]
    fn simple_center_examples() {
        let g = KCycleGraph::new(&[6, 5, 2]).unwrap();
        let s = simple_k_cycle(&g, Originator::Center).unwrap();
        assert_eq!(validate(&g, Originator::Center, &s), Ok(5));
        assert_eq!(
            plan_of(&g, &s),
            vec![
                call(1, 1, Arm::A),
                call(2, 2, Arm::A),
                call(3, 3, Arm::A),
                call(4, 1, Arm::B),
                call(5, 2, Arm::B)
            ]
        );
        assert_eq!(time(Scheduler::Simple, &[2], Originator::Center), 2);
        assert_eq!(time(Scheduler::Simple, &[4, 4, 4], Originator::Center), 6);
        let g = KCycleGraph::new(&[2]).unwrap();
        let s = simple_k_cycle(&g, Originator::Center).unwrap();
        assert_eq!(plan_of(&g, &s), vec![call(1, 1, Arm::A), call(2, 1, Arm::B)]);
    }

    #[test]
    fn simple_cycle_originator_example() {
        let g = KCycleGraph::new(&[9, 8, 4, 2]).unwrap();
        let o = Originator::OnCycle { cycle: 2, pos: 2 };
        let s = simple_k_cycle(&g, o).unwrap();
        assert_eq!(validate(&g, o, &s), Ok(8));
        // C_3's second call at round 8 would hit an informed vertex and is dropped
        assert_eq!(
            plan_of(&g, &s),
            vec![
                call(3, 1, Arm::A),
                call(4, 3, Arm::A),
                call(5, 4, Arm::A),
                call(6, 1, Arm::B),
                call(7, 2, Arm::B)
            ]
        );
        assert_eq!(
            s.rounds[0],
            vec![crate::broadcast::Call::new(VertexId::on(2, 2), VertexId::on(2, 1))]
        );
    }

    #[test]
    fn baseline_examples() {
        assert_eq!(time(Scheduler::SCycle, &[4, 4, 4], Originator::Center), 5);
        assert_eq!(time(Scheduler::SCycle, &[2], Originator::Center), 2);
        assert_eq!(time(Scheduler::SCycle, &[9, 7, 5], Originator::Center), 6);
        assert_eq!(time(Scheduler::ACycle, &[2], Originator::Center), 2);
        // first phase: C3, C4, then C1, C2; the optimum here is 5
        assert_eq!(time(Scheduler::ACycle, &[5, 4, 3, 2], Originator::Center), 6);
        let g = KCycleGraph::new(&[6, 5]).unwrap();
        let plan = plan_of(&g, &a_cycle(&g, Originator::Center).unwrap());
        assert_eq!(&plan[..2], &[call(1, 2, Arm::A), call(2, 1, Arm::A)]);
    }

    #[test]
    fn palindrome_examples() {
        assert_eq!(time(Scheduler::Palindrome, &[4, 4, 4], Originator::Center), 5);
        assert_eq!(time(Scheduler::Palindrome, &[2, 2], Originator::Center), 3);
        assert_eq!(time(Scheduler::Palindrome, &[6, 6, 6, 6], Originator::Center), 7);
        let g = KCycleGraph::new(&[3]).unwrap();
        assert_eq!(
            Scheduler::Palindrome.schedule(&g, Originator::OnCycle { cycle: 1, pos: 1 }),
            Err(ScheduleError::NotCenterOriginator)
        );
    }

    #[test]
    fn scheduler_names() {
        for s in Scheduler::ALL {
            assert_eq!(s.name().parse::<Scheduler>().unwrap(), s);
        }
        assert!("greedy".parse::<Scheduler>().is_err());
    }

    #[test]
    fn invalid_originator_is_rejected() {
        let g = KCycleGraph::new(&[3, 2]).unwrap();
        let o = Originator::OnCycle { cycle: 2, pos: 3 };
        assert!(matches!(simple_k_cycle(&g, o), Err(ScheduleError::Topology(_))));
    }
}
