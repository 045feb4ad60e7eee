//! Exact optimum broadcast time, by two unrelated methods.
//!
//! [`exact_subset`] is a generic memoized search over informed sets and knows
//! nothing about cycles beyond adjacency. [`exact_structured`] uses the fact
//! that in a k-cycle graph only the originator and the center ever choose
//! whom to call: it decides, for a target time `T`, whether the center's calls
//! can be placed on distinct rounds so that every cycle finishes by `T`.
//!
//! Both restrict themselves to busy schedules (no vertex idles while it has
//! an uninformed neighbour). Informing a superset never delays anything, so
//! an optimal busy schedule always exists.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{lb_center, lb_on_cycle_own, predicted_time};
use crate::broadcast::{validate, BroadcastScheme, Call, Violation};
use crate::engine::{build_scheme, EngineError, OriginatorOrder, PlanPolicy, PlanTarget};
use crate::topology::{Arm, KCycleGraph, Originator, TopologyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExactMethod {
    SubsetDp,
    StructuredEnum,
}

impl ExactMethod {
    pub fn name(self) -> &'static str {
        match self {
            ExactMethod::SubsetDp => "subset",
            ExactMethod::StructuredEnum => "structured",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub time: u32,
    pub scheme: BroadcastScheme,
    pub nodes_expanded: u64,
    pub method: ExactMethod,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("search expanded more than {budget} states")]
    BudgetExceeded { budget: u64 },
    #[error("instance too large for this solver: {what} is {actual}, cap is {cap}")]
    InstanceTooLarge {
        what: &'static str,
        actual: usize,
        cap: usize,
    },
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("witness scheme failed validation: {0:?}")]
    BadWitness(Vec<Violation>),
    #[error("witness takes {actual} rounds, search claimed {claimed}")]
    WitnessMismatch { claimed: u32, actual: u32 },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("no schedule found up to the simple algorithm's time {0}")]
    NoScheduleFound(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetConfig {
    pub max_vertices: usize,
    pub node_budget: u64,
}

impl Default for SubsetConfig {
    fn default() -> Self {
        SubsetConfig {
            max_vertices: 14,
            node_budget: 2_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuredConfig {
    pub max_cycles: usize,
}

impl Default for StructuredConfig {
    fn default() -> Self {
        StructuredConfig { max_cycles: 6 }
    }
}

fn check_witness(g: &KCycleGraph, o: Originator, scheme: &BroadcastScheme, claimed: u32) -> Result<(), ExactError> {
    let actual = validate(g, o, scheme).map_err(ExactError::BadWitness)?;
    if actual != claimed {
        return Err(ExactError::WitnessMismatch { claimed, actual });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Subset search

type Mask = u64;
type Emit<'a> = dyn FnMut(Mask, &[(usize, usize)]) + 'a;

struct SubsetSolver {
    adj: Vec<Vec<usize>>,
    full: Mask,
    memo: HashMap<Mask, u32>,
    budget: u64,
    expanded: u64,
}

impl SubsetSolver {
    fn new(g: &KCycleGraph, budget: u64) -> Self {
        let adj = g
            .vertices()
            .map(|v| {
                g.neighbors(v)
                    .unwrap()
                    .into_iter()
                    .map(|w| g.index_of(w).unwrap())
                    .collect()
            })
            .collect();
        SubsetSolver {
            adj,
            full: if g.n() == 64 { Mask::MAX } else { (1 << g.n()) - 1 },
            memo: HashMap::new(),
            budget,
            expanded: 0,
        }
    }

    /// Every informed set reachable in one round where each sender with an
    /// uninformed neighbour calls one, receivers distinct, and a sender idles
    /// only when all of its options are taken.
    fn successors(&self, s: Mask) -> Vec<(Mask, Vec<(usize, usize)>)> {
        let senders: Vec<(usize, Vec<usize>)> = (0..self.adj.len())
            .filter(|&v| s >> v & 1 == 1)
            .filter_map(|v| {
                let opts: Vec<usize> = self.adj[v].iter().copied().filter(|&w| s >> w & 1 == 0).collect();
                (!opts.is_empty()).then_some((v, opts))
            })
            .collect();
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut calls = Vec::new();
        Self::assign(&senders, 0, 0, &mut calls, &mut |taken, calls| {
            if seen.insert(taken) {
                out.push((s | taken, calls.to_vec()));
            }
        });
        out
    }

    fn assign(
        senders: &[(usize, Vec<usize>)],
        idx: usize,
        taken: Mask,
        calls: &mut Vec<(usize, usize)>,
        emit: &mut Emit<'_>,
    ) {
        let Some((v, opts)) = senders.get(idx) else {
            emit(taken, calls);
            return;
        };
        let mut any = false;
        for &w in opts {
            if taken >> w & 1 == 0 {
                any = true;
                calls.push((*v, w));
                Self::assign(senders, idx + 1, taken | 1 << w, calls, emit);
                calls.pop();
            }
        }
        if !any {
            Self::assign(senders, idx + 1, taken, calls, emit);
        }
    }

    fn solve(&mut self, s: Mask) -> Result<u32, ExactError> {
        if s == self.full {
            return Ok(0);
        }
        if let Some(&v) = self.memo.get(&s) {
            return Ok(v);
        }
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(ExactError::BudgetExceeded { budget: self.budget });
        }
        let mut best = u32::MAX;
        for (t, _) in self.successors(s) {
            best = best.min(1 + self.solve(t)?);
        }
        self.memo.insert(s, best);
        Ok(best)
    }

    fn witness(&mut self, g: &KCycleGraph, start: Mask) -> Result<BroadcastScheme, ExactError> {
        let mut s = start;
        let mut rounds = Vec::new();
        while s != self.full {
            let target = self.solve(s)? - 1;
            let mut next = None;
            for (t, calls) in self.successors(s) {
                if self.solve(t)? == target {
                    next = Some((t, calls));
                    break;
                }
            }
            let (t, calls) = next.expect("memoized optimum has a successor one round closer");
            rounds.push(
                calls
                    .into_iter()
                    .map(|(a, b)| Call::new(g.vertex_at(a), g.vertex_at(b)))
                    .collect(),
            );
            s = t;
        }
        Ok(BroadcastScheme { rounds })
    }
}

/// Exhaustive memoized search over informed sets. Any graph shape works; only
/// the size is limited.
pub fn exact_subset(g: &KCycleGraph, o: Originator, cfg: SubsetConfig) -> Result<ExactResult, ExactError> {
    g.check_originator(o)?;
    let cap = cfg.max_vertices.min(64);
    if g.n() > cap {
        return Err(ExactError::InstanceTooLarge {
            what: "vertex count",
            actual: g.n(),
            cap,
        });
    }
    let mut solver = SubsetSolver::new(g, cfg.node_budget);
    let start: Mask = 1 << g.index_of(o.vertex()).unwrap();
    let time = solver.solve(start)?;
    let scheme = solver.witness(g, start)?;
    check_witness(g, o, &scheme, time)?;
    Ok(ExactResult {
        time,
        scheme,
        nodes_expanded: solver.expanded,
        method: ExactMethod::SubsetDp,
    })
}

/// Best broadcast time from an arbitrary informed set, for tests of the
/// search itself.
#[cfg(test)]
fn subset_time_from(g: &KCycleGraph, informed: Mask) -> u32 {
    SubsetSolver::new(g, u64::MAX).solve(informed).unwrap()
}

// ---------------------------------------------------------------------------
// Structured search

/// The originator's own cycle once the originator has picked its call order.
#[derive(Clone, Copy, Debug)]
struct OriginCycle {
    /// Round the center is informed.
    center_at: u32,
    /// Completion of the side that informed the center.
    closed_side: u32,
    /// Side still open to a center call: its arm, length and the round its
    /// first vertex (next to the originator) is informed.
    open: Option<(Arm, u32, u32)>,
}

impl OriginCycle {
    fn new(l: usize, pos: usize, order: OriginatorOrder) -> Self {
        let toward_a = pos <= l + 1 - pos;
        let (first_a, first_b) = match (order, toward_a) {
            (OriginatorOrder::TowardCenterFirst, true) | (OriginatorOrder::AwayFromCenterFirst, false) => (1, 2),
            _ => (2, 1),
        };
        let len_a = (pos - 1) as u32;
        let len_b = (l - pos) as u32;
        // a side of length 0 means the originator itself neighbours the center
        let reach = |start: u32, len: u32| start + len;
        let done = |start: u32, len: u32| if len == 0 { 0 } else { start + len - 1 };
        let via_a = reach(first_a, len_a);
        let via_b = reach(first_b, len_b);
        let center_at = via_a.min(via_b);
        let (closed, other) = if via_a <= via_b {
            ((first_a, len_a), (Arm::B, first_b, len_b))
        } else {
            ((first_b, len_b), (Arm::A, first_a, len_a))
        };
        let (arm, start, len) = other;
        let mut closed_side = done(closed.0, closed.1);
        // the far end stays open to the center only if the originator's front
        // has not reached it by the time the center can call
        let open = if len > 0 && done(start, len) > center_at {
            Some((arm, len, start))
        } else {
            closed_side = closed_side.max(done(start, len));
            None
        };
        OriginCycle {
            center_at,
            closed_side,
            open,
        }
    }

    /// Completion of this cycle if the center calls the open side at `call`.
    fn completion(&self, call: Option<u32>) -> u32 {
        let open = match self.open {
            None => 0,
            Some((_, len, start)) => (1..=len)
                .map(|j| {
                    let by_origin = start + j - 1;
                    match call {
                        Some(r) => by_origin.min(r + len - j),
                        None => by_origin,
                    }
                })
                .max()
                .unwrap_or(0),
        };
        self.closed_side.max(open).max(self.center_at)
    }

    /// Latest center call round that still finishes this cycle by `t`, or
    /// `Ok(None)` when no call is needed. `Err(())` when `t` is unreachable.
    fn deadline(&self, t: u32) -> Result<Option<u32>, ()> {
        if self.completion(None) <= t {
            return Ok(None);
        }
        let Some((_, len, start)) = self.open else {
            return Err(());
        };
        let last_useful = start + len - 1;
        (self.center_at + 1..=last_useful)
            .rev()
            .find(|&r| self.completion(Some(r)) <= t)
            .map(Some)
            .ok_or(())
    }
}

struct Search<'a> {
    lengths: &'a [usize],
    t: i64,
    failed: HashSet<(i64, u64, Vec<i64>)>,
    nodes: u64,
    path: Vec<(u32, usize, Arm)>,
}

#[derive(Clone, Debug)]
struct Pending {
    deadline: i64,
    cycle: usize,
    arm: Arm,
}

impl Search<'_> {
    fn len(&self, c: usize) -> i64 {
        self.lengths[c - 1] as i64
    }

    /// Latest first-call round for an untouched cycle, with a second call if
    /// needed.
    fn first_call_deadline(&self, c: usize) -> i64 {
        let l = self.len(c);
        (self.t - l + 1).max((2 * self.t - l + 1).div_euclid(2))
    }

    fn feasible(&self, r: i64, untouched: u64, pending: &[Pending]) -> bool {
        let mut deadlines: Vec<i64> = pending.iter().map(|p| p.deadline).collect();
        deadlines.extend(
            (1..=self.lengths.len())
                .filter(|c| untouched >> c & 1 == 1)
                .map(|c| self.first_call_deadline(c)),
        );
        deadlines.sort_unstable();
        deadlines.iter().enumerate().all(|(j, &d)| d >= r + j as i64)
    }

    fn dfs(&mut self, r: i64, untouched: u64, mut pending: Vec<Pending>) -> bool {
        self.nodes += 1;
        if untouched == 0 && pending.is_empty() {
            return true;
        }
        if !self.feasible(r, untouched, &pending) {
            return false;
        }
        pending.sort_by_key(|p| (p.deadline, p.cycle));
        let key = (r, untouched, pending.iter().map(|p| p.deadline).collect::<Vec<_>>());
        if self.failed.contains(&key) {
            return false;
        }

        // serve the most urgent pending call; among pending calls alone,
        // earliest deadline first is optimal
        if let Some(first) = pending.first().cloned() {
            let rest = pending[1..].to_vec();
            self.path.push((r as u32, first.cycle, first.arm));
            if self.dfs(r + 1, untouched, rest) {
                return true;
            }
            self.path.pop();
        }

        // first call to an untouched cycle, one representative per length
        let mut tried_lengths = Vec::new();
        for c in 1..=self.lengths.len() {
            if untouched >> c & 1 == 0 || tried_lengths.contains(&self.len(c)) {
                continue;
            }
            tried_lengths.push(self.len(c));
            let l = self.len(c);
            let mut next = pending.clone();
            if r + l - 1 > self.t {
                let deadline = 2 * self.t - l + 2 - r;
                if deadline < r + 1 {
                    continue;
                }
                next.push(Pending {
                    deadline,
                    cycle: c,
                    arm: Arm::B,
                });
            }
            self.path.push((r as u32, c, Arm::A));
            if self.dfs(r + 1, untouched & !(1 << c), next) {
                return true;
            }
            self.path.pop();
        }

        self.failed.insert(key);
        false
    }
}

/// Structured exact search over the center's call sequence.
pub fn exact_structured(g: &KCycleGraph, o: Originator, cfg: StructuredConfig) -> Result<ExactResult, ExactError> {
    g.check_originator(o)?;
    if g.k() > cfg.max_cycles || g.k() > 62 {
        return Err(ExactError::InstanceTooLarge {
            what: "cycle count",
            actual: g.k(),
            cap: cfg.max_cycles.min(62),
        });
    }
    let all: u64 = (1..=g.k()).fold(0, |m, c| m | 1 << c);
    let upper = predicted_time(g, o)?;
    let (lower, origin) = match o {
        Originator::Center => (lb_center(g).combined, None),
        Originator::OnCycle { cycle, pos } => {
            (lb_on_cycle_own(g, cycle, g.originator_distance(o)?), Some((cycle, pos)))
        }
    };
    let orders = match origin {
        None => vec![OriginatorOrder::TowardCenterFirst],
        Some(_) => vec![OriginatorOrder::TowardCenterFirst, OriginatorOrder::AwayFromCenterFirst],
    };

    let mut nodes = 0;
    for t in lower.min(upper)..=upper {
        for &order in &orders {
            let mut search = Search {
                lengths: g.lengths(),
                t: t as i64,
                failed: HashSet::new(),
                nodes: 0,
                path: Vec::new(),
            };
            let found = match origin {
                None => search.dfs(1, all, Vec::new()),
                Some((m, pos)) => {
                    let oc = OriginCycle::new(g.len_of(m), pos, order);
                    match oc.deadline(t) {
                        Err(()) => false,
                        Ok(job) => {
                            let pending = job
                                .map(|deadline| {
                                    let (arm, _, _) = oc.open.expect("deadline implies an open side");
                                    vec![Pending {
                                        deadline: deadline as i64,
                                        cycle: m,
                                        arm,
                                    }]
                                })
                                .unwrap_or_default();
                            oc.center_at <= t && search.dfs(oc.center_at as i64 + 1, all & !(1 << m), pending)
                        }
                    }
                }
            };
            nodes += search.nodes;
            if found {
                let plan = search
                    .path
                    .iter()
                    .map(|&(round, cycle, arm)| (round, PlanTarget::Arm(cycle, arm)));
                let mut policy = PlanPolicy::new(plan);
                let scheme = build_scheme(g, o, order, &mut policy)?;
                check_witness(g, o, &scheme, t)?;
                return Ok(ExactResult {
                    time: t,
                    scheme,
                    nodes_expanded: nodes,
                    method: ExactMethod::StructuredEnum,
                });
            }
        }
    }
    Err(ExactError::NoScheduleFound(upper))
}

/// Runs the chosen exact method with default caps.
pub fn exact(g: &KCycleGraph, o: Originator, method: ExactMethod) -> Result<ExactResult, ExactError> {
    match method {
        ExactMethod::SubsetDp => exact_subset(g, o, SubsetConfig::default()),
        ExactMethod::StructuredEnum => exact_structured(g, o, StructuredConfig::default()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::VertexId;

    fn g(lengths: &[usize]) -> KCycleGraph {
        KCycleGraph::new(lengths).unwrap()
    }

    fn both(lengths: &[usize], o: Originator) -> (u32, u32) {
        let g = g(lengths);
        let a = exact_subset(&g, o, SubsetConfig::default()).unwrap().time;
        let b = exact_structured(&g, o, StructuredConfig::default()).unwrap().time;
        (a, b)
    }

    #[test]
    fn small_examples() {
        assert_eq!(both(&[2], Originator::Center), (2, 2));
        assert_eq!(both(&[4, 4, 4], Originator::Center), (5, 5));
        assert_eq!(both(&[2, 2], Originator::OnCycle { cycle: 1, pos: 1 }), (3, 3));
        let r = exact_subset(&g(&[6, 5, 2]), Originator::Center, SubsetConfig::default()).unwrap();
        assert_eq!(r.time, 5);
        assert_eq!(r.method, ExactMethod::SubsetDp);
    }

    #[test]
    fn structured_examples() {
        let cfg = StructuredConfig::default();
        assert_eq!(
            exact_structured(&g(&[9, 7, 5]), Originator::Center, cfg).unwrap().time,
            6
        );
        assert_eq!(
            exact_structured(&g(&[8, 6, 4, 3]), Originator::Center, cfg)
                .unwrap()
                .time,
            6
        );
        assert_eq!(
            exact_structured(&g(&[5, 4, 3, 2]), Originator::Center, cfg)
                .unwrap()
                .time,
            5
        );
    }

    #[test]
    fn caps_are_enforced() {
        let big = g(&[8, 8]);
        assert!(matches!(
            exact_subset(&big, Originator::Center, SubsetConfig::default()),
            Err(ExactError::InstanceTooLarge { .. })
        ));
        let many = g(&[2; 7]);
        assert!(matches!(
            exact_structured(&many, Originator::Center, StructuredConfig::default()),
            Err(ExactError::InstanceTooLarge { .. })
        ));
        let tight = SubsetConfig {
            max_vertices: 14,
            node_budget: 3,
        };
        assert_eq!(
            exact_subset(&g(&[4, 4]), Originator::Center, tight),
            Err(ExactError::BudgetExceeded { budget: 3 })
        );
    }

    #[test]
    fn informed_superset_never_hurts() {
        let graph = g(&[4, 3, 2]);
        let n = graph.n();
        let center = 1u64;
        // spot check chains S ⊆ S' ⊆ S'' grown from the center
        let mut masks = vec![center];
        for v in [1usize, 5, 8, 2, 9, 6] {
            let last = *masks.last().unwrap();
            masks.push(last | 1 << v);
        }
        let mut prev = u32::MAX;
        for m in masks {
            // only connected-from-center sets matter; all of these are
            assert!(m < 1 << n);
            let t = subset_time_from(&graph, m);
            assert!(t <= prev, "time went up from {prev} to {t}");
            prev = t;
        }
    }

    #[test]
    fn origin_cycle_model_matches_hand_count() {
        // l = 8, originator at position 2, toward the center first:
        // center at round 2, far side of 6 vertices from round 2 onward
        let oc = OriginCycle::new(8, 2, OriginatorOrder::TowardCenterFirst);
        assert_eq!(oc.center_at, 2);
        assert_eq!(oc.completion(None), 7);
        assert_eq!(oc.completion(Some(3)), 5);
        assert_eq!(oc.deadline(5), Ok(Some(4)));
        assert_eq!(oc.deadline(7), Ok(None));
        assert_eq!(oc.deadline(4), Err(()));
        // away first: the short side starts in round 2
        let oc = OriginCycle::new(8, 2, OriginatorOrder::AwayFromCenterFirst);
        assert_eq!(oc.center_at, 3);
        let _ = VertexId::Center;
    }
}
