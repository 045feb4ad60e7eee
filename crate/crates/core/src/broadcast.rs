//! Broadcast schemes under the classical telephone model, and a strict
//! round-by-round simulator that doubles as the scheme validator.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::topology::{KCycleGraph, Originator, VertexId};

/// A single call `from -> to` placed in some round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Call {
    pub from: VertexId,
    pub to: VertexId,
}

impl Call {
    pub fn new(from: VertexId, to: VertexId) -> Self {
        Call { from, to }
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

/// Per-round call lists. `rounds[0]` holds the calls of round 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BroadcastScheme {
    pub rounds: Vec<Vec<Call>>,
}

impl BroadcastScheme {
    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn call_count(&self) -> usize {
        self.rounds.iter().map(Vec::len).sum()
    }

    /// Calls paired with their 1-based round.
    pub fn calls(&self) -> impl Iterator<Item = (u32, Call)> + '_ {
        self.rounds
            .iter()
            .enumerate()
            .flat_map(|(r, calls)| calls.iter().map(move |&c| (r as u32 + 1, c)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scheme serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationReason {
    SenderUninformed,
    /// `same_round` marks a receiver targeted twice within one round.
    ReceiverAlreadyInformed {
        same_round: bool,
    },
    NotAdjacent,
    SenderBusy,
    InvalidVertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum Violation {
    #[error("illegal call {call} in round {round}: {reason:?}")]
    IllegalCall {
        round: u32,
        call: Call,
        reason: ViolationReason,
    },
    #[error("broadcast incomplete, {} vertices never informed", uninformed.len())]
    Incomplete { uninformed: Vec<VertexId> },
}

impl Violation {
    pub fn reason(&self) -> Option<ViolationReason> {
        match self {
            Violation::IllegalCall { reason, .. } => Some(*reason),
            Violation::Incomplete { .. } => None,
        }
    }
}

/// First-informed round of every vertex; the originator maps to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InformTimes {
    times: Vec<u32>,
}

impl InformTimes {
    pub fn get(&self, g: &KCycleGraph, v: VertexId) -> Option<u32> {
        g.index_of(v).map(|i| self.times[i])
    }

    /// Times in dense vertex order (see [`KCycleGraph::index_of`]).
    pub fn as_slice(&self) -> &[u32] {
        &self.times
    }

    pub fn broadcast_time(&self) -> u32 {
        self.times.iter().copied().max().unwrap_or(0)
    }

    /// Number of vertices informed by the end of `round`.
    pub fn informed_by(&self, round: u32) -> usize {
        self.times.iter().filter(|&&t| t <= round).count()
    }
}

const UNINFORMED: u32 = u32::MAX;

/// Replays the scheme and records every rule violation. Illegal calls have no
/// effect; legal calls of one round take effect together.
fn replay(g: &KCycleGraph, o: Originator, s: &BroadcastScheme) -> (Vec<u32>, Vec<Violation>) {
    let mut times = vec![UNINFORMED; g.n()];
    let mut violations = Vec::new();
    let Some(origin) = g.index_of(o.vertex()) else {
        violations.push(Violation::Incomplete {
            uninformed: g.vertices().collect(),
        });
        return (times, violations);
    };
    times[origin] = 0;
    // round in which a vertex last sent, to spot busy senders
    let mut sent_in = vec![0u32; g.n()];

    for (r, calls) in s.rounds.iter().enumerate() {
        let round = r as u32 + 1;
        for &call in calls {
            let reason = match (g.index_of(call.from), g.index_of(call.to)) {
                (Some(from), Some(to)) => {
                    if times[from] >= round {
                        Some(ViolationReason::SenderUninformed)
                    } else if !g.adjacent(call.from, call.to) {
                        Some(ViolationReason::NotAdjacent)
                    } else if sent_in[from] == round {
                        Some(ViolationReason::SenderBusy)
                    } else if times[to] < round {
                        Some(ViolationReason::ReceiverAlreadyInformed { same_round: false })
                    } else if times[to] == round {
                        Some(ViolationReason::ReceiverAlreadyInformed { same_round: true })
                    } else {
                        sent_in[from] = round;
                        times[to] = round;
                        None
                    }
                }
                _ => Some(ViolationReason::InvalidVertex),
            };
            if let Some(reason) = reason {
                violations.push(Violation::IllegalCall { round, call, reason });
            }
        }
    }

    let uninformed: Vec<VertexId> = times
        .iter()
        .enumerate()
        .filter(|(_, &t)| t == UNINFORMED)
        .map(|(i, _)| g.vertex_at(i))
        .collect();
    if !uninformed.is_empty() {
        violations.push(Violation::Incomplete { uninformed });
    }
    (times, violations)
}

/// Runs the scheme under the telephone model. Fails on the first violation.
pub fn simulate(g: &KCycleGraph, o: Originator, s: &BroadcastScheme) -> Result<InformTimes, Violation> {
    let (times, violations) = replay(g, o, s);
    match violations.into_iter().next() {
        Some(v) => Err(v),
        None => Ok(InformTimes { times }),
    }
}

/// Broadcast time of a legal, complete scheme, or every violation found.
pub fn validate(g: &KCycleGraph, o: Originator, s: &BroadcastScheme) -> Result<u32, Vec<Violation>> {
    let (times, violations) = replay(g, o, s);
    if violations.is_empty() {
        Ok(times.into_iter().max().unwrap_or(0))
    } else {
        Err(violations)
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum CompletionError {
    #[error("second call at round {second} does not follow first call at round {first}")]
    BadCallOrder { first: u32, second: u32 },
}

/// Round in which an isolated cycle of `l` vertices is fully informed when
/// the center calls one arm at round `first` and, optionally, the other arm
/// at round `second`. Interior vertices forward every round.
pub fn cycle_completion_time(l: u32, first: u32, second: Option<u32>) -> Result<u32, CompletionError> {
    let single = first + l - 1;
    match second {
        None => Ok(single),
        Some(b) if b <= first => Err(CompletionError::BadCallOrder { first, second: b }),
        Some(b) => Ok(single.min((first + b + l - 2).div_ceil(2))),
    }
}
