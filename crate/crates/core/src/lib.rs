//! Broadcasting in k-cycle graphs: cycles of arbitrary lengths glued at one
//! shared center vertex.
//!
//! The crate provides the graph model, a strict telephone-model simulator,
//! the simple k-cycle scheduler with the two older baselines, lower bounds,
//! two independent exact solvers and a small benchmarking harness.

pub mod bench;
pub mod bounds;
pub mod broadcast;
pub mod engine;
pub mod exact;
pub mod instance;
pub mod schedulers;
pub mod topology;

pub use bounds::{lb_center, lb_on_cycle, lower_bound, predicted_time, BoundReport, BoundsError};
pub use broadcast::{
    cycle_completion_time, simulate, validate, BroadcastScheme, Call, InformTimes, Violation, ViolationReason,
};
pub use exact::{exact, exact_structured, exact_subset, ExactError, ExactMethod, ExactResult};

pub use instance::Instance;
pub use schedulers::{a_cycle, palindrome_schedule, s_cycle, simple_k_cycle, ScheduleError, Scheduler};
pub use topology::{Arm, KCycleGraph, Originator, TopologyError, VertexId};
