#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod numeric;
pub mod timescale;
pub mod calculus;
pub mod hybrid;
pub mod domains;
pub mod stability;
pub mod scenarios;

pub use calculus::{Distance, RealTimeEntry, RealTimeTrace, Signal, SignalError};
pub use domains::{embed_switched, is_in_h, sjr, to_htd, DomainError, HtdPiece, HybridTimeDomain, Sjr, SwitchingSignal};
pub use hybrid::{solve, FnSystem, GapPolicy, HybridError, HybridSystem, Solution, SolverConfig, Termination};
pub use numeric::Slack;
pub use scenarios::ScenarioError;
pub use stability::{ClassKInf, Ensemble, StabilityError, StabilityReport, Verdict, Witness};
pub use timescale::{GeneralizedTimeScale, Segment, TailKind, TimeScaleError, DEFAULT_TOL_T};
