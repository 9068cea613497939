//! Classical wiretap analogue: a binary channel that, with probability `λ`,
//! hands Eve the input and Bob a BSC(p)-degraded copy of it, and otherwise
//! hands Bob the input and Eve independent noise. The branch label `L` is
//! broadcast to both receivers.

mod channel;
mod info;
mod protocol;

pub use channel::{
    build_wiretap, degrading_stochastic_map, fig6_crossover, fig6_lambda, one_way_secrecy_capacity,
    sweep_fig6, two_way_secrecy_capacity, verify_degraded, DegradingMap, WiretapChannel, FIG6_RANGE,
};
pub use info::{
    decomposition_residual, mutual_information, secrecy_capacity_bruteforce, secrecy_rate,
    InputDistribution, JointPmf, SecrecyMaximum,
};
pub use protocol::{simulate_feedback_protocol, FeedbackEstimate};
