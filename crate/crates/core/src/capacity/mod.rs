//! Coherent information, capacity formulas and bounds, degradability,
//! diamond-distance estimation, discrete families, sweeps and the two-way
//! protocol simulation for `N(λ, p)`.

mod coherent;
mod degrade;
mod derivative;
mod diamond;
mod formulas;
mod protocol;
pub mod sequence;
mod sweep;

pub use coherent::{
    coherent_information, coherent_information_state, ic_conjugation_residual,
    maximize_coherent_information, output_entropy_split, EntropySplit, IcMaximum,
};
pub use degrade::{degrading_map, flag_mixing, verify_degradable};
pub(crate) use degrade::{degradability_residual, degrading_map_with_mixing};
pub use derivative::{derivative_check, DerivativeCheck};
pub use diamond::{diamond_distance_to_t, output_trace_distance, DiamondEstimate};
pub use formulas::{
    closeness_epsilon, coherent_info_lower_bound, complement_two_way_capacity,
    continuity_entropic_term, continuity_upper_bound, er_bound_complement, erasure_capacities,
    one_way_capacity, two_way_capacity, ComplementCapacities,
};
pub use protocol::{simulate_two_way_protocol, TwoWayEstimate};
pub use sequence::{proposition1_sequence, BoundCurves, ExactSum, SequenceItem};
pub use sweep::{
    capacity_point, fig3_p, fig4_lambda, sweep_fig3, sweep_fig4, sweep_lambda, sweep_p,
    uniform_grid, CapacityCurvePoint, FIG3_RANGE, FIG4_RANGE,
};
