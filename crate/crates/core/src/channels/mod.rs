//! Quantum states, Kraus channels and the constructors for the glued family.
//!
//! Output-space conventions (fixed so dumps and golden values are stable):
//!
//! * `channel_n`: indices `{0, 1}` carry the identity block, `{2, 3}` the
//!   `D̄_p` block.
//! * `complement_n`: index `0` is the flag `|f⟩`, `{1, 2}` carry `D_p`.
//! * `isometry_n`: output index `b · 3 + c` for `b` in the channel output and
//!   `c` in the complement output.

mod family;
mod kraus;
mod state;

pub use family::{
    channel_n, comparison_channel_t, complement_n, complementary_dephasing, constant_channel,
    dephasing_channel, erasure_channel, identity_channel, isometry_n, phi_states,
};
pub use kraus::{Block, ChoiState, Isometry, KrausChannel};
pub use state::{DensityMatrix, PureState};
