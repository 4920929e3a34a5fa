//! Embedding of lattice fields into band-limited continuum functions and the
//! symbol-level continuum-limit sweep.
//!
//! The sweep measures, for each spacing `h`, the surrogate distance
//! `D(h) = max_ξ |φ̂(shξ)| ‖(Ĥ_h(ξ) − z)^{-1} − (Ĥ_0(ξ) − z)^{-1}‖`
//! (`s = 2` for staggered fermions, `s = 1` otherwise) and fits the rate of
//! `log D` against `log h`.

mod embed;
mod sweep;
mod window;

pub use embed::{adjoint_embed, embed, ContinuumFunction};
pub use sweep::{
    convergence_sweep, default_grid_density, default_h_list, fit_rate, surrogate_distance, ConvergenceParams,
    ConvergenceReport, Pairing, RhoRule, Sample,
};
pub use window::{make_window, Window, DEFAULT_QUADRATURE};
