//! Even functions on `S^{n-1}`: truncated expansions, quadrature grids,
//! pointwise algebra, integrals and norms.

mod grid;
mod legendre;
mod ops;
mod spectrum;
pub mod text;

pub use grid::{
    analyze, analyze_with_diagnostics, integral, synthesize, synthesize_on, Analysis, Grid,
    GridFunction, PARITY_THRESHOLD,
};
pub use legendre::LegendreTable;
pub use ops::{
    lp_norm, min_max, pointwise_power, Extrema, PowerExpansion, StarFunction, DEFAULT_REFINEMENT,
};
pub use spectrum::{basis, Kind, Point, Spectrum};
