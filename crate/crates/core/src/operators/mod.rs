//! The transforms as multipliers on spherical harmonics, with independent
//! quadrature oracles.

mod multiplier;
mod operator;
mod oracle;

pub use multiplier::{
    c_nq, check_admissible, cosine_factor, d_nq, parseval_constant, radon_multiplier,
    tq_multiplier, tq_multiplier_extended_log, tq_multiplier_log,
};
pub use operator::{MultiplierOperator, Normalization, Transform, DEFAULT_CAPACITY, VALIDATION_TOL};
pub use oracle::{cq_direct, cq_direct_spectrum, funk_hecke_oracle};
