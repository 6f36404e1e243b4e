//! Enclosures of `K(r)`, the hypergeometric series around it, `exp(K(√x))`
//! and the auxiliary functions `g`, `g₀`, `G`, `Φ`, `H`.

mod agm;
mod functions;
mod series;

pub use agm::{agm, agm_k, asymptotic_defect, exp_k_agm};
pub use functions::{
    alpha, alpha_exact, beta, derivative_check, exp_k, g0_u_series, g_funcs, g_funcs_with,
    h_value, minus_g4_prime_half, phi, DerivativeCheck, GValues, G0_SERIES_TERMS,
};
pub use series::{
    blowup_residual, hyp_series, hyp_series_with, lt_check, HypKind, SeriesEval, DEFAULT_MAX_TERMS,
};
