//! Finite-time Lyapunov profiles, their trinomial normalization, and
//! scalar summaries of the defect cone.

mod profile;
mod trinomial;

pub use profile::{
    front_geometry, mle, mle_total, mle_total_at, normalize_entries, profile_from_defects, profile_with_log_base, Cone,
    FrontGeometry, LyapunovProfile,
};
pub use trinomial::{
    central_trinomial, central_trinomial_series, closed_form_central_coefficient, max_lyapunov_bound,
    max_lyapunov_bound_series, max_lyapunov_closed_form, trinomial_row, TrinomialRow, CLOSED_FORM_MAX_STEPS,
};
