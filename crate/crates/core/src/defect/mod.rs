//! Defect-count propagation along a reference trajectory.

mod magnitude;
mod propagate;
mod replica;
mod vector;

pub use magnitude::{ln_biguint, log_biguint, log_sum_exp, Backend, LogCount, Magnitude, NEG_INF};
pub use propagate::{propagate_step, propagate_trajectory};
pub use replica::{first_replica_mismatch, replica_oracle_step, ReplicaState};
pub use vector::{init_defect_zone, init_single_defect, total_defects, DefectVector};
