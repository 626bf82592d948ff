//! The kernel module, the transport functors `hat` and `tilde` between
//! additive functors on `P` and zero-preserving functors on `D`, their unit
//! and counit, the comparison matrix `Θ`, and equivalence certificates.

mod certificate;
mod kernel;
mod theta;
mod transport;

pub use certificate::{certify_equivalence, AdditiveCase, EquivalenceCertificate, PointedCase, COEND_RELATIONS};
pub use kernel::{KernelLawViolation, KernelModule};
pub use theta::{theta_entries, theta_matrix, theta_of, unitriangular_violation, ThetaEntry};
pub use transport::{
    counit, hat, hat_nat, kernel_spaces, offsets, tilde, tilde_nat, tilde_with_spaces, triangle_left, triangle_right,
    unit, TransportError,
};
