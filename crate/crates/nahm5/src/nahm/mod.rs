//! The generalized Nahm flow dA/dz = [A, A_+] on quartic matrix pencils,
//! its real form, isospectral integration and the pole boundary data.

mod checks;
mod integrate;
mod residues;
mod rhs;
mod state;

pub use checks::{reality_check_curve, regularity_check, regularity_margin, spectral_curve};
pub use integrate::{integrate, lax_defect, Method, Trajectory};
pub use residues::{
    certify_boundary, extract_residues, extract_residues_at, kernel_vector, kernel_vector_check,
    kernel_vector_residual_unweighted, residue_triple,
    Boundary, CertifyReport, ResidueFit, ResidueTriple,
};
pub use rhs::{lax_rhs, nahm_rhs, nahm_rhs_pencil, nahm_rhs_real, real_rhs_via_complex};
pub use state::{NahmState, RealNahmState};
