//! Theta, Kronecker and Weierstrass functions for the lattice Z + Zτ,
//! Eisenstein series and the j-invariant, and the distribution identities
//! relating them across isogenies.

mod characteristic;
mod identities;
mod kronecker;
mod modular;
mod theta;
mod weierstrass;

pub use characteristic::Characteristic;
pub use identities::{
    identity_eta2_isogeny, identity_f_zeta, identity_p_distribution, identity_zeta_distribution,
    identity_zeta_distribution_char, kronecker_weierstrass_limit, legendre_residual,
};
pub use kronecker::{kronecker_f, kronecker_f_char, kronecker_f_pq};
pub use modular::{bernoulli, eisenstein_g, j_invariant, klein_j, ModularParam};
pub use theta::{lattice_distance, reduce, theta11, theta11_derivative_at_zero, theta11_derivs, Reduced};
pub use weierstrass::{weierstrass_p, weierstrass_zeta, zeta_char, zeta_char_pq};
