//! Exact computations behind the motivic identity `([X] − [Y])·L = 0` for
//! the pair of Calabi–Yau 3-folds cut out of the two `G2` Grassmannians.
//!
//! The pipeline runs bottom-up:
//!
//! * [`rootsys`]: Cartan matrices and root systems of finite type.
//! * [`weyl`]: Weyl group enumeration, canonical reduced words, `W^P`.
//! * [`motive`]: classes of flag varieties as polynomials in `L`.
//! * [`grothring`]: symbolic classes, blow-up rules, and derivations with an
//!   independent replay checker.
//! * [`schubert`]: Chevalley-formula Schubert calculus and the degrees of
//!   the two zero loci.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod grothring;
pub mod motive;
pub mod rootsys;
pub mod schubert;
pub mod weyl;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    RootSystem(#[from] rootsys::RootSystemError),
    #[error(transparent)]
    Weyl(#[from] weyl::WeylError),
    #[error(transparent)]
    Groth(#[from] grothring::GrothError),
    #[error(transparent)]
    Replay(#[from] grothring::replay::ReplayError),
    #[error(transparent)]
    Schubert(#[from] schubert::SchubertError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Parse a type, generate its roots and enumerate its Weyl group.
pub fn build_group(type_spec: &str, cap: usize) -> Result<weyl::WeylGroup> {
    let cartan = rootsys::parse_cartan(type_spec)?;
    let roots = rootsys::generate_root_system(&cartan, cap)?;
    Ok(weyl::enumerate_group(&roots, cap)?)
}
