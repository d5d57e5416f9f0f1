//! Geometric mechanics of the planar chiral oscillator.
//!
//! The chiral oscillator is a second-order, degenerate Lagrangian system on
//! the plane whose dynamics admit four equivalent Hamiltonian descriptions:
//! the canonical bracket on the Ostrogradskii phase space paired with the
//! total (Dirac) Hamiltonian, the Dirac bracket paired with the canonical
//! Hamiltonian, a canonical chart on the final constraint submanifold in
//! Darboux coordinates, and a Lie-Poisson system on the dual of the
//! oscillator algebra (the central extension of se(2)) obtained by symmetry
//! reduction. This crate builds each formulation from first principles,
//! cross-checks every bracket table, Casimir, and momentum map numerically,
//! and integrates all of them with fixed-step structure-aware integrators.
//!
//! The crate is `no_std` (with `alloc`); all operations are pure functions
//! over immutable values and safe for unrestricted concurrent use. File
//! formats, plotting, and the command-line interface live in the companion
//! `chiral-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod brackets;
pub mod dynamics;
pub mod error;
pub mod hamiltonians;
pub mod linalg;
pub mod params;
pub mod state;
pub mod symmetry;
pub mod vec2;
pub mod verify;

pub(crate) mod math;

pub use error::Error;
pub use params::Params;
pub use state::{DarbouxState, FullState, Jet3, ReducedState};
pub use vec2::Vec2;
