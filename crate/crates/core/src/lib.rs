//! Laplace spectra, twisted closed geodesics and heat traces of compact flat
//! 3-manifolds, with built-in presentations of the tetracosm `Tetra` and the
//! didicosm `Didi`: two spaces with the same spectrum whose shortest closed
//! geodesics nevertheless differ.

pub mod euclid_group;
pub mod cli;
pub mod exact;
pub mod geodesics;
pub mod selberg;
pub mod spectrum;
