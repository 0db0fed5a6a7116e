//! Search and certification pipeline for weighted projective Calabi-Yau
//! 4-fold hypersurfaces admitting an antiholomorphic involution with
//! isolated `1/4(1,1,1,1)` fixed points, and the Betti numbers of the
//! Spin(7)-manifolds obtained from them.

pub mod betti;
pub mod cli;
pub mod crepant;
pub mod equivariance;
pub mod error;
pub mod exact;
pub mod hodge;
pub mod involution;
pub mod pipeline;
pub mod polytope;
pub mod singularity;
pub mod weights;

pub use error::{Error, Result};
