//! Sampling and classification kernels for separability-probability
//! experiments on small bipartite quantum systems.
//!
//! The crate covers the Monte Carlo side of the problem: dense complex
//! matrix primitives sized for 4x4..12x12 density matrices, random-state
//! generation under Hilbert-Schmidt, induced, Bures and interpolated
//! measures (pseudo- or quasirandom driven), PPT/determinantal/spectrum
//! classification, and mergeable streaming estimators with Wilson intervals.

pub mod criteria;
pub mod ensembles;
pub mod estimator;
pub mod matcore;
pub mod normal;
pub mod qrseq;
pub mod rng;
pub mod runner;

pub use matcore::{ComplexMatrix, DensityMatrix, Spectrum};
