//! Real and complex Laplacian spectra of weighted digraphs.
//!
//! Builds digraphs and their Laplacians, decomposes them along strongly
//! connected components, certifies real spectra or detects patterns that force
//! complex eigenvalues, constructs layered graphs with known spectra, and
//! simulates delayed consensus over them.

pub mod classifier;
pub mod connectivity;
pub mod consensus;
pub mod error;
pub mod fixtures;
pub mod graph;
mod hqr;
pub mod io;
pub mod multilayer;
pub mod random;
pub mod spectra;

pub use classifier::{classify, real_spectrum_certificate, Basis, ClassificationVerdict, Verdict};
pub use connectivity::{block_decomposition, strongly_connected_components, BlockDecomposition};
pub use consensus::{delay_margin, simulate, Outcome, SimConfig, SimulationResult};
pub use error::{Error, Result};
pub use graph::{Digraph, Edge, InteractionKind, Laplacian, Provenance};
pub use multilayer::{build_cycle, build_dcid, build_udcec, compose, Composition, DcidGraph};
pub use spectra::{eigenvalues, is_real_spectrum, spectrum, Complex64, SpectralReport};
