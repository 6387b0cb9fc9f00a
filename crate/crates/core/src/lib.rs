//! Mutually orthogonal Sudoku Latin squares (MOSLS): finite-field and product
//! constructions, the associated cell graphs, exact characteristic
//! polynomials, closed-form spectra, and spectrum-changing symbol switches.

pub mod cli;
pub mod construct;
pub mod designs;
pub mod gf;
pub mod graph;
pub mod matrix;
pub mod spectra;
pub mod switching;
