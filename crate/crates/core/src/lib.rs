//! Quantum logic embedded in the classical normal modal logic BQ (= K+B+Q).
//!
//! * [`formula`]: QL and BQ syntax, the definitional rewrites, and the
//!   translation `~ ↦ !([])`.
//! * [`oml`]: finite orthomodular lattices and QL evaluation.
//! * [`baoframe`]: Kripke frames, the operators `⟨R⟩`, `[R]`, `∼`, frame
//!   properties, and BQ evaluation.
//! * [`embedding`]: certification and search of lattice embeddings into the
//!   powerset algebra of a frame.
//! * [`checker`]: exhaustive small-frame suites.
//! * [`cli`]: the `qmodal` command line.

pub mod baoframe;
pub mod checker;
pub mod cli;
pub mod embedding;
pub mod error;
pub mod formula;
pub mod guard;
pub mod oml;
pub mod report;

pub use error::{Error, Result};
pub use report::{CertificateReport, Validity, Verdict};
