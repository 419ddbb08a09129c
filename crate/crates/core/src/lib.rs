//! Amplitude amplification on dense statevectors, checked against the
//! two-reflections-make-a-rotation model.
//!
//! * [`linalg`]: statevectors, O(N) reflections, dense unitaries, sampling.
//! * [`oracle`]: the black-box `U_f` / `I_x0` query model.
//! * [`engine`]: preparations, the iterate, stopping rule and runner.
//! * [`geometry`]: the real 2D plane model and trace comparison.
//! * [`verify`]: named invariant suites used by the `verify` command.

pub mod engine;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
