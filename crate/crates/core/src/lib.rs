//! Perioperative phase duration prediction.
//!
//! The crate turns hospital event logs into per-phase duration datasets
//! (induction, preparation, surgical procedure), cleans them, clusters the
//! free-text descriptions, encodes features, fits baseline and ensemble
//! regressors and compares them against the manual operating-room plan.
//! A seeded generator produces synthetic logs with known ground truth so the
//! whole chain can be verified without clinical data.

// Range checks are written `!(x >= lo)` so that NaN fails them too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cleaning;
pub mod clustering;
pub mod encoding;
mod error;
pub mod evaluate;
pub mod eventlog;
pub mod models;
pub mod pipeline;
pub mod stats;
pub mod synthgen;
pub mod textnorm;

pub use error::{Error, Result};
pub use eventlog::Phase;
