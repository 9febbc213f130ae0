//! Support library for the `affchar` binary: JSON encodings, text
//! renderings, and the full verification suite.

pub mod criteria;
pub mod json;
pub mod render;
