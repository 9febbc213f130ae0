//! Truncated formal series over the rationals, in `q` and in `(q, z)`.
//!
//! A series carries a rational exponent shift; all stored degrees are
//! integer offsets from the shift. Multiplication narrows truncation windows
//! to the largest range on which the product is provably exact, so a window
//! is never silently wrong, only smaller than requested.

mod biseries;
mod qseries;

pub use biseries::BiSeries;
pub use qseries::QSeries;

/// Window bookkeeping failure: the provably exact part of a product is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowUnderflow;

impl core::fmt::Display for WindowUnderflow {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "window underflow: no provably exact coefficients remain")
    }
}

/// Error for inverting a series whose minimal coefficient vanishes or cannot
/// be seen (incomplete window on the low side).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotAUnit;

impl core::fmt::Display for NotAUnit {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "not a unit: leading coefficient is zero or unknown")
    }
}
