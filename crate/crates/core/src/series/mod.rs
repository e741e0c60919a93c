//! Truncated colored formal power series.

mod color;
mod family;
mod kernel;
mod scalar;

pub use color::{CoefficientKey, Color, ColorSet};
pub use family::{compose_density, compose_family, compose_measure, FamilySeries, MeasureSeries};
pub use kernel::KernelFamily;
pub use scalar::TruncatedSeries;

pub(crate) use scalar::advance_odometer;

use crate::error::{Error, Result};

pub(crate) fn check_compatible(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    if !std::sync::Arc::ptr_eq(a.colors(), b.colors()) && a.colors() != b.colors() {
        return Err(Error::ColorSetMismatch);
    }
    Ok(())
}
