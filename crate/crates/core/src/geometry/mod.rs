//! Incidence systems and coset geometries.

mod coset;
mod incidence;

pub use coset::{cplus_parabolics, CosetGeometry, GeometrySummary};
pub use incidence::{Chambers, IncidenceSystem, SubSystem};
