//! Incidence of strata in the Hilbert scheme of points in the projective plane.

pub mod cli;
pub mod diagrams;
pub mod graph;
pub mod incidence;
pub mod laurent;
pub mod resolution;
pub mod strata;
pub mod verify;
