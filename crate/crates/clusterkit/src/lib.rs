//! Command-line tools, file formats and a differential harness for the
//! expansion formulas of `clusterkit-core`.

pub mod app;
pub mod crosscheck;
pub mod draw;
pub mod io;
pub mod models;
pub mod random;
pub mod report;
