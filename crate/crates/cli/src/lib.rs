//! Library side of the `troprank` command: matrix files, JSON reports and
//! SVG rendering, plus [`run`] which the binary wraps.

pub mod app;
pub mod io;
pub mod report;
pub mod svg;

pub use app::{run, Outcome};
