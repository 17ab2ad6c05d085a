//! Grid diagrams, PD codes, and the conversions between them and braids.

mod convert;
pub mod format;
mod grid;
pub mod pd;

pub use convert::{braid_closure_to_pd, grid_to_pd};
pub use format::{parse_braid, parse_grid, parse_object, parse_pd, Object};
pub use grid::{ColumnOrientation, GridCrossing, GridDiagram};
pub use pd::{Crossing, PdCode};
