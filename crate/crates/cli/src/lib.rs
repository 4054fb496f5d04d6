//! Command-line front end for the cross-polytope density bounds: single
//! bounds, tables over dimension ranges, ball-density table ingestion,
//! CSV/JSON/SVG output, and management of the outer-angle cache.

pub mod ball_table;
pub mod cli;
pub mod output;
pub mod run;
pub mod svg;
