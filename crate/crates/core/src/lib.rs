//! Exact picker routing for rectangular warehouses with one or two blocks.
//!
//! A warehouse is a grid of `m` aisles crossed by `n` cross-aisles. Given a
//! depot on a cross-aisle vertex and a set of picks inside subaisles, the
//! solvers here return a minimum-length closed walk visiting all of them.
//!
//! Two dynamic programs are provided. [`dp::solve_baseline`] is the classic
//! left-to-right sweep that alternates vertical and horizontal stages.
//! [`dp::solve_reduced`] keeps only horizontal stages: once every horizontal
//! edge touching an aisle is fixed, the aisle's vertical edges are determined
//! by [`config::resolve_vertical`]. The [`oracle`] module holds independent
//! checks used by the tests.

pub mod config;
pub mod dp;
pub mod error;
pub mod io;
pub mod model;
pub mod oracle;
pub mod solution;
pub mod walk;

pub use error::{Error, Result};
pub use model::{aisle_points, generate_instance, tour_length, EdgeMultiset, Instance, WarehouseLayout};
pub use solution::Solution;
