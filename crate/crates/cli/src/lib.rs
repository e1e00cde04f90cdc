#![allow(clippy::needless_range_loop, clippy::type_complexity)]

//! Command-line front end: argument parsing, configuration and the
//! property suites.

pub mod app;
pub mod config;
pub mod suites;

pub use app::{run, Outcome};
