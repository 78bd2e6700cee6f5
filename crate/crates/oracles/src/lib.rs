//! Slow reference computations, written independently of the main crates so
//! that tests can compare the two.

pub mod cobar;
pub mod minors;
pub mod weierstrass;
