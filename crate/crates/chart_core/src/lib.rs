//! Bigraded spectral sequence charts: cells, differentials, products, page
//! turning and structural validation.

pub mod bideg;
pub mod chart;
pub mod error;
pub mod group;
pub mod pages;
pub mod products;
pub mod snf;
pub mod validate;

pub use bideg::{BiDegree, Page};
pub use chart::{Cell, Chart, Differential, Extension, GenRef, Parity, ProductEntry, Term, Window};
pub use error::{ChartError, Result};
pub use group::{Generator, Invariants, PresentedAbGroup};
pub use pages::{min_kill_page, tau_power_nonzero, turn_page, SyntheticClass};
pub use products::{multiply, ProductValue};
pub use validate::{validate, Report, Violation, ViolationKind};
