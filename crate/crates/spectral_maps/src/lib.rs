//! Maps between charts, fiber charts, Adams operations on the zero line and
//! the deleted-differential check.

pub mod delete;
pub mod error;
pub mod fiber;
pub mod map;
pub mod psi;
pub mod ring;
pub mod table;

pub use delete::{coset_certifies, delete_differential_check, Certificate, CosetWitness, Emptiness, Refusal, RefusalKind, Verdict};
pub use error::{MapError, Result};
pub use fiber::{build_fiber_chart, FiberChart, FiberGroup, LedgerEntry};
pub use map::{ChartMap, Compat, Component, MapSpec};
pub use psi::{psi_n_zero_line, zero_line_injective, ZeroLine, ZeroLineCell};
pub use ring::{qp_leading_term, LeadingTerm, LevelThreeRing};
pub use table::{DifferentialRow, DifferentialTable, Discrepancy};
