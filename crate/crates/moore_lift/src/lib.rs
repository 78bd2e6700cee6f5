//! Moore-type cofibers `M(h0^i)` and `M(h0^i, v1^j)` over the synthetic
//! sphere, periodicity operators on the mu-family and the image of J, and
//! replay of top-cell lifting scripts.

pub mod error;
pub mod ladder;
pub mod periodicity;
pub mod script;
pub mod sphere;
pub mod table;

pub use error::{MooreError, Result};
pub use ladder::{CofiberLadder, LadderCell, Quotient};
pub use periodicity::{boundary_of_v1_multiple, indeterminacy, periodicity_apply};
pub use script::{parse_complex, replay_lift_argument, Conclusion, LiftScript, Start, Step, StepKind, Transcript};
pub use sphere::{ClassSpec, Completeness, Element, Lattice, SigmaProduct, SphereModel, SphereSpec};
pub use table::{nu2, Entry, Family, PeriodicClassTable, SelfMap};
