//! Relation chains and Toda bracket bookkeeping over a cited relation
//! database.

pub mod bracket;
pub mod chain;
pub mod db;
pub mod error;
pub mod word;

pub use bracket::{force_nonzero_from_empty, shuffle, BracketRecord, BracketSpec, Claim, ClaimSpec, Consequence, Side};
pub use chain::{check_relation_chain, prove_zero, Chain, Step, Transcript};
pub use db::{Ambient, AtomDecl, Derivation, Question, Relation, RelationDB, RelationSpec, TAU};
pub use error::{Result, TodaError};
pub use word::Word;
