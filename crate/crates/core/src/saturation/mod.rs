//! Forward saturation over the refutation calculus.

mod database;
mod join;
mod search;
mod store;

pub use database::{Database, InsertResult};
pub use search::{
    fsearch, Candidate, IterationStats, Saturator, SearchError, SearchOptions, SearchOutcome,
    SearchResult,
};
pub use store::{DerivationStore, NodeId, Rule, StoreNode};
