//! Simulation and analysis of vaccination strategies on weighted contact
//! networks.
//!
//! The crate is organized around the pieces of an experiment:
//!
//! * [`graph`]: immutable weighted graphs, SNAP edge-list I/O, Jaccard weights;
//! * [`epidemic`]: the discrete-time SIR process with death and vaccination;
//! * [`centrality`]: degree, eigenvector, closeness and betweenness scores;
//! * [`strategies`]: the sixteen vaccination scorers and top-`⌊αn⌋` selection;
//! * [`hrg`]: hyperbolic random graphs calibrated to a target edge count;
//! * [`hardness`]: the densest-subgraph reduction and exhaustive checks of it;
//! * [`harness`]: seeded strategy × budget sweeps and CSV reports.

pub mod centrality;
pub mod epidemic;
pub mod error;
pub mod graph;
pub mod hardness;
pub mod harness;
pub mod hrg;
pub mod strategies;

pub use error::{Error, Result};
pub use graph::Graph;
