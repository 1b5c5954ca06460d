//! Tight Hamiltonian cycles in dense 3-uniform hypergraphs.
//!
//! The crate has two halves. The exact side ([`solver`], [`verify`],
//! [`counting`]) answers small questions with certainty and serves as the
//! oracle. The constructive side ([`connector`], [`absorbing`],
//! [`reservoir`], [`cover`], [`pipeline`]) builds a cycle the way the
//! absorbing method does, with every intermediate object checked.

pub mod absorbing;
pub mod connector;
pub mod constructions;
pub mod counting;
pub mod cover;
pub mod error;
pub mod hypergraph;
pub mod io;
pub mod pair_graph;
pub mod pipeline;
pub mod rational;
pub mod reservoir;
pub mod rng;
pub mod solver;
pub mod verify;
pub mod vertex_set;

pub use error::{Error, Result};
pub use hypergraph::{CoNeighborhoods, Hypergraph3, MAX_VERTICES};
pub use pair_graph::PairGraph;
pub use rational::Rational;
pub use vertex_set::VertexSet;
