//! Admission control for wireless link demands under conflict-graph
//! interference, with exact rational arithmetic end to end.
//!
//! The crate provides:
//!
//! - [`graph`]: simple graphs and the combinatorial machinery (balls, line
//!   graphs, matchings, independent sets, cliques, induced star number,
//!   odd holes, clique substitution);
//! - [`interference`]: conflict graphs under the primary model (line graph
//!   of the network) and the protocol model for line networks;
//! - [`feasibility`]: exact duration oracles (closed form and LP with exact
//!   simplex) and the sufficient admission conditions (Shannon, distance-1,
//!   degree, row constraints) plus clique bound and imperfection ratio;
//! - [`distalgo`]: the distance-d algorithm, its guarantee factor
//!   `(2d+3)/(2d+2)`, and the centralized reference decisions;
//! - [`simnet`]: a round-synchronous simulator running the protocol
//!   distributively via bounded flooding;
//! - [`gen`], [`io`], [`experiment`]: instance generators, text formats,
//!   and reproducible experiment reports.
//!
//! Enumeration-backed operations carry explicit instance-size caps: the
//! underlying problems are hard in general and the crate targets exact
//! answers at desk scale rather than asymptotic performance. Runtime grows
//! with the number of enumerated objects (odd subsets, independent sets),
//! not just the cap.

pub mod distalgo;
pub mod error;
pub mod experiment;
pub mod feasibility;
pub mod gen;
pub mod graph;
pub mod interference;
pub mod io;
pub mod rational;
pub mod simnet;
mod simplex;

pub use error::Error;
pub use rational::Rat;

pub type Result<T> = std::result::Result<T, Error>;
