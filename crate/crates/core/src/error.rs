use crate::graph::Edge;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("self-loop at node {0}")]
    SelfLoop(usize),

    #[error("node {node} out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("{what}: instance size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no demand entry for edge {0}")]
    MissingDemand(Edge),

    #[error("negative demand {value} at {key}")]
    NegativeDemand { key: String, value: String },

    #[error("capacity must be positive at {key}")]
    NonPositiveCapacity { key: String },

    #[error("expected {expected} vertex demands, got {got}")]
    DemandLengthMismatch { expected: usize, got: usize },

    #[error("positions must be strictly increasing (violated at index {index})")]
    PositionsNotIncreasing { index: usize },

    #[error("transmission {transmitter} -> {receiver}: receiver outside transmission radius")]
    ReceiverNotReachable { transmitter: usize, receiver: usize },

    #[error("transmission {transmitter} -> {receiver}: receiver lies west of the transmitter")]
    WestwardReceiver { transmitter: usize, receiver: usize },

    #[error("transmission from node {transmitter} has {count} receivers; expected 1 or 2")]
    ReceiverCount { transmitter: usize, count: usize },

    #[error("transmitter {0} listed among its own receivers")]
    TransmitterIsReceiver(usize),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
