//! Adjacency labeling schemes: graphs, label decoders, logical and
//! polynomial decoders, encoders, exhaustive search and reductions.

pub mod acceptance;
pub mod boolfn;
pub mod decoders;
pub mod formats;
pub mod graph;
pub mod logic;
pub mod oracle;
pub mod pbs;
pub mod reductions;
pub mod schemes;
pub mod search;
