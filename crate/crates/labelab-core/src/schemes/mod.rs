//! Constructive encoders: given a graph (and a model or decomposition where
//! needed), produce labels that the matching decoder verifies.

mod cliquewidth;
mod interval;
mod neighborhood;
mod pointer;

use thiserror::Error;

use crate::graph::GraphError;

pub use cliquewidth::{
    build_module_tree, cliquewidth_encode, cliquewidth_scheme, find_balanced_kmodule, ModuleTree, MODULE_SEARCH_BOUND,
};
pub use interval::{interval_bit_labels, interval_encode, interval_scheme, IntervalEncoding, IntervalModel};
pub use neighborhood::{
    compress_eq_labels, compress_order_labels, dichotomic_encode, linear_neighborhood_encode, order_scheme,
    equality_scheme, NumLabel,
};
pub use pointer::{and_pointer_forest_encode, or_pointer_encode, twin_encode, PointerLabeling, PointerMode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("malformed model: {0}")]
    Model(String),
    #[error("degeneracy {degeneracy} exceeds {c}")]
    Degeneracy { degeneracy: usize, c: usize },
    #[error("input is not a forest")]
    NotForest,
    #[error("twin index {index} exceeds {k}")]
    TwinIndex { index: usize, k: usize },
    #[error("input is not dichotomic")]
    NotDichotomic,
    #[error("input is not a linear neighborhood graph")]
    NotLinearNeighborhood,
    #[error("invalid module tree: {0}")]
    InvalidTree(String),
    #[error("{n} vertices exceed the search bound {bound}")]
    SizeLimit { n: usize, bound: usize },
    #[error("invalid pointer labeling: {0}")]
    Pointer(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
