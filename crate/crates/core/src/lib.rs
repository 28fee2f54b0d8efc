//! Classification of tube-domain universal covers from a tensor polynomial.

pub mod domains;
pub mod jordan;
pub mod linalg;
pub mod poly;
pub mod tensors;
pub mod classifier;
pub mod cli;
