//! The ICA-based LiNGAM baseline.

pub mod assignment;
pub mod baseline;
pub mod fastica;

pub use assignment::{diagonal_permutation, hungarian, DiagonalPermutation};
pub use baseline::{b_from_unmixing, ica_lingam_fit, prune_and_order, BaselineModel, Pruning};
pub use fastica::{fastica, whiten, FastIcaConfig, IcaResult, Whitened};
