//! Shared fixtures for the criterion benchmarks.

use concur_core::qpm::{QpmInteraction, SellmeierSet, TensorLabel};

pub fn shipped_dataset() -> SellmeierSet {
    SellmeierSet::shipped_rta().expect("shipped dataset parses")
}

/// First-order yzy and fifth-order zzz SHG of 1064 nm with the dataset's
/// nonlinear coefficients.
pub fn yzy_zzz_pair(set: &SellmeierSet) -> (QpmInteraction, QpmInteraction) {
    let yzy = QpmInteraction::from_dataset(set, TensorLabel::Yzy, 1.064, 1).expect("yzy");
    let zzz = QpmInteraction::from_dataset(set, TensorLabel::Zzz, 1.064, 5).expect("zzz");
    (yzy, zzz)
}
