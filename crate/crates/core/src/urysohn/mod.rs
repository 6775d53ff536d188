//! Urysohn-sphere approximants and explicit one-point extensions.

pub mod approximant;
pub mod backforth;
pub mod extension;

pub use approximant::{
    finite_injectivity_check, fraisse_step, Approximant, Realization, DEFAULT_BUDGET,
};
pub use backforth::back_and_forth_extend;
pub use extension::{
    injectivity_chain, ma_extension, nonproper_witness, prop53_extension, prop53_prescription,
    prop53_prescription_per_index, uwmt_extension, BfState, MaRequest, OnePoint, Shifted,
};
