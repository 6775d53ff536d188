//! Exact checks for the Banach-space examples: rational sphere points,
//! `L^p` step functions and radial profiles.

pub mod hilbert;
pub mod lp;
pub mod profile;

pub use hilbert::{hilbert_check, stereographic, RationalVector};
pub use lp::{
    disjoint_support_identity, lp_counterexample, lp_norm, lp_pairing, lp_witnesses, PNormValue,
    StepFn1D, StepFn2D,
};
pub use profile::{
    profile_flags, profiles_agree_on, radial_profile_check, Agreement, ProfileFlags, RadialProfile,
};
