//! Complexified octonions, the groups `G2(C)`, `Spin(7,C)`, `SO(7,C)` and
//! their compact forms, and constructive Cartan decompositions
//! `G_C = G_u A H_C` for the three rank-one spherical pairs
//!
//! | pair | `G_C`        | `H_C`      | slice group |
//! |------|--------------|------------|-------------|
//! | R-1  | `SO(7,C)`    | `G2(C)`    | `A0`        |
//! | R-1' | `Spin(7,C)`  | `G2(C)`    | `Ã0`        |
//! | R-2  | `G2(C)`      | `SL(3,C)`  | `A1`        |
//!
//! together with numerical certificates that the compact group acts
//! strongly visibly on `G_C / H_C`.

#![allow(clippy::needless_range_loop)]

pub mod cayley;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod groups;
pub mod json;
pub mod linalg;
pub mod pairs;
pub mod visible;

pub use cayley::{bilinear_form, build_mult_table, oct_conj, oct_mul, MultTable, Octonion, Product};
pub use decompose::{decompose, reconstruct, KAHFactors, Pair, Tolerances};
pub use error::{Error, Result};
pub use groups::{
    cartan_theta, classify, lift, random_element, triality_companion, GroupTag, MembershipReport, TrialityPair,
};
pub use linalg::{expm, CMatrix};
pub use pairs::{basis, one_param, trace_form, AlgebraTag, OneParamElement, OneParamKind, SubalgebraBasis};
