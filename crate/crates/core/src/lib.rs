//! Strong coupling between single photons in χ⁽²⁾-coupled semiconductor
//! microcavities.
//!
//! Two conversion processes are modelled. In the two-mode scheme a photon in
//! cavity `a` converts into a photon pair in cavity `b`; in the three-mode
//! scheme a coherent seed in cavity `c` stimulates conversion of a single
//! photon from `a` into `b`. Both reduce to a damped two-level problem
//! ([`analytic::ReducedModel`]).
//!
//! * [`mode`], [`platform`]: cavity modes, lifetimes and the shipped GaAs platforms.
//! * [`chi2`]: the 4̄3m susceptibility tensor, mode-overlap integrals and Ω.
//! * [`analytic`]: dressed states, decay eigenvalues, strong-coupling criteria, spectra.
//! * [`dynamics`]: the closed few-state evolution, the full master equation and π-pulses.
//! * [`feasibility`]: per-platform estimates and photon-number thresholds.
//!
//! The guide under `book/` walks through each of these; its code listings are
//! compiled and run as doctests of this crate.

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod chi2;
pub mod constants;
pub mod dynamics;
mod error;
pub mod feasibility;
pub mod mode;
pub mod platform;

pub use error::{Error, Result};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/modes.md")]
    pub struct Modes;
    #[doc = include_str!("../../../book/src/coupling.md")]
    pub struct Coupling;
    #[doc = include_str!("../../../book/src/dressed-states.md")]
    pub struct DressedStates;
    #[doc = include_str!("../../../book/src/dynamics.md")]
    pub struct Dynamics;
    #[doc = include_str!("../../../book/src/feasibility.md")]
    pub struct Feasibility;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
}
