//! Calculators around connective Witt K-theory `kw`: 2-adic valuations, the
//! operator ring generated by `β` and `φ`, cobordism models, Hopf algebroid
//! constants, divided powers and the η-periodic stem tables.

pub mod divided;
pub mod hopf;
pub mod msp;
pub mod operator;
pub mod stems;
pub mod valuation;

use thiserror::Error;

use crate::graded::GradedError;
use crate::witt::WittError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KwError {
    #[error("degree {degree} is outside the available range 0..={max}")]
    DegreeOutOfRange { degree: u32, max: u32 },
    #[error("Adams operation ψ^{0} with even index is not supported")]
    EvenNotSupported(i64),
    #[error("unit inversion failed: {0}")]
    UnitInversionFailed(String),
    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("stable stems data, {location}: {reason}")]
    StemsData { location: String, reason: String },
    #[error("stable stems data, {location}: invariant violated: {reason}")]
    StemsInvariant { location: String, reason: String },
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

pub use divided::{divided_power_construct, kw_hw_generators_check, DividedPowerCertificate, DividedPowerModel};
pub use hopf::{hopf_constants, HopfTable};
pub use msp::{adams_on_bott, msp_phi_gr, phi_iterates_on_msl, phi_lemma_model};
pub use operator::{normal_order, phi_on_beta, OperatorPolynomial};
pub use stems::{cobordism_stems, eta_stems, hw_hw_stems, StableStemsData, StemsTable};
pub use valuation::{check_nine_power, nu2, nu2_binomial, nu2_factorial, nu2_suite};
