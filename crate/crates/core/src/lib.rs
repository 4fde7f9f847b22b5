//! Time-frequency calculus on finite abelian groups.
//!
//! Groups are products of cyclic factors with exact rational Haar weights.
//! Every norm, transform and summation formula is a finite sum, so each
//! identity can be checked to roundoff.

pub mod domain;
pub mod error;
pub mod fourier;
pub mod group;
pub mod rng;
pub mod signal;
pub mod subgroup;
pub mod check;
pub mod tf;
pub mod bp;
pub mod subcalc;
pub mod windows;
pub mod operators;
pub mod gabor;
pub mod duality;
pub mod kernel;
pub mod decomp;
pub mod io;

pub use domain::Domain;
pub use error::{Error, Result};
pub use group::{GroupElement, GroupSpec, PhasePoint, Weight};
pub use signal::{Exponent, Signal};
pub use subgroup::{derive_measures, MeasureSystem, QuotientView, Subgroup};
