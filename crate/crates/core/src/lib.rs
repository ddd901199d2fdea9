//! Random monomial ideals and their Artinian quotients: sampling, Hilbert
//! functions, expected h-vectors in closed form, and the weak Lefschetz
//! property.

pub mod closed_form;
pub mod error;
pub mod harness;
pub mod hilbert;
pub mod models;
pub mod monomial;
pub mod oracle;
pub mod rng;
pub mod wlp;

pub use error::{Error, Result};
pub use hilbert::{graded_basis, hilbert_function, HVector};
pub use monomial::{Monomial, MonomialIdeal, SocleSet};
pub use wlp::{has_wlp, WlpOptions, WlpVerdict};
