//! Checked non-left-orderability certificates for Dehn surgeries on cables
//! of torus knots.
//!
//! For the `(p, q)`-cable of the `(x, y)`-torus knot with `q = pxy - 1` and
//! `p >= 2`, every surgery slope in `[pq - 1, pq]` gives a group with no left
//! order. This crate builds the group presentations, replays each algebraic
//! derivation through a small step checker, and turns the resulting
//! equations into a sign-refutation certificate that can be re-verified from
//! its JSON form alone.
//!
//! ```
//! use cable_order::{certify_non_lo_beta, replay};
//!
//! let cert = certify_non_lo_beta(2, 3, 2, 1).unwrap().into_certificate().unwrap();
//! assert_eq!(cert.params.slope.to_string(), "21/1");
//! assert!(replay(&cert).valid);
//! ```

pub mod cli;
pub mod derivation;
pub mod error;
pub mod expr;
pub mod normal_form;
pub mod obstruction;
pub mod presentation;
pub mod slope;
pub mod word;

pub use derivation::{check_script, DerivationScript, LemmaSet, ProvenEquation, ScriptLibrary};
pub use error::{Error, Result};
pub use expr::{Named, Term};
pub use normal_form::{eliminate_t, equal_in_torus_group, normal_form, TorusNormalForm};
pub use obstruction::{
    certify_non_lo_beta, certify_non_lo_slope, evaluate_sign, refute_all, replay, Certification, Certifier,
    ObstructionCertificate, ReplayReport, Sign, SignAssignment, TheoremParams,
};
pub use presentation::{cable_presentation, torus_presentation, CableMode, GroupPresentation};
pub use slope::{beta_slope, cramer, genus, lspace_window_check, CramerTriple, Slope};
pub use word::{Gen, Word};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    pub mod words {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    pub mod presentations {}
    #[doc = include_str!("../../../book/src/normal_form.md")]
    pub mod normal_form {}
    #[doc = include_str!("../../../book/src/derivations.md")]
    pub mod derivations {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    pub mod certificates {}
    #[doc = include_str!("../../../book/src/slopes.md")]
    pub mod slopes {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
