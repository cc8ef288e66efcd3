//! Exact construction, validation and classification of abelian group
//! gradings on finite-dimensional incidence algebras.
//!
//! A grading is described by a [`GradingDatum`]: a skeleton poset, one finite
//! subgroup per skeleton element and a graded bimodule class on every cover.
//! [`GradingDatum::realize`] builds the concrete incidence algebra `I(X)` with
//! a homogeneous basis over a cyclotomic field, and the [`oracle`] module
//! checks such realizations by brute force.

pub mod abelian;
pub mod bimodule;
pub mod cyclo;
pub mod datum;
pub mod duality;
pub mod error;
pub mod incidence;
pub mod json;
mod linalg;
mod normal_form;
pub mod oracle;
pub mod poset;

pub use abelian::{double_coset_eq, AbelianGroup, GroupElement, Subgroup};
pub use bimodule::{bimodule_iso, bimodule_product, realizable, twist, BimoduleClass};
pub use error::{Error, Result};
pub use cyclo::CycloNumber;
pub use datum::{
    derive_full_bimodules, grading_iso, realize, validate_datum, GradingDatum, GradingIsomorphism,
    HomogeneousElement, RealizedGrading, ValidationReport, ValidationViolation,
};
pub use duality::{dual_group, extension_fiber, Character, Phase};
pub use incidence::IncidenceElement;
pub use poset::{link_counts, poset_isomorphisms, LinkCounts, Poset};
pub use oracle::{check_link_equation, radical_square_component, verify_grading, VerificationReport};
