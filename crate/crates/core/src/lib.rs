//! Cohomology of twisted forms on smooth hypersurfaces in projective space,
//! vanishing certificates for Hodge ideals, and the degree bounds they imply.
//!
//! All counts are exact big integers. Dimensions that cannot be determined
//! from the available input are reported as [`Status::Unknown`] rather than
//! guessed.

pub mod bounds;
pub mod certifier;
pub mod dim;
pub mod error;
pub mod forms;
pub mod milnor;
pub mod numeric;
pub mod pn;

pub use dim::{CohomologyDim, Kind, Status};
pub use error::{Error, Result};
pub use forms::{classify_form_cohomology, classify_with, hodge_middle, Resolution, XFormQuery};
pub use pn::{bott_pn, h_ox, h_restricted_forms, PnQuery};
