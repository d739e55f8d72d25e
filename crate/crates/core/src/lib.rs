//! Strong blocking sets, minimal codes and their outer variants over finite
//! fields: construction, exhaustive verification and exact bounds.

pub mod bounds;
pub mod codes;
pub mod concat;
pub mod construct;
pub mod error;
pub mod gfield;
pub mod io;
pub mod linpro;
pub mod mat;
pub mod report;
pub mod repro;
pub mod verify;

pub use codes::{Codeword, LinearCode, MinimalityEngine};
pub use error::{Error, Result};
pub use gfield::{make_tower, Elem, Field, FieldTower, Level};
pub use linpro::{Caps, ProjPoint, ProjSystem, Subspace};
pub use mat::Mat;
pub use report::{VerificationReport, Witness};
