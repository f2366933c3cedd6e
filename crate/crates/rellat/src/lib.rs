//! File formats, the budgeted decision procedure and the command-line front
//! end for inclusions in relational lattices.

pub mod certificate;
pub mod decide;
pub mod model;
pub mod syntax;

pub use certificate::{format_certificate, parse_certificate};
pub use decide::{decide, Budget, Verdict};
pub use model::{format_model, parse_model, Model};
