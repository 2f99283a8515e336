//! Command-line front end: JSON graph documents in, CSV matrices, spectra,
//! determinants and theorem checks out.

pub mod app;
pub mod document;
pub mod format;
pub mod verify;

pub use app::run;
