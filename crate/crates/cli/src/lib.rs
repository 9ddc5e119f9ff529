//! Description-file front end for the open book calculator.

pub mod doc;
pub mod run;

pub use doc::{parse, print, Doc, ParseError};
pub use run::{run, Command, Options, Outcome, RunError};
