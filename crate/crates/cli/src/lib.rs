//! Run-spec driven front end for `torsion-core`: parses TOML/JSON run specs,
//! executes the requested checks and emits versioned report documents.

pub mod checks;
pub mod error;
pub mod fixtures;
pub mod render;
pub mod run;
pub mod spec;

pub use error::InputError;
pub use run::{exit_code, run, ReportDocument};
pub use spec::{parse_runspec, read_runspec, Format, RunSpec};

/// Exit code for input errors.
pub const EXIT_INPUT: i32 = 3;
