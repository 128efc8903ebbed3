//! Machine checks of radical, torsion-theory and radical-class statements
//! over explicit finite families, producing structured [`Report`]s.

pub mod family;
pub mod limits;
pub mod psi;
pub mod report;
pub mod theorems;

pub use family::{ClosureFlags, FamilyBounds, FamilyFilter, FamilyMap, ModuleFamily};
pub use report::{ModuleSummary, Report, Verdict, Witness};
