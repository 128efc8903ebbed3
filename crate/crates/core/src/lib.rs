//! Exact computation of torsion functors, reduced and coreduced modules,
//! torsion theories and local (co)homology over finite commutative rings,
//! with a char-0 apolarity backend over truncated polynomial spaces.
//!
//! Everything is exact: submodules are canonical Howell bases over ℤ/n and
//! the apolarity side uses arbitrary-precision rationals.

pub mod apolarity;
pub mod error;
pub mod exec;
pub mod harness;
pub mod homological;
pub mod linalg;
pub mod module;
pub mod ring;
pub mod torsion;

pub use error::{Error, Result};
pub use module::{FinModule, ModuleMap, Submodule};
pub use ring::{FiniteRing, Ideal, RingElement, RingSpec};
