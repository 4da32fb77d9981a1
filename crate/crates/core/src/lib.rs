//! Finite-field permutation polynomials studied through the translation
//! operator `f(x) -> f(x + r)` on polynomials with zero constant term.

pub mod enumerate;
pub mod error;
pub mod family;
pub mod field;
pub mod linalg;
pub mod linearized;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod reproduce;
pub mod shift;

pub use error::{Error, Result};
pub use field::{build_field, FieldCtx, FieldElem, FieldOptions};
pub use linalg::{MatFq, SubspaceFq};
pub use linearized::LinearizedPoly;
pub use poly::{parse_poly, PolyFq, VPoly};
pub use shift::{KernelChain, ShiftOperator};
