//! Cyclic functional AG codes C_L(D, G) on the Hermitian curve over F_{q²}.
//!
//! D is a full orbit of the cyclic two-point stabilizer Γ of (O, Y∞) and
//! G = m(P₂ + … + P_q) sits on the chord OY∞. The crate builds these codes,
//! computes exact weight enumerators and checks their parameters.

pub mod agcode;
pub mod cli;
pub mod curve;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod rrspace;
pub mod verify;
pub mod weights;

pub use agcode::{Codeword, GeneratorExport, LinearCode};
pub use curve::{CurvePoint, HermitianCurve, OrbitSpec};
pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use rrspace::{DivisorG, RrFunction};
pub use verify::{ClaimReport, Status, Verifier};
pub use weights::{Method, WeightEnumerator};
