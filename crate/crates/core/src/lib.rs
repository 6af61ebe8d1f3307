//! Algebraic immunity, fast algebraic immunity and the fast immunity profile
//! of Boolean functions, with the punctured Reed-Muller code
//! characterizations of perfect algebraic immunity.

pub mod boolfun;
pub mod codes;
pub mod error;
pub mod f2linalg;
pub mod gf2m;
pub mod immunity;
pub mod pai_lcd;
pub mod suites;

pub use boolfun::{AffineMap, Anf, BooleanFunction};
pub use codes::LinearCode;
pub use error::{Error, Result};
pub use f2linalg::{BitMatrix, BitVec};
pub use gf2m::{FieldElement, FieldGF2n};
pub use immunity::{FaiResult, FaiWitness, ImmunityProfile};
pub use pai_lcd::{Enumeration, PaiCertificate, SupportColumns};
