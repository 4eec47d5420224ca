//! Slarc diagram algebras and their homological algebra.

pub mod algebra;
pub mod aplus;
pub mod combinat;
pub mod complexes;
pub mod diagram;
pub mod field;
pub mod functors;
pub mod grothendieck;
pub mod homalg;
pub mod linalg;
pub mod modules;
pub mod render;
pub mod resolutions;
pub mod verify;

pub use algebra::{AlgebraElement, Flavor};
pub use diagram::{Diagram, Side};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
