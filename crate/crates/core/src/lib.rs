//! Exact computations for the discrete cocompact subgroups `H_{5,3}(α,β,γ,δ,ε)`
//! of the nilpotent Lie group `G_{5,3}` and the simple quotients of their
//! group C*-algebras.

pub mod arith;
pub mod canon;
pub mod embed;
pub mod error;
pub mod group;
pub mod invariants;
pub mod quotient;
pub mod rep;

pub use canon::{are_isomorphic, canonicalize, BaseChangeWitness, WitnessKind};
pub use error::{Error, Result};
pub use group::{CanonicalRangeReport, Element, GroupParams, SubgroupLevel};
pub use invariants::{AbelianGroupDescriptor, AlgebraParams, TraceLattice};
pub use quotient::{MatrixPresentation, Phase, QuotientProfile, StructureReport};
pub use rep::{GeneratorWord, OperatorFamily, PhasedMonomial};
