//! Finite categories carrying a subcategory `M` of split monomorphisms with
//! chosen retractions, the derived classes and factorizations, and the
//! equivalence between additive functors on the category and
//! zero-preserving functors on its pointed subcategory of `R`-morphisms,
//! computed and certified over exact rationals.

pub mod builders;
pub mod equivalence;
pub mod exactlin;
pub mod fincat;
pub mod functors;
pub mod structure;

pub use equivalence::{EquivalenceCertificate, KernelModule};
pub use exactlin::{QMat, Q};
pub use fincat::{FinCat, MorId, ObjId};
pub use functors::{AdditiveFunctor, NatTransform, PointedFunctor};
pub use structure::{DCat, MRStructure, Setting};
