//! Heegaard Floer rank invariants of Seifert fibered integral homology spheres,
//! computed combinatorially from delta sequences and graded roots.

pub mod arith;
pub mod botany;
pub mod cli;
pub mod deltaseq;
pub mod gradedroot;
pub mod inequality;
pub mod morphism;
pub mod seifert;

pub use deltaseq::{AbstractDeltaSequence, Position, RankReport};
pub use gradedroot::GradedRoot;
pub use inequality::{DegreeMove, VerificationReport};
pub use morphism::DeltaMorphism;
pub use seifert::{SeifertSphere, SeifertTuple};
