//! Exact computer algebra for finite double groupoids and the weak Hopf
//! algebras (quantum groupoids) they carry.
//!
//! The pipeline: build or load a finite double groupoid, validate every
//! axiom exhaustively, equip the span of its boxes with one of three
//! algebra/coalgebra structures (corner-reciprocal, point-weight, or
//! two-cocycle deformed), verify the weak Hopf axioms over exact rationals,
//! and compute the representation-theoretic invariants: corner functions,
//! core groupoids, antipode-square spectrum, pivotal element, fusion
//! criterion, quantum and Frobenius-Perron dimensions.

pub mod builders;
pub mod cocycles;
pub mod core_groupoids;
pub mod double_groupoid;
pub mod element;
pub mod groupoid;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod representations;
pub mod schema;
pub mod verify;
pub mod wha;

pub use double_groupoid::{CornerKind, DoubleGroupoid};
pub use element::{Element, Tensor2, Tensor3};
pub use groupoid::Groupoid;
pub use rational::Rat;
pub use report::{ValidationReport, Violation};
pub use verify::{verify_axioms, AxiomReport};
pub use wha::{ThetaWeights, WeakHopf};
