//! Recurrence and transience of random walks on weighted graphs whose
//! edge weights live in a non-Archimedean ordered field.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: exact arithmetic in ℚ(τ^(1/D)) with order, valuations and the real part `ρ`.
//! * [`graph`]: weighted graphs, exhaustions, infinite families and the graph file format.
//! * [`dirichlet`]: the Dirichlet problem, capacity, energy and Green's formula.
//! * [`walk`]: the real transition matrix `π_U^b`, its components, Green partial sums,
//!   the component-based recurrence criterion and Monte-Carlo simulation.
//! * [`greenfn`]: `G_K(a)`, its limit `G(a)`, the real class graph `β` and `Γ_C(a,a)`.
//! * [`synth`]: realizability of a transition matrix and witness graph construction.
//! * [`acceptance`]: the end-to-end criteria shared by the test suite and `selftest`.

pub mod acceptance;
pub mod dirichlet;
pub mod exec;
pub mod field;
pub mod graph;
pub mod greenfn;
pub mod linalg;
pub mod sample;
pub mod synth;
pub mod walk;

pub use exec::Exec;
pub use field::{FieldContext, FieldElement, FieldError, Rational};
