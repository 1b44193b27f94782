//! Architectural smell detection and architectural technical debt index
//! (ATDI) estimation.
//!
//! The pipeline runs in this order:
//!
//! 1. [`depgraph`] builds a weighted dependency graph of classes and packages.
//! 2. [`detection`] finds Cyclic Dependency, Hublike Dependency, Unstable
//!    Dependency and God Component instances.
//! 3. [`characteristics`] turns every instance into a feature vector.
//! 4. [`extent`] counts the lines of code that create each smell.
//! 5. [`ranker`] predicts a severity in `[1, 10]` from the features.
//! 6. [`report`] multiplies severity and extent and aggregates per project.
//!
//! [`pipeline`] runs steps 2 to 6 on a graph. [`annotation`] builds training
//! labels from pairwise comparisons,
//! [`eval`] scores rankings and [`explain`] attributes predictions to features.

pub mod depgraph;
pub mod detection;
pub mod characteristics;
pub mod extent;
pub mod annotation;
pub mod eval;
pub mod ranker;
pub mod explain;
pub mod report;
pub mod pipeline;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/smells.md")]
    mod smells {}
    #[doc = include_str!("../../../book/src/index.md")]
    mod index {}
    #[doc = include_str!("../../../book/src/severity.md")]
    mod severity {}
    #[doc = include_str!("../../../book/src/labels.md")]
    mod labels {}
    #[doc = include_str!("../../../book/src/explanations.md")]
    mod explanations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
