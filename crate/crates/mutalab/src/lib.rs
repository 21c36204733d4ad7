//! Exact-arithmetic toolkit for valued quivers and their mutations.
//!
//! A valued quiver is a finite directed graph without loops or 2-cycles
//! whose arrows `i -> j` carry positive integer valuation pairs
//! `(d_ij, d_ji)`, encoded by a skew-symmetrizable integer matrix `B`
//! with a positive diagonal symmetrizer `d` (`d_i * b_ij = -d_j * b_ji`).
//! Mutation at a vertex transforms the matrix by the exchange rule and
//! is an involution.
//!
//! The crate provides:
//!
//! - [`quiver`]: the core type, two independent mutation engines
//!   (matrix rule and edge-level valuation rules), symmetrizers, and
//!   shape predicates;
//! - [`symmetry`]: signed-relabeling witnesses between quivers;
//! - [`explore`]: breadth-first enumeration of labeled mutation classes
//!   with finite / infinite / inconclusive verdicts and audited graphs;
//! - [`word`]: mutation words with reduction, support, and homogeneity;
//! - [`loops`]: symmetric mutation loops, global-loop certificates over
//!   a whole class, certificate verification, and bounded search;
//! - [`catalog`]: named example quivers, shape recognition, and a
//!   shape-based decision procedure for the existence of global loops;
//! - [`json`]: canonical JSON and DOT serialization.
//!
//! Vertices are numbered `1..=n` throughout the public API; nodes of an
//! exchange graph are numbered from 0 with the seed at node 0.
//!
//! ```
//! use mutalab::quiver::ValuedQuiver;
//!
//! let q = ValuedQuiver::new(&[vec![0, 2], vec![-1, 0]], None).unwrap();
//! assert_eq!(q.symmetrizer(), &[1, 2]);
//! assert_eq!(q.mutate(1).unwrap(), q.negate());
//! ```

#![warn(missing_docs)]

pub mod catalog;
pub mod error;
pub mod explore;
pub mod json;
pub mod loops;
pub mod quiver;
pub mod symmetry;
pub mod word;

pub use error::{Error, Result};
pub use explore::{ExchangeGraph, Limits, Verdict};
pub use quiver::{Permutation, ValuedQuiver};
pub use symmetry::{Sign, SymmetryWitness};
pub use word::MutationWord;


#[cfg(doctest)]
mod book {
    //! Doc-tests every Rust snippet in the user guide chapters.
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(quivers, "../../../book/src/quivers.md");
    chapter!(mutation, "../../../book/src/mutation.md");
    chapter!(classes, "../../../book/src/classes.md");
    chapter!(loops, "../../../book/src/loops.md");
    chapter!(catalog, "../../../book/src/catalog.md");
    chapter!(cli, "../../../book/src/cli.md");
}
