//! Combinatorics of systems of x-monotone paths with bounded pairwise
//! crossings.
//!
//! The crate is organized in layers. [`word`] holds the language-theoretic
//! core: words over ordered alphabets, balanced-block recognition and the
//! special languages over `{a,b,c,d}`. [`signature`] covers crossing
//! signatures of 3-path systems over `{x,y,z}`: validity, irreducible
//! factorization, associated words, extendability and envelope prediction.
//! [`tableau`] builds regular tableaux from words via the canonical row maps
//! and inverts them. [`sweep`] decides whether a tableau is realizable as a
//! system of paths (a topological sweep), computes envelopes and renders
//! wiring diagrams as SVG. [`oracle`] contains brute-force enumerators and
//! the cross-validation suites that check the faster implementations at desk
//! scale.
//!
//! All types are immutable values; every operation is a pure function, so
//! values can be shared freely between threads. With the default `parallel`
//! feature the expensive scans and enumerations run on rayon; without it
//! they fall back to equivalent sequential loops.

pub mod error;
pub mod oracle;
pub mod signature;
pub mod sweep;
pub mod tableau;
pub mod word;

pub use error::{Error, Result};
