//! Exact-arithmetic analysis of smooth lattice polytopes viewed as
//! polarized toric varieties.
//!
//! The crate computes, over arbitrary-precision integers:
//!
//! - jet matrices and jet-spannedness orders at torus fixpoints and at
//!   the general point ([`jets`]),
//! - Cayley decompositions `[P_0 * ... * P_r]^s` with strictness
//!   (normal equivalence) checks ([`cayley`]),
//! - lattice width and the recursive projection lower bound for Seshadri
//!   constants at a general point, together with a machine check of the
//!   equivalence between constant jet order, constant Seshadri constant
//!   and Cayley structure ([`seshadri`]).
//!
//! The geometric substrate — vertex/facet/edge computations, lattice
//! point enumeration, vertex charts, halfspace cuts — lives in
//! [`polytope`], on top of the exact linear algebra in [`linalg`].
//!
//! ```
//! use jetspan::polytope::LatticePolytope;
//! use jetspan::{cayley, jets, seshadri};
//!
//! // The 2nd dilation of the standard triangle: the polytope of the
//! // degree-2 Veronese surface.
//! let p = LatticePolytope::from_i64_vertices(&[&[0, 0], &[2, 0], &[0, 2]]).unwrap();
//! assert!(p.is_smooth());
//!
//! let report = jets::jet_report(&p, None).unwrap();
//! assert_eq!(report.constant_order(), Some(2));
//!
//! assert!(cayley::detect(&p, 2, &cayley::DetectOptions::default()).is_some());
//! let eps = seshadri::generic_epsilon(&p, &seshadri::SeshadriOptions::default());
//! assert_eq!(eps.exact, Some(jetspan::linalg::rat(2)));
//! ```

pub mod cayley;
pub mod corpus;
mod error;
pub mod format;
mod geom;
pub mod jets;
pub mod linalg;
pub mod polytope;
pub mod report;
pub mod seshadri;

pub use error::Error;

// Keep the guide's code samples compiling: every chapter of the book is
// also run as a doc-test of this crate.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub struct $name;
        };
    }

    chapter!(Introduction, "../../../book/src/introduction.md");
    chapter!(GettingStarted, "../../../book/src/getting-started.md");
    chapter!(Polytopes, "../../../book/src/polytopes.md");
    chapter!(Jets, "../../../book/src/jets.md");
    chapter!(Cayley, "../../../book/src/cayley.md");
    chapter!(Seshadri, "../../../book/src/seshadri.md");
    chapter!(Equivalence, "../../../book/src/equivalence.md");
    chapter!(CliAndFormats, "../../../book/src/cli.md");
}
