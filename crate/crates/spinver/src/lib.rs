//! Exact-arithmetic verification of the classification of real spin
//! bundles over CP^3 and of the bundle-theoretic certificate that
//! real projective 7-space embeds smoothly in R^11.
//!
//! Everything is computed over Q and Q(i) with arbitrary-precision
//! integers; there is no floating point anywhere in the crate. The
//! pieces:
//!
//! * [`exact`]: rational and Gaussian-rational scalars, dense exact
//!   matrices, nullspaces, Kronecker products, and Cayley-transform
//!   sampling of unitary matrices;
//! * [`clifford`]: Clifford algebra arithmetic, the even-part
//!   isomorphism, and the mod-8 table of irreducible representations;
//! * [`lambda2`]: the omega basis of anti-self-dual forms on C^4, the
//!   linear stabilizer condition cutting out the exceptional
//!   isomorphisms inside SU(4), the induced rotation actions, and the
//!   Kronecker lift Sp(1) x SO(2) -> Sp(2);
//! * [`charclass`]: truncated graded polynomials, torus weights read
//!   off the matrix models, and the total-class identities;
//! * [`ktheory`]: the cohomology ring of CP^3, reduced K/KO/KSP
//!   models, and the spin-bundle classification counts;
//! * [`embed`]: the embedding pipeline and its structured
//!   certificate;
//! * [`cli`] / [`report`]: the verification commands and their
//!   deterministic reports.

pub mod charclass;
pub mod cli;
pub mod clifford;
pub mod embed;
pub mod exact;
pub mod ktheory;
pub mod lambda2;
pub mod report;

pub use cli::{cmd_all, cmd_classify, cmd_clifford, cmd_embed, cmd_lemma_cohomo, cmd_stabilizer};
pub use report::Report;
