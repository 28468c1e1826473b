//! Exact models and decision procedures for simple integrable weight
//! modules over the direct-limit Lie algebra sl(∞).
//!
//! The crate is organized around a small pipeline:
//!
//! * [`orders`]: Dynkin-type linear orders on the index set, playing the
//!   role of Borel subalgebras;
//! * [`weights`]: finitely presented infinite weights, finite weights and
//!   partitions;
//! * [`finrep`]: the finite-rank sl(n) engine: Weyl dimension formula,
//!   Freudenthal multiplicities, symmetric-group orbits, Casimir values;
//! * [`modmodel`]: parabolic-induction descriptors of simple modules,
//!   block decompositions and the finite-rank exhaustion;
//! * [`classify`]: isomorphism, highest-weight, boundedness and
//!   annihilator-tag decision procedures;
//! * [`oracle`]: an exact rational matrix realization of finite
//!   dimensional simples used to cross-check everything else;
//! * [`descriptor`]: the JSON document format consumed by the CLI.

pub mod classify;
pub mod descriptor;
pub mod error;
pub mod finrep;
pub mod modmodel;
pub mod oracle;
pub mod orders;
pub mod weights;

pub use error::{Error, Result};
