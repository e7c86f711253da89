//! Finite inverse semigroups, Boolean inverse semigroups and their type
//! monoids.
//!
//! The central container is [`InverseSemigroup`], a Cayley table with an
//! involution and a zero at index 0. Everything else consumes it:
//!
//! * [`boolean`] certifies the Boolean inverse semigroup axioms and provides
//!   joins, relative complements and the skew operations;
//! * [`congruence`] computes the μ-congruence, additive ideals and the
//!   congruences they induce;
//! * [`structure`] handles atoms, groupoids of atoms, local bisections, rook
//!   matrices and the semisimple decomposition;
//! * [`typemonoid`] builds `Int(S)`, its universal envelope `Typ(S)` and
//!   decides equalities in finitely presented commutative monoids;
//! * [`rook`] works with generalized rook matrices over a Boolean inverse
//!   semigroup;
//! * [`graph`] covers graph inverse semigroups, graph monoids and tight
//!   Booleanizations of finite acyclic graphs.

pub mod boolean;
pub mod congruence;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod group;
pub mod io;
pub mod morphism;
pub mod pperm;
pub mod rook;
pub mod semigroup;
pub mod structure;
pub mod typemonoid;

pub use boolean::{check_bis, BooleanInverseSemigroup};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use pperm::PartialPerm;
pub use semigroup::{GreenData, InverseSemigroup, OrderIndex, VerifyReport, Violation, ZERO};
