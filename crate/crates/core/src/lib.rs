//! Exact construction, verification and classification of Kac-Moody modules
//! that are free of rank one over the enveloping algebra of the Cartan subalgebra.
//!
//! Elements of U(h) are polynomials in `H_1..H_n` ([`exactpoly::MultiPoly`]);
//! generator actions are twisted shift operators ([`twistop::TwistedOp`]).

pub mod cartan;
pub mod classify;
pub mod error;
pub mod exactpoly;
pub mod exec;
pub mod idealsolve;
pub mod modfam;
pub mod twistop;
pub mod verify;

pub use error::{Error, Result};
pub use exactpoly::{MultiPoly, Rational, VarContext, VarKind};
pub use exec::Exec;
pub use twistop::TwistedOp;

/// Library version embedded in certificates.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
