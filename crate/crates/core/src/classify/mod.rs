//! The emptiness decision for H(g) and the refutation machinery behind it.

pub mod affine;
pub mod decide;
pub mod rank2;
pub mod restrict;

pub use affine::{loop_system, refute_affine_loop, AffineRefutation, LoopModel};
pub use rank2::{search_rank2, ComboReport, Rank2Search, Rank2Verdict};
pub use restrict::{degree_signatures, restriction_obstruction, restriction_templates, ObstructionOutcome, ObstructionReport, Restriction, SignatureSet, Unifier};
pub use decide::{decide, DecideOptions, Decision, Evidence, Verdict};
