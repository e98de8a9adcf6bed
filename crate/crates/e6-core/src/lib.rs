//! Exact-rational computational machinery for the Hermitian symmetric real
//! form E6(-14): root datum and coordinate systems, Weyl-group engines,
//! K-type norm statistics (spin norm, lambda norm, atlas height, u-small
//! enumeration), spin-module tensor combinatorics with Dirac-cohomology
//! extraction, and the screening machinery for candidate infinitesimal
//! characters.
//!
//! Everything is computed over exact rationals; there is no floating point
//! anywhere in this crate. Norms are handled as *squared* rationals so that
//! comparisons are exact.

pub mod linalg;
pub mod ktype;
pub mod omega;
pub mod rat;
pub mod root_datum;
pub mod spin;
pub mod vec8;
pub mod weyl;

pub use ktype::{LambdaResult, SpinNormResult};
pub use omega::{InfChar, Involution};
pub use rat::Rat;
pub use root_datum::{KTypeWeight, RootDatum};
pub use spin::{BranchList, HdResult, SpinModule};
pub use vec8::Vec8;
pub use weyl::{WeylElement, WeylGroup};

use thiserror::Error;

/// Shared computational context: the fixed datum, both Weyl groups, the 27
/// coset representatives with their spin shifts, the precompiled u-small
/// inequality system, and the cached spin-module weight multiset.
///
/// Everything inside is immutable after construction and shareable across
/// threads.
pub struct Engine {
    pub datum: RootDatum,
    pub w_full: WeylGroup,
    pub w_k: WeylGroup,
    pub cosets: weyl::CosetReps,
    pub(crate) usmall_forms: Vec<ktype::UsmallForm>,
    pub spin_module: SpinModule,
}

impl Engine {
    pub fn new() -> Engine {
        let datum = RootDatum::build();
        let w_full = WeylGroup::generate(&datum.simple_roots);
        let w_k = WeylGroup::generate(&datum.k_simple_roots);
        let cosets = weyl::minimal_coset_reps(&datum, &w_full);
        assert_eq!(cosets.reps.len(), 27);
        let spin_module = SpinModule::build(&datum);
        let mut engine = Engine {
            datum,
            w_full,
            w_k,
            cosets,
            usmall_forms: Vec::new(),
            spin_module,
        };
        engine.usmall_forms = ktype::build_usmall_forms(&engine);
        engine
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

#[cfg(test)]
pub(crate) fn test_engine() -> &'static Engine {
    use std::sync::OnceLock;
    static E: OnceLock<Engine> = OnceLock::new();
    E.get_or_init(Engine::new)
}

/// Errors surfaced by operations in this crate. Construction failures of the
/// fixed datum itself are bugs and panic instead.
#[derive(Debug, Error)]
pub enum E6Error {
    #[error("vector is not in the span of the roots")]
    NotInWeightSpace,
    #[error("not a root of the datum")]
    NotARoot,
    #[error("weight is not dominant for the compact positive system")]
    NotDominant,
    #[error("empty branch list")]
    EmptyBranch,
    #[error("branch entry {0} is not a K-type highest weight")]
    InvalidBranchEntry(String),
    #[error("non-integral infinitesimal character")]
    NonIntegralInfChar,
    #[error("infinitesimal character has a negative coordinate")]
    NegativeInfChar,
    #[error("involution record {0}: {1}")]
    BadInvolution(u32, String),
    #[error("involution is not fully supported")]
    NotFullySupported,
    #[error("omega2 is not a subset of omega")]
    PartitionPrecondition,
}
