//! Exact arithmetic for the maximal curves `H_q`, `X_n` and `C_n` over
//! `F_(q^(2n))`: point counts, the automorphism group `Γ = Q ⋊ Σ` and its
//! action, ramification filtrations, valuations and local series.
//!
//! The guide in `book/` walks through each module; its code samples run as
//! doctests of this crate.

pub mod autgroup;
pub mod curves;
pub mod error;
pub mod field;
pub mod grouptheory;
pub mod ramification;

pub use autgroup::{GammaElement, GammaGroup, SubgroupId, TorusElement, UnitaryTranslation};
pub use curves::{CurveId, CurveParams, CurvePoint, CurveStats};
pub use error::{Error, Result};
pub use field::{AdditiveKind, FieldElem, FieldTower, TowerDescription};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/automorphisms.md")]
    mod automorphisms {}
    #[doc = include_str!("../../../book/src/group-theory.md")]
    mod group_theory {}
    #[doc = include_str!("../../../book/src/ramification.md")]
    mod ramification {}
    #[doc = include_str!("../../../book/src/lifting.md")]
    mod lifting {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
