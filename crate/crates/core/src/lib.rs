//! Submanifolds with the constant ratio and principal direction properties.
//!
//! Given an ambient vector field `Z` (the line field `∂/∂t` of a product, the radial
//! field `y ↦ y`, a rotational Killing field, ...) and an immersion `f`, write
//! `Z = f_* Zᵀ + Z⊥`. The immersion has the *constant ratio* property when
//! `‖Z⊥‖/‖Zᵀ‖` is constant (or `Zᵀ ≡ 0`), and the *principal direction* property
//! when `Zᵀ` is an eigenvector of every shape operator.
//!
//! The crate builds the explicit families with these properties ([`gallery`]), the
//! conformal maps relating them ([`atlas`]), and numerical checks of the properties and
//! their equivalent characterizations ([`verify`]).

// Guards are written as `!(x < bound)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atlas;
pub mod error;
pub mod fields;
pub mod gallery;
pub mod kernel;
pub mod spaces;
pub mod tolerances;
pub mod verify;

pub use error::{GeomError, Result};
