//! Exact combinatorics of simply-laced Coxeter and Artin groups, reflection
//! factorizations, mapping-class-group relation elements over `Z/2`, shuffle
//! tensors and local-coefficient homology of group presentations.

pub mod braid;
pub mod checks;
pub mod coxeter;
pub mod error;
pub mod fibhom;
pub mod hurwitz;
pub mod mcg;
pub mod shuffle;
pub mod transvect;
pub mod z2;

pub use coxeter::{CoxeterSystem, Order, Root, WeylElement};
pub use error::{Error, Result};
pub use z2::HomologyClass;
