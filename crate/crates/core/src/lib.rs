//! Toric promotion on labeled simple graphs.
//!
//! The crate provides graph construction ([`graph`]), the promotion map and
//! orbit lengths ([`dynamics`]), the stone/coin diagram encoding
//! ([`stone`]), exhaustive and sampled state-space walks ([`enumeration`]),
//! and closed-form orbit-length predictions with verifiers and conjecture
//! explorers ([`theorems`]).

pub mod dynamics;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod stone;
pub mod theorems;

pub use dynamics::{cyc, orbit_length, tpro_inverse_step, tpro_step, Labeling, OrbitReport, State};
pub use error::{DiagramError, EnumerationError, GraphError, StateError, TheoremError};
pub use graph::{bridge_sum, classify, corona_product, eta, BridgeChainSpec, GraphFamily, SimpleGraph};
pub use stone::{is_cyclic_rotation, StoneDiagram};
