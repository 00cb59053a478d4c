//! Exact computations behind the classification of order-9 non-symplectic
//! automorphisms of complex K3 surfaces.

pub mod classifier;
pub mod cyclotomic;
pub mod dataset;
pub mod exact;
pub mod fibration;
pub mod lattices;
pub mod lefschetz;
pub mod projective;
pub mod verify;
