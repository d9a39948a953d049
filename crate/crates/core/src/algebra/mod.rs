//! Exact arithmetic for finite abelian groups, finite fields and the Galois
//! rings `GR(4^n)`, with their characters evaluated as unit complex numbers.

pub mod arith;
mod field;
mod group;
mod poly;
mod ring;

use serde::{Deserialize, Serialize};

pub use field::{additive_character, element_of_order, primitive_element, FieldElement, FiniteField, MAX_FIELD_ORDER};
pub(crate) use group::unit_phase;
pub use group::{cyclic_character, group_add, AbelianGroup, GroupElement};
pub use ring::{teichmuller_lift, GaloisRing, RingElement};

/// Serializable description of the field or ring behind a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDescriptor {
    /// `"field"` or `"galois-ring"`.
    pub kind: String,
    pub characteristic: u64,
    pub degree: usize,
    /// Monic modulus, constant term first.
    pub modulus: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive_element: Option<Vec<u64>>,
}

impl AlgebraDescriptor {
    pub fn of_field(field: &FiniteField) -> Self {
        Self {
            kind: "field".into(),
            characteristic: field.characteristic(),
            degree: field.degree(),
            modulus: field.modulus().to_vec(),
            primitive_element: Some(field.primitive_element().coefficients().to_vec()),
        }
    }

    pub fn of_ring(ring: &GaloisRing) -> Self {
        Self {
            kind: "galois-ring".into(),
            characteristic: 4,
            degree: ring.degree(),
            modulus: ring.modulus().to_vec(),
            primitive_element: None,
        }
    }
}

/// `F_p^n` viewed as the group `(Z_p)^n`.
pub fn field_additive_group(field: &FiniteField) -> AbelianGroup {
    field.additive_group()
}
