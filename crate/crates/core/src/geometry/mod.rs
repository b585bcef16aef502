//! Intersection theory and line-bundle cohomology on the projective bundle
//! `P_E(O + O(a,b))` over `E = P^1 x P^1`, with exact arithmetic throughout.
//!
//! The default twist `(a, b) = (-1, -1)` is the blow-up of a quadric
//! threefold at an ordinary double point; `H` is the relative `O(1)` and
//! `h, k` are pulled back from the two rulings of `E`.

mod chow;
mod cohomology;
mod divisor;

use serde::{Deserialize, Serialize};

pub use chow::{degree, frac, rat, ChowElement, Rational};
pub use cohomology::{projective_line_cohomology, surface_cohomology, GradedDims, PushLevel};
pub use divisor::{DivisorClass, SurfaceDivisor};

/// The twist `(a, b)` of `V = O + O(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeometryConfig {
    pub a: i64,
    pub b: i64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig { a: -1, b: -1 }
    }
}

impl GeometryConfig {
    pub const fn new(a: i64, b: i64) -> Self {
        GeometryConfig { a, b }
    }

    pub fn is_nodal_quadric(&self) -> bool {
        *self == Self::default()
    }

    /// `K = -2H - (a+2)h - (b+2)k`.
    pub fn canonical_class(&self) -> DivisorClass {
        DivisorClass::new(-2, -(self.a + 2), -(self.b + 2))
    }

    /// Class of the section `E = H + a h + b k`, disjoint from the other section.
    pub fn exceptional_divisor_class(&self) -> DivisorClass {
        DivisorClass::new(1, self.a, self.b)
    }

    /// Restriction of a divisor to the section `E`; `H` restricts trivially.
    pub fn restrict_to_e(&self, d: DivisorClass) -> SurfaceDivisor {
        SurfaceDivisor::new(d.n_h, d.n_k)
    }

    /// Twist of the normal bundle of `E`.
    pub fn normal_twist(&self) -> SurfaceDivisor {
        self.restrict_to_e(self.exceptional_divisor_class())
    }
}
