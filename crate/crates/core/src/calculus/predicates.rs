use serde::Serialize;

use crate::error::{CalculusError, Witness};
use crate::geometry::GradedDims;

use super::object::Object;
use super::Calculus;

/// A nonzero backward `RHom(X_i, X_j)` with `i > j` (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub later: usize,
    pub earlier: usize,
    pub dims: GradedDims,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiorthogonalReport {
    pub holds: bool,
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

/// `Hom^degree(X_first, X_second) != 0` with `degree <= 0` (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtViolation {
    pub first: usize,
    pub second: usize,
    pub degree: i64,
    pub dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtExceptionalReport {
    pub holds: bool,
    pub not_exceptional: Vec<usize>,
    pub violations: Vec<ExtViolation>,
}

impl Calculus {
    fn determined_dims(&self, x: &Object, y: &Object) -> Result<GradedDims, CalculusError> {
        let r = self.rhom(x, y);
        r.dims.clone().ok_or(CalculusError::Ambiguous(Witness(r)))
    }

    /// `RHom(x, x)` is one-dimensional in degree 0.
    pub fn is_exceptional(&self, x: &Object) -> Result<bool, CalculusError> {
        Ok(self.determined_dims(x, x)? == GradedDims::concentrated(0, 1))
    }

    /// No morphisms from later members to earlier ones.
    pub fn is_semiorthogonal(&self, collection: &[Object]) -> Result<SemiorthogonalReport, CalculusError> {
        let mut violations = Vec::new();
        let mut pairs_checked = 0;
        for (later, x) in collection.iter().enumerate() {
            for (earlier, y) in collection[..later].iter().enumerate() {
                pairs_checked += 1;
                let dims = self.determined_dims(x, y)?;
                if !dims.is_zero() {
                    violations.push(Violation { later, earlier, dims });
                }
            }
        }
        Ok(SemiorthogonalReport { holds: violations.is_empty(), pairs_checked, violations })
    }

    /// Each member exceptional and `Hom^{<=0}` vanishing between distinct members.
    pub fn is_ext_exceptional(&self, collection: &[Object]) -> Result<ExtExceptionalReport, CalculusError> {
        let mut not_exceptional = Vec::new();
        let mut violations = Vec::new();
        for (i, x) in collection.iter().enumerate() {
            for (j, y) in collection.iter().enumerate() {
                let dims = self.determined_dims(x, y)?;
                if i == j {
                    if dims != GradedDims::concentrated(0, 1) {
                        not_exceptional.push(i);
                    }
                    continue;
                }
                violations.extend(
                    dims.iter()
                        .filter(|&(d, _)| d <= 0)
                        .map(|(degree, dim)| ExtViolation { first: i, second: j, degree, dim }),
                );
            }
        }
        Ok(ExtExceptionalReport {
            holds: not_exceptional.is_empty() && violations.is_empty(),
            not_exceptional,
            violations,
        })
    }

    /// `RHom(x, x) = k + k[-n]` and the Serre functor acts on `[x]` as `[n]`.
    pub fn is_spherical(&self, x: &Object, n: i64) -> Result<bool, CalculusError> {
        let dims = self.determined_dims(x, x)?;
        let class = self.class_of(x);
        let want = GradedDims::from_pairs([(0, 1), (n, 1)]);
        Ok(n != 0 && dims == want && self.numerical().serre_class(&class) == class.shifted(n))
    }
}
