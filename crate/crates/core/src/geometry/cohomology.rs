use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DivisorClass, GeometryConfig, SurfaceDivisor};

/// Finite-dimensional graded vector space, recorded as `degree -> dimension`.
///
/// Zero-dimensional entries are never stored, so the empty map is the zero space.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(BTreeMap<i64, u64>);

impl GradedDims {
    pub fn zero() -> Self {
        GradedDims(BTreeMap::new())
    }

    /// A single copy of the base field in degree `deg`.
    pub fn concentrated(deg: i64, dim: u64) -> Self {
        let mut g = Self::zero();
        g.add_at(deg, dim);
        g
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, u64)>>(pairs: I) -> Self {
        let mut g = Self::zero();
        for (d, n) in pairs {
            g.add_at(d, n);
        }
        g
    }

    pub fn add_at(&mut self, deg: i64, dim: u64) {
        if dim > 0 {
            *self.0.entry(deg).or_insert(0) += dim;
        }
    }

    pub fn dim(&self, deg: i64) -> u64 {
        self.0.get(&deg).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_dim(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .map(|(&d, &n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Moves every entry from degree `i` to `i + by`.
    pub fn shifted(&self, by: i64) -> Self {
        GradedDims(self.0.iter().map(|(&d, &n)| (d + by, n)).collect())
    }

    /// The degreewise dual placed against `total`: degree `i` moves to `total - i`.
    pub fn reflected(&self, total: i64) -> Self {
        GradedDims(self.0.iter().map(|(&d, &n)| (total - d, n)).collect())
    }

    pub fn direct_sum(&self, other: &GradedDims) -> Self {
        let mut out = self.clone();
        for (&d, &n) in &other.0 {
            out.add_at(d, n);
        }
        out
    }

    pub fn tensor(&self, other: &GradedDims) -> Self {
        let mut out = Self::zero();
        for (&d1, &n1) in &self.0 {
            for (&d2, &n2) in &other.0 {
                out.add_at(d1 + d2, n1 * n2);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&d, &n)| (d, n))
    }

    /// Smallest and largest occupied degrees.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = *self.0.keys().next()?;
        let hi = *self.0.keys().next_back()?;
        Some((lo, hi))
    }
}

impl fmt::Display for GradedDims {
    /// `{0: 1, 3: 1}`; the zero space prints as `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (d, n)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}: {n}")?;
        }
        f.write_str("}")
    }
}

/// Where the fiberwise pushforward of a line bundle lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PushLevel {
    /// Only `R^0` is nonzero.
    Zero,
    /// Only `R^1` is nonzero.
    One,
    /// Fiberwise acyclic.
    None,
}

pub fn projective_line_cohomology(d: i64) -> GradedDims {
    if d >= 0 {
        GradedDims::concentrated(0, (d + 1) as u64)
    } else if d <= -2 {
        GradedDims::concentrated(1, (-d - 1) as u64)
    } else {
        GradedDims::zero()
    }
}

/// Cohomology of `O(d, e)` on `P^1 x P^1` by Kunneth.
pub fn surface_cohomology(s: SurfaceDivisor) -> GradedDims {
    projective_line_cohomology(s.d).tensor(&projective_line_cohomology(s.e))
}

impl GeometryConfig {
    /// Summands of `R rho_* O(D)` as line bundles on `E`.
    ///
    /// With `n` the `H`-coefficient: `Sym^n` of `O + O(-a,-b)` for `n >= 0`,
    /// nothing for `n = -1`, and the relative dual in degree one for `n <= -2`.
    pub fn pushforward_decomposition(&self, d: DivisorClass) -> (PushLevel, Vec<SurfaceDivisor>) {
        let n = d.n_big_h;
        let base = SurfaceDivisor::new(d.n_h, d.n_k);
        let twist = SurfaceDivisor::new(self.a, self.b);
        if n >= 0 {
            let summands = (0..=n)
                .map(|i| SurfaceDivisor::new(base.d - i * twist.d, base.e - i * twist.e))
                .collect();
            (PushLevel::Zero, summands)
        } else if n == -1 {
            (PushLevel::None, Vec::new())
        } else {
            let summands = (1..=(-n - 1))
                .map(|j| SurfaceDivisor::new(base.d + j * twist.d, base.e + j * twist.e))
                .collect();
            (PushLevel::One, summands)
        }
    }

    pub fn threefold_cohomology(&self, d: DivisorClass) -> GradedDims {
        let (level, summands) = self.pushforward_decomposition(d);
        let shift = match level {
            PushLevel::One => 1,
            _ => 0,
        };
        summands
            .into_iter()
            .map(|s| surface_cohomology(s).shifted(shift))
            .fold(GradedDims::zero(), |acc, g| acc.direct_sum(&g))
    }
}
