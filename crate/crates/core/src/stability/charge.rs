//! Central charges with exact rational parts, slopes, stability functions,
//! Harder–Narasimhan groupings and the support property.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex;
use num_traits::{Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::StabilityError;
use crate::geometry::{rat, Rational};
use crate::lattice::rational::{determinant, left_nullspace, RatMatrix};

pub type ComplexQ = Complex<Rational>;

pub fn cq(re: Rational, im: Rational) -> ComplexQ {
    Complex::new(re, im)
}

/// `a + b i` with integer parts.
pub fn ci(re: i64, im: i64) -> ComplexQ {
    Complex::new(rat(re), rat(im))
}

fn pretty(z: &ComplexQ) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) => format!("{}i", z.im),
        _ if z.im.is_negative() => format!("{}-{}i", z.re, -z.im.clone()),
        _ => format!("{}+{}i", z.re, z.im),
    }
}

/// Open upper half plane together with the closed (weak) or open (strong) negative real ray.
pub fn in_allowed_region(z: &ComplexQ, mode: Mode) -> bool {
    z.im.is_positive()
        || (z.im.is_zero()
            && match mode {
                Mode::Weak => !z.re.is_positive(),
                Mode::Strong => z.re.is_negative(),
            })
}

/// An additive charge given by its values on a lattice basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharge {
    pub values: Vec<ComplexQ>,
}

impl CentralCharge {
    pub fn new(values: Vec<ComplexQ>) -> Self {
        CentralCharge { values }
    }

    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        CentralCharge { values: pairs.iter().map(|&(re, im)| ci(re, im)).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn eval(&self, v: &[i64]) -> ComplexQ {
        self.values
            .iter()
            .zip(v)
            .fold(ci(0, 0), |acc, (z, &n)| acc + z.scale(rat(n)))
    }

    /// Rows `(Re z_i, Im z_i)`: the real-linear map `Z` as an `n x 2` matrix.
    pub fn real_matrix(&self) -> RatMatrix {
        self.values.iter().map(|z| vec![z.re.clone(), z.im.clone()]).collect()
    }
}

impl fmt::Display for CentralCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(pretty).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Serialized as a list of `[re, im]` pairs of rational strings.
impl Serialize for CentralCharge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.values.len()))?;
        for z in &self.values {
            seq.serialize_element(&[z.re.to_string(), z.im.to_string()])?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Weak,
    Strong,
}

/// `-Re Z / Im Z`, or `+inf` on the real axis. Ordered with `+inf` on top.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl Slope {
    pub fn of(z: &ComplexQ) -> Slope {
        if z.im.is_zero() {
            Slope::Infinite
        } else {
            Slope::Finite(-z.re.clone() / &z.im)
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(q) => write!(f, "{q}"),
            Slope::Infinite => f.write_str("+inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Slope of a nonzero, componentwise nonnegative class.
pub fn slope(z: &CentralCharge, v: &[i64]) -> Result<Slope, StabilityError> {
    if v.len() != z.len() {
        return Err(StabilityError::ChargeArity { expected: v.len(), got: z.len() });
    }
    if v.iter().all(|&x| x == 0) || v.iter().any(|&x| x < 0) {
        return Err(StabilityError::Empty);
    }
    Ok(Slope::of(&z.eval(v)))
}

/// Whether `z` has strictly larger phase than `w`; both in the allowed weak region and nonzero.
pub fn phase_exceeds(z: &ComplexQ, w: &ComplexQ) -> bool {
    Slope::of(z).cmp(&Slope::of(w)) == Ordering::Greater
}

/// Outcome of the stability-function test on a finite-length heart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilityFunctionReport {
    pub mode: Mode,
    pub holds: bool,
    /// Simples whose charge leaves the allowed region.
    pub violating_simples: Vec<usize>,
    /// A nonzero effective class with vanishing charge, if one exists.
    pub kernel_direction: Option<Vec<i64>>,
}

/// Decides the stability-function axiom from the charges of the simples.
/// The effective cone is generated by the simples, so a vanishing effective
/// charge can only come from simples with charge zero.
pub fn stability_function(simple_charges: &[ComplexQ], simple_vectors: &[Vec<i64>], mode: Mode) -> StabilityFunctionReport {
    let violating_simples: Vec<usize> = simple_charges
        .iter()
        .enumerate()
        .filter(|(_, z)| !in_allowed_region(z, Mode::Weak))
        .map(|(i, _)| i)
        .collect();
    let kernel_direction = if violating_simples.is_empty() && mode == Mode::Strong {
        simple_charges
            .iter()
            .zip(simple_vectors)
            .find(|(z, v)| z.is_zero() && v.iter().any(|&x| x != 0))
            .map(|(_, v)| v.clone())
    } else {
        None
    };
    StabilityFunctionReport {
        mode,
        holds: violating_simples.is_empty() && kernel_direction.is_none(),
        violating_simples,
        kernel_direction,
    }
}

/// Groups a multiset of simples by slope, largest slope first.
pub fn hn_filtration(simple_charges: &[ComplexQ], multiset: &[usize]) -> Result<Vec<(Slope, Vec<usize>)>, StabilityError> {
    if multiset.is_empty() {
        return Err(StabilityError::Empty);
    }
    let mut tagged = Vec::with_capacity(multiset.len());
    for &i in multiset {
        let z = simple_charges.get(i).ok_or(StabilityError::BadIndex(i))?;
        tagged.push((Slope::of(z), i));
    }
    tagged.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut groups: Vec<(Slope, Vec<usize>)> = Vec::new();
    for (s, i) in tagged {
        match groups.last_mut() {
            Some((t, members)) if *t == s => members.push(i),
            _ => groups.push((s, vec![i])),
        }
    }
    Ok(groups)
}

/// A symmetric rational bilinear form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    matrix: RatMatrix,
}

impl QuadraticForm {
    pub fn new(matrix: RatMatrix) -> Result<Self, StabilityError> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(StabilityError::NotSymmetric);
        }
        for i in 0..n {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(StabilityError::NotSymmetric);
                }
            }
        }
        Ok(QuadraticForm { matrix })
    }

    pub fn zero(n: usize) -> Self {
        QuadraticForm { matrix: vec![vec![Rational::zero(); n]; n] }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { rat(entries[i]) } else { Rational::zero() }).collect())
            .collect();
        QuadraticForm { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                acc += ui * &self.matrix[i][j] * vj;
            }
        }
        acc
    }

    pub fn value(&self, v: &[i64]) -> Rational {
        let v: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
        self.bilinear(&v, &v)
    }
}

impl Serialize for QuadraticForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.matrix.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        rows.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SupportReport {
    pub holds: bool,
    pub kernel_dim: usize,
    pub negative_definite_on_kernel: bool,
    /// Classes with `Q(v) < 0`.
    pub negative_classes: Vec<Vec<i64>>,
}

/// Support property on `Z^n`: `Q` negative definite on `ker Z` (Sylvester's
/// criterion on the restricted Gram matrix) and nonnegative on `classes`.
pub fn check_support(z: &CentralCharge, q: &QuadraticForm, classes: &[Vec<i64>]) -> Result<SupportReport, StabilityError> {
    if q.dim() != z.len() {
        return Err(StabilityError::ChargeArity { expected: q.dim(), got: z.len() });
    }
    let basis = left_nullspace(&z.real_matrix(), 2);
    let k = basis.len();
    let gram: RatMatrix = basis.iter().map(|u| basis.iter().map(|v| q.bilinear(u, v)).collect()).collect();
    let negative_definite_on_kernel = (1..=k).all(|j| {
        let minor: RatMatrix = gram[..j].iter().map(|r| r[..j].to_vec()).collect();
        let d = determinant(&minor);
        if j % 2 == 0 {
            d.is_positive()
        } else {
            d.is_negative()
        }
    });
    let negative_classes: Vec<Vec<i64>> = classes.iter().filter(|v| q.value(v).is_negative()).cloned().collect();
    Ok(SupportReport {
        holds: negative_definite_on_kernel && negative_classes.is_empty(),
        kernel_dim: k,
        negative_definite_on_kernel,
        negative_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slopes() {
        let z = CentralCharge::from_ints(&[(0, 1), (-1, 0), (-1, 1)]);
        assert_eq!(slope(&z, &[1, 0, 0]).unwrap(), Slope::Finite(rat(0)));
        assert_eq!(slope(&z, &[0, 1, 0]).unwrap(), Slope::Infinite);
        assert_eq!(slope(&z, &[0, 0, 1]).unwrap(), Slope::Finite(rat(1)));
        assert!(slope(&z, &[0, 0, 0]).is_err());
        assert!(Slope::Infinite > Slope::Finite(rat(1000)));
    }

    #[test]
    fn regions() {
        assert!(in_allowed_region(&ci(0, 0), Mode::Weak));
        assert!(!in_allowed_region(&ci(0, 0), Mode::Strong));
        assert!(!in_allowed_region(&ci(1, 0), Mode::Weak));
        assert!(in_allowed_region(&ci(-1, 0), Mode::Strong));
    }

    #[test]
    fn support_examples() {
        let z = CentralCharge::from_ints(&[(1, 0), (0, 0)]);
        let classes: Vec<Vec<i64>> = (-3..=3).map(|n| vec![n, 0]).collect();
        assert!(check_support(&z, &QuadraticForm::diagonal(&[1, -1]), &classes).unwrap().holds);
        let r = check_support(&z, &QuadraticForm::diagonal(&[1, 1]), &classes).unwrap();
        assert!(!r.holds && !r.negative_definite_on_kernel);
        let one = CentralCharge::from_ints(&[(0, 1)]);
        let r = check_support(&one, &QuadraticForm::zero(1), &[vec![1], vec![2]]).unwrap();
        assert!(r.holds);
        assert_eq!(r.kernel_dim, 0);
    }

    #[test]
    fn hn_groups() {
        let zs = [ci(-1, 0), ci(0, 1), ci(0, 2)];
        let g = hn_filtration(&zs, &[2, 0, 1, 1]).unwrap();
        assert_eq!(g, vec![(Slope::Infinite, vec![0]), (Slope::Finite(rat(0)), vec![1, 1, 2])]);
        assert!(hn_filtration(&zs, &[]).is_err());
    }

    #[test]
    fn rejects_asymmetric_form() {
        let m = vec![vec![rat(0), rat(1)], vec![rat(0), rat(0)]];
        assert_eq!(QuadraticForm::new(m), Err(StabilityError::NotSymmetric));
    }
}
