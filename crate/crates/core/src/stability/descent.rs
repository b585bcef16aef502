//! Descent of a heart and its charge along the quotient by a kernel lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{LatticeError, StabilityError};
use crate::geometry::{rat, Rational};
use crate::lattice::normal_form::left_kernel;
use crate::lattice::rational::{left_nullspace, rref, row_times, solve, RatMatrix};
use crate::lattice::{quotient, IntegerLattice, LatticeQuotient};

use super::charge::{stability_function, CentralCharge, ComplexQ, Mode, StabilityFunctionReport};
use super::{Heart, SimpleLattice};

fn to_i64(x: &BigInt) -> Result<i64, LatticeError> {
    x.to_i64().ok_or(LatticeError::Overflow)
}

/// `ker Z ∩ Z^n`, a saturated sublattice.
pub fn charge_kernel(z: &CentralCharge) -> Result<IntegerLattice, StabilityError> {
    let n = z.len();
    let m = z.real_matrix();
    let mut int = vec![vec![0i64; 2]; n];
    for c in 0..2 {
        let l = m.iter().fold(BigInt::one(), |acc, r| acc.lcm(r[c].denom()));
        for (i, r) in m.iter().enumerate() {
            int[i][c] = to_i64(&(r[c].numer() * (&l / r[c].denom())))?;
        }
    }
    Ok(IntegerLattice::from_rows(n, left_kernel(&int, 2)?)?)
}

/// The charge on the free part of `quot` whose pullback is `z`, if `z` vanishes on the kernel.
pub fn induced_charge(z: &CentralCharge, quot: &LatticeQuotient) -> Result<Option<CentralCharge>, StabilityError> {
    let n = z.len();
    if quot.source.ambient() != n {
        return Err(StabilityError::ChargeArity { expected: quot.source.ambient(), got: n });
    }
    for g in quot.kernel.hnf() {
        if !z.eval(g).is_zero() {
            return Ok(None);
        }
    }
    let images: Vec<Vec<i64>> = quot.source.hnf().iter().map(|v| quot.project(v)).collect::<Result<_, _>>()?;
    let targets: Vec<ComplexQ> = quot.source.hnf().iter().map(|v| z.eval(v)).collect();
    let p: RatMatrix = images.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let re: Vec<Rational> = targets.iter().map(|t| t.re.clone()).collect();
    let im: Vec<Rational> = targets.iter().map(|t| t.im.clone()).collect();
    match (solve(&p, quot.rank, &re), solve(&p, quot.rank, &im)) {
        (Some(a), Some(b)) => Ok(Some(CentralCharge::new(a.into_iter().zip(b).map(|(x, y)| ComplexQ::new(x, y)).collect()))),
        _ => Ok(None),
    }
}

/// Simples of the descended heart: the distinct nonzero images of the simples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DescendedHeart {
    pub labels: Vec<String>,
    pub vectors: Vec<Vec<i64>>,
    pub rank: usize,
}

impl SimpleLattice for DescendedHeart {
    fn labels(&self) -> Vec<String> {
        self.labels.clone()
    }

    fn simple_vectors(&self) -> Vec<Vec<i64>> {
        self.vectors.clone()
    }

    fn lattice_rank(&self) -> usize {
        self.rank
    }
}

/// Check (1): `ker ∩ heart` is the extension closure of the simples lying in the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorVerdict {
    pub holds: bool,
    /// Simples whose class lies in the kernel.
    pub generators: Vec<usize>,
    /// An effective kernel class not built from `generators`, if any.
    pub witness: Option<Vec<i64>>,
}

/// Check (2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelVerdict {
    pub holds: bool,
    pub kernel: IntegerLattice,
    pub ker_z: IntegerLattice,
}

/// Check (3).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientVerdict {
    pub holds: bool,
    pub rank: usize,
    pub torsion: Vec<i64>,
}

/// Check (4).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InducedVerdict {
    pub holds: bool,
    pub well_defined: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charge: Option<CentralCharge>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strong: Option<StabilityFunctionReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DescentReport {
    pub holds: bool,
    pub serre_generator: GeneratorVerdict,
    pub kernel_equals_ker_z: KernelVerdict,
    pub quotient: QuotientVerdict,
    pub induced_charge: InducedVerdict,
}

#[derive(Debug, Clone)]
pub struct Descent {
    pub report: DescentReport,
    pub quotient: LatticeQuotient,
    pub heart: DescendedHeart,
}

fn rational_rows(rows: &[Vec<i64>]) -> RatMatrix {
    rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

/// A nonzero effective vector of `span(basis)` vanishing on `forced`, found
/// among the extreme rays of the cone `span ∩ R_{>=0}^n`.
fn effective_ray(basis: &RatMatrix, n: usize, forced: &[usize]) -> Option<Vec<i64>> {
    let free: Vec<usize> = (0..n).filter(|i| !forced.contains(i)).collect();
    for mask in 0u64..(1 << free.len()) {
        let zeros: Vec<usize> = forced
            .iter()
            .copied()
            .chain(free.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &c)| c))
            .collect();
        let restricted: RatMatrix = basis.iter().map(|r| zeros.iter().map(|&c| r[c].clone()).collect()).collect();
        let coeffs = left_nullspace(&restricted, zeros.len());
        if coeffs.len() != 1 {
            continue;
        }
        let ray = row_times(&coeffs[0], basis);
        let sign = if ray.iter().all(|x| !x.is_negative()) {
            1
        } else if ray.iter().all(|x| !x.is_positive()) {
            -1
        } else {
            continue;
        };
        if ray.iter().all(Zero::is_zero) {
            continue;
        }
        let l = ray.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let v: Option<Vec<i64>> = ray.iter().map(|x| (x.numer() * (&l / x.denom()) * BigInt::from(sign)).to_i64()).collect();
        return v;
    }
    None
}

/// Runs the four descent checks for `heart`, a kernel given by ambient K-classes, and `z` in simple coordinates.
pub fn descend(heart: &Heart, kernel: &IntegerLattice, z: &CentralCharge) -> Result<Descent, StabilityError> {
    let n = heart.len();
    if z.len() != n {
        return Err(StabilityError::ChargeArity { expected: n, got: z.len() });
    }
    let simple_lattice = IntegerLattice::from_classes(&heart.classes())?;
    if !simple_lattice.contains_lattice(kernel)? {
        return Err(LatticeError::NotContained.into());
    }
    let rows: Vec<Vec<i64>> = kernel.hnf().iter().map(|r| simple_lattice.coordinates(r)).collect::<Result<_, _>>()?;
    let kernel_s = IntegerLattice::from_rows(n, rows.clone())?;

    let basis = rref(&rational_rows(&rows), n).0.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect::<RatMatrix>();
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };
    let generators: Vec<usize> = (0..n)
        .filter(|&i| {
            let mut m = basis.clone();
            m.push(unit(i).iter().map(|&x| rat(x)).collect());
            crate::lattice::rational::rank(&m, n) == basis.len()
        })
        .collect();
    let witness = if basis.is_empty() { None } else { effective_ray(&basis, n, &generators) };
    let serre_generator = GeneratorVerdict { holds: !generators.is_empty() && witness.is_none(), generators, witness };

    let ker_z = charge_kernel(z)?;
    let kernel_equals_ker_z = KernelVerdict { holds: ker_z == kernel_s, kernel: kernel_s.clone(), ker_z };

    let quot = quotient(&IntegerLattice::full(n), &kernel_s)?;
    let quotient_v = QuotientVerdict { holds: quot.is_torsion_free(), rank: quot.rank, torsion: quot.torsion.clone() };

    let mut labels: Vec<String> = Vec::new();
    let mut vectors: Vec<Vec<i64>> = Vec::new();
    for (i, s) in heart.simples.iter().enumerate() {
        let p = quot.project(&unit(i))?;
        if p.iter().all(|&x| x == 0) {
            continue;
        }
        match vectors.iter().position(|v| *v == p) {
            Some(k) => labels[k] = format!("{} ~ {}", labels[k], s.label),
            None => {
                labels.push(s.label.clone());
                vectors.push(p);
            }
        }
    }
    let descended = DescendedHeart { labels, vectors, rank: quot.rank };

    let charge = induced_charge(z, &quot)?;
    let strong = charge.as_ref().map(|c| {
        let values: Vec<ComplexQ> = descended.vectors.iter().map(|v| c.eval(v)).collect();
        stability_function(&values, &descended.vectors, Mode::Strong)
    });
    let induced = InducedVerdict {
        holds: quot.rank > 0 && strong.as_ref().is_some_and(|s| s.holds),
        well_defined: charge.is_some(),
        charge,
        strong,
    };

    let report = DescentReport {
        holds: serre_generator.holds && kernel_equals_ker_z.holds && quotient_v.holds && induced.holds,
        serre_generator,
        kernel_equals_ker_z,
        quotient: quotient_v,
        induced_charge: induced,
    };
    Ok(Descent { report, quotient: quot, heart: descended })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::charge::ci;

    #[test]
    fn kernel_of_charge() {
        let z = CentralCharge::from_ints(&[(0, 1), (0, 0), (0, 1)]);
        let k = charge_kernel(&z).unwrap();
        let want = IntegerLattice::from_rows(3, vec![vec![0, 1, 0], vec![-1, 0, 1]]).unwrap();
        assert_eq!(k, want);
        let z = CentralCharge::new(vec![ci(1, 0), crate::stability::cq(crate::geometry::frac(1, 2), rat(0))]);
        assert_eq!(charge_kernel(&z).unwrap().hnf(), &vec![vec![1, -2]]);
    }

    #[test]
    fn effective_rays() {
        let basis = rational_rows(&[vec![1, -1, 0]]);
        assert_eq!(effective_ray(&basis, 3, &[]), None);
        let basis = rational_rows(&[vec![1, 1, 0], vec![0, 1, -1]]);
        let ray = effective_ray(&basis, 3, &[]).unwrap();
        assert!(ray.iter().all(|&x| x >= 0) && ray.iter().any(|&x| x > 0));
    }
}
