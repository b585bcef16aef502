//! Numerical Grothendieck group of the threefold as the lattice `Z^8`
//! spanned by the eight line bundles of the projective-bundle collection,
//! together with integer sublattices, kernels and quotients.

pub mod normal_form;
pub mod rational;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::calculus::Atom;
use crate::error::LatticeError;
use crate::geometry::{rat, ChowElement, DivisorClass, GeometryConfig, Rational, SurfaceDivisor};
use normal_form::{hermite, smith, vec_mat, IntMatrix};
use rational::RatMatrix;

pub const K_RANK: usize = 8;

/// The line bundles `O, O(h), O(k), O(h+k), O(H), O(H+h), O(H+k), O(H+h+k)`.
pub fn bundle_basis() -> [DivisorClass; K_RANK] {
    [
        DivisorClass::new(0, 0, 0),
        DivisorClass::new(0, 1, 0),
        DivisorClass::new(0, 0, 1),
        DivisorClass::new(0, 1, 1),
        DivisorClass::new(1, 0, 0),
        DivisorClass::new(1, 1, 0),
        DivisorClass::new(1, 0, 1),
        DivisorClass::new(1, 1, 1),
    ]
}

/// A numerical K-class: its Chern character and its integer coordinates in
/// the line-bundle basis. Both are kept in sync by every operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KClass {
    pub chern: ChowElement,
    pub coords: Vec<i64>,
}

impl KClass {
    pub fn zero() -> Self {
        KClass { chern: ChowElement::zero(), coords: vec![0; K_RANK] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, n: i64) -> KClass {
        KClass {
            chern: self.chern.scale(&rat(n)),
            coords: self.coords.iter().map(|c| c * n).collect(),
        }
    }

    /// Class of `X[n]`.
    pub fn shifted(&self, n: i64) -> KClass {
        if n.rem_euclid(2) == 0 {
            self.clone()
        } else {
            -self
        }
    }

    pub fn rank(&self) -> &Rational {
        self.chern.rank()
    }
}

impl Add for &KClass {
    type Output = KClass;
    fn add(self, o: &KClass) -> KClass {
        KClass {
            chern: &self.chern + &o.chern,
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &KClass {
    type Output = KClass;
    fn sub(self, o: &KClass) -> KClass {
        self + &(-o)
    }
}

impl Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        self.scale(-1)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl Serialize for KClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// Euler form and class computations for one geometry.
#[derive(Debug, Clone)]
pub struct NumericalK {
    geometry: GeometryConfig,
    /// Rows: Chern characters of the basis bundles.
    basis_chern: RatMatrix,
    inverse: RatMatrix,
    todd: ChowElement,
    /// `chi(e_i, e_j)` on the bundle basis.
    gram: IntMatrix,
}

impl NumericalK {
    pub fn new(geometry: GeometryConfig) -> Self {
        let basis_chern: RatMatrix = bundle_basis()
            .iter()
            .map(|&d| geometry.chern_character(d).coords().to_vec())
            .collect();
        let inverse = rational::inverse(&basis_chern)
            .expect("Chern characters of the line-bundle basis are linearly independent");
        let mut k = NumericalK { geometry, basis_chern, inverse, todd: geometry.todd_class(), gram: Vec::new() };
        let basis: Vec<KClass> = bundle_basis().iter().map(|&d| k.line_class(d)).collect();
        k.gram = basis
            .iter()
            .map(|x| basis.iter().map(|y| k.euler_pairing_hrr(x, y).expect("line bundle pairings are integral")).collect())
            .collect();
        k
    }

    pub fn geometry(&self) -> &GeometryConfig {
        &self.geometry
    }

    /// Validates integrality against the bundle basis.
    pub fn from_chern(&self, chern: ChowElement) -> Result<KClass, LatticeError> {
        let coords = rational::row_times(&chern.coords(), &self.inverse);
        let coords = coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64().ok_or(LatticeError::Overflow)
                } else {
                    Err(LatticeError::NotIntegral(chern.to_string()))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(KClass { chern, coords })
    }

    pub fn from_coords(&self, coords: &[i64]) -> Result<KClass, LatticeError> {
        if coords.len() != K_RANK {
            return Err(LatticeError::DimensionMismatch { expected: K_RANK, got: coords.len() });
        }
        let q: Vec<Rational> = coords.iter().map(|&c| rat(c)).collect();
        let ch = rational::row_times(&q, &self.basis_chern);
        Ok(KClass { chern: ChowElement::from_coords(ch.try_into().expect("eight coordinates")), coords: coords.to_vec() })
    }

    pub fn line_class(&self, d: DivisorClass) -> KClass {
        self.from_chern(self.geometry.chern_character(d))
            .expect("line bundle classes are integral")
    }

    /// `[eps_* O_E(beta)] = [O(beta)] - [O(beta - E)]`.
    pub fn e_class(&self, beta: SurfaceDivisor) -> KClass {
        let lifted = beta.pullback();
        &self.line_class(lifted) - &self.line_class(lifted - self.geometry.exceptional_divisor_class())
    }

    pub fn atom_class(&self, atom: &Atom) -> KClass {
        match *atom {
            Atom::Line(d) => self.line_class(d),
            Atom::OnE(beta) => self.e_class(beta),
        }
    }

    pub fn euler_pairing(&self, x: &KClass, y: &KClass) -> Result<i64, LatticeError> {
        let mut chi: i64 = 0;
        for (i, &a) in x.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.coords.iter().enumerate() {
                let term = a.checked_mul(self.gram[i][j]).and_then(|t| t.checked_mul(b)).ok_or(LatticeError::Overflow)?;
                chi = chi.checked_add(term).ok_or(LatticeError::Overflow)?;
            }
        }
        Ok(chi)
    }

    /// The same pairing by Hirzebruch-Riemann-Roch on Chern characters.
    pub fn euler_pairing_hrr(&self, x: &KClass, y: &KClass) -> Result<i64, LatticeError> {
        let g = &self.geometry;
        let chi = crate::geometry::degree(&g.chow_mul(&g.chow_mul(&x.chern.dual(), &y.chern), &self.todd));
        if !chi.is_integer() {
            return Err(LatticeError::NotIntegral(format!("chi = {chi}")));
        }
        chi.to_integer().to_i64().ok_or(LatticeError::Overflow)
    }

    /// Class of `S(x) = x (x) omega [3]`.
    pub fn serre_class(&self, x: &KClass) -> KClass {
        let omega = self.geometry.chern_character(self.geometry.canonical_class());
        let twisted = self.geometry.chow_mul(&x.chern, &omega);
        -&self.from_chern(twisted).expect("twisting by a line bundle preserves integrality")
    }

    fn check_exceptional(&self, e: &KClass) -> Result<(), LatticeError> {
        let chi = self.euler_pairing(e, e)?;
        if chi != 1 {
            return Err(LatticeError::NotExceptional(chi));
        }
        Ok(())
    }

    /// `x - chi(e, x) e`.
    pub fn mutate_class_left(&self, e: &KClass, x: &KClass) -> Result<KClass, LatticeError> {
        self.check_exceptional(e)?;
        Ok(x - &e.scale(self.euler_pairing(e, x)?))
    }

    /// `x - chi(x, e) e`.
    pub fn mutate_class_right(&self, x: &KClass, e: &KClass) -> Result<KClass, LatticeError> {
        self.check_exceptional(e)?;
        Ok(x - &e.scale(self.euler_pairing(x, e)?))
    }

    pub fn gram_matrix(&self, classes: &[KClass]) -> Result<IntMatrix, LatticeError> {
        classes
            .iter()
            .map(|x| classes.iter().map(|y| self.euler_pairing(x, y)).collect())
            .collect()
    }
}

/// A sublattice of `Z^n`, stored with its Hermite normal form.
#[derive(Debug, Clone)]
pub struct IntegerLattice {
    ambient: usize,
    generators: IntMatrix,
    hnf: IntMatrix,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    pub fn from_rows(ambient: usize, generators: IntMatrix) -> Result<Self, LatticeError> {
        if let Some(bad) = generators.iter().find(|r| r.len() != ambient) {
            return Err(LatticeError::DimensionMismatch { expected: ambient, got: bad.len() });
        }
        let h = hermite(&generators, ambient)?;
        let hnf = h.form[..h.rank].to_vec();
        Ok(IntegerLattice { ambient, generators, hnf, pivots: h.pivots })
    }

    pub fn from_classes(classes: &[KClass]) -> Result<Self, LatticeError> {
        Self::from_rows(K_RANK, classes.iter().map(|c| c.coords.clone()).collect())
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_rows(ambient, normal_form::identity(ambient)).expect("identity is well formed")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn hnf(&self) -> &IntMatrix {
        &self.hnf
    }

    /// Coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn hnf_coordinates(&self, v: &[i64]) -> Result<Vec<i64>, LatticeError> {
        if v.len() != self.ambient {
            return Err(LatticeError::DimensionMismatch { expected: self.ambient, got: v.len() });
        }
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.hnf.len());
        for (row, &p) in self.hnf.iter().zip(&self.pivots) {
            if rest[p] % row[p] != 0 {
                return Err(LatticeError::NotAMember);
            }
            let c = rest[p] / row[p];
            for (r, x) in rest.iter_mut().zip(row) {
                *r = r
                    .checked_sub(c.checked_mul(*x).ok_or(LatticeError::Overflow)?)
                    .ok_or(LatticeError::Overflow)?;
            }
            coeffs.push(c);
        }
        if rest.iter().any(|&x| x != 0) {
            return Err(LatticeError::NotAMember);
        }
        Ok(coeffs)
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool, LatticeError> {
        match self.hnf_coordinates(v) {
            Ok(_) => Ok(true),
            Err(LatticeError::NotAMember) => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> Result<bool, LatticeError> {
        if other.ambient != self.ambient {
            return Err(LatticeError::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        for r in &other.hnf {
            if !self.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of `v` against the generators, which must be independent.
    pub fn coordinates(&self, v: &[i64]) -> Result<Vec<i64>, LatticeError> {
        let h = hermite(&self.generators, self.ambient)?;
        if h.rank != self.generators.len() {
            return Err(LatticeError::DimensionMismatch { expected: self.generators.len(), got: h.rank });
        }
        let d = self.hnf_coordinates(v)?;
        // v = d . hnf = d . (U gens)
        let u = h.transform[..h.rank].to_vec();
        vec_mat(&d, &u, self.generators.len())
    }

    /// Whether the lattice is saturated in its ambient space.
    pub fn is_primitive(&self) -> Result<bool, LatticeError> {
        let s = smith(&self.hnf, self.ambient)?;
        Ok(s.diagonal.iter().all(|&d| d == 1))
    }
}

impl PartialEq for IntegerLattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.hnf == other.hnf
    }
}

impl Eq for IntegerLattice {}

impl Serialize for IntegerLattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.hnf.serialize(s)
    }
}

pub fn lattice_from(classes: &[KClass]) -> Result<IntegerLattice, LatticeError> {
    IntegerLattice::from_classes(classes)
}

pub fn lattice_equal(a: &IntegerLattice, b: &IntegerLattice) -> Result<bool, LatticeError> {
    if a.ambient != b.ambient {
        return Err(LatticeError::DimensionMismatch { expected: a.ambient, got: b.ambient });
    }
    Ok(a == b)
}

pub fn lattice_member(v: &[i64], l: &IntegerLattice) -> Result<bool, LatticeError> {
    l.contains(v)
}

/// `source / kernel` through a Smith normal form.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeQuotient {
    #[serde(skip)]
    pub source: IntegerLattice,
    #[serde(skip)]
    pub kernel: IntegerLattice,
    pub rank: usize,
    pub torsion: Vec<i64>,
    /// Maps HNF coordinates of `source` to coordinates of the free part.
    pub projection: IntMatrix,
}

impl LatticeQuotient {
    /// Image of an ambient vector of `source` in the free part of the quotient.
    pub fn project(&self, v: &[i64]) -> Result<Vec<i64>, LatticeError> {
        let c = self.source.hnf_coordinates(v)?;
        vec_mat(&c, &self.projection, self.rank)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

pub fn quotient(source: &IntegerLattice, kernel: &IntegerLattice) -> Result<LatticeQuotient, LatticeError> {
    if !source.contains_lattice(kernel)? {
        return Err(LatticeError::NotContained);
    }
    let r = source.rank();
    let rel: IntMatrix = kernel
        .hnf()
        .iter()
        .map(|row| source.hnf_coordinates(row))
        .collect::<Result<_, _>>()?;
    let (diagonal, right) = if rel.is_empty() {
        (Vec::new(), normal_form::identity(r))
    } else {
        let s = smith(&rel, r)?;
        (s.diagonal, s.right)
    };
    let s = diagonal.len();
    let projection: IntMatrix = right.iter().map(|row| row[s..].to_vec()).collect();
    Ok(LatticeQuotient {
        source: source.clone(),
        kernel: kernel.clone(),
        rank: r - s,
        torsion: diagonal.into_iter().filter(|&d| d != 1).collect(),
        projection,
    })
}

pub fn is_unit(x: &Rational) -> bool {
    x.is_one() || (-x).is_one()
}
