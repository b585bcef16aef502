//! Finite-length hearts presented by simples, tilts, central charges and the
//! axioms of weak and Bridgeland stability conditions, and descent along a
//! lattice quotient.
//!
//! Coordinates are "simple coordinates": the class of `S_i` is the `i`-th
//! unit vector. Indices in errors are 1-based, indices in reports 0-based.

mod charge;
mod descent;

use serde::{Serialize, Serializer};

use crate::calculus::{Calculus, Object, Provenance, RHomResult};
use crate::error::StabilityError;
use crate::geometry::rat;
use crate::lattice::rational::{rank, RatMatrix};
use crate::lattice::KClass;
use crate::parallel;

pub use charge::{
    check_support, ci, cq, hn_filtration, in_allowed_region, phase_exceeds, slope, stability_function, CentralCharge,
    ComplexQ, Mode, QuadraticForm, Slope, StabilityFunctionReport, SupportReport,
};
pub use descent::{
    charge_kernel, descend, induced_charge, Descent, DescentReport, DescendedHeart, GeneratorVerdict, InducedVerdict,
    KernelVerdict, QuotientVerdict,
};

fn object_text<S: Serializer>(o: &Object, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&o.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Simple {
    pub label: String,
    #[serde(serialize_with = "object_text")]
    pub object: Object,
    pub class: KClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum HeartProvenance {
    ExtExceptional,
    /// Tilt of `parent` at simple `index`; `multiplicities[i] = dim Ext^1(S_i, S_index)`.
    TiltOf { parent: Vec<String>, index: usize, multiplicities: Vec<u64> },
}

/// A heart generated by finitely many simples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Heart {
    pub simples: Vec<Simple>,
    /// `hom_table[i][j] = RHom(S_i, S_j)`.
    pub hom_table: Vec<Vec<RHomResult>>,
    pub provenance: HeartProvenance,
}

/// Anything whose simples have integer classes in a lattice `Z^rank`.
pub trait SimpleLattice {
    fn labels(&self) -> Vec<String>;
    fn simple_vectors(&self) -> Vec<Vec<i64>>;
    fn lattice_rank(&self) -> usize;
}

impl SimpleLattice for Heart {
    fn labels(&self) -> Vec<String> {
        self.simples.iter().map(|s| s.label.clone()).collect()
    }

    fn simple_vectors(&self) -> Vec<Vec<i64>> {
        let n = self.simples.len();
        (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
    }

    fn lattice_rank(&self) -> usize {
        self.simples.len()
    }
}

impl Heart {
    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn classes(&self) -> Vec<KClass> {
        self.simples.iter().map(|s| s.class.clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.simples.iter().position(|s| s.label == label)
    }
}

fn hom_table(calc: &Calculus, objects: &[Object]) -> Vec<Vec<RHomResult>> {
    let pairs: Vec<(usize, usize)> = (0..objects.len()).flat_map(|i| (0..objects.len()).map(move |j| (i, j))).collect();
    let flat = parallel::map(&pairs, |&(i, j)| calc.rhom(&objects[i], &objects[j]));
    flat.chunks(objects.len().max(1)).map(<[RHomResult]>::to_vec).collect()
}

fn independent(classes: &[KClass]) -> bool {
    let m: RatMatrix = classes.iter().map(|c| c.coords.iter().map(|&x| rat(x)).collect()).collect();
    let cols = classes.first().map_or(0, |c| c.coords.len());
    rank(&m, cols) == classes.len()
}

fn build(calc: &Calculus, simples: Vec<(String, Object)>) -> Result<(Vec<Simple>, Vec<Vec<RHomResult>>), StabilityError> {
    let simples: Vec<Simple> = simples
        .into_iter()
        .map(|(label, object)| {
            let object = object.normalize();
            let class = calc.class_of(&object);
            Simple { label, object, class }
        })
        .collect();
    let classes: Vec<KClass> = simples.iter().map(|s| s.class.clone()).collect();
    if !independent(&classes) {
        return Err(StabilityError::DependentClasses);
    }
    let objects: Vec<Object> = simples.iter().map(|s| s.object.clone()).collect();
    Ok((simples, hom_table(calc, &objects)))
}

/// The heart `[E_0, ..., E_n]` of an Ext-exceptional collection.
pub fn make_heart(calc: &Calculus, simples: Vec<(String, Object)>) -> Result<Heart, StabilityError> {
    if simples.is_empty() {
        return Err(StabilityError::Empty);
    }
    let (simples, hom_table) = build(calc, simples)?;
    for (i, row) in hom_table.iter().enumerate() {
        for (j, r) in row.iter().enumerate() {
            let dims = r.dims.as_ref().ok_or(StabilityError::Ambiguous(i + 1, j + 1))?;
            if i == j {
                if *dims != crate::geometry::GradedDims::concentrated(0, 1) {
                    return Err(StabilityError::NotExceptional(i + 1));
                }
            } else if let Some((degree, _)) = dims.iter().find(|&(d, _)| d <= 0) {
                return Err(StabilityError::NotExtExceptional {
                    source_label: simples[i].label.clone(),
                    target_label: simples[j].label.clone(),
                    first: i + 1,
                    second: j + 1,
                    degree,
                });
            }
        }
    }
    Ok(Heart { simples, hom_table, provenance: HeartProvenance::ExtExceptional })
}

/// `X[k]` relabelled: a trailing `[m]` becomes `[m+k]`, and `[0]` disappears.
pub fn shift_label(label: &str, k: i64) -> String {
    let (base, m) = match label.strip_suffix(']').and_then(|s| s.rsplit_once('[')) {
        Some((b, n)) => match n.parse::<i64>() {
            Ok(m) => (b, m),
            Err(_) => (label, 0),
        },
        None => (label, 0),
    };
    match m + k {
        0 => base.to_string(),
        t => format!("{base}[{t}]"),
    }
}

/// Tilt at the simple `S_j`, for the torsion pair `(⊥S_j, [S_j])`.
///
/// New simples, in order: `S_j[1]`, then for each other `S_i` the universal
/// extension `S_j^d -> U_i -> S_i` with `d = dim Ext^1(S_i, S_j)`, which is
/// `S_i` itself when `d = 0`.
pub fn tilt_at(calc: &Calculus, heart: &Heart, j: usize) -> Result<Heart, StabilityError> {
    let sj = heart.simples.get(j).ok_or(StabilityError::BadIndex(j + 1))?;
    let mut multiplicities = vec![0; heart.len()];
    for (i, row) in heart.hom_table.iter().enumerate() {
        if i == j {
            continue;
        }
        let dims = row[j].dims.as_ref().ok_or(StabilityError::Ambiguous(i + 1, j + 1))?;
        if let Some((degree, _)) = dims.iter().find(|&(d, _)| d <= 0) {
            return Err(StabilityError::TiltPrecondition { from: i + 1, at: j + 1, degree });
        }
        multiplicities[i] = dims.dim(1);
    }
    let mut simples = vec![(shift_label(&sj.label, 1), sj.object.clone().shift(1))];
    for (i, si) in heart.simples.iter().enumerate() {
        if i == j {
            continue;
        }
        let d = multiplicities[i];
        if d == 0 {
            simples.push((si.label.clone(), si.object.clone()));
            continue;
        }
        let copies = Object::sum(vec![sj.object.clone(); d as usize]);
        let ext = Object::cone(si.object.clone().shift(-1), copies, Provenance::UniversalExtension);
        simples.push((format!("ext({}, {})", si.label, sj.label), ext));
    }
    let (simples, hom_table) = build(calc, simples)?;
    Ok(Heart {
        simples,
        hom_table,
        provenance: HeartProvenance::TiltOf { parent: heart.labels(), index: j, multiplicities },
    })
}

/// Stability-function axiom for `z`, given on the lattice basis of `heart`.
pub fn check_stability_function<H: SimpleLattice + ?Sized>(
    heart: &H,
    z: &CentralCharge,
    mode: Mode,
) -> Result<StabilityFunctionReport, StabilityError> {
    if z.len() != heart.lattice_rank() {
        return Err(StabilityError::ChargeArity { expected: heart.lattice_rank(), got: z.len() });
    }
    let vectors = heart.simple_vectors();
    let charges: Vec<ComplexQ> = vectors.iter().map(|v| z.eval(v)).collect();
    Ok(stability_function(&charges, &vectors, mode))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HnVerdict {
    pub holds: bool,
    pub finite_length: bool,
    pub simples: usize,
    pub note: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AxiomReport {
    pub mode: Mode,
    pub holds: bool,
    /// Axiom (a).
    pub stability_function: StabilityFunctionReport,
    /// Axiom (b).
    pub hn_property: HnVerdict,
    /// Axiom (c).
    pub support: SupportReport,
    /// Rank of the lattice on which support was tested.
    pub support_lattice_rank: usize,
}

/// Axioms (a)–(c). In strong mode `q` lives on the heart's lattice; in weak
/// mode on the quotient by `ker Z`, through which the charge factors.
pub fn check_weak_stability_condition<H: SimpleLattice + ?Sized>(
    heart: &H,
    z: &CentralCharge,
    q: &QuadraticForm,
    mode: Mode,
) -> Result<AxiomReport, StabilityError> {
    let a = check_stability_function(heart, z, mode)?;
    let vectors = heart.simple_vectors();
    let hn = HnVerdict {
        holds: true,
        finite_length: true,
        simples: vectors.len(),
        note: "automatic for a heart of finite length with finitely many simples",
    };
    let (support, rank) = match mode {
        Mode::Strong => (check_support(z, q, &vectors)?, heart.lattice_rank()),
        Mode::Weak => {
            let kernel = charge_kernel(z)?;
            let full = crate::lattice::IntegerLattice::full(heart.lattice_rank());
            let quot = crate::lattice::quotient(&full, &kernel)?;
            let induced = induced_charge(z, &quot)?.ok_or(StabilityError::Empty)?;
            let images: Vec<Vec<i64>> = vectors.iter().map(|v| quot.project(v)).collect::<Result<_, _>>()?;
            (check_support(&induced, q, &images)?, quot.rank)
        }
    };
    Ok(AxiomReport {
        mode,
        holds: a.holds && hn.holds && support.holds,
        stability_function: a,
        hn_property: hn,
        support,
        support_lattice_rank: rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_shift() {
        assert_eq!(shift_label("F[-2]", 1), "F[-1]");
        assert_eq!(shift_label("F[-1]", 1), "F");
        assert_eq!(shift_label("G", 1), "G[1]");
        assert_eq!(shift_label("x[a]", 2), "x[a][2]");
    }
}
