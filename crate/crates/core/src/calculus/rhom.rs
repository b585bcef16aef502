//! Graded `RHom` between formal objects.
//!
//! Values are tracked as degreewise intervals. Base cases between atoms are
//! exact; every cone contributes a long exact sequence whose connecting ranks
//! are pinned when one side vanishes, when the cone morphism is known to hit
//! an identity, or when it is an evaluation map against an exceptional object.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::geometry::{surface_cohomology, DivisorClass, GeometryConfig, GradedDims};

use super::object::{Atom, Object, Provenance};
use super::Calculus;

/// Degreewise lower and upper bounds on a graded dimension vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub lo: GradedDims,
    pub hi: GradedDims,
}

impl Bounds {
    pub fn exact(g: GradedDims) -> Self {
        Bounds { lo: g.clone(), hi: g }
    }

    pub fn zero() -> Self {
        Self::exact(GradedDims::zero())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact_at(&self, i: i64) -> Option<u64> {
        let lo = self.lo.dim(i);
        (lo == self.hi.dim(i)).then_some(lo)
    }

    pub fn shifted(&self, by: i64) -> Self {
        Bounds { lo: self.lo.shifted(by), hi: self.hi.shifted(by) }
    }

    /// Bounds on the dual `RHom` under `i -> n - i`.
    pub fn reflected(&self, n: i64) -> Self {
        Bounds { lo: self.lo.reflected(n), hi: self.hi.reflected(n) }
    }

    pub fn direct_sum(&self, o: &Bounds) -> Self {
        Bounds { lo: self.lo.direct_sum(&o.lo), hi: self.hi.direct_sum(&o.hi) }
    }

    /// Both bounds hold, so their intersection does.
    pub fn meet(&self, o: &Bounds) -> Self {
        let degrees: BTreeSet<i64> = self.hi.iter().chain(o.hi.iter()).map(|(d, _)| d).collect();
        let mut lo = GradedDims::zero();
        let mut hi = GradedDims::zero();
        for d in degrees {
            lo.add_at(d, self.lo.dim(d).max(o.lo.dim(d)));
            hi.add_at(d, self.hi.dim(d).min(o.hi.dim(d)));
        }
        Bounds { lo, hi }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RHomStatus {
    Determined,
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RHomResult {
    pub status: RHomStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<GradedDims>,
    pub euler: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<(GradedDims, GradedDims)>,
}

impl RHomResult {
    pub fn from_bounds(b: Bounds, euler: i64) -> Self {
        if b.is_exact() {
            RHomResult { status: RHomStatus::Determined, dims: Some(b.lo), euler, bounds: None }
        } else {
            RHomResult { status: RHomStatus::Ambiguous, dims: None, euler, bounds: Some((b.lo, b.hi)) }
        }
    }

    pub fn is_determined(&self) -> bool {
        self.status == RHomStatus::Determined
    }

    /// Determined and equal to `g`.
    pub fn is(&self, g: &GradedDims) -> bool {
        self.dims.as_ref() == Some(g)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.as_ref().is_some_and(GradedDims::is_zero)
    }
}

impl fmt::Display for RHomResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.dims, &self.bounds) {
            (Some(d), _) => write!(f, "{d}"),
            (None, Some((lo, hi))) => write!(f, "ambiguous (euler {}, between {lo} and {hi})", self.euler),
            (None, None) => write!(f, "ambiguous (euler {})", self.euler),
        }
    }
}

/// Known rank of the map `u^j -> v^j`, if any.
type RankRule<'a> = dyn Fn(i64, &Bounds, &Bounds) -> Option<u64> + 'a;

/// For an exact sequence `u^i -> v^i -> w^i -> u^{i+1} -> v^{i+1}`,
/// returns bounds on `w^i = coker(f_i) + ker(f_{i+1})`.
fn les(u: &Bounds, v: &Bounds, pinned: &RankRule<'_>) -> Bounds {
    let rank = |j: i64| -> (u64, u64) {
        let (uh, vh) = (u.hi.dim(j), v.hi.dim(j));
        let cap = uh.min(vh);
        if cap == 0 {
            return (0, 0);
        }
        match pinned(j, u, v) {
            Some(r) if r <= cap => (r, r),
            _ => (0, cap),
        }
    };
    let mut degrees: Vec<i64> = v.hi.iter().map(|(d, _)| d).chain(u.hi.iter().map(|(d, _)| d - 1)).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut lo = GradedDims::zero();
    let mut hi = GradedDims::zero();
    for i in degrees {
        let (rlo, rhi) = rank(i);
        let (coker_lo, coker_hi) = (v.lo.dim(i).saturating_sub(rhi), v.hi.dim(i) - rlo);
        let (slo, shi) = rank(i + 1);
        let (ker_lo, ker_hi) = (u.lo.dim(i + 1).saturating_sub(shi), u.hi.dim(i + 1) - slo);
        lo.add_at(i, coker_lo + ker_lo);
        hi.add_at(i, coker_hi + ker_hi);
    }
    Bounds { lo, hi }
}

impl Calculus {
    /// Graded `RHom(x, y)` with its Euler characteristic from classes.
    pub fn rhom(&self, x: &Object, y: &Object) -> RHomResult {
        let (x, y) = (x.normalize(), y.normalize());
        let euler = self
            .numerical()
            .euler_pairing(&self.class_of(&x), &self.class_of(&y))
            .expect("classes of formal objects are integral");
        let mut eval = Eval { calc: self, active: HashSet::new(), cut: false, dual_depth: 0 };
        match eval.bounds(&x, &y) {
            Some(b) => RHomResult::from_bounds(b, euler),
            None => RHomResult { status: RHomStatus::Ambiguous, dims: None, euler, bounds: None },
        }
    }
}

/// One top-level `RHom` evaluation. Pairs currently being evaluated are
/// tracked so that cyclic presentations yield no information instead of
/// recursing forever; results reached through such a cut are not memoized.
struct Eval<'a> {
    calc: &'a Calculus,
    active: HashSet<(Object, Object)>,
    cut: bool,
    /// Inside a Serre-dual evaluation: no further duals, nothing memoized.
    dual_depth: u32,
}

impl Eval<'_> {
    fn bounds(&mut self, x: &Object, y: &Object) -> Option<Bounds> {
        let key = (x.clone(), y.clone());
        if let Some(b) = self.calc.memo_get(&key) {
            return Some(b);
        }
        if self.active.contains(&key) {
            self.cut = true;
            return None;
        }
        self.active.insert(key.clone());
        let outer_cut = std::mem::replace(&mut self.cut, false);

        let mut best = self.structural(x, y);
        if !best.as_ref().is_some_and(Bounds::is_exact) {
            let alternatives: Vec<(Object, Object)> = self
                .calc
                .presentations_of(x)
                .into_iter()
                .map(|px| (px, y.clone()))
                .chain(self.calc.presentations_of(y).into_iter().map(|py| (x.clone(), py)))
                .collect();
            for (px, py) in alternatives {
                if let Some(b) = self.structural(&px, &py) {
                    best = Some(match best {
                        Some(cur) => cur.meet(&b),
                        None => b,
                    });
                    if best.as_ref().is_some_and(Bounds::is_exact) {
                        break;
                    }
                }
            }
        }

        if !best.as_ref().is_some_and(Bounds::is_exact) && self.dual_depth == 0 {
            self.dual_depth += 1;
            let g = self.calc.geometry();
            let sx = twist(g, x, g.canonical_class()).normalize();
            if let Some(b) = self.bounds(y, &sx) {
                let b = b.reflected(3);
                best = Some(match best {
                    Some(cur) => cur.meet(&b),
                    None => b,
                });
            }
            self.dual_depth -= 1;
        }

        self.active.remove(&key);
        if let (false, 0, Some(b)) = (self.cut, self.dual_depth, &best) {
            self.calc.memo_put(key, b.clone());
        }
        self.cut |= outer_cut;
        best
    }

    fn structural(&mut self, x: &Object, y: &Object) -> Option<Bounds> {
        Some(match (x, y) {
            (Object::Zero, _) | (_, Object::Zero) => Bounds::zero(),
            (Object::Shift(a, m), _) => self.bounds(a, y)?.shifted(*m),
            (_, Object::Shift(b, n)) => self.bounds(x, b)?.shifted(-*n),
            (Object::Sum(xs), _) => {
                let mut acc = Bounds::zero();
                for a in xs {
                    acc = acc.direct_sum(&self.bounds(a, y)?);
                }
                acc
            }
            (_, Object::Sum(ys)) => {
                let mut acc = Bounds::zero();
                for b in ys {
                    acc = acc.direct_sum(&self.bounds(x, b)?);
                }
                acc
            }
            (Object::Atom(a), Object::Atom(b)) => atom_bounds(self.calc.geometry(), *a, *b),
            (_, Object::Cone { source, target, provenance }) if !matches!(x, Object::Cone { .. }) => {
                self.covariant(x, source, target, *provenance)?
            }
            (Object::Cone { source, target, provenance }, _) if !matches!(y, Object::Cone { .. }) => {
                self.contravariant(source, target, *provenance, y)?
            }
            (
                Object::Cone { source: xs, target: xt, provenance: xp },
                Object::Cone { source: ys, target: yt, provenance: yp },
            ) => {
                let first = self.contravariant(xs, xt, *xp, y);
                if first.as_ref().is_some_and(Bounds::is_exact) {
                    return first;
                }
                match (first, self.covariant(x, ys, yt, *yp)) {
                    (Some(a), Some(b)) => a.meet(&b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => return None,
                }
            }
            _ => unreachable!("all object shapes are covered"),
        })
    }

    /// `RHom(x, Cone(a -> b))` from `RHom(x, a) -> RHom(x, b)`.
    fn covariant(&mut self, x: &Object, a: &Object, b: &Object, prov: Provenance) -> Option<Bounds> {
        let u = self.bounds(x, a)?;
        let v = self.bounds(x, b)?;
        let evaluation_iso = prov == Provenance::Evaluation && self.copies_of_exceptional(a, x);
        let (a0, t) = a.unshift();
        let identity_degree = (prov != Provenance::Unspecified && a0 == x).then_some(-t);
        Some(les(&u, &v, &pin(evaluation_iso, identity_degree)))
    }

    /// `RHom(Cone(a -> b), y)` from `RHom(b, y) -> RHom(a, y)`.
    fn contravariant(&mut self, a: &Object, b: &Object, prov: Provenance, y: &Object) -> Option<Bounds> {
        let u = self.bounds(b, y)?;
        let v = self.bounds(a, y)?;
        let evaluation_iso = prov == Provenance::Evaluation && self.copies_of_exceptional(b, y);
        let (b0, s) = b.unshift();
        let identity_degree = (prov != Provenance::Unspecified && b0 == y).then_some(s);
        // Hom^i(Cone, y) = ker(f_i) + coker(f_{i-1}): the covariant shape moved up by one.
        Some(les(&u, &v, &pin(evaluation_iso, identity_degree)).shifted(1))
    }

    /// Whether `parts` is a direct sum of shifts of `e`, with `e` exceptional.
    fn copies_of_exceptional(&mut self, parts: &Object, e: &Object) -> bool {
        let summands: Vec<&Object> = match parts {
            Object::Sum(xs) => xs.iter().collect(),
            other => vec![other],
        };
        summands.iter().all(|s| s.unshift().0 == e)
            && self.bounds(e, e) == Some(Bounds::exact(GradedDims::concentrated(0, 1)))
    }
}

/// Rank of the cone morphism at a degree, when it is known: an isomorphism for
/// evaluation maps against an exceptional object, and rank one where the
/// morphism is the image of an identity landing in a one-dimensional space.
fn pin(evaluation_iso: bool, identity_degree: Option<i64>) -> impl Fn(i64, &Bounds, &Bounds) -> Option<u64> {
    move |j, u, v| {
        if evaluation_iso {
            let (uj, vj) = (u.exact_at(j)?, v.exact_at(j)?);
            return (uj == vj).then_some(uj);
        }
        (identity_degree == Some(j) && v.exact_at(j) == Some(1)).then_some(1)
    }
}

/// `x ⊗ O(d)`; tensoring preserves every cone morphism.
fn twist(g: &GeometryConfig, x: &Object, d: DivisorClass) -> Object {
    match x {
        Object::Zero => Object::Zero,
        Object::Atom(Atom::Line(e)) => Object::Atom(Atom::Line(*e + d)),
        Object::Atom(Atom::OnE(beta)) => Object::Atom(Atom::OnE(*beta + g.restrict_to_e(d))),
        Object::Shift(a, n) => Object::Shift(Box::new(twist(g, a, d)), *n),
        Object::Sum(xs) => Object::Sum(xs.iter().map(|a| twist(g, a, d)).collect()),
        Object::Cone { source, target, provenance } => Object::Cone {
            source: Box::new(twist(g, source, d)),
            target: Box::new(twist(g, target, d)),
            provenance: *provenance,
        },
    }
}

fn atom_bounds(g: &GeometryConfig, a: Atom, b: Atom) -> Bounds {
    match (a, b) {
        (Atom::Line(d1), Atom::Line(d2)) => Bounds::exact(g.threefold_cohomology(d2 - d1)),
        (Atom::Line(d), Atom::OnE(beta)) => Bounds::exact(surface_cohomology(beta - g.restrict_to_e(d))),
        (Atom::OnE(beta), Atom::Line(d)) => {
            let twist = beta + g.restrict_to_e(g.canonical_class()) - g.restrict_to_e(d);
            Bounds::exact(surface_cohomology(twist).reflected(3))
        }
        (Atom::OnE(beta), Atom::OnE(beta2)) => {
            // eps^* eps_* O(beta) has O(beta) in degree 0 and O(beta - N) in degree -1:
            // q^{i-1} -> p^i -> Hom^i -> q^i -> p^{i+1}.
            let diff = beta2 - beta;
            let p = Bounds::exact(surface_cohomology(diff));
            let q = Bounds::exact(surface_cohomology(diff + g.normal_twist()).shifted(1));
            les(&q.shifted(1), &p, &|_, _, _| None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(pairs: &[(i64, u64)]) -> GradedDims {
        GradedDims::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn les_split_and_ambiguous() {
        let u = Bounds::exact(g(&[(2, 1)]));
        let v = Bounds::exact(g(&[(0, 1)]));
        assert_eq!(les(&u, &v, &|_, _, _| None), Bounds::exact(g(&[(0, 1), (1, 1)])));
        let u = Bounds::exact(g(&[(0, 1)]));
        let amb = les(&u, &v, &|_, _, _| None);
        assert_eq!(amb.lo, g(&[]));
        assert_eq!(amb.hi, g(&[(-1, 1), (0, 1)]));
        assert_eq!(les(&u, &v, &|_, _, _| Some(1)), Bounds::zero());
    }

    #[test]
    fn meet_of_intervals() {
        let a = Bounds { lo: g(&[]), hi: g(&[(0, 2), (1, 1)]) };
        let b = Bounds { lo: g(&[(0, 1)]), hi: g(&[(0, 1), (1, 3)]) };
        assert_eq!(a.meet(&b), Bounds { lo: g(&[(0, 1)]), hi: g(&[(0, 1), (1, 1)]) });
    }
}
