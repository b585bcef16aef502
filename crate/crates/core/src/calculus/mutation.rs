//! Left and right mutations through an exceptional object.
//!
//! Rewrites are tried in a fixed order: orthogonality, mutation of an object
//! through itself, the geometric rewrites for line bundles, functoriality over
//! shifts, sums and cones, and finally the defining (co)evaluation cone.

use crate::error::{CalculusError, Witness};
use crate::geometry::{DivisorClass, GradedDims};

use super::object::{Atom, Object, Provenance};
use super::{Calculus, RHomResult};

impl Calculus {
    fn require_exceptional(&self, e: &Object) -> Result<(), CalculusError> {
        let r = self.rhom(e, e);
        if !r.is_determined() {
            return Err(CalculusError::Ambiguous(Witness(r)));
        }
        if !r.is(&GradedDims::concentrated(0, 1)) {
            return Err(CalculusError::NotExceptional(Witness(r)));
        }
        Ok(())
    }

    fn determined(&self, x: &Object, y: &Object) -> Result<GradedDims, CalculusError> {
        let r: RHomResult = self.rhom(x, y);
        r.dims.clone().ok_or(CalculusError::Ambiguous(Witness(r)))
    }

    /// `L_e x`, the cone of the evaluation `RHom(e, x) (x) e -> x`.
    pub fn mutate_left(&self, e: &Object, x: &Object) -> Result<Object, CalculusError> {
        let e = e.normalize();
        let e = e.unshift().0;
        self.require_exceptional(e)?;
        Ok(self.left(e, &x.normalize())?.normalize())
    }

    /// `R_e x`, shifted cone of the coevaluation `x -> RHom(x, e)^* (x) e`.
    pub fn mutate_right(&self, x: &Object, e: &Object) -> Result<Object, CalculusError> {
        let e = e.normalize();
        let e = e.unshift().0;
        self.require_exceptional(e)?;
        Ok(self.right(&x.normalize(), e)?.normalize())
    }

    fn left(&self, e: &Object, x: &Object) -> Result<Object, CalculusError> {
        let hom = self.determined(e, x)?;
        let out = self.left_with(e, x, &hom)?;
        let (x0, n) = x.unshift();
        if !hom.is_zero() && n == 0 && x0 != e {
            let copies = hom
                .iter()
                .flat_map(|(d, n)| std::iter::repeat_n(e.clone().shift(-d), n as usize))
                .collect();
            self.register_presentation(&out, Object::cone(Object::sum(copies), x0.clone(), Provenance::Evaluation));
        }
        Ok(out)
    }

    fn right(&self, x: &Object, e: &Object) -> Result<Object, CalculusError> {
        let hom = self.determined(x, e)?;
        let out = self.right_with(x, e, &hom)?;
        let (x0, n) = x.unshift();
        if !hom.is_zero() && n == 0 && x0 != e {
            let copies = hom
                .iter()
                .flat_map(|(d, n)| std::iter::repeat_n(e.clone().shift(d), n as usize))
                .collect();
            let generic = Object::cone(x0.clone(), Object::sum(copies), Provenance::Evaluation).shift(-1);
            self.register_presentation(&out, generic);
        }
        Ok(out)
    }

    fn left_with(&self, e: &Object, x: &Object, hom: &GradedDims) -> Result<Object, CalculusError> {
        let hom = hom.clone();
        if hom.is_zero() {
            return Ok(x.clone());
        }
        let (x0, n) = x.unshift();
        if x0 == e {
            return Ok(Object::Zero);
        }
        if n != 0 {
            return Ok(self.left(e, x0)?.shift(n));
        }
        if let Some(r) = self.geometric_left(e, x0, &hom)? {
            return Ok(r);
        }
        match x0 {
            Object::Sum(xs) => Ok(Object::sum(xs.iter().map(|y| self.left(e, y)).collect::<Result<_, _>>()?)),
            Object::Cone { source, target, provenance } => {
                Ok(Object::cone(self.left(e, source)?, self.left(e, target)?, *provenance))
            }
            _ => {
                let copies = hom
                    .iter()
                    .flat_map(|(d, n)| std::iter::repeat_n(e.clone().shift(-d), n as usize))
                    .collect();
                Ok(Object::cone(Object::sum(copies), x0.clone(), Provenance::Evaluation))
            }
        }
    }

    fn right_with(&self, x: &Object, e: &Object, hom: &GradedDims) -> Result<Object, CalculusError> {
        let hom = hom.clone();
        if hom.is_zero() {
            return Ok(x.clone());
        }
        let (x0, n) = x.unshift();
        if x0 == e {
            return Ok(Object::Zero);
        }
        if n != 0 {
            return Ok(self.right(x0, e)?.shift(n));
        }
        match x0 {
            Object::Sum(xs) => Ok(Object::sum(xs.iter().map(|y| self.right(y, e)).collect::<Result<_, _>>()?)),
            Object::Cone { source, target, provenance } => {
                Ok(Object::cone(self.right(source, e)?, self.right(target, e)?, *provenance))
            }
            _ => {
                let copies = hom
                    .iter()
                    .flat_map(|(d, n)| std::iter::repeat_n(e.clone().shift(d), n as usize))
                    .collect();
                Ok(Object::cone(x0.clone(), Object::sum(copies), Provenance::Evaluation).shift(-1))
            }
        }
    }

    /// Closed forms for mutating line bundles and restrictions through a line bundle.
    fn geometric_left(&self, e: &Object, x: &Object, hom: &GradedDims) -> Result<Option<Object>, CalculusError> {
        let Object::Atom(Atom::Line(d)) = *e else {
            return Ok(None);
        };
        let g = self.geometry();
        let big_e = g.exceptional_divisor_class();
        let one = GradedDims::concentrated(0, 1);
        let two = GradedDims::concentrated(0, 2);
        match *x {
            // 0 -> O(D-E) -> O(D) -> O_E(D) -> 0
            Object::Atom(Atom::OnE(beta)) if beta == g.restrict_to_e(d) && *hom == one => {
                Ok(Some(Object::line(d - big_e).shift(1)))
            }
            Object::Atom(Atom::Line(x)) => {
                if x == d + big_e && *hom == one {
                    return Ok(Some(Object::on_e(g.restrict_to_e(x))));
                }
                for fiber in [DivisorClass::SMALL_H, DivisorClass::SMALL_K] {
                    // 0 -> O(D-f) -> O(D)^2 -> O(D+f) -> 0
                    if x == d + fiber && *hom == two {
                        return Ok(Some(Object::line(d - fiber).shift(1)));
                    }
                    // O(D+f) -> O(D+f+E) -> O_E(D+f+E), with the first term mutating as above.
                    if x == d + fiber + big_e {
                        let restricted = Object::on_e(g.restrict_to_e(x));
                        if self.determined(e, &Object::line(d + fiber))? == two
                            && self.determined(e, &restricted)?.is_zero()
                        {
                            return Ok(Some(Object::cone(
                                restricted.shift(-1),
                                Object::line(d - fiber).shift(1),
                                Provenance::Restriction,
                            )));
                        }
                    }
                }
                Ok(None)
            }
            _ => Ok(None),
        }
    }
}
