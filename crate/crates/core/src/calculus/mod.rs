//! Formal objects in the derived category of the threefold: parsing,
//! elaboration of mutations, graded `RHom`, and the usual predicates.

mod mutation;
pub mod object;
pub mod parser;
mod predicates;
mod rhom;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, RwLock};

use crate::error::CalculusError;
use crate::geometry::{GeometryConfig, SurfaceDivisor};
use crate::lattice::{bundle_basis, KClass, NumericalK};

pub use object::{Atom, Expr, Object, Provenance};
pub use parser::{is_identifier, parse_expr};
pub use predicates::{ExtExceptionalReport, ExtViolation, SemiorthogonalReport, Violation};
pub use rhom::{Bounds, RHomResult, RHomStatus};

/// Evaluation context: geometry, classes, named objects, known alternative
/// presentations of objects, and an `RHom` memo.
///
/// Every mutation records its defining (co)evaluation cone as a presentation
/// of the rewritten result; `RHom` intersects the bounds obtained from all
/// presentations of its arguments.
#[derive(Debug)]
pub struct Calculus {
    geometry: GeometryConfig,
    numerical: NumericalK,
    bindings: BTreeMap<String, Object>,
    presentations: RwLock<HashMap<Object, Vec<Object>>>,
    memo: Mutex<HashMap<(Object, Object), Bounds>>,
    atom_classes: RwLock<HashMap<Atom, KClass>>,
}

/// Clones share bindings and presentations but start with an empty memo.
impl Clone for Calculus {
    fn clone(&self) -> Self {
        let presentations = self.presentations.read().map(|p| p.clone()).unwrap_or_default();
        Calculus {
            geometry: self.geometry,
            numerical: self.numerical.clone(),
            bindings: self.bindings.clone(),
            presentations: RwLock::new(presentations),
            memo: Mutex::new(HashMap::new()),
            atom_classes: RwLock::new(self.atom_classes.read().map(|c| c.clone()).unwrap_or_default()),
        }
    }
}

impl Calculus {
    pub fn new(geometry: GeometryConfig) -> Self {
        Calculus {
            geometry,
            numerical: NumericalK::new(geometry),
            bindings: BTreeMap::new(),
            presentations: RwLock::new(HashMap::new()),
            memo: Mutex::new(HashMap::new()),
            atom_classes: RwLock::new(HashMap::new()),
        }
    }

    pub fn geometry(&self) -> &GeometryConfig {
        &self.geometry
    }

    pub fn numerical(&self) -> &NumericalK {
        &self.numerical
    }

    pub fn bindings(&self) -> &BTreeMap<String, Object> {
        &self.bindings
    }

    pub fn lookup(&self, name: &str) -> Result<&Object, CalculusError> {
        self.bindings.get(name).ok_or_else(|| CalculusError::UnknownName(name.to_string()))
    }

    /// Parses, elaborates and binds `text` under `name`; returns the object.
    pub fn define(&mut self, name: &str, text: &str) -> Result<Object, CalculusError> {
        let obj = self.parse(text)?;
        self.bindings.insert(name.to_string(), obj.clone());
        Ok(obj)
    }

    pub fn parse(&self, text: &str) -> Result<Object, CalculusError> {
        self.elaborate(&parse_expr(text)?)
    }

    /// Replaces names by their bindings and mutations by cones.
    pub fn elaborate(&self, e: &Expr) -> Result<Object, CalculusError> {
        Ok(match e {
            Expr::Zero => Object::Zero,
            Expr::Atom(a) => Object::Atom(*a),
            Expr::Name(n) => self.lookup(n)?.clone(),
            Expr::Shift(x, n) => self.elaborate(x)?.shift(*n),
            Expr::Sum(xs) => Object::sum(xs.iter().map(|x| self.elaborate(x)).collect::<Result<_, _>>()?),
            Expr::Cone { source, target, provenance } => {
                Object::cone(self.elaborate(source)?, self.elaborate(target)?, *provenance)
            }
            Expr::Left(ex, x) => self.mutate_left(&self.elaborate(ex)?, &self.elaborate(x)?)?,
            Expr::Right(x, ex) => self.mutate_right(&self.elaborate(x)?, &self.elaborate(ex)?)?,
        }
        .normalize())
    }

    /// The K-class; shift signs are applied here and nowhere else.
    pub fn class_of(&self, x: &Object) -> KClass {
        match x {
            Object::Zero => KClass::zero(),
            Object::Atom(a) => self.atom_class(a),
            Object::Shift(inner, n) => self.class_of(inner).shifted(*n),
            Object::Sum(xs) => xs.iter().fold(KClass::zero(), |acc, y| &acc + &self.class_of(y)),
            Object::Cone { source, target, .. } => &self.class_of(target) - &self.class_of(source),
        }
    }

    fn atom_class(&self, a: &Atom) -> KClass {
        if let Some(c) = self.atom_classes.read().ok().and_then(|m| m.get(a).cloned()) {
            return c;
        }
        let c = self.numerical.atom_class(a);
        if let Ok(mut m) = self.atom_classes.write() {
            m.insert(*a, c.clone());
        }
        c
    }

    /// The eight line bundles of the basis and the two torsion sheaves `OE(-1,0)`, `OE(0,-1)`.
    pub fn probe_panel(&self) -> Vec<Object> {
        bundle_basis()
            .into_iter()
            .map(Object::line)
            .chain([SurfaceDivisor::new(-1, 0), SurfaceDivisor::new(0, -1)].map(Object::on_e))
            .collect()
    }

    /// Class+probe equivalence: equal K-classes and equal determined `RHom`
    /// against every probe, in both directions.
    pub fn equivalent(&self, x: &Object, y: &Object) -> bool {
        if self.class_of(x) != self.class_of(y) {
            return false;
        }
        self.probe_panel().iter().all(|p| {
            let (a, b) = (self.rhom(p, x), self.rhom(p, y));
            let (c, d) = (self.rhom(x, p), self.rhom(y, p));
            a.is_determined() && c.is_determined() && a == b && c == d
        })
    }

    /// Records that `object` is isomorphic to `presentation`.
    pub(crate) fn register_presentation(&self, object: &Object, presentation: Object) {
        let object = object.normalize();
        let (base, n) = object.unshift();
        let presentation = presentation.shift(-n).normalize();
        if base.is_zero() || presentation == *base {
            return;
        }
        let Ok(mut table) = self.presentations.write() else { return };
        let known = table.entry(base.clone()).or_default();
        if !known.contains(&presentation) {
            known.push(presentation);
            if let Ok(mut memo) = self.memo.lock() {
                memo.clear();
            }
        }
    }

    pub fn presentations_of(&self, x: &Object) -> Vec<Object> {
        self.presentations.read().ok().and_then(|t| t.get(x).cloned()).unwrap_or_default()
    }

    fn memo_get(&self, key: &(Object, Object)) -> Option<Bounds> {
        self.memo.lock().ok()?.get(key).cloned()
    }

    fn memo_put(&self, key: (Object, Object), value: Bounds) {
        if let Ok(mut m) = self.memo.lock() {
            m.insert(key, value);
        }
    }
}
