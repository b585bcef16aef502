//! A configuration elaborated against a calculus: named objects bound,
//! collections, hearts, charges and the kernel lattice on demand.

use std::collections::BTreeMap;

use crate::calculus::{Calculus, Object};
use crate::error::{CalculusError, HarnessError};
use crate::geometry::GeometryConfig;
use crate::lattice::{IntegerLattice, KClass};
use crate::stability::{make_heart, tilt_at, CentralCharge, Heart};

use super::config::HarnessConfig;

/// The kernel lattice and the lattice of the collection containing it, in ambient K-coordinates.
#[derive(Debug, Clone)]
pub struct KernelData {
    pub ambient: IntegerLattice,
    pub ambient_classes: Vec<KClass>,
    pub kernel: IntegerLattice,
    pub generator_classes: Vec<KClass>,
}

#[derive(Debug, Clone)]
pub struct Session {
    config: HarnessConfig,
    calc: Calculus,
    /// Objects that could not be elaborated at this twist, with the reason.
    unavailable: BTreeMap<String, String>,
}

impl Session {
    /// Binds every named object. At the nodal twist a failure is a
    /// configuration error; elsewhere the object is recorded as unavailable.
    pub fn new(config: HarnessConfig) -> Result<Self, HarnessError> {
        config.validate()?;
        let geometry = config.geometry();
        let mut calc = Calculus::new(geometry);
        let mut unavailable = BTreeMap::new();
        for o in &config.objects {
            if let Err(source) = calc.define(&o.name, &o.expr) {
                if geometry.is_nodal_quadric() {
                    return Err(HarnessError::Elaboration { name: o.name.clone(), source });
                }
                unavailable.insert(o.name.clone(), source.to_string());
            }
        }
        Ok(Session { config, calc, unavailable })
    }

    pub fn bundled() -> Self {
        Self::new(HarnessConfig::bundled()).expect("bundled configuration elaborates")
    }

    pub fn config(&self) -> &HarnessConfig {
        &self.config
    }

    pub fn calc(&self) -> &Calculus {
        &self.calc
    }

    pub fn geometry(&self) -> GeometryConfig {
        self.config.geometry()
    }

    pub fn unavailable(&self) -> &BTreeMap<String, String> {
        &self.unavailable
    }

    pub fn object(&self, text: &str) -> Result<Object, CalculusError> {
        self.calc.parse(text)
    }

    pub fn class(&self, text: &str) -> Result<KClass, CalculusError> {
        Ok(self.calc.class_of(&self.object(text)?))
    }

    pub fn collection(&self, name: &str) -> Result<Vec<Object>, HarnessError> {
        let c = self
            .config
            .collections
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| HarnessError::Config(format!("unknown collection `{name}`")))?;
        Ok(c.members.iter().map(|m| self.object(m)).collect::<Result<_, _>>()?)
    }

    pub fn collection_members(&self, name: &str) -> Option<&[String]> {
        self.config.collections.iter().find(|c| c.name == name).map(|c| c.members.as_slice())
    }

    pub fn heart(&self, name: &str) -> Result<Heart, HarnessError> {
        let def = self
            .config
            .heart_def(name)
            .ok_or_else(|| HarnessError::Config(format!("unknown heart `{name}`")))?;
        if let Some(simples) = &def.simples {
            let simples = simples
                .iter()
                .map(|s| Ok((s.label.clone(), self.object(&s.expr)?)))
                .collect::<Result<Vec<_>, CalculusError>>()?;
            return Ok(make_heart(&self.calc, simples)?);
        }
        let tilt = def.tilt.as_ref().expect("validated: simples or tilt");
        let parent = self.heart(&tilt.of)?;
        let j = parent
            .index_of(&tilt.at)
            .ok_or_else(|| HarnessError::Config(format!("heart `{}` has no simple `{}`", tilt.of, tilt.at)))?;
        Ok(tilt_at(&self.calc, &parent, j)?)
    }

    /// A charge together with the name of its heart.
    pub fn charge(&self, name: &str) -> Result<(CentralCharge, String), HarnessError> {
        let def = self
            .config
            .charges
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| HarnessError::Config(format!("unknown charge `{name}`")))?;
        Ok((def.charge()?, def.heart.clone()))
    }

    pub fn kernel(&self) -> Result<KernelData, HarnessError> {
        let k = self.config.kernel.as_ref().ok_or_else(|| HarnessError::Config("no kernel section".into()))?;
        let ambient_classes: Vec<KClass> = self.collection(&k.lattice)?.iter().map(|o| self.calc.class_of(o)).collect();
        let generator_classes: Vec<KClass> = k.generators.iter().map(|g| self.class(g)).collect::<Result<_, _>>()?;
        Ok(KernelData {
            ambient: IntegerLattice::from_classes(&ambient_classes)?,
            ambient_classes,
            kernel: IntegerLattice::from_classes(&generator_classes)?,
            generator_classes,
        })
    }
}
