//! The harness configuration: a TOML document with geometry, named objects,
//! collections, hearts, charges, the kernel lattice and a check selection.

use std::collections::HashSet;
use std::str::FromStr;

use serde::Deserialize;

use crate::calculus::{parse_expr, Expr};
use crate::error::HarnessError;
use crate::geometry::{GeometryConfig, Rational};
use crate::stability::{cq, CentralCharge};

/// The configuration shipped with the crate.
pub const DEFAULT_CONFIG: &str = include_str!("../../config/default.toml");

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    pub twist: [i64; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDef {
    pub name: String,
    pub expr: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollectionDef {
    pub name: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpleDef {
    pub label: String,
    pub expr: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TiltDef {
    pub of: String,
    pub at: String,
}

/// Exactly one of `simples` and `tilt` is set.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeartDef {
    pub name: String,
    #[serde(default)]
    pub simples: Option<Vec<SimpleDef>>,
    #[serde(default)]
    pub tilt: Option<TiltDef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChargeDef {
    pub name: String,
    pub heart: String,
    pub values: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelDef {
    pub lattice: String,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSelection {
    #[serde(default)]
    pub only: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarnessConfig {
    pub geometry: GeometrySection,
    #[serde(default)]
    pub objects: Vec<ObjectDef>,
    #[serde(default)]
    pub collections: Vec<CollectionDef>,
    #[serde(default)]
    pub hearts: Vec<HeartDef>,
    #[serde(default)]
    pub charges: Vec<ChargeDef>,
    pub kernel: Option<KernelDef>,
    #[serde(default)]
    pub checks: CheckSelection,
}

fn bad(msg: impl Into<String>) -> HarnessError {
    HarnessError::Config(msg.into())
}

fn names_in(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Zero | Expr::Atom(_) => {}
        Expr::Name(n) => out.push(n.clone()),
        Expr::Shift(x, _) => names_in(x, out),
        Expr::Sum(xs) => xs.iter().for_each(|x| names_in(x, out)),
        Expr::Cone { source, target, .. } => {
            names_in(source, out);
            names_in(target, out);
        }
        Expr::Left(a, b) | Expr::Right(a, b) => {
            names_in(a, out);
            names_in(b, out);
        }
    }
}

fn unique<'a>(kind: &str, names: impl Iterator<Item = &'a String>) -> Result<(), HarnessError> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(bad(format!("duplicate {kind} name `{n}`")));
        }
    }
    Ok(())
}

fn parse_rational(s: &str) -> Result<Rational, HarnessError> {
    Rational::from_str(s.trim()).map_err(|_| bad(format!("not a rational number: `{s}`")))
}

impl ChargeDef {
    pub fn charge(&self) -> Result<CentralCharge, HarnessError> {
        let values = self
            .values
            .iter()
            .map(|[re, im]| Ok(cq(parse_rational(re)?, parse_rational(im)?)))
            .collect::<Result<_, HarnessError>>()?;
        Ok(CentralCharge::new(values))
    }
}

impl HarnessConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let cfg: HarnessConfig = toml::from_str(text).map_err(|e| bad(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn bundled() -> Self {
        Self::from_toml(DEFAULT_CONFIG).expect("bundled configuration is valid")
    }

    pub fn geometry(&self) -> GeometryConfig {
        GeometryConfig::new(self.geometry.twist[0], self.geometry.twist[1])
    }

    /// The same configuration at another twist.
    pub fn with_twist(&self, a: i64, b: i64) -> Self {
        let mut c = self.clone();
        c.geometry.twist = [a, b];
        c
    }

    pub fn heart_def(&self, name: &str) -> Option<&HeartDef> {
        self.hearts.iter().find(|h| h.name == name)
    }

    /// Syntax, name uniqueness and name resolution; nothing is elaborated.
    pub fn validate(&self) -> Result<(), HarnessError> {
        unique("object", self.objects.iter().map(|o| &o.name))?;
        unique("collection", self.collections.iter().map(|c| &c.name))?;
        unique("heart", self.hearts.iter().map(|h| &h.name))?;
        unique("charge", self.charges.iter().map(|c| &c.name))?;

        let all_objects: HashSet<&str> = self.objects.iter().map(|o| o.name.as_str()).collect();
        let check_expr = |text: &str, known: &dyn Fn(&str) -> bool| -> Result<(), HarnessError> {
            let e = parse_expr(text).map_err(|err| bad(format!("in `{text}`: {err}")))?;
            let mut names = Vec::new();
            names_in(&e, &mut names);
            match names.iter().find(|n| !known(n)) {
                Some(n) => Err(bad(format!("unknown name `{n}` in `{text}`"))),
                None => Ok(()),
            }
        };

        let mut defined: HashSet<&str> = HashSet::new();
        for o in &self.objects {
            if !crate::calculus::is_identifier(&o.name) {
                return Err(bad(format!("`{}` is not a valid object name", o.name)));
            }
            check_expr(&o.expr, &|n| defined.contains(n))?;
            defined.insert(&o.name);
        }
        let known = |n: &str| all_objects.contains(n);
        for c in &self.collections {
            for m in &c.members {
                check_expr(m, &known)?;
            }
        }
        for (i, h) in self.hearts.iter().enumerate() {
            match (&h.simples, &h.tilt) {
                (Some(simples), None) => {
                    if simples.is_empty() {
                        return Err(bad(format!("heart `{}` has no simples", h.name)));
                    }
                    unique("simple label", simples.iter().map(|s| &s.label))?;
                    for s in simples {
                        check_expr(&s.expr, &known)?;
                    }
                }
                (None, Some(t)) => {
                    let parent = self.hearts[..i]
                        .iter()
                        .find(|p| p.name == t.of)
                        .ok_or_else(|| bad(format!("heart `{}` tilts unknown or later heart `{}`", h.name, t.of)))?;
                    if let Some(ps) = &parent.simples {
                        if !ps.iter().any(|s| s.label == t.at) {
                            return Err(bad(format!("heart `{}` has no simple `{}`", t.of, t.at)));
                        }
                    }
                }
                _ => return Err(bad(format!("heart `{}` needs exactly one of `simples` and `tilt`", h.name))),
            }
        }
        for c in &self.charges {
            if self.heart_def(&c.heart).is_none() {
                return Err(bad(format!("charge `{}` refers to unknown heart `{}`", c.name, c.heart)));
            }
            c.charge()?;
        }
        if let Some(n) = self.checks.only.iter().find(|n| super::checks::find(n).is_none()) {
            return Err(HarnessError::UnknownCheck(n.clone()));
        }
        if let Some(k) = &self.kernel {
            if !self.collections.iter().any(|c| c.name == k.lattice) {
                return Err(bad(format!("kernel lattice `{}` is not a collection", k.lattice)));
            }
            for g in &k.generators {
                check_expr(g, &known)?;
            }
        }
        Ok(())
    }
}
