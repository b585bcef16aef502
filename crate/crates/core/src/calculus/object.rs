use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{DivisorClass, SurfaceDivisor};

/// Indecomposable building blocks: `O(D)` on the threefold, or `eps_* O_E(beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    Line(DivisorClass),
    OnE(SurfaceDivisor),
}

/// Where the morphism of a cone came from. Anything but `Unspecified`
/// certifies that the morphism is nonzero on every nonzero component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Provenance {
    Evaluation,
    Restriction,
    Euler,
    UniversalExtension,
    Unspecified,
}

impl Provenance {
    pub const ALL: [Provenance; 5] = [
        Provenance::Evaluation,
        Provenance::Restriction,
        Provenance::Euler,
        Provenance::UniversalExtension,
        Provenance::Unspecified,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Provenance::Evaluation => "ev",
            Provenance::Restriction => "res",
            Provenance::Euler => "euler",
            Provenance::UniversalExtension => "univ",
            Provenance::Unspecified => "unspec",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Provenance> {
        Provenance::ALL.into_iter().find(|p| p.keyword() == s)
    }
}

/// A formal object after elaboration: mutations have been replaced by cones.
///
/// `Cone { source, target }` is the third vertex of `source -> target -> Cone -> source[1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Object {
    Zero,
    Atom(Atom),
    Shift(Box<Object>, i64),
    Sum(Vec<Object>),
    Cone { source: Box<Object>, target: Box<Object>, provenance: Provenance },
}

impl Object {
    pub fn line(d: DivisorClass) -> Object {
        Object::Atom(Atom::Line(d))
    }

    pub fn on_e(beta: SurfaceDivisor) -> Object {
        Object::Atom(Atom::OnE(beta))
    }

    /// `self[n]`, normalized at the top level.
    pub fn shift(self, n: i64) -> Object {
        match self {
            Object::Zero => Object::Zero,
            _ if n == 0 => self,
            Object::Shift(inner, m) => (*inner).shift(m + n),
            Object::Sum(xs) => Object::Sum(xs.into_iter().map(|x| x.shift(n)).collect()),
            other => Object::Shift(Box::new(other), n),
        }
    }

    pub fn cone(source: Object, target: Object, provenance: Provenance) -> Object {
        match (source, target) {
            (Object::Zero, t) => t,
            (s, Object::Zero) => s.shift(1),
            (s, t) => Object::Cone { source: Box::new(s), target: Box::new(t), provenance },
        }
    }

    pub fn sum(parts: Vec<Object>) -> Object {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Object::Zero => {}
                Object::Sum(xs) => flat.extend(xs),
                x => flat.push(x),
            }
        }
        match flat.len() {
            0 => Object::Zero,
            1 => flat.pop().expect("one element"),
            _ => Object::Sum(flat),
        }
    }

    /// Splits off an outer shift: `self = base[n]`.
    pub fn unshift(&self) -> (&Object, i64) {
        match self {
            Object::Shift(inner, n) => (inner, *n),
            other => (other, 0),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Object::Zero)
    }

    /// Rebuilds the tree bottom-up with the structural rules: no zero or
    /// nested shifts, no cones against zero, flat nonempty sums.
    pub fn normalize(&self) -> Object {
        match self {
            Object::Zero | Object::Atom(_) => self.clone(),
            Object::Shift(x, n) => x.normalize().shift(*n),
            Object::Sum(xs) => Object::sum(xs.iter().map(Object::normalize).collect()),
            Object::Cone { source, target, provenance } => {
                Object::cone(source.normalize(), target.normalize(), *provenance)
            }
        }
    }

    /// Number of nodes, used to bound generated corpora.
    pub fn size(&self) -> usize {
        match self {
            Object::Zero | Object::Atom(_) => 1,
            Object::Shift(x, _) => 1 + x.size(),
            Object::Sum(xs) => 1 + xs.iter().map(Object::size).sum::<usize>(),
            Object::Cone { source, target, .. } => 1 + source.size() + target.size(),
        }
    }

    pub fn to_expr(&self) -> Expr {
        match self {
            Object::Zero => Expr::Zero,
            Object::Atom(a) => Expr::Atom(*a),
            Object::Shift(x, n) => Expr::Shift(Box::new(x.to_expr()), *n),
            Object::Sum(xs) => Expr::Sum(xs.iter().map(Object::to_expr).collect()),
            Object::Cone { source, target, provenance } => Expr::Cone {
                source: Box::new(source.to_expr()),
                target: Box::new(target.to_expr()),
                provenance: *provenance,
            },
        }
    }
}

/// Parse tree of the expression grammar, before mutations are elaborated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Zero,
    Atom(Atom),
    Name(String),
    Shift(Box<Expr>, i64),
    Sum(Vec<Expr>),
    Cone { source: Box<Expr>, target: Box<Expr>, provenance: Provenance },
    /// `L(e, x)`
    Left(Box<Expr>, Box<Expr>),
    /// `R(x, e)`
    Right(Box<Expr>, Box<Expr>),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Line(d) if d.is_zero() => f.write_str("O()"),
            Atom::Line(d) => write!(f, "O({d})"),
            Atom::OnE(b) => write!(f, "OE({},{})", b.d, b.e),
        }
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Zero => f.write_str("0"),
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Name(n) => f.write_str(n),
            Expr::Shift(x, n) => write!(f, "shift({x}, {n})"),
            Expr::Sum(xs) => {
                f.write_str("sum(")?;
                write_list(f, xs)?;
                f.write_str(")")
            }
            Expr::Cone { source, target, provenance } => {
                write!(f, "cone({source}, {target}, {})", provenance.keyword())
            }
            Expr::Left(e, x) => write!(f, "L({e}, {x})"),
            Expr::Right(x, e) => write!(f, "R({x}, {e})"),
        }
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(h: i64, a: i64, b: i64) -> Object {
        Object::line(DivisorClass::new(h, a, b))
    }

    #[test]
    fn structural_rules() {
        let x = o(0, 0, 0);
        assert_eq!(x.clone().shift(1).shift(-1), x);
        assert_eq!(Object::Zero.shift(4), Object::Zero);
        assert_eq!(Object::cone(Object::Zero, x.clone(), Provenance::Unspecified), x);
        assert_eq!(Object::cone(x.clone(), Object::Zero, Provenance::Unspecified), x.clone().shift(1));
        assert_eq!(Object::sum(vec![Object::Zero]), Object::Zero);
        assert_eq!(Object::sum(vec![Object::Zero, x.clone()]), x);
        let nested = Object::Sum(vec![Object::Sum(vec![x.clone(), x.clone()]), Object::Zero]);
        assert_eq!(nested.normalize(), Object::Sum(vec![x.clone(), x.clone()]));
    }

    #[test]
    fn printing() {
        assert_eq!(o(2, 1, -1).to_string(), "O(2H+h-k)");
        assert_eq!(o(0, 0, 0).shift(3).to_string(), "shift(O(), 3)");
        let c = Object::cone(Object::on_e(SurfaceDivisor::new(-1, 0)).shift(-2), o(0, 0, -1), Provenance::Evaluation);
        assert_eq!(c.to_string(), "cone(shift(OE(-1,0), -2), O(-k), ev)");
    }
}
