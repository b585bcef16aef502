use nodal_core::calculus::{Calculus, Object};
use nodal_core::geometry::{DivisorClass, GeometryConfig, GradedDims, SurfaceDivisor};

fn calc() -> Calculus {
    let mut c = Calculus::new(GeometryConfig::default());
    c.define("G", "L(OE(-1,0), O(-k))").unwrap();
    c.define("F", "L(OE(-1,0), L(O(), O(H-k)))").unwrap();
    c.define("Ecal", "L(OE(-1,0), OE(0,-1))").unwrap();
    c
}

fn dims(pairs: &[(i64, u64)]) -> GradedDims {
    GradedDims::from_pairs(pairs.iter().copied())
}

fn obj(c: &Calculus, s: &str) -> Object {
    c.parse(s).unwrap()
}

fn assert_rhom(c: &Calculus, x: &str, y: &str, want: &[(i64, u64)]) {
    let r = c.rhom(&obj(c, x), &obj(c, y));
    assert!(r.is_determined(), "RHom({x}, {y}) = {r}");
    assert_eq!(r.dims.unwrap(), dims(want), "RHom({x}, {y})");
}

#[test]
fn elaborated_shapes() {
    let c = calc();
    assert_eq!(c.lookup("G").unwrap().to_string(), "cone(shift(OE(-1,0), -2), O(-k), ev)");
    assert_eq!(c.lookup("Ecal").unwrap().to_string(), "cone(shift(OE(-1,0), -2), OE(0,-1), ev)");
    assert_eq!(
        c.lookup("F").unwrap().to_string(),
        "cone(shift(cone(shift(OE(-1,0), -2), OE(0,-1), ev), -1), shift(O(-h), 1), res)"
    );
    assert_eq!(
        obj(&c, "L(O(), O(H-h))").to_string(),
        "cone(shift(OE(-1,0), -1), shift(O(-k), 1), res)"
    );
}

#[test]
fn golden_table() {
    let c = calc();
    for i in 0..3 {
        let oh = format!("O({}H)", i);
        assert_rhom(&c, &oh, "OE(-1,0)", &[]);
    }
    assert_rhom(&c, "OE(-1,0)", "OE(0,-1)", &[(2, 1)]);
    assert_rhom(&c, "OE(-1,0)", "O(-k)", &[(2, 1)]);
    assert_rhom(&c, "O(-h)", "G", &[(1, 1)]);
    assert_rhom(&c, "O(-h)", "F", &[(-1, 1), (1, 1)]);
    assert_rhom(&c, "G", "F", &[(0, 1)]);
    assert_rhom(&c, "Ecal", "Ecal", &[(0, 1), (3, 1)]);
}

#[test]
fn triple_is_exceptional_and_ordered() {
    let c = calc();
    for name in ["O(-h)", "G", "F"] {
        assert!(c.is_exceptional(&obj(&c, name)).unwrap(), "{name}");
    }
    let triple: Vec<_> = ["O(-h)", "G", "F"].iter().map(|s| obj(&c, s)).collect();
    let rep = c.is_semiorthogonal(&triple).unwrap();
    assert!(rep.holds, "{rep:?}");
    assert_rhom(&c, "F", "O(-h)", &[]);
    assert_rhom(&c, "F", "G", &[]);
    assert_rhom(&c, "G", "O(-h)", &[]);
}

#[test]
fn step_mutations() {
    let c = calc();
    let cases = [
        ("L(O(2H), OE(0,0))", "shift(O(H+h+k), 1)"),
        ("L(O(H+h+k), O(2H))", "OE(0,0)"),
        ("L(O(H), OE(0,0))", "shift(O(h+k), 1)"),
        ("L(O(), O(h))", "shift(O(-h), 1)"),
        ("L(O(), O(k))", "shift(O(-k), 1)"),
        ("L(O(H), O(H+h))", "shift(O(H-h), 1)"),
        ("L(O(H), O(H+k))", "shift(O(H-k), 1)"),
        ("L(O(-k), L(O(), O(H-h)))", "OE(-1,0)"),
    ];
    for (expr, want) in cases {
        let got = obj(&c, expr);
        let want = obj(&c, want);
        assert_eq!(got, want, "{expr}");
        assert!(c.equivalent(&got, &want));
    }
}

#[test]
fn right_mutation_undoes_left() {
    let c = calc();
    let back = obj(&c, "R(G, OE(-1,0))");
    assert_eq!(back, Object::line(DivisorClass::new(0, 0, -1)));
    let s = Object::on_e(SurfaceDivisor::new(-1, 0));
    for x in ["O(-k)", "OE(0,-1)", "O(H)", "O(2H-h)"] {
        let x = obj(&c, x);
        let l = c.mutate_left(&s, &x).unwrap();
        assert!(c.rhom(&s, &l).is_zero(), "{l}");
        let r = c.mutate_right(&x, &s).unwrap();
        assert!(c.rhom(&r, &s).is_zero(), "{r}");
    }
}

#[test]
fn spherical_kernel_object() {
    let c = calc();
    let e = obj(&c, "Ecal");
    assert!(c.is_spherical(&e, 3).unwrap());
    assert!(c.is_spherical(&e.clone().shift(1), 3).unwrap());
    assert!(!c.is_exceptional(&e).unwrap());
    assert!(!c.is_spherical(&obj(&c, "O()"), 3).unwrap());
}

#[test]
fn ext_exceptional_collections() {
    let c = calc();
    let good: Vec<_> = ["O(-h)", "G", "shift(F, -2)"].iter().map(|s| obj(&c, s)).collect();
    assert!(c.is_ext_exceptional(&good).unwrap().holds);
    let bad: Vec<_> = ["O(-h)", "G", "F"].iter().map(|s| obj(&c, s)).collect();
    let rep = c.is_ext_exceptional(&bad).unwrap();
    assert!(!rep.holds);
    assert!(rep.violations.iter().any(|v| v.first == 0 && v.second == 2 && v.degree == -1));
}
