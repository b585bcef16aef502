//! The ten acceptance criteria, each recomputed from the library and
//! compared exactly. One line per criterion; nonzero exit on any failure.

use std::process::ExitCode;

use nodal_core::calculus::Object;
use nodal_core::geometry::{DivisorClass, GeometryConfig, GradedDims, SurfaceDivisor};
use nodal_core::harness::{run_checks, HarnessConfig, Session, Status};
use nodal_core::lattice::{quotient, IntegerLattice, KClass};
use nodal_core::stability::{check_weak_stability_condition, descend, Mode, QuadraticForm};

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn obj(s: &Session, text: &str) -> Result<Object, String> {
    s.object(text).map_err(|e| format!("{text}: {e}"))
}

fn class(s: &Session, text: &str) -> Result<KClass, String> {
    s.class(text).map_err(|e| format!("{text}: {e}"))
}

fn dims(pairs: &[(i64, u64)]) -> GradedDims {
    GradedDims::from_pairs(pairs.iter().copied())
}

fn sod1(s: &Session) -> Outcome {
    let bundles = s.collection("SOD1").map_err(|e| e.to_string())?;
    ensure(bundles.len() == 8, || format!("{} bundles", bundles.len()))?;
    let mut backward = 0;
    for (j, later) in bundles.iter().enumerate() {
        for earlier in &bundles[..j] {
            let r = s.calc().rhom(later, earlier);
            ensure(r.is(&GradedDims::zero()), || format!("RHom({later}, {earlier}) = {r}"))?;
            backward += 1;
        }
    }
    ensure(backward == 28, || format!("{backward} backward pairs"))?;
    let classes: Vec<KClass> = bundles.iter().map(|b| s.calc().class_of(b)).collect();
    let gram = s.calc().numerical().gram_matrix(&classes).map_err(|e| e.to_string())?;
    for (i, row) in gram.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            ensure(j >= i || v == 0, || format!("gram[{i}][{j}] = {v}"))?;
            ensure(j != i || v == 1, || format!("gram[{i}][{i}] = {v}"))?;
        }
    }
    Ok(())
}

fn canonical(s: &Session) -> Outcome {
    let g = s.geometry();
    let k = g.canonical_class();
    let e = g.exceptional_divisor_class();
    ensure(k == DivisorClass::new(-2, -1, -1), || format!("K = {k}"))?;
    ensure(e == DivisorClass::new(1, -1, -1), || format!("E = {e}"))?;
    let ke = g.restrict_to_e(k + e);
    ensure(ke == SurfaceDivisor::new(-2, -2), || format!("(K+E)|E = {ke}"))
}

fn mutations(s: &Session) -> Outcome {
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
    for (expr, target) in cases {
        let (got, want) = (obj(s, expr)?, obj(s, target)?);
        ensure(s.calc().equivalent(&got, &want), || format!("{expr} gave {got}, expected {want}"))?;
    }
    Ok(())
}

fn golden(s: &Session) -> Outcome {
    let table: [(&str, &str, &[(i64, u64)]); 11] = [
        ("O()", "OE(-1,0)", &[]),
        ("O(H)", "OE(-1,0)", &[]),
        ("O(2H)", "OE(-1,0)", &[]),
        ("OE(-1,0)", "OE(0,-1)", &[(2, 1)]),
        ("OE(-1,0)", "O(-k)", &[(2, 1)]),
        ("O(-h)", "G", &[(1, 1)]),
        ("O(-h)", "F", &[(-1, 1), (1, 1)]),
        ("G", "F", &[(0, 1)]),
        ("Ecal", "Ecal", &[(0, 1), (3, 1)]),
        ("O(-h)", "Ecal", &[(1, 1)]),
        ("O(-k)", "OE(0,-1)", &[(0, 1)]),
    ];
    for (x, y, want) in table {
        let r = s.calc().rhom(&obj(s, x)?, &obj(s, y)?);
        ensure(r.is_determined() && r.is(&dims(want)), || format!("RHom({x}, {y}) = {r}"))?;
    }
    Ok(())
}

fn kernel(s: &Session) -> Outcome {
    let k = s.kernel().map_err(|e| e.to_string())?;
    ensure(k.kernel.rank() == 2, || format!("kernel rank {}", k.kernel.rank()))?;
    ensure(k.ambient.rank() == 3, || format!("ambient rank {}", k.ambient.rank()))?;
    let q = quotient(&k.ambient, &k.kernel).map_err(|e| e.to_string())?;
    ensure(q.rank == 1 && q.torsion.is_empty(), || format!("quotient rank {} torsion {:?}", q.rank, q.torsion))?;
    ensure(class(s, "Ecal")? == &class(s, "F")? + &class(s, "O(-h)")?, || "[Ecal] != [F] + [O(-h)]".into())?;
    let e_gen = class(s, "Ecal")?;
    ensure(k.kernel.contains(&e_gen.coords).unwrap_or(false), || "[Ecal] not in kernel".into())?;
    let mut pushforward = k.generator_classes.clone();
    pushforward.push(class(s, "OE(-1,0)")?);
    pushforward.push(class(s, "OE(0,-1)")?);
    let pushforward = IntegerLattice::from_classes(&pushforward).map_err(|e| e.to_string())?;
    let diff = &class(s, "O(-h)")? - &class(s, "O(-k)")?;
    ensure(pushforward.contains(&diff.coords).unwrap_or(false), || "[O(-h)] - [O(-k)] not in the pushforward kernel".into())
}

fn ext_exceptional(s: &Session) -> Outcome {
    let good: Vec<Object> = ["O(-h)", "G", "shift(F, -2)"].iter().map(|t| obj(s, t)).collect::<Result<_, _>>()?;
    let bad: Vec<Object> = ["O(-h)", "G", "F"].iter().map(|t| obj(s, t)).collect::<Result<_, _>>()?;
    let good = s.calc().is_ext_exceptional(&good).map_err(|e| e.to_string())?;
    let bad = s.calc().is_ext_exceptional(&bad).map_err(|e| e.to_string())?;
    ensure(good.holds, || format!("shifted triple fails: {:?}", good.violations))?;
    ensure(!bad.holds, || "unshifted triple passes".into())?;
    let w = bad.violations.first().ok_or("no witness")?;
    ensure(w.degree == -1, || format!("witness degree {}", w.degree))
}

fn tilt(s: &Session) -> Outcome {
    let t = s.heart("Atilde").map_err(|e| e.to_string())?;
    let want: Vec<KClass> = ["shift(F, -1)", "shift(Ecal, -2)", "G"].iter().map(|e| class(s, e)).collect::<Result<_, _>>()?;
    ensure(t.classes() == want, || format!("tilted classes {:?}", t.classes()))?;
    let b = s.heart("B").map_err(|e| e.to_string())?;
    let j = b.index_of("F[-2]").ok_or("no F[-2]")?;
    let ext1 = |label: &str| b.index_of(label).and_then(|i| b.hom_table[i][j].dims.as_ref().map(|d| d.dim(1)));
    ensure(ext1("O(-h)") == Some(1), || format!("Ext1(O(-h), F[-2]) = {:?}", ext1("O(-h)")))?;
    ensure(ext1("G") == Some(0), || format!("Ext1(G, F[-2]) = {:?}", ext1("G")))
}

fn spherical(s: &Session) -> Outcome {
    let e = obj(s, "Ecal")?;
    let r = s.calc().rhom(&e, &e);
    ensure(r.is(&dims(&[(0, 1), (3, 1)])), || format!("RHom(Ecal, Ecal) = {r}"))?;
    let c = s.calc().class_of(&e);
    ensure(s.calc().numerical().serre_class(&c) == -&c, || "S[Ecal] != -[Ecal]".into())?;
    ensure(s.calc().is_spherical(&e.shift(1), 3).unwrap_or(false), || "Ecal[1] is not 3-spherical".into())
}

fn stability(s: &Session) -> Outcome {
    let (z, heart) = s.charge("Z").map_err(|e| e.to_string())?;
    let t = s.heart(&heart).map_err(|e| e.to_string())?;
    ensure(z == nodal_core::stability::CentralCharge::from_ints(&[(0, 1), (0, 0), (0, 1)]), || format!("Z = {z}"))?;
    let weak = check_weak_stability_condition(&t, &z, &QuadraticForm::zero(1), Mode::Weak).map_err(|e| e.to_string())?;
    ensure(weak.holds, || format!("weak axioms upstairs: {weak:?}"))?;
    let k = s.kernel().map_err(|e| e.to_string())?;
    let d = descend(&t, &k.kernel, &z).map_err(|e| e.to_string())?;
    ensure(d.report.kernel_equals_ker_z.holds, || "ker Z differs from the kernel lattice".into())?;
    ensure(d.quotient.rank == 1, || format!("quotient rank {}", d.quotient.rank))?;
    ensure(d.report.induced_charge.holds, || "induced charge is not a stability function".into())?;
    ensure(d.report.holds, || format!("descent: {:?}", d.report))?;
    let c = d.report.induced_charge.charge.clone().ok_or("no induced charge")?;
    let down = check_weak_stability_condition(&d.heart, &c, &QuadraticForm::zero(1), Mode::Strong).map_err(|e| e.to_string())?;
    ensure(down.support.holds, || "support property with Q = 0 fails".into())?;
    ensure(down.holds, || format!("Bridgeland verdict downstairs: {down:?}"))
}

const PROPERTY_SUITES: [&str; 6] = [
    "props.hrr-vs-cohomology",
    "props.serre-duality",
    "props.euler-soundness",
    "props.mutation-involution",
    "props.normalize-idempotent",
    "props.parser-roundtrip",
];

fn properties(_: &Session) -> Outcome {
    let names: Vec<String> = PROPERTY_SUITES.iter().map(|n| n.to_string()).collect();
    for (a, b) in [(-1, -1), (0, 0), (-2, 0)] {
        let session = Session::new(HarnessConfig::bundled().with_twist(a, b)).map_err(|e| e.to_string())?;
        ensure(session.geometry() == GeometryConfig::new(a, b), || "twist not applied".into())?;
        let report = run_checks(&session, Some(&names)).map_err(|e| e.to_string())?;
        for r in &report.results {
            ensure(r.status == Status::Pass, || format!("{} at ({a},{b}): {:?} {}", r.name, r.status, r.actual))?;
        }
        ensure(report.results.len() == PROPERTY_SUITES.len(), || "missing suites".into())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&Session) -> Outcome); 10] = [
        ("SOD1 semiorthogonality and unipotent Gram matrix", sod1),
        ("canonical class, exceptional divisor, adjunction", canonical),
        ("mutation identities defining the triple", mutations),
        ("golden RHom table", golden),
        ("kernel lattice, quotient and relations", kernel),
        ("Ext-exceptionality of the shifted triple", ext_exceptional),
        ("tilt simples and universal extensions", tilt),
        ("sphericality of the kernel generator", spherical),
        ("weak and Bridgeland stability", stability),
        ("property suites at three twists", properties),
    ];
    let session = Session::bundled();
    let started = std::time::Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f(&session) {
            Ok(()) => println!("criterion {:>2}: PASS  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass in {:.1?}", criteria.len() - failed, criteria.len(), started.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
