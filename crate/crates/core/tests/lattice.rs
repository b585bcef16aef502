use std::sync::OnceLock;

use nodal_core::geometry::{DivisorClass, GeometryConfig, SurfaceDivisor};
use nodal_core::lattice::normal_form::{determinant, hermite, mat_mul, smith, IntMatrix};
use nodal_core::lattice::{bundle_basis, quotient, IntegerLattice, NumericalK};
use proptest::prelude::*;

fn lattice(rows: &[&[i64]]) -> IntegerLattice {
    let n = rows[0].len();
    IntegerLattice::from_rows(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

#[test]
fn quotient_examples() {
    let z3 = lattice(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let k = lattice(&[&[1, 0, 1], &[0, 1, 1]]);
    let q = quotient(&z3, &k).unwrap();
    assert_eq!((q.rank, q.torsion.clone()), (1, vec![]));
    assert_eq!(q.project(&[1, 0, 1]).unwrap(), vec![0]);
    assert_eq!(q.project(&[0, 0, 1]).unwrap().iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1]);

    let twice = lattice(&[&[2, 0, 0], &[0, 1, 0]]);
    let q = quotient(&z3, &twice).unwrap();
    assert_eq!((q.rank, q.torsion), (1, vec![2]));

    let q = quotient(&z3, &z3).unwrap();
    assert_eq!(q.rank, 0);
}

#[test]
fn membership_and_saturation() {
    let l = lattice(&[&[2, 0], &[0, 3]]);
    assert!(l.contains(&[4, -3]).unwrap());
    assert!(!l.contains(&[1, 0]).unwrap());
    assert!(!l.is_primitive().unwrap());
    assert!(lattice(&[&[1, 1]]).is_primitive().unwrap());
}

#[test]
fn sod1_gram_matrix_is_unimodular_at_every_twist() {
    for (a, b) in [(-1, -1), (0, 0), (-2, 0), (1, -1)] {
        let k = NumericalK::new(GeometryConfig::new(a, b));
        let classes: Vec<_> = bundle_basis().iter().map(|&d| k.line_class(d)).collect();
        let gram = k.gram_matrix(&classes).unwrap();
        assert_eq!(determinant(&gram).unwrap(), 1, "twist ({a},{b})");
        for (i, row) in gram.iter().enumerate() {
            assert_eq!(row[i], 1);
            assert!(row[..i].iter().all(|&v| v == 0));
        }
    }
}

#[test]
fn torsion_sheaf_classes() {
    let k = NumericalK::new(GeometryConfig::default());
    let e = k.e_class(SurfaceDivisor::new(-1, 0));
    assert_eq!(*e.rank(), nodal_core::geometry::rat(0));
    assert_eq!(k.euler_pairing(&e, &e).unwrap(), 1);
    let o = k.line_class(DivisorClass::ZERO);
    assert_eq!(k.euler_pairing(&o, &e).unwrap(), 0);
}

fn nodal() -> &'static NumericalK {
    static K: OnceLock<NumericalK> = OnceLock::new();
    K.get_or_init(|| NumericalK::new(GeometryConfig::default()))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

proptest! {
    #[test]
    fn hermite_transform_reproduces_form(m in matrix(4, 5)) {
        let h = hermite(&m, 5).unwrap();
        prop_assert_eq!(mat_mul(&h.transform, &m, 5).unwrap(), h.form.clone());
        prop_assert_eq!(determinant(&h.transform).unwrap().abs(), 1);
        for (r, &p) in h.pivots.iter().enumerate() {
            prop_assert!(h.form[r][p] > 0);
            for above in 0..r {
                prop_assert!((0..h.form[r][p]).contains(&h.form[above][p]));
            }
        }
    }

    #[test]
    fn smith_is_a_divisibility_chain(m in matrix(3, 4)) {
        let s = smith(&m, 4).unwrap();
        let prod = mat_mul(&mat_mul(&s.left, &m, 4).unwrap(), &s.right, 4).unwrap();
        for (i, row) in prod.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let want = if i == j && i < s.diagonal.len() { s.diagonal[i] } else { 0 };
                prop_assert_eq!(v, want);
            }
        }
        for w in s.diagonal.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn quotient_rank_is_additive(m in matrix(3, 4)) {
        let full = IntegerLattice::from_rows(4, (0..4).map(|i| (0..4).map(|j| i64::from(i == j)).collect()).collect()).unwrap();
        let sub = IntegerLattice::from_rows(4, m).unwrap();
        let q = quotient(&full, &sub).unwrap();
        prop_assert_eq!(q.rank + sub.rank(), 4);
        for row in sub.hnf() {
            prop_assert!(q.project(row).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn class_coordinates_round_trip(coords in prop::collection::vec(-5i64..=5, 8)) {
        let k = nodal();
        let c = k.from_coords(&coords).unwrap();
        prop_assert_eq!(k.from_chern(c.chern.clone()).unwrap(), c);
    }

    #[test]
    fn serre_pairing_on_random_classes(x in prop::collection::vec(-3i64..=3, 8), y in prop::collection::vec(-3i64..=3, 8)) {
        let k = nodal();
        let (x, y) = (k.from_coords(&x).unwrap(), k.from_coords(&y).unwrap());
        prop_assert_eq!(k.euler_pairing(&x, &y).unwrap(), k.euler_pairing(&y, &k.serre_class(&x)).unwrap());
        prop_assert_eq!(k.euler_pairing(&x, &y).unwrap(), k.euler_pairing_hrr(&x, &y).unwrap());
    }
}
