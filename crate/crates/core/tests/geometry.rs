use nodal_core::geometry::{
    degree, frac, rat, surface_cohomology, ChowElement, DivisorClass, GeometryConfig, GradedDims, PushLevel,
    SurfaceDivisor,
};
use proptest::prelude::*;

const TWISTS: [(i64, i64); 3] = [(-1, -1), (0, 0), (-2, 0)];

fn dims(pairs: &[(i64, u64)]) -> GradedDims {
    GradedDims::from_pairs(pairs.iter().copied())
}

fn d(a: i64, b: i64, c: i64) -> DivisorClass {
    DivisorClass::new(a, b, c)
}

#[test]
fn intersection_numbers() {
    let g = GeometryConfig::default();
    let big_h = ChowElement::divisor(DivisorClass::H);
    let h = ChowElement::divisor(DivisorClass::SMALL_H);
    let k = ChowElement::divisor(DivisorClass::SMALL_K);
    assert!(g.chow_mul(&h, &h).is_zero());
    assert_eq!(g.chow_mul(&big_h, &big_h), &g.chow_mul(&big_h, &h) + &g.chow_mul(&big_h, &k));
    assert_eq!(degree(&g.chow_product([&big_h, &h, &k])), rat(1));
    assert_eq!(degree(&g.chow_product([&big_h, &big_h, &big_h])), rat(2));
    assert_eq!(degree(&g.chow_mul(&h, &k)), rat(0));
    let e = ChowElement::divisor(g.exceptional_divisor_class());
    assert!(g.chow_product([&big_h, &e, &h]).is_zero());
    assert_eq!(degree(&g.chern_character(DivisorClass::H).degree_part(3)), frac(1, 3));
    assert_eq!(degree(&g.todd_class()), rat(1));
}

#[test]
fn canonical_and_exceptional_classes() {
    assert_eq!(GeometryConfig::new(-1, -1).canonical_class(), d(-2, -1, -1));
    assert_eq!(GeometryConfig::new(0, 0).canonical_class(), d(-2, -2, -2));
    assert_eq!(GeometryConfig::new(-2, 0).canonical_class(), d(-2, 0, -2));
    let g = GeometryConfig::default();
    assert_eq!(g.exceptional_divisor_class(), d(1, -1, -1));
    assert_eq!(g.restrict_to_e(g.exceptional_divisor_class()), SurfaceDivisor::new(-1, -1));
    for i in -3..=3 {
        assert_eq!(g.restrict_to_e(d(i, 0, 0)), SurfaceDivisor::ZERO);
    }
    assert_eq!(g.restrict_to_e(d(0, -2, -1)), SurfaceDivisor::new(-2, -1));
    for (a, b) in TWISTS {
        let g = GeometryConfig::new(a, b);
        assert_eq!(g.restrict_to_e(g.exceptional_divisor_class()), SurfaceDivisor::new(a, b));
    }
}

#[test]
fn cohomology_examples() {
    assert_eq!(surface_cohomology(SurfaceDivisor::new(0, 0)), dims(&[(0, 1)]));
    assert_eq!(surface_cohomology(SurfaceDivisor::new(0, -2)), dims(&[(1, 1)]));
    assert_eq!(surface_cohomology(SurfaceDivisor::new(-1, 0)), GradedDims::zero());
    assert_eq!(surface_cohomology(SurfaceDivisor::new(-2, -2)), dims(&[(2, 1)]));

    let g = GeometryConfig::default();
    assert_eq!(g.threefold_cohomology(d(1, -1, -1)), dims(&[(0, 1)]));
    assert_eq!(g.threefold_cohomology(d(0, 1, 0)), dims(&[(0, 2)]));
    assert_eq!(g.threefold_cohomology(d(1, 0, 0)), dims(&[(0, 5)]));
    assert_eq!(g.threefold_cohomology(d(1, -2, -1)), GradedDims::zero());

    let sd = SurfaceDivisor::new;
    assert_eq!(g.pushforward_decomposition(d(1, -2, -1)), (PushLevel::Zero, vec![sd(-2, -1), sd(-1, 0)]));
    assert_eq!(g.pushforward_decomposition(d(-1, 5, 7)), (PushLevel::None, vec![]));
    assert_eq!(g.pushforward_decomposition(d(-2, 0, 0)), (PushLevel::One, vec![sd(-1, -1)]));
}

#[test]
fn divisor_text_round_trips() {
    for text in ["-2H-h-k", "H-h-k", "2H+h-k", "0"] {
        let parsed: DivisorClass = text.parse().unwrap();
        assert_eq!(parsed.to_string().parse::<DivisorClass>().unwrap(), parsed);
    }
    assert_eq!("2H+h-k".parse::<DivisorClass>().unwrap(), d(2, 1, -1));
    assert!("2X".parse::<DivisorClass>().is_err());
    assert_eq!("(-1,0)".parse::<SurfaceDivisor>().unwrap(), SurfaceDivisor::new(-1, 0));
}

fn twist() -> impl Strategy<Value = GeometryConfig> {
    prop::sample::select(TWISTS.to_vec()).prop_map(|(a, b)| GeometryConfig::new(a, b))
}

fn divisor(r: i64) -> impl Strategy<Value = DivisorClass> {
    (-r..=r, -r..=r, -r..=r).prop_map(|(a, b, c)| d(a, b, c))
}

proptest! {
    #[test]
    fn riemann_roch_matches_cohomology(g in twist(), x in divisor(5)) {
        let chi = g.hrr_euler(&ChowElement::one(), &g.chern_character(x));
        prop_assert_eq!(chi, rat(g.threefold_cohomology(x).euler()));
    }

    #[test]
    fn serre_duality_on_the_threefold(g in twist(), x in divisor(5)) {
        prop_assert_eq!(g.threefold_cohomology(x), g.threefold_cohomology(g.canonical_class() - x).reflected(3));
    }

    #[test]
    fn serre_duality_on_e(a in -8i64..=8, b in -8i64..=8) {
        let beta = SurfaceDivisor::new(a, b);
        prop_assert_eq!(surface_cohomology(beta), surface_cohomology(SurfaceDivisor::new(-2 - a, -2 - b)).reflected(2));
    }

    #[test]
    fn chern_character_is_multiplicative(g in twist(), x in divisor(3), y in divisor(3)) {
        prop_assert_eq!(g.chow_mul(&g.chern_character(x), &g.chern_character(y)), g.chern_character(x + y));
    }

    #[test]
    fn fiber_swap_symmetry(x in divisor(4)) {
        let g = GeometryConfig::default();
        prop_assert_eq!(g.threefold_cohomology(x), g.threefold_cohomology(x.swap_fibers()));
    }
}
