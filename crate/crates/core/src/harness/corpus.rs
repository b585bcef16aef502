//! A seeded corpus of random expressions for the syntactic property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::{Atom, Expr, Provenance};
use crate::geometry::{DivisorClass, SurfaceDivisor};

pub const CORPUS_SIZE: usize = 100;
pub const CORPUS_SEED: u64 = 0x6e6f_6461_6c;

const PROVENANCES: [Provenance; 5] = [
    Provenance::Evaluation,
    Provenance::Restriction,
    Provenance::Euler,
    Provenance::UniversalExtension,
    Provenance::Unspecified,
];

fn line(rng: &mut ChaCha8Rng) -> Expr {
    Expr::Atom(Atom::Line(DivisorClass::new(rng.random_range(-2..=2), rng.random_range(-2..=2), rng.random_range(-2..=2))))
}

fn atom(rng: &mut ChaCha8Rng) -> Expr {
    if rng.random_bool(0.6) {
        line(rng)
    } else {
        Expr::Atom(Atom::OnE(SurfaceDivisor::new(rng.random_range(-2..=2), rng.random_range(-2..=2))))
    }
}

fn expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 {
        return atom(rng);
    }
    match rng.random_range(0..7) {
        0 => atom(rng),
        1 => Expr::Shift(Box::new(expr(rng, depth - 1)), rng.random_range(-3..=3)),
        2 => {
            let n = rng.random_range(1..=3);
            Expr::Sum((0..n).map(|_| expr(rng, depth - 1)).collect())
        }
        3 | 4 => Expr::Cone {
            source: Box::new(expr(rng, depth - 1)),
            target: Box::new(expr(rng, depth - 1)),
            provenance: PROVENANCES[rng.random_range(0..PROVENANCES.len())],
        },
        // Mutations through a line bundle of an atom: RHom is always determined there.
        5 => Expr::Left(Box::new(line(rng)), Box::new(atom(rng))),
        _ => Expr::Right(Box::new(atom(rng)), Box::new(line(rng))),
    }
}

/// `CORPUS_SIZE` expressions of depth at most 3, identical on every run.
pub fn corpus() -> Vec<Expr> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE).map(|_| expr(&mut rng, 3)).collect()
}
