//! Rational Chow ring of `P_E(O + O(a,b))` over `E = P^1 x P^1`.
//!
//! Elements are stored in the monomial basis
//! `1 | H, h, k | Hh, Hk, hk | p` with `p = Hhk` the class of a point.
//! The relations `h^2 = k^2 = 0` and `H^2 = -a Hh - b Hk` are applied on
//! every product, so the representation is unique.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DivisorClass, GeometryConfig};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChowElement {
    pub c0: Rational,
    /// Coefficients of `H, h, k`.
    pub c1: [Rational; 3],
    /// Coefficients of `Hh, Hk, hk`.
    pub c2: [Rational; 3],
    /// Coefficient of the point class.
    pub c3: Rational,
}

fn zero3() -> [Rational; 3] {
    [Rational::zero(), Rational::zero(), Rational::zero()]
}

impl ChowElement {
    pub fn zero() -> Self {
        ChowElement { c0: Rational::zero(), c1: zero3(), c2: zero3(), c3: Rational::zero() }
    }

    pub fn one() -> Self {
        ChowElement { c0: Rational::one(), ..Self::zero() }
    }

    pub fn point() -> Self {
        ChowElement { c3: Rational::one(), ..Self::zero() }
    }

    pub fn divisor(d: DivisorClass) -> Self {
        ChowElement {
            c1: [rat(d.n_big_h), rat(d.n_h), rat(d.n_k)],
            ..Self::zero()
        }
    }

    /// The eight coordinates in basis order.
    pub fn coords(&self) -> [Rational; 8] {
        [
            self.c0.clone(),
            self.c1[0].clone(),
            self.c1[1].clone(),
            self.c1[2].clone(),
            self.c2[0].clone(),
            self.c2[1].clone(),
            self.c2[2].clone(),
            self.c3.clone(),
        ]
    }

    pub fn from_coords(c: [Rational; 8]) -> Self {
        let [c0, a, b, c, d, e, f, g] = c;
        ChowElement { c0, c1: [a, b, c], c2: [d, e, f], c3: g }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        ChowElement {
            c0: &self.c0 * s,
            c1: self.c1.clone().map(|x| x * s),
            c2: self.c2.clone().map(|x| x * s),
            c3: &self.c3 * s,
        }
    }

    /// Negates the odd-degree parts; on Chern characters this is `ch(F^v)`.
    pub fn dual(&self) -> Self {
        ChowElement {
            c0: self.c0.clone(),
            c1: self.c1.clone().map(|x| -x),
            c2: self.c2.clone(),
            c3: -self.c3.clone(),
        }
    }

    pub fn degree_part(&self, i: usize) -> Self {
        let mut out = Self::zero();
        match i {
            0 => out.c0 = self.c0.clone(),
            1 => out.c1 = self.c1.clone(),
            2 => out.c2 = self.c2.clone(),
            3 => out.c3 = self.c3.clone(),
            _ => {}
        }
        out
    }

    pub fn rank(&self) -> &Rational {
        &self.c0
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(Zero::is_zero)
    }
}

impl Add for &ChowElement {
    type Output = ChowElement;
    fn add(self, o: &ChowElement) -> ChowElement {
        ChowElement {
            c0: &self.c0 + &o.c0,
            c1: [0, 1, 2].map(|i| &self.c1[i] + &o.c1[i]),
            c2: [0, 1, 2].map(|i| &self.c2[i] + &o.c2[i]),
            c3: &self.c3 + &o.c3,
        }
    }
}

impl Sub for &ChowElement {
    type Output = ChowElement;
    fn sub(self, o: &ChowElement) -> ChowElement {
        self + &(-o)
    }
}

impl Neg for &ChowElement {
    type Output = ChowElement;
    fn neg(self) -> ChowElement {
        self.scale(&rat(-1))
    }
}

impl GeometryConfig {
    /// Product in the Chow ring; components above degree 3 vanish.
    pub fn chow_mul(&self, x: &ChowElement, y: &ChowElement) -> ChowElement {
        let (a, b) = (rat(self.a), rat(self.b));
        let [xh, xs, xk] = &x.c1;
        let [yh, ys, yk] = &y.c1;

        // H^2 = -a Hh - b Hk
        let hh = xh * yh;
        let c2_11 = [
            -&a * &hh + xh * ys + xs * yh,
            -&b * &hh + xh * yk + xk * yh,
            xs * yk + xk * ys,
        ];
        let c2 = [0, 1, 2].map(|i| &x.c0 * &y.c2[i] + &x.c2[i] * &y.c0 + &c2_11[i]);

        // degree one times degree two, using
        // H.Hh = -b p, H.Hk = -a p, H.hk = h.Hk = k.Hh = p, all others 0.
        let one_two = |u: &[Rational; 3], v: &[Rational; 3]| -> Rational {
            let (uh, us, uk) = (&u[0], &u[1], &u[2]);
            let (v_hh, v_hk, v_sk) = (&v[0], &v[1], &v[2]);
            -&b * uh * v_hh - &a * uh * v_hk + uh * v_sk + us * v_hk + uk * v_hh
        };
        let c3 = &x.c0 * &y.c3 + &x.c3 * &y.c0 + one_two(&x.c1, &y.c2) + one_two(&y.c1, &x.c2);

        ChowElement {
            c0: &x.c0 * &y.c0,
            c1: [0, 1, 2].map(|i| &x.c0 * &y.c1[i] + &x.c1[i] * &y.c0),
            c2,
            c3,
        }
    }

    pub fn chow_product<'a, I>(&self, factors: I) -> ChowElement
    where
        I: IntoIterator<Item = &'a ChowElement>,
    {
        factors
            .into_iter()
            .fold(ChowElement::one(), |acc, f| self.chow_mul(&acc, f))
    }

    /// `exp(D)` truncated at degree three.
    pub fn chern_character(&self, d: DivisorClass) -> ChowElement {
        let x = ChowElement::divisor(d);
        let x2 = self.chow_mul(&x, &x);
        let x3 = self.chow_mul(&x2, &x);
        let mut out = &ChowElement::one() + &x;
        out = &out + &x2.scale(&frac(1, 2));
        &out + &x3.scale(&frac(1, 6))
    }

    /// Total Chern class of the tangent bundle,
    /// `(1 + 2H + a h + b k)(1 + 2h)(1 + 2k)`.
    pub fn tangent_chern_class(&self) -> ChowElement {
        let vertical = &ChowElement::one() + &ChowElement::divisor(DivisorClass::new(2, self.a, self.b));
        let fh = &ChowElement::one() + &ChowElement::divisor(DivisorClass::new(0, 2, 0));
        let fk = &ChowElement::one() + &ChowElement::divisor(DivisorClass::new(0, 0, 2));
        self.chow_product([&vertical, &fh, &fk])
    }

    /// `1 + c1/2 + (c1^2 + c2)/12 + c1 c2 / 24`.
    pub fn todd_class(&self) -> ChowElement {
        let c = self.tangent_chern_class();
        let c1 = c.degree_part(1);
        let c2 = c.degree_part(2);
        let c1sq = self.chow_mul(&c1, &c1);
        let c1c2 = self.chow_mul(&c1, &c2);
        let mut td = &ChowElement::one() + &c1.scale(&frac(1, 2));
        td = &td + &(&c1sq + &c2).scale(&frac(1, 12));
        &td + &c1c2.scale(&frac(1, 24))
    }

    /// Hirzebruch-Riemann-Roch pairing `deg(x^v . y . td)`.
    pub fn hrr_euler(&self, x: &ChowElement, y: &ChowElement) -> Rational {
        let prod = self.chow_mul(&self.chow_mul(&x.dual(), y), &self.todd_class());
        degree(&prod)
    }
}

pub fn degree(x: &ChowElement) -> Rational {
    x.c3.clone()
}

impl fmt::Display for ChowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 8] = ["1", "H", "h", "k", "Hh", "Hk", "hk", "p"];
        let mut first = true;
        for (c, name) in self.coords().iter().zip(NAMES) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "({c}){name}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> GeometryConfig {
        GeometryConfig::default()
    }

    fn div(a: i64, b: i64, c: i64) -> ChowElement {
        ChowElement::divisor(DivisorClass::new(a, b, c))
    }

    #[test]
    fn small_products() {
        let g = g();
        assert!(g.chow_mul(&div(0, 1, 0), &div(0, 1, 0)).is_zero());
        assert!(g.chow_mul(&div(0, 0, 1), &div(0, 0, 1)).is_zero());
        // H^2 = Hh + Hk at the default twist
        let h2 = g.chow_mul(&div(1, 0, 0), &div(1, 0, 0));
        assert_eq!(h2.c2, [rat(1), rat(1), rat(0)]);
        let p = g.chow_product([&div(1, 0, 0), &div(0, 1, 0), &div(0, 0, 1)]);
        assert_eq!(p, ChowElement::point());
        assert_eq!(degree(&p), rat(1));
    }

    #[test]
    fn degree_of_h_cubed() {
        let h = div(1, 0, 0);
        assert_eq!(degree(&g().chow_product([&h, &h, &h])), rat(2));
        // 2ab in general
        let g2 = GeometryConfig::new(-2, 3);
        assert_eq!(degree(&g2.chow_product([&h, &h, &h])), rat(-12));
        let hk = g().chow_mul(&div(0, 1, 0), &div(0, 0, 1));
        assert_eq!(degree(&hk), rat(0));
    }

    #[test]
    fn h_times_exceptional_divisor_vanishes() {
        for a in -3..=3 {
            for b in -3..=3 {
                let g = GeometryConfig::new(a, b);
                let e = ChowElement::divisor(g.exceptional_divisor_class());
                assert!(g.chow_mul(&div(1, 0, 0), &e).is_zero(), "twist ({a},{b})");
            }
        }
    }

    #[test]
    fn product_is_commutative_and_associative() {
        let g = GeometryConfig::new(-1, 2);
        let xs = [div(1, 2, -1), div(-1, 0, 3), g.chern_character(DivisorClass::new(2, -1, 1))];
        for x in &xs {
            for y in &xs {
                assert_eq!(g.chow_mul(x, y), g.chow_mul(y, x));
                for z in &xs {
                    assert_eq!(
                        g.chow_mul(&g.chow_mul(x, y), z),
                        g.chow_mul(x, &g.chow_mul(y, z))
                    );
                }
            }
        }
    }

    #[test]
    fn chern_character_values() {
        let g = g();
        assert_eq!(g.chern_character(DivisorClass::ZERO), ChowElement::one());
        let ch = g.chern_character(DivisorClass::H);
        assert_eq!(ch.c0, rat(1));
        assert_eq!(ch.c1, [rat(1), rat(0), rat(0)]);
        assert_eq!(degree(&ch), frac(1, 3));
    }

    #[test]
    fn chern_character_is_multiplicative() {
        let g = GeometryConfig::new(0, -2);
        let d1 = DivisorClass::new(1, -2, 3);
        let d2 = DivisorClass::new(-2, 1, 1);
        assert_eq!(
            g.chow_mul(&g.chern_character(d1), &g.chern_character(d2)),
            g.chern_character(d1 + d2)
        );
    }

    #[test]
    fn todd_class_values() {
        let g = g();
        let td = g.todd_class();
        assert_eq!(td.c0, rat(1));
        assert_eq!(td.c1, [rat(1), frac(1, 2), frac(1, 2)]);
        assert_eq!(degree(&td), rat(1));
        let g0 = GeometryConfig::new(0, 0);
        assert_eq!(g0.todd_class().c1, [rat(1), rat(1), rat(1)]);
        assert_eq!(degree(&g0.todd_class()), rat(1));
    }

    #[test]
    fn hrr_small_values() {
        let g = g();
        let o = ChowElement::one();
        assert_eq!(g.hrr_euler(&o, &o), rat(1));
        assert_eq!(g.hrr_euler(&o, &g.chern_character(DivisorClass::H)), rat(5));
    }
}
