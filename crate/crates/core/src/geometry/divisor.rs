use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Divisor on the threefold, in the basis `H, h, k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct DivisorClass {
    pub n_big_h: i64,
    pub n_h: i64,
    pub n_k: i64,
}

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass::new(0, 0, 0);
    pub const H: DivisorClass = DivisorClass::new(1, 0, 0);
    pub const SMALL_H: DivisorClass = DivisorClass::new(0, 1, 0);
    pub const SMALL_K: DivisorClass = DivisorClass::new(0, 0, 1);

    pub const fn new(n_big_h: i64, n_h: i64, n_k: i64) -> Self {
        DivisorClass { n_big_h, n_h, n_k }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    /// Exchanges the roles of `h` and `k`.
    pub fn swap_fibers(self) -> Self {
        DivisorClass::new(self.n_big_h, self.n_k, self.n_h)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.n_big_h + o.n_big_h, self.n_h + o.n_h, self.n_k + o.n_k)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        self + (-o)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(-self.n_big_h, -self.n_h, -self.n_k)
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, d: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * d.n_big_h, self * d.n_h, self * d.n_k)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: &mut bool, coeff: i64, sym: &str) -> fmt::Result {
    if coeff == 0 {
        return Ok(());
    }
    if coeff < 0 {
        f.write_str("-")?;
    } else if !*first {
        f.write_str("+")?;
    }
    if coeff.abs() != 1 {
        write!(f, "{}", coeff.abs())?;
    }
    f.write_str(sym)?;
    *first = false;
    Ok(())
}

impl fmt::Display for DivisorClass {
    /// Prints `2H+h-k`; the zero divisor prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        write_term(f, &mut first, self.n_big_h, "H")?;
        write_term(f, &mut first, self.n_h, "h")?;
        write_term(f, &mut first, self.n_k, "k")
    }
}

impl FromStr for DivisorClass {
    type Err = ParseError;

    /// Accepts signed integer combinations of `H`, `h`, `k`, e.g. `-2H-h-k`.
    /// The empty string and `0` denote the zero divisor.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        if s.trim() == "0" {
            return Ok(DivisorClass::ZERO);
        }
        let bytes: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut out = DivisorClass::ZERO;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Ok(out);
        }
        let mut first = true;
        while pos < bytes.len() {
            skip_ws(&mut pos);
            let term_start = pos;
            let mut sign = 1;
            if pos < bytes.len() && (bytes[pos] == '+' || bytes[pos] == '-') {
                if bytes[pos] == '-' {
                    sign = -1;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(ParseError::new(term_start, "expected '+' or '-' between divisor terms"));
            }
            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: i64 = if pos > digits_start {
                let text: String = bytes[digits_start..pos].iter().collect();
                text.parse()
                    .map_err(|_| ParseError::new(digits_start, "divisor coefficient out of range"))?
            } else {
                1
            };
            skip_ws(&mut pos);
            let sym = bytes.get(pos).copied();
            match sym {
                Some('H') => out.n_big_h += sign * coeff,
                Some('h') => out.n_h += sign * coeff,
                Some('k') => out.n_k += sign * coeff,
                _ => return Err(ParseError::new(pos, "expected one of H, h, k")),
            }
            pos += 1;
            first = false;
            skip_ws(&mut pos);
        }
        Ok(out)
    }
}

/// Divisor `O_E(d, e)` on the exceptional quadric surface `P^1 x P^1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct SurfaceDivisor {
    pub d: i64,
    pub e: i64,
}

impl SurfaceDivisor {
    pub const ZERO: SurfaceDivisor = SurfaceDivisor::new(0, 0);

    pub const fn new(d: i64, e: i64) -> Self {
        SurfaceDivisor { d, e }
    }

    /// The pullback `d*h + e*k` of this divisor along the bundle projection.
    pub fn pullback(self) -> DivisorClass {
        DivisorClass::new(0, self.d, self.e)
    }
}

impl Add for SurfaceDivisor {
    type Output = SurfaceDivisor;
    fn add(self, o: SurfaceDivisor) -> SurfaceDivisor {
        SurfaceDivisor::new(self.d + o.d, self.e + o.e)
    }
}

impl Sub for SurfaceDivisor {
    type Output = SurfaceDivisor;
    fn sub(self, o: SurfaceDivisor) -> SurfaceDivisor {
        SurfaceDivisor::new(self.d - o.d, self.e - o.e)
    }
}

impl Neg for SurfaceDivisor {
    type Output = SurfaceDivisor;
    fn neg(self) -> SurfaceDivisor {
        SurfaceDivisor::new(-self.d, -self.e)
    }
}

impl fmt::Display for SurfaceDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d, self.e)
    }
}

impl FromStr for SurfaceDivisor {
    type Err = ParseError;

    /// Parses `(d,e)`; the parentheses are optional.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let mut parts = inner.split(',');
        let (Some(d), Some(e), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ParseError::new(0, "expected a surface divisor of the form (d,e)"));
        };
        let d = d.trim().parse().map_err(|_| ParseError::new(0, "bad integer in surface divisor"))?;
        let e = e.trim().parse().map_err(|_| ParseError::new(0, "bad integer in surface divisor"))?;
        Ok(SurfaceDivisor::new(d, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_divisors() {
        assert_eq!("2H+h-k".parse::<DivisorClass>().unwrap(), DivisorClass::new(2, 1, -1));
        assert_eq!("-2H-h-k".parse::<DivisorClass>().unwrap(), DivisorClass::new(-2, -1, -1));
        assert_eq!("".parse::<DivisorClass>().unwrap(), DivisorClass::ZERO);
        assert_eq!("0".parse::<DivisorClass>().unwrap(), DivisorClass::ZERO);
        assert_eq!("H - 3k".parse::<DivisorClass>().unwrap(), DivisorClass::new(1, 0, -3));
        assert_eq!("h+h".parse::<DivisorClass>().unwrap(), DivisorClass::new(0, 2, 0));
        assert!("2x".parse::<DivisorClass>().is_err());
        assert!("H h".parse::<DivisorClass>().is_err());
    }

    #[test]
    fn display_round_trip() {
        for d in [
            DivisorClass::new(2, 1, -1),
            DivisorClass::new(-2, -1, -1),
            DivisorClass::new(0, 0, 5),
            DivisorClass::ZERO,
        ] {
            assert_eq!(d.to_string().parse::<DivisorClass>().unwrap(), d);
        }
        assert_eq!(DivisorClass::new(1, -1, -1).to_string(), "H-h-k");
    }

    #[test]
    fn surface_divisor_parse() {
        assert_eq!("(-1,0)".parse::<SurfaceDivisor>().unwrap(), SurfaceDivisor::new(-1, 0));
        assert_eq!(" 2 , -3 ".parse::<SurfaceDivisor>().unwrap(), SurfaceDivisor::new(2, -3));
        assert!("(1)".parse::<SurfaceDivisor>().is_err());
    }
}
