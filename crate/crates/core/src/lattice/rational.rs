//! Dense linear algebra over exact rationals.

use num_traits::{One, Zero};

use crate::geometry::Rational;

pub type RatMatrix = Vec<Vec<Rational>>;

/// Reduced row echelon form; returns the form and its pivot columns.
pub fn rref(m: &RatMatrix, cols: usize) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        a[r].iter_mut().for_each(|x| *x *= &inv);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (a, pivots)
}

pub fn rank(m: &RatMatrix, cols: usize) -> usize {
    rref(m, cols).1.len()
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let aug: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn row_times(v: &[Rational], m: &RatMatrix) -> Vec<Rational> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| v.iter().zip(m).fold(Rational::zero(), |acc, (x, row)| acc + x * &row[j]))
        .collect()
}

/// Basis of `{v : v m = 0}` over the rationals.
pub fn left_nullspace(m: &RatMatrix, cols: usize) -> RatMatrix {
    // v m = 0  <=>  m^T v^T = 0
    let rows = m.len();
    let mt: RatMatrix = (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect();
    let (red, pivots) = rref(&mt, rows);
    let free: Vec<usize> = (0..rows).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); rows];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red[r][f].clone();
            }
            v
        })
        .collect()
}

/// Some `x` with `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &RatMatrix, cols: usize, b: &[Rational]) -> Option<Vec<Rational>> {
    let aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = red[r][cols].clone();
    }
    Some(x)
}

pub fn determinant(m: &RatMatrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in (c + 1)..n {
            let f = &a[i][c] / &a[c][c];
            let pivot_row = a[c].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{frac, rat};

    #[test]
    fn inverse_and_det() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![rat(1), rat(-1)], vec![rat(-1), rat(2)]]);
        assert_eq!(determinant(&m), rat(1));
        let sing = vec![vec![rat(1), frac(1, 2)], vec![rat(2), rat(1)]];
        assert!(inverse(&sing).is_none());
        assert_eq!(determinant(&sing), rat(0));
    }

    #[test]
    fn linear_solve() {
        let a = vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)], vec![rat(2), rat(0)]];
        assert_eq!(solve(&a, 2, &[rat(3), rat(1), rat(4)]), Some(vec![rat(2), rat(1)]));
        assert_eq!(solve(&a, 2, &[rat(3), rat(1), rat(5)]), None);
    }

    #[test]
    fn nullspace() {
        let m = vec![vec![rat(1), rat(0)], vec![rat(0), rat(0)], vec![rat(-1), rat(2)]];
        let ns = left_nullspace(&m, 2);
        assert_eq!(ns.len(), 1);
        assert!(row_times(&ns[0], &m).iter().all(Zero::is_zero));
    }
}
