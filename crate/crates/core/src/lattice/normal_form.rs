//! Hermite and Smith normal forms over the integers, with unimodular
//! transforms. Matrices are row-major `Vec<Vec<i64>>`; every row operation
//! is overflow-checked.

use num_integer::Integer;

use crate::error::LatticeError;

pub type IntMatrix = Vec<Vec<i64>>;

fn checked_combo(a: i64, x: &[i64], b: i64, y: &[i64]) -> Result<Vec<i64>, LatticeError> {
    x.iter()
        .zip(y)
        .map(|(&xi, &yi)| {
            a.checked_mul(xi)
                .and_then(|p| b.checked_mul(yi).and_then(|q| p.checked_add(q)))
                .ok_or(LatticeError::Overflow)
        })
        .collect()
}

/// `(g, s, t)` with `g = gcd(a, b) = s a + t b`, `g >= 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Coefficients `(s, t, p, q)` of the unimodular step `(x, y) -> (s x + t y, -q x + p y) = (g, 0)`.
/// Exact divisibility keeps the first vector unchanged.
fn elimination(x: i64, y: i64) -> (i64, i64, i64, i64) {
    if x != 0 && y % x == 0 {
        return (1, 0, 1, y / x);
    }
    let (g, s, t) = ext_gcd(x, y);
    (s, t, x / g, y / g)
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &IntMatrix, cols: usize) -> IntMatrix {
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, b_cols: usize) -> Result<IntMatrix, LatticeError> {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| {
                    row.iter().zip(b).try_fold(0i64, |acc, (&x, brow)| {
                        x.checked_mul(brow[j])
                            .and_then(|p| acc.checked_add(p))
                            .ok_or(LatticeError::Overflow)
                    })
                })
                .collect()
        })
        .collect()
}

pub fn vec_mat(v: &[i64], m: &IntMatrix, cols: usize) -> Result<Vec<i64>, LatticeError> {
    Ok(mat_mul(&vec![v.to_vec()], m, cols)?.remove(0))
}

/// Row-style Hermite normal form.
#[derive(Debug, Clone)]
pub struct Hermite {
    /// `transform * input = form`; `transform` is unimodular.
    pub form: IntMatrix,
    pub transform: IntMatrix,
    /// Number of nonzero rows; these come first.
    pub rank: usize,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

/// Hermite normal form of the row lattice of `m` (`cols` columns).
///
/// Pivots are positive and entries above each pivot are reduced into `[0, pivot)`.
pub fn hermite(m: &IntMatrix, cols: usize) -> Result<Hermite, LatticeError> {
    let rows = m.len();
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in (r + 1)..rows {
            if a[i][c] == 0 {
                continue;
            }
            if a[r][c] == 0 {
                a.swap(r, i);
                u.swap(r, i);
                continue;
            }
            let (s, t, p, q) = elimination(a[r][c], a[i][c]);
            let new_r = checked_combo(s, &a[r], t, &a[i])?;
            let new_i = checked_combo(-q, &a[r], p, &a[i])?;
            a[r] = new_r;
            a[i] = new_i;
            let new_ur = checked_combo(s, &u[r], t, &u[i])?;
            let new_ui = checked_combo(-q, &u[r], p, &u[i])?;
            u[r] = new_ur;
            u[i] = new_ui;
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            a[r].iter_mut().for_each(|x| *x = -*x);
            u[r].iter_mut().for_each(|x| *x = -*x);
        }
        let piv = a[r][c];
        for i in 0..r {
            let f = num_integer::Integer::div_floor(&a[i][c], &piv);
            if f != 0 {
                a[i] = checked_combo(1, &a[i], -f, &a[r])?;
                u[i] = checked_combo(1, &u[i], -f, &u[r])?;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(Hermite { form: a, transform: u, rank: r, pivots })
}

/// Smith normal form `left * m * right = diag(d_1, ..., d_s, 0, ...)`,
/// with `d_i | d_{i+1}` and `d_i > 0`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

pub fn smith(m: &IntMatrix, cols: usize) -> Result<Smith, LatticeError> {
    let rows = m.len();
    let mut a = m.clone();
    let mut left = identity(rows);
    // column operations are applied to the transpose of `right`
    let mut right_t = identity(cols);
    let mut diag = Vec::new();

    let col = |a: &IntMatrix, j: usize| -> Vec<i64> { a.iter().map(|r| r[j]).collect() };
    let set_col = |a: &mut IntMatrix, j: usize, v: Vec<i64>| {
        for (r, x) in a.iter_mut().zip(v) {
            r[j] = x;
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // choose the smallest nonzero entry in the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        left.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        right_t.swap(t, pj);

        loop {
            let mut changed = false;
            for i in (t + 1)..rows {
                if a[i][t] == 0 {
                    continue;
                }
                let (s, tt, p, q) = elimination(a[t][t], a[i][t]);
                let nt = checked_combo(s, &a[t], tt, &a[i])?;
                let ni = checked_combo(-q, &a[t], p, &a[i])?;
                a[t] = nt;
                a[i] = ni;
                let lt = checked_combo(s, &left[t], tt, &left[i])?;
                let li = checked_combo(-q, &left[t], p, &left[i])?;
                left[t] = lt;
                left[i] = li;
                changed = true;
            }
            for j in (t + 1)..cols {
                if a[t][j] == 0 {
                    continue;
                }
                let (s, tt, p, q) = elimination(a[t][t], a[t][j]);
                let (ct, cj) = (col(&a, t), col(&a, j));
                set_col(&mut a, t, checked_combo(s, &ct, tt, &cj)?);
                set_col(&mut a, j, checked_combo(-q, &ct, p, &cj)?);
                let rt = checked_combo(s, &right_t[t], tt, &right_t[j])?;
                let rj = checked_combo(-q, &right_t[t], p, &right_t[j])?;
                right_t[t] = rt;
                right_t[j] = rj;
                changed = true;
            }
            if !changed {
                // enforce divisibility of the remaining block
                let piv = a[t][t];
                let bad = ((t + 1)..rows)
                    .flat_map(|i| ((t + 1)..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % piv != 0);
                match bad {
                    Some((i, _)) => {
                        a[t] = checked_combo(1, &a[t], 1, &a[i])?;
                        left[t] = checked_combo(1, &left[t], 1, &left[i])?;
                    }
                    None => break,
                }
            }
        }
        if a[t][t] < 0 {
            a[t].iter_mut().for_each(|x| *x = -*x);
            left[t].iter_mut().for_each(|x| *x = -*x);
        }
        diag.push(a[t][t]);
        t += 1;
    }
    Ok(Smith { diagonal: diag, left, right: transpose(&right_t, cols) })
}

/// Basis of the left integer kernel `{v : v m = 0}`; the result is saturated.
pub fn left_kernel(m: &IntMatrix, cols: usize) -> Result<IntMatrix, LatticeError> {
    let h = hermite(m, cols)?;
    Ok(h.transform[h.rank..].to_vec())
}

/// Integer determinant by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> Result<i64, LatticeError> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = ((k + 1)..n).find(|&i| a[i][k] != 0) else {
                return Ok(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                    .ok_or(LatticeError::Overflow)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    let det = if n == 0 { 1 } else { sign * a[n - 1][n - 1] };
    i64::try_from(det).map_err(|_| LatticeError::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hermite_small() {
        let m = vec![vec![2, 4], vec![1, 3]];
        let h = hermite(&m, 2).unwrap();
        assert_eq!(h.rank, 2);
        assert_eq!(h.form, vec![vec![1, 1], vec![0, 2]]);
        assert_eq!(mat_mul(&h.transform, &m, 2).unwrap(), h.form);
    }

    #[test]
    fn smith_small() {
        let s = smith(&vec![vec![2, 0], vec![0, 3]], 2).unwrap();
        assert_eq!(s.diagonal, vec![1, 6]);
        let s = smith(&vec![vec![2, 0]], 2).unwrap();
        assert_eq!(s.diagonal, vec![2]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&vec![vec![1, 2], vec![3, 4]]).unwrap(), -2);
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, 0]]).unwrap(), -1);
        assert_eq!(determinant(&vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]).unwrap(), 6);
        assert_eq!(determinant(&vec![vec![1, 2], vec![2, 4]]).unwrap(), 0);
    }

    #[test]
    fn kernel_of_column() {
        let k = left_kernel(&vec![vec![1], vec![0], vec![1]], 1).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v[0] + v[2], 0);
        }
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
        })
    }

    proptest! {
        #[test]
        fn hermite_transform_is_consistent(m in small_matrix()) {
            let cols = m[0].len();
            let h = hermite(&m, cols).unwrap();
            prop_assert_eq!(mat_mul(&h.transform, &m, cols).unwrap(), h.form.clone());
            prop_assert_eq!(determinant(&h.transform).unwrap().abs(), 1);
            for row in &h.form[h.rank..] {
                prop_assert!(row.iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn smith_transform_is_consistent(m in small_matrix()) {
            let cols = m[0].len();
            let s = smith(&m, cols).unwrap();
            let prod = mat_mul(&mat_mul(&s.left, &m, cols).unwrap(), &s.right, cols).unwrap();
            for (i, row) in prod.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    let want = if i == j && i < s.diagonal.len() { s.diagonal[i] } else { 0 };
                    prop_assert_eq!(x, want);
                }
            }
            for w in s.diagonal.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            prop_assert_eq!(determinant(&s.left).unwrap().abs(), 1);
            prop_assert_eq!(determinant(&s.right).unwrap().abs(), 1);
        }
    }
}
