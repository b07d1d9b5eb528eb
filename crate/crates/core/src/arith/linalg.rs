//! Small dense linear algebra over ℚ and ℤ.
//!
//! Matrices are row-major `Vec<Vec<_>>`.  Sizes in this crate are tiny (at most
//! a few hundred rows for the modular-form bases), so plain Gaussian elimination
//! over exact rationals is the right tool.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Rational matrix (row-major).
pub type QMatrix = Vec<Vec<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r.max(pivots.len()));
    pivots
}

/// Solves `A x = b` exactly; returns `None` if inconsistent, otherwise one
/// solution (free variables set to zero) together with the nullity.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Option<(Vec<Rational>, usize)> {
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.contains(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Some((x, n - piv.len()))
}

/// Inverse of a square rational matrix, if it exists.
pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut aug: QMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by fraction-free elimination over ℚ.
pub fn det(a: &QMatrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = Rational::one() / &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    d
}

/// Determinant of an integer matrix by cofactor expansion (an independent oracle for small sizes).
pub fn det_cofactor(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return BigInt::from(a[0][0]);
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<i64>> =
            a[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect()).collect();
        let term = BigInt::from(a[0][j]) * det_cofactor(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Matrix product.
pub fn matmul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b.iter()).fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j])).collect())
        .collect()
}

/// Smith normal form `U · A · V = D` of an integer matrix with unimodular `U`, `V`.
///
/// Returns `(D diagonal entries, U, V)`; diagonal entries are non-negative and
/// each divides the next.
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> (Vec<BigInt>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut d: Vec<Vec<BigInt>> = a.to_vec();
    let ident = |k: usize| -> Vec<Vec<BigInt>> {
        (0..k).map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
    };
    let mut u = ident(m);
    let mut v = ident(n);
    let r = m.min(n);
    for t in 0..r {
        loop {
            // pick the smallest nonzero |entry| in the trailing block as pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap(t, pi);
            u.swap(t, pi);
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            // eliminate column t
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                for j in 0..n {
                    let x = &q * &d[t][j];
                    d[i][j] -= x;
                }
                for j in 0..m {
                    let x = &q * &u[t][j];
                    u[i][j] -= x;
                }
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
            // eliminate row t
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                for i in 0..m {
                    let x = &q * &d[i][t];
                    d[i][j] -= x;
                }
                for i in 0..n {
                    let x = &q * &v[i][t];
                    v[i][j] -= x;
                }
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility condition on the trailing block
            let mut fixed = true;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&d[i][j] % &d[t][t]).is_zero() {
                        // add row i to row t and repeat
                        for k in 0..n {
                            let x = d[i][k].clone();
                            d[t][k] += x;
                        }
                        for k in 0..m {
                            let x = u[i][k].clone();
                            u[t][k] += x;
                        }
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d[t][t].is_negative() {
            for k in 0..n {
                d[t][k] = -d[t][k].clone();
            }
            for k in 0..m {
                u[t][k] = -u[t][k].clone();
            }
        }
    }
    let diag = (0..r).map(|i| d[i][i].clone()).collect();
    (diag, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn snf_of_twisted_binary_lattice() {
        let (d, u, v) = smith_normal_form(&bi(&[&[-6, 3], &[3, -12]]));
        assert_eq!(d, vec![BigInt::from(3), BigInt::from(21)]);
        // check U A V = D
        let a = bi(&[&[-6, 3], &[3, -12]]);
        let mul = |x: &Vec<Vec<BigInt>>, y: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
            (0..x.len()).map(|i| (0..y[0].len()).map(|j| (0..y.len()).map(|k| &x[i][k] * &y[k][j]).sum()).collect()).collect()
        };
        let p = mul(&mul(&u, &a), &v);
        assert_eq!(p, bi(&[&[3, 0], &[0, 21]]));
    }

    #[test]
    fn snf_cyclic() {
        let (d, _, _) = smith_normal_form(&bi(&[&[-2, -3], &[-3, -36]]));
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(63)]);
    }

    #[test]
    fn inverse_and_det() {
        let a: QMatrix = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
        assert_eq!(det(&a), int(5));
        assert_eq!(det_cofactor(&[vec![2, 1], vec![1, 3]]), BigInt::from(5));
    }
}
