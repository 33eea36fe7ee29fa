//! Dense linear algebra over an exact field.

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

/// Determinant by Gaussian elimination.
pub fn determinant(k: &Field, mut m: Vec<Vec<Elem>>) -> Elem {
    let n = m.len();
    let mut det = k.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return k.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = k.neg(&det);
        }
        let p = m[col][col].clone();
        det = k.mul(&det, &p);
        let pinv = k.inv(&p).expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let c = k.mul(&m[r][col], &pinv);
            for j in col..n {
                let t = k.mul(&c, &m[col][j]);
                m[r][j] = k.sub(&m[r][j], &t);
            }
        }
    }
    det
}

/// Diagonalizes a nondegenerate symmetric matrix by completing squares.
///
/// Pivot rule: the first remaining index with a nonzero diagonal entry; if all
/// remaining diagonal entries vanish, the first nonzero off-diagonal pair
/// `(i, j)` is combined as `e_i + e_j`, which creates the diagonal entry `2 a_ij`.
pub fn diagonalize_symmetric(k: &Field, mut a: Vec<Vec<Elem>>) -> Result<Vec<Elem>> {
    let n = a.len();
    let mut live: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    while !live.is_empty() {
        let pivot = match live.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let mut pair = None;
                'search: for (pi, &i) in live.iter().enumerate() {
                    for &j in &live[pi + 1..] {
                        if !a[i][j].is_zero() {
                            pair = Some((pi, i, j));
                            break 'search;
                        }
                    }
                }
                let Some((pi, i, j)) = pair else {
                    return Err(Error::InvalidInput("degenerate symmetric matrix".into()));
                };
                for &r in &live {
                    let v = k.add(&a[r][i], &a[r][j]);
                    a[r][i] = v;
                }
                for &c in &live {
                    let v = k.add(&a[i][c], &a[j][c]);
                    a[i][c] = v;
                }
                pi
            }
        };
        let p = live.remove(pivot);
        let d = a[p][p].clone();
        let dinv = k.inv(&d)?;
        for &r in &live {
            if a[r][p].is_zero() {
                continue;
            }
            let c = k.mul(&a[r][p], &dinv);
            for &s in &live {
                let t = k.mul(&c, &a[p][s]);
                a[r][s] = k.sub(&a[r][s], &t);
            }
        }
        for &r in &live {
            a[r][p] = k.zero();
            a[p][r] = k.zero();
        }
        out.push(d);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(k: &Field, rows: &[&[i64]]) -> Vec<Vec<Elem>> {
        rows.iter().map(|r| r.iter().map(|&x| k.from_i64(x)).collect()).collect()
    }

    #[test]
    fn determinant_small() {
        let k = Field::rationals();
        assert_eq!(determinant(&k, m(&k, &[&[2, 1], &[1, 3]])), k.from_i64(5));
        assert_eq!(determinant(&k, m(&k, &[&[0, 1], &[1, 0]])), k.from_i64(-1));
    }

    #[test]
    fn diagonalizes_hyperbolic_block() {
        let k = Field::rationals();
        let d = diagonalize_symmetric(&k, m(&k, &[&[3, 0, 0], &[0, 0, 6], &[0, 6, 0]])).unwrap();
        assert_eq!(d, vec![k.from_i64(3), k.from_i64(12), k.from_i64(-3)]);
        // determinant is preserved up to squares: 3*12*(-3) = -108 = -3 * 36 = det
        let det = determinant(&k, m(&k, &[&[3, 0, 0], &[0, 0, 6], &[0, 6, 0]]));
        assert_eq!(det, k.from_i64(-108));
    }

    #[test]
    fn rejects_degenerate() {
        let k = Field::rationals();
        assert!(diagonalize_symmetric(&k, m(&k, &[&[1, 1], &[1, 1]])).is_err());
    }
}
