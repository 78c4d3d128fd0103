//! Determinants, Hessians and Sylvester resultants.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poly::{Degree, Poly};
use crate::scalar::Scalar;

fn check_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: row.len() });
    }
    Ok(n)
}

/// Determinant of a square matrix of polynomials by cofactor expansion along the rows.
///
/// Minors on the same set of trailing columns are shared, so an `n x n` matrix costs
/// `O(n 2^n)` polynomial products instead of `O(n!)`.
pub fn determinant(m: &[Vec<Poly>]) -> Result<Poly> {
    let n = check_square(m)?;
    let first = &m[0][0];
    for row in m {
        for e in row {
            first.check_compatible(e)?;
        }
    }
    if n > 20 {
        return Err(Error::InvalidArgument(format!("{n}x{n} determinant is too large")));
    }
    let one = Poly::constant(first.alphabet(), first.domain().one());
    let zero = Poly::zero(first.alphabet(), first.domain());
    // minors[mask] = det of rows (n - |mask|).. restricted to the columns in mask
    let mut minors: HashMap<u32, Poly> = HashMap::new();
    minors.insert(0, one);
    for size in 1..=n {
        let row = n - size;
        let mut next: HashMap<u32, Poly> = HashMap::new();
        for mask in masks_of_size(n, size) {
            let mut acc = zero.clone();
            for (pos, col) in (0..n).filter(|c| mask & (1 << c) != 0).enumerate() {
                let entry = &m[row][col];
                if entry.is_zero() {
                    continue;
                }
                let minor = &minors[&(mask & !(1 << col))];
                if minor.is_zero() {
                    continue;
                }
                let term = entry * minor;
                acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            next.insert(mask, acc);
        }
        minors = next;
    }
    Ok(minors.remove(&((1u32 << n) - 1)).expect("full minor computed"))
}

fn masks_of_size(n: usize, size: usize) -> impl Iterator<Item = u32> {
    (0u32..(1 << n)).filter(move |m| m.count_ones() as usize == size)
}

/// Determinant of a scalar matrix by Gaussian elimination.
pub fn scalar_determinant(m: &[Vec<Scalar>]) -> Result<Scalar> {
    let n = check_square(m)?;
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let domain = a[0][0].domain();
    let mut det = domain.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(domain.zero());
        };
        if pivot != col {
            a.swap(pivot, col);
            det = det.neg();
        }
        let p = a[col][col].clone();
        det = det.mul(&p);
        let inv = p.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].mul(&inv);
            for c in col..n {
                let v = a[r][c].sub(&factor.mul(&a[col][c]));
                a[r][c] = v;
            }
        }
    }
    Ok(det)
}

/// Inverse of a scalar matrix; `None` when singular.
pub fn scalar_inverse(m: &[Vec<Scalar>]) -> Result<Option<Vec<Vec<Scalar>>>> {
    let n = check_square(m)?;
    let domain = m[0][0].domain();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { domain.one() } else { domain.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(None);
        };
        a.swap(pivot, col);
        let inv = a[col][col].inv().expect("nonzero pivot");
        for c in 0..2 * n {
            a[col][c] = a[col][c].mul(&inv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..2 * n {
                let v = a[r][c].sub(&factor.mul(&a[col][c]));
                a[r][c] = v;
            }
        }
    }
    Ok(Some(a.into_iter().map(|r| r[n..].to_vec()).collect()))
}

/// Rank of a (not necessarily square) scalar matrix.
pub fn scalar_rank(m: &[Vec<Scalar>]) -> usize {
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot, rank);
        let inv = a[rank][col].inv().expect("nonzero pivot");
        for r in rank + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].mul(&inv);
            for c in col..cols {
                let v = a[r][c].sub(&factor.mul(&a[rank][c]));
                a[r][c] = v;
            }
        }
        rank += 1;
    }
    rank
}

pub fn scalar_matmul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(row[0].domain().zero(), |acc, k| acc.add(&row[k].mul(&b[k][j])))
                })
                .collect()
        })
        .collect()
}

/// Matrix of second partial derivatives in the listed variables.
pub fn hessian(f: &Poly, vars: &[&str]) -> Result<Vec<Vec<Poly>>> {
    let idx = vars
        .iter()
        .map(|v| f.alphabet().index_of(v))
        .collect::<Result<Vec<_>>>()?;
    let firsts: Vec<Poly> = idx.iter().map(|&i| f.derivative(i)).collect();
    Ok(firsts
        .iter()
        .map(|fi| idx.iter().map(|&j| fi.derivative(j)).collect())
        .collect())
}

/// Determinant of the Sylvester matrix of `f` and `g` with respect to `var`.
///
/// The first `deg_var g` rows carry the coefficients of `f` (leading first), the remaining
/// `deg_var f` rows those of `g`.
pub fn sylvester_resultant(f: &Poly, g: &Poly, var: &str) -> Result<Poly> {
    f.check_compatible(g)?;
    let v = f.alphabet().index_of(var)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (Degree::Finite(m), Degree::Finite(n)) = (f.degree_in(v), g.degree_in(v)) else {
        unreachable!("nonzero polynomials have finite degree");
    };
    if m == 0 && n == 0 {
        return Err(Error::VariableAbsent(var.to_string()));
    }
    let (m, n) = (m as usize, n as usize);
    let size = m + n;
    let fc = f.coefficients_in(v);
    let gc = g.coefficients_in(v);
    let zero = Poly::zero(f.alphabet(), f.domain());
    let mut rows = vec![vec![zero; size]; size];
    for i in 0..n {
        for j in 0..=m {
            rows[i][i + j] = fc[m - j].clone();
        }
    }
    for i in 0..m {
        for j in 0..=n {
            rows[n + i][i + j] = gc[n - j].clone();
        }
    }
    determinant(&rows)
}
