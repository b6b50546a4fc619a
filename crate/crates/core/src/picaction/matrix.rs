use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::intpoly::IntPoly;
use crate::error::{Error, Result};

pub type BigMat = Vec<Vec<BigInt>>;

/// Ordered labels of divisor classes; H comes first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PicBasis(Vec<String>);

impl PicBasis {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.first().map(String::as_str) != Some("H") {
            return Err(Error::ShapeMismatch("basis must start with H".into()));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::ShapeMismatch(format!("duplicate class {dup}")));
        }
        Ok(PicBasis(labels))
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.0.iter().position(|l| l == label)
    }
}

/// Integer pullback matrix; column j holds the pullback of class j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicMatrix {
    pub basis: PicBasis,
    pub matrix: Vec<Vec<i64>>,
}

/// A class expansion: (label, coefficient) pairs.
pub type Expansion = Vec<(String, i64)>;

impl PicMatrix {
    /// Builds the matrix from the pullback of every basis class.
    pub fn from_pullbacks(basis: PicBasis, pulls: &[(String, Expansion)]) -> Result<Self> {
        let n = basis.len();
        let mut matrix = vec![vec![0i64; n]; n];
        let mut done = vec![false; n];
        for (src, img) in pulls {
            let j = basis.index(src).ok_or_else(|| Error::ShapeMismatch(format!("unknown class {src}")))?;
            if done[j] {
                return Err(Error::ShapeMismatch(format!("pullback of {src} given twice")));
            }
            done[j] = true;
            for (l, c) in img {
                let i = basis.index(l).ok_or_else(|| Error::ShapeMismatch(format!("unknown class {l}")))?;
                matrix[i][j] += c;
            }
        }
        if let Some(j) = done.iter().position(|d| !d) {
            return Err(Error::ShapeMismatch(format!("no pullback for {}", basis.labels()[j])));
        }
        Ok(PicMatrix { basis, matrix })
    }

    pub fn from_rows(basis: PicBasis, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = basis.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("matrix does not match basis".into()));
        }
        Ok(PicMatrix { basis, matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn big(&self) -> BigMat {
        self.matrix.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect()
    }

    /// Pullback of a class as an expansion in the basis.
    pub fn column(&self, label: &str) -> Option<HashMap<String, i64>> {
        let j = self.basis.index(label)?;
        Some(
            self.basis
                .labels()
                .iter()
                .enumerate()
                .filter(|(i, _)| self.matrix[*i][j] != 0)
                .map(|(i, l)| (l.clone(), self.matrix[i][j]))
                .collect(),
        )
    }

    pub fn charpoly(&self) -> IntPoly {
        berkowitz(&self.big())
    }

    pub fn determinant(&self) -> BigInt {
        let cp = self.charpoly();
        // det M = (-1)^n chi(0)
        if self.dim() % 2 == 0 {
            cp.coeff(0)
        } else {
            -cp.coeff(0)
        }
    }

    /// H-coefficient of M^i H for i = 0..=n.
    pub fn h_sequence(&self, n: usize) -> Vec<BigInt> {
        let m = self.big();
        let mut v = vec![BigInt::zero(); self.dim()];
        v[0] = BigInt::one();
        let mut out = vec![v[0].clone()];
        for _ in 0..n {
            v = mat_vec(&m, &v);
            out.push(v[0].clone());
        }
        out
    }
}

impl fmt::Display for PicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.basis.labels().iter().map(|l| l.len()).max().unwrap_or(1);
        for (l, row) in self.basis.labels().iter().zip(&self.matrix) {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
            writeln!(f, "{l:>w$} | {}", cells.join(""))?;
        }
        Ok(())
    }
}

pub fn identity(n: usize) -> BigMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &BigMat, b: &BigMat) -> BigMat {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for (i, row) in a.iter().enumerate() {
        for (l, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[l].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &BigMat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn mat_pow(a: &BigMat, mut e: u64) -> BigMat {
    let mut base = a.clone();
    let mut acc = identity(a.len());
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    acc
}

/// p(M) by Horner's rule.
pub fn poly_at_matrix(p: &IntPoly, a: &BigMat) -> BigMat {
    let n = a.len();
    let mut acc = vec![vec![BigInt::zero(); n]; n];
    for c in p.coeffs().iter().rev() {
        acc = mat_mul(&acc, a);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

pub fn is_identity(a: &BigMat) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
}

/// Largest absolute entry.
pub fn max_abs(a: &BigMat) -> BigInt {
    use num_traits::Signed;
    a.iter().flatten().map(|x| x.abs()).max().unwrap_or_default()
}

/// Characteristic polynomial det(xI - A) by Berkowitz's division-free
/// algorithm.
pub fn berkowitz(a: &BigMat) -> IntPoly {
    let n = a.len();
    if n == 0 {
        return IntPoly::one();
    }
    // coefficients high degree first
    let mut vect = vec![BigInt::one(), -&a[0][0]];
    for r in 1..n {
        let row: Vec<&BigInt> = (0..r).map(|j| &a[r][j]).collect();
        let mut v: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        let mut t = vec![BigInt::one(), -&a[r][r]];
        for step in 0..r {
            let dot: BigInt = row.iter().zip(&v).map(|(x, y)| *x * y).sum();
            t.push(-dot);
            if step + 1 < r {
                v = (0..r).map(|i| (0..r).map(|j| &a[i][j] * &v[j]).sum()).collect();
            }
        }
        let next: Vec<BigInt> = (0..r + 2)
            .map(|i| (0..=i.min(r)).map(|j| &t[i - j] * &vect[j]).sum())
            .collect();
        vect = next;
    }
    vect.reverse();
    IntPoly::new(vect)
}

/// Rank over Q by fraction-free (Bareiss) elimination.
pub fn rank(a: &BigMat) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> BigMat {
        rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect()
    }

    #[test]
    fn berkowitz_small() {
        // [[2,0,1],[-1,0,-1],[0,1,-1]] -> x^3 - x^2 - x - 1
        let a = big(&[&[2, 0, 1], &[-1, 0, -1], &[0, 1, -1]]);
        assert_eq!(berkowitz(&a), IntPoly::from_i64(&[-1, -1, -1, 1]));
        assert_eq!(berkowitz(&big(&[&[5]])), IntPoly::from_i64(&[-5, 1]));
        let b = big(&[&[1, 2], &[3, 4]]);
        assert_eq!(berkowitz(&b), IntPoly::from_i64(&[-2, -5, 1]));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&big(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&big(&[&[0, 2, 1], &[1, 0, 0], &[1, 2, 1]])), 2);
        assert_eq!(rank(&identity(4)), 4);
        assert_eq!(rank(&big(&[&[0, 0], &[0, 0]])), 0);
    }
}
