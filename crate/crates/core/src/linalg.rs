//! Dense exact linear algebra over any `Field`.

use crate::exactnum::Field;

/// Reduced row echelon form in place. Zero rows are dropped and pivots are
/// scaled to 1. Returns the pivot columns.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().unwrap();
        for x in rows[r].iter_mut() {
            *x = x.times(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.minus(&f.times(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of {v : rows * v = 0}, one vector per free column, in column order.
pub fn null_space<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = row[free].negated();
        }
        basis.push(v);
    }
    basis
}

/// True when `v` lies in the row space of an rref matrix with given pivots.
pub fn in_row_space<F: Field>(rref_rows: &[Vec<F>], pivots: &[usize], v: &[F]) -> bool {
    let mut w = v.to_vec();
    for (row, &pc) in rref_rows.iter().zip(pivots) {
        if w[pc].is_zero() {
            continue;
        }
        let f = w[pc].clone();
        for (x, y) in w.iter_mut().zip(row) {
            if !y.is_zero() {
                *x = x.minus(&f.times(y));
            }
        }
    }
    w.iter().all(|x| x.is_zero())
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc.plus(&x.times(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;

    fn m(v: &[&[i64]]) -> Vec<Vec<Scalar>> {
        v.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect()
    }

    #[test]
    fn null_space_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        assert_eq!(rank(&a), 2);
        let ns = null_space(&a, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                assert!(dot(row, v).is_zero());
            }
        }
    }

    #[test]
    fn row_space_membership() {
        let mut a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let piv = rref(&mut a);
        assert!(in_row_space(&a, &piv, &m(&[&[2, 3, 5]])[0]));
        assert!(!in_row_space(&a, &piv, &m(&[&[2, 3, 4]])[0]));
    }
}
