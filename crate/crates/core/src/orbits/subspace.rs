use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Field, FieldKind, PrimeField, Scalar};
use crate::linalg;
use crate::multipoly::HomogPoly;
use crate::recmap::Covector;

/// Projective linear subspace of P^(n-1), stored as the reduced row echelon
/// form of its defining covectors. Equal subspaces have identical storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearSubspace {
    n: usize,
    eqs: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl LinearSubspace {
    /// All of P^(n-1).
    pub fn whole(n: usize) -> Self {
        LinearSubspace { n, eqs: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_equations(n: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("equation length".into()));
        }
        let mut eqs = rows;
        let pivots = linalg::rref(&mut eqs);
        if eqs.len() == n {
            return Err(Error::InvalidArgument("equations cut out the empty set".into()));
        }
        Ok(LinearSubspace { n, eqs, pivots })
    }

    pub fn from_covectors(n: usize, covs: &[&Covector]) -> Result<Self> {
        Self::from_equations(n, covs.iter().map(|c| c.coeffs().to_vec()).collect())
    }

    /// Linear span of the given (nonzero) vectors.
    pub fn span(n: usize, points: &[Vec<Scalar>]) -> Result<Self> {
        if points.is_empty() || linalg::rank(points) == 0 {
            return Err(Error::AllZero);
        }
        Self::from_equations(n, linalg::null_space(points, n))
    }

    /// {x_i = 0 for i in idx}.
    pub fn coordinate(n: usize, idx: &[usize]) -> Self {
        let rows = idx
            .iter()
            .map(|&i| {
                let mut r = vec![Scalar::zero(); n];
                r[i] = Scalar::one();
                r
            })
            .collect();
        Self::from_equations(n, rows).expect("valid coordinate subspace")
    }

    /// The single point e_i.
    pub fn coordinate_point(n: usize, i: usize) -> Self {
        let idx: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        Self::coordinate(n, &idx)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn codim(&self) -> usize {
        self.eqs.len()
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.n - 1 - self.eqs.len()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.eqs.len() == 1
    }

    pub fn is_point(&self) -> bool {
        self.dim() == 0
    }

    pub fn equations(&self) -> &[Vec<Scalar>] {
        &self.eqs
    }

    pub fn covectors(&self) -> Vec<Covector> {
        self.eqs.iter().map(|r| Covector::new(r.clone()).expect("nonzero row")).collect()
    }

    /// Basis of the affine cone, one vector per free coordinate.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        linalg::null_space(&self.eqs, self.n)
    }

    pub fn contains_point(&self, x: &[Scalar]) -> bool {
        self.eqs.iter().all(|r| linalg::dot(r, x).is_zero())
    }

    /// self contains other.
    pub fn contains(&self, other: &LinearSubspace) -> bool {
        other.basis().iter().all(|v| self.contains_point(v))
    }

    pub fn contained_in_hyperplane(&self, cov: &[Scalar]) -> bool {
        linalg::in_row_space(&self.eqs, &self.pivots, cov)
    }

    pub fn intersect(&self, other: &LinearSubspace) -> Result<Self> {
        let mut rows = self.eqs.clone();
        rows.extend(other.eqs.iter().cloned());
        Self::from_equations(self.n, rows)
    }

    pub fn field_kind(&self) -> Result<FieldKind> {
        self.eqs
            .iter()
            .flatten()
            .try_fold(FieldKind::Rational, |acc, c| acc.join(c.field_kind()))
    }

    /// Equations reduced into a prime field.
    pub fn reduced_equations<F: PrimeField>(&self) -> Result<Vec<Vec<F>>> {
        self.eqs
            .iter()
            .map(|r| r.iter().map(F::from_scalar).collect())
            .collect()
    }

    /// Cone basis reduced into a prime field.
    pub fn reduced_basis<F: PrimeField>(&self) -> Result<Vec<Vec<F>>> {
        self.basis()
            .iter()
            .map(|r| r.iter().map(F::from_scalar).collect())
            .collect()
    }
}

/// True when a prime-field point satisfies all reduced equations.
pub(crate) fn contains_reduced<F: Field>(eqs: &[Vec<F>], x: &[F]) -> bool {
    eqs.iter().all(|r| linalg::dot(r, x).is_zero())
}

impl fmt::Display for LinearSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eqs.is_empty() {
            return write!(f, "P^{}", self.n - 1);
        }
        let parts: Vec<String> = self.eqs.iter().map(|r| format!("{} = 0", HomogPoly::linear(r))).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for LinearSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearSubspace(dim {}, {})", self.dim(), self)
    }
}

impl Serialize for LinearSubspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LinearSubspace", 3)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("equations", &self.eqs)?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}
