use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Field, FieldKind, PrimeField, Scalar};
use crate::linalg;
use crate::multipoly::HomogPoly;

/// Coefficients of a linear form, interpreted projectively.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Covector(Vec<Scalar>);

impl Covector {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::AllZero);
        }
        Ok(Covector(coeffs))
    }

    pub fn from_ints(v: &[i64]) -> Result<Self> {
        Self::new(v.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    // derived covectors of admissible maps are nonzero by construction
    fn derived(coeffs: Vec<Scalar>) -> Self {
        Covector(coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.0[i]
    }

    pub fn apply(&self, x: &[Scalar]) -> Scalar {
        linalg::dot(&self.0, x)
    }

    /// The linear form c . x.
    pub fn form(&self) -> HomogPoly {
        HomogPoly::linear(&self.0)
    }

    /// Same hyperplane (equal up to a nonzero scalar).
    pub fn same_hyperplane(&self, other: &Covector) -> bool {
        self.len() == other.len() && crate::multipoly::HomogPoly::linear(&self.0).is_proportional(&other.form())
    }

    pub fn field_kind(&self) -> Result<FieldKind> {
        self.0.iter().try_fold(FieldKind::Rational, |acc, c| acc.join(c.field_kind()))
    }
}

/// Point of P^k with the first nonzero coordinate scaled to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ProjPoint(Vec<Scalar>);

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        let i = coords.iter().position(|c| !c.is_zero()).ok_or(Error::AllZero)?;
        if coords[i].is_one() {
            return Ok(ProjPoint(coords));
        }
        let inv = coords[i].checked_inv()?;
        Ok(ProjPoint(coords.iter().map(|c| c * &inv).collect()))
    }

    pub fn from_ints(v: &[i64]) -> Result<Self> {
        Self::new(v.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    /// The coordinate point e_i of P^(n-1).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        ProjPoint(v)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Inverse,
            Direction::Inverse => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalOutcome {
    Point(ProjPoint),
    Indeterminate,
}

impl EvalOutcome {
    pub fn point(self) -> Option<ProjPoint> {
        match self {
            EvalOutcome::Point(p) => Some(p),
            EvalOutcome::Indeterminate => None,
        }
    }
}

/// Shape of the exceptional set {Sigma_0, Sigma_beta, Sigma_gamma}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriangleType {
    Nondegenerate,
    TwoHypersurfaces,
    OneHypersurface,
}

/// An admissible pair (alpha, beta) with its derived covectors and the
/// quadratic components of the map and its inverse.
#[derive(Clone, Debug)]
pub struct RecurrenceMap {
    k: usize,
    field: FieldKind,
    alpha: Covector,
    beta: Covector,
    gamma: Covector,
    b: Covector,
    c: Covector,
    alpha_prime: Covector,
    beta_prime: Covector,
    forward: Vec<HomogPoly>,
    inverse: Vec<HomogPoly>,
}

fn admissibility(alpha: &[Scalar], beta: &[Scalar]) -> Result<()> {
    let k = alpha.len() - 1;
    if beta[1..].iter().all(|c| c.is_zero()) {
        return Err(Error::Inadmissible("(beta_1, ..., beta_k) = 0".into()));
    }
    if linalg::rank(&[alpha.to_vec(), beta.to_vec()]) < 2 {
        return Err(Error::Inadmissible("alpha is a multiple of beta".into()));
    }
    if alpha[1].is_zero() && beta[1].is_zero() {
        return Err(Error::Inadmissible("(alpha_1, beta_1) = (0, 0)".into()));
    }
    if (2..=k).all(|i| alpha[i].is_zero() && beta[i].is_zero()) {
        return Err(Error::Inadmissible("(alpha_i, beta_i) = (0, 0) for every i in 2..k".into()));
    }
    Ok(())
}

impl RecurrenceMap {
    pub fn build(k: usize, alpha: Covector, beta: Covector) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidArgument(format!("k = {k}, need k >= 3")));
        }
        if alpha.len() != k + 1 || beta.len() != k + 1 {
            return Err(Error::ShapeMismatch(format!(
                "covectors of length {} and {} for k = {k}",
                alpha.len(),
                beta.len()
            )));
        }
        let field = alpha.field_kind()?.join(beta.field_kind()?)?;
        admissibility(alpha.coeffs(), beta.coeffs())?;

        let (a, bt) = (alpha.coeffs(), beta.coeffs());
        let gamma: Vec<Scalar> = (0..=k).map(|i| &(&bt[1] * &a[i]) - &(&a[1] * &bt[i])).collect();
        let mut b = vec![Scalar::zero(); k + 1];
        b[0] = -&a[1];
        b[k] = bt[1].clone();
        let shift = |v: &[Scalar]| {
            let mut out = vec![v[0].clone()];
            out.extend(v[2..].iter().cloned());
            out.push(Scalar::zero());
            out
        };
        let alpha_prime = shift(a);
        let beta_prime = shift(bt);
        let c: Vec<Scalar> = (0..=k)
            .map(|i| &(&bt[1] * &alpha_prime[i]) - &(&a[1] * &beta_prime[i]))
            .collect();

        let n = k + 1;
        let x = |i: usize| HomogPoly::<Scalar>::var(n, i);
        let af = HomogPoly::linear(a);
        let bf = HomogPoly::linear(bt);
        let mut forward = vec![x(0).mul(&bf)?];
        for j in 1..k {
            forward.push(x(j + 1).mul(&bf)?);
        }
        forward.push(x(0).mul(&af)?);

        let big_b = HomogPoly::linear(&b);
        let mut inverse = vec![x(0).mul(&big_b)?];
        inverse.push(
            x(0).mul(&HomogPoly::linear(&alpha_prime))?
                .sub(&x(k).mul(&HomogPoly::linear(&beta_prime))?)?,
        );
        for j in 2..=k {
            inverse.push(x(j - 1).mul(&big_b)?);
        }

        Ok(RecurrenceMap {
            k,
            field,
            gamma: Covector::derived(gamma),
            b: Covector::derived(b),
            c: Covector::derived(c),
            alpha_prime: Covector::derived(alpha_prime),
            beta_prime: Covector::derived(beta_prime),
            alpha,
            beta,
            forward,
            inverse,
        })
    }

    pub fn from_scalars(alpha: Vec<Scalar>, beta: Vec<Scalar>) -> Result<Self> {
        let k = alpha.len().saturating_sub(1);
        Self::build(k, Covector::new(alpha)?, Covector::new(beta)?)
    }

    pub fn from_ints(alpha: &[i64], beta: &[i64]) -> Result<Self> {
        let k = alpha.len().saturating_sub(1);
        Self::build(k, Covector::from_ints(alpha)?, Covector::from_ints(beta)?)
    }

    /// The Lyness map: alpha = (a, 0, 1, ..., 1), beta = (0, 1, 0, ..., 0).
    pub fn lyness(k: usize, a: Scalar) -> Result<Self> {
        let mut alpha = vec![Scalar::one(); k + 1];
        alpha[0] = a;
        alpha[1] = Scalar::zero();
        let mut beta = vec![Scalar::zero(); k + 1];
        beta[1] = Scalar::one();
        Self::from_scalars(alpha, beta)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn alpha(&self) -> &Covector {
        &self.alpha
    }
    pub fn beta(&self) -> &Covector {
        &self.beta
    }
    pub fn gamma(&self) -> &Covector {
        &self.gamma
    }
    pub fn b(&self) -> &Covector {
        &self.b
    }
    pub fn c(&self) -> &Covector {
        &self.c
    }
    pub fn alpha_prime(&self) -> &Covector {
        &self.alpha_prime
    }
    pub fn beta_prime(&self) -> &Covector {
        &self.beta_prime
    }

    pub fn forward_components(&self) -> &[HomogPoly] {
        &self.forward
    }

    pub fn inverse_components(&self) -> &[HomogPoly] {
        &self.inverse
    }

    pub fn components(&self, dir: Direction) -> &[HomogPoly] {
        match dir {
            Direction::Forward => &self.forward,
            Direction::Inverse => &self.inverse,
        }
    }

    /// Components reduced into a prime field.
    pub fn reduced_components<F: PrimeField>(&self, dir: Direction) -> Result<Vec<HomogPoly<F>>> {
        self.components(dir).iter().map(|p| p.map_coeffs(F::from_scalar)).collect()
    }

    /// Raw image vector, `None` when every component vanishes.
    pub fn apply(&self, x: &[Scalar], dir: Direction) -> Option<Vec<Scalar>> {
        let v: Vec<Scalar> = self.components(dir).iter().map(|p| p.eval(x)).collect();
        if v.iter().all(|c| c.is_zero()) {
            None
        } else {
            Some(v)
        }
    }

    pub fn eval(&self, p: &ProjPoint, dir: Direction) -> EvalOutcome {
        match self.apply(p.coords(), dir) {
            None => EvalOutcome::Indeterminate,
            Some(v) => EvalOutcome::Point(ProjPoint::new(v).expect("nonzero image")),
        }
    }

    /// x0 (beta.x)^(k-1) (gamma.x) forward, x0 (B.x)^(k-1) (C.x) inverse.
    pub fn jacobian(&self, dir: Direction) -> HomogPoly {
        let (mid, last) = match dir {
            Direction::Forward => (&self.beta, &self.gamma),
            Direction::Inverse => (&self.b, &self.c),
        };
        let n = self.k + 1;
        HomogPoly::var(n, 0)
            .mul(&mid.form().pow(self.k as u32 - 1).unwrap())
            .and_then(|p| p.mul(&last.form()))
            .expect("degree k+1 fits")
    }

    pub fn classify_triangle(&self) -> TriangleType {
        let (a, b) = (self.alpha.coeffs(), self.beta.coeffs());
        if b[1].is_zero() {
            return TriangleType::TwoHypersurfaces;
        }
        if (1..=self.k).all(|j| (&(&b[1] * &a[j]) - &(&a[1] * &b[j])).is_zero()) {
            TriangleType::OneHypersurface
        } else {
            TriangleType::Nondegenerate
        }
    }

    /// The genericity condition: beta_1 != 0 and beta_1 alpha_j - alpha_1 beta_j != 0 for j = 2..k.
    pub fn is_generic(&self) -> bool {
        let (a, b) = (self.alpha.coeffs(), self.beta.coeffs());
        !b[1].is_zero() && (2..=self.k).all(|j| !(&(&b[1] * &a[j]) - &(&a[1] * &b[j])).is_zero())
    }

    pub fn is_critical(&self) -> bool {
        self.beta.coeffs()[2..].iter().all(|c| c.is_zero())
            && self.classify_triangle() == TriangleType::Nondegenerate
    }

    /// Largest j with beta_j != 0.
    pub fn j_star(&self) -> usize {
        (1..=self.k).rev().find(|&j| !self.beta.get(j).is_zero()).unwrap_or(1)
    }

    /// Tests tau o f o tau = f^-1 on components, tau swapping x_j and x_(k-j+1).
    /// The parameters must reach the normal form alpha_1 = 0, alpha_k = 1,
    /// beta = (beta_0, 1, 0, ..., 0) by one joint rescaling.
    pub fn reversal_check(&self) -> Result<bool> {
        let k = self.k;
        let b1 = self.beta.get(1);
        if b1.is_zero() {
            return Err(Error::NotNormalized("beta_1 = 0".into()));
        }
        let lam = b1.checked_inv()?;
        let alpha: Vec<Scalar> = self.alpha.coeffs().iter().map(|c| c * &lam).collect();
        let beta: Vec<Scalar> = self.beta.coeffs().iter().map(|c| c * &lam).collect();
        if !alpha[1].is_zero() {
            return Err(Error::NotNormalized("alpha_1 != 0".into()));
        }
        if !alpha[k].is_one() {
            return Err(Error::NotNormalized("alpha_k != beta_1".into()));
        }
        if let Some(j) = (2..=k).find(|&j| !beta[j].is_zero()) {
            return Err(Error::NotNormalized(format!("beta_{j} != 0")));
        }
        let m = RecurrenceMap::from_scalars(alpha, beta)?;
        let n = k + 1;
        let tau_index = |i: usize| if i == 0 { 0 } else { k + 1 - i };
        let tau_vars: Vec<HomogPoly> = (0..n).map(|i| HomogPoly::var(n, tau_index(i))).collect();
        let conj: Vec<HomogPoly> = (0..n)
            .map(|i| m.forward[tau_index(i)].substitute(&tau_vars))
            .collect::<Result<_>>()?;
        Ok(proportional_tuples(&conj, &m.inverse))
    }
}

/// Tuples equal up to one common nonzero scalar.
pub(crate) fn proportional_tuples<F: Field>(a: &[HomogPoly<F>], b: &[HomogPoly<F>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|p| !p.is_zero()) else {
        return b.iter().all(|p| p.is_zero());
    };
    let Some((_, bl)) = b[i].leading() else {
        return false;
    };
    let ratio = a[i].leading().unwrap().1.divided(bl).unwrap();
    a.iter().zip(b).all(|(p, q)| *p == q.scale(&ratio))
}
