use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;

use super::monomial::{Monomial, MAX_SLOTS};
use super::uni::UniPoly;
use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};

/// Homogeneous polynomial of a fixed degree in `nvars` variables
/// x0..x(nvars-1), optionally with `nparams` extra parameter symbols that do
/// not count towards the degree.
///
/// Terms are kept sorted by decreasing monomial (lex, x0 largest) with no
/// zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogPoly<F: Field = Scalar> {
    nvars: usize,
    nparams: usize,
    degree: u32,
    terms: Vec<(Monomial, F)>,
}

fn check_slots(nvars: usize, nparams: usize) -> Result<()> {
    if nvars == 0 || nvars + nparams > MAX_SLOTS {
        return Err(Error::InvalidArgument(format!(
            "{nvars} variables and {nparams} parameters exceed {MAX_SLOTS} slots"
        )));
    }
    Ok(())
}

impl<F: Field> HomogPoly<F> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Self::zero_with_params(nvars, 0, degree)
    }

    pub fn zero_with_params(nvars: usize, nparams: usize, degree: u32) -> Self {
        check_slots(nvars, nparams).expect("slot count");
        HomogPoly { nvars, nparams, degree, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars, 0);
        if !c.is_zero() {
            p.terms.push((Monomial::ONE, c));
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = Self::zero(nvars, 1);
        p.terms.push((Monomial::var(i), F::one()));
        p
    }

    /// The linear form sum c_i x_i.
    pub fn linear(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(i), c.clone()))
            .collect();
        HomogPoly { nvars: n, nparams: 0, degree: 1, terms }
    }

    /// The parameter symbol number `j` as a degree-0 polynomial.
    pub fn param(nvars: usize, nparams: usize, j: usize) -> Self {
        assert!(j < nparams, "parameter index out of range");
        let mut p = Self::zero_with_params(nvars, nparams, 0);
        p.terms.push((Monomial::var(nvars + j), F::one()));
        p
    }

    /// Builds from (exponent vector, coefficient) pairs; exponent vectors
    /// have `nvars + nparams` entries. Duplicate monomials are summed.
    pub fn from_terms<I>(nvars: usize, nparams: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, F)>,
    {
        check_slots(nvars, nparams)?;
        let mut acc: FxHashMap<Monomial, F> = FxHashMap::default();
        for (exps, c) in terms {
            if exps.len() != nvars + nparams {
                return Err(Error::ShapeMismatch(format!(
                    "exponent vector of length {} for {} slots",
                    exps.len(),
                    nvars + nparams
                )));
            }
            let d: u32 = exps[..nvars].iter().sum();
            if d != degree {
                return Err(Error::DegreeMismatch(d, degree));
            }
            if exps.iter().any(|&e| e > 255) {
                return Err(Error::InvalidArgument("exponent above 255".into()));
            }
            let m = Monomial::from_exps(&exps);
            match acc.get_mut(&m) {
                Some(v) => *v = v.plus(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Ok(Self::from_map(nvars, nparams, degree, acc))
    }

    fn from_map(nvars: usize, nparams: usize, degree: u32, acc: FxHashMap<Monomial, F>) -> Self {
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        HomogPoly { nvars, nparams, degree, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coeff(&self, exps: &[u32]) -> F {
        let m = Monomial::from_exps(exps);
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    pub fn leading(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    /// Same polynomial viewed with `nparams` parameter slots (must not drop
    /// slots that are in use).
    pub fn with_params(&self, nparams: usize) -> Result<Self> {
        check_slots(self.nvars, nparams)?;
        if nparams < self.nparams && self.max_param_degree() > 0 {
            return Err(Error::ShapeMismatch("dropping parameter slots in use".into()));
        }
        let mut out = self.clone();
        out.nparams = nparams;
        Ok(out)
    }

    fn max_param_degree(&self) -> u32 {
        if self.nparams == 0 {
            return 0;
        }
        self.terms
            .iter()
            .map(|(m, _)| m.degree_in(self.nvars, self.nvars + self.nparams))
            .max()
            .unwrap_or(0)
    }

    fn check_shape(&self, rhs: &Self) -> Result<()> {
        if self.nvars != rhs.nvars || self.nparams != rhs.nparams {
            return Err(Error::ShapeMismatch(format!(
                "({}, {}) vs ({}, {}) variables/parameters",
                self.nvars, self.nparams, rhs.nvars, rhs.nparams
            )));
        }
        Ok(())
    }

    fn merge(&self, rhs: &Self, negate: bool) -> Result<Self> {
        self.check_shape(rhs)?;
        if self.degree != rhs.degree {
            return Err(Error::DegreeMismatch(self.degree, rhs.degree));
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        let sign = |c: &F| if negate { c.negated() } else { c.clone() };
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 > b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 > a[i].0 {
                out.push((b[j].0, sign(&b[j].1)));
                j += 1;
            } else {
                let c = if negate { a[i].1.minus(&b[j].1) } else { a[i].1.plus(&b[j].1) };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(HomogPoly { terms: out, ..self.empty_like() })
    }

    fn empty_like(&self) -> Self {
        HomogPoly { nvars: self.nvars, nparams: self.nparams, degree: self.degree, terms: Vec::new() }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.merge(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.merge(rhs, true)
    }

    pub fn neg(&self) -> Self {
        HomogPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.negated())).collect(),
            ..self.empty_like()
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return self.empty_like();
        }
        HomogPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x.times(c))).collect(),
            ..self.empty_like()
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_shape(rhs)?;
        let deg = self.degree + rhs.degree;
        if deg > 255 || self.max_param_degree() + rhs.max_param_degree() > 255 {
            return Err(Error::InvalidArgument("product degree above 255".into()));
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return Ok(HomogPoly {
                degree: deg,
                terms: self.terms.iter().map(|(n, x)| (n.mul(*m), x.times(c))).collect(),
                ..self.empty_like()
            });
        }
        let mut acc: FxHashMap<Monomial, F> = FxHashMap::default();
        acc.reserve(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let p = ca.times(cb);
                acc.entry(ma.mul(*mb))
                    .and_modify(|v| *v = v.plus(&p))
                    .or_insert(p);
            }
        }
        Ok(Self::from_map(self.nvars, self.nparams, deg, acc))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = HomogPoly::constant(self.nvars, F::one()).with_params(self.nparams)?;
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Product of a list of polynomials (all of the same shape).
    pub fn product(factors: &[Self]) -> Result<Self> {
        let first = factors.first().ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
        let mut acc = first.clone();
        for f in &factors[1..] {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    /// Exact quotient self / rhs by lex leading-term division.
    pub fn exact_div(&self, rhs: &Self) -> Result<Self> {
        self.check_shape(rhs)?;
        let (lm, lc) = rhs.leading().ok_or(Error::DivisionByZero)?;
        if self.is_zero() {
            return Ok(HomogPoly { degree: self.degree.saturating_sub(rhs.degree), ..self.empty_like() });
        }
        if self.degree < rhs.degree {
            return Err(Error::NotDivisible);
        }
        let inv = lc.inverse().ok_or(Error::DivisionByZero)?;
        let mut rem: BTreeMap<Monomial, F> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lm.divides(m) {
                return Err(Error::NotDivisible);
            }
            let t = lm.quotient_of(m);
            let qc = c.times(&inv);
            for (rm, rc) in &rhs.terms[1..] {
                let key = rm.mul(t);
                let delta = qc.times(rc);
                let remove = match rem.get_mut(&key) {
                    Some(v) => {
                        *v = v.minus(&delta);
                        v.is_zero()
                    }
                    None => {
                        rem.insert(key, delta.negated());
                        false
                    }
                };
                if remove {
                    rem.remove(&key);
                }
            }
            quot.push((t, qc));
        }
        Ok(HomogPoly { degree: self.degree - rhs.degree, terms: quot, ..self.empty_like() })
    }

    /// Composition self(comps[0], ..., comps[nvars-1]). All components must
    /// share degree and shape; parameter symbols pass through unchanged.
    pub fn substitute(&self, comps: &[Self]) -> Result<Self> {
        if comps.len() != self.nvars {
            return Err(Error::ShapeMismatch(format!(
                "{} components for {} variables",
                comps.len(),
                self.nvars
            )));
        }
        let d = comps[0].degree;
        let out_vars = comps[0].nvars;
        let nparams = self.nparams.max(comps[0].nparams);
        let comps: Vec<Self> = comps.iter().map(|c| c.with_params(nparams)).collect::<Result<_>>()?;
        for c in &comps {
            if c.degree != d || c.nvars != out_vars {
                return Err(Error::DegreeMismatch(c.degree, d));
            }
        }
        let deg = self.degree * d;
        let mut pows: Vec<Vec<Self>> = comps
            .iter()
            .map(|c| vec![HomogPoly::constant(out_vars, F::one()).with_params(nparams).unwrap(), c.clone()])
            .collect();
        let mut acc: FxHashMap<Monomial, F> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut prod: Option<Self> = None;
            for (i, pw) in pows.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&pw[1])?;
                    pw.push(next);
                }
                prod = Some(match prod {
                    None => pw[e].clone(),
                    Some(p) => p.mul(&pw[e])?,
                });
            }
            let mut prod = prod.unwrap_or_else(|| pows[0][0].clone());
            let mut pm = Monomial::ONE;
            for j in 0..self.nparams {
                pm = pm.with_exp(out_vars + j, m.exp(self.nvars + j));
            }
            for (tm, tc) in prod.terms.drain(..) {
                let v = tc.times(c);
                acc.entry(tm.mul(pm)).and_modify(|x| *x = x.plus(&v)).or_insert(v);
            }
        }
        Ok(Self::from_map(out_vars, nparams, deg, acc))
    }

    /// Value at a point (no parameters allowed).
    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars, "point has wrong length");
        assert_eq!(self.nparams, 0, "eval with free parameters");
        let mut pows: Vec<Vec<F>> = point.iter().map(|x| vec![F::one(), x.clone()]).collect();
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, pw) in pows.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().times(&pw[1]);
                    pw.push(next);
                }
                v = v.times(&pw[e]);
            }
            acc = acc.plus(&v);
        }
        acc
    }

    /// Specializes parameter symbols to values, leaving a parameter-free
    /// polynomial.
    pub fn specialize(&self, values: &[F]) -> Result<Self> {
        if values.len() != self.nparams {
            return Err(Error::ShapeMismatch("wrong number of parameter values".into()));
        }
        let mut acc: FxHashMap<Monomial, F> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut key = *m;
            for (j, val) in values.iter().enumerate() {
                let e = m.exp(self.nvars + j);
                v = v.times(&val.pow_u(e as u64));
                key = key.with_exp(self.nvars + j, 0);
            }
            acc.entry(key).and_modify(|x| *x = x.plus(&v)).or_insert(v);
        }
        Ok(Self::from_map(self.nvars, 0, self.degree, acc))
    }

    /// Coefficient-wise map into another field.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<HomogPoly<G>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.push((*m, v));
            }
        }
        Ok(HomogPoly { nvars: self.nvars, nparams: self.nparams, degree: self.degree, terms })
    }

    pub fn partial(&self, i: usize) -> Self {
        let degree = self.degree.saturating_sub(1);
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                terms.push((m.with_exp(i, e - 1), c.times(&F::from_i64(e as i64))));
            }
        }
        // decrementing one slot preserves the relative order of distinct terms
        HomogPoly { degree, terms, ..self.empty_like() }
    }

    /// Evaluates at univariate polynomials, keeping degrees < `trunc`.
    pub fn eval_uni(&self, comps: &[UniPoly<F>], trunc: Option<usize>) -> UniPoly<F> {
        Self::eval_many(std::slice::from_ref(self), comps, trunc).pop().unwrap()
    }

    /// Evaluates several polynomials at the same univariate tuple, sharing
    /// the power table.
    pub fn eval_many(polys: &[Self], comps: &[UniPoly<F>], trunc: Option<usize>) -> Vec<UniPoly<F>> {
        let n = trunc.unwrap_or(usize::MAX);
        let mut pows: Vec<Vec<UniPoly<F>>> =
            comps.iter().map(|c| vec![UniPoly::constant(F::one()), c.truncate(n)]).collect();
        let mut cache: FxHashMap<Monomial, UniPoly<F>> = FxHashMap::default();
        let mut out = Vec::with_capacity(polys.len());
        for p in polys {
            assert_eq!(p.nparams, 0, "eval_uni with free parameters");
            assert_eq!(comps.len(), p.nvars, "component count");
            let mut acc = UniPoly::zero();
            for (m, c) in &p.terms {
                if !cache.contains_key(m) {
                    let mut prod = UniPoly::constant(F::one());
                    for (i, pw) in pows.iter_mut().enumerate() {
                        let e = m.exp(i) as usize;
                        if e == 0 {
                            continue;
                        }
                        while pw.len() <= e {
                            let next = pw.last().unwrap().mul_trunc(&pw[1], n);
                            pw.push(next);
                        }
                        prod = prod.mul_trunc(&pw[e], n);
                    }
                    cache.insert(*m, prod);
                }
                acc = acc.add(&cache[m].scale(c));
            }
            out.push(acc);
        }
        out
    }

    /// Restriction to the line t -> base + t * dir.
    pub fn restrict_to_line(&self, base: &[F], dir: &[F]) -> Result<UniPoly<F>> {
        if base.len() != self.nvars || dir.len() != self.nvars {
            return Err(Error::ShapeMismatch("line has wrong dimension".into()));
        }
        if proportional(base, dir) {
            return Err(Error::DegeneratePair);
        }
        let comps: Vec<UniPoly<F>> =
            base.iter().zip(dir).map(|(b, d)| UniPoly::linear(b.clone(), d.clone())).collect();
        Ok(self.eval_uni(&comps, None))
    }

    /// Order of vanishing at a projective point: the lowest degree of the
    /// Taylor expansion in the affine chart where the point's first nonzero
    /// coordinate is 1. Returns `None` for the zero polynomial.
    pub fn vanishing_order(&self, point: &[F]) -> Option<u32> {
        assert_eq!(point.len(), self.nvars, "point has wrong length");
        if self.is_zero() {
            return None;
        }
        let i0 = point.iter().position(|c| !c.is_zero()).expect("point is zero");
        let inv = point[i0].inverse().unwrap();
        let pt: Vec<F> = point.iter().map(|c| c.times(&inv)).collect();
        let mut acc: FxHashMap<Monomial, F> = FxHashMap::default();
        for (m, c) in &self.terms {
            // expand prod_{j != i0} (pt_j + y_j)^{e_j}
            let mut partial: Vec<(Monomial, F)> = vec![(param_part(*m, self.nvars, self.nparams), c.clone())];
            for (j, pj) in pt.iter().enumerate() {
                let e = m.exp(j);
                if j == i0 || e == 0 {
                    continue;
                }
                let mut next = Vec::with_capacity(partial.len() * (e as usize + 1));
                let mut binom = 1i64;
                for s in 0..=e {
                    // C(e, s) pt_j^(e-s) y_j^s
                    let coef = F::from_i64(binom).times(&pj.pow_u((e - s) as u64));
                    if !coef.is_zero() {
                        for (pm, pc) in &partial {
                            next.push((pm.with_exp(j, s), pc.times(&coef)));
                        }
                    }
                    binom = binom * (e - s) as i64 / (s + 1) as i64;
                }
                partial = next;
            }
            for (pm, pc) in partial {
                acc.entry(pm).and_modify(|x| *x = x.plus(&pc)).or_insert(pc);
            }
        }
        acc.iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, _)| m.degree_in(0, self.nvars))
            .min()
            .or(Some(u32::MAX))
            .filter(|&d| d != u32::MAX)
    }

    /// True when self = c * rhs for a nonzero scalar c.
    pub fn is_proportional(&self, rhs: &Self) -> bool {
        if self.nvars != rhs.nvars || self.nparams != rhs.nparams || self.terms.len() != rhs.terms.len() {
            return false;
        }
        if self.is_zero() {
            return rhs.is_zero();
        }
        let ratio = self.terms[0].1.divided(&rhs.terms[0].1).unwrap();
        self.terms
            .iter()
            .zip(&rhs.terms)
            .all(|((ma, ca), (mb, cb))| ma == mb && *ca == cb.times(&ratio))
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().unwrap()),
        }
    }
}

fn param_part(m: Monomial, nvars: usize, nparams: usize) -> Monomial {
    let mut out = Monomial::ONE;
    for j in nvars..nvars + nparams {
        out = out.with_exp(j, m.exp(j));
    }
    out
}

/// True when the vectors are linearly dependent.
pub(crate) fn proportional<F: Field>(a: &[F], b: &[F]) -> bool {
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return true;
    };
    a.iter()
        .zip(b)
        .all(|(x, y)| y.times(&a[i]) == b[i].times(x))
}

impl<F: Field + fmt::Display> fmt::Display for HomogPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let cs = c.to_string();
            if cs.contains(' ') {
                write!(f, "({cs})")?;
            } else {
                write!(f, "{cs}")?;
            }
            for i in 0..self.nvars + self.nparams {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                let name = if i < self.nvars {
                    format!("x{i}")
                } else if self.nparams == 1 {
                    "a".to_string()
                } else {
                    format!("a{}", i - self.nvars)
                };
                if e == 1 {
                    write!(f, "*{name}")?;
                } else {
                    write!(f, "*{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<F: Field + fmt::Display> fmt::Debug for HomogPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogPoly[deg {}]({})", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = HomogPoly<Scalar>;

    fn lin(v: &[i64]) -> P {
        P::linear(&v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn multiply_then_divide() {
        let a = lin(&[1, 2, 0]);
        let b = lin(&[0, 1, -3]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.degree(), 2);
        assert_eq!(ab.exact_div(&a).unwrap(), b);
        assert_eq!(ab.exact_div(&b).unwrap(), a);
        let c = lin(&[1, 1, 1]);
        assert_eq!(ab.exact_div(&c), Err(Error::NotDivisible));
    }

    #[test]
    fn degree_mismatch_on_add() {
        let a = lin(&[1, 0]);
        let b = a.mul(&a).unwrap();
        assert_eq!(a.add(&b), Err(Error::DegreeMismatch(1, 2)));
    }

    #[test]
    fn substitution_composes() {
        // p = x0 x1, comps = (x0 + x1, x0 - x1) -> x0^2 - x1^2
        let p = P::var(2, 0).mul(&P::var(2, 1)).unwrap();
        let q = p.substitute(&[lin(&[1, 1]), lin(&[1, -1])]).unwrap();
        let expect = P::from_terms(2, 0, 2, vec![(vec![2, 0], Scalar::one()), (vec![0, 2], Scalar::from_int(-1))]).unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn vanishing_orders() {
        // x1^2 x0 - x2^3 is a cusp at [1:0:0]
        let p = P::from_terms(3, 0, 3, vec![(vec![1, 2, 0], Scalar::one()), (vec![0, 0, 3], Scalar::from_int(-1))]).unwrap();
        let pt = |v: [i64; 3]| v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>();
        assert_eq!(p.vanishing_order(&pt([1, 0, 0])), Some(2));
        assert_eq!(p.vanishing_order(&pt([0, 1, 0])), Some(1));
        assert_eq!(p.vanishing_order(&pt([1, 1, 2])), Some(0));
        assert_eq!(p.vanishing_order(&pt([1, 1, 1])), Some(1));
    }

    #[test]
    fn line_restriction() {
        let p = lin(&[1, 1]).mul(&lin(&[0, 1])).unwrap();
        let base = [Scalar::one(), Scalar::zero()];
        let dir = [Scalar::zero(), Scalar::one()];
        let u = p.restrict_to_line(&base, &dir).unwrap();
        // (1 + t) t
        assert_eq!(u.coeffs(), &[Scalar::zero(), Scalar::one(), Scalar::one()]);
        assert_eq!(p.restrict_to_line(&base, &base), Err(Error::DegeneratePair));
    }

    #[test]
    fn parameters_pass_through() {
        let a = P::param(2, 1, 0);
        let x0 = P::var(2, 0).with_params(1).unwrap();
        let p = a.mul(&x0).unwrap().mul(&x0).unwrap();
        assert_eq!(p.to_string(), "1*x0^2*a");
        let q = p.specialize(&[Scalar::from_int(3)]).unwrap();
        assert_eq!(q.coeff(&[2, 0]), Scalar::from_int(3));
        let s = p.substitute(&[lin(&[1, 1]), lin(&[0, 1])]).unwrap();
        assert_eq!(s.nparams(), 1);
        assert_eq!(s.num_terms(), 3);
    }
}
