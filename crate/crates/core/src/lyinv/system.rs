use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::multipoly::HomogPoly;
use crate::recmap::RecurrenceMap;

/// The Lyness map h with its Jacobian factors A = alpha . x, B = x1, C = x0,
/// either at a numeric a or with a as a free parameter symbol.
#[derive(Clone, Debug)]
pub struct LynessSystem {
    k: usize,
    a: Option<Scalar>,
    nparams: usize,
    comps: Vec<HomogPoly>,
    big_a: HomogPoly,
    jac: HomogPoly,
}

impl LynessSystem {
    pub fn numeric(k: usize, a: Scalar) -> Result<Self> {
        Self::build(k, Some(a))
    }

    /// a stays symbolic; identities then hold in Q[a][x].
    pub fn symbolic(k: usize) -> Result<Self> {
        Self::build(k, None)
    }

    fn build(k: usize, a: Option<Scalar>) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidArgument(format!("k = {k}, need k >= 3")));
        }
        let n = k + 1;
        let nparams = usize::from(a.is_none());
        let x = |i: usize| HomogPoly::var(n, i).with_params(nparams).unwrap();
        let a_x0 = match &a {
            Some(v) => x(0).scale(v),
            None => x(0).mul(&HomogPoly::param(n, 1, 0))?,
        };
        let mut big_a = a_x0;
        for j in 2..=k {
            big_a = big_a.add(&x(j))?;
        }
        let b = x(1);
        let mut comps = vec![x(0).mul(&b)?];
        for j in 2..=k {
            comps.push(x(j).mul(&b)?);
        }
        comps.push(x(0).mul(&big_a)?);
        let jac = big_a.mul(&b.pow(k as u32 - 1)?)?.mul(&x(0))?;
        Ok(LynessSystem { k, a, nparams, comps, big_a, jac })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `None` in symbolic mode.
    pub fn a(&self) -> Option<&Scalar> {
        self.a.as_ref()
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn components(&self) -> &[HomogPoly] {
        &self.comps
    }

    pub fn jacobian(&self) -> &HomogPoly {
        &self.jac
    }

    pub fn var(&self, i: usize) -> HomogPoly {
        HomogPoly::var(self.k + 1, i).with_params(self.nparams).unwrap()
    }

    /// A = a x0 + x2 + ... + xk.
    pub fn big_a(&self) -> &HomogPoly {
        &self.big_a
    }

    pub fn big_b(&self) -> HomogPoly {
        self.var(1)
    }

    pub fn big_c(&self) -> HomogPoly {
        self.var(0)
    }

    /// The same map as a [`RecurrenceMap`] (numeric mode only).
    pub fn map(&self) -> Result<RecurrenceMap> {
        let a = self.a.clone().ok_or_else(|| Error::InvalidArgument("symbolic a has no numeric map".into()))?;
        RecurrenceMap::lyness(self.k, a)
    }

    /// q o h.
    pub fn compose(&self, q: &HomogPoly) -> Result<HomogPoly> {
        q.with_params(self.nparams)?.substitute(&self.comps)
    }

    /// T(q) = (q o h) / J; `NotDivisible` when J does not divide.
    pub fn t_operator(&self, q: &HomogPoly) -> Result<HomogPoly> {
        self.compose(q)?.exact_div(&self.jac)
    }

    pub fn t_power(&self, q: &HomogPoly, i: usize) -> Result<HomogPoly> {
        let mut cur = q.clone();
        for _ in 0..i {
            cur = self.t_operator(&cur)?;
        }
        Ok(cur)
    }

    pub fn families(&self) -> Result<LinearFamily> {
        let k = self.k;
        let x0 = self.var(0);
        let ell: Vec<HomogPoly> = (0..=k).map(|j| self.var(j)).collect();
        let mut m = vec![self.big_a.add(&self.var(1))?];
        for j in 1..=k {
            m.push(x0.add(&self.var(j))?);
        }
        let mut n = Vec::with_capacity(k);
        for j in 1..k {
            n.push(x0.add(&self.var(j))?.add(&self.var(j + 1))?);
        }
        let n0 = self.compose(&n[k - 2])?;
        n.insert(0, n0);
        Ok(LinearFamily { ell, m, n })
    }
}

/// l_j = x_j (0..=k); m_0 = A + x1, m_j = x0 + x_j; n_j = x0 + x_j + x_(j+1)
/// (1..k-1) and the quadratic n_0 = n_(k-1) o h.
#[derive(Clone, Debug)]
pub struct LinearFamily {
    pub ell: Vec<HomogPoly>,
    pub m: Vec<HomogPoly>,
    pub n: Vec<HomogPoly>,
}

impl LinearFamily {
    /// The product l_j m_j, written in bold in the literature.
    pub fn bold(&self, j: usize) -> Result<HomogPoly> {
        self.ell[j].mul(&self.m[j])
    }

    /// Product of bold(j) over `js`.
    pub fn bold_product(&self, js: &[usize]) -> Result<HomogPoly> {
        let factors = js.iter().map(|&j| self.bold(j)).collect::<Result<Vec<_>>>()?;
        HomogPoly::product(&factors)
    }
}

pub fn linear_families(k: usize, a: Scalar) -> Result<LinearFamily> {
    LynessSystem::numeric(k, a)?.families()
}

/// Text and affine (x0 = 1) forms of a polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct PolyText {
    pub homogeneous: String,
    pub affine: String,
}

impl PolyText {
    pub fn of(p: &HomogPoly) -> Self {
        PolyText { homogeneous: p.to_string(), affine: affine_text(p) }
    }
}

/// The polynomial with x0 set to 1, in the variables x1..xk (and a).
pub fn affine_text(p: &HomogPoly) -> String {
    let nv = p.nvars();
    let np = p.nparams();
    let mut parts = Vec::new();
    for (mono, c) in p.terms() {
        let mut factors = Vec::new();
        for i in 1..nv + np {
            let e = mono.exp(i);
            if e == 0 {
                continue;
            }
            let name = if i < nv {
                format!("x{i}")
            } else if np == 1 {
                "a".to_string()
            } else {
                format!("a{}", i - nv)
            };
            factors.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        let cs = c.to_string();
        let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
        parts.push(match (factors.is_empty(), cs.as_str()) {
            (true, _) => cs,
            (false, "1") => factors.join("*"),
            (false, _) => format!("{cs}*{}", factors.join("*")),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(k: usize, terms: &[(&[u32], i64)]) -> HomogPoly {
        let d = terms[0].0.iter().sum();
        HomogPoly::from_terms(k + 1, 0, d, terms.iter().map(|(e, c)| (e.to_vec(), Scalar::from_int(*c)))).unwrap()
    }

    #[test]
    fn n0_closed_form_k3() {
        let fam = linear_families(3, Scalar::from_int(7)).unwrap();
        let want = poly(3, &[(&[2, 0, 0, 0], 7), (&[1, 1, 0, 0], 1), (&[1, 0, 1, 0], 1), (&[1, 0, 0, 1], 1), (&[0, 1, 0, 1], 1)]);
        assert_eq!(fam.n[0], want);
        assert_eq!(fam.m[0], poly(3, &[(&[1, 0, 0, 0], 7), (&[0, 1, 0, 0], 1), (&[0, 0, 1, 0], 1), (&[0, 0, 0, 1], 1)]));
        let fam5 = linear_families(5, Scalar::one()).unwrap();
        let x = |i| HomogPoly::<Scalar>::var(6, i);
        assert_eq!(fam5.n[4], x(0).add(&x(4)).unwrap().add(&x(5)).unwrap());
    }

    #[test]
    fn t_of_p0_k3() {
        let sys = LynessSystem::numeric(3, Scalar::from_int(2)).unwrap();
        let p0 = HomogPoly::product(&(0..4).map(|j| sys.var(j)).collect::<Vec<_>>()).unwrap();
        assert_eq!(sys.t_operator(&p0).unwrap(), p0);
        let x0_pow = sys.var(0).pow(4).unwrap();
        assert_eq!(sys.t_operator(&x0_pow), Err(Error::NotDivisible));
    }

    #[test]
    fn symbolic_components_specialize() {
        let sym = LynessSystem::symbolic(4).unwrap();
        let num = LynessSystem::numeric(4, Scalar::ratio(3, 2)).unwrap();
        for (s, n) in sym.components().iter().zip(num.components()) {
            assert_eq!(s.specialize(&[Scalar::ratio(3, 2)]).unwrap(), *n);
        }
        let m = num.map().unwrap();
        assert_eq!(m.forward_components(), num.components());
    }

    #[test]
    fn affine_form() {
        let sys = LynessSystem::symbolic(3).unwrap();
        assert_eq!(affine_text(sys.big_a()), "a + x2 + x3");
    }
}
