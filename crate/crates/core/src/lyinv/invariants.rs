use num_bigint::BigInt;
use serde::Serialize;

use super::system::{LinearFamily, LynessSystem, PolyText};
use crate::error::{Error, Result};
use crate::exactnum::{Rational, Scalar};
use crate::multipoly::HomogPoly;
use crate::rng::{streams, SampleStream};

#[derive(Clone, Debug, Serialize)]
pub struct Invariant {
    pub name: String,
    #[serde(skip)]
    pub poly: HomogPoly,
    pub text: PolyText,
    pub degree: u32,
    /// T(p) = p was checked exactly.
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub identity: String,
    pub holds: bool,
}

/// Polynomials p with p o h = J p, plus the checks made while building them.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantSet {
    pub k: usize,
    /// `None` when a was symbolic.
    pub a: Option<Scalar>,
    pub members: Vec<Invariant>,
    pub transcript: Vec<Check>,
}

impl InvariantSet {
    pub fn get(&self, name: &str) -> Option<&HomogPoly> {
        self.members.iter().find(|m| m.name == name).map(|m| &m.poly)
    }

    pub fn names(&self) -> Vec<&str> {
        self.members.iter().map(|m| m.name.as_str()).collect()
    }
}

fn odd_from(start: usize, end: usize) -> Vec<usize> {
    (start..=end).step_by(2).collect()
}

fn sum(polys: &[HomogPoly]) -> Result<HomogPoly> {
    let mut acc = polys[0].clone();
    for p in &polys[1..] {
        acc = acc.add(p)?;
    }
    Ok(acc)
}

/// Psi_a = bold(0) n_1 bold(3 5 ... k-1) and Psi_b = bold(1 3 5 ... k-1) l_k, for even k.
fn psi_pair(fam: &LinearFamily, k: usize) -> Result<(HomogPoly, HomogPoly)> {
    let tail = fam.bold_product(&odd_from(3, k - 1))?;
    let psi_a = fam.bold(0)?.mul(&fam.n[1])?.mul(&tail)?;
    let psi_b = fam.bold_product(&odd_from(1, k - 1))?.mul(&fam.ell[k])?;
    Ok((psi_a, psi_b))
}

/// Closed form of T^i Psi_a for 0 <= i <= k-2: the bold indices {0, 3, 5, ..., k-1}
/// shifted by i mod k+1, times n_(1+i).
fn psi_a_closed(fam: &LinearFamily, k: usize, i: usize) -> Result<HomogPoly> {
    let mut idx = vec![i % (k + 1)];
    idx.extend(odd_from(3, k - 1).into_iter().map(|s| (s + i) % (k + 1)));
    fam.bold_product(&idx)?.mul(&fam.n[1 + i])
}

/// p0, p1, p2 for every k >= 3 and p3 for odd k >= 5 or even k >= 6, each
/// checked against T(p) = p.
pub fn build_invariants(sys: &LynessSystem) -> Result<InvariantSet> {
    let k = sys.k();
    let fam = sys.families()?;
    let mut transcript = Vec::new();
    let mut members = Vec::new();
    let mut push = |name: &str, poly: HomogPoly, transcript: &mut Vec<Check>| -> Result<()> {
        let holds = sys.t_operator(&poly).map(|t| t == poly).unwrap_or(false);
        transcript.push(Check { identity: format!("T({name}) = {name}"), holds });
        if !holds {
            return Err(Error::VerificationFailed(format!("T({name}) != {name} for k = {k}")));
        }
        members.push(Invariant { name: name.into(), text: PolyText::of(&poly), degree: poly.degree(), poly, verified: true });
        Ok(())
    };
    push("p0", HomogPoly::product(&fam.ell)?, &mut transcript)?;
    push("p1", HomogPoly::product(&fam.m)?, &mut transcript)?;
    push("p2", HomogPoly::product(&fam.n)?, &mut transcript)?;

    if k >= 5 && k % 2 == 1 {
        let even = fam.bold_product(&(0..k).step_by(2).collect::<Vec<_>>())?;
        let odd = fam.bold_product(&odd_from(1, k))?;
        let t_even = sys.t_operator(&even)?;
        let t_odd = sys.t_operator(&odd)?;
        transcript.push(Check { identity: "T(Phi_even) = Phi_odd".into(), holds: t_even == odd });
        transcript.push(Check { identity: "T(Phi_odd) = Phi_even".into(), holds: t_odd == even });
        push("p3", even.add(&odd)?, &mut transcript)?;
    } else if k >= 6 && k % 2 == 0 {
        let (psi_a, psi_b) = psi_pair(&fam, k)?;
        let mut chain = vec![psi_a.clone()];
        for _ in 1..k {
            chain.push(sys.t_operator(chain.last().unwrap())?);
        }
        for (i, c) in chain.iter().enumerate().take(k - 1) {
            transcript.push(Check { identity: format!("T^{i} Psi_a closed form"), holds: *c == psi_a_closed(&fam, k, i)? });
        }
        let tail = fam.bold_product(&odd_from(3, k - 1))?;
        let last_a = fam.n[0].mul(&fam.m[1])?.mul(&tail)?;
        transcript.push(Check { identity: format!("T^{} Psi_a = n0 m1 bold(3 5 ... k-1)", k - 1), holds: chain[k - 1] == last_a });
        let t_b = sys.t_operator(&psi_b)?;
        let t2_b = sys.t_operator(&t_b)?;
        let want_tb = fam.ell[1].mul(&fam.bold_product(&(2..=k).step_by(2).collect::<Vec<_>>())?)?;
        transcript.push(Check { identity: "T Psi_b = l1 bold(2 4 ... k)".into(), holds: t_b == want_tb });
        let want_t2b = fam.bold(0)?.mul(&fam.ell[2])?.mul(&tail)?;
        transcript.push(Check { identity: "T^2 Psi_b = bold(0) l2 bold(3 5 ... k-1)".into(), holds: t2_b == want_t2b });
        let closure = psi_a.add(&psi_b)? == chain[k - 1].add(&t2_b)?;
        transcript.push(Check { identity: "Psi_a + Psi_b = T^(k-1) Psi_a + T^2 Psi_b".into(), holds: closure });
        transcript.push(Check { identity: "bold(0) n1 + bold(1) lk = n0 m1 + bold(0) l2".into(), holds: simple_identity(&fam, k)? });
        if !closure {
            return Err(Error::VerificationFailed(format!("closure identity fails for k = {k}")));
        }
        let mut terms = chain[..k - 1].to_vec();
        terms.push(psi_b);
        terms.push(t_b);
        push("p3", sum(&terms)?, &mut transcript)?;
    }
    Ok(InvariantSet { k, a: sys.a().cloned(), members, transcript })
}

fn simple_identity(fam: &LinearFamily, k: usize) -> Result<bool> {
    let lhs = fam.bold(0)?.mul(&fam.n[1])?.add(&fam.bold(1)?.mul(&fam.ell[k])?)?;
    let rhs = fam.n[0].mul(&fam.m[1])?.add(&fam.bold(0)?.mul(&fam.ell[2])?)?;
    Ok(lhs == rhs)
}

/// The refined relations l_j o h = B l_(j+1), ..., n_0 o h = ABC n_1, and for
/// even k >= 6 the T-chain of Psi_a and the closure identity.
/// Fails with the list of identities that do not hold.
pub fn verify_relations(sys: &LynessSystem) -> Result<Vec<Check>> {
    let k = sys.k();
    let fam = sys.families()?;
    let (a, b, c) = (sys.big_a().clone(), sys.big_b(), sys.big_c());
    let mut out = Vec::new();
    let mut check = |identity: String, lhs: &HomogPoly, factor: &HomogPoly, rhs: &HomogPoly| -> Result<()> {
        let holds = sys.compose(lhs)? == factor.mul(rhs)?;
        out.push(Check { identity, holds });
        Ok(())
    };
    for j in 1..k {
        check(format!("l{j} o h = B l{}", j + 1), &fam.ell[j], &b, &fam.ell[j + 1])?;
        check(format!("m{j} o h = B m{}", j + 1), &fam.m[j], &b, &fam.m[j + 1])?;
    }
    for j in 1..k - 1 {
        check(format!("n{j} o h = B n{}", j + 1), &fam.n[j], &b, &fam.n[j + 1])?;
    }
    check(format!("l{k} o h = A l0"), &fam.ell[k], &a, &fam.ell[0])?;
    check("l0 o h = C l1".into(), &fam.ell[0], &c, &fam.ell[1])?;
    check(format!("m{k} o h = C m0"), &fam.m[k], &c, &fam.m[0])?;
    check("m0 o h = A m1".into(), &fam.m[0], &a, &fam.m[1])?;
    check("n0 o h = ABC n1".into(), &fam.n[0], &a.mul(&b)?.mul(&c)?, &fam.n[1])?;
    if k >= 6 && k % 2 == 0 {
        let set = build_invariants(sys)?;
        out.extend(set.transcript.into_iter().filter(|c| c.identity.contains("Psi") || c.identity.contains("bold(0) n1")));
    }
    let failed: Vec<&str> = out.iter().filter(|c| !c.holds).map(|c| c.identity.as_str()).collect();
    if !failed.is_empty() {
        return Err(Error::VerificationFailed(failed.join("; ")));
    }
    Ok(out)
}

/// `count` random rationals p/q with |p| <= 1000, 1 <= q <= 1000.
pub fn random_parameters(count: usize, seed: u64) -> Vec<Scalar> {
    let mut rng = SampleStream::new(seed, streams::PARAMS);
    (0..count)
        .map(|_| {
            let p = rng.int_in(1000);
            let q = rng.int_in(999).unsigned_abs() as i64 + 1;
            Scalar::Rational(Rational::new(BigInt::from(p), BigInt::from(q)))
        })
        .collect()
}

/// Vanishing orders of an invariant at e_k and along the subspaces
/// {x0 = x_(j+1) = ... = x_k = 0}, measured at a random point of each.
#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub name: String,
    pub at_ek: u32,
    /// (j, order along {x0 = x_(j+1) = ... = x_k = 0}), 1 <= j <= k-1.
    pub along: Vec<(usize, u32)>,
}

impl VanishingReport {
    /// Order >= k-1 at e_k and >= k-j along each subspace.
    pub fn meets_bounds(&self, k: usize) -> bool {
        self.at_ek as usize + 1 >= k && self.along.iter().all(|&(j, o)| o as usize + j >= k)
    }
}

pub fn vanishing_orders(set: &InvariantSet, seed: u64) -> Result<Vec<VanishingReport>> {
    if set.a.is_none() {
        return Err(Error::InvalidArgument("vanishing orders need a numeric a".into()));
    }
    let k = set.k;
    let n = k + 1;
    let mut rng = SampleStream::new(seed, streams::INTEGRALS);
    let mut ek = vec![Scalar::zero(); n];
    ek[k] = Scalar::one();
    let mut out = Vec::new();
    for inv in &set.members {
        let at_ek = inv.poly.vanishing_order(&ek).unwrap_or(u32::MAX);
        let mut along = Vec::new();
        for j in 1..k {
            let mut pt = vec![Scalar::zero(); n];
            for c in pt.iter_mut().take(j + 1).skip(1) {
                *c = rng.scalar();
            }
            along.push((j, inv.poly.vanishing_order(&pt).unwrap_or(u32::MAX)));
        }
        out.push(VanishingReport { name: inv.name.clone(), at_ek, along });
    }
    Ok(out)
}
