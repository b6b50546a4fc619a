use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::intpoly::IntPoly;
use super::matrix::{Expansion, PicBasis, PicMatrix};
use crate::error::{Error, Result};

/// Regularization models with a known pullback action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Generic map on Y.
    GenericForward,
    /// Inverse of a generic map on Y.
    GenericInverse,
    /// Critical map on X.
    Critical,
    /// Inverse of a critical map on X.
    CriticalInverse,
    /// Critical map with f^n*(Sigma_BC) = Sigma_beta-gamma, on Z.
    NStar(usize),
    /// The Lyness map.
    Lyness,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::GenericForward => write!(f, "generic"),
            Model::GenericInverse => write!(f, "generic-inverse"),
            Model::Critical => write!(f, "critical"),
            Model::CriticalInverse => write!(f, "critical-inverse"),
            Model::NStar(n) => write!(f, "nstar({n})"),
            Model::Lyness => write!(f, "lyness"),
        }
    }
}

impl Model {
    /// Parses a model name; `nstar` needs the separate n* value.
    pub fn parse(name: &str, nstar: Option<usize>) -> Result<Self> {
        Ok(match name {
            "generic" | "generic+" | "generic-forward" => Model::GenericForward,
            "generic-" | "generic-inverse" => Model::GenericInverse,
            "critical" => Model::Critical,
            "critical-inverse" => Model::CriticalInverse,
            "lyness" => Model::Lyness,
            "nstar" => Model::NStar(nstar.ok_or_else(|| Error::InvalidArgument("model nstar needs --nstar".into()))?),
            _ => return Err(Error::Parse(format!("unknown model {name:?}"))),
        })
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("nstar") {
            let n = rest.trim_matches(|c| c == '(' || c == ')' || c == ':' || c == '=');
            if !n.is_empty() {
                let n = n.parse().map_err(|_| Error::Parse(format!("bad n* in {s:?}")))?;
                return Ok(Model::NStar(n));
            }
        }
        Model::parse(s, None)
    }
}

fn labels(prefix: &str, range: impl Iterator<Item = usize>) -> Vec<String> {
    range.map(|j| format!("{prefix}{j}")).collect()
}

fn neg(ls: &[String]) -> Expansion {
    ls.iter().map(|l| (l.clone(), -1)).collect()
}

fn with(base: &[(&str, i64)], rest: Expansion) -> Expansion {
    let mut out: Expansion = base.iter().map(|(l, c)| (l.to_string(), *c)).collect();
    out.extend(rest);
    out
}

/// Pullback chain a -> b -> ... (each class pulls back to the next).
fn chain(pulls: &mut Vec<(String, Expansion)>, classes: &[String]) {
    for w in classes.windows(2) {
        pulls.push((w[0].clone(), vec![(w[1].clone(), 1)]));
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("k = {k}, need k >= 3")));
    }
    Ok(())
}

struct Critical {
    s: Vec<String>,
    p: Vec<String>,
    labels: Vec<String>,
}

fn critical_classes(k: usize) -> Critical {
    let s = labels("S0,", 3..k + 1);
    let p = labels("P0,", 1..k - 1);
    let mut labels = vec!["H".to_string(), "E1".to_string()];
    labels.extend(s.iter().cloned());
    labels.extend(p.iter().cloned());
    labels.push("Ek".into());
    Critical { s, p, labels }
}

/// Pullback on Pic(Y) for a generic map: E1 -> S0,3 -> ... -> S0,k -> {Sigma_0},
/// H -> 2H - E1.
pub fn generic_model(k: usize) -> Result<PicMatrix> {
    check_k(k)?;
    let s = labels("S0,", 3..k + 1);
    let mut all = vec!["H".to_string(), "E1".to_string()];
    all.extend(s.iter().cloned());
    let mut pulls = Vec::new();
    let mut ch = vec!["E1".to_string()];
    ch.extend(s.iter().cloned());
    chain(&mut pulls, &ch);
    pulls.push((ch.last().unwrap().clone(), with(&[("H", 1)], neg(&all[1..]))));
    pulls.push(("H".into(), vec![("H".into(), 2), ("E1".into(), -1)]));
    PicMatrix::from_pullbacks(PicBasis::new(all)?, &pulls)
}

/// Pullback for the inverse of a generic map: S0,k -> ... -> S0,3 -> E1 -> {Sigma_B},
/// H -> 2H - E1 - sum S.
pub fn inverse_generic_model(k: usize) -> Result<PicMatrix> {
    check_k(k)?;
    let s = labels("S0,", 3..k + 1);
    let mut all = vec!["H".to_string(), "E1".to_string()];
    all.extend(s.iter().cloned());
    let mut pulls = Vec::new();
    let mut ch: Vec<String> = s.iter().rev().cloned().collect();
    ch.push("E1".into());
    chain(&mut pulls, &ch);
    pulls.push(("E1".into(), with(&[("H", 1)], neg(&all[1..]))));
    pulls.push(("H".into(), with(&[("H", 2)], neg(&all[1..]))));
    PicMatrix::from_pullbacks(PicBasis::new(all)?, &pulls)
}

fn critical_pulls(k: usize, extra_beta: &[String], extra_h: &[String]) -> (Critical, Vec<(String, Expansion)>) {
    let c = critical_classes(k);
    let mut pulls = Vec::new();
    let mut ch = vec!["E1".to_string()];
    ch.extend(c.s.iter().cloned());
    chain(&mut pulls, &ch);
    let mut ch2 = c.p.clone();
    ch2.push("Ek".into());
    chain(&mut pulls, &ch2);
    // {Sigma_0} = H - E1 - S - P - Ek
    pulls.push((c.s.last().unwrap().clone(), with(&[("H", 1)], neg(&c.labels[1..]))));
    // {Sigma_beta} = H - P - Ek
    let mut beta = ch2.clone();
    beta.extend(extra_beta.iter().cloned());
    pulls.push(("Ek".into(), with(&[("H", 1)], neg(&beta))));
    let mut h = vec!["E1".to_string()];
    h.extend(ch2);
    h.extend(extra_h.iter().cloned());
    pulls.push(("H".into(), with(&[("H", 2)], neg(&h))));
    (c, pulls)
}

/// Pullback on H^{1,1}(X) for a critical map, basis H, E1, S0,3..S0,k,
/// P0,1..P0,k-2, Ek.
pub fn critical_model(k: usize) -> Result<PicMatrix> {
    check_k(k)?;
    let (c, pulls) = critical_pulls(k, &[], &[]);
    PicMatrix::from_pullbacks(PicBasis::new(c.labels)?, &pulls)
}

/// Pullback of the inverse of a critical map on the same basis:
/// Ek -> P0,k-2 -> ... -> P0,1 -> {Sigma_0}, S0,k -> ... -> S0,3 -> E1 -> {Sigma_B}.
pub fn critical_inverse_model(k: usize) -> Result<PicMatrix> {
    check_k(k)?;
    let c = critical_classes(k);
    let mut pulls = Vec::new();
    let mut ch = vec!["Ek".to_string()];
    ch.extend(c.p.iter().rev().cloned());
    chain(&mut pulls, &ch);
    pulls.push((ch.last().unwrap().clone(), with(&[("H", 1)], neg(&c.labels[1..]))));
    let mut ch2: Vec<String> = c.s.iter().rev().cloned().collect();
    ch2.push("E1".into());
    chain(&mut pulls, &ch2);
    let mut sb = vec!["E1".to_string()];
    sb.extend(c.s.iter().cloned());
    pulls.push(("E1".into(), with(&[("H", 1)], neg(&sb))));
    sb.push("Ek".into());
    pulls.push(("H".into(), with(&[("H", 2)], neg(&sb))));
    PicMatrix::from_pullbacks(PicBasis::new(c.labels)?, &pulls)
}

fn self_check(m: &PicMatrix, want: &IntPoly, what: &str) -> Result<()> {
    let got = m.charpoly();
    if got != *want {
        return Err(Error::SelfCheckFailed(format!("{what}: char poly {got} differs from {want}")));
    }
    Ok(())
}

/// Critical basis extended by F_{n*+1}, ..., F_1 with
/// F_{n*+1} -> ... -> F_1 -> {Sigma_gamma} = H - E1 - F_{n*+1}; the class
/// F_{n*+1} also enters {Sigma_beta} and the image of H.
pub fn nstar_model(k: usize, n_star: usize) -> Result<PicMatrix> {
    check_k(k)?;
    if n_star + 1 < k {
        return Err(Error::InvalidArgument(format!("n* = {n_star} < k - 1")));
    }
    let f = labels("F", (1..n_star + 2).rev());
    let top = vec![f[0].clone()];
    let (mut c, mut pulls) = critical_pulls(k, &top, &top);
    chain(&mut pulls, &f);
    pulls.push(("F1".into(), vec![("H".into(), 1), ("E1".into(), -1), (f[0].clone(), -1)]));
    c.labels.extend(f);
    let m = PicMatrix::from_pullbacks(PicBasis::new(c.labels)?, &pulls)?;
    self_check(&m, &closed_form_charpoly(Model::NStar(n_star), k)?, "n* model")?;
    Ok(m)
}

/// Critical basis extended by H0..Hk, Q_{k-1}..Q1, F_k..F0 with the cycle
/// H0 -> ... -> Hk -> Q1 -> ... -> Q_{k-1} -> F_k -> ... -> F0 -> {Sigma_gamma}.
pub fn lyness_model(k: usize) -> Result<PicMatrix> {
    check_k(k)?;
    let hs = labels("H", 0..k + 1);
    let qs = labels("Q", (1..k).rev());
    let fs = labels("F", (0..k + 1).rev());
    let q_from = |a: usize| labels("Q", a..k);
    let fk = format!("F{k}");
    let hk = format!("H{k}");
    let c = critical_classes(k);
    let mut pulls = Vec::new();
    let mut ch = vec!["E1".to_string()];
    ch.extend(c.s.iter().cloned());
    chain(&mut pulls, &ch);
    let mut ch2 = c.p.clone();
    ch2.push("Ek".into());
    chain(&mut pulls, &ch2);

    let mut sigma0 = c.labels[1..].to_vec();
    sigma0.push(hk.clone());
    sigma0.extend(q_from(1));
    sigma0.push(fk.clone());
    pulls.push((c.s.last().unwrap().clone(), with(&[("H", 1)], neg(&sigma0))));

    let mut beta = ch2.clone();
    beta.push("H0".into());
    beta.extend(q_from(2));
    beta.push(fk.clone());
    beta.push(format!("F{}", k - 1));
    pulls.push(("Ek".into(), with(&[("H", 1)], neg(&beta))));

    let mut h = vec!["E1".to_string()];
    h.extend(ch2);
    h.push("H0".into());
    h.push(hk.clone());
    h.extend(q_from(2));
    h.push(fk);
    pulls.push(("H".into(), with(&[("H", 2)], neg(&h))));

    let mut cycle = hs.clone();
    cycle.extend(labels("Q", 1..k));
    cycle.extend(fs.iter().cloned());
    chain(&mut pulls, &cycle);
    let mut gamma = vec!["E1".to_string(), "H0".to_string(), hk];
    gamma.extend(q_from(2));
    pulls.push(("F0".into(), with(&[("H", 1)], neg(&gamma))));

    let mut all = c.labels;
    all.extend(hs);
    all.extend(qs);
    all.extend(fs);
    let m = PicMatrix::from_pullbacks(PicBasis::new(all)?, &pulls)?;
    self_check(&m, &closed_form_charpoly(Model::Lyness, k)?, "Lyness model")?;
    Ok(m)
}

pub fn model_matrix(model: Model, k: usize) -> Result<PicMatrix> {
    match model {
        Model::GenericForward => generic_model(k),
        Model::GenericInverse => inverse_generic_model(k),
        Model::Critical => critical_model(k),
        Model::CriticalInverse => critical_inverse_model(k),
        Model::NStar(n) => nstar_model(k, n),
        Model::Lyness => lyness_model(k),
    }
}

/// Numerator of chi_{k,n*} before division by x - 1.
pub fn chi_numerator(k: usize, n_star: usize) -> IntPoly {
    let m = IntPoly::monomial;
    m(1, 1 + 2 * k + n_star)
        .sub(&m(1, 2 * k + n_star))
        .sub(&m(1, 1 + k + n_star))
        .add(&m(1, 1 + n_star))
        .add(&m(1, 2 * k))
        .sub(&m(1, k))
        .sub(&m(1, 1))
        .add(&m(1, 0))
}

/// (x^k - 1) / (x - 1) = 1 + x + ... + x^(k-1).
fn geometric(k: usize) -> IntPoly {
    IntPoly::from_i64(&vec![1; k])
}

/// Closed-form characteristic polynomials, monic.
pub fn closed_form_charpoly(model: Model, k: usize) -> Result<IntPoly> {
    check_k(k)?;
    let x = IntPoly::monomial;
    Ok(match model {
        Model::GenericForward => x(1, k).sub(&geometric(k)),
        Model::GenericInverse => {
            let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
            x(1, k).sub(&x(1, k - 1)).add(&x(sign, 0))
        }
        Model::Critical | Model::CriticalInverse => x(1, 2 * k - 1).sub(&geometric(k)),
        Model::NStar(n) => chi_numerator(k, n).div_exact(&IntPoly::from_i64(&[-1, 1]))?,
        Model::Lyness => IntPoly::product(&[
            IntPoly::x_pow_minus_one(k),
            IntPoly::x_pow_minus_one(k + 1),
            IntPoly::x_pow_minus_one(3 * k - 1),
        ])
        .sign_normalized(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_k3_matrix() {
        let m = generic_model(3).unwrap();
        assert_eq!(m.matrix, vec![vec![2, 0, 1], vec![-1, 0, -1], vec![0, 1, -1]]);
        assert_eq!(m.charpoly().to_string(), "x^3 - x^2 - x - 1");
        let seq: Vec<i64> = m.h_sequence(4).iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(seq, vec![1, 2, 4, 7, 13]);
    }

    #[test]
    fn inverse_generic_has_odd_k_discrepancy() {
        for k in 3..9 {
            let cp = inverse_generic_model(k).unwrap().charpoly();
            // x^k - x^(k-1) - 1 for every k
            assert_eq!(cp, IntPoly::monomial(1, k).sub(&IntPoly::monomial(1, k - 1)).sub(&IntPoly::one()));
            let closed = closed_form_charpoly(Model::GenericInverse, k).unwrap();
            assert_eq!(cp == closed, k % 2 == 0);
        }
    }

    #[test]
    fn critical_forms_match() {
        for k in 3..9 {
            let want = closed_form_charpoly(Model::Critical, k).unwrap();
            assert_eq!(critical_model(k).unwrap().charpoly(), want);
            assert_eq!(critical_inverse_model(k).unwrap().charpoly(), want);
        }
        assert_eq!(closed_form_charpoly(Model::Critical, 3).unwrap().to_string(), "x^5 - x^2 - x - 1");
    }

    #[test]
    fn nstar_examples() {
        assert_eq!(nstar_model(3, 2).unwrap().charpoly(), IntPoly::x_pow_minus_one(8));
        let want = IntPoly::x_pow_minus_one(3).mul(&IntPoly::from_i64(&[1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(nstar_model(3, 3).unwrap().charpoly(), want);
        assert!(nstar_model(4, 2).is_err());
    }

    #[test]
    fn lyness_models_check() {
        for k in 3..11 {
            let m = lyness_model(k).unwrap();
            assert_eq!(m.dim(), 5 * k);
        }
    }

    #[test]
    fn generic_plus_k4() {
        assert_eq!(closed_form_charpoly(Model::GenericForward, 4).unwrap().to_string(), "x^4 - x^3 - x^2 - x - 1");
        assert_eq!("nstar(5)".parse::<Model>().unwrap(), Model::NStar(5));
        assert_eq!("lyness".parse::<Model>().unwrap(), Model::Lyness);
    }
}
