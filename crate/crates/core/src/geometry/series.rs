//! Characteristic classes from Chern characters: total Chern class, top
//! Chern class, Todd class, `λ_{-1}` of the dual, GRR and HRR.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::algebra::{add_assign, scaled, ChernVector, GradedAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::Q;

/// Why a virtual class may be treated as an honest bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Certificate {
    /// The class vanishes identically.
    ZeroClass,
    /// A genuine bundle: a tangent bundle, an eigenbundle or a line bundle.
    Bundle(String),
    /// An explicit eigen decomposition of the obstruction representation.
    Eigen(String),
    /// Declared honest by the model file, with this rank.
    Registry(usize),
}

/// A bundle on one fixed locus with its Chern character and, when it is
/// an eigenbundle sum, the summands.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleDescriptor {
    pub name: String,
    pub ch: ChernVector,
    pub eigen: Vec<ChernVector>,
    pub certificate: Option<Certificate>,
}

impl BundleDescriptor {
    pub fn honest(name: &str, ch: ChernVector, why: &str) -> Self {
        BundleDescriptor { name: name.into(), ch, eigen: Vec::new(), certificate: Some(Certificate::Bundle(why.into())) }
    }

    pub fn virtual_class(name: &str, ch: ChernVector) -> Self {
        BundleDescriptor { name: name.into(), ch, eigen: Vec::new(), certificate: None }
    }

    pub fn rank(&self, alg: &GradedAlgebra) -> Vec<Q> {
        alg.ranks(&self.ch)
    }

    pub fn total_chern(&self, alg: &GradedAlgebra) -> Vec<Q> {
        total_chern(alg, &self.ch)
    }

    pub fn c_top(&self, alg: &GradedAlgebra) -> Result<Vec<Q>> {
        match &self.certificate {
            Some(c) => c_top(alg, &self.ch, c),
            None => Err(Error::MissingCertificate(self.name.clone())),
        }
    }
}

/// `Σ q_i ch(E_i)` for a virtual combination with rational multiplicities.
pub fn combine(terms: &[(Q, &[Q])]) -> ChernVector {
    let d = terms.first().map_or(0, |t| t.1.len());
    let mut out = vec![Q::zero(); d];
    for (s, v) in terms {
        add_assign(&mut out, &scaled(v, s));
    }
    out
}

fn factorial(n: usize) -> Q {
    (1..=n).fold(Q::one(), |acc, k| acc * Q::from_integer(k.into()))
}

/// `exp(Σ_n a_n · n! · ch_n)`: the multiplicative class whose logarithm on
/// a line bundle with first Chern class `t` is `Σ a_n t^n`.
fn multiplicative(alg: &GradedAlgebra, ch: &[Q], log_coeffs: &[Q]) -> Vec<Q> {
    let mut l = alg.zero();
    for n in 1..=alg.top_degree() {
        let a = &log_coeffs[n] * factorial(n);
        add_assign(&mut l, &scaled(&alg.part(ch, n), &a));
    }
    alg.exp_nilpotent(&l)
}

/// Truncated power series helpers on coefficient vectors.
fn series_mul(a: &[Q], b: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `log(f)` for `f(0) = 1`.
fn series_log(f: &[Q], n: usize) -> Vec<Q> {
    let u: Vec<Q> = (0..=n).map(|k| if k == 0 { Q::zero() } else { f.get(k).cloned().unwrap_or_else(Q::zero) }).collect();
    let mut out = vec![Q::zero(); n + 1];
    let mut power = u.clone();
    for j in 1..=n {
        let s = Q::new(if j % 2 == 1 { 1.into() } else { (-1).into() }, j.into());
        for k in 0..=n {
            out[k] += &power[k] * &s;
        }
        power = series_mul(&power, &u, n);
    }
    out
}

/// Coefficients of `log(t / (1 - e^{-t}))` up to `t^n`.
pub fn todd_log_coefficients(n: usize) -> Vec<Q> {
    // (1 - e^{-t}) / t = Σ (-1)^k t^k / (k+1)!
    let f: Vec<Q> = (0..=n)
        .map(|k| {
            let s = if k % 2 == 0 { Q::one() } else { -Q::one() };
            s / factorial(k + 1)
        })
        .collect();
    series_log(&f, n).into_iter().map(|c| -c).collect()
}

/// Coefficients of `log(1 + t)`.
fn chern_log_coefficients(n: usize) -> Vec<Q> {
    (0..=n)
        .map(|k| if k == 0 { Q::zero() } else { Q::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, k.into()) })
        .collect()
}

/// Total Chern class of the virtual class with Chern character `ch`.
pub fn total_chern(alg: &GradedAlgebra, ch: &[Q]) -> Vec<Q> {
    multiplicative(alg, ch, &chern_log_coefficients(alg.top_degree()))
}

/// Todd class; rational multiples of bundles give rational powers.
pub fn todd(alg: &GradedAlgebra, ch: &[Q]) -> Vec<Q> {
    multiplicative(alg, ch, &todd_log_coefficients(alg.top_degree()))
}

pub fn todd_inverse(alg: &GradedAlgebra, ch: &[Q]) -> Vec<Q> {
    let neg: Vec<Q> = ch.iter().map(|x| -x).collect();
    todd(alg, &neg)
}

/// Integer rank on each component, or an error naming the first offender.
pub fn integer_ranks(alg: &GradedAlgebra, ch: &[Q]) -> Result<Vec<usize>> {
    alg.ranks(ch)
        .iter()
        .enumerate()
        .map(|(c, r)| {
            if r.is_integer() && !r.is_negative() {
                Ok(r.to_integer().to_usize().expect("small rank"))
            } else {
                Err(Error::InvalidModel(format!("rank {r} on component {c} is not a nonnegative integer")))
            }
        })
        .collect()
}

/// Top Chern class of a certified honest class, component by component.
pub fn c_top(alg: &GradedAlgebra, ch: &[Q], certificate: &Certificate) -> Result<Vec<Q>> {
    if *certificate == Certificate::ZeroClass && ch.iter().any(|x| !x.is_zero()) {
        return Err(Error::MissingCertificate("class claimed to vanish is nonzero".into()));
    }
    let ranks = integer_ranks(alg, ch)?;
    if let Certificate::Registry(r) = certificate {
        if ranks.iter().any(|x| x != r) {
            return Err(Error::InvalidModel(format!("declared rank {r} differs from computed ranks {ranks:?}")));
        }
    }
    let c = total_chern(alg, ch);
    let mut out = alg.zero();
    for (comp, &r) in ranks.iter().enumerate() {
        let on = alg.restrict_component(&c, comp);
        for k in r + 1..=alg.top_degree() {
            if alg.part(&on, k).iter().any(|x| !x.is_zero()) {
                return Err(Error::InvalidModel(format!(
                    "c_{k} is nonzero on component {comp} of a class of rank {r}"
                )));
            }
        }
        add_assign(&mut out, &alg.part(&on, r));
    }
    Ok(out)
}

/// `Ch(λ_{-1}(E*)) = c_top(E) td(E)^{-1}`.
pub fn lambda_minus1_dual(alg: &GradedAlgebra, ch: &[Q], certificate: &Certificate) -> Result<Vec<Q>> {
    let top = c_top(alg, ch, certificate)?;
    Ok(alg.mul(&top, &todd_inverse(alg, ch)))
}

/// `Ch(λ_{-1}(E*)) = Σ (-1)^k Ch(λ^k E*)` from Newton's identities on the
/// Adams operations `Ch(ψ^n E*) = Σ_j (-n)^j ch_j(E)`.
pub fn lambda_minus1_dual_adams(alg: &GradedAlgebra, ch: &[Q]) -> Result<Vec<Q>> {
    let ranks = integer_ranks(alg, ch)?;
    let top = alg.top_degree();
    let mut out = alg.zero();
    for (comp, &r) in ranks.iter().enumerate() {
        let e_c = alg.basis(alg.idempotent_index(comp));
        let on = alg.restrict_component(ch, comp);
        let adams = |n: usize| {
            let mut p = alg.zero();
            for j in 0..=top {
                let s = Q::from_integer((-(n as i64)).pow(j as u32).into());
                add_assign(&mut p, &scaled(&alg.part(&on, j), &s));
            }
            p
        };
        let powers: Vec<Vec<Q>> = (0..=r).map(|n| if n == 0 { e_c.clone() } else { adams(n) }).collect();
        let mut e: Vec<Vec<Q>> = vec![e_c.clone()];
        for k in 1..=r {
            let mut acc = alg.zero();
            for i in 1..=k {
                let term = alg.mul(&e[k - i], &powers[i]);
                let s = if i.is_odd() { Q::one() } else { -Q::one() };
                add_assign(&mut acc, &scaled(&term, &s));
            }
            e.push(scaled(&acc, &Q::from_integer(k.into()).recip()));
        }
        for (k, ek) in e.iter().enumerate() {
            let s = if k.is_odd() { -Q::one() } else { Q::one() };
            add_assign(&mut out, &scaled(ek, &s));
        }
    }
    Ok(out)
}

/// `f_*(x · td(T_f))` for a proper map with pushforward matrix `push`.
pub fn grr_pushforward(
    source: &GradedAlgebra,
    push: &Matrix<Q>,
    x: &[Q],
    relative_tangent: &[Q],
) -> Result<Vec<Q>> {
    if !source.is_proper() {
        return Err(Error::NonProper("pushforward from a non-proper locus".into()));
    }
    Ok(linalg::mat_vec(push, &source.mul(x, &todd(source, relative_tangent))))
}

/// `χ(F) = ∫ Ch(F) td(T)`.
pub fn euler_characteristic(alg: &GradedAlgebra, ch: &[Q], tangent: &[Q]) -> Result<Q> {
    alg.integrate(&alg.mul(ch, &todd(alg, tangent)))
}

/// `ch` of the line bundle `O(k)` on the projective line.
pub fn line_on_p1(k: i64) -> ChernVector {
    vec![Q::one(), Q::from_integer(k.into())]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qf};

    fn p1xp1() -> GradedAlgebra {
        // 1, h1, h2, h1h2
        let z = vec![q(0); 4];
        let e = |i: usize| (0..4).map(|j| if i == j { q(1) } else { q(0) }).collect::<Vec<_>>();
        let mult = vec![
            vec![e(0), e(1), e(2), e(3)],
            vec![e(1), z.clone(), e(3), z.clone()],
            vec![e(2), e(3), z.clone(), z.clone()],
            vec![e(3), z.clone(), z.clone(), z],
        ];
        let labels = ["1", "h1", "h2", "h1h2"].map(String::from).to_vec();
        GradedAlgebra::new(labels, vec![0, 1, 1, 2], vec![0; 4], None, mult, Some(vec![q(0), q(0), q(0), q(1)]))
            .unwrap()
    }

    #[test]
    fn todd_coefficients() {
        assert_eq!(todd_log_coefficients(4), vec![q(0), qf(1, 2), qf(-1, 24), q(0), qf(1, 2880)]);
    }

    #[test]
    fn chern_classes_on_p1() {
        let p = GradedAlgebra::projective_line();
        assert_eq!(total_chern(&p, &[q(0), q(0)]), vec![q(1), q(0)]);
        assert_eq!(c_top(&p, &[q(0), q(0)], &Certificate::ZeroClass).unwrap(), vec![q(1), q(0)]);
        let o2 = line_on_p1(2);
        assert_eq!(total_chern(&p, &o2), vec![q(1), q(2)]);
        let cert = Certificate::Bundle("O(2)".into());
        assert_eq!(c_top(&p, &o2, &cert).unwrap(), vec![q(0), q(2)]);
        assert!(c_top(&p, &o2, &Certificate::ZeroClass).is_err());
        let half: Vec<Q> = o2.iter().map(|x| x * qf(1, 2)).collect();
        assert!(c_top(&p, &half, &cert).is_err());
        let d = BundleDescriptor::virtual_class("R", o2.clone());
        assert!(d.c_top(&p).is_err());
    }

    #[test]
    fn whitney_quotient() {
        let a = p1xp1();
        let l1 = vec![q(1), q(1), q(0), q(0)];
        let l2 = vec![q(1), q(0), q(3), q(0)];
        let both = combine(&[(q(1), &l1), (q(1), &l2)]);
        let c = total_chern(&a, &both);
        assert_eq!(c, a.mul(&total_chern(&a, &l1), &total_chern(&a, &l2)));
        let quotient = a.mul(&c, &a.inverse_unipotent(&total_chern(&a, &l1)).unwrap());
        assert_eq!(quotient, total_chern(&a, &l2));
        assert_eq!(todd(&a, &both), a.mul(&todd(&a, &l1), &todd(&a, &l2)));
    }

    #[test]
    fn todd_examples() {
        let p = GradedAlgebra::projective_line();
        assert_eq!(todd(&p, &[q(0), q(0)]), vec![q(1), q(0)]);
        assert_eq!(todd(&p, &line_on_p1(2)), vec![q(1), q(1)]);
        assert_eq!(todd(&p, &[qf(1, 2), q(1)]), vec![q(1), qf(1, 2)]);
        assert_eq!(todd_inverse(&p, &[qf(1, 2), q(1)]), vec![q(1), qf(-1, 2)]);
    }

    #[test]
    fn hirzebruch_riemann_roch_on_p1() {
        let p = GradedAlgebra::projective_line();
        let t = line_on_p1(2);
        for k in -2..=3 {
            assert_eq!(euler_characteristic(&p, &line_on_p1(k), &t).unwrap(), q(k + 1));
        }
        let pt = GradedAlgebra::point(true);
        assert_eq!(euler_characteristic(&pt, &[q(1)], &[q(0)]).unwrap(), q(1));
    }

    #[test]
    fn grr_examples() {
        let p = GradedAlgebra::projective_line();
        // P1 -> point: pushforward is integration
        let to_point = vec![vec![q(0), q(1)]];
        let t = line_on_p1(2);
        let o1 = line_on_p1(1);
        assert_eq!(grr_pushforward(&p, &to_point, &o1, &t).unwrap(), vec![q(2)]);
        assert_eq!(grr_pushforward(&p, &to_point, &p.unit(), &t).unwrap(), vec![q(1)]);
        let id = linalg::identity(2);
        assert_eq!(grr_pushforward(&p, &id, &o1, &[q(0), q(0)]).unwrap(), o1);
        // point -> P1, relative tangent = -(pullback of T)
        let pt = GradedAlgebra::point(true);
        let into = vec![vec![q(0)], vec![q(1)]];
        assert_eq!(grr_pushforward(&pt, &into, &[q(1)], &[q(-1)]).unwrap(), vec![q(0), q(1)]);
        assert!(grr_pushforward(&GradedAlgebra::point(false), &into, &[q(1)], &[q(0)]).is_err());
    }

    #[test]
    fn useful_mix_on_line_bundles() {
        let p = GradedAlgebra::projective_line();
        let a = p1xp1();
        for k in -2..=3 {
            let l = line_on_p1(k);
            let cert = Certificate::Bundle(format!("O({k})"));
            let lhs = p.mul(&todd(&p, &l), &lambda_minus1_dual_adams(&p, &l).unwrap());
            assert_eq!(lhs, c_top(&p, &l, &cert).unwrap());
            assert_eq!(lambda_minus1_dual(&p, &l, &cert).unwrap(), lambda_minus1_dual_adams(&p, &l).unwrap());
        }
        let t = vec![q(2), q(2), q(2), q(0)];
        let lhs = a.mul(&todd(&a, &t), &lambda_minus1_dual_adams(&a, &t).unwrap());
        assert_eq!(lhs, c_top(&a, &t, &Certificate::Bundle("T".into())).unwrap());
        assert_eq!(lhs, vec![q(0), q(0), q(0), q(4)]);
        assert_eq!(lambda_minus1_dual_adams(&a, &a.zero()).unwrap(), a.unit());
    }
}
