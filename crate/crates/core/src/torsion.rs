//! Discrete torsion: twisted group rings, twisting a pre-G-Frobenius
//! algebra by a 2-cocycle, and the sign cocycle of the symmetric group.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frobenius::{check_morphism, MorphismReport, PreGFrobeniusAlgebra, Sector};
use crate::group::{cycle_count, FiniteGroup, TwoCocycle};
use crate::linalg::{self, Matrix};
use crate::Q;

fn require_cocycle(alpha: &TwoCocycle) -> Result<()> {
    match alpha.cocycle_violation() {
        None => Ok(()),
        Some((a, b, c)) => Err(Error::InvalidCocycle(format!("cocycle identity fails at ({a}, {b}, {c})"))),
    }
}

/// `Q^α[G]` with `e_{m1} ⋆ e_{m2} = α(m1,m2) e_{m1m2}`,
/// `ρ(γ) e_m = ε(γ,m) e_{γmγ⁻¹}`, `η(e_m, e_{m⁻¹}) = α(m,m⁻¹)` and the
/// canonical trace.
pub fn twisted_group_ring(alpha: &TwoCocycle) -> Result<PreGFrobeniusAlgebra> {
    require_cocycle(alpha)?;
    let g = alpha.group().clone();
    let n = g.order();
    let a11 = alpha.get(0, 0).clone();
    let algebra = PreGFrobeniusAlgebra {
        name: format!("Q^a[{}]", g.name()),
        sectors: (0..n).map(|m| Sector::graded(vec![format!("e_{}", g.label(m))], vec![Q::zero()])).collect(),
        action: (0..n).map(|gamma| (0..n).map(|m| vec![vec![alpha.epsilon(gamma, m)]]).collect()).collect(),
        product: (0..n * n).map(|k| vec![vec![alpha.get(k / n, k % n).clone()]]).collect(),
        unit: vec![a11.recip()],
        pairing: Some((0..n).map(|m| vec![vec![alpha.get(m, g.inv(m)).clone()]]).collect()),
        trace: None,
        group: g,
    };
    Ok(algebra.with_canonical_trace())
}

/// The twist `A^α`: products scale by `α(m1,m2)`, the action by `ε(γ,m)`,
/// the pairing by `α(m,m⁻¹)` and `τ_{a,b}` by
/// `α([a,b],bab⁻¹) α(b,a) / α(bab⁻¹,b)`.
pub fn twist(a: &PreGFrobeniusAlgebra, alpha: &TwoCocycle) -> Result<PreGFrobeniusAlgebra> {
    if **alpha.group() != *a.group {
        return Err(Error::GroupMismatch);
    }
    require_cocycle(alpha)?;
    let g = &a.group;
    let n = a.order();
    let mut out = a.clone();
    out.name = format!("{} twisted", a.name);
    for gamma in 0..n {
        for m in 0..n {
            let e = alpha.epsilon(gamma, m);
            out.action[gamma][m] = linalg::scale(&a.action[gamma][m], &e);
        }
    }
    for m1 in 0..n {
        for m2 in 0..n {
            let s = alpha.get(m1, m2);
            for v in out.product[m1 * n + m2].iter_mut() {
                for x in v.iter_mut() {
                    *x *= s;
                }
            }
        }
    }
    let a11 = alpha.get(0, 0).recip();
    out.unit = a.unit.iter().map(|x| x * &a11).collect();
    if let Some(p) = &mut out.pairing {
        for (m, gram) in p.iter_mut().enumerate() {
            *gram = linalg::scale(gram, alpha.get(m, g.inv(m)));
        }
    }
    if let Some(t) = &mut out.trace {
        for x in 0..n {
            for y in 0..n {
                let c = g.commutator(x, y);
                let bab = g.conjugate(y, x);
                let f = alpha.get(c, bab) * alpha.get(y, x) / alpha.get(bab, y);
                for v in t[x * n + y].iter_mut() {
                    *v *= &f;
                }
            }
        }
    }
    Ok(out)
}

/// `α(m1,m2) = (-1)^{(l(m1) + l(m2) - l(m1m2))/2}` on `S_n`, where
/// `l(m) = n - #cycles(m)`.
pub fn symmetric_sign_cocycle(n: usize) -> TwoCocycle {
    let g = crate::catalog::sym(n);
    sign_cocycle_on(g)
}

/// The sign cocycle of any permutation group.
pub fn sign_cocycle_on(g: Arc<FiniteGroup>) -> TwoCocycle {
    let degree = g.degree().expect("permutation group");
    let len = |x: usize| degree - cycle_count(g.permutation(x).expect("permutation group"));
    let lens: Vec<usize> = g.elements().map(len).collect();
    TwoCocycle::from_fn(g.clone(), |a, b| {
        let twice = lens[a] + lens[b] - lens[g.mul(a, b)];
        assert!(twice.is_multiple_of(2), "length defect is odd for ({a}, {b})");
        if (twice / 2).is_multiple_of(2) {
            Q::one()
        } else {
            -Q::one()
        }
    })
    .expect("sign cocycle")
}

/// A verified isomorphism `A → A^α` for `α(a,b) = β(a)β(b)/β(ab)`.
#[derive(Debug, Clone)]
pub struct CoboundaryIsomorphism {
    pub beta: Vec<Q>,
    /// `v_m ↦ β(m)⁻¹ v_m`
    pub maps: Vec<Matrix<Q>>,
    pub twisted: PreGFrobeniusAlgebra,
    pub report: MorphismReport,
}

/// Checks the witness `β` and the scaling isomorphism onto the twist.
pub fn coboundary_twist_isomorphism(
    a: &PreGFrobeniusAlgebra,
    alpha: &TwoCocycle,
    beta: &[Q],
) -> Result<CoboundaryIsomorphism> {
    let g = &a.group;
    let n = a.order();
    if beta.len() != n || beta.iter().any(Zero::is_zero) {
        return Err(Error::InvalidCocycle("β must be a nonzero value per group element".into()));
    }
    for x in 0..n {
        for y in 0..n {
            if *alpha.get(x, y) != &beta[x] * &beta[y] / &beta[g.mul(x, y)] {
                return Err(Error::InvalidCocycle(format!("β does not bound α at ({x}, {y})")));
            }
        }
    }
    let twisted = twist(a, alpha)?;
    let maps: Vec<Matrix<Q>> =
        (0..n).map(|m| linalg::scale(&linalg::identity(a.dim(m)), &beta[m].recip())).collect();
    let report = check_morphism(a, &twisted, &maps)?;
    Ok(CoboundaryIsomorphism { beta: beta.to_vec(), maps, twisted, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::frobenius::{check_axioms, familiar_trace_axiom, group_ring};
    use crate::q;

    #[test]
    fn untwisted_ring_is_the_group_ring() {
        for g in catalog::groups() {
            let a = twisted_group_ring(&TwoCocycle::trivial(g.clone())).unwrap();
            let b = group_ring(g);
            assert_eq!(a.product, b.product);
            assert_eq!(a.trace, b.trace);
            assert!(check_axioms(&a).unwrap().passed());
        }
    }

    #[test]
    fn sign_twisted_s2() {
        let alpha = symmetric_sign_cocycle(2);
        assert_eq!(*alpha.get(1, 1), q(-1));
        let a = twisted_group_ring(&alpha).unwrap();
        assert_eq!(a.basis_product(1, 0, 1, 0), &[q(-1)]);
        assert!(check_axioms(&a).unwrap().passed());
        assert!(familiar_trace_axiom(&a).is_ok());
        let broken = TwoCocycle::from_fn(catalog::cyclic(3), |x, y| if (x, y) == (1, 2) { q(3) } else { q(1) }).unwrap();
        assert!(twisted_group_ring(&broken).is_err());
    }

    #[test]
    fn sign_cocycles_are_cocycles() {
        for n in 1..=5 {
            let alpha = symmetric_sign_cocycle(n);
            assert!(alpha.is_cocycle(), "n = {n}");
        }
        assert!(symmetric_sign_cocycle(1).rows().iter().flatten().all(|x| x.is_one()));
    }

    #[test]
    fn twist_formulas_match_the_canonical_trace_of_the_twist() {
        for n in 2..=4 {
            let g = catalog::sym(n);
            let alpha = symmetric_sign_cocycle(n);
            let a = group_ring(g);
            let t = twist(&a, &alpha).unwrap();
            let canon = t.clone().with_canonical_trace();
            assert_eq!(t.trace, canon.trace, "S{n}");
            assert!(check_axioms(&t).unwrap().passed());
            let back = twist(&t, &alpha.inverse()).unwrap();
            assert_eq!(back.product, a.product);
            assert_eq!(back.action, a.action);
            assert_eq!(back.trace, a.trace);
        }
        let a = group_ring(catalog::s3());
        let same = twist(&a, &TwoCocycle::trivial(catalog::s3())).unwrap();
        assert_eq!(same.product, a.product);
    }

    #[test]
    fn coboundary_scaling() {
        let g = catalog::cyclic(2);
        let beta = vec![q(1), q(2)];
        let alpha = TwoCocycle::coboundary(g.clone(), &beta).unwrap();
        let a = group_ring(g.clone());
        let iso = coboundary_twist_isomorphism(&a, &alpha, &beta).unwrap();
        assert!(iso.report.is_isomorphism(), "{:?}", iso.report);
        let t = TwoCocycle::trivial(g.clone());
        let id = coboundary_twist_isomorphism(&a, &t, &[q(1), q(1)]).unwrap();
        assert_eq!(id.maps, vec![vec![vec![q(1)]]; 2]);
        let sign = symmetric_sign_cocycle(2);
        assert!(sign.is_coboundary().is_none());
        assert!(coboundary_twist_isomorphism(&a, &sign, &[q(1), q(1)]).is_err());
    }
}
