//! Stringy Euler characteristics and the symmetric-product check against
//! the generating function `Π_k (1 - q^k)^{-χ}`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::series::c_top;
use crate::geometry::{Certificate, GeometricModel};
use crate::Q;

/// `χ(X^{⟨a,b⟩})` for each commuting pair and their average over `G`.
#[derive(Debug, Clone, Serialize)]
pub struct EulerReport {
    pub model: String,
    pub pairs: Vec<EulerTerm>,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub total: Q,
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerTerm {
    pub a: String,
    pub b: String,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub chi: Q,
}

/// `(1/|G|) Σ_{ab=ba} χ(X^{⟨a,b⟩})` with `χ = ∫ c_top(T)`.
pub fn stringy_euler(model: &GeometricModel) -> Result<EulerReport> {
    if !model.proper {
        return Err(Error::NonProper(model.name.clone()));
    }
    let g = &model.group;
    let mut pairs = Vec::new();
    let mut total = Q::zero();
    for (a, b) in g.commuting_pairs() {
        let l = &model.loci[model.pair_locus(a, b)];
        let top = c_top(&l.algebra, &l.tangent, &Certificate::Bundle("tangent bundle".into()))?;
        let chi = l.algebra.integrate(&top)?;
        total += &chi;
        pairs.push(EulerTerm { a: g.label(a).to_string(), b: g.label(b).to_string(), chi });
    }
    total /= Q::from_integer(g.order().into());
    Ok(EulerReport { model: model.name.clone(), pairs, total })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable();
    out
}

/// Orbits of `⟨a, b⟩` on the points.
fn joint_orbits(a: &[usize], b: &[usize]) -> usize {
    let n = a.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in 0..n {
        for y in [a[x], b[x]] {
            let (rx, ry) = (root(&mut parent, x), root(&mut parent, y));
            parent[rx] = ry;
        }
    }
    (0..n).filter(|&x| root(&mut parent, x) == x).count()
}

fn pow(chi: i64, k: usize) -> Q {
    Q::from_integer(num_bigint::BigInt::from(chi).pow(k as u32))
}

/// `(1/n!) Σ_{ab=ba in S_n} χ^{#orbits⟨a,b⟩}`, the stringy Euler
/// characteristic of `Y^n/S_n` for `χ(Y) = chi`.
///
/// One representative `a` per cycle type; the sum over its centralizer is
/// weighted by `1/|Z(a)|`.
pub fn sym_orbifold_euler(chi: i64, n: usize) -> Result<Q> {
    if n > 8 {
        return Err(Error::NotApplicable(format!("n = {n} exceeds 8")));
    }
    let mut all = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        all.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let mut reps: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for p in &all {
        let t = cycle_type(p);
        if !reps.iter().any(|(u, _)| *u == t) {
            reps.push((t, p.clone()));
        }
    }
    let mut total = Q::zero();
    for (_, a) in &reps {
        let mut size = 0usize;
        let mut sum = Q::zero();
        for b in &all {
            if (0..n).all(|x| a[b[x]] == b[a[x]]) {
                size += 1;
                sum += pow(chi, joint_orbits(a, b));
            }
        }
        total += sum / Q::from_integer(size.into());
    }
    Ok(total)
}

/// Coefficient of `q^n` in `Π_{k≥1} (1 - q^k)^{-chi}`.
pub fn dhvw_coefficient(chi: i64, n: usize) -> Result<Q> {
    if n > 8 {
        return Err(Error::NotApplicable(format!("n = {n} exceeds 8")));
    }
    // log of the product is chi Σ_k Σ_j q^{kj} / j = Σ_m chi σ_{-1}(m) q^m
    let mut log = vec![Q::zero(); n + 1];
    for k in 1..=n {
        for j in 1..=n / k {
            log[k * j] += Q::new(chi.into(), (j as i64).into());
        }
    }
    // exp via f' = log' f
    let mut f = vec![Q::zero(); n + 1];
    f[0] = Q::one();
    for m in 1..=n {
        let mut acc = Q::zero();
        for i in 1..=m {
            acc += Q::from_integer((i as i64).into()) * &log[i] * &f[m - i];
        }
        f[m] = acc / Q::from_integer((m as i64).into());
    }
    Ok(f[n].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::geometry::{gset_model, point_model};
    use crate::q;

    #[test]
    fn points_and_free_actions() {
        assert_eq!(stringy_euler(&point_model(catalog::s3())).unwrap().total, q(3));
        let free = gset_model("free", catalog::cyclic(2), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(stringy_euler(&free).unwrap().total, q(1));
        let lin = crate::geometry::linear_model(&catalog::cyclic_sl2(3)).unwrap();
        assert!(stringy_euler(&lin).is_err());
    }

    #[test]
    fn symmetric_products() {
        assert_eq!(sym_orbifold_euler(7, 1).unwrap(), q(7));
        assert_eq!(sym_orbifold_euler(2, 2).unwrap(), q(5));
        assert_eq!(sym_orbifold_euler(24, 2).unwrap(), q(324));
        assert_eq!(dhvw_coefficient(5, 0).unwrap(), q(1));
        assert_eq!(dhvw_coefficient(2, 2).unwrap(), q(5));
        assert_eq!(dhvw_coefficient(0, 3).unwrap(), q(0));
        for chi in [-2, -1, 0, 1, 2, 24] {
            for n in 0..=5 {
                assert_eq!(sym_orbifold_euler(chi, n).unwrap(), dhvw_coefficient(chi, n).unwrap(), "chi {chi} n {n}");
            }
        }
        assert!(sym_orbifold_euler(1, 9).is_err());
    }
}
