use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::Q;

/// An element of a [`GradedAlgebra`] read as the Chern character of a
/// K-class; its degree-0 part is the virtual rank on each component.
pub type ChernVector = Vec<Q>;

/// A finite-dimensional commutative graded `Q`-algebra with a basis split
/// over connected components.
///
/// Each component carries exactly one degree-0 basis vector, its
/// idempotent, and the unit is their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedAlgebra {
    labels: Vec<String>,
    degrees: Vec<usize>,
    components: Vec<usize>,
    component_dims: Vec<usize>,
    /// `mult[i][j]` is `b_i b_j` in coordinates.
    mult: Vec<Vec<Vec<Q>>>,
    integration: Option<Vec<Q>>,
}

fn unit_vec(d: usize, i: usize) -> Vec<Q> {
    (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

impl GradedAlgebra {
    /// Validates associativity, commutativity, grading, the component
    /// structure and the support of the integration functional.
    ///
    /// `component_dims` defaults to the largest degree in each component.
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<usize>,
        components: Vec<usize>,
        component_dims: Option<Vec<usize>>,
        mult: Vec<Vec<Vec<Q>>>,
        integration: Option<Vec<Q>>,
    ) -> Result<Self> {
        let d = labels.len();
        let bad = |s: String| Err(Error::InvalidModel(s));
        if degrees.len() != d || components.len() != d {
            return bad("basis, degrees and components differ in length".into());
        }
        if mult.len() != d || mult.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
            return bad("structure constants have the wrong shape".into());
        }
        let ncomp = components.iter().map(|&c| c + 1).max().unwrap_or(0);
        let component_dims = component_dims.unwrap_or_else(|| {
            (0..ncomp)
                .map(|c| (0..d).filter(|&i| components[i] == c).map(|i| degrees[i]).max().unwrap_or(0))
                .collect()
        });
        if component_dims.len() != ncomp {
            return bad("one dimension per component is required".into());
        }
        let alg = GradedAlgebra { labels, degrees, components, component_dims, mult, integration };
        for c in 0..ncomp {
            let zeros: Vec<usize> = (0..d).filter(|&i| alg.components[i] == c && alg.degrees[i] == 0).collect();
            if zeros.len() != 1 {
                return bad(format!("component {c} needs exactly one degree-0 basis vector"));
            }
        }
        for i in 0..d {
            for j in 0..d {
                if alg.mult[i][j] != alg.mult[j][i] {
                    return bad(format!("{} {} is not commutative", alg.labels[i], alg.labels[j]));
                }
                for (k, x) in alg.mult[i][j].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    if alg.degrees[k] != alg.degrees[i] + alg.degrees[j] {
                        return bad(format!("{} {} has a term of the wrong degree", alg.labels[i], alg.labels[j]));
                    }
                    if alg.components[k] != alg.components[i] || alg.components[i] != alg.components[j] {
                        return bad(format!("{} {} mixes components", alg.labels[i], alg.labels[j]));
                    }
                }
            }
        }
        let unit = alg.unit();
        for i in 0..d {
            if alg.mul(&unit, &unit_vec(d, i)) != unit_vec(d, i) {
                return bad(format!("the unit does not fix {}", alg.labels[i]));
            }
            for j in 0..d {
                for k in 0..d {
                    let lhs = alg.mul(&alg.mult[i][j], &unit_vec(d, k));
                    let rhs = alg.mul(&unit_vec(d, i), &alg.mult[j][k]);
                    if lhs != rhs {
                        return bad(format!(
                            "({} {}) {} is not associative",
                            alg.labels[i], alg.labels[j], alg.labels[k]
                        ));
                    }
                }
            }
        }
        if let Some(int) = &alg.integration {
            if int.len() != d {
                return bad("integration vector has the wrong length".into());
            }
            for i in 0..d {
                if !int[i].is_zero() && alg.degrees[i] != alg.component_dims[alg.components[i]] {
                    return bad(format!("integration is nonzero on {} below the top degree", alg.labels[i]));
                }
            }
        }
        Ok(alg)
    }

    /// `Q` in degree 0, one point.
    pub fn point(proper: bool) -> Self {
        let integration = proper.then(|| vec![Q::one()]);
        GradedAlgebra::new(vec!["1".into()], vec![0], vec![0], None, vec![vec![vec![Q::one()]]], integration)
            .expect("point")
    }

    /// The zero algebra of an empty fixed locus.
    pub fn empty(proper: bool) -> Self {
        GradedAlgebra::new(vec![], vec![], vec![], None, vec![], proper.then(Vec::new)).expect("empty")
    }

    /// `Q[h]/h^2` with `∫ h = 1`.
    pub fn projective_line() -> Self {
        let (o, z) = (Q::one(), Q::zero());
        let mult = vec![vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]], vec![
            vec![z.clone(), o.clone()],
            vec![z.clone(), z.clone()],
        ]];
        GradedAlgebra::new(vec!["1".into(), "h".into()], vec![0, 1], vec![0, 0], None, mult, Some(vec![z, o]))
            .expect("P1")
    }

    /// Functions on `n` points.
    pub fn points(labels: Vec<String>, proper: bool) -> Self {
        let n = labels.len();
        let mult = (0..n)
            .map(|i| (0..n).map(|j| if i == j { unit_vec(n, i) } else { vec![Q::zero(); n] }).collect())
            .collect();
        GradedAlgebra::new(labels, vec![0; n], (0..n).collect(), None, mult, proper.then(|| vec![Q::one(); n]))
            .expect("points")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.component_dims.len()
    }

    pub fn component_dims(&self) -> &[usize] {
        &self.component_dims
    }

    pub fn is_proper(&self) -> bool {
        self.integration.is_some()
    }

    pub fn integration(&self) -> Option<&[Q]> {
        self.integration.as_deref()
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.dim()]
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        unit_vec(self.dim(), i)
    }

    /// The degree-0 basis vector of component `c`.
    pub fn idempotent_index(&self, c: usize) -> usize {
        (0..self.dim()).find(|&i| self.components[i] == c && self.degrees[i] == 0).expect("component idempotent")
    }

    pub fn unit(&self) -> Vec<Q> {
        let mut u = self.zero();
        for c in 0..self.num_components() {
            u[self.idempotent_index(c)] = Q::one();
        }
        u
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Q] {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(&self.mult[i][j]) {
                    if !c.is_zero() {
                        *o += c * &ab;
                    }
                }
            }
        }
        out
    }

    /// The degree-`k` part.
    pub fn part(&self, x: &[Q], k: usize) -> Vec<Q> {
        x.iter().zip(&self.degrees).map(|(v, &d)| if d == k { v.clone() } else { Q::zero() }).collect()
    }

    /// The part supported on component `c`.
    pub fn restrict_component(&self, x: &[Q], c: usize) -> Vec<Q> {
        x.iter().zip(&self.components).map(|(v, &k)| if k == c { v.clone() } else { Q::zero() }).collect()
    }

    /// `∫ x`, summed over components.
    pub fn integrate(&self, x: &[Q]) -> Result<Q> {
        let int = self.integration.as_ref().ok_or_else(|| Error::NonProper("no integration functional".into()))?;
        Ok(int.iter().zip(x).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
    }

    /// Degree-0 coefficient on each component.
    pub fn ranks(&self, x: &[Q]) -> Vec<Q> {
        (0..self.num_components()).map(|c| x[self.idempotent_index(c)].clone()).collect()
    }

    /// `Σ_j x^j / j!` for `x` without degree-0 part.
    pub fn exp_nilpotent(&self, x: &[Q]) -> Vec<Q> {
        debug_assert!(self.part(x, 0).iter().all(Zero::is_zero));
        let mut out = self.unit();
        let mut term = self.unit();
        for j in 1..=self.top_degree() {
            term = self.mul(&term, x);
            let f = Q::from_integer(j.into()).recip();
            term.iter_mut().for_each(|t| *t *= &f);
            add_assign(&mut out, &term);
        }
        out
    }

    /// Inverse of `1 + n` with `n` nilpotent.
    pub fn inverse_unipotent(&self, x: &[Q]) -> Result<Vec<Q>> {
        let unit = self.unit();
        if self.part(x, 0) != unit {
            return Err(Error::InvalidModel("series does not start with 1".into()));
        }
        let n: Vec<Q> = x.iter().zip(&unit).map(|(a, b)| a - b).collect();
        let mut out = unit.clone();
        let mut term = unit;
        for _ in 1..=self.top_degree() {
            term = self.mul(&term, &n).into_iter().map(|t| -t).collect();
            add_assign(&mut out, &term);
        }
        Ok(out)
    }

    /// Checks that `m` is a unital ring map into `target`.
    pub fn check_ring_map(&self, target: &GradedAlgebra, m: &Matrix<Q>) -> std::result::Result<(), String> {
        let apply = |v: &[Q]| crate::linalg::mat_vec(m, v);
        if apply(&self.unit()) != target.unit() {
            return Err("the unit is not preserved".into());
        }
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let lhs = apply(&self.mult[i][j]);
                let rhs = target.mul(&apply(&self.basis(i)), &apply(&self.basis(j)));
                if lhs != rhs {
                    return Err(format!("the product {} {} is not preserved", self.labels[i], self.labels[j]));
                }
            }
        }
        Ok(())
    }

    /// Human-readable linear combination of basis labels.
    pub fn format(&self, x: &[Q]) -> String {
        crate::report::format_combination(&self.labels, x)
    }
}

pub(crate) fn add_assign(acc: &mut [Q], x: &[Q]) {
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += b;
        }
    }
}

pub(crate) fn scaled(x: &[Q], s: &Q) -> Vec<Q> {
    x.iter().map(|v| v * s).collect()
}

pub(crate) fn sum(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn difference(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn p1_and_points() {
        let p = GradedAlgebra::projective_line();
        assert_eq!(p.mul(&[q(1), q(2)], &[q(1), q(3)]), vec![q(1), q(5)]);
        assert_eq!(p.integrate(&[q(7), q(2)]).unwrap(), q(2));
        assert_eq!(p.inverse_unipotent(&[q(1), q(2)]).unwrap(), vec![q(1), q(-2)]);
        let pts = GradedAlgebra::points(vec!["a".into(), "b".into()], true);
        assert_eq!(pts.unit(), vec![q(1), q(1)]);
        assert_eq!(pts.ranks(&[q(3), q(0)]), vec![q(3), q(0)]);
        assert!(GradedAlgebra::point(false).integrate(&[q(1)]).is_err());
        assert_eq!(GradedAlgebra::empty(true).dim(), 0);
    }

    #[test]
    fn rejects_bad_tables() {
        let z = Q::zero;
        // h * h = 1 breaks the grading
        let mult = vec![vec![vec![q(1), z()], vec![z(), q(1)]], vec![vec![z(), q(1)], vec![q(1), z()]]];
        assert!(GradedAlgebra::new(vec!["1".into(), "h".into()], vec![0, 1], vec![0, 0], None, mult, None).is_err());
        let mult = vec![vec![vec![q(1), z()], vec![z(), q(1)]], vec![vec![z(), q(1)], vec![z(), z()]]];
        let int = Some(vec![q(1), q(0)]);
        assert!(GradedAlgebra::new(vec!["1".into(), "h".into()], vec![0, 1], vec![0, 0], None, mult, int).is_err());
    }
}
