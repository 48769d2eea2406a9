//! Pre-G-Frobenius algebras over `Q`: data model, the twelve axioms,
//! canonical traces, coinvariants and tensor products.

use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{self, Matrix};
use crate::Q;

/// One graded piece `A_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sector {
    pub labels: Vec<String>,
    /// Rational degree of each basis vector, when the algebra is graded.
    pub degrees: Option<Vec<Q>>,
}

impl Sector {
    pub fn new(labels: Vec<String>) -> Self {
        Sector { labels, degrees: None }
    }

    pub fn graded(labels: Vec<String>, degrees: Vec<Q>) -> Self {
        Sector { labels, degrees: Some(degrees) }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

/// A G-graded G-module with product, unit and optional pairing and trace.
///
/// Vectors are coordinate vectors in the sector bases; linear maps are
/// matrices acting on column vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct PreGFrobeniusAlgebra {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub sectors: Vec<Sector>,
    /// `action[γ][m]: A_m → A_{γmγ⁻¹}`
    pub action: Vec<Vec<Matrix<Q>>>,
    /// `product[m1 * |G| + m2][i * dim A_{m2} + j]` is `v_i ⋆ w_j ∈ A_{m1 m2}`.
    pub product: Vec<Vec<Vec<Q>>>,
    pub unit: Vec<Q>,
    /// `pairing[m]` is the `dim A_m × dim A_{m⁻¹}` Gram matrix.
    pub pairing: Option<Vec<Matrix<Q>>>,
    /// `trace[a * |G| + b]` is `τ_{a,b}` as a functional on `A_{[a,b]}`.
    pub trace: Option<Vec<Vec<Q>>>,
}

fn add_into(acc: &mut [Q], v: &[Q], s: &Q) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += x * s;
        }
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

fn basis(d: usize, i: usize) -> Vec<Q> {
    (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

impl PreGFrobeniusAlgebra {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn dim(&self, m: usize) -> usize {
        self.sectors[m].dim()
    }

    pub fn total_dim(&self) -> usize {
        self.sectors.iter().map(Sector::dim).sum()
    }

    pub fn is_proper(&self) -> bool {
        self.pairing.is_some() && self.trace.is_some()
    }

    pub fn label(&self, m: usize, i: usize) -> String {
        format!("{}[{}]", self.sectors[m].labels[i], self.group.label(m))
    }

    /// Structure constants of `v_i ⋆ w_j`.
    pub fn basis_product(&self, m1: usize, i: usize, m2: usize, j: usize) -> &[Q] {
        &self.product[m1 * self.order() + m2][i * self.dim(m2) + j]
    }

    pub fn mul(&self, m1: usize, v: &[Q], m2: usize, w: &[Q]) -> Vec<Q> {
        let m = self.group.mul(m1, m2);
        let mut out = vec![Q::zero(); self.dim(m)];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in w.iter().enumerate() {
                if !y.is_zero() {
                    add_into(&mut out, self.basis_product(m1, i, m2, j), &(x * y));
                }
            }
        }
        out
    }

    pub fn act(&self, gamma: usize, m: usize, v: &[Q]) -> Vec<Q> {
        linalg::mat_vec(&self.action[gamma][m], v)
    }

    pub fn eta(&self, m: usize, v: &[Q], w: &[Q]) -> Option<Q> {
        let p = self.pairing.as_ref()?;
        Some(dot(v, &linalg::mat_vec(&p[m], w)))
    }

    pub fn tau(&self, a: usize, b: usize, v: &[Q]) -> Option<Q> {
        let t = self.trace.as_ref()?;
        Some(dot(&t[a * self.order() + b], v))
    }

    /// Left multiplication `L_v: A_m → A_{cm}` for `v ∈ A_c`, as a matrix.
    pub fn left_mul(&self, c: usize, v: &[Q], m: usize) -> Matrix<Q> {
        let target = self.dim(self.group.mul(c, m));
        let cols: Vec<Vec<Q>> = (0..self.dim(m)).map(|j| self.mul(c, v, m, &basis(self.dim(m), j))).collect();
        linalg::transpose(&cols, target)
    }

    /// Checks that every table has the shape the group and sectors demand.
    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        let g = &self.group;
        let bad = |msg: String| Err(Error::InvalidModel(format!("{}: {msg}", self.name)));
        if self.sectors.len() != n {
            return bad(format!("{} sectors for a group of order {n}", self.sectors.len()));
        }
        for s in &self.sectors {
            if s.degrees.as_ref().is_some_and(|d| d.len() != s.dim()) {
                return bad("degree list length differs from sector dimension".into());
            }
        }
        if self.action.len() != n {
            return bad("action table has the wrong length".into());
        }
        for gamma in 0..n {
            if self.action[gamma].len() != n {
                return bad(format!("action of {} has the wrong number of sectors", g.label(gamma)));
            }
            for m in 0..n {
                let a = &self.action[gamma][m];
                let t = self.dim(g.conjugate(gamma, m));
                if a.len() != t || a.iter().any(|r| r.len() != self.dim(m)) {
                    return bad(format!("action matrix of {} on sector {} has the wrong shape", g.label(gamma), g.label(m)));
                }
            }
        }
        if self.product.len() != n * n {
            return bad("product table has the wrong length".into());
        }
        for m1 in 0..n {
            for m2 in 0..n {
                let p = &self.product[m1 * n + m2];
                let t = self.dim(g.mul(m1, m2));
                if p.len() != self.dim(m1) * self.dim(m2) || p.iter().any(|v| v.len() != t) {
                    return bad(format!("product {}·{} has the wrong shape", g.label(m1), g.label(m2)));
                }
            }
        }
        if self.unit.len() != self.dim(0) {
            return bad("unit is not a vector in the identity sector".into());
        }
        if let Some(p) = &self.pairing {
            if p.len() != n {
                return bad("pairing table has the wrong length".into());
            }
            for (m, gram) in p.iter().enumerate() {
                let t = self.dim(g.inv(m));
                if gram.len() != self.dim(m) || gram.iter().any(|r| r.len() != t) {
                    return bad(format!("pairing on sector {} has the wrong shape", g.label(m)));
                }
            }
        }
        if let Some(t) = &self.trace {
            if t.len() != n * n {
                return bad("trace table has the wrong length".into());
            }
            for a in 0..n {
                for b in 0..n {
                    if t[a * n + b].len() != self.dim(g.commutator(a, b)) {
                        return bad(format!("τ({},{}) has the wrong length", g.label(a), g.label(b)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Replaces the trace by the canonical one.
    pub fn with_canonical_trace(mut self) -> Self {
        self.trace = Some(canonical_trace(&self));
        self
    }

    /// Image under per-sector linear maps, carrying every structure over.
    /// `maps[m]` must be invertible.
    pub fn transport(&self, name: &str, maps: &[Matrix<Q>]) -> Result<Self> {
        let n = self.order();
        let g = &self.group;
        let inv: Vec<Matrix<Q>> = maps
            .iter()
            .map(|m| if m.is_empty() { Some(Vec::new()) } else { linalg::inverse(m) })
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidModel("transport map is not invertible".into()))?;
        let mut out = self.clone();
        out.name = name.to_string();
        for gamma in 0..n {
            for m in 0..n {
                let t = g.conjugate(gamma, m);
                out.action[gamma][m] = linalg::mat_mul(&linalg::mat_mul(&maps[t], &self.action[gamma][m]), &inv[m]);
            }
        }
        for m1 in 0..n {
            for m2 in 0..n {
                let m = g.mul(m1, m2);
                let (d1, d2) = (self.dim(m1), self.dim(m2));
                let mut p = Vec::with_capacity(d1 * d2);
                for i in 0..d1 {
                    let v = column(&inv[m1], i);
                    for j in 0..d2 {
                        let w = column(&inv[m2], j);
                        p.push(linalg::mat_vec(&maps[m], &self.mul(m1, &v, m2, &w)));
                    }
                }
                out.product[m1 * n + m2] = p;
            }
        }
        out.unit = linalg::mat_vec(&maps[0], &self.unit);
        if let Some(pairing) = &self.pairing {
            out.pairing = Some(
                (0..n)
                    .map(|m| {
                        let mi = g.inv(m);
                        let it = linalg::transpose(&inv[m], self.dim(m));
                        linalg::mat_mul(&linalg::mat_mul(&it, &pairing[m]), &inv[mi])
                    })
                    .collect(),
            );
        }
        if let Some(trace) = &self.trace {
            out.trace = Some(
                (0..n * n)
                    .map(|ab| {
                        let c = g.commutator(ab / n, ab % n);
                        let d = self.dim(c);
                        (0..d).map(|j| dot(&trace[ab], &column(&inv[c], j))).collect()
                    })
                    .collect(),
            );
        }
        for m in 0..n {
            out.sectors[m].degrees = None;
        }
        Ok(out)
    }
}

fn column(m: &Matrix<Q>, j: usize) -> Vec<Q> {
    m.iter().map(|r| r[j].clone()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: &'static str,
    pub status: Status,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    /// No axiom failed.
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&AxiomResult> {
        self.results.iter().filter(|r| r.status == Status::Fail).collect()
    }

    pub fn status(&self, axiom: &str) -> Option<Status> {
        self.results.iter().find(|r| r.axiom == axiom).map(|r| r.status)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

pub const AXIOMS: [&str; 12] = [
    "module",
    "self_invariance",
    "pairing",
    "graded_multiplication",
    "associativity",
    "braided_commutativity",
    "equivariance",
    "pairing_invariance",
    "pairing_multiplicativity",
    "unit",
    "trace_equivariance",
    "trace_axiom",
];

type Check = std::result::Result<(), String>;

fn outcome(axiom: &'static str, check: Option<Check>) -> AxiomResult {
    match check {
        None => AxiomResult { axiom, status: Status::NotApplicable, witness: None },
        Some(Ok(())) => AxiomResult { axiom, status: Status::Pass, witness: None },
        Some(Err(w)) => AxiomResult { axiom, status: Status::Fail, witness: Some(w) },
    }
}

/// Checks the twelve axioms on basis vectors.
pub fn check_axioms(a: &PreGFrobeniusAlgebra) -> Result<AxiomReport> {
    a.validate()?;
    let metric = a.pairing.is_some();
    let traced = a.trace.is_some();
    let results = vec![
        outcome(AXIOMS[0], Some(check_module(a))),
        outcome(AXIOMS[1], Some(check_self_invariance(a))),
        outcome(AXIOMS[2], metric.then(|| check_pairing(a))),
        outcome(AXIOMS[3], Some(check_grading(a))),
        outcome(AXIOMS[4], Some(check_associativity(a))),
        outcome(AXIOMS[5], Some(check_braiding(a))),
        outcome(AXIOMS[6], Some(check_equivariance(a))),
        outcome(AXIOMS[7], metric.then(|| check_pairing_invariance(a))),
        outcome(AXIOMS[8], metric.then(|| check_frobenius(a))),
        outcome(AXIOMS[9], Some(check_unit(a))),
        outcome(AXIOMS[10], traced.then(|| check_trace_equivariance(a))),
        outcome(AXIOMS[11], traced.then(|| check_trace_axiom(a))),
    ];
    Ok(AxiomReport { algebra: a.name.clone(), results })
}

fn check_module(a: &PreGFrobeniusAlgebra) -> Check {
    let g = &a.group;
    let n = a.order();
    for m in 0..n {
        if a.action[0][m] != linalg::identity::<Q>(a.dim(m)) {
            return Err(format!("ρ(e) is not the identity on sector {}", g.label(m)));
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = g.mul(x, y);
            for m in 0..n {
                let lhs = &a.action[xy][m];
                let rhs = linalg::mat_mul(&a.action[x][g.conjugate(y, m)], &a.action[y][m]);
                if *lhs != rhs {
                    return Err(format!("ρ({}) ≠ ρ({})ρ({}) on sector {}", g.label(xy), g.label(x), g.label(y), g.label(m)));
                }
            }
        }
    }
    Ok(())
}

fn check_self_invariance(a: &PreGFrobeniusAlgebra) -> Check {
    for m in 0..a.order() {
        if a.action[m][m] != linalg::identity::<Q>(a.dim(m)) {
            return Err(format!("ρ({0}) is not the identity on sector {0}", a.group.label(m)));
        }
    }
    Ok(())
}

fn check_pairing(a: &PreGFrobeniusAlgebra) -> Check {
    let p = a.pairing.as_ref().expect("pairing");
    let g = &a.group;
    for m in 0..a.order() {
        let mi = g.inv(m);
        for i in 0..a.dim(m) {
            for j in 0..a.dim(mi) {
                if p[m][i][j] != p[mi][j][i] {
                    return Err(format!("η({}, {}) is not symmetric", a.label(m, i), a.label(mi, j)));
                }
            }
        }
    }
    Ok(())
}

fn check_grading(a: &PreGFrobeniusAlgebra) -> Check {
    let g = &a.group;
    let n = a.order();
    for m1 in 0..n {
        for m2 in 0..n {
            let m = g.mul(m1, m2);
            let (Some(d1), Some(d2), Some(d)) =
                (&a.sectors[m1].degrees, &a.sectors[m2].degrees, &a.sectors[m].degrees)
            else {
                continue;
            };
            for i in 0..a.dim(m1) {
                for j in 0..a.dim(m2) {
                    let p = a.basis_product(m1, i, m2, j);
                    let target = &d1[i] + &d2[j];
                    if let Some(k) = (0..p.len()).find(|&k| !p[k].is_zero() && d[k] != target) {
                        return Err(format!(
                            "{} ⋆ {} has a component {} of degree {} instead of {target}",
                            a.label(m1, i),
                            a.label(m2, j),
                            a.label(m, k),
                            d[k]
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_associativity(a: &PreGFrobeniusAlgebra) -> Check {
    let g = &a.group;
    let n = a.order();
    for m1 in 0..n {
        for m2 in 0..n {
            let m12 = g.mul(m1, m2);
            for m3 in 0..n {
                let m23 = g.mul(m2, m3);
                for i in 0..a.dim(m1) {
                    let u = basis(a.dim(m1), i);
                    for j in 0..a.dim(m2) {
                        let v = a.basis_product(m1, i, m2, j);
                        for k in 0..a.dim(m3) {
                            let w = basis(a.dim(m3), k);
                            let lhs = a.mul(m12, v, m3, &w);
                            let rhs = a.mul(m1, &u, m23, a.basis_product(m2, j, m3, k));
                            if lhs != rhs {
                                return Err(format!(
                                    "({} ⋆ {}) ⋆ {} ≠ {} ⋆ ({} ⋆ {})",
                                    a.label(m1, i),
                                    a.label(m2, j),
                                    a.label(m3, k),
                                    a.label(m1, i),
                                    a.label(m2, j),
                                    a.label(m3, k)
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_braiding(a: &PreGFrobeniusAlgebra) -> Check {
    let g = &a.group;
    let n = a.order();
    for m1 in 0..n {
        for m2 in 0..n {
            let c = g.conjugate(m1, m2);
            for i in 0..a.dim(m1) {
                let v = basis(a.dim(m1), i);
                for j in 0..a.dim(m2) {
                    let w = basis(a.dim(m2), j);
                    let lhs = a.basis_product(m1, i, m2, j);
                    let rhs = a.mul(c, &a.act(m1, m2, &w), m1, &v);
                    if lhs != rhs.as_slice() {
                        return Err(format!(
                            "{} ⋆ {} ≠ (ρ({}) {}) ⋆ {}",
                            a.label(m1, i),
                            a.label(m2, j),
                            g.label(m1),
                            a.label(m2, j),
                            a.label(m1, i)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_equivariance(a: &PreGFrobeniusAlgebra) -> Check {
    let g = &a.group;
    let n = a.order();
    for gamma in 0..n {
        for m1 in 0..n {
            let c1 = g.conjugate(gamma, m1);
            for m2 in 0..n {
                let c2 = g.conjugate(gamma, m2);
                let m = g.mul(m1, m2);
                for i in 0..a.dim(m1) {
                    let v = a.act(gamma, m1, &basis(a.dim(m1), i));
                    for j in 0..a.dim(m2) {
                        let w = a.act(gamma, m2, &basis(a.dim(m2), j));
                        let lhs = a.mul(c1, &v, c2, &w);
                        let rhs = a.act(gamma, m, a.basis_product(m1, i, m2, j));
                        if lhs != rhs {
                            return Err(format!(
                                "ρ({0})({1} ⋆ {2}) ≠ ρ({0}){1} ⋆ ρ({0}){2}",
                                g.label(gamma),
                                a.label(m1, i),
                                a.label(m2, j)
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_pairing_invariance(a: &PreGFrobeniusAlgebra) -> Check {
    let g = &a.group;
    let n = a.order();
    for gamma in 0..n {
        for m in 0..n {
            let mi = g.inv(m);
            let c = g.conjugate(gamma, m);
            for i in 0..a.dim(m) {
                let v = a.act(gamma, m, &basis(a.dim(m), i));
                for j in 0..a.dim(mi) {
                    let w = a.act(gamma, mi, &basis(a.dim(mi), j));
                    let lhs = a.eta(c, &v, &w).expect("pairing");
                    let p = a.pairing.as_ref().expect("pairing");
                    if lhs != p[m][i][j] {
                        return Err(format!(
                            "η(ρ({0}){1}, ρ({0}){2}) ≠ η({1}, {2})",
                            g.label(gamma),
                            a.label(m, i),
                            a.label(mi, j)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_frobenius(a: &PreGFrobeniusAlgebra) -> Check {
    let g = &a.group;
    let n = a.order();
    for m1 in 0..n {
        for m2 in 0..n {
            let m12 = g.mul(m1, m2);
            let m3 = g.inv(m12);
            for i in 0..a.dim(m1) {
                let u = basis(a.dim(m1), i);
                for j in 0..a.dim(m2) {
                    for k in 0..a.dim(m3) {
                        let w = basis(a.dim(m3), k);
                        let lhs = a.eta(m12, a.basis_product(m1, i, m2, j), &w).expect("pairing");
                        let rhs = a.eta(m1, &u, a.basis_product(m2, j, m3, k)).expect("pairing");
                        if lhs != rhs {
                            return Err(format!(
                                "η({0} ⋆ {1}, {2}) ≠ η({0}, {1} ⋆ {2})",
                                a.label(m1, i),
                                a.label(m2, j),
                                a.label(m3, k)
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_unit(a: &PreGFrobeniusAlgebra) -> Check {
    let g = &a.group;
    for gamma in 0..a.order() {
        if a.act(gamma, 0, &a.unit) != a.unit {
            return Err(format!("ρ({}) 1 ≠ 1", g.label(gamma)));
        }
    }
    for m in 0..a.order() {
        for i in 0..a.dim(m) {
            let v = basis(a.dim(m), i);
            if a.mul(0, &a.unit, m, &v) != v || a.mul(m, &v, 0, &a.unit) != v {
                return Err(format!("1 is not a unit for {}", a.label(m, i)));
            }
        }
    }
    Ok(())
}

fn check_trace_equivariance(a: &PreGFrobeniusAlgebra) -> Check {
    let g = &a.group;
    let n = a.order();
    for gamma in 0..n {
        for x in 0..n {
            for y in 0..n {
                let c = g.commutator(x, y);
                let (gx, gy) = (g.conjugate(gamma, x), g.conjugate(gamma, y));
                for i in 0..a.dim(c) {
                    let v = basis(a.dim(c), i);
                    let lhs = a.tau(gx, gy, &a.act(gamma, c, &v)).expect("trace");
                    let rhs = a.tau(x, y, &v).expect("trace");
                    if lhs != rhs {
                        return Err(format!(
                            "τ({}, {})(ρ({}) {}) = {lhs} but τ({}, {})({}) = {rhs}",
                            g.label(gx),
                            g.label(gy),
                            g.label(gamma),
                            a.label(c, i),
                            g.label(x),
                            g.label(y),
                            a.label(c, i)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_trace_axiom(a: &PreGFrobeniusAlgebra) -> Check {
    let g = &a.group;
    let n = a.order();
    let t = a.trace.as_ref().expect("trace");
    for x in 0..n {
        for y in 0..n {
            let x2 = g.conjugate(x, y);
            let y2 = g.inv(x);
            if t[x * n + y] != t[x2 * n + y2] {
                let mut w = String::new();
                let _ = write!(
                    w,
                    "τ({}, {}) = {:?} but τ({}, {}) = {:?}",
                    g.label(x),
                    g.label(y),
                    strings(&t[x * n + y]),
                    g.label(x2),
                    g.label(y2),
                    strings(&t[x2 * n + y2])
                );
                return Err(w);
            }
        }
    }
    Ok(())
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(|q| q.to_string()).collect()
}

/// `τ_{a,b}(v) = tr_{A_a}(L_v ∘ ρ(b))` for `v ∈ A_{[a,b]}`.
pub fn canonical_trace(a: &PreGFrobeniusAlgebra) -> Vec<Vec<Q>> {
    let g = &a.group;
    let n = a.order();
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let c = g.commutator(x, y);
            let bab = g.conjugate(y, x);
            let row = (0..a.dim(c))
                .map(|i| {
                    let l = a.left_mul(c, &basis(a.dim(c), i), bab);
                    linalg::trace(&linalg::mat_mul(&l, &a.action[y][x]))
                })
                .collect();
            out.push(row);
        }
    }
    out
}

/// `tr_{A_a}(L_v ∘ ρ(b)) = tr_{A_b}(ρ(a⁻¹) ∘ L_v)`; returns the first
/// violating `(a, b, i)`.
pub fn familiar_trace_axiom(a: &PreGFrobeniusAlgebra) -> std::result::Result<(), (usize, usize, usize)> {
    let g = &a.group;
    let n = a.order();
    let canon = canonical_trace(a);
    for x in 0..n {
        for y in 0..n {
            let c = g.commutator(x, y);
            let xi = g.inv(x);
            let target = g.mul(c, y);
            for i in 0..a.dim(c) {
                let l = a.left_mul(c, &basis(a.dim(c), i), y);
                let rhs = linalg::trace(&linalg::mat_mul(&a.action[xi][target], &l));
                if canon[x * n + y][i] != rhs {
                    return Err((x, y, i));
                }
            }
        }
    }
    Ok(())
}

/// `(1/|G|) Σ_{a,b} τ_{a,b}(1)`
pub fn characteristic(a: &PreGFrobeniusAlgebra) -> Result<Q> {
    let t = a.trace.as_ref().ok_or_else(|| Error::NonProper(a.name.clone()))?;
    let n = a.order();
    let total: Q = a.group.commuting_pairs().map(|(x, y)| dot(&t[x * n + y], &a.unit)).sum();
    Ok(total / Q::from_integer(n.into()))
}

/// The characteristic element `𝛕`, one functional per sector.
pub fn characteristic_element(a: &PreGFrobeniusAlgebra) -> Option<Vec<Vec<Q>>> {
    let t = a.trace.as_ref()?;
    let g = &a.group;
    let n = a.order();
    let mut out: Vec<Vec<Q>> = (0..n).map(|m| vec![Q::zero(); a.dim(m)]).collect();
    let scale = Q::new(1.into(), n.into());
    for x in 0..n {
        for y in 0..n {
            let c = g.commutator(x, y);
            add_into(&mut out[c], &t[x * n + y], &scale);
        }
    }
    Some(out)
}

/// Offsets of each sector inside the total space.
fn offsets(a: &PreGFrobeniusAlgebra) -> Vec<usize> {
    let mut off = Vec::with_capacity(a.order() + 1);
    let mut acc = 0;
    for s in &a.sectors {
        off.push(acc);
        acc += s.dim();
    }
    off.push(acc);
    off
}

/// The coinvariant algebra `Ā = π_G(A)` with product induced from `A`,
/// pairing `η/|G|` and trace the restriction of `𝛕`.
pub fn invariants_algebra(a: &PreGFrobeniusAlgebra) -> Result<PreGFrobeniusAlgebra> {
    a.validate()?;
    let g = &a.group;
    let n = a.order();
    let off = offsets(a);
    let total = off[n];
    // π_G applied to each basis vector, as columns in the total space
    let mut images: Vec<Vec<Q>> = Vec::with_capacity(total);
    let mut tags: Vec<(usize, usize)> = Vec::with_capacity(total);
    let inv_n = Q::new(1.into(), n.into());
    for m in 0..n {
        for i in 0..a.dim(m) {
            let mut col = vec![Q::zero(); total];
            let v = basis(a.dim(m), i);
            for gamma in 0..n {
                let c = g.conjugate(gamma, m);
                let w = a.act(gamma, m, &v);
                add_into(&mut col[off[c]..off[c + 1]], &w, &inv_n);
            }
            images.push(col);
            tags.push((m, i));
        }
    }
    let chosen = linalg::independent_subset(&images);
    let basis_vecs: Vec<Vec<Q>> = chosen.iter().map(|&k| images[k].clone()).collect();
    let labels: Vec<String> = chosen
        .iter()
        .map(|&k| {
            let (m, i) = tags[k];
            format!("avg {}", a.label(m, i))
        })
        .collect();
    let d = basis_vecs.len();
    let basis_matrix = linalg::transpose(&basis_vecs, total);
    let coords = |v: &[Q]| -> Vec<Q> { linalg::solve(&basis_matrix, v).expect("vector lies in the invariant subspace") };
    let total_mul = |v: &[Q], w: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); total];
        for m1 in 0..n {
            let vs = &v[off[m1]..off[m1 + 1]];
            if vs.iter().all(Zero::is_zero) {
                continue;
            }
            for m2 in 0..n {
                let ws = &w[off[m2]..off[m2 + 1]];
                if ws.iter().all(Zero::is_zero) {
                    continue;
                }
                let m = g.mul(m1, m2);
                let p = a.mul(m1, vs, m2, ws);
                add_into(&mut out[off[m]..off[m + 1]], &p, &Q::one());
            }
        }
        out
    };
    let mut product = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            product.push(coords(&total_mul(&basis_vecs[i], &basis_vecs[j])));
        }
    }
    let mut unit_total = vec![Q::zero(); total];
    unit_total[..a.dim(0)].clone_from_slice(&a.unit);
    let unit = coords(&unit_total);
    let pairing = a.pairing.as_ref().map(|_| {
        vec![(0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut s = Q::zero();
                        for m in 0..n {
                            let mi = g.inv(m);
                            let v = &basis_vecs[i][off[m]..off[m + 1]];
                            let w = &basis_vecs[j][off[mi]..off[mi + 1]];
                            s += a.eta(m, v, w).expect("pairing");
                        }
                        s * &inv_n
                    })
                    .collect()
            })
            .collect()]
    });
    let trace = characteristic_element(a).map(|chi| {
        vec![(0..d)
            .map(|i| (0..n).map(|m| dot(&chi[m], &basis_vecs[i][off[m]..off[m + 1]])).sum())
            .collect()]
    });
    let trivial = Arc::new(FiniteGroup::trivial());
    Ok(PreGFrobeniusAlgebra {
        name: format!("{} coinvariants", a.name),
        group: trivial,
        sectors: vec![Sector::new(labels)],
        action: vec![vec![linalg::identity(d)]],
        product: vec![product],
        unit,
        pairing,
        trace,
    })
}

/// Sectorwise tensor product with diagonal action, product, pairing and
/// trace.
pub fn gfa_tensor(a: &PreGFrobeniusAlgebra, b: &PreGFrobeniusAlgebra) -> Result<PreGFrobeniusAlgebra> {
    if *a.group != *b.group {
        return Err(Error::GroupMismatch);
    }
    let n = a.order();
    let kron_vec = |v: &[Q], w: &[Q]| -> Vec<Q> { v.iter().flat_map(|x| w.iter().map(move |y| x * y)).collect() };
    let kron = |x: &Matrix<Q>, y: &Matrix<Q>| -> Matrix<Q> {
        x.iter().flat_map(|rx| y.iter().map(move |ry| kron_vec(rx, ry))).collect()
    };
    let sectors = (0..n)
        .map(|m| {
            let (sa, sb) = (&a.sectors[m], &b.sectors[m]);
            let labels = sa.labels.iter().flat_map(|x| sb.labels.iter().map(move |y| format!("{x}⊗{y}"))).collect();
            let degrees = match (&sa.degrees, &sb.degrees) {
                (Some(da), Some(db)) => Some(da.iter().flat_map(|x| db.iter().map(move |y| x + y)).collect()),
                _ => None,
            };
            Sector { labels, degrees }
        })
        .collect();
    let action = (0..n).map(|gamma| (0..n).map(|m| kron(&a.action[gamma][m], &b.action[gamma][m])).collect()).collect();
    let mut product = Vec::with_capacity(n * n);
    for m1 in 0..n {
        for m2 in 0..n {
            let (da2, db2) = (a.dim(m2), b.dim(m2));
            let mut p = Vec::new();
            for i1 in 0..a.dim(m1) {
                for j1 in 0..b.dim(m1) {
                    for i2 in 0..da2 {
                        for j2 in 0..db2 {
                            p.push(kron_vec(a.basis_product(m1, i1, m2, i2), b.basis_product(m1, j1, m2, j2)));
                        }
                    }
                }
            }
            product.push(p);
        }
    }
    let pairing = match (&a.pairing, &b.pairing) {
        (Some(pa), Some(pb)) => Some((0..n).map(|m| kron(&pa[m], &pb[m])).collect()),
        _ => None,
    };
    let trace = match (&a.trace, &b.trace) {
        (Some(ta), Some(tb)) => Some((0..n * n).map(|k| kron_vec(&ta[k], &tb[k])).collect()),
        _ => None,
    };
    Ok(PreGFrobeniusAlgebra {
        name: format!("{} ⊗ {}", a.name, b.name),
        group: a.group.clone(),
        sectors,
        action,
        product,
        unit: kron_vec(&a.unit, &b.unit),
        pairing,
        trace,
    })
}

/// Which structures a sectorwise linear map `A → B` preserves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub bijective: bool,
    pub product: Option<String>,
    pub unit: bool,
    pub action: Option<String>,
    pub pairing: Option<String>,
    pub trace: Option<String>,
}

impl MorphismReport {
    /// Isomorphism of pre-G-Frobenius algebras.
    pub fn is_isomorphism(&self) -> bool {
        self.is_allometric() && self.pairing.is_none()
    }

    /// Isomorphism of unital G-algebras preserving traces, pairing aside.
    pub fn is_allometric(&self) -> bool {
        self.bijective && self.product.is_none() && self.unit && self.action.is_none() && self.trace.is_none()
    }
}

/// Compares `φ(v ⋆ w)` with `φ(v) ⋆ φ(w)` and so on for basis vectors;
/// each field holds the first witness of failure.
pub fn check_morphism(
    a: &PreGFrobeniusAlgebra,
    b: &PreGFrobeniusAlgebra,
    maps: &[Matrix<Q>],
) -> Result<MorphismReport> {
    if *a.group != *b.group || maps.len() != a.order() {
        return Err(Error::GroupMismatch);
    }
    let g = &a.group;
    let n = a.order();
    for m in 0..n {
        if maps[m].len() != b.dim(m) || maps[m].iter().any(|r| r.len() != a.dim(m)) {
            return Err(Error::InvalidModel(format!("map on sector {} has the wrong shape", g.label(m))));
        }
    }
    let phi = |m: usize, v: &[Q]| linalg::mat_vec(&maps[m], v);
    let bijective = (0..n).all(|m| a.dim(m) == b.dim(m) && linalg::rank(&maps[m]) == a.dim(m));
    let mut product = None;
    'prod: for m1 in 0..n {
        for m2 in 0..n {
            let m = g.mul(m1, m2);
            for i in 0..a.dim(m1) {
                let v = phi(m1, &basis(a.dim(m1), i));
                for j in 0..a.dim(m2) {
                    let w = phi(m2, &basis(a.dim(m2), j));
                    if phi(m, a.basis_product(m1, i, m2, j)) != b.mul(m1, &v, m2, &w) {
                        product = Some(format!("φ({} ⋆ {}) ≠ φ ⋆ φ", a.label(m1, i), a.label(m2, j)));
                        break 'prod;
                    }
                }
            }
        }
    }
    let unit = phi(0, &a.unit) == b.unit;
    let mut action = None;
    'act: for gamma in 0..n {
        for m in 0..n {
            let c = g.conjugate(gamma, m);
            for i in 0..a.dim(m) {
                let v = basis(a.dim(m), i);
                if phi(c, &a.act(gamma, m, &v)) != b.act(gamma, m, &phi(m, &v)) {
                    action = Some(format!("φ ρ({}) ≠ ρ({}) φ on {}", g.label(gamma), g.label(gamma), a.label(m, i)));
                    break 'act;
                }
            }
        }
    }
    let mut pairing = None;
    if let (Some(_), Some(_)) = (&a.pairing, &b.pairing) {
        'pair: for m in 0..n {
            let mi = g.inv(m);
            for i in 0..a.dim(m) {
                let v = basis(a.dim(m), i);
                for j in 0..a.dim(mi) {
                    let w = basis(a.dim(mi), j);
                    let lhs = b.eta(m, &phi(m, &v), &phi(mi, &w)).expect("pairing");
                    let rhs = a.eta(m, &v, &w).expect("pairing");
                    if lhs != rhs {
                        pairing = Some(format!(
                            "η(φ {}, φ {}) = {lhs} but η({}, {}) = {rhs}",
                            a.label(m, i),
                            a.label(mi, j),
                            a.label(m, i),
                            a.label(mi, j)
                        ));
                        break 'pair;
                    }
                }
            }
        }
    } else if a.pairing.is_some() != b.pairing.is_some() {
        pairing = Some("only one side has a pairing".into());
    }
    let mut trace = None;
    if let (Some(_), Some(_)) = (&a.trace, &b.trace) {
        'tr: for x in 0..n {
            for y in 0..n {
                let c = g.commutator(x, y);
                for i in 0..a.dim(c) {
                    let v = basis(a.dim(c), i);
                    if b.tau(x, y, &phi(c, &v)) != a.tau(x, y, &v) {
                        trace = Some(format!("τ({}, {}) differs on {}", g.label(x), g.label(y), a.label(c, i)));
                        break 'tr;
                    }
                }
            }
        }
    } else if a.trace.is_some() != b.trace.is_some() {
        trace = Some("only one side has a trace".into());
    }
    Ok(MorphismReport { bijective, product, unit, action, pairing, trace })
}

/// `Q[G]` with conjugation action and `η(e_m, e_{m⁻¹}) = 1`.
pub fn group_ring(group: Arc<FiniteGroup>) -> PreGFrobeniusAlgebra {
    let n = group.order();
    let one = || vec![vec![Q::one()]];
    PreGFrobeniusAlgebra {
        name: format!("Q[{}]", group.name()),
        sectors: (0..n).map(|_| Sector::graded(vec!["e".into()], vec![Q::zero()])).collect(),
        action: (0..n).map(|_| (0..n).map(|_| one()).collect()).collect(),
        product: (0..n * n).map(|_| vec![vec![Q::one()]]).collect(),
        unit: vec![Q::one()],
        pairing: Some((0..n).map(|_| one()).collect()),
        trace: None,
        group,
    }
    .with_canonical_trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::{q, qf};

    #[test]
    fn group_ring_passes_everything() {
        for g in catalog::groups() {
            let a = group_ring(g.clone());
            let r = check_axioms(&a).unwrap();
            assert!(r.passed(), "{:?}", r.failures());
            assert!(r.results.iter().all(|x| x.status == Status::Pass));
            assert!(familiar_trace_axiom(&a).is_ok());
            assert_eq!(characteristic(&a).unwrap(), q(g.num_classes() as i64));
        }
    }

    #[test]
    fn perturbation_is_caught_with_a_witness() {
        let mut a = group_ring(catalog::s3());
        a.product[6 + 2][0][0] += q(1);
        let r = check_axioms(&a).unwrap();
        let failed: Vec<&str> = r.failures().iter().map(|f| f.axiom).collect();
        assert!(failed.contains(&"associativity") || failed.contains(&"braided_commutativity"));
        assert!(r.failures().iter().all(|f| f.witness.is_some()));
    }

    #[test]
    fn canonical_trace_examples() {
        let t = group_ring(Arc::new(FiniteGroup::trivial()));
        assert_eq!(t.trace.as_ref().unwrap(), &vec![vec![q(1)]]);
        let z2 = group_ring(catalog::cyclic(2));
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(z2.tau(x, y, &[q(1)]).unwrap(), q(1));
            }
        }
    }

    #[test]
    fn invariants_of_group_rings_are_centers() {
        let s3 = group_ring(catalog::s3());
        let c = invariants_algebra(&s3).unwrap();
        assert_eq!(c.total_dim(), 3);
        assert!(check_axioms(&c).unwrap().passed());
        // the induced trace is the canonical one
        let canon = canonical_trace(&c);
        assert_eq!(c.trace.as_ref().unwrap(), &canon);
        let triv = group_ring(Arc::new(FiniteGroup::trivial()));
        let ti = invariants_algebra(&triv).unwrap();
        assert_eq!(ti.product, triv.product);
        assert_eq!(ti.pairing, triv.pairing);
    }

    #[test]
    fn tensor_products() {
        let a = group_ring(catalog::s3());
        let t = gfa_tensor(&a, &a).unwrap();
        for m in 0..6 {
            assert_eq!(t.dim(m), a.dim(m) * a.dim(m));
        }
        assert!(check_axioms(&t).unwrap().passed());
        assert!(gfa_tensor(&a, &group_ring(catalog::cyclic(6))).is_err());
    }

    #[test]
    fn transport_is_an_isomorphism() {
        let a = group_ring(catalog::cyclic(3));
        let maps: Vec<Matrix<Q>> = (0..3).map(|m| vec![vec![qf(m as i64 + 2, 3)]]).collect();
        let b = a.transport("scaled", &maps).unwrap();
        let r = check_morphism(&a, &b, &maps).unwrap();
        assert!(r.is_isomorphism(), "{r:?}");
        let ident: Vec<Matrix<Q>> = (0..3).map(|_| vec![vec![q(1)]]).collect();
        let r = check_morphism(&a, &b, &ident).unwrap();
        assert!(!r.is_allometric());
    }
}
