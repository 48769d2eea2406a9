//! Stringy Chow rings and stringy K-theory of a geometric model, the
//! stringy Chern character between them, and the checks of their
//! structure theorems.

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frobenius::{
    canonical_trace, check_axioms, check_morphism, invariants_algebra, AxiomReport, MorphismReport,
    PreGFrobeniusAlgebra, Sector,
};
use crate::geometry::series::{c_top, lambda_minus1_dual, todd, todd_inverse};
use crate::geometry::{difference, GeometricModel, GradedAlgebra};
use crate::group::TwoCocycle;
use crate::linalg::{self, Matrix};
use crate::report::{format_combination, matrix_json, vec_json};
use crate::torsion::twist;
use crate::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RingKind {
    Chow,
    K,
}

/// A stringy ring together with the model it was built from.
#[derive(Debug, Clone)]
pub struct StringyRing {
    pub kind: RingKind,
    pub algebra: PreGFrobeniusAlgebra,
    /// Model dimension, doubled in the topological grading.
    pub pairing_degree: Q,
}

fn multiplication_matrix(alg: &GradedAlgebra, x: &[Q]) -> Matrix<Q> {
    let cols: Vec<Vec<Q>> = (0..alg.dim()).map(|j| alg.mul(x, &alg.basis(j))).collect();
    linalg::transpose(&cols, alg.dim())
}

fn labels(model: &GeometricModel, m: usize) -> Vec<String> {
    model.sector_algebra(m).labels().to_vec()
}

/// The class the pulled-back product is multiplied by before pushing
/// forward: `c_top(R)` on the Chow side, `Ch(λ_{-1} R*) td(T_ě)` on the
/// K side.
fn product_factor(model: &GeometricModel, kind: RingKind, m1: usize, m2: usize) -> Result<Vec<Q>> {
    let k = model.pair_locus(m1, m2);
    let alg = &model.loci[k].algebra;
    let r = model.obstruction(m1, m2)?;
    let cert = r.certificate.clone().ok_or_else(|| Error::MissingCertificate(r.name.clone()))?;
    match kind {
        RingKind::Chow => c_top(alg, &r.ch, &cert),
        RingKind::K => {
            let m = model.group.mul(m1, m2);
            let target = model.sector_locus(m);
            let pulled = linalg::mat_vec(&model.map(target, k)?.pull, &model.loci[target].tangent);
            let relative = difference(&model.loci[k].tangent, &pulled);
            Ok(alg.mul(&lambda_minus1_dual(alg, &r.ch, &cert)?, &todd(alg, &relative)))
        }
    }
}

fn build(model: &GeometricModel, kind: RingKind) -> Result<StringyRing> {
    let g = &model.group;
    let n = model.order();
    let sectors: Vec<Sector> = (0..n)
        .map(|m| match kind {
            RingKind::Chow => Sector::graded(labels(model, m), model.gradings(m)),
            RingKind::K => Sector::new(labels(model, m)),
        })
        .collect();
    let mut product = Vec::with_capacity(n * n);
    for m1 in 0..n {
        for m2 in 0..n {
            let k = model.pair_locus(m1, m2);
            let alg = &model.loci[k].algebra;
            let (s1, s2, s3) = (model.sector_locus(m1), model.sector_locus(m2), model.sector_locus(g.mul(m1, m2)));
            let (p1, p2, push) = (model.map(s1, k)?.pull, model.map(s2, k)?.pull, model.map(s3, k)?.push);
            let factor = product_factor(model, kind, m1, m2)?;
            let (d1, d2) = (model.loci[s1].algebra.dim(), model.loci[s2].algebra.dim());
            let pulled2: Vec<Vec<Q>> = (0..d2).map(|j| linalg::column(&p2, j)).collect();
            let mut block = Vec::with_capacity(d1 * d2);
            for i in 0..d1 {
                let a = alg.mul(&linalg::column(&p1, i), &factor);
                for b in &pulled2 {
                    block.push(linalg::mat_vec(&push, &alg.mul(&a, b)));
                }
            }
            product.push(block);
        }
    }
    let action = (0..n)
        .map(|gamma| (0..n).map(|m| model.rho(gamma, model.sector_locus(m)).clone()).collect())
        .collect();
    let unit = model.sector_algebra(g.identity()).unit();
    let (pairing, trace) = if model.proper { (Some(pairing(model, kind)?), Some(traces(model, kind)?)) } else { (None, None) };
    let name = match kind {
        RingKind::Chow => format!("stringy Chow ring of {}", model.name),
        RingKind::K => format!("stringy K-theory of {}", model.name),
    };
    let algebra = PreGFrobeniusAlgebra { name, group: g.clone(), sectors, action, product, unit, pairing, trace };
    algebra.validate()?;
    Ok(StringyRing { kind, algebra, pairing_degree: model.pairing_degree() })
}

fn pairing(model: &GeometricModel, kind: RingKind) -> Result<Vec<Matrix<Q>>> {
    (0..model.order())
        .map(|m| {
            // X^m and X^{m⁻¹} are the same locus, so σ acts as the identity
            let l = model.sector_locus(m);
            let alg = &model.loci[l].algebra;
            let weight = match kind {
                RingKind::Chow => alg.unit(),
                RingKind::K => todd(alg, &model.loci[l].tangent),
            };
            (0..alg.dim())
                .map(|i| {
                    let vi = alg.mul(&alg.basis(i), &weight);
                    (0..alg.dim()).map(|j| alg.integrate(&alg.mul(&vi, &alg.basis(j)))).collect()
                })
                .collect()
        })
        .collect()
}

fn traces(model: &GeometricModel, kind: RingKind) -> Result<Vec<Vec<Q>>> {
    let g = &model.group;
    let n = model.order();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let c = g.commutator(a, b);
            let h = model.pair_locus(a, b);
            let alg = &model.loci[h].algebra;
            let e = model.trace_bundle(a, b)?;
            let cert = e.certificate.clone().ok_or_else(|| Error::MissingCertificate(e.name.clone()))?;
            let weight = match kind {
                RingKind::Chow => c_top(alg, &e.ch, &cert)?,
                RingKind::K => alg.mul(&lambda_minus1_dual(alg, &e.ch, &cert)?, &todd(alg, &model.loci[h].tangent)),
            };
            let source = model.sector_locus(c);
            let pull = model.map(source, h)?.pull;
            let functional = (0..model.loci[source].algebra.dim())
                .map(|i| alg.integrate(&alg.mul(&linalg::column(&pull, i), &weight)))
                .collect::<Result<Vec<_>>>()?;
            out.push(functional);
        }
    }
    Ok(out)
}

/// `v ⋆ w = ě_{m3*}(ε*v ∪ ε*w ∪ c_top R)` with the stringy grading.
pub fn build_stringy_chow(model: &GeometricModel) -> Result<StringyRing> {
    build(model, RingKind::Chow)
}

/// Products in Chern-character coordinates, pushed forward through GRR.
pub fn build_stringy_k(model: &GeometricModel) -> Result<StringyRing> {
    build(model, RingKind::K)
}

/// Multiplication by `td^{-1}(S_m)` on each sector.
pub fn cch_maps(model: &GeometricModel) -> Vec<Matrix<Q>> {
    (0..model.order())
        .map(|m| {
            let alg = model.sector_algebra(m);
            multiplication_matrix(alg, &todd_inverse(alg, &model.s_class(m)))
        })
        .collect()
}

/// Outcome of comparing `CCh: K → A` with the two ring structures.
#[derive(Debug, Clone, Serialize)]
pub struct CChReport {
    pub model: String,
    pub homomorphism: bool,
    pub unit: bool,
    pub equivariant: bool,
    pub bijective: bool,
    /// `None` on non-proper models.
    pub traces_preserved: Option<bool>,
    pub pairing_preserved: Option<bool>,
    pub morphism: MorphismReport,
    /// `CCh` of each sector basis vector, written out.
    pub images: Vec<Vec<String>>,
}

impl CChReport {
    /// Unital, equivariant, multiplicative, bijective and trace-preserving.
    pub fn allometric(&self) -> bool {
        self.homomorphism && self.unit && self.equivariant && self.bijective && self.traces_preserved != Some(false)
    }

    /// Allometric but not an isometry.
    pub fn strictly_allometric(&self) -> bool {
        self.allometric() && self.pairing_preserved == Some(false)
    }
}

fn cch_report_for(model: &GeometricModel, k: &StringyRing, chow: &StringyRing, maps: &[Matrix<Q>]) -> Result<CChReport> {
    let morphism = check_morphism(&k.algebra, &chow.algebra, maps)?;
    let images = (0..model.order())
        .map(|m| {
            let alg = model.sector_algebra(m);
            (0..alg.dim()).map(|i| format_combination(alg.labels(), &linalg::column(&maps[m], i))).collect()
        })
        .collect();
    Ok(CChReport {
        model: model.name.clone(),
        homomorphism: morphism.product.is_none(),
        unit: morphism.unit,
        equivariant: morphism.action.is_none(),
        bijective: morphism.bijective,
        traces_preserved: model.proper.then(|| morphism.trace.is_none()),
        pairing_preserved: model.proper.then(|| morphism.pairing.is_none()),
        morphism,
        images,
    })
}

/// Builds both rings and checks that `CCh` is an allometric isomorphism.
pub fn stringy_chern(model: &GeometricModel) -> Result<CChReport> {
    let k = build_stringy_k(model)?;
    let chow = build_stringy_chow(model)?;
    cch_report_for(model, &k, &chow, &cch_maps(model))
}

/// The orbifold ring: `G`-coinvariants with the induced structure.
pub fn take_invariants(ring: &StringyRing) -> Result<PreGFrobeniusAlgebra> {
    invariants_algebra(&ring.algebra)
}

/// First witness of each grading property failing, if any.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GradingReport {
    pub unit_degree: Option<String>,
    pub additive: Option<String>,
    pub pairing: Option<String>,
    pub trace: Option<String>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.unit_degree.is_none() && self.additive.is_none() && self.pairing.is_none() && self.trace.is_none()
    }
}

/// Checks `deg 1 = 0`, additivity, the degree of the pairing and that
/// traces only see degree 0.
pub fn grading_report(ring: &StringyRing) -> Result<GradingReport> {
    let a = &ring.algebra;
    let g = &a.group;
    let n = a.order();
    let degrees: Vec<&Vec<Q>> = a
        .sectors
        .iter()
        .map(|s| s.degrees.as_ref().ok_or_else(|| Error::NotApplicable("ungraded ring".into())))
        .collect::<Result<_>>()?;
    let unit_degree = a
        .unit
        .iter()
        .zip(degrees[g.identity()])
        .find(|(u, d)| !u.is_zero() && !d.is_zero())
        .map(|(_, d)| format!("the unit has a component of degree {d}"));
    let additive = check_axioms(a)?
        .results
        .iter()
        .find(|r| r.axiom == "graded_multiplication")
        .and_then(|r| r.witness.clone());
    let mut pairing = None;
    if let Some(p) = &a.pairing {
        'outer: for m in 0..n {
            let mi = g.inv(m);
            for i in 0..a.dim(m) {
                for j in 0..a.dim(mi) {
                    let sum = &degrees[m][i] + &degrees[mi][j];
                    if !p[m][i][j].is_zero() && sum != ring.pairing_degree {
                        pairing = Some(format!("η({}, {}) ≠ 0 in total degree {sum}", a.label(m, i), a.label(mi, j)));
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut trace = None;
    if let Some(t) = &a.trace {
        'tr: for x in 0..n {
            for y in 0..n {
                let c = g.commutator(x, y);
                for (i, v) in t[x * n + y].iter().enumerate() {
                    if !v.is_zero() && !degrees[c][i].is_zero() {
                        trace = Some(format!("τ({}, {}) sees {} of degree {}", g.label(x), g.label(y), a.label(c, i), degrees[c][i]));
                        break 'tr;
                    }
                }
            }
        }
    }
    Ok(GradingReport { unit_degree, additive, pairing, trace })
}

/// Geometric traces against `tr(L_v ρ(b))`; the first disagreement.
pub fn traces_agree(ring: &StringyRing) -> Option<std::result::Result<(), String>> {
    let t = ring.algebra.trace.as_ref()?;
    let canon = canonical_trace(&ring.algebra);
    let n = ring.algebra.order();
    let g = &ring.algebra.group;
    Some(match (0..n * n).find(|&k| t[k] != canon[k]) {
        None => Ok(()),
        Some(k) => Err(format!(
            "τ({}, {}) = {:?} but the canonical trace is {:?}",
            g.label(k / n),
            g.label(k % n),
            t[k].iter().map(ToString::to_string).collect::<Vec<_>>(),
            canon[k].iter().map(ToString::to_string).collect::<Vec<_>>()
        )),
    })
}

/// Whether the untwisted sector carries the ordinary product of `X`.
pub fn untwisted_is_ordinary(model: &GeometricModel, ring: &StringyRing) -> bool {
    let e = model.group.identity();
    let alg = model.sector_algebra(e);
    (0..alg.dim()).all(|i| (0..alg.dim()).all(|j| ring.algebra.basis_product(e, i, e, j) == alg.basis_product(i, j)))
}

/// Twisted K and Chow rings and the check that `CCh` still intertwines
/// them.
#[derive(Debug, Clone)]
pub struct TwistReport {
    pub chow: PreGFrobeniusAlgebra,
    pub k: PreGFrobeniusAlgebra,
    pub chow_axioms: AxiomReport,
    pub k_axioms: AxiomReport,
    pub cch: MorphismReport,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.chow_axioms.passed() && self.k_axioms.passed() && self.cch.is_allometric()
    }
}

/// Twists both rings of a model by `α` and re-runs the checks.
pub fn apply_twist(model: &GeometricModel, alpha: &TwoCocycle) -> Result<TwistReport> {
    let chow = twist(&build_stringy_chow(model)?.algebra, alpha)?;
    let k = twist(&build_stringy_k(model)?.algebra, alpha)?;
    let cch = check_morphism(&k, &chow, &cch_maps(model))?;
    Ok(TwistReport { chow_axioms: check_axioms(&chow)?, k_axioms: check_axioms(&k)?, chow, k, cch })
}

/// Sectors, gradings, nonzero structure constants, pairing and trace.
pub fn ring_json(a: &PreGFrobeniusAlgebra) -> Value {
    let g = &a.group;
    let n = a.order();
    let sectors: Vec<Value> = (0..n)
        .map(|m| {
            json!({
                "element": g.label(m),
                "basis": a.sectors[m].labels,
                "gradings": a.sectors[m].degrees.as_ref().map(|d| vec_json(d)),
            })
        })
        .collect();
    let mut constants = Vec::new();
    for m1 in 0..n {
        for m2 in 0..n {
            let m = g.mul(m1, m2);
            for i in 0..a.dim(m1) {
                for j in 0..a.dim(m2) {
                    let p = a.basis_product(m1, i, m2, j);
                    if p.iter().any(|x| !x.is_zero()) {
                        constants.push(json!({
                            "left": a.label(m1, i),
                            "right": a.label(m2, j),
                            "sector": g.label(m),
                            "product": format_combination(&a.sectors[m].labels, p),
                            "coefficients": vec_json(p),
                        }));
                    }
                }
            }
        }
    }
    let pairing = a.pairing.as_ref().map(|p| p.iter().map(|x| matrix_json(x)).collect::<Vec<_>>());
    let trace = a.trace.as_ref().map(|t| {
        (0..n * n)
            .map(|k| json!({ "a": g.label(k / n), "b": g.label(k % n), "functional": vec_json(&t[k]) }))
            .collect::<Vec<_>>()
    });
    json!({
        "name": a.name,
        "group": g.name(),
        "sectors": sectors,
        "unit": vec_json(&a.unit),
        "structure_constants": constants,
        "pairing": pairing,
        "trace": trace,
    })
}

/// A plain-text multiplication table.
pub fn ring_table(a: &PreGFrobeniusAlgebra) -> String {
    let g = &a.group;
    let n = a.order();
    let mut out = format!("{}\n", a.name);
    for m in 0..n {
        let degrees = a.sectors[m]
            .degrees
            .as_ref()
            .map(|d| format!("  degrees [{}]", d.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .unwrap_or_default();
        out.push_str(&format!("sector {}: [{}]{degrees}\n", g.label(m), a.sectors[m].labels.join(", ")));
    }
    for m1 in 0..n {
        for m2 in 0..n {
            let m = g.mul(m1, m2);
            for i in 0..a.dim(m1) {
                for j in 0..a.dim(m2) {
                    let p = a.basis_product(m1, i, m2, j);
                    if p.iter().any(|x| !x.is_zero()) {
                        let rhs = format_combination(&a.sectors[m].labels, p);
                        out.push_str(&format!("{} * {} = ({rhs})[{}]\n", a.label(m1, i), a.label(m2, j), g.label(m)));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::frobenius::characteristic;
    use crate::geometry::{gset_model, linear_model, parse_model, point_model};
    use crate::{q, qf};

    const SYM2: &str = include_str!("../../../catalog/sym2_p1.toml");
    const P1Z2: &str = include_str!("../../../catalog/p1_z2.toml");

    #[test]
    fn gset_product_is_pointwise_on_common_fixed_points() {
        let perms = vec![vec![0, 1, 2], vec![1, 0, 2]];
        let m = gset_model("x", catalog::cyclic(2), &perms).unwrap();
        let r = build_stringy_chow(&m).unwrap();
        // p2 is the only point fixed by g
        assert_eq!(r.algebra.basis_product(1, 0, 1, 0), &[q(0), q(0), q(1)]);
        assert_eq!(r.algebra.basis_product(0, 2, 1, 0), &[q(1)]);
        assert_eq!(r.algebra.basis_product(0, 0, 1, 0), &[q(0)]);
        assert!(check_axioms(&r.algebra).unwrap().passed());
        let k = build_stringy_k(&m).unwrap();
        assert_eq!(k.algebra.product, r.algebra.product);
        let cch = stringy_chern(&m).unwrap();
        assert!(cch.allometric());
        assert!(cch_maps(&m).iter().all(|x| *x == linalg::identity::<Q>(x.len())));
    }

    #[test]
    fn klein_linear_model() {
        let m = linear_model(&catalog::klein4_c2()).unwrap();
        let r = build_stringy_chow(&m).unwrap();
        let (a, b, ab) = (1, 2, 3);
        assert_eq!(r.algebra.basis_product(a, 0, b, 0), &[q(1)]);
        assert_eq!(r.algebra.basis_product(a, 0, a, 0), &[q(0)]);
        assert_eq!(r.algebra.basis_product(ab, 0, ab, 0), &[q(0)]);
        assert_eq!(r.algebra.sectors[ab].degrees, Some(vec![q(1)]));
        assert!(grading_report(&r).unwrap().passed());
        assert!(check_axioms(&r.algebra).unwrap().passed());
    }

    #[test]
    fn sym2_products_and_cch() {
        let m = parse_model(SYM2).unwrap();
        let chow = build_stringy_chow(&m).unwrap();
        let k = build_stringy_k(&m).unwrap();
        assert_eq!(chow.algebra.basis_product(1, 0, 1, 0), &[q(0), q(1), q(1), q(0)]);
        assert_eq!(k.algebra.basis_product(1, 0, 1, 0), &[q(0), q(1), q(1), q(-1)]);
        for i in 0..4 {
            let e: Vec<Q> = (0..4).map(|j| if i == j { q(1) } else { q(0) }).collect();
            assert_eq!(chow.algebra.mul(0, &chow.algebra.unit, 0, &e), e);
        }
        assert_eq!(cch_maps(&m)[1], vec![vec![q(1), q(0)], vec![qf(-1, 2), q(1)]]);
        let report = stringy_chern(&m).unwrap();
        assert!(report.strictly_allometric(), "{report:?}");
        assert!(check_axioms(&chow.algebra).unwrap().passed());
        assert!(check_axioms(&k.algebra).unwrap().passed());
        assert_eq!(traces_agree(&chow), Some(Ok(())));
        assert_eq!(traces_agree(&k), Some(Ok(())));
        assert_eq!(characteristic(&chow.algebra).unwrap(), q(5));
        assert!(grading_report(&chow).unwrap().passed());
        assert!(untwisted_is_ordinary(&m, &chow) && untwisted_is_ordinary(&m, &k));
        assert_eq!(take_invariants(&chow).unwrap().total_dim(), 5);
    }

    #[test]
    fn p1_mod_z2() {
        let m = parse_model(P1Z2).unwrap();
        let chow = build_stringy_chow(&m).unwrap();
        assert_eq!(chow.algebra.basis_product(1, 0, 1, 0), &[q(0), q(1)]);
        assert_eq!(chow.algebra.sectors[1].degrees, Some(vec![qf(1, 2), qf(1, 2)]));
        let report = stringy_chern(&m).unwrap();
        assert!(report.strictly_allometric(), "{report:?}");
        assert_eq!(characteristic(&chow.algebra).unwrap(), q(4));
        assert!(grading_report(&chow).unwrap().passed());
    }

    #[test]
    fn sign_twist_on_sym2() {
        let m = parse_model(SYM2).unwrap();
        let alpha = crate::torsion::sign_cocycle_on(catalog::sym(2));
        let untwisted = build_stringy_chow(&m).unwrap();
        let t = apply_twist(&m, &alpha).unwrap();
        assert!(t.passed());
        let neg: Vec<Q> = untwisted.algebra.basis_product(1, 0, 1, 0).iter().map(|x| -x).collect();
        assert_eq!(t.chow.basis_product(1, 0, 1, 0), neg.as_slice());
        assert_eq!(t.chow.basis_product(0, 1, 1, 0), untwisted.algebra.basis_product(0, 1, 1, 0));
    }

    #[test]
    fn point_models() {
        for g in catalog::groups() {
            let m = point_model(g.clone());
            let r = build_stringy_chow(&m).unwrap();
            assert!(check_axioms(&r.algebra).unwrap().passed(), "{}", g.name());
            assert_eq!(characteristic(&r.algebra).unwrap(), q(g.num_classes() as i64));
        }
        let inv = take_invariants(&build_stringy_chow(&point_model(catalog::s3())).unwrap()).unwrap();
        assert_eq!(inv.total_dim(), 3);
    }
}
