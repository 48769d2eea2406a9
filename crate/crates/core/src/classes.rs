//! Ages, the fractional classes `S_m`, the obstruction class `R(m)`, the
//! Eichler trace identity and the four-point and genus-one identities for
//! linear actions.
//!
//! For a linear action on `V` every fixed locus is a linear subspace, so
//! each K-class is recorded by its character under a group that preserves
//! all the subspaces involved: the centralizer of the elements in play.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::character::{
    self, character_table, cyclic_character, cyclic_decompose, is_nonneg_integer, ClassDifference, ClassFunction,
    MatrixRep,
};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{self, Matrix};
use crate::Q;

/// A group acting linearly on `V = C^d`.
#[derive(Debug, Clone)]
pub struct LinearGAction {
    name: String,
    rep: MatrixRep,
}

impl LinearGAction {
    pub fn new(name: &str, rep: MatrixRep) -> Self {
        LinearGAction { name: name.to_string(), rep }
    }

    pub fn from_generators(name: &str, group: Arc<FiniteGroup>, gens: &[(usize, Matrix<Cyclo>)]) -> Result<Self> {
        Ok(Self::new(name, MatrixRep::from_generators(group, gens)?))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.rep.group()
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn rep(&self) -> &MatrixRep {
        &self.rep
    }

    pub fn is_abelian(&self) -> bool {
        self.group().is_abelian()
    }

    /// `dim V^K` for the subgroup generated by `set`.
    pub fn fixed_dim(&self, set: &[usize]) -> usize {
        self.rep.fixed_dim(set)
    }

    fn projector_fixed(&self, k: &Subgroup) -> Matrix<Cyclo> {
        let d = self.dim();
        let mut p: Matrix<Cyclo> = linalg::zeros(d, d);
        for &h in k.members() {
            p = matrix_add(&p, self.rep.matrix(h));
        }
        linalg::scale(&p, &Cyclo::from_q(Q::new(1.into(), k.order().into())))
    }

    /// Projector onto the `ζ_r^k`-eigenspace of `m`.
    fn projector_eigen(&self, m: usize, k: usize) -> Matrix<Cyclo> {
        let g = self.group();
        let r = g.element_order(m);
        let d = self.dim();
        let mut p: Matrix<Cyclo> = linalg::zeros(d, d);
        for j in 0..r {
            let c = Cyclo::root_of_unity(-((k * j) as i64), r as u32);
            p = matrix_add(&p, &linalg::scale(self.rep.matrix(g.pow(m, j as i64)), &c));
        }
        linalg::scale(&p, &Cyclo::from_q(Q::new(1.into(), r.into())))
    }
}

fn matrix_add(a: &Matrix<Cyclo>, b: &Matrix<Cyclo>) -> Matrix<Cyclo> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

/// Eigenspace dimensions of one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenDecomp {
    pub element: usize,
    pub order: usize,
    /// `dims[k]` is the dimension of the `ζ_r^k`-eigenspace.
    pub dims: Vec<usize>,
}

/// Dimensions via ranks of `ρ(m) - ζ_r^k I`.
pub fn eigen_decompose(action: &LinearGAction, m: usize) -> EigenDecomp {
    let g = action.group();
    let r = g.element_order(m);
    let d = action.dim();
    let rho = action.rep.matrix(m);
    let dims = (0..r)
        .map(|k| {
            if d == 0 {
                return 0;
            }
            let z = Cyclo::root_of_unity(k as i64, r as u32);
            let shifted = linalg::sub(rho, &linalg::scale(&linalg::identity(d), &z));
            d - linalg::rank(&shifted)
        })
        .collect();
    EigenDecomp { element: m, order: r, dims }
}

/// A class with rational multiplicities, recorded by its character on
/// a subgroup.
#[derive(Debug, Clone)]
pub struct FractionalClass {
    pub subgroup: Subgroup,
    pub character: ClassFunction,
    pub rank: Q,
}

/// `S_m = ⊕_k (k/r) W_{m,k}` as a character of `⟨m⟩`.
pub fn s_class(action: &LinearGAction, m: usize) -> FractionalClass {
    let g = action.group();
    let e = eigen_decompose(action, m);
    let h = g.subgroup_generated(&[m]);
    let local = h.as_group().clone();
    let gen = h.local_index(m).expect("generator");
    let r = e.order;
    let mut chi = ClassFunction::zero(local.clone());
    let mut rank = Q::zero();
    for (k, &dk) in e.dims.iter().enumerate() {
        let mult = character::frac(k * dk, r);
        rank += &mult;
        let v = cyclic_character(local.clone(), gen, k as i64).expect("cyclic");
        chi = chi.add(&v.scale(&mult)).expect("same group");
    }
    FractionalClass { subgroup: h, character: chi, rank }
}

/// `a(m) = Σ_k (k/r) dim W_{m,k}`
pub fn age(action: &LinearGAction, m: usize) -> Q {
    let e = eigen_decompose(action, m);
    e.dims.iter().enumerate().map(|(k, &dk)| character::frac(k * dk, e.order)).sum()
}

/// `(a(m), a(m⁻¹), codim V^m)`
pub fn age_reflection(action: &LinearGAction, m: usize) -> (Q, Q, usize) {
    let inv = action.group().inv(m);
    (age(action, m), age(action, inv), action.dim() - action.fixed_dim(&[m]))
}

/// Characters of fixed subspaces, eigenspaces and `S_m` restricted to a
/// group `C` that commutes with every element in play.
pub struct Centralized<'a> {
    action: &'a LinearGAction,
    c: Subgroup,
}

impl<'a> Centralized<'a> {
    /// `C = Z_G(set)`
    pub fn new(action: &'a LinearGAction, set: &[usize]) -> Self {
        let c = action.group().centralizer(set);
        Centralized { action, c }
    }

    pub fn group(&self) -> &Subgroup {
        &self.c
    }

    fn trace_with(&self, p: &Matrix<Cyclo>) -> ClassFunction {
        let rep = &self.action.rep;
        ClassFunction::from_fn(self.c.as_group().clone(), |i| {
            let c = self.c.members()[i];
            linalg::trace(&linalg::mat_mul(rep.matrix(c), p))
        })
    }

    pub fn v(&self) -> ClassFunction {
        self.trace_with(&linalg::identity(self.action.dim()))
    }

    /// Character of `V^K`, `K` generated by `set`.
    pub fn fixed(&self, set: &[usize]) -> ClassFunction {
        let k = self.action.group().subgroup_generated(set);
        self.trace_with(&self.action.projector_fixed(&k))
    }

    pub fn eigen(&self, m: usize, k: usize) -> ClassFunction {
        self.trace_with(&self.action.projector_eigen(m, k))
    }

    pub fn s(&self, m: usize) -> ClassFunction {
        let r = self.action.group().element_order(m);
        let mut acc = ClassFunction::zero(self.c.as_group().clone());
        for k in 1..r {
            acc = acc.add(&self.eigen(m, k).scale(&character::frac(k, r))).expect("same group");
        }
        acc
    }

    pub fn zero(&self) -> ClassFunction {
        ClassFunction::zero(self.c.as_group().clone())
    }
}

fn sum(terms: &[(i64, &ClassFunction)]) -> ClassFunction {
    let mut acc = ClassFunction::zero(terms[0].1.group().clone());
    for (c, f) in terms {
        acc = acc.add(&f.scale(&Q::from_integer((*c).into()))).expect("same group");
    }
    acc
}

/// `R(m) = TV^m ⊖ V ⊕ S_{m1} ⊕ S_{m2} ⊕ S_{m3}` on `C`.
fn r_character(ctx: &Centralized, triple: &[usize; 3]) -> ClassFunction {
    let fixed = ctx.fixed(triple);
    let v = ctx.v();
    let s: Vec<ClassFunction> = triple.iter().map(|&m| ctx.s(m)).collect();
    sum(&[(1, &fixed), (-1, &v), (1, &s[0]), (1, &s[1]), (1, &s[2])])
}

/// Multiplicities of the restriction of `R` to a cyclic `⟨m_i⟩ ⊆ C`.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicCheck {
    pub element: usize,
    pub multiplicities: Vec<String>,
    pub nonneg_integer: bool,
}

/// Per-irreducible term `⟨H¹, π*⟩ · ⟨V, π⟩` of `dim (H¹ ⊗ V)^{H'}`.
#[derive(Debug, Clone, Serialize)]
pub struct IrreducibleTerm {
    pub irreducible: String,
    pub h1_multiplicity: String,
    pub v_multiplicity: String,
}

#[derive(Debug, Clone)]
pub struct Obstruction {
    pub triple: [usize; 3],
    /// `H' = ⟨m1, m2, m3⟩`
    pub subgroup: Subgroup,
    /// `C = Z_G(H')`, the group the characters live on.
    pub centralizer: Subgroup,
    pub character: ClassFunction,
    pub rank: Q,
    /// `a(m1) + a(m2) + a(m3) - codim V^{H'}`
    pub expected_rank: Q,
    /// `(1/|H'|) Σ_h χ_{H¹}(h) χ_V(c h)`, from the Eichler character of the
    /// three-pointed cover.
    pub fg_character: ClassFunction,
    pub cyclic_checks: Vec<CyclicCheck>,
    pub irreducible_terms: Option<Vec<IrreducibleTerm>>,
    pub irreducible_terms_ok: bool,
}

impl Obstruction {
    pub fn fg_agrees(&self) -> bool {
        self.character == self.fg_character
    }

    /// Every available certificate of honesty passes.
    pub fn honest(&self) -> bool {
        is_nonneg_integer(&self.rank)
            && self.rank == self.expected_rank
            && self.fg_agrees()
            && self.cyclic_checks.iter().all(|c| c.nonneg_integer)
            && self.irreducible_terms_ok
    }
}

fn check_triple(g: &FiniteGroup, triple: &[usize]) -> Result<()> {
    if triple.iter().any(|&m| m >= g.order()) {
        return Err(Error::InvalidDatum("element index out of range".into()));
    }
    if g.product(triple) != 0 {
        return Err(Error::ProductNotIdentity);
    }
    Ok(())
}

pub fn obstruction_class(action: &LinearGAction, triple: [usize; 3]) -> Result<Obstruction> {
    let g = action.group();
    check_triple(g, &triple)?;
    let ctx = Centralized::new(action, &triple);
    let character = r_character(&ctx, &triple);
    let rank = character.rank().try_rational().expect("rank of a rational class");
    let codim = action.dim() - action.fixed_dim(&triple);
    let expected_rank = triple.iter().map(|&m| age(action, m)).sum::<Q>() - Q::from_integer(codim.into());

    let h = g.subgroup_generated(&triple);
    let local: Vec<usize> = triple.iter().map(|&m| h.local_index(m).expect("member")).collect();
    let datum = MonodromyDatum { genus: 0, branch: local.clone(), handles: Vec::new() };
    let h1 = eichler_h1(&datum, h.as_group())?;
    let c = ctx.group();
    let chi_v = action.rep.character();
    let fg_character = ClassFunction::from_fn(c.as_group().clone(), |i| {
        let ci = c.members()[i];
        let s: Cyclo = h
            .members()
            .iter()
            .enumerate()
            .map(|(li, &hm)| h1.value(li) * chi_v.value(g.mul(ci, hm)))
            .sum();
        s.scale(&Q::new(1.into(), h.order().into()))
    });

    let mut cyclic_checks = Vec::new();
    let mut seen = BTreeSet::new();
    for &m in &triple {
        if !c.contains(m) || !seen.insert(m) {
            continue;
        }
        let cyc = c.as_group().subgroup_generated(&[c.local_index(m).expect("member")]);
        let restricted = character.restrict(&cyc)?;
        let gen = cyc.local_index(c.local_index(m).expect("member")).expect("generator");
        let (multiplicities, ok) = match cyclic_decompose(&restricted, gen) {
            Ok(ms) => {
                let ok = ms.iter().all(is_nonneg_integer);
                (ms.iter().map(|q| q.to_string()).collect(), ok)
            }
            Err(_) => (Vec::new(), false),
        };
        cyclic_checks.push(CyclicCheck { element: m, multiplicities, nonneg_integer: ok });
    }

    let (irreducible_terms, irreducible_terms_ok) = match character_table(h.as_group()) {
        Some(table) => {
            let v_h = chi_v.restrict(&h)?;
            let mut terms = Vec::new();
            let mut total = Cyclo::zero();
            let mut ok = true;
            for (label, pi) in table.labels().iter().zip(table.irreducibles()) {
                let a = h1.inner(&pi.dual())?;
                let b = v_h.inner(pi)?;
                ok &= a.try_rational().is_some_and(|q| is_nonneg_integer(&q));
                ok &= b.try_rational().is_some_and(|q| is_nonneg_integer(&q));
                total = &total + &(&a * &b);
                terms.push(IrreducibleTerm {
                    irreducible: label.clone(),
                    h1_multiplicity: a.to_string(),
                    v_multiplicity: b.to_string(),
                });
            }
            ok &= total == Cyclo::from_q(rank.clone());
            (Some(terms), ok)
        }
        None => (None, true),
    };

    Ok(Obstruction {
        triple,
        subgroup: h,
        centralizer: ctx.c.clone(),
        character,
        rank,
        expected_rank,
        fg_character,
        cyclic_checks,
        irreducible_terms,
        irreducible_terms_ok,
    })
}

/// A simultaneous eigenspace `W_{m,k}`.
#[derive(Debug, Clone)]
pub struct JointEigenline {
    pub ks: [usize; 3],
    pub orders: [usize; 3],
    pub dim: usize,
    /// Character on `Z_G(⟨m⟩)`.
    pub character: ClassFunction,
}

/// The joint eigenspaces with `k1/r1 + k2/r2 + k3/r3 = 2`, ordered
/// lexicographically by `k`.
pub fn chen_hu_obstruction(action: &LinearGAction, triple: [usize; 3]) -> Result<Vec<JointEigenline>> {
    let g = action.group();
    check_triple(g, &triple)?;
    let h = g.subgroup_generated(&triple);
    if !h.as_group().is_abelian() {
        return Err(Error::NotAbelian);
    }
    let table = character_table(h.as_group()).expect("abelian table");
    let ctx = Centralized::new(action, &triple);
    let orders = triple.map(|m| g.element_order(m));
    let mut lines = Vec::new();
    for chi in table.irreducibles() {
        let mut ks = [0usize; 3];
        for (i, &m) in triple.iter().enumerate() {
            let v = chi.value(h.local_index(m).expect("member"));
            ks[i] = (0..orders[i])
                .find(|&k| *v == Cyclo::root_of_unity(k as i64, orders[i] as u32))
                .expect("character value is a root of unity");
        }
        let total: Q = (0..3).map(|i| character::frac(ks[i], orders[i])).sum();
        if total != Q::from_integer(2.into()) {
            continue;
        }
        // projector onto the χ-isotypic part
        let d = action.dim();
        let mut p: Matrix<Cyclo> = linalg::zeros(d, d);
        for (li, &hm) in h.members().iter().enumerate() {
            p = matrix_add(&p, &linalg::scale(action.rep.matrix(hm), &chi.value(li).conj()));
        }
        let p = linalg::scale(&p, &Cyclo::from_q(Q::new(1.into(), h.order().into())));
        let dim = linalg::trace(&p).try_rational().expect("dimension");
        if dim.is_zero() {
            continue;
        }
        let character = ctx.trace_with(&p);
        lines.push(JointEigenline { ks, orders, dim: dim.to_integer().try_into().expect("dimension"), character });
    }
    lines.sort_by_key(|l| l.ks);
    Ok(lines)
}

/// Sum of the characters of a Chen–Hu list, on `Z_G(⟨m⟩)`.
pub fn chen_hu_character(action: &LinearGAction, triple: [usize; 3], lines: &[JointEigenline]) -> ClassFunction {
    let ctx = Centralized::new(action, &triple);
    lines.iter().fold(ctx.zero(), |acc, l| acc.add(&l.character).expect("same group"))
}

/// Outcome of comparing two virtual characters.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub name: String,
    pub tuple: Vec<usize>,
    pub group: Subgroup,
    pub lhs: ClassFunction,
    pub rhs: ClassFunction,
    pub differences: Vec<ClassDifference>,
}

impl IdentityReport {
    fn new(name: &str, tuple: Vec<usize>, group: Subgroup, lhs: ClassFunction, rhs: ClassFunction) -> Self {
        let differences = lhs.differences(&rhs).expect("same group");
        IdentityReport { name: name.into(), tuple, group, lhs, rhs, differences }
    }

    pub fn holds(&self) -> bool {
        self.differences.is_empty()
    }
}

/// Excess class `TZ ⊖ TY1 ⊖ TY2 ⊕ TV` for nested fixed subspaces.
fn excess(ctx: &Centralized, z: &[usize], y1: &[usize], y2: &[usize], v: &[usize]) -> ClassFunction {
    sum(&[(1, &ctx.fixed(z)), (-1, &ctx.fixed(y1)), (-1, &ctx.fixed(y2)), (1, &ctx.fixed(v))])
}

/// Both sides of the four-point relation among obstruction classes, each
/// compared with `TV^m ⊖ V ⊕ Σ S_{m_i}`.
pub fn four_point_identity(action: &LinearGAction, m: [usize; 4]) -> Result<(IdentityReport, IdentityReport)> {
    let g = action.group();
    if m.iter().any(|&x| x >= g.order()) {
        return Err(Error::InvalidDatum("element index out of range".into()));
    }
    if g.product(&m) != 0 {
        return Err(Error::ProductNotIdentity);
    }
    let [m1, m2, m3, m4] = m;
    let ctx = Centralized::new(action, &m);
    let m12 = g.mul(m1, m2);
    let m23 = g.mul(m2, m3);
    let r = |t: [usize; 3]| r_character(&ctx, &t);
    let e12 = excess(&ctx, &[m12], &[m1, m2], &[m12, m3], &m);
    let e23 = excess(&ctx, &[m23], &[m1, m23], &[m2, m3], &m);
    let lhs = sum(&[(1, &r([m1, m2, g.inv(m12)])), (1, &r([m12, m3, m4])), (1, &e12)]);
    let rhs = sum(&[(1, &r([m1, m23, m4])), (1, &r([m2, m3, g.inv(m23)])), (1, &e23)]);
    let s: Vec<ClassFunction> = m.iter().map(|&x| ctx.s(x)).collect();
    let reference = sum(&[(1, &ctx.fixed(&m)), (-1, &ctx.v()), (1, &s[0]), (1, &s[1]), (1, &s[2]), (1, &s[3])]);
    let c = ctx.group().clone();
    Ok((
        IdentityReport::new("four-point left side", m.to_vec(), c.clone(), lhs, reference.clone()),
        IdentityReport::new("four-point right side", m.to_vec(), c, rhs, reference),
    ))
}

/// `R(m') ⊕ E' = TV^H ⊕ S_{[a,b]}` with `m' = ([a,b], bab⁻¹, a⁻¹)`.
pub fn genus_one_identity(action: &LinearGAction, a: usize, b: usize) -> Result<IdentityReport> {
    let g = action.group();
    if a >= g.order() || b >= g.order() {
        return Err(Error::InvalidDatum("element index out of range".into()));
    }
    let ab = g.commutator(a, b);
    let bab = g.conjugate(b, a);
    let ainv = g.inv(a);
    let mp = [ab, bab, ainv];
    let ctx = Centralized::new(action, &[a, b]);
    let r = r_character(&ctx, &mp);
    let e = sum(&[
        (1, &ctx.fixed(&[bab])),
        (1, &ctx.fixed(&[ainv])),
        (-1, &ctx.fixed(&mp)),
        (-1, &ctx.fixed(&[a])),
        (1, &ctx.fixed(&[a, b])),
    ]);
    let lhs = r.add(&e)?;
    let rhs = ctx.fixed(&[a, b]).add(&ctx.s(ab))?;
    Ok(IdentityReport::new("genus one", vec![a, b], ctx.group().clone(), lhs, rhs))
}

/// Branch data of a `G`-cover of a genus-`g` curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonodromyDatum {
    pub genus: usize,
    pub branch: Vec<usize>,
    /// Images `(a_j, b_j)` of the handle generators; may be omitted.
    pub handles: Vec<(usize, usize)>,
}

impl MonodromyDatum {
    pub fn new(genus: usize, branch: Vec<usize>) -> Self {
        MonodromyDatum { genus, branch, handles: Vec::new() }
    }

    pub fn with_handles(genus: usize, branch: Vec<usize>, handles: Vec<(usize, usize)>) -> Self {
        MonodromyDatum { genus, branch, handles }
    }

    /// The image subgroup `H`, after checking `Π m_i = Π [a_j, b_j]`.
    pub fn image(&self, g: &Arc<FiniteGroup>) -> Result<Subgroup> {
        let all = self.branch.iter().chain(self.handles.iter().flat_map(|(a, b)| [a, b]));
        if all.clone().any(|&x| x >= g.order()) {
            return Err(Error::InvalidDatum("element index out of range".into()));
        }
        let prod = g.product(&self.branch);
        if !self.handles.is_empty() {
            if self.handles.len() != self.genus {
                return Err(Error::InvalidDatum(format!(
                    "{} handle pairs for genus {}",
                    self.handles.len(),
                    self.genus
                )));
            }
            let comm = self.handles.iter().fold(0, |acc, &(a, b)| g.mul(acc, g.commutator(a, b)));
            if comm != prod {
                return Err(Error::InvalidDatum("product of monodromies differs from product of commutators".into()));
            }
            let gens: Vec<usize> = all.copied().collect();
            return Ok(g.subgroup_generated(&gens));
        }
        let h = g.subgroup_generated(&self.branch);
        if self.genus == 0 {
            if prod != 0 {
                return Err(Error::InvalidDatum("product of monodromies is not the identity".into()));
            }
            return Ok(h);
        }
        // products of `genus` commutators inside H
        let commutators: BTreeSet<usize> =
            h.members().iter().flat_map(|&a| h.members().iter().map(move |&b| (a, b))).map(|(a, b)| g.commutator(a, b)).collect();
        let mut reachable: BTreeSet<usize> = BTreeSet::from([0]);
        for _ in 0..self.genus {
            reachable = reachable.iter().flat_map(|&x| commutators.iter().map(move |&c| g.mul(x, c))).collect();
        }
        if !reachable.contains(&prod) {
            return Err(Error::InvalidDatum(format!(
                "product of monodromies is not a product of {} commutators in H",
                self.genus
            )));
        }
        Ok(h)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverGenus {
    /// Genus of each connected component of `E`.
    pub genus: usize,
    pub components: usize,
    /// `dim H¹(E, O_E)`, summed over components.
    pub h1: usize,
}

/// Riemann–Hurwitz for the cover defined by `datum`.
pub fn cover_genus(datum: &MonodromyDatum, g: &Arc<FiniteGroup>) -> Result<CoverGenus> {
    let h = datum.image(g)?;
    let alpha = h.index();
    // 2 - 2 g_c = |H| (2 - 2g - Σ (1 - 1/r_i))
    let mut t = Q::from_integer((2 - 2 * datum.genus as i64).into());
    for &m in &datum.branch {
        let r = g.element_order(m);
        t -= Q::one() - Q::new(1.into(), r.into());
    }
    let euler = t * Q::from_integer(h.order().into());
    let two = Q::from_integer(2.into());
    let gc = (&two - &euler) / &two;
    if !gc.is_integer() || gc < Q::zero() {
        return Err(Error::InvalidDatum(format!("Riemann-Hurwitz gives component genus {gc}")));
    }
    let genus: usize = gc.to_integer().try_into().map_err(|_| Error::InvalidDatum("genus overflow".into()))?;
    Ok(CoverGenus { genus, components: alpha, h1: genus * alpha })
}

/// The character of `H¹(E, O_E)` from the Eichler trace formula.
pub fn eichler_h1(datum: &MonodromyDatum, g: &Arc<FiniteGroup>) -> Result<ClassFunction> {
    let h = datum.image(g)?;
    let cover = cover_genus(datum, g)?;
    let cosets = h.left_cosets();
    let order = g.order();
    Ok(ClassFunction::from_fn(g.clone(), |gamma| {
        if gamma == 0 {
            return Cyclo::from_int(cover.h1 as i64);
        }
        let class = g.class_of(gamma);
        let class_size = g.conjugacy_classes()[class].size();
        let fixed_components = cosets.iter().filter(|c| c.binary_search(&g.mul(gamma, c[0])).is_ok()).count();
        let mut value = Cyclo::from_int(fixed_components as i64);
        for &m in &datum.branch {
            let r = g.element_order(m);
            for l in 1..r {
                if g.class_of(g.pow(m, l as i64)) != class {
                    continue;
                }
                // dγ = ζ_i^{-l} with ζ_i = exp(-2πi/r_i)
                let z = Cyclo::root_of_unity(l as i64, r as u32);
                let term = z.div(&(&Cyclo::one() - &z)).expect("nontrivial root");
                value = &value + &term.scale(&Q::new(order.into(), (r * class_size).into()));
            }
        }
        value
    }))
}

/// `C[G/H] ⊕ (g-1) C[G] ⊕ ⊕_i ⊕_k (k/r_i) Ind V_{m_i,k}`, where `m_i`
/// acts on `V_{m_i,k}` by `exp(-2πik/r_i)`.
pub fn rep_magic_rhs(datum: &MonodromyDatum, g: &Arc<FiniteGroup>) -> Result<ClassFunction> {
    let h = datum.image(g)?;
    let mut acc = ClassFunction::trivial(h.as_group().clone()).induce(&h)?;
    let reg = ClassFunction::regular(g.clone());
    acc = acc.add(&reg.scale(&Q::from_integer((datum.genus as i64 - 1).into())))?;
    for &m in &datum.branch {
        let cyc = g.subgroup_generated(&[m]);
        let r = cyc.order();
        let gen = cyc.local_index(m).expect("generator");
        for k in 1..r {
            let v = cyclic_character(cyc.as_group().clone(), gen, -(k as i64))?;
            acc = acc.add(&v.induce(&cyc)?.scale(&character::frac(k, r)))?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::{q, qf};

    fn z3_sl2() -> LinearGAction {
        catalog::cyclic_sl2(3)
    }

    #[test]
    fn eigen_decomposition_examples() {
        let a = z3_sl2();
        assert_eq!(eigen_decompose(&a, 0).dims, vec![2]);
        assert_eq!(eigen_decompose(&a, 1).dims, vec![0, 1, 1]);
        let z4 = catalog::z4_on_c1();
        assert_eq!(eigen_decompose(&z4, 1).dims, vec![0, 1, 0, 0]);
    }

    #[test]
    fn ages_and_s_classes() {
        let a = z3_sl2();
        assert_eq!(age(&a, 0), q(0));
        assert!(s_class(&a, 0).character.is_zero());
        assert_eq!(age(&catalog::z4_on_c1(), 1), qf(1, 4));
        let s = s_class(&a, 1);
        assert_eq!(s.rank, q(1));
        let local = s.subgroup.as_group();
        assert_eq!(cyclic_decompose(&s.character, 1).unwrap(), vec![q(0), qf(1, 3), qf(2, 3)]);
        assert_eq!(local.order(), 3);
    }

    #[test]
    fn age_reflection_examples() {
        let a = z3_sl2();
        assert_eq!(age_reflection(&a, 0), (q(0), q(0), 0));
        assert_eq!(age_reflection(&a, 1), (q(1), q(1), 2));
        let m = catalog::z2_minus_one();
        assert_eq!(age_reflection(&m, 1), (q(1), q(1), 2));
    }

    #[test]
    fn obstruction_examples() {
        let a = z3_sl2();
        let r0 = obstruction_class(&a, [0, 0, 0]).unwrap();
        assert!(r0.character.is_zero() && r0.honest());
        let r = obstruction_class(&a, [1, 1, 1]).unwrap();
        assert_eq!(r.rank, q(1));
        assert!(r.honest());
        // the ω²-eigenline
        assert_eq!(r.character.value(1), &Cyclo::root_of_unity(2, 3));
        let k = catalog::klein4_c2();
        let rk = obstruction_class(&k, [1, 2, 3]).unwrap();
        assert!(rk.character.is_zero() && rk.honest());
        assert_eq!(obstruction_class(&a, [1, 1, 0]).unwrap_err(), Error::ProductNotIdentity);
    }

    #[test]
    fn chen_hu_examples() {
        let a = z3_sl2();
        assert!(chen_hu_obstruction(&a, [0, 0, 0]).unwrap().is_empty());
        let lines = chen_hu_obstruction(&a, [1, 1, 1]).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].ks, [2, 2, 2]);
        let k = catalog::klein4_c2();
        assert!(chen_hu_obstruction(&k, [1, 2, 3]).unwrap().is_empty());
        let r = obstruction_class(&a, [1, 1, 1]).unwrap();
        assert_eq!(chen_hu_character(&a, [1, 1, 1], &lines), r.character);
    }

    #[test]
    fn cover_genus_examples() {
        let z2 = catalog::cyclic(2);
        let c = cover_genus(&MonodromyDatum::new(0, vec![1, 1]), &z2).unwrap();
        assert_eq!((c.genus, c.components), (0, 1));
        let z3 = catalog::cyclic(3);
        let c = cover_genus(&MonodromyDatum::new(0, vec![1, 1, 1]), &z3).unwrap();
        assert_eq!((c.genus, c.components), (1, 1));
        let c = cover_genus(&MonodromyDatum::new(0, vec![]), &z2).unwrap();
        assert_eq!((c.genus, c.components), (0, 2));
        assert!(cover_genus(&MonodromyDatum::new(0, vec![1]), &z2).is_err());
    }

    #[test]
    fn eichler_examples() {
        let z2 = catalog::cyclic(2);
        let d = MonodromyDatum::new(0, vec![1, 1]);
        assert!(eichler_h1(&d, &z2).unwrap().is_zero());
        assert!(rep_magic_rhs(&d, &z2).unwrap().is_zero());
        let z3 = catalog::cyclic(3);
        let d = MonodromyDatum::new(0, vec![1, 1, 1]);
        let chi1 = cyclic_character(z3.clone(), 1, 1).unwrap();
        assert_eq!(eichler_h1(&d, &z3).unwrap(), chi1);
        assert_eq!(rep_magic_rhs(&d, &z3).unwrap(), chi1);
        // unramified with H = G needs commuting handles
        let k4 = catalog::klein4();
        let d = MonodromyDatum::with_handles(1, vec![], vec![(1, 2)]);
        assert_eq!(d.image(&k4).unwrap().order(), 4);
        assert_eq!(eichler_h1(&d, &k4).unwrap(), ClassFunction::trivial(k4.clone()));
        assert_eq!(rep_magic_rhs(&d, &k4).unwrap(), ClassFunction::trivial(k4));
        let s3 = catalog::s3();
        let bad = MonodromyDatum::with_handles(1, vec![], vec![(1, 2)]);
        assert!(s3.commutator(1, 2) == 0 || bad.image(&s3).is_err());
        let d = MonodromyDatum::new(1, vec![]);
        assert_eq!(rep_magic_rhs(&d, &s3).unwrap(), ClassFunction::regular(s3.clone()));
        assert_eq!(eichler_h1(&d, &s3).unwrap(), ClassFunction::regular(s3));
    }

    #[test]
    fn structural_identity_examples() {
        let a = z3_sl2();
        let (l, r) = four_point_identity(&a, [0, 0, 0, 0]).unwrap();
        assert!(l.holds() && r.holds() && l.lhs.is_zero());
        let (l, r) = four_point_identity(&a, [1, 1, 2, 2]).unwrap();
        assert!(l.holds() && r.holds());
        let k = catalog::klein4_c2();
        let (l, r) = four_point_identity(&k, [1, 2, 1, 2]).unwrap();
        assert!(l.holds() && r.holds());
        let g1 = genus_one_identity(&a, 0, 0).unwrap();
        assert!(g1.holds());
        assert_eq!(g1.lhs.rank(), &Cyclo::from_int(2));
        let s3 = catalog::s3_standard();
        let g = s3.group();
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let c = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        assert!(genus_one_identity(&s3, t, c).unwrap().holds());
    }

    #[test]
    fn eichler_identity_on_small_groups() {
        for g in [catalog::cyclic(4), catalog::klein4(), catalog::s3(), catalog::q8()] {
            let n = g.order();
            for a in 0..n {
                for b in 0..n {
                    let c = g.inv(g.mul(a, b));
                    let d = MonodromyDatum::new(0, vec![a, b, c]);
                    assert_eq!(eichler_h1(&d, &g).unwrap(), rep_magic_rhs(&d, &g).unwrap(), "{} {:?}", g.name(), d);
                }
            }
        }
    }

    #[test]
    fn obstruction_honest_on_catalog_actions() {
        for a in catalog::actions() {
            let g = a.group().clone();
            for x in g.elements() {
                for y in g.elements() {
                    let t = [x, y, g.inv(g.mul(x, y))];
                    let r = obstruction_class(&a, t).unwrap();
                    assert!(r.honest(), "{} {:?} {:?}", a.name(), t, r);
                }
            }
        }
    }
}
