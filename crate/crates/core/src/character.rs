//! Matrix representations, class functions and character tables.

use std::collections::VecDeque;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{self, Matrix};
use crate::Q;

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A linear representation given by one matrix per group element.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    mats: Vec<Matrix<Cyclo>>,
}

impl MatrixRep {
    /// Extends generator images to the whole group, checking that every
    /// relation is respected.
    pub fn from_generators(group: Arc<FiniteGroup>, gens: &[(usize, Matrix<Cyclo>)]) -> Result<Self> {
        let dim = gens.first().map_or(0, |(_, m)| m.len());
        for (g, m) in gens {
            if *g >= group.order() {
                return Err(Error::InvalidRep(format!("generator index {g} out of range")));
            }
            if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                return Err(Error::InvalidRep(format!("matrix for {} is not {dim}x{dim}", group.label(*g))));
            }
        }
        let n = group.order();
        let mut mats: Vec<Option<Matrix<Cyclo>>> = vec![None; n];
        mats[0] = Some(linalg::identity(dim));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mx = mats[x].clone().expect("visited");
            for (s, ms) in gens {
                let y = group.mul(x, *s);
                let my = linalg::mat_mul(&mx, ms);
                match &mats[y] {
                    Some(existing) if *existing != my => {
                        return Err(Error::InvalidRep(format!(
                            "matrices do not define a homomorphism (conflict at {})",
                            group.label(y)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        mats[y] = Some(my);
                        queue.push_back(y);
                    }
                }
            }
        }
        let mats: Option<Vec<_>> = mats.into_iter().collect();
        let mats = mats.ok_or_else(|| Error::InvalidRep("generators do not generate the group".into()))?;
        Ok(MatrixRep { group, dim, mats })
    }

    pub fn trivial(group: Arc<FiniteGroup>, dim: usize) -> Self {
        let mats = vec![linalg::identity(dim); group.order()];
        MatrixRep { group, dim, mats }
    }

    /// Permutation matrices of a permutation group (`e_x ↦ e_{g(x)}`).
    pub fn permutation(group: Arc<FiniteGroup>) -> Result<Self> {
        let degree = group.degree().ok_or_else(|| Error::InvalidRep("not a permutation group".into()))?;
        let mats = group
            .elements()
            .map(|g| {
                let p = group.permutation(g).expect("permutation group");
                let mut m: Matrix<Cyclo> = linalg::zeros(degree, degree);
                for x in 0..degree {
                    m[p[x] as usize][x] = Cyclo::one();
                }
                m
            })
            .collect();
        Ok(MatrixRep { group, dim: degree, mats })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &Matrix<Cyclo> {
        &self.mats[g]
    }

    pub fn character(&self) -> ClassFunction {
        ClassFunction::from_fn(self.group.clone(), |g| linalg::trace(&self.mats[g]))
    }

    pub fn restrict(&self, sub: &Subgroup) -> MatrixRep {
        MatrixRep {
            group: sub.as_group().clone(),
            dim: self.dim,
            mats: sub.members().iter().map(|&g| self.mats[g].clone()).collect(),
        }
    }

    /// Dimension of the subspace fixed by every element of `sub`.
    pub fn fixed_dim(&self, set: &[usize]) -> usize {
        if self.dim == 0 {
            return 0;
        }
        let mut stacked: Matrix<Cyclo> = Vec::new();
        for &g in set {
            stacked.extend(linalg::sub(&self.mats[g], &linalg::identity(self.dim)));
        }
        if stacked.is_empty() {
            return self.dim;
        }
        self.dim - linalg::rank(&stacked)
    }
}

/// A class function with cyclotomic values, one per conjugacy class.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclo>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

/// One class where two class functions differ.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassDifference {
    pub class: usize,
    pub representative: String,
    pub left: Cyclo,
    pub right: Cyclo,
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclo>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(Error::InvalidRep(format!(
                "{} values for {} conjugacy classes",
                values.len(),
                group.num_classes()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    /// Evaluates `f` at each class representative.
    pub fn from_fn(group: Arc<FiniteGroup>, f: impl Fn(usize) -> Cyclo) -> Self {
        let values = group.conjugacy_classes().iter().map(|c| f(c.representative)).collect();
        ClassFunction { group, values }
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.num_classes();
        ClassFunction { group, values: vec![Cyclo::zero(); n] }
    }

    pub fn constant(group: Arc<FiniteGroup>, c: Cyclo) -> Self {
        let n = group.num_classes();
        ClassFunction { group, values: vec![c; n] }
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        Self::constant(group, Cyclo::one())
    }

    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order() as i64;
        Self::from_fn(group, |g| if g == 0 { Cyclo::from_int(n) } else { Cyclo::zero() })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn value(&self, g: usize) -> &Cyclo {
        &self.values[self.group.class_of(g)]
    }

    /// Value at the identity.
    pub fn rank(&self) -> &Cyclo {
        &self.values[self.group.class_of(0)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyclo, &Cyclo) -> Cyclo) -> Result<Self> {
        self.check(other)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, s: &Q) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.scale(s)).collect() }
    }

    pub fn dual(&self) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.conj()).collect() }
    }

    /// Restriction to a subgroup, as a class function on `sub.as_group()`.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Self> {
        if !same_group(&self.group, sub.parent()) {
            return Err(Error::GroupMismatch);
        }
        let local = sub.as_group().clone();
        Ok(ClassFunction::from_fn(local, |h| self.value(sub.members()[h]).clone()))
    }

    /// Induction from `sub` via
    /// `χ↑(γ) = (|G|/|H|) Σ_{σ ∈ H ∩ [[γ]]} χ(σ) / |[[γ]]|`.
    pub fn induce(&self, sub: &Subgroup) -> Result<Self> {
        if !same_group(&self.group, sub.as_group()) {
            return Err(Error::GroupMismatch);
        }
        let g = sub.parent().clone();
        let values = g
            .conjugacy_classes()
            .iter()
            .map(|class| {
                let sum: Cyclo = class
                    .members
                    .iter()
                    .filter_map(|&s| sub.local_index(s).map(|i| self.value(i).clone()))
                    .sum();
                sum.scale(&Q::new((g.order()).into(), (sub.order() * class.size()).into()))
            })
            .collect();
        Ok(ClassFunction { group: g, values })
    }

    /// `(1/|G|) Σ_g χ(g) conj(ψ(g))`
    pub fn inner(&self, other: &Self) -> Result<Cyclo> {
        self.check(other)?;
        let g = &self.group;
        let sum: Cyclo = g
            .conjugacy_classes()
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(c, (a, b))| (a * &b.conj()).scale(&Q::from_integer(c.size().into())))
            .sum();
        Ok(sum.scale(&Q::new(1.into(), g.order().into())))
    }

    /// Classes where `self` and `other` differ.
    pub fn differences(&self, other: &Self) -> Result<Vec<ClassDifference>> {
        self.check(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, (a, b))| ClassDifference {
                class: i,
                representative: self.group.label(self.group.conjugacy_classes()[i].representative).to_string(),
                left: a.clone(),
                right: b.clone(),
            })
            .collect())
    }
}

/// Fourier multiplicities `m_k = (1/r) Σ_j χ(m^j) ζ_r^{-kj}` of a class
/// function on the cyclic group generated by `generator`.
pub fn cyclic_decompose(chi: &ClassFunction, generator: usize) -> Result<Vec<Q>> {
    let g = chi.group();
    let r = g.element_order(generator);
    if r != g.order() {
        return Err(Error::NotCyclic);
    }
    (0..r)
        .map(|k| {
            let sum: Cyclo = (0..r)
                .map(|j| chi.value(g.pow(generator, j as i64)) * &Cyclo::root_of_unity(-((k * j) as i64), r as u32))
                .sum();
            sum.scale(&Q::new(1.into(), r.into()))
                .try_rational()
                .ok_or_else(|| Error::NotApplicable(format!("multiplicity of ζ^{k} is not rational")))
        })
        .collect()
}

/// The character of `⟨m⟩` with `m^j ↦ ζ_r^{kj}`.
pub fn cyclic_character(group: Arc<FiniteGroup>, generator: usize, k: i64) -> Result<ClassFunction> {
    let r = group.element_order(generator);
    if r != group.order() {
        return Err(Error::NotCyclic);
    }
    let mut values = vec![Cyclo::zero(); group.num_classes()];
    for j in 0..r {
        values[group.class_of(group.pow(generator, j as i64))] = Cyclo::root_of_unity(k * j as i64, r as u32);
    }
    ClassFunction::new(group, values)
}

/// Result of decomposing a virtual character against a table.
#[derive(Debug, Clone, PartialEq)]
pub struct Positivity {
    pub nonneg_integer: bool,
    pub multiplicities: Vec<Cyclo>,
}

/// Checks whether every `⟨χ, χ_i⟩` is a nonnegative integer.
pub fn nonneg_integer_multiplicities(chi: &ClassFunction, irreducibles: &[ClassFunction]) -> Result<Positivity> {
    let g = chi.group();
    let mut sum_sq = Q::zero();
    for irr in irreducibles {
        if !same_group(g, irr.group()) {
            return Err(Error::GroupMismatch);
        }
        let d = irr.rank().try_rational().ok_or_else(|| Error::IncompleteTable("non-rational degree".into()))?;
        sum_sq += &d * &d;
    }
    if sum_sq != Q::from_integer(g.order().into()) {
        return Err(Error::IncompleteTable(format!("sum of squared degrees is {sum_sq}, group order {}", g.order())));
    }
    let multiplicities: Vec<Cyclo> = irreducibles.iter().map(|irr| chi.inner(irr)).collect::<Result<_>>()?;
    let nonneg_integer = multiplicities
        .iter()
        .all(|m| m.try_rational().is_some_and(|q| q.is_integer() && !q.is_negative()));
    Ok(Positivity { nonneg_integer, multiplicities })
}

/// A complete list of irreducible characters.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    labels: Vec<String>,
    irreducibles: Vec<ClassFunction>,
}

impl CharacterTable {
    /// Accepts a table only if it is orthonormal and complete.
    pub fn new(group: Arc<FiniteGroup>, labels: Vec<String>, irreducibles: Vec<ClassFunction>) -> Result<Self> {
        if irreducibles.len() != group.num_classes() {
            return Err(Error::IncompleteTable(format!(
                "{} characters for {} classes",
                irreducibles.len(),
                group.num_classes()
            )));
        }
        for (i, a) in irreducibles.iter().enumerate() {
            for (j, b) in irreducibles.iter().enumerate() {
                let expected = if i == j { Cyclo::one() } else { Cyclo::zero() };
                if a.inner(b)? != expected {
                    return Err(Error::IncompleteTable(format!("characters {i} and {j} are not orthonormal")));
                }
            }
        }
        nonneg_integer_multiplicities(&ClassFunction::zero(group.clone()), &irreducibles)?;
        Ok(CharacterTable { group, labels, irreducibles })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn decompose(&self, chi: &ClassFunction) -> Result<Positivity> {
        nonneg_integer_multiplicities(chi, &self.irreducibles)
    }
}

/// The character table of `g`: generated for abelian groups, looked up
/// for the nonabelian groups of the built-in catalog.
pub fn character_table(g: &Arc<FiniteGroup>) -> Option<CharacterTable> {
    if g.is_abelian() {
        abelian_table(g)
    } else {
        builtin_table(g)
    }
}

/// Greedy generating set: repeatedly adjoin an element of largest order
/// outside the subgroup generated so far.
pub fn greedy_generators(g: &Arc<FiniteGroup>) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut inside = g.subgroup_generated(&gens);
    while inside.order() < g.order() {
        let next = g
            .elements()
            .filter(|&x| !inside.contains(x))
            .max_by_key(|&x| (g.element_order(x), std::cmp::Reverse(x)))
            .expect("proper subgroup");
        gens.push(next);
        inside = g.subgroup_generated(&gens);
    }
    gens
}

fn abelian_table(g: &Arc<FiniteGroup>) -> Option<CharacterTable> {
    let gens = greedy_generators(g);
    let exponent = g.elements().map(|x| g.element_order(x)).fold(1, num_integer::lcm);
    let orders: Vec<usize> = gens.iter().map(|&s| g.element_order(s)).collect();
    let mut irreducibles = Vec::new();
    let mut labels = Vec::new();
    let mut ks = vec![0usize; gens.len()];
    loop {
        // χ(s_i) = ζ_{r_i}^{k_i}, written as an exponent of ζ_exponent
        let step: Vec<usize> = ks.iter().zip(&orders).map(|(k, r)| k * (exponent / r)).collect();
        if let Some(exps) = extend_exponents(g, &gens, &step, exponent) {
            let values = g
                .conjugacy_classes()
                .iter()
                .map(|c| Cyclo::root_of_unity(exps[c.representative] as i64, exponent as u32))
                .collect();
            irreducibles.push(ClassFunction { group: g.clone(), values });
            labels.push(format!("chi{ks:?}"));
        }
        // lexicographic successor of ks
        let mut i = ks.len();
        loop {
            if i == 0 {
                return CharacterTable::new(g.clone(), labels, irreducibles).ok();
            }
            i -= 1;
            ks[i] += 1;
            if ks[i] < orders[i] {
                break;
            }
            ks[i] = 0;
        }
    }
}

fn extend_exponents(g: &FiniteGroup, gens: &[usize], step: &[usize], exponent: usize) -> Option<Vec<usize>> {
    let mut exps = vec![usize::MAX; g.order()];
    exps[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, &e) in gens.iter().zip(step) {
            let y = g.mul(x, s);
            let v = (exps[x] + e) % exponent;
            if exps[y] == usize::MAX {
                exps[y] = v;
                queue.push_back(y);
            } else if exps[y] != v {
                return None;
            }
        }
    }
    Some(exps)
}

struct BuiltinTable {
    name: &'static str,
    order: usize,
    /// (element order, class size) in canonical class order
    signature: &'static [(usize, usize)],
    rows: &'static [(&'static str, &'static [&'static str])],
}

const BUILTIN: &[BuiltinTable] = &[
    BuiltinTable {
        name: "S3",
        order: 6,
        signature: &[(1, 1), (2, 3), (3, 2)],
        rows: &[("trivial", &["1", "1", "1"]), ("sign", &["1", "-1", "1"]), ("standard", &["2", "0", "-1"])],
    },
    BuiltinTable {
        name: "D4",
        order: 8,
        signature: &[(1, 1), (2, 1), (2, 2), (2, 2), (4, 2)],
        rows: &[
            ("trivial", &["1", "1", "1", "1", "1"]),
            ("rotation", &["1", "1", "-1", "-1", "1"]),
            ("reflection-a", &["1", "1", "1", "-1", "-1"]),
            ("reflection-b", &["1", "1", "-1", "1", "-1"]),
            ("standard", &["2", "-2", "0", "0", "0"]),
        ],
    },
    BuiltinTable {
        name: "Q8",
        order: 8,
        signature: &[(1, 1), (2, 1), (4, 2), (4, 2), (4, 2)],
        rows: &[
            ("trivial", &["1", "1", "1", "1", "1"]),
            ("i", &["1", "1", "1", "-1", "-1"]),
            ("j", &["1", "1", "-1", "1", "-1"]),
            ("k", &["1", "1", "-1", "-1", "1"]),
            ("spin", &["2", "-2", "0", "0", "0"]),
        ],
    },
    BuiltinTable {
        name: "A4",
        order: 12,
        signature: &[(1, 1), (2, 3), (3, 4), (3, 4)],
        rows: &[
            ("trivial", &["1", "1", "1", "1"]),
            ("omega", &["1", "1", "z(3)", "z(3)^2"]),
            ("omega2", &["1", "1", "z(3)^2", "z(3)"]),
            ("standard", &["3", "-1", "0", "0"]),
        ],
    },
    BuiltinTable {
        name: "S4",
        order: 24,
        signature: &[(1, 1), (2, 3), (2, 6), (3, 8), (4, 6)],
        rows: &[
            ("trivial", &["1", "1", "1", "1", "1"]),
            ("sign", &["1", "1", "-1", "1", "-1"]),
            ("standard", &["3", "-1", "1", "0", "-1"]),
            ("standard-sign", &["3", "-1", "-1", "0", "1"]),
            ("two", &["2", "2", "0", "-1", "0"]),
        ],
    },
];

/// Class indices sorted by (element order, class size, representative).
pub fn canonical_class_order(g: &FiniteGroup) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..g.num_classes()).collect();
    idx.sort_by_key(|&i| {
        let c = &g.conjugacy_classes()[i];
        (g.element_order(c.representative), c.size(), c.representative)
    });
    idx
}

fn builtin_table(g: &Arc<FiniteGroup>) -> Option<CharacterTable> {
    let order = canonical_class_order(g);
    let signature: Vec<(usize, usize)> = order
        .iter()
        .map(|&i| {
            let c = &g.conjugacy_classes()[i];
            (g.element_order(c.representative), c.size())
        })
        .collect();
    let entry = BUILTIN.iter().find(|t| t.order == g.order() && t.signature == signature.as_slice())?;
    let mut irreducibles = Vec::new();
    let mut labels = Vec::new();
    for (label, row) in entry.rows {
        let mut values = vec![Cyclo::zero(); g.num_classes()];
        for (pos, &class) in order.iter().enumerate() {
            values[class] = Cyclo::parse(row[pos]).expect("built-in table literal");
        }
        irreducibles.push(ClassFunction { group: g.clone(), values });
        labels.push(format!("{}:{label}", entry.name));
    }
    CharacterTable::new(g.clone(), labels, irreducibles).ok()
}

/// Rational multiplicity `k`, as used for `Σ (k/r) V_k`.
pub(crate) fn frac(k: usize, r: usize) -> Q {
    Q::new(k.into(), r.into())
}

pub(crate) fn is_nonneg_integer(q: &Q) -> bool {
    q.is_integer() && !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::q;

    fn values(chi: &ClassFunction) -> Vec<Cyclo> {
        // values in canonical class order
        canonical_class_order(chi.group()).iter().map(|&i| chi.values()[i].clone()).collect()
    }

    fn ints(v: &[i64]) -> Vec<Cyclo> {
        v.iter().map(|&x| Cyclo::from_int(x)).collect()
    }

    #[test]
    fn characters_of_s3_representations() {
        let g = catalog::s3();
        let triv = MatrixRep::trivial(g.clone(), 1).character();
        assert_eq!(values(&triv), ints(&[1, 1, 1]));
        let perm = MatrixRep::permutation(g.clone()).unwrap().character();
        let standard = perm.sub(&triv).unwrap();
        assert_eq!(values(&standard), ints(&[2, 0, -1]));
        let z3 = catalog::cyclic(3);
        assert_eq!(values(&ClassFunction::regular(z3)), ints(&[3, 0, 0]));
    }

    #[test]
    fn induction_examples() {
        let g = catalog::s3();
        let triv_e = ClassFunction::trivial(g.subgroup_generated(&[]).as_group().clone());
        assert_eq!(triv_e.induce(&g.subgroup_generated(&[])).unwrap(), ClassFunction::regular(g.clone()));
        let c = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        let h = g.subgroup_generated(&[c]);
        let gen_local = h.local_index(c).unwrap();
        let chi = cyclic_character(h.as_group().clone(), gen_local, 1).unwrap();
        assert_eq!(values(&chi.induce(&h).unwrap()), ints(&[2, 0, -1]));
        let whole = g.whole();
        let std = ClassFunction::new(whole.as_group().clone(), values_for(&whole)).unwrap();
        assert_eq!(std.induce(&whole).unwrap().values(), std.values());
    }

    fn values_for(h: &Subgroup) -> Vec<Cyclo> {
        (0..h.as_group().num_classes()).map(|i| Cyclo::from_int(i as i64 + 2)).collect()
    }

    #[test]
    fn algebra_operations() {
        let z3 = catalog::cyclic(3);
        let w = cyclic_character(z3.clone(), 1, 1).unwrap();
        assert!(w.sub(&w).unwrap().is_zero());
        assert_eq!(w.dual(), cyclic_character(z3.clone(), 1, 2).unwrap());
        let reg = ClassFunction::regular(z3.clone());
        let chi = w.add(&ClassFunction::trivial(z3)).unwrap();
        assert_eq!(reg.tensor(&chi).unwrap(), reg.scale(&q(2)));
    }

    #[test]
    fn cyclic_decomposition_examples() {
        let z2 = catalog::cyclic(2);
        assert_eq!(cyclic_decompose(&ClassFunction::trivial(z2), 1).unwrap(), vec![q(1), q(0)]);
        let z3 = catalog::cyclic(3);
        assert_eq!(cyclic_decompose(&ClassFunction::regular(z3), 1).unwrap(), vec![q(1); 3]);
        let z4 = catalog::cyclic(4);
        let i = Cyclo::root_of_unity(1, 4);
        let rep = MatrixRep::from_generators(z4, &[(1, vec![vec![i.clone(), Cyclo::zero()], vec![Cyclo::zero(), i.conj()]])])
            .unwrap();
        assert_eq!(cyclic_decompose(&rep.character(), 1).unwrap(), vec![q(0), q(1), q(0), q(1)]);
    }

    #[test]
    fn positivity_examples() {
        let g = catalog::s3();
        let table = character_table(&g).unwrap();
        let p = table.decompose(&ClassFunction::zero(g.clone())).unwrap();
        assert!(p.nonneg_integer && p.multiplicities.iter().all(|m| m.is_zero()));
        let reg = table.decompose(&ClassFunction::regular(g.clone())).unwrap();
        assert!(reg.nonneg_integer);
        let mut m: Vec<Cyclo> = reg.multiplicities.clone();
        m.sort_by_key(|c| c.try_rational().unwrap());
        assert_eq!(m, ints(&[1, 1, 2]));
        let s2 = catalog::cyclic(2);
        let t = character_table(&s2).unwrap();
        let diff = ClassFunction::trivial(s2.clone()).sub(&cyclic_character(s2, 1, 1).unwrap()).unwrap();
        assert!(!t.decompose(&diff).unwrap().nonneg_integer);
        assert!(matches!(
            nonneg_integer_multiplicities(&diff, &t.irreducibles()[..1]),
            Err(Error::IncompleteTable(_))
        ));
    }

    #[test]
    fn tables_exist_for_catalog_and_subgroups() {
        for g in catalog::groups() {
            let t = character_table(&g).unwrap_or_else(|| panic!("no table for {}", g.name()));
            assert_eq!(t.irreducibles().len(), g.num_classes());
        }
        let s4 = catalog::s4();
        let a4: Vec<usize> = s4.elements().filter(|&x| s4.permutation(x).map(|p| crate::group::cycle_count(p).is_multiple_of(2)).unwrap()).collect();
        let sub = s4.subgroup_generated(&a4);
        assert_eq!(sub.order(), 12);
        assert!(character_table(sub.as_group()).is_some());
    }

    #[test]
    fn frobenius_reciprocity_and_rank() {
        let g = catalog::s4();
        let table = character_table(&g).unwrap();
        for gens in [vec![], vec![1], vec![1, 2], vec![3, 7]] {
            let h = g.subgroup_generated(&gens);
            let ht = character_table(h.as_group()).unwrap();
            for chi in ht.irreducibles() {
                let up = chi.induce(&h).unwrap();
                assert_eq!(up.rank(), &chi.rank().scale(&q(h.index() as i64)));
                for psi in table.irreducibles() {
                    assert_eq!(up.inner(psi).unwrap(), chi.inner(&psi.restrict(&h).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn cyclic_reassembly() {
        for r in 1..=12u32 {
            let g = catalog::cyclic(r as usize);
            // Galois-stable: depends only on gcd(x, r)
            let chi = ClassFunction::from_fn(g.clone(), |x| {
                let d = num_integer::gcd(x, r as usize) as i64;
                Cyclo::from_int(d * d + 1)
            });
            let m = cyclic_decompose(&chi, 1 % r as usize).unwrap();
            let mut sum = ClassFunction::zero(g.clone());
            for (k, mk) in m.iter().enumerate() {
                sum = sum.add(&cyclic_character(g.clone(), 1 % r as usize, k as i64).unwrap().scale(mk)).unwrap();
            }
            assert_eq!(sum, chi);
        }
    }
}
