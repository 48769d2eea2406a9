use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::algebra::{add_assign, difference, scaled, sum, ChernVector, GradedAlgebra};
use super::series::{self, BundleDescriptor, Certificate};
use crate::classes::{obstruction_class, LinearGAction};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{self, Matrix};
use crate::Q;

/// How twisted-sector degrees are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GradingMode {
    /// `age + p` with `p` the Chow degree.
    Chow,
    /// `2 age + 2p`, cohomological degrees.
    Topological,
}

/// Where the model came from; linear models certify obstruction bundles
/// through their eigen decomposition.
#[derive(Debug, Clone)]
pub enum Backend {
    GSet,
    Linear(LinearGAction),
    Table,
}

/// The fixed locus `X^K` of a subgroup `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Locus {
    /// Sorted members of `K`.
    pub subgroup: Vec<usize>,
    pub algebra: GradedAlgebra,
    /// `ch(T X^K)`
    pub tangent: ChernVector,
}

/// Pullback and pushforward along `X^{K'} ⊆ X^K` for `K ⊆ K'`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocusMap {
    pub pull: Matrix<Q>,
    pub push: Matrix<Q>,
}

/// Raw data a backend hands to [`GeometricModel::assemble`].
#[derive(Debug, Clone)]
pub struct ModelData {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub dimension: usize,
    pub proper: bool,
    pub mode: GradingMode,
    pub loci: Vec<Locus>,
    /// Keyed by `(outer, inner)` locus indices.
    pub maps: HashMap<(usize, usize), LocusMap>,
    /// `rho[γ][K]: A(X^K) → A(X^{γKγ⁻¹})`
    pub rho: Vec<Vec<Matrix<Q>>>,
    /// `eigen[m][k] = ch W_{m,k}` on `X^{⟨m⟩}`.
    pub eigen: Vec<Vec<ChernVector>>,
    /// Obstruction triples `(m1, m2)` declared honest with the given rank.
    pub registry: HashMap<(usize, usize), usize>,
    pub backend: Backend,
}

/// The inertia data of a `G`-variety: fixed loci of the subgroups
/// generated by one or two elements, the maps between them, the group
/// action and tangent eigen data.
#[derive(Debug, Clone)]
pub struct GeometricModel {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub dimension: usize,
    pub proper: bool,
    pub mode: GradingMode,
    pub loci: Vec<Locus>,
    index: HashMap<Vec<usize>, usize>,
    maps: HashMap<(usize, usize), LocusMap>,
    rho: Vec<Vec<Matrix<Q>>>,
    eigen: Vec<Vec<ChernVector>>,
    registry: HashMap<(usize, usize), usize>,
    pub backend: Backend,
    /// Locus of `⟨m⟩`.
    sector: Vec<usize>,
    /// Locus of `⟨m1, m2⟩`, indexed `m1 * |G| + m2`.
    pair: Vec<usize>,
    trivial: usize,
}

/// Subgroups generated by one or two elements, as sorted member lists.
pub fn required_subgroups(g: &Arc<FiniteGroup>) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let members = g.subgroup_generated(&[a, b]).members().to_vec();
            if seen.insert(members.clone()) {
                out.push(members);
            }
        }
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    out
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn conjugate_members(g: &FiniteGroup, gamma: usize, k: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = k.iter().map(|&x| g.conjugate(gamma, x)).collect();
    out.sort_unstable();
    out
}

impl GeometricModel {
    /// Indexes the data and runs every consistency check.
    pub fn assemble(data: ModelData) -> Result<Self> {
        let g = data.group.clone();
        let n = g.order();
        let mut index = HashMap::new();
        for (i, l) in data.loci.iter().enumerate() {
            if index.insert(l.subgroup.clone(), i).is_some() {
                return Err(Error::InvalidModel("a subgroup has two loci".into()));
            }
        }
        let find = |members: &[usize]| -> Result<usize> {
            index.get(members).copied().ok_or_else(|| {
                let names: Vec<&str> = members.iter().map(|&x| g.label(x)).collect();
                Error::InvalidModel(format!("no locus for the subgroup {{{}}}", names.join(", ")))
            })
        };
        let sector = (0..n).map(|m| find(g.subgroup_generated(&[m]).members())).collect::<Result<Vec<_>>>()?;
        let mut pair = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                pair.push(find(g.subgroup_generated(&[a, b]).members())?);
            }
        }
        let trivial = find(&[g.identity()])?;
        let model = GeometricModel {
            name: data.name,
            group: g,
            dimension: data.dimension,
            proper: data.proper,
            mode: data.mode,
            loci: data.loci,
            index,
            maps: data.maps,
            rho: data.rho,
            eigen: data.eigen,
            registry: data.registry,
            backend: data.backend,
            sector,
            pair,
            trivial,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn locus_of(&self, members: &[usize]) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn sector_locus(&self, m: usize) -> usize {
        self.sector[m]
    }

    pub fn pair_locus(&self, a: usize, b: usize) -> usize {
        self.pair[a * self.order() + b]
    }

    pub fn trivial_locus(&self) -> usize {
        self.trivial
    }

    pub fn sector_algebra(&self, m: usize) -> &GradedAlgebra {
        &self.loci[self.sector[m]].algebra
    }

    /// Maps between nested loci; `outer ⊆ inner` as subgroups.
    pub fn map(&self, outer: usize, inner: usize) -> Result<LocusMap> {
        if outer == inner {
            let d = self.loci[outer].algebra.dim();
            return Ok(LocusMap { pull: linalg::identity(d), push: linalg::identity(d) });
        }
        self.maps.get(&(outer, inner)).cloned().ok_or_else(|| {
            Error::InvalidModel(format!(
                "no maps between the loci of {} and {}",
                self.subgroup_name(outer),
                self.subgroup_name(inner)
            ))
        })
    }

    pub fn subgroup_name(&self, locus: usize) -> String {
        let names: Vec<&str> = self.loci[locus].subgroup.iter().map(|&x| self.group.label(x)).collect();
        format!("<{}>", names.join(","))
    }

    /// `ρ(γ)` on the locus `K`, landing on `γKγ⁻¹`.
    pub fn rho(&self, gamma: usize, locus: usize) -> &Matrix<Q> {
        &self.rho[gamma][locus]
    }

    pub fn conjugate_locus(&self, gamma: usize, locus: usize) -> usize {
        self.index[&conjugate_members(&self.group, gamma, &self.loci[locus].subgroup)]
    }

    /// `ch(TX|_{X^K})`, pulled back from `X`.
    pub fn restricted_tangent(&self, locus: usize) -> Result<ChernVector> {
        let m = self.map(self.trivial, locus)?;
        Ok(linalg::mat_vec(&m.pull, &self.loci[self.trivial].tangent))
    }

    /// `ch W_{m,k}` for `k = 0..ord(m)` on `X^{⟨m⟩}`.
    pub fn eigenbundles(&self, m: usize) -> &[ChernVector] {
        &self.eigen[m]
    }

    /// `ch S_m = Σ_k (k/r) ch W_{m,k}`.
    pub fn s_class(&self, m: usize) -> ChernVector {
        let w = &self.eigen[m];
        let r = w.len();
        let mut out = self.sector_algebra(m).zero();
        for (k, ch) in w.iter().enumerate() {
            add_assign(&mut out, &scaled(ch, &Q::new(k.into(), r.into())));
        }
        out
    }

    /// Age of `m` on the component of each basis vector of its sector.
    pub fn ages(&self, m: usize) -> Vec<Q> {
        let alg = self.sector_algebra(m);
        let ranks = alg.ranks(&self.s_class(m));
        alg.components().iter().map(|&c| ranks[c].clone()).collect()
    }

    /// Degrees of the sector basis in the model's grading mode.
    pub fn gradings(&self, m: usize) -> Vec<Q> {
        let alg = self.sector_algebra(m);
        let f = match self.mode {
            GradingMode::Chow => Q::one(),
            GradingMode::Topological => Q::from_integer(2.into()),
        };
        self.ages(m).iter().zip(alg.degrees()).map(|(a, &p)| (a + Q::from_integer(p.into())) * &f).collect()
    }

    /// Sum of the gradings of a nonzero pairing.
    pub fn pairing_degree(&self) -> Q {
        let d = Q::from_integer(self.dimension.into());
        match self.mode {
            GradingMode::Chow => d,
            GradingMode::Topological => d * Q::from_integer(2.into()),
        }
    }

    /// `R(m1, m2, m3)` on `X^{⟨m1,m2⟩}` with its honesty certificate, if any.
    pub fn obstruction(&self, m1: usize, m2: usize) -> Result<BundleDescriptor> {
        let g = &self.group;
        let m3 = g.inv(g.mul(m1, m2));
        let k = self.pair_locus(m1, m2);
        let mut ch = difference(&self.loci[k].tangent, &self.restricted_tangent(k)?);
        for m in [m1, m2, m3] {
            let pull = self.map(self.sector[m], k)?.pull;
            add_assign(&mut ch, &linalg::mat_vec(&pull, &self.s_class(m)));
        }
        let name = format!("R({}, {}, {})", g.label(m1), g.label(m2), g.label(m3));
        let certificate = if ch.iter().all(Zero::is_zero) {
            Some(Certificate::ZeroClass)
        } else if let Some(&r) = self.registry.get(&(m1, m2)) {
            Some(Certificate::Registry(r))
        } else if let Backend::Linear(action) = &self.backend {
            let ob = obstruction_class(action, [m1, m2, m3])?;
            ob.honest().then(|| Certificate::Eigen(format!("rank {} on the fixed subspace", ob.rank)))
        } else {
            None
        };
        Ok(BundleDescriptor { name, ch, eigen: Vec::new(), certificate })
    }

    /// `TX^H ⊕ S_{[a,b]}|` on `X^H`, `H = ⟨a, b⟩`.
    pub fn trace_bundle(&self, a: usize, b: usize) -> Result<BundleDescriptor> {
        let g = &self.group;
        let c = g.commutator(a, b);
        let h = self.pair_locus(a, b);
        let s = linalg::mat_vec(&self.map(self.sector[c], h)?.pull, &self.s_class(c));
        let ch = sum(&self.loci[h].tangent, &s);
        let name = format!("T ⊕ S on X^<{}, {}>", g.label(a), g.label(b));
        let certificate = if s.iter().all(Zero::is_zero) {
            Some(Certificate::Bundle("tangent bundle of the fixed locus".into()))
        } else {
            None
        };
        Ok(BundleDescriptor { name, ch, eigen: Vec::new(), certificate })
    }

    /// Honest bundles the model knows about, with the locus they live on.
    pub fn registered_bundles(&self) -> Result<Vec<(usize, BundleDescriptor)>> {
        let g = &self.group;
        let mut out = Vec::new();
        for (i, l) in self.loci.iter().enumerate() {
            out.push((i, BundleDescriptor::honest(&format!("T X^{}", self.subgroup_name(i)), l.tangent.clone(), "tangent")));
        }
        for m in 0..self.order() {
            for (k, w) in self.eigen[m].iter().enumerate() {
                let name = format!("W({}, {k})", g.label(m));
                out.push((self.sector[m], BundleDescriptor::honest(&name, w.clone(), "eigenbundle")));
            }
        }
        for m1 in 0..self.order() {
            for m2 in 0..self.order() {
                let r = self.obstruction(m1, m2)?;
                if r.certificate.is_some() {
                    out.push((self.pair_locus(m1, m2), r));
                }
            }
        }
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidModel(s));
        let g = &self.group;
        let n = self.order();
        for (i, l) in self.loci.iter().enumerate() {
            if l.tangent.len() != l.algebra.dim() {
                return bad(format!("tangent class on {} has the wrong length", self.subgroup_name(i)));
            }
            if self.proper != l.algebra.is_proper() {
                return bad(format!("locus {} disagrees with the properness flag", self.subgroup_name(i)));
            }
            if l.algebra.ranks(&l.tangent).iter().zip(l.algebra.component_dims()).any(|(r, &d)| *r != Q::from_integer(d.into())) {
                return bad(format!("tangent rank on {} is not the component dimension", self.subgroup_name(i)));
            }
        }
        // nested maps: unital ring pullbacks and the projection formula
        for (&(outer, inner), m) in &self.maps {
            let (a, b) = (&self.loci[outer].algebra, &self.loci[inner].algebra);
            let where_ = format!("{} ⊆ {}", self.subgroup_name(outer), self.subgroup_name(inner));
            if !is_subset(&self.loci[outer].subgroup, &self.loci[inner].subgroup) {
                return bad(format!("maps supplied for non-nested subgroups {where_}"));
            }
            if m.pull.len() != b.dim() || m.pull.iter().any(|r| r.len() != a.dim()) {
                return bad(format!("pullback for {where_} has the wrong shape"));
            }
            if m.push.len() != a.dim() || m.push.iter().any(|r| r.len() != b.dim()) {
                return bad(format!("pushforward for {where_} has the wrong shape"));
            }
            if let Err(e) = a.check_ring_map(b, &m.pull) {
                return bad(format!("pullback for {where_}: {e}"));
            }
            for x in 0..b.dim() {
                let px = linalg::mat_vec(&m.push, &b.basis(x));
                for y in 0..a.dim() {
                    let lhs = linalg::mat_vec(&m.push, &b.mul(&b.basis(x), &linalg::mat_vec(&m.pull, &a.basis(y))));
                    if lhs != a.mul(&px, &a.basis(y)) {
                        return bad(format!(
                            "projection formula fails for {where_} on {} and {}",
                            b.labels()[x],
                            a.labels()[y]
                        ));
                    }
                }
                if self.proper && a.integrate(&px)? != b.integrate(&b.basis(x))? {
                    return bad(format!("pushforward for {where_} does not preserve integrals"));
                }
            }
        }
        // group action on loci
        if self.rho.len() != n || self.rho.iter().any(|r| r.len() != self.loci.len()) {
            return bad("ρ must be given for every element and locus".into());
        }
        for gamma in 0..n {
            for (k, l) in self.loci.iter().enumerate() {
                let target = self.conjugate_locus(gamma, k);
                let (a, b) = (&l.algebra, &self.loci[target].algebra);
                let r = &self.rho[gamma][k];
                let where_ = format!("ρ({}) on {}", g.label(gamma), self.subgroup_name(k));
                if r.len() != b.dim() || r.iter().any(|row| row.len() != a.dim()) {
                    return bad(format!("{where_} has the wrong shape"));
                }
                if let Err(e) = a.check_ring_map(b, r) {
                    return bad(format!("{where_}: {e}"));
                }
                if l.subgroup.binary_search(&gamma).is_ok() && *r != linalg::identity::<Q>(a.dim()) {
                    return bad(format!("{where_} is not the identity although γ fixes the locus"));
                }
                if linalg::mat_vec(r, &l.tangent) != self.loci[target].tangent {
                    return bad(format!("{where_} does not carry the tangent class"));
                }
                if let (Some(ia), true) = (a.integration(), b.is_proper()) {
                    for i in 0..a.dim() {
                        let img = linalg::mat_vec(r, &a.basis(i));
                        if b.integrate(&img)? != ia[i] {
                            return bad(format!("{where_} does not preserve integrals"));
                        }
                    }
                }
                for delta in 0..n {
                    let gd = g.mul(gamma, delta);
                    let mid = self.conjugate_locus(delta, k);
                    if self.rho[gd][k] != linalg::mat_mul(&self.rho[gamma][mid], &self.rho[delta][k]) {
                        return bad(format!("ρ({}) ≠ ρ({})ρ({}) on {}", g.label(gd), g.label(gamma), g.label(delta), self.subgroup_name(k)));
                    }
                }
            }
            for (&(outer, inner), m) in &self.maps {
                let (o2, i2) = (self.conjugate_locus(gamma, outer), self.conjugate_locus(gamma, inner));
                let m2 = self.map(o2, i2)?;
                if linalg::mat_mul(&self.rho[gamma][inner], &m.pull) != linalg::mat_mul(&m2.pull, &self.rho[gamma][outer]) {
                    return bad(format!("ρ({}) does not commute with a pullback", g.label(gamma)));
                }
                if linalg::mat_mul(&self.rho[gamma][outer], &m.push) != linalg::mat_mul(&m2.push, &self.rho[gamma][inner]) {
                    return bad(format!("ρ({}) does not commute with a pushforward", g.label(gamma)));
                }
            }
        }
        // eigen data: W_{m,0} = TX^m, Σ_k W_{m,k} = TX|, σ exchanges W_{m,k} and W_{m⁻¹,r-k}
        if self.eigen.len() != n {
            return bad("eigen data must be given for every element".into());
        }
        for m in 0..n {
            let r = g.element_order(m);
            let l = self.sector[m];
            let w = &self.eigen[m];
            if w.len() != r || w.iter().any(|v| v.len() != self.loci[l].algebra.dim()) {
                return bad(format!("eigen data of {} needs {r} classes on its locus", g.label(m)));
            }
            if w[0] != self.loci[l].tangent {
                return bad(format!("W({}, 0) is not the tangent class of the fixed locus", g.label(m)));
            }
            let mut total = self.loci[l].algebra.zero();
            for v in w {
                add_assign(&mut total, v);
            }
            if total != self.restricted_tangent(l)? {
                return bad(format!("eigenbundles of {} do not add up to TX", g.label(m)));
            }
            let mi = g.inv(m);
            for k in 1..r {
                if self.eigen[mi][r - k] != w[k] {
                    return bad(format!("σ does not match W({}, {k}) with W({}, {})", g.label(m), g.label(mi), r - k));
                }
            }
            for gamma in 0..n {
                let c = g.conjugate(gamma, m);
                for k in 0..r {
                    if linalg::mat_vec(&self.rho[gamma][l], &w[k]) != self.eigen[c][k] {
                        return bad(format!("ρ({}) does not carry W({}, {k})", g.label(gamma), g.label(m)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Functions on the points of a finite `G`-set; `perms[γ][x] = γ·x`.
pub fn gset_model(name: &str, group: Arc<FiniteGroup>, perms: &[Vec<usize>]) -> Result<GeometricModel> {
    let g = &group;
    let n = g.order();
    if perms.len() != n {
        return Err(Error::InvalidModel("one permutation per group element is required".into()));
    }
    let npts = perms.first().map_or(0, Vec::len);
    for a in 0..n {
        let mut seen = vec![false; npts];
        for &x in &perms[a] {
            if x >= npts || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidModel(format!("{} does not act by a permutation", g.label(a))));
            }
        }
        for b in 0..n {
            let ab = g.mul(a, b);
            if (0..npts).any(|x| perms[ab][x] != perms[a][perms[b][x]]) {
                return Err(Error::InvalidModel("the permutations do not form an action".into()));
            }
        }
    }
    let subgroups = required_subgroups(g);
    let fixed: Vec<Vec<usize>> =
        subgroups.iter().map(|k| (0..npts).filter(|&x| k.iter().all(|&h| perms[h][x] == x)).collect()).collect();
    let loci: Vec<Locus> = subgroups
        .iter()
        .zip(&fixed)
        .map(|(k, pts)| {
            let algebra = GradedAlgebra::points(pts.iter().map(|x| format!("p{x}")).collect(), true);
            let tangent = algebra.zero();
            Locus { subgroup: k.clone(), algebra, tangent }
        })
        .collect();
    let mut maps = HashMap::new();
    for (i, k) in subgroups.iter().enumerate() {
        for (j, k2) in subgroups.iter().enumerate() {
            if i != j && is_subset(k, k2) {
                // restriction of functions and extension by zero
                let pull: Matrix<Q> = fixed[j]
                    .iter()
                    .map(|x| fixed[i].iter().map(|y| if x == y { Q::one() } else { Q::zero() }).collect())
                    .collect();
                let push = linalg::transpose(&pull, fixed[i].len());
                maps.insert((i, j), LocusMap { pull, push });
            }
        }
    }
    let index: HashMap<&Vec<usize>, usize> = subgroups.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let rho = (0..n)
        .map(|gamma| {
            (0..subgroups.len())
                .map(|k| {
                    let t = index[&conjugate_members(g, gamma, &subgroups[k])];
                    fixed[t]
                        .iter()
                        .map(|&y| fixed[k].iter().map(|&x| if perms[gamma][x] == y { Q::one() } else { Q::zero() }).collect())
                        .collect()
                })
                .collect()
        })
        .collect();
    let eigen = (0..n)
        .map(|m| {
            let k = index[&g.subgroup_generated(&[m]).members().to_vec()];
            vec![vec![Q::zero(); fixed[k].len()]; g.element_order(m)]
        })
        .collect();
    GeometricModel::assemble(ModelData {
        name: name.into(),
        group: group.clone(),
        dimension: 0,
        proper: true,
        mode: GradingMode::Chow,
        loci,
        maps,
        rho,
        eigen,
        registry: HashMap::new(),
        backend: Backend::GSet,
    })
}

/// `[pt/G]`.
pub fn point_model(group: Arc<FiniteGroup>) -> GeometricModel {
    let perms = vec![vec![0]; group.order()];
    gset_model(&format!("[pt/{}]", group.name()), group, &perms).expect("point model")
}

/// `G` acting on itself by left multiplication, freely.
pub fn regular_gset_model(group: Arc<FiniteGroup>) -> GeometricModel {
    let n = group.order();
    let perms: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|x| group.mul(a, x)).collect()).collect();
    gset_model(&format!("{} on itself", group.name()), group, &perms).expect("regular model")
}

/// A linear action on affine space: every Chow ring is `Q` in degree 0.
pub fn linear_model(action: &LinearGAction) -> Result<GeometricModel> {
    let g = action.group().clone();
    let n = g.order();
    let subgroups = required_subgroups(&g);
    let dims: Vec<usize> = subgroups.iter().map(|k| action.fixed_dim(k)).collect();
    let loci: Vec<Locus> = subgroups
        .iter()
        .zip(&dims)
        .map(|(k, &d)| {
            let algebra = GradedAlgebra::new(
                vec!["1".into()],
                vec![0],
                vec![0],
                Some(vec![d]),
                vec![vec![vec![Q::one()]]],
                None,
            )
            .expect("affine space");
            Locus { subgroup: k.clone(), algebra, tangent: vec![Q::from_integer(d.into())] }
        })
        .collect();
    let mut maps = HashMap::new();
    for (i, k) in subgroups.iter().enumerate() {
        for (j, k2) in subgroups.iter().enumerate() {
            if i != j && is_subset(k, k2) {
                let push = if dims[i] == dims[j] { Q::one() } else { Q::zero() };
                maps.insert((i, j), LocusMap { pull: vec![vec![Q::one()]], push: vec![vec![push]] });
            }
        }
    }
    let rho = vec![vec![vec![vec![Q::one()]]; subgroups.len()]; n];
    let eigen = (0..n)
        .map(|m| crate::classes::eigen_decompose(action, m).dims.iter().map(|&d| vec![Q::from_integer(d.into())]).collect())
        .collect();
    GeometricModel::assemble(ModelData {
        name: action.name().into(),
        group: g,
        dimension: action.dim(),
        proper: false,
        mode: GradingMode::Chow,
        loci,
        maps,
        rho,
        eigen,
        registry: HashMap::new(),
        backend: Backend::Linear(action.clone()),
    })
}

/// Checks `td(E) Ch(λ_{-1} E*) = c_top(E)` with the Adams-operation
/// computation of `λ_{-1}`; returns the bundles where it fails.
pub fn useful_mix_failures(model: &GeometricModel) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (l, b) in model.registered_bundles()? {
        let alg = &model.loci[l].algebra;
        let lhs = alg.mul(&series::todd(alg, &b.ch), &series::lambda_minus1_dual_adams(alg, &b.ch)?);
        if lhs != b.c_top(alg)? {
            out.push(b.name.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn gset_fixed_sets() {
        let m = gset_model("swap", catalog::cyclic(2), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.sector_algebra(0).dim(), 2);
        assert_eq!(m.sector_algebra(1).dim(), 0);
        assert!(gset_model("bad", catalog::cyclic(2), &[vec![0, 1], vec![0, 0]]).is_err());
        let s3 = point_model(catalog::s3());
        assert_eq!(s3.loci.len(), required_subgroups(&catalog::s3()).len());
        assert!(useful_mix_failures(&s3).unwrap().is_empty());
    }

    #[test]
    fn linear_sectors() {
        let m = linear_model(&catalog::cyclic_sl2(3)).unwrap();
        for x in 0..3 {
            assert_eq!(m.sector_algebra(x).dim(), 1);
        }
        assert_eq!(m.ages(1), vec![Q::one()]);
        let k = linear_model(&catalog::klein4_c2()).unwrap();
        let r = k.obstruction(1, 2).unwrap();
        assert_eq!(r.certificate, Some(Certificate::ZeroClass));
        for a in catalog::actions() {
            let model = linear_model(&a).unwrap();
            for m1 in 0..model.order() {
                for m2 in 0..model.order() {
                    let r = model.obstruction(m1, m2).unwrap();
                    assert!(r.certificate.is_some(), "{} {}", a.name(), r.name);
                }
            }
        }
    }
}
