//! Model files: hand-entered fixed-locus data, finite `G`-sets and linear
//! actions, all in TOML.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Deserialize;

use super::algebra::GradedAlgebra;
use super::model::{gset_model, linear_model, Backend, GeometricModel, GradingMode, Locus, LocusMap, ModelData};
use crate::catalog;
use crate::classes::LinearGAction;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSpec, TwoCocycle};
use crate::linalg::{self, Matrix};
use crate::Q;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum GroupRef {
    Name(String),
    Spec(GroupSpec),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn value(&self) -> Result<Q> {
        match self {
            Number::Int(n) => Ok(Q::from_integer((*n).into())),
            Number::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    name: String,
    group: GroupRef,
    #[serde(default = "default_backend")]
    backend: String,
    #[serde(default)]
    dimension: usize,
    #[serde(default = "yes")]
    proper: bool,
    #[serde(default)]
    grading: Option<String>,
    #[serde(default)]
    locus: Vec<LocusSpec>,
    #[serde(default)]
    map: Vec<MapSpec>,
    #[serde(default)]
    eigen: Vec<EigenSpec>,
    #[serde(default)]
    rho: Vec<RhoSpec>,
    #[serde(default)]
    honest: Vec<HonestSpec>,
    /// gset backend: images of each point under the listed elements.
    #[serde(default)]
    permutations: BTreeMap<String, Vec<usize>>,
    /// linear backend: a catalog action name ...
    #[serde(default)]
    action: Option<String>,
    /// ... or matrices with entries such as `-1` or `z(3)^2`.
    #[serde(default)]
    matrices: BTreeMap<String, Vec<Vec<String>>>,
}

fn default_backend() -> String {
    "table".into()
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocusSpec {
    generators: Vec<String>,
    basis: Vec<String>,
    degrees: Vec<usize>,
    #[serde(default)]
    components: Option<Vec<usize>>,
    #[serde(default)]
    component_dims: Option<Vec<usize>>,
    /// Integral of each basis vector; absent for non-proper models.
    #[serde(default)]
    integration: Option<Vec<Number>>,
    /// Triples `[a, b, "a b"]`; unlisted products of non-unit vectors vanish.
    #[serde(default)]
    products: Vec<[String; 3]>,
    tangent: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapSpec {
    outer: Vec<String>,
    inner: Vec<String>,
    pull: BTreeMap<String, String>,
    push: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EigenSpec {
    element: String,
    classes: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RhoSpec {
    element: String,
    locus: Vec<String>,
    images: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HonestSpec {
    triple: [String; 2],
    rank: usize,
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let t = s.trim();
    let err = || Error::Parse(format!("`{s}` is not a rational number"));
    match t.split_once('/') {
        Some((a, b)) => {
            let a: num_bigint::BigInt = a.trim().parse().map_err(|_| err())?;
            let b: num_bigint::BigInt = b.trim().parse().map_err(|_| err())?;
            if b.is_zero() {
                return Err(err());
            }
            Ok(Q::new(a, b))
        }
        None => Ok(Q::from_integer(t.parse().map_err(|_| err())?)),
    }
}

/// Parses `2*h1 - 1/2*h + 3` over the given basis; a bare number is a
/// multiple of `unit`.
pub fn parse_combination(s: &str, labels: &[String], unit: &[Q]) -> Result<Vec<Q>> {
    let mut out = vec![Q::zero(); labels.len()];
    let err = |m: &str| Error::Parse(format!("in `{s}`: {m}"));
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() && !cur.trim_end().ends_with('*') {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.trim().is_empty() {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    terms.push((neg, cur));
    for (neg, t) in terms {
        let t = t.trim();
        if t.is_empty() {
            continue;
        }
        let (coef, label) = match t.rsplit_once('*') {
            Some((c, l)) => (parse_rational(c)?, Some(l.trim())),
            None if labels.iter().any(|l| l == t) => (Q::one(), Some(t)),
            None => (parse_rational(t).map_err(|_| err(&format!("unknown basis vector `{t}`")))?, None),
        };
        let coef = if neg { -coef } else { coef };
        match label {
            Some(l) => {
                let i = labels.iter().position(|x| x == l).ok_or_else(|| err(&format!("unknown basis vector `{l}`")))?;
                out[i] += coef;
            }
            None => {
                for (o, u) in out.iter_mut().zip(unit) {
                    *o += &coef * u;
                }
            }
        }
    }
    Ok(out)
}

fn element(g: &FiniteGroup, label: &str) -> Result<usize> {
    g.find_label(label).ok_or_else(|| Error::Parse(format!("unknown group element `{label}`")))
}

fn subgroup(g: &Arc<FiniteGroup>, gens: &[String]) -> Result<Vec<usize>> {
    let ids = gens.iter().map(|l| element(g, l)).collect::<Result<Vec<_>>>()?;
    Ok(g.subgroup_generated(&ids).members().to_vec())
}

/// Columns given as images of basis vectors; missing images are zero.
fn matrix_from_images(
    images: &BTreeMap<String, String>,
    source: &GradedAlgebra,
    target: &GradedAlgebra,
    default_identity: bool,
) -> Result<Matrix<Q>> {
    for k in images.keys() {
        if source.find(k).is_none() {
            return Err(Error::Parse(format!("unknown basis vector `{k}`")));
        }
    }
    let cols = source
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| match images.get(l) {
            Some(s) => parse_combination(s, target.labels(), &target.unit()),
            None if default_identity => Ok(target.basis(i)),
            None => Ok(target.zero()),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(linalg::transpose(&cols, target.dim()))
}

fn build_algebra(spec: &LocusSpec, proper: bool) -> Result<GradedAlgebra> {
    let d = spec.basis.len();
    let components = spec.components.clone().unwrap_or_else(|| vec![0; d]);
    let bad = |m: String| Error::InvalidModel(m);
    if spec.degrees.len() != d || components.len() != d {
        return Err(bad("basis, degrees and components differ in length".into()));
    }
    let idem: Vec<usize> = (0..d).filter(|&i| spec.degrees[i] == 0).collect();
    let mut unit = vec![Q::zero(); d];
    for &i in &idem {
        unit[i] = Q::one();
    }
    let mut mult = vec![vec![vec![Q::zero(); d]; d]; d];
    // degree-0 vectors are the component idempotents
    for &e in &idem {
        for j in 0..d {
            if components[j] == components[e] {
                mult[e][j][j] = Q::one();
                mult[j][e][j] = Q::one();
            }
        }
    }
    for [a, b, c] in &spec.products {
        let i = spec.basis.iter().position(|x| x == a).ok_or_else(|| bad(format!("unknown basis vector `{a}`")))?;
        let j = spec.basis.iter().position(|x| x == b).ok_or_else(|| bad(format!("unknown basis vector `{b}`")))?;
        let v = parse_combination(c, &spec.basis, &unit)?;
        mult[i][j] = v.clone();
        mult[j][i] = v;
    }
    let integration = match (&spec.integration, proper) {
        (Some(v), true) => {
            if v.len() != d {
                return Err(bad("integration vector has the wrong length".into()));
            }
            Some(v.iter().map(Number::value).collect::<Result<Vec<_>>>()?)
        }
        (None, false) => None,
        (Some(_), false) => return Err(bad("a non-proper model cannot integrate".into())),
        (None, true) => return Err(bad("a proper model needs an integration vector on every locus".into())),
    };
    GradedAlgebra::new(spec.basis.clone(), spec.degrees.clone(), components, spec.component_dims.clone(), mult, integration)
}

fn table_model(file: ModelFile, group: Arc<FiniteGroup>) -> Result<GeometricModel> {
    let g = &group;
    let n = g.order();
    let mode = match file.grading.as_deref() {
        None | Some("chow") => GradingMode::Chow,
        Some("topological") => GradingMode::Topological,
        Some(other) => return Err(Error::Parse(format!("unknown grading `{other}`"))),
    };
    let mut loci = Vec::new();
    for spec in &file.locus {
        let algebra = build_algebra(spec, file.proper)
            .map_err(|e| Error::InvalidModel(format!("locus <{}>: {e}", spec.generators.join(","))))?;
        let tangent = parse_combination(&spec.tangent, algebra.labels(), &algebra.unit())?;
        loci.push(Locus { subgroup: subgroup(g, &spec.generators)?, algebra, tangent });
    }
    let index: HashMap<Vec<usize>, usize> = loci.iter().enumerate().map(|(i, l)| (l.subgroup.clone(), i)).collect();
    let locus_index = |gens: &[String]| -> Result<usize> {
        let members = subgroup(g, gens)?;
        index.get(&members).copied().ok_or_else(|| Error::InvalidModel(format!("no locus for <{}>", gens.join(","))))
    };
    let mut maps = HashMap::new();
    for m in &file.map {
        let (o, i) = (locus_index(&m.outer)?, locus_index(&m.inner)?);
        let (a, b) = (&loci[o].algebra, &loci[i].algebra);
        let pull = matrix_from_images(&m.pull, a, b, false)?;
        let push = matrix_from_images(&m.push, b, a, false)?;
        maps.insert((o, i), LocusMap { pull, push });
    }
    let mut explicit: HashMap<(usize, usize), Matrix<Q>> = HashMap::new();
    for r in &file.rho {
        let gamma = element(g, &r.element)?;
        let k = locus_index(&r.locus)?;
        let t = index[&{
            let mut v: Vec<usize> = loci[k].subgroup.iter().map(|&x| g.conjugate(gamma, x)).collect();
            v.sort_unstable();
            v
        }];
        explicit.insert((gamma, k), matrix_from_images(&r.images, &loci[k].algebra, &loci[t].algebra, true)?);
    }
    let mut rho = Vec::with_capacity(n);
    for gamma in 0..n {
        let mut row = Vec::with_capacity(loci.len());
        for (k, l) in loci.iter().enumerate() {
            row.push(match explicit.remove(&(gamma, k)) {
                Some(m) => m,
                None => linalg::identity(l.algebra.dim()),
            });
        }
        rho.push(row);
    }
    let mut eigen: Vec<Option<Vec<Vec<Q>>>> = vec![None; n];
    for e in &file.eigen {
        let m = element(g, &e.element)?;
        let l = &loci[locus_index(std::slice::from_ref(&e.element))?].algebra;
        let classes = e.classes.iter().map(|c| parse_combination(c, l.labels(), &l.unit())).collect::<Result<Vec<_>>>()?;
        eigen[m] = Some(classes);
    }
    let identity_locus = locus_index(&[])?;
    eigen[g.identity()].get_or_insert_with(|| vec![loci[identity_locus].tangent.clone()]);
    let eigen = eigen
        .into_iter()
        .enumerate()
        .map(|(m, e)| e.ok_or_else(|| Error::InvalidModel(format!("no eigen data for {}", g.label(m)))))
        .collect::<Result<Vec<_>>>()?;
    let mut registry = HashMap::new();
    for h in &file.honest {
        registry.insert((element(g, &h.triple[0])?, element(g, &h.triple[1])?), h.rank);
    }
    GeometricModel::assemble(ModelData {
        name: file.name,
        group,
        dimension: file.dimension,
        proper: file.proper,
        mode,
        loci,
        maps,
        rho,
        eigen,
        registry,
        backend: Backend::Table,
    })
}

/// Closes permutations given on some elements to the whole group.
fn close_permutations(g: &Arc<FiniteGroup>, given: &BTreeMap<String, Vec<usize>>) -> Result<Vec<Vec<usize>>> {
    let npts = given.values().next().map_or(1, Vec::len);
    let n = g.order();
    let mut perms: Vec<Option<Vec<usize>>> = vec![None; n];
    perms[g.identity()] = Some((0..npts).collect());
    let mut gens = Vec::new();
    for (label, p) in given {
        if p.len() != npts {
            return Err(Error::InvalidModel("permutations act on different numbers of points".into()));
        }
        let x = element(g, label)?;
        perms[x] = Some(p.clone());
        gens.push(x);
    }
    let mut reached = vec![false; n];
    reached[g.identity()] = true;
    let mut frontier = vec![g.identity()];
    while let Some(y) = frontier.pop() {
        for &s in &gens {
            let sy = g.mul(s, y);
            let composed: Vec<usize> = {
                let (ps, py) = (perms[s].as_ref().expect("generator"), perms[y].as_ref().expect("reached"));
                (0..npts).map(|i| ps[py[i]]).collect()
            };
            match &perms[sy] {
                Some(p) if *p != composed => {
                    return Err(Error::InvalidModel("the permutations do not define an action".into()))
                }
                Some(_) => {}
                None => perms[sy] = Some(composed),
            }
            if !std::mem::replace(&mut reached[sy], true) {
                frontier.push(sy);
            }
        }
    }
    perms
        .into_iter()
        .enumerate()
        .map(|(x, p)| p.ok_or_else(|| Error::InvalidModel(format!("{} is not generated by the listed elements", g.label(x)))))
        .collect()
}

fn linear_action(file: &ModelFile, group: Arc<FiniteGroup>) -> Result<LinearGAction> {
    if let Some(name) = &file.action {
        let a = catalog::action_by_name(name)?;
        if **a.group() != *group {
            return Err(Error::GroupMismatch);
        }
        return Ok(a);
    }
    let gens = file
        .matrices
        .iter()
        .map(|(label, rows)| {
            let m = rows
                .iter()
                .map(|r| r.iter().map(|x| Cyclo::parse(x)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok((element(&group, label)?, m))
        })
        .collect::<Result<Vec<_>>>()?;
    LinearGAction::from_generators(&file.name, group, &gens)
}

/// Parses a model file of any backend.
pub fn parse_model(text: &str) -> Result<GeometricModel> {
    let file: ModelFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let group = match &file.group {
        GroupRef::Name(n) => catalog::group_by_name(n)?,
        GroupRef::Spec(s) => Arc::new(s.build()?),
    };
    match file.backend.as_str() {
        "table" => table_model(file, group),
        "gset" => {
            let perms = close_permutations(&group, &file.permutations)?;
            gset_model(&file.name, group, &perms)
        }
        "linear" => linear_model(&linear_action(&file, group)?),
        other => Err(Error::Parse(format!("unknown backend `{other}`"))),
    }
}

/// Reads and validates a model file.
pub fn load_table_model(path: &Path) -> Result<GeometricModel> {
    parse_model(&read(path)?).map_err(|e| located(path, e))
}

/// A group file: a catalog name or an inline specification.
pub fn parse_group(text: &str) -> Result<Arc<FiniteGroup>> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct GroupFile {
        group: GroupRef,
    }
    if let Ok(GroupFile { group }) = toml::from_str::<GroupFile>(text) {
        return match group {
            GroupRef::Name(n) => catalog::group_by_name(&n),
            GroupRef::Spec(s) => Ok(Arc::new(s.build()?)),
        };
    }
    let spec: GroupSpec = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Arc::new(spec.build()?))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CocycleFile {
    #[serde(default)]
    kind: Option<String>,
    #[serde(default)]
    table: Option<Vec<Vec<Number>>>,
    #[serde(default)]
    entries: Option<Vec<(String, String, Number)>>,
    #[serde(default)]
    coboundary: Option<Vec<Number>>,
}

/// A 2-cocycle on `group`. Exactly one of `kind = "sign" | "trivial"`,
/// a full `table` in element order, sparse `entries = [[a, b, value]]`
/// by label (missing pairs are 1) or a `coboundary` witness `β`.
pub fn parse_cocycle(text: &str, group: &Arc<FiniteGroup>) -> Result<TwoCocycle> {
    let file: CocycleFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let given = [file.kind.is_some(), file.table.is_some(), file.entries.is_some(), file.coboundary.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::Parse("a cocycle file needs exactly one of kind, table, entries, coboundary".into()));
    }
    let numbers = |xs: &[Number]| xs.iter().map(Number::value).collect::<Result<Vec<Q>>>();
    let element = |l: &str| group.find_label(l).ok_or_else(|| Error::Parse(format!("unknown element `{l}`")));
    let alpha = if let Some(kind) = file.kind {
        match kind.as_str() {
            "trivial" => TwoCocycle::trivial(group.clone()),
            "sign" if group.degree().is_some() => crate::torsion::sign_cocycle_on(group.clone()),
            "sign" => return Err(Error::NotApplicable("the sign cocycle needs a permutation group".into())),
            other => return Err(Error::Parse(format!("unknown cocycle kind `{other}`"))),
        }
    } else if let Some(rows) = file.table {
        TwoCocycle::from_table(group.clone(), rows.iter().map(|r| numbers(r)).collect::<Result<_>>()?)?
    } else if let Some(entries) = file.entries {
        let n = group.order();
        let mut rows = vec![vec![Q::one(); n]; n];
        for (a, b, v) in &entries {
            rows[element(a)?][element(b)?] = v.value()?;
        }
        TwoCocycle::from_table(group.clone(), rows)?
    } else {
        TwoCocycle::coboundary(group.clone(), &numbers(&file.coboundary.unwrap_or_default())?)?
    };
    if let Some((a, b, c)) = alpha.cocycle_violation() {
        return Err(Error::InvalidCocycle(format!(
            "cocycle identity fails at ({}, {}, {})",
            group.label(a),
            group.label(b),
            group.label(c)
        )));
    }
    Ok(alpha)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        Error::InvalidModel(m) => Error::InvalidModel(format!("{}: {m}", path.display())),
        Error::InvalidCocycle(m) => Error::InvalidCocycle(format!("{}: {m}", path.display())),
        Error::InvalidGroup(m) => Error::InvalidGroup(format!("{}: {m}", path.display())),
        other => other,
    }
}

pub fn load_group(path: &Path) -> Result<Arc<FiniteGroup>> {
    parse_group(&read(path)?).map_err(|e| located(path, e))
}

pub fn load_cocycle(path: &Path, group: &Arc<FiniteGroup>) -> Result<TwoCocycle> {
    parse_cocycle(&read(path)?, group).map_err(|e| located(path, e))
}
