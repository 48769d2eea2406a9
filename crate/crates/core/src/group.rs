//! Finite groups given by Cayley tables or permutation generators.
//!
//! Elements are indices `0..order`; the identity is always index 0.
//! Conjugacy classes and the class map are computed once at construction.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::Q;

/// Largest Cayley-table input accepted.
pub const MAX_TABLE_ORDER: usize = 256;
/// Largest group closed from permutation generators (S6).
pub const MAX_PERM_ORDER: usize = 720;
/// Largest number of permuted points.
pub const MAX_POINTS: usize = 32;

/// A permutation of `0..n`, stored as the list of images.
pub type Perm = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<usize>,
    perms: Option<Vec<Perm>>,
    labels: Vec<String>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a Cayley table (`table[g][h] = gh`).
    ///
    /// The identity is moved to index 0 if necessary; associativity is
    /// checked exhaustively.
    pub fn from_cayley(name: &str, table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty Cayley table".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(Error::InvalidGroup(format!(
                "order {n} exceeds the Cayley-table limit {MAX_TABLE_ORDER}"
            )));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {g} has length {} (expected {n})", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("row {g} has out-of-range entry {x}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        // relabel so that the identity becomes 0
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut flat = vec![0u16; n * n];
        for g in 0..n {
            for h in 0..n {
                flat[relabel(g) * n + relabel(h)] = relabel(table[g][h]) as u16;
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            for h in 0..n {
                if flat[g * n + h] == 0 && flat[h * n + g] == 0 {
                    inverse[g] = h;
                    break;
                }
            }
            if inverse[g] == usize::MAX {
                return Err(Error::InvalidGroup(format!("element {g} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b] as usize;
                for c in 0..n {
                    let bc = flat[b * n + c] as usize;
                    if flat[ab * n + c] != flat[a * n + bc] {
                        return Err(Error::InvalidGroup(format!(
                            "multiplication is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let labels = (0..n).map(|g| format!("g{g}")).collect();
        Ok(Self::assemble(name.to_string(), n, flat, inverse, None, labels))
    }

    /// Closes a set of permutation generators into a group. Elements are
    /// indexed by the lexicographic order of their image lists, so the
    /// identity permutation is index 0.
    pub fn from_permutations(name: &str, generators: &[Vec<usize>]) -> Result<Self> {
        let degree = generators.first().map(|g| g.len()).unwrap_or(1);
        if degree > MAX_POINTS {
            return Err(Error::InvalidGroup(format!("{degree} points exceeds the limit {MAX_POINTS}")));
        }
        let mut gens: Vec<Perm> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != degree {
                return Err(Error::InvalidGroup("generators act on different numbers of points".into()));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidGroup(format!("{g:?} is not a permutation")));
                }
                seen[x] = true;
            }
            gens.push(g.iter().map(|&x| x as u8).collect());
        }
        let id: Perm = (0..degree as u8).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Perm, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &gens {
                let p = compose(&elements[i], s);
                if !index.contains_key(&p) {
                    if elements.len() >= MAX_PERM_ORDER {
                        return Err(Error::InvalidGroup(format!(
                            "generated group exceeds order {MAX_PERM_ORDER}"
                        )));
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        elements.sort();
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let mut flat = vec![0u16; n * n];
        let mut inverse = vec![0usize; n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                let ab = index[&compose(pa, pb)];
                flat[a * n + b] = ab as u16;
                if ab == 0 {
                    inverse[a] = b;
                }
            }
        }
        let labels = elements.iter().map(|p| cycle_notation(p)).collect();
        Ok(Self::assemble(name.to_string(), n, flat, inverse, Some(elements), labels))
    }

    fn assemble(
        name: String,
        order: usize,
        table: Vec<u16>,
        inverse: Vec<usize>,
        perms: Option<Vec<Perm>>,
        labels: Vec<String>,
    ) -> Self {
        let mut g = FiniteGroup {
            name,
            order,
            table,
            inverse,
            perms,
            labels,
            classes: Vec::new(),
            class_of: vec![usize::MAX; order],
        };
        for x in 0..order {
            if g.class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..order).map(|h| g.conjugate(h, x)).collect();
            members.sort_unstable();
            members.dedup();
            let idx = g.classes.len();
            for &m in &members {
                g.class_of[m] = idx;
            }
            g.classes.push(ConjugacyClass { representative: x, members });
        }
        g
    }

    pub fn trivial() -> Self {
        Self::from_cayley("1", &[vec![0]]).expect("trivial group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = labels;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `h g h^{-1}`
    #[inline]
    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    /// `a b a^{-1} b^{-1}`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let r = self.element_order(g) as i64;
        let k = k.rem_euclid(r);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, g);
        }
        x
    }

    pub fn product(&self, elements: &[usize]) -> usize {
        elements.iter().fold(0, |acc, &g| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut r = 1;
        while x != 0 {
            x = self.mul(x, g);
            r += 1;
        }
        r
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// An element by label, by index, or as `w` / `w^k` where `w` is the
    /// first element of largest order (a generator when the group is
    /// cyclic).
    pub fn parse_element(&self, token: &str) -> Result<usize> {
        let token = token.trim();
        if let Some(x) = self.find_label(token) {
            return Ok(x);
        }
        if let Some(rest) = token.strip_prefix('w') {
            let w = self.elements().max_by_key(|&x| (self.element_order(x), std::cmp::Reverse(x))).unwrap_or(0);
            let k = match rest.strip_prefix('^') {
                Some(e) => e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?,
                None if rest.is_empty() => 1,
                None => return Err(Error::Parse(format!("unknown element `{token}` of {}", self.name))),
            };
            return Ok(self.pow(w, k));
        }
        match token.parse::<usize>() {
            Ok(i) if i < self.order => Ok(i),
            _ => Err(Error::Parse(format!("unknown element `{token}` of {}", self.name))),
        }
    }

    /// A comma-separated list of elements; commas inside parentheses
    /// belong to cycle labels.
    pub fn parse_elements(&self, list: &str) -> Result<Vec<usize>> {
        split_list(list).into_iter().map(|t| self.parse_element(t)).collect()
    }

    /// Permutation images when the group was built from generators.
    pub fn permutation(&self, g: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[g])
    }

    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].len())
    }

    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn centralizer(self: &Arc<Self>, set: &[usize]) -> Subgroup {
        let members = (0..self.order).filter(|&h| set.iter().all(|&g| self.commute(h, g))).collect();
        Subgroup::from_sorted(self.clone(), members)
    }

    pub fn subgroup_generated(self: &Arc<Self>, set: &[usize]) -> Subgroup {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in set {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup::from_sorted(self.clone(), members)
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup::from_sorted(self.clone(), (0..self.order).collect())
    }

    /// All commuting pairs in lexicographic order.
    pub fn commuting_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |a| (0..self.order).filter(move |&b| self.commute(a, b)).map(move |b| (a, b)))
    }

    /// Lexicographically least tuple in the orbit of `tuple` under
    /// simultaneous conjugation.
    pub fn canonical_conjugate(&self, tuple: &[usize]) -> Vec<usize> {
        (0..self.order)
            .map(|h| tuple.iter().map(|&g| self.conjugate(h, g)).collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    }
}

/// Splits on commas outside parentheses and drops empty items.
pub fn split_list(list: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in list.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&list[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&list[start..]);
    parts.retain(|s| !s.trim().is_empty());
    parts
}

/// `(p ∘ q)(x) = p(q(x))`
pub fn compose(p: &[u8], q: &[u8]) -> Perm {
    q.iter().map(|&x| p[x as usize]).collect()
}

pub fn cycle_notation(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x.to_string());
            x = p[x] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

/// Number of cycles of a permutation, fixed points included.
pub fn cycle_count(p: &[u8]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
        }
    }
    cycles
}

/// A subgroup, carried together with a copy of itself as an abstract
/// group whose element `i` is `members[i]` of the parent.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    local: Arc<FiniteGroup>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.parent == other.parent
    }
}

impl Subgroup {
    fn from_sorted(parent: Arc<FiniteGroup>, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(members.first(), Some(&0));
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let table: Vec<Vec<usize>> = members
            .iter()
            .map(|&a| members.iter().map(|&b| pos[&parent.mul(a, b)]).collect())
            .collect();
        let labels = members.iter().map(|&g| parent.label(g).to_string()).collect();
        let name = format!("{}<{}>", parent.name(), members.len());
        let mut local = FiniteGroup::from_cayley(&name, &table).expect("closed subset is a group");
        local.labels = labels;
        if let Some(perms) = &parent.perms {
            local.perms = Some(members.iter().map(|&g| perms[g].clone()).collect());
        }
        Subgroup { parent, members, local: Arc::new(local) }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// Position of a parent element inside the subgroup.
    pub fn local_index(&self, g: usize) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }

    /// The subgroup as a group in its own right.
    pub fn as_group(&self) -> &Arc<FiniteGroup> {
        &self.local
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.members.len()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }

    /// Left cosets `gH`, each as a sorted member list, ordered by least element.
    pub fn left_cosets(&self) -> Vec<Vec<usize>> {
        let g = &self.parent;
        let mut assigned = vec![false; g.order()];
        let mut cosets = Vec::new();
        for x in g.elements() {
            if assigned[x] {
                continue;
            }
            let mut c: Vec<usize> = self.members.iter().map(|&h| g.mul(x, h)).collect();
            c.sort_unstable();
            for &y in &c {
                assigned[y] = true;
            }
            cosets.push(c);
        }
        cosets
    }
}

/// A 2-cocycle table `α(a, b)` with nonzero rational values.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoCocycle {
    group: Arc<FiniteGroup>,
    values: Vec<Q>,
}

impl TwoCocycle {
    /// Wraps a table without checking the cocycle identity.
    pub fn from_table(group: Arc<FiniteGroup>, rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = group.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCocycle(format!("table must be {n}x{n}")));
        }
        let values: Vec<Q> = rows.into_iter().flatten().collect();
        if let Some(i) = values.iter().position(|v| v.is_zero()) {
            return Err(Error::InvalidCocycle(format!("zero value at ({}, {})", i / n, i % n)));
        }
        Ok(TwoCocycle { group, values })
    }

    pub fn from_fn(group: Arc<FiniteGroup>, f: impl Fn(usize, usize) -> Q) -> Result<Self> {
        let n = group.order();
        let rows = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Self::from_table(group, rows)
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        TwoCocycle { group, values: vec![Q::one(); n * n] }
    }

    /// The coboundary `δβ(a, b) = β(a) β(b) / β(ab)`.
    pub fn coboundary(group: Arc<FiniteGroup>, beta: &[Q]) -> Result<Self> {
        if beta.len() != group.order() || beta.iter().any(|b| b.is_zero()) {
            return Err(Error::InvalidCocycle("β must be a nonzero value per element".into()));
        }
        let g = group.clone();
        Self::from_fn(group, |a, b| &beta[a] * &beta[b] / &beta[g.mul(a, b)])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn get(&self, a: usize, b: usize) -> &Q {
        &self.values[a * self.group.order() + b]
    }

    pub fn rows(&self) -> Vec<Vec<Q>> {
        self.values.chunks(self.group.order()).map(|c| c.to_vec()).collect()
    }

    pub fn inverse(&self) -> Self {
        TwoCocycle { group: self.group.clone(), values: self.values.iter().map(|v| v.recip()).collect() }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(TwoCocycle {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    /// `ε(γ, m) = α(γ, m) / α(γ m γ^{-1}, γ)`
    pub fn epsilon(&self, gamma: usize, m: usize) -> Q {
        let g = &self.group;
        self.get(gamma, m) / self.get(g.conjugate(gamma, m), gamma)
    }

    fn sign_table(&self) -> Option<Vec<i8>> {
        let one = Q::one();
        let minus = -Q::one();
        self.values
            .iter()
            .map(|v| {
                if *v == one {
                    Some(1)
                } else if *v == minus {
                    Some(-1)
                } else {
                    None
                }
            })
            .collect()
    }

    /// First triple violating `α(a,b) α(ab,c) = α(a,bc) α(b,c)`, if any.
    pub fn cocycle_violation(&self) -> Option<(usize, usize, usize)> {
        let g = &self.group;
        let n = g.order();
        if let Some(s) = self.sign_table() {
            for a in 0..n {
                for b in 0..n {
                    let ab = g.mul(a, b);
                    let sab = s[a * n + b];
                    for c in 0..n {
                        let bc = g.mul(b, c);
                        if sab * s[ab * n + c] != s[a * n + bc] * s[b * n + c] {
                            return Some((a, b, c));
                        }
                    }
                }
            }
            return None;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    let bc = g.mul(b, c);
                    if self.get(a, b) * self.get(ab, c) != self.get(a, bc) * self.get(b, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_cocycle(&self) -> bool {
        self.cocycle_violation().is_none()
    }

    /// Finds `β` with `α = δβ` if one exists.
    ///
    /// Taking the product over `b` of `α(a,b) = β(a)β(b)/β(ab)` forces
    /// `|β(a)|^{|G|} = |Π_b α(a,b)|`, so magnitudes are determined by exact
    /// integer roots; signs are then a linear system over GF(2).
    pub fn is_coboundary(&self) -> Option<Vec<Q>> {
        if !self.is_cocycle() {
            return None;
        }
        let g = &self.group;
        let n = g.order();
        let mut magnitude = Vec::with_capacity(n);
        for a in 0..n {
            let prod = (0..n).fold(Q::one(), |acc, b| acc * self.get(a, b).abs());
            magnitude.push(exact_root(&prod, n as u32)?);
        }
        // residual sign cocycle
        let mut sign = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                let r = self.get(a, b) * &magnitude[g.mul(a, b)] / (&magnitude[a] * &magnitude[b]);
                if r == Q::one() {
                    sign[a * n + b] = false;
                } else if r == -Q::one() {
                    sign[a * n + b] = true;
                } else {
                    return None;
                }
            }
        }
        // s(a) + s(b) + s(ab) = sign(a,b) over GF(2)
        let mut rows: Vec<(Vec<u64>, bool)> = Vec::new();
        let words = n.div_ceil(64);
        for a in 0..n {
            for b in 0..n {
                let mut v = vec![0u64; words];
                for x in [a, b, g.mul(a, b)] {
                    v[x / 64] ^= 1 << (x % 64);
                }
                rows.push((v, sign[a * n + b]));
            }
        }
        let bits = gf2_solve(rows, n)?;
        Some(
            magnitude
                .into_iter()
                .zip(bits)
                .map(|(m, s)| if s { -m } else { m })
                .collect(),
        )
    }
}

fn exact_root(x: &Q, n: u32) -> Option<Q> {
    let root = |v: &BigInt| -> Option<BigInt> {
        let r = v.nth_root(n);
        (num_traits::pow(r.clone(), n as usize) == *v).then_some(r)
    };
    Some(Q::new(root(x.numer())?, root(x.denom())?))
}

/// Solves a GF(2) system given as (bitset row, rhs); returns one solution.
fn gf2_solve(mut rows: Vec<(Vec<u64>, bool)>, vars: usize) -> Option<Vec<bool>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..vars {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[w] & bit != 0) else {
            continue;
        };
        rows.swap(r, p);
        let (pivot_row, pivot_rhs) = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0[w] & bit != 0 {
                for (x, y) in row.0.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
                row.1 ^= pivot_rhs;
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| *rhs) {
        return None;
    }
    let mut x = vec![false; vars];
    for (row, col) in pivots {
        x[col] = rows[row].1;
    }
    Some(x)
}

/// Group description as it appears in TOML input.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub cayley: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub permutation_generators: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        let name = self.name.as_deref().unwrap_or("G");
        let g = match (&self.cayley, &self.permutation_generators) {
            (Some(t), None) => FiniteGroup::from_cayley(name, t)?,
            (None, Some(gens)) => FiniteGroup::from_permutations(name, gens)?,
            _ => {
                return Err(Error::InvalidGroup(
                    "exactly one of `cayley` or `permutation_generators` is required".into(),
                ))
            }
        };
        match &self.labels {
            Some(l) if l.len() != g.order() => {
                Err(Error::InvalidGroup(format!("{} labels for a group of order {}", l.len(), g.order())))
            }
            Some(l) => Ok(g.with_labels(l.clone())),
            None => Ok(g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_group_has_one_class() {
        let g = FiniteGroup::trivial();
        assert_eq!(g.conjugacy_classes().len(), 1);
        assert_eq!(g.conjugacy_classes()[0].members, vec![0]);
        assert_eq!(g.commuting_pairs().collect::<Vec<_>>(), vec![(0, 0)]);
    }

    #[test]
    fn s3_classes_and_pairs() {
        let g = catalog::s3();
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        for c in g.conjugacy_classes() {
            assert_eq!(c.representative, *c.members.iter().min().unwrap());
        }
        assert_eq!(g.commuting_pairs().count(), 18);
    }

    #[test]
    fn z4_is_abelian_with_singleton_classes() {
        let g = catalog::cyclic(4);
        assert_eq!(g.conjugacy_classes().len(), 4);
        assert!(g.conjugacy_classes().iter().all(|c| c.size() == 1));
        for s in 0..4 {
            assert_eq!(g.centralizer(&[s]).order(), 4);
        }
        assert_eq!(catalog::cyclic(2).commuting_pairs().count(), 4);
    }

    #[test]
    fn centralizer_of_transposition_in_s3() {
        let g = catalog::s3();
        assert_eq!(g.centralizer(&[0]).order(), 6);
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let z = g.centralizer(&[t]);
        assert_eq!(z.members(), &[0, t]);
    }

    #[test]
    fn generated_subgroups() {
        let g = catalog::s3();
        assert_eq!(g.subgroup_generated(&[]).members(), &[0]);
        let c = (0..6).find(|&x| g.element_order(x) == 3).unwrap();
        assert_eq!(g.subgroup_generated(&[c]).order(), 3);
        let k = catalog::klein4();
        assert_eq!(k.subgroup_generated(&[1, 2]).order(), 4);
    }

    #[test]
    fn identity_is_normalized_to_zero() {
        // Z/2 with the identity stored at index 1
        let g = FiniteGroup::from_cayley("z2", &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn rejects_non_associative_table() {
        // a Latin square with identity 0 that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_cayley("bad", &t), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn sign_cocycle_on_s2_is_not_a_coboundary() {
        let g = catalog::cyclic(2);
        let a = TwoCocycle::from_fn(g.clone(), |a, b| if a == 1 && b == 1 { -Q::one() } else { Q::one() }).unwrap();
        assert!(a.is_cocycle());
        assert!(a.is_coboundary().is_none());
        let t = TwoCocycle::trivial(g);
        assert_eq!(t.is_coboundary(), Some(vec![Q::one(), Q::one()]));
    }

    #[test]
    fn coboundary_search_recovers_scaling() {
        let g = catalog::cyclic(2);
        let beta = vec![Q::one(), Q::from_integer(2.into())];
        let a = TwoCocycle::coboundary(g, &beta).unwrap();
        assert_eq!(*a.get(1, 1), Q::from_integer(4.into()));
        let found = a.is_coboundary().unwrap();
        assert_eq!(TwoCocycle::coboundary(a.group().clone(), &found).unwrap(), a);
    }

    #[test]
    fn broken_cocycle_is_detected() {
        let g = catalog::cyclic(3);
        let a = TwoCocycle::from_fn(g, |a, b| if (a, b) == (1, 2) { Q::from_integer(3.into()) } else { Q::one() })
            .unwrap();
        assert!(!a.is_cocycle());
    }

    #[test]
    fn commutator_identity_behind_the_trace_axiom() {
        for g in catalog::groups() {
            for a in g.elements() {
                for b in g.elements() {
                    let t = g.conjugate(a, b);
                    assert_eq!(g.commutator(t, g.inv(a)), g.commutator(a, b));
                }
            }
            let total: usize = g.conjugacy_classes().iter().map(|c| c.size()).sum();
            assert_eq!(total, g.order());
            assert_eq!(g.num_classes() * g.order(), g.commuting_pairs().count());
        }
    }

    #[test]
    fn element_tokens() {
        let z6 = crate::catalog::cyclic(6);
        assert_eq!(z6.parse_element("w").unwrap(), 1);
        assert_eq!(z6.parse_element("w^2").unwrap(), z6.find_label("g^2").unwrap());
        assert_eq!(z6.parse_element("w^-1").unwrap(), z6.inv(1));
        assert_eq!(z6.parse_element("3").unwrap(), 3);
        assert!(z6.parse_element("x").is_err());
        assert_eq!(crate::catalog::q8().parse_element("-i").unwrap(), 3);
        let s3 = crate::catalog::s3();
        assert_eq!(s3.parse_elements("(0 1),(0 1 2)").unwrap().len(), 2);
        assert_eq!(split_list("(0 1),(0 1 2), e"), vec!["(0 1)", "(0 1 2)", " e"]);
        assert!(split_list(" ").is_empty());
    }
}
