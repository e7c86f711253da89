//! Semisimple structure: atoms, the groupoid of atoms, local bisections,
//! rook matrix semigroups `M_n(G⁰)` and the decomposition of a finite
//! Boolean inverse semigroup into a direct sum of those.

use std::collections::HashMap;
use std::fmt;

use crate::boolean::{check_bis, BooleanInverseSemigroup};
use crate::congruence::{additive_ideals, mu};
use crate::constructions::{direct_sum_index, direct_sum_with_embeddings};
use crate::error::{violation, Error, Result};
use crate::group::FiniteGroup;
use crate::morphism::{check_homomorphism, is_bijection};
use crate::pperm::{symmetric_with_elements, PartialPerm, DEFAULT_ELEMENT_CAP};
use crate::semigroup::{InverseSemigroup, ZERO};

/// A finite groupoid. Arrow `g` goes from `dom(g)` to `ran(g)`; `g·h` is
/// defined when `dom(g) = ran(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    object_labels: Vec<String>,
    arrow_labels: Vec<String>,
    dom: Vec<usize>,
    ran: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
}

/// Raw arrow data for [`FiniteGroupoid::new`].
#[derive(Clone, Debug)]
pub struct ArrowSpec {
    pub dom: usize,
    pub ran: usize,
    pub label: String,
}

impl FiniteGroupoid {
    /// Builds a groupoid from arrows and a composition function, checking
    /// the groupoid laws.
    pub fn new<F>(object_labels: Vec<String>, arrows: Vec<ArrowSpec>, compose: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize,
    {
        let m = arrows.len();
        let k = object_labels.len();
        if arrows.iter().any(|a| a.dom >= k || a.ran >= k) {
            return Err(Error::Invalid("arrow endpoint out of range".into()));
        }
        let dom: Vec<usize> = arrows.iter().map(|a| a.dom).collect();
        let ran: Vec<usize> = arrows.iter().map(|a| a.ran).collect();
        let mut table = HashMap::new();
        for g in 0..m {
            for h in 0..m {
                if dom[g] == ran[h] {
                    let c = compose(g, h);
                    if c >= m || dom[c] != dom[h] || ran[c] != ran[g] {
                        return Err(Error::Invalid(format!(
                            "composite of arrows {g} and {h} has wrong endpoints"
                        )));
                    }
                    table.insert((g, h), c);
                }
            }
        }
        let mut identity = Vec::with_capacity(k);
        for x in 0..k {
            let id = (0..m)
                .find(|&g| {
                    dom[g] == x
                        && ran[g] == x
                        && (0..m).all(|h| (ran[h] != x || table[&(g, h)] == h) && (dom[h] != x || table[&(h, g)] == h))
                })
                .ok_or_else(|| Error::Invalid(format!("object {x} has no identity arrow")))?;
            identity.push(id);
        }
        let mut inverse = Vec::with_capacity(m);
        for g in 0..m {
            let inv = (0..m)
                .find(|&h| {
                    dom[h] == ran[g]
                        && ran[h] == dom[g]
                        && table[&(h, g)] == identity[dom[g]]
                        && table[&(g, h)] == identity[ran[g]]
                })
                .ok_or_else(|| Error::Invalid(format!("arrow {g} has no inverse")))?;
            inverse.push(inv);
        }
        for (&(g, h), &gh) in &table {
            for l in (0..m).filter(|&l| ran[l] == dom[h]) {
                if table[&(gh, l)] != table[&(g, table[&(h, l)])] {
                    return Err(Error::Invalid(format!(
                        "composition not associative at ({g}, {h}, {l})"
                    )));
                }
            }
        }
        Ok(FiniteGroupoid {
            object_labels,
            arrow_labels: arrows.into_iter().map(|a| a.label).collect(),
            dom,
            ran,
            compose: table,
            identity,
            inverse,
        })
    }

    pub fn empty() -> Self {
        Self::new(Vec::new(), Vec::new(), |_, _| 0).expect("empty groupoid")
    }

    /// The pair groupoid `X × X`: one arrow `(p,q)` from `q` to `p` for
    /// every pair of objects.
    pub fn pair(object_labels: Vec<String>) -> Self {
        let k = object_labels.len();
        let arrows = (0..k)
            .flat_map(|p| (0..k).map(move |q| (p, q)))
            .map(|(p, q)| ArrowSpec {
                dom: q,
                ran: p,
                label: format!("({},{})", object_labels[p], object_labels[q]),
            })
            .collect();
        Self::new(object_labels, arrows, |g, h| (g / k) * k + h % k).expect("pair groupoid")
    }

    /// A group as a one-object groupoid.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let arrows = (0..g.order())
            .map(|x| ArrowSpec {
                dom: 0,
                ran: 0,
                label: g.label(x).to_string(),
            })
            .collect();
        Self::new(vec!["*".into()], arrows, |a, b| g.mul(a, b)).expect("group groupoid")
    }

    /// Disjoint union; objects and arrows of later parts are shifted.
    pub fn disjoint_union(parts: &[&FiniteGroupoid]) -> Self {
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut arrow_offset = Vec::new();
        for p in parts {
            let (ob, ar) = (objects.len(), arrows.len());
            arrow_offset.push(ar);
            objects.extend(p.object_labels.iter().cloned());
            arrows.extend((0..p.num_arrows()).map(|g| ArrowSpec {
                dom: p.dom[g] + ob,
                ran: p.ran[g] + ob,
                label: p.arrow_labels[g].clone(),
            }));
        }
        let owner: Vec<(usize, usize)> = parts
            .iter()
            .enumerate()
            .flat_map(|(i, p)| (0..p.num_arrows()).map(move |g| (i, g)))
            .collect();
        Self::new(objects, arrows, |g, h| {
            let ((i, a), (_, b)) = (owner[g], owner[h]);
            arrow_offset[i] + parts[i].compose[&(a, b)]
        })
        .expect("disjoint union of groupoids")
    }

    pub fn num_objects(&self) -> usize {
        self.object_labels.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.dom.len()
    }

    pub fn dom(&self, g: usize) -> usize {
        self.dom[g]
    }

    pub fn ran(&self, g: usize) -> usize {
        self.ran[g]
    }

    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.compose.get(&(g, h)).copied()
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.object_labels[x]
    }

    pub fn arrow_label(&self, g: usize) -> &str {
        &self.arrow_labels[g]
    }

    pub fn is_identity(&self, g: usize) -> bool {
        self.identity[self.dom[g]] == g
    }

    /// Arrows from `x` to `y`.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.num_arrows())
            .filter(|&g| self.dom[g] == x && self.ran[g] == y)
            .collect()
    }

    /// Connected components as sorted object lists, ordered by their least
    /// object.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(self.num_objects());
        for g in 0..self.num_arrows() {
            uf.union(self.dom[g], self.ran[g]);
        }
        let mut by_root: HashMap<usize, usize> = HashMap::new();
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.num_objects() {
            let r = uf.find_mut(x);
            let c = *by_root.entry(r).or_insert_with(|| {
                comps.push(Vec::new());
                comps.len() - 1
            });
            comps[c].push(x);
        }
        comps
    }

    /// The isotropy group at `x`, with the arrows it is built from.
    pub fn isotropy(&self, x: usize) -> (FiniteGroup, Vec<usize>) {
        let arrows = self.hom(x, x);
        let pos: HashMap<usize, usize> = arrows.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let k = arrows.len();
        let table = (0..k * k)
            .map(|i| pos[&self.compose[&(arrows[i / k], arrows[i % k])]])
            .collect();
        let labels = arrows.iter().map(|&g| self.arrow_labels[g].clone()).collect();
        let group = FiniteGroup::from_table(table, Some(labels)).expect("isotropy of a groupoid is a group");
        (group, arrows)
    }

    /// Principal: no non-identity arrow from an object to itself.
    pub fn is_principal(&self) -> bool {
        (0..self.num_arrows()).all(|g| self.dom[g] != self.ran[g] || self.is_identity(g))
    }

    /// Domain and range maps are injective on `arrows`.
    pub fn is_local_bisection(&self, arrows: &[usize]) -> bool {
        let mut doms: Vec<usize> = arrows.iter().map(|&g| self.dom[g]).collect();
        let mut rans: Vec<usize> = arrows.iter().map(|&g| self.ran[g]).collect();
        doms.sort_unstable();
        rans.sort_unstable();
        let injective = |v: &[usize]| v.windows(2).all(|w| w[0] != w[1]);
        injective(&doms) && injective(&rans)
    }

    /// DOT rendering: objects as nodes, non-identity arrows as labelled
    /// edges from domain to range, one cluster per component.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {} {{\n", dot_id(name));
        for (i, comp) in self.components().iter().enumerate() {
            out += &format!("  subgraph cluster_{i} {{\n    label=\"component {}\";\n", i + 1);
            for &x in comp {
                out += &format!("    n{x} [label={}];\n", dot_string(&self.object_labels[x]));
            }
            out += "  }\n";
        }
        for g in (0..self.num_arrows()).filter(|&g| !self.is_identity(g)) {
            out += &format!(
                "  n{} -> n{} [label={}];\n",
                self.dom[g],
                self.ran[g],
                dot_string(&self.arrow_labels[g])
            );
        }
        out + "}\n"
    }
}

fn dot_string(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dot_id(s: &str) -> String {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        s.to_string()
    } else {
        dot_string(s)
    }
}

/// The inverse semigroup of all local bisections of a finite groupoid.
#[derive(Clone, Debug)]
pub struct BisectionSemigroup {
    pub bis: BooleanInverseSemigroup,
    /// Sorted arrow sets; index 0 is the empty bisection.
    pub bisections: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl BisectionSemigroup {
    pub fn index_of(&self, arrows: &[usize]) -> Option<usize> {
        let mut key = arrows.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }
}

/// Enumerates all local bisections of `g`, multiplies them pointwise and
/// certifies the result as a Boolean inverse semigroup.
pub fn local_bisection_semigroup(g: &FiniteGroupoid, cap: usize) -> Result<BisectionSemigroup> {
    let k = g.num_objects();
    let mut by_dom: Vec<Vec<usize>> = vec![Vec::new(); k];
    for a in 0..g.num_arrows() {
        by_dom[g.dom(a)].push(a);
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![false; k];
    let mut current = Vec::new();
    fn rec(
        x: usize,
        by_dom: &[Vec<usize>],
        g: &FiniteGroupoid,
        used: &mut [bool],
        current: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if x == by_dom.len() {
            if found.len() >= cap {
                return Err(Error::SizeBudgetExceeded { cap });
            }
            found.push(current.clone());
            return Ok(());
        }
        rec(x + 1, by_dom, g, used, current, found, cap)?;
        for &a in &by_dom[x] {
            let r = g.ran(a);
            if !used[r] {
                used[r] = true;
                current.push(a);
                rec(x + 1, by_dom, g, used, current, found, cap)?;
                current.pop();
                used[r] = false;
            }
        }
        Ok(())
    }
    rec(0, &by_dom, g, &mut used, &mut current, &mut found, cap)?;
    for b in &mut found {
        b.sort_unstable();
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let n = found.len();
    // a bisection as the arrow leaving each object
    const NONE: usize = usize::MAX;
    let slots = |b: &[usize]| -> Vec<usize> {
        let mut v = vec![NONE; k];
        for &a in b {
            v[g.dom(a)] = a;
        }
        v
    };
    let slotted: Vec<Vec<usize>> = found.iter().map(|b| slots(b)).collect();
    let lookup: HashMap<&[usize], usize> = slotted.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let mut mul = Vec::with_capacity(n * n);
    let mut prod = vec![NONE; k];
    for (a, a_slots) in found.iter().zip(&slotted) {
        for b in &found {
            prod.fill(NONE);
            for &y in b {
                let x = a_slots[g.ran(y)];
                if x != NONE {
                    let c = g.compose(x, y).expect("composable arrows");
                    prod[g.dom(c)] = c;
                }
            }
            let p = lookup
                .get(prod.as_slice())
                .ok_or_else(|| violation("product of local bisections", format!("{a:?}·{b:?}")))?;
            mul.push(*p);
        }
    }
    let inv: Vec<usize> = found
        .iter()
        .map(|b| {
            let inverse: Vec<usize> = b.iter().map(|&x| g.inverse(x)).collect();
            lookup[slots(&inverse).as_slice()]
        })
        .collect();
    let labels: Vec<String> = found
        .iter()
        .map(|b| {
            if b.is_empty() {
                "0".into()
            } else {
                let parts: Vec<&str> = b.iter().map(|&a| g.arrow_label(a)).collect();
                format!("{{{}}}", parts.join(","))
            }
        })
        .collect();
    let s = InverseSemigroup::from_table(mul, inv, Some(labels))?;
    let bis =
        check_bis(&s).map_err(|f| violation("local bisections form a Boolean inverse semigroup", f.to_string()))?;
    let index = found.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    Ok(BisectionSemigroup {
        bis,
        bisections: found,
        index,
    })
}

/// Elements `s ≠ 0` with nothing strictly between 0 and `s`. Also checks
/// that every nonzero element is the join of the atoms below it.
pub fn atoms(b: &BooleanInverseSemigroup) -> Result<Vec<usize>> {
    let s = b.base();
    let atoms: Vec<usize> = s
        .elements()
        .filter(|&a| a != ZERO && s.elements().all(|t| t == ZERO || t == a || !s.leq(t, a)))
        .collect();
    for a in s.elements().skip(1) {
        let below: Vec<usize> = atoms.iter().copied().filter(|&t| s.leq(t, a)).collect();
        if b.join_all(&below)? != a {
            return Err(violation(
                "semisimplicity",
                format!("{} is not the join of its atoms", s.label(a)),
            ));
        }
    }
    Ok(atoms)
}

/// The groupoid of atoms together with the element behind each arrow and
/// each object.
#[derive(Clone, Debug)]
pub struct AtomGroupoid {
    pub groupoid: FiniteGroupoid,
    /// Arrow index ↦ atom.
    pub atoms: Vec<usize>,
    /// Object index ↦ idempotent atom.
    pub objects: Vec<usize>,
}

pub fn atom_groupoid(b: &BooleanInverseSemigroup) -> Result<AtomGroupoid> {
    let s = b.base();
    let atoms = atoms(b)?;
    let objects: Vec<usize> = atoms.iter().copied().filter(|&a| s.is_idempotent(a)).collect();
    let object_of: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let arrow_of: HashMap<usize, usize> = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut arrows = Vec::with_capacity(atoms.len());
    for &a in &atoms {
        let (d, r) = (s.dom(a), s.ran(a));
        let (Some(&dom), Some(&ran)) = (object_of.get(&d), object_of.get(&r)) else {
            return Err(violation("atoms have atomic domains", format!("atom {}", s.label(a))));
        };
        arrows.push(ArrowSpec {
            dom,
            ran,
            label: s.label(a).to_string(),
        });
    }
    for &a in &atoms {
        for &c in &atoms {
            let p = s.mul(a, c);
            if p != ZERO && !arrow_of.contains_key(&p) {
                return Err(violation(
                    "products of atoms are atoms or zero",
                    format!("{}·{}", s.label(a), s.label(c)),
                ));
            }
        }
    }
    let labels = objects.iter().map(|&e| s.label(e).to_string()).collect();
    let groupoid = FiniteGroupoid::new(labels, arrows, |g, h| arrow_of[&s.mul(atoms[g], atoms[h])])?;
    Ok(AtomGroupoid {
        groupoid,
        atoms,
        objects,
    })
}

/// The canonical isomorphism `s ↦ {atoms below s}` onto the local
/// bisections of the atom groupoid.
#[derive(Clone, Debug)]
pub struct AtomIsomorphism {
    pub atom_groupoid: AtomGroupoid,
    pub bisections: BisectionSemigroup,
    pub map: Vec<usize>,
}

pub fn verify_atom_iso(b: &BooleanInverseSemigroup) -> Result<AtomIsomorphism> {
    verify_atom_iso_with(b, DEFAULT_ELEMENT_CAP)
}

pub fn verify_atom_iso_with(b: &BooleanInverseSemigroup, cap: usize) -> Result<AtomIsomorphism> {
    let s = b.base();
    let ag = atom_groupoid(b)?;
    let bisections = local_bisection_semigroup(&ag.groupoid, cap)?;
    let mut map = Vec::with_capacity(s.size());
    for x in s.elements() {
        let below: Vec<usize> = (0..ag.atoms.len()).filter(|&i| s.leq(ag.atoms[i], x)).collect();
        let idx = bisections
            .index_of(&below)
            .ok_or_else(|| Error::IsoFailure(format!("atoms below {} do not form a local bisection", s.label(x))))?;
        map.push(idx);
    }
    let t = bisections.bis.base();
    if !is_bijection(&map, t.size()) {
        return Err(Error::IsoFailure("s ↦ atoms below s is not a bijection".into()));
    }
    if let Err((x, y)) = check_homomorphism(s, t, &map) {
        return Err(Error::IsoFailure(format!(
            "s ↦ atoms below s does not preserve {}·{}",
            s.label(x),
            s.label(y)
        )));
    }
    let additive = b.check_additive(&bisections.bis, &map)?;
    if !additive.additive {
        return Err(Error::IsoFailure(format!(
            "map is not additive at {:?}",
            additive.witness
        )));
    }
    Ok(AtomIsomorphism {
        atom_groupoid: ag,
        bisections,
        map,
    })
}

/// A rook matrix over `G⁰`: row `i` holds at most one nonzero entry
/// `(column, group element)`, and no column is used twice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RookMatrix {
    rows: Vec<Option<(usize, usize)>>,
}

impl RookMatrix {
    pub fn new(rows: Vec<Option<(usize, usize)>>) -> Result<Self> {
        let n = rows.len();
        let mut cols = vec![false; n];
        for &(c, _) in rows.iter().flatten() {
            if c >= n || std::mem::replace(&mut cols[c], true) {
                return Err(Error::Invalid("not a rook matrix".into()));
            }
        }
        Ok(RookMatrix { rows })
    }

    pub fn zero(n: usize) -> Self {
        RookMatrix { rows: vec![None; n] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().flatten().count()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<usize> {
        self.rows[i].and_then(|(c, g)| (c == j).then_some(g))
    }

    pub fn rows(&self) -> &[Option<(usize, usize)>] {
        &self.rows
    }

    pub fn mul(&self, other: &RookMatrix, g: &FiniteGroup) -> RookMatrix {
        RookMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.and_then(|(j, x)| other.rows[j].map(|(k, y)| (k, g.mul(x, y)))))
                .collect(),
        }
    }

    pub fn inverse(&self, g: &FiniteGroup) -> RookMatrix {
        let mut rows = vec![None; self.dim()];
        for (i, r) in self.rows.iter().enumerate() {
            if let Some((j, x)) = *r {
                rows[j] = Some((i, g.inv(x)));
            }
        }
        RookMatrix { rows }
    }

    pub fn label(&self, g: &FiniteGroup) -> String {
        if self.rank() == 0 {
            return "0".into();
        }
        let n = self.dim();
        let rows: Vec<String> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.entry(i, j).map_or("0".to_string(), |x| g.label(x).to_string()))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("[{}]", rows.join(";"))
    }
}

/// `M_n(G⁰)` with its matrices.
#[derive(Clone, Debug)]
pub struct RookSemigroup {
    pub n: usize,
    pub group: FiniteGroup,
    pub bis: BooleanInverseSemigroup,
    pub matrices: Vec<RookMatrix>,
    index: HashMap<RookMatrix, usize>,
}

impl RookSemigroup {
    pub fn index_of(&self, m: &RookMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// `|M_n(G⁰)| = Σ_k C(n,k)² k! |G|^k`.
pub fn rook_semigroup_size(n: usize, group_order: usize) -> u128 {
    let mut total = 0u128;
    for k in 0..=n {
        let binom = (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128);
        let fact = (1..=k as u128).product::<u128>();
        total += binom * binom * fact * (group_order as u128).pow(k as u32);
    }
    total
}

pub fn rook_semigroup(n: usize, g: &FiniteGroup) -> Result<RookSemigroup> {
    rook_semigroup_with(n, g, DEFAULT_ELEMENT_CAP)
}

pub fn rook_semigroup_with(n: usize, g: &FiniteGroup, cap: usize) -> Result<RookSemigroup> {
    if n == 0 {
        return Err(Error::Invalid("rook matrices need n ≥ 1".into()));
    }
    if rook_semigroup_size(n, g.order()) > cap as u128 {
        return Err(Error::SizeBudgetExceeded { cap });
    }
    let mut matrices = Vec::new();
    let mut rows = vec![None; n];
    let mut used = vec![false; n];
    fn rec(
        i: usize,
        g: &FiniteGroup,
        rows: &mut Vec<Option<(usize, usize)>>,
        used: &mut [bool],
        out: &mut Vec<RookMatrix>,
    ) {
        if i == rows.len() {
            out.push(RookMatrix { rows: rows.clone() });
            return;
        }
        rows[i] = None;
        rec(i + 1, g, rows, used, out);
        for j in 0..rows.len() {
            if !used[j] {
                used[j] = true;
                for x in 0..g.order() {
                    rows[i] = Some((j, x));
                    rec(i + 1, g, rows, used, out);
                }
                used[j] = false;
            }
        }
        rows[i] = None;
    }
    rec(0, g, &mut rows, &mut used, &mut matrices);
    matrices.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.cmp(b)));
    let s = InverseSemigroup::from_elements(&matrices, |a, b| a.mul(b, g), |a| a.inverse(g), |a| a.label(g))?;
    let bis = check_bis(&s).map_err(|f| violation("rook matrices form a Boolean inverse semigroup", f.to_string()))?;
    let index = matrices.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let rook = RookSemigroup {
        n,
        group: g.clone(),
        bis,
        matrices,
        index,
    };
    if g.is_trivial() {
        check_trivial_group_rook(&rook)?;
    }
    Ok(rook)
}

/// Over the trivial group, `A ↦ (j ↦ i whenever a_ij ≠ 0)` is an
/// isomorphism onto `I_n`.
fn check_trivial_group_rook(rook: &RookSemigroup) -> Result<()> {
    let (target, elems) = symmetric_with_elements(rook.n);
    let index: HashMap<&PartialPerm, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let map: Vec<usize> = rook
        .matrices
        .iter()
        .map(|m| {
            let pairs: Vec<(usize, usize)> = m
                .rows
                .iter()
                .enumerate()
                .filter_map(|(i, r)| r.map(|(j, _)| (j, i)))
                .collect();
            let p = PartialPerm::new(rook.n, &pairs).expect("rook matrix is a partial bijection");
            index[&p]
        })
        .collect();
    if !is_bijection(&map, target.size()) || check_homomorphism(rook.bis.base(), &target, &map).is_err() {
        return Err(Error::IsoFailure(format!(
            "M_{}(trivial⁰) is not isomorphic to I_{}",
            rook.n, rook.n
        )));
    }
    Ok(())
}

/// One summand `M_n(G⁰)` of a decomposition.
#[derive(Clone, Debug)]
pub struct Block {
    pub n: usize,
    pub group: FiniteGroup,
    /// Idempotent atoms of the component, base object first.
    pub objects: Vec<usize>,
}

/// `S ≅ M_{n_1}(G_1⁰) ⊕ ... ⊕ M_{n_k}(G_k⁰)` with the explicit
/// isomorphism into the direct sum.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub blocks: Vec<Block>,
    pub fundamental: bool,
    pub target: InverseSemigroup,
    pub isomorphism: Vec<usize>,
}

impl Decomposition {
    /// `(n_i, description of G_i)` per block.
    pub fn signature(&self) -> Vec<(usize, String)> {
        self.blocks.iter().map(|b| (b.n, b.group.describe())).collect()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.signature().iter().map(|(n, g)| format!("({n}, {g})")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn decompose(b: &BooleanInverseSemigroup) -> Result<Decomposition> {
    decompose_with(b, DEFAULT_ELEMENT_CAP)
}

pub fn decompose_with(b: &BooleanInverseSemigroup, cap: usize) -> Result<Decomposition> {
    let s = b.base();
    let ag = atom_groupoid(b)?;
    let g = &ag.groupoid;
    let comps = g.components();
    let mut blocks = Vec::new();
    let mut rooks = Vec::new();
    // per arrow: (block, row, column, group element)
    let mut coords = vec![(0, 0, 0, 0); g.num_arrows()];
    for (bi, comp) in comps.iter().enumerate() {
        let base = comp[0];
        let (group, iso_arrows) = g.isotropy(base);
        let group_pos: HashMap<usize, usize> = iso_arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        // a_x: base → x, least arrow
        let to: Vec<usize> = comp.iter().map(|&x| g.hom(base, x)[0]).collect();
        for (xi, &x) in comp.iter().enumerate() {
            let (gx, gx_arrows) = g.isotropy(x);
            let conj: Vec<usize> = iso_arrows
                .iter()
                .map(|&h| {
                    let c = g
                        .compose(g.compose(to[xi], h).expect("composable"), g.inverse(to[xi]))
                        .expect("composable");
                    gx_arrows
                        .iter()
                        .position(|&a| a == c)
                        .expect("conjugate lies in the isotropy group")
                })
                .collect();
            let is_iso = is_bijection(&conj, gx.order())
                && (0..group.order())
                    .all(|p| (0..group.order()).all(|q| conj[group.mul(p, q)] == gx.mul(conj[p], conj[q])));
            if !is_iso {
                return Err(Error::IsoFailure(format!(
                    "conjugation does not identify the isotropy groups at {} and {}",
                    g.object_label(base),
                    g.object_label(x)
                )));
            }
        }
        let pos: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        for h in 0..g.num_arrows() {
            let (Some(&j), Some(&i)) = (pos.get(&g.dom(h)), pos.get(&g.ran(h))) else {
                continue;
            };
            // h = a_i · x · a_j⁻¹ with x in the base isotropy group
            let x = g
                .compose(g.compose(g.inverse(to[i]), h).expect("composable"), to[j])
                .expect("composable");
            coords[h] = (bi, i, j, group_pos[&x]);
        }
        rooks.push(rook_semigroup_with(comp.len(), &group, cap)?);
        blocks.push(Block {
            n: comp.len(),
            group,
            objects: comp.iter().map(|&x| ag.objects[x]).collect(),
        });
    }
    let parts: Vec<&InverseSemigroup> = rooks.iter().map(|r| r.bis.base()).collect();
    let sizes: Vec<usize> = parts.iter().map(|p| p.size()).collect();
    if sizes
        .iter()
        .try_fold(1usize, |acc, &m| acc.checked_mul(m))
        .is_none_or(|total| total > cap)
    {
        return Err(Error::SizeBudgetExceeded { cap });
    }
    let (target, _) = direct_sum_with_embeddings(&parts);
    let mut isomorphism = Vec::with_capacity(s.size());
    for x in s.elements() {
        let mut rows: Vec<Vec<Option<(usize, usize)>>> = blocks.iter().map(|bl| vec![None; bl.n]).collect();
        for (h, &atom) in ag.atoms.iter().enumerate() {
            if s.leq(atom, x) {
                let (bi, i, j, gx) = coords[h];
                rows[bi][i] = Some((j, gx));
            }
        }
        let cs: Vec<usize> = rows
            .into_iter()
            .zip(&rooks)
            .map(|(r, rook)| {
                RookMatrix::new(r)
                    .ok()
                    .and_then(|m| rook.index_of(&m))
                    .ok_or_else(|| Error::IsoFailure(format!("{} does not give a rook matrix", s.label(x))))
            })
            .collect::<Result<_>>()?;
        isomorphism.push(direct_sum_index(&sizes, &cs));
    }
    if !is_bijection(&isomorphism, target.size()) {
        return Err(Error::IsoFailure("decomposition map is not a bijection".into()));
    }
    if let Err((x, y)) = check_homomorphism(s, &target, &isomorphism) {
        return Err(Error::IsoFailure(format!(
            "decomposition map does not preserve {}·{}",
            s.label(x),
            s.label(y)
        )));
    }
    let fundamental = blocks.iter().all(|bl| bl.group.is_trivial());
    if fundamental != g.is_principal() {
        return Err(violation(
            "fundamental iff principal",
            "trivial isotropy disagrees with principality",
        ));
    }
    if fundamental != mu(s)?.is_identity() {
        return Err(violation(
            "fundamental iff trivial isotropy",
            "μ disagrees with the isotropy groups",
        ));
    }
    Ok(Decomposition {
        blocks,
        fundamental,
        target,
        isomorphism,
    })
}

/// Checks that additive ideals correspond to sets of components of the
/// atom groupoid; returns the number of components.
pub fn verify_ideal_correspondence(b: &BooleanInverseSemigroup) -> Result<usize> {
    let s = b.base();
    let ag = atom_groupoid(b)?;
    let comps = ag.groupoid.components();
    let mut comp_of_object = vec![0; ag.groupoid.num_objects()];
    for (i, c) in comps.iter().enumerate() {
        for &x in c {
            comp_of_object[x] = i;
        }
    }
    let atom_comp: Vec<usize> = (0..ag.atoms.len())
        .map(|h| comp_of_object[ag.groupoid.dom(h)])
        .collect();
    let ideals = additive_ideals(b)?;
    let expected = 1usize.checked_shl(comps.len() as u32).unwrap_or(usize::MAX);
    if ideals.len() != expected {
        return Err(violation(
            "additive ideals match component subsets",
            format!("{} ideals, {} components", ideals.len(), comps.len()),
        ));
    }
    for ideal in &ideals {
        let mut chosen = vec![false; comps.len()];
        for (h, &a) in ag.atoms.iter().enumerate() {
            if ideal.contains(a) {
                chosen[atom_comp[h]] = true;
            }
        }
        let rebuilt: Vec<usize> = s
            .elements()
            .filter(|&x| (0..ag.atoms.len()).all(|h| !s.leq(ag.atoms[h], x) || chosen[atom_comp[h]]))
            .collect();
        if rebuilt != ideal.elements() {
            return Err(violation(
                "additive ideals match component subsets",
                format!("ideal {:?} is not determined by its components", ideal.elements()),
            ));
        }
    }
    Ok(comps.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean_algebra, direct_sum, group_with_zero};
    use crate::morphism::find_isomorphism;
    use crate::pperm::symmetric_inverse_semigroup;

    fn bis(s: &InverseSemigroup) -> BooleanInverseSemigroup {
        check_bis(s).unwrap()
    }

    fn z2() -> InverseSemigroup {
        group_with_zero(&FiniteGroup::cyclic(2))
    }

    #[test]
    fn atom_examples() {
        let i2 = bis(&symmetric_inverse_semigroup(2));
        let a = atoms(&i2).unwrap();
        let labels: Vec<&str> = a.iter().map(|&x| i2.base().label(x)).collect();
        assert_eq!(labels, ["-1", "-2", "1-", "2-"]);
        assert_eq!(atoms(&bis(&z2())).unwrap(), vec![1, 2]);
        assert_eq!(atoms(&bis(&boolean_algebra(2))).unwrap(), vec![1, 2]);
    }

    #[test]
    fn atom_groupoid_examples() {
        let ag = atom_groupoid(&bis(&symmetric_inverse_semigroup(3))).unwrap();
        assert_eq!(ag.groupoid.num_objects(), 3);
        assert_eq!(ag.groupoid.num_arrows(), 9);
        assert!(ag.groupoid.is_principal());
        assert_eq!(ag.groupoid.components().len(), 1);

        let ag = atom_groupoid(&bis(&z2())).unwrap();
        assert_eq!(ag.groupoid.num_objects(), 1);
        assert_eq!(ag.groupoid.isotropy(0).0.describe(), "Z2");

        let sum = direct_sum(&[&symmetric_inverse_semigroup(2), &z2()]);
        let ag = atom_groupoid(&bis(&sum)).unwrap();
        let comps = ag.groupoid.components();
        assert_eq!(comps.iter().map(Vec::len).collect::<Vec<_>>(), [2, 1]);
    }

    #[test]
    fn local_bisection_examples() {
        let pair = FiniteGroupoid::pair(vec!["1".into(), "2".into()]);
        let lb = local_bisection_semigroup(&pair, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(lb.bis.size(), 7);
        assert!(find_isomorphism(lb.bis.base(), &symmetric_inverse_semigroup(2)).is_some());

        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        assert_eq!(
            local_bisection_semigroup(&g, DEFAULT_ELEMENT_CAP).unwrap().bis.size(),
            3
        );

        let empty = local_bisection_semigroup(&FiniteGroupoid::empty(), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(empty.bis.size(), 1);

        let pair4 = FiniteGroupoid::pair((1..=4).map(|i| i.to_string()).collect());
        assert_eq!(
            local_bisection_semigroup(&pair4, 100).unwrap_err(),
            Error::SizeBudgetExceeded { cap: 100 }
        );
    }

    #[test]
    fn atom_isomorphisms() {
        for s in [
            symmetric_inverse_semigroup(3),
            direct_sum(&[&symmetric_inverse_semigroup(2), &z2()]),
            InverseSemigroup::trivial(),
        ] {
            verify_atom_iso(&bis(&s)).unwrap();
        }
    }

    #[test]
    fn rook_examples() {
        let r = rook_semigroup(2, &FiniteGroup::trivial()).unwrap();
        assert_eq!(r.bis.size(), 7);
        let r = rook_semigroup(1, &FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(r.bis.size(), 3);
        assert!(find_isomorphism(r.bis.base(), &z2()).is_some());
        let r = rook_semigroup(2, &FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(r.bis.size(), 17);
        assert_eq!(rook_semigroup_size(2, 2), 17);
        assert_eq!(rook_semigroup_size(4, 1), 209);
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose(&bis(&direct_sum(&[&symmetric_inverse_semigroup(2), &z2()]))).unwrap();
        assert_eq!(d.to_string(), "[(2, trivial), (1, Z2)]");
        assert!(!d.fundamental);
        let d = decompose(&bis(&symmetric_inverse_semigroup(4))).unwrap();
        assert_eq!(d.to_string(), "[(4, trivial)]");
        assert!(d.fundamental);
        let d = decompose(&bis(&boolean_algebra(3))).unwrap();
        assert_eq!(d.to_string(), "[(1, trivial), (1, trivial), (1, trivial)]");
        let m2 = rook_semigroup(2, &FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(decompose(&m2.bis).unwrap().to_string(), "[(2, Z2)]");
    }

    #[test]
    fn ideals_match_components() {
        let sum = direct_sum(&[&symmetric_inverse_semigroup(2), &z2()]);
        assert_eq!(verify_ideal_correspondence(&bis(&sum)).unwrap(), 2);
        assert_eq!(verify_ideal_correspondence(&bis(&boolean_algebra(3))).unwrap(), 3);
        assert_eq!(
            verify_ideal_correspondence(&bis(&symmetric_inverse_semigroup(3))).unwrap(),
            1
        );
    }

    #[test]
    fn dot_output() {
        let ag = atom_groupoid(&bis(&symmetric_inverse_semigroup(2))).unwrap();
        let dot = ag.groupoid.to_dot("atoms");
        assert_eq!(dot.matches("->").count(), 2);
        assert_eq!(dot.matches("subgraph").count(), 1);
        let ag = atom_groupoid(&bis(&z2())).unwrap();
        let dot = ag.groupoid.to_dot("atoms");
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("n0 -> n0"));
    }
}
