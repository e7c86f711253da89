//! Congruences: the μ-congruence, additive ideals, the congruences `ε_I`
//! they induce, quotients, and the simplicity classification.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;

use crate::boolean::{check_bis, BooleanInverseSemigroup};
use crate::error::{violation, Error, Result};
use crate::semigroup::{InverseSemigroup, ZERO};

/// Semigroups above this size are not searched for additive congruences.
pub const DEFAULT_CONGRUENCE_CAP: usize = 256;

/// Upper bound on the number of congruences [`additive_congruences`] keeps.
pub const MAX_ENUMERATED_CONGRUENCES: usize = 4096;

/// Default number of one-pair extensions tried when checking maximality of μ.
pub const DEFAULT_MU_SAMPLES: usize = 512;

/// A partition of the elements, with flags describing how it interacts
/// with the operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    pub is_semigroup_congruence: bool,
    pub is_idempotent_separating: bool,
    /// `None` until checked against a Boolean structure.
    pub is_additive: Option<bool>,
}

impl Congruence {
    /// Builds a partition from arbitrary class labels. Classes are renumbered
    /// by their least element, so the class of zero is always 0.
    pub fn from_labels(s: &InverseSemigroup, labels: &[usize]) -> Result<Self> {
        if labels.len() != s.size() {
            return Err(Error::Invalid(format!(
                "partition covers {} elements, semigroup has {}",
                labels.len(),
                s.size()
            )));
        }
        let mut renumber = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let class_of: Vec<usize> = labels
            .iter()
            .enumerate()
            .map(|(a, l)| {
                let c = *renumber.entry(*l).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                classes[c].push(a);
                c
            })
            .collect();
        let is_semigroup_congruence = congruence_witness(s, &class_of, &classes).is_none();
        let is_idempotent_separating = classes
            .iter()
            .all(|c| c.iter().filter(|&&a| s.is_idempotent(a)).count() <= 1);
        Ok(Congruence {
            class_of,
            classes,
            is_semigroup_congruence,
            is_idempotent_separating,
            is_additive: None,
        })
    }

    /// Builds a partition from explicit classes.
    pub fn from_classes(s: &InverseSemigroup, classes: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; s.size()];
        for (i, class) in classes.iter().enumerate() {
            for &a in class {
                if a >= s.size() {
                    return Err(Error::Invalid(format!("element {a} out of range")));
                }
                if labels[a] != usize::MAX {
                    return Err(Error::Invalid(format!("element {a} appears in two classes")));
                }
                labels[a] = i;
            }
        }
        if let Some(a) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Invalid(format!("element {a} is in no class")));
        }
        Self::from_labels(s, &labels)
    }

    pub fn identity(s: &InverseSemigroup) -> Self {
        Self::from_labels(s, &(0..s.size()).collect::<Vec<_>>()).expect("identity partition")
    }

    pub fn universal(s: &InverseSemigroup) -> Self {
        Self::from_labels(s, &vec![0; s.size()]).expect("universal partition")
    }

    fn from_union_find(s: &InverseSemigroup, uf: &mut UnionFind<usize>) -> Self {
        let labels: Vec<usize> = (0..s.size()).map(|a| uf.find_mut(a)).collect();
        Self::from_labels(s, &labels).expect("union-find partition")
    }

    /// Records whether the partition is also compatible with `⊘` and `▽`.
    pub fn check_additive(mut self, b: &BooleanInverseSemigroup) -> Self {
        self.is_additive =
            Some(self.is_semigroup_congruence && skew_witness(b, &self.class_of, &self.classes).is_none());
        self
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn zero_class(&self) -> &[usize] {
        &self.classes[self.class_of[ZERO]]
    }

    pub fn is_identity(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }

    pub fn is_universal(&self) -> bool {
        self.classes.len() == 1
    }

    /// `self ⊆ other` as relations.
    pub fn is_finer_than(&self, other: &Congruence) -> bool {
        self.classes.iter().all(|c| c.iter().all(|&a| other.related(a, c[0])))
    }
}

/// First pair of products that the partition fails to respect.
fn congruence_witness(s: &InverseSemigroup, class_of: &[usize], classes: &[Vec<usize>]) -> Option<String> {
    for a in s.elements() {
        let rep = classes[class_of[a]][0];
        if class_of[s.inv(a)] != class_of[s.inv(rep)] {
            return Some(format!("{a} ~ {rep} but their inverses are not related"));
        }
        for b in s.elements() {
            if class_of[s.mul(a, b)] != class_of[s.mul(rep, b)] {
                return Some(format!("{a} ~ {rep} but {a}·{b} and {rep}·{b} are not related"));
            }
            if class_of[s.mul(b, a)] != class_of[s.mul(b, rep)] {
                return Some(format!("{a} ~ {rep} but {b}·{a} and {b}·{rep} are not related"));
            }
        }
    }
    None
}

fn skew_witness(b: &BooleanInverseSemigroup, class_of: &[usize], classes: &[Vec<usize>]) -> Option<String> {
    let s = b.base();
    let join = |x, y| b.skew_join(x, y).expect("skew join is total");
    for x in s.elements() {
        let rep = classes[class_of[x]][0];
        for y in s.elements() {
            let pairs = [
                (b.skew_difference(x, y), b.skew_difference(rep, y)),
                (b.skew_difference(y, x), b.skew_difference(y, rep)),
                (join(x, y), join(rep, y)),
                (join(y, x), join(y, rep)),
            ];
            if let Some((p, q)) = pairs.into_iter().find(|&(p, q)| class_of[p] != class_of[q]) {
                return Some(format!("{x} ~ {rep} but skew operations with {y} give {p} and {q}"));
            }
        }
    }
    None
}

/// One effective union during a closure: the pair that caused it, the two
/// old roots and the new root.
#[derive(Clone, Copy, Debug)]
struct Merge {
    pair: (usize, usize),
    roots: (usize, usize),
    root: usize,
}

/// Congruence closure over `mul`, `inv` and optionally the skew operations.
struct Closure<'a> {
    s: &'a InverseSemigroup,
    /// Flat `⊘` and `▽` tables.
    skew: Option<(Vec<u32>, Vec<u32>)>,
}

impl<'a> Closure<'a> {
    fn semigroup(s: &'a InverseSemigroup) -> Self {
        Closure { s, skew: None }
    }

    fn additive(b: &'a BooleanInverseSemigroup) -> Self {
        let s = b.base();
        let n = s.size();
        let mut diff = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                diff.push(b.skew_difference(x, y) as u32);
                join.push(b.skew_join(x, y).expect("skew join is total") as u32);
            }
        }
        Closure {
            s,
            skew: Some((diff, join)),
        }
    }

    fn fresh(&self) -> UnionFind<usize> {
        UnionFind::new(self.s.size())
    }

    /// Merges the given pairs and everything they force. `on_union` sees
    /// every effective union and may
    /// stop the closure early by returning `true`; the return value says
    /// whether that happened.
    fn run<F>(&self, uf: &mut UnionFind<usize>, pairs: &[(usize, usize)], mut on_union: F) -> bool
    where
        F: FnMut(&mut UnionFind<usize>, Merge) -> bool,
    {
        let s = self.s;
        let n = s.size();
        let mut stack: Vec<(usize, usize)> = pairs.to_vec();
        while let Some((x, y)) = stack.pop() {
            let (rx, ry) = (uf.find_mut(x), uf.find_mut(y));
            if rx == ry {
                continue;
            }
            uf.union(rx, ry);
            let root = uf.find_mut(rx);
            if on_union(
                uf,
                Merge {
                    pair: (x, y),
                    roots: (rx, ry),
                    root,
                },
            ) {
                return true;
            }
            stack.push((s.inv(x), s.inv(y)));
            for z in 0..n {
                stack.push((s.mul(x, z), s.mul(y, z)));
                stack.push((s.mul(z, x), s.mul(z, y)));
                if let Some((diff, join)) = &self.skew {
                    for t in [diff, join] {
                        stack.push((t[x * n + z] as usize, t[y * n + z] as usize));
                        stack.push((t[z * n + x] as usize, t[z * n + y] as usize));
                    }
                }
            }
        }
        false
    }
}

/// The least semigroup congruence containing `pairs`.
pub fn generated_congruence(s: &InverseSemigroup, pairs: &[(usize, usize)]) -> Congruence {
    let c = Closure::semigroup(s);
    let mut uf = c.fresh();
    c.run(&mut uf, pairs, |_, _| false);
    Congruence::from_union_find(s, &mut uf)
}

/// The least additive congruence containing `pairs`.
pub fn generated_additive_congruence(b: &BooleanInverseSemigroup, pairs: &[(usize, usize)]) -> Congruence {
    let c = Closure::additive(b);
    let mut uf = c.fresh();
    c.run(&mut uf, pairs, |_, _| false);
    Congruence::from_union_find(b.base(), &mut uf).check_additive(b)
}

/// Options for [`mu_with`].
#[derive(Clone, Copy, Debug)]
pub struct MuOptions {
    /// Number of one-pair extensions of μ tested for idempotent separation.
    pub samples: usize,
}

impl Default for MuOptions {
    fn default() -> Self {
        MuOptions {
            samples: DEFAULT_MU_SAMPLES,
        }
    }
}

/// The maximal idempotent-separating congruence:
/// `a μ b` iff `a⁻¹ea = b⁻¹eb` for every idempotent `e`.
pub fn mu(s: &InverseSemigroup) -> Result<Congruence> {
    mu_with(s, MuOptions::default())
}

pub fn mu_with(s: &InverseSemigroup, opts: MuOptions) -> Result<Congruence> {
    let es = s.idempotents();
    let mut by_signature: HashMap<Vec<usize>, usize> = HashMap::new();
    let labels: Vec<usize> = s
        .elements()
        .map(|a| {
            let sig: Vec<usize> = es.iter().map(|&e| s.dom(s.mul(e, a))).collect();
            let next = by_signature.len();
            *by_signature.entry(sig).or_insert(next)
        })
        .collect();
    let m = Congruence::from_labels(s, &labels)?;
    if !m.is_semigroup_congruence || !m.is_idempotent_separating {
        return Err(violation(
            "mu congruence",
            "μ is not an idempotent-separating congruence",
        ));
    }
    check_mu_maximal(s, &m, opts.samples)?;
    let centralizer = s.idempotent_centralizer();
    if m.is_identity() != (centralizer.len() == es.len()) {
        return Err(violation(
            "fundamental iff Z(E) = E",
            format!("μ has {} classes but |Z(E)| = {}", m.num_classes(), centralizer.len()),
        ));
    }
    Ok(m)
}

/// Adds one pair of μ-unrelated elements at a time and checks that the
/// generated congruence identifies two idempotents.
fn check_mu_maximal(s: &InverseSemigroup, m: &Congruence, samples: usize) -> Result<()> {
    let n = s.size();
    let candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !m.related(a, b))
        .collect();
    if candidates.is_empty() || samples == 0 {
        return Ok(());
    }
    let stride = candidates.len().div_ceil(samples);
    let closure = Closure::semigroup(s);
    for &(a, b) in candidates.iter().step_by(stride) {
        let mut uf = closure.fresh();
        let mut idem: Vec<Option<usize>> = (0..n).map(|x| s.is_idempotent(x).then_some(x)).collect();
        for class in m.classes() {
            for &x in &class[1..] {
                uf.union(class[0], x);
            }
            let root = uf.find_mut(class[0]);
            idem[root] = class.iter().copied().find(|&x| s.is_idempotent(x));
        }
        let merged_idempotents = closure.run(&mut uf, &[(a, b)], |_, m| {
            let (ix, iy) = (idem[m.roots.0], idem[m.roots.1]);
            if ix.is_some() && iy.is_some() {
                return true;
            }
            idem[m.root] = ix.or(iy);
            false
        });
        if !merged_idempotents {
            return Err(violation(
                "maximality of mu",
                format!("adding ({a}, {b}) to μ still separates idempotents"),
            ));
        }
    }
    Ok(())
}

/// A subset closed under multiplication by `S` on both sides and under
/// binary orthogonal joins.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdditiveIdeal {
    elements: Vec<usize>,
}

impl AdditiveIdeal {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// `d(I)`: the idempotents `d(s)` for `s ∈ I`.
    pub fn domains(&self, s: &InverseSemigroup) -> Vec<usize> {
        let mut d: Vec<usize> = self.elements.iter().map(|&a| s.dom(a)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn from_bits(bits: &FixedBitSet) -> Self {
        AdditiveIdeal {
            elements: bits.ones().collect(),
        }
    }
}

/// The additive ideal generated by `gens` (and zero).
pub fn ideal_generated(b: &BooleanInverseSemigroup, gens: &[usize]) -> AdditiveIdeal {
    AdditiveIdeal::from_bits(&ideal_closure(b, gens))
}

fn ideal_closure(b: &BooleanInverseSemigroup, gens: &[usize]) -> FixedBitSet {
    let s = b.base();
    let n = s.size();
    let mut bits = FixedBitSet::with_capacity(n);
    let mut members = Vec::new();
    let add = |x: usize, bits: &mut FixedBitSet, members: &mut Vec<usize>| {
        if !bits.put(x) {
            members.push(x);
        }
    };
    add(ZERO, &mut bits, &mut members);
    // S¹ X S¹ first, then orthogonal joins; the latter keep it an ideal
    // since multiplication distributes over ⊕
    for &g in gens {
        for l in std::iter::once(g).chain(s.elements().map(|x| s.mul(x, g))) {
            add(l, &mut bits, &mut members);
            for r in s.elements() {
                add(s.mul(l, r), &mut bits, &mut members);
            }
        }
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for j in 0..i {
            let y = members[j];
            if s.orthogonal(x, y) {
                let j = b.join(x, y).expect("orthogonal elements have a join");
                add(j, &mut bits, &mut members);
            }
        }
        i += 1;
    }
    bits
}

/// All additive ideals, enumerated directly and through conjugation-closed
/// ideals of `E(S)`; the two lists are checked to agree via `I ↦ d(I)`.
pub fn additive_ideals(b: &BooleanInverseSemigroup) -> Result<Vec<AdditiveIdeal>> {
    let direct = additive_ideals_direct(b);
    let via_idempotents = additive_ideals_from_idempotents(b);
    let s = b.base();
    for (ideal, j) in &via_idempotents {
        if ideal.domains(s) != *j {
            return Err(violation(
                "d(I(J)) = J",
                format!("d of the ideal over {j:?} is {:?}", ideal.domains(s)),
            ));
        }
    }
    let mut from_e: Vec<AdditiveIdeal> = via_idempotents.into_iter().map(|(i, _)| i).collect();
    from_e.sort();
    if direct != from_e {
        return Err(violation(
            "additive ideals correspond to conjugation-closed ideals of E",
            format!("{} ideals found directly, {} from E(S)", direct.len(), from_e.len()),
        ));
    }
    Ok(direct)
}

/// Breadth-first search over the ideal lattice: each ideal is extended by
/// one element at a time.
fn additive_ideals_direct(b: &BooleanInverseSemigroup) -> Vec<AdditiveIdeal> {
    let n = b.size();
    let bottom = ideal_closure(b, &[]);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([bottom.ones().collect()]);
    let mut queue = vec![bottom];
    let mut i = 0;
    while i < queue.len() {
        let current = queue[i].clone();
        let gens: Vec<usize> = current.ones().collect();
        for x in 0..n {
            if current.contains(x) {
                continue;
            }
            let mut g = gens.clone();
            g.push(x);
            let next = ideal_closure(b, &g);
            if seen.insert(next.ones().collect()) {
                queue.push(next);
            }
        }
        i += 1;
    }
    let mut out: Vec<AdditiveIdeal> = queue.iter().map(AdditiveIdeal::from_bits).collect();
    out.sort();
    out
}

/// Join-closed ideals of the finite algebra `E(S)` are the principal ones
/// `e↓`; keep those closed under `f ↦ s f s⁻¹` and lift them to
/// `I(J) = {s : d(s) ∈ J}`.
fn additive_ideals_from_idempotents(b: &BooleanInverseSemigroup) -> Vec<(AdditiveIdeal, Vec<usize>)> {
    let s = b.base();
    let es = s.idempotents();
    let mut out = Vec::new();
    for &e in &es {
        let j: Vec<usize> = es.iter().copied().filter(|&f| s.leq(f, e)).collect();
        let conjugation_closed = s
            .elements()
            .all(|x| j.iter().all(|&f| j.contains(&s.product(&[x, f, s.inv(x)]))));
        if conjugation_closed {
            let elements = s.elements().filter(|&x| j.contains(&s.dom(x))).collect();
            out.push((AdditiveIdeal { elements }, j));
        }
    }
    out
}

/// Checks the additive-ideal axioms for an arbitrary subset.
pub fn is_additive_ideal(b: &BooleanInverseSemigroup, subset: &[usize]) -> bool {
    let s = b.base();
    let mut bits = FixedBitSet::with_capacity(s.size());
    for &x in subset {
        if x >= s.size() {
            return false;
        }
        bits.insert(x);
    }
    bits.contains(ZERO)
        && subset.iter().all(|&x| {
            s.elements()
                .all(|y| bits.contains(s.mul(x, y)) && bits.contains(s.mul(y, x)))
        })
        && subset.iter().all(|&x| {
            subset
                .iter()
                .all(|&y| !s.orthogonal(x, y) || b.join(x, y).is_ok_and(|j| bits.contains(j)))
        })
}

/// `ε_I`: the least additive congruence whose zero class contains `I`.
pub fn epsilon(b: &BooleanInverseSemigroup, ideal: &AdditiveIdeal) -> Result<Congruence> {
    if !is_additive_ideal(b, ideal.elements()) {
        return Err(Error::Invalid("subset is not an additive ideal".into()));
    }
    let pairs: Vec<(usize, usize)> = ideal.elements().iter().map(|&c| (c, ZERO)).collect();
    let eps = generated_additive_congruence(b, &pairs);
    if eps.zero_class() != ideal.elements() {
        return Err(violation(
            "zero class of epsilon is the ideal",
            format!("ideal {:?}, zero class {:?}", ideal.elements(), eps.zero_class()),
        ));
    }
    Ok(eps)
}

/// `S/σ` with its canonical projection. Class `i` of `σ` becomes element `i`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub semigroup: InverseSemigroup,
    pub projection: Vec<usize>,
}

pub fn quotient(s: &InverseSemigroup, sigma: &Congruence) -> Result<Quotient> {
    if sigma.class_map().len() != s.size() {
        return Err(Error::Invalid("congruence belongs to a different semigroup".into()));
    }
    if let Some(w) = congruence_witness(s, sigma.class_map(), sigma.classes()) {
        return Err(Error::NotCongruence(w));
    }
    let reps: Vec<usize> = sigma.classes().iter().map(|c| c[0]).collect();
    let labels = sigma
        .classes()
        .iter()
        .map(|c| {
            if c.len() == 1 {
                s.label(c[0]).to_string()
            } else {
                format!("[{}]", s.label(c[0]))
            }
        })
        .collect();
    let semigroup = InverseSemigroup::from_fn(
        reps.len(),
        |x, y| sigma.class_of(s.mul(reps[x], reps[y])),
        |x| sigma.class_of(s.inv(reps[x])),
        Some(labels),
    )?;
    Ok(Quotient {
        semigroup,
        projection: sigma.class_map().to_vec(),
    })
}

/// Quotient of a Boolean inverse semigroup by an additive congruence,
/// certified Boolean with an additive projection.
pub fn additive_quotient(
    b: &BooleanInverseSemigroup,
    sigma: &Congruence,
) -> Result<(BooleanInverseSemigroup, Vec<usize>)> {
    let q = quotient(b.base(), sigma)?;
    let sigma = sigma.clone().check_additive(b);
    if sigma.is_additive != Some(true) {
        return Err(Error::NotCongruence("congruence is not additive".into()));
    }
    let qb = check_bis(&q.semigroup)
        .map_err(|f| violation("quotient by an additive congruence is Boolean", f.to_string()))?;
    let report = b.check_additive(&qb, &q.projection)?;
    if !report.additive {
        return Err(violation(
            "canonical projection is additive",
            format!("join of {:?} not preserved", report.witness),
        ));
    }
    Ok((qb, q.projection))
}

/// Additive congruences of a small Boolean inverse semigroup: the principal
/// ones, closed under joins.
pub fn additive_congruences(b: &BooleanInverseSemigroup, cap: usize) -> Result<Vec<Congruence>> {
    let s = b.base();
    let n = s.size();
    if n > cap {
        return Err(Error::SizeBudgetExceeded { cap });
    }
    let closure = Closure::additive(b);
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut record = |labels: Vec<usize>, found: &mut Vec<Vec<usize>>| -> Result<()> {
        if !seen.contains_key(&labels) {
            if found.len() >= MAX_ENUMERATED_CONGRUENCES {
                return Err(Error::SizeBudgetExceeded {
                    cap: MAX_ENUMERATED_CONGRUENCES,
                });
            }
            seen.insert(labels.clone(), found.len());
            found.push(labels);
        }
        Ok(())
    };
    record((0..n).collect(), &mut found)?;
    for a in 0..n {
        for c in a + 1..n {
            let mut uf = closure.fresh();
            closure.run(&mut uf, &[(a, c)], |_, _| false);
            record(canonical(&mut uf, n), &mut found)?;
        }
    }
    let principal = found.len();
    let mut i = 1;
    while i < found.len() {
        for j in 1..principal.min(i) {
            let mut uf = closure.fresh();
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| [(x, found[i][x]), (x, found[j][x])]).collect();
            closure.run(&mut uf, &pairs, |_, _| false);
            record(canonical(&mut uf, n), &mut found)?;
        }
        i += 1;
    }
    found
        .iter()
        .map(|labels| Congruence::from_labels(s, labels).map(|c| c.check_additive(b)))
        .collect()
}

/// Class labels given by the least element of each class.
fn canonical(uf: &mut UnionFind<usize>, n: usize) -> Vec<usize> {
    let mut least = vec![usize::MAX; n];
    (0..n)
        .map(|a| {
            let r = uf.find_mut(a);
            if least[r] == usize::MAX {
                least[r] = a;
            }
            least[r]
        })
        .collect()
}

/// Checks that `S/ε_I → S/σ` is idempotent-separating, where `I` is the
/// zero class of the additive congruence `σ`.
pub fn check_factorization(b: &BooleanInverseSemigroup, sigma: &Congruence) -> Result<()> {
    let s = b.base();
    let ideal = AdditiveIdeal {
        elements: sigma.zero_class().to_vec(),
    };
    let eps = epsilon(b, &ideal)?;
    if !eps.is_finer_than(sigma) {
        return Err(violation("epsilon is below sigma", "ε_I relates elements σ separates"));
    }
    let es = s.idempotents();
    for &e in &es {
        for &f in &es {
            if sigma.related(e, f) && !eps.related(e, f) {
                return Err(violation(
                    "factorization through epsilon",
                    format!("idempotents {e} and {f} are σ-related but not ε_I-related"),
                ));
            }
        }
    }
    Ok(())
}

/// The three simplicity flags of a Boolean inverse semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub fundamental: bool,
    pub additively_0_simple: bool,
    /// Computed from the additive congruences; `None` above the size cap.
    pub simple: Option<bool>,
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            cap: DEFAULT_CONGRUENCE_CAP,
        }
    }
}

pub fn classify(b: &BooleanInverseSemigroup) -> Result<Classification> {
    classify_with(b, ClassifyOptions::default())
}

pub fn classify_with(b: &BooleanInverseSemigroup, opts: ClassifyOptions) -> Result<Classification> {
    let s = b.base();
    let fundamental = mu(s)?.is_identity();
    let ideals = additive_ideals(b)?;
    let additively_0_simple = ideals.len() <= 2;
    let simple = (s.size() <= opts.cap).then(|| is_congruence_free(b));
    if let Some(simple) = simple {
        if simple != (fundamental && additively_0_simple) {
            return Err(violation(
                "simple iff fundamental and additively 0-simple",
                format!("simple = {simple}, fundamental = {fundamental}, additively 0-simple = {additively_0_simple}"),
            ));
        }
    }
    Ok(Classification {
        fundamental,
        additively_0_simple,
        simple,
    })
}

/// Whether every additive congruence is the identity or universal, i.e.
/// every principal additive congruence `Θ(a, c)` with `a ≠ c` is universal.
fn is_congruence_free(b: &BooleanInverseSemigroup) -> bool {
    let s = b.base();
    let n = s.size();
    if n <= 2 {
        return true;
    }
    // Θ(x, 0) is universal exactly when x generates everything as an ideal,
    // and x generates the same ideal as d(x)
    let mut full_idempotent = vec![false; n];
    for e in s.idempotents() {
        full_idempotent[e] = e != ZERO && ideal_closure(b, &[e]).count_ones(..) == n;
    }
    let full: Vec<bool> = s.elements().map(|x| full_idempotent[s.dom(x)]).collect();
    let closure = Closure::additive(b);
    let diff = |x: usize, y: usize| closure.skew.as_ref().expect("additive closure").0[x * n + y] as usize;
    // x ~ y forces x ⊘ y ~ y ⊘ y = 0, and the same for d(x) ~ d(y) and
    // r(x) ~ r(y)
    let forces_full = |x: usize, y: usize| {
        [(x, y), (s.dom(x), s.dom(y)), (s.ran(x), s.ran(y))]
            .into_iter()
            .any(|(p, q)| full[diff(p, q)] || full[diff(q, p)])
    };
    let mut known_universal = FixedBitSet::with_capacity(n * n);
    for a in 0..n {
        for c in a + 1..n {
            if forces_full(a, c) {
                known_universal.insert(a * n + c);
                known_universal.insert(c * n + a);
                continue;
            }
            let mut uf = closure.fresh();
            let mut has_full = full.clone();
            let mut classes = n;
            let universal = closure.run(&mut uf, &[(a, c)], |uf, m| {
                let (x, y) = m.pair;
                classes -= 1;
                has_full[m.root] = has_full[m.roots.0] || has_full[m.roots.1];
                classes == 1 || has_full[uf.find_mut(ZERO)] || forces_full(x, y) || known_universal.contains(x * n + y)
            });
            if !universal {
                return false;
            }
            known_universal.insert(a * n + c);
            known_universal.insert(c * n + a);
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean_algebra, chain_semilattice, direct_sum, example_non_join, group_with_zero};
    use crate::group::FiniteGroup;
    use crate::pperm::symmetric_inverse_semigroup;

    fn z2() -> InverseSemigroup {
        group_with_zero(&FiniteGroup::cyclic(2))
    }

    #[test]
    fn mu_examples() {
        assert!(mu(&symmetric_inverse_semigroup(3)).unwrap().is_identity());
        assert!(mu(&chain_semilattice(4)).unwrap().is_identity());
        let m = mu(&example_non_join()).unwrap();
        assert_eq!(m.classes(), &[vec![0], vec![1], vec![2], vec![3, 4]]);
        let m = mu(&z2()).unwrap();
        assert_eq!(m.num_classes(), 2);
    }

    #[test]
    fn quotient_of_example_by_mu_is_boolean_algebra() {
        let s = example_non_join();
        let q = quotient(&s, &mu(&s).unwrap()).unwrap();
        assert_eq!(q.semigroup.size(), 4);
        assert!(crate::morphism::find_isomorphism(&q.semigroup, &boolean_algebra(2)).is_some());
        assert!(check_bis(&q.semigroup).is_ok());
    }

    #[test]
    fn trivial_quotients() {
        let s = symmetric_inverse_semigroup(2);
        let q = quotient(&s, &Congruence::identity(&s)).unwrap();
        assert!(crate::morphism::is_isomorphism(&s, &q.semigroup, &q.projection));
        let q = quotient(&s, &Congruence::universal(&s)).unwrap();
        assert_eq!(q.semigroup.size(), 1);
    }

    #[test]
    fn non_congruence_is_rejected() {
        let s = symmetric_inverse_semigroup(2);
        // identify id₁ with id₂ only
        let (a, b) = (s.find_label("1-").unwrap(), s.find_label("-2").unwrap());
        let mut labels: Vec<usize> = s.elements().collect();
        labels[b] = a;
        let sigma = Congruence::from_labels(&s, &labels).unwrap();
        assert!(!sigma.is_semigroup_congruence);
        assert!(matches!(quotient(&s, &sigma), Err(Error::NotCongruence(_))));
    }

    #[test]
    fn additive_ideal_examples() {
        let i2 = check_bis(&symmetric_inverse_semigroup(2)).unwrap();
        assert_eq!(additive_ideals(&i2).unwrap().len(), 2);
        let z = check_bis(&z2()).unwrap();
        assert_eq!(additive_ideals(&z).unwrap().len(), 2);
        let sum = check_bis(&direct_sum(&[&symmetric_inverse_semigroup(2), &z2()])).unwrap();
        let ideals = additive_ideals(&sum).unwrap();
        let mut sizes: Vec<usize> = ideals.iter().map(|i| i.len()).collect();
        sizes.sort_unstable();
        assert_eq!(ideals.len(), 4);
        assert!(sizes == [1, 3, 7, 21]);
    }

    #[test]
    fn epsilon_examples() {
        let s = direct_sum(&[&symmetric_inverse_semigroup(2), &z2()]);
        let b = check_bis(&s).unwrap();
        let ideals = additive_ideals(&b).unwrap();
        let bottom = ideals.iter().find(|i| i.len() == 1).unwrap();
        assert!(epsilon(&b, bottom).unwrap().is_identity());
        let top = ideals.iter().find(|i| i.len() == 21).unwrap();
        assert!(epsilon(&b, top).unwrap().is_universal());
        let i2_part = ideals.iter().find(|i| i.len() == 7).unwrap();
        let eps = epsilon(&b, i2_part).unwrap();
        let (q, _) = additive_quotient(&b, &eps).unwrap();
        assert_eq!(q.size(), 3);
        assert!(crate::morphism::find_isomorphism(q.base(), &z2()).is_some());
        // I ↦ ε_I is injective
        let epsilons: HashSet<Vec<usize>> = ideals
            .iter()
            .map(|i| epsilon(&b, i).unwrap().class_map().to_vec())
            .collect();
        assert_eq!(epsilons.len(), ideals.len());
    }

    #[test]
    fn classify_examples() {
        for n in 1..=3 {
            let b = check_bis(&symmetric_inverse_semigroup(n)).unwrap();
            let c = classify(&b).unwrap();
            assert_eq!(
                (c.fundamental, c.additively_0_simple, c.simple),
                (true, true, Some(true)),
                "I_{n}"
            );
        }
        let c = classify(&check_bis(&z2()).unwrap()).unwrap();
        assert_eq!(
            (c.fundamental, c.additively_0_simple, c.simple),
            (false, true, Some(false))
        );
        let i2 = symmetric_inverse_semigroup(2);
        let c = classify(&check_bis(&direct_sum(&[&i2, &i2])).unwrap()).unwrap();
        assert!(c.fundamental && !c.additively_0_simple);
        assert_eq!(c.simple, Some(false));
    }

    #[test]
    fn additive_congruences_and_factorization() {
        let s = direct_sum(&[&symmetric_inverse_semigroup(2), &z2()]);
        let b = check_bis(&s).unwrap();
        let all = additive_congruences(&b, DEFAULT_CONGRUENCE_CAP).unwrap();
        // identity, μ (collapsing Z₂), both ideals' ε, their joins, universal
        assert!(all.len() >= 4);
        for sigma in &all {
            assert_eq!(sigma.is_additive, Some(true));
            check_factorization(&b, sigma).unwrap();
            assert!(additive_quotient(&b, sigma).is_ok());
        }
        assert!(all.iter().any(|c| c.is_universal()));
        assert!(all.iter().any(|c| c.is_identity()));
    }

    #[test]
    fn mu_contains_idempotent_separating_congruences() {
        let s = direct_sum(&[&z2(), &z2()]);
        let m = mu(&s).unwrap();
        let sigma = generated_congruence(&s, &[(1, 2)]);
        assert!(sigma.is_idempotent_separating);
        assert!(sigma.is_finer_than(&m));
    }
}
