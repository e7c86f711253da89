//! Partial commutative monoids, `Int(S)`, the type monoid `Typ(S)` and a
//! word-problem procedure for finitely presented commutative monoids.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::boolean::BooleanInverseSemigroup;
use crate::error::{violation, Error, Result};
use crate::semigroup::{InverseSemigroup, ZERO};

/// Element of `ℕ^k`.
pub type NVec = Vec<u32>;

/// A finite partial commutative monoid with zero at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialCommutativeMonoid {
    labels: Vec<String>,
    add: Vec<Option<usize>>,
}

impl PartialCommutativeMonoid {
    /// `add[p * n + q]` is `p ⊕ q` when defined. Axioms are not checked
    /// here; see [`check_pcm`].
    pub fn new(labels: Vec<String>, add: Vec<Option<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || add.len() != n * n || add.iter().flatten().any(|&r| r >= n) {
            return Err(Error::Invalid("partial addition table has the wrong shape".into()));
        }
        Ok(PartialCommutativeMonoid { labels, add })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn add(&self, p: usize, q: usize) -> Option<usize> {
        self.add[p * self.size() + q]
    }

    /// Every sum is defined.
    pub fn is_total(&self) -> bool {
        self.add.iter().all(Option::is_some)
    }

    /// All `(q, r)` with `q ⊕ r = p`.
    pub fn splits(&self, p: usize) -> Vec<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|q| (0..n).map(move |r| (q, r)))
            .filter(|&(q, r)| self.add(q, r) == Some(p))
            .collect()
    }
}

impl fmt::Display for PartialCommutativeMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        writeln!(f, "{{{}}}", self.labels.join(", "))?;
        for p in 1..n {
            for q in p..n {
                match self.add(p, q) {
                    Some(r) => writeln!(f, "{} ⊕ {} = {}", self.labels[p], self.labels[q], self.labels[r])?,
                    None => writeln!(f, "{} ⊕ {} undefined", self.labels[p], self.labels[q])?,
                }
            }
        }
        Ok(())
    }
}

/// Result of [`check_pcm`]. Each field is `None` when the axiom holds and
/// otherwise a witness tuple of element indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PcmReport {
    pub assoc: Option<Vec<usize>>,
    pub com: Option<Vec<usize>>,
    pub zero: Option<Vec<usize>>,
    pub conical: Option<Vec<usize>>,
    pub cancel: Option<Vec<usize>>,
    /// `a ⊕ b = c ⊕ d` without a refinement: `[a, b, c, d]`.
    pub refinement: Option<Vec<usize>>,
}

impl PcmReport {
    /// Assoc, Com, Zero hold.
    pub fn is_pcm(&self) -> bool {
        self.assoc.is_none() && self.com.is_none() && self.zero.is_none()
    }

    /// A conical partial refinement monoid.
    pub fn is_conical_refinement(&self) -> bool {
        self.is_pcm() && self.conical.is_none() && self.refinement.is_none()
    }
}

pub fn check_pcm(p: &PartialCommutativeMonoid) -> PcmReport {
    let n = p.size();
    let mut report = PcmReport::default();
    'assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = p.add(a, b).and_then(|ab| p.add(ab, c));
                let right = p.add(b, c).and_then(|bc| p.add(a, bc));
                if left != right {
                    report.assoc = Some(vec![a, b, c]);
                    break 'assoc;
                }
            }
        }
    }
    report.com = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| p.add(a, b) != p.add(b, a))
        .map(|(a, b)| vec![a, b]);
    report.zero = (0..n).find(|&a| p.add(ZERO, a) != Some(a)).map(|a| vec![a]);
    report.conical = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| p.add(a, b) == Some(ZERO) && (a != ZERO || b != ZERO))
        .map(|(a, b)| vec![a, b]);
    // a ⊕ b = a ⊕ c with b ≠ c
    'cancel: for a in 0..n {
        for b in 0..n {
            for c in (0..n).filter(|&c| c != b) {
                if p.add(a, b).is_some() && p.add(a, b) == p.add(a, c) {
                    report.cancel = Some(vec![a, b, c]);
                    break 'cancel;
                }
            }
        }
    }
    let splits: Vec<Vec<(usize, usize)>> = (0..n).map(|x| p.splits(x)).collect();
    'refine: for x in 0..n {
        for &(a, b) in &splits[x] {
            for &(c, d) in &splits[x] {
                let refined = splits[a].iter().any(|&(a11, a12)| {
                    splits[b]
                        .iter()
                        .any(|&(a21, a22)| p.add(a11, a21) == Some(c) && p.add(a12, a22) == Some(d))
                });
                if !refined {
                    report.refinement = Some(vec![a, b, c, d]);
                    break 'refine;
                }
            }
        }
    }
    report
}

/// `Int(S)`: the `D`-classes of idempotents under orthogonal addition.
#[derive(Clone, Debug)]
pub struct IntMonoid {
    pub pcm: PartialCommutativeMonoid,
    /// Idempotents of each class, sorted; class 0 is `{0}`.
    pub classes: Vec<Vec<usize>>,
    /// Class of each idempotent, `None` for other elements.
    pub class_of: Vec<Option<usize>>,
}

impl IntMonoid {
    pub fn class_of_idempotent(&self, e: usize) -> usize {
        self.class_of[e].expect("class of an idempotent")
    }
}

/// Classes are ordered by the number of idempotents below a member, then by
/// least member, so that `Int(I_n)` lists ranks in increasing order.
pub fn int_monoid(b: &BooleanInverseSemigroup) -> Result<IntMonoid> {
    let s = b.base();
    let mut green = s.green_data();
    let k = green.classes.len();
    let lattice = b.lattice();
    let es = lattice.idempotents();
    let height = |e: usize| es.iter().filter(|&&f| s.leq(f, e)).count();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| (height(green.classes[c][0]), green.classes[c][0]));
    let mut rank_of = vec![0; k];
    for (new, &old) in order.iter().enumerate() {
        rank_of[old] = new;
    }
    green.classes = order.iter().map(|&c| green.classes[c].clone()).collect();
    for c in green.class_of.iter_mut().flatten() {
        *c = rank_of[*c];
    }
    let mut add: Vec<Option<usize>> = vec![None; k * k];
    for &e in es {
        for &f in es {
            if s.mul(e, f) != ZERO {
                continue;
            }
            let (ce, cf) = (green.class_of[e].unwrap(), green.class_of[f].unwrap());
            let sum = green.class_of[lattice.join(e, f)].unwrap();
            match add[ce * k + cf] {
                None => add[ce * k + cf] = Some(sum),
                Some(prev) if prev != sum => {
                    return Err(violation(
                        "Int(S) addition is well defined",
                        format!("[{}] ⊕ [{}]", s.label(e), s.label(f)),
                    ))
                }
                _ => {}
            }
        }
    }
    let labels = green
        .classes
        .iter()
        .map(|c| {
            if c[0] == ZERO {
                "0".to_string()
            } else {
                format!("[{}]", s.label(c[0]))
            }
        })
        .collect();
    let pcm = PartialCommutativeMonoid::new(labels, add)?;
    let report = check_pcm(&pcm);
    if !report.is_conical_refinement() {
        return Err(violation(
            "Int(S) is a conical partial refinement monoid",
            format!("{report:?}"),
        ));
    }
    Ok(IntMonoid {
        pcm,
        classes: green.classes,
        class_of: green.class_of,
    })
}

/// Every pair of `Int` classes has orthogonal representatives.
pub fn orthogonally_separating(b: &BooleanInverseSemigroup) -> Result<bool> {
    Ok(int_monoid(b)?.pcm.is_total())
}

/// A commutative monoid `⟨g_1, …, g_k | l_i = r_i⟩` with relations as
/// `ℕ`-vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    labels: Vec<String>,
    relations: Vec<(NVec, NVec)>,
}

impl MonoidPresentation {
    pub fn new(labels: Vec<String>, relations: Vec<(NVec, NVec)>) -> Result<Self> {
        let k = labels.len();
        for (l, r) in &relations {
            if l.len() != k || r.len() != k {
                return Err(Error::BadVector(format!("relation vectors must have length {k}")));
            }
            if l == r {
                return Err(Error::Invalid(format!("relation {l:?} = {r:?} is trivial")));
            }
        }
        Ok(MonoidPresentation { labels, relations })
    }

    pub fn free(labels: Vec<String>) -> Self {
        MonoidPresentation {
            labels,
            relations: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relations(&self) -> &[(NVec, NVec)] {
        &self.relations
    }

    pub fn unit(&self, i: usize) -> NVec {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn zero(&self) -> NVec {
        vec![0; self.rank()]
    }

    pub fn check_vector(&self, v: &[u32]) -> Result<()> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::BadVector(format!(
                "expected {} components, got {}",
                self.rank(),
                v.len()
            )))
        }
    }

    /// Renders `v` as a sum of generator labels.
    pub fn render(&self, v: &[u32]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(i, &c)| {
                if c == 1 {
                    self.labels[i].clone()
                } else {
                    format!("{c}{}", self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for MonoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}", self.labels.join(", "))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self
                .relations
                .iter()
                .map(|(l, r)| format!("{} = {}", self.render(l), self.render(r)))
                .collect();
            write!(f, " | {}", rels.join(", "))?;
        }
        write!(f, "⟩")
    }
}

/// Generators are the nonzero elements of `p`; one relation
/// `g_a + g_b = g_c` for each defined sum `a ⊕ b = c` with `a, b ≠ 0`.
pub fn universal_envelope(p: &PartialCommutativeMonoid) -> Result<MonoidPresentation> {
    if let Some(w) = check_pcm(p).conical {
        return Err(Error::Invalid(format!("monoid is not conical: {w:?}")));
    }
    let n = p.size();
    let k = n - 1;
    let mut relations = Vec::new();
    for a in 1..n {
        for b in a..n {
            if let Some(c) = p.add(a, b) {
                let mut l = vec![0; k];
                l[a - 1] += 1;
                l[b - 1] += 1;
                let mut r = vec![0; k];
                r[c - 1] += 1;
                relations.push((l, r));
            }
        }
    }
    MonoidPresentation::new(p.labels[1..].to_vec(), relations)
}

/// `Typ(S)` together with `Int(S)`; generator `i` is the class `i + 1`.
#[derive(Clone, Debug)]
pub struct TypeMonoid {
    pub int: IntMonoid,
    pub presentation: MonoidPresentation,
}

impl TypeMonoid {
    /// Image of an `Int` class in `ℕ^k`.
    pub fn image(&self, class: usize) -> NVec {
        let mut v = self.presentation.zero();
        if class != ZERO {
            v[class - 1] = 1;
        }
        v
    }
}

pub fn typ(b: &BooleanInverseSemigroup) -> Result<TypeMonoid> {
    let int = int_monoid(b)?;
    let presentation = universal_envelope(&int.pcm)?;
    Ok(TypeMonoid { int, presentation })
}

/// Evidence that a presentation is free: the surviving generators and the
/// image of every generator in `ℕ^basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCertificate {
    pub basis: Vec<usize>,
    pub images: Vec<NVec>,
}

impl FreeCertificate {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Image of an arbitrary vector.
    pub fn map(&self, v: &[u32]) -> NVec {
        let mut out = vec![0; self.rank()];
        for (i, &c) in v.iter().enumerate() {
            for (o, &x) in out.iter_mut().zip(&self.images[i]) {
                *o += c * x;
            }
        }
        out
    }
}

/// Tietze elimination: while some relation has a side that is a single
/// generator not occurring on the other side, substitute it away. The
/// presentation is certified free when no relations remain.
pub fn certify_free(pres: &MonoidPresentation) -> Option<FreeCertificate> {
    let k = pres.rank();
    let mut relations: Vec<(NVec, NVec)> = pres.relations.clone();
    // images[g] in terms of all k generators; eliminated ones get zero weight
    let mut images: Vec<NVec> = (0..k).map(|i| pres.unit(i)).collect();
    let mut alive = vec![true; k];
    let single = |v: &NVec| -> Option<usize> {
        let mut it = v.iter().enumerate().filter(|&(_, &c)| c > 0);
        match (it.next(), it.next()) {
            (Some((i, &1)), None) => Some(i),
            _ => None,
        }
    };
    loop {
        relations.retain(|(l, r)| l != r);
        if relations.is_empty() {
            break;
        }
        let pick = relations.iter().enumerate().find_map(|(ri, (l, r))| {
            let cands = [(single(l), r), (single(r), l)];
            cands
                .iter()
                .filter_map(|&(g, other)| g.filter(|&g| other[g] == 0).map(|g| (g, other.clone())))
                .max_by_key(|(g, _)| *g)
                .map(|(g, other)| (ri, g, other))
        });
        let (ri, g, value) = pick?;
        relations.remove(ri);
        alive[g] = false;
        let subst = |v: &mut NVec| {
            let c = v[g];
            if c > 0 {
                v[g] = 0;
                for (x, &y) in v.iter_mut().zip(&value) {
                    *x += c * y;
                }
            }
        };
        for (l, r) in &mut relations {
            subst(l);
            subst(r);
        }
        for img in &mut images {
            subst(img);
        }
    }
    let basis: Vec<usize> = (0..k).filter(|&g| alive[g]).collect();
    let images = images
        .into_iter()
        .map(|v| basis.iter().map(|&g| v[g]).collect())
        .collect();
    Some(FreeCertificate { basis, images })
}

/// Limits for [`decide_equal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordBudget {
    pub max_vectors: usize,
    pub max_component: u32,
}

impl Default for WordBudget {
    fn default() -> Self {
        WordBudget {
            max_vectors: 100_000,
            max_component: 64,
        }
    }
}

/// One application of relation `relation`, left-to-right when `forward`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub relation: usize,
    pub forward: bool,
    pub result: NVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordVerdict {
    Equal {
        trace: Vec<RewriteStep>,
    },
    /// The full class of `u`; closed under every rewrite and free of `v`.
    Distinct {
        class: Vec<NVec>,
    },
    Unknown {
        explored: usize,
    },
}

impl WordVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, WordVerdict::Equal { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, WordVerdict::Distinct { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, WordVerdict::Unknown { .. })
    }
}

fn apply(x: &[u32], from: &[u32], to: &[u32]) -> Option<NVec> {
    if x.iter().zip(from).all(|(a, b)| a >= b) {
        Some(x.iter().zip(from).zip(to).map(|((a, b), c)| a - b + c).collect())
    } else {
        None
    }
}

fn sides(pres: &MonoidPresentation, relation: usize, forward: bool) -> (&NVec, &NVec) {
    let (l, r) = &pres.relations[relation];
    if forward {
        (l, r)
    } else {
        (r, l)
    }
}

fn neighbours<'a>(pres: &'a MonoidPresentation, x: &'a [u32]) -> impl Iterator<Item = RewriteStep> + 'a {
    (0..pres.relations.len())
        .flat_map(|i| [(i, true), (i, false)])
        .filter_map(move |(i, fwd)| {
            let (from, to) = sides(pres, i, fwd);
            apply(x, from, to).map(|result| RewriteStep {
                relation: i,
                forward: fwd,
                result,
            })
        })
}

/// Checks that `trace` rewrites `u` into `v`.
pub fn replay(pres: &MonoidPresentation, u: &[u32], v: &[u32], trace: &[RewriteStep]) -> bool {
    let mut x = u.to_vec();
    for step in trace {
        if step.relation >= pres.relations.len() {
            return false;
        }
        let (from, to) = sides(pres, step.relation, step.forward);
        match apply(&x, from, to) {
            Some(y) if y == step.result => x = y,
            _ => return false,
        }
    }
    x == v
}

/// Checks that `class` contains `u`, not `v`, and is closed under every
/// rewrite.
pub fn verify_distinct(pres: &MonoidPresentation, u: &[u32], v: &[u32], class: &[NVec]) -> bool {
    let set: HashSet<&[u32]> = class.iter().map(Vec::as_slice).collect();
    set.contains(u)
        && !set.contains(v)
        && class
            .iter()
            .all(|x| neighbours(pres, x).all(|s| set.contains(s.result.as_slice())))
}

/// Enumerates the class of `u`, stopping early at `target`. Returns the
/// visited vectors with BFS parents and whether the budget cut the search.
struct Bfs {
    order: Vec<NVec>,
    parent: HashMap<NVec, Option<(NVec, usize, bool)>>,
    truncated: bool,
}

fn bfs(pres: &MonoidPresentation, u: &[u32], target: Option<&[u32]>, budget: WordBudget) -> Bfs {
    let mut parent: HashMap<NVec, Option<(NVec, usize, bool)>> = HashMap::new();
    let mut order = vec![u.to_vec()];
    let mut queue = VecDeque::from([u.to_vec()]);
    parent.insert(u.to_vec(), None);
    let mut truncated = false;
    if target == Some(u) {
        return Bfs {
            order,
            parent,
            truncated,
        };
    }
    while let Some(x) = queue.pop_front() {
        for step in neighbours(pres, &x) {
            if parent.contains_key(&step.result) {
                continue;
            }
            if step.result.iter().any(|&c| c > budget.max_component) || parent.len() >= budget.max_vectors {
                truncated = true;
                continue;
            }
            parent.insert(step.result.clone(), Some((x.clone(), step.relation, step.forward)));
            order.push(step.result.clone());
            if target == Some(step.result.as_slice()) {
                return Bfs {
                    order,
                    parent,
                    truncated,
                };
            }
            queue.push_back(step.result);
        }
    }
    Bfs {
        order,
        parent,
        truncated,
    }
}

fn trace_to(parent: &HashMap<NVec, Option<(NVec, usize, bool)>>, v: &[u32]) -> Vec<RewriteStep> {
    let mut steps = Vec::new();
    let mut x = v.to_vec();
    while let Some(Some((prev, relation, forward))) = parent.get(&x) {
        steps.push(RewriteStep {
            relation: *relation,
            forward: *forward,
            result: x.clone(),
        });
        x = prev.clone();
    }
    steps.reverse();
    steps
}

/// Full class of `u`, or `None` when the budget is hit.
pub fn saturated_class(pres: &MonoidPresentation, u: &[u32], budget: WordBudget) -> Option<Vec<NVec>> {
    let b = bfs(pres, u, None, budget);
    (!b.truncated).then_some(b.order)
}

/// A positive integer weight making every relation non-balanced, so each
/// relation can be oriented to strictly decrease weight.
pub fn find_grading(pres: &MonoidPresentation) -> Option<Vec<u64>> {
    let k = pres.rank();
    let ok = |w: &[u64]| {
        pres.relations.iter().all(|(l, r)| {
            let wl: u64 = l.iter().zip(w).map(|(&a, &b)| a as u64 * b).sum();
            let wr: u64 = r.iter().zip(w).map(|(&a, &b)| a as u64 * b).sum();
            wl != wr
        })
    };
    let mut candidates: Vec<Vec<u64>> = vec![vec![1; k], (1..=k as u64).collect(), (1..=k as u64).rev().collect()];
    if k < 20 {
        candidates.push((0..k).map(|i| 1u64 << i).collect());
        candidates.push((0..k).map(|i| 1u64 << (k - 1 - i)).collect());
    }
    candidates.into_iter().find(|w| ok(w))
}

fn normal_form(pres: &MonoidPresentation, u: &[u32], w: &[u64]) -> (NVec, Vec<RewriteStep>) {
    let weight = |v: &[u32]| -> u64 { v.iter().zip(w).map(|(&a, &b)| a as u64 * b).sum() };
    let oriented: Vec<(usize, bool)> = pres
        .relations
        .iter()
        .enumerate()
        .map(|(i, (l, r))| (i, weight(l) > weight(r)))
        .collect();
    let mut x = u.to_vec();
    let mut trace = Vec::new();
    'outer: loop {
        for &(i, fwd) in &oriented {
            let (from, to) = sides(pres, i, fwd);
            if let Some(y) = apply(&x, from, to) {
                trace.push(RewriteStep {
                    relation: i,
                    forward: fwd,
                    result: y.clone(),
                });
                x = y;
                continue 'outer;
            }
        }
        return (x, trace);
    }
}

/// Decides `u = v` in the presented monoid. A grading-based normal form is
/// tried first; it can only confirm equality. Otherwise a breadth-first
/// search over the class of `u` decides within `budget`.
pub fn decide_equal(pres: &MonoidPresentation, u: &[u32], v: &[u32], budget: WordBudget) -> Result<WordVerdict> {
    decide_equal_graded(pres, u, v, budget, find_grading(pres).as_deref())
}

/// As [`decide_equal`] with an explicit grading (or none).
pub fn decide_equal_graded(
    pres: &MonoidPresentation,
    u: &[u32],
    v: &[u32],
    budget: WordBudget,
    grading: Option<&[u64]>,
) -> Result<WordVerdict> {
    pres.check_vector(u)?;
    pres.check_vector(v)?;
    if let Some(w) = grading {
        if w.len() != pres.rank() || w.contains(&0) {
            return Err(Error::BadVector(
                "grading must be positive with one weight per generator".into(),
            ));
        }
        let (nu, tu) = normal_form(pres, u, w);
        let (nv, tv) = normal_form(pres, v, w);
        if nu == nv {
            let mut trace = tu;
            let mut back: Vec<NVec> = std::iter::once(v.to_vec())
                .chain(tv.iter().map(|s| s.result.clone()))
                .collect();
            back.pop();
            for (step, result) in tv.iter().rev().zip(back.into_iter().rev()) {
                trace.push(RewriteStep {
                    relation: step.relation,
                    forward: !step.forward,
                    result,
                });
            }
            return Ok(WordVerdict::Equal { trace });
        }
    }
    let b = bfs(pres, u, Some(v), budget);
    if b.parent.contains_key(v) {
        return Ok(WordVerdict::Equal {
            trace: trace_to(&b.parent, v),
        });
    }
    if b.truncated {
        return Ok(WordVerdict::Unknown {
            explored: b.order.len(),
        });
    }
    Ok(WordVerdict::Distinct { class: b.order })
}

/// Outcome of [`check_v_embedding`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VEmbeddingReport {
    pub injective: bool,
    /// `(p, y, z)` with `ι(p) = y + z` not lifting to `p = s ⊕ t`.
    pub failure: Option<(usize, NVec, NVec)>,
    pub class_sizes: Vec<usize>,
}

impl VEmbeddingReport {
    pub fn verified(&self) -> bool {
        self.injective && self.failure.is_none()
    }
}

/// Checks that `p ↦ g_p` is an injective `V`-homomorphism into the monoid
/// presented by `pres` (generator `i` is element `i + 1`). Every image class
/// must saturate within `budget`.
pub fn check_v_embedding(
    p: &PartialCommutativeMonoid,
    pres: &MonoidPresentation,
    budget: WordBudget,
) -> Result<VEmbeddingReport> {
    let n = p.size();
    if pres.rank() + 1 != n {
        return Err(Error::Invalid(
            "presentation must have one generator per nonzero element".into(),
        ));
    }
    let image = |x: usize| if x == ZERO { pres.zero() } else { pres.unit(x - 1) };
    let mut classes = Vec::with_capacity(n);
    let mut member: HashMap<NVec, usize> = HashMap::new();
    let mut injective = true;
    for x in 0..n {
        let class = saturated_class(pres, &image(x), budget)
            .ok_or_else(|| Error::Inconclusive(format!("class of {} did not saturate", p.label(x))))?;
        for v in &class {
            if member.insert(v.clone(), x).is_some() {
                injective = false;
            }
        }
        classes.push(class);
    }
    let class_sizes = classes.iter().map(Vec::len).collect();
    let mut failure = None;
    'outer: for (x, class) in classes.iter().enumerate() {
        for v in class {
            for y in sub_vectors(v) {
                let z: NVec = v.iter().zip(&y).map(|(a, b)| a - b).collect();
                let ok = match (member.get(&y), member.get(&z)) {
                    (Some(&s), Some(&t)) => p.add(s, t) == Some(x),
                    _ => false,
                };
                if !ok {
                    failure = Some((x, y, z));
                    break 'outer;
                }
            }
        }
    }
    Ok(VEmbeddingReport {
        injective,
        failure,
        class_sizes,
    })
}

fn sub_vectors(v: &[u32]) -> Vec<NVec> {
    let mut out = vec![Vec::new()];
    for &c in v {
        out = out
            .into_iter()
            .flat_map(|prefix: NVec| {
                (0..=c).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}

/// Checks that `d(s)` is the only idempotent `L`-related to `s` and `r(s)`
/// the only one `R`-related, with `L` and `R` computed from principal
/// one-sided ideals.
pub fn check_lr_idempotents(s: &InverseSemigroup) -> Result<()> {
    let (left, right) = principal_ideals(s);
    let es = s.idempotents();
    for a in s.elements() {
        let l: Vec<usize> = es.iter().copied().filter(|&e| left[e] == left[a]).collect();
        let r: Vec<usize> = es.iter().copied().filter(|&e| right[e] == right[a]).collect();
        if l != [s.dom(a)] || r != [s.ran(a)] {
            return Err(violation(
                "d(s) and r(s) are the idempotents L- and R-related to s",
                s.label(a).to_string(),
            ));
        }
    }
    Ok(())
}

fn principal_ideals(s: &InverseSemigroup) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
    let n = s.size();
    let ideal = |a: usize, left: bool| -> Vec<bool> {
        let mut v = vec![false; n];
        v[a] = true;
        for x in 0..n {
            v[if left { s.mul(x, a) } else { s.mul(a, x) }] = true;
        }
        v
    };
    (
        (0..n).map(|a| ideal(a, true)).collect(),
        (0..n).map(|a| ideal(a, false)).collect(),
    )
}

/// Evaluates the four characterizations of `e D f` on every pair of
/// idempotents and checks they agree; returns the number of related pairs.
pub fn check_d_characterizations(s: &InverseSemigroup) -> Result<usize> {
    let (left, right) = principal_ideals(s);
    let es = s.idempotents();
    let mut related = 0;
    for &e in &es {
        for &f in &es {
            let c1 = s.elements().any(|x| left[x] == left[e] && right[x] == right[f]);
            let c2 = s.elements().any(|x| s.dom(x) == e && s.ran(x) == f);
            let c3 = s.elements().any(|x| s.ran(x) == e && s.dom(x) == f);
            let c4 = s
                .elements()
                .any(|x| s.product(&[s.inv(x), f, x]) == e && s.product(&[x, e, s.inv(x)]) == f);
            if !(c1 == c2 && c2 == c3 && c3 == c4) {
                return Err(violation(
                    "characterizations of D agree",
                    format!("({}, {}): {c1} {c2} {c3} {c4}", s.label(e), s.label(f)),
                ));
            }
            related += c1 as usize;
        }
    }
    Ok(related)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::check_bis;
    use crate::constructions::{boolean_algebra, direct_sum, group_with_zero};
    use crate::group::FiniteGroup;
    use crate::pperm::symmetric_inverse_semigroup;

    fn bis(s: &InverseSemigroup) -> BooleanInverseSemigroup {
        check_bis(s).unwrap()
    }

    fn v(x: &[u32]) -> NVec {
        x.to_vec()
    }

    #[test]
    fn int_of_symmetric() {
        let int = int_monoid(&bis(&symmetric_inverse_semigroup(3))).unwrap();
        let p = &int.pcm;
        assert_eq!(p.size(), 4);
        let elems = crate::pperm::symmetric_with_elements(3).1;
        let by_rank = |r: usize| (0..4).find(|&c| elems[int.classes[c][0]].rank() == r).unwrap();
        for a in 0..=3 {
            for b in 0..=3 {
                let sum = p.add(by_rank(a), by_rank(b));
                if a + b <= 3 {
                    assert_eq!(sum, Some(by_rank(a + b)));
                } else {
                    assert_eq!(sum, None);
                }
            }
        }
    }

    #[test]
    fn int_small_examples() {
        let z2 = group_with_zero(&FiniteGroup::cyclic(2));
        let int = int_monoid(&bis(&z2)).unwrap();
        assert_eq!(int.pcm.size(), 2);
        assert_eq!(int.pcm.add(1, 1), None);

        let int = int_monoid(&bis(&boolean_algebra(2))).unwrap();
        assert_eq!(int.pcm.size(), 4);
        assert_eq!(int.pcm.add(1, 1), None);
        assert_eq!(int.pcm.add(1, 2), Some(3));
        assert_eq!(int.pcm.add(2, 1), Some(3));
    }

    #[test]
    fn pcm_checks() {
        let int = int_monoid(&bis(&symmetric_inverse_semigroup(2))).unwrap();
        assert_eq!(check_pcm(&int.pcm), PcmReport::default());

        let p = PartialCommutativeMonoid::new(vec!["0".into(), "a".into()], vec![Some(0), Some(1), Some(1), Some(1)])
            .unwrap();
        let report = check_pcm(&p);
        assert!(report.is_pcm());
        assert_eq!(report.cancel, Some(vec![1, 0, 1]));
    }

    #[test]
    fn envelopes() {
        let int = int_monoid(&bis(&symmetric_inverse_semigroup(2))).unwrap();
        let pres = universal_envelope(&int.pcm).unwrap();
        assert_eq!(pres.rank(), 2);
        assert_eq!(pres.relations().len(), 1);
        let (l, r) = &pres.relations()[0];
        assert_eq!(l.iter().sum::<u32>(), 2);
        assert_eq!(r.iter().sum::<u32>(), 1);

        let z2 = group_with_zero(&FiniteGroup::cyclic(2));
        let t = typ(&bis(&z2)).unwrap();
        assert!(t.presentation.relations().is_empty());
        assert_eq!(certify_free(&t.presentation).unwrap().rank(), 1);
    }

    #[test]
    fn type_monoids_are_free() {
        for n in 1..=4 {
            let t = typ(&bis(&symmetric_inverse_semigroup(n))).unwrap();
            let cert = certify_free(&t.presentation).unwrap();
            assert_eq!(cert.rank(), 1, "Typ(I_{n})");
        }
        let i2 = symmetric_inverse_semigroup(2);
        let t = typ(&bis(&direct_sum(&[&i2, &i2]))).unwrap();
        assert_eq!(certify_free(&t.presentation).unwrap().rank(), 2);
    }

    #[test]
    fn non_free_is_not_certified() {
        let pres = MonoidPresentation::new(vec!["v".into(), "w".into()], vec![(v(&[1, 0]), v(&[1, 1]))]).unwrap();
        assert!(certify_free(&pres).is_none());
        assert!(MonoidPresentation::new(vec!["v".into()], vec![(v(&[1]), v(&[1]))]).is_err());
    }

    #[test]
    fn word_problem_examples() {
        let free = MonoidPresentation::free(vec!["g".into(), "h".into()]);
        let b = WordBudget::default();
        assert!(decide_equal(&free, &[1, 2], &[1, 2], b).unwrap().is_equal());
        match decide_equal(&free, &[1, 2], &[2, 2], b).unwrap() {
            WordVerdict::Distinct { class } => assert_eq!(class, vec![v(&[1, 2])]),
            other => panic!("{other:?}"),
        }

        let absorb = MonoidPresentation::new(vec!["x".into(), "y".into()], vec![(v(&[1, 0]), v(&[1, 1]))]).unwrap();
        let verdict = decide_equal(&absorb, &[1, 0], &[1, 2], b).unwrap();
        let WordVerdict::Equal { trace } = verdict else {
            panic!()
        };
        assert!(replay(&absorb, &[1, 0], &[1, 2], &trace));

        let t = typ(&bis(&symmetric_inverse_semigroup(3))).unwrap();
        let pres = &t.presentation;
        let sizes: Vec<usize> = t.int.classes.iter().map(Vec::len).collect();
        let gen_of_rank = |r: usize| {
            let size = [1, 3, 3, 1][r];
            // rank 1 and rank 2 classes both have 3 idempotents; rank 3 has 1
            (1..4).filter(|&c| sizes[c] == size).collect::<Vec<_>>()
        };
        let top = gen_of_rank(3)[0];
        let top_vec = t.image(top);
        let found = (1..4).filter(|&c| c != top).any(|c| {
            let mut triple = pres.zero();
            triple[c - 1] = 3;
            match decide_equal(pres, &triple, &top_vec, b).unwrap() {
                WordVerdict::Equal { trace } => {
                    assert!(replay(pres, &triple, &top_vec, &trace));
                    assert_eq!(trace.len(), 2);
                    true
                }
                _ => false,
            }
        });
        assert!(found);
    }

    #[test]
    fn budget_gives_unknown() {
        let absorb = MonoidPresentation::new(vec!["x".into(), "y".into()], vec![(v(&[1, 0]), v(&[1, 1]))]).unwrap();
        let tight = WordBudget {
            max_vectors: 10,
            max_component: 64,
        };
        let verdict = decide_equal_graded(&absorb, &[1, 0], &[2, 0], tight, None).unwrap();
        assert!(verdict.is_unknown());
        assert!(decide_equal(&absorb, &[1], &[1, 0], tight).is_err());
    }

    #[test]
    fn v_embeddings() {
        for s in [
            symmetric_inverse_semigroup(1),
            symmetric_inverse_semigroup(2),
            symmetric_inverse_semigroup(3),
            group_with_zero(&FiniteGroup::cyclic(2)),
            boolean_algebra(2),
        ] {
            let t = typ(&bis(&s)).unwrap();
            let report = check_v_embedding(&t.int.pcm, &t.presentation, WordBudget::default()).unwrap();
            assert!(report.verified(), "{report:?}");
        }
    }

    #[test]
    fn orthogonal_separation() {
        assert!(!orthogonally_separating(&bis(&symmetric_inverse_semigroup(2))).unwrap());
        assert!(orthogonally_separating(&bis(&InverseSemigroup::trivial())).unwrap());
    }

    #[test]
    fn green_lemmas() {
        for s in [
            symmetric_inverse_semigroup(3),
            group_with_zero(&FiniteGroup::cyclic(3)),
            crate::constructions::example_non_join(),
        ] {
            check_lr_idempotents(&s).unwrap();
            check_d_characterizations(&s).unwrap();
        }
        assert_eq!(
            check_d_characterizations(&symmetric_inverse_semigroup(2)).unwrap(),
            1 + 4 + 1
        );
    }
}
