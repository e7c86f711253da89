//! Finite inverse semigroups stored as Cayley tables.
//!
//! Elements are dense indices `0..size`; index 0 is the designated zero.
//! The table and involution are immutable after construction, and the
//! domain/range idempotents `d(a) = a⁻¹a`, `r(a) = aa⁻¹` are precomputed.

use std::collections::HashMap;
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

/// Index of the designated zero element.
pub const ZERO: usize = 0;

/// Above this size associativity is only verified when explicitly requested.
pub const AUTO_ASSOCIATIVITY_LIMIT: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSemigroup {
    size: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    idempotent: Vec<bool>,
    dom: Vec<u32>,
    ran: Vec<u32>,
}

impl InverseSemigroup {
    /// Builds a semigroup from a row-major multiplication table and an
    /// involution. Only shapes and index ranges are checked here; use
    /// [`InverseSemigroup::verify`] for the algebraic axioms.
    pub fn from_table(mul: Vec<usize>, inv: Vec<usize>, labels: Option<Vec<String>>) -> Result<Self> {
        let size = inv.len();
        if size == 0 {
            return Err(Error::Invalid("a semigroup needs at least one element".into()));
        }
        if mul.len() != size * size {
            return Err(Error::Invalid(format!(
                "multiplication table has {} cells, expected {}",
                mul.len(),
                size * size
            )));
        }
        if let Some(bad) = mul.iter().chain(inv.iter()).find(|&&x| x >= size) {
            return Err(Error::Invalid(format!("element index {bad} out of range 0..{size}")));
        }
        let labels = match labels {
            Some(l) if l.len() != size => {
                return Err(Error::Invalid(format!("{} labels for {} elements", l.len(), size)))
            }
            Some(l) => l,
            None => (0..size).map(|i| i.to_string()).collect(),
        };
        let mul: Vec<u32> = mul.into_iter().map(|x| x as u32).collect();
        let inv: Vec<u32> = inv.into_iter().map(|x| x as u32).collect();
        let idempotent = (0..size).map(|a| mul[a * size + a] as usize == a).collect();
        let dom = (0..size).map(|a| mul[inv[a] as usize * size + a]).collect();
        let ran = (0..size).map(|a| mul[a * size + inv[a] as usize]).collect();
        Ok(InverseSemigroup {
            size,
            mul,
            inv,
            labels,
            idempotent,
            dom,
            ran,
        })
    }

    pub fn from_fn(
        size: usize,
        mul: impl Fn(usize, usize) -> usize,
        inv: impl Fn(usize) -> usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                table.push(mul(a, b));
            }
        }
        Self::from_table(table, (0..size).map(inv).collect(), labels)
    }

    /// Builds the Cayley table of a finite set of concrete elements closed
    /// under `mul` and `inv`. `elems[0]` becomes the zero.
    pub fn from_elements<T, M, I, L>(elems: &[T], mul: M, inv: I, label: L) -> Result<Self>
    where
        T: Hash + Eq,
        M: Fn(&T, &T) -> T,
        I: Fn(&T) -> T,
        L: Fn(&T) -> String,
    {
        let index: HashMap<&T, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        if index.len() != elems.len() {
            return Err(Error::Invalid("duplicate elements".into()));
        }
        let lookup = |x: T| -> Result<usize> {
            index
                .get(&x)
                .copied()
                .ok_or_else(|| Error::Invalid("element set is not closed under the operations".into()))
        };
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in elems {
            for b in elems {
                table.push(lookup(mul(a, b))?);
            }
        }
        let inverses = elems.iter().map(|a| lookup(inv(a))).collect::<Result<Vec<_>>>()?;
        Self::from_table(table, inverses, Some(elems.iter().map(label).collect()))
    }

    /// The trivial semigroup `{0}`.
    pub fn trivial() -> Self {
        Self::from_table(vec![0], vec![0], Some(vec!["0".into()])).expect("trivial table")
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> usize {
        ZERO
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    /// Product of a sequence, left to right. An empty sequence is not allowed.
    pub fn product(&self, elems: &[usize]) -> usize {
        let (&first, rest) = elems.split_first().expect("non-empty product");
        rest.iter().fold(first, |acc, &x| self.mul(acc, x))
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn is_idempotent(&self, a: usize) -> bool {
        self.idempotent[a]
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.idempotent[a]).collect()
    }

    /// Domain idempotent `d(a) = a⁻¹a`.
    #[inline]
    pub fn dom(&self, a: usize) -> usize {
        self.dom[a] as usize
    }

    /// Range idempotent `r(a) = aa⁻¹`.
    #[inline]
    pub fn ran(&self, a: usize) -> usize {
        self.ran[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::Invalid(format!(
                "{} labels for {} elements",
                labels.len(),
                self.size
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// Natural partial order: `a ≤ b` iff `a = b·d(a)`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        let by_domain = a == self.mul(b, self.dom(a));
        debug_assert_eq!(
            by_domain,
            self.leq_by_range(a, b),
            "a = b d(a) vs a = r(a) b for ({a}, {b})"
        );
        by_domain
    }

    /// The equivalent characterization `a = r(a)·b`.
    pub fn leq_by_range(&self, a: usize, b: usize) -> bool {
        a == self.mul(self.ran(a), b)
    }

    /// `a ~ b` iff `a⁻¹b` and `ab⁻¹` are idempotents.
    pub fn compatible(&self, a: usize, b: usize) -> bool {
        let by_def = self.is_idempotent(self.mul(self.inv(a), b)) && self.is_idempotent(self.mul(a, self.inv(b)));
        debug_assert_eq!(
            by_def,
            self.compatible_by_lemma(a, b),
            "compatibility characterizations for ({a}, {b})"
        );
        by_def
    }

    /// `r(a)b = r(b)a` and `b d(a) = a d(b)`.
    pub fn compatible_by_lemma(&self, a: usize, b: usize) -> bool {
        self.mul(self.ran(a), b) == self.mul(self.ran(b), a) && self.mul(b, self.dom(a)) == self.mul(a, self.dom(b))
    }

    /// `a ⊥ b` iff `a⁻¹b = ab⁻¹ = 0`.
    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        let by_def = self.mul(self.inv(a), b) == ZERO && self.mul(a, self.inv(b)) == ZERO;
        debug_assert_eq!(
            by_def,
            self.orthogonal_by_lemma(a, b),
            "orthogonality characterizations for ({a}, {b})"
        );
        by_def
    }

    /// `r(a) ⊥ r(b)` and `d(a) ⊥ d(b)`.
    pub fn orthogonal_by_lemma(&self, a: usize, b: usize) -> bool {
        self.mul(self.ran(a), self.ran(b)) == ZERO && self.mul(self.dom(a), self.dom(b)) == ZERO
    }

    /// Elements `c` with `a ≤ c`.
    pub fn up_set(&self, a: usize) -> Vec<usize> {
        (0..self.size).filter(|&c| self.leq(a, c)).collect()
    }

    /// Elements `c` with `c ≤ a`.
    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..self.size).filter(|&c| self.leq(c, a)).collect()
    }

    /// Centralizer of the idempotents, `Z(E(S))`.
    pub fn idempotent_centralizer(&self) -> Vec<usize> {
        let es = self.idempotents();
        (0..self.size)
            .filter(|&a| es.iter().all(|&e| self.mul(a, e) == self.mul(e, a)))
            .collect()
    }

    pub fn green_data(&self) -> GreenData {
        GreenData::new(self)
    }

    pub fn verify(&self) -> VerifyReport {
        self.verify_with(VerifyOptions::default())
    }

    pub fn verify_with(&self, opts: VerifyOptions) -> VerifyReport {
        let n = self.size;
        let mut violations = Vec::new();
        let check_assoc = opts.associativity.unwrap_or(n <= AUTO_ASSOCIATIVITY_LIMIT);
        if check_assoc {
            'assoc: for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            violations.push(Violation::NotAssociative(a, b, c));
                            break 'assoc;
                        }
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| self.mul(self.mul(a, self.inv(a)), a) != a) {
            violations.push(Violation::NotRegular(a));
        }
        if let Some(a) = (0..n).find(|&a| self.mul(self.mul(self.inv(a), a), self.inv(a)) != self.inv(a)) {
            violations.push(Violation::NotRegular(self.inv(a)));
        }
        if let Some(a) = (0..n).find(|&a| self.inv(self.inv(a)) != a) {
            violations.push(Violation::InverseNotInvolution(a));
        }
        'unique: for a in 0..n {
            for b in 0..n {
                if b != self.inv(a) && self.mul(self.mul(a, b), a) == a && self.mul(self.mul(b, a), b) == b {
                    violations.push(Violation::InverseNotUnique { element: a, other: b });
                    break 'unique;
                }
            }
        }
        let es = self.idempotents();
        'commute: for (i, &e) in es.iter().enumerate() {
            for &f in &es[i + 1..] {
                if self.mul(e, f) != self.mul(f, e) {
                    violations.push(Violation::IdempotentsDoNotCommute(e, f));
                    break 'commute;
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| self.mul(ZERO, a) != ZERO || self.mul(a, ZERO) != ZERO) {
            violations.push(Violation::ZeroNotAbsorbing(a));
        }
        VerifyReport {
            associativity_checked: check_assoc,
            violations,
        }
    }
}

/// Up-sets and down-sets of the natural partial order as bitsets.
#[derive(Clone, Debug)]
pub struct OrderIndex {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl OrderIndex {
    pub fn new(s: &InverseSemigroup) -> Self {
        let n = s.size();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in 0..n {
                if s.leq(a, b) {
                    up[a].insert(b);
                    down[b].insert(a);
                }
            }
        }
        OrderIndex { up, down }
    }

    pub fn up(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// Least upper bound, or the antichain of minimal upper bounds.
    pub fn least_upper_bound(&self, a: usize, b: usize) -> std::result::Result<usize, Vec<usize>> {
        let mut bounds = self.up[a].clone();
        bounds.intersect_with(&self.up[b]);
        extremal(&bounds, &self.down, &self.up)
    }

    /// Greatest lower bound, or the antichain of maximal lower bounds.
    pub fn greatest_lower_bound(&self, a: usize, b: usize) -> std::result::Result<usize, Vec<usize>> {
        let mut bounds = self.down[a].clone();
        bounds.intersect_with(&self.down[b]);
        extremal(&bounds, &self.up, &self.down)
    }
}

/// Finds the least element of `bounds` w.r.t. the order whose strict
/// predecessors are recorded in `below` and successors in `above`.
fn extremal(
    bounds: &FixedBitSet,
    below: &[FixedBitSet],
    above: &[FixedBitSet],
) -> std::result::Result<usize, Vec<usize>> {
    let candidate = bounds.ones().min_by_key(|&c| below[c].count_ones(..));
    if let Some(c) = candidate {
        if bounds.is_subset(&above[c]) {
            return Ok(c);
        }
    }
    Err(bounds
        .ones()
        .filter(|&c| !bounds.ones().any(|d| d != c && below[c].contains(d)))
        .collect())
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// `None` checks associativity automatically up to
    /// [`AUTO_ASSOCIATIVITY_LIMIT`] elements.
    pub associativity: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotAssociative(usize, usize, usize),
    /// `a a⁻¹ a ≠ a` (or the same for `a⁻¹`).
    NotRegular(usize),
    InverseNotInvolution(usize),
    InverseNotUnique {
        element: usize,
        other: usize,
    },
    IdempotentsDoNotCommute(usize, usize),
    ZeroNotAbsorbing(usize),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotAssociative(a, b, c) => write!(f, "associativity fails at ({a}, {b}, {c})"),
            Violation::NotRegular(a) => write!(f, "element {a} is not regular w.r.t. its listed inverse"),
            Violation::InverseNotInvolution(a) => write!(f, "inv(inv({a})) != {a}"),
            Violation::InverseNotUnique { element, other } => {
                write!(f, "element {element} has a second inverse {other}")
            }
            Violation::IdempotentsDoNotCommute(e, g) => write!(f, "idempotents {e} and {g} do not commute"),
            Violation::ZeroNotAbsorbing(a) => write!(f, "zero does not absorb {a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub associativity_checked: bool,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Domain/range idempotents and the partition of `E(S)` into `D`-classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenData {
    pub dom: Vec<usize>,
    pub ran: Vec<usize>,
    /// `D`-class id of each idempotent, `None` for non-idempotents.
    pub class_of: Vec<Option<usize>>,
    /// Classes in order of their smallest idempotent; each sorted.
    pub classes: Vec<Vec<usize>>,
}

impl GreenData {
    fn new(s: &InverseSemigroup) -> Self {
        let n = s.size();
        let mut uf = UnionFind::<usize>::new(n);
        for a in 0..n {
            uf.union(s.dom(a), s.ran(a));
        }
        let mut class_of = vec![None; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut root_class = vec![usize::MAX; n];
        for e in s.idempotents() {
            let root = uf.find(e);
            if root_class[root] == usize::MAX {
                root_class[root] = classes.len();
                classes.push(Vec::new());
            }
            class_of[e] = Some(root_class[root]);
            classes[root_class[root]].push(e);
        }
        GreenData {
            dom: (0..n).map(|a| s.dom(a)).collect(),
            ran: (0..n).map(|a| s.ran(a)).collect(),
            class_of,
            classes,
        }
    }

    /// `D`-class of an arbitrary element, via its domain idempotent.
    pub fn class_of_element(&self, a: usize) -> usize {
        self.class_of[self.dom[a]].expect("domain idempotent has a class")
    }

    pub fn d_related(&self, e: usize, f: usize) -> bool {
        self.class_of[e].is_some() && self.class_of[e] == self.class_of[f]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::example_non_join;
    use crate::pperm::symmetric_inverse_semigroup;

    #[test]
    fn zero_is_below_everything() {
        let s = symmetric_inverse_semigroup(2);
        assert!(s.elements().all(|b| s.leq(ZERO, b)));
    }

    #[test]
    fn restriction_order_in_i2() {
        let s = symmetric_inverse_semigroup(2);
        let id = s.find_label("12").unwrap();
        let id1 = s.find_label("1-").unwrap();
        let one_to_two = s.find_label("2-").unwrap();
        assert!(s.leq(id1, id));
        assert!(!s.leq(one_to_two, id));
    }

    #[test]
    fn compatibility_examples() {
        let s = symmetric_inverse_semigroup(2);
        let es = s.idempotents();
        for &e in &es {
            for &f in &es {
                assert!(s.compatible(e, f));
            }
        }
        let a = s.find_label("2-").unwrap();
        let b = s.find_label("-1").unwrap();
        assert!(s.compatible(a, b));
        assert!(s.orthogonal(a, b));
        for x in 1..s.size() {
            assert!(!s.orthogonal(x, x));
        }
    }

    #[test]
    fn green_classes_of_i2_and_i3() {
        let s = symmetric_inverse_semigroup(2);
        let g = s.green_data();
        let mut sizes = g.class_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2]);
        let id1 = s.find_label("1-").unwrap();
        let id2 = s.find_label("-2").unwrap();
        assert!(g.d_related(id1, id2));

        let s3 = symmetric_inverse_semigroup(3);
        let mut sizes = s3.green_data().class_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 3, 3]);
    }

    #[test]
    fn corrupted_cell_is_caught() {
        let s = symmetric_inverse_semigroup(2);
        let n = s.size();
        let mut table: Vec<usize> = (0..n * n).map(|i| s.mul(i / n, i % n)).collect();
        let inv: Vec<usize> = (0..n).map(|a| s.inv(a)).collect();
        let swap = s.find_label("21").unwrap();
        let id = s.find_label("12").unwrap();
        table[swap * n + swap] = swap;
        let bad = InverseSemigroup::from_table(table, inv, None).unwrap();
        let report = bad.verify();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotAssociative(..))));
        let _ = id;
    }

    #[test]
    fn example_with_two_upper_bounds_is_inverse() {
        assert!(example_non_join().verify().is_valid());
    }

    #[test]
    fn shape_errors() {
        assert!(InverseSemigroup::from_table(vec![], vec![], None).is_err());
        assert!(InverseSemigroup::from_table(vec![0, 0, 0], vec![0, 1], None).is_err());
        assert!(InverseSemigroup::from_table(vec![0, 0, 0, 2], vec![0, 1], None).is_err());
    }
}
