//! Boolean inverse semigroups: certification of the axioms, joins, relative
//! complements and the skew operations.
//!
//! A finite inverse semigroup with zero is Boolean when its idempotents form
//! a generalized Boolean algebra (relatively complemented distributive
//! lattice with bottom) and every compatible pair has a join. Certification
//! happens once in [`check_bis`]; afterwards the join/meet tables are cached
//! (below [`DEFAULT_CACHE_LIMIT`] elements) and all operations are total
//! lookups on the certified structure.

use std::fmt;

use crate::error::{violation, Error, Result};
use crate::semigroup::{InverseSemigroup, OrderIndex, VerifyReport, ZERO};

/// Semigroups up to this size get full join/meet tables at certification.
pub const DEFAULT_CACHE_LIMIT: usize = 4096;

const NONE: u32 = u32::MAX;

/// Why `(E(S), ≤)` fails to be a generalized Boolean algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GbaFailure {
    NoBottom,
    NoMeet(usize, usize),
    NoJoin(usize, usize),
    NotDistributive(usize, usize, usize),
    /// `inner ≤ outer` but `inner` has no complement inside `outer`.
    NoComplement {
        inner: usize,
        outer: usize,
    },
}

impl fmt::Display for GbaFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GbaFailure::NoBottom => write!(f, "zero is not the least idempotent"),
            GbaFailure::NoMeet(a, b) => write!(f, "idempotents {a}, {b} have no meet"),
            GbaFailure::NoJoin(a, b) => write!(f, "idempotents {a}, {b} have no join in E(S)"),
            GbaFailure::NotDistributive(a, b, c) => write!(f, "distributivity fails at ({a}, {b}, {c})"),
            GbaFailure::NoComplement { inner, outer } => write!(f, "{inner} has no complement in {outer}"),
        }
    }
}

/// Lattice tables on `E(S)`, indexed by position in `elems`.
#[derive(Clone, Debug)]
pub struct IdempotentLattice {
    elems: Vec<usize>,
    pos: Vec<usize>,
    join: Vec<usize>,
    /// `diff[i][j]` = complement of `e_i ∧ e_j` inside `e_i`, i.e. `e_i \ e_j`.
    diff: Vec<usize>,
}

impl IdempotentLattice {
    pub fn idempotents(&self) -> &[usize] {
        &self.elems
    }

    fn k(&self) -> usize {
        self.elems.len()
    }

    pub fn join(&self, e: usize, f: usize) -> usize {
        self.join[self.pos[e] * self.k() + self.pos[f]]
    }

    /// `e \ f`: the relative complement of `ef` in `e`.
    pub fn diff(&self, e: usize, f: usize) -> usize {
        self.diff[self.pos[e] * self.k() + self.pos[f]]
    }
}

/// Checks that `E(S)` under the natural order is a generalized Boolean
/// algebra; returns its lattice tables or a witness.
pub fn check_gba(s: &InverseSemigroup) -> std::result::Result<IdempotentLattice, GbaFailure> {
    let elems = s.idempotents();
    if !s.is_idempotent(ZERO) || elems.iter().any(|&e| s.mul(ZERO, e) != ZERO) {
        return Err(GbaFailure::NoBottom);
    }
    let k = elems.len();
    let mut pos = vec![usize::MAX; s.size()];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = i;
    }
    let le = |e: usize, f: usize| s.mul(e, f) == e;
    // in an inverse semigroup the product of idempotents is their meet;
    // confirm it on E(S) anyway since the input may be arbitrary
    for &e in &elems {
        for &f in &elems {
            let m = s.mul(e, f);
            let is_glb = le(m, e) && le(m, f) && elems.iter().all(|&g| !(le(g, e) && le(g, f)) || le(g, m));
            if !s.is_idempotent(m) || !is_glb {
                return Err(GbaFailure::NoMeet(e, f));
            }
        }
    }
    let mut join = vec![0; k * k];
    for (i, &e) in elems.iter().enumerate() {
        for (j, &f) in elems.iter().enumerate() {
            let ubs: Vec<usize> = elems.iter().copied().filter(|&g| le(e, g) && le(f, g)).collect();
            let lub = ubs.iter().copied().find(|&g| ubs.iter().all(|&h| le(g, h)));
            join[i * k + j] = lub.ok_or(GbaFailure::NoJoin(e, f))?;
        }
    }
    let jn = |e: usize, f: usize| join[pos[e] * k + pos[f]];
    for &e in &elems {
        for &f in &elems {
            for &g in &elems {
                if s.mul(e, jn(f, g)) != jn(s.mul(e, f), s.mul(e, g)) {
                    return Err(GbaFailure::NotDistributive(e, f, g));
                }
            }
        }
    }
    let mut diff = vec![0; k * k];
    for (i, &e) in elems.iter().enumerate() {
        for (j, &f) in elems.iter().enumerate() {
            let inner = s.mul(e, f);
            let comp = elems
                .iter()
                .copied()
                .find(|&g| le(g, e) && s.mul(g, inner) == ZERO && jn(g, inner) == e);
            diff[i * k + j] = comp.ok_or(GbaFailure::NoComplement { inner, outer: e })?;
        }
    }
    Ok(IdempotentLattice { elems, pos, join, diff })
}

/// Least upper bound of `a` and `b` in an arbitrary finite inverse semigroup.
///
/// Fails with `NotCompatible` for incompatible pairs and with `NoJoin`
/// (carrying the minimal upper bounds) when the upper bounds have no least
/// element.
pub fn join_in(s: &InverseSemigroup, order: &OrderIndex, a: usize, b: usize) -> Result<usize> {
    if !s.compatible(a, b) {
        return Err(Error::NotCompatible(a, b));
    }
    order
        .least_upper_bound(a, b)
        .map_err(|upper_bounds| Error::NoJoin { a, b, upper_bounds })
}

/// Which axiom a semigroup fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BisFailure {
    NotInverse(VerifyReport),
    /// `(E(S), ≤)` is not a generalized Boolean algebra.
    Bis1(GbaFailure),
    /// A compatible pair without a join, with its minimal upper bounds.
    Bis2 {
        a: usize,
        b: usize,
        upper_bounds: Vec<usize>,
    },
    /// The direct join check and the orthogonal-join reconstruction disagree.
    Inconsistent(String),
}

impl fmt::Display for BisFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BisFailure::NotInverse(r) => write!(f, "not an inverse semigroup ({} violations)", r.violations.len()),
            BisFailure::Bis1(g) => write!(f, "(BIS1) {g}"),
            BisFailure::Bis2 { a, b, upper_bounds } => {
                write!(
                    f,
                    "(BIS2) {a} and {b} have no join; minimal upper bounds {upper_bounds:?}"
                )
            }
            BisFailure::Inconsistent(m) => write!(f, "internal inconsistency: {m}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BisOptions {
    pub cache_limit: usize,
}

impl Default for BisOptions {
    fn default() -> Self {
        BisOptions {
            cache_limit: DEFAULT_CACHE_LIMIT,
        }
    }
}

/// A finite inverse semigroup certified to be Boolean.
#[derive(Clone, Debug)]
pub struct BooleanInverseSemigroup {
    base: InverseSemigroup,
    lattice: IdempotentLattice,
    join: Option<Vec<u32>>,
    meet: Option<Vec<u32>>,
}

pub fn check_bis(s: &InverseSemigroup) -> std::result::Result<BooleanInverseSemigroup, BisFailure> {
    check_bis_with(s, BisOptions::default())
}

pub fn check_bis_with(
    s: &InverseSemigroup,
    opts: BisOptions,
) -> std::result::Result<BooleanInverseSemigroup, BisFailure> {
    let report = s.verify();
    if !report.is_valid() {
        return Err(BisFailure::NotInverse(report));
    }
    let lattice = check_gba(s).map_err(BisFailure::Bis1)?;
    let n = s.size();
    let order = OrderIndex::new(s);
    let mut join = vec![NONE; n * n];
    // (BIS2a): orthogonal pairs first
    for a in 0..n {
        for b in a..n {
            if s.orthogonal(a, b) {
                let j = join_in(s, &order, a, b).map_err(|e| bis2_failure(e, a, b))?;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }
    }
    // (BIS2) directly, cross-checked against the orthogonal decomposition
    // (a ∧ b) ⊕ a(d(a) \ d(b)) ⊕ b(d(b) \ d(a)).
    for a in 0..n {
        for b in a..n {
            if !s.compatible(a, b) {
                continue;
            }
            let j = join_in(s, &order, a, b).map_err(|e| bis2_failure(e, a, b))?;
            join[a * n + b] = j as u32;
            join[b * n + a] = j as u32;
            let common = s.mul(a, s.dom(b));
            let only_a = s.mul(a, lattice.diff(s.dom(a), s.dom(b)));
            let only_b = s.mul(b, lattice.diff(s.dom(b), s.dom(a)));
            let ortho = |x: usize, y: usize| -> Option<usize> {
                let v = join[x * n + y];
                (s.orthogonal(x, y) && v != NONE).then_some(v as usize)
            };
            let rebuilt = ortho(common, only_a).and_then(|x| ortho(x, only_b));
            if rebuilt != Some(j) {
                return Err(BisFailure::Inconsistent(format!(
                    "join of {a} and {b} is {j} but the orthogonal reconstruction gives {rebuilt:?}"
                )));
            }
        }
    }
    let mut meet = vec![NONE; n * n];
    for a in 0..n {
        for b in a..n {
            let m = order
                .greatest_lower_bound(a, b)
                .map_err(|_| BisFailure::Inconsistent(format!("{a} and {b} have no meet")))?;
            meet[a * n + b] = m as u32;
            meet[b * n + a] = m as u32;
        }
    }
    let cached = n <= opts.cache_limit;
    Ok(BooleanInverseSemigroup {
        base: s.clone(),
        lattice,
        join: cached.then_some(join),
        meet: cached.then_some(meet),
    })
}

fn bis2_failure(e: Error, a: usize, b: usize) -> BisFailure {
    match e {
        Error::NoJoin { upper_bounds, .. } => BisFailure::Bis2 { a, b, upper_bounds },
        other => BisFailure::Inconsistent(format!("unexpected error for ({a}, {b}): {other}")),
    }
}

impl BooleanInverseSemigroup {
    pub fn base(&self) -> &InverseSemigroup {
        &self.base
    }

    pub fn into_base(self) -> InverseSemigroup {
        self.base
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    pub fn lattice(&self) -> &IdempotentLattice {
        &self.lattice
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.base.mul(a, b)
    }

    pub fn has_cached_tables(&self) -> bool {
        self.join.is_some()
    }

    /// Join of two compatible elements.
    pub fn join(&self, a: usize, b: usize) -> Result<usize> {
        let s = &self.base;
        if !s.compatible(a, b) {
            return Err(Error::NotCompatible(a, b));
        }
        if let Some(t) = &self.join {
            return Ok(t[a * s.size() + b] as usize);
        }
        // d(a ∨ b) = d(a) ∨ d(b), and a ∨ b is the unique element with that
        // domain lying above both
        let d = self.lattice.join(s.dom(a), s.dom(b));
        s.elements()
            .find(|&c| s.dom(c) == d && s.leq(a, c) && s.leq(b, c))
            .ok_or_else(|| violation("compatible join", format!("no join found for ({a}, {b})")))
    }

    /// `a ⊕ b` for orthogonal `a`, `b`.
    pub fn orthogonal_join(&self, a: usize, b: usize) -> Result<usize> {
        if !self.base.orthogonal(a, b) {
            return Err(Error::NotCompatible(a, b));
        }
        self.join(a, b)
    }

    /// Join of a finite set of pairwise compatible elements (zero for an
    /// empty set).
    pub fn join_all(&self, elems: &[usize]) -> Result<usize> {
        elems.iter().try_fold(ZERO, |acc, &x| self.join(acc, x))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let s = &self.base;
        if let Some(t) = &self.meet {
            return t[a * s.size() + b] as usize;
        }
        if s.compatible(a, b) {
            return s.mul(a, s.dom(b));
        }
        OrderIndex::new(s)
            .greatest_lower_bound(a, b)
            .expect("finite Boolean inverse semigroups have binary meets")
    }

    /// `e \ f` on idempotents.
    pub fn idempotent_diff(&self, e: usize, f: usize) -> usize {
        self.lattice.diff(e, f)
    }

    /// `s \ u = s(d(s) \ d(u))` for `u ≤ s`; the unique `t` with
    /// `s = t ⊕ (s ∧ u)`.
    pub fn relative_complement(&self, s_elem: usize, u: usize) -> Result<usize> {
        let s = &self.base;
        if !s.leq(u, s_elem) {
            return Err(Error::NotBelow(u, s_elem));
        }
        let t = s.mul(s_elem, self.lattice.diff(s.dom(s_elem), s.dom(u)));
        let common = self.meet(s_elem, u);
        if !s.orthogonal(t, common) || self.join(t, common)? != s_elem {
            return Err(violation(
                "relative complement",
                format!("{t} ⊕ {common} != {s_elem} for s = {s_elem}, u = {u}"),
            ));
        }
        Ok(t)
    }

    /// Skew difference `a ⊘ b = (r(a) \ r(b)) · a · (d(a) \ d(b))`.
    pub fn skew_difference(&self, a: usize, b: usize) -> usize {
        let s = &self.base;
        let left = self.lattice.diff(s.ran(a), s.ran(b));
        let right = self.lattice.diff(s.dom(a), s.dom(b));
        s.mul(s.mul(left, a), right)
    }

    /// Left skew join `a ▽ b = (a ⊘ b) ⊕ b`.
    pub fn skew_join(&self, a: usize, b: usize) -> Result<usize> {
        let d = self.skew_difference(a, b);
        if !self.base.orthogonal(d, b) {
            return Err(violation(
                "skew join",
                format!("({a} ⊘ {b}) = {d} is not orthogonal to {b}"),
            ));
        }
        self.join(d, b)
    }

    /// Checks whether `map: self → target` is additive. The map must be a
    /// zero-preserving homomorphism, otherwise `NotHomomorphism` is returned.
    pub fn check_additive(&self, target: &BooleanInverseSemigroup, map: &[usize]) -> Result<AdditiveReport> {
        check_additive(self, target, map)
    }
}

/// Result of an additivity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveReport {
    pub additive: bool,
    /// A pair whose join is not preserved.
    pub witness: Option<(usize, usize)>,
}

pub fn check_additive(
    source: &BooleanInverseSemigroup,
    target: &BooleanInverseSemigroup,
    map: &[usize],
) -> Result<AdditiveReport> {
    let (s, t) = (source.base(), target.base());
    if map.len() != s.size() || map.iter().any(|&y| y >= t.size()) {
        return Err(Error::Invalid("map does not fit the semigroups".into()));
    }
    crate::morphism::check_homomorphism(s, t, map).map_err(|(a, b)| Error::NotHomomorphism(a, b))?;
    let preserves =
        |a: usize, b: usize| -> Result<bool> { Ok(map[source.join(a, b)?] == target.join(map[a], map[b])?) };
    let mut ortho_witness = None;
    let mut compat_witness = None;
    for a in s.elements() {
        for b in s.elements() {
            if ortho_witness.is_none() && s.orthogonal(a, b) && !preserves(a, b)? {
                ortho_witness = Some((a, b));
            }
            if compat_witness.is_none() && s.compatible(a, b) && !preserves(a, b)? {
                compat_witness = Some((a, b));
            }
        }
    }
    if ortho_witness.is_none() != compat_witness.is_none() {
        return Err(violation(
            "additivity",
            format!("orthogonal joins {ortho_witness:?} vs compatible joins {compat_witness:?}"),
        ));
    }
    Ok(AdditiveReport {
        additive: ortho_witness.is_none(),
        witness: ortho_witness.or(compat_witness),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean_algebra, chain_semilattice, example_non_join, group_with_zero};
    use crate::group::FiniteGroup;
    use crate::pperm::symmetric_inverse_semigroup;

    fn el(s: &InverseSemigroup, label: &str) -> usize {
        s.find_label(label).unwrap_or_else(|| panic!("no element {label}"))
    }

    #[test]
    fn gba_examples() {
        assert!(check_gba(&symmetric_inverse_semigroup(2)).is_ok());
        assert!(check_gba(&example_non_join()).is_ok());
        // 0 < 1 < 2: element 1 has no complement inside 2
        assert_eq!(
            check_gba(&chain_semilattice(3)).unwrap_err(),
            GbaFailure::NoComplement { inner: 1, outer: 2 }
        );
    }

    #[test]
    fn joins_in_i2() {
        let s = symmetric_inverse_semigroup(2);
        let order = OrderIndex::new(&s);
        assert_eq!(join_in(&s, &order, el(&s, "1-"), el(&s, "-2")).unwrap(), el(&s, "12"));
        assert_eq!(join_in(&s, &order, el(&s, "2-"), el(&s, "-1")).unwrap(), el(&s, "21"));
        assert_eq!(
            join_in(&s, &order, el(&s, "1-"), el(&s, "2-")).unwrap_err(),
            Error::NotCompatible(el(&s, "1-"), el(&s, "2-"))
        );
    }

    #[test]
    fn no_join_in_example() {
        let s = example_non_join();
        let order = OrderIndex::new(&s);
        let (a, b, one, u) = (1, 2, 3, 4);
        assert_eq!(
            join_in(&s, &order, a, b).unwrap_err(),
            Error::NoJoin {
                a,
                b,
                upper_bounds: vec![one, u]
            }
        );
        assert_eq!(
            check_bis(&s).unwrap_err(),
            BisFailure::Bis2 {
                a,
                b,
                upper_bounds: vec![one, u]
            }
        );
    }

    #[test]
    fn certification_examples() {
        for n in 0..=3 {
            assert!(check_bis(&symmetric_inverse_semigroup(n)).is_ok(), "I_{n}");
        }
        assert!(check_bis(&group_with_zero(&FiniteGroup::cyclic(2))).is_ok());
        assert!(check_bis(&boolean_algebra(3)).is_ok());
        assert!(matches!(check_bis(&chain_semilattice(3)), Err(BisFailure::Bis1(_))));
    }

    #[test]
    fn uncached_tables_agree() {
        let s = symmetric_inverse_semigroup(3);
        let cached = check_bis(&s).unwrap();
        let lazy = check_bis_with(&s, BisOptions { cache_limit: 0 }).unwrap();
        assert!(!lazy.has_cached_tables());
        for a in s.elements() {
            for b in s.elements() {
                assert_eq!(cached.meet(a, b), lazy.meet(a, b));
                if s.compatible(a, b) {
                    assert_eq!(cached.join(a, b).unwrap(), lazy.join(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn relative_complements() {
        let s = symmetric_inverse_semigroup(2);
        let b = check_bis(&s).unwrap();
        assert_eq!(b.relative_complement(el(&s, "12"), el(&s, "1-")).unwrap(), el(&s, "-2"));
        assert_eq!(b.relative_complement(el(&s, "21"), el(&s, "2-")).unwrap(), el(&s, "-1"));
        let swap = el(&s, "21");
        assert_eq!(b.relative_complement(swap, swap).unwrap(), ZERO);
        assert_eq!(
            b.relative_complement(el(&s, "1-"), el(&s, "12")).unwrap_err(),
            Error::NotBelow(el(&s, "12"), el(&s, "1-"))
        );
    }

    #[test]
    fn skew_operations() {
        let s = symmetric_inverse_semigroup(2);
        let b = check_bis(&s).unwrap();
        for a in s.elements() {
            assert_eq!(b.skew_difference(a, ZERO), a);
            assert_eq!(b.skew_join(a, ZERO).unwrap(), a);
            assert_eq!(b.skew_difference(a, a), ZERO);
            assert_eq!(b.skew_join(a, a).unwrap(), a);
        }
        let (id, id1) = (el(&s, "12"), el(&s, "1-"));
        assert_eq!(b.skew_difference(id, id1), el(&s, "-2"));
        assert_eq!(b.skew_join(id, id1).unwrap(), id);
    }

    #[test]
    fn additivity_examples() {
        let i2 = check_bis(&symmetric_inverse_semigroup(2)).unwrap();
        let ident: Vec<usize> = (0..7).collect();
        assert!(i2.check_additive(&i2, &ident).unwrap().additive);

        let sub = check_bis(&boolean_algebra(1)).unwrap();
        let id = i2.base().find_label("12").unwrap();
        assert!(sub.check_additive(&i2, &[ZERO, id]).unwrap().additive);

        let two = check_bis(&boolean_algebra(1)).unwrap();
        let collapse: Vec<usize> = (0..7).map(|a| usize::from(a != ZERO)).collect();
        assert!(matches!(
            i2.check_additive(&two, &collapse),
            Err(Error::NotHomomorphism(..))
        ));
    }

    #[test]
    fn non_additive_homomorphism() {
        // 2^2 → 2^1 sending only the top to 1 preserves products but not p ⊕ q
        let src = check_bis(&boolean_algebra(2)).unwrap();
        let dst = check_bis(&boolean_algebra(1)).unwrap();
        let report = src.check_additive(&dst, &[0, 0, 0, 1]).unwrap();
        assert!(!report.additive);
        assert_eq!(report.witness, Some((1, 2)));
    }
}
