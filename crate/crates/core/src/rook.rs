//! Generalized rook matrices `M_k(S)` over a Boolean inverse semigroup `S`
//! and the checks relating `Typ(S)` to `Int(M_k(S))`.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::boolean::{check_bis, BooleanInverseSemigroup};
use crate::error::{violation, Error, Result};
use crate::pperm::DEFAULT_ELEMENT_CAP;
use crate::semigroup::{InverseSemigroup, ZERO};
use crate::typemonoid::{decide_equal, int_monoid, typ, IntMonoid, NVec, TypeMonoid, WordBudget, WordVerdict};

pub const DEFAULT_DIM: usize = 2;

/// A `k × k` matrix of elements of `S`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedRookMatrix {
    k: usize,
    entries: Vec<usize>,
}

impl GeneralizedRookMatrix {
    /// Checks row ranges and column domains for orthogonality.
    pub fn new(s: &InverseSemigroup, k: usize, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != k * k || entries.iter().any(|&x| x >= s.size()) {
            return Err(Error::Invalid(format!("expected {} entries of S", k * k)));
        }
        let m = GeneralizedRookMatrix { k, entries };
        if !m.is_valid(s) {
            return Err(Error::Invalid("entries violate row or column orthogonality".into()));
        }
        Ok(m)
    }

    pub fn zero(k: usize) -> Self {
        GeneralizedRookMatrix {
            k,
            entries: vec![ZERO; k * k],
        }
    }

    /// `Δ(a_1, …, a_n)` padded with zeros to size `k`.
    pub fn delta(k: usize, diag: &[usize]) -> Result<Self> {
        if diag.len() > k {
            return Err(Error::Invalid(format!(
                "{} diagonal entries do not fit in dimension {k}",
                diag.len()
            )));
        }
        let mut m = Self::zero(k);
        for (i, &a) in diag.iter().enumerate() {
            m.entries[i * k + i] = a;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.k + j]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|&&x| x != ZERO).count()
    }

    pub fn is_valid(&self, s: &InverseSemigroup) -> bool {
        let k = self.k;
        (0..k).all(|i| {
            (0..k).all(|j| {
                (j + 1..k).all(|l| {
                    s.mul(s.ran(self.get(i, j)), s.ran(self.get(i, l))) == ZERO
                        && s.mul(s.dom(self.get(j, i)), s.dom(self.get(l, i))) == ZERO
                })
            })
        })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.k).all(|i| (0..self.k).all(|j| i == j || self.get(i, j) == ZERO))
    }

    pub fn diagonal(&self) -> Vec<usize> {
        (0..self.k).map(|i| self.get(i, i)).collect()
    }

    pub fn inverse(&self, s: &InverseSemigroup) -> Self {
        let k = self.k;
        GeneralizedRookMatrix {
            k,
            entries: (0..k * k).map(|x| s.inv(self.get(x % k, x / k))).collect(),
        }
    }

    pub fn label(&self, s: &InverseSemigroup) -> String {
        let rows: Vec<String> = (0..self.k)
            .map(|i| {
                (0..self.k)
                    .map(|j| s.label(self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("[{}]", rows.join(";"))
    }
}

/// `c_ij = ⋁_t a_it b_tj`; the joined terms are checked to be pairwise
/// orthogonal.
pub fn grm_multiply(
    b: &BooleanInverseSemigroup,
    x: &GeneralizedRookMatrix,
    y: &GeneralizedRookMatrix,
) -> Result<GeneralizedRookMatrix> {
    let s = b.base();
    let k = x.k;
    if y.k != k {
        return Err(Error::Invalid("matrices of different dimensions".into()));
    }
    let mut entries = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = ZERO;
            for t in 0..k {
                let term = s.mul(x.get(i, t), y.get(t, j));
                if term == ZERO {
                    continue;
                }
                if !s.orthogonal(acc, term) {
                    return Err(violation(
                        "terms of a rook product are orthogonal",
                        format!("entry ({i}, {j})"),
                    ));
                }
                acc = b.join(acc, term)?;
            }
            entries.push(acc);
        }
    }
    let m = GeneralizedRookMatrix { k, entries };
    if !m.is_valid(s) {
        return Err(violation("rook products are rook matrices", m.label(s)));
    }
    Ok(m)
}

/// `M_k(S)` with its matrices.
#[derive(Clone, Debug)]
pub struct GrmSemigroup {
    pub k: usize,
    pub base: BooleanInverseSemigroup,
    pub bis: BooleanInverseSemigroup,
    pub matrices: Vec<GeneralizedRookMatrix>,
    index: HashMap<GeneralizedRookMatrix, usize>,
}

impl GrmSemigroup {
    pub fn index_of(&self, m: &GeneralizedRookMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn delta(&self, diag: &[usize]) -> Result<usize> {
        let m = GeneralizedRookMatrix::delta(self.k, diag)?;
        self.index_of(&m)
            .ok_or_else(|| Error::Invalid("diagonal entries must be idempotent-compatible".into()))
    }

    pub fn size(&self) -> usize {
        self.matrices.len()
    }
}

pub fn grm_semigroup(b: &BooleanInverseSemigroup, k: usize) -> Result<GrmSemigroup> {
    grm_semigroup_with(b, k, DEFAULT_ELEMENT_CAP)
}

/// Enumerates every valid `k × k` generalized rook matrix over `S`,
/// certifies the result and checks that idempotents are diagonal with
/// idempotent entries and that the order is entrywise.
pub fn grm_semigroup_with(b: &BooleanInverseSemigroup, k: usize, cap: usize) -> Result<GrmSemigroup> {
    if k == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    let s = b.base();
    let mut found = Vec::new();
    let mut cells = vec![ZERO; k * k];
    enumerate(s, k, 0, &mut cells, &mut found, cap)?;
    found.sort_by(|x, y| x.nonzero_count().cmp(&y.nonzero_count()).then_with(|| x.cmp(y)));
    let err = RefCell::new(None);
    let t = InverseSemigroup::from_elements(
        &found,
        |x, y| match grm_multiply(b, x, y) {
            Ok(m) => m,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                GeneralizedRookMatrix::zero(k)
            }
        },
        |x| x.inverse(s),
        |x| if x.nonzero_count() == 0 { "0".into() } else { x.label(s) },
    );
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    let t = t?;
    let bis = check_bis(&t).map_err(|f| violation("M_k(S) is a Boolean inverse semigroup", f.to_string()))?;
    for (i, m) in found.iter().enumerate() {
        if t.is_idempotent(i) && !(m.is_diagonal() && m.diagonal().iter().all(|&e| s.is_idempotent(e))) {
            return Err(violation("idempotents of M_k(S) are diagonal", m.label(s)));
        }
    }
    for (i, x) in found.iter().enumerate() {
        for (j, y) in found.iter().enumerate() {
            let entrywise = x.entries.iter().zip(&y.entries).all(|(&a, &c)| s.leq(a, c));
            if entrywise != t.leq(i, j) {
                return Err(violation(
                    "order on M_k(S) is entrywise",
                    format!("{} vs {}", x.label(s), y.label(s)),
                ));
            }
        }
    }
    let index = found.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Ok(GrmSemigroup {
        k,
        base: b.clone(),
        bis,
        matrices: found,
        index,
    })
}

fn enumerate(
    s: &InverseSemigroup,
    k: usize,
    cell: usize,
    cells: &mut Vec<usize>,
    out: &mut Vec<GeneralizedRookMatrix>,
    cap: usize,
) -> Result<()> {
    if cell == k * k {
        if out.len() >= cap {
            return Err(Error::SizeBudgetExceeded { cap });
        }
        out.push(GeneralizedRookMatrix {
            k,
            entries: cells.clone(),
        });
        return Ok(());
    }
    let (i, j) = (cell / k, cell % k);
    for x in s.elements() {
        let fits = x == ZERO
            || ((0..j).all(|l| s.mul(s.ran(cells[i * k + l]), s.ran(x)) == ZERO)
                && (0..i).all(|l| s.mul(s.dom(cells[l * k + j]), s.dom(x)) == ZERO));
        if fits {
            cells[cell] = x;
            enumerate(s, k, cell + 1, cells, out, cap)?;
        }
    }
    cells[cell] = ZERO;
    Ok(())
}

/// Checks that `Δ: S → M_k(S)` is an injective additive homomorphism and,
/// for `k ≤ 3`, that `Δ(S) M_k(S) Δ(S) = Δ(S)`.
pub fn verify_delta_embedding(m: &GrmSemigroup) -> Result<()> {
    let s = m.base.base();
    let map: Vec<usize> = s.elements().map(|x| m.delta(&[x])).collect::<Result<_>>()?;
    let mut seen = map.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != map.len() {
        return Err(violation("Δ is injective", "two elements share a diagonal matrix"));
    }
    let report = m.base.check_additive(&m.bis, &map)?;
    if !report.additive {
        return Err(violation("Δ is additive", format!("{:?}", report.witness)));
    }
    if m.k <= 3 {
        let t = m.bis.base();
        let image: std::collections::HashSet<usize> = map.iter().copied().collect();
        for &a in &map {
            for &c in &map {
                for x in t.elements() {
                    if !image.contains(&t.product(&[a, x, c])) {
                        return Err(violation("Δ(S) is a quasi-ideal", t.label(x).to_string()));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Counts of instances checked by [`verify_d_lemmas`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DLemmaReport {
    pub diagonal_to_delta: usize,
    pub same_entries: usize,
    pub entrywise_d: usize,
    pub sums: usize,
}

fn diagonal_idempotents(m: &GrmSemigroup) -> Vec<usize> {
    let t = m.bis.base();
    t.elements().filter(|&i| t.is_idempotent(i)).collect()
}

fn nonzero(v: &[usize]) -> Vec<usize> {
    v.iter().copied().filter(|&x| x != ZERO).collect()
}

/// Checks the `D`-relation lemmas for diagonal matrices in `M_k(S)`
/// exhaustively, using the explicit witnesses from their proofs.
pub fn verify_d_lemmas(m: &GrmSemigroup) -> Result<DLemmaReport> {
    let s = m.base.base();
    let t = m.bis.base();
    let green = t.green_data();
    let k = m.k;
    let mut report = DLemmaReport::default();
    let idems = diagonal_idempotents(m);
    // A diagonal with entries e_i at positions k_i is D-related to Δ(e_1..e_n)
    // via B with b_{i,k_i} = e_i.
    for &a in &idems {
        let diag = m.matrices[a].diagonal();
        let mut cells = vec![ZERO; k * k];
        for (i, (pos, &e)) in diag.iter().enumerate().filter(|&(_, &e)| e != ZERO).enumerate() {
            cells[i * k + pos] = e;
        }
        let bm = m
            .index_of(&GeneralizedRookMatrix::new(s, k, cells)?)
            .ok_or_else(|| violation("witness of lem D(1) is a rook matrix", m.matrices[a].label(s)))?;
        let delta = m.delta(&nonzero(&diag))?;
        if t.dom(bm) != a || t.ran(bm) != delta {
            return Err(violation(
                "diagonal matrices are D-related to Δ",
                t.label(a).to_string(),
            ));
        }
        report.diagonal_to_delta += 1;
    }
    for &a in &idems {
        for &c in &idems {
            if nonzero(&m.matrices[a].diagonal()) == nonzero(&m.matrices[c].diagonal()) {
                if !green.d_related(a, c) {
                    return Err(violation(
                        "diagonals with equal entries are D-related",
                        format!("{} {}", t.label(a), t.label(c)),
                    ));
                }
                report.same_entries += 1;
            }
        }
    }
    // Δ(e) D Δ(e') when e_i D e'_i, via Δ(s_1..s_n) with d(s_i) = e_i, r(s_i) = e'_i
    let base_green = s.green_data();
    for &a in &idems {
        for &c in &idems {
            let (da, dc) = (m.matrices[a].diagonal(), m.matrices[c].diagonal());
            if !da.iter().zip(&dc).all(|(&e, &f)| base_green.d_related(e, f)) {
                continue;
            }
            let witness: Vec<usize> = da
                .iter()
                .zip(&dc)
                .map(|(&e, &f)| {
                    s.elements()
                        .find(|&x| s.dom(x) == e && s.ran(x) == f)
                        .expect("D-related idempotents")
                })
                .collect();
            let w = m.delta(&witness)?;
            if t.dom(w) != a || t.ran(w) != c {
                return Err(violation(
                    "entrywise D-related diagonals are D-related",
                    format!("{} {}", t.label(a), t.label(c)),
                ));
            }
            report.entrywise_d += 1;
        }
    }
    // [Δ(e_1..e_n)] + [Δ(f_1..f_m)] = [Δ(e_1..e_n, f_1..f_m)] when n + m ≤ k
    let int = int_monoid(&m.bis)?;
    let prefix_deltas: Vec<(usize, Vec<usize>)> = idems
        .iter()
        .map(|&a| (a, m.matrices[a].diagonal()))
        .filter(|(_, d)| {
            let n = nonzero(d).len();
            d[..n].iter().all(|&e| e != ZERO)
        })
        .collect();
    for (a, da) in &prefix_deltas {
        for (c, dc) in &prefix_deltas {
            let (ea, ec) = (nonzero(da), nonzero(dc));
            if ea.len() + ec.len() > k {
                continue;
            }
            let joined = m.delta(&[ea.clone(), ec].concat())?;
            let sum = int.pcm.add(int.class_of_idempotent(*a), int.class_of_idempotent(*c));
            if sum != Some(int.class_of_idempotent(joined)) {
                return Err(violation(
                    "addition of Δ classes concatenates",
                    format!("{} + {}", t.label(*a), t.label(*c)),
                ));
            }
            report.sums += 1;
        }
    }
    Ok(report)
}

/// Outcome of [`verify_type_theorem`] at truncation `k`.
#[derive(Clone, Debug)]
pub struct TypeTheoremReport {
    pub k: usize,
    pub typ: TypeMonoid,
    pub int_matrices: IntMonoid,
    /// `Typ(S)` vector of each class of `Int(M_k(S))`.
    pub class_vectors: Vec<NVec>,
    /// Relations of `Typ(S)` witnessed by a matrix in `M_k(S)`.
    pub relations_witnessed: usize,
    /// Pairs of `Int(M_k(S))` classes whose vectors were compared.
    pub pairs_compared: usize,
    pub mismatches: Vec<String>,
}

impl TypeTheoremReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Soundness: each relation `[e] + [f] = [e ⊕ f]` of `Typ(S)` holds in
/// `Int(M_k(S))`, witnessed by `A = [[e, 0], [f, 0]]`. Completeness at
/// scale: two diagonal idempotents of `M_k(S)` are `D`-related exactly when
/// their `Typ(S)` vectors are equal.
pub fn verify_type_theorem(m: &GrmSemigroup, budget: WordBudget) -> Result<TypeTheoremReport> {
    let s = m.base.base();
    let t = m.bis.base();
    let k = m.k;
    let ty = typ(&m.base)?;
    let int = int_monoid(&m.bis)?;
    let mut mismatches = Vec::new();
    let class_of_delta = |e: usize| -> Result<usize> { Ok(int.class_of_idempotent(m.delta(&[e])?)) };
    // [e] ↦ [Δ(e)] is well defined
    for class in &ty.int.classes {
        let images: Vec<usize> = class.iter().map(|&e| class_of_delta(e)).collect::<Result<_>>()?;
        if images.iter().any(|&c| c != images[0]) {
            mismatches.push(format!("Δ is not constant on the class of {}", s.label(class[0])));
        }
    }
    let mut relations_witnessed = 0;
    if k >= 2 {
        let lattice = m.base.lattice();
        let es = lattice.idempotents();
        for p in 1..ty.int.pcm.size() {
            for q in p..ty.int.pcm.size() {
                let Some(r) = ty.int.pcm.add(p, q) else { continue };
                let (e, f) = es
                    .iter()
                    .flat_map(|&e| es.iter().map(move |&f| (e, f)))
                    .find(|&(e, f)| {
                        ty.int.class_of[e] == Some(p) && ty.int.class_of[f] == Some(q) && s.mul(e, f) == ZERO
                    })
                    .ok_or_else(|| violation("defined sums have orthogonal representatives", format!("{p} ⊕ {q}")))?;
                let mut cells = vec![ZERO; k * k];
                cells[0] = e;
                cells[k] = f;
                let a = m
                    .index_of(&GeneralizedRookMatrix::new(s, k, cells)?)
                    .ok_or_else(|| violation("witness matrix lies in M_k(S)", "missing"))?;
                let ef = lattice.join(e, f);
                if t.ran(a) != m.delta(&[e, f])? || t.dom(a) != m.delta(&[ef])? || ty.int.class_of[ef] != Some(r) {
                    mismatches.push(format!(
                        "relation {} + {} = {} has no matrix witness",
                        ty.int.pcm.label(p),
                        ty.int.pcm.label(q),
                        ty.int.pcm.label(r)
                    ));
                    continue;
                }
                let (cp, cq, cr) = (class_of_delta(e)?, class_of_delta(f)?, class_of_delta(ef)?);
                if int.pcm.add(cp, cq) != Some(cr) {
                    mismatches.push(format!(
                        "[Δ({})] + [Δ({})] ≠ [Δ({})]",
                        s.label(e),
                        s.label(f),
                        s.label(ef)
                    ));
                    continue;
                }
                relations_witnessed += 1;
            }
        }
    }
    // Typ(S) vector of each Int(M_k(S)) class, from a diagonal representative
    let class_vectors: Vec<NVec> = int
        .classes
        .iter()
        .map(|c| {
            let mut v = ty.presentation.zero();
            for e in m.matrices[c[0]].diagonal() {
                let cls = ty.int.class_of_idempotent(e);
                if cls != ZERO {
                    v[cls - 1] += 1;
                }
            }
            v
        })
        .collect();
    let vector_of = |a: usize| -> NVec {
        let mut v = ty.presentation.zero();
        for e in m.matrices[a].diagonal() {
            let cls = ty.int.class_of_idempotent(e);
            if cls != ZERO {
                v[cls - 1] += 1;
            }
        }
        v
    };
    let mut pairs_compared = 0;
    let mut decide = |u: &NVec, v: &NVec| -> Result<bool> {
        pairs_compared += 1;
        match decide_equal(&ty.presentation, u, v, budget)? {
            WordVerdict::Equal { .. } => Ok(true),
            WordVerdict::Distinct { .. } => Ok(false),
            WordVerdict::Unknown { .. } => Err(Error::Inconclusive(format!(
                "word problem {u:?} = {v:?} exceeded the budget"
            ))),
        }
    };
    for (ci, class) in int.classes.iter().enumerate() {
        let mut vectors: Vec<NVec> = class.iter().map(|&a| vector_of(a)).collect();
        vectors.sort();
        vectors.dedup();
        for v in &vectors[1..] {
            if !decide(&vectors[0], v)? {
                mismatches.push(format!(
                    "class {} has unequal vectors {:?} and {:?}",
                    int.pcm.label(ci),
                    vectors[0],
                    v
                ));
            }
        }
    }
    for i in 0..class_vectors.len() {
        for j in i + 1..class_vectors.len() {
            if decide(&class_vectors[i], &class_vectors[j])? {
                mismatches.push(format!(
                    "classes {} and {} of Int(M_{k}(S)) have equal vectors",
                    int.pcm.label(i),
                    int.pcm.label(j)
                ));
            }
        }
    }
    Ok(TypeTheoremReport {
        k,
        typ: ty,
        int_matrices: int,
        class_vectors,
        relations_witnessed,
        pairs_compared,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean_algebra, group_with_zero};
    use crate::group::FiniteGroup;
    use crate::morphism::find_isomorphism;
    use crate::pperm::symmetric_inverse_semigroup;

    fn bis(s: &InverseSemigroup) -> BooleanInverseSemigroup {
        check_bis(s).unwrap()
    }

    fn z2() -> InverseSemigroup {
        group_with_zero(&FiniteGroup::cyclic(2))
    }

    #[test]
    fn multiply_examples() {
        let i1 = bis(&symmetric_inverse_semigroup(1));
        let s = i1.base();
        let e = 1;
        let d = GeneralizedRookMatrix::delta(1, &[e]).unwrap();
        assert_eq!(grm_multiply(&i1, &d, &d).unwrap(), d);
        let anti = GeneralizedRookMatrix::new(s, 2, vec![0, e, e, 0]).unwrap();
        assert_eq!(
            grm_multiply(&i1, &anti, &anti).unwrap(),
            GeneralizedRookMatrix::delta(2, &[e, e]).unwrap()
        );

        let i2 = bis(&symmetric_inverse_semigroup(2));
        let s = i2.base();
        let (id1, id2, id) = (
            s.find_label("1-").unwrap(),
            s.find_label("-2").unwrap(),
            s.find_label("12").unwrap(),
        );
        let a = GeneralizedRookMatrix::new(s, 2, vec![id1, id2, 0, 0]).unwrap();
        let product = grm_multiply(&i2, &a, &a.inverse(s)).unwrap();
        assert_eq!(product, GeneralizedRookMatrix::delta(2, &[id]).unwrap());
        assert!(GeneralizedRookMatrix::new(s, 2, vec![id1, id1, 0, 0]).is_err());
    }

    #[test]
    fn semigroup_sizes() {
        let i1 = bis(&symmetric_inverse_semigroup(1));
        let m = grm_semigroup(&i1, 2).unwrap();
        assert_eq!(m.size(), 7);
        assert!(find_isomorphism(m.bis.base(), &symmetric_inverse_semigroup(2)).is_some());
        assert_eq!(grm_semigroup(&i1, 1).unwrap().size(), 2);
        assert_eq!(grm_semigroup(&bis(&z2()), 2).unwrap().size(), 17);
        assert_eq!(
            grm_semigroup_with(&i1, 3, 10).unwrap_err(),
            Error::SizeBudgetExceeded { cap: 10 }
        );
    }

    #[test]
    fn delta_embeds() {
        for (s, k) in [
            (symmetric_inverse_semigroup(1), 3),
            (z2(), 2),
            (symmetric_inverse_semigroup(2), 2),
        ] {
            verify_delta_embedding(&grm_semigroup(&bis(&s), k).unwrap()).unwrap();
        }
    }

    #[test]
    fn d_lemmas() {
        let r = verify_d_lemmas(&grm_semigroup(&bis(&symmetric_inverse_semigroup(1)), 3).unwrap()).unwrap();
        assert_eq!(r.diagonal_to_delta, 8);
        verify_d_lemmas(&grm_semigroup(&bis(&z2()), 2).unwrap()).unwrap();
        let r = verify_d_lemmas(&grm_semigroup(&bis(&InverseSemigroup::trivial()), 2).unwrap()).unwrap();
        assert_eq!(r.diagonal_to_delta, 1);
    }

    #[test]
    fn type_theorem_at_small_scale() {
        let r = verify_type_theorem(
            &grm_semigroup(&bis(&symmetric_inverse_semigroup(1)), 3).unwrap(),
            WordBudget::default(),
        )
        .unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        let mut vs = r.class_vectors.clone();
        vs.sort();
        assert_eq!(vs, vec![vec![0], vec![1], vec![2], vec![3]]);

        let r = verify_type_theorem(
            &grm_semigroup(&bis(&symmetric_inverse_semigroup(2)), 2).unwrap(),
            WordBudget::default(),
        )
        .unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert_eq!(r.relations_witnessed, 1);

        for s in [z2(), boolean_algebra(2)] {
            let r = verify_type_theorem(&grm_semigroup(&bis(&s), 2).unwrap(), WordBudget::default()).unwrap();
            assert!(r.passed(), "{:?}", r.mismatches);
        }
    }
}
