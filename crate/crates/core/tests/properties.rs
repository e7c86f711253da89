use bisem_core::boolean::check_bis;
use bisem_core::congruence::{additive_ideals, epsilon, mu};
use bisem_core::constructions::{boolean_algebra, direct_sum, group_with_zero, zero_direct_union};
use bisem_core::graph::{
    gis_multiply, graph_inverse_semigroup, graph_monoid, path_count_matrix, verify_graph_theorem, DirectedGraph,
};
use bisem_core::io::{parse_cayley, parse_graph, parse_presentation, write_cayley, write_graph, write_presentation};
use bisem_core::pperm::{generate, symmetric_inverse_semigroup};
use bisem_core::rook::{grm_multiply, grm_semigroup};
use bisem_core::typemonoid::{
    check_d_characterizations, check_lr_idempotents, decide_equal, replay, verify_distinct, MonoidPresentation,
    WordBudget, WordVerdict,
};
use bisem_core::{FiniteGroup, InverseSemigroup, PartialPerm};
use proptest::prelude::*;

fn pperm(degree: usize) -> impl Strategy<Value = PartialPerm> {
    (
        Just(degree),
        proptest::sample::subsequence((0..degree).collect::<Vec<_>>(), 0..=degree),
        Just(()),
    )
        .prop_flat_map(|(d, dom, _)| {
            let k = dom.len();
            (
                Just(d),
                Just(dom),
                proptest::sample::subsequence((0..d).collect::<Vec<_>>(), k).prop_shuffle(),
            )
        })
        .prop_map(|(d, dom, ran)| {
            let pairs: Vec<(usize, usize)> = dom.into_iter().zip(ran).collect();
            PartialPerm::new(d, &pairs).unwrap()
        })
}

fn generated() -> impl Strategy<Value = InverseSemigroup> {
    (1usize..=4)
        .prop_flat_map(|d| proptest::collection::vec(pperm(d), 1..=3))
        .prop_map(|gens| generate(&gens, 5000).unwrap().0)
}

fn boolean_piece() -> impl Strategy<Value = InverseSemigroup> {
    prop_oneof![
        (1usize..=2).prop_map(boolean_algebra),
        (1usize..=2).prop_map(symmetric_inverse_semigroup),
        (1usize..=3).prop_map(|n| group_with_zero(&FiniteGroup::cyclic(n))),
    ]
}

fn boolean() -> impl Strategy<Value = InverseSemigroup> {
    (boolean_piece(), boolean_piece(), any::<bool>())
        .prop_map(|(a, b, sum)| if sum { direct_sum(&[&a, &b]) } else { a })
}

/// Acyclic: every edge runs from a lower to a higher vertex.
fn dag() -> impl Strategy<Value = DirectedGraph> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..=3)))
        .prop_map(|(n, pairs)| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut g = DirectedGraph::new();
            for v in &names {
                g.add_vertex(v).unwrap();
            }
            for (i, (a, b)) in pairs.into_iter().filter(|(a, b)| a != b).enumerate() {
                let (s, r) = (a.min(b), a.max(b));
                g.add_edge(&format!("e{i}"), &names[s], &names[r]).unwrap();
            }
            g
        })
}

fn presentation() -> impl Strategy<Value = MonoidPresentation> {
    (1usize..=3).prop_flat_map(|k| {
        let side = move || proptest::collection::vec(0u32..=2, k);
        proptest::collection::vec((side(), side()).prop_filter("sides differ", |(l, r)| l != r), 0..=3).prop_map(
            move |relations| MonoidPresentation::new((0..k).map(|i| format!("g{i}")).collect(), relations).unwrap(),
        )
    })
}

#[test]
fn zero_direct_union_is_not_boolean() {
    let a = boolean_algebra(1);
    assert!(check_bis(&zero_direct_union(&[&a, &a])).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_semigroups_are_inverse(s in generated()) {
        prop_assert!(s.verify().is_valid());
        for a in s.elements() {
            prop_assert!(s.leq(a, a));
            for b in s.elements() {
                let ab = s.mul(a, b);
                prop_assert!(s.leq(s.dom(ab), s.dom(b)) && s.leq(s.ran(ab), s.ran(a)));
                if s.leq(a, b) {
                    prop_assert!(a == b || !s.leq(b, a));
                    prop_assert!(s.leq(s.dom(a), s.dom(b)) && s.leq(s.ran(a), s.ran(b)));
                }
                if s.orthogonal(a, b) {
                    prop_assert!(s.compatible(a, b));
                }
                prop_assert_eq!(s.compatible(a, b), s.compatible_by_lemma(a, b));
                prop_assert_eq!(s.orthogonal(a, b), s.orthogonal_by_lemma(a, b));
            }
        }
    }

    #[test]
    fn order_is_transitive(s in generated()) {
        for a in s.elements() {
            for b in s.up_set(a) {
                for c in s.up_set(b) {
                    prop_assert!(s.leq(a, c));
                }
            }
        }
    }

    #[test]
    fn green_characterizations_agree(s in generated()) {
        prop_assert!(check_lr_idempotents(&s).is_ok());
        prop_assert!(check_d_characterizations(&s).is_ok());
    }

    #[test]
    fn mu_separates_idempotents(s in generated()) {
        let m = mu(&s).unwrap();
        let e = s.idempotents();
        for &x in &e {
            for &y in &e {
                prop_assert!(x == y || !m.related(x, y));
            }
        }
    }

    #[test]
    fn cayley_round_trip(s in generated()) {
        prop_assert_eq!(parse_cayley(&write_cayley(&s)).unwrap().semigroup, s);
    }

    #[test]
    fn joins_distribute(s in boolean()) {
        let b = check_bis(&s).unwrap();
        for a in s.elements() {
            for x in s.elements() {
                for y in s.elements() {
                    if s.orthogonal(x, y) {
                        prop_assert!(s.orthogonal(s.mul(a, x), s.mul(a, y)));
                        prop_assert!(s.orthogonal(s.mul(x, a), s.mul(y, a)));
                    }
                    if !s.compatible(x, y) {
                        continue;
                    }
                    let j = b.join(x, y).unwrap();
                    prop_assert_eq!(s.mul(a, j), b.join(s.mul(a, x), s.mul(a, y)).unwrap());
                    prop_assert_eq!(s.mul(j, a), b.join(s.mul(x, a), s.mul(y, a)).unwrap());
                }
            }
        }
    }

    #[test]
    fn idempotent_joins_match_lattice(s in boolean()) {
        let b = check_bis(&s).unwrap();
        for &e in b.lattice().idempotents() {
            for &f in b.lattice().idempotents() {
                prop_assert_eq!(b.join(e, f).unwrap(), b.lattice().join(e, f));
            }
        }
    }

    #[test]
    fn domain_map_on_down_sets_is_bijective(s in boolean()) {
        for x in s.elements() {
            let below = s.down_set(x);
            let d = s.dom(x);
            let mut images: Vec<usize> = below.iter().map(|&y| s.dom(y)).collect();
            images.sort_unstable();
            let mut expected = s.down_set(d);
            expected.sort_unstable();
            prop_assert_eq!(&images, &expected);
            for &e in &expected {
                prop_assert!(below.contains(&s.mul(x, e)));
                prop_assert_eq!(s.dom(s.mul(x, e)), e);
            }
        }
    }

    #[test]
    fn epsilon_zero_class_is_the_ideal(s in boolean()) {
        let b = check_bis(&s).unwrap();
        let ideals = additive_ideals(&b).unwrap();
        let mut seen = Vec::new();
        for ideal in &ideals {
            let eps = epsilon(&b, ideal).unwrap();
            let mut zero = eps.zero_class().to_vec();
            zero.sort_unstable();
            prop_assert_eq!(zero.as_slice(), ideal.elements());
            prop_assert!(!seen.contains(&eps));
            seen.push(eps);
        }
    }

    #[test]
    fn rook_products_stay_valid(idx in (1usize..=2, 0usize..1000, 0usize..1000)) {
        let (k, i, j) = idx;
        let b = check_bis(&boolean_algebra(1)).unwrap();
        let m = grm_semigroup(&b, k).unwrap();
        let (x, y) = (&m.matrices[i % m.size()], &m.matrices[j % m.size()]);
        let p = grm_multiply(&b, x, y).unwrap();
        prop_assert!(p.is_valid(b.base()));
        prop_assert!(m.index_of(&p).is_some());
        prop_assert!(x.inverse(b.base()).is_valid(b.base()));
    }

    #[test]
    fn word_problem_is_sound(pres in presentation(), u in proptest::collection::vec(0u32..=3, 3), v in proptest::collection::vec(0u32..=3, 3)) {
        let k = pres.rank();
        let (u, v) = (&u[..k], &v[..k]);
        let budget = WordBudget { max_vectors: 2000, max_component: 12 };
        match decide_equal(&pres, u, v, budget).unwrap() {
            WordVerdict::Equal { trace } => prop_assert!(replay(&pres, u, v, &trace)),
            WordVerdict::Distinct { class } => prop_assert!(verify_distinct(&pres, u, v, &class)),
            WordVerdict::Unknown { .. } => {}
        }
    }

    #[test]
    fn presentation_round_trip(pres in presentation()) {
        prop_assert_eq!(parse_presentation(&write_presentation(&pres)).unwrap(), pres);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn graph_round_trip(g in dag()) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn gis_multiplication_is_associative(g in dag()) {
        let gis = graph_inverse_semigroup(&g).unwrap();
        let els = &gis.elements;
        for x in els {
            for y in els {
                let xy = gis_multiply(&g, x, y);
                for z in els {
                    prop_assert_eq!(gis_multiply(&g, &xy, z), gis_multiply(&g, x, &gis_multiply(&g, y, z)));
                }
            }
        }
    }

    #[test]
    fn graph_theorem_holds_on_dags(g in dag()) {
        let report = verify_graph_theorem(&g, WordBudget::default()).unwrap();
        let counts = path_count_matrix(&g).unwrap();
        let sinks = g.sinks();
        prop_assert_eq!(report.rank(), sinks.len());
        for v in 0..g.num_vertices() {
            let want: Vec<u32> = sinks.iter().map(|&w| counts[v][w] as u32).collect();
            prop_assert_eq!(&report.images[v], &want);
        }
    }

    #[test]
    fn graph_monoid_normal_form_matches_word_problem(g in dag(), a in proptest::collection::vec(0u32..=2, 4), b in proptest::collection::vec(0u32..=2, 4)) {
        let gm = graph_monoid(&g).unwrap();
        let n = g.num_vertices();
        let (a, b) = (&a[..n], &b[..n]);
        let same = gm.reduce(a).unwrap() == gm.reduce(b).unwrap();
        match decide_equal(&gm.presentation, a, b, WordBudget::default()).unwrap() {
            WordVerdict::Equal { .. } => prop_assert!(same),
            WordVerdict::Distinct { .. } => prop_assert!(!same),
            WordVerdict::Unknown { .. } => {}
        }
    }
}
