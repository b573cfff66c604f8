//! Property tests against brute-force oracles.

mod common;

use lightsub::density::{mad_bruteforce, mad_exact};
use lightsub::discharge::{lemma_l_margin, rule_set, run_discharge};
use lightsub::patterns::{find_all, find_pattern, omega_k, ThreadEntry};
use lightsub::theorems::{
    builtin, builtin_names, default_profile, gen_corpus, parse_pattern, parse_theorem_spec, render_theorem_spec,
    Hypotheses, MinDegree,
};
use lightsub::{DegSpec, Graph, Instance, Pattern, PlaneGraph, Rational, TheoremSpec};
use proptest::collection::vec;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

/// Random graphs with many 2-vertices: a random base with every edge
/// subdivided 0 to 2 times.
fn sparse_strategy() -> impl Strategy<Value = Graph> {
    graph_strategy(5).prop_flat_map(|g| {
        let m = g.size();
        (Just(g), vec(0usize..3, m)).prop_map(|(g, counts)| {
            let plan: Vec<_> = g.edges().zip(counts).collect();
            g.subdivide_many(&plan).unwrap()
        })
    })
}

/// Subdivided graphs of minimum degree at least 2: a Hamiltonian cycle plus
/// random chords, with every edge subdivided 0 to 2 times.
fn min2_strategy() -> impl Strategy<Value = Graph> {
    (3usize..=6, graph_strategy(6)).prop_flat_map(|(n, extra)| {
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend(extra.edges().filter(|&(u, v)| u < n && v < n));
        let g = Graph::new(n, &edges).unwrap();
        let m = g.size();
        (Just(g), vec(0usize..3, m)).prop_map(|(g, counts)| {
            let plan: Vec<_> = g.edges().zip(counts).collect();
            g.subdivide_many(&plan).unwrap()
        })
    })
}

fn spec_strategy() -> impl Strategy<Value = DegSpec> {
    prop_oneof![
        (1usize..6).prop_map(DegSpec::Exact),
        (1usize..6).prop_map(DegSpec::AtMost),
        (1usize..6).prop_map(DegSpec::AtLeast),
        Just(DegSpec::Any),
    ]
}

fn entry_strategy() -> impl Strategy<Value = ThreadEntry> {
    (0usize..3, proptest::option::of(spec_strategy())).prop_map(|(min_len, neighbor)| ThreadEntry { min_len, neighbor })
}

fn pattern_strategy() -> impl Strategy<Value = Pattern> {
    prop_oneof![
        vec(spec_strategy(), 2..=4).prop_map(Pattern::Path),
        vec(spec_strategy(), 3..=4).prop_map(Pattern::Cycle),
        (spec_strategy(), vec(spec_strategy(), 1..=3)).prop_map(|(center, leaves)| Pattern::Star { center, leaves }),
        (spec_strategy(), vec(entry_strategy(), 1..=3))
            .prop_map(|(center, entries)| Pattern::Threads { center, entries }),
    ]
    .prop_filter("valid pattern", |p| p.validate().is_ok())
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (1i64..40, 1i64..12).prop_map(|(n, d)| Rational::new(n, d))
}

fn theorem_strategy() -> impl Strategy<Value = TheoremSpec> {
    (
        any::<bool>(),
        proptest::option::of((any::<bool>(), 1usize..5)),
        proptest::option::of(rational_strategy()),
        proptest::option::of(rational_strategy()),
        proptest::option::of(3usize..9),
        vec(pattern_strategy(), 0..2),
        vec(pattern_strategy(), 1..4),
        proptest::option::of(prop::sample::select(vec!["mad3", "girth7", "madthm2"])),
    )
        .prop_map(|(plane, min_degree, avg, mad, girth, forbidden, conclusions, rules)| TheoremSpec {
            name: "random".into(),
            hypotheses: Hypotheses {
                plane,
                triangle_free_npm: false,
                min_degree: min_degree.map(|(exact, k)| if exact { MinDegree::Exactly(k) } else { MinDegree::AtLeast(k) }),
                avg_below: avg,
                mad_below: mad,
                girth_at_least: girth,
                face_size_at_least: if plane { girth } else { None },
                forbidden,
            },
            conclusions: conclusions.into_iter().enumerate().map(|(i, p)| (format!("c{i}"), p)).collect(),
            rules: rules.map(String::from),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn find_pattern_matches_oracle(g in graph_strategy(7), p in pattern_strategy()) {
        let got = find_pattern(&g, &p).map(|w| w.vertices);
        prop_assert_eq!(got, common::brute_find(&g, &p));
    }

    #[test]
    fn find_pattern_matches_oracle_on_sparse(g in sparse_strategy(), p in pattern_strategy()) {
        prop_assume!(g.order() <= 9);
        let got = find_pattern(&g, &p).map(|w| w.vertices);
        prop_assert_eq!(got, common::brute_find(&g, &p));
    }

    #[test]
    fn find_all_matches_oracle(g in graph_strategy(6), p in pattern_strategy()) {
        let got: Vec<Vec<usize>> = find_all(&g, &p, usize::MAX).into_iter().map(|w| w.vertices).collect();
        let want = common::brute_find_all(&g, &p);
        prop_assert_eq!(&got, &want);
        let limited = find_all(&g, &p, 2);
        prop_assert_eq!(limited.len(), want.len().min(2));
        for w in find_all(&g, &p, usize::MAX) {
            prop_assert!(w.is_valid(&g, &p));
        }
    }

    #[test]
    fn omega_matches_brute_force(g in graph_strategy(7), k in 1usize..5) {
        let path = Pattern::Path(vec![DegSpec::Any; k.max(2)]);
        let brute = if k == 1 {
            g.degrees().into_iter().min()
        } else {
            common::all_realizations(&g, &path)
                .iter()
                .map(|s| s.iter().map(|&v| g.degree(v)).sum())
                .min()
        };
        prop_assert_eq!(omega_k(&g, k), brute);
    }

    #[test]
    fn pattern_text_round_trips(p in pattern_strategy()) {
        let text = p.to_string();
        prop_assert_eq!(parse_pattern(&text).unwrap(), p);
    }

    #[test]
    fn theorem_text_round_trips(spec in theorem_strategy()) {
        let text = render_theorem_spec(&spec);
        let parsed = parse_theorem_spec(&text).unwrap();
        prop_assert_eq!(render_theorem_spec(&parsed), text);
        prop_assert_eq!(parsed, spec);
    }

    #[test]
    fn parser_never_panics(s in "[a-z(),;\\[\\]:0-9+*\\- ]{0,30}") {
        let _ = parse_pattern(&s);
    }

    #[test]
    fn edge_list_round_trips(g in graph_strategy(10)) {
        prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn subdivision_adds_two_per_vertex(g in graph_strategy(8), t in 0usize..4) {
        prop_assume!(g.size() > 0);
        let (u, v) = g.edges().next().unwrap();
        let h = g.subdivide(u, v, t).unwrap();
        prop_assert_eq!(h.order(), g.order() + t);
        prop_assert_eq!(h.degree_sum(), g.degree_sum() + 2 * t);
        prop_assert_eq!(h.degree_sum(), 2 * h.size());
    }

    #[test]
    fn threads_partition_two_vertices(g in min2_strategy()) {
        let threads = g.maximal_threads().unwrap();
        let mut covered: Vec<usize> = threads.iter().flat_map(|t| t.internal.clone()).collect();
        covered.sort_unstable();
        let twos: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) == 2).collect();
        prop_assert_eq!(covered, twos);
        for t in threads.iter().filter(|t| !t.is_closed()) {
            let (a, b) = t.ends.unwrap();
            prop_assert!(g.degree(a) != 2 && g.degree(b) != 2);
            prop_assert!(g.has_edge(a, t.internal[0]));
            prop_assert!(g.has_edge(b, *t.internal.last().unwrap()));
        }
    }

    #[test]
    fn lemma_margin_decreases_in_rho(k in 1usize..30, a in rational_strategy(), b in rational_strategy()) {
        prop_assume!(a < b);
        prop_assert!(lemma_l_margin(k, a) > lemma_l_margin(k, b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mad_matches_bruteforce(g in graph_strategy(12)) {
        let exact = mad_exact(&g).unwrap();
        let brute = mad_bruteforce(&g).unwrap();
        prop_assert_eq!(exact.mad, brute.mad);
        prop_assert_eq!(&exact.witness, &brute.witness);
        let w = &exact.witness;
        let density = Rational::new(2 * g.induced_size(w) as i64, w.len() as i64);
        prop_assert_eq!(density, exact.mad);
        prop_assert!(g.average_degree().unwrap() <= exact.mad);
    }

    #[test]
    fn plane_edits_keep_euler_and_total(k in 3usize..8, subdivisions in vec(0usize..3, 3), chord in any::<prop::sample::Index>()) {
        let mut pg = PlaneGraph::prism(k).unwrap();
        for (d, t) in subdivisions.into_iter().enumerate() {
            pg.subdivide_edge_times(2 * d, t).unwrap();
        }
        let report = pg.faces().unwrap();
        let face = report.faces.iter().max_by_key(|f| f.len()).unwrap().clone();
        let i = chord.index(face.len());
        let j = (i + 2) % face.len();
        if pg.vertex(face[i]) != pg.vertex(face[j]) {
            pg.add_chord(face[i], face[j]).unwrap();
        }
        let report = pg.faces().unwrap();
        prop_assert_eq!(pg.order() as i64 - pg.edge_count() as i64 + report.faces.len() as i64, 2);
        let set = rule_set("girth7").unwrap();
        let out = run_discharge(&Instance::Plane(pg), &set.charge, &set.rules).unwrap();
        prop_assert_eq!(out.total_initial, Rational::from_integer(-8));
        prop_assert_eq!(out.total_final, Rational::from_integer(-8));
    }
}

/// Where a proof's rules leave some element negative, the instance must
/// contain one of the theorem's configurations.
#[test]
fn negative_charge_implies_configuration() {
    let mut negative_runs = 0;
    for (k, name) in builtin_names().iter().enumerate() {
        let spec = builtin(name).unwrap();
        let Some(set_name) = &spec.rules else { continue };
        let set = rule_set(set_name).unwrap();
        let corpus = gen_corpus(&default_profile(name).unwrap(), &spec, 500 + k as u64, 40).unwrap();
        for inst in &corpus {
            let Ok(report) = run_discharge(inst, &set.charge, &set.rules) else { continue };
            if report.negatives.is_empty() {
                continue;
            }
            negative_runs += 1;
            let g = inst.graph().unwrap();
            assert!(
                spec.conclusions.iter().any(|(_, p)| find_pattern(&g, p).is_some()),
                "{name}: negative charge without a configuration"
            );
        }
    }
    assert!(negative_runs > 0);
}

#[test]
fn threads_on_small_fixed_graphs() {
    // a 3-vertex with arms of two, one and zero 2-vertices
    let g = Graph::new(7, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 3), (0, 5), (5, 6), (6, 3), (5, 3)]).unwrap();
    let p = parse_pattern("threads(3;[2,1,0:4-])").unwrap();
    assert_eq!(find_pattern(&g, &p).map(|w| w.vertices), common::brute_find(&g, &p));
}
