mod common;

use common::*;
use gpnet_core::generators::{
    attach_labeling, benes, benes_half_embedding, butterfly, primitive, product, LabelingScheme,
    LatticeKind, Primitive, ProductKind,
};
use gpnet_core::geodesy::{
    exact_isometric_cover_size, greedy_isometric_cover_from, separation_witness,
    verify_general_position, verify_isometric_cover, Verdict,
};
use gpnet_core::monotone::{
    check_monotone_geodesic_labeling, is_monotone, longest_monotone_subsequence,
    monotone_point_triple, LabelingVerdict,
};
use gpnet_core::report::{run_report, ReportConfig, Scope};
use gpnet_core::solver::{max_general_position, SolveOptions, SolveStatus};
use gpnet_core::{all_pairs_distances, clique_number, is_isometric_embedding, Graph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn connected_graph() -> impl Strategy<Value = Graph> {
    (1usize..=10, 0.0f64..0.7, any::<u64>())
        .prop_map(|(n, p, seed)| random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n, p))
}

fn subset_of(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n.min(7))
}

fn graph_and_subset() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    connected_graph().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), subset_of(n))
    })
}

fn exact(g: &Graph, forced: Vec<usize>) -> usize {
    let d = all_pairs_distances(g);
    let r = max_general_position(
        g,
        &d,
        &SolveOptions {
            forced,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(r.status, SolveStatus::Optimal);
    r.size
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bfs_matches_floyd_warshall(g in connected_graph()) {
        let d = all_pairs_distances(&g);
        let fw = floyd_warshall(&g);
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert_eq!(d.get(u, v), fw[u][v]);
            }
        }
    }

    #[test]
    fn distances_form_a_metric(g in connected_graph()) {
        let d = all_pairs_distances(&g);
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert_eq!(d.get(u, v), d.get(v, u));
                prop_assert_eq!(d.get(u, v) == 0, u == v);
                for w in g.vertices() {
                    prop_assert!(d.get(u, w) <= d.get(u, v) + d.get(v, w));
                }
            }
        }
    }

    #[test]
    fn gp_verdict_matches_oracle((g, s) in graph_and_subset()) {
        let d = all_pairs_distances(&g);
        let fw = floyd_warshall(&g);
        let cert = verify_general_position(&d, &s).unwrap();
        prop_assert_eq!(cert.is_general_position(), is_gp(&fw, &s));
        if let Some([a, b, c]) = cert.violating_triple {
            prop_assert_eq!(fw[a][c], fw[a][b] + fw[b][c]);
            prop_assert!(s.contains(&a) && s.contains(&b) && s.contains(&c));
            prop_assert_eq!(cert.verdict, Verdict::Violated);
        }
    }

    #[test]
    fn separation_implies_gp((g, s) in graph_and_subset()) {
        let d = all_pairs_distances(&g);
        if let Some(k) = separation_witness(&d, &s) {
            let fw = floyd_warshall(&g);
            prop_assert!(is_gp(&fw, &s));
            for (i, &a) in s.iter().enumerate() {
                for &b in &s[i + 1..] {
                    prop_assert!(k <= fw[a][b] && fw[a][b] < 2 * k);
                }
            }
        }
    }

    #[test]
    fn solver_is_exact_and_bounded_by_cliques(g in connected_graph()) {
        let fw = floyd_warshall(&g);
        let gp = exact(&g, vec![]);
        prop_assert_eq!(gp, subset_max_gp(&fw));
        prop_assert!(clique_number(&g).unwrap() <= gp);
    }

    #[test]
    fn forced_sets_are_respected((g, s) in graph_and_subset()) {
        let d = all_pairs_distances(&g);
        let fw = floyd_warshall(&g);
        let forced: Vec<usize> = s.into_iter().take(3).collect();
        let opts = SolveOptions { forced: forced.clone(), ..Default::default() };
        match max_general_position(&g, &d, &opts) {
            Ok(r) => {
                prop_assert!(is_gp(&fw, &forced));
                prop_assert!(forced.iter().all(|v| r.witness.contains(v)));
                prop_assert_eq!(Some(r.size), enumerate_max_gp(&fw, &forced));
                prop_assert!(r.size <= exact(&g, vec![]));
            }
            Err(_) => prop_assert!(!is_gp(&fw, &forced)),
        }
    }

    #[test]
    fn solver_is_deterministic(g in connected_graph()) {
        let d = all_pairs_distances(&g);
        let a = max_general_position(&g, &d, &SolveOptions::default()).unwrap();
        let b = max_general_position(&g, &d, &SolveOptions::default()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn covers_bound_the_gp_number(g in connected_graph(), root in any::<prop::sample::Index>()) {
        let d = all_pairs_distances(&g);
        let root = root.index(g.n());
        let cover = greedy_isometric_cover_from(&g, &d, root).unwrap();
        prop_assert!(verify_isometric_cover(&g, &d, &cover));
        let gp_with_root = enumerate_max_gp(&floyd_warshall(&g), &[root]).unwrap();
        prop_assert!(gp_with_root <= cover.len() + 1);
        let best = exact_isometric_cover_size(&g, &d, root).unwrap();
        prop_assert!(best <= cover.len());
        prop_assert!(gp_with_root <= best + 1);
    }

    #[test]
    fn lattice_distances_follow_coordinates(m in 1usize..6, n in 2usize..6, strong in any::<bool>()) {
        let kind = if strong { LatticeKind::Strong } else { LatticeKind::Cartesian };
        let g = lat(kind, &[m, n]);
        let d = all_pairs_distances(&g);
        let labels = g.labels().unwrap();
        for u in g.vertices() {
            for v in g.vertices() {
                let (a, b) = (labels.point(u), labels.point(v));
                let expect = if strong { chebyshev(a, b) } else { l1(a, b) };
                prop_assert_eq!(d.get(u, v) as i64, expect);
            }
        }
    }

    #[test]
    fn products_of_paths_are_lattices(m in 1usize..5, n in 1usize..5, strong in any::<bool>()) {
        let (pk, lk) = if strong {
            (ProductKind::Strong, LatticeKind::Strong)
        } else {
            (ProductKind::Cartesian, LatticeKind::Cartesian)
        };
        let p = product(pk, &primitive(Primitive::Path, m).unwrap(), &primitive(Primitive::Path, n).unwrap());
        let l = lat(lk, &[m, n]);
        prop_assert_eq!(p.edges().collect::<Vec<_>>(), l.edges().collect::<Vec<_>>());
        prop_assert_eq!(p.labels(), l.labels());
    }

    #[test]
    fn embeddings_transfer_verdicts(m in 2usize..5, n in 2usize..5, dx in 0usize..3, dy in 0usize..3, s in subset_of(16)) {
        let sub = lat(LatticeKind::Cartesian, &[m, n]);
        let host = lat(LatticeKind::Cartesian, &[m + dx, n + dy]);
        let map: Vec<usize> = sub.vertices().map(|v| (v / n + dx) * (n + dy) + v % n + dy).collect();
        let (sd, hd) = (all_pairs_distances(&sub), all_pairs_distances(&host));
        prop_assert!(is_isometric_embedding(&host, &hd, &sub, &sd, &map).unwrap().ok);
        let s: Vec<usize> = s.into_iter().filter(|&v| v < sub.n()).collect();
        prop_assume!(!s.is_empty());
        let image: Vec<usize> = s.iter().map(|&v| map[v]).collect();
        prop_assert_eq!(
            verify_general_position(&sd, &s).unwrap().is_general_position(),
            verify_general_position(&hd, &image).unwrap().is_general_position()
        );
    }

    #[test]
    fn nested_patches_never_lose(m in 2usize..5, n in 2usize..5, strong in any::<bool>()) {
        let kind = if strong { LatticeKind::Strong } else { LatticeKind::Cartesian };
        let small = exact(&lat(kind, &[m, n]), vec![]);
        prop_assert!(small <= exact(&lat(kind, &[m + 1, n]), vec![]));
        prop_assert!(small <= exact(&lat(kind, &[m, n + 1]), vec![]));
    }

    #[test]
    fn erdos_szekeres_guarantee(n in 2usize..7, seq in proptest::collection::vec(-30i64..30, 50)) {
        let seq = &seq[..(n - 1) * (n - 1) + 1];
        let w = longest_monotone_subsequence(seq).unwrap();
        prop_assert!(w.len() >= n);
        prop_assert!(w.indices.windows(2).all(|p| p[0] < p[1]));
        let picked: Vec<[i64; 1]> = w.indices.iter().map(|&i| [seq[i]]).collect();
        prop_assert!(is_monotone(&picked));
    }

    #[test]
    fn longest_monotone_is_maximum(seq in proptest::collection::vec(-5i64..5, 1..14)) {
        // Quadratic dynamic program in both directions.
        let best = |le: fn(i64, i64) -> bool| {
            let mut len = vec![1usize; seq.len()];
            for j in 0..seq.len() {
                for i in 0..j {
                    if le(seq[i], seq[j]) {
                        len[j] = len[j].max(len[i] + 1);
                    }
                }
            }
            *len.iter().max().unwrap()
        };
        let expect = best(|a, b| a <= b).max(best(|a, b| a >= b));
        prop_assert_eq!(longest_monotone_subsequence(&seq).unwrap().len(), expect);
    }

    #[test]
    fn point_triples_are_collinear_in_grids(
        dim in 1usize..4,
        raw in proptest::collection::btree_set(proptest::collection::vec(0i64..6, 3), 17..30),
    ) {
        let mut points: Vec<Vec<i64>> = raw.into_iter().map(|p| p[..dim].to_vec()).collect();
        points.sort();
        points.dedup();
        prop_assume!(points.len() >= gpnet_core::monotone::points_needed_for_triple(dim));
        let w = monotone_point_triple(&points).unwrap();
        let [a, b, c] = [&points[w.indices[0]], &points[w.indices[1]], &points[w.indices[2]]];
        prop_assert!(monotone_in_order(&[a, b, c]));
        prop_assert_eq!(l1(a, c), l1(a, b) + l1(b, c));
        prop_assert_eq!(chebyshev(a, c).max(chebyshev(a, b)), chebyshev(a, c));
    }

    #[test]
    fn natural_grid_labelings_pass(m in 1usize..7, n in 2usize..7) {
        let g = attach_labeling(&lat(LatticeKind::Cartesian, &[m, n]), LabelingScheme::Natural).unwrap();
        let d = all_pairs_distances(&g);
        let cert = check_monotone_geodesic_labeling(&g, &d, g.labels().unwrap(), 100).unwrap();
        prop_assert_eq!(cert.verdict, LabelingVerdict::MonotoneGeodesic);
    }
}

#[test]
fn benes_degrees_and_halves() {
    for r in 1..=5u32 {
        let g = benes(r).unwrap();
        let cols = 1usize << r;
        assert_eq!(g.n(), (2 * r as usize + 1) * cols);
        assert_eq!(g.edge_count(), 2 * r as usize * 2 * cols);
        let two = g.vertices().filter(|&v| g.degree(v) == 2).count();
        let four = g.vertices().filter(|&v| g.degree(v) == 4).count();
        assert_eq!((two, two + four), (2 * cols, g.n()));
        if r >= 2 {
            let sub = benes(r - 1).unwrap();
            let (hd, sd) = (all_pairs_distances(&g), all_pairs_distances(&sub));
            for top in [false, true] {
                let map = benes_half_embedding(r, top).unwrap();
                assert!(is_isometric_embedding(&g, &hd, &sub, &sd, &map).unwrap().ok);
            }
            assert!(gpnet_core::report::benes_halves_isometric(r).unwrap());
        }
    }
}

#[test]
fn butterfly_sizes() {
    for r in 1..=6u32 {
        let g = butterfly(r).unwrap();
        assert_eq!(g.n(), (r as usize + 1) << r);
        assert_eq!(g.edge_count(), (r as usize) << (r + 1));
    }
}

#[test]
fn report_is_deterministic() {
    let cfg = ReportConfig {
        trials: 300,
        ..Default::default()
    };
    let a = serde_json::to_string(&run_report(Scope::All, &cfg)).unwrap();
    let b = serde_json::to_string(&run_report(Scope::All, &cfg)).unwrap();
    assert_eq!(a, b);
}
