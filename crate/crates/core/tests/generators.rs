use std::collections::HashMap;

use lca_orient::generators::*;
use lca_orient::randomness::PERCOLATE;
use lca_orient::{is_forest, Graph, RandomTape, VertexId};

fn canonical_edges(g: &Graph) -> Vec<(u32, u32)> {
    g.edge_keys().iter().map(|e| (e.u().0, e.v().0)).collect()
}

#[test]
fn three_vertex_trees_are_uniform() {
    let mut counts: HashMap<Vec<(u32, u32)>, u32> = HashMap::new();
    for seed in 0..3000 {
        *counts.entry(canonical_edges(&random_tree(3, seed).unwrap())).or_default() += 1;
    }
    assert_eq!(counts.len(), 3);
    for (tree, &c) in &counts {
        assert!((900..=1100).contains(&c), "{tree:?}: {c}");
    }
}

#[test]
fn four_vertex_trees_all_appear() {
    // Cayley: 4^2 = 16 labeled trees.
    let mut seen = std::collections::HashSet::new();
    for seed in 0..2000 {
        seen.insert(canonical_edges(&random_tree(4, seed).unwrap()));
    }
    assert_eq!(seen.len(), 16);
}

/// Cycle detection by depth-first search, independent of the union-find check.
fn has_cycle_dfs(g: &Graph) -> bool {
    let mut visited = vec![false; g.n()];
    for root in g.vertices() {
        if visited[root.index()] {
            continue;
        }
        visited[root.index()] = true;
        let mut stack: Vec<(VertexId, Option<VertexId>)> = vec![(root, None)];
        while let Some((x, parent)) = stack.pop() {
            for &w in g.neighbors(x) {
                if Some(w) == parent {
                    continue;
                }
                if visited[w.index()] {
                    return true;
                }
                visited[w.index()] = true;
                stack.push((w, Some(x)));
            }
        }
    }
    false
}

#[test]
fn forest_check_matches_dfs_on_all_small_graphs() {
    for n in 1..=6u32 {
        let pairs: Vec<(u32, u32)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p);
            let g = Graph::from_edges(n as usize, edges).unwrap();
            assert_eq!(is_forest(&g), !has_cycle_dfs(&g), "n = {n}, mask = {mask:b}");
        }
    }
}

#[test]
fn bounded_trees() {
    let path = random_bounded_tree(500, 2, 3).unwrap();
    assert!(path.degrees().iter().all(|&d| d <= 2));
    assert_eq!(path.m(), 499);
    assert!(is_forest(&path));
    let g = random_bounded_tree(10_000, 3, 8).unwrap();
    assert_eq!(g.m(), 9999);
    assert!(g.max_degree() <= 3);
    assert!(is_forest(&g));
    assert_eq!(g.degrees(), random_bounded_tree(10_000, 3, 8).unwrap().degrees());
}

#[test]
fn named_families() {
    let star = named_family(NamedFamily::Star { leaves: 5 }).unwrap();
    assert_eq!(star.degrees(), vec![5, 1, 1, 1, 1, 1]);
    let bin = named_family(NamedFamily::CompleteDary { d: 2, depth: 3 }).unwrap();
    assert_eq!(bin.n(), 15);
    let path = named_family(NamedFamily::Path { n: 4 }).unwrap();
    assert_eq!(path.degrees(), vec![1, 2, 2, 1]);
    let cat = named_family(NamedFamily::Caterpillar { spine: 3, legs: 2 }).unwrap();
    assert_eq!((cat.n(), cat.m()), (9, 8));
    let broom = named_family(NamedFamily::Broom { handle: 4, bristles: 3 }).unwrap();
    assert_eq!(broom.degree(VertexId(3)), 4);
}

#[test]
fn arboricity_witness() {
    let one = arboricity_union(200, 1, 5).unwrap();
    assert!(is_forest(&one.graph));
    let two = arboricity_union(100, 2, 5).unwrap();
    assert!(two.graph.m() <= 198);
    let mut union: Vec<_> = two.forests.iter().flatten().copied().collect();
    union.sort();
    assert_eq!(union, two.graph.edge_keys());
    for f in &two.forests {
        let g = Graph::from_edges(100, f.iter().map(|e| (e.u().0, e.v().0))).unwrap();
        assert!(is_forest(&g));
    }
}

#[test]
fn percolation_concentrates() {
    let g = random_tree(100_001, 12).unwrap();
    let tape = RandomTape::new(3);
    assert!(percolate(&g, 0.0, &tape, PERCOLATE).unwrap().is_empty());
    assert_eq!(percolate(&g, 1.0, &tape, PERCOLATE).unwrap().len(), g.m());
    let kept = percolate(&g, 0.5, &tape, PERCOLATE).unwrap();
    let sigma = (g.m() as f64 * 0.25).sqrt();
    assert!((kept.len() as f64 - 50_000.0).abs() <= 3.0 * sigma, "{}", kept.len());
    assert_eq!(kept, percolate(&g, 0.5, &tape, PERCOLATE).unwrap());
}

#[test]
fn bushy_trees_fill_levels() {
    let g = bushy_tree(1 + 15 + 225, 16, 0).unwrap();
    assert!(is_forest(&g));
    assert_eq!(g.max_degree(), 16);
    let leaves = g.degrees().iter().filter(|&&d| d == 1).count();
    assert_eq!(leaves, 225);
}
