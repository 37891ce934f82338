//! Shared brute-force machinery for integration tests: exhaustive
//! generation of labeled colored weighted trees and permutation-based
//! isomorphism checks, entirely independent of the library's
//! canonicalization code.
//!
//! Each integration test binary compiles its own copy, so helpers used by
//! only one binary would otherwise trip dead-code warnings in the others.
#![allow(dead_code)]

use contact_curves::graphs::{Edge, WeightedColoredTree};

/// A labeled tree: vertex i has color `colors[i]`, edges carry weights.
/// Unlike [`WeightedColoredTree`] this is raw data with no canonical
/// structure; two labeled trees may describe the same isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    pub colors: Vec<u8>,
    pub edges: Vec<(usize, usize, u32)>,
}

impl LabeledTree {
    pub fn to_library_tree(&self) -> WeightedColoredTree {
        WeightedColoredTree::new(
            self.colors.clone(),
            self.edges
                .iter()
                .map(|&(u, v, weight)| Edge { u, v, weight })
                .collect(),
        )
        .expect("generated labeled trees are valid")
    }
}

fn pruefer_to_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut deg = vec![1usize; n];
    for &x in seq {
        deg[x] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&i| deg[i] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, x));
        deg[x] -= 1;
        if deg[x] == 1 {
            leaves.insert(x);
        }
    }
    let mut it = leaves.iter();
    edges.push((*it.next().unwrap(), *it.next().unwrap()));
    edges
}

/// Every labeled tree on n vertices, via the Prüfer bijection (each labeled
/// tree appears exactly once).
fn all_labeled_shapes(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut shapes = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        shapes.push(pruefer_to_edges(&seq, n));
        let mut pos = 0;
        loop {
            if pos == seq.len() {
                return shapes;
            }
            seq[pos] += 1;
            if seq[pos] < n {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
    }
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 1..=(total + 1 - parts as u32) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn proper_colorings(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut colors = vec![0u8; n];
    fn rec(
        pos: usize,
        n: usize,
        edges: &[(usize, usize)],
        colors: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if pos == n {
            out.push(colors.clone());
            return;
        }
        'candidates: for c in 0..4u8 {
            for &(u, v) in edges {
                if (v == pos && u < pos && colors[u] == c)
                    || (u == pos && v < pos && colors[v] == c)
                {
                    continue 'candidates;
                }
            }
            colors[pos] = c;
            rec(pos + 1, n, edges, colors, out);
        }
    }
    rec(0, n, edges, &mut colors, &mut out);
    out
}

/// Exhaustive list of all labeled colored weighted trees of total weight d:
/// every labeled shape, every positive weight assignment, every proper
/// 4-coloring.
pub fn all_labeled_trees(d: u32) -> Vec<LabeledTree> {
    let mut out = Vec::new();
    for edge_count in 1..=d as usize {
        let n = edge_count + 1;
        for shape in all_labeled_shapes(n) {
            for weights in compositions(d, edge_count) {
                let edges: Vec<(usize, usize, u32)> = shape
                    .iter()
                    .zip(&weights)
                    .map(|(&(u, v), &w)| (u, v, w))
                    .collect();
                for colors in proper_colorings(n, &shape) {
                    out.push(LabeledTree {
                        colors,
                        edges: edges.clone(),
                    });
                }
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n).collect::<Vec<_>>()];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            out.push(perm.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn maps_onto(a: &LabeledTree, b: &LabeledTree, perm: &[usize]) -> bool {
    let weight_in_b = |u: usize, v: usize| {
        b.edges
            .iter()
            .find(|&&(x, y, _)| (x, y) == (u, v) || (y, x) == (u, v))
            .map(|&(_, _, w)| w)
    };
    a.colors
        .iter()
        .enumerate()
        .all(|(v, &c)| b.colors[perm[v]] == c)
        && a.edges
            .iter()
            .all(|&(u, v, w)| weight_in_b(perm[u], perm[v]) == Some(w))
}

/// Color- and weight-preserving isomorphism, decided by trying every
/// vertex bijection.
pub fn isomorphic(a: &LabeledTree, b: &LabeledTree) -> bool {
    a.colors.len() == b.colors.len()
        && permutations(a.colors.len())
            .iter()
            .any(|perm| maps_onto(a, b, perm))
}

/// |Aut|: the number of vertex permutations mapping the tree onto itself.
pub fn automorphism_count(t: &LabeledTree) -> u64 {
    permutations(t.colors.len())
        .iter()
        .filter(|perm| maps_onto(t, t, perm))
        .count() as u64
}

/// Partition labeled trees into isomorphism classes by pairwise testing
/// (bucketed by cheap invariants first). Returns indices into the input.
pub fn group_into_classes(trees: &[LabeledTree]) -> Vec<Vec<usize>> {
    use std::collections::BTreeMap;
    let invariant = |t: &LabeledTree| {
        let mut colors = t.colors.clone();
        colors.sort_unstable();
        let mut weights: Vec<u32> = t.edges.iter().map(|&(_, _, w)| w).collect();
        weights.sort_unstable();
        (t.colors.len(), colors, weights)
    };
    let mut buckets: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (idx, t) in trees.iter().enumerate() {
        buckets.entry(invariant(t)).or_default().push(idx);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for bucket in buckets.values() {
        let mut local: Vec<Vec<usize>> = Vec::new();
        'next_tree: for &idx in bucket {
            for class in local.iter_mut() {
                if isomorphic(&trees[class[0]], &trees[idx]) {
                    class.push(idx);
                    continue 'next_tree;
                }
            }
            local.push(vec![idx]);
        }
        classes.extend(local);
    }
    classes
}
