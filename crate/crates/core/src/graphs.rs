//! Weighted colored trees and their enumeration.
//!
//! A tree's vertices carry colors in {0,1,2,3} (indices of the coordinate
//! fixed points of the torus action on P³) and its edges carry positive
//! integer weights; the weights sum to the total degree d. Adjacent vertices
//! must have distinct colors. Each isomorphism class of such trees indexes
//! one fixed locus of the degree-d stable-map space, so enumeration,
//! canonical keys, and automorphism orders here drive everything downstream.
//!
//! Canonicalization roots the tree at its center (for a bicentral tree, at
//! the central edge, taking the lexicographically smaller of the two
//! orientations) and encodes children recursively as (edge weight, color,
//! sorted child encodings). Automorphism orders fall out of the same pass:
//! the product over nodes of the factorials of identical-child multiplicities,
//! doubled when a bicentral tree has two identical halves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least two vertices")]
    Empty,
    #[error("edge endpoint out of range or a self-loop")]
    BadEndpoint,
    #[error("edges must form a tree (connected with |E| = |V| - 1)")]
    NotATree,
    #[error("edge weights must be positive")]
    ZeroWeight,
    #[error("vertex colors must lie in 0..=3")]
    BadColor,
    #[error("adjacent vertices must have distinct colors")]
    AdjacentColorClash,
    #[error("degree must be positive")]
    DegreeZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: u32,
}

/// A tree with colored vertices and weighted edges; always structurally
/// valid once constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedColoredTree {
    colors: Vec<u8>,
    edges: Vec<Edge>,
}

impl WeightedColoredTree {
    pub fn new(colors: Vec<u8>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let n = colors.len();
        if n < 2 {
            return Err(GraphError::Empty);
        }
        if edges.len() != n - 1 {
            return Err(GraphError::NotATree);
        }
        if colors.iter().any(|&c| c > 3) {
            return Err(GraphError::BadColor);
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for e in &edges {
            if e.u >= n || e.v >= n || e.u == e.v {
                return Err(GraphError::BadEndpoint);
            }
            if e.weight == 0 {
                return Err(GraphError::ZeroWeight);
            }
            if colors[e.u] == colors[e.v] {
                return Err(GraphError::AdjacentColorClash);
            }
            let (ru, rv) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if ru == rv {
                return Err(GraphError::NotATree);
            }
            parent[ru] = rv;
        }
        Ok(WeightedColoredTree { colors, edges })
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    /// Sum of edge weights, i.e. the degree d of the stable maps this tree
    /// indexes.
    pub fn total_degree(&self) -> u32 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Per-vertex list of (neighbor, edge weight).
    pub fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.colors.len()];
        for e in &self.edges {
            adj[e.u].push((e.v, e.weight));
            adj[e.v].push((e.u, e.weight));
        }
        adj
    }
}

/// One isomorphism class: a canonical representative, the order of its
/// color- and weight-preserving automorphism group, and the class key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClass {
    pub representative: WeightedColoredTree,
    pub aut_order: u64,
    pub canonical_key: Vec<u8>,
}

impl GraphClass {
    pub fn from_tree(t: &WeightedColoredTree) -> GraphClass {
        let canon = canonicalize(t.colors(), t.edges());
        GraphClass {
            representative: canon.representative,
            aut_order: canon.aut_order,
            canonical_key: canon.key,
        }
    }

    pub fn degree(&self) -> u32 {
        self.representative.total_degree()
    }

    /// a(Γ) = |Aut| · ∏ d_e, the divisor carried by this class in every
    /// localization sum.
    pub fn a_gamma(&self) -> u64 {
        self.aut_order
            * self
                .representative
                .edges()
                .iter()
                .map(|e| e.weight as u64)
                .product::<u64>()
    }

    pub fn canonical_hex(&self) -> String {
        to_hex(&self.canonical_key)
    }
}

/// Total isomorphism invariant: equal keys iff the trees are isomorphic as
/// colored weighted trees.
pub fn canonical_form(t: &WeightedColoredTree) -> Vec<u8> {
    canonicalize(t.colors(), t.edges()).key
}

/// Order of the automorphism group preserving adjacency, weights, and colors.
pub fn automorphism_order(t: &WeightedColoredTree) -> u64 {
    canonicalize(t.colors(), t.edges()).aut_order
}

/// a(Γ) = automorphism_order · ∏ edge weights.
pub fn a_gamma(t: &WeightedColoredTree) -> u64 {
    automorphism_order(t) * t.edges().iter().map(|e| e.weight as u64).product::<u64>()
}

/// Canonical key of the underlying weighted tree, colors ignored. Classes
/// sharing this key differ only by coloring.
pub fn weighted_shape_key(t: &WeightedColoredTree) -> Vec<u8> {
    canonicalize(&vec![0; t.vertex_count()], t.edges()).key
}

/// Automorphism order of the underlying weighted tree, colors ignored.
pub fn weighted_shape_automorphisms(t: &WeightedColoredTree) -> u64 {
    canonicalize(&vec![0; t.vertex_count()], t.edges()).aut_order
}

/// Canonical key of the class up to renaming colors: the minimum canonical
/// key over all 24 permutations of {0,1,2,3}. Classes sharing this key form
/// one combinatorial type (one cell of the per-degree summary tables).
pub fn color_pattern_key(t: &WeightedColoredTree) -> Vec<u8> {
    permutations4()
        .iter()
        .map(|perm| {
            let recolored: Vec<u8> = t.colors().iter().map(|&c| perm[c as usize]).collect();
            canonicalize(&recolored, t.edges()).key
        })
        .min()
        .expect("24 permutations")
}

fn permutations4() -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            if b == a {
                continue;
            }
            for c in 0..4u8 {
                if c == a || c == b {
                    continue;
                }
                let d = 6 - a - b - c;
                out.push([a, b, c, d]);
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct EncNode {
    color: u8,
    children: Vec<(u32, EncNode)>,
}

struct Canonical {
    key: Vec<u8>,
    aut_order: u64,
    representative: WeightedColoredTree,
}

fn small_factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn encode_rooted(
    adj: &[Vec<(usize, u32)>],
    colors: &[u8],
    v: usize,
    parent: Option<usize>,
) -> (EncNode, u64) {
    let mut children: Vec<(u32, EncNode)> = Vec::new();
    let mut aut: u64 = 1;
    for &(nbr, w) in &adj[v] {
        if Some(nbr) == parent {
            continue;
        }
        let (node, a) = encode_rooted(adj, colors, nbr, Some(v));
        aut *= a;
        children.push((w, node));
    }
    children.sort();
    let mut i = 0;
    while i < children.len() {
        let mut j = i + 1;
        while j < children.len() && children[j] == children[i] {
            j += 1;
        }
        aut *= small_factorial(j - i);
        i = j;
    }
    (
        EncNode {
            color: colors[v],
            children,
        },
        aut,
    )
}

fn flatten(node: &EncNode, out: &mut Vec<u8>) {
    out.push(node.color);
    debug_assert!(node.children.len() < 256);
    out.push(node.children.len() as u8);
    for (w, child) in &node.children {
        out.extend(w.to_be_bytes());
        flatten(child, out);
    }
}

fn rebuild_into(node: &EncNode, my: usize, colors: &mut Vec<u8>, edges: &mut Vec<Edge>) {
    for (w, child) in &node.children {
        let idx = colors.len();
        colors.push(child.color);
        edges.push(Edge {
            u: my,
            v: idx,
            weight: *w,
        });
        rebuild_into(child, idx, colors, edges);
    }
}

/// Vertices left after repeatedly peeling leaf layers: one vertex, or the
/// two endpoints of the central edge.
fn centers(n: usize, edges: &[Edge]) -> Vec<usize> {
    if n <= 2 {
        return (0..n).collect();
    }
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        for &v in &layer {
            removed[v] = true;
        }
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

fn canonicalize(colors: &[u8], edges: &[Edge]) -> Canonical {
    let n = colors.len();
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.u].push((e.v, e.weight));
        adj[e.v].push((e.u, e.weight));
    }
    let cs = centers(n, edges);
    if cs.len() == 1 {
        let (node, aut_order) = encode_rooted(&adj, colors, cs[0], None);
        let mut key = vec![1u8];
        flatten(&node, &mut key);
        let mut rep_colors = vec![node.color];
        let mut rep_edges = Vec::with_capacity(edges.len());
        rebuild_into(&node, 0, &mut rep_colors, &mut rep_edges);
        Canonical {
            key,
            aut_order,
            representative: WeightedColoredTree {
                colors: rep_colors,
                edges: rep_edges,
            },
        }
    } else {
        let (c1, c2) = (cs[0], cs[1]);
        let w = adj[c1]
            .iter()
            .find(|&&(nbr, _)| nbr == c2)
            .expect("centers are adjacent")
            .1;
        let (n1, a1) = encode_rooted(&adj, colors, c1, Some(c2));
        let (n2, a2) = encode_rooted(&adj, colors, c2, Some(c1));
        let (first, second) = if n1 <= n2 { (n1, n2) } else { (n2, n1) };
        let mut aut_order = a1 * a2;
        if first == second {
            aut_order *= 2;
        }
        let mut key = vec![2u8];
        key.extend(w.to_be_bytes());
        flatten(&first, &mut key);
        flatten(&second, &mut key);
        let mut rep_colors = vec![first.color];
        let mut rep_edges = Vec::with_capacity(edges.len());
        rebuild_into(&first, 0, &mut rep_colors, &mut rep_edges);
        let r2 = rep_colors.len();
        rep_colors.push(second.color);
        rep_edges.push(Edge {
            u: 0,
            v: r2,
            weight: w,
        });
        rebuild_into(&second, r2, &mut rep_colors, &mut rep_edges);
        Canonical {
            key,
            aut_order,
            representative: WeightedColoredTree {
                colors: rep_colors,
                edges: rep_edges,
            },
        }
    }
}

/// One representative per isomorphism class of colored weighted trees of
/// total weight d, in canonical-key order. Shapes, then weight assignments,
/// then proper colorings are enumerated, deduplicating at each stage.
pub fn enumerate_fixed_graphs(d: u32) -> Result<Vec<GraphClass>, GraphError> {
    if d == 0 {
        return Err(GraphError::DegreeZero);
    }
    let mut classes: BTreeMap<Vec<u8>, GraphClass> = BTreeMap::new();
    for edge_count in 1..=d as usize {
        let n = edge_count + 1;
        for shape in tree_shapes(n) {
            let mut seen_weighted: BTreeSet<Vec<u8>> = BTreeSet::new();
            for weights in compositions(d, edge_count) {
                let edges: Vec<Edge> = shape
                    .iter()
                    .zip(&weights)
                    .map(|(&(u, v), &weight)| Edge { u, v, weight })
                    .collect();
                let shape_key = canonicalize(&vec![0; n], &edges).key;
                if !seen_weighted.insert(shape_key) {
                    continue;
                }
                for coloring in proper_colorings(n, &shape) {
                    let canon = canonicalize(&coloring, &edges);
                    if !classes.contains_key(&canon.key) {
                        classes.insert(
                            canon.key.clone(),
                            GraphClass {
                                representative: canon.representative,
                                aut_order: canon.aut_order,
                                canonical_key: canon.key,
                            },
                        );
                    }
                }
            }
        }
    }
    Ok(classes.into_values().collect())
}

/// Unlabeled tree shapes on n vertices, one labeled representative each,
/// obtained by deduplicating all Prüfer sequences.
fn tree_shapes(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut seen: BTreeMap<Vec<u8>, Vec<(usize, usize)>> = BTreeMap::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let shape = pruefer_to_edges(&seq, n);
        let edges: Vec<Edge> = shape
            .iter()
            .map(|&(u, v)| Edge { u, v, weight: 1 })
            .collect();
        let key = canonicalize(&vec![0; n], &edges).key;
        seen.entry(key).or_insert(shape);
        // advance the mixed-radix counter over {0..n-1}^(n-2)
        let mut pos = 0;
        loop {
            if pos == seq.len() {
                return seen.into_values().collect();
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

fn pruefer_to_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut deg = vec![1usize; n];
    for &x in seq {
        deg[x] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&i| deg[i] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = *leaves.iter().next().expect("a leaf always remains");
        leaves.remove(&leaf);
        edges.push((leaf, x));
        deg[x] -= 1;
        if deg[x] == 1 {
            leaves.insert(x);
        }
    }
    let mut it = leaves.iter();
    let a = *it.next().expect("two leaves remain");
    let b = *it.next().expect("two leaves remain");
    edges.push((a, b));
    edges
}

/// Ordered positive compositions of `total` into `parts` parts.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    assert!(parts as u32 <= total);
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 1..=(total - parts as u32 + 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All proper 4-colorings of a tree: the root takes any of 4 colors, every
/// other vertex any of the 3 colors differing from its parent.
fn proper_colorings(n: usize, shape: &[(usize, usize)]) -> Vec<Vec<u8>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in shape {
        adj[u].push(v);
        adj[v].push(u);
    }
    // BFS order from 0 so each later vertex has exactly one earlier neighbor.
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; n];
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in &adj[v] {
            if w != parent[v] && parent[w] == usize::MAX && w != 0 {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let mut out = Vec::new();
    let mut colors = vec![0u8; n];
    fn rec(
        pos: usize,
        order: &[usize],
        parent: &[usize],
        colors: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if pos == order.len() {
            out.push(colors.clone());
            return;
        }
        let v = order[pos];
        for c in 0..4u8 {
            if parent[v] != usize::MAX && colors[parent[v]] == c {
                continue;
            }
            colors[v] = c;
            rec(pos + 1, order, parent, colors, out);
        }
    }
    rec(0, &order, &parent, &mut colors, &mut out);
    out
}

/// Classes grouped into combinatorial types (same weighted shape and same
/// coloring up to renaming colors), keyed by the pattern key.
#[derive(Clone, Debug)]
pub struct TypeStatistics {
    pub representative: WeightedColoredTree,
    pub class_count: usize,
    pub aut_order: u64,
    pub a_gamma: u64,
}

pub fn statistics_by_type(classes: &[GraphClass]) -> BTreeMap<Vec<u8>, TypeStatistics> {
    let mut map: BTreeMap<Vec<u8>, TypeStatistics> = BTreeMap::new();
    for class in classes {
        let key = color_pattern_key(&class.representative);
        match map.get_mut(&key) {
            Some(stat) => {
                debug_assert_eq!(stat.aut_order, class.aut_order);
                stat.class_count += 1;
            }
            None => {
                map.insert(
                    key,
                    TypeStatistics {
                        representative: class.representative.clone(),
                        class_count: 1,
                        aut_order: class.aut_order,
                        a_gamma: class.a_gamma(),
                    },
                );
            }
        }
    }
    map
}

/// Graphviz rendering: one graph per class, vertices labeled by color,
/// edges labeled by weight.
pub fn dot_export(classes: &[GraphClass]) -> String {
    let mut out = String::new();
    for (idx, class) in classes.iter().enumerate() {
        let t = &class.representative;
        writeln!(out, "graph class_{} {{", idx).unwrap();
        writeln!(
            out,
            "  label=\"class {}  aut={}  a={}\";",
            idx,
            class.aut_order,
            class.a_gamma()
        )
        .unwrap();
        for (v, c) in t.colors().iter().enumerate() {
            writeln!(out, "  c{}_v{} [label=\"{}\"];", idx, v, c).unwrap();
        }
        for e in t.edges() {
            writeln!(
                out,
                "  c{}_v{} -- c{}_v{} [label=\"{}\"];",
                idx, e.u, idx, e.v, e.weight
            )
            .unwrap();
        }
        writeln!(out, "}}").unwrap();
    }
    out
}

pub fn to_hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        write!(s, "{:02x}", b).unwrap();
    }
    s
}

pub fn from_hex(s: &str) -> Option<Vec<u8>> {
    if s.len() % 2 != 0 {
        return None;
    }
    (0..s.len() / 2)
        .map(|i| u8::from_str_radix(&s[2 * i..2 * i + 2], 16).ok())
        .collect()
}
