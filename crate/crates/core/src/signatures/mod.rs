//! The graph G_λ of a neighborly partition and its spanning-forest signature.
//!
//! Each maximal run `k..=n` of μ1 gives one connected component: a backbone
//! path through `k, k+1, …, n` plus one pendant "hanging" edge for every
//! doubled part. The signature is computed three ways:
//!
//! - [`signature_bruteforce`] sums (−1)^|H| over covering edge subsets,
//! - [`component_signature_product`] multiplies chain signatures per component,
//! - [`signature_closed`] reads it off the signature multiset modulo 3.

mod chain;
mod prune;
mod render;

pub use chain::{chain_poly, chain_poly_at_minus_one, chain_sign};
pub use prune::{
    classify_components, deleted_positions, prune, sign_via_pruned, ChainPrune, ComponentType,
    DeletionRule, PrunedComponent, PrunedGraph,
};
pub use render::{render_graph, render_pruned};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::NeighborlyPartition;
use chain::chain_sign_unchecked;

/// Default edge cap for [`signature_bruteforce`].
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 40;

/// Per-component edge cap; components are enumerated independently.
const COMPONENT_SUBSET_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Backbone,
    Hanging,
}

/// Edge between two local vertex indices of a [`Component`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub kind: EdgeKind,
}

/// One connected component: run `k..=n` of μ1 with the doubled parts `cuts`.
///
/// Local vertex `i` for `i <= n - k` is the backbone vertex labelled `k + i`;
/// the duplicate of `cuts[j]` is vertex `n - k + 1 + j`. Backbone edge `i`
/// joins labels `k + i` and `k + i + 1`; hanging edge `j` has index `n - k + j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub k: u32,
    pub n: u32,
    pub cuts: Vec<u32>,
}

impl Component {
    pub fn new(k: u32, n: u32, cuts: Vec<u32>) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidArgument(format!("bad run {k}..{n}")));
        }
        if cuts.windows(2).any(|w| w[0] >= w[1]) || cuts.iter().any(|&a| a < k || a > n) {
            return Err(Error::InvalidArgument(format!(
                "cuts {cuts:?} must be strictly increasing inside {k}..{n}"
            )));
        }
        if k == n && cuts.is_empty() {
            return Err(Error::InvalidArgument(format!("singleton {k} needs a hanging edge")));
        }
        Ok(Self { k, n, cuts })
    }

    pub fn s(&self) -> usize {
        self.cuts.len()
    }

    fn backbone_len(&self) -> usize {
        (self.n - self.k) as usize
    }

    pub fn vertex_count(&self) -> usize {
        self.backbone_len() + 1 + self.s()
    }

    pub fn edge_count(&self) -> usize {
        self.backbone_len() + self.s()
    }

    pub fn vertex_label(&self, v: usize) -> u32 {
        let main = self.backbone_len() + 1;
        if v < main {
            self.k + v as u32
        } else {
            self.cuts[v - main]
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        let main = self.backbone_len() + 1;
        let backbone = (0..self.backbone_len()).map(|i| Edge {
            a: i,
            b: i + 1,
            kind: EdgeKind::Backbone,
        });
        let hanging = self.cuts.iter().enumerate().map(|(j, &a)| Edge {
            a: (a - self.k) as usize,
            b: main + j,
            kind: EdgeKind::Hanging,
        });
        backbone.chain(hanging).collect()
    }

    fn hanging_edge(&self, j: usize) -> usize {
        self.backbone_len() + j
    }

    fn backbone_edges(&self, from: u32, to: u32) -> impl Iterator<Item = usize> {
        (from - self.k) as usize..(to - self.k) as usize
    }

    /// Edge indices of each chain cut out by the hanging edges, in order.
    ///
    /// A hanging edge is the last edge of the chain to its left and the first
    /// edge of the chain to its right.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let s = self.s();
        if s == 0 {
            return vec![self.backbone_edges(self.k, self.n).collect()];
        }
        let mut chains = Vec::with_capacity(s + 1);
        let mut first: Vec<usize> = self.backbone_edges(self.k, self.cuts[0]).collect();
        first.push(self.hanging_edge(0));
        chains.push(first);
        for j in 1..s {
            let mut chain = vec![self.hanging_edge(j - 1)];
            chain.extend(self.backbone_edges(self.cuts[j - 1], self.cuts[j]));
            chain.push(self.hanging_edge(j));
            chains.push(chain);
        }
        let mut last = vec![self.hanging_edge(s - 1)];
        last.extend(self.backbone_edges(self.cuts[s - 1], self.n));
        chains.push(last);
        chains
    }

    /// SIG(c) in chain order.
    pub fn sig(&self) -> Vec<u32> {
        let (k, n) = (self.k, self.n);
        match (self.cuts.first(), self.cuts.last()) {
            (Some(first), Some(last)) => {
                let mut out = vec![first - k + 1];
                out.extend(self.cuts.windows(2).map(|w| w[1] - w[0] + 2));
                out.push(n - last + 1);
                out
            }
            _ => vec![n - k],
        }
    }

    pub fn shifted(&self, by: u32) -> Self {
        Self {
            k: self.k + by,
            n: self.n + by,
            cuts: self.cuts.iter().map(|a| a + by).collect(),
        }
    }

    /// Panics unless the component is a tree (|E| = |V| − 1 and acyclic), which
    /// makes every edge subset a forest.
    fn assert_tree(&self) {
        let edges = self.edges();
        let v = self.vertex_count();
        assert_eq!(edges.len() + 1, v, "component {self:?} is not a tree");
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &edges {
            let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
            assert_ne!(ra, rb, "component {self:?} has a cycle");
            parent[ra] = rb;
        }
    }

    /// Counts covering edge subsets by size: index `i` is the number of
    /// vertex-spanning forests with `i` edges.
    pub fn covering_subset_poly(&self) -> Result<Vec<u64>> {
        let edges = self.edges();
        if edges.len() > COMPONENT_SUBSET_LIMIT {
            return Err(Error::BruteForceCap {
                edges: edges.len(),
                cap: COMPONENT_SUBSET_LIMIT,
            });
        }
        self.assert_tree();
        let v = self.vertex_count();
        let incident: Vec<u64> = (0..v)
            .map(|x| {
                edges
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.a == x || e.b == x)
                    .fold(0u64, |m, (i, _)| m | (1 << i))
            })
            .collect();
        let mut poly = vec![0u64; edges.len() + 1];
        for mask in 0u64..(1u64 << edges.len()) {
            if incident.iter().all(|&inc| inc & mask != 0) {
                poly[mask.count_ones() as usize] += 1;
            }
        }
        Ok(poly)
    }
}

/// G_λ as its list of components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionGraph {
    pub components: Vec<Component>,
    pub total_vertices: usize,
    pub total_edges: usize,
}

impl PartitionGraph {
    pub fn from_components(components: Vec<Component>) -> Self {
        let total_vertices = components.iter().map(Component::vertex_count).sum();
        let total_edges = components.iter().map(Component::edge_count).sum();
        Self {
            components,
            total_vertices,
            total_edges,
        }
    }

    pub fn hanging_edge_count(&self) -> usize {
        self.components.iter().map(Component::s).sum()
    }
}

pub fn build_graph(np: &NeighborlyPartition) -> PartitionGraph {
    let components = np
        .runs()
        .into_iter()
        .map(|run| Component {
            k: run.start,
            n: run.end,
            cuts: np.mu2().iter().copied().filter(|&a| run.contains(a)).collect(),
        })
        .collect();
    PartitionGraph::from_components(components)
}

/// Signed count of vertex-spanning forests, by exhaustive subset enumeration.
///
/// Components are enumerated independently and multiplied; `cap` bounds the
/// total edge count of the graph.
pub fn signature_bruteforce_capped(g: &PartitionGraph, cap: usize) -> Result<i64> {
    if g.total_edges > cap {
        return Err(Error::BruteForceCap {
            edges: g.total_edges,
            cap,
        });
    }
    let mut product = 1i64;
    for c in &g.components {
        let poly = c.covering_subset_poly()?;
        let signed: i64 = poly
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum();
        product *= signed;
    }
    Ok(product)
}

pub fn signature_bruteforce(g: &PartitionGraph) -> Result<i64> {
    signature_bruteforce_capped(g, DEFAULT_BRUTE_FORCE_CAP)
}

/// Multiset of chain lengths, in component order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureMultiset {
    pub elements: Vec<u32>,
}

impl SignatureMultiset {
    pub fn sorted(&self) -> Vec<u32> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn sig_multiset(g: &PartitionGraph) -> SignatureMultiset {
    SignatureMultiset {
        elements: g.components.iter().flat_map(Component::sig).collect(),
    }
}

/// Residue counts of SIG modulo 3 together with s = |μ2|.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignDiagnostics {
    /// Elements ≡ 1 (mod 3).
    pub t: usize,
    /// Elements ≡ 2 (mod 3).
    pub twos: usize,
    /// Elements ≡ 0 (mod 3).
    pub zeros: usize,
    pub s: usize,
    pub zero_flag: bool,
}

pub fn sign_diagnostics(g: &PartitionGraph) -> SignDiagnostics {
    let sig = sig_multiset(g);
    let count = |r| sig.elements.iter().filter(|&&x| x % 3 == r).count();
    let zeros = count(0);
    SignDiagnostics {
        t: count(1),
        twos: count(2),
        zeros,
        s: g.hanging_edge_count(),
        zero_flag: zeros > 0,
    }
}

/// 0 if SIG has an element divisible by 3, otherwise (−1)^(t+s).
pub fn signature_closed(g: &PartitionGraph) -> (i64, SignDiagnostics) {
    let d = sign_diagnostics(g);
    let value = if d.zero_flag {
        0
    } else if (d.t + d.s).is_multiple_of(2) {
        1
    } else {
        -1
    };
    (value, d)
}

/// (−1)^s times the product of chain signatures B over the component's chains.
pub fn component_signature_product(c: &Component) -> i64 {
    let sign = if c.s().is_multiple_of(2) { 1 } else { -1 };
    c.sig()
        .into_iter()
        .map(chain_sign_unchecked)
        .fold(sign, |acc, b| acc * b)
}

pub fn signature_by_components(g: &PartitionGraph) -> i64 {
    g.components.iter().map(component_signature_product).product()
}

pub fn is_admissible(np: &NeighborlyPartition) -> bool {
    !sign_diagnostics(&build_graph(np)).zero_flag
}

/// (−1)^(t+s) for an admissible partition.
pub fn sign(np: &NeighborlyPartition) -> Result<i64> {
    match signature_closed(&build_graph(np)) {
        (0, _) => Err(Error::NotAdmissible(np.to_string())),
        (v, _) => Ok(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_neighborly;

    fn np(mu1: &[u32], mu2: &[u32]) -> NeighborlyPartition {
        NeighborlyPartition::new(mu1.to_vec(), mu2.to_vec()).unwrap()
    }

    fn comp(k: u32, n: u32, cuts: &[u32]) -> Component {
        Component::new(k, n, cuts.to_vec()).unwrap()
    }

    fn example_2_10() -> NeighborlyPartition {
        np(&[2, 4, 5, 6, 7, 10, 12, 13, 14], &[2, 4, 6, 10, 14])
    }

    #[test]
    fn graph_of_intro_example() {
        let g = build_graph(&np(&[1, 2, 3, 6, 8, 9, 14], &[3, 6, 8, 9, 14]));
        assert_eq!(g.components.len(), 4);
        assert_eq!(g.total_vertices, 12);
        // backbone 1-2-3 and 8-9, five hanging edges
        assert_eq!(g.total_edges, 3 + 5);
        assert_eq!(g.hanging_edge_count(), 5);
    }

    #[test]
    fn graph_of_smallest_component() {
        let g = build_graph(&np(&[4], &[4]));
        assert_eq!(g.components, vec![comp(4, 4, &[4])]);
        assert_eq!((g.total_vertices, g.total_edges), (2, 1));
    }

    #[test]
    fn graph_of_example_2_10() {
        let g = build_graph(&example_2_10());
        assert_eq!(
            g.components,
            vec![
                comp(2, 2, &[2]),
                comp(4, 7, &[4, 6]),
                comp(10, 10, &[10]),
                comp(12, 14, &[14]),
            ]
        );
    }

    #[test]
    fn component_validation() {
        assert!(Component::new(3, 3, vec![]).is_err());
        assert!(Component::new(3, 5, vec![6]).is_err());
        assert!(Component::new(3, 5, vec![4, 4]).is_err());
        assert!(Component::new(5, 3, vec![]).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let chain = PartitionGraph::from_components(vec![comp(1, 4, &[])]);
        assert_eq!(signature_bruteforce(&chain).unwrap(), 0);
        let hanging = PartitionGraph::from_components(vec![comp(7, 7, &[7])]);
        assert_eq!(signature_bruteforce(&hanging).unwrap(), -1);
        let g = build_graph(&np(&[1, 2, 3, 4, 5, 6, 7], &[3, 6, 7]));
        assert_eq!(signature_bruteforce(&g).unwrap(), 0);
    }

    #[test]
    fn brute_force_cap() {
        let g = PartitionGraph::from_components(vec![comp(1, 9, &[])]);
        assert_eq!(
            signature_bruteforce_capped(&g, 5),
            Err(Error::BruteForceCap { edges: 8, cap: 5 })
        );
    }

    #[test]
    fn sig_examples() {
        let g = build_graph(&example_2_10());
        assert_eq!(sig_multiset(&g).elements, vec![1, 1, 1, 4, 2, 1, 1, 3, 1]);
        assert_eq!(comp(1, 7, &[3, 6, 7]).sig(), vec![3, 5, 3, 1]);
        assert_eq!(comp(1, 2, &[]).sig(), vec![1]);
    }

    #[test]
    fn chain_lengths_equal_sig() {
        for c in [comp(1, 7, &[3, 6, 7]), comp(4, 7, &[4, 6]), comp(1, 2, &[]), comp(5, 5, &[5])] {
            let lengths: Vec<u32> = c.chains().iter().map(|ch| ch.len() as u32).collect();
            assert_eq!(lengths, c.sig());
        }
    }

    #[test]
    fn closed_form_examples() {
        let (v, d) = signature_closed(&build_graph(&np(&[2, 3], &[3])));
        assert_eq!((v, d.t, d.s), (1, 1, 1));
        let (v, d) = signature_closed(&build_graph(&np(&[1, 2, 3], &[2])));
        assert_eq!((v, d.t, d.s), (-1, 0, 1));
        let (v, d) = signature_closed(&build_graph(&np(&[1, 2, 3, 4, 5, 6, 7], &[3, 6, 7])));
        assert_eq!(v, 0);
        assert!(d.zero_flag);
        assert_eq!(d.t + d.twos + d.zeros, 4);
    }

    #[test]
    fn component_product_examples() {
        assert_eq!(component_signature_product(&comp(1, 7, &[3, 6, 7])), 0);
        assert_eq!(component_signature_product(&comp(9, 9, &[9])), -1);
        assert_eq!(component_signature_product(&comp(2, 3, &[3])), 1);
        let single = PartitionGraph::from_components(vec![comp(2, 3, &[3])]);
        assert_eq!(signature_bruteforce(&single).unwrap(), 1);
    }

    #[test]
    fn admissibility_and_sign() {
        assert!(!is_admissible(&example_2_10()));
        assert!(is_admissible(&np(&[1, 3], &[1, 3])));
        assert!(is_admissible(&NeighborlyPartition::empty()));
        assert_eq!(sign(&np(&[1, 3], &[1, 3])).unwrap(), 1);
        assert_eq!(sign(&np(&[4], &[4])).unwrap(), -1);
        assert_eq!(sign(&np(&[1, 2, 3], &[2])).unwrap(), -1);
        assert_eq!(sign(&NeighborlyPartition::empty()).unwrap(), 1);
        assert!(matches!(sign(&example_2_10()), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn three_signature_routes_agree() {
        for p in enumerate_neighborly(20).map(Result::unwrap) {
            let g = build_graph(&p);
            let brute = signature_bruteforce(&g).unwrap();
            assert_eq!(brute, signature_closed(&g).0, "{p}");
            assert_eq!(brute, signature_by_components(&g), "{p}");
        }
    }

    #[test]
    fn admissible_mu2_is_difference_two() {
        for p in enumerate_neighborly(22).map(Result::unwrap).filter(is_admissible) {
            assert!(p.mu2().windows(2).all(|w| w[1] - w[0] >= 2), "{p}");
        }
    }

    #[test]
    fn component_product_is_shift_invariant() {
        for p in enumerate_neighborly(14).map(Result::unwrap) {
            for c in build_graph(&p).components {
                let base = component_signature_product(&c);
                for by in [1, 5, 17] {
                    let moved = c.shifted(by);
                    assert_eq!(component_signature_product(&moved), base);
                    let g = PartitionGraph::from_components(vec![moved]);
                    assert_eq!(signature_bruteforce(&g).unwrap(), base);
                }
            }
        }
    }
}
