//! The pruned graph G′_λ: every chain of an admissible partition loses
//! roughly every third backbone edge so that the parity of the remaining
//! edge count equals the sign.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Component, EdgeKind, PartitionGraph};
use crate::error::{Error, Result};
use crate::partitions::NeighborlyPartition;

/// Which positions to delete in chains of length 6m+4.
///
/// `Literal` deletes e_{3i} (i = 1..m) and e_{3m+2+3i} (i = 0..m).
/// `ExampleConsistent` deletes e_{3i} (i = 1..m+1) and e_{3m+5+3i} (i = 0..m−1),
/// which for m = 0 removes the third edge of a 4-edge chain. Both delete
/// 2m+1 edges. The rules for other lengths are shared.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeletionRule {
    #[default]
    Literal,
    ExampleConsistent,
}

/// 1-based positions deleted from a chain of `len` edges.
pub fn deleted_positions(len: usize, rule: DeletionRule) -> Result<Vec<usize>> {
    if len == 0 || len.is_multiple_of(3) {
        return Err(Error::ChainDivisibleByThree(len));
    }
    let out = if len % 3 == 2 {
        (1..=(len - 2) / 3).map(|i| 3 * i).collect()
    } else if len % 6 == 1 {
        let m = (len - 1) / 6;
        (1..=m).map(|i| 3 * i).chain((0..m).map(|i| 3 * m + 2 + 3 * i)).collect()
    } else {
        let m = (len - 4) / 6;
        match rule {
            DeletionRule::Literal => (1..=m)
                .map(|i| 3 * i)
                .chain((0..=m).map(|i| 3 * m + 2 + 3 * i))
                .collect(),
            DeletionRule::ExampleConsistent => (1..=m + 1)
                .map(|i| 3 * i)
                .chain((0..m).map(|i| 3 * m + 5 + 3 * i))
                .collect(),
        }
    };
    Ok(out)
}

/// Deletions applied to one chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPrune {
    pub component: usize,
    pub length: usize,
    pub deleted: Vec<usize>,
}

impl ChainPrune {
    /// Edges of the chain that survive, hanging edges included.
    pub fn kept(&self) -> usize {
        self.length - self.deleted.len()
    }
}

/// A connected component of G′_λ, as its vertex labels (sorted) and edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrunedComponent {
    pub labels: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
}

impl fmt::Display for PrunedComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(u32::to_string).collect();
        write!(f, "{{{}}} with {} edges", labels.join(","), self.edges.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrunedGraph {
    pub components: Vec<PrunedComponent>,
    pub edge_count: usize,
    pub vertex_count: usize,
    pub chains: Vec<ChainPrune>,
    /// Lower label `x` of every deleted backbone edge `x ↔ x+1`.
    pub deleted_backbone: Vec<u32>,
}

pub fn prune(g: &PartitionGraph, rule: DeletionRule) -> Result<PrunedGraph> {
    let mut components = Vec::new();
    let mut chains = Vec::new();
    let mut deleted_backbone = Vec::new();
    let mut edge_count = 0;
    for (ci, c) in g.components.iter().enumerate() {
        let edges = c.edges();
        let mut keep = vec![true; edges.len()];
        for chain in c.chains() {
            let deleted = deleted_positions(chain.len(), rule)?;
            for &pos in &deleted {
                let e = chain[pos - 1];
                debug_assert_eq!(edges[e].kind, EdgeKind::Backbone);
                keep[e] = false;
                deleted_backbone.push(c.vertex_label(edges[e].a));
            }
            chains.push(ChainPrune {
                component: ci,
                length: chain.len(),
                deleted,
            });
        }
        edge_count += keep.iter().filter(|&&k| k).count();
        components.extend(split_kept(c, &keep));
    }
    deleted_backbone.sort_unstable();
    Ok(PrunedGraph {
        components,
        edge_count,
        vertex_count: g.total_vertices,
        chains,
        deleted_backbone,
    })
}

fn split_kept(c: &Component, keep: &[bool]) -> Vec<PrunedComponent> {
    let edges = c.edges();
    let v = c.vertex_count();
    let mut root: Vec<usize> = (0..v).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    for (e, _) in edges.iter().zip(keep).filter(|(_, &k)| k) {
        let (a, b) = (find(&mut root, e.a), find(&mut root, e.b));
        root[a.max(b)] = a.min(b);
    }
    let mut groups: Vec<(usize, PrunedComponent)> = Vec::new();
    for x in 0..v {
        let r = find(&mut root, x);
        let idx = match groups.iter().position(|(g, _)| *g == r) {
            Some(i) => i,
            None => {
                groups.push((r, PrunedComponent { labels: Vec::new(), edges: Vec::new() }));
                groups.len() - 1
            }
        };
        groups[idx].1.labels.push(c.vertex_label(x));
    }
    for (e, _) in edges.iter().zip(keep).filter(|(_, &k)| k) {
        let r = find(&mut root, e.a);
        let group = groups.iter_mut().find(|(g, _)| *g == r).expect("edge endpoint grouped");
        group.1.edges.push((c.vertex_label(e.a), c.vertex_label(e.b)));
    }
    let mut out: Vec<PrunedComponent> = groups.into_iter().map(|(_, g)| g).collect();
    for g in &mut out {
        g.labels.sort_unstable();
    }
    out.sort_by(|x, y| x.labels.cmp(&y.labels));
    out
}

/// The six possible shapes of a component of G′_λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentType {
    /// a ↔ a
    Pair,
    /// a ↔ a+1
    Step,
    /// a ↔ a ↔ a+1
    PairStep,
    /// a ↔ a+1 ↔ a+1
    StepPair,
    /// a ↔ a+1 ↔ a+2
    Path,
    /// a ↔ a+1 ↔ a+1 ↔ a+2
    PathDoubledMiddle,
}

impl ComponentType {
    pub fn pattern(self) -> &'static str {
        match self {
            Self::Pair => "a<->a",
            Self::Step => "a<->a+1",
            Self::PairStep => "a<->a<->a+1",
            Self::StepPair => "a<->a+1<->a+1",
            Self::Path => "a<->a+1<->a+2",
            Self::PathDoubledMiddle => "a<->a+1<->a+1<->a+2",
        }
    }

    fn from_offsets(offsets: &[u32]) -> Option<Self> {
        Some(match offsets {
            [0, 0] => Self::Pair,
            [0, 1] => Self::Step,
            [0, 0, 1] => Self::PairStep,
            [0, 1, 1] => Self::StepPair,
            [0, 1, 2] => Self::Path,
            [0, 1, 1, 2] => Self::PathDoubledMiddle,
            _ => return None,
        })
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.pattern())
    }
}

pub fn classify_components(pg: &PrunedGraph) -> Result<Vec<ComponentType>> {
    pg.components
        .iter()
        .map(|c| {
            let base = c.labels[0];
            let offsets: Vec<u32> = c.labels.iter().map(|l| l - base).collect();
            ComponentType::from_offsets(&offsets)
                .filter(|_| c.edges.len() + 1 == c.labels.len())
                .ok_or_else(|| Error::UnclassifiedComponent(c.to_string()))
        })
        .collect()
}

/// (−1)^{#edges(G′_λ)}.
pub fn sign_via_pruned(np: &NeighborlyPartition, rule: DeletionRule) -> Result<i64> {
    let g = super::build_graph(np);
    if super::sign_diagnostics(&g).zero_flag {
        return Err(Error::NotAdmissible(np.to_string()));
    }
    let pg = prune(&g, rule)?;
    Ok(if pg.edge_count % 2 == 0 { 1 } else { -1 })
}
