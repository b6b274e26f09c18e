//! Bipartition enumeration and the composition graph with its connectivity
//! test.
//!
//! Parties are 0-based indices internally; reports and files use 1-based
//! labels. Bipartitions are canonical: the left half always contains party 0.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Canonical bipartition of `{0, ..., l-1}`: `left` contains party 0 and is a
/// nonempty proper subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    party_count: usize,
    left: Vec<usize>,
}

impl Bipartition {
    pub fn new(party_count: usize, mut left: Vec<usize>) -> Result<Self> {
        left.sort_unstable();
        left.dedup();
        if left.is_empty() || left.len() >= party_count {
            return Err(Error::Input("bipartition halves must both be nonempty".into()));
        }
        if left[0] != 0 {
            return Err(Error::Input("canonical bipartition must keep party 1 on the left".into()));
        }
        if *left.last().unwrap() >= party_count {
            return Err(Error::Input("bipartition party index out of range".into()));
        }
        Ok(Self { party_count, left })
    }

    pub fn party_count(&self) -> usize {
        self.party_count
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> Vec<usize> {
        (0..self.party_count).filter(|p| !self.left.contains(p)).collect()
    }

    /// 1-based rendering such as `{1,3}|{2}`.
    pub fn display(&self) -> String {
        let fmt = |v: &[usize]| {
            let inner: Vec<String> = v.iter().map(|p| (p + 1).to_string()).collect();
            format!("{{{}}}", inner.join(","))
        };
        format!("{}|{}", fmt(&self.left), fmt(&self.right()))
    }
}

/// All `2^(L-1) - 1` canonical bipartitions in deterministic order.
pub fn bipartitions(party_count: usize) -> Vec<Bipartition> {
    assert!(party_count >= 2, "bipartitions need at least two parties");
    let mut out = Vec::with_capacity((1usize << (party_count - 1)) - 1);
    // mask over parties 1..L-1 joining party 0 on the left; full mask excluded.
    for mask in 0..((1usize << (party_count - 1)) - 1) {
        let mut left = vec![0];
        for p in 1..party_count {
            if mask & (1 << (p - 1)) != 0 {
                left.push(p);
            }
        }
        out.push(Bipartition { party_count, left });
    }
    out
}

/// Composition graph: vertices are parties, edges the union of the cliques on
/// each block's party subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl CompositionGraph {
    pub fn new(vertex_count: usize) -> Self {
        Self { vertex_count, edges: BTreeSet::new() }
    }

    /// Build from block party subsets: a clique per block, duplicates merged.
    pub fn from_blocks(vertex_count: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut g = Self::new(vertex_count);
        for block in blocks {
            for (i, &u) in block.iter().enumerate() {
                if u >= vertex_count {
                    return Err(Error::Input(format!("block party {} out of range", u + 1)));
                }
                for &v in &block[i + 1..] {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.edges.insert((u.min(v), u.max(v)));
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Connected components as sorted vertex lists, smallest vertex first.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertex_count);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..self.vertex_count {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Standard connectivity over all vertices; isolated vertices count
    /// against it, and the single-vertex graph is connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}
