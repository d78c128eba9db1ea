//! Posets, abstract simplicial complexes with typed vertices, and graphs.

mod iso;

pub use iso::{find_isomorphism, isomorphic, isomorphic_graphs, ISO_SIMPLEX_CAP};

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("order relation has a cycle through element {0}")]
    Cyclic(usize),
    #[error("element {0} out of range")]
    OutOfRange(usize),
    #[error("simplex {0:?} is not in the complex")]
    SimplexAbsent(Vec<u32>),
    #[error("complex has {0} simplices; isomorphism testing is capped at {ISO_SIMPLEX_CAP}")]
    SizeCap(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn or_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// A finite strict partial order with optional type tags and ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    tags: Vec<Option<String>>,
    ranks: Option<Vec<i32>>,
    up: Vec<Bits>,
}

impl Poset {
    /// Transitive closure of the given `a < b` pairs.
    pub fn from_relations(tags: Vec<Option<String>>, less: &[(usize, usize)]) -> Result<Self, ComplexError> {
        let n = tags.len();
        let mut succ = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(a, b) in less {
            if a >= n || b >= n {
                return Err(ComplexError::OutOfRange(a.max(b)));
            }
            if a == b {
                return Err(ComplexError::Cyclic(a));
            }
            succ[a].push(b);
            indegree[b] += 1;
        }
        let mut topo = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        while let Some(v) = queue.pop_front() {
            topo.push(v);
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if topo.len() != n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).unwrap_or(0);
            return Err(ComplexError::Cyclic(stuck));
        }
        let mut up = vec![Bits::new(n); n];
        for &v in topo.iter().rev() {
            let mut row = Bits::new(n);
            for &w in &succ[v] {
                row.set(w);
                row.or_with(&up[w]);
            }
            up[v] = row;
        }
        Ok(Poset { tags, ranks: None, up })
    }

    pub fn with_ranks(mut self, ranks: Vec<i32>) -> Self {
        assert_eq!(ranks.len(), self.len());
        self.ranks = Some(ranks);
        self
    }

    /// A chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_relations(vec![None; n], &pairs).expect("a chain is acyclic")
    }

    pub fn antichain(n: usize) -> Self {
        Poset::from_relations(vec![None; n], &[]).expect("no relations")
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.up[a].get(b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b)
    }

    pub fn tag(&self, a: usize) -> Option<&str> {
        self.tags[a].as_deref()
    }

    pub fn tags(&self) -> &[Option<String>] {
        &self.tags
    }

    pub fn rank(&self, a: usize) -> Option<i32> {
        self.ranks.as_ref().map(|r| r[a])
    }

    pub fn ranks(&self) -> Option<&[i32]> {
        self.ranks.as_deref()
    }

    /// Elements strictly above `a`.
    pub fn above(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[a].ones().take_while(move |&b| b < self.len())
    }

    /// Pairs `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.above(a) {
                if !self.above(a).any(|c| self.less(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Induced subposet on `keep` (in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        let tags = keep.iter().map(|&i| self.tags[i].clone()).collect();
        let mut pairs = Vec::new();
        for (x, &a) in keep.iter().enumerate() {
            for (y, &b) in keep.iter().enumerate() {
                if self.less(a, b) {
                    pairs.push((x, y));
                }
            }
        }
        let p = Poset::from_relations(tags, &pairs).expect("a subposet is acyclic");
        match &self.ranks {
            Some(r) => p.with_ranks(keep.iter().map(|&i| r[i]).collect()),
            None => p,
        }
    }

    /// The same elements with the order reversed; ranks are negated.
    pub fn opposite(&self) -> Poset {
        let mut pairs = Vec::new();
        for a in 0..self.len() {
            for b in self.above(a) {
                pairs.push((b, a));
            }
        }
        let p = Poset::from_relations(self.tags.clone(), &pairs).expect("acyclic");
        match &self.ranks {
            Some(r) => p.with_ranks(r.iter().map(|x| -x).collect()),
            None => p,
        }
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.above(a).next().is_none()).collect()
    }
}

/// Chains of the poset as a simplicial complex; vertex tags are copied.
pub fn derived_complex(p: &Poset) -> SimplicialComplex {
    let mut simplices = BTreeSet::new();
    let mut stack: Vec<Vec<u32>> = (0..p.len()).map(|a| vec![a as u32]).collect();
    while let Some(chain) = stack.pop() {
        let top = *chain.last().expect("chains are nonempty") as usize;
        for b in p.above(top) {
            let mut next = chain.clone();
            next.push(b as u32);
            stack.push(next);
        }
        let mut sorted = chain;
        sorted.sort_unstable();
        simplices.insert(sorted);
    }
    SimplicialComplex { tags: p.tags.clone(), simplices }
}

/// Adds one element above everything.
pub fn cone(p: &Poset) -> Poset {
    let n = p.len();
    let mut tags = p.tags.clone();
    tags.push(None);
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|a| (a, n)).collect();
    for a in 0..n {
        pairs.extend(p.above(a).map(|b| (a, b)));
    }
    let out = Poset::from_relations(tags, &pairs).expect("acyclic");
    match &p.ranks {
        Some(r) => {
            let mut r = r.clone();
            r.push(r.iter().copied().max().map_or(0, |m| m + 1));
            out.with_ranks(r)
        }
        None => out,
    }
}

/// Componentwise order on pairs; element `(i, j)` has index `i * |q| + j`.
pub fn poset_product(p: &Poset, q: &Poset) -> Poset {
    let (n, m) = (p.len(), q.len());
    let mut tags = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            tags.push(match (p.tag(i), q.tag(j)) {
                (Some(a), Some(b)) => Some(format!("{a}*{b}")),
                _ => None,
            });
        }
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..m {
            for i2 in 0..n {
                for j2 in 0..m {
                    if (i, j) != (i2, j2) && p.leq(i, i2) && q.leq(j, j2) {
                        pairs.push((i * m + j, i2 * m + j2));
                    }
                }
            }
        }
    }
    let out = Poset::from_relations(tags, &pairs).expect("product of acyclic orders");
    match (&p.ranks, &q.ranks) {
        (Some(r), Some(s)) => out.with_ranks((0..n * m).map(|k| r[k / m] + s[k % m]).collect()),
        _ => out,
    }
}

/// An abstract simplicial complex. Simplices are nonempty sorted vertex
/// tuples; the empty simplex is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    tags: Vec<Option<String>>,
    simplices: BTreeSet<Vec<u32>>,
}

impl SimplicialComplex {
    /// The complex with no vertices (only the empty simplex).
    pub fn empty() -> Self {
        SimplicialComplex { tags: Vec::new(), simplices: BTreeSet::new() }
    }

    /// Closes `facets` under subsets and adds every vertex as a 0-simplex.
    pub fn from_facets(tags: Vec<Option<String>>, facets: &[Vec<u32>]) -> Self {
        let mut simplices = BTreeSet::new();
        for v in 0..tags.len() as u32 {
            simplices.insert(vec![v]);
        }
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            assert!(f.iter().all(|&v| (v as usize) < tags.len()), "facet vertex out of range");
            let k = f.len();
            for mask in 1u32..(1 << k) {
                simplices.insert((0..k).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect());
            }
        }
        SimplicialComplex { tags, simplices }
    }

    /// `n` vertices, no edges.
    pub fn points(n: usize, tag: Option<&str>) -> Self {
        Self::from_facets(vec![tag.map(String::from); n], &[])
    }

    pub fn vertex_count(&self) -> usize {
        self.tags.len()
    }

    pub fn tag(&self, v: usize) -> Option<&str> {
        self.tags[v].as_deref()
    }

    pub fn tags(&self) -> &[Option<String>] {
        &self.tags
    }

    pub fn with_tags(&self, tags: Vec<Option<String>>) -> Self {
        assert_eq!(tags.len(), self.tags.len());
        SimplicialComplex { tags, simplices: self.simplices.clone() }
    }

    pub fn without_tags(&self) -> Self {
        self.with_tags(vec![None; self.vertex_count()])
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.simplices.iter()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        if simplex.is_empty() {
            return true;
        }
        let mut s = simplex.to_vec();
        s.sort_unstable();
        self.simplices.contains(&s)
    }

    /// Dimension, with -1 for the empty complex.
    pub fn dimension(&self) -> isize {
        self.simplices.iter().map(|s| s.len() as isize - 1).max().unwrap_or(-1)
    }

    /// Number of simplices of each dimension, starting at 0.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dimension() + 1) as usize];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn simplices_of_dim(&self, dim: usize) -> impl Iterator<Item = &Vec<u32>> {
        self.simplices.iter().filter(move |s| s.len() == dim + 1)
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let graph = self.one_skeleton();
        self.simplices
            .iter()
            .filter(|s| {
                // a simplex is maximal iff no common neighbor extends it
                let mut common: Vec<u32> = graph.neighbors(s[0] as usize).to_vec();
                for &v in &s[1..] {
                    common.retain(|w| graph.has_edge(v as usize, *w as usize));
                }
                common.iter().all(|&w| {
                    let mut t = (*s).clone();
                    t.push(w);
                    !self.contains(&t)
                })
            })
            .cloned()
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dimension();
        self.facets().iter().all(|f| f.len() as isize - 1 == d)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
    }

    pub fn one_skeleton(&self) -> Graph {
        let edges: Vec<(usize, usize)> =
            self.simplices_of_dim(1).map(|e| (e[0] as usize, e[1] as usize)).collect();
        Graph::from_edges(self.vertex_count(), &edges)
    }

    /// Induced subcomplex on `keep`, renumbered in the given order.
    pub fn induced(&self, keep: &[u32]) -> SimplicialComplex {
        let mut new_id = vec![u32::MAX; self.vertex_count()];
        for (k, &v) in keep.iter().enumerate() {
            new_id[v as usize] = k as u32;
        }
        let simplices = self
            .simplices
            .iter()
            .filter(|s| s.iter().all(|&v| new_id[v as usize] != u32::MAX))
            .map(|s| {
                let mut t: Vec<u32> = s.iter().map(|&v| new_id[v as usize]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        let tags = keep.iter().map(|&v| self.tags[v as usize].clone()).collect();
        SimplicialComplex { tags, simplices }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagVerdict {
    pub flag: bool,
    /// A clique of the 1-skeleton spanning no simplex, minimal by construction.
    pub witness: Option<Vec<u32>>,
}

/// Every clique of the 1-skeleton spans a simplex. It suffices to check that
/// each simplex plus a vertex adjacent to all of it is again a simplex.
pub fn is_flag(sc: &SimplicialComplex) -> FlagVerdict {
    let g = sc.one_skeleton();
    for s in sc.simplices() {
        if s.len() < 2 {
            continue;
        }
        let mut common: Vec<u32> = g.neighbors(s[0] as usize).to_vec();
        for &v in &s[1..] {
            common.retain(|&w| g.has_edge(v as usize, w as usize));
        }
        for w in common {
            let mut t = s.clone();
            t.push(w);
            t.sort_unstable();
            if !sc.simplices.contains(&t) {
                return FlagVerdict { flag: false, witness: Some(t) };
            }
        }
    }
    FlagVerdict { flag: true, witness: None }
}

/// Link of `simplex`, with the original id of each link vertex.
pub fn link_with_origin(sc: &SimplicialComplex, simplex: &[u32]) -> Result<(SimplicialComplex, Vec<u32>), ComplexError> {
    let mut sigma = simplex.to_vec();
    sigma.sort_unstable();
    if !sc.contains(&sigma) {
        return Err(ComplexError::SimplexAbsent(sigma));
    }
    let mut rest: BTreeSet<Vec<u32>> = BTreeSet::new();
    for s in sc.simplices() {
        if s.len() > sigma.len() && sigma.iter().all(|v| s.binary_search(v).is_ok()) {
            rest.insert(s.iter().copied().filter(|v| sigma.binary_search(v).is_err()).collect());
        }
    }
    let origin: Vec<u32> = rest.iter().filter(|t| t.len() == 1).map(|t| t[0]).collect();
    let mut new_id = vec![u32::MAX; sc.vertex_count()];
    for (k, &v) in origin.iter().enumerate() {
        new_id[v as usize] = k as u32;
    }
    let simplices = rest.iter().map(|t| t.iter().map(|&v| new_id[v as usize]).collect()).collect();
    let tags = origin.iter().map(|&v| sc.tags[v as usize].clone()).collect();
    Ok((SimplicialComplex { tags, simplices }, origin))
}

pub fn link(sc: &SimplicialComplex, simplex: &[u32]) -> Result<SimplicialComplex, ComplexError> {
    link_with_origin(sc, simplex).map(|(l, _)| l)
}

/// Vertices of `a` come first, then those of `b` shifted by `|a|`.
pub fn join(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let shift = a.vertex_count() as u32;
    let mut tags = a.tags.clone();
    tags.extend(b.tags.iter().cloned());
    let mut simplices = a.simplices.clone();
    let shifted: Vec<Vec<u32>> = b.simplices.iter().map(|s| s.iter().map(|v| v + shift).collect()).collect();
    simplices.extend(shifted.iter().cloned());
    for s in &a.simplices {
        for t in &shifted {
            let mut u = s.clone();
            u.extend_from_slice(t);
            simplices.insert(u);
        }
    }
    SimplicialComplex { tags, simplices }
}

/// Nonempty simplices ordered by inclusion, ranked by dimension.
pub fn face_poset(sc: &SimplicialComplex) -> Poset {
    let list: Vec<&Vec<u32>> = sc.simplices().collect();
    let index: std::collections::HashMap<&Vec<u32>, usize> = list.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut pairs = Vec::new();
    for (i, s) in list.iter().enumerate() {
        if s.len() < 2 {
            continue;
        }
        for skip in 0..s.len() {
            let face: Vec<u32> = s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
            pairs.push((index[&face], i));
        }
    }
    let tags = list.iter().map(|s| if s.len() == 1 { sc.tags[s[0] as usize].clone() } else { None }).collect();
    let ranks = list.iter().map(|s| s.len() as i32 - 1).collect();
    Poset::from_relations(tags, &pairs).expect("inclusion is acyclic").with_ranks(ranks)
}

pub fn barycentric_subdivision(sc: &SimplicialComplex) -> SimplicialComplex {
    derived_complex(&face_poset(sc)).without_tags()
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            assert!(a != b, "graphs are simple");
            adj[a].push(b as u32);
            adj[b].push(a as u32);
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        Graph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, row) in self.adj.iter().enumerate() {
            out.extend(row.iter().filter(|&&b| a < b as usize).map(|&b| (a, b as usize)));
        }
        out
    }

    pub fn to_complex(&self) -> SimplicialComplex {
        let facets: Vec<Vec<u32>> = self.edges().iter().map(|&(a, b)| vec![a as u32, b as u32]).collect();
        SimplicialComplex::from_facets(vec![None; self.vertex_count()], &facets)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n == 0 || self.bfs_distances(0, usize::MAX).iter().all(|d| d.is_some())
    }

    fn bfs_distances(&self, root: usize, depth: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have distances");
            if du >= depth {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(du + 1);
                    queue.push_back(w as usize);
                }
            }
        }
        dist
    }

    /// Length of a shortest cycle through `root` seen by a BFS that expands
    /// vertices up to depth `max_depth`.
    fn shortest_cycle_from(&self, root: usize, max_depth: usize) -> Option<usize> {
        let n = self.vertex_count();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut best: Option<usize> = None;
        while let Some(u) = queue.pop_front() {
            if dist[u] > max_depth {
                break;
            }
            for &w in &self.adj[u] {
                let w = w as usize;
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b: usize| b.min(len)));
                }
            }
        }
        best
    }

    /// `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        (0..self.vertex_count()).filter_map(|r| self.shortest_cycle_from(r, usize::MAX)).min()
    }

    /// Whether every cycle has length at least `bound`, by BFS truncated at
    /// depth `(bound - 1) / 2`.
    pub fn girth_at_least(&self, bound: usize) -> bool {
        let depth = bound.saturating_sub(1) / 2;
        (0..self.vertex_count()).all(|r| self.shortest_cycle_from(r, depth).is_none_or(|len| len >= bound))
    }

    /// Part sizes `(m, n)` with `m ≤ n` when the graph is complete bipartite
    /// with both parts nonempty.
    pub fn complete_bipartite_parts(&self) -> Option<(usize, usize)> {
        let n = self.vertex_count();
        if n < 2 || !self.is_connected() {
            return None;
        }
        let dist = self.bfs_distances(0, usize::MAX);
        let side: Vec<bool> = dist.iter().map(|d| d.expect("connected") % 2 == 1).collect();
        if self.edges().iter().any(|&(a, b)| side[a] == side[b]) {
            return None;
        }
        let odd = side.iter().filter(|&&s| s).count();
        let (m, k) = (odd.min(n - odd), odd.max(n - odd));
        (m >= 1 && self.edge_count() == m * k).then_some((m, k))
    }
}

pub fn graph_girth(g: &Graph) -> Option<usize> {
    g.girth()
}

pub fn is_complete_bipartite(g: &Graph) -> Option<(usize, usize)> {
    g.complete_bipartite_parts()
}
