//! Face posets of regular complex polytopes: coset models, products,
//! generalized cubes and the tabulated Hessian polyhedron.

mod hessian;

pub use hessian::{
    edge_triangles, faces_meeting_in_edges, hessian, verify_hessian, vertex_action_matches_table, HessianData,
};

use std::collections::HashSet;

use thiserror::Error;

use crate::classify::classify;
use crate::complexes::{derived_complex, isomorphic, ComplexError, Graph, Poset, SimplicialComplex};
use crate::diagram::{ExtendedCoxeterDiagram, GeneratorSubset};
use crate::groups::{regular_table, CosetTable, GroupError};

/// Largest group for which element-level constructions are attempted.
pub const ORDER_CAP: u64 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("diagram is not a path")]
    NotPath,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A ranked poset with a least face (rank -1, index 0) and a greatest face
/// (rank n, last index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePoset {
    poset: Poset,
    rank: usize,
}

impl FacePoset {
    /// `faces` are the proper faces as `(rank, tag)`; `less` indexes into them.
    pub fn from_proper(rank: usize, faces: Vec<(i32, Option<String>)>, less: &[(usize, usize)]) -> Self {
        let k = faces.len();
        let mut tags = vec![None];
        let mut ranks = vec![-1];
        for (r, t) in faces {
            assert!((0..rank as i32).contains(&r), "proper face rank out of range");
            tags.push(t);
            ranks.push(r);
        }
        tags.push(None);
        ranks.push(rank as i32);
        let top = k + 1;
        let mut pairs: Vec<(usize, usize)> = less.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
        pairs.push((0, top));
        for f in 1..=k {
            pairs.push((0, f));
            pairs.push((f, top));
        }
        let poset = Poset::from_relations(tags, &pairs).expect("face relation is acyclic").with_ranks(ranks);
        FacePoset { poset, rank }
    }

    /// The rank-1 polytope with `p` vertices.
    pub fn segment(p: usize) -> Self {
        FacePoset::from_proper(1, vec![(0, None); p], &[])
    }

    /// The rank-0 polytope: a single vertex.
    pub fn point() -> Self {
        FacePoset::from_proper(0, Vec::new(), &[])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn face_rank(&self, f: usize) -> i32 {
        self.poset.rank(f).expect("face posets are ranked")
    }

    pub fn tag(&self, f: usize) -> Option<&str> {
        self.poset.tag(f)
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.poset.less(a, b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn faces_of_rank(&self, r: i32) -> Vec<usize> {
        (0..self.len()).filter(|&f| self.face_rank(f) == r).collect()
    }

    /// Number of faces of each rank `0..n`.
    pub fn rank_profile(&self) -> Vec<usize> {
        (0..self.rank as i32).map(|r| self.faces_of_rank(r).len()).collect()
    }

    pub fn proper_faces(&self) -> Vec<usize> {
        (1..self.top()).collect()
    }

    /// Proper faces only; element `i` is face `i + 1`.
    pub fn proper_poset(&self) -> Poset {
        self.poset.restrict(&self.proper_faces())
    }

    /// Pairs `(a, b)` of faces with `a < b` and ranks differing by one.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            let r = self.face_rank(a);
            out.extend(self.poset.above(a).filter(|&b| self.face_rank(b) == r + 1).map(|b| (a, b)));
        }
        out
    }

    /// Number of maximal chains of proper faces.
    pub fn flag_count(&self) -> u64 {
        let mut count = vec![0u64; self.len()];
        count[0] = 1;
        for r in 0..=self.rank as i32 {
            for f in self.faces_of_rank(r) {
                count[f] = self
                    .faces_of_rank(r - 1)
                    .into_iter()
                    .filter(|&g| self.less(g, f))
                    .map(|g| count[g])
                    .sum();
            }
        }
        count[self.top()]
    }

    /// Pairs `F < H` two ranks apart with fewer than two faces between them.
    pub fn diamond_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for f in 0..self.len() {
            let r = self.face_rank(f);
            for h in self.poset.above(f).filter(|&h| self.face_rank(h) == r + 2) {
                let between = self.poset.above(f).filter(|&g| self.less(g, h)).count();
                if between < 2 {
                    out.push((f, h));
                }
            }
        }
        out
    }

    /// Order reversed; rank `r` becomes `n - 1 - r`.
    pub fn dual(&self) -> FacePoset {
        let proper = self.proper_faces();
        let last = proper.len();
        // proper face i + 1 becomes new proper index last - 1 - i
        let faces = proper
            .iter()
            .rev()
            .map(|&f| (self.rank as i32 - 1 - self.face_rank(f), self.tag(f).map(String::from)))
            .collect();
        let mut less = Vec::new();
        for &a in &proper {
            for b in self.poset.above(a).filter(|&b| b != self.top()) {
                less.push((last - b, last - a));
            }
        }
        FacePoset::from_proper(self.rank, faces, &less)
    }

    /// Comparability graph of proper faces of consecutive ranks; vertex `i`
    /// is face `i + 1`.
    pub fn incidence_graph(&self) -> Graph {
        let n = self.top();
        let edges: Vec<(usize, usize)> = self
            .covers()
            .into_iter()
            .filter(|&(a, b)| a != 0 && b != n)
            .map(|(a, b)| (a - 1, b - 1))
            .collect();
        Graph::from_edges(n - 1, &edges)
    }

    /// Order complex of the proper faces, vertex tags kept.
    pub fn derived_complex(&self) -> SimplicialComplex {
        derived_complex(&self.proper_poset())
    }

    fn rank_tagged_complex(&self) -> SimplicialComplex {
        let sc = self.derived_complex();
        let tags = self.proper_faces().iter().map(|&f| Some(format!("r{}", self.face_rank(f)))).collect();
        sc.with_tags(tags)
    }

    /// Rank-preserving poset isomorphism. The order complex with rank tags
    /// determines a ranked poset, so this compares those.
    pub fn is_isomorphic(&self, other: &FacePoset) -> Result<bool, ComplexError> {
        if self.rank != other.rank || self.rank_profile() != other.rank_profile() {
            return Ok(false);
        }
        isomorphic(&self.rank_tagged_complex(), &other.rank_tagged_complex())
    }
}

/// Face poset of a path diagram together with, for every group element,
/// the proper face of each rank containing the corresponding chamber.
#[derive(Debug, Clone)]
pub struct CosetPolytope {
    pub faces: FacePoset,
    /// `chamber_faces[i][g]` is the index (in `faces`) of the rank-`i` face
    /// containing chamber `g`.
    pub chamber_faces: Vec<Vec<usize>>,
    /// Generator index omitted by the rank-`i` stabilizer.
    pub path: Vec<usize>,
}

/// Orbits of `generators` acting on the right of a regular table.
pub(crate) fn coset_classes(table: &CosetTable, generators: GeneratorSubset) -> (Vec<usize>, usize) {
    let n = table.len();
    let mut class = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if class[start] != usize::MAX {
            continue;
        }
        class[start] = count;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for g in generators.iter() {
                let y = table.act(x, 2 * g as u32);
                if class[y] == usize::MAX {
                    class[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    (class, count)
}

pub(crate) fn regular_table_capped(d: &ExtendedCoxeterDiagram, max_cosets: usize) -> Result<CosetTable, GroupError> {
    let c = classify(d);
    if !c.is_finite() {
        return Err(GroupError::Infinite);
    }
    let order: u64 = c.types().iter().map(|t| t.order().expect("finite components have orders")).product();
    if order > ORDER_CAP {
        return Err(GroupError::OrderCap { order, cap: ORDER_CAP });
    }
    regular_table(d, max_cosets)
}

pub fn coset_polytope(d: &ExtendedCoxeterDiagram, max_cosets: usize) -> Result<CosetPolytope, PolytopeError> {
    let path = d.path_order().ok_or(PolytopeError::NotPath)?;
    let table = regular_table_capped(d, max_cosets)?;
    let n = path.len();
    let mut faces = Vec::new();
    let mut chamber_faces = Vec::with_capacity(n);
    for (i, &g) in path.iter().enumerate() {
        let (class, count) = coset_classes(&table, d.all().without(g));
        let offset = faces.len();
        faces.extend((0..count).map(|_| (i as i32, Some(d.name(g).to_string()))));
        chamber_faces.push(class.into_iter().map(|c| c + offset).collect::<Vec<_>>());
    }
    let mut less = HashSet::new();
    for x in 0..table.len() {
        for i in 0..n {
            for j in i + 1..n {
                less.insert((chamber_faces[i][x], chamber_faces[j][x]));
            }
        }
    }
    let mut less: Vec<_> = less.into_iter().collect();
    less.sort_unstable();
    let faces = FacePoset::from_proper(n, faces, &less);
    for row in &mut chamber_faces {
        for f in row.iter_mut() {
            *f += 1;
        }
    }
    Ok(CosetPolytope { faces, chamber_faces, path })
}

/// The regular polytope of a finite path diagram: rank-`i` faces are the
/// cosets of the parabolic omitting the `i`-th generator along the path,
/// incident when they intersect.
pub fn polytope_from_group(d: &ExtendedCoxeterDiagram, max_cosets: usize) -> Result<FacePoset, PolytopeError> {
    coset_polytope(d, max_cosets).map(|c| c.faces)
}

/// Pairs of nonempty faces ordered componentwise, plus one least face.
pub fn product(p: &FacePoset, q: &FacePoset) -> FacePoset {
    let pf: Vec<usize> = (1..p.len()).collect();
    let qf: Vec<usize> = (1..q.len()).collect();
    let index = |i: usize, j: usize| (i - 1) * qf.len() + (j - 1);
    let mut faces = Vec::new();
    let mut less = Vec::new();
    for &a in &pf {
        for &b in &qf {
            faces.push((p.face_rank(a) + q.face_rank(b), None));
            for &a2 in &pf {
                for &b2 in &qf {
                    if (a, b) != (a2, b2) && p.leq(a, a2) && q.leq(b, b2) {
                        less.push((index(a, b), index(a2, b2)));
                    }
                }
            }
        }
    }
    // the last pair is top x top, which from_proper adds itself
    let top = faces.len() - 1;
    faces.pop();
    less.retain(|&(_, b)| b != top);
    FacePoset::from_proper(p.rank + q.rank, faces, &less)
}

/// The `n`-fold product of the `p`-point segment.
pub fn generalized_cube(n: usize, p: usize) -> FacePoset {
    assert!(n >= 1 && p >= 2);
    let seg = FacePoset::segment(p);
    (1..n).fold(seg.clone(), |acc, _| product(&acc, &seg))
}
