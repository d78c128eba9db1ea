//! Marked A3 complexes and the combinatorial CAT(1) criteria: large links
//! at the pi/3 vertices, complete bipartite links at the pi/2 vertices, and
//! filled short loops.

use std::collections::{BTreeSet, HashSet};
use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::complexes::{isomorphic, link, Graph, SimplicialComplex};
use crate::diagram::parse_diagram;
use crate::groups::GroupError;
use crate::milnor::milnor_complex;
use crate::polytopes::{edge_triangles, faces_meeting_in_edges, hessian};
use crate::report::Report;

/// Vertex of the model triangle: `A` and `C` carry angle pi/3, `B` pi/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexType {
    A,
    B,
    C,
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexType::A => "a",
            VertexType::B => "b",
            VertexType::C => "c",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MarkingViolation {
    NotTwoDimensional(isize),
    UnknownType { vertex: u32, tag: Option<String> },
    /// A simplex in no 2-simplex.
    NotHomogeneous(Vec<u32>),
    /// A chamber whose vertices do not carry three distinct types.
    ChamberTypes(Vec<u32>),
    /// Two chambers disagree on the type of a shared vertex.
    ConflictingTypes { vertex: u32, first: VertexType, second: VertexType },
}

#[derive(Debug, Clone)]
pub struct MarkedA3Complex {
    complex: SimplicialComplex,
    types: Vec<VertexType>,
}

fn validate(complex: &SimplicialComplex, types: &[VertexType]) -> Vec<MarkingViolation> {
    let mut out = Vec::new();
    if complex.dimension() != 2 {
        out.push(MarkingViolation::NotTwoDimensional(complex.dimension()));
    }
    for f in complex.facets() {
        if f.len() != 3 {
            out.push(MarkingViolation::NotHomogeneous(f));
        } else {
            let kinds: BTreeSet<VertexType> = f.iter().map(|&v| types[v as usize]).collect();
            if kinds.len() != 3 {
                out.push(MarkingViolation::ChamberTypes(f));
            }
        }
    }
    out
}

/// Types vertices by their tags; `tags[0]`, `tags[1]`, `tags[2]` name the
/// `A`, `B` and `C` vertices.
pub fn mark_a3(sc: &SimplicialComplex, tags: [&str; 3]) -> Result<MarkedA3Complex, Vec<MarkingViolation>> {
    let mut types = Vec::with_capacity(sc.vertex_count());
    let mut bad = Vec::new();
    for v in 0..sc.vertex_count() {
        match tags.iter().position(|&t| sc.tag(v) == Some(t)) {
            Some(0) => types.push(VertexType::A),
            Some(1) => types.push(VertexType::B),
            Some(_) => types.push(VertexType::C),
            None => {
                bad.push(MarkingViolation::UnknownType { vertex: v as u32, tag: sc.tag(v).map(String::from) });
                types.push(VertexType::A);
            }
        }
    }
    bad.extend(validate(sc, &types));
    if bad.is_empty() {
        Ok(MarkedA3Complex { complex: sc.clone(), types })
    } else {
        Err(bad)
    }
}

/// Builds a marked complex from chambers each carrying its own marking.
pub fn from_chamber_markings(
    vertex_count: usize,
    chambers: &[[(u32, VertexType); 3]],
) -> Result<MarkedA3Complex, Vec<MarkingViolation>> {
    let mut types: Vec<Option<VertexType>> = vec![None; vertex_count];
    let mut bad = Vec::new();
    for chamber in chambers {
        for &(v, t) in chamber {
            match types[v as usize] {
                None => types[v as usize] = Some(t),
                Some(first) if first != t => bad.push(MarkingViolation::ConflictingTypes { vertex: v, first, second: t }),
                Some(_) => {}
            }
        }
    }
    let facets: Vec<Vec<u32>> = chambers.iter().map(|c| c.iter().map(|&(v, _)| v).collect()).collect();
    let tags = types.iter().map(|t| t.map(|t| t.to_string())).collect();
    let complex = SimplicialComplex::from_facets(tags, &facets);
    if let Some(v) = types.iter().position(Option::is_none) {
        bad.push(MarkingViolation::UnknownType { vertex: v as u32, tag: None });
    }
    if !bad.is_empty() {
        return Err(bad);
    }
    mark_a3(&complex, ["a", "b", "c"])
}

impl MarkedA3Complex {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn vertex_type(&self, v: u32) -> VertexType {
        self.types[v as usize]
    }

    /// An edge is named after the vertex type opposite it in a chamber.
    pub fn edge_type(&self, a: u32, b: u32) -> VertexType {
        let present = [self.vertex_type(a), self.vertex_type(b)];
        [VertexType::A, VertexType::B, VertexType::C]
            .into_iter()
            .find(|t| !present.contains(t))
            .expect("edges join distinct types")
    }

    pub fn vertices_of(&self, t: VertexType) -> Vec<u32> {
        (0..self.types.len() as u32).filter(|&v| self.types[v as usize] == t).collect()
    }
}

/// Side lengths of the model spherical triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct A3EdgeLengths {
    pub a_to_c: f64,
    pub b_to_c: f64,
    pub a_to_b: f64,
}

/// Polar law of cosines: the side opposite angle `x` has cosine
/// `(cos x + cos y cos z) / (sin y sin z)`.
fn side_opposite(x: f64, y: f64, z: f64) -> f64 {
    ((x.cos() + y.cos() * z.cos()) / (y.sin() * z.sin())).acos()
}

pub fn edge_lengths() -> A3EdgeLengths {
    let (a, b, c) = (PI / 3.0, PI / 2.0, PI / 3.0);
    A3EdgeLengths { a_to_c: side_opposite(b, a, c), b_to_c: side_opposite(a, b, c), a_to_b: side_opposite(c, a, b) }
}

impl A3EdgeLengths {
    /// The labelling with the a-c and a-b lengths exchanged.
    pub fn swapped(self) -> Self {
        A3EdgeLengths { a_to_c: self.a_to_b, b_to_c: self.b_to_c, a_to_b: self.a_to_c }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoopType {
    /// Edges between A and C vertices.
    pub direct: usize,
    /// Two-edge excursions through a B vertex.
    pub detours: usize,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopCensus {
    /// Closed paths shorter than 2 pi.
    pub short: Vec<LoopType>,
    /// Closed paths whose length is 2 pi within the tolerance.
    pub boundary: Vec<LoopType>,
}

impl LoopCensus {
    pub fn types(&self) -> BTreeSet<(usize, usize)> {
        self.short.iter().map(|l| (l.direct, l.detours)).collect()
    }
}

/// Closed station paths through A and C vertices: `direct` A-C edges (an
/// even number, since each switches type) and `detours` through B vertices,
/// with at least three stations.
pub fn loop_audit(lengths: A3EdgeLengths, tol: f64) -> LoopCensus {
    let full = 2.0 * PI;
    let detour = 2.0 * lengths.a_to_b;
    let max_direct = (full / lengths.a_to_c).ceil() as usize + 1;
    let max_detours = (full / detour).ceil() as usize + 1;
    let mut census = LoopCensus { short: Vec::new(), boundary: Vec::new() };
    for direct in (0..=max_direct).step_by(2) {
        for detours in 0..=max_detours {
            if direct + detours < 3 {
                continue;
            }
            let length = direct as f64 * lengths.a_to_c + detours as f64 * detour;
            let t = LoopType { direct, detours, length };
            if (length - full).abs() <= tol {
                census.boundary.push(t);
            } else if length < full {
                census.short.push(t);
            }
        }
    }
    census
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pattern {
    /// a c a c, filled by a B vertex over four triangles.
    Square,
    /// b a b a b a, filled by a C vertex over six triangles.
    HexagonA,
    /// b c b c b c, filled by an A vertex over six triangles.
    HexagonC,
    /// b c a c, filled by the b-a diagonal and two triangles.
    KiteA,
    /// b a c a, filled by the b-c diagonal and two triangles.
    KiteC,
}

impl Pattern {
    pub const ALL: [Pattern; 5] = [Pattern::Square, Pattern::HexagonA, Pattern::HexagonC, Pattern::KiteA, Pattern::KiteC];

    pub fn label(self) -> &'static str {
        match self {
            Pattern::Square => "i",
            Pattern::HexagonA => "ii.a",
            Pattern::HexagonC => "ii.b",
            Pattern::KiteA => "iii.a",
            Pattern::KiteC => "iii.b",
        }
    }

    fn types(self) -> Vec<VertexType> {
        use VertexType::*;
        match self {
            Pattern::Square => vec![A, C, A, C],
            Pattern::HexagonA => vec![B, A, B, A, B, A],
            Pattern::HexagonC => vec![B, C, B, C, B, C],
            Pattern::KiteA => vec![B, C, A, C],
            Pattern::KiteC => vec![B, A, C, A],
        }
    }

    fn apex(self) -> Option<VertexType> {
        match self {
            Pattern::Square => Some(VertexType::B),
            Pattern::HexagonA => Some(VertexType::C),
            Pattern::HexagonC => Some(VertexType::A),
            Pattern::KiteA | Pattern::KiteC => None,
        }
    }

    /// Squares and hexagons must be chordless; kites are filled by a chord.
    fn chordless(self) -> bool {
        self.apex().is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternResult {
    pub pattern: Pattern,
    pub cycles: usize,
    pub unfilled: Vec<Vec<u32>>,
    pub min_fillers: usize,
    pub max_fillers: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CcccReport {
    /// Girth of the link at every A and C vertex.
    pub link_girths: Vec<(u32, Option<usize>)>,
    /// Part sizes of the link at every B vertex, when complete bipartite.
    pub b_links: Vec<(u32, Option<(usize, usize)>)>,
    pub patterns: Vec<PatternResult>,
    pub loop_audit: LoopCensus,
}

impl CcccReport {
    pub fn large_links(&self) -> bool {
        self.link_girths.iter().all(|&(_, g)| g.is_none_or(|g| g >= 6))
    }

    pub fn bipartite_links(&self) -> bool {
        self.b_links.iter().all(|&(_, parts)| matches!(parts, Some((m, _)) if m >= 2))
    }

    pub fn loops_filled(&self) -> bool {
        self.patterns.iter().all(|p| p.unfilled.is_empty())
    }

    pub fn passed(&self) -> bool {
        self.large_links() && self.bipartite_links() && self.loops_filled()
    }

    pub fn unique_fillers(&self) -> bool {
        self.patterns.iter().all(|p| p.cycles == 0 || p.max_fillers == 1)
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::default();
        let girths: BTreeSet<Option<usize>> = self.link_girths.iter().map(|&(_, g)| g).collect();
        r.push("large links", self.large_links(), format!("{} links, girths {girths:?}", self.link_girths.len()));
        let parts: BTreeSet<Option<(usize, usize)>> = self.b_links.iter().map(|&(_, p)| p).collect();
        r.push("bipartite links", self.bipartite_links(), format!("{} links, parts {parts:?}", self.b_links.len()));
        for p in &self.patterns {
            let detail = match p.unfilled.first() {
                None => format!("{} cycles, fillers {}..{}", p.cycles, p.min_fillers, p.max_fillers),
                Some(c) => format!("{} of {} unfilled, e.g. {c:?}", p.unfilled.len(), p.cycles),
            };
            r.push(format!("loops {}", p.pattern.label()), p.unfilled.is_empty(), detail);
        }
        r
    }
}

/// Simple cycles following `pattern` up to rotation and reflection, each
/// listed once starting from its least vertex.
fn cycles(g: &Graph, types: &[VertexType], pattern: &[VertexType], chordless: bool) -> Vec<Vec<u32>> {
    let len = pattern.len();
    let mut shapes: Vec<Vec<VertexType>> = Vec::new();
    for shift in 0..len {
        let rot: Vec<VertexType> = (0..len).map(|i| pattern[(i + shift) % len]).collect();
        let mut rev = rot.clone();
        rev[1..].reverse();
        shapes.push(rot);
        shapes.push(rev);
    }
    shapes.sort();
    shapes.dedup();
    let mut found = HashSet::new();
    for start in 0..g.vertex_count() as u32 {
        for shape in shapes.iter().filter(|s| s[0] == types[start as usize]) {
            let mut path = vec![start];
            extend(g, types, shape, &mut path, &mut found);
        }
    }
    let mut out: Vec<Vec<u32>> = found
        .into_iter()
        .filter(|c: &Vec<u32>| {
            !chordless
                || (0..len).all(|i| (i + 2..len).all(|j| (i == 0 && j == len - 1) || !g.has_edge(c[i] as usize, c[j] as usize)))
        })
        .collect();
    out.sort();
    out
}

fn extend(g: &Graph, types: &[VertexType], shape: &[VertexType], path: &mut Vec<u32>, found: &mut HashSet<Vec<u32>>) {
    let last = *path.last().expect("nonempty path") as usize;
    if path.len() == shape.len() {
        if g.has_edge(last, path[0] as usize) && path[1] < path[shape.len() - 1] {
            found.insert(path.clone());
        }
        return;
    }
    let want = shape[path.len()];
    for &w in g.neighbors(last) {
        if w > path[0] && types[w as usize] == want && !path.contains(&w) {
            path.push(w);
            extend(g, types, shape, path, found);
            path.pop();
        }
    }
}

fn fillers(m: &MarkedA3Complex, g: &Graph, pattern: Pattern, cycle: &[u32]) -> usize {
    let sc = &m.complex;
    let n = cycle.len();
    match pattern.apex() {
        Some(t) => g
            .neighbors(cycle[0] as usize)
            .iter()
            .filter(|&&f| m.vertex_type(f) == t)
            .filter(|&&f| cycle.iter().all(|&v| g.has_edge(f as usize, v as usize)))
            .filter(|&&f| (0..n).all(|i| sc.contains(&[f, cycle[i], cycle[(i + 1) % n]])))
            .count(),
        None => {
            let b = cycle.iter().position(|&v| m.vertex_type(v) == VertexType::B).expect("kites have a B vertex");
            let (p, q, r) = (cycle[b], cycle[(b + 1) % 4], cycle[(b + 2) % 4]);
            let s = cycle[(b + 3) % 4];
            usize::from(sc.contains(&[p, r]) && sc.contains(&[p, q, r]) && sc.contains(&[p, r, s]))
        }
    }
}

pub fn check_cccc(m: &MarkedA3Complex) -> CcccReport {
    let sc = &m.complex;
    let g = sc.one_skeleton();
    debug_assert!(g.edges().iter().all(|&(a, b)| m.types[a] != m.types[b]), "edge between vertices of one type");
    let mut link_girths = Vec::new();
    let mut b_links = Vec::new();
    for v in 0..sc.vertex_count() as u32 {
        let lk = link(sc, &[v]).expect("vertices are simplices").one_skeleton();
        if m.vertex_type(v) == VertexType::B {
            let parts = lk.complete_bipartite_parts();
            // both sides of size two or more is the same as containing a 4-cycle
            debug_assert_eq!(matches!(parts, Some((k, _)) if k >= 2), parts.is_some() && lk.girth() == Some(4));
            b_links.push((v, parts));
        } else {
            let girth = lk.girth();
            debug_assert_eq!(lk.girth_at_least(6), girth.is_none_or(|x| x >= 6));
            link_girths.push((v, girth));
        }
    }
    let patterns = Pattern::ALL
        .iter()
        .map(|&pattern| {
            let found = cycles(&g, &m.types, &pattern.types(), pattern.chordless());
            let counts: Vec<usize> = found.iter().map(|c| fillers(m, &g, pattern, c)).collect();
            let unfilled = found.iter().zip(&counts).filter(|&(_, &k)| k == 0).map(|(c, _)| c.clone()).collect();
            PatternResult {
                pattern,
                cycles: found.len(),
                unfilled,
                min_fillers: counts.iter().copied().min().unwrap_or(0),
                max_fillers: counts.iter().copied().max().unwrap_or(0),
            }
        })
        .collect();
    CcccReport { link_girths, b_links, patterns, loop_audit: loop_audit(edge_lengths(), 1e-9) }
}

/// Builds the Hessian complex from cosets and from the tabulated
/// polyhedron, checks they agree, and runs the criteria on both.
pub fn certify_hessian_cat1(max_cosets: usize) -> Result<Report, GroupError> {
    let mut r = Report::default();
    let cosets = milnor_complex(&parse_diagram("3[3]3[3]3").expect("valid"), max_cosets)?.complex;
    let (data, poset) = hessian();
    let table = poset.derived_complex();
    let f = cosets.f_vector();
    let census: Vec<usize> = ["a", "b", "c"].iter().map(|t| (0..cosets.vertex_count()).filter(|&v| cosets.tag(v) == Some(t)).count()).collect();
    r.push("vertex census", census == vec![27, 72, 27], format!("{census:?}"));
    r.push("chambers", f.get(2) == Some(&648), format!("f = {f:?}"));
    let iso = isomorphic(&cosets, &table);
    r.push("coset and tabulated complexes agree", iso == Ok(true), format!("{iso:?}"));

    let mut reports = Vec::new();
    for (name, sc) in [("coset model", &cosets), ("tabulated model", &table)] {
        match mark_a3(sc, ["a", "b", "c"]) {
            Ok(m) => {
                let rep = check_cccc(&m);
                r.extend_prefixed(&format!("{name}: "), rep.to_report());
                r.push(format!("{name}: unique fillers"), rep.unique_fillers(), "");
                reports.push(rep);
            }
            Err(v) => r.push(format!("{name}: marking"), false, format!("{:?}", v.first())),
        }
    }
    if let Some(rep) = reports.last() {
        let girth6 = rep.link_girths.iter().all(|&(_, g)| g == Some(6));
        r.push("all pi/3 links have girth 6", girth6 && rep.link_girths.len() == 54, format!("{} links", rep.link_girths.len()));
        let k33 = rep.b_links.iter().all(|&(_, p)| p == Some((3, 3)));
        r.push("all pi/2 links are K33", k33 && rep.b_links.len() == 72, format!("{} links", rep.b_links.len()));
        // squares come from face pairs sharing an edge (three vertex pairs
        // each); a-hexagons from edge triangles, which lie in a face
        let count = |p: Pattern| rep.patterns.iter().find(|x| x.pattern == p).map_or(0, |x| x.cycles);
        let pairs = faces_meeting_in_edges(&data);
        r.push("squares match face pairs", count(Pattern::Square) == 3 * pairs, format!("{} squares, {pairs} face pairs", count(Pattern::Square)));
        let tri = edge_triangles(&data).len();
        r.push("a-hexagons match edge triangles", count(Pattern::HexagonA) == tri, format!("{} hexagons, {tri} triangles", count(Pattern::HexagonA)));
        r.push("self-dual hexagon counts", count(Pattern::HexagonA) == count(Pattern::HexagonC), "");
    }
    Ok(r)
}
