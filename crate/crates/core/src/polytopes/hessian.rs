//! The Hessian polyhedron 3{3}3{3}3 as tabulated data, rebuilt and
//! rechecked from scratch.

use std::collections::{BTreeSet, HashSet};

use super::FacePoset;
use crate::diagram::{parse_diagram, GeneratorSubset};
use crate::groups::{coset_enumerate, presentation, Permutation, PermutationGroup, DEFAULT_MAX_COSETS};
use crate::report::Report;

const GENERATOR_CYCLES: [&str; 3] = [
    "(101 201 301)(102 202 302)(103 203 303)(110 210 310)(120 220 320)(130 230 330)",
    "(012 230 103)(013 102 320)(021 203 130)(023 310 201)(031 120 302)(032 301 210)",
    "(011 012 013)(021 022 023)(031 032 033)(101 102 103)(201 202 203)(301 302 303)",
];

const FACE_TABLE: [&str; 27] = [
    "012 021 103 203 303 130 230 330",
    "302 022 023 110 301 303 230 021",
    "202 022 310 201 023 130 021 203",
    "320 022 101 310 032 203 012 330",
    "102 022 101 023 210 021 103 330",
    "011 023 102 202 302 130 230 330",
    "220 022 210 032 301 012 230 103",
    "120 022 032 201 110 130 303 012",
    "031 022 310 110 210 303 103 203",
    "011 310 320 202 031 021 103 330",
    "320 023 102 310 033 201 013 330",
    "220 023 210 033 302 013 230 101",
    "120 023 033 202 110 130 301 013",
    "032 023 310 110 210 301 101 201",
    "220 021 210 031 303 011 230 102",
    "120 021 031 203 110 130 302 011",
    "033 021 310 110 210 302 102 202",
    "220 310 032 033 031 102 103 101",
    "220 203 032 120 303 011 103 320",
    "033 203 201 110 032 031 320 202",
    "220 201 301 033 120 320 012 101",
    "220 130 301 302 303 011 012 013",
    "033 303 301 210 032 031 120 302",
    "320 230 101 102 103 011 012 013",
    "220 202 302 031 120 320 013 102",
    "120 330 201 202 203 011 012 013",
    "013 022 101 201 301 130 230 330",
];

/// `a + b w` with `w` a primitive cube root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Eisenstein(i64, i64);

impl Eisenstein {
    const ZERO: Eisenstein = Eisenstein(0, 0);

    fn root(k: u32) -> Self {
        match k % 3 {
            0 => Eisenstein(1, 0),
            1 => Eisenstein(0, 1),
            _ => Eisenstein(-1, -1),
        }
    }

    fn neg(self) -> Self {
        Eisenstein(-self.0, -self.1)
    }

    fn sub(self, o: Self) -> Self {
        Eisenstein(self.0 - o.0, self.1 - o.1)
    }

    fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.0, self.1, o.0, o.1);
        Eisenstein(a * c - b * d, a * d + b * c - b * d)
    }
}

fn digit(s: &str, k: usize) -> u32 {
    s.as_bytes()[k] as u32 - b'0' as u32
}

fn coordinates(s: &str) -> [Eisenstein; 3] {
    let w = Eisenstein::root;
    let z = Eisenstein::ZERO;
    if digit(s, 0) == 0 {
        [z, w(digit(s, 1)), w(digit(s, 2)).neg()]
    } else if digit(s, 1) == 0 {
        [w(digit(s, 0)).neg(), z, w(digit(s, 2))]
    } else {
        [w(digit(s, 0)), w(digit(s, 1)).neg(), z]
    }
}

fn collinear(p: &[Eisenstein; 3], q: &[Eisenstein; 3], r: &[Eisenstein; 3]) -> bool {
    let u: Vec<_> = (0..3).map(|k| q[k].sub(p[k])).collect();
    let v: Vec<_> = (0..3).map(|k| r[k].sub(p[k])).collect();
    (0..3).all(|k| {
        let l = (k + 1) % 3;
        u[k].mul(v[l]) == u[l].mul(v[k])
    })
}

fn even_agreement(a: &str, b: &str) -> bool {
    a != b && a.bytes().zip(b.bytes()).filter(|(x, y)| x == y).count() % 2 == 0
}

#[derive(Debug, Clone)]
pub struct HessianData {
    /// The 27 vertex symbols in lexicographic order.
    pub symbols: Vec<String>,
    /// The three generating permutations on symbol indices.
    pub generators: [Permutation; 3],
    /// Face table rows, as symbol indices in table order.
    pub faces: Vec<Vec<usize>>,
    /// Edges as sorted index triples.
    pub edges: Vec<[usize; 3]>,
}

impl HessianData {
    pub fn index(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    pub fn shares_edge(&self, a: &str, b: &str) -> bool {
        let (Some(i), Some(j)) = (self.index(a), self.index(b)) else {
            return false;
        };
        self.edges.iter().any(|e| e.contains(&i) && e.contains(&j))
    }

    fn face_sets(&self) -> Vec<BTreeSet<usize>> {
        self.faces.iter().map(|f| f.iter().copied().collect()).collect()
    }

    fn group(&self) -> PermutationGroup {
        PermutationGroup::new(27, self.generators.to_vec())
    }
}

fn symbols() -> Vec<String> {
    let mut out = Vec::new();
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                if [x, y, z].iter().filter(|&&d| d == 0).count() == 1 {
                    out.push(format!("{x}{y}{z}"));
                }
            }
        }
    }
    out
}

fn parse_cycles(symbols: &[String], text: &str) -> Permutation {
    let idx = |s: &str| symbols.iter().position(|t| t == s).expect("table symbol") as u32;
    let cycles: Vec<Vec<u32>> = text
        .split(')')
        .map(|c| c.trim_start_matches('('))
        .filter(|c| !c.is_empty())
        .map(|c| c.split_whitespace().map(idx).collect())
        .collect();
    Permutation::from_cycles(symbols.len(), &cycles)
}

fn edges(symbols: &[String]) -> Vec<[usize; 3]> {
    let coords: Vec<_> = symbols.iter().map(|s| coordinates(s)).collect();
    let mut out = BTreeSet::new();
    for u in 0..symbols.len() {
        for v in u + 1..symbols.len() {
            if !even_agreement(&symbols[u], &symbols[v]) {
                continue;
            }
            let third: Vec<usize> = (0..symbols.len())
                .filter(|&w| w != u && w != v && collinear(&coords[u], &coords[v], &coords[w]))
                .collect();
            assert_eq!(third.len(), 1, "Hessian data corrupt: line through {} {}", symbols[u], symbols[v]);
            let mut e = [u, v, third[0]];
            e.sort_unstable();
            out.insert(e);
        }
    }
    out.into_iter().collect()
}

/// The tabulated data and its face poset, tagged `a`, `b`, `c` by rank.
pub fn hessian() -> (HessianData, FacePoset) {
    let symbols = symbols();
    let generators = GENERATOR_CYCLES.map(|c| parse_cycles(&symbols, c));
    let idx = |s: &str| symbols.iter().position(|t| t == s).expect("table symbol");
    let faces: Vec<Vec<usize>> = FACE_TABLE.iter().map(|row| row.split_whitespace().map(idx).collect()).collect();
    let edges = edges(&symbols);
    let data = HessianData { symbols, generators, faces, edges };

    let (nv, ne) = (27, data.edges.len());
    let mut proper: Vec<(i32, Option<String>)> = Vec::new();
    proper.extend((0..nv).map(|_| (0, Some("a".into()))));
    proper.extend((0..ne).map(|_| (1, Some("b".into()))));
    proper.extend((0..data.faces.len()).map(|_| (2, Some("c".into()))));
    let mut less = Vec::new();
    let face_sets = data.face_sets();
    for (k, e) in data.edges.iter().enumerate() {
        less.extend(e.iter().map(|&v| (v, nv + k)));
        for (f, set) in face_sets.iter().enumerate() {
            // an edge lies in a face when all its vertices do
            if e.iter().all(|v| set.contains(v)) {
                less.push((nv + k, nv + ne + f));
            }
        }
    }
    for (f, set) in face_sets.iter().enumerate() {
        less.extend(set.iter().map(|&v| (v, nv + ne + f)));
    }
    let poset = FacePoset::from_proper(3, proper, &less);
    (data, poset)
}

fn orbit_of_set(group: &[Permutation], set: &BTreeSet<usize>) -> BTreeSet<Vec<usize>> {
    group.iter().map(|g| {
        let mut img: Vec<usize> = set.iter().map(|&v| g.apply(v)).collect();
        img.sort_unstable();
        img
    }).collect()
}

/// The action of the A3(3) group on the cosets of the vertex stabilizer
/// matches the tabulated permutations for some base point.
pub fn vertex_action_matches_table(data: &HessianData) -> Option<String> {
    let d = parse_diagram("3[3]3[3]3").expect("valid diagram");
    let table = coset_enumerate(&presentation(&d), GeneratorSubset::from_indices([1, 2]), DEFAULT_MAX_COSETS).ok()?;
    if table.len() != 27 {
        return None;
    }
    let fixed = (0..27).filter(|&x| data.generators[1].apply(x) == x && data.generators[2].apply(x) == x);
    'base: for base in fixed {
        let mut phi = vec![usize::MAX; 27];
        phi[0] = base;
        let mut stack = vec![0];
        while let Some(c) = stack.pop() {
            for g in 0..3 {
                let (next, image) = (table.act(c, 2 * g as u32), data.generators[g].apply(phi[c]));
                if phi[next] == usize::MAX {
                    phi[next] = image;
                    stack.push(next);
                } else if phi[next] != image {
                    continue 'base;
                }
            }
        }
        let distinct: HashSet<usize> = phi.iter().copied().collect();
        if distinct.len() == 27 {
            return Some(data.symbols[base].clone());
        }
    }
    None
}

/// Triples of pairwise-meeting edges with no common vertex.
pub fn edge_triangles(data: &HessianData) -> Vec<[usize; 3]> {
    let meets = |i: usize, j: usize| data.edges[i].iter().any(|v| data.edges[j].contains(v));
    let mut out = Vec::new();
    for i in 0..data.edges.len() {
        for j in i + 1..data.edges.len() {
            if !meets(i, j) {
                continue;
            }
            for k in j + 1..data.edges.len() {
                let common = data.edges[i].iter().any(|v| data.edges[j].contains(v) && data.edges[k].contains(v));
                if meets(i, k) && meets(j, k) && !common {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// Pairs of faces whose common vertices are exactly an edge.
pub fn faces_meeting_in_edges(data: &HessianData) -> usize {
    let faces = data.face_sets();
    let edges: HashSet<BTreeSet<usize>> = data.edges.iter().map(|e| e.iter().copied().collect()).collect();
    let mut n = 0;
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            let meet: BTreeSet<usize> = faces[i].intersection(&faces[j]).copied().collect();
            n += usize::from(edges.contains(&meet));
        }
    }
    n
}

/// Recompute every derivable property of the tabulated polyhedron.
pub fn verify_hessian() -> Report {
    let (data, poset) = hessian();
    let mut r = Report::default();
    let faces = data.face_sets();
    let edge_sets: Vec<BTreeSet<usize>> = data.edges.iter().map(|e| e.iter().copied().collect()).collect();

    let profile = poset.rank_profile();
    r.push("counts", profile == vec![27, 72, 27], format!("{profile:?}"));
    r.push(
        "worked edge pair",
        data.shares_edge("013", "023") && !data.shares_edge("013", "022"),
        "013~023 share an edge, 013~022 do not",
    );
    r.push(
        "edges pairwise even-agreeing",
        data.edges.iter().all(|e| {
            (0..3).all(|i| (i + 1..3).all(|j| even_agreement(&data.symbols[e[i]], &data.symbols[e[j]])))
        }),
        format!("{} edges", data.edges.len()),
    );

    let edge_set: HashSet<&BTreeSet<usize>> = edge_sets.iter().collect();
    let face_set: HashSet<&BTreeSet<usize>> = faces.iter().collect();
    let preserves = |g: &Permutation| {
        edge_sets.iter().all(|e| edge_set.contains(&e.iter().map(|&v| g.apply(v)).collect::<BTreeSet<_>>()))
            && faces.iter().all(|f| face_set.contains(&f.iter().map(|&v| g.apply(v)).collect::<BTreeSet<_>>()))
    };
    let bad: Vec<&str> = ["a", "b", "c"].into_iter().zip(&data.generators).filter(|(_, g)| !preserves(g)).map(|(n, _)| n).collect();
    r.push("generators preserve edges and faces", bad.is_empty(), if bad.is_empty() { "a, b, c".to_string() } else { format!("fails: {bad:?}") });

    let group = data.group().elements();
    r.push("group order", group.len() == 648, format!("{}", group.len()));
    let orbit = orbit_of_set(&group, &faces[0]);
    let table: BTreeSet<Vec<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
    r.push("face table is the orbit of face 1", orbit == table && table.len() == 27, format!("orbit size {}", orbit.len()));
    let ab = PermutationGroup::new(27, data.generators[..2].to_vec());
    let start = data.index("012").expect("symbol");
    let orbit012: BTreeSet<usize> = ab.orbit(start).into_iter().collect();
    r.push("face 1 is the <a,b>-orbit of 012", orbit012 == faces[0], format!("{} vertices", orbit012.len()));

    let triangles = edge_triangles(&data);
    let unfilled = triangles.iter().find(|t| {
        let span: BTreeSet<usize> = t.iter().flat_map(|&e| data.edges[e]).collect();
        !faces.iter().any(|f| span.is_subset(f))
    });
    let triples = triangles.len();
    r.push(
        "no empty triangles",
        unfilled.is_none(),
        match unfilled {
            None => format!("{triples} edge triangles, all in a face"),
            Some(t) => format!("edges {t:?} span no face"),
        },
    );

    let mut bad_pair = None;
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            let meet: BTreeSet<usize> = faces[i].intersection(&faces[j]).copied().collect();
            if meet.len() > 1 && !edge_set.contains(&meet) {
                bad_pair.get_or_insert((i + 1, j + 1));
            }
        }
    }
    r.push(
        "faces meet in nothing, a vertex or an edge",
        bad_pair.is_none(),
        match bad_pair {
            None => "351 face pairs".to_string(),
            Some(p) => format!("faces {p:?}"),
        },
    );

    let edges_per_face: Vec<usize> = faces.iter().map(|f| edge_sets.iter().filter(|e| e.is_subset(f)).count()).collect();
    let faces_per_edge: Vec<usize> = edge_sets.iter().map(|e| faces.iter().filter(|f| e.is_subset(f)).count()).collect();
    r.push(
        "face and edge incidences",
        faces.iter().all(|f| f.len() == 8) && edges_per_face.iter().all(|&n| n == 8) && faces_per_edge.iter().all(|&n| n == 3),
        "8 vertices and 8 edges per face, 3 faces per edge",
    );
    let flags = poset.flag_count();
    r.push("flag count", flags == 648, format!("{flags}"));
    r.push("diamond condition", poset.diamond_violations().is_empty(), "");

    // the base flag's orbit covers every flag exactly once
    let base_edge = edge_sets.iter().find(|e| e.contains(&start) && e.is_subset(&faces[0])).expect("face 1 has edges through 012");
    let images: HashSet<(usize, Vec<usize>, Vec<usize>)> = group
        .iter()
        .map(|g| {
            let mut e: Vec<usize> = base_edge.iter().map(|&v| g.apply(v)).collect();
            let mut f: Vec<usize> = faces[0].iter().map(|&v| g.apply(v)).collect();
            e.sort_unstable();
            f.sort_unstable();
            (g.apply(start), e, f)
        })
        .collect();
    r.push("simply transitive on flags", images.len() == 648 && group.len() as u64 == flags, format!("{} flag images", images.len()));

    match vertex_action_matches_table(&data) {
        Some(base) => r.push("coset action matches table", true, format!("base vertex {base}")),
        None => r.push("coset action matches table", false, "no base point intertwines"),
    }
    match super::polytope_from_group(&parse_diagram("3[3]3[3]3").expect("valid"), DEFAULT_MAX_COSETS) {
        Ok(model) => {
            let iso = model.is_isomorphic(&poset);
            r.push("coset model isomorphic to table", iso == Ok(true), format!("{iso:?}"));
        }
        Err(e) => r.push("coset model isomorphic to table", false, e.to_string()),
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        let (data, poset) = hessian();
        assert!(data.shares_edge("013", "023"));
        assert!(!data.shares_edge("013", "022"));
        let a = &data.generators[0];
        assert_eq!(data.symbols[a.apply(data.index("101").unwrap())], "201");
        let face1: BTreeSet<&str> = data.faces[0].iter().map(|&v| data.symbols[v].as_str()).collect();
        assert_eq!(face1, ["012", "021", "103", "203", "303", "130", "230", "330"].into_iter().collect());
        assert_eq!(poset.len(), 27 + 72 + 27 + 2);
        assert_eq!(poset.dual().rank_profile(), vec![27, 72, 27]);
    }

    #[test]
    fn eisenstein_arithmetic() {
        let w = Eisenstein::root(1);
        assert_eq!(w.mul(w), Eisenstein::root(2));
        assert_eq!(w.mul(w).mul(w), Eisenstein(1, 0));
    }

    #[test]
    fn full_verification() {
        let r = verify_hessian();
        for c in &r.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
