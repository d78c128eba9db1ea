//! Tag-preserving isomorphism of simplicial complexes by joint colour
//! refinement, individualisation and backtracking.

use std::collections::{BTreeMap, HashSet};

use super::{ComplexError, Graph, SimplicialComplex};

pub const ISO_SIMPLEX_CAP: usize = 2000;

struct Side<'a> {
    sc: &'a SimplicialComplex,
    /// Simplices of dimension ≥ 1 through each vertex.
    star: Vec<Vec<&'a Vec<u32>>>,
    set: HashSet<&'a Vec<u32>>,
}

impl<'a> Side<'a> {
    fn new(sc: &'a SimplicialComplex) -> Self {
        let mut star = vec![Vec::new(); sc.vertex_count()];
        for s in sc.simplices() {
            if s.len() > 1 {
                for &v in s {
                    star[v as usize].push(s);
                }
            }
        }
        Side { sc, star, set: sc.simplices().collect() }
    }

    fn initial_signature(&self, v: usize) -> (Option<String>, Vec<usize>) {
        let mut counts = vec![0; (self.sc.dimension().max(0) + 1) as usize];
        for s in &self.star[v] {
            counts[s.len() - 1] += 1;
        }
        (self.sc.tag(v).map(String::from), counts)
    }

    fn signature(&self, v: usize, colors: &[u32]) -> (u32, Vec<Vec<u32>>) {
        let mut around: Vec<Vec<u32>> = self.star[v]
            .iter()
            .map(|s| {
                let mut c: Vec<u32> = s.iter().filter(|&&w| w as usize != v).map(|&w| colors[w as usize]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        around.sort_unstable();
        (colors[v], around)
    }
}

fn histogram(colors: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Refine both colourings to a common stable partition. `None` when the
/// colour histograms diverge.
fn refine(a: &Side, b: &Side, mut ca: Vec<u32>, mut cb: Vec<u32>) -> Option<(Vec<u32>, Vec<u32>)> {
    loop {
        let classes = histogram(&ca).len();
        let sa: Vec<_> = (0..ca.len()).map(|v| a.signature(v, &ca)).collect();
        let sb: Vec<_> = (0..cb.len()).map(|v| b.signature(v, &cb)).collect();
        let mut ids = BTreeMap::new();
        for s in sa.iter().chain(&sb) {
            ids.entry(s.clone()).or_insert(0u32);
        }
        for (k, v) in ids.values_mut().enumerate() {
            *v = k as u32;
        }
        ca = sa.iter().map(|s| ids[s]).collect();
        cb = sb.iter().map(|s| ids[s]).collect();
        if histogram(&ca) != histogram(&cb) {
            return None;
        }
        if histogram(&ca).len() == classes {
            return Some((ca, cb));
        }
    }
}

fn is_isomorphism(a: &Side, b: &Side, map: &[u32]) -> bool {
    a.sc.simplices().all(|s| {
        let mut t: Vec<u32> = s.iter().map(|&v| map[v as usize]).collect();
        t.sort_unstable();
        b.set.contains(&t)
    })
}

fn search(a: &Side, b: &Side, ca: Vec<u32>, cb: Vec<u32>) -> Option<Vec<u32>> {
    let hist = histogram(&ca);
    let target = hist.iter().filter(|&(_, &n)| n > 1).min_by_key(|&(_, &n)| n).map(|(&c, _)| c);
    let Some(color) = target else {
        let mut inverse_b = BTreeMap::new();
        for (w, &c) in cb.iter().enumerate() {
            inverse_b.insert(c, w as u32);
        }
        let map: Vec<u32> = ca.iter().map(|c| inverse_b[c]).collect();
        return is_isomorphism(a, b, &map).then_some(map);
    };
    let fresh = ca.iter().chain(&cb).max().copied().unwrap_or(0) + 1;
    let v = ca.iter().position(|&c| c == color).expect("class is nonempty");
    for w in (0..cb.len()).filter(|&w| cb[w] == color) {
        let mut ca2 = ca.clone();
        let mut cb2 = cb.clone();
        ca2[v] = fresh;
        cb2[w] = fresh;
        if let Some((ra, rb)) = refine(a, b, ca2, cb2) {
            if let Some(map) = search(a, b, ra, rb) {
                return Some(map);
            }
        }
    }
    None
}

/// A vertex map `a -> b` preserving tags and simplices, if one exists.
pub fn find_isomorphism(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<Option<Vec<u32>>, ComplexError> {
    for sc in [a, b] {
        if sc.simplex_count() > ISO_SIMPLEX_CAP {
            return Err(ComplexError::SizeCap(sc.simplex_count()));
        }
    }
    if a.vertex_count() != b.vertex_count() || a.f_vector() != b.f_vector() {
        return Ok(None);
    }
    let (sa, sb) = (Side::new(a), Side::new(b));
    let mut ids = BTreeMap::new();
    let ia: Vec<_> = (0..a.vertex_count()).map(|v| sa.initial_signature(v)).collect();
    let ib: Vec<_> = (0..b.vertex_count()).map(|v| sb.initial_signature(v)).collect();
    for s in ia.iter().chain(&ib) {
        let next = ids.len() as u32;
        ids.entry(s.clone()).or_insert(next);
    }
    let ca: Vec<u32> = ia.iter().map(|s| ids[s]).collect();
    let cb: Vec<u32> = ib.iter().map(|s| ids[s]).collect();
    if histogram(&ca) != histogram(&cb) {
        return Ok(None);
    }
    Ok(refine(&sa, &sb, ca, cb).and_then(|(ca, cb)| search(&sa, &sb, ca, cb)))
}

pub fn isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<bool, ComplexError> {
    find_isomorphism(a, b).map(|m| m.is_some())
}

pub fn isomorphic_graphs(a: &Graph, b: &Graph) -> Result<bool, ComplexError> {
    isomorphic(&a.to_complex(), &b.to_complex())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> SimplicialComplex {
        let facets: Vec<Vec<u32>> = (0..n).map(|i| vec![i as u32, ((i + 1) % n) as u32]).collect();
        SimplicialComplex::from_facets(vec![None; n], &facets)
    }

    #[test]
    fn cycles() {
        assert!(isomorphic(&cycle(6), &cycle(6)).unwrap());
        let two_triangles = SimplicialComplex::from_facets(
            vec![None; 6],
            &[vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]],
        );
        // same degree sequence, different graphs
        assert!(!isomorphic(&cycle(6), &two_triangles).unwrap());
    }

    #[test]
    fn tags_matter() {
        let tags = |t: [&str; 4]| t.iter().map(|s| Some(s.to_string())).collect::<Vec<_>>();
        let a = cycle(4).with_tags(tags(["x", "y", "x", "y"]));
        let b = cycle(4).with_tags(tags(["x", "x", "y", "y"]));
        assert!(!isomorphic(&a, &b).unwrap());
        assert!(isomorphic(&a.without_tags(), &b.without_tags()).unwrap());
    }

    #[test]
    fn higher_simplices_matter() {
        let filled = SimplicialComplex::from_facets(vec![None; 3], &[vec![0, 1, 2]]);
        assert!(!isomorphic(&cycle(3), &filled).unwrap());
    }

    #[test]
    fn cap() {
        let big = SimplicialComplex::points(ISO_SIMPLEX_CAP + 1, None);
        assert_eq!(isomorphic(&big, &big), Err(ComplexError::SizeCap(ISO_SIMPLEX_CAP + 1)));
    }

    fn relabel(sc: &SimplicialComplex, perm: &[u32]) -> SimplicialComplex {
        let facets: Vec<Vec<u32>> = sc.facets().iter().map(|f| f.iter().map(|&v| perm[v as usize]).collect()).collect();
        let mut tags = vec![None; sc.vertex_count()];
        for v in 0..sc.vertex_count() {
            tags[perm[v] as usize] = sc.tags()[v].clone();
        }
        SimplicialComplex::from_facets(tags, &facets)
    }

    proptest! {
        #[test]
        fn relabelling_is_found(
            n in 3usize..9,
            raw in proptest::collection::vec((0u32..9, 0u32..9, 0u32..9), 1..10),
            seed in proptest::collection::vec(any::<u32>(), 9),
        ) {
            let facets: Vec<Vec<u32>> = raw.iter().map(|&(x, y, z)| vec![x % n as u32, y % n as u32, z % n as u32]).collect();
            let tags = (0..n).map(|v| Some(["p", "q"][v % 2].to_string())).collect();
            let sc = SimplicialComplex::from_facets(tags, &facets);
            let mut perm: Vec<u32> = (0..n as u32).collect();
            perm.sort_by_key(|&v| seed[v as usize]);
            let other = relabel(&sc, &perm);
            let map = find_isomorphism(&sc, &other).unwrap().expect("relabelling is an isomorphism");
            for v in 0..n {
                prop_assert_eq!(sc.tag(v), other.tag(map[v] as usize));
            }
        }
    }
}
