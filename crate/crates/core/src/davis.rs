//! The fundamental domain K built from the spherical subsets, its cubical
//! cells, and local checks of the link condition.

use thiserror::Error;

use crate::classify::{check_theorem_hypotheses, enumerate_subsets, ClassifyError, Offense, SubsetKind, SubsetPoset};
use crate::complexes::{barycentric_subdivision, derived_complex, is_flag, isomorphic, join, Poset, SimplicialComplex};
use crate::diagram::{ExtendedCoxeterDiagram, GeneratorSubset};
use crate::groups::GroupError;
use crate::milnor::milnor_complex;
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DavisError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0} does not generate a finite Shephard group")]
    NotSpherical(String),
}

/// Cells are pairs `lower ⊆ upper` of spherical subsets; the cell is a cube
/// of dimension `|upper| - |lower|` whose vertices are the `v_T` with
/// `lower ⊆ T ⊆ upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicalComplex {
    /// Spherical subsets in increasing size; vertex `i` is `v_{spherical[i]}`.
    pub spherical: Vec<GeneratorSubset>,
    pub cells: Vec<(GeneratorSubset, GeneratorSubset)>,
}

impl CubicalComplex {
    pub fn dimension_of(cell: (GeneratorSubset, GeneratorSubset)) -> usize {
        cell.1.len() - cell.0.len()
    }

    /// `a` is a face of `b`.
    pub fn is_face(a: (GeneratorSubset, GeneratorSubset), b: (GeneratorSubset, GeneratorSubset)) -> bool {
        b.0.is_subset_of(a.0) && a.0.is_subset_of(a.1) && a.1.is_subset_of(b.1)
    }

    pub fn vertex_index(&self, t: GeneratorSubset) -> Option<usize> {
        self.spherical.iter().position(|&s| s == t)
    }

    pub fn cells_of_dim(&self, k: usize) -> impl Iterator<Item = &(GeneratorSubset, GeneratorSubset)> {
        self.cells.iter().filter(move |&&c| Self::dimension_of(c) == k)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.cells.iter().map(|&c| Self::dimension_of(c)).max().unwrap_or(0);
        (0..=top).map(|k| self.cells_of_dim(k).count()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().map(|&c| if Self::dimension_of(c) % 2 == 0 { 1 } else { -1 }).sum()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.spherical.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in self.cells_of_dim(1) {
                let (x, y) = (self.vertex_index(a).expect("vertex"), self.vertex_index(b).expect("vertex"));
                for (from, to) in [(x, y), (y, x)] {
                    if from == v && !seen[to] {
                        seen[to] = true;
                        stack.push(to);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Every cell is a face of a cell containing `v_∅`.
    pub fn is_cone_on_empty_vertex(&self) -> bool {
        self.cells.iter().all(|&c| self.cells.contains(&(GeneratorSubset::EMPTY, c.1)))
    }

    /// The cube `(∅, T)` has `3^|T|` faces and its vertices are the subsets of `T`.
    pub fn cube_at(&self, t: GeneratorSubset) -> (usize, usize) {
        let cube = (GeneratorSubset::EMPTY, t);
        let faces = self.cells.iter().filter(|&&c| Self::is_face(c, cube)).count();
        let vertices = self.cells_of_dim(0).filter(|&&c| Self::is_face(c, cube)).count();
        (faces, vertices)
    }

    /// The derived simplicial structure: chains of spherical subsets.
    pub fn simplicial(&self, d: &ExtendedCoxeterDiagram) -> SimplicialComplex {
        derived_complex(&subset_poset(d, &self.spherical))
    }
}

fn subset_poset(d: &ExtendedCoxeterDiagram, members: &[GeneratorSubset]) -> Poset {
    let tags = members.iter().map(|t| Some(t.display_with(d))).collect();
    let mut less = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            if i != j && a.is_subset_of(b) {
                less.push((i, j));
            }
        }
    }
    Poset::from_relations(tags, &less).expect("inclusion is acyclic")
}

fn spherical(d: &ExtendedCoxeterDiagram) -> Result<SubsetPoset, DavisError> {
    Ok(enumerate_subsets(d, SubsetKind::SFS)?)
}

pub fn build_k(d: &ExtendedCoxeterDiagram) -> Result<CubicalComplex, DavisError> {
    let mut members = spherical(d)?.members().to_vec();
    members.sort_by_key(|t| (t.len(), t.bits()));
    let mut cells = Vec::new();
    for &upper in &members {
        for lower in upper.subsets() {
            cells.push((lower, upper));
        }
    }
    cells.sort_by_key(|&(a, b)| (b.len() - a.len(), a.bits(), b.bits()));
    Ok(CubicalComplex { spherical: members, cells })
}

#[derive(Debug, Clone)]
pub struct UpperLink {
    /// Chains of spherical subsets strictly containing `T`.
    pub chains: SimplicialComplex,
    /// The link of `T` in the complex on the generators whose simplices are
    /// the nonempty spherical subsets.
    pub simplicial: SimplicialComplex,
    /// `chains` is the barycentric subdivision of `simplicial`.
    pub agree: bool,
}

fn check_member(d: &ExtendedCoxeterDiagram, sfs: &SubsetPoset, t: GeneratorSubset) -> Result<(), DavisError> {
    if sfs.contains(t) {
        Ok(())
    } else {
        Err(DavisError::NotSpherical(t.display_with(d)))
    }
}

fn chains_above(d: &ExtendedCoxeterDiagram, sfs: &SubsetPoset, t: GeneratorSubset) -> SimplicialComplex {
    let above: Vec<GeneratorSubset> = sfs.members().iter().copied().filter(|&u| u != t && t.is_subset_of(u)).collect();
    derived_complex(&subset_poset(d, &above))
}

fn simplicial_link(d: &ExtendedCoxeterDiagram, sfs: &SubsetPoset, t: GeneratorSubset) -> SimplicialComplex {
    let vertices: Vec<usize> = d.all().difference(t).iter().filter(|&s| sfs.contains(t.with(s))).collect();
    let local = |s: usize| vertices.iter().position(|&v| v == s).expect("link vertex") as u32;
    let facets: Vec<Vec<u32>> = sfs
        .members()
        .iter()
        .filter(|&&u| t.is_subset_of(u) && u != t)
        .map(|&u| u.difference(t).iter().map(local).collect())
        .collect();
    let tags = vertices.iter().map(|&s| Some(d.name(s).to_string())).collect();
    SimplicialComplex::from_facets(tags, &facets)
}

pub fn upper_link(d: &ExtendedCoxeterDiagram, t: GeneratorSubset) -> Result<UpperLink, DavisError> {
    let sfs = spherical(d)?;
    check_member(d, &sfs, t)?;
    let chains = chains_above(d, &sfs, t);
    let simplicial = simplicial_link(d, &sfs, t);
    let agree = isomorphic(&chains.without_tags(), &barycentric_subdivision(&simplicial)).unwrap_or(false);
    Ok(UpperLink { chains, simplicial, agree })
}

#[derive(Debug, Clone)]
pub struct LocalDevelopment {
    pub center: GeneratorSubset,
    /// The complex of the finite group generated by the center.
    pub lower: SimplicialComplex,
    pub upper: SimplicialComplex,
    /// Link of `v_T` in the local development.
    pub link: SimplicialComplex,
}

pub fn local_development(d: &ExtendedCoxeterDiagram, t: GeneratorSubset, max_cosets: usize) -> Result<LocalDevelopment, DavisError> {
    let sfs = spherical(d)?;
    check_member(d, &sfs, t)?;
    let sub = d.subdiagram(t).expect("subset of the diagram");
    let lower = milnor_complex(&sub, max_cosets)?.complex;
    let upper = chains_above(d, &sfs, t);
    let link = join(&lower, &upper);
    Ok(LocalDevelopment { center: t, lower, upper, link })
}

/// Hypotheses of the cube-complex theorem plus the link condition at every
/// vertex `v_T` of K, checked on both sides of the local join.
pub fn certify_cubical(d: &ExtendedCoxeterDiagram, max_cosets: usize) -> Result<Report, DavisError> {
    let mut r = Report::default();
    let hyp = check_theorem_hypotheses(d)?;
    let first = |want: fn(&Offense) -> Option<GeneratorSubset>| hyp.offending_subsets.iter().find_map(want);
    let not_sfs = first(|o| if let Offense::NotShephardSpherical(t) = o { Some(*t) } else { None });
    r.push(
        "S^f = S^fs",
        hyp.sf_equals_sfs,
        not_sfs.map_or(String::new(), |t| format!("{} is Coxeter-spherical only", t.display_with(d))),
    );
    let not_fc = first(|o| if let Offense::NotFlagComplete(t) = o { Some(*t) } else { None });
    r.push("FC", hyp.fc, not_fc.map_or(String::new(), |t| format!("{} spans no infinite edge but is not spherical", t.display_with(d))));

    let sfs = spherical(d)?;
    let (mut lower_bad, mut upper_bad, mut mismatch) = (None, None, None);
    for &t in sfs.members() {
        let sub = d.subdiagram(t).expect("subset of the diagram");
        if !is_flag(&milnor_complex(&sub, max_cosets)?.complex).flag {
            lower_bad.get_or_insert(t);
        }
        let chains = chains_above(d, &sfs, t);
        let lk = simplicial_link(d, &sfs, t);
        if !is_flag(&lk).flag {
            upper_bad.get_or_insert(t);
        }
        if isomorphic(&chains.without_tags(), &barycentric_subdivision(&lk)) != Ok(true) {
            mismatch.get_or_insert(t);
        }
    }
    let verdict = |bad: Option<GeneratorSubset>| bad.map_or(format!("{} subsets", sfs.len()), |t| format!("fails at {}", t.display_with(d)));
    r.push("lower links flag", lower_bad.is_none(), verdict(lower_bad));
    r.push("upper links flag", upper_bad.is_none(), verdict(upper_bad));
    r.push("upper link constructions agree", mismatch.is_none(), verdict(mismatch));

    let k = build_k(d)?;
    r.push("K connected", k.is_connected(), format!("f = {:?}", k.f_vector()));
    r.push("K Euler characteristic 1", k.euler_characteristic() == 1, format!("{}", k.euler_characteristic()));
    r.push("K is a cone on v_empty", k.is_cone_on_empty_vertex(), "");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::groups::DEFAULT_MAX_COSETS;

    fn d(s: &str) -> ExtendedCoxeterDiagram {
        parse_diagram(s).unwrap()
    }

    fn pentagon(p: u32) -> ExtendedCoxeterDiagram {
        let mut text: String = "abcde".chars().map(|c| format!("vertex {c} {p}\n")).collect();
        // the commuting graph is the 5-cycle a b c d e
        for (x, y) in [("a", "c"), ("a", "d"), ("b", "d"), ("b", "e"), ("c", "e")] {
            text.push_str(&format!("edge {x} {y} inf\n"));
        }
        parse_diagram(&text).unwrap()
    }

    #[test]
    fn small_k() {
        assert_eq!(build_k(&d("3")).unwrap().f_vector(), vec![2, 1]);
        let k = build_k(&d("3[inf]3")).unwrap();
        assert_eq!(k.f_vector(), vec![3, 2]);
        let k = build_k(&d("2[3]2")).unwrap();
        assert_eq!(k.f_vector(), vec![4, 4, 1]);
        assert_eq!(k.cube_at(GeneratorSubset::from_indices([0, 1])), (9, 4));
        assert_eq!(k.simplicial(&d("2[3]2")).euler_characteristic(), 1);
    }

    #[test]
    fn upper_links() {
        let a2 = d("2[3]2");
        let ul = upper_link(&a2, GeneratorSubset::EMPTY).unwrap();
        assert_eq!(ul.chains.f_vector(), vec![3, 2]);
        assert!(ul.agree);
        assert_eq!(upper_link(&a2, a2.all()).unwrap().chains.vertex_count(), 0);
        let p = pentagon(3);
        let ul = upper_link(&p, GeneratorSubset::EMPTY).unwrap();
        assert_eq!(ul.simplicial.f_vector(), vec![5, 5]);
        assert_eq!(ul.simplicial.one_skeleton().girth(), Some(5));
        assert_eq!(ul.chains.f_vector(), vec![10, 10]);
        assert!(ul.agree);
        assert!(matches!(upper_link(&d("3[inf]3"), GeneratorSubset::from_indices([0, 1])), Err(DavisError::NotSpherical(_))));
    }

    #[test]
    fn developments() {
        let dev = local_development(&d("3[inf]3"), GeneratorSubset::singleton(0), DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(dev.lower.f_vector(), vec![3]);
        assert_eq!(dev.upper.vertex_count(), 0);
        let a3 = d("3[3]3[3]3");
        let dev = local_development(&a3, a3.all(), DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(dev.lower.vertex_count(), 126);
        let dev = local_development(&pentagon(2), GeneratorSubset::EMPTY, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(dev.link.simplex_count(), (dev.lower.simplex_count() + 1) * (dev.upper.simplex_count() + 1) - 1);
    }

    #[test]
    fn certificates() {
        assert!(certify_cubical(&pentagon(3), DEFAULT_MAX_COSETS).unwrap().passed());
        assert!(certify_cubical(&d("3[inf]3[4]2"), DEFAULT_MAX_COSETS).unwrap().passed());
        let triangle = d("vertex a 2\nvertex b 2\nvertex c 2\nedge a b 3\nedge b c 3\nedge a c 3\n");
        let r = certify_cubical(&triangle, DEFAULT_MAX_COSETS).unwrap();
        let fc = r.get("FC").unwrap();
        assert!(!fc.passed && fc.detail.contains("{a,b,c}"), "{fc:?}");
    }
}
