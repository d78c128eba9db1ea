//! The extended Coxeter complex of a finite diagram: the order complex of
//! the proper faces of its polytope, or equivalently the chamber complex of
//! the group with vertices the maximal proper parabolic cosets.

use crate::classify::classify;
use crate::complexes::{barycentric_subdivision, is_flag, isomorphic, join, link_with_origin, SimplicialComplex};
use crate::diagram::{ExtendedCoxeterDiagram, Label};
use crate::groups::{group_order, GroupError, GroupOrder};
use crate::polytopes::{coset_classes, coset_polytope, generalized_cube, regular_table_capped, FacePoset, PolytopeError};
use crate::report::Report;

#[derive(Debug, Clone)]
pub struct MilnorComplex {
    /// Vertices are tagged with the name of the generator their stabilizer omits.
    pub complex: SimplicialComplex,
    /// `base_chamber[i]` is the vertex of the identity chamber whose type is generator `i`.
    pub base_chamber: Vec<u32>,
    /// The polytope the complex was derived from, for connected path diagrams.
    pub faces: Option<FacePoset>,
}

impl MilnorComplex {
    pub fn chamber_count(&self) -> usize {
        let n = self.base_chamber.len();
        self.complex.simplices().filter(|s| s.len() == n).count()
    }

    fn empty() -> Self {
        MilnorComplex { complex: SimplicialComplex::empty(), base_chamber: Vec::new(), faces: None }
    }
}

fn group_error(e: PolytopeError) -> GroupError {
    match e {
        PolytopeError::Group(g) => g,
        PolytopeError::NotPath => unreachable!("only path diagrams reach the polytope route"),
    }
}

/// Chambers are group elements; a vertex of type `i` is a coset of the
/// parabolic on all generators but `i`.
pub fn coset_complex(d: &ExtendedCoxeterDiagram, max_cosets: usize) -> Result<MilnorComplex, GroupError> {
    if d.is_empty() {
        return Ok(MilnorComplex::empty());
    }
    let table = regular_table_capped(d, max_cosets)?;
    let mut tags = Vec::new();
    let mut class_of = Vec::new();
    for i in 0..d.len() {
        let (class, count) = coset_classes(&table, d.all().without(i));
        let offset = tags.len() as u32;
        tags.extend((0..count).map(|_| Some(d.name(i).to_string())));
        class_of.push(class.into_iter().map(|c| c as u32 + offset).collect::<Vec<_>>());
    }
    let chambers: Vec<Vec<u32>> = (0..table.len()).map(|x| class_of.iter().map(|c| c[x]).collect()).collect();
    let base_chamber = chambers[0].clone();
    Ok(MilnorComplex { complex: SimplicialComplex::from_facets(tags, &chambers), base_chamber, faces: None })
}

fn path_complex(d: &ExtendedCoxeterDiagram, max_cosets: usize) -> Result<MilnorComplex, GroupError> {
    let cp = coset_polytope(d, max_cosets).map_err(group_error)?;
    let complex = cp.faces.derived_complex();
    let mut base_chamber = vec![0; d.len()];
    for (rank, &g) in cp.path.iter().enumerate() {
        base_chamber[g] = (cp.chamber_faces[rank][0] - 1) as u32;
    }
    Ok(MilnorComplex { complex, base_chamber, faces: Some(cp.faces) })
}

pub fn milnor_complex(d: &ExtendedCoxeterDiagram, max_cosets: usize) -> Result<MilnorComplex, GroupError> {
    if d.is_empty() {
        return Ok(MilnorComplex::empty());
    }
    if !classify(d).is_finite() {
        return Err(GroupError::Infinite);
    }
    let components = d.components();
    if components.len() == 1 {
        return if d.path_order().is_some() { path_complex(d, max_cosets) } else { coset_complex(d, max_cosets) };
    }
    let mut out = MilnorComplex::empty();
    let mut base = vec![0; d.len()];
    for (subset, comp) in &components {
        let part = milnor_complex(comp, max_cosets)?;
        let shift = out.complex.vertex_count() as u32;
        for (k, i) in subset.iter().enumerate() {
            base[i] = part.base_chamber[k] + shift;
        }
        out.complex = join(&out.complex, &part.complex);
    }
    out.base_chamber = base;
    Ok(out)
}

/// For every nonempty set `U` of types, the link of the base-chamber face
/// with types `U` must match the complex of the subdiagram on the remaining
/// generators, types included. The group is transitive on faces of each
/// type, so one face per type suffices.
pub fn check_link_theorem(d: &ExtendedCoxeterDiagram, max_cosets: usize) -> Result<Report, GroupError> {
    let m = milnor_complex(d, max_cosets)?;
    let mut r = Report::default();
    for u in d.all().subsets().filter(|u| !u.is_empty()) {
        let face: Vec<u32> = u.iter().map(|i| m.base_chamber[i]).collect();
        let name = format!("link of type {}", u.display_with(d));
        let (lk, _) = link_with_origin(&m.complex, &face).expect("base chamber faces are simplices");
        let rest = d.subdiagram(d.all().difference(u)).expect("subdiagrams of valid diagrams are valid");
        let expected = milnor_complex(&rest, max_cosets)?;
        match isomorphic(&lk, &expected.complex) {
            Ok(ok) => r.push(name, ok, format!("{} vertices, f = {:?}", lk.vertex_count(), lk.f_vector())),
            Err(e) => r.push(name, false, e.to_string()),
        }
    }
    Ok(r)
}

/// The diagram `p[4]2[3]2...[3]2` on `n` vertices.
pub fn bn_diagram(n: usize, p: u32) -> ExtendedCoxeterDiagram {
    let mut orders = vec![Label::Finite(2); n];
    orders[0] = Label::Finite(p);
    let mut edges = vec![Label::Finite(3); n.saturating_sub(1)];
    if let Some(first) = edges.first_mut() {
        *first = Label::Finite(4);
    }
    ExtendedCoxeterDiagram::path(&orders, &edges).expect("valid B_n(p,2) diagram")
}

/// The complex of `B_n(p,2)` against the subdivided join of `n` sets of `p`
/// points and against the order complex of the generalized cube.
pub fn check_bn_structure(n: usize, p: u32, max_cosets: usize) -> Result<Report, GroupError> {
    let m = milnor_complex(&bn_diagram(n, p), max_cosets)?.complex.without_tags();
    let points = SimplicialComplex::points(p as usize, None);
    let joined = (1..n).fold(points.clone(), |acc, _| join(&acc, &points));
    let subdivided = barycentric_subdivision(&joined);
    let cube = generalized_cube(n, p as usize).derived_complex().without_tags();
    let mut r = Report::default();
    let iso = isomorphic(&m, &subdivided);
    r.push("subdivided join of point sets", iso == Ok(true), format!("{iso:?}, f = {:?}", m.f_vector()));
    let iso = isomorphic(&m, &cube);
    r.push("generalized cube", iso == Ok(true), format!("{iso:?}"));
    Ok(r)
}

/// The order of B3(2,3) is twice that of A3(3), and so is its chamber count.
pub fn check_b3_splitting(max_cosets: usize) -> Result<Report, GroupError> {
    let b3 = crate::diagram::parse_diagram("2[4]3[3]3").expect("valid");
    let a3 = crate::diagram::parse_diagram("3[3]3[3]3").expect("valid");
    let (ob, oa) = (group_order(&b3, max_cosets)?, group_order(&a3, max_cosets)?);
    let mut r = Report::default();
    r.push("orders", ob == GroupOrder::Finite(1296) && oa == GroupOrder::Finite(648), format!("{ob} = 2 x {oa}"));
    let (cb, ca) = (milnor_complex(&b3, max_cosets)?.chamber_count(), milnor_complex(&a3, max_cosets)?.chamber_count());
    r.push("chamber ratio", cb == 2 * ca, format!("{cb} / {ca}"));
    Ok(r)
}

/// Girth of the 1-skeleton of the complex; `None` for forests.
pub fn complex_girth(d: &ExtendedCoxeterDiagram, max_cosets: usize) -> Result<Option<usize>, GroupError> {
    Ok(milnor_complex(d, max_cosets)?.complex.one_skeleton().girth())
}

/// Flag and pure of dimension rank - 1, with chambers in bijection with
/// group elements.
pub fn check_structure(d: &ExtendedCoxeterDiagram, max_cosets: usize) -> Result<Report, GroupError> {
    let m = milnor_complex(d, max_cosets)?;
    let mut r = Report::default();
    let flag = is_flag(&m.complex);
    r.push("flag", flag.flag, format!("{:?}", flag.witness));
    let dim = m.complex.dimension();
    r.push("pure", m.complex.is_pure() && dim == d.len() as isize - 1, format!("dimension {dim}"));
    let order = group_order(d, max_cosets)?;
    let chambers = m.chamber_count();
    r.push("chambers", order == GroupOrder::Finite(chambers as u64), format!("{chambers} chambers, order {order}"));
    Ok(r)
}
