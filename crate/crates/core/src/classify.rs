//! Finiteness classification by table matching, spherical subset posets, and
//! the hypothesis checks for the CAT(0) theorems.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{components_of, ExtendedCoxeterDiagram, GeneratorSubset, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ShephardType {
    /// `p[4]2[3]2...2` on `n` vertices; `n = 1` is the cyclic group of order `p`.
    Bn { n: usize, p: u32 },
    /// `2[4]3[3]3`
    B3_23,
    /// `3[3]3[3]3`
    A3_3,
    /// `3[3]3[3]3[3]3`
    A4_3,
    /// `p[m]q` with `1/p + 1/q + 2/m > 1`, not both orders 2.
    I2 { p: u32, m: u32, q: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FiniteType {
    Coxeter(CoxeterType),
    Shephard(ShephardType),
    Infinite,
}

impl FiniteType {
    pub fn is_finite(self) -> bool {
        self != FiniteType::Infinite
    }

    /// Group order, computed from the type (independent of coset enumeration).
    pub fn order(self) -> Option<u64> {
        fn fact(n: usize) -> u64 {
            (1..=n as u64).product()
        }
        let v = match self {
            FiniteType::Infinite => return None,
            FiniteType::Coxeter(c) => match c {
                CoxeterType::A(n) => fact(n + 1),
                CoxeterType::B(n) => (1u64 << n) * fact(n),
                CoxeterType::D(n) => (1u64 << (n - 1)) * fact(n),
                CoxeterType::E6 => 51_840,
                CoxeterType::E7 => 2_903_040,
                CoxeterType::E8 => 696_729_600,
                CoxeterType::F4 => 1152,
                CoxeterType::H3 => 120,
                CoxeterType::H4 => 14_400,
                CoxeterType::I2(m) => 2 * m as u64,
            },
            FiniteType::Shephard(s) => match s {
                ShephardType::Bn { n, p } => (p as u64).pow(n as u32) * fact(n),
                ShephardType::B3_23 => 1296,
                ShephardType::A3_3 => 648,
                ShephardType::A4_3 => 155_520,
                // Coxeter's formula |p[m]q| = 8/m · (1/p + 1/q + 2/m - 1)^-2, in integers.
                ShephardType::I2 { p, m, q } => {
                    let (p, m, q) = (p as u64, m as u64, q as u64);
                    let num = q * m + p * m + 2 * p * q - p * q * m;
                    8 * (p * q * m).pow(2) / (m * num * num)
                }
            },
        };
        Some(v)
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::Infinite => f.write_str("Infinite"),
            FiniteType::Coxeter(c) => match c {
                CoxeterType::A(n) => write!(f, "A{n}"),
                CoxeterType::B(n) => write!(f, "B{n}"),
                CoxeterType::D(n) => write!(f, "D{n}"),
                CoxeterType::I2(m) => write!(f, "I2({m})"),
                other => write!(f, "{other:?}"),
            },
            FiniteType::Shephard(s) => match s {
                ShephardType::Bn { n, p } => write!(f, "B{n}({p},2)"),
                ShephardType::B3_23 => f.write_str("B3(2,3)"),
                ShephardType::A3_3 => f.write_str("A3(3)"),
                ShephardType::A4_3 => f.write_str("A4(3)"),
                ShephardType::I2 { p, m, q } => write!(f, "I2({p},{m},{q})"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("diagram has {0} vertices; subset sweeps are capped at 24")]
    SizeCap(usize),
}

/// Whether a rank-2 label triple gives a finite group.
pub fn rank_two_finite(p: u32, m: u32, q: u32) -> bool {
    let (p, m, q) = (p as u64, m as u64, q as u64);
    q * m + p * m + 2 * p * q > p * q * m
}

/// Classify a connected diagram against the finite tables.
pub fn classify_component(d: &ExtendedCoxeterDiagram) -> FiniteType {
    let n = d.len();
    if n == 0 {
        // The trivial group; callers never ask, but a rank-0 A is harmless.
        return FiniteType::Coxeter(CoxeterType::A(0));
    }
    let Some(orders) = (0..n).map(|i| d.order(i).finite()).collect::<Option<Vec<u32>>>() else {
        return FiniteType::Infinite;
    };
    let Some(labels) = d.edges().map(|(_, _, m)| m.finite()).collect::<Option<Vec<u32>>>() else {
        return FiniteType::Infinite;
    };
    if n == 1 {
        return match orders[0] {
            2 => FiniteType::Coxeter(CoxeterType::A(1)),
            p => FiniteType::Shephard(ShephardType::Bn { n: 1, p }),
        };
    }
    // A finite connected diagram is a tree.
    if labels.len() != n - 1 {
        return FiniteType::Infinite;
    }
    if orders.iter().all(|&p| p == 2) {
        classify_coxeter_tree(d)
    } else {
        classify_shephard(d)
    }
}

/// Edge labels along the path and vertex orders in path order.
fn path_sequences(d: &ExtendedCoxeterDiagram, order: &[usize]) -> (Vec<u32>, Vec<u32>) {
    let ps = order.iter().map(|&i| d.order(i).finite().unwrap_or(0)).collect();
    let ms = order.windows(2).map(|w| d.m(w[0], w[1]).finite().unwrap_or(0)).collect();
    (ps, ms)
}

fn matches_either_way(ps: &[u32], ms: &[u32], want_p: &[u32], want_m: &[u32]) -> bool {
    if ps.len() != want_p.len() {
        return false;
    }
    let forward = ps == want_p && ms == want_m;
    let backward = ps.iter().rev().eq(want_p) && ms.iter().rev().eq(want_m);
    forward || backward
}

fn classify_coxeter_tree(d: &ExtendedCoxeterDiagram) -> FiniteType {
    let n = d.len();
    if let Some(order) = d.path_order() {
        let (ps, ms) = path_sequences(d, &order);
        let threes = |k: usize| vec![3u32; k];
        if n == 2 {
            return FiniteType::Coxeter(match ms[0] {
                3 => CoxeterType::A(2),
                4 => CoxeterType::B(2),
                m => CoxeterType::I2(m),
            });
        }
        if ms.iter().all(|&m| m == 3) {
            return FiniteType::Coxeter(CoxeterType::A(n));
        }
        let mut b = threes(n - 1);
        b[0] = 4;
        if matches_either_way(&ps, &ms, &ps, &b) {
            return FiniteType::Coxeter(CoxeterType::B(n));
        }
        if n == 4 && ms == [3, 4, 3] {
            return FiniteType::Coxeter(CoxeterType::F4);
        }
        let mut h = threes(n - 1);
        h[0] = 5;
        if (n == 3 || n == 4) && matches_either_way(&ps, &ms, &ps, &h) {
            return FiniteType::Coxeter(if n == 3 { CoxeterType::H3 } else { CoxeterType::H4 });
        }
        return FiniteType::Infinite;
    }
    // Branched trees: exactly one vertex of degree 3, simply laced.
    if d.edges().any(|(_, _, m)| m != Label::Finite(3)) {
        return FiniteType::Infinite;
    }
    let degrees: Vec<usize> = (0..n).map(|i| d.neighbors(i).len()).collect();
    let centers: Vec<usize> = (0..n).filter(|&i| degrees[i] >= 3).collect();
    if centers.len() != 1 || degrees[centers[0]] != 3 {
        return FiniteType::Infinite;
    }
    let center = centers[0];
    let mut arms: Vec<usize> = d
        .neighbors(center)
        .iter()
        .map(|start| {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            while let Some(next) = d.neighbors(cur).iter().find(|&j| j != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    FiniteType::Coxeter(match arms.as_slice() {
        [1, 1, k] => CoxeterType::D(k + 3),
        [1, 2, 2] => CoxeterType::E6,
        [1, 2, 3] => CoxeterType::E7,
        [1, 2, 4] => CoxeterType::E8,
        _ => return FiniteType::Infinite,
    })
}

fn classify_shephard(d: &ExtendedCoxeterDiagram) -> FiniteType {
    let n = d.len();
    let Some(order) = d.path_order() else {
        return FiniteType::Infinite;
    };
    let (ps, ms) = path_sequences(d, &order);
    if n == 2 {
        // larger order first, so the name does not depend on vertex order
        let (p, m, q) = (ps[0].max(ps[1]), ms[0], ps[0].min(ps[1]));
        return if rank_two_finite(p, m, q) {
            FiniteType::Shephard(ShephardType::I2 { p, m, q })
        } else {
            FiniteType::Infinite
        };
    }
    if matches_either_way(&ps, &ms, &[3, 3, 3], &[3, 3]) {
        return FiniteType::Shephard(ShephardType::A3_3);
    }
    if matches_either_way(&ps, &ms, &[3, 3, 3, 3], &[3, 3, 3]) {
        return FiniteType::Shephard(ShephardType::A4_3);
    }
    if matches_either_way(&ps, &ms, &[2, 3, 3], &[4, 3]) {
        return FiniteType::Shephard(ShephardType::B3_23);
    }
    for p in [ps[0], ps[n - 1]] {
        if p < 3 {
            continue;
        }
        let mut want_p = vec![2u32; n];
        want_p[0] = p;
        let mut want_m = vec![3u32; n - 1];
        want_m[0] = 4;
        if matches_either_way(&ps, &ms, &want_p, &want_m) {
            return FiniteType::Shephard(ShephardType::Bn { n, p });
        }
    }
    FiniteType::Infinite
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub components: Vec<(GeneratorSubset, FiniteType)>,
}

impl Classification {
    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|(_, t)| t.is_finite())
    }

    pub fn types(&self) -> Vec<FiniteType> {
        self.components.iter().map(|&(_, t)| t).collect()
    }
}

pub fn classify(d: &ExtendedCoxeterDiagram) -> Classification {
    let components =
        d.components().into_iter().map(|(set, sub)| (set, classify_component(&sub))).collect();
    Classification { components }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SubsetKind {
    /// Subsets generating a finite Coxeter group.
    SF,
    /// Subsets generating a finite Shephard group.
    SFS,
}

/// Downward-closed family of spherical subsets, sorted by bit pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetPoset {
    pub kind: SubsetKind,
    pub vertex_count: usize,
    members: Vec<GeneratorSubset>,
}

impl SubsetPoset {
    pub fn members(&self) -> &[GeneratorSubset] {
        &self.members
    }

    pub fn contains(&self, t: GeneratorSubset) -> bool {
        self.members.binary_search(&t).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn maximal(&self) -> Vec<GeneratorSubset> {
        self.members
            .iter()
            .copied()
            .filter(|&t| !self.members.iter().any(|&u| u != t && t.is_subset_of(u)))
            .collect()
    }
}

/// Sweep all subsets in increasing order. A subset is tested only when every
/// subset missing one element already passed (the families are downward closed).
fn sweep<F>(d: &ExtendedCoxeterDiagram, admissible: impl Fn(GeneratorSubset) -> bool, mut finite: F) -> Vec<GeneratorSubset>
where
    F: FnMut(GeneratorSubset) -> bool,
{
    let n = d.len();
    let adjacency: Vec<GeneratorSubset> = (0..n).map(|i| d.neighbors(i)).collect();
    let mut ok = vec![false; 1usize << n];
    let mut memo: HashMap<GeneratorSubset, bool> = HashMap::new();
    let mut out = Vec::new();
    for bits in 0..(1u32 << n) {
        let t = GeneratorSubset::from_bits(bits);
        let downward = t.iter().all(|i| ok[t.without(i).bits() as usize]);
        if !downward || !admissible(t) {
            continue;
        }
        let fine = components_of(&adjacency, t)
            .into_iter()
            .all(|c| *memo.entry(c).or_insert_with(|| finite(c)));
        if fine {
            ok[bits as usize] = true;
            out.push(t);
        }
    }
    out
}

pub fn enumerate_subsets(d: &ExtendedCoxeterDiagram, kind: SubsetKind) -> Result<SubsetPoset, ClassifyError> {
    if d.len() > crate::diagram::MAX_VERTICES {
        return Err(ClassifyError::SizeCap(d.len()));
    }
    let coxeter = d.underlying_coxeter();
    let sf = sweep(d, |_| true, |c| classify_component(&coxeter.subdiagram(c).expect("in range")).is_finite());
    let members = match kind {
        SubsetKind::SF => sf,
        SubsetKind::SFS => {
            let sf_poset = SubsetPoset { kind, vertex_count: d.len(), members: sf };
            sweep(d, |t| sf_poset.contains(t), |c| classify_component(&d.subdiagram(c).expect("in range")).is_finite())
        }
    };
    Ok(SubsetPoset { kind, vertex_count: d.len(), members })
}

fn infinity_neighbors(d: &ExtendedCoxeterDiagram) -> Vec<GeneratorSubset> {
    let mut out = vec![GeneratorSubset::EMPTY; d.len()];
    for (i, j, m) in d.edges() {
        if m == Label::Infinity {
            out[i] = out[i].with(j);
            out[j] = out[j].with(i);
        }
    }
    out
}

/// Subsets spanning no ∞-labeled edge.
pub fn infinity_free_subsets(d: &ExtendedCoxeterDiagram) -> Vec<GeneratorSubset> {
    let inf = infinity_neighbors(d);
    d.all()
        .subsets()
        .filter(|t| t.iter().all(|i| inf[i].intersection(*t).is_empty()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FcCheck {
    /// Every ∞-free subset generates a finite Coxeter group.
    pub coxeter: bool,
    /// Every ∞-free subset generates a finite Shephard group.
    pub shephard: bool,
    /// Least ∞-free subset outside S^f, if any.
    pub witness: Option<GeneratorSubset>,
}

pub fn fc_check(d: &ExtendedCoxeterDiagram) -> Result<FcCheck, ClassifyError> {
    let sf = enumerate_subsets(d, SubsetKind::SF)?;
    let sfs = enumerate_subsets(d, SubsetKind::SFS)?;
    let free = infinity_free_subsets(d);
    let witness = free.iter().copied().filter(|&t| !sf.contains(t)).min_by_key(|t| (t.len(), t.bits()));
    Ok(FcCheck {
        coxeter: witness.is_none(),
        shephard: free.iter().all(|&t| sfs.contains(t)),
        witness,
    })
}

pub fn check_fc(d: &ExtendedCoxeterDiagram) -> Result<bool, ClassifyError> {
    Ok(fc_check(d)?.coxeter)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Offense {
    /// Finite Coxeter subset whose Shephard group is infinite.
    NotShephardSpherical(GeneratorSubset),
    /// ∞-free subset whose Coxeter group is infinite.
    NotFlagComplete(GeneratorSubset),
    /// Four vertices spanning an `A4(3)` subdiagram.
    A43Subdiagram(GeneratorSubset),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub sf_equals_sfs: bool,
    pub fc: bool,
    pub has_a4_3_subdiagram: bool,
    pub offending_subsets: Vec<Offense>,
}

impl HypothesisReport {
    /// The hypotheses of the CAT(0) Moussong-metric theorem.
    pub fn moussong_ok(&self) -> bool {
        self.sf_equals_sfs && !self.has_a4_3_subdiagram
    }

    /// The hypotheses of the CAT(0) cube-complex theorem.
    pub fn cubical_ok(&self) -> bool {
        self.sf_equals_sfs && self.fc
    }
}

pub fn check_theorem_hypotheses(d: &ExtendedCoxeterDiagram) -> Result<HypothesisReport, ClassifyError> {
    let sf = enumerate_subsets(d, SubsetKind::SF)?;
    let sfs = enumerate_subsets(d, SubsetKind::SFS)?;
    let mut offending: Vec<Offense> = sf
        .members()
        .iter()
        .copied()
        .filter(|&t| !sfs.contains(t))
        .map(Offense::NotShephardSpherical)
        .collect();
    let fc = fc_check(d)?;
    for t in infinity_free_subsets(d) {
        if !sf.contains(t) {
            offending.push(Offense::NotFlagComplete(t));
        }
    }
    let mut a43 = false;
    for t in d.all().subsets().filter(|t| t.len() == 4) {
        let sub = d.subdiagram(t).expect("in range");
        if sub.is_connected() && classify_component(&sub) == FiniteType::Shephard(ShephardType::A4_3) {
            a43 = true;
            offending.push(Offense::A43Subdiagram(t));
        }
    }
    Ok(HypothesisReport {
        sf_equals_sfs: sf.len() == sfs.len(),
        fc: fc.coxeter,
        has_a4_3_subdiagram: a43,
        offending_subsets: offending,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn cls(s: &str) -> FiniteType {
        classify_component(&parse_diagram(s).unwrap())
    }

    fn shephard(t: ShephardType) -> FiniteType {
        FiniteType::Shephard(t)
    }

    #[test]
    fn table_examples() {
        assert_eq!(cls("3[3]3[3]3"), shephard(ShephardType::A3_3));
        assert_eq!(cls("3[3]3[3]3[3]3"), shephard(ShephardType::A4_3));
        assert_eq!(cls("3[4]3"), shephard(ShephardType::I2 { p: 3, m: 4, q: 3 }));
        assert_eq!(cls("2[4]3[3]3"), shephard(ShephardType::B3_23));
        assert_eq!(cls("3[3]3[4]2"), shephard(ShephardType::B3_23));
        assert_eq!(cls("5[4]2[3]2[3]2"), shephard(ShephardType::Bn { n: 4, p: 5 }));
        assert_eq!(cls("2[3]2[4]4"), shephard(ShephardType::Bn { n: 3, p: 4 }));
        assert_eq!(cls("2[4]2[3]2[3]2[3]2"), FiniteType::Coxeter(CoxeterType::B(5)));
        assert_eq!(cls("2[3]2[4]2[3]2"), FiniteType::Coxeter(CoxeterType::F4));
        assert_eq!(cls("2[3]2[3]2[5]2"), FiniteType::Coxeter(CoxeterType::H4));
        assert_eq!(cls("2[7]2"), FiniteType::Coxeter(CoxeterType::I2(7)));
        assert_eq!(cls("3[5]3[3]3"), FiniteType::Infinite);
        assert_eq!(cls("3[3]3[3]3[3]3[3]3"), FiniteType::Infinite);
        assert_eq!(cls("4[3]4[3]4"), FiniteType::Infinite);
        assert_eq!(cls("3[4]2[4]3"), FiniteType::Infinite);
    }

    #[test]
    fn triangles_and_branches() {
        let tri = "vertex a 3\nvertex b 3\nvertex c 3\nedge a b 3\nedge b c 3\nedge a c 3\n";
        assert_eq!(cls(tri), FiniteType::Infinite);
        let d4 = |p: u32| format!("vertex o {p}\nvertex x {p}\nvertex y {p}\nvertex z {p}\nedge o x 3\nedge o y 3\nedge o z 3\n");
        assert_eq!(cls(&d4(3)), FiniteType::Infinite);
        assert_eq!(cls(&d4(2)), FiniteType::Coxeter(CoxeterType::D(4)));
        let e8 = "vertex a 2\nvertex b 2\nvertex c 2\nvertex d 2\nvertex e 2\nvertex f 2\nvertex g 2\nvertex h 2\n\
                  edge a b 3\nedge b c 3\nedge c d 3\nedge d e 3\nedge e f 3\nedge f g 3\nedge c h 3\n";
        assert_eq!(cls(e8), FiniteType::Coxeter(CoxeterType::E8));
    }

    #[test]
    fn rank_one_and_disjoint_unions() {
        assert_eq!(cls("5"), shephard(ShephardType::Bn { n: 1, p: 5 }));
        assert_eq!(cls("2"), FiniteType::Coxeter(CoxeterType::A(1)));
        assert_eq!(cls("inf"), FiniteType::Infinite);
        let d = parse_diagram("vertex a 3\nvertex b 3\nvertex c 3\nvertex z 5\nedge a b 3\nedge b c 3\n").unwrap();
        let c = classify(&d);
        assert_eq!(c.types(), vec![shephard(ShephardType::A3_3), shephard(ShephardType::Bn { n: 1, p: 5 })]);
        assert!(c.is_finite());
        assert!(classify(&ExtendedCoxeterDiagram::default()).components.is_empty());
    }

    #[test]
    fn orders_from_types() {
        assert_eq!(shephard(ShephardType::I2 { p: 3, m: 3, q: 3 }).order(), Some(24));
        assert_eq!(shephard(ShephardType::I2 { p: 3, m: 4, q: 2 }).order(), Some(18));
        assert_eq!(shephard(ShephardType::I2 { p: 5, m: 3, q: 5 }).order(), Some(600));
        assert_eq!(shephard(ShephardType::I2 { p: 3, m: 5, q: 3 }).order(), Some(360));
        assert_eq!(FiniteType::Coxeter(CoxeterType::I2(6)).order(), Some(12));
        assert_eq!(shephard(ShephardType::Bn { n: 3, p: 4 }).order(), Some(384));
    }

    #[test]
    fn subset_posets() {
        let d = parse_diagram("3[inf]3").unwrap();
        let sfs = enumerate_subsets(&d, SubsetKind::SFS).unwrap();
        assert_eq!(sfs.members(), &[0b00, 0b01, 0b10].map(GeneratorSubset::from_bits));
        let a43 = parse_diagram("3[3]3[3]3[3]3").unwrap();
        assert_eq!(enumerate_subsets(&a43, SubsetKind::SFS).unwrap().len(), 16);
        let cox = parse_diagram("2[3]2[4]2[3]2[3]2").unwrap();
        assert_eq!(
            enumerate_subsets(&cox, SubsetKind::SF).unwrap().members(),
            enumerate_subsets(&cox, SubsetKind::SFS).unwrap().members()
        );
        // p=4 makes 4[3]4 finite but 4[3]4[3]4 infinite
        let d = parse_diagram("4[3]4[3]4").unwrap();
        let sfs = enumerate_subsets(&d, SubsetKind::SFS).unwrap();
        assert!(!sfs.contains(d.all()));
        assert!(sfs.contains(GeneratorSubset::from_bits(0b011)));
        assert!(enumerate_subsets(&d, SubsetKind::SF).unwrap().contains(d.all()));
    }

    #[test]
    fn fc_examples() {
        let tri = parse_diagram("vertex a 2\nvertex b 2\nvertex c 2\nedge a b 3\nedge b c 3\nedge a c 3\n").unwrap();
        let fc = fc_check(&tri).unwrap();
        assert!(!fc.coxeter);
        assert_eq!(fc.witness, Some(tri.all()));
        assert!(check_fc(&parse_diagram("7").unwrap()).unwrap());
        let ra = parse_diagram("vertex a 3\nvertex b 5\nvertex c inf\nedge a b inf\n").unwrap();
        assert!(check_fc(&ra).unwrap());
    }

    #[test]
    fn hypotheses() {
        let r = check_theorem_hypotheses(&parse_diagram("3[3]3[3]3[3]3").unwrap()).unwrap();
        assert!(r.has_a4_3_subdiagram);
        assert!(!r.moussong_ok());
        assert_eq!(r.offending_subsets, vec![Offense::A43Subdiagram(GeneratorSubset::from_bits(0b1111))]);
        let r = check_theorem_hypotheses(&parse_diagram("3[4]2[3]2[4]3").unwrap()).unwrap();
        assert!(r.moussong_ok() && !r.fc);
        assert!(r.offending_subsets.iter().all(|o| matches!(o, Offense::NotFlagComplete(_))));
        let r = check_theorem_hypotheses(&parse_diagram("3[inf]2[3]2[4]3").unwrap()).unwrap();
        assert!(r.fc && r.sf_equals_sfs);
        let r = check_theorem_hypotheses(&parse_diagram("4[3]4[3]4").unwrap()).unwrap();
        assert!(!r.sf_equals_sfs);
        assert!(r.offending_subsets.contains(&Offense::NotShephardSpherical(GeneratorSubset::from_bits(0b111))));
    }
}
