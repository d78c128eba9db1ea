use proptest::prelude::*;

use shepkit::classify::{classify, enumerate_subsets, fc_check, SubsetKind};
use shepkit::complexes::{cone, derived_complex, is_flag, isomorphic, join, link, Poset, SimplicialComplex};
use shepkit::davis::{build_k, upper_link};
use shepkit::forms::{cosine_matrix, hermitian_matrix, is_positive_definite};
use shepkit::groups::{coset_enumerate, group_order, parabolic_action, presentation, GroupOrder, DEFAULT_MAX_COSETS};
use shepkit::milnor::{bn_diagram, check_structure};
use shepkit::polytopes::{generalized_cube, product, FacePoset};
use shepkit::{parse_diagram, ExtendedCoxeterDiagram, GeneratorSubset, Label};

const MAX: usize = DEFAULT_MAX_COSETS;

fn arb_diagram(max_n: usize) -> impl Strategy<Value = ExtendedCoxeterDiagram> {
    let orders = prop::collection::vec(prop::sample::select(vec![2u32, 3, 4]), 1..=max_n);
    orders.prop_flat_map(|orders| {
        let n = orders.len();
        let labels = prop::collection::vec(prop::sample::select(vec![None, Some(3), Some(4), Some(6), Some(0)]), n * (n - 1) / 2);
        (Just(orders), labels).prop_filter_map("odd edge between different orders", |(orders, labels)| {
            let n = orders.len();
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if let Some(m) = labels[k] {
                        edges.push((i, j, if m == 0 { Label::Infinity } else { Label::Finite(m) }));
                    }
                    k += 1;
                }
            }
            let vertices = orders.iter().enumerate().map(|(i, &p)| (format!("v{i}"), Label::Finite(p))).collect();
            ExtendedCoxeterDiagram::new(vertices, edges).ok()
        })
    })
}

fn relabel(d: &ExtendedCoxeterDiagram, perm: &[usize]) -> ExtendedCoxeterDiagram {
    let vertices = perm.iter().map(|&i| (d.name(i).to_string(), d.order(i))).collect();
    let pos = |v: usize| perm.iter().position(|&x| x == v).unwrap();
    let edges = d.edges().map(|(i, j, m)| (pos(i), pos(j), m)).collect();
    ExtendedCoxeterDiagram::new(vertices, edges).unwrap()
}

fn arb_poset() -> impl Strategy<Value = Poset> {
    (1usize..7).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            // only i < j relations, so the order is acyclic
            let less: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| bits[i * n + j]).collect();
            Poset::from_relations(vec![None; n], &less).unwrap()
        })
    })
}

const FINITE: &[&str] = &["3[3]3", "2[5]2[3]2", "3[4]2", "2[4]3[3]3", "4[3]4", "3[4]3", "2[3]2[3]2", "5[4]2"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_ignores_vertex_order(d in arb_diagram(4), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..d.len()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled = relabel(&d, &perm);
        let mut a = classify(&d).types();
        let mut b = classify(&shuffled).types();
        a.sort_by_key(|t| t.to_string());
        b.sort_by_key(|t| t.to_string());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn spherical_subsets_are_downward_closed(d in arb_diagram(5)) {
        let sf = enumerate_subsets(&d, SubsetKind::SF).unwrap();
        let sfs = enumerate_subsets(&d, SubsetKind::SFS).unwrap();
        for &t in sfs.members() {
            prop_assert!(sf.contains(t));
        }
        for poset in [&sf, &sfs] {
            for &t in poset.members() {
                for s in t.subsets() {
                    prop_assert!(poset.contains(s));
                }
            }
        }
    }

    #[test]
    fn hermitian_form_tracks_finiteness(d in arb_diagram(4)) {
        if d.edges().all(|(_, _, m)| m.is_finite()) && d.is_connected() {
            let h = is_positive_definite(&hermitian_matrix(&d).unwrap(), 1e-9).positive_definite;
            if classify(&d).is_finite() {
                prop_assert!(h);
            }
            if !is_positive_definite(&cosine_matrix(&d), 1e-9).positive_definite {
                prop_assert!(!h);
            }
        }
    }

    #[test]
    fn derived_complexes_are_flag(p in arb_poset()) {
        let sc = derived_complex(&p);
        prop_assert!(is_flag(&sc).flag);
        for v in 0..sc.vertex_count() as u32 {
            prop_assert!(is_flag(&link(&sc, &[v]).unwrap()).flag);
        }
        let coned = cone(&p);
        prop_assert_eq!(coned.maximal_elements().len(), 1);
    }

    #[test]
    fn joins_commute(p in arb_poset(), q in arb_poset()) {
        let (a, b) = (derived_complex(&p), derived_complex(&q));
        let ab = join(&a, &b);
        prop_assert!(is_flag(&ab).flag);
        prop_assert_eq!(isomorphic(&ab, &join(&b, &a)), Ok(true));
    }

    #[test]
    fn lagrange(pick in 0..FINITE.len(), bits in 0u32..8) {
        let d = parse_diagram(FINITE[pick]).unwrap();
        let t = GeneratorSubset::from_bits(bits).intersection(d.all());
        let GroupOrder::Finite(order) = group_order(&d, MAX).unwrap() else { panic!("finite") };
        let index = coset_enumerate(&presentation(&d), t, MAX).unwrap().len() as u64;
        let GroupOrder::Finite(sub) = group_order(&d.subdiagram(t).unwrap(), MAX).unwrap() else { panic!("finite") };
        prop_assert_eq!(index * sub, order);
    }

    #[test]
    fn coset_actions_satisfy_relators(pick in 0..FINITE.len(), bits in 0u32..8) {
        let d = parse_diagram(FINITE[pick]).unwrap();
        let t = GeneratorSubset::from_bits(bits).intersection(d.all());
        let pres = presentation(&d);
        let table = coset_enumerate(&pres, t, MAX).unwrap();
        let group = parabolic_action(&table);
        prop_assert!(group.is_transitive());
        for r in &pres.relators {
            for c in 0..table.len() {
                prop_assert_eq!(table.act_word(c, r), c);
            }
        }
    }

    #[test]
    fn k_is_a_cone_with_agreeing_links(d in arb_diagram(4)) {
        let k = build_k(&d).unwrap();
        prop_assert!(k.is_connected());
        prop_assert_eq!(k.euler_characteristic(), 1);
        for &t in &k.spherical {
            prop_assert!(upper_link(&d, t).unwrap().agree);
            let (faces, vertices) = k.cube_at(t);
            prop_assert_eq!((faces, vertices), (3usize.pow(t.len() as u32), 1usize << t.len()));
        }
    }

    #[test]
    fn fc_means_flag_nerve(d in arb_diagram(5)) {
        let sfs = enumerate_subsets(&d, SubsetKind::SFS).unwrap();
        let fc = fc_check(&d).unwrap();
        let facets: Vec<Vec<u32>> = sfs.members().iter().map(|t| t.iter().map(|i| i as u32).collect()).collect();
        let nerve = SimplicialComplex::from_facets(vec![None; d.len()], &facets);
        if fc.coxeter && fc.shephard {
            prop_assert!(is_flag(&nerve).flag);
        }
    }
}

#[test]
fn finite_tables_have_definite_forms() {
    let mut corpus: Vec<ExtendedCoxeterDiagram> = ["2[3]2[3]2[3]2", "2[3]2[4]2[3]2", "2[3]2[3]2[5]2", "2[4]3[3]3", "3[3]3[3]3", "3[3]3[3]3[3]3"]
        .iter()
        .map(|s| parse_diagram(s).unwrap())
        .collect();
    for n in 1..=4 {
        for p in 2..=5 {
            corpus.push(bn_diagram(n, p));
        }
    }
    for d in &corpus {
        assert!(classify(d).is_finite());
        assert!(is_positive_definite(&hermitian_matrix(d).unwrap(), 1e-9).positive_definite, "{}", d.render_dsl());
    }
    // triangles with all edges 3 have affine underlying groups
    for p in 3..=5 {
        let d = parse_diagram(&format!("vertex a {p}\nvertex b {p}\nvertex c {p}\nedge a b 3\nedge b c 3\nedge a c 3")).unwrap();
        assert!(!is_positive_definite(&hermitian_matrix(&d).unwrap(), 1e-9).positive_definite);
    }
}

#[test]
fn milnor_complexes_are_flag_and_simply_transitive() {
    for s in FINITE {
        let r = check_structure(&parse_diagram(s).unwrap(), MAX).unwrap();
        assert!(r.passed(), "{s}: {r:?}");
    }
}

#[test]
fn product_ranks_add() {
    let square: FacePoset = generalized_cube(2, 2);
    let segment = generalized_cube(1, 3);
    let prism = product(&square, &segment);
    assert_eq!(prism.rank(), square.rank() + segment.rank());
    let proper = |p: &FacePoset| p.proper_faces().len();
    assert_eq!(proper(&prism), proper(&square) * proper(&segment) + proper(&square) + proper(&segment));
    assert!(prism.diamond_violations().is_empty());
}
