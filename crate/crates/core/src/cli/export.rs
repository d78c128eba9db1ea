//! JSON and DOT renderings of complexes. Output is byte-stable: keys are
//! sorted by `serde_json`'s default map and cells are sorted.

use std::fmt::Write;

use serde_json::{json, Value};
use thiserror::Error;

use crate::complexes::{Graph, SimplicialComplex};
use crate::davis::CubicalComplex;
use crate::diagram::ExtendedCoxeterDiagram;
use crate::polytopes::FacePoset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

pub enum Exportable<'a> {
    Simplicial(&'a SimplicialComplex),
    /// K together with the diagram naming its generators.
    Cubical(&'a CubicalComplex, &'a ExtendedCoxeterDiagram),
    Poset(&'a FacePoset),
    Graph(&'a Graph),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("{0} cannot be exported as {1}")]
    Unsupported(&'static str, &'static str),
}

struct Flat {
    kind: &'static str,
    types: Vec<Option<String>>,
    cells: Vec<Vec<u32>>,
}

fn sort_cells(mut cells: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    cells.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    cells
}

fn flatten(obj: &Exportable) -> Flat {
    match obj {
        Exportable::Simplicial(sc) => Flat {
            kind: "simplicial",
            types: sc.tags().to_vec(),
            cells: sort_cells(sc.simplices().filter(|s| s.len() > 1).cloned().collect()),
        },
        Exportable::Cubical(k, d) => {
            let cells = k
                .cells
                .iter()
                .filter(|&&c| CubicalComplex::dimension_of(c) > 0)
                .map(|&(lower, upper)| {
                    let mut ids: Vec<u32> = upper
                        .difference(lower)
                        .subsets()
                        .map(|s| k.vertex_index(lower.union(s)).expect("cube vertex") as u32)
                        .collect();
                    ids.sort_unstable();
                    ids
                })
                .collect();
            Flat {
                kind: "cubical",
                types: k.spherical.iter().map(|t| Some(t.display_with(d))).collect(),
                cells: sort_cells(cells),
            }
        }
        Exportable::Poset(p) => Flat {
            kind: "face_poset",
            types: (0..p.len()).map(|f| Some(p.tag(f).map_or_else(|| format!("rank {}", p.face_rank(f)), String::from))).collect(),
            cells: sort_cells(p.covers().into_iter().map(|(a, b)| vec![a as u32, b as u32]).collect()),
        },
        Exportable::Graph(g) => Flat {
            kind: "graph",
            types: vec![None; g.vertex_count()],
            cells: sort_cells(g.edges().into_iter().map(|(a, b)| vec![a as u32, b as u32]).collect()),
        },
    }
}

pub fn to_json(obj: &Exportable) -> Value {
    let flat = flatten(obj);
    let vertices: Vec<Value> = flat.types.iter().enumerate().map(|(id, t)| json!({ "id": id, "type": t })).collect();
    json!({ "kind": flat.kind, "vertices": vertices, "cells": flat.cells })
}

pub fn export_complex(obj: &Exportable, format: Format) -> Result<String, ExportError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&to_json(obj)).expect("json values serialize") + "\n"),
        Format::Dot => {
            if let Exportable::Poset(_) = obj {
                // covers are directed; a 1-skeleton drawing would drop that
                return Err(ExportError::Unsupported("a face poset", "DOT"));
            }
            let flat = flatten(obj);
            let mut out = format!("graph {} {{\n", flat.kind);
            for (id, t) in flat.types.iter().enumerate() {
                match t {
                    Some(t) => writeln!(out, "  {id} [label=\"{}\"];", t.replace('"', "\\\"")),
                    None => writeln!(out, "  {id};"),
                }
                .expect("writing to a string");
            }
            let mut edges: Vec<(u32, u32)> = Vec::new();
            for c in &flat.cells {
                match obj {
                    // a square's diagonals are not edges
                    Exportable::Cubical(..) if c.len() > 2 => {}
                    _ => {
                        for (i, &a) in c.iter().enumerate() {
                            edges.extend(c[i + 1..].iter().map(|&b| (a, b)));
                        }
                    }
                }
            }
            edges.sort_unstable();
            edges.dedup();
            for (a, b) in edges {
                writeln!(out, "  {a} -- {b};").expect("writing to a string");
            }
            out.push_str("}\n");
            Ok(out)
        }
        Format::Text => Err(ExportError::Unsupported("a complex", "text")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::davis::build_k;
    use crate::parse_diagram;
    use crate::polytopes::hessian;

    #[test]
    fn k33_dot() {
        let edges: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let g = Graph::from_edges(6, &edges);
        let dot = export_complex(&Exportable::Graph(&g), Format::Dot).unwrap();
        assert_eq!(dot.matches(" -- ").count(), 9);
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("--")).count(), 6);
    }

    #[test]
    fn hessian_poset_json() {
        let (_, poset) = hessian();
        let v = to_json(&Exportable::Poset(&poset));
        assert_eq!(v["vertices"].as_array().unwrap().len(), 27 + 72 + 27 + 2);
        assert!(export_complex(&Exportable::Poset(&poset), Format::Dot).is_err());
    }

    #[test]
    fn k_of_a2() {
        let d = parse_diagram("2[3]2").unwrap();
        let k = build_k(&d).unwrap();
        let v = to_json(&Exportable::Cubical(&k, &d));
        assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
        let cells = v["cells"].as_array().unwrap();
        assert_eq!(cells.iter().filter(|c| c.as_array().unwrap().len() == 2).count(), 4);
        assert_eq!(cells.iter().filter(|c| c.as_array().unwrap().len() == 4).count(), 1);
        let dot = export_complex(&Exportable::Cubical(&k, &d), Format::Dot).unwrap();
        assert_eq!(dot.matches(" -- ").count(), 4);
    }
}
