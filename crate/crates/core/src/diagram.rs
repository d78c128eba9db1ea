//! Extended Coxeter diagrams: labeled graphs with vertex orders `p` and edge
//! labels `m`, their text syntax, and subset bookkeeping.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Hard limit on the number of vertices; subsets fit in a `u32`.
pub const MAX_VERTICES: usize = 24;

/// A vertex order or edge label: a finite integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    pub fn is_finite(self) -> bool {
        matches!(self, Label::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(v) => Some(v),
            Label::Infinity => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(v) => write!(f, "{v}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Label {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "inf" | "∞" => Ok(Label::Infinity),
            _ if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) => {
                s.parse().map(Label::Finite).map_err(|_| ())
            }
            _ => Err(()),
        }
    }
}

/// A set of generators, stored as a bitset over vertex ids.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSubset(u32);

impl GeneratorSubset {
    pub const EMPTY: GeneratorSubset = GeneratorSubset(0);

    pub fn from_bits(bits: u32) -> Self {
        GeneratorSubset(bits)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        GeneratorSubset(if n == 0 { 0 } else { u32::MAX >> (32 - n) })
    }

    pub fn singleton(i: usize) -> Self {
        GeneratorSubset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(items: I) -> Self {
        items.into_iter().fold(Self::EMPTY, |s, i| s.with(i))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        GeneratorSubset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        GeneratorSubset(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        GeneratorSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GeneratorSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        GeneratorSubset(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// All subsets of `self`, in increasing bit order.
    pub fn subsets(self) -> impl Iterator<Item = GeneratorSubset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(GeneratorSubset(cur))
        })
    }

    /// Names of the members, e.g. `{a,c}`.
    pub fn display_with(self, d: &ExtendedCoxeterDiagram) -> String {
        let names: Vec<&str> = self.iter().map(|i| d.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl serde::Serialize for GeneratorSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl fmt::Display for GeneratorSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub name: String,
    pub order: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("vertex `{name}` has order {value}; vertex orders must be at least 2")]
    VertexOrderTooSmall { name: String, value: u32 },
    #[error("edge {a}-{b} has label {value}; edge labels must be at least 3 (omit the edge for m=2)")]
    EdgeLabelTooSmall { a: String, b: String, value: u32 },
    #[error("edge {a}-{b} has odd label {m} but the vertex orders differ ({pa} vs {pb})")]
    OddEdgeOrderMismatch { a: String, b: String, m: u32, pa: Label, pb: Label },
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("edge {0}-{1} declared twice")]
    DuplicateEdge(String, String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("invalid vertex name `{0}`")]
    InvalidName(String),
    #[error("vertex id {0} out of range")]
    VertexOutOfRange(usize),
    #[error("diagram has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid diagram: {0}")]
    Validation(#[from] ValidationError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Syntax { line, column, message: message.into() }
}

/// A validated extended Coxeter diagram. Vertex ids are positions in
/// declaration order; absent pairs carry the label 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExtendedCoxeterDiagram {
    vertices: Vec<Vertex>,
    edges: BTreeMap<(usize, usize), Label>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == '#')
}

impl ExtendedCoxeterDiagram {
    pub fn new(
        vertices: Vec<(String, Label)>,
        edges: Vec<(usize, usize, Label)>,
    ) -> Result<Self, ValidationError> {
        if vertices.len() > MAX_VERTICES {
            return Err(ValidationError::TooManyVertices(vertices.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for (name, order) in &vertices {
            if !valid_name(name) {
                return Err(ValidationError::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(ValidationError::DuplicateVertex(name.clone()));
            }
            if let Label::Finite(v) = order {
                if *v < 2 {
                    return Err(ValidationError::VertexOrderTooSmall { name: name.clone(), value: *v });
                }
            }
        }
        let vertices: Vec<Vertex> =
            vertices.into_iter().map(|(name, order)| Vertex { name, order }).collect();
        let mut map = BTreeMap::new();
        for (i, j, m) in edges {
            let n = vertices.len();
            if i >= n || j >= n {
                return Err(ValidationError::VertexOutOfRange(i.max(j)));
            }
            if i == j {
                return Err(ValidationError::SelfLoop(vertices[i].name.clone()));
            }
            let (a, b) = (vertices[i.min(j)].name.clone(), vertices[i.max(j)].name.clone());
            if let Label::Finite(v) = m {
                if v < 3 {
                    return Err(ValidationError::EdgeLabelTooSmall { a, b, value: v });
                }
                let (pa, pb) = (vertices[i].order, vertices[j].order);
                if v % 2 == 1 && pa != pb {
                    let (pa, pb) = if i < j { (pa, pb) } else { (pb, pa) };
                    return Err(ValidationError::OddEdgeOrderMismatch { a, b, m: v, pa, pb });
                }
            }
            if map.insert((i.min(j), i.max(j)), m).is_some() {
                return Err(ValidationError::DuplicateEdge(a, b));
            }
        }
        Ok(ExtendedCoxeterDiagram { vertices, edges: map })
    }

    /// Path diagram `p[0] -m[0]- p[1] -m[1]- ...` with vertices named a, b, c, ...
    /// An `m` of 2 leaves the pair unjoined.
    pub fn path(orders: &[Label], edge_labels: &[Label]) -> Result<Self, ValidationError> {
        assert_eq!(edge_labels.len() + 1, orders.len().max(1));
        let vertices = orders.iter().enumerate().map(|(i, &p)| (default_name(i), p)).collect();
        let edges = edge_labels
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != Label::Finite(2))
            .map(|(i, &m)| (i, i + 1, m))
            .collect();
        Self::new(vertices, edges)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vertices[i].name
    }

    pub fn order(&self, i: usize) -> Label {
        self.vertices[i].order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    /// The explicit edges, as `(i, j, m)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        self.edges.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `m_ij`, with 2 for unjoined pairs.
    pub fn m(&self, i: usize, j: usize) -> Label {
        self.edges.get(&(i.min(j), i.max(j))).copied().unwrap_or(Label::Finite(2))
    }

    pub fn all(&self) -> GeneratorSubset {
        GeneratorSubset::full(self.len())
    }

    pub fn neighbors(&self, i: usize) -> GeneratorSubset {
        let mut s = GeneratorSubset::EMPTY;
        for &(a, b) in self.edges.keys() {
            if a == i {
                s = s.with(b);
            } else if b == i {
                s = s.with(a);
            }
        }
        s
    }

    pub fn subdiagram(&self, t: GeneratorSubset) -> Result<Self, ValidationError> {
        if let Some(bad) = t.iter().find(|&i| i >= self.len()) {
            return Err(ValidationError::VertexOutOfRange(bad));
        }
        let ids: Vec<usize> = t.iter().collect();
        let pos = |v: usize| ids.iter().position(|&x| x == v);
        let vertices = ids.iter().map(|&i| self.vertices[i].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|(&(a, b), &m)| Some(((pos(a)?, pos(b)?), m)))
            .collect();
        Ok(ExtendedCoxeterDiagram { vertices, edges })
    }

    pub fn underlying_coxeter(&self) -> Self {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex { name: v.name.clone(), order: Label::Finite(2) })
            .collect();
        ExtendedCoxeterDiagram { vertices, edges: self.edges.clone() }
    }

    /// Connected components of the subgraph induced on `t`, ordered by least id.
    pub fn components_within(&self, t: GeneratorSubset) -> Vec<GeneratorSubset> {
        let adjacency: Vec<GeneratorSubset> = (0..self.len()).map(|i| self.neighbors(i)).collect();
        components_of(&adjacency, t)
    }

    pub fn components(&self) -> Vec<(GeneratorSubset, ExtendedCoxeterDiagram)> {
        self.components_within(self.all())
            .into_iter()
            .map(|c| (c, self.subdiagram(c).expect("component ids are in range")))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(self.all()).len() <= 1
    }

    /// Vertex ids along the path, starting from the end with the smaller id.
    /// `None` unless the diagram is a connected path (a single vertex counts).
    pub fn path_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        if n == 0 || !self.is_connected() || self.edges.len() != n - 1 {
            return None;
        }
        let degrees: Vec<usize> = (0..n).map(|i| self.neighbors(i).len()).collect();
        if degrees.iter().any(|&d| d > 2) {
            return None;
        }
        let start = (0..n).find(|&i| degrees[i] <= 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < n {
            let next = self.neighbors(cur).iter().find(|&j| j != prev)?;
            order.push(next);
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    /// DSL rendering; `parse_diagram` reads it back to an equal diagram.
    pub fn render_dsl(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {} {}\n", v.name, v.order));
        }
        for (&(i, j), m) in &self.edges {
            out.push_str(&format!("edge {} {} {}\n", self.name(i), self.name(j), m));
        }
        out
    }

    /// Inline rendering `p1[m1]p2...`, available when the vertices in id
    /// order form a path with the default names.
    pub fn render_inline(&self) -> Option<String> {
        let n = self.len();
        if n == 0 || self.path_order()? != (0..n).collect::<Vec<_>>() {
            return None;
        }
        if (0..n).any(|i| self.name(i) != default_name(i)) {
            return None;
        }
        let mut out = self.order(0).to_string();
        for i in 1..n {
            out.push_str(&format!("[{}]{}", self.m(i - 1, i), self.order(i)));
        }
        Some(out)
    }
}

impl fmt::Display for ExtendedCoxeterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.render_inline() {
            Some(s) => f.write_str(&s),
            None => f.write_str(&self.render_dsl()),
        }
    }
}

pub(crate) fn components_of(adjacency: &[GeneratorSubset], t: GeneratorSubset) -> Vec<GeneratorSubset> {
    let mut left = t;
    let mut out = Vec::new();
    while let Some(seed) = left.first() {
        let mut comp = GeneratorSubset::singleton(seed);
        let mut frontier = comp;
        while let Some(v) = frontier.first() {
            frontier = frontier.without(v);
            let fresh = adjacency[v].intersection(t).difference(comp);
            comp = comp.union(fresh);
            frontier = frontier.union(fresh);
        }
        left = left.difference(comp);
        out.push(comp);
    }
    out
}

/// Names used for inline diagrams: a, b, c, ...
pub fn default_name(i: usize) -> String {
    char::from(b'a' + i as u8).to_string()
}

/// Parse either the line-oriented DSL or the inline path form.
pub fn parse_diagram(text: &str) -> Result<ExtendedCoxeterDiagram, DiagramError> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    match first {
        None => Ok(ExtendedCoxeterDiagram::default()),
        Some(l) if l.starts_with("vertex") || l.starts_with("edge") => parse_dsl(text),
        Some(_) => parse_inline(text),
    }
}

/// Parse `vertex NAME P` / `edge NAME1 NAME2 M` lines.
pub fn parse_dsl(text: &str) -> Result<ExtendedCoxeterDiagram, DiagramError> {
    let mut vertices: Vec<(String, Label)> = Vec::new();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(body);
        let Some(&(col, keyword)) = tokens.first() else { continue };
        let label_at = |k: usize, what: &str| -> Result<Label, DiagramError> {
            let (c, tok) = tokens[k];
            tok.parse()
                .map_err(|_| syntax(line, c, format!("expected {what} (integer or `inf`), found `{tok}`")))
        };
        match keyword {
            "vertex" => {
                if tokens.len() != 3 {
                    return Err(syntax(line, col, "expected `vertex NAME P`"));
                }
                let (c, name) = tokens[1];
                if vertices.iter().any(|(n, _)| n == name) {
                    return Err(syntax(line, c, format!("vertex `{name}` declared twice")));
                }
                vertices.push((name.to_string(), label_at(2, "vertex order")?));
            }
            "edge" => {
                if tokens.len() != 4 {
                    return Err(syntax(line, col, "expected `edge NAME1 NAME2 M`"));
                }
                let mut ends = [0usize; 2];
                for (slot, k) in ends.iter_mut().zip([1, 2]) {
                    let (c, name) = tokens[k];
                    *slot = vertices
                        .iter()
                        .position(|(n, _)| n == name)
                        .ok_or_else(|| syntax(line, c, format!("unknown vertex `{name}`")))?;
                }
                edges.push((ends[0], ends[1], label_at(3, "edge label")?));
            }
            other => return Err(syntax(line, col, format!("unknown statement `{other}`"))),
        }
    }
    Ok(ExtendedCoxeterDiagram::new(vertices, edges)?)
}

fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (true, Some((c, b))) => {
                out.push((c + 1, &line[b..byte]));
                start = None;
            }
            (false, None) => start = Some((col, byte)),
            _ => {}
        }
    }
    if let Some((c, b)) = start {
        out.push((c + 1, &line[b..]));
    }
    out
}

/// Parse the inline path form `p1[m1]p2[m2]...pn`.
pub fn parse_inline(text: &str) -> Result<ExtendedCoxeterDiagram, DiagramError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let Some((lineno, line)) = lines.next() else {
        return Ok(ExtendedCoxeterDiagram::default());
    };
    if let Some((extra, _)) = lines.next() {
        return Err(syntax(extra + 1, 1, "inline form must fit on one line"));
    }
    let line_no = lineno + 1;
    let chars: Vec<char> = line.chars().collect();
    let mut pos = chars.iter().take_while(|c| c.is_whitespace()).count();
    let end = chars.len() - chars.iter().rev().take_while(|c| c.is_whitespace()).count();

    let read_label = |pos: &mut usize, what: &str| -> Result<Label, DiagramError> {
        let begin = *pos;
        while *pos < end && (chars[*pos].is_ascii_alphanumeric() || chars[*pos] == '∞') {
            *pos += 1;
        }
        let tok: String = chars[begin..*pos].iter().collect();
        tok.parse().map_err(|_| {
            let shown = if tok.is_empty() {
                chars.get(begin).map_or("end of input".to_string(), |c| format!("`{c}`"))
            } else {
                format!("`{tok}`")
            };
            syntax(line_no, begin + 1, format!("expected {what}, found {shown}"))
        })
    };

    let mut orders = vec![read_label(&mut pos, "vertex order")?];
    let mut labels = Vec::new();
    while pos < end {
        if chars[pos] != '[' {
            return Err(syntax(line_no, pos + 1, format!("expected `[`, found `{}`", chars[pos])));
        }
        pos += 1;
        labels.push(read_label(&mut pos, "edge label")?);
        if pos >= end || chars[pos] != ']' {
            return Err(syntax(line_no, pos + 1, "expected `]`"));
        }
        pos += 1;
        orders.push(read_label(&mut pos, "vertex order")?);
    }
    if orders.len() > MAX_VERTICES {
        return Err(ValidationError::TooManyVertices(orders.len()).into());
    }
    let vertices = orders.iter().enumerate().map(|(i, &p)| (default_name(i), p)).collect();
    let edges = labels.iter().enumerate().map(|(i, &m)| (i, i + 1, m)).collect();
    Ok(ExtendedCoxeterDiagram::new(vertices, edges)?)
}
