//! Presentations of Shephard groups and coset enumeration over them.

mod perm;
mod todd_coxeter;

pub use perm::{Permutation, PermutationGroup};
pub use todd_coxeter::{coset_enumerate, CosetTable};

use std::fmt;

use thiserror::Error;

use crate::classify::classify;
use crate::diagram::{ExtendedCoxeterDiagram, GeneratorSubset, Label};

/// Generator `i` is `2i`, its inverse `2i + 1`.
pub type Symbol = u32;

pub const DEFAULT_MAX_COSETS: usize = 2_000_000;

/// The cap on simultaneously allocated cosets, overridable by `SHEPKIT_MAX_COSETS`.
pub fn max_cosets_from_env() -> usize {
    std::env::var("SHEPKIT_MAX_COSETS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_COSETS)
}

pub fn inverse_symbol(x: Symbol) -> Symbol {
    x ^ 1
}

pub fn inverse_word(w: &[Symbol]) -> Vec<Symbol> {
    w.iter().rev().map(|&x| inverse_symbol(x)).collect()
}

pub fn free_reduce(w: &[Symbol]) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&inverse_symbol(x)) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("coset enumeration exceeded {0} cosets (infinite index or cap too small)")]
    CosetLimitExceeded(usize),
    #[error("generator {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("the group is infinite")]
    Infinite,
    #[error("group order {order} exceeds the cap {cap} for element-level constructions")]
    OrderCap { order: u64, cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<Symbol>>,
}

impl Presentation {
    pub fn render(&self, names: &[&str]) -> Vec<String> {
        self.relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| {
                        let name = names[(x / 2) as usize];
                        if x % 2 == 0 { name.to_string() } else { format!("{name}^-1") }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.generators).map(crate::diagram::default_name).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "<{} | {}>", names.join(", "), self.render(&names).join(", "))
    }
}

/// `a b a b ...` with `m` letters.
fn alternating(a: usize, b: usize, m: u32) -> Vec<Symbol> {
    (0..m).map(|k| 2 * if k % 2 == 0 { a } else { b } as Symbol).collect()
}

pub fn presentation(d: &ExtendedCoxeterDiagram) -> Presentation {
    let n = d.len();
    let mut relators = Vec::new();
    for i in 0..n {
        if let Label::Finite(p) = d.order(i) {
            relators.push(vec![2 * i as Symbol; p as usize]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Label::Finite(m) = d.m(i, j) {
                let mut w = alternating(i, j, m);
                w.extend(inverse_word(&alternating(j, i, m)));
                relators.push(free_reduce(&w));
            }
        }
    }
    Presentation { generators: n, relators }
}

/// The permutation action of the generators on the cosets of a table.
pub fn parabolic_action(table: &CosetTable) -> PermutationGroup {
    let gens = (0..table.generator_count())
        .map(|g| Permutation::from_images(table.generator_images(g)))
        .collect();
    PermutationGroup::new(table.len(), gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("infinite"),
        }
    }
}

/// Product over components of the regular coset counts.
pub fn group_order(d: &ExtendedCoxeterDiagram, max_cosets: usize) -> Result<GroupOrder, GroupError> {
    if !classify(d).is_finite() {
        return Ok(GroupOrder::Infinite);
    }
    let mut total: u64 = 1;
    for (_, comp) in d.components() {
        let table = coset_enumerate(&presentation(&comp), GeneratorSubset::EMPTY, max_cosets)?;
        total *= table.len() as u64;
    }
    Ok(GroupOrder::Finite(total))
}

/// Coset table of the trivial subgroup: cosets are group elements, coset 0
/// the identity, and `act(g, s)` is right multiplication.
pub fn regular_table(d: &ExtendedCoxeterDiagram, max_cosets: usize) -> Result<CosetTable, GroupError> {
    coset_enumerate(&presentation(d), GeneratorSubset::EMPTY, max_cosets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn d(s: &str) -> ExtendedCoxeterDiagram {
        parse_diagram(s).unwrap()
    }

    #[test]
    fn presentation_examples() {
        let p = presentation(&d("3[3]3"));
        assert_eq!(p.relators, vec![vec![0, 0, 0], vec![2, 2, 2], vec![0, 2, 0, 3, 1, 3]]);
        let p = presentation(&d("2[4]2"));
        assert_eq!(p.relators[2], vec![0, 2, 0, 2, 1, 3, 1, 3]);
        assert!(presentation(&d("inf[inf]inf")).relators.is_empty());
        // unjoined pairs commute
        let p = presentation(&d("vertex a 2\nvertex b 3\n"));
        assert_eq!(p.relators[2], vec![0, 2, 1, 3]);
    }

    #[test]
    fn small_orders() {
        let max = DEFAULT_MAX_COSETS;
        assert_eq!(group_order(&d("5"), max).unwrap(), GroupOrder::Finite(5));
        assert_eq!(group_order(&d("3[3]3"), max).unwrap(), GroupOrder::Finite(24));
        assert_eq!(group_order(&d("3[4]2"), max).unwrap(), GroupOrder::Finite(18));
        assert_eq!(group_order(&d("3[inf]3"), max).unwrap(), GroupOrder::Infinite);
        assert_eq!(group_order(&d("2[3]2[3]2"), max).unwrap(), GroupOrder::Finite(24));
    }

    #[test]
    fn cosets_of_parabolics() {
        let a3 = d("3[3]3[3]3");
        let p = presentation(&a3);
        let t = coset_enumerate(&p, GeneratorSubset::from_indices([1, 2]), DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.len(), 27);
        assert_eq!(coset_enumerate(&p, a3.all(), DEFAULT_MAX_COSETS).unwrap().len(), 1);
        for s in [1, 2] {
            assert_eq!(t.act(0, 2 * s), 0);
        }
    }

    #[test]
    fn relators_hold_on_every_coset() {
        let a3 = d("3[3]3[3]3");
        let p = presentation(&a3);
        for bits in 0..8 {
            let t = coset_enumerate(&p, GeneratorSubset::from_bits(bits), DEFAULT_MAX_COSETS).unwrap();
            for r in &p.relators {
                assert!((0..t.len()).all(|c| t.act_word(c, r) == c));
            }
        }
    }

    #[test]
    fn limit_is_reported() {
        let p = presentation(&d("3[3]3[3]3"));
        assert_eq!(
            coset_enumerate(&p, GeneratorSubset::EMPTY, 100),
            Err(GroupError::CosetLimitExceeded(100))
        );
        let p = presentation(&d("2[inf]2"));
        assert!(coset_enumerate(&p, GeneratorSubset::EMPTY, 5000).is_err());
    }

    #[test]
    fn standardized_tables_ignore_relator_order() {
        let mut p = presentation(&d("2[4]3[3]3"));
        let t1 = coset_enumerate(&p, GeneratorSubset::EMPTY, DEFAULT_MAX_COSETS).unwrap();
        p.relators.reverse();
        let t2 = coset_enumerate(&p, GeneratorSubset::EMPTY, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(t1.len(), 1296);
    }
}
