//! HLT coset enumeration with lookahead, union-find coincidence collapse and
//! table compaction.

use super::{inverse_symbol, GroupError, Presentation, Symbol};
use crate::diagram::GeneratorSubset;

const UNDEF: u32 = u32::MAX;

/// A complete coset table in standard (breadth-first) numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generators: usize,
    rows: usize,
    table: Vec<u32>,
    subgroup: GeneratorSubset,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn subgroup(&self) -> GeneratorSubset {
        self.subgroup
    }

    /// Right action of one symbol on a coset.
    pub fn act(&self, coset: usize, symbol: Symbol) -> usize {
        self.table[coset * 2 * self.generators + symbol as usize] as usize
    }

    pub fn act_word(&self, coset: usize, word: &[Symbol]) -> usize {
        word.iter().fold(coset, |c, &s| self.act(c, s))
    }

    /// Images of all cosets under generator `g`.
    pub fn generator_images(&self, g: usize) -> Vec<u32> {
        (0..self.rows).map(|c| self.act(c, 2 * g as Symbol) as u32).collect()
    }
}

struct Enumerator<'a> {
    cols: usize,
    relators: &'a [Vec<Symbol>],
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max: usize,
    queue: Vec<u32>,
}

impl<'a> Enumerator<'a> {
    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: Symbol) -> u32 {
        self.table[c as usize * self.cols + x as usize]
    }

    fn set(&mut self, c: u32, x: Symbol, v: u32) {
        self.table[c as usize * self.cols + x as usize] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_row(&mut self) -> u32 {
        let id = self.rows() as u32;
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.parent.push(id);
        self.live += 1;
        id
    }

    fn define(&mut self, f: u32, x: Symbol) -> Result<(), GroupError> {
        if self.rows() >= self.max {
            return Err(GroupError::CosetLimitExceeded(self.max));
        }
        let n = self.new_row();
        self.set(f, x, n);
        self.set(n, inverse_symbol(x), f);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (a, b) = (self.rep(k), self.rep(l));
        if a != b {
            let (keep, drop) = (a.min(b), a.max(b));
            self.parent[drop as usize] = keep;
            self.queue.push(drop);
            self.live -= 1;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.cols as Symbol {
                let d = self.get(dead, x);
                if d == UNDEF {
                    continue;
                }
                let xi = inverse_symbol(x);
                self.set(d, xi, UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != UNDEF {
                    self.merge(nu, mx);
                } else {
                    let nxi = self.get(nu, xi);
                    if nxi != UNDEF {
                        self.merge(mu, nxi);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, xi, mu);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Trace `w` around coset `alpha` from both ends, deducing or collapsing
    /// when the gap closes. With `fill`, gaps are bridged by new cosets.
    fn scan(&mut self, alpha: u32, w: &[Symbol], fill: bool) -> Result<(), GroupError> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (alpha, alpha);
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j && self.get(f, w[i as usize]) != UNDEF {
                f = self.get(f, w[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, inverse_symbol(w[j as usize])) != UNDEF {
                b = self.get(b, inverse_symbol(w[j as usize]));
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b);
                self.set(b, inverse_symbol(x), f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn lookahead(&mut self) {
        for c in 0..self.rows() as u32 {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let rels = self.relators;
                self.scan(c, &rels[r], false).expect("lookahead never defines cosets");
            }
        }
    }

    /// Drop dead rows; returns the new index of `alpha` (the first live row
    /// at or after it).
    fn compact(&mut self, alpha: usize) -> usize {
        let mut new_id = vec![UNDEF; self.rows()];
        let mut next = 0u32;
        let mut new_alpha = None;
        for c in 0..self.rows() {
            if c >= alpha && new_alpha.is_none() && self.is_live(c as u32) {
                new_alpha = Some(next as usize);
            }
            if self.is_live(c as u32) {
                new_id[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..self.rows() {
            if new_id[c] == UNDEF {
                continue;
            }
            for x in 0..self.cols {
                let v = self.table[c * self.cols + x];
                table.push(if v == UNDEF { UNDEF } else { new_id[self.rep(v) as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.live = next as usize;
        new_alpha.unwrap_or(next as usize)
    }

    fn run(&mut self, subgroup: GeneratorSubset) -> Result<(), GroupError> {
        let budget = self.cols + self.relators.iter().map(|r| r.len().saturating_sub(1)).sum::<usize>();
        if self.max == 0 {
            return Err(GroupError::CosetLimitExceeded(0));
        }
        self.new_row();
        for t in subgroup.iter() {
            self.scan(0, &[2 * t as Symbol], true)?;
        }
        let mut compacted_at = usize::MAX;
        let mut alpha = 0usize;
        while alpha < self.rows() {
            if !self.is_live(alpha as u32) {
                alpha += 1;
                continue;
            }
            // Short on room: deduce what we can, reclaim dead rows, and then
            // press on; `define` reports the limit if it is really reached.
            if self.rows() + budget > self.max && compacted_at != self.live {
                self.lookahead();
                alpha = self.compact(alpha);
                compacted_at = self.live;
                continue;
            }
            let a = alpha as u32;
            for r in 0..self.relators.len() {
                if !self.is_live(a) {
                    break;
                }
                let rels = self.relators;
                self.scan(a, &rels[r], true)?;
            }
            if self.is_live(a) {
                for x in 0..self.cols as Symbol {
                    if self.get(a, x) == UNDEF {
                        self.define(a, x)?;
                    }
                }
            }
            alpha += 1;
        }
        self.compact(0);
        Ok(())
    }

    /// Renumber cosets breadth-first from coset 0, columns in order.
    fn standardized(&self, generators: usize, subgroup: GeneratorSubset) -> CosetTable {
        let rows = self.rows();
        let mut order = Vec::with_capacity(rows);
        let mut new_id = vec![UNDEF; rows];
        new_id[0] = 0;
        order.push(0u32);
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for x in 0..self.cols as Symbol {
                let d = self.get(c, x);
                if new_id[d as usize] == UNDEF {
                    new_id[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut table = Vec::with_capacity(rows * self.cols);
        for &c in &order {
            for x in 0..self.cols as Symbol {
                table.push(new_id[self.get(c, x) as usize]);
            }
        }
        CosetTable { generators, rows, table, subgroup }
    }
}

/// Enumerate the cosets of the standard parabolic subgroup generated by `t`.
pub fn coset_enumerate(
    presentation: &Presentation,
    t: GeneratorSubset,
    max_cosets: usize,
) -> Result<CosetTable, GroupError> {
    let n = presentation.generators;
    if let Some(bad) = t.iter().find(|&i| i >= n) {
        return Err(GroupError::GeneratorOutOfRange(bad));
    }
    let mut e = Enumerator {
        cols: 2 * n,
        relators: &presentation.relators,
        table: Vec::new(),
        parent: Vec::new(),
        live: 0,
        max: max_cosets,
        queue: Vec::new(),
    };
    e.run(t)?;
    debug_assert_eq!(e.live, e.rows());
    Ok(e.standardized(n, t))
}
