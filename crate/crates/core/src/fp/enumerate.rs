//! HLT coset enumeration with immediate coincidence processing.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

use super::presentation::Presentation;
use super::word::{Letter, Word};

const NONE: u32 = u32::MAX;

/// Default cap on the number of cosets defined during an enumeration.
pub const DEFAULT_MAX_COSETS: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableStatus {
    Complete,
    /// The cap was hit; nothing can be concluded about the index.
    Capped,
}

/// A coset table: row 0 is the subgroup, column `2g` is generator `g` and
/// column `2g+1` its inverse. Complete tables are standardized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generators: usize,
    rows: usize,
    table: Vec<u32>,
    status: TableStatus,
    defined: usize,
}

impl CosetTable {
    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    /// Number of live cosets (the index when complete).
    pub fn len(&self) -> usize {
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    /// Total cosets defined over the run, live or dead.
    pub fn cosets_defined(&self) -> usize {
        self.defined
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn entry(&self, coset: usize, letter: Letter) -> Option<usize> {
        let v = self.table[coset * 2 * self.generators + letter.column()];
        (v != NONE).then_some(v as usize)
    }

    /// The coset reached from `coset` by reading `w`.
    pub fn trace(&self, coset: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(coset, |c, &l| self.entry(c, l))
    }

    /// Column permutations of the generators.
    pub fn generator_permutations(&self) -> Result<Vec<Permutation>> {
        if !self.is_complete() {
            return Err(Error::IncompleteTable);
        }
        let width = 2 * self.generators;
        Ok((0..self.generators)
            .map(|g| {
                let images = (0..self.rows)
                    .map(|c| self.table[c * width + 2 * g])
                    .collect();
                Permutation::from_images_unchecked(images)
            })
            .collect())
    }

    pub fn to_perm_group(&self) -> Result<PermGroup> {
        let gens = self.generator_permutations()?;
        PermGroup::new(self.rows, gens)
    }
}

struct Enumerator {
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    next: usize,
    max: usize,
    queue: Vec<u32>,
    capped: bool,
}

impl Enumerator {
    fn new(generators: usize, max: usize) -> Self {
        let width = 2 * generators;
        let mut e = Enumerator {
            width,
            table: Vec::with_capacity(width * 1024),
            parent: Vec::with_capacity(1024),
            next: 0,
            max,
            queue: Vec::new(),
            capped: false,
        };
        e.new_coset();
        e
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.width + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.width + col] = v;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_coset(&mut self) -> Option<u32> {
        if self.next >= self.max {
            self.capped = true;
            return None;
        }
        let c = self.next as u32;
        self.next += 1;
        self.table.extend(std::iter::repeat_n(NONE, self.width));
        self.parent.push(c);
        Some(c)
    }

    fn define(&mut self, c: u32, col: usize) -> bool {
        match self.new_coset() {
            Some(d) => {
                self.set(c, col, d);
                self.set(d, col ^ 1, c);
                true
            }
            None => false,
        }
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for col in 0..self.width {
                let f = self.get(e, col);
                if f == NONE {
                    continue;
                }
                self.set(f, col ^ 1, NONE);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, col);
                if ex != NONE {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, col ^ 1);
                    if fx != NONE {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, col, f1);
                        self.set(f1, col ^ 1, e1);
                    }
                }
            }
        }
    }

    /// Scans `w` from coset `c`, defining new cosets until it closes.
    fn scan_and_fill(&mut self, c: u32, w: &[usize]) {
        if w.is_empty() {
            return;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i && self.get(b, w[j] ^ 1) != NONE {
                b = self.get(b, w[j] ^ 1);
                if j == 0 {
                    // whole word traced backwards
                    if f != b {
                        self.coincidence(f, b);
                    }
                    return;
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return;
            } else if i == j {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return;
            } else if !self.define(f, w[i]) {
                return;
            }
        }
    }

    fn run(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) {
        for w in subgroup {
            let r = self.rep(0);
            self.scan_and_fill(r, w);
            if self.capped {
                return;
            }
        }
        let mut c = 0u32;
        while (c as usize) < self.next {
            if self.is_live(c) {
                for r in relators {
                    self.scan_and_fill(c, r);
                    if self.capped || !self.is_live(c) {
                        break;
                    }
                }
                if self.capped {
                    return;
                }
                if self.is_live(c) {
                    for col in 0..self.width {
                        if self.get(c, col) == NONE && !self.define(c, col) {
                            return;
                        }
                    }
                }
            }
            c += 1;
        }
    }

    /// Renumbers live cosets in breadth-first order by column.
    fn standardize(&self) -> (usize, Vec<u32>) {
        let mut label = vec![NONE; self.next];
        let mut order = vec![0u32];
        label[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for col in 0..self.width {
                let d = self.get(c, col);
                if d != NONE && label[d as usize] == NONE {
                    label[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
            i += 1;
        }
        let mut table = vec![NONE; order.len() * self.width];
        for (new, &old) in order.iter().enumerate() {
            for col in 0..self.width {
                let d = self.get(old, col);
                table[new * self.width + col] = if d == NONE { NONE } else { label[d as usize] };
            }
        }
        (order.len(), table)
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// given by `presentation`.
pub fn todd_coxeter(
    presentation: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> CosetTable {
    let gens = presentation.generator_count();
    let columns = |w: &Word| -> Vec<usize> { w.letters().iter().map(|l| l.column()).collect() };
    let relators: Vec<Vec<usize>> = presentation.relators().iter().map(columns).collect();
    let sub: Vec<Vec<usize>> = subgroup.iter().map(columns).collect();
    let mut e = Enumerator::new(gens, max_cosets.max(1));
    e.run(&relators, &sub);
    if e.capped {
        let live = (0..e.next as u32).filter(|&c| e.is_live(c)).count();
        return CosetTable {
            generators: gens,
            rows: live,
            table: Vec::new(),
            status: TableStatus::Capped,
            defined: e.next,
        };
    }
    let (rows, table) = e.standardize();
    CosetTable {
        generators: gens,
        rows,
        table,
        status: TableStatus::Complete,
        defined: e.next,
    }
}

/// Index of the trivial subgroup, i.e. the group order, or an error when the
/// enumeration is capped.
pub fn group_order(presentation: &Presentation, max_cosets: usize) -> Result<usize> {
    let t = todd_coxeter(presentation, &[], max_cosets);
    if t.is_complete() {
        Ok(t.len())
    } else {
        Err(Error::EnumerationCapped { cap: max_cosets })
    }
}
