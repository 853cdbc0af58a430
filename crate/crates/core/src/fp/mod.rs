//! Finitely presented groups: words, presentations, coset enumeration and
//! faithful permutation representations of finite quotients.

mod enumerate;
mod presentation;
mod word;

pub use enumerate::{group_order, todd_coxeter, CosetTable, TableStatus, DEFAULT_MAX_COSETS};
pub use presentation::Presentation;
pub use word::{Letter, Word};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A finite group given by a presentation together with a faithful
/// permutation representation of small degree.
#[derive(Debug, Clone)]
pub struct FiniteQuotient {
    presentation: Presentation,
    order: usize,
    group: PermGroup,
    /// Generator subset whose cosets give the chosen representation.
    subgroup_generators: Vec<usize>,
}

impl FiniteQuotient {
    /// Enumerates the group, then looks for a faithful action on the cosets
    /// of a subgroup generated by some of the generators, preferring the
    /// smallest degree. Falls back to the regular representation.
    pub fn enumerate(presentation: &Presentation, max_cosets: usize) -> Result<Self> {
        let regular = todd_coxeter(presentation, &[], max_cosets);
        if !regular.is_complete() {
            return Err(Error::EnumerationCapped { cap: max_cosets });
        }
        let order = regular.len();
        let n = presentation.generator_count();
        let mut best: Option<(usize, Vec<usize>, Vec<Permutation>)> = None;
        if (2..=12).contains(&n) {
            let mut subsets: Vec<Vec<usize>> = (1u32..(1 << n) - 1)
                .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
                .collect();
            subsets.sort_by(|a: &Vec<usize>, b| b.len().cmp(&a.len()).then(a.cmp(b)));
            for subset in subsets {
                let words: Vec<Word> = subset.iter().map(|&g| Word::generator(g)).collect();
                let t = todd_coxeter(presentation, &words, order);
                if !t.is_complete() || t.len() < 2 {
                    continue;
                }
                if best.as_ref().is_some_and(|(deg, _, _)| *deg <= t.len()) {
                    continue;
                }
                let gens = t.generator_permutations()?;
                let g = PermGroup::with_order_bound(t.len(), gens.clone(), order as u128)?;
                if g.order() == order as u128 {
                    best = Some((t.len(), subset, gens));
                }
            }
        }
        let (degree, subgroup_generators, gens) = match best {
            Some(b) => b,
            None => (order, Vec::new(), regular.generator_permutations()?),
        };
        let group = PermGroup::with_order_bound(degree, gens, order as u128)?;
        Ok(FiniteQuotient {
            presentation: presentation.clone(),
            order,
            group,
            subgroup_generators,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Order as counted by the regular enumeration.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn generator_images(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn subgroup_generators(&self) -> &[usize] {
        &self.subgroup_generators
    }

    pub fn evaluate(&self, w: &Word) -> Result<Permutation> {
        w.evaluate(self.generator_images())
    }

    /// True when every relator evaluates to the identity.
    pub fn relators_hold(&self) -> Result<bool> {
        for r in self.presentation.relators() {
            if !self.evaluate(r)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
