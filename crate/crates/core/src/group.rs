//! Finite permutation groups backed by a deterministic stabilizer chain.
//!
//! Base points are chosen as the smallest point moved by the first strong
//! generator that fixes every earlier base point, so transversals, coset
//! labels and element enumeration order are reproducible from run to run.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::perm::Permutation;

const NONE: u32 = u32::MAX;

/// Default cap on the order of the smaller group in [`PermGroup::intersect`].
pub const DEFAULT_INTERSECTION_CAP: u128 = 1_000_000;

/// One step of a straight-line program over the input generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlpStep {
    Identity,
    Generator(usize),
    Product(usize, usize),
    Inverse(usize),
}

/// Straight-line programs recording how every strong generator and
/// transversal element was obtained from the input generators.
#[derive(Debug, Clone, Default)]
pub struct Slp {
    steps: Vec<SlpStep>,
}

impl Slp {
    fn push(&mut self, step: SlpStep) -> usize {
        self.steps.push(step);
        self.steps.len() - 1
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step(&self, node: usize) -> SlpStep {
        self.steps[node]
    }

    /// Evaluates `node` on the given generator images.
    pub fn evaluate(&self, node: usize, generators: &[Permutation], degree: usize) -> Permutation {
        let mut memo: HashMap<usize, Permutation> = HashMap::new();
        self.eval_rec(node, generators, degree, &mut memo)
    }

    fn eval_rec(
        &self,
        node: usize,
        generators: &[Permutation],
        degree: usize,
        memo: &mut HashMap<usize, Permutation>,
    ) -> Permutation {
        if let Some(p) = memo.get(&node) {
            return p.clone();
        }
        let value = match self.steps[node] {
            SlpStep::Identity => Permutation::identity(degree),
            SlpStep::Generator(i) => generators[i].clone(),
            SlpStep::Product(a, b) => {
                let pa = self.eval_rec(a, generators, degree, memo);
                let pb = self.eval_rec(b, generators, degree, memo);
                pa.then(&pb)
            }
            SlpStep::Inverse(a) => self.eval_rec(a, generators, degree, memo).inverse(),
        };
        memo.insert(node, value.clone());
        value
    }

    /// Expands `node` into a word of `(generator, exponent ±1)` letters, giving
    /// up once the word would exceed `limit` letters.
    pub fn to_word(&self, node: usize, limit: usize) -> Option<Vec<(usize, i8)>> {
        let mut out = Vec::new();
        if self.expand(node, false, limit, &mut out) {
            // cancel adjacent inverse pairs
            let mut reduced: Vec<(usize, i8)> = Vec::with_capacity(out.len());
            for l in out {
                if let Some(&last) = reduced.last() {
                    if last.0 == l.0 && last.1 == -l.1 {
                        reduced.pop();
                        continue;
                    }
                }
                reduced.push(l);
            }
            Some(reduced)
        } else {
            None
        }
    }

    fn expand(
        &self,
        node: usize,
        inverted: bool,
        limit: usize,
        out: &mut Vec<(usize, i8)>,
    ) -> bool {
        if out.len() > limit {
            return false;
        }
        match self.steps[node] {
            SlpStep::Identity => true,
            SlpStep::Generator(i) => {
                out.push((i, if inverted { -1 } else { 1 }));
                out.len() <= limit
            }
            SlpStep::Product(a, b) => {
                if inverted {
                    self.expand(b, true, limit, out) && self.expand(a, true, limit, out)
                } else {
                    self.expand(a, false, limit, out) && self.expand(b, false, limit, out)
                }
            }
            SlpStep::Inverse(a) => self.expand(a, !inverted, limit, out),
        }
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: u32,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    position: Vec<u32>,
    reps: Vec<Permutation>,
    reps_inv: Vec<Permutation>,
    rep_slp: Vec<usize>,
    checked_points: usize,
    checked_gens: usize,
}

impl Level {
    fn new(base: u32, degree: usize, identity_slp: usize) -> Self {
        let mut position = vec![NONE; degree];
        position[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            position,
            reps: vec![Permutation::identity(degree)],
            reps_inv: vec![Permutation::identity(degree)],
            rep_slp: vec![identity_slp],
            checked_points: 0,
            checked_gens: 0,
        }
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Debug, Clone)]
struct StabChain {
    levels: Vec<Level>,
    strong: Vec<Permutation>,
    strong_slp: Vec<usize>,
    slp: Slp,
}

struct Residue {
    perm: Permutation,
    slp_parts: (usize, usize, usize),
    trail: Vec<(usize, usize)>,
    stop: usize,
}

impl StabChain {
    fn build(degree: usize, generators: &[Permutation], order_bound: Option<u128>) -> Self {
        let mut slp = Slp::default();
        let identity_slp = slp.push(SlpStep::Identity);
        let mut chain = StabChain {
            levels: Vec::new(),
            strong: Vec::new(),
            strong_slp: Vec::new(),
            slp,
        };
        for (i, g) in generators.iter().enumerate() {
            if g.is_identity() {
                continue;
            }
            let node = chain.slp.push(SlpStep::Generator(i));
            chain.strong.push(g.clone());
            chain.strong_slp.push(node);
        }
        for s in 0..chain.strong.len() {
            let g = &chain.strong[s];
            if chain.levels.iter().all(|l| g.image(l.base) == l.base) {
                let base = g.smallest_moved_point().expect("non-identity");
                chain.levels.push(Level::new(base, degree, identity_slp));
            }
        }
        for l in 0..chain.levels.len() {
            let bases: Vec<u32> = chain.levels[..l].iter().map(|x| x.base).collect();
            chain.levels[l].gens = (0..chain.strong.len())
                .filter(|&s| bases.iter().all(|&b| chain.strong[s].image(b) == b))
                .collect();
            chain.extend_orbit(l);
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            if let Some(bound) = order_bound {
                if chain.order() >= bound {
                    break;
                }
            }
            match chain.find_residue(i as usize) {
                None => i -= 1,
                Some(res) => {
                    let j = res.stop;
                    chain.add_strong(i as usize, res, degree, identity_slp);
                    i = j as isize;
                }
            }
        }
        chain
    }

    fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    fn extend_orbit(&mut self, l: usize) {
        let StabChain {
            levels,
            strong,
            strong_slp,
            slp,
        } = self;
        let level = &mut levels[l];
        let mut idx = 0;
        while idx < level.orbit.len() {
            let point = level.orbit[idx];
            for &s in &level.gens {
                let img = strong[s].image(point);
                if level.position[img as usize] == NONE {
                    level.position[img as usize] = level.orbit.len() as u32;
                    level.orbit.push(img);
                    let rep = level.reps[idx].then(&strong[s]);
                    level.reps_inv.push(rep.inverse());
                    level.reps.push(rep);
                    let node = slp.push(SlpStep::Product(level.rep_slp[idx], strong_slp[s]));
                    level.rep_slp.push(node);
                }
            }
            idx += 1;
        }
    }

    /// Looks for a Schreier generator at level `i` that does not sift through
    /// the levels below it.
    fn find_residue(&mut self, i: usize) -> Option<Residue> {
        let n_points = self.levels[i].orbit.len();
        let n_gens = self.levels[i].gens.len();
        let (cp, cg) = (self.levels[i].checked_points, self.levels[i].checked_gens);
        for pos in 0..n_points {
            for gi in 0..n_gens {
                if pos < cp && gi < cg {
                    continue;
                }
                let level = &self.levels[i];
                let s = level.gens[gi];
                let sperm = &self.strong[s];
                let target = level.position[sperm.image(level.orbit[pos]) as usize] as usize;
                let rep = &level.reps[pos];
                let back = &level.reps_inv[target];
                // rep * s * back^-1 ... skip trivial Schreier generators without allocating
                let trivial = rep
                    .images()
                    .iter()
                    .enumerate()
                    .all(|(x, &y)| back.image(sperm.image(y)) == x as u32);
                if trivial {
                    continue;
                }
                let h = rep.then(sperm).then(back);
                let (perm, stop, trail) = self.sift(h, i + 1);
                if stop < self.levels.len() || !perm.is_identity() {
                    let level = &self.levels[i];
                    return Some(Residue {
                        perm,
                        slp_parts: (
                            level.rep_slp[pos],
                            self.strong_slp[s],
                            level.rep_slp[target],
                        ),
                        trail,
                        stop,
                    });
                }
            }
        }
        self.levels[i].checked_points = n_points;
        self.levels[i].checked_gens = n_gens;
        None
    }

    fn sift(&self, mut h: Permutation, from: usize) -> (Permutation, usize, Vec<(usize, usize)>) {
        let mut trail = Vec::new();
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let p = level.position[h.image(level.base) as usize];
            if p == NONE {
                return (h, l, trail);
            }
            h = h.then(&level.reps_inv[p as usize]);
            trail.push((l, p as usize));
        }
        (h, self.levels.len(), trail)
    }

    fn add_strong(&mut self, i: usize, res: Residue, degree: usize, identity_slp: usize) {
        let (a, b, c) = res.slp_parts;
        let ab = self.slp.push(SlpStep::Product(a, b));
        let c_inv = self.slp.push(SlpStep::Inverse(c));
        let mut node = self.slp.push(SlpStep::Product(ab, c_inv));
        for &(l, p) in &res.trail {
            let inv = self.slp.push(SlpStep::Inverse(self.levels[l].rep_slp[p]));
            node = self.slp.push(SlpStep::Product(node, inv));
        }
        let idx = self.strong.len();
        let j = res.stop;
        if j == self.levels.len() {
            let base = res
                .perm
                .smallest_moved_point()
                .expect("non-identity residue");
            self.levels.push(Level::new(base, degree, identity_slp));
        }
        self.strong.push(res.perm);
        self.strong_slp.push(node);
        for l in (i + 1)..=j {
            self.levels[l].gens.push(idx);
            self.extend_orbit(l);
        }
    }

    fn sifts_to_identity(&self, p: &Permutation) -> bool {
        let (h, stop, _) = self.sift(p.clone(), 0);
        stop == self.levels.len() && h.is_identity()
    }
}

/// A finite permutation group given by generators; the stabilizer chain is
/// built on first use and shared between clones.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    order_bound: Option<u128>,
    chain: OnceLock<Arc<StabChain>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            order_bound: None,
            chain: OnceLock::new(),
        })
    }

    /// Like [`PermGroup::new`], with a known upper bound on the order that lets
    /// the chain construction stop as soon as the bound is reached. The bound
    /// must be correct (e.g. the order of a group this one is a quotient of).
    pub fn with_order_bound(
        degree: usize,
        generators: Vec<Permutation>,
        bound: u128,
    ) -> Result<Self> {
        let mut g = Self::new(degree, generators)?;
        g.order_bound = Some(bound);
        Ok(g)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            order_bound: None,
            chain: OnceLock::new(),
        }
    }

    /// Symmetric group on `degree` points (for tests and small examples).
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[vec![0, 1]]).unwrap());
        }
        if degree >= 3 {
            gens.push(Permutation::from_cycles(degree, &[(0..degree as u32).collect()]).unwrap());
        }
        PermGroup::new(degree, gens).unwrap()
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            Arc::new(StabChain::build(
                self.degree,
                &self.generators,
                self.order_bound,
            ))
        })
    }

    /// Exact order as the product of the basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.is_identity())
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain().levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.chain().strong
    }

    /// The straight-line program and, for each strong generator, the node
    /// expressing it in the input generators.
    pub fn strong_generator_witnesses(&self) -> (&Slp, &[usize]) {
        let chain = self.chain();
        (&chain.slp, &chain.strong_slp)
    }

    /// Expresses a member of the group as a word in the input generators.
    pub fn word_for(&self, p: &Permutation, limit: usize) -> Option<Vec<(usize, i8)>> {
        if p.degree() != self.degree {
            return None;
        }
        let chain = self.chain();
        let mut h = p.clone();
        let mut factors = Vec::new();
        for level in &chain.levels {
            let pos = level.position[h.image(level.base) as usize];
            if pos == NONE {
                return None;
            }
            h = h.then(&level.reps_inv[pos as usize]);
            factors.push(level.rep_slp[pos as usize]);
        }
        if !h.is_identity() {
            return None;
        }
        // p = u_k ... u_1, with u_1 found first
        let mut word = Vec::new();
        for &node in factors.iter().rev() {
            word.extend(chain.slp.to_word(node, limit)?);
            if word.len() > limit {
                return None;
            }
        }
        Some(word)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(self.chain().sifts_to_identity(p))
    }

    pub fn contains_all(&self, ps: &[Permutation]) -> Result<bool> {
        for p in ps {
            if !self.contains(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Calls `f` on every element, in a fixed order determined by the chain.
    pub fn for_each_element<F>(&self, mut f: F)
    where
        F: FnMut(&Permutation) -> ControlFlow<()>,
    {
        let chain = self.chain();
        let identity = Permutation::identity(self.degree);
        if chain.levels.is_empty() {
            let _ = f(&identity);
            return;
        }
        let _ = walk(&chain.levels, chain.levels.len() - 1, &identity, &mut f);

        fn walk<F>(levels: &[Level], l: usize, prefix: &Permutation, f: &mut F) -> ControlFlow<()>
        where
            F: FnMut(&Permutation) -> ControlFlow<()>,
        {
            for rep in &levels[l].reps {
                let p = prefix.then(rep);
                if l == 0 {
                    f(&p)?;
                } else {
                    walk(levels, l - 1, &p, f)?;
                }
            }
            ControlFlow::Continue(())
        }
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.order().min(1 << 20) as usize);
        self.for_each_element(|p| {
            out.push(p.clone());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point as usize] = true;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit
    }

    /// Stabilizer of `point`, from Schreier generators that are not already
    /// in the subgroup built so far.
    pub fn stabilizer(&self, point: u32) -> PermGroup {
        let mut position = vec![NONE; self.degree];
        let mut orbit = vec![point];
        let mut reps = vec![Permutation::identity(self.degree)];
        position[point as usize] = 0;
        let mut i = 0;
        while i < orbit.len() {
            for g in &self.generators {
                let y = g.image(orbit[i]);
                if position[y as usize] == NONE {
                    position[y as usize] = orbit.len() as u32;
                    orbit.push(y);
                    reps.push(reps[i].then(g));
                }
            }
            i += 1;
        }
        let target = self.order() / orbit.len() as u128;
        let mut stab = PermGroup::trivial(self.degree);
        let mut gens = Vec::new();
        'outer: for (k, rep) in reps.iter().enumerate() {
            for g in &self.generators {
                if stab.order() == target {
                    break 'outer;
                }
                let t = position[g.image(orbit[k]) as usize] as usize;
                let s = rep.then(g).then(&reps[t].inverse());
                if !s.is_identity() && !stab.contains(&s).unwrap_or(true) {
                    gens.push(s);
                    stab = PermGroup::new(self.degree, gens.clone()).expect("same degree");
                }
            }
        }
        stab
    }

    /// The subgroup generated by `gens`, each of which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        for (i, g) in gens.iter().enumerate() {
            if !self.contains(g)? {
                return Err(Error::NotInGroup { index: i });
            }
        }
        PermGroup::new(self.degree, gens)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self
                .generators
                .iter()
                .all(|g| other.contains(g).unwrap_or(false))
    }

    /// Equality as subsets of the symmetric group.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// `x^-1 H x`.
    pub fn conjugate(&self, x: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|g| g.conjugate_by(x)).collect();
        PermGroup::new(self.degree, gens).expect("same degree")
    }

    /// The group generated by `self` and `other`.
    pub fn join(&self, other: &PermGroup) -> PermGroup {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        PermGroup::new(self.degree, gens).expect("same degree")
    }

    /// Exact intersection: enumerates the smaller group and keeps the elements
    /// that lie in the larger one.
    pub fn intersect(&self, other: &PermGroup, cap: u128) -> Result<PermGroup> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let (small, large) = if other.order() < self.order() {
            (other, self)
        } else {
            (self, other)
        };
        if small.order() > cap {
            return Err(Error::IntersectionTooLarge {
                order: small.order(),
                cap,
            });
        }
        if small.is_subgroup_of(large) {
            return Ok(small.clone());
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = PermGroup::trivial(self.degree);
        small.for_each_element(|p| {
            if !p.is_identity()
                && large.chain().sifts_to_identity(p)
                && !current.chain().sifts_to_identity(p)
            {
                gens.push(p.clone());
                current = PermGroup::new(self.degree, gens.clone()).expect("same degree");
            }
            ControlFlow::Continue(())
        });
        Ok(current)
    }

    /// Largest normal subgroup of `self` contained in `h`.
    pub fn core(&self, h: &PermGroup, cap: u128) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::Precondition(
                "core: subgroup is not contained in the group".into(),
            ));
        }
        let mut k = h.clone();
        loop {
            let mut changed = false;
            for x in &self.generators {
                let kx = k.conjugate(x);
                if !k.is_subgroup_of(&kx) {
                    k = k.intersect(&kx, cap)?;
                    changed = true;
                }
            }
            if !changed || k.is_trivial() {
                return Ok(k);
            }
        }
    }

    /// Minimal element of the right coset `H g` in the order of base images of `H`.
    pub fn canonical_coset_element(h: &PermGroup, g: &Permutation) -> Permutation {
        let mut cur = g.clone();
        for level in &h.chain().levels {
            let mut best = 0usize;
            let mut best_img = u32::MAX;
            for (pos, &pt) in level.orbit.iter().enumerate() {
                let img = cur.image(pt);
                if img < best_img {
                    best_img = img;
                    best = pos;
                }
            }
            if best != 0 {
                cur = level.reps[best].then(&cur);
            }
        }
        cur
    }

    /// Action of `self` by right multiplication on the right cosets of `h`.
    pub fn coset_action(&self, h: &PermGroup, cap: usize) -> Result<CosetAction> {
        if !h.is_subgroup_of(self) {
            return Err(Error::Precondition(
                "coset_action: subgroup is not contained in the group".into(),
            ));
        }
        let index = self.order() / h.order();
        if index > cap as u128 {
            return Err(Error::IndexTooLarge { index, cap });
        }
        let index = index as usize;
        let base = self.base();
        let key = |p: &Permutation| -> Vec<u32> {
            let c = PermGroup::canonical_coset_element(h, p);
            base.iter().map(|&b| c.image(b)).collect()
        };
        let mut labels: HashMap<Vec<u32>, u32> = HashMap::with_capacity(index);
        let mut reps = vec![Permutation::identity(self.degree)];
        let mut tree = vec![None];
        labels.insert(key(&reps[0]), 0);
        let mut images = vec![vec![0u32; index]; self.generators.len()];
        let mut c = 0;
        while c < reps.len() {
            for (gi, s) in self.generators.iter().enumerate() {
                let y = reps[c].then(s);
                let k = key(&y);
                let next = reps.len() as u32;
                let label = *labels.entry(k).or_insert(next);
                if label == next {
                    if reps.len() >= index {
                        return Err(Error::Precondition(
                            "coset_action: more cosets than the index predicts".into(),
                        ));
                    }
                    reps.push(y);
                    tree.push(Some((c as u32, gi)));
                }
                images[gi][c] = label;
            }
            c += 1;
        }
        debug_assert_eq!(reps.len(), index);
        let gens = images
            .into_iter()
            .map(Permutation::from_images_unchecked)
            .collect();
        let action = PermGroup::with_order_bound(index, gens, self.order())?;
        Ok(CosetAction {
            action,
            reps,
            tree,
            labels,
            subgroup: h.clone(),
            base,
        })
    }
}

/// The permutation action on right cosets `H g`, labelled `0..index` in
/// breadth-first order from `H` itself.
#[derive(Clone)]
pub struct CosetAction {
    pub action: PermGroup,
    reps: Vec<Permutation>,
    tree: Vec<Option<(u32, usize)>>,
    labels: HashMap<Vec<u32>, u32>,
    subgroup: PermGroup,
    base: Vec<u32>,
}

impl fmt::Debug for CosetAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CosetAction")
            .field("index", &self.reps.len())
            .finish()
    }
}

impl CosetAction {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    /// Transversal element for each label.
    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn representative(&self, label: u32) -> &Permutation {
        &self.reps[label as usize]
    }

    /// Breadth-first tree: label -> (parent label, generator index).
    pub fn tree(&self) -> &[Option<(u32, usize)>] {
        &self.tree
    }

    /// Label of the coset `H x`.
    pub fn coset_of(&self, x: &Permutation) -> u32 {
        let c = PermGroup::canonical_coset_element(&self.subgroup, x);
        let key: Vec<u32> = self.base.iter().map(|&b| c.image(b)).collect();
        *self.labels.get(&key).expect("element of the parent group")
    }

    /// The permutation of coset labels induced by right multiplication with `x`.
    pub fn action_of(&self, x: &Permutation) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|r| self.coset_of(&r.then(x)))
            .collect();
        Permutation::from_images_unchecked(images)
    }
}
