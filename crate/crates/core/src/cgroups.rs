//! C-groups and C⁺-groups: intersection properties, diagrams, rotation
//! subgroups and the inverting automorphism.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A group with an ordered generating set of involutions.
#[derive(Debug, Clone)]
pub struct CGroup {
    group: PermGroup,
    gens: Vec<Permutation>,
    diagram: Vec<Vec<u64>>,
}

impl CGroup {
    pub fn new(gens: Vec<Permutation>) -> Result<Self> {
        let degree = gens
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::Invalid("a C-group needs at least one generator".into()))?;
        let group = PermGroup::new(degree, gens.clone())?;
        Self::with_group(group, gens)
    }

    /// Like [`CGroup::new`] but reuses an already built group (for example
    /// one carrying an order bound).
    pub fn with_group(group: PermGroup, gens: Vec<Permutation>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.degree() != group.degree() {
                return Err(Error::DegreeMismatch {
                    expected: group.degree(),
                    found: g.degree(),
                });
            }
            let order = g.order();
            if order != 2 {
                return Err(Error::NotInvolution { index: i, order });
            }
        }
        let r = gens.len();
        let diagram = (0..r)
            .map(|i| (0..r).map(|j| gens[i].then(&gens[j]).order()).collect())
            .collect();
        Ok(CGroup {
            group,
            gens,
            diagram,
        })
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Matrix of orders `o(ρ_i ρ_j)`.
    pub fn diagram(&self) -> &[Vec<u64>] {
        &self.diagram
    }

    /// `G_J = ⟨ρ_j : j ∈ J⟩`.
    pub fn parabolic(&self, set: &[usize]) -> PermGroup {
        let gens = set.iter().map(|&j| self.gens[j].clone()).collect();
        PermGroup::new(self.group.degree(), gens).expect("common degree")
    }

    /// `G_i = ⟨ρ_j : j ≠ i⟩` for every `i`.
    pub fn maximal_parabolics(&self) -> Vec<PermGroup> {
        (0..self.rank())
            .map(|i| {
                let set: Vec<usize> = (0..self.rank()).filter(|&j| j != i).collect();
                self.parabolic(&set)
            })
            .collect()
    }

    /// `G⁺ = ⟨ρ_0 ρ_j⟩` and its index in `G` (1 or 2).
    pub fn rotation_subgroup(&self) -> (CPlusGroup, u32) {
        let rgens: Vec<Permutation> = (1..self.rank())
            .map(|j| self.gens[0].then(&self.gens[j]))
            .collect();
        let plus = CPlusGroup::from_parts(self.group.degree(), rgens);
        let index = if plus.group.order() == 0 {
            1
        } else {
            (self.group.order() / plus.group.order()) as u32
        };
        (plus, index)
    }

    pub fn coxeter_dot(&self) -> String {
        diagram_dot("coxeter", &self.diagram, "rho", true)
    }
}

/// A group with distinguished elements `α_1, …, α_{r-1}`; `α_0` is the identity.
#[derive(Debug, Clone)]
pub struct CPlusGroup {
    group: PermGroup,
    rgens: Vec<Permutation>,
    bdiagram: Vec<Vec<u64>>,
}

impl CPlusGroup {
    pub fn new(rgens: Vec<Permutation>) -> Result<Self> {
        let degree = rgens
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::Invalid("a C+-group needs at least one rotation".into()))?;
        if let Some(g) = rgens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(Self::from_parts(degree, rgens))
    }

    pub fn with_group(group: PermGroup, rgens: Vec<Permutation>) -> Result<Self> {
        if !group.contains_all(&rgens)? {
            return Err(Error::Precondition(
                "rotations are not in the given group".into(),
            ));
        }
        let mut c = Self::from_parts(group.degree(), rgens);
        if c.group.order() != group.order() {
            return Err(Error::Precondition(
                "rotations do not generate the given group".into(),
            ));
        }
        c.group = group;
        Ok(c)
    }

    fn from_parts(degree: usize, rgens: Vec<Permutation>) -> Self {
        let group = PermGroup::new(degree, rgens.clone()).expect("common degree");
        let mut c = CPlusGroup {
            group,
            rgens,
            bdiagram: Vec::new(),
        };
        let r = c.rank();
        c.bdiagram = (0..r)
            .map(|i| (0..r).map(|j| c.alpha_pair(i, j).order()).collect())
            .collect();
        c
    }

    pub fn rank(&self) -> usize {
        self.rgens.len() + 1
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// `α_1, …, α_{r-1}`.
    pub fn rotations(&self) -> &[Permutation] {
        &self.rgens
    }

    /// `α_i`, with `α_0` the identity.
    pub fn alpha(&self, i: usize) -> Permutation {
        if i == 0 {
            Permutation::identity(self.group.degree())
        } else {
            self.rgens[i - 1].clone()
        }
    }

    /// `α_{ij} = α_i⁻¹ α_j`.
    pub fn alpha_pair(&self, i: usize, j: usize) -> Permutation {
        self.alpha(i).inverse().then(&self.alpha(j))
    }

    /// Matrix of orders `o(α_i⁻¹ α_j)`.
    pub fn bdiagram(&self) -> &[Vec<u64>] {
        &self.bdiagram
    }

    /// `G⁺_I = ⟨α_i⁻¹ α_j : i, j ∈ I⟩`.
    pub fn parabolic(&self, set: &[usize]) -> PermGroup {
        let mut gens = Vec::new();
        if let Some((&first, rest)) = set.split_first() {
            for &j in rest {
                gens.push(self.alpha_pair(first, j));
            }
        }
        PermGroup::new(self.group.degree(), gens).expect("common degree")
    }

    pub fn bdiagram_dot(&self) -> String {
        diagram_dot("b_diagram", &self.bdiagram, "alpha", false)
    }
}

/// Outcome of an intersection-property check.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct IpReport {
    pub pass: bool,
    /// Every failing pair, in the order checked.
    pub failures: Vec<IpFailure>,
}

impl IpReport {
    pub fn first_failure(&self) -> Option<&IpFailure> {
        self.failures.first()
    }

    pub fn fails_at(&self, i: &[usize], j: &[usize]) -> bool {
        self.failures
            .iter()
            .any(|f| (f.i == i && f.j == j) || (f.i == j && f.j == i))
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct IpFailure {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub intersection_order: u128,
    pub expected_order: u128,
    /// An element of the intersection outside the expected subgroup.
    pub witness: String,
}

fn subsets(r: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..(1 << r))
        .map(|m| (0..r).filter(|i| m & (1 << i) != 0).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    all
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn meet(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

/// Order of `a ∩ b` and an element of it outside `expected`, by enumerating
/// the smaller of the two groups.
fn intersection_excess(
    a: &PermGroup,
    b: &PermGroup,
    expected: &PermGroup,
    cap: u128,
) -> Result<(u128, Option<Permutation>)> {
    let (small, large) = if b.order() < a.order() {
        (b, a)
    } else {
        (a, b)
    };
    if small.order() > cap {
        return Err(Error::IntersectionTooLarge {
            order: small.order(),
            cap,
        });
    }
    let mut count = 0u128;
    let mut witness = None;
    small.for_each_element(|p| {
        if large.contains(p).unwrap_or(false) {
            count += 1;
            if witness.is_none() && !expected.contains(p).unwrap_or(false) {
                witness = Some(p.clone());
            }
        }
        ControlFlow::Continue(())
    });
    Ok((count, witness))
}

fn check_pairs<F>(r: usize, min_size: usize, cap: u128, parabolic: F) -> Result<IpReport>
where
    F: Fn(&[usize]) -> PermGroup,
{
    let sets: Vec<Vec<usize>> = subsets(r)
        .into_iter()
        .filter(|s| s.len() >= min_size)
        .collect();
    let mut memo: HashMap<Vec<usize>, PermGroup> = HashMap::new();
    let mut get = |s: &[usize]| -> PermGroup {
        memo.entry(s.to_vec())
            .or_insert_with(|| parabolic(s))
            .clone()
    };
    let mut failures = Vec::new();
    for (x, i) in sets.iter().enumerate() {
        for j in &sets[x + 1..] {
            if is_subset(i, j) || is_subset(j, i) {
                continue;
            }
            let k = meet(i, j);
            let (gi, gj, gk) = (get(i), get(j), get(&k));
            // the meet always lies in both, so only the orders need comparing
            let (order, witness) = intersection_excess(&gi, &gj, &gk, cap)?;
            if order != gk.order() {
                failures.push(IpFailure {
                    i: i.clone(),
                    j: j.clone(),
                    intersection_order: order,
                    expected_order: gk.order(),
                    witness: witness.map(|w| w.to_cycle_string()).unwrap_or_default(),
                });
            }
        }
    }
    Ok(IpReport {
        pass: failures.is_empty(),
        failures,
    })
}

/// Checks `G_I ∩ G_J = G_{I∩J}` for all incomparable `I, J`.
pub fn check_ip(c: &CGroup, cap: u128) -> Result<IpReport> {
    check_pairs(c.rank(), 0, cap, |s| c.parabolic(s))
}

/// Checks `G⁺_I ∩ G⁺_J = G⁺_{I∩J}` for all incomparable `I, J` with `|I|, |J| ≥ 2`.
pub fn check_ip_plus(c: &CPlusGroup, cap: u128) -> Result<IpReport> {
    check_pairs(c.rank(), 2, cap, |s| c.parabolic(s))
}

/// An ordering of the generators under which non-adjacent generators commute.
pub fn is_string(c: &CGroup) -> Option<Vec<usize>> {
    let r = c.rank();
    let d = c.diagram();
    let mut order: Vec<usize> = (0..r).collect();
    loop {
        let ok = (0..r).all(|a| (a + 2..r).all(|b| d[order[a]][order[b]] <= 2));
        if ok {
            return Some(order);
        }
        if !next_permutation(&mut order) {
            return None;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct IndependenceReport {
    pub pass: bool,
    /// Indices `i ≥ 1` with `α_i ∈ ⟨α_j : j ≠ i⟩`.
    pub offending: Vec<usize>,
}

/// No `α_i` lies in the group generated by the others.
pub fn check_independent(c: &CPlusGroup) -> IndependenceReport {
    let n = c.rotations().len();
    let offending: Vec<usize> = (0..n)
        .filter(|&i| {
            let others: Vec<Permutation> = (0..n)
                .filter(|&j| j != i)
                .map(|j| c.rotations()[j].clone())
                .collect();
            let h = PermGroup::new(c.group().degree(), others).expect("common degree");
            h.contains(&c.rotations()[i]).unwrap_or(false)
        })
        .map(|i| i + 1)
        .collect();
    IndependenceReport {
        pass: offending.is_empty(),
        offending,
    }
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct InvertingAutomorphism {
    pub exists: bool,
    /// Order of `⟨(α_i, α_i⁻¹)⟩` inside `G⁺ × G⁺`.
    pub graph_order: u128,
    pub group_order: u128,
}

/// Decides whether `α_i ↦ α_i⁻¹` extends to an automorphism of `G⁺`.
pub fn inverting_automorphism_exists(c: &CPlusGroup) -> InvertingAutomorphism {
    let degree = c.group().degree();
    let gens: Vec<Permutation> = c
        .rotations()
        .iter()
        .map(|a| a.direct_sum(&a.inverse()))
        .collect();
    let d = PermGroup::new(2 * degree, gens).expect("doubled degree");
    let graph_order = d.order();
    let group_order = c.group().order();
    InvertingAutomorphism {
        exists: graph_order == group_order,
        graph_order,
        group_order,
    }
}

/// DOT drawing of a diagram: edges labelled 2 are omitted and label 3 is implicit.
fn diagram_dot(name: &str, m: &[Vec<u64>], prefix: &str, filled: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {name} {{");
    let style = if filled {
        "shape=circle, style=filled, fillcolor=black, fontcolor=white"
    } else {
        "shape=circle"
    };
    for i in 0..m.len() {
        let _ = writeln!(out, "  {i} [label=\"{prefix}{i}\", {style}];");
    }
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            match m[i][j] {
                0..=2 => {}
                3 => {
                    let _ = writeln!(out, "  {i} -- {j};");
                }
                k => {
                    let _ = writeln!(out, "  {i} -- {j} [label=\"{k}\"];");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(n)).unwrap()
    }

    /// [4,3] acting on the 8 vertices of the cube, labelled by bit vectors 1..8.
    fn cube() -> CGroup {
        CGroup::new(vec![
            p("(1,2)(3,4)(5,6)(7,8)", 8),
            p("(2,3)(6,7)", 8),
            p("(3,5)(4,6)", 8),
        ])
        .unwrap()
    }

    #[test]
    fn cube_group() {
        let c = cube();
        assert_eq!(c.group().order(), 48);
        assert_eq!(c.diagram()[0][1], 4);
        assert_eq!(c.diagram()[1][2], 3);
        assert_eq!(c.diagram()[0][2], 2);
        assert!(check_ip(&c, 1_000_000).unwrap().pass);
        assert_eq!(is_string(&c), Some(vec![0, 1, 2]));
        let (plus, index) = c.rotation_subgroup();
        assert_eq!(index, 2);
        assert_eq!(plus.group().order(), 24);
        assert!(check_ip_plus(&plus, 1_000_000).unwrap().pass);
        assert!(check_independent(&plus).pass);
        assert!(inverting_automorphism_exists(&plus).exists);
    }

    #[test]
    fn cube_parabolic_meet() {
        let c = cube();
        let a = c.parabolic(&[0, 1]);
        let b = c.parabolic(&[1, 2]);
        let m = a.intersect(&b, 1_000_000).unwrap();
        assert_eq!(m.order(), 2);
        assert!(m.contains(&c.generators()[1]).unwrap());
    }

    #[test]
    fn repeated_generator_fails_ip() {
        let r = p("(1,2)", 2);
        let c = CGroup::new(vec![r.clone(), r]).unwrap();
        let rep = check_ip(&c, 100).unwrap();
        assert!(!rep.pass);
        assert!(rep.fails_at(&[0], &[1]));
    }

    #[test]
    fn rejects_non_involutions() {
        let err = CGroup::new(vec![p("(1,2,3)", 3)]).unwrap_err();
        assert!(matches!(err, Error::NotInvolution { index: 0, order: 3 }));
    }

    #[test]
    fn rank_one_is_a_c_group() {
        let c = CGroup::new(vec![p("(1,2)", 2)]).unwrap();
        assert!(check_ip(&c, 100).unwrap().pass);
        assert_eq!(is_string(&c), Some(vec![0]));
    }

    #[test]
    fn rank_two_is_string_and_ip_plus_vacuous() {
        let c = CGroup::new(vec![p("(1,2)", 3), p("(2,3)", 3)]).unwrap();
        assert!(is_string(&c).is_some());
        let (plus, _) = c.rotation_subgroup();
        assert!(check_ip_plus(&plus, 100).unwrap().pass);
    }

    #[test]
    fn triangle_diagram_is_not_a_string() {
        // three reflections of the affine triangle group acting on a 3x3 torus
        let c = CGroup::new(vec![p("(1,2)", 3), p("(2,3)", 3), p("(1,3)", 3)]).unwrap();
        assert_eq!(is_string(&c), None);
    }

    #[test]
    fn repeated_rotation_is_dependent() {
        let a = p("(1,2,3)", 3);
        let c = CPlusGroup::new(vec![a.clone(), a]).unwrap();
        let rep = check_independent(&c);
        assert!(!rep.pass);
        assert!(rep.offending.contains(&2));
    }

    #[test]
    fn abelian_groups_admit_inversion() {
        let c = CPlusGroup::new(vec![p("(1,2,3,4,5)", 7), p("(6,7)", 7)]).unwrap();
        let inv = inverting_automorphism_exists(&c);
        assert!(inv.exists);
        assert_eq!(inv.graph_order, 10);
    }

    #[test]
    fn dot_output_follows_drawing_convention() {
        let dot = cube().coxeter_dot();
        assert!(dot.contains("0 -- 1 [label=\"4\"]"));
        assert!(dot.contains("1 -- 2;"));
        assert!(!dot.contains("0 -- 2"));
    }
}
