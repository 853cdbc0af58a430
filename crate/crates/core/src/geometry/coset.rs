use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::cgroups::{CGroup, CPlusGroup};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{CosetAction, PermGroup};
use crate::perm::Permutation;
use crate::Caps;

use super::incidence::{Chambers, IncidenceSystem, SubSystem};

/// The coset geometry `Γ(G; (G_i))`: elements of type `i` are the right
/// cosets `G_i g`, incident when they intersect.
#[derive(Debug, Clone)]
pub struct CosetGeometry {
    group: PermGroup,
    parabolics: Vec<PermGroup>,
    actions: Vec<CosetAction>,
    system: IncidenceSystem,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GeometrySummary {
    pub rank: usize,
    pub group_order: u128,
    pub parabolic_orders: Vec<u128>,
    pub element_counts: Vec<usize>,
    pub chamber_count: usize,
}

impl CosetGeometry {
    pub fn build(group: PermGroup, parabolics: Vec<PermGroup>, caps: &Caps) -> Result<Self> {
        if parabolics.is_empty() {
            return Err(Error::Invalid("a geometry needs at least one type".into()));
        }
        let rank = parabolics.len();
        let actions = parabolics
            .iter()
            .map(|h| group.coset_action(h, caps.index))
            .collect::<Result<Vec<_>>>()?;
        let counts: Vec<usize> = actions.iter().map(CosetAction::index).collect();

        // sets[j][b][i]: labels of type i incident to element b of type j
        let mut sets: Vec<Vec<Vec<FixedBitSet>>> = Vec::with_capacity(rank);
        for j in 0..rank {
            let mut per_label: Vec<Vec<FixedBitSet>> = Vec::with_capacity(counts[j]);
            let base: Vec<FixedBitSet> = (0..rank)
                .map(|i| {
                    let mut set = FixedBitSet::with_capacity(counts[i]);
                    if i != j {
                        let gens: Vec<Permutation> = parabolics[j]
                            .generators()
                            .iter()
                            .map(|g| actions[i].action_of(g))
                            .collect();
                        let orbit = PermGroup::new(counts[i], gens)?.orbit(0);
                        for x in orbit {
                            set.insert(x as usize);
                        }
                    }
                    Ok(set)
                })
                .collect::<Result<_>>()?;
            per_label.push(base);
            for b in 1..counts[j] {
                let (parent, s) = actions[j].tree()[b].expect("non-root coset has a parent");
                let row = (0..rank)
                    .map(|i| {
                        let mut set = FixedBitSet::with_capacity(counts[i]);
                        if i != j {
                            let gen = &actions[i].action.generators()[s];
                            for x in per_label[parent as usize][i].ones() {
                                set.insert(gen.image(x as u32) as usize);
                            }
                        }
                        set
                    })
                    .collect();
                per_label.push(row);
            }
            sets.push(per_label);
        }
        let system = IncidenceSystem::from_neighbour_sets(counts, sets);
        Ok(CosetGeometry {
            group,
            parabolics,
            actions,
            system,
        })
    }

    /// Geometry of a C-group on its maximal parabolics `G_i = ⟨ρ_j : j ≠ i⟩`.
    pub fn from_cgroup(c: &CGroup, caps: &Caps) -> Result<Self> {
        Self::build(c.group().clone(), c.maximal_parabolics(), caps)
    }

    /// Construction from a group with independent generators `α_1..α_{r-1}`:
    /// `G⁺_i = ⟨α_j : j ≠ i⟩` for `i ≥ 1` and `G⁺_0 = ⟨α_1⁻¹ α_j : j ≥ 2⟩`.
    pub fn from_cplus(c: &CPlusGroup, caps: &Caps) -> Result<Self> {
        let r = c.rank();
        if r < 3 {
            return Err(Error::Precondition(format!(
                "the rotation construction needs rank at least 3, got {r}"
            )));
        }
        Self::build(c.group().clone(), cplus_parabolics(c), caps)
    }

    /// The geometry on which `gens` act as type-preserving automorphisms of
    /// `system`, with parabolics the stabilizers of the elements of `chamber`.
    /// Recovers `system` whenever the group is transitive on flags of rank 2.
    pub fn from_action(
        system: &IncidenceSystem,
        gens: Vec<Permutation>,
        chamber: &[u32],
        caps: &Caps,
    ) -> Result<Self> {
        let group = PermGroup::new(system.total(), gens)?;
        let parabolics = chamber
            .iter()
            .enumerate()
            .map(|(t, &l)| group.stabilizer(system.id(t, l)))
            .collect();
        Self::build(group, parabolics, caps)
    }

    pub fn rank(&self) -> usize {
        self.parabolics.len()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn parabolics(&self) -> &[PermGroup] {
        &self.parabolics
    }

    pub fn action(&self, t: usize) -> &CosetAction {
        &self.actions[t]
    }

    pub fn system(&self) -> &IncidenceSystem {
        &self.system
    }

    pub fn element_counts(&self) -> &[usize] {
        self.system.counts()
    }

    pub fn incident(&self, a: (usize, u32), b: (usize, u32)) -> bool {
        self.system
            .incident(self.system.id(a.0, a.1), self.system.id(b.0, b.1))
    }

    pub fn chambers(&self, exec: Exec) -> Chambers {
        self.system.chambers(exec)
    }

    /// The base chamber `{G_0, …, G_{r-1}}`: label 0 in every type.
    pub fn base_chamber(&self) -> Vec<u32> {
        vec![0; self.rank()]
    }

    /// Action of a group element on all elements, numbered as in the system.
    pub fn element_action(&self, g: &Permutation) -> Permutation {
        let mut images = Vec::with_capacity(self.system.total());
        for (t, act) in self.actions.iter().enumerate() {
            let off = self.system.id(t, 0);
            images.extend(act.action_of(g).images().iter().map(|&x| x + off));
        }
        Permutation::from_images_unchecked(images)
    }

    /// Actions of the group generators on all elements.
    pub fn generator_actions(&self) -> Vec<Permutation> {
        (0..self.group.generators().len())
            .map(|s| {
                let mut images = Vec::with_capacity(self.system.total());
                for (t, act) in self.actions.iter().enumerate() {
                    let off = self.system.id(t, 0);
                    images.extend(act.action.generators()[s].images().iter().map(|&x| x + off));
                }
                Permutation::from_images_unchecked(images)
            })
            .collect()
    }

    /// `G_J = ∩_{j∈J} G_j`, with `G_∅ = G`.
    pub fn parabolic_meet(&self, types: &[usize], caps: &Caps) -> Result<PermGroup> {
        let mut acc = self.group.clone();
        for &j in types {
            acc = acc.intersect(&self.parabolics[j], caps.intersection.into())?;
        }
        Ok(acc)
    }

    /// Residue of the base flag of type `types`, built from the group:
    /// `Γ(G_J; (G_J ∩ G_i)_{i ∉ J})`.
    pub fn group_residue(&self, types: &[usize], caps: &Caps) -> Result<CosetGeometry> {
        let gj = self.parabolic_meet(types, caps)?;
        let parabolics = (0..self.rank())
            .filter(|i| !types.contains(i))
            .map(|i| gj.intersect(&self.parabolics[i], caps.intersection.into()))
            .collect::<Result<Vec<_>>>()?;
        CosetGeometry::build(gj, parabolics, caps)
    }

    /// Residue of the base flag of type `types`, as an induced subsystem.
    pub fn graph_residue(&self, types: &[usize]) -> SubSystem {
        let flag: Vec<u32> = types.iter().map(|&t| self.system.id(t, 0)).collect();
        self.system.residue(&flag)
    }

    /// Labels in this geometry of the elements of a group residue built by
    /// [`CosetGeometry::group_residue`] for the same `types`.
    pub fn residue_embedding(&self, types: &[usize], residue: &CosetGeometry) -> Vec<Vec<u32>> {
        let outer: Vec<usize> = (0..self.rank()).filter(|i| !types.contains(i)).collect();
        outer
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                residue.actions[k]
                    .representatives()
                    .iter()
                    .map(|h| self.actions[i].coset_of(h))
                    .collect()
            })
            .collect()
    }

    /// The `J`-truncation `Γ(G; (G_j)_{j∈J})`.
    pub fn truncation(&self, types: &[usize], caps: &Caps) -> Result<CosetGeometry> {
        if types.is_empty() {
            return Err(Error::Invalid("truncation to the empty type set".into()));
        }
        let parabolics = types.iter().map(|&t| self.parabolics[t].clone()).collect();
        CosetGeometry::build(self.group.clone(), parabolics, caps)
    }

    /// Half the girth of the incidence graph of each base rank-2 residue;
    /// `Some(2)` marks a generalized digon and `None` an acyclic residue.
    pub fn rank_two_half_girths(&self) -> Vec<Vec<Option<usize>>> {
        let r = self.rank();
        let mut m = vec![vec![None; r]; r];
        for i in 0..r {
            for j in i + 1..r {
                let rest: Vec<usize> = (0..r).filter(|&k| k != i && k != j).collect();
                let res = self.graph_residue(&rest);
                let g = res.system.girth().map(|g| g / 2);
                m[i][j] = g;
                m[j][i] = g;
            }
        }
        m
    }

    /// Checks that `coset H_i h ↦ coset G_i h` is an isomorphism onto `other`,
    /// where `H_i` are the parabolics of `self`. Both geometries must act on
    /// the same points with `self.group ≤ other.group`.
    pub fn isomorphic_via_representatives(&self, other: &CosetGeometry) -> bool {
        if self.rank() != other.rank()
            || self.element_counts() != other.element_counts()
            || self.group.degree() != other.group.degree()
        {
            return false;
        }
        let maps: Vec<Vec<u32>> = (0..self.rank())
            .map(|t| {
                self.actions[t]
                    .representatives()
                    .iter()
                    .map(|h| other.actions[t].coset_of(h))
                    .collect()
            })
            .collect();
        for m in &maps {
            let mut seen = vec![false; m.len()];
            for &x in m {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return false;
                }
            }
        }
        let s = &self.system;
        let o = &other.system;
        for a in 0..s.total() as u32 {
            let (ta, la) = s.split(a);
            for tb in 0..self.rank() {
                if tb == ta {
                    continue;
                }
                for lb in 0..s.counts()[tb] as u32 {
                    let here = s.neighbours(a, tb).contains(lb as usize);
                    let there = o
                        .neighbours(o.id(ta, maps[ta][la as usize]), tb)
                        .contains(maps[tb][lb as usize] as usize);
                    if here != there {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn summary(&self, exec: Exec) -> GeometrySummary {
        GeometrySummary {
            rank: self.rank(),
            group_order: self.group.order(),
            parabolic_orders: self.parabolics.iter().map(PermGroup::order).collect(),
            element_counts: self.element_counts().to_vec(),
            chamber_count: self.chambers(exec).len(),
        }
    }

    pub fn to_dot(&self) -> String {
        self.system.to_dot("geometry")
    }
}

/// Parabolics of the rotation construction.
pub fn cplus_parabolics(c: &CPlusGroup) -> Vec<PermGroup> {
    let r = c.rank();
    let degree = c.group().degree();
    let alphas = c.rotations();
    let mut out = Vec::with_capacity(r);
    let g0: Vec<Permutation> = (2..r)
        .map(|j| alphas[0].inverse().then(&alphas[j - 1]))
        .collect();
    out.push(PermGroup::new(degree, g0).expect("common degree"));
    for i in 1..r {
        let gi = (1..r)
            .filter(|&j| j != i)
            .map(|j| alphas[j - 1].clone())
            .collect();
        out.push(PermGroup::new(degree, gi).expect("common degree"));
    }
    out
}
