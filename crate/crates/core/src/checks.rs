//! Thinness, connectedness, flag-transitivity and the classification ladder.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::cgroups::{
    check_independent, check_ip_plus, inverting_automorphism_exists, CPlusGroup,
    InvertingAutomorphism,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{cplus_parabolics, Chambers, CosetGeometry, IncidenceSystem};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::unionfind::UnionFind;
use crate::Caps;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A precondition of the criterion does not hold.
    Refused,
    /// A resource cap was hit.
    Inconclusive,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass() -> Self {
        Check {
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Check {
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn refused(why: impl Into<String>) -> Self {
        Check {
            status: Status::Refused,
            witness: Some(why.into()),
        }
    }

    pub fn skipped() -> Self {
        Check {
            status: Status::Skipped,
            witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    fn from_result(r: Result<Check>) -> Check {
        match r {
            Ok(c) => c,
            Err(e) if e.is_inconclusive() => Check {
                status: Status::Inconclusive,
                witness: Some(e.to_string()),
            },
            Err(e) => Check::refused(e.to_string()),
        }
    }
}

fn fmt_flag(types: &[usize], labels: &[u32]) -> String {
    let parts: Vec<String> = types
        .iter()
        .zip(labels)
        .map(|(t, l)| format!("{t}:{l}"))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn fmt_ids(sys: &IncidenceSystem, ids: &[u32]) -> String {
    let (types, labels): (Vec<usize>, Vec<u32>) = ids.iter().map(|&id| sys.split(id)).unzip();
    fmt_flag(&types, &labels)
}

fn ids_of(sys: &IncidenceSystem, types: &[usize], labels: &[u32]) -> Vec<u32> {
    types
        .iter()
        .zip(labels)
        .map(|(&t, &l)| sys.id(t, l))
        .collect()
}

/// Type subsets ordered by size, then lexicographically.
fn type_subsets(r: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..(1 << r))
        .map(|m| (0..r).filter(|i| m & (1 << i) != 0).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    all
}

/// Every flag extends to a chamber; the witness is a maximal flag that is
/// not a chamber.
pub fn check_geometry(sys: &IncidenceSystem, exec: Exec) -> Check {
    let r = sys.rank();
    if r == 0 {
        return Check::pass();
    }
    fn search(sys: &IncidenceSystem, t: usize, current: &mut Vec<u32>) -> Option<Vec<u32>> {
        let r = sys.rank();
        if t == r {
            if current.len() == r {
                return None;
            }
            let used: Vec<usize> = current.iter().map(|&id| sys.type_of(id)).collect();
            let maximal = (0..r)
                .filter(|u| !used.contains(u))
                .all(|u| sys.extensions(current, u).is_clear());
            return maximal.then(|| current.clone());
        }
        for l in sys.extensions(current, t).ones() {
            current.push(sys.id(t, l as u32));
            if let Some(w) = search(sys, t + 1, current) {
                return Some(w);
            }
            current.pop();
        }
        search(sys, t + 1, current)
    }
    let n0 = sys.counts()[0];
    let found = exec.find_first(n0 + 1, |k| {
        let mut current = Vec::new();
        if k < n0 {
            current.push(sys.id(0, k as u32));
        }
        search(sys, 1, &mut current)
    });
    match found {
        None => Check::pass(),
        Some(flag) => Check::fail(format!(
            "maximal flag {} is not a chamber",
            fmt_ids(sys, &flag)
        )),
    }
}

/// Firmness (at least two) and thinness (exactly two) of every rank-one residue.
pub fn check_firm_and_thin(sys: &IncidenceSystem, exec: Exec) -> (Check, Check) {
    let r = sys.rank();
    let mut firm = Check::pass();
    let mut thin = Check::pass();
    for t in 0..r {
        let types: Vec<usize> = (0..r).filter(|&u| u != t).collect();
        let flags = sys.flags_of_type(&types, exec);
        let counts: Vec<usize> = exec.map(&flags, |f| {
            sys.extensions(&ids_of(sys, &types, f), t).count_ones(..)
        });
        for (f, &n) in flags.iter().zip(&counts) {
            let w = || {
                format!(
                    "flag {} has {n} extension(s) of type {t}",
                    fmt_flag(&types, f)
                )
            };
            if n != 2 && thin.passed() {
                thin = Check::fail(w());
            }
            if n < 2 && firm.passed() {
                firm = Check::fail(w());
            }
        }
    }
    (firm, thin)
}

/// Applies an element permutation to a flag given by labels.
fn map_flag(
    sys: &IncidenceSystem,
    types: &[usize],
    labels: &[u32],
    g: &Permutation,
) -> Option<Vec<u32>> {
    types
        .iter()
        .zip(labels)
        .map(|(&t, &l)| {
            let (u, m) = sys.split(g.image(sys.id(t, l)));
            (u == t).then_some(m)
        })
        .collect()
}

/// Orbit index of every flag in `flags` (sorted) under `gens`, numbered by
/// first occurrence.
fn flag_orbits(
    sys: &IncidenceSystem,
    types: &[usize],
    flags: &[Vec<u32>],
    gens: &[Permutation],
) -> Result<Vec<u32>> {
    let mut uf = UnionFind::new(flags.len());
    for (k, f) in flags.iter().enumerate() {
        for g in gens {
            let img = map_flag(sys, types, f, g)
                .and_then(|img| flags.binary_search(&img).ok())
                .ok_or_else(|| Error::Precondition("generators do not act on the flags".into()))?;
            uf.union(k, img);
        }
    }
    let mut ids = HashMap::new();
    Ok((0..flags.len())
        .map(|k| {
            let root = uf.find(k);
            let next = ids.len() as u32;
            *ids.entry(root).or_insert(next)
        })
        .collect())
}

/// Connectedness of the incidence graph of every residue of rank at least
/// two, checking one flag per orbit when a group action is supplied.
pub fn check_residually_connected_graph(
    sys: &IncidenceSystem,
    gens: Option<&[Permutation]>,
    exec: Exec,
) -> Check {
    let r = sys.rank();
    for types in type_subsets(r).into_iter().filter(|j| j.len() + 2 <= r) {
        let flags = sys.flags_of_type(&types, exec);
        let reps: Vec<usize> = match gens.map(|g| flag_orbits(sys, &types, &flags, g)) {
            Some(Ok(orbit)) => {
                let mut seen = vec![false; flags.len()];
                (0..flags.len())
                    .filter(|&k| !std::mem::replace(&mut seen[orbit[k] as usize], true))
                    .collect()
            }
            Some(Err(e)) => return Check::refused(e.to_string()),
            None => (0..flags.len()).collect(),
        };
        let bad = exec.find_first(reps.len(), |k| {
            let f = &flags[reps[k]];
            (!sys.residue_is_connected(&ids_of(sys, &types, f))).then(|| f.clone())
        });
        if let Some(f) = bad {
            return Check::fail(if types.is_empty() {
                "the incidence graph is disconnected".to_string()
            } else {
                format!("residue of flag {} is disconnected", fmt_flag(&types, &f))
            });
        }
    }
    Check::pass()
}

/// Connectedness of the chamber graph of the geometry and of every residue
/// of rank at least two.
pub fn check_strongly_chamber_connected(chambers: &Chambers, adjacency: &[Vec<u32>]) -> Check {
    let r = chambers.rank();
    for types in type_subsets(r).into_iter().filter(|j| j.len() + 2 <= r) {
        let mut uf = UnionFind::new(chambers.len());
        for c in 0..chambers.len() {
            for t in (0..r).filter(|t| !types.contains(t)) {
                for &d in &adjacency[c * r + t] {
                    uf.union(c, d as usize);
                }
            }
        }
        let mut roots: HashMap<Vec<u32>, usize> = HashMap::new();
        for (c, row) in chambers.iter().enumerate() {
            let key: Vec<u32> = types.iter().map(|&t| row[t]).collect();
            let root = uf.find(c);
            if *roots.entry(key.clone()).or_insert(root) != root {
                return Check::fail(if types.is_empty() {
                    "the chamber graph is disconnected".to_string()
                } else {
                    format!(
                        "chambers through flag {} are not connected",
                        fmt_flag(&types, &key)
                    )
                });
            }
        }
    }
    Check::pass()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChamberOrbits {
    pub count: usize,
    pub sizes: Vec<usize>,
    /// Every pair of adjacent chambers lies in distinct orbits.
    pub adjacent_alternate: bool,
    #[serde(skip)]
    pub orbit_of: Vec<u32>,
}

fn chamber_image(sys: &IncidenceSystem, row: &[u32], g: &Permutation) -> Vec<u32> {
    row.iter()
        .enumerate()
        .map(|(t, &l)| sys.split(g.image(sys.id(t, l))).1)
        .collect()
}

/// Orbits on chambers of the group generated by `gens` (acting on elements).
pub fn chamber_orbits(
    sys: &IncidenceSystem,
    chambers: &Chambers,
    adjacency: &[Vec<u32>],
    gens: &[Permutation],
) -> Result<ChamberOrbits> {
    let mut uf = UnionFind::new(chambers.len());
    for (c, row) in chambers.iter().enumerate() {
        for g in gens {
            let d = chambers
                .index_of(&chamber_image(sys, row, g))
                .ok_or_else(|| {
                    Error::Precondition("generators do not act on the chambers".into())
                })?;
            uf.union(c, d);
        }
    }
    let mut ids: HashMap<usize, u32> = HashMap::new();
    let mut sizes = Vec::new();
    let orbit_of: Vec<u32> = (0..chambers.len())
        .map(|c| {
            let root = uf.find(c);
            let next = ids.len() as u32;
            let id = *ids.entry(root).or_insert(next);
            if id as usize == sizes.len() {
                sizes.push(0);
            }
            sizes[id as usize] += 1;
            id
        })
        .collect();
    Ok(ChamberOrbits {
        count: sizes.len(),
        adjacent_alternate: alternates(chambers.rank(), adjacency, &orbit_of),
        sizes,
        orbit_of,
    })
}

fn alternates(r: usize, adjacency: &[Vec<u32>], orbit_of: &[u32]) -> bool {
    (0..orbit_of.len()).all(|c| {
        (0..r).all(|t| {
            adjacency[c * r + t]
                .iter()
                .all(|&d| orbit_of[d as usize] != orbit_of[c])
        })
    })
}

/// Flag-transitivity by orbit counting: for every non-empty type set the
/// flags of that type form a single orbit.
pub fn flag_transitive_by_orbits(
    sys: &IncidenceSystem,
    gens: &[Permutation],
    exec: Exec,
) -> Result<bool> {
    for types in type_subsets(sys.rank())
        .into_iter()
        .filter(|j| !j.is_empty())
    {
        let flags = sys.flags_of_type(&types, exec);
        let orbit = flag_orbits(sys, &types, &flags, gens)?;
        if orbit.iter().any(|&o| o != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Type-preserving automorphism of a thin, chamber-connected system mapping
/// chamber `from` to chamber `to`, found by following adjacency.
pub fn chamber_automorphism(
    sys: &IncidenceSystem,
    chambers: &Chambers,
    adjacency: &[Vec<u32>],
    from: usize,
    to: usize,
) -> Option<Permutation> {
    let r = chambers.rank();
    let n = chambers.len();
    let mut phi = vec![u32::MAX; n];
    phi[from] = to as u32;
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        let e = phi[c] as usize;
        for t in 0..r {
            let (a, b) = (&adjacency[c * r + t], &adjacency[e * r + t]);
            if a.len() != 1 || b.len() != 1 {
                return None;
            }
            let (d, f) = (a[0] as usize, b[0]);
            if phi[d] == u32::MAX {
                phi[d] = f;
                queue.push_back(d);
            } else if phi[d] != f {
                return None;
            }
        }
    }
    if phi.contains(&u32::MAX) {
        return None;
    }
    let mut images = vec![u32::MAX; sys.total()];
    for c in 0..n {
        let (src, dst) = (chambers.get(c), chambers.get(phi[c] as usize));
        for t in 0..r {
            let (a, b) = (sys.id(t, src[t]), sys.id(t, dst[t]));
            if images[a as usize] == u32::MAX {
                images[a as usize] = b;
            } else if images[a as usize] != b {
                return None;
            }
        }
    }
    let mut hit = vec![false; sys.total()];
    for &b in &images {
        if b == u32::MAX || std::mem::replace(&mut hit[b as usize], true) {
            return None;
        }
    }
    let perm = Permutation::from_images_unchecked(images);
    for a in 0..sys.total() as u32 {
        let ta = sys.type_of(a);
        for t in (0..r).filter(|&t| t != ta) {
            let img = perm.image(a);
            let count = sys.neighbours(a, t).count_ones(..);
            let ok = sys
                .neighbours(a, t)
                .ones()
                .all(|l| sys.incident(img, perm.image(sys.id(t, l as u32))));
            if !ok || sys.neighbours(img, t).count_ones(..) != count {
                return None;
            }
        }
    }
    Some(perm)
}

/// Buekenhout–Hermand criterion, with the choice function `α(J) = min J`:
/// the stabilizer of each base flag `{G_j : j ∈ J∖α}` is transitive on the
/// type-`α` elements incident to it.
pub fn check_flag_transitive_bh(geom: &CosetGeometry, caps: &Caps) -> Result<Check> {
    let sys = geom.system();
    for types in type_subsets(geom.rank())
        .into_iter()
        .filter(|j| j.len() >= 3)
    {
        let alpha = types[0];
        let rest = &types[1..];
        let base: Vec<u32> = rest.iter().map(|&j| sys.id(j, 0)).collect();
        let incident = sys.extensions(&base, alpha);
        let k = geom.parabolic_meet(rest, caps)?;
        let gens: Vec<Permutation> = k
            .generators()
            .iter()
            .map(|g| geom.action(alpha).action_of(g))
            .collect();
        let orbit = PermGroup::new(sys.counts()[alpha], gens)?.orbit(0);
        if orbit.len() != incident.count_ones(..) {
            return Ok(Check::fail(format!(
                "J = {types:?}: {} elements of type {alpha} are incident to the base flag but its stabilizer has an orbit of {}",
                incident.count_ones(..),
                orbit.len()
            )));
        }
    }
    Ok(Check::pass())
}

/// Rank-three criterion `G_0G_1 ∩ G_0G_2 = G_0(G_1 ∩ G_2)`, by counting:
/// `|O_01 ∩ O_02| = [G_1∩G_2 : G_0∩G_1∩G_2]`.
pub fn check_flag_transitive_rank3(geom: &CosetGeometry, caps: &Caps) -> Result<Check> {
    if geom.rank() != 3 {
        return Err(Error::Precondition(format!(
            "the rank-three criterion needs rank 3, got {}",
            geom.rank()
        )));
    }
    let sys = geom.system();
    let lhs = sys
        .extensions(&[sys.id(1, 0), sys.id(2, 0)], 0)
        .count_ones(..) as u128;
    let k = geom.parabolic_meet(&[1, 2], caps)?;
    let b = k.intersect(&geom.parabolics()[0], caps.intersection.into())?;
    let rhs = k.order() / b.order();
    Ok(if lhs == rhs {
        Check::pass()
    } else {
        Check::fail(format!(
            "|O_01 ∩ O_02| = {lhs} but [G_1∩G_2 : G_0∩G_1∩G_2] = {rhs}"
        ))
    })
}

/// Residual connectedness for flag-transitive coset geometries: for every
/// `J` with `|J| ≤ r-2`, `G_J = ⟨G_{J∪{k}} : k ∉ J⟩`.
pub fn check_residually_connected_dehon(
    geom: &CosetGeometry,
    caps: &Caps,
    flag_transitive: bool,
) -> Result<Check> {
    if !flag_transitive {
        return Ok(Check::refused(
            "the subgroup criterion needs a flag-transitive geometry",
        ));
    }
    let r = geom.rank();
    let mut meets: HashMap<u32, PermGroup> = HashMap::new();
    meets.insert(0, geom.group().clone());
    for mask in 1u32..(1 << r) {
        let top = 31 - mask.leading_zeros();
        let prev = meets[&(mask & !(1 << top))].clone();
        meets.insert(
            mask,
            prev.intersect(&geom.parabolics()[top as usize], caps.intersection.into())?,
        );
    }
    for mask in 0u32..(1 << r) {
        if mask.count_ones() as usize + 2 > r {
            continue;
        }
        let mut gens = Vec::new();
        for k in (0..r).filter(|k| mask & (1 << k) == 0) {
            gens.extend(meets[&(mask | (1 << k))].generators().iter().cloned());
        }
        let join = PermGroup::new(geom.group().degree(), gens)?;
        let target = &meets[&mask];
        if join.order() != target.order() {
            let j: Vec<usize> = (0..r).filter(|k| mask & (1 << k) != 0).collect();
            return Ok(Check::fail(format!(
                "J = {j:?}: |G_J| = {} but the subgroups G_(J+k) generate a group of order {}",
                target.order(),
                join.order()
            )));
        }
    }
    Ok(Check::pass())
}

/// Borel subgroup `∩ G_i` and kernel `core(G, ∩ G_i)`.
pub fn borel_and_kernel(geom: &CosetGeometry, caps: &Caps) -> Result<(PermGroup, PermGroup)> {
    let all: Vec<usize> = (0..geom.rank()).collect();
    let borel = geom.parabolic_meet(&all, caps)?;
    let kernel = geom.group().core(&borel, caps.intersection.into())?;
    Ok((borel, kernel))
}

/// Half-girths of the rank-two residues; `Some(2)` is a generalized digon.
pub fn buekenhout_diagram(
    geom: &CosetGeometry,
    flag_transitive: &Check,
    rc: &Check,
) -> Result<Vec<Vec<Option<usize>>>> {
    if !flag_transitive.passed() || !rc.passed() {
        return Err(Error::Precondition(
            "the diagram needs a flag-transitive, residually connected geometry".into(),
        ));
    }
    Ok(geom.rank_two_half_girths())
}

/// DOT drawing of a Buekenhout diagram: digons are omitted, label 3 implicit.
pub fn diagram_dot(m: &[Vec<Option<usize>>]) -> String {
    let mut out = String::from("graph buekenhout {\n");
    for i in 0..m.len() {
        out.push_str(&format!("  {i} [shape=circle];\n"));
    }
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            match m[i][j] {
                Some(2) => {}
                Some(3) => out.push_str(&format!("  {i} -- {j};\n")),
                Some(k) => out.push_str(&format!("  {i} -- {j} [label=\"{k}\"];\n")),
                None => out.push_str(&format!("  {i} -- {j} [label=\"inf\"];\n")),
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Distinguished rotations `α_1..α_{r-1}` at the base chamber `C`: written
/// as a left action, `α_i` maps `C` to `(C^0)^i`, so `C·α_i⁻¹ = (C^0)^i` here.
pub fn distinguished_rotations(
    geom: &CosetGeometry,
    chambers: &Chambers,
    adjacency: &[Vec<u32>],
    gen_actions: &[Permutation],
) -> Option<Vec<Permutation>> {
    let sys = geom.system();
    let r = geom.rank();
    let base = chambers.index_of(&geom.base_chamber())?;
    let single = |c: usize, t: usize| -> Option<usize> {
        match adjacency[c * r + t].as_slice() {
            [d] => Some(*d as usize),
            _ => None,
        }
    };
    let c0 = single(base, 0)?;
    let mut tree: Vec<Option<(u32, usize)>> = vec![None; chambers.len()];
    let mut seen = vec![false; chambers.len()];
    seen[base] = true;
    let mut queue = VecDeque::from([base]);
    while let Some(c) = queue.pop_front() {
        for (s, g) in gen_actions.iter().enumerate() {
            let d = chambers.index_of(&chamber_image(sys, chambers.get(c), g))?;
            if !seen[d] {
                seen[d] = true;
                tree[d] = Some((c as u32, s));
                queue.push_back(d);
            }
        }
    }
    let gens = geom.group().generators();
    (1..r)
        .map(|i| {
            let target = single(c0, i)?;
            if !seen[target] {
                return None;
            }
            let mut word = Vec::new();
            let mut c = target;
            while let Some((p, s)) = tree[c] {
                word.push(s);
                c = p as usize;
            }
            let mut g = Permutation::identity(geom.group().degree());
            for &s in word.iter().rev() {
                g = g.then(&gens[s]);
            }
            Some(g.inverse())
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NotGeometry,
    Geometry,
    WeakHypertope,
    Hypertope,
    RegularHypertope,
    ChiralHypertope,
    TwoOrbitNonChiral,
    Other,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::NotGeometry => "not_geometry",
            Verdict::Geometry => "geometry",
            Verdict::WeakHypertope => "weak_hypertope",
            Verdict::Hypertope => "hypertope",
            Verdict::RegularHypertope => "regular_hypertope",
            Verdict::ChiralHypertope => "chiral_hypertope",
            Verdict::TwoOrbitNonChiral => "two_orbit_non_chiral",
            Verdict::Other => "other",
        };
        f.write_str(s)
    }
}

/// Chamber orbits of the full type-preserving automorphism group of a thin,
/// residually connected geometry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomorphismReport {
    pub chamber_orbit_count: usize,
    pub group_order: u128,
    /// For each type `i`, whether some automorphism maps the base chamber to its `i`-adjacent chamber.
    pub maps_to_adjacent: Vec<bool>,
    pub adjacent_chambers_alternate: bool,
}

/// Rotation data of a two-orbit geometry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RotationReport {
    pub rotations: Vec<String>,
    /// The parabolics equal those of the rotation construction on these rotations.
    pub matches_construction: bool,
    pub inverting_automorphism: Option<InvertingAutomorphism>,
    pub ip_plus: Option<bool>,
    pub independent: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub rank: usize,
    pub group_order: u128,
    pub element_counts: Vec<usize>,
    pub chamber_count: usize,
    pub geometry: Check,
    pub firm: Check,
    pub thin: Check,
    pub connected: Check,
    pub residually_connected: Check,
    pub residually_connected_dehon: Check,
    pub strongly_chamber_connected: Check,
    pub flag_transitive: Check,
    pub flag_transitive_rank3: Option<Check>,
    pub chamber_orbit_count: usize,
    pub chamber_orbit_sizes: Vec<usize>,
    pub chamber_action_free: bool,
    pub adjacent_chambers_alternate: bool,
    pub borel_order: Option<u128>,
    pub borel_trivial: Option<bool>,
    pub kernel_order: Option<u128>,
    pub kernel_trivial: Option<bool>,
    pub buekenhout_diagram: Option<Vec<Vec<Option<usize>>>>,
    pub automorphisms: Option<AutomorphismReport>,
    pub rotations: Option<RotationReport>,
    /// Report for the group extended by automorphisms fusing the chamber orbits.
    pub extended: Option<Box<ClassificationReport>>,
    /// Report for the faithful quotient when the kernel is non-trivial.
    pub quotient: Option<Box<ClassificationReport>>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    /// One-line summary such as `geometry (not thin, not RC, not FT)`.
    pub fn summary(&self) -> String {
        let mut missing = Vec::new();
        if self.geometry.passed() {
            if !self.thin.passed() {
                missing.push("not thin");
            }
            if !self.residually_connected.passed() {
                missing.push("not RC");
            }
            if !self.flag_transitive.passed() {
                missing.push("not FT");
            }
        }
        if missing.is_empty()
            || matches!(
                self.verdict,
                Verdict::RegularHypertope | Verdict::ChiralHypertope
            )
        {
            self.verdict.to_string()
        } else {
            format!("{} ({})", self.verdict, missing.join(", "))
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub caps: Caps,
    pub exec: Exec,
    /// Stop at the first failed rung of the ladder.
    pub short_circuit: bool,
    /// Classify the extension and kernel quotient as nested reports.
    pub nested: bool,
    /// Largest number of chamber orbits for which automorphisms between
    /// orbit representatives are searched.
    pub max_orbit_pairs: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            caps: Caps::default(),
            exec: Exec::default(),
            short_circuit: false,
            nested: true,
            max_orbit_pairs: 64,
        }
    }
}

/// Runs the classification ladder on a coset geometry under its group.
pub fn classify(geom: &CosetGeometry, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let caps = &opts.caps;
    let exec = opts.exec;
    let sys = geom.system();
    let r = geom.rank();
    let chambers = geom.chambers(exec);
    let adjacency = chambers.adjacency(sys, exec);
    let gen_actions = geom.generator_actions();
    let group_order = geom.group().order();

    let mut report = ClassificationReport {
        verdict: Verdict::Other,
        rank: r,
        group_order,
        element_counts: geom.element_counts().to_vec(),
        chamber_count: chambers.len(),
        geometry: Check::skipped(),
        firm: Check::skipped(),
        thin: Check::skipped(),
        connected: Check::skipped(),
        residually_connected: Check::skipped(),
        residually_connected_dehon: Check::skipped(),
        strongly_chamber_connected: Check::skipped(),
        flag_transitive: Check::skipped(),
        flag_transitive_rank3: None,
        chamber_orbit_count: 0,
        chamber_orbit_sizes: Vec::new(),
        chamber_action_free: false,
        adjacent_chambers_alternate: false,
        borel_order: None,
        borel_trivial: None,
        kernel_order: None,
        kernel_trivial: None,
        buekenhout_diagram: None,
        automorphisms: None,
        rotations: None,
        extended: None,
        quotient: None,
        notes: Vec::new(),
    };

    report.geometry = check_geometry(sys, exec);
    if opts.short_circuit && !report.geometry.passed() {
        report.verdict = Verdict::NotGeometry;
        return Ok(report);
    }
    let (firm, thin) = check_firm_and_thin(sys, exec);
    report.firm = firm;
    report.thin = thin;
    let short = opts.short_circuit && !report.thin.passed();
    if !short {
        report.connected = if sys.is_connected() {
            Check::pass()
        } else {
            Check::fail("the incidence graph is disconnected")
        };
        report.residually_connected =
            check_residually_connected_graph(sys, Some(&gen_actions), exec);
        report.strongly_chamber_connected = check_strongly_chamber_connected(&chambers, &adjacency);
    }

    let orbits = chamber_orbits(sys, &chambers, &adjacency, &gen_actions)?;
    report.chamber_orbit_count = orbits.count;
    report.chamber_orbit_sizes = orbits.sizes.clone();
    report.chamber_action_free =
        !chambers.is_empty() && orbits.sizes.iter().all(|&s| s as u128 == group_order);
    report.adjacent_chambers_alternate = orbits.adjacent_alternate;

    if !short {
        report.flag_transitive = Check::from_result(check_flag_transitive_bh(geom, caps));
        if r == 3 {
            report.flag_transitive_rank3 =
                Some(Check::from_result(check_flag_transitive_rank3(geom, caps)));
        }
        report.residually_connected_dehon = Check::from_result(check_residually_connected_dehon(
            geom,
            caps,
            report.flag_transitive.passed(),
        ));
        if let Ok(d) =
            buekenhout_diagram(geom, &report.flag_transitive, &report.residually_connected)
        {
            report.buekenhout_diagram = Some(d);
        }
    }

    let mut kernel_nontrivial = false;
    match borel_and_kernel(geom, caps) {
        Ok((borel, kernel)) => {
            report.borel_order = Some(borel.order());
            report.borel_trivial = Some(borel.order() == 1);
            report.kernel_order = Some(kernel.order());
            report.kernel_trivial = Some(kernel.order() == 1);
            kernel_nontrivial = kernel.order() > 1;
        }
        Err(e) if e.is_inconclusive() => report.notes.push(format!("kernel not computed: {e}")),
        Err(e) => return Err(e),
    }

    report.verdict = if !report.geometry.passed() {
        Verdict::NotGeometry
    } else if !report.thin.passed() {
        Verdict::Geometry
    } else if !report.residually_connected.passed() {
        Verdict::WeakHypertope
    } else {
        hypertope_verdict(
            geom,
            &chambers,
            &adjacency,
            &gen_actions,
            &orbits,
            opts,
            &mut report,
        )?
    };

    if opts.nested && kernel_nontrivial {
        let base = geom.base_chamber();
        let q = CosetGeometry::from_action(sys, gen_actions.clone(), &base, caps)?;
        let nested = ClassifyOptions {
            nested: false,
            ..*opts
        };
        report.quotient = Some(Box::new(classify(&q, &nested)?));
    }
    Ok(report)
}

fn hypertope_verdict(
    geom: &CosetGeometry,
    chambers: &Chambers,
    adjacency: &[Vec<u32>],
    gen_actions: &[Permutation],
    orbits: &ChamberOrbits,
    opts: &ClassifyOptions,
    report: &mut ClassificationReport,
) -> Result<Verdict> {
    let sys = geom.system();
    let r = geom.rank();
    let base = chambers
        .index_of(&geom.base_chamber())
        .ok_or_else(|| Error::Precondition("the base flag is not a chamber".into()))?;

    // Fuse the orbits of the given group with automorphisms found by adjacency.
    let k = orbits.count;
    let mut reps = vec![usize::MAX; k];
    for c in (0..chambers.len()).rev() {
        reps[orbits.orbit_of[c] as usize] = c;
    }
    let mut fused = UnionFind::new(k);
    let mut extra = Vec::new();
    if k <= opts.max_orbit_pairs {
        for a in 0..k {
            for b in a + 1..k {
                if fused.find(a) == fused.find(b) {
                    continue;
                }
                if let Some(phi) = chamber_automorphism(sys, chambers, adjacency, reps[a], reps[b])
                {
                    fused.union(a, b);
                    if orbits.orbit_of[reps[a]] == orbits.orbit_of[base] {
                        extra.push(phi);
                    }
                }
            }
        }
    } else {
        report.notes.push(format!(
            "{k} chamber orbits under the given group; the full automorphism group was not computed"
        ));
        return Ok(if k == 1 {
            Verdict::RegularHypertope
        } else {
            Verdict::Hypertope
        });
    }
    let aut_orbit: Vec<u32> = orbits
        .orbit_of
        .iter()
        .map(|&o| fused.find(o as usize) as u32)
        .collect();
    let base_orbit = aut_orbit[base];
    let aut_count = fused.set_count();
    let aut_order = aut_orbit.iter().filter(|&&o| o == base_orbit).count() as u128;
    let maps_to_adjacent: Vec<bool> = (0..r)
        .map(|t| {
            adjacency[base * r + t]
                .first()
                .is_some_and(|&d| aut_orbit[d as usize] == base_orbit)
        })
        .collect();
    let aut_alternate = alternates(r, adjacency, &aut_orbit);
    report.automorphisms = Some(AutomorphismReport {
        chamber_orbit_count: aut_count,
        group_order: aut_order,
        maps_to_adjacent,
        adjacent_chambers_alternate: aut_alternate,
    });

    let verdict = match aut_count {
        1 => Verdict::RegularHypertope,
        2 if aut_alternate => Verdict::ChiralHypertope,
        2 => Verdict::TwoOrbitNonChiral,
        _ => Verdict::Hypertope,
    };

    // Rotation criterion for two free, alternating orbits of the given group.
    if orbits.count == 2 && orbits.adjacent_alternate && report.chamber_action_free && r >= 3 {
        if let Some(alphas) = distinguished_rotations(geom, chambers, adjacency, gen_actions) {
            let plus = CPlusGroup::with_group(geom.group().clone(), alphas.clone());
            let mut rot = RotationReport {
                rotations: alphas.iter().map(Permutation::to_cycle_string).collect(),
                matches_construction: false,
                inverting_automorphism: None,
                ip_plus: None,
                independent: None,
            };
            if let Ok(plus) = plus {
                rot.matches_construction = cplus_parabolics(&plus)
                    .iter()
                    .zip(geom.parabolics())
                    .all(|(a, b)| a.same_as(b));
                rot.independent = Some(check_independent(&plus).pass);
                rot.ip_plus = check_ip_plus(&plus, opts.caps.intersection.into())
                    .ok()
                    .map(|x| x.pass);
                if rot.matches_construction {
                    let inv = inverting_automorphism_exists(&plus);
                    let by_rotation = if inv.exists {
                        Verdict::RegularHypertope
                    } else {
                        Verdict::ChiralHypertope
                    };
                    rot.inverting_automorphism = Some(inv);
                    if by_rotation != verdict {
                        report.notes.push(format!(
                            "rotation criterion says {by_rotation} but the automorphism search says {verdict}"
                        ));
                        report.rotations = Some(rot);
                        return Ok(Verdict::Other);
                    }
                }
            }
            report.rotations = Some(rot);
        }
    }

    if opts.nested && verdict == Verdict::RegularHypertope && orbits.count > 1 && !extra.is_empty()
    {
        let mut gens = gen_actions.to_vec();
        gens.extend(extra);
        let ext = CosetGeometry::from_action(sys, gens, &geom.base_chamber(), &opts.caps)?;
        let nested = ClassifyOptions {
            nested: false,
            ..*opts
        };
        report.extended = Some(Box::new(classify(&ext, &nested)?));
    }
    Ok(verdict)
}
