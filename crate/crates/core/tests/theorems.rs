#![allow(clippy::needless_range_loop)]

mod common;

use hypertope::cgroups::*;
use hypertope::checks::*;
use hypertope::geometry::cplus_parabolics;
use hypertope::{CGroup, CPlusGroup, Caps, CosetGeometry, Exec, PermGroup};

struct Classified {
    name: String,
    geometry: CosetGeometry,
    report: ClassificationReport,
    cgroup: Option<CGroup>,
}

fn classified() -> Vec<Classified> {
    common::corpus()
        .into_iter()
        .map(|f| Classified {
            report: classify(&f.geometry, &ClassifyOptions::default()).unwrap(),
            name: f.name,
            geometry: f.geometry,
            cgroup: f.cgroup,
        })
        .collect()
}

/// `ρ_i` as the automorphism sending the base chamber to its `i`-adjacent chamber.
fn distinguished_generators(g: &CosetGeometry) -> CGroup {
    let sys = g.system();
    let chambers = g.chambers(Exec::default());
    let adj = chambers.adjacency(sys, Exec::default());
    let base = chambers.index_of(&g.base_chamber()).unwrap();
    let r = g.rank();
    let gens = (0..r)
        .map(|i| {
            chamber_automorphism(sys, &chambers, &adj, base, adj[base * r + i][0] as usize).unwrap()
        })
        .collect();
    CGroup::new(gens).unwrap()
}

fn rotations_of(g: &CosetGeometry) -> CPlusGroup {
    let chambers = g.chambers(Exec::default());
    let adj = chambers.adjacency(g.system(), Exec::default());
    let alphas = distinguished_rotations(g, &chambers, &adj, &g.generator_actions()).unwrap();
    CPlusGroup::with_group(g.group().clone(), alphas).unwrap()
}

#[test]
fn report_invariants() {
    for c in classified() {
        let r = &c.report;
        match r.verdict {
            Verdict::ChiralHypertope => {
                let aut = r.automorphisms.as_ref().unwrap();
                assert_eq!(aut.chamber_orbit_count, 2, "{}", c.name);
                assert!(aut.adjacent_chambers_alternate, "{}", c.name);
                assert!(
                    r.thin.passed() && r.residually_connected.passed(),
                    "{}",
                    c.name
                );
            }
            Verdict::RegularHypertope => {
                let ft = r.flag_transitive.passed()
                    || r.extended
                        .as_ref()
                        .is_some_and(|e| e.flag_transitive.passed());
                assert!(ft, "{}", c.name);
                assert!(
                    r.thin.passed() && r.residually_connected.passed(),
                    "{}",
                    c.name
                );
                assert_eq!(r.borel_trivial, Some(true), "{}", c.name);
            }
            _ => {}
        }
    }
}

#[test]
fn regular_hypertopes_have_c_group_generators() {
    let mut n = 0;
    for c in classified()
        .iter()
        .filter(|c| c.report.verdict == Verdict::RegularHypertope)
    {
        let g = match &c.report.extended {
            Some(e) => {
                assert_eq!(e.verdict, Verdict::RegularHypertope, "{}", c.name);
                let gens: Vec<_> = distinguished_generators(&c.geometry).generators().to_vec();
                CosetGeometry::from_action(
                    c.geometry.system(),
                    gens,
                    &c.geometry.base_chamber(),
                    &Caps::default(),
                )
                .unwrap()
            }
            None => c.geometry.clone(),
        };
        let rho = distinguished_generators(&g);
        assert!(check_ip(&rho, 1_000_000).unwrap().pass, "{}", c.name);
        assert_eq!(
            rho.group().order(),
            c.report.automorphisms.as_ref().unwrap().group_order
        );
        n += 1;
    }
    assert!(n >= 8, "{n}");
}

#[test]
fn chiral_hypertopes_satisfy_ip_plus_and_independence() {
    let mut n = 0;
    for c in classified()
        .iter()
        .filter(|c| c.report.verdict == Verdict::ChiralHypertope)
    {
        let plus = rotations_of(&c.geometry);
        assert!(check_ip_plus(&plus, 1_000_000).unwrap().pass, "{}", c.name);
        assert!(check_independent(&plus).pass, "{}", c.name);
        assert!(!inverting_automorphism_exists(&plus).exists, "{}", c.name);
        n += 1;
    }
    assert!(n >= 3, "{n}");
}

#[test]
fn string_c_groups_give_string_diagrams() {
    let mut n = 0;
    for c in classified() {
        let Some(cg) = &c.cgroup else { continue };
        if is_string(cg).is_none() || !check_ip(cg, 1_000_000).unwrap().pass {
            continue;
        }
        let r = &c.report;
        assert!(
            r.thin.passed() && r.residually_connected.passed(),
            "{}",
            c.name
        );
        assert_eq!(r.verdict, Verdict::RegularHypertope, "{}", c.name);
        let d = r.buekenhout_diagram.as_ref().unwrap();
        let rank = d.len();
        let edges: usize = (0..rank)
            .flat_map(|i| (i + 1..rank).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != Some(2))
            .count();
        assert_eq!(edges, rank - 1, "{}", c.name);
        for i in 0..rank {
            let degree = (0..rank).filter(|&j| j != i && d[i][j] != Some(2)).count();
            assert!(degree <= 2, "{}", c.name);
        }
        n += 1;
    }
    assert!(n >= 7, "{n}");
}

#[test]
fn coxeter_diagram_is_buekenhout_diagram() {
    for c in classified() {
        let (Some(cg), Some(d)) = (&c.cgroup, &c.report.buekenhout_diagram) else {
            continue;
        };
        if c.report.verdict != Verdict::RegularHypertope {
            continue;
        }
        for i in 0..cg.rank() {
            for j in 0..cg.rank() {
                if i != j {
                    assert_eq!(
                        d[i][j],
                        Some(cg.diagram()[i][j] as usize),
                        "{} ({i},{j})",
                        c.name
                    );
                }
            }
        }
    }
}

#[test]
fn chiral_truncations_are_flag_transitive() {
    let caps = Caps::default();
    for c in classified()
        .iter()
        .filter(|c| c.report.verdict == Verdict::ChiralHypertope)
    {
        let r = c.geometry.rank();
        for mask in 0u32..(1 << r) {
            if mask.count_ones() as usize != r - 2 || mask == 0 {
                continue;
            }
            let j: Vec<usize> = (0..r).filter(|k| mask & (1 << k) != 0).collect();
            let t = c.geometry.truncation(&j, &caps).unwrap();
            let ft = flag_transitive_by_orbits(t.system(), &t.generator_actions(), Exec::default())
                .unwrap();
            assert!(ft, "{} truncation {j:?}", c.name);
        }
    }
}

#[test]
fn rotation_subgroup_keeps_ip() {
    for f in common::corpus() {
        let Some(c) = &f.cgroup else { continue };
        let (plus, index) = c.rotation_subgroup();
        if index == 2 && check_ip(c, 1_000_000).unwrap().pass {
            assert!(check_ip_plus(&plus, 1_000_000).unwrap().pass, "{}", f.name);
        }
    }
}

#[test]
fn inverting_graph_order_bounds() {
    for f in common::corpus() {
        let Some(plus) = &f.cplus else { continue };
        let inv = inverting_automorphism_exists(plus);
        let n = plus.group().order();
        assert!(
            n <= inv.graph_order && inv.graph_order <= n * n,
            "{}",
            f.name
        );
        assert_eq!(inv.graph_order % n, 0, "{}", f.name);
    }
}

#[test]
fn rotation_construction_recovers_regular_geometries() {
    let caps = Caps::default();
    for f in common::corpus() {
        let Some(c) = &f.cgroup else { continue };
        if c.rank() < 3 || !check_ip(c, 1_000_000).unwrap().pass {
            continue;
        }
        let r = classify(&f.geometry, &ClassifyOptions::default()).unwrap();
        if r.verdict != Verdict::RegularHypertope {
            continue;
        }
        let (plus, index) = c.rotation_subgroup();
        assert_eq!(index, 2, "{}", f.name);
        let rot = CosetGeometry::from_cplus(&plus, &caps).unwrap();
        assert!(
            rot.isomorphic_via_representatives(&f.geometry),
            "{}",
            f.name
        );
        let derived = rotations_of(&rot);
        let same = cplus_parabolics(&derived)
            .iter()
            .zip(rot.parabolics())
            .all(|(a, b): (&PermGroup, &PermGroup)| a.same_as(b));
        assert!(same, "{}", f.name);
    }
}
