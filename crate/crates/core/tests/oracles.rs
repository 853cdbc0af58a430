mod common;

use hypertope::checks::*;
use hypertope::{Caps, Exec, IncidenceSystem};

#[test]
fn corpus_is_large_enough() {
    assert!(common::corpus().len() >= 15);
}

#[test]
fn bh_agrees_with_orbit_oracles() {
    let caps = Caps::default();
    for f in common::corpus() {
        let g = &f.geometry;
        let sys = g.system();
        let chambers = g.chambers(Exec::default());
        let adj = chambers.adjacency(sys, Exec::default());
        let gens = g.generator_actions();
        let bh = check_flag_transitive_bh(g, &caps).unwrap().passed();
        let orbits = chamber_orbits(sys, &chambers, &adj, &gens).unwrap();
        assert_eq!(bh, orbits.count == 1, "{}: BH vs chamber orbits", f.name);
        let by_flags = flag_transitive_by_orbits(sys, &gens, Exec::default()).unwrap();
        assert_eq!(
            by_flags,
            orbits.count == 1,
            "{}: flag orbits vs chamber orbits",
            f.name
        );
        if g.rank() == 3 {
            let tits = check_flag_transitive_rank3(g, &caps).unwrap().passed();
            assert_eq!(tits, bh, "{}: rank-3 criterion vs BH", f.name);
        }
    }
}

#[test]
fn dehon_agrees_with_graph_on_flag_transitive() {
    let caps = Caps::default();
    let mut seen = 0;
    for f in common::corpus() {
        let g = &f.geometry;
        if !check_flag_transitive_bh(g, &caps).unwrap().passed() {
            let refused = check_residually_connected_dehon(g, &caps, false).unwrap();
            assert_eq!(refused.status, Status::Refused);
            continue;
        }
        seen += 1;
        let dehon = check_residually_connected_dehon(g, &caps, true)
            .unwrap()
            .passed();
        let graph = check_residually_connected_graph(g.system(), None, Exec::default()).passed();
        assert_eq!(dehon, graph, "{}", f.name);
    }
    assert!(seen >= 8);
}

#[test]
fn rc_equals_chamber_connected_on_firm() {
    for f in common::corpus() {
        let sys = f.geometry.system();
        let (firm, _) = check_firm_and_thin(sys, Exec::default());
        if !firm.passed() {
            continue;
        }
        let chambers = sys.chambers(Exec::default());
        let adj = chambers.adjacency(sys, Exec::default());
        let rc = check_residually_connected_graph(sys, None, Exec::default()).passed();
        let scc = check_strongly_chamber_connected(&chambers, &adj).passed();
        assert_eq!(rc, scc, "{}", f.name);
    }
}

#[test]
fn orbit_dedup_matches_full_scan() {
    for f in common::corpus() {
        let sys = f.geometry.system();
        let gens = f.geometry.generator_actions();
        let a = check_residually_connected_graph(sys, Some(&gens), Exec::default()).passed();
        let b = check_residually_connected_graph(sys, None, Exec::Sequential).passed();
        assert_eq!(a, b, "{}", f.name);
    }
}

#[test]
fn rank3_cgroups_thin_iff_regular() {
    let opts = ClassifyOptions::default();
    for f in common::corpus() {
        if f.cgroup.is_none() || f.geometry.rank() != 3 {
            continue;
        }
        let r = classify(&f.geometry, &opts).unwrap();
        let regular_on_chambers = r.chamber_orbit_count == 1 && r.chamber_action_free;
        assert_eq!(r.thin.passed(), regular_on_chambers, "{}", f.name);
        if r.thin.passed() {
            assert_eq!(r.verdict, Verdict::RegularHypertope, "{}", f.name);
        }
    }
}

#[test]
fn two_squares_not_chamber_connected() {
    // vertices 0..8, edges 0..8; edge e joins vertices e and the next one on its square
    let sys = IncidenceSystem::from_fn(vec![8, 8], |(t, a), (_, b)| {
        let (v, e) = if t == 0 { (a, b) } else { (b, a) };
        let square = e / 4;
        v / 4 == square && (v == e || v == square * 4 + (e + 1) % 4)
    });
    let chambers = sys.chambers(Exec::Sequential);
    assert_eq!(chambers.len(), 16);
    let adj = chambers.adjacency(&sys, Exec::Sequential);
    let (firm, thin) = check_firm_and_thin(&sys, Exec::Sequential);
    assert!(firm.passed() && thin.passed());
    assert!(check_strongly_chamber_connected(&chambers, &adj).failed());
    assert!(check_residually_connected_graph(&sys, None, Exec::Sequential).failed());
}

#[test]
fn sequential_and_parallel_reports_agree() {
    for f in common::corpus().into_iter().take(10) {
        let a = classify(
            &f.geometry,
            &ClassifyOptions {
                exec: Exec::Sequential,
                ..Default::default()
            },
        )
        .unwrap();
        let b = classify(
            &f.geometry,
            &ClassifyOptions {
                exec: Exec::Parallel,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap(),
            "{}",
            f.name
        );
    }
}
