mod common;

use hypertope::checks::{classify, ClassifyOptions, Verdict};
use hypertope::families::*;
use hypertope::fp::FiniteQuotient;
use hypertope::Caps;

fn opts() -> ClassifyOptions {
    ClassifyOptions::default()
}

#[test]
fn hypermap_chirality_law() {
    let mut specs = Vec::new();
    for b in 0..=4 {
        for c in 0..=4 {
            if (b, c) != (0, 0) {
                specs.push(FamilySpec::Hyper333 { b, c });
            }
        }
    }
    for out in sweep(&specs, &opts()) {
        let FamilySpec::Hyper333 { b, c } = out.spec else {
            unreachable!()
        };
        let verdict = out
            .verdict
            .unwrap_or_else(|| panic!("({b},{c}): {:?}", out.error));
        if out.spec.is_degenerate() {
            assert!(b * b + b * c + c * c <= 3);
            assert_eq!(verdict, Verdict::Geometry, "({b},{c})");
            assert_eq!(out.toroidal_rule_holds, None);
            continue;
        }
        assert_eq!(
            out.toroidal_rule_holds,
            Some(true),
            "({b},{c}) -> {verdict}"
        );
        assert_eq!(
            out.presented_order,
            Some(3 * (b * b + b * c + c * c) as u128)
        );
    }
}

#[test]
fn toroidal_maps_follow_the_law() {
    for (b, c) in [(1, 0), (2, 0), (1, 1), (2, 2), (3, 0)] {
        let q = FiniteQuotient::enumerate(&presentation_map63(b, c).unwrap(), 1_000_000).unwrap();
        assert_eq!(q.order() as u32, 12 * (b * b + b * c + c * c), "({b},{c})");
        assert!(toroidal_is_regular(b, c));
    }
    assert!(!toroidal_is_regular(2, 1));
}

#[test]
fn tables_and_double_covers() {
    let report = reproduce_tables(&opts());
    assert_eq!(report.rows.len(), 23);
    for row in &report.rows {
        assert_eq!(row.status, RowStatus::Match, "{:?}", row);
    }
    assert_eq!(report.pairs.len(), 11);
    assert!(report.pairs.iter().all(|p| p.holds));
    assert_eq!(report.unpaired.len(), 1);
    assert_eq!((report.unpaired[0].p, report.unpaired[0].s), (4, (1, 1)));
}

#[test]
fn rotation_subgroups() {
    let c = common::quotient_cgroup(&presentation_map63(2, 0).unwrap());
    let (plus, index) = c.rotation_subgroup();
    assert_eq!((index, plus.group().order()), (2, 24));
    let (plus, index) = common::twelve_points().rotation_subgroup();
    assert_eq!(index, 1);
    assert_eq!(plus.group().order(), common::twelve_points().group().order());
}

#[test]
fn hyper333_cgroup_when_it_does_not_collapse() {
    let caps = Caps::default();
    for (b, c) in [(1, 0), (2, 0), (1, 1), (2, 2), (2, 1), (3, 1), (3, 2)] {
        let h = hypertope_333(b, c, &caps).unwrap();
        let rot = h.rotations.group().order();
        assert_eq!(rot, 3 * (b * b + b * c + c * c) as u128);
        let expect = b * c * (b as i64 - c as i64).unsigned_abs() as u32 == 0;
        assert_eq!(h.cgroup.is_some(), expect, "({b},{c})");
        if let Some(cg) = &h.cgroup {
            assert_eq!(cg.group().order(), 2 * rot);
        }
    }
    assert!(hypertope_333(0, 0, &caps).is_err());
}

#[test]
fn family_specs() {
    let s = FamilySpec::parse("gplus_pab", Some(6), Some(2), Some(0), None).unwrap();
    assert!(s.is_deferred());
    assert!(FamilySpec::parse("gplus_pab", Some(3), None, Some(0), None).is_err());
    assert!(FamilySpec::parse("nonsense", None, None, None, None).is_err());
    let s = FamilySpec::parse("hyper333", None, None, Some(2), Some(1)).unwrap();
    let fg = s.build(&Caps::default()).unwrap();
    assert_eq!(fg.presented_order, 21);
    let r = classify(&fg.geometry, &opts()).unwrap();
    assert_eq!(r.verdict, Verdict::ChiralHypertope);
    let out = sweep(&[FamilySpec::GplusPab { p: 6, a: 2, b: 0 }], &opts());
    assert!(out[0].deferred && out[0].verdict.is_none());
}

#[test]
fn config_files() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../families.toml"))
        .unwrap();
    let cfg = FamiliesConfig::parse(&text).unwrap();
    assert!(!cfg.sweep.is_empty());
    for grid in &cfg.sweep {
        assert!(!grid.specs().unwrap().is_empty());
    }
    let bad = FamiliesConfig::parse("[[sweep]]\nfamily = \"hyper333\"\nb = [1, 2]\nbogus = 3\n");
    assert!(bad.is_err());
    let grid = FamiliesConfig::parse(
        "[[sweep]]\nfamily = \"hyper333\"\nb = [1, 2]\nc = [1, 1]\nskip_degenerate = true\n",
    )
    .unwrap();
    assert_eq!(
        grid.sweep[0].specs().unwrap(),
        [FamilySpec::Hyper333 { b: 2, c: 1 }]
    );
}
