#![allow(dead_code, clippy::needless_range_loop)]

use hypertope::families::{gplus_pab, hypertope_333, presentation_map63, presentation_poly63p};
use hypertope::fp::{FiniteQuotient, Presentation};
use hypertope::{CGroup, CPlusGroup, Caps, CosetGeometry, Permutation};

pub fn perms(cycles: &[&str], degree: usize) -> Vec<Permutation> {
    cycles
        .iter()
        .map(|c| Permutation::parse_cycles(c, Some(degree)).unwrap())
        .collect()
}

pub fn cube() -> CGroup {
    CGroup::new(perms(
        &["(1,2)(3,4)(5,6)(7,8)", "(2,3)(6,7)", "(3,5)(4,6)"],
        8,
    ))
    .unwrap()
}

pub fn k333() -> CGroup {
    let p = Presentation::from_strs(
        &["r0", "r1", "r2"],
        &["r0^2", "r1^2", "r2^2", "(r0r1r2)^2", "(r0r1)^3", "(r1r2)^3"],
    )
    .unwrap();
    quotient_cgroup(&p)
}

pub fn a6_rank4() -> CGroup {
    CGroup::new(perms(
        &["(1,2)(3,4)", "(2,6)(3,5)", "(1,4)(2,3)", "(1,4)(3,5)"],
        6,
    ))
    .unwrap()
}

pub fn twelve_points() -> CGroup {
    CGroup::new(perms(
        &[
            "(3,6)(4,7)(5,9)(8,10)(11,12)",
            "(2,4)(3,6)(5,10)(8,12)(9,11)",
            "(1,2)(3,5)(4,7)(6,9)(8,11)(10,12)",
            "(1,3)(2,5)(4,8)(7,11)(10,12)",
        ],
        12,
    ))
    .unwrap()
}

pub fn quotient_cgroup(p: &Presentation) -> CGroup {
    let q = FiniteQuotient::enumerate(p, 1_000_000).unwrap();
    CGroup::with_group(q.group().clone(), q.generator_images().to_vec()).unwrap()
}

pub fn quotient_cplus(p: &Presentation) -> CPlusGroup {
    let q = FiniteQuotient::enumerate(p, 1_000_000).unwrap();
    CPlusGroup::with_group(q.group().clone(), q.generator_images().to_vec()).unwrap()
}

/// String Coxeter group `[p_1, ..., p_{r-1}]`.
pub fn coxeter(labels: &[u32]) -> CGroup {
    let r = labels.len() + 1;
    let names: Vec<String> = (0..r).map(|i| format!("r{i}")).collect();
    let mut rels: Vec<String> = names.iter().map(|n| format!("{n}^2")).collect();
    for i in 0..r {
        for j in i + 1..r {
            let m = if j == i + 1 { labels[i] } else { 2 };
            rels.push(format!("(r{i}r{j})^{m}"));
        }
    }
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
    quotient_cgroup(&Presentation::from_strs(&names, &rels).unwrap())
}

pub struct Fixture {
    pub name: String,
    pub geometry: CosetGeometry,
    /// Set when the geometry is the C-group geometry of these generators.
    pub cgroup: Option<CGroup>,
    /// Set when the geometry comes from the rotation construction.
    pub cplus: Option<CPlusGroup>,
}

fn from_c(name: &str, c: CGroup) -> Fixture {
    Fixture {
        name: name.to_string(),
        geometry: CosetGeometry::from_cgroup(&c, &Caps::default()).unwrap(),
        cgroup: Some(c),
        cplus: None,
    }
}

fn from_plus(name: &str, c: CPlusGroup) -> Fixture {
    Fixture {
        name: name.to_string(),
        geometry: CosetGeometry::from_cplus(&c, &Caps::default()).unwrap(),
        cgroup: None,
        cplus: Some(c),
    }
}

/// The fixture corpus: polytopes, toroidal maps and hypermaps, the worked
/// non-thin examples, and rank-four hypertopes both regular and chiral.
pub fn corpus() -> Vec<Fixture> {
    let caps = Caps::default();
    let mut out = vec![
        from_c("pentagon", coxeter(&[5])),
        from_c("tetrahedron", coxeter(&[3, 3])),
        from_c("cube", cube()),
        from_c("octahedron", coxeter(&[3, 4])),
        from_c("icosahedron", coxeter(&[3, 5])),
        from_c("4-simplex", coxeter(&[3, 3, 3])),
        from_c("k333", k333()),
        from_c("a6_rank4", a6_rank4()),
        from_c("twelve_points", twelve_points()),
        from_c(
            "{6,3}_(2,0)",
            quotient_cgroup(&presentation_map63(2, 0).unwrap()),
        ),
        from_c(
            "{6,3}_(1,1)",
            quotient_cgroup(&presentation_map63(1, 1).unwrap()),
        ),
        from_c(
            "{{6,3}_(2,0),{3,3}}",
            quotient_cgroup(&presentation_poly63p(3, 2, 0).unwrap()),
        ),
    ];
    for (b, c) in [(2, 0), (2, 1), (1, 1), (3, 1)] {
        let h = hypertope_333(b, c, &caps).unwrap();
        if let Some(cg) = h.cgroup.clone() {
            out.push(from_c(&format!("(3,3,3)_({b},{c}) C-group"), cg));
        }
        out.push(Fixture {
            name: format!("(3,3,3)_({b},{c})"),
            geometry: h.geometry,
            cgroup: None,
            cplus: Some(h.rotations),
        });
    }
    for (p, a, b) in [(3, 2, 0), (3, 1, 2), (4, 1, 1)] {
        out.push(from_plus(
            &format!("G+({p},{a},{b})"),
            quotient_cplus(&gplus_pab(p, a, b).unwrap()),
        ));
    }
    out.push(from_plus("a6_rank4 rotations", a6_rank4().rotation_subgroup().0));
    let (cube_rot, _) = cube().rotation_subgroup();
    out.push(from_plus("cube rotations", cube_rot));
    out
}
