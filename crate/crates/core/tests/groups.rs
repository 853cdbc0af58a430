mod common;

use std::collections::{HashSet, VecDeque};

use hypertope::families::presentation_hyper333;
use hypertope::fp::{todd_coxeter, FiniteQuotient, Presentation, Word};
use hypertope::{Error, PermGroup, Permutation};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn gens(n: usize, max: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm(n), 1..=max)
}

fn closure(n: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn order_matches_closure(n in 1usize..=7, g in (1usize..=7).prop_flat_map(|n| gens(n, 3))) {
        let _ = n;
        let d = g[0].degree();
        let group = PermGroup::new(d, g.clone()).unwrap();
        let elems = closure(d, &g);
        prop_assert_eq!(group.order(), elems.len() as u128);
        for x in elems.iter().take(20) {
            prop_assert!(group.contains(x).unwrap());
        }
    }

    #[test]
    fn permutation_laws(a in perm(9), b in perm(9), c in perm(9)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.inverse().then(&a).is_identity());
        let text = a.to_cycle_string();
        prop_assert_eq!(Permutation::parse_cycles(&text, Some(9)).unwrap(), a.clone());
        prop_assert!(a.pow(a.order() as i64).is_identity());
    }

    #[test]
    fn intersection_is_symmetric(g in gens(6, 2), h in gens(6, 2)) {
        let a = PermGroup::new(6, g).unwrap();
        let b = PermGroup::new(6, h).unwrap();
        let ab = a.intersect(&b, 1_000_000).unwrap();
        let ba = b.intersect(&a, 1_000_000).unwrap();
        prop_assert!(ab.same_as(&ba));
        for x in ab.elements() {
            prop_assert!(a.contains(&x).unwrap() && b.contains(&x).unwrap());
        }
        prop_assert_eq!(a.order() % ab.order(), 0);
    }

    #[test]
    fn coset_action_kernel_is_core(g in gens(6, 3), pick in prop::collection::vec(any::<prop::sample::Index>(), 1..3)) {
        let group = PermGroup::new(6, g).unwrap();
        let elems = group.elements();
        let hgens: Vec<Permutation> = pick.iter().map(|i| elems[i.index(elems.len())].clone()).collect();
        let h = group.subgroup(hgens).unwrap();
        prop_assert_eq!(group.order() % h.order(), 0);
        let action = group.coset_action(&h, 10_000).unwrap();
        prop_assert_eq!(action.index() as u128, group.order() / h.order());
        let core = group.core(&h, 1_000_000).unwrap();
        prop_assert_eq!(group.order() / action.action.order(), core.order());
        for k in core.generators() {
            prop_assert!(action.action_of(k).is_identity());
        }
        for x in elems.iter().take(30) {
            let label = action.coset_of(x);
            let rep = action.representative(label);
            prop_assert!(h.contains(&x.then(&rep.inverse())).unwrap());
        }
    }
}

#[test]
fn worked_orders_and_membership() {
    let a6 = common::a6_rank4();
    let g = a6.group();
    assert_eq!(g.order(), 360);
    assert!(!g
        .contains(&Permutation::parse_cycles("(1,2)", Some(6)).unwrap())
        .unwrap());
    let r = a6.generators();
    let g1 = g
        .subgroup(vec![r[0].clone(), r[2].clone(), r[3].clone()])
        .unwrap();
    assert_eq!(g1.order(), 60);
    assert!(!g1.contains(&r[1]).unwrap());
    assert_eq!(a6.parabolic(&[1, 2, 3]).order(), 24);
    assert_eq!(a6.parabolic(&[0, 1, 2]).order(), 24);
    assert_eq!(a6.parabolic(&[0, 3]).order(), 10);
    let mut pairs: Vec<u128> = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]
        .iter()
        .map(|p| a6.parabolic(p).order())
        .collect();
    pairs.sort();
    assert_eq!(pairs, [4, 4, 6, 6, 8, 10]);
    let g2 = a6.parabolic(&[0, 1, 3]);
    assert_eq!(g1.intersect(&g2, 1_000_000).unwrap().order(), 10);
    assert_eq!(g.coset_action(&g1, 100).unwrap().index(), 6);
    assert!(g.subgroup(Vec::new()).unwrap().is_trivial());
    let outside = Permutation::parse_cycles("(1,2)", Some(6)).unwrap();
    assert!(matches!(
        g.subgroup(vec![outside]),
        Err(Error::NotInGroup { .. })
    ));
}

#[test]
fn cube_group_examples() {
    let c = common::cube();
    let g = c.group();
    assert_eq!(g.order(), 48);
    let a = c.parabolic(&[0, 1]);
    let b = c.parabolic(&[1, 2]);
    assert!(a.intersect(&b, 1000).unwrap().same_as(&c.parabolic(&[1])));
    assert!(g.core(&a, 1000).unwrap().is_trivial());
    assert!(g.core(g, 1000).unwrap().same_as(g));
    let k333 = common::k333();
    assert_eq!(k333.group().order(), 18);
    let g0 = k333.parabolic(&[1, 2]);
    assert_eq!(g0.order(), 6);
    assert_eq!(k333.group().coset_action(&g0, 100).unwrap().index(), 3);
}

#[test]
fn relators_vanish_in_quotients() {
    for (b, c) in [(1, 1), (2, 0), (2, 1), (3, 1), (2, 2), (3, 2)] {
        let q = FiniteQuotient::enumerate(&presentation_hyper333(b, c).unwrap(), 100_000).unwrap();
        assert!(q.relators_hold().unwrap(), "({b},{c})");
        assert_eq!(q.group().order(), q.order() as u128);
    }
}

#[test]
fn adding_relators_never_grows_the_group() {
    for b in 1..=3 {
        for c in 0..=3 {
            let p = presentation_hyper333(b, c).unwrap();
            let base = todd_coxeter(&p, &[], 100_000).len();
            for k in 1..=4 {
                let extra = p.parse_word(&format!("(xy)^{k}")).unwrap();
                let smaller = todd_coxeter(&p.clone().with_relator(extra).unwrap(), &[], 100_000);
                assert!(smaller.is_complete());
                assert!(
                    smaller.len() <= base && base.is_multiple_of(smaller.len()),
                    "({b},{c}) k={k}"
                );
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let p = Presentation::from_strs(
        &["x", "y"],
        &["x^3", "y^3", "(x^-1y)^3", "(xy^-1x)^2(xy)^3"],
    )
    .unwrap();
    let a = todd_coxeter(&p, &[], 100_000);
    let b = todd_coxeter(&p, &[], 100_000);
    assert_eq!(
        a.generator_permutations().unwrap(),
        b.generator_permutations().unwrap()
    );
    let sub = [Word::generator(0)];
    let c = todd_coxeter(&p, &sub, 100_000);
    assert_eq!(c.len() * 3, a.len());
}
