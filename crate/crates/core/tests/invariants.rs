use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use kaclab::cohomology::{h1_inner_form, nth_root_classes, z_from_q};
use kaclab::kac_labelings::{enumerate_kn, filter_for_central, filter_matching_q, orbit_decompose};
use kaclab::lattice::{intermediate_lattices, weight_lattice_quotient, GroupDatum, GroupSpec};
use kaclab::root_system::SimpleType;
use kaclab::torus_oracle::build_coweight_lattice;

fn types(max_rank: usize) -> Vec<SimpleType> {
    SimpleType::all_up_to(max_rank)
}

/// Types and small products, every intermediate lattice.
fn build(max_rank: usize) -> Vec<GroupDatum> {
    let mut lists: Vec<Vec<SimpleType>> = types(max_rank).into_iter().map(|t| vec![t]).collect();
    for pair in [["A1", "A1"], ["A1", "A3"], ["A2", "B2"], ["A1", "D4"]] {
        lists.push(pair.iter().map(|s| s.parse().unwrap()).collect());
    }
    lists
        .iter()
        .flat_map(|ts| intermediate_lattices(ts))
        .map(|s| s.validate().unwrap())
        .collect()
}

fn data(max_rank: usize) -> &'static [GroupDatum] {
    static SMALL: OnceLock<Vec<GroupDatum>> = OnceLock::new();
    static LARGE: OnceLock<Vec<GroupDatum>> = OnceLock::new();
    match max_rank {
        5 => SMALL.get_or_init(|| build(5)),
        _ => LARGE.get_or_init(|| build(6)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn kz_is_stable_under_the_dual_group(idx in any::<prop::sample::Index>(), zi in any::<prop::sample::Index>(), n in 1u32..=3) {
        let all = data(5);
        let d = &all[idx.index(all.len())];
        let centers = d.enumerate_center();
        let z = &centers[zi.index(centers.len())];
        let kz = filter_for_central(&enumerate_kn(d.diagram(), n), d, z).unwrap();
        let set: BTreeSet<_> = kz.iter().map(|p| p.labels().to_vec()).collect();
        for g in d.dual_subgroup().unwrap().elements() {
            for p in &kz {
                prop_assert!(set.contains(&g.act(p.labels())));
            }
        }
    }

    #[test]
    fn k2q_is_stable_and_q_is_neutral(idx in any::<prop::sample::Index>(), qi in any::<prop::sample::Index>()) {
        let all = data(6);
        let d = &all[idx.index(all.len())];
        let k2 = enumerate_kn(d.diagram(), 2);
        let q = &k2[qi.index(k2.len())];
        let k2q = filter_matching_q(&k2, d, q).unwrap();
        prop_assert!(orbit_decompose(&k2q, &d.dual_subgroup().unwrap()).is_ok());
        let r = h1_inner_form(d, q).unwrap();
        let neutral = &r.classes[r.neutral_index];
        prop_assert!(neutral.members.contains(q));
        prop_assert!(neutral.witness.iter().all(|u| *u == 0.into()));
        let total: usize = r.classes.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(total, k2q.len());
    }

    #[test]
    fn twisting_within_an_orbit_changes_nothing(idx in any::<prop::sample::Index>(), qi in any::<prop::sample::Index>(), gi in any::<prop::sample::Index>()) {
        let all = data(6);
        let d = &all[idx.index(all.len())];
        let k2 = enumerate_kn(d.diagram(), 2);
        let q = &k2[qi.index(k2.len())];
        let dual = d.dual_subgroup().unwrap();
        let g = &dual.elements()[gi.index(dual.order())];
        let gq = k2.iter().find(|p| p.labels() == g.act(q.labels()).as_slice()).unwrap();
        let a = h1_inner_form(d, q).unwrap();
        let b = h1_inner_form(d, gq).unwrap();
        let sizes = |r: &kaclab::cohomology::H1Result| {
            let mut v: Vec<usize> = r.classes.iter().map(|c| c.members.len()).collect();
            v.sort_unstable();
            v
        };
        prop_assert_eq!(sizes(&a), sizes(&b));
    }

    #[test]
    fn roots_of_z_from_q_match_h1(idx in any::<prop::sample::Index>(), qi in any::<prop::sample::Index>()) {
        let all = data(6);
        let d = &all[idx.index(all.len())];
        let k2 = enumerate_kn(d.diagram(), 2);
        let q = &k2[qi.index(k2.len())];
        let h1 = h1_inner_form(d, q).unwrap();
        let roots = nth_root_classes(d, &z_from_q(q, d), 2).unwrap();
        let a: Vec<_> = h1.classes.iter().map(|c| c.members.clone()).collect();
        let b: Vec<_> = roots.classes.iter().map(|c| c.members.clone()).collect();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn k1_is_a_single_orbit() {
    for t in types(8) {
        let d = GroupSpec::adjoint(vec![t]).validate().unwrap();
        let orbits = orbit_decompose(&enumerate_kn(d.diagram(), 1), d.fundamental_group()).unwrap();
        assert_eq!(orbits.len(), 1, "{t}");
    }
}

#[test]
fn orders_multiply_to_the_connection_index() {
    for t in types(8) {
        let pq = weight_lattice_quotient(&[t]).len();
        for spec in intermediate_lattices(&[t]) {
            let d = spec.validate().unwrap();
            let dual = d.dual_subgroup().unwrap().order();
            assert_eq!(d.xq_order() * dual, pq, "{t}");
            assert_eq!(
                build_coweight_lattice(&d).unwrap().index_over_coroots() as usize,
                dual,
                "{t}"
            );
        }
    }
}
