use std::collections::BTreeSet;

use kaclab::cohomology::{compact_labeling, h1_inner_form};
use kaclab::kac_labelings::KacLabeling;
use kaclab::lattice::{GroupDatum, GroupSpec};

fn datum(preset: &str) -> GroupDatum {
    GroupSpec::preset(preset).unwrap().validate().unwrap()
}

/// 1 on vertex 0 and vertex `l` of `D_l`.
fn odd_twist(d: &GroupDatum) -> KacLabeling {
    let l = d.rank();
    let mut labels = vec![0; l + 1];
    labels[l - 1] = 1;
    labels[l] = 1;
    KacLabeling::new(d.diagram(), labels, 2).unwrap()
}

#[test]
fn class_counts_for_d2k() {
    for k in 2..=10usize {
        let d = datum(&format!("halfspin:D{}", 2 * k));
        let even = h1_inner_form(&d, &compact_labeling(d.diagram())).unwrap();
        let odd = h1_inner_form(&d, &odd_twist(&d)).unwrap();
        assert_eq!(even.len(), k / 2 + 4, "even, k = {k}");
        assert_eq!(odd.len(), k.div_ceil(2) + 1, "odd, k = {k}");
    }
}

// p0p1/p2p3p4/p5p6
const D6_EVEN: [&str; 5] = [
    "10/000/10",
    "01/000/01",
    "20/000/00",
    "02/000/00",
    "00/100/00",
];
const D6_ODD: [&str; 3] = ["11/000/00", "10/000/01", "00/010/00"];

fn check_list(d: &GroupDatum, twist: &KacLabeling, list: &[&str]) {
    let r = h1_inner_form(d, twist).unwrap();
    assert_eq!(r.len(), list.len());
    let hit: BTreeSet<usize> = list
        .iter()
        .map(|s| {
            let p = KacLabeling::parse(d.diagram(), s).unwrap();
            r.classes
                .iter()
                .position(|c| c.members.contains(&p))
                .unwrap()
        })
        .collect();
    assert_eq!(hit.len(), list.len());
}

#[test]
fn d6_lists() {
    let d = datum("halfspin:D6");
    check_list(&d, &compact_labeling(d.diagram()), &D6_EVEN);
    check_list(&d, &odd_twist(&d), &D6_ODD);
}

#[test]
fn special_orthogonal_counts() {
    for l in 4..=8 {
        let d = datum(&format!("so:D{l}"));
        assert_eq!(
            h1_inner_form(&d, &compact_labeling(d.diagram()))
                .unwrap()
                .len(),
            l + 1,
            "D{l}"
        );
    }
}
