use std::collections::BTreeSet;

use kaclab::cohomology::{h1_adjoint, h1_inner_form, real_form_table, z_from_q};
use kaclab::kac_labelings::{enumerate_kn, KacLabeling};
use kaclab::lattice::{GroupDatum, GroupSpec};

// display order p1p2p3/p4p7/p5p6p0
const Q: [&str; 6] = [
    "000/00/002",
    "200/00/000",
    "100/00/001",
    "010/00/000",
    "000/00/010",
    "000/01/000",
];

fn datum(preset: &str) -> GroupDatum {
    GroupSpec::preset(preset).unwrap().validate().unwrap()
}

fn q(d: &GroupDatum, i: usize) -> KacLabeling {
    KacLabeling::parse(d.diagram(), Q[i - 1]).unwrap()
}

fn displays(d: &GroupDatum, ps: &[KacLabeling]) -> BTreeSet<String> {
    ps.iter().map(|p| p.to_display(d.diagram())).collect()
}

#[test]
fn k2_is_the_six_labelings() {
    let d = datum("sc:E7");
    let k2 = enumerate_kn(d.diagram(), 2);
    let expected: BTreeSet<String> = Q.iter().map(|s| s.to_string()).collect();
    assert_eq!(k2.len(), 6);
    assert_eq!(displays(&d, &k2), expected);
}

#[test]
fn adjoint_orbit_partition() {
    let d = datum("ad:E7");
    let r = h1_adjoint(&["E7".parse().unwrap()]).unwrap();
    let got: BTreeSet<BTreeSet<String>> =
        r.classes.iter().map(|c| displays(&d, &c.members)).collect();
    let expected: BTreeSet<BTreeSet<String>> = [vec![1, 2], vec![3], vec![4, 5], vec![6]]
        .iter()
        .map(|g| g.iter().map(|&i| Q[i - 1].to_string()).collect())
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn simply_connected_even_and_odd() {
    let d = datum("sc:E7");
    let even: BTreeSet<String> = [1, 2, 4, 5].iter().map(|&i| Q[i - 1].to_string()).collect();
    let odd: BTreeSet<String> = [3, 6].iter().map(|&i| Q[i - 1].to_string()).collect();
    for (i, expected) in [(1, &even), (4, &even), (6, &odd), (3, &odd)] {
        let r = h1_inner_form(&d, &q(&d, i)).unwrap();
        assert_eq!(r.len(), expected.len());
        let all: BTreeSet<String> = r
            .classes
            .iter()
            .flat_map(|c| displays(&d, &c.members))
            .collect();
        assert_eq!(&all, expected);
        assert!(r.classes.iter().all(|c| c.members.len() == 1));
    }
}

#[test]
fn parity_of_the_twists() {
    let d = datum("sc:E7");
    for i in 1..=6 {
        let odd = !z_from_q(&q(&d, i), &d).is_trivial();
        assert_eq!(odd, i == 3 || i == 6, "q{i}");
    }
}

#[test]
fn named_forms() {
    let d = datum("ad:E7");
    let rows = real_form_table("E7".parse().unwrap()).unwrap();
    for (name, i) in [("compact", 1), ("EVI", 4), ("EV", 6), ("EVII", 3)] {
        let row = rows
            .iter()
            .find(|r| r.name.as_deref() == Some(name))
            .unwrap();
        assert!(row.members.contains(&q(&d, i)));
    }
}

#[test]
fn adjoint_count_is_independent_of_q() {
    let d = datum("ad:E7");
    for i in 1..=6 {
        assert_eq!(h1_inner_form(&d, &q(&d, i)).unwrap().len(), 4);
    }
}
