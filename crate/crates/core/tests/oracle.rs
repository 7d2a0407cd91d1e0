use kaclab::lattice::{intermediate_lattices, GroupSpec};
use kaclab::root_system::SimpleType;
use kaclab::torus_oracle::{cross_check, Budget};

#[test]
fn sweep_up_to_rank_4_and_products() {
    let mut lists: Vec<Vec<SimpleType>> = SimpleType::all_up_to(4)
        .into_iter()
        .map(|t| vec![t])
        .collect();
    lists.push(vec!["A1".parse().unwrap(), "A1".parse().unwrap()]);
    lists.push(vec!["A1".parse().unwrap(), "A3".parse().unwrap()]);
    for ts in lists {
        for spec in intermediate_lattices(&ts) {
            let d = spec.validate().unwrap();
            for z in d.enumerate_center() {
                for n in 1..=3 {
                    let r = cross_check(&d, &z, n, &Budget::default()).unwrap();
                    assert!(
                        r.verified,
                        "{ts:?} z={:?} n={n}: {:?}",
                        z.values, r.mismatch
                    );
                }
            }
        }
    }
}

#[test]
fn e7_counts() {
    let sc = GroupSpec::preset("sc:E7").unwrap().validate().unwrap();
    let counts: Vec<usize> = sc
        .enumerate_center()
        .iter()
        .map(|z| cross_check(&sc, z, 2, &Budget::default()).unwrap())
        .inspect(|r| assert!(r.verified))
        .map(|r| r.torus_classes)
        .collect();
    assert_eq!(counts, vec![4, 2]);
}

#[test]
fn half_spin_d6_counts() {
    let d = GroupSpec::preset("halfspin:D6")
        .unwrap()
        .validate()
        .unwrap();
    let counts: Vec<usize> = d
        .enumerate_center()
        .iter()
        .map(|z| cross_check(&d, z, 2, &Budget::default()).unwrap())
        .inspect(|r| assert!(r.verified))
        .map(|r| r.torus_classes)
        .collect();
    assert_eq!(counts, vec![5, 3]);
}
