//! H^1 of compact groups and their inner forms, and conjugacy classes of
//! `n`-th roots of central elements, all read off from labeling orbits.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extended_dynkin::ExtendedDiagram;
use crate::kac_labelings::{
    enumerate_kn, filter_for_central, filter_matching_q, orbit_decompose, KacLabeling,
    LabelingOrbit,
};
use crate::lattice::{CentralElement, GroupDatum, GroupSpec, GroupSpecFile};
use crate::rational::{int, Rational};
use crate::root_system::{Family, SimpleType};
use crate::torus_oracle::{
    build_coweight_lattice, zeta_representative, CoweightLattice, TorusPoint,
};

/// `(1/n) sum_alpha p_alpha omega_alpha^vee mod X^vee`.
pub fn phi_with(
    p: &KacLabeling,
    diagram: &ExtendedDiagram,
    lattice: &CoweightLattice,
) -> TorusPoint {
    let l = diagram.rank();
    let n = int(i64::from(p.n()));
    let mut y = vec![Rational::zero(); l];
    for (i, &pi) in p.simple_labels(diagram).iter().enumerate() {
        if pi != 0 {
            for (x, w) in y.iter_mut().zip(lattice.fundamental_coweight(i)) {
                *x += int(pi) * w / n;
            }
        }
    }
    lattice.canonicalize(&y)
}

pub fn phi(p: &KacLabeling, datum: &GroupDatum) -> Result<TorusPoint> {
    Ok(phi_with(
        p,
        datum.diagram(),
        &build_coweight_lattice(datum)?,
    ))
}

/// The central element `phi(q)^n`, i.e. `sum c_alpha q_alpha mod Z` per generator.
pub fn z_from_q(q: &KacLabeling, datum: &GroupDatum) -> CentralElement {
    CentralElement::new(datum.congruence_values(&q.simple_labels(datum.diagram())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Class {
    pub representative: KacLabeling,
    pub members: Vec<KacLabeling>,
    pub stabilizer_order: usize,
    /// Member the witness is computed from: `q` for the neutral class, the
    /// representative otherwise.
    pub witness_labeling: KacLabeling,
    /// `u_alpha = (p_alpha - q_alpha)/2` over the simple roots.
    #[serde(serialize_with = "crate::rational::serialize_rationals")]
    pub witness: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Result {
    pub spec: GroupSpecFile,
    pub q: KacLabeling,
    pub classes: Vec<H1Class>,
    pub neutral_index: usize,
}

impl H1Result {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn witness(p: &KacLabeling, q: &KacLabeling, diagram: &ExtendedDiagram) -> Vec<Rational> {
    p.simple_labels(diagram)
        .iter()
        .zip(q.simple_labels(diagram))
        .map(|(&a, b)| Rational::new(a - b, 2))
        .collect()
}

fn check_q(datum: &GroupDatum, q: &KacLabeling) -> Result<()> {
    if q.n() != 2 {
        return Err(Error::InvalidLabeling(format!(
            "q must be a 2-labeling, got n = {}",
            q.n()
        )));
    }
    KacLabeling::new(datum.diagram(), q.labels().to_vec(), 2).map(|_| ())
}

/// `H^1(R, _qG)` as the orbits of `X^vee/Q^vee` on `K_2^(q)`.
pub fn h1_inner_form(datum: &GroupDatum, q: &KacLabeling) -> Result<H1Result> {
    check_q(datum, q)?;
    let diagram = datum.diagram();
    let k2q = filter_matching_q(&enumerate_kn(diagram, 2), datum, q)?;
    let orbits = orbit_decompose(&k2q, &datum.dual_subgroup()?)?;
    let neutral_index = orbits
        .iter()
        .position(|o| o.contains(q))
        .ok_or_else(|| Error::Consistency("q is not in K_2^(q)".into()))?;
    let classes = orbits
        .into_iter()
        .enumerate()
        .map(|(i, o)| {
            let w = if i == neutral_index {
                q.clone()
            } else {
                o.representative.clone()
            };
            H1Class {
                witness: witness(&w, q, diagram),
                witness_labeling: w,
                representative: o.representative,
                members: o.members,
                stabilizer_order: o.stabilizer_order,
            }
        })
        .collect();
    Ok(H1Result {
        spec: datum.normalized_spec().to_file_format(),
        q: q.clone(),
        classes,
        neutral_index,
    })
}

/// The compact labeling: 2 on every extra vertex, 0 elsewhere.
pub fn compact_labeling(diagram: &ExtendedDiagram) -> KacLabeling {
    let mut labels = vec![0; diagram.num_vertices()];
    for c in diagram.components() {
        labels[c.extra_vertex()] = 2;
    }
    KacLabeling::new(diagram, labels, 2).expect("compact labeling is a 2-labeling")
}

fn partition(orbits: &[LabelingOrbit]) -> Vec<&[KacLabeling]> {
    orbits.iter().map(|o| o.members.as_slice()).collect()
}

/// `H^1(R, G^ad)` for the compact adjoint group, twisted by the compact labeling.
pub fn h1_adjoint(types: &[SimpleType]) -> Result<H1Result> {
    let datum = GroupSpec::adjoint(types.to_vec()).validate()?;
    let diagram = datum.diagram();
    let direct = orbit_decompose(&enumerate_kn(diagram, 2), datum.fundamental_group())?;
    let result = h1_inner_form(&datum, &compact_labeling(diagram))?;
    let via_inner: Vec<&[KacLabeling]> = result
        .classes
        .iter()
        .map(|c| c.members.as_slice())
        .collect();
    if partition(&direct) != via_inner {
        return Err(Error::Consistency("adjoint H^1 paths disagree".into()));
    }
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootClass {
    pub representative: KacLabeling,
    pub members: Vec<KacLabeling>,
    pub stabilizer_order: usize,
    pub torus_point: TorusPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootsResult {
    pub spec: GroupSpecFile,
    pub z: CentralElement,
    pub n: u32,
    pub classes: Vec<RootClass>,
}

/// Conjugacy classes of `g` with `g^n = z`, as orbits on `K_n^z` with their
/// torus points.
pub fn nth_root_classes(datum: &GroupDatum, z: &CentralElement, n: u32) -> Result<RootsResult> {
    if n == 0 {
        return Err(Error::InvalidLabeling("n must be positive".into()));
    }
    let diagram = datum.diagram();
    let lattice = build_coweight_lattice(datum)?;
    let kz = filter_for_central(&enumerate_kn(diagram, n), datum, z)?;
    let orbits = orbit_decompose(&kz, &datum.dual_subgroup()?)?;
    let zeta = zeta_representative(datum, &lattice, z)?;
    let nr = int(i64::from(n));
    let classes = orbits
        .into_iter()
        .map(|o| {
            let t = phi_with(&o.representative, diagram, &lattice);
            let diff: Vec<Rational> = t
                .coords
                .iter()
                .zip(&zeta.coords)
                .map(|(a, b)| *a * nr - b)
                .collect();
            if !lattice.contains(&diff) {
                return Err(Error::Consistency(format!(
                    "phi({}) is not an n-th root of z",
                    o.representative.to_machine()
                )));
            }
            Ok(RootClass {
                representative: o.representative,
                members: o.members,
                stabilizer_order: o.stabilizer_order,
                torus_point: t,
            })
        })
        .collect::<Result<_>>()?;
    Ok(RootsResult {
        spec: datum.normalized_spec().to_file_format(),
        z: z.clone(),
        n,
        classes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealFormRow {
    pub name: Option<String>,
    pub representative: KacLabeling,
    pub display: String,
    pub members: Vec<KacLabeling>,
}

const E7_NAMES: [(&str, &str); 4] = [
    ("compact", "000/00/002"),
    ("EVI", "010/00/000"),
    ("EV", "000/01/000"),
    ("EVII", "100/00/001"),
];

/// Orbits of `P^vee/Q^vee` on `K_2`: the admissible twists `q`, one per row.
pub fn real_form_table(ty: SimpleType) -> Result<Vec<RealFormRow>> {
    let result = h1_adjoint(&[ty])?;
    let diagram = ExtendedDiagram::new(&[ty])?;
    let named: Vec<(&str, KacLabeling)> = if ty.family() == Family::E && ty.rank() == 7 {
        E7_NAMES
            .iter()
            .map(|(name, q)| Ok((*name, KacLabeling::parse(&diagram, q)?)))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    Ok(result
        .classes
        .into_iter()
        .map(|c| {
            let name = named
                .iter()
                .find(|(_, q)| c.members.binary_search(q).is_ok())
                .map(|(name, _)| name.to_string())
                .or_else(|| {
                    c.members
                        .contains(&compact_labeling(&diagram))
                        .then(|| "compact".to_string())
                });
            RealFormRow {
                name,
                display: c.representative.to_display(&diagram),
                representative: c.representative,
                members: c.members,
            }
        })
        .collect())
}
