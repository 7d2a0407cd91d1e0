//! Brute-force torus model `T = V/X^vee`: exact enumeration of the `n`-th
//! roots of a central element inside `T`, their Weyl orbits, and a
//! class-by-class comparison with the labeling side.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cohomology::phi_with;
use crate::error::{Error, Result};
use crate::extended_dynkin::ExtendedDiagram;
use crate::hnf::{hnf_basis, kernel_mod};
use crate::kac_labelings::{enumerate_kn, filter_for_central, orbit_decompose};
use crate::lattice::{CentralElement, GroupDatum, GroupSpecFile};
use crate::rational::{determinant, frac, int, inverse, vec_mat, Rational};

/// A point of `T`, in simple-coroot coordinates, reduced into the half-open
/// fundamental parallelepiped of the `X^vee` basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TorusPoint {
    #[serde(serialize_with = "crate::rational::serialize_rationals")]
    pub coords: Vec<Rational>,
}

/// `X^vee` with a basis in coroot coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoweightLattice {
    /// Rows are basis vectors, coroot coordinates.
    basis: Vec<Vec<Rational>>,
    basis_inverse: Vec<Vec<Rational>>,
    /// A basis in fundamental-coweight coordinates, Hermite normal form.
    integer_basis: Vec<Vec<i128>>,
    /// Rows are the `omega_i^vee`, coroot coordinates.
    coweights: Vec<Vec<Rational>>,
}

impl CoweightLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// The basis in fundamental-coweight coordinates.
    pub fn integer_basis(&self) -> &[Vec<i128>] {
        &self.integer_basis
    }

    pub fn fundamental_coweight(&self, i: usize) -> &[Rational] {
        &self.coweights[i]
    }

    /// `[X^vee : Q^vee]`.
    pub fn index_over_coroots(&self) -> i64 {
        let d = determinant(&self.basis);
        (int(1) / d.abs()).to_integer()
    }

    fn coordinates(&self, y: &[Rational]) -> Vec<Rational> {
        vec_mat(y, &self.basis_inverse)
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        self.coordinates(y).iter().all(|x| x.is_integer())
    }

    pub fn canonicalize(&self, y: &[Rational]) -> TorusPoint {
        let c: Vec<Rational> = self.coordinates(y).into_iter().map(frac).collect();
        TorusPoint {
            coords: vec_mat(&c, &self.basis),
        }
    }
}

/// Global matrix whose row `i` is `omega_i^vee` in coroot coordinates.
fn coweight_rows(diagram: &ExtendedDiagram) -> Vec<Vec<Rational>> {
    let l = diagram.rank();
    let mut rows = vec![vec![Rational::zero(); l]; l];
    for c in diagram.components() {
        let inv = c.data.inverse_cartan();
        for i in 0..c.rank() {
            for k in 0..c.rank() {
                rows[c.simple_offset + i][c.simple_offset + k] = inv[i][k];
            }
        }
    }
    rows
}

/// `X^vee = { y in P^vee : <lambda, y> in Z }` for the generators of `X/Q`.
pub fn build_coweight_lattice(datum: &GroupDatum) -> Result<CoweightLattice> {
    let l = datum.rank();
    let gens = datum.generators();
    let d: i64 = gens.iter().flatten().fold(1, |acc, x| acc.lcm(x.denom()));
    // y = sum a_i omega_i^vee pairs with lambda to sum c_i a_i
    let m: Vec<Vec<i128>> = gens
        .iter()
        .map(|g| {
            g.iter()
                .map(|x| i128::from((*x * int(d)).to_integer()))
                .collect()
        })
        .collect();
    let integer_basis = hnf_basis(&kernel_mod(&m, l, i128::from(d)));
    if integer_basis.len() != l {
        return Err(Error::Consistency(format!(
            "coweight lattice has rank {}, expected {l}",
            integer_basis.len()
        )));
    }
    let coweights = coweight_rows(datum.diagram());
    let raw: Vec<Vec<Rational>> = integer_basis
        .iter()
        .map(|row| {
            let a: Vec<Rational> = row
                .iter()
                .map(|&x| i64::try_from(x).map(int))
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Consistency("coweight basis entry overflows".into()))?;
            Ok(vec_mat(&a, &coweights))
        })
        .collect::<Result<_>>()?;
    // Hermite form again in coroot coordinates, after clearing denominators
    let e: i64 = raw.iter().flatten().fold(1, |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<Vec<i128>> = raw
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| i128::from((*x * int(e)).to_integer()))
                .collect()
        })
        .collect();
    let basis: Vec<Vec<Rational>> = hnf_basis(&scaled)
        .iter()
        .map(|r| r.iter().map(|&x| Rational::new(x as i64, e)).collect())
        .collect();
    let basis_inverse =
        inverse(&basis).ok_or_else(|| Error::Consistency("coweight basis is singular".into()))?;
    let lattice = CoweightLattice {
        basis,
        basis_inverse,
        integer_basis,
        coweights,
    };
    for k in 0..l {
        let e: Vec<Rational> = (0..l).map(|j| int(i64::from(j == k))).collect();
        if !lattice.contains(&e) {
            return Err(Error::Consistency(format!(
                "simple coroot {} not in X^vee",
                k + 1
            )));
        }
    }
    for row in &lattice.basis {
        for g in gens {
            if !pair(datum.diagram(), g, row).is_integer() {
                return Err(Error::Consistency(
                    "X^vee basis pairs non-integrally with X".into(),
                ));
            }
        }
    }
    Ok(lattice)
}

/// `<lambda, y>`, lambda in root coordinates and y in coroot coordinates.
pub fn pair(diagram: &ExtendedDiagram, lambda: &[Rational], y: &[Rational]) -> Rational {
    diagram
        .components()
        .iter()
        .map(|c| {
            let r = c.simple_offset..c.simple_offset + c.rank();
            let local = &lambda[r.clone()];
            r.clone()
                .map(|k| y[k] * c.data.coroot_pairing(local, k - c.simple_offset))
                .sum::<Rational>()
        })
        .sum()
}

/// A coset representative `zeta in P^vee` with `<lambda, zeta> = z(lambda) mod Z`.
pub fn zeta_representative(
    datum: &GroupDatum,
    lattice: &CoweightLattice,
    z: &CentralElement,
) -> Result<TorusPoint> {
    datum.check_central(z)?;
    let l = datum.rank();
    let start = lattice.canonicalize(&vec![Rational::zero(); l]);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let values: Vec<Rational> = datum
            .generators()
            .iter()
            .map(|g| frac(pair(datum.diagram(), g, &p.coords)))
            .collect();
        if values == z.values {
            return Ok(p);
        }
        for i in 0..l {
            let y: Vec<Rational> = p
                .coords
                .iter()
                .zip(lattice.fundamental_coweight(i))
                .map(|(a, b)| a + b)
                .collect();
            let q = lattice.canonicalize(&y);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    Err(Error::InvalidCentral(
        "no coweight realizes these values".into(),
    ))
}

/// `T_n^z`: every `(zeta + mu)/n mod X^vee` with `mu` in `X^vee/nX^vee`, sorted.
pub fn enumerate_roots_of_z(
    datum: &GroupDatum,
    lattice: &CoweightLattice,
    z: &CentralElement,
    n: u32,
) -> Result<Vec<TorusPoint>> {
    if n == 0 {
        return Err(Error::InvalidLabeling("n must be positive".into()));
    }
    let zeta = zeta_representative(datum, lattice, z)?;
    let l = lattice.rank();
    let nr = int(i64::from(n));
    let mut out = BTreeSet::new();
    let mut k = vec![0u32; l];
    loop {
        let mut y = zeta.coords.clone();
        for (ki, b) in k.iter().zip(lattice.basis()) {
            for (x, bj) in y.iter_mut().zip(b) {
                *x += int(i64::from(*ki)) * bj;
            }
        }
        let y: Vec<Rational> = y.into_iter().map(|x| x / nr).collect();
        out.insert(lattice.canonicalize(&y));
        // odometer over {0..n-1}^l
        let Some(pos) = k.iter().position(|&x| x + 1 < n) else {
            break;
        };
        k[pos] += 1;
        k[..pos].iter_mut().for_each(|x| *x = 0);
    }
    let expected = u128::from(n).pow(l as u32);
    if out.len() as u128 != expected {
        return Err(Error::Consistency(format!(
            "found {} points in T_n^z, expected {expected}",
            out.len()
        )));
    }
    Ok(out.into_iter().collect())
}

/// `s_i(y) = y - <alpha_i, y> alpha_i^vee` for a global simple index `i`.
fn reflect(diagram: &ExtendedDiagram, i: usize, y: &[Rational]) -> Vec<Rational> {
    let (ci, _) = diagram.component_of_vertex(diagram.vertex_of_simple(i));
    let c = &diagram.components()[ci];
    let local = &y[c.simple_offset..c.simple_offset + c.rank()];
    let p = c.data.root_pairing(i - c.simple_offset, local);
    let mut out = y.to_vec();
    out[i] -= p;
    out
}

/// W-orbits on a finite reflection-stable point set, each sorted, ordered by
/// least element.
pub fn weyl_orbits(
    points: &[TorusPoint],
    diagram: &ExtendedDiagram,
    lattice: &CoweightLattice,
) -> Result<Vec<Vec<TorusPoint>>> {
    let all: BTreeSet<&TorusPoint> = points.iter().collect();
    let mut done: BTreeSet<TorusPoint> = BTreeSet::new();
    let mut orbits = Vec::new();
    for p in &all {
        if done.contains(*p) {
            continue;
        }
        let mut orbit = BTreeSet::from([(*p).clone()]);
        let mut queue = VecDeque::from([(*p).clone()]);
        while let Some(t) = queue.pop_front() {
            for i in 0..diagram.rank() {
                let image = lattice.canonicalize(&reflect(diagram, i, &t.coords));
                if !all.contains(&image) {
                    return Err(Error::Consistency(format!(
                        "reflection {} sends {:?} outside the point set",
                        i + 1,
                        t.coords
                    )));
                }
                if orbit.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        done.extend(orbit.iter().cloned());
        orbits.push(orbit.into_iter().collect());
    }
    Ok(orbits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_rank: usize,
    pub max_n: u32,
}

pub const MAX_RANK_VAR: &str = "KACLAB_ORACLE_MAX_RANK";
pub const MAX_N_VAR: &str = "KACLAB_ORACLE_MAX_N";

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_rank: 7,
            max_n: 3,
        }
    }
}

impl Budget {
    /// Defaults overridden by `KACLAB_ORACLE_MAX_RANK` / `KACLAB_ORACLE_MAX_N`.
    pub fn from_env() -> Result<Self> {
        let mut b = Budget::default();
        if let Ok(v) = std::env::var(MAX_RANK_VAR) {
            b.max_rank = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{MAX_RANK_VAR}={v}")))?;
        }
        if let Ok(v) = std::env::var(MAX_N_VAR) {
            b.max_n = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{MAX_N_VAR}={v}")))?;
        }
        Ok(b)
    }

    pub fn check(&self, rank: usize, n: u32) -> Result<()> {
        if rank > self.max_rank || n > self.max_n {
            return Err(Error::BudgetExceeded {
                rank,
                n,
                points: u128::from(n).saturating_pow(rank as u32),
                max_rank: self.max_rank,
                max_n: self.max_n,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchRow {
    pub representative: String,
    pub labeling_orbit_size: usize,
    pub phi: TorusPoint,
    pub torus_orbit: usize,
    pub torus_orbit_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub spec: GroupSpecFile,
    pub z: CentralElement,
    pub n: u32,
    pub labelings: usize,
    pub torus_points: usize,
    pub labeling_classes: usize,
    pub torus_classes: usize,
    pub labeling_orbit_sizes: Vec<usize>,
    pub torus_orbit_sizes: Vec<usize>,
    pub matching: Vec<MatchRow>,
    pub verified: bool,
    pub mismatch: Option<String>,
}

/// Compare `K_n^z/(X^vee/Q^vee)` with `T_n^z/W` through `phi`.
pub fn cross_check(
    datum: &GroupDatum,
    z: &CentralElement,
    n: u32,
    budget: &Budget,
) -> Result<CrossCheckReport> {
    budget.check(datum.rank(), n)?;
    let diagram = datum.diagram();
    let lattice = build_coweight_lattice(datum)?;

    let kz = filter_for_central(&enumerate_kn(diagram, n), datum, z)?;
    let lab_orbits = orbit_decompose(&kz, &datum.dual_subgroup()?)?;

    let points = enumerate_roots_of_z(datum, &lattice, z, n)?;
    let tor_orbits = weyl_orbits(&points, diagram, &lattice)?;
    let orbit_of: BTreeMap<&TorusPoint, usize> = tor_orbits
        .iter()
        .enumerate()
        .flat_map(|(i, o)| o.iter().map(move |t| (t, i)))
        .collect();

    let mut mismatch = None;
    let mut matching = Vec::new();
    let mut hit = vec![None::<usize>; tor_orbits.len()];
    for (li, orbit) in lab_orbits.iter().enumerate() {
        let rep = &orbit.representative;
        let phi = phi_with(rep, diagram, &lattice);
        let Some(&ti) = orbit_of.get(&phi) else {
            mismatch.get_or_insert_with(|| format!("phi({}) is not in T_n^z", rep.to_machine()));
            continue;
        };
        for m in &orbit.members {
            if orbit_of.get(&phi_with(m, diagram, &lattice)) != Some(&ti) {
                mismatch.get_or_insert_with(|| {
                    format!(
                        "phi({}) and phi({}) lie in different W-orbits",
                        rep.to_machine(),
                        m.to_machine()
                    )
                });
            }
        }
        if let Some(prev) = hit[ti] {
            mismatch.get_or_insert_with(|| {
                format!(
                    "labeling classes {} and {} map to the same W-orbit",
                    lab_orbits[prev].representative.to_machine(),
                    rep.to_machine()
                )
            });
        }
        hit[ti] = Some(li);
        matching.push(MatchRow {
            representative: rep.to_machine(),
            labeling_orbit_size: orbit.size(),
            phi,
            torus_orbit: ti,
            torus_orbit_size: tor_orbits[ti].len(),
        });
    }
    if let Some(ti) = hit.iter().position(Option::is_none) {
        mismatch
            .get_or_insert_with(|| format!("W-orbit {ti} is not the image of any labeling class"));
    }

    let mut labeling_orbit_sizes: Vec<usize> = lab_orbits.iter().map(|o| o.size()).collect();
    labeling_orbit_sizes.sort_unstable();
    let mut torus_orbit_sizes: Vec<usize> = tor_orbits.iter().map(Vec::len).collect();
    torus_orbit_sizes.sort_unstable();
    Ok(CrossCheckReport {
        spec: datum.normalized_spec().to_file_format(),
        z: z.clone(),
        n,
        labelings: kz.len(),
        torus_points: points.len(),
        labeling_classes: lab_orbits.len(),
        torus_classes: tor_orbits.len(),
        labeling_orbit_sizes,
        torus_orbit_sizes,
        matching,
        verified: mismatch.is_none(),
        mismatch,
    })
}
