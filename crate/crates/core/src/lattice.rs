//! Intermediate lattices `Q ⊆ X ⊆ P`, presented by generators of `X/Q` in
//! root coordinates, together with the dual subgroup `X^vee/Q^vee` and the
//! center `Z_G = Hom(X/Q, Q/Z)`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended_dynkin::{ExtendedDiagram, FundamentalGroup, FundamentalGroupElement};
use crate::rational::{format_rational, frac, int, parse_rational, rat, Rational};
use crate::root_system::{CartanData, Family, SimpleType};

/// A compact semisimple group up to isomorphism: simple components plus
/// generators of `X/Q`. Generators are global root-coefficient vectors over
/// the concatenated simple roots of all components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub components: Vec<SimpleType>,
    pub generators: Vec<Vec<Rational>>,
}

/// On-disk form of a [`GroupSpec`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub components: Vec<String>,
    #[serde(default)]
    pub generators: Vec<Vec<String>>,
}

impl GroupSpec {
    pub fn new(components: Vec<SimpleType>, generators: Vec<Vec<Rational>>) -> Self {
        GroupSpec {
            components,
            generators,
        }
    }

    pub fn adjoint(components: Vec<SimpleType>) -> Self {
        GroupSpec {
            components,
            generators: Vec::new(),
        }
    }

    pub fn simply_connected(components: Vec<SimpleType>) -> Self {
        let total: usize = components.iter().map(|t| t.rank()).sum();
        let mut generators = Vec::new();
        let mut off = 0;
        for &t in &components {
            let data = CartanData::new(t);
            for i in 0..t.rank() {
                let mut c = vec![Rational::zero(); total];
                c[off..off + t.rank()].copy_from_slice(&data.fundamental_weight(i));
                generators.push(c);
            }
            off += t.rank();
        }
        GroupSpec {
            components,
            generators,
        }
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|t| t.rank()).sum()
    }

    /// Presets `sc:<types>`, `ad:<types>`, `halfspin:D<2k>`, `so:D<l>|B<l>`;
    /// `<types>` is a `+`-separated list such as `A1+A1`.
    pub fn preset(s: &str) -> Result<Self> {
        let (kind, types) = s
            .split_once(':')
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))?;
        let components = types
            .split('+')
            .map(str::parse::<SimpleType>)
            .collect::<Result<Vec<_>>>()?;
        let single = || match components.as_slice() {
            [t] => Ok(*t),
            _ => Err(Error::UnknownPreset(format!(
                "{s}: preset needs exactly one component"
            ))),
        };
        match kind {
            "sc" => Ok(GroupSpec::simply_connected(components)),
            "ad" => Ok(GroupSpec::adjoint(components)),
            "halfspin" => {
                let t = single()?;
                let l = t.rank();
                if t.family() != Family::D || l % 2 != 0 || l < 4 {
                    return Err(Error::UnknownPreset(format!(
                        "{s}: half-spin needs D_l with l even, l >= 4"
                    )));
                }
                let mut c = vec![Rational::zero(); l];
                for i in (1..=l - 3).step_by(2) {
                    c[i - 1] = rat(1, 2);
                }
                c[l - 1] = rat(1, 2);
                Ok(GroupSpec::new(components, vec![c]))
            }
            "so" => {
                let t = single()?;
                if !matches!(t.family(), Family::B | Family::D) {
                    return Err(Error::UnknownPreset(format!("{s}: so needs type B or D")));
                }
                // the vector representation's highest weight omega_1
                let c = CartanData::new(t).fundamental_weight(0);
                Ok(GroupSpec::new(components, vec![c]))
            }
            _ => Err(Error::UnknownPreset(s.to_string())),
        }
    }

    pub fn from_file_format(f: &GroupSpecFile) -> Result<Self> {
        let components = f
            .components
            .iter()
            .map(|s| s.parse::<SimpleType>())
            .collect::<Result<Vec<_>>>()?;
        let generators = f
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|x| parse_rational(x))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupSpec {
            components,
            generators,
        })
    }

    pub fn to_file_format(&self) -> GroupSpecFile {
        GroupSpecFile {
            components: self.components.iter().map(ToString::to_string).collect(),
            generators: self
                .generators
                .iter()
                .map(|g| g.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: GroupSpecFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        GroupSpec::from_file_format(&f)
    }

    pub fn validate(&self) -> Result<GroupDatum> {
        GroupDatum::new(self)
    }
}

/// A central element `z`, given by the classes `d lambda(zeta) mod Z` on the
/// stored generators of `X/Q` (each value in `[0, 1)`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CentralElement {
    #[serde(serialize_with = "crate::rational::serialize_rationals")]
    pub values: Vec<Rational>,
}

impl CentralElement {
    pub fn new(values: Vec<Rational>) -> Self {
        CentralElement {
            values: values.into_iter().map(frac).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

fn reduce(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|&x| frac(x)).collect()
}

fn add_mod(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(&x, &y)| frac(x + y)).collect()
}

/// All elements of the subgroup of `(Q/Z)^n` generated by `gens`.
fn closure(gens: &[Vec<Rational>], n: usize) -> BTreeSet<Vec<Rational>> {
    let zero = vec![Rational::zero(); n];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = add_mod(&x, g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

fn order_of(x: &[Rational]) -> u32 {
    x.iter()
        .fold(1i64, |acc, v| num_integer::lcm(acc, *v.denom())) as u32
}

/// Irredundant generators of the subgroup with element set `elements`,
/// chosen deterministically (highest order first, then lexicographic).
fn canonical_generators(elements: &BTreeSet<Vec<Rational>>, n: usize) -> Vec<Vec<Rational>> {
    let mut candidates: Vec<&Vec<Rational>> = elements.iter().collect();
    candidates.sort_by(|a, b| order_of(b).cmp(&order_of(a)).then_with(|| a.cmp(b)));
    let mut gens: Vec<Vec<Rational>> = Vec::new();
    let mut span = closure(&gens, n);
    for c in candidates {
        if span.len() == elements.len() {
            break;
        }
        if !span.contains(c) {
            gens.push(c.clone());
            span = closure(&gens, n);
        }
    }
    gens
}

/// Whether `values` on `gens` extend to a homomorphism into `Q/Z`.
fn extends_to_hom(gens: &[Vec<Rational>], values: &[Rational], n: usize) -> bool {
    let zero = vec![Rational::zero(); n];
    let mut map: BTreeMap<Vec<Rational>, Rational> =
        BTreeMap::from([(zero.clone(), Rational::zero())]);
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        let vx = map[&x];
        for (g, &vg) in gens.iter().zip(values) {
            let y = add_mod(&x, g);
            let vy = frac(vx + vg);
            match map.get(&y) {
                Some(&old) if old != vy => return false,
                Some(_) => {}
                None => {
                    map.insert(y.clone(), vy);
                    stack.push(y);
                }
            }
        }
    }
    true
}

/// A validated group spec with its diagram, normalised generators and the
/// finite groups attached to it.
#[derive(Clone, Debug)]
pub struct GroupDatum {
    spec: GroupSpec,
    diagram: ExtendedDiagram,
    generators: Vec<Vec<Rational>>,
    orders: Vec<u32>,
    xq: BTreeSet<Vec<Rational>>,
    fundamental_group: FundamentalGroup,
}

impl GroupDatum {
    fn new(spec: &GroupSpec) -> Result<Self> {
        let diagram = ExtendedDiagram::new(&spec.components)?;
        let n = diagram.rank();
        for (gi, g) in spec.generators.iter().enumerate() {
            if g.len() != n {
                return Err(Error::GeneratorLength {
                    generator: gi,
                    expected: n,
                    found: g.len(),
                });
            }
            for c in diagram.components() {
                let local = &g[c.simple_offset..c.simple_offset + c.rank()];
                for i in 0..c.rank() {
                    let v = c.data.coroot_pairing(local, i);
                    if !v.is_integer() {
                        return Err(Error::NotInWeightLattice {
                            generator: gi,
                            coroot: c.simple_offset + i + 1,
                            value: format_rational(&v),
                        });
                    }
                }
            }
        }
        let reduced: Vec<Vec<Rational>> = spec.generators.iter().map(|g| reduce(g)).collect();
        let xq = closure(&reduced, n);
        let generators = canonical_generators(&xq, n);
        let orders = generators.iter().map(|g| order_of(g)).collect();
        let fundamental_group = FundamentalGroup::of_diagram(&diagram)?;
        Ok(GroupDatum {
            spec: spec.clone(),
            diagram,
            generators,
            orders,
            xq,
            fundamental_group,
        })
    }

    /// The spec as given.
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// The spec with its canonical generator list.
    pub fn normalized_spec(&self) -> GroupSpec {
        GroupSpec::new(self.spec.components.clone(), self.generators.clone())
    }

    pub fn diagram(&self) -> &ExtendedDiagram {
        &self.diagram
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    /// Canonical generators of `X/Q`, coefficients in `[0, 1)`.
    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    pub fn generator_orders(&self) -> &[u32] {
        &self.orders
    }

    /// `|X/Q|`.
    pub fn xq_order(&self) -> usize {
        self.xq.len()
    }

    pub fn xq_elements(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.xq.iter()
    }

    /// `P^vee/Q^vee` of the whole diagram.
    pub fn fundamental_group(&self) -> &FundamentalGroup {
        &self.fundamental_group
    }

    /// `<[lambda], [omega_j^vee]> = c_j mod Z` for a global simple index `j`
    /// with `m_j = 1`.
    pub fn pairing(&self, lambda: &[Rational], j: usize) -> Result<Rational> {
        if j >= self.rank() {
            return Err(Error::VertexOutOfRange(j + 1));
        }
        let v = self.diagram.vertex_of_simple(j);
        let mark = self.diagram.marks()[v];
        if mark != 1 {
            return Err(Error::NotMarkOne {
                vertex: j + 1,
                mark,
            });
        }
        Ok(frac(lambda[j]))
    }

    /// Pairing of `lambda` with the coweight representing a fundamental-group element.
    pub fn pairing_with(&self, lambda: &[Rational], g: &FundamentalGroupElement) -> Rational {
        let s: Rational = self
            .diagram
            .components()
            .iter()
            .zip(&g.tags)
            .filter_map(|(c, t)| t.map(|j| lambda[c.simple_offset + j]))
            .sum();
        frac(s)
    }

    /// `X^vee/Q^vee` as the annihilator of `X/Q` in `P^vee/Q^vee`.
    pub fn dual_subgroup(&self) -> Result<FundamentalGroup> {
        self.fundamental_group.restrict(|g| {
            self.generators
                .iter()
                .all(|l| self.pairing_with(l, g).is_zero())
        })
    }

    /// Every homomorphism `X/Q -> Q/Z`, trivial one first.
    pub fn enumerate_center(&self) -> Vec<CentralElement> {
        let mut out = vec![Vec::new()];
        for &o in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Rational>| {
                    (0..o as i64).map(move |k| {
                        let mut v = prefix.clone();
                        v.push(rat(k, o as i64));
                        v
                    })
                })
                .collect();
        }
        out.into_iter()
            .filter(|v| extends_to_hom(&self.generators, v, self.rank()))
            .map(CentralElement::new)
            .collect()
    }

    pub fn check_central(&self, z: &CentralElement) -> Result<()> {
        if z.values.len() != self.generators.len() {
            return Err(Error::InvalidCentral(format!(
                "{} values given, X/Q has {} stored generators",
                z.values.len(),
                self.generators.len()
            )));
        }
        if !extends_to_hom(&self.generators, &z.values, self.rank()) {
            return Err(Error::InvalidCentral(
                "values do not define a homomorphism X/Q -> Q/Z".into(),
            ));
        }
        Ok(())
    }

    pub fn trivial_central(&self) -> CentralElement {
        CentralElement::new(vec![Rational::zero(); self.generators.len()])
    }

    /// `sum_alpha c_alpha p_alpha mod Z` for each stored generator.
    pub fn congruence_values(&self, simple_labels: &[i64]) -> Vec<Rational> {
        self.generators
            .iter()
            .map(|c| frac(c.iter().zip(simple_labels).map(|(&x, &p)| x * int(p)).sum()))
            .collect()
    }
}

/// `P/Q` of a list of types, as reduced root-coefficient vectors.
pub fn weight_lattice_quotient(types: &[SimpleType]) -> BTreeSet<Vec<Rational>> {
    let sc = GroupSpec::simply_connected(types.to_vec());
    let reduced: Vec<Vec<Rational>> = sc.generators.iter().map(|g| reduce(g)).collect();
    closure(&reduced, sc.rank())
}

/// One spec per subgroup of `P/Q`: every intermediate lattice `Q ⊆ X ⊆ P`.
pub fn intermediate_lattices(types: &[SimpleType]) -> Vec<GroupSpec> {
    let n: usize = types.iter().map(|t| t.rank()).sum();
    let pq = weight_lattice_quotient(types);
    let mut found: BTreeSet<BTreeSet<Vec<Rational>>> = BTreeSet::new();
    let mut frontier = vec![closure(&[], n)];
    while let Some(s) = frontier.pop() {
        if !found.insert(s.clone()) {
            continue;
        }
        for e in &pq {
            if !s.contains(e) {
                let mut gens = canonical_generators(&s, n);
                gens.push(e.clone());
                frontier.push(closure(&gens, n));
            }
        }
    }
    let mut subgroups: Vec<_> = found.into_iter().collect();
    subgroups.sort_by_key(|s| s.len());
    subgroups
        .into_iter()
        .map(|s| GroupSpec::new(types.to_vec(), canonical_generators(&s, n)))
        .collect()
}
