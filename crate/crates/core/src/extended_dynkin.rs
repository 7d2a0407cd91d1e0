//! Extended Dynkin diagrams of semisimple types and the action of the
//! fundamental group `P^vee / Q^vee` on their vertices.
//!
//! The action is available in two independent forms: the per-type
//! permutation tables ([`fundamental_group_table`]) and a computation from
//! the affine isometry `y -> w_j w_0 y + omega_j^vee` of the alcove
//! ([`sigma_geometric`]). The tables drive everything else; the geometric
//! form exists to certify them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::root_system::{CartanData, Family, SimpleType};

/// A permutation of `0..n`, stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Consistency(format!("not a permutation: {images:?}")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint union, `other` acting on the indices after `self`.
    fn direct_sum(&self, other: &Permutation) -> Permutation {
        let off = self.0.len();
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&i| i + off));
        Permutation(v)
    }
}

/// One connected component of an extended diagram, with its offsets into the
/// global simple-root index and the global extended-vertex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub data: CartanData,
    pub simple_offset: usize,
    pub vertex_offset: usize,
}

impl Component {
    pub fn simple_type(&self) -> SimpleType {
        self.data.simple_type()
    }

    pub fn rank(&self) -> usize {
        self.data.rank()
    }

    /// Global extended-vertex indices of this component.
    pub fn vertices(&self) -> std::ops::Range<usize> {
        self.vertex_offset..self.vertex_offset + self.rank() + 1
    }

    /// Global index of the extra vertex.
    pub fn extra_vertex(&self) -> usize {
        self.vertex_offset + self.rank()
    }
}

/// Edge between two global vertices `a < b`; `ab = <beta_b, beta_a^vee>` and
/// `ba = <beta_a, beta_b^vee>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub ab: i64,
    pub ba: i64,
}

/// Disjoint union of extended Dynkin diagrams. Global vertex order is
/// component-major; inside a component the vertices `1..=rank` come first
/// and the extra vertex `0` last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedDiagram {
    components: Vec<Component>,
    marks: Vec<i64>,
    edges: Vec<Edge>,
}

impl ExtendedDiagram {
    pub fn new(types: &[SimpleType]) -> Result<Self> {
        if types.is_empty() {
            return Err(Error::EmptySpec);
        }
        let mut components = Vec::new();
        let mut marks = Vec::new();
        let mut edges = Vec::new();
        let (mut so, mut vo) = (0, 0);
        for &ty in types {
            let data = CartanData::new(ty);
            let ext = data.extended_cartan();
            for a in 0..=ty.rank() {
                for b in a + 1..=ty.rank() {
                    if ext[a][b] != 0 {
                        edges.push(Edge {
                            a: vo + a,
                            b: vo + b,
                            ab: ext[a][b],
                            ba: ext[b][a],
                        });
                    }
                }
            }
            marks.extend_from_slice(data.marks());
            let rank = ty.rank();
            components.push(Component {
                data,
                simple_offset: so,
                vertex_offset: vo,
            });
            so += rank;
            vo += rank + 1;
        }
        Ok(ExtendedDiagram {
            components,
            marks,
            edges,
        })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn types(&self) -> Vec<SimpleType> {
        self.components.iter().map(Component::simple_type).collect()
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.marks.len()
    }

    /// Total rank (number of simple roots).
    pub fn rank(&self) -> usize {
        self.components.iter().map(Component::rank).sum()
    }

    pub fn component_of_vertex(&self, v: usize) -> (usize, usize) {
        for (k, c) in self.components.iter().enumerate() {
            if c.vertices().contains(&v) {
                return (k, v - c.vertex_offset);
            }
        }
        panic!("vertex {v} out of range");
    }

    /// Global vertex index of a simple root, by global simple index.
    pub fn vertex_of_simple(&self, alpha: usize) -> usize {
        for c in &self.components {
            if (c.simple_offset..c.simple_offset + c.rank()).contains(&alpha) {
                return c.vertex_offset + alpha - c.simple_offset;
            }
        }
        panic!("simple root {alpha} out of range");
    }

    /// Global vertex indices of the simple roots, in global simple order.
    pub fn simple_vertices(&self) -> Vec<usize> {
        self.components
            .iter()
            .flat_map(|c| c.vertex_offset..c.vertex_offset + c.rank())
            .collect()
    }

    /// Extended Cartan entry `<beta_b, beta_a^vee>` for global vertices.
    pub fn pairing(&self, a: usize, b: usize) -> i64 {
        let (ka, la) = self.component_of_vertex(a);
        let (kb, lb) = self.component_of_vertex(b);
        if ka != kb {
            return 0;
        }
        self.components[ka].data.extended_cartan()[la][lb]
    }

    /// True when `sigma` preserves components, marks and every extended
    /// Cartan entry.
    pub fn is_automorphism(&self, sigma: &Permutation) -> bool {
        let n = self.num_vertices();
        sigma.len() == n
            && (0..n).all(|i| {
                self.marks[sigma.image(i)] == self.marks[i]
                    && self.component_of_vertex(sigma.image(i)).0 == self.component_of_vertex(i).0
                    && (0..n)
                        .all(|j| self.pairing(sigma.image(i), sigma.image(j)) == self.pairing(i, j))
            })
    }

    /// Plain-text picture: vertex numbers, marks, optional labels and edges.
    pub fn render(&self, labels: Option<&[u32]>) -> String {
        let mut out = String::new();
        for (k, c) in self.components.iter().enumerate() {
            let _ = writeln!(out, "{} (extended), component {}", c.simple_type(), k + 1);
            let order: Vec<usize> = (0..=c.rank()).collect();
            let row = |f: &dyn Fn(usize) -> String| {
                order
                    .iter()
                    .map(|&p| format!("{:>3}", f(p)))
                    .collect::<String>()
            };
            let _ = writeln!(
                out,
                "  vertex{}",
                row(&|p| c.data.vertex_number(p).to_string())
            );
            let _ = writeln!(out, "  mark  {}", row(&|p| c.data.marks()[p].to_string()));
            if let Some(labels) = labels {
                let _ = writeln!(
                    out,
                    "  label {}",
                    row(&|p| labels[c.vertex_offset + p].to_string())
                );
            }
            let mut edges = Vec::new();
            for e in self.edges.iter().filter(|e| c.vertices().contains(&e.a)) {
                let (na, nb) = (
                    c.data.vertex_number(e.a - c.vertex_offset),
                    c.data.vertex_number(e.b - c.vertex_offset),
                );
                // arrow points to the shorter root
                let bond = match (e.ab, e.ba) {
                    (-1, -1) => "-".to_string(),
                    (-1, m) => format!("={}>", -m),
                    (m, -1) => format!("<{}=", -m),
                    (x, y) => format!("({},{})", x, y),
                };
                edges.push(format!("{na}{bond}{nb}"));
            }
            let _ = writeln!(out, "  edges  {}", edges.join(" "));
        }
        out
    }
}

/// Element of `P^vee/Q^vee` (or a subgroup), stored component-wise: `tags[k]`
/// is `None` for the identity of component `k`, or the local simple index `j`
/// (with `m_j = 1`) of the coweight `omega_j^vee` representing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalGroupElement {
    pub tags: Vec<Option<usize>>,
    pub sigma: Permutation,
}

impl FundamentalGroupElement {
    pub fn is_identity(&self) -> bool {
        self.tags.iter().all(Option::is_none)
    }

    /// `p'_i = p_{sigma^{-1}(i)}`.
    pub fn act(&self, labels: &[u32]) -> Vec<u32> {
        let mut out = vec![0; labels.len()];
        for (i, &x) in labels.iter().enumerate() {
            out[self.sigma.image(i)] = x;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalGroup {
    elements: Vec<FundamentalGroupElement>,
    /// `table[a][b]` is the index of `elements[a] * elements[b]`.
    table: Vec<Vec<usize>>,
    structure: String,
}

impl FundamentalGroup {
    fn from_elements(elements: Vec<FundamentalGroupElement>, structure: String) -> Result<Self> {
        let index: BTreeMap<&Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (&e.sigma, i))
            .collect();
        if index.len() != elements.len() {
            return Err(Error::Consistency("repeated group element".into()));
        }
        let mut table = vec![vec![0; elements.len()]; elements.len()];
        for (a, ea) in elements.iter().enumerate() {
            for (b, eb) in elements.iter().enumerate() {
                let prod = ea.sigma.compose(&eb.sigma);
                table[a][b] = *index.get(&prod).ok_or_else(|| {
                    Error::Consistency("element set not closed under composition".into())
                })?;
            }
        }
        Ok(FundamentalGroup {
            elements,
            table,
            structure,
        })
    }

    /// `P^vee/Q^vee` of a whole diagram: the direct product of the component groups.
    pub fn of_diagram(diagram: &ExtendedDiagram) -> Result<Self> {
        let mut elements = vec![FundamentalGroupElement {
            tags: Vec::new(),
            sigma: Permutation::identity(0),
        }];
        let mut names = Vec::new();
        for c in diagram.components() {
            let g = fundamental_group_table(c.simple_type());
            if g.order() > 1 {
                names.push(g.structure.clone());
            }
            let mut next = Vec::new();
            for e in &elements {
                for f in &g.elements {
                    let mut tags = e.tags.clone();
                    tags.extend_from_slice(&f.tags);
                    next.push(FundamentalGroupElement {
                        tags,
                        sigma: e.sigma.direct_sum(&f.sigma),
                    });
                }
            }
            elements = next;
        }
        let structure = if names.is_empty() {
            "trivial".to_string()
        } else {
            names.join(" x ")
        };
        FundamentalGroup::from_elements(elements, structure)
    }

    pub fn elements(&self) -> &[FundamentalGroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity_index(&self) -> usize {
        self.elements
            .iter()
            .position(FundamentalGroupElement::is_identity)
            .expect("identity present")
    }

    /// Isomorphism type, e.g. `Z/4`, `Z/2 x Z/2`, `trivial`.
    pub fn structure(&self) -> &str {
        &self.structure
    }

    /// The subgroup of elements satisfying `keep`; fails if that set is not a subgroup.
    pub fn restrict(&self, keep: impl Fn(&FundamentalGroupElement) -> bool) -> Result<Self> {
        let elements: Vec<_> = self.elements.iter().filter(|e| keep(e)).cloned().collect();
        let structure = match elements.len() {
            1 => "trivial".to_string(),
            n if n == self.order() => self.structure.clone(),
            n => format!("order {n}"),
        };
        FundamentalGroup::from_elements(elements, structure)
    }
}

/// Generators of the per-type action, as maps on diagram vertex numbers
/// (index = vertex number, `0` the extra vertex).
fn table_generators(ty: SimpleType) -> Vec<Vec<usize>> {
    let l = ty.rank();
    let swap = |pairs: &[(usize, usize)]| {
        let mut v: Vec<usize> = (0..=l).collect();
        for &(a, b) in pairs {
            v[a] = b;
            v[b] = a;
        }
        v
    };
    match ty.family() {
        Family::A => vec![(0..=l).map(|v| (v + 1) % (l + 1)).collect()],
        Family::B => vec![swap(&[(0, 1)])],
        Family::C => vec![(0..=l).map(|v| l - v).collect()],
        Family::D => {
            // middle vertices 2..=l-2 reflected
            let mut mid: Vec<usize> = (0..=l).collect();
            for (i, m) in mid.iter_mut().enumerate().take(l - 1).skip(2) {
                *m = l - i;
            }
            if l.is_multiple_of(2) {
                let s1 = swap(&[(0, 1), (l - 1, l)]);
                let mut s_lm1 = mid;
                s_lm1[0] = l - 1;
                s_lm1[l - 1] = 0;
                s_lm1[1] = l;
                s_lm1[l] = 1;
                vec![s1, s_lm1]
            } else {
                let mut s = mid;
                s[0] = l - 1;
                s[l - 1] = 1;
                s[1] = l;
                s[l] = 0;
                vec![s]
            }
        }
        Family::E if l == 6 => {
            let mut v: Vec<usize> = (0..=6).collect();
            for (a, b) in [(0, 1), (1, 5), (5, 0), (6, 2), (2, 4), (4, 6)] {
                v[a] = b;
            }
            vec![v]
        }
        Family::E if l == 7 => vec![swap(&[(0, 1), (6, 2), (5, 3)])],
        _ => Vec::new(),
    }
}

/// `P^vee/Q^vee` of a simple type from the per-type permutation tables.
pub fn fundamental_group_table(ty: SimpleType) -> FundamentalGroup {
    let data = CartanData::new(ty);
    let l = ty.rank();
    let to_positions = |v: &[usize]| -> Permutation {
        let mut img = vec![0; l + 1];
        for (num, &target) in v.iter().enumerate() {
            img[data.position(num).unwrap()] = data.position(target).unwrap();
        }
        Permutation(img)
    };
    let gens: Vec<Permutation> = table_generators(ty)
        .iter()
        .map(|g| to_positions(g))
        .collect();
    let mut perms = vec![Permutation::identity(l + 1)];
    let mut i = 0;
    while i < perms.len() {
        for g in &gens {
            let p = g.compose(&perms[i]);
            if !perms.contains(&p) {
                perms.push(p);
            }
        }
        i += 1;
    }
    // identity first, then by the image of the extra vertex
    perms.sort_by_key(|p| {
        if p.is_identity() {
            None
        } else {
            Some(p.image(l))
        }
    });
    let elements: Vec<FundamentalGroupElement> = perms
        .into_iter()
        .map(|sigma| {
            let tag = if sigma.is_identity() {
                None
            } else {
                Some(sigma.image(l))
            };
            FundamentalGroupElement {
                tags: vec![tag],
                sigma,
            }
        })
        .collect();
    let structure = match (ty.family(), elements.len()) {
        (_, 1) => "trivial".to_string(),
        (Family::D, 4) if l.is_multiple_of(2) => "Z/2 x Z/2".to_string(),
        (_, n) => format!("Z/{n}"),
    };
    FundamentalGroup::from_elements(elements, structure).expect("table closes under composition")
}

/// The permutation of extended vertex positions induced by the alcove isometry
/// `y -> w_j w_0 y + omega_j^vee` (local simple index `j`, `m_j = 1`).
pub fn sigma_geometric(data: &CartanData, j: usize) -> Result<Permutation> {
    let l = data.rank();
    if j >= l {
        return Err(Error::VertexOutOfRange(j + 1));
    }
    if data.marks()[j] != 1 {
        return Err(Error::NotMarkOne {
            vertex: j + 1,
            mark: data.marks()[j],
        });
    }
    // alcove vertices in coroot coordinates: omega_i^vee / m_i, and 0
    let mut vertices: Vec<Vec<Rational>> = (0..l)
        .map(|i| {
            data.fundamental_coweight(i)
                .into_iter()
                .map(|x| x / int(data.marks()[i]))
                .collect()
        })
        .collect();
    vertices.push(vec![Rational::zero(); l]);
    let w = data
        .longest_element(Some(j))
        .compose(&data.longest_element(None));
    let shift = data.fundamental_coweight(j);
    let mut images = Vec::with_capacity(l + 1);
    for (i, v) in vertices.iter().enumerate() {
        let moved: Vec<Rational> = w.apply(v).iter().zip(&shift).map(|(a, b)| a + b).collect();
        let k = vertices.iter().position(|u| *u == moved).ok_or_else(|| {
            Error::Consistency(format!(
                "{}: image of alcove vertex {} under sigma_{} is not a vertex",
                data.simple_type(),
                data.vertex_number(i),
                j + 1
            ))
        })?;
        images.push(k);
    }
    Permutation::from_images(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    /// Permutation on vertex numbers of a simple type, as `(from, to)` pairs.
    fn perm_by_numbers(t: SimpleType, p: &Permutation) -> Vec<(usize, usize)> {
        let d = CartanData::new(t);
        let mut v: Vec<_> = (0..=t.rank())
            .map(|pos| (d.vertex_number(pos), d.vertex_number(p.image(pos))))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn build_small_diagrams() {
        let d = ExtendedDiagram::new(&[ty("A1")]).unwrap();
        assert_eq!(d.num_vertices(), 2);
        assert_eq!(d.marks(), &[1, 1]);
        assert_eq!(
            d.edges(),
            &[Edge {
                a: 0,
                b: 1,
                ab: -2,
                ba: -2
            }]
        );
        let d = ExtendedDiagram::new(&[ty("A1"), ty("A1")]).unwrap();
        assert_eq!(d.num_vertices(), 4);
        assert_eq!(d.components().len(), 2);
        assert!(ExtendedDiagram::new(&[]).is_err());
    }

    #[test]
    fn e7_diagram_shape() {
        let d = ExtendedDiagram::new(&[ty("E7")]).unwrap();
        assert_eq!(d.num_vertices(), 8);
        let c = &d.components()[0].data;
        let mut edges: Vec<(usize, usize)> = d
            .edges()
            .iter()
            .map(|e| {
                assert_eq!((e.ab, e.ba), (-1, -1));
                let (a, b) = (c.vertex_number(e.a), c.vertex_number(e.b));
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort();
        assert_eq!(
            edges,
            vec![(0, 6), (1, 2), (2, 3), (3, 4), (4, 5), (4, 7), (5, 6)]
        );
    }

    #[test]
    fn e7_table() {
        let g = fundamental_group_table(ty("E7"));
        assert_eq!(g.order(), 2);
        let s = &g.elements()[1].sigma;
        assert_eq!(
            perm_by_numbers(ty("E7"), s),
            vec![
                (0, 1),
                (1, 0),
                (2, 6),
                (3, 5),
                (4, 4),
                (5, 3),
                (6, 2),
                (7, 7)
            ]
        );
    }

    #[test]
    fn d6_table() {
        let g = fundamental_group_table(ty("D6"));
        assert_eq!(g.structure(), "Z/2 x Z/2");
        let s1 = g
            .elements()
            .iter()
            .find(|e| e.tags == vec![Some(0)])
            .unwrap();
        assert_eq!(
            perm_by_numbers(ty("D6"), &s1.sigma),
            vec![(0, 1), (1, 0), (2, 2), (3, 3), (4, 4), (5, 6), (6, 5)]
        );
    }

    #[test]
    fn trivial_groups() {
        for t in ["E8", "F4", "G2"] {
            assert_eq!(fundamental_group_table(ty(t)).order(), 1);
            assert_eq!(fundamental_group_table(ty(t)).structure(), "trivial");
        }
    }

    #[test]
    fn geometric_examples() {
        let a1 = CartanData::new(ty("A1"));
        assert_eq!(sigma_geometric(&a1, 0).unwrap().images(), &[1, 0]);

        let e6 = CartanData::new(ty("E6"));
        let s = sigma_geometric(&e6, 0).unwrap();
        let pairs = perm_by_numbers(ty("E6"), &s);
        for (a, b) in [(0, 1), (1, 5), (5, 0), (2, 4)] {
            assert!(pairs.contains(&(a, b)), "{pairs:?}");
        }

        let d5 = CartanData::new(ty("D5"));
        let s = sigma_geometric(&d5, 3).unwrap();
        let pairs = perm_by_numbers(ty("D5"), &s);
        for (a, b) in [(0, 4), (4, 1), (1, 5), (5, 0)] {
            assert!(pairs.contains(&(a, b)), "{pairs:?}");
        }
    }

    #[test]
    fn geometric_rejects_non_minuscule() {
        let e7 = CartanData::new(ty("E7"));
        assert!(matches!(
            sigma_geometric(&e7, 1),
            Err(Error::NotMarkOne { .. })
        ));
    }

    #[test]
    fn act_is_left_action() {
        let d = ExtendedDiagram::new(&[ty("A3")]).unwrap();
        let g = FundamentalGroup::of_diagram(&d).unwrap();
        let p = vec![1, 0, 2, 1];
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.multiply(a, b);
                assert_eq!(
                    g.elements()[ab].act(&p),
                    g.elements()[a].act(&g.elements()[b].act(&p))
                );
            }
        }
    }

    #[test]
    fn product_group_order() {
        let d = ExtendedDiagram::new(&[ty("A2"), ty("D4"), ty("E8")]).unwrap();
        let g = FundamentalGroup::of_diagram(&d).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.structure(), "Z/3 x Z/2 x Z/2");
        for e in g.elements() {
            assert!(d.is_automorphism(&e.sigma));
        }
    }

    #[test]
    fn tables_match_geometry_up_to_rank_8() {
        for t in SimpleType::all_up_to(8) {
            let data = CartanData::new(t);
            let g = fundamental_group_table(t);
            let minuscule: Vec<usize> = (0..t.rank()).filter(|&j| data.marks()[j] == 1).collect();
            assert_eq!(g.order(), minuscule.len() + 1, "{t}");
            assert_eq!(g.order() as i64, data.connection_index(), "{t}");
            for j in minuscule {
                let geo = sigma_geometric(&data, j).unwrap();
                let tab = g
                    .elements()
                    .iter()
                    .find(|e| e.tags == vec![Some(j)])
                    .unwrap();
                assert_eq!(geo, tab.sigma, "{t} sigma_{}", j + 1);
            }
        }
    }
}
