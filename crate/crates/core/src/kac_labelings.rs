//! Kac `n`-labelings of an extended diagram, the congruence filters that cut
//! out `K_n^z` and `K_n^(q)`, and orbits under a fundamental-group action.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extended_dynkin::{ExtendedDiagram, FundamentalGroup};
use crate::lattice::{CentralElement, GroupDatum};
use crate::root_system::{Family, SimpleType};

/// Nonnegative labels over the extended vertices (global order) with
/// `sum m_beta p_beta = n` on every component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KacLabeling {
    labels: Vec<u32>,
    #[serde(skip)]
    n: u32,
}

impl KacLabeling {
    pub fn new(diagram: &ExtendedDiagram, labels: Vec<u32>, n: u32) -> Result<Self> {
        if labels.len() != diagram.num_vertices() {
            return Err(Error::InvalidLabeling(format!(
                "{} labels given, diagram has {} vertices",
                labels.len(),
                diagram.num_vertices()
            )));
        }
        for (k, c) in diagram.components().iter().enumerate() {
            let s: i64 = c
                .vertices()
                .map(|v| diagram.marks()[v] * i64::from(labels[v]))
                .sum();
            if s != i64::from(n) {
                return Err(Error::InvalidLabeling(format!(
                    "component {} ({}) has weighted sum {s}, expected {n}",
                    k + 1,
                    c.simple_type()
                )));
            }
        }
        Ok(KacLabeling { labels, n })
    }

    /// Weighted sum read off the labels of the first component.
    pub fn from_labels(diagram: &ExtendedDiagram, labels: Vec<u32>) -> Result<Self> {
        let c = diagram.components().first().ok_or(Error::EmptySpec)?;
        let n: i64 = c
            .vertices()
            .filter_map(|v| labels.get(v).map(|&x| diagram.marks()[v] * i64::from(x)))
            .sum();
        if n <= 0 {
            return Err(Error::InvalidLabeling(
                "weighted sum must be positive".into(),
            ));
        }
        KacLabeling::new(diagram, labels, n as u32)
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Labels on the simple roots only, in global simple order.
    pub fn simple_labels(&self, diagram: &ExtendedDiagram) -> Vec<i64> {
        diagram
            .simple_vertices()
            .iter()
            .map(|&v| i64::from(self.labels[v]))
            .collect()
    }

    pub(crate) fn with_labels(&self, labels: Vec<u32>) -> Self {
        KacLabeling { labels, n: self.n }
    }

    /// Machine format: flat array in global vertex order.
    pub fn to_machine(&self) -> String {
        let parts: Vec<String> = self.labels.iter().map(u32::to_string).collect();
        format!("[{}]", parts.join(","))
    }

    /// Display format, see [`display_groups`].
    pub fn to_display(&self, diagram: &ExtendedDiagram) -> String {
        diagram
            .components()
            .iter()
            .map(|c| {
                display_groups(c.simple_type())
                    .iter()
                    .map(|g| {
                        g.iter()
                            .map(|&num| {
                                let x =
                                    self.labels[c.vertex_offset + c.data.position(num).unwrap()];
                                if x < 10 {
                                    x.to_string()
                                } else {
                                    format!("({x})")
                                }
                            })
                            .collect::<String>()
                    })
                    .collect::<Vec<_>>()
                    .join("/")
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Accepts the machine format (`[a,b,...]` or `a,b,...`) or the display
    /// format (`000/00/002`, components separated by `|`).
    pub fn parse(diagram: &ExtendedDiagram, text: &str) -> Result<Self> {
        let text = text.trim();
        let labels = if text.starts_with('[') || text.contains(',') {
            text.trim_start_matches('[')
                .trim_end_matches(']')
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidLabeling(format!("bad label `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            parse_display(diagram, text)?
        };
        KacLabeling::from_labels(diagram, labels)
    }
}

impl fmt::Display for KacLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_machine())
    }
}

/// Vertex numbers of a component grouped the way the labels are written by
/// hand: the two-row columns of the diagrams become one slash-separated group.
/// E7 reads `p1 p2 p3 / p4 p7 / p5 p6 p0`, so `000/01/000` is the labeling
/// with a single 1 on the pendant vertex 7. `D_l` reads `p0 p1 / p2 .. p(l-2) / p(l-1) p(l)`.
pub fn display_groups(ty: SimpleType) -> Vec<Vec<usize>> {
    let l = ty.rank();
    match (ty.family(), l) {
        (Family::E, 6) => vec![vec![1, 2], vec![3, 6, 0], vec![4, 5]],
        (Family::E, 7) => vec![vec![1, 2, 3], vec![4, 7], vec![5, 6, 0]],
        (Family::E, 8) => vec![vec![1, 2, 3, 4], vec![5, 8], vec![6, 7, 0]],
        (Family::D, l) if l >= 4 => vec![vec![0, 1], (2..=l - 2).collect(), vec![l - 1, l]],
        (Family::B, l) if l >= 3 => vec![vec![0, 1], (2..=l).collect()],
        _ => vec![vec![0], (1..=l).collect()],
    }
}

fn parse_display(diagram: &ExtendedDiagram, text: &str) -> Result<Vec<u32>> {
    let parts: Vec<&str> = text.split('|').collect();
    if parts.len() != diagram.components().len() {
        return Err(Error::InvalidLabeling(format!(
            "{} components given, diagram has {}",
            parts.len(),
            diagram.components().len()
        )));
    }
    let mut labels = vec![0u32; diagram.num_vertices()];
    for (c, part) in diagram.components().iter().zip(parts) {
        let mut values = Vec::new();
        let mut chars = part
            .chars()
            .filter(|ch| !ch.is_whitespace() && *ch != '/')
            .peekable();
        while let Some(ch) = chars.next() {
            if ch == '(' {
                let digits: String = chars.by_ref().take_while(|&d| d != ')').collect();
                values.push(
                    digits
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidLabeling(format!("bad label `({digits})`")))?,
                );
            } else {
                values.push(ch.to_digit(10).ok_or_else(|| {
                    Error::InvalidLabeling(format!("unexpected `{ch}` in `{part}`"))
                })?);
            }
        }
        let order: Vec<usize> = display_groups(c.simple_type()).concat();
        if values.len() != order.len() {
            return Err(Error::InvalidLabeling(format!(
                "{}: {} labels given, expected {}",
                c.simple_type(),
                values.len(),
                order.len()
            )));
        }
        for (num, x) in order.into_iter().zip(values) {
            labels[c.vertex_offset + c.data.position(num)?] = x;
        }
    }
    Ok(labels)
}

/// Labelings of one component in lexicographic order of local positions.
fn component_labelings(marks: &[i64], n: i64) -> Vec<Vec<u32>> {
    fn go(marks: &[i64], remaining: i64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = prefix.len();
        if i == marks.len() {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // the extra vertex is last and has mark 1, so it absorbs the rest
        for x in 0..=remaining / marks[i] {
            prefix.push(x as u32);
            go(marks, remaining - x * marks[i], prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(marks, n, &mut Vec::with_capacity(marks.len()), &mut out);
    out
}

/// `K_n`: all Kac `n`-labelings, in lexicographic order of the global vertex order.
pub fn enumerate_kn(diagram: &ExtendedDiagram, n: u32) -> Vec<KacLabeling> {
    let mut acc: Vec<Vec<u32>> = vec![Vec::new()];
    for c in diagram.components() {
        let local = component_labelings(c.data.marks(), i64::from(n));
        acc = acc
            .iter()
            .flat_map(|prefix| {
                local.iter().map(move |tail| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(tail);
                    v
                })
            })
            .collect();
    }
    acc.into_iter()
        .map(|labels| KacLabeling { labels, n })
        .collect()
}

/// `K_n^z`: labelings with `sum c_alpha p_alpha = z(lambda) mod Z` for every stored generator.
pub fn filter_for_central(
    labelings: &[KacLabeling],
    datum: &GroupDatum,
    z: &CentralElement,
) -> Result<Vec<KacLabeling>> {
    datum.check_central(z)?;
    let diagram = datum.diagram();
    Ok(labelings
        .iter()
        .filter(|p| datum.congruence_values(&p.simple_labels(diagram)) == z.values)
        .cloned()
        .collect())
}

/// `K_n^(q)`: labelings congruent to `q` on every stored generator.
pub fn filter_matching_q(
    labelings: &[KacLabeling],
    datum: &GroupDatum,
    q: &KacLabeling,
) -> Result<Vec<KacLabeling>> {
    let diagram = datum.diagram();
    KacLabeling::new(diagram, q.labels.clone(), q.n)?;
    let target = datum.congruence_values(&q.simple_labels(diagram));
    Ok(labelings
        .iter()
        .filter(|p| datum.congruence_values(&p.simple_labels(diagram)) == target)
        .cloned()
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelingOrbit {
    /// Lexicographically least member.
    pub representative: KacLabeling,
    /// Sorted, pairwise distinct.
    pub members: Vec<KacLabeling>,
    pub stabilizer_order: usize,
}

impl LabelingOrbit {
    pub fn contains(&self, p: &KacLabeling) -> bool {
        self.members.binary_search(p).is_ok()
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Orbits of `group` on `labelings`, ordered by representative. Fails if the
/// set is not closed under the action.
pub fn orbit_decompose(
    labelings: &[KacLabeling],
    group: &FundamentalGroup,
) -> Result<Vec<LabelingOrbit>> {
    let input: BTreeSet<&KacLabeling> = labelings.iter().collect();
    let mut done: BTreeSet<KacLabeling> = BTreeSet::new();
    let mut orbits = Vec::new();
    for p in &input {
        if done.contains(*p) {
            continue;
        }
        let mut members: BTreeSet<KacLabeling> = BTreeSet::new();
        for g in group.elements() {
            let image = p.with_labels(g.act(&p.labels));
            if !input.contains(&image) {
                return Err(Error::NotClosed(format!(
                    "{} maps to {} outside the set",
                    p, image
                )));
            }
            members.insert(image);
        }
        let members: Vec<KacLabeling> = members.into_iter().collect();
        done.extend(members.iter().cloned());
        orbits.push(LabelingOrbit {
            representative: members[0].clone(),
            stabilizer_order: group.order() / members.len(),
            members,
        });
    }
    orbits.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::GroupSpec;
    use crate::rational::rat;

    fn diagram(types: &[&str]) -> ExtendedDiagram {
        ExtendedDiagram::new(&types.iter().map(|s| s.parse().unwrap()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn a1_k2() {
        let d = diagram(&["A1"]);
        let k: Vec<_> = enumerate_kn(&d, 2)
            .iter()
            .map(|p| p.labels().to_vec())
            .collect();
        // (p_1, p_0)
        assert_eq!(k, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn k1_is_mark_one_indicators() {
        for t in SimpleType::all_up_to(8) {
            let d = ExtendedDiagram::new(&[t]).unwrap();
            let k1 = enumerate_kn(&d, 1);
            let ones = d.marks().iter().filter(|&&m| m == 1).count();
            assert_eq!(k1.len(), ones, "{t}");
            for p in k1 {
                let nz: Vec<usize> = (0..p.labels().len())
                    .filter(|&i| p.labels()[i] != 0)
                    .collect();
                assert_eq!(nz.len(), 1);
                assert_eq!(d.marks()[nz[0]], 1);
            }
        }
    }

    #[test]
    fn a1_central_filters() {
        let datum = GroupSpec::preset("sc:A1").unwrap().validate().unwrap();
        let k2 = enumerate_kn(datum.diagram(), 2);
        let triv = filter_for_central(&k2, &datum, &datum.trivial_central()).unwrap();
        let labels: Vec<_> = triv.iter().map(|p| p.labels().to_vec()).collect();
        assert_eq!(labels, vec![vec![0, 2], vec![2, 0]]);
        let nontriv =
            filter_for_central(&k2, &datum, &CentralElement::new(vec![rat(1, 2)])).unwrap();
        assert_eq!(nontriv.len(), 1);
        assert_eq!(nontriv[0].labels(), &[1, 1]);
    }

    #[test]
    fn adjoint_filters_are_identity() {
        let datum = GroupSpec::preset("ad:E7").unwrap().validate().unwrap();
        let k2 = enumerate_kn(datum.diagram(), 2);
        assert_eq!(
            filter_for_central(&k2, &datum, &datum.trivial_central()).unwrap(),
            k2
        );
        assert_eq!(filter_matching_q(&k2, &datum, &k2[3]).unwrap(), k2);
    }

    #[test]
    fn filter_rejects_invalid_q() {
        let datum = GroupSpec::preset("sc:A1").unwrap().validate().unwrap();
        let k2 = enumerate_kn(datum.diagram(), 2);
        let bad = KacLabeling {
            labels: vec![3, 0],
            n: 2,
        };
        assert!(matches!(
            filter_matching_q(&k2, &datum, &bad),
            Err(Error::InvalidLabeling(_))
        ));
    }

    #[test]
    fn display_round_trip_e7() {
        let d = diagram(&["E7"]);
        let q6 = KacLabeling::parse(&d, "000/01/000").unwrap();
        assert_eq!(q6.labels(), &[0, 0, 0, 0, 0, 0, 1, 0]);
        assert_eq!(q6.n(), 2);
        assert_eq!(q6.to_display(&d), "000/01/000");
        let q1 = KacLabeling::parse(&d, "000/00/002").unwrap();
        assert_eq!(q1.labels(), &[0, 0, 0, 0, 0, 0, 0, 2]);
        assert_eq!(KacLabeling::parse(&d, &q1.to_machine()).unwrap(), q1);
        assert_eq!(KacLabeling::parse(&d, "0,0,0,0,0,0,0,2").unwrap(), q1);
        assert!(KacLabeling::parse(&d, "000/00/00").is_err());
        assert!(KacLabeling::parse(&d, "000/00/003").unwrap().n() == 3);
    }

    #[test]
    fn display_products_and_large_labels() {
        let d = diagram(&["A1", "A2"]);
        let p = KacLabeling::parse(&d, "0/(12)|(11)/01").unwrap();
        assert_eq!(p.labels(), &[12, 0, 0, 1, 11]);
        assert_eq!(p.to_display(&d), "0/(12)|(11)/01");
        assert!(KacLabeling::parse(&d, "0/(12)").is_err());
    }

    #[test]
    fn orbit_errors_when_not_closed() {
        let d = diagram(&["A1"]);
        let g = FundamentalGroup::of_diagram(&d).unwrap();
        let k2 = enumerate_kn(&d, 2);
        assert!(matches!(
            orbit_decompose(&k2[..1], &g),
            Err(Error::NotClosed(_))
        ));
        let orbits = orbit_decompose(&k2, &g).unwrap();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0].members.len(), 2);
        assert_eq!(orbits[0].stabilizer_order, 1);
        assert_eq!(orbits[1].stabilizer_order, 2);
    }

    #[test]
    fn trivial_group_singletons() {
        let d = diagram(&["G2"]);
        let g = FundamentalGroup::of_diagram(&d).unwrap();
        let k3 = enumerate_kn(&d, 3);
        let orbits = orbit_decompose(&k3, &g).unwrap();
        assert_eq!(orbits.len(), k3.len());
        assert!(orbits.iter().all(|o| o.size() == 1));
    }
}
