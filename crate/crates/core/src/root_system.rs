//! Root-system data for the simple types.
//!
//! Conventions used throughout the crate:
//!
//! * `cartan[i][j] = <alpha_j, alpha_i^vee>` (rows indexed by coroots).
//! * Simple roots are indexed `0..rank` internally; position `p` is the
//!   vertex numbered `p + 1` in the diagrams below. On the extended diagram
//!   the extra vertex (numbered 0) sits at position `rank`.
//! * Vertex numbering follows the usual tables (Bourbaki for the classical
//!   types, F4 and G2). For E6, E7, E8 the chain `1 - 2 - ... - (r-1)` carries
//!   the pendant vertex `r` at vertex `r - 3`.
//! * Coroot coordinates: `y = sum_k y[k] alpha_k^vee`. Root coordinates:
//!   `lambda = sum_k c[k] alpha_k`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{int, inverse, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::InvalidType(format!("{family:?}{rank}")))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `B2` and `D3` duplicate `C2` and `A3`; they are accepted but flagged.
    pub fn alias_of(&self) -> Option<&'static str> {
        match (self.family, self.rank) {
            (Family::B, 2) => Some("C2"),
            (Family::D, 3) => Some("A3"),
            _ => None,
        }
    }

    /// Every valid simple type of rank at most `max_rank`, aliases included.
    pub fn all_up_to(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for family in [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ] {
            for rank in 1..=max_rank {
                if let Ok(t) = SimpleType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        SimpleType::new(family, rank).map_err(|_| bad())
    }
}

/// Bonds of the Dynkin diagram as `(long, short, multiplicity)` in 1-based
/// vertex numbers. Simply-laced bonds list either end first.
fn bonds(ty: SimpleType) -> Vec<(usize, usize, i64)> {
    let l = ty.rank;
    let chain = |n: usize| (1..n).map(|i| (i, i + 1, 1)).collect::<Vec<_>>();
    match ty.family {
        Family::A => chain(l),
        Family::B => {
            let mut b = chain(l - 1);
            b.push((l - 1, l, 2));
            b
        }
        Family::C => {
            let mut b = chain(l - 1);
            b.push((l, l - 1, 2));
            b
        }
        Family::D => {
            let mut b = chain(l - 1);
            b.push((l - 2, l, 1));
            b
        }
        Family::E => {
            let mut b = chain(l - 1);
            b.push((l - 3, l, 1));
            b
        }
        Family::F => vec![(1, 2, 1), (2, 3, 2), (3, 4, 1)],
        Family::G => vec![(2, 1, 3)],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    ty: SimpleType,
    cartan: Vec<Vec<i64>>,
    /// Marks over the extended vertex positions; the last entry is `m_0 = 1`.
    marks: Vec<i64>,
    /// Coefficients of the lowest root in the simple roots.
    lowest_root: Vec<i64>,
    inverse_cartan: Vec<Vec<Rational>>,
    /// Squared lengths, normalised so long roots have length 2.
    root_lengths: Vec<Rational>,
    positive_roots: Vec<Vec<i64>>,
    extended_cartan: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn new(ty: SimpleType) -> Self {
        let l = ty.rank;
        let mut cartan = vec![vec![0i64; l]; l];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut lengths = vec![int(2); l];
        for (long, short, mult) in bonds(ty) {
            let (a, b) = (long - 1, short - 1);
            cartan[a][b] = -1;
            cartan[b][a] = -mult;
        }
        // |alpha_j|^2 / |alpha_i|^2 = A[i][j] / A[j][i]; walk outwards from vertex 1
        let mut known = vec![false; l];
        known[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for j in 0..l {
                if !known[j] && cartan[i][j] != 0 {
                    lengths[j] = lengths[i] * Rational::new(cartan[i][j], cartan[j][i]);
                    known[j] = true;
                    stack.push(j);
                }
            }
        }
        let longest = lengths.iter().copied().max().unwrap_or_else(|| int(2));
        for x in lengths.iter_mut() {
            *x = *x * int(2) / longest;
        }

        let positive_roots = root_closure(&cartan);
        let highest = positive_roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .cloned()
            .unwrap_or_default();
        let lowest_root: Vec<i64> = highest.iter().map(|c| -c).collect();
        let mut marks = highest.clone();
        marks.push(1);

        let rat_cartan: Vec<Vec<Rational>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        let inverse_cartan = inverse(&rat_cartan).expect("Cartan matrices are nonsingular");

        // theta^vee = sum_k theta_k |alpha_k|^2 / |theta|^2 alpha_k^vee, |theta|^2 = 2
        let theta_vee: Vec<Rational> = (0..l)
            .map(|k| int(highest[k]) * lengths[k] / int(2))
            .collect();
        let mut extended_cartan = vec![vec![0i64; l + 1]; l + 1];
        for i in 0..l {
            extended_cartan[i][..l].copy_from_slice(&cartan[i]);
            // <alpha_0, alpha_i^vee> = -<theta, alpha_i^vee>
            extended_cartan[i][l] = -(0..l).map(|k| highest[k] * cartan[i][k]).sum::<i64>();
            // <alpha_i, alpha_0^vee> = -<alpha_i, theta^vee>
            let v: Rational = (0..l).map(|k| theta_vee[k] * int(cartan[k][i])).sum();
            debug_assert!(v.is_integer());
            extended_cartan[l][i] = -v.to_integer();
        }
        extended_cartan[l][l] = 2;

        CartanData {
            ty,
            cartan,
            marks,
            lowest_root,
            inverse_cartan,
            root_lengths: lengths,
            positive_roots,
            extended_cartan,
        }
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn lowest_root(&self) -> &[i64] {
        &self.lowest_root
    }

    pub fn inverse_cartan(&self) -> &[Vec<Rational>] {
        &self.inverse_cartan
    }

    pub fn root_lengths(&self) -> &[Rational] {
        &self.root_lengths
    }

    /// Positive roots in root coordinates, sorted.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// `extended_cartan[a][b] = <beta_b, beta_a^vee>` over the extended vertex positions.
    pub fn extended_cartan(&self) -> &[Vec<i64>] {
        &self.extended_cartan
    }

    /// Position of a vertex given by its diagram number (`0` is the extra vertex).
    pub fn position(&self, vertex: usize) -> Result<usize> {
        match vertex {
            0 => Ok(self.rank()),
            v if v <= self.rank() => Ok(v - 1),
            v => Err(Error::VertexOutOfRange(v)),
        }
    }

    /// Diagram number of an extended vertex position.
    pub fn vertex_number(&self, position: usize) -> usize {
        if position == self.rank() {
            0
        } else {
            position + 1
        }
    }

    /// `<alpha_i, y>` for `y` in coroot coordinates.
    pub fn root_pairing(&self, i: usize, y: &[Rational]) -> Rational {
        (0..self.rank())
            .map(|j| int(self.cartan[j][i]) * y[j])
            .sum()
    }

    /// `<lambda, alpha_i^vee>` for `lambda` in root coordinates.
    pub fn coroot_pairing(&self, c: &[Rational], i: usize) -> Rational {
        (0..self.rank())
            .map(|j| c[j] * int(self.cartan[i][j]))
            .sum()
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        assert!(i < self.rank(), "simple reflection index out of range");
        WeylElement::from_word(self, vec![i])
    }

    /// Longest element of `W`, or of the parabolic subgroup omitting `excluded`.
    pub fn longest_element(&self, excluded: Option<usize>) -> WeylElement {
        let l = self.rank();
        let allowed: Vec<usize> = (0..l).filter(|&i| Some(i) != excluded).collect();
        // rho of the subsystem: pairs to 1 with every allowed simple root
        let mut v: Vec<Rational> = vec![Rational::zero(); l];
        for &i in &allowed {
            for (k, x) in v.iter_mut().enumerate() {
                *x += self.inverse_cartan[i][k];
            }
        }
        let mut applied = Vec::new();
        while let Some(&i) = allowed
            .iter()
            .find(|&&i| self.root_pairing(i, &v) > Rational::zero())
        {
            let p = self.root_pairing(i, &v);
            v[i] -= p;
            applied.push(i);
        }
        // v_final = s_{i_k} ... s_{i_1} v, so the word reads right to left
        applied.reverse();
        WeylElement::from_word(self, applied)
    }

    /// `omega_j^vee` in coroot coordinates (row `j` of the inverse Cartan matrix).
    pub fn fundamental_coweight(&self, j: usize) -> Vec<Rational> {
        self.inverse_cartan[j].clone()
    }

    /// `omega_i` in root coordinates (column `i` of the inverse Cartan matrix).
    pub fn fundamental_weight(&self, i: usize) -> Vec<Rational> {
        (0..self.rank())
            .map(|k| self.inverse_cartan[k][i])
            .collect()
    }

    /// Connection index `|P/Q|`.
    pub fn connection_index(&self) -> i64 {
        determinant(&self.cartan)
    }
}

/// Closure of the simple roots under simple reflections, positive half.
fn root_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|k| i64::from(k == i)).collect())
        .collect();
    while let Some(beta) = stack.pop() {
        if !seen.insert(beta.clone()) {
            continue;
        }
        for i in 0..l {
            let p: i64 = (0..l).map(|j| beta[j] * cartan[i][j]).sum();
            let mut image = beta.clone();
            image[i] -= p;
            if !seen.contains(&image) {
                stack.push(image);
            }
        }
    }
    seen.into_iter()
        .filter(|r| r.iter().all(|&c| c >= 0))
        .collect()
}

fn determinant(m: &[Vec<i64>]) -> i64 {
    let rows: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect();
    crate::rational::determinant(&rows).to_integer()
}

/// A Weyl group element as a reduced-or-not word together with its matrix on
/// coroot coordinates (column vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            word: Vec::new(),
            matrix: (0..rank)
                .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    /// `word = [i_1, ..., i_k]` is the product `s_{i_1} ... s_{i_k}`.
    pub fn from_word(data: &CartanData, word: Vec<usize>) -> Self {
        let l = data.rank();
        let mut m = WeylElement::identity(l).matrix;
        for &i in &word {
            // right-multiply by s_i: column c becomes col_c - A[c][i] col_i
            let ci: Vec<i64> = (0..l).map(|r| m[r][i]).collect();
            for (r, row) in m.iter_mut().enumerate() {
                for (c, x) in row.iter_mut().enumerate() {
                    *x -= data.cartan[c][i] * ci[r];
                }
            }
        }
        WeylElement { word, matrix: m }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, y: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(y).map(|(&a, &b)| int(a) * b).sum())
            .collect()
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let l = self.matrix.len();
        let matrix = (0..l)
            .map(|r| {
                (0..l)
                    .map(|c| (0..l).map(|k| self.matrix[r][k] * other.matrix[k][c]).sum())
                    .collect()
            })
            .collect();
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { word, matrix }
    }
}
