//! Root data of the simple Lie types.
//!
//! Nodes are numbered as in Bourbaki's tables (see `docs/FORMATS.md`) and
//! stored zero-based: node `i` in text and JSON is index `i - 1` here.
//!
//! Conventions: `(alpha_i, alpha_i) = 2 r_i`, with `r_i = 1` on short nodes and
//! `r_i = r^vee` on long nodes, and `C_ij = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)`.
//! The simple root `alpha_i` has fundamental-weight coordinates given by
//! column `i` of `C`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            LieType::A => 'A',
            LieType::B => 'B',
            LieType::C => 'C',
            LieType::D => 'D',
            LieType::E => 'E',
            LieType::F => 'F',
            LieType::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "E" => Ok(LieType::E),
            "F" => Ok(LieType::F),
            "G" => Ok(LieType::G),
            other => Err(Error::Parse(format!("unknown Lie type '{other}'"))),
        }
    }
}

/// Integer weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(rank: usize) -> Self {
        WeightVector(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        WeightVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, c) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    pub lie_type: LieType,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub r: Vec<u32>,
    pub r_vee: u32,
    pub o_sign: Vec<i8>,
    pub psi_sign: Vec<i8>,
    pub theta: Vec<u8>,
}

/// Builds the root datum of a simple Lie type.
pub fn build_cartan(lie_type: LieType, rank: usize) -> Result<CartanData> {
    let invalid = |reason: &str| Error::InvalidType {
        lie_type: lie_type.to_string(),
        rank,
        reason: reason.to_string(),
    };
    let chain = |n: usize| -> Vec<(usize, usize)> { (1..n).map(|i| (i - 1, i)).collect() };

    let (r, edges): (Vec<u32>, Vec<(usize, usize)>) = match lie_type {
        LieType::A => {
            if rank < 1 {
                return Err(invalid("A_l requires l >= 1"));
            }
            (vec![1; rank], chain(rank))
        }
        LieType::B => {
            if rank < 2 {
                return Err(invalid("B_l requires l >= 2"));
            }
            let mut r = vec![2; rank];
            r[rank - 1] = 1;
            (r, chain(rank))
        }
        LieType::C => {
            if rank < 2 {
                return Err(invalid("C_l requires l >= 2"));
            }
            let mut r = vec![1; rank];
            r[rank - 1] = 2;
            (r, chain(rank))
        }
        LieType::D => {
            if rank < 4 {
                return Err(invalid("D_l requires l >= 4"));
            }
            let mut edges = chain(rank - 1);
            edges.push((rank - 3, rank - 1));
            (vec![1; rank], edges)
        }
        LieType::E => {
            if !(6..=8).contains(&rank) {
                return Err(invalid("E_l requires 6 <= l <= 8"));
            }
            // 1-3-4-5-...-l with 2 attached to 4.
            let mut edges = vec![(0, 2), (1, 3)];
            for i in 2..rank - 1 {
                edges.push((i, i + 1));
            }
            (vec![1; rank], edges)
        }
        LieType::F => {
            if rank != 4 {
                return Err(invalid("F_4 only"));
            }
            (vec![2, 2, 1, 1], chain(4))
        }
        LieType::G => {
            if rank != 2 {
                return Err(invalid("G_2 only"));
            }
            (vec![1, 3], chain(2))
        }
    };

    let r_vee = *r.iter().max().expect("rank >= 1");
    let mut cartan_matrix = vec![vec![0i64; rank]; rank];
    for (i, row) in cartan_matrix.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in &edges {
        let m = r[i].max(r[j]) as i64;
        cartan_matrix[i][j] = -m / r[i] as i64;
        cartan_matrix[j][i] = -m / r[j] as i64;
    }

    let o_sign = bipartite_sign(&cartan_matrix, &(0..rank).collect::<Vec<_>>());
    let psi_sign = psi_from(&cartan_matrix, &r, &o_sign);
    let theta = o_sign.iter().map(|&o| ((1 - o) / 2) as u8).collect();

    Ok(CartanData {
        lie_type,
        rank,
        cartan_matrix,
        r,
        r_vee,
        o_sign,
        psi_sign,
        theta,
    })
}

/// Proper 2-coloring of the Dynkin diagram restricted to `nodes`, with the
/// smallest node of every connected component set to `+1`. Entries outside
/// `nodes` are left at `+1`.
fn bipartite_sign(c: &[Vec<i64>], nodes: &[usize]) -> Vec<i8> {
    let n = c.len();
    let mut inside = vec![false; n];
    for &i in nodes {
        inside[i] = true;
    }
    let mut sign = vec![0i8; n];
    let mut sorted: Vec<usize> = nodes.to_vec();
    sorted.sort_unstable();
    for &start in &sorted {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if j != i && inside[j] && c[i][j] != 0 && sign[j] == 0 {
                    sign[j] = -sign[i];
                    queue.push_back(j);
                }
            }
        }
    }
    sign.iter().map(|&s| if s == 0 { 1 } else { s }).collect()
}

/// psi agrees with o on short nodes and is constant on each connected
/// component of long nodes, opposite to its short neighbours.
fn psi_from(c: &[Vec<i64>], r: &[u32], o: &[i8]) -> Vec<i8> {
    let n = c.len();
    let mut psi = vec![0i8; n];
    for i in 0..n {
        if r[i] == 1 {
            psi[i] = o[i];
        }
    }
    let mut seen = vec![false; n];
    for start in 0..n {
        if r[start] == 1 || seen[start] {
            continue;
        }
        let mut component = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if j != i && c[i][j] != 0 && r[j] != 1 && !seen[j] {
                    seen[j] = true;
                    component.push(j);
                    queue.push_back(j);
                }
            }
        }
        let forced = component.iter().find_map(|&i| {
            (0..n).find(|&j| j != i && c[i][j] != 0 && r[j] == 1).map(|j| -psi[j])
        });
        let value = forced.unwrap_or(1);
        for &i in &component {
            psi[i] = value;
        }
    }
    psi
}

impl CartanData {
    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.rank
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i < self.rank {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: i + 1,
                rank: self.rank,
            })
        }
    }

    pub fn check_weight(&self, w: &WeightVector) -> Result<()> {
        if w.rank() == self.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            })
        }
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.lie_type, self.rank)
    }

    /// `alpha_i` in the fundamental-weight basis (column `i` of `C`).
    pub fn simple_root(&self, i: usize) -> WeightVector {
        WeightVector((0..self.rank).map(|j| self.cartan_matrix[j][i]).collect())
    }

    /// Converts simple-root coordinates `n` into the weight `sum_i n_i alpha_i`.
    pub fn root_coords_to_weight(&self, n: &[i64]) -> WeightVector {
        WeightVector(
            (0..self.rank)
                .map(|j| (0..self.rank).map(|i| self.cartan_matrix[j][i] * n[i]).sum())
                .collect(),
        )
    }

    /// `(mu, beta)` for `beta = sum_j n_j alpha_j`, in the normalization `(alpha_j, alpha_j) = 2 r_j`.
    pub fn pair_with_root(&self, mu: &[i64], n: &[i64]) -> i64 {
        (0..self.rank)
            .map(|j| n[j] * self.r[j] as i64 * mu[j])
            .sum()
    }

    /// Simple reflection `s_i(mu) = mu - mu_i alpha_i`.
    pub fn reflect(&self, mu: &WeightVector, i: usize) -> WeightVector {
        let k = mu.0[i];
        WeightVector(
            (0..self.rank)
                .map(|j| mu.0[j] - k * self.cartan_matrix[j][i])
                .collect(),
        )
    }

    /// Solves `d = sum_i n_i alpha_i` over the rationals.
    pub fn weight_to_root_coords(&self, d: &WeightVector) -> Result<Vec<Ratio<i64>>> {
        self.check_weight(d)?;
        let n = self.rank;
        let mut m: Vec<Vec<Ratio<i64>>> = (0..n)
            .map(|j| {
                let mut row: Vec<Ratio<i64>> =
                    (0..n).map(|i| Ratio::from(self.cartan_matrix[j][i])).collect();
                row.push(Ratio::from(d.0[j]));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&row| !m[row][col].is_zero())
                .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
            m.swap(col, pivot);
            let p = m[col][col];
            for x in m[col].iter_mut() {
                *x /= p;
            }
            for row in 0..n {
                if row != col && !m[row][col].is_zero() {
                    let f = m[row][col];
                    for k in 0..=n {
                        let v = m[col][k] * f;
                        m[row][k] -= v;
                    }
                }
            }
        }
        Ok(m.into_iter().map(|row| row[n]).collect())
    }

    /// Positive roots in simple-root coordinates, sorted by height.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        let mut idx = 0;
        while idx < roots.len() {
            let beta = roots[idx].clone();
            for i in 0..n {
                // p = largest k with beta - k alpha_i a root.
                let mut p = 0;
                loop {
                    let mut cand = beta.clone();
                    cand[i] -= p + 1;
                    if roots.contains(&cand) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * self.cartan_matrix[i][j]).sum();
                if p - pairing > 0 {
                    let mut next = beta.clone();
                    next[i] += 1;
                    if !roots.contains(&next) {
                        roots.push(next);
                    }
                }
            }
            idx += 1;
        }
        roots.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
        roots
    }

    /// Canonical `o` on the subdiagram `nodes` (smallest node of each component positive).
    pub fn sub_diagram_o_sign(&self, nodes: &[usize]) -> Vec<i8> {
        bipartite_sign(&self.cartan_matrix, nodes)
    }

    /// Sign of `o` relative to the subdiagram convention: `true` when they agree on `nodes`.
    pub fn o_sign_matches_sub_diagram(&self, nodes: &[usize]) -> bool {
        let sub = self.sub_diagram_o_sign(nodes);
        nodes.iter().all(|&i| sub[i] == self.o_sign[i])
    }
}

/// `mu <= lambda` in the dominance order: `lambda - mu` is a nonnegative integer
/// combination of simple roots.
pub fn weight_leq(mu: &WeightVector, lambda: &WeightVector, cd: &CartanData) -> Result<bool> {
    cd.check_weight(mu)?;
    cd.check_weight(lambda)?;
    let diff = WeightVector(lambda.0.iter().zip(&mu.0).map(|(a, b)| a - b).collect());
    let n = cd.weight_to_root_coords(&diff)?;
    Ok(n.iter().all(|x| x.is_integer() && !x.is_negative()))
}

/// Every simple type of rank at most `max_rank`.
pub fn all_types_up_to(max_rank: usize) -> Vec<(LieType, usize)> {
    let mut out = Vec::new();
    for rank in 1..=max_rank {
        out.push((LieType::A, rank));
        if rank >= 2 {
            out.push((LieType::B, rank));
            out.push((LieType::C, rank));
        }
        if rank >= 4 {
            out.push((LieType::D, rank));
        }
        if (6..=8).contains(&rank) {
            out.push((LieType::E, rank));
        }
        if rank == 4 {
            out.push((LieType::F, 4));
        }
        if rank == 2 {
            out.push((LieType::G, 2));
        }
    }
    out
}
