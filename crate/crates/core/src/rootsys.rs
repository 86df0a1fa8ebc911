//! Root systems of finite type built from a Cartan matrix.
//!
//! Convention: `a[i][j] = <alpha_j, alpha_i^vee>`, so the reflection in the
//! `i`-th simple root is `s_i(v) = v - (sum_j a[i][j] v_j) alpha_i`. Roots are
//! kept in simple-root coordinates as integers.
//!
//! Node indices in the public API are 1-based. For `G2`, node 1 carries the
//! long root and node 2 the short root.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default bound on the number of positive roots explored.
pub const DEFAULT_ROOT_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("malformed Cartan matrix literal: {0}")]
    MalformedLiteral(String),
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("root enumeration exceeded the cap of {0} positive roots")]
    CapExceeded(usize),
    #[error("node index {index} out of range 1..={rank}")]
    NodeOutOfRange { index: usize, rank: usize },
    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("{0} is not a root")]
    NotARoot(RootVector),
}

/// Generalized Cartan matrix of a finite-type root system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct CartanMatrix {
    rank: usize,
    entries: Vec<i64>,
}

impl CartanMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, RootSystemError> {
        let rank = rows.len();
        if rank == 0 {
            return Err(RootSystemError::InvalidCartan("empty matrix".into()));
        }
        if let Some(r) = rows.iter().position(|r| r.len() != rank) {
            return Err(RootSystemError::InvalidCartan(format!(
                "row {} has {} entries, expected {rank}",
                r + 1,
                rows[r].len()
            )));
        }
        for i in 0..rank {
            if rows[i][i] != 2 {
                return Err(RootSystemError::InvalidCartan(format!(
                    "diagonal entry ({0},{0}) is {1}, expected 2",
                    i + 1,
                    rows[i][i]
                )));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if rows[i][j] > 0 {
                    return Err(RootSystemError::InvalidCartan(format!(
                        "off-diagonal entry ({},{}) is positive",
                        i + 1,
                        j + 1
                    )));
                }
                if (rows[i][j] == 0) != (rows[j][i] == 0) {
                    return Err(RootSystemError::InvalidCartan(format!(
                        "entries ({0},{1}) and ({1},{0}) must vanish together",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self {
            rank,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Cartan matrix of a named finite type (`A3`, `B2`, `G2`, ...).
    pub fn named(name: &str) -> Result<Self, RootSystemError> {
        let unknown = || RootSystemError::UnknownType(name.to_string());
        let mut chars = name.trim().chars();
        let family = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let digits: String = chars.collect();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(unknown());
        }
        let n: usize = digits.parse().map_err(|_| unknown())?;
        let valid = match family {
            'A' => n >= 1,
            'B' | 'C' => n >= 2,
            'D' => n >= 4,
            'E' => (6..=8).contains(&n),
            'F' => n == 4,
            'G' => n == 2,
            _ => false,
        };
        if !valid {
            return Err(unknown());
        }

        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut bond = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match family {
            'A' | 'B' | 'C' | 'F' | 'G' => {
                for i in 0..n.saturating_sub(1) {
                    bond(i, i + 1);
                }
            }
            'D' => {
                for i in 0..n - 2 {
                    bond(i, i + 1);
                }
                bond(n - 3, n - 1);
            }
            'E' => {
                // Bourbaki: 1-3-4-5-6-7-8 with node 2 attached to node 4.
                bond(0, 2);
                bond(1, 3);
                for i in 2..n - 1 {
                    bond(i, i + 1);
                }
            }
            _ => unreachable!(),
        }
        match family {
            // alpha_n short
            'B' => a[n - 1][n - 2] = -2,
            // alpha_n long
            'C' => a[n - 2][n - 1] = -2,
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            'F' => a[2][1] = -2,
            // alpha_1 long, alpha_2 short
            'G' => a[1][0] = -3,
            _ => {}
        }
        Self::new(a)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Entry `a[i][j]` with 0-based indices.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.rank).map(<[i64]>::to_vec).collect()
    }

    /// `<v, alpha_i^vee>` for `v` in simple-root coordinates (0-based `i`).
    pub(crate) fn simple_coroot_pairing(&self, i: usize, v: &[i64]) -> i64 {
        (0..self.rank).map(|j| self.entry(i, j) * v[j]).sum()
    }

    /// Positive integers `d` with `d_i a_ij = d_j a_ji`, minimal per component.
    fn symmetrizer(&self) -> Result<Vec<i64>, RootSystemError> {
        let n = self.rank;
        // d_i stored as a fraction num/den while propagating along edges.
        let mut frac: Vec<Option<(i64, i64)>> = vec![None; n];
        let mut out = vec![0i64; n];
        for start in 0..n {
            if frac[start].is_some() {
                continue;
            }
            frac[start] = Some((1, 1));
            let mut component = vec![start];
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let (num, den) = frac[i].unwrap();
                for j in 0..n {
                    if j == i || self.entry(i, j) == 0 {
                        continue;
                    }
                    // d_j = d_i * a_ij / a_ji
                    let (mut nj, mut dj) = (num * self.entry(i, j), den * self.entry(j, i));
                    if dj < 0 {
                        nj = -nj;
                        dj = -dj;
                    }
                    let g = nj.gcd(&dj);
                    let cand = (nj / g, dj / g);
                    match frac[j] {
                        None => {
                            frac[j] = Some(cand);
                            component.push(j);
                            stack.push(j);
                        }
                        Some(existing) if existing != cand => {
                            return Err(RootSystemError::NotSymmetrizable)
                        }
                        Some(_) => {}
                    }
                }
            }
            let lcm = component
                .iter()
                .fold(1i64, |acc, &i| acc.lcm(&frac[i].unwrap().1));
            let scaled: Vec<i64> = component
                .iter()
                .map(|&i| {
                    let (num, den) = frac[i].unwrap();
                    num * (lcm / den)
                })
                .collect();
            let g = scaled.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            for (&i, &x) in component.iter().zip(&scaled) {
                out[i] = x / g;
            }
        }
        Ok(out)
    }
}

impl TryFrom<Vec<Vec<i64>>> for CartanMatrix {
    type Error = RootSystemError;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        Self::new(rows)
    }
}

impl From<CartanMatrix> for Vec<Vec<i64>> {
    fn from(c: CartanMatrix) -> Self {
        c.rows()
    }
}

/// Parse a type name (`G2`) or a JSON matrix literal (`[[2,-1],[-3,2]]`).
pub fn parse_cartan(spec: &str) -> Result<CartanMatrix, RootSystemError> {
    let s = spec.trim();
    if s.starts_with('[') {
        let rows: Vec<Vec<i64>> = serde_json::from_str(s)
            .map_err(|e| RootSystemError::MalformedLiteral(e.to_string()))?;
        CartanMatrix::new(rows)
    } else {
        CartanMatrix::named(s)
    }
}

/// A vector in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        RootVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }
}

impl std::ops::Neg for RootVector {
    type Output = RootVector;

    fn neg(self) -> RootVector {
        RootVector(self.0.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Cartan matrix together with its positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    cartan: CartanMatrix,
    positive_roots: Vec<RootVector>,
    symmetrizer: Vec<i64>,
}

/// Orbit closure of the simple roots under simple reflections, keeping
/// positive roots only. Output sorted by height, then lexicographically.
pub fn generate_root_system(c: &CartanMatrix, cap: usize) -> Result<RootSystem, RootSystemError> {
    let symmetrizer = c.symmetrizer()?;
    let n = c.rank();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut frontier: Vec<Vec<i64>> = Vec::new();
    for i in 1..=n {
        let v = RootVector::simple(n, i).0;
        seen.insert(v.clone());
        frontier.push(v);
    }
    if seen.len() > cap {
        return Err(RootSystemError::CapExceeded(cap));
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for i in 0..n {
                let p = c.simple_coroot_pairing(i, v);
                if p == 0 {
                    continue;
                }
                let mut w = v.clone();
                w[i] -= p;
                if w.iter().all(|&x| x >= 0) && w.iter().any(|&x| x > 0) && seen.insert(w.clone())
                {
                    if seen.len() > cap {
                        return Err(RootSystemError::CapExceeded(cap));
                    }
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let mut positive_roots: Vec<RootVector> = seen.into_iter().map(RootVector).collect();
    positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    Ok(RootSystem {
        cartan: c.clone(),
        positive_roots,
        symmetrizer,
    })
}

impl RootSystem {
    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    pub fn simple_root(&self, i: usize) -> Result<RootVector, RootSystemError> {
        self.check_node(i)?;
        Ok(RootVector::simple(self.rank(), i))
    }

    pub fn is_root(&self, v: &RootVector) -> bool {
        if v.is_positive() {
            self.positive_roots.binary_search_by(|r| {
                r.height().cmp(&v.height()).then_with(|| r.cmp(v))
            })
            .is_ok()
        } else if v.is_negative() {
            self.is_root(&-v.clone())
        } else {
            false
        }
    }

    pub(crate) fn check_node(&self, i: usize) -> Result<(), RootSystemError> {
        if i == 0 || i > self.rank() {
            return Err(RootSystemError::NodeOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    fn check_dim(&self, v: &RootVector) -> Result<(), RootSystemError> {
        if v.0.len() != self.rank() {
            return Err(RootSystemError::DimensionMismatch {
                got: v.0.len(),
                expected: self.rank(),
            });
        }
        Ok(())
    }

    /// Simple reflection `s_i(v) = v - <v, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, i: usize, v: &RootVector) -> Result<RootVector, RootSystemError> {
        self.check_node(i)?;
        self.check_dim(v)?;
        let mut w = v.0.clone();
        w[i - 1] -= self.cartan.simple_coroot_pairing(i - 1, &v.0);
        Ok(RootVector(w))
    }

    /// `(u, v)` for the invariant form normalised by the symmetrizer, so
    /// that `(alpha_i, alpha_i) = 2 d_i`.
    fn inner(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += u[i] * self.symmetrizer[i] * self.cartan.entry(i, j) * v[j];
            }
        }
        acc
    }

    /// Coordinates of `beta^vee` in the basis of simple coroots.
    pub fn coroot_coords(&self, beta: &RootVector) -> Result<Vec<i64>, RootSystemError> {
        self.check_dim(beta)?;
        if !self.is_root(beta) {
            return Err(RootSystemError::NotARoot(beta.clone()));
        }
        let half_norm = self.inner(&beta.0, &beta.0) / 2;
        Ok(beta
            .0
            .iter()
            .zip(&self.symmetrizer)
            .map(|(&b, &d)| {
                debug_assert_eq!((b * d) % half_norm, 0);
                b * d / half_norm
            })
            .collect())
    }

    /// `<v, beta^vee>`.
    pub fn coroot_pairing(&self, v: &RootVector, beta: &RootVector) -> Result<i64, RootSystemError> {
        self.check_dim(v)?;
        let coroot = self.coroot_coords(beta)?;
        Ok(coroot
            .iter()
            .enumerate()
            .map(|(k, &c)| c * self.cartan.simple_coroot_pairing(k, &v.0))
            .sum())
    }

    /// Matrix (row-major, acting on simple-root coordinates) of the
    /// reflection in `beta`.
    pub(crate) fn reflection_matrix(&self, beta: &RootVector) -> Result<Vec<i64>, RootSystemError> {
        let n = self.rank();
        let mut m = vec![0i64; n * n];
        for j in 1..=n {
            let col = RootVector::simple(n, j);
            let p = self.coroot_pairing(&col, beta)?;
            for i in 0..n {
                m[i * n + (j - 1)] = col.0[i] - p * beta.0[i];
            }
        }
        Ok(m)
    }
}
