//! Weyl group arithmetic: canonical reduced words, full enumeration and
//! minimal-length representatives of right cosets `w W_P`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootsys::{RootSystem, RootSystemError, RootVector};

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("group enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("node index {index} out of range 1..={rank}")]
    InvalidNode { index: usize, rank: usize },
    #[error("element {0} does not belong to this group")]
    MixedGroup(String),
    #[error("malformed parabolic node list `{0}`")]
    MalformedParabolic(String),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

type Matrix = Vec<i64>;

fn identity(n: usize) -> Matrix {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Matrix {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

fn mat_apply(m: &[i64], v: &[i64], n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum())
        .collect()
}

/// Matrix of `s_i` (1-based) on simple-root coordinates.
fn simple_reflection(roots: &RootSystem, i: usize) -> Matrix {
    let n = roots.rank();
    let mut m = identity(n);
    for j in 0..n {
        m[(i - 1) * n + j] -= roots.cartan().entry(i - 1, j);
    }
    m
}

/// Element of a Weyl group: its lexicographically smallest reduced word and
/// its integer action on the root lattice (column `j` is `w(alpha_j)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Matrix,
    rank: usize,
}

impl WeylElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `w(v)` for `v` in simple-root coordinates.
    pub fn apply(&self, v: &RootVector) -> RootVector {
        RootVector(mat_apply(&self.matrix, &v.0, self.rank))
    }

    /// Whether `l(w s_i) < l(w)`, i.e. `w(alpha_i)` is negative.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let n = self.rank;
        (0..n).any(|r| self.matrix[r * n + (i - 1)] < 0)
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.matrix.cmp(&other.matrix))
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.word))
    }
}

/// Render a word as `s1*s2*s1`, or `e` when empty.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter()
        .map(|i| format!("s{i}"))
        .collect::<Vec<_>>()
        .join("*")
}

/// Lexicographically smallest reduced word for the product of `letters`,
/// computed without enumerating the group: repeatedly strip the smallest
/// left descent.
pub fn reduce_word(roots: &RootSystem, letters: &[usize]) -> Result<Vec<usize>, WeylError> {
    let n = roots.rank();
    for &i in letters {
        roots.check_node(i).map_err(|_| WeylError::InvalidNode { index: i, rank: n })?;
    }
    let gens: Vec<Matrix> = (1..=n).map(|i| simple_reflection(roots, i)).collect();
    // Only the inverse is needed: i is a left descent of w iff w^{-1}(alpha_i) < 0.
    let mut inv = identity(n);
    for &i in letters {
        inv = mat_mul(&gens[i - 1], &inv, n);
    }
    let mut word = Vec::new();
    loop {
        let descent = (0..n).find(|&i| (0..n).any(|r| inv[r * n + i] < 0));
        match descent {
            Some(i) => {
                word.push(i + 1);
                inv = mat_mul(&inv, &gens[i], n);
            }
            None => break,
        }
    }
    Ok(word)
}

/// Set of nodes generating a standard parabolic subgroup `W_P`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParabolicSubset {
    nodes: BTreeSet<usize>,
}

impl ParabolicSubset {
    pub fn new(nodes: impl IntoIterator<Item = usize>, rank: usize) -> Result<Self, WeylError> {
        let nodes: BTreeSet<usize> = nodes.into_iter().collect();
        if let Some(&bad) = nodes.iter().find(|&&i| i == 0 || i > rank) {
            return Err(WeylError::InvalidNode { index: bad, rank });
        }
        Ok(Self { nodes })
    }

    /// The Borel case `P = B`.
    pub fn empty() -> Self {
        Self {
            nodes: BTreeSet::new(),
        }
    }

    pub fn all(rank: usize) -> Self {
        Self {
            nodes: (1..=rank).collect(),
        }
    }

    /// Parse a comma-separated node list such as `1,2`; the empty string
    /// gives the Borel case.
    pub fn parse(text: &str, rank: usize) -> Result<Self, WeylError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::empty());
        }
        let nodes = text
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| WeylError::MalformedParabolic(text.to_string()))?;
        Self::new(nodes, rank)
    }

    pub fn nodes(&self) -> &BTreeSet<usize> {
        &self.nodes
    }

    pub fn contains(&self, i: usize) -> bool {
        self.nodes.contains(&i)
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.nodes.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Outcome of pairing two length-sorted coset lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LengthBijection {
    /// `pairs[j]` sends the j-th member of the first list to the j-th of the second.
    Bijection(Vec<(WeylElement, WeylElement)>),
    Mismatch {
        left_lengths: Vec<usize>,
        right_lengths: Vec<usize>,
    },
}

impl LengthBijection {
    pub fn is_bijection(&self) -> bool {
        matches!(self, LengthBijection::Bijection(_))
    }
}

/// Fully enumerated finite Weyl group.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    roots: RootSystem,
    generators: Vec<Matrix>,
    elements: Vec<WeylElement>,
    index: HashMap<Matrix, usize>,
}

/// Breadth-first closure over the simple reflections, deduplicated on the
/// action matrix. Elements come out sorted by length, then by word.
pub fn enumerate_group(roots: &RootSystem, cap: usize) -> Result<WeylGroup, WeylError> {
    let n = roots.rank();
    let generators: Vec<Matrix> = (1..=n).map(|i| simple_reflection(roots, i)).collect();
    let mut elements = vec![WeylElement {
        word: Vec::new(),
        matrix: identity(n),
        rank: n,
    }];
    let mut index: HashMap<Matrix, usize> = HashMap::new();
    index.insert(identity(n), 0);
    if cap == 0 {
        return Err(WeylError::CapExceeded(cap));
    }
    let mut layer = 0..1;
    while !layer.is_empty() {
        let mut next: Vec<WeylElement> = Vec::new();
        // Outer loop over letters: the first discovery of s_i w uses the
        // smallest left descent, which makes `i` + word(w) lexicographically
        // minimal.
        for (gi, g) in generators.iter().enumerate() {
            for k in layer.clone() {
                let matrix = mat_mul(g, &elements[k].matrix, n);
                if index.contains_key(&matrix) {
                    continue;
                }
                let mut word = Vec::with_capacity(elements[k].word.len() + 1);
                word.push(gi + 1);
                word.extend_from_slice(&elements[k].word);
                index.insert(matrix.clone(), usize::MAX);
                next.push(WeylElement {
                    word,
                    matrix,
                    rank: n,
                });
                if index.len() > cap {
                    return Err(WeylError::CapExceeded(cap));
                }
            }
        }
        next.sort();
        let start = elements.len();
        for (k, e) in next.into_iter().enumerate() {
            index.insert(e.matrix.clone(), start + k);
            elements.push(e);
        }
        layer = start..elements.len();
    }
    Ok(WeylGroup {
        roots: roots.clone(),
        generators,
        elements,
        index,
    })
}

impl WeylGroup {
    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    /// Position of `w` in [`Self::elements`], or `MixedGroup`.
    pub fn index_of(&self, w: &WeylElement) -> Result<usize, WeylError> {
        match self.index.get(&w.matrix) {
            Some(&k) if self.elements[k] == *w => Ok(k),
            _ => Err(WeylError::MixedGroup(w.to_string())),
        }
    }

    fn check_node(&self, i: usize) -> Result<(), WeylError> {
        if i == 0 || i > self.rank() {
            return Err(WeylError::InvalidNode {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    pub fn simple(&self, i: usize) -> Result<WeylElement, WeylError> {
        self.from_word(&[i])
    }

    pub fn from_word(&self, letters: &[usize]) -> Result<WeylElement, WeylError> {
        let n = self.rank();
        let mut m = identity(n);
        for &i in letters {
            self.check_node(i)?;
            m = mat_mul(&m, &self.generators[i - 1], n);
        }
        Ok(self.elements[self.index[&m]].clone())
    }

    pub fn multiply(&self, w: &WeylElement, u: &WeylElement) -> Result<WeylElement, WeylError> {
        self.index_of(w)?;
        self.index_of(u)?;
        let m = mat_mul(&w.matrix, &u.matrix, self.rank());
        Ok(self.elements[self.index[&m]].clone())
    }

    pub fn invert(&self, w: &WeylElement) -> Result<WeylElement, WeylError> {
        self.index_of(w)?;
        let rev: Vec<usize> = w.word.iter().rev().copied().collect();
        self.from_word(&rev)
    }

    pub fn length(&self, w: &WeylElement) -> Result<usize, WeylError> {
        self.index_of(w)?;
        Ok(w.length())
    }

    /// `#{beta > 0 : w(beta) < 0}`, computed directly from the matrix.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        self.roots
            .positive_roots()
            .iter()
            .filter(|b| w.apply(b).is_negative())
            .count()
    }

    /// Multiplicative order of `w`.
    pub fn element_order(&self, w: &WeylElement) -> Result<usize, WeylError> {
        self.index_of(w)?;
        let n = self.rank();
        let id = identity(n);
        let mut acc = w.matrix.clone();
        let mut k = 1;
        while acc != id {
            acc = mat_mul(&acc, &w.matrix, n);
            k += 1;
        }
        Ok(k)
    }

    pub fn longest_element(&self) -> &WeylElement {
        self.elements.last().expect("group is never empty")
    }

    /// Index of `w * s_beta` for element index `w` and a positive root `beta`.
    pub(crate) fn right_multiply_by_reflection(&self, w: usize, reflection: &[i64]) -> usize {
        let m = mat_mul(&self.elements[w].matrix, reflection, self.rank());
        self.index[&m]
    }

    pub(crate) fn simple_matrix(&self, i: usize) -> &[i64] {
        &self.generators[i - 1]
    }

    pub fn parabolic(&self, nodes: impl IntoIterator<Item = usize>) -> Result<ParabolicSubset, WeylError> {
        ParabolicSubset::new(nodes, self.rank())
    }

    fn check_parabolic(&self, p: &ParabolicSubset) -> Result<(), WeylError> {
        for &i in p.nodes() {
            self.check_node(i)?;
        }
        Ok(())
    }

    /// Whether `w` is the shortest element of `w W_P`.
    pub fn is_min_coset_rep(&self, w: &WeylElement, p: &ParabolicSubset) -> bool {
        p.nodes().iter().all(|&i| !w.has_right_descent(i))
    }

    /// Indices into [`Self::elements`] of the minimal coset representatives.
    pub fn min_coset_rep_indices(&self, p: &ParabolicSubset) -> Result<Vec<usize>, WeylError> {
        self.check_parabolic(p)?;
        Ok((0..self.order())
            .filter(|&k| self.is_min_coset_rep(&self.elements[k], p))
            .collect())
    }

    /// `W^P`, sorted by length then word.
    pub fn min_coset_reps(&self, p: &ParabolicSubset) -> Result<Vec<WeylElement>, WeylError> {
        Ok(self
            .min_coset_rep_indices(p)?
            .into_iter()
            .map(|k| self.elements[k].clone())
            .collect())
    }

    /// Elements of `W_P`.
    pub fn parabolic_subgroup(&self, p: &ParabolicSubset) -> Result<Vec<WeylElement>, WeylError> {
        self.check_parabolic(p)?;
        Ok(self
            .elements
            .iter()
            .filter(|w| w.word.iter().all(|i| p.contains(*i)))
            .cloned()
            .collect())
    }

    /// Pair the j-th members of `W^P` and `W^Q`.
    pub fn length_bijection(
        &self,
        p: &ParabolicSubset,
        q: &ParabolicSubset,
    ) -> Result<LengthBijection, WeylError> {
        let left = self.min_coset_reps(p)?;
        let right = self.min_coset_reps(q)?;
        let left_lengths: Vec<usize> = left.iter().map(WeylElement::length).collect();
        let right_lengths: Vec<usize> = right.iter().map(WeylElement::length).collect();
        if left_lengths != right_lengths {
            return Ok(LengthBijection::Mismatch {
                left_lengths,
                right_lengths,
            });
        }
        Ok(LengthBijection::Bijection(left.into_iter().zip(right).collect()))
    }
}
