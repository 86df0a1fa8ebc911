//! Schubert calculus on `H*(G/P)` driven by the Chevalley formula.
//!
//! `sigma_w` for `w` in `W^P` is the class of the codimension-`l(w)`
//! Schubert variety; `sigma_e = 1` and `sigma_{w_0^P}` is the point class.
//! Divisor classes are weights `sum m_k omega_k`, with `omega_k` the class
//! `sigma_{s_k}`. Only multiplication by divisors is implemented.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weyl::{format_word, ParabolicSubset, WeylError, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchubertError {
    #[error("weight {weight:?} is not in the Picard lattice of G/P for P = {parabolic}")]
    NotInPicard {
        weight: Vec<i64>,
        parabolic: ParabolicSubset,
    },
    #[error("class lives on G/P for P = {found}, expected P = {expected}")]
    SpaceMismatch {
        expected: ParabolicSubset,
        found: ParabolicSubset,
    },
    #[error("{word} is not a minimal coset representative for P = {parabolic}")]
    NotInQuotient {
        word: String,
        parabolic: ParabolicSubset,
    },
    #[error("weight has {got} entries, expected {expected}")]
    WeightLength { got: usize, expected: usize },
    #[error("expected a divisor class, got a class of degree {0:?}")]
    NotADivisor(Option<usize>),
    #[error("relative hyperplane class has fiber degree {0} instead of 1")]
    ConventionSelfTest(i64),
    #[error("rank-2 relation zeta^2 - c1 zeta + c2 = 0 fails on G/B for node {0}")]
    RelationFailed(usize),
    #[error("zero-locus degrees need a rank-2 group, got rank {0}")]
    UnsupportedRank(usize),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// Divisor class as an integer combination of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass {
    pub weight: Vec<i64>,
}

impl DivisorClass {
    pub fn new(weight: Vec<i64>) -> Self {
        Self { weight }
    }

    /// `omega_i` (1-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut weight = vec![0; rank];
        weight[i - 1] = 1;
        Self { weight }
    }

    /// `rho = omega_1 + ... + omega_n`, i.e. `O(1, ..., 1)` on `G/B`.
    pub fn rho(rank: usize) -> Self {
        Self {
            weight: vec![1; rank],
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self {
            weight: self.weight.iter().map(|m| m * k).collect(),
        }
    }
}

/// Integer combination of Schubert classes on one `G/P`. Keys are element
/// indices into [`WeylGroup::elements`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyElement {
    parabolic: ParabolicSubset,
    coeffs: BTreeMap<usize, i64>,
}

impl CohomologyElement {
    pub fn zero(parabolic: ParabolicSubset) -> Self {
        Self {
            parabolic,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn parabolic(&self) -> &ParabolicSubset {
        &self.parabolic
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: usize) -> i64 {
        self.coeffs.get(&w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&w, &c)| (w, c))
    }

    fn add_term(&mut self, w: usize, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(w).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&w);
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = Self::zero(self.parabolic.clone());
        for (&w, &c) in &self.coeffs {
            out.add_term(w, c * k);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, SchubertError> {
        if self.parabolic != other.parabolic {
            return Err(SchubertError::SpaceMismatch {
                expected: self.parabolic.clone(),
                found: other.parabolic.clone(),
            });
        }
        let mut out = self.clone();
        for (&w, &c) in &other.coeffs {
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SchubertError> {
        self.add(&other.scaled(-1))
    }
}

/// Degree data of a zero locus `Z(s) ⊂ G/P` of a section of the rank-2
/// bundle pushed forward from `O(1, 1)` on `G/B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroLocusDegree {
    pub side: usize,
    pub ambient: ParabolicSubset,
    pub ambient_degree: i64,
    pub c1: CohomologyElement,
    pub c2: CohomologyElement,
    pub degree: i64,
}

/// Precomputed Chevalley data for one Weyl group.
#[derive(Debug, Clone)]
pub struct SchubertCalculus<'g> {
    group: &'g WeylGroup,
    /// `coroots[b][k]`: coefficient of `alpha_k^vee` in `beta_b^vee`.
    coroots: Vec<Vec<i64>>,
    /// `right[w][b]`: index of `w s_{beta_b}`.
    right: Vec<Vec<usize>>,
    /// `simple_right[w][i-1]`: index of `w s_i`.
    simple_right: Vec<Vec<usize>>,
}

impl<'g> SchubertCalculus<'g> {
    pub fn new(group: &'g WeylGroup) -> Result<Self, SchubertError> {
        let roots = group.root_system();
        let mut coroots = Vec::new();
        let mut reflections = Vec::new();
        for beta in roots.positive_roots() {
            coroots.push(roots.coroot_coords(beta).map_err(WeylError::from)?);
            reflections.push(roots.reflection_matrix(beta).map_err(WeylError::from)?);
        }
        let right = (0..group.order())
            .map(|w| {
                reflections
                    .iter()
                    .map(|r| group.right_multiply_by_reflection(w, r))
                    .collect()
            })
            .collect();
        let simple_right = (0..group.order())
            .map(|w| {
                (1..=group.rank())
                    .map(|i| group.right_multiply_by_reflection(w, group.simple_matrix(i)))
                    .collect()
            })
            .collect();
        let calc = Self {
            group,
            coroots,
            right,
            simple_right,
        };
        let zeta = calc.divisor_class(&ParabolicSubset::empty(), &DivisorClass::rho(group.rank()))?;
        for i in 1..=group.rank() {
            let fiber = calc.integrate_fiber(&zeta, i)?;
            if fiber != 1 {
                return Err(SchubertError::ConventionSelfTest(fiber));
            }
        }
        Ok(calc)
    }

    pub fn group(&self) -> &'g WeylGroup {
        self.group
    }

    fn len(&self, w: usize) -> usize {
        self.group.element(w).length()
    }

    fn is_rep(&self, w: usize, p: &ParabolicSubset) -> bool {
        self.group.is_min_coset_rep(self.group.element(w), p)
    }

    fn expect_space(&self, x: &CohomologyElement, p: &ParabolicSubset) -> Result<(), SchubertError> {
        if x.parabolic != *p {
            return Err(SchubertError::SpaceMismatch {
                expected: p.clone(),
                found: x.parabolic.clone(),
            });
        }
        Ok(())
    }

    /// `sigma_w`; `w` must lie in `W^P`.
    pub fn schubert_class(&self, p: &ParabolicSubset, word: &[usize]) -> Result<CohomologyElement, SchubertError> {
        let w = self.group.from_word(word)?;
        let idx = self.group.index_of(&w)?;
        if !self.is_rep(idx, p) {
            return Err(SchubertError::NotInQuotient {
                word: w.to_string(),
                parabolic: p.clone(),
            });
        }
        let mut x = CohomologyElement::zero(p.clone());
        x.add_term(idx, 1);
        Ok(x)
    }

    pub fn one(&self, p: &ParabolicSubset) -> CohomologyElement {
        let mut x = CohomologyElement::zero(p.clone());
        x.add_term(0, 1);
        x
    }

    /// Index of the longest element of `W^P`.
    pub fn point_index(&self, p: &ParabolicSubset) -> Result<usize, SchubertError> {
        let reps = self.group.min_coset_rep_indices(p)?;
        Ok(*reps.last().expect("W^P contains e"))
    }

    pub fn point_class(&self, p: &ParabolicSubset) -> Result<CohomologyElement, SchubertError> {
        let mut x = CohomologyElement::zero(p.clone());
        x.add_term(self.point_index(p)?, 1);
        Ok(x)
    }

    pub fn dimension(&self, p: &ParabolicSubset) -> Result<usize, SchubertError> {
        Ok(self.len(self.point_index(p)?))
    }

    /// Common length of the support, `None` when zero or mixed.
    pub fn degree(&self, x: &CohomologyElement) -> Option<usize> {
        let mut lens = x.coeffs.keys().map(|&w| self.len(w));
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    fn check_weight(&self, p: &ParabolicSubset, d: &DivisorClass) -> Result<(), SchubertError> {
        if d.weight.len() != self.group.rank() {
            return Err(SchubertError::WeightLength {
                got: d.weight.len(),
                expected: self.group.rank(),
            });
        }
        if p.nodes().iter().any(|&i| d.weight[i - 1] != 0) {
            return Err(SchubertError::NotInPicard {
                weight: d.weight.clone(),
                parabolic: p.clone(),
            });
        }
        Ok(())
    }

    /// The divisor class `sum m_k sigma_{s_k}` on `G/P`.
    pub fn divisor_class(&self, p: &ParabolicSubset, d: &DivisorClass) -> Result<CohomologyElement, SchubertError> {
        self.check_weight(p, d)?;
        let mut x = CohomologyElement::zero(p.clone());
        for (k, &m) in d.weight.iter().enumerate() {
            let s = self.group.simple(k + 1)?;
            x.add_term(self.group.index_of(&s)?, m);
        }
        Ok(x)
    }

    /// Inverse of [`Self::divisor_class`] on degree-1 classes.
    pub fn as_divisor(&self, x: &CohomologyElement) -> Result<DivisorClass, SchubertError> {
        if !x.is_zero() && self.degree(x) != Some(1) {
            return Err(SchubertError::NotADivisor(self.degree(x)));
        }
        let mut weight = vec![0; self.group.rank()];
        for (w, c) in x.terms() {
            let letter = self.group.element(w).word()[0];
            weight[letter - 1] = c;
        }
        Ok(DivisorClass::new(weight))
    }

    /// Ample generator `sum of omega_k` over nodes outside `P`.
    pub fn ample_generator(&self, p: &ParabolicSubset) -> DivisorClass {
        DivisorClass::new(
            (1..=self.group.rank())
                .map(|k| i64::from(!p.contains(k)))
                .collect(),
        )
    }

    /// Chevalley formula:
    /// `sigma_lambda * sigma_w = sum <lambda, beta^vee> sigma_{w s_beta}` over
    /// positive roots with `l(w s_beta) = l(w) + 1` and `w s_beta` in `W^P`.
    pub fn chevalley_multiply(&self, d: &DivisorClass, x: &CohomologyElement) -> Result<CohomologyElement, SchubertError> {
        let p = &x.parabolic;
        self.check_weight(p, d)?;
        let mut out = CohomologyElement::zero(p.clone());
        for (&w, &c) in &x.coeffs {
            let lw = self.len(w);
            for (b, coroot) in self.coroots.iter().enumerate() {
                let u = self.right[w][b];
                if self.len(u) != lw + 1 || !self.is_rep(u, p) {
                    continue;
                }
                let pairing: i64 = coroot.iter().zip(&d.weight).map(|(a, m)| a * m).sum();
                out.add_term(u, c * pairing);
            }
        }
        Ok(out)
    }

    /// `d^k * x`.
    pub fn chevalley_power(&self, d: &DivisorClass, k: usize, x: &CohomologyElement) -> Result<CohomologyElement, SchubertError> {
        let mut acc = x.clone();
        for _ in 0..k {
            acc = self.chevalley_multiply(d, &acc)?;
        }
        Ok(acc)
    }

    /// Coefficient of the point class.
    pub fn integrate(&self, x: &CohomologyElement) -> Result<i64, SchubertError> {
        Ok(x.coeff(self.point_index(&x.parabolic)?))
    }

    /// `p^*: H*(G/P) -> H*(G/B)`, `sigma_w -> sigma_w`.
    pub fn pullback(&self, x: &CohomologyElement) -> CohomologyElement {
        CohomologyElement {
            parabolic: ParabolicSubset::empty(),
            coeffs: x.coeffs.clone(),
        }
    }

    /// Fiber integration along the `P^1`-bundle `G/B -> G/P_i` with
    /// `P_i = {i}`: `sigma_w -> sigma_{w s_i}` when `w s_i < w`, else 0.
    pub fn pushforward(&self, x: &CohomologyElement, i: usize) -> Result<CohomologyElement, SchubertError> {
        self.expect_space(x, &ParabolicSubset::empty())?;
        let target = self.group.parabolic([i])?;
        let mut out = CohomologyElement::zero(target.clone());
        for (&w, &c) in &x.coeffs {
            let u = self.simple_right[w][i - 1];
            if self.len(u) + 1 == self.len(w) && self.is_rep(u, &target) {
                out.add_term(u, c);
            }
        }
        Ok(out)
    }

    fn integrate_fiber(&self, x: &CohomologyElement, i: usize) -> Result<i64, SchubertError> {
        let pushed = self.pushforward(x, i)?;
        Ok(pushed.coeff(0))
    }

    /// Chern classes of `E_i = p_{i*} O(1, ..., 1)` on `G/P_i`, `P_i = {i}`.
    ///
    /// With `zeta = c_1(O(1,...,1))` the relative hyperplane class of
    /// `G/B = P(E_i)`, `zeta^2 = p^*c1 zeta - p^*c2`, so `c1 = p_*(zeta^2)` and
    /// `c2 = p_*(p^*c1 zeta^2 - zeta^3)`. The relation is re-checked on `G/B`.
    pub fn chern_of_pushforward_bundle(&self, i: usize) -> Result<(CohomologyElement, CohomologyElement), SchubertError> {
        let borel = ParabolicSubset::empty();
        let rho = DivisorClass::rho(self.group.rank());
        let one = self.one(&borel);
        let zeta = self.chevalley_multiply(&rho, &one)?;
        let fiber = self.integrate_fiber(&zeta, i)?;
        if fiber != 1 {
            return Err(SchubertError::ConventionSelfTest(fiber));
        }
        let zeta2 = self.chevalley_multiply(&rho, &zeta)?;
        let zeta3 = self.chevalley_multiply(&rho, &zeta2)?;
        let c1 = self.pushforward(&zeta2, i)?;
        let c1_div = self.as_divisor(&c1)?;
        let c2 = self.pushforward(&self.chevalley_multiply(&c1_div, &zeta2)?.sub(&zeta3)?, i)?;
        let relation = zeta2
            .sub(&self.chevalley_multiply(&c1_div, &zeta)?)?
            .add(&self.pullback(&c2))?;
        if !relation.is_zero() {
            return Err(SchubertError::RelationFailed(i));
        }
        Ok((c1, c2))
    }

    /// `int_{F} h^{dim F - 2} c2(E)` for the ambient `F = G/P` with node
    /// `side` crossed (the Levi is the other node, and `O_F(1)` is
    /// `omega_side`). This is the degree of the zero locus of a generic
    /// section of `E`.
    pub fn degree_of_zero_locus(&self, side: usize) -> Result<ZeroLocusDegree, SchubertError> {
        if self.group.rank() != 2 {
            return Err(SchubertError::UnsupportedRank(self.group.rank()));
        }
        if side == 0 || side > 2 {
            return Err(WeylError::InvalidNode { index: side, rank: 2 }.into());
        }
        let levi = 3 - side;
        let ambient = self.group.parabolic([levi])?;
        let h = DivisorClass::fundamental(2, side);
        let dim = self.dimension(&ambient)?;
        let (c1, c2) = self.chern_of_pushforward_bundle(levi)?;
        let degree = self.integrate(&self.chevalley_power(&h, dim - 2, &c2)?)?;
        let ambient_degree = self.integrate(&self.chevalley_power(&h, dim, &self.one(&ambient))?)?;
        Ok(ZeroLocusDegree {
            side,
            ambient,
            ambient_degree,
            c1,
            c2,
            degree,
        })
    }

    /// Text form `3*sigma[s1*s2] - sigma[s2*s1]`.
    pub fn render(&self, x: &CohomologyElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, c)) in x.terms().enumerate() {
            let word = format_word(self.group.element(w).word());
            let sign = if c < 0 { "-" } else { "+" };
            if k > 0 {
                out.push_str(&format!(" {sign} "));
            } else if c < 0 {
                out.push('-');
            }
            let a = c.unsigned_abs();
            if a == 1 {
                out.push_str(&format!("sigma[{word}]"));
            } else {
                out.push_str(&format!("{a}*sigma[{word}]"));
            }
        }
        out
    }

    /// `(word, coefficient)` pairs.
    pub fn to_pairs(&self, x: &CohomologyElement) -> Vec<(String, i64)> {
        x.terms()
            .map(|(w, c)| (format_word(self.group.element(w).word()), c))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{generate_root_system, parse_cartan};
    use crate::weyl::enumerate_group;

    fn group(name: &str) -> WeylGroup {
        let r = generate_root_system(&parse_cartan(name).unwrap(), 1000).unwrap();
        enumerate_group(&r, 100_000).unwrap()
    }

    #[test]
    fn chevalley_on_zero_is_zero() {
        let g = group("G2");
        let s = SchubertCalculus::new(&g).unwrap();
        let b = ParabolicSubset::empty();
        let x = s
            .chevalley_multiply(&DivisorClass::rho(2), &CohomologyElement::zero(b))
            .unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn a2_flag_degree() {
        let g = group("A2");
        let s = SchubertCalculus::new(&g).unwrap();
        let b = ParabolicSubset::empty();
        let top = s.chevalley_power(&DivisorClass::rho(2), 3, &s.one(&b)).unwrap();
        assert_eq!(s.integrate(&top).unwrap(), 6);
    }

    #[test]
    fn g2_grassmannian_degrees() {
        // Frozen from an independent brute-force script: the quadric 5-fold
        // (Levi {1}) has degree 2, the adjoint variety (Levi {2}) degree 18.
        let g = group("G2");
        let s = SchubertCalculus::new(&g).unwrap();
        let mut degs = Vec::new();
        for levi in [1, 2] {
            let p = g.parabolic([levi]).unwrap();
            let h = s.ample_generator(&p);
            let top = s.chevalley_power(&h, 5, &s.one(&p)).unwrap();
            degs.push(s.integrate(&top).unwrap());
        }
        assert_eq!(degs, [2, 18]);
    }

    #[test]
    fn picard_lattice_is_enforced() {
        let g = group("G2");
        let s = SchubertCalculus::new(&g).unwrap();
        let p1 = g.parabolic([1]).unwrap();
        assert!(matches!(
            s.chevalley_multiply(&DivisorClass::fundamental(2, 1), &s.one(&p1)),
            Err(SchubertError::NotInPicard { .. })
        ));
        assert_eq!(s.ample_generator(&p1), DivisorClass::fundamental(2, 2));
    }

    #[test]
    fn integrate_basics() {
        let g = group("G2");
        let s = SchubertCalculus::new(&g).unwrap();
        for p in [ParabolicSubset::empty(), g.parabolic([1]).unwrap()] {
            assert_eq!(s.integrate(&s.point_class(&p).unwrap()).unwrap(), 1);
            assert_eq!(s.integrate(&s.one(&p)).unwrap(), 0);
        }
    }

    #[test]
    fn pullback_and_pushforward_basics() {
        let g = group("G2");
        let s = SchubertCalculus::new(&g).unwrap();
        let b = ParabolicSubset::empty();
        let p1 = g.parabolic([1]).unwrap();
        assert_eq!(s.pullback(&s.one(&p1)), s.one(&b));
        let h = s.divisor_class(&p1, &s.ample_generator(&p1)).unwrap();
        assert_eq!(s.pullback(&h), s.schubert_class(&b, &[2]).unwrap());
        let pt = s.pullback(&s.point_class(&p1).unwrap());
        assert_eq!(s.degree(&pt), Some(5));

        assert!(s.pushforward(&s.one(&b), 1).unwrap().is_zero());
        let zeta = s.divisor_class(&b, &DivisorClass::rho(2)).unwrap();
        for i in [1, 2] {
            let pushed = s.pushforward(&zeta, i).unwrap();
            assert_eq!(pushed, s.one(&g.parabolic([i]).unwrap()));
        }
        assert!(s.pushforward(&pt, 1).unwrap().is_zero());
        assert!(matches!(
            s.pushforward(&h, 1),
            Err(SchubertError::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn chern_classes_of_the_g2_bundles() {
        let g = group("G2");
        let s = SchubertCalculus::new(&g).unwrap();
        let (c1, c2) = s.chern_of_pushforward_bundle(1).unwrap();
        // -K of the quadric 5-fold is 5h; of the adjoint variety 3h.
        assert_eq!(s.render(&c1), "5*sigma[s2]");
        assert_eq!(s.degree(&c2), Some(2));
        let (c1, c2) = s.chern_of_pushforward_bundle(2).unwrap();
        assert_eq!(s.render(&c1), "3*sigma[s1]");
        assert_eq!(s.degree(&c2), Some(2));
    }

    #[test]
    fn product_of_projective_lines() {
        // A1 x A1: G/B = P^1 x P^1 over the second factor, and
        // E_1 = H^0(P^1, O(1)) ⊗ O(1) = O(1)^2, so c1 = 2h and c2 = h^2 = 0.
        let g = group("[[2,0],[0,2]]");
        let s = SchubertCalculus::new(&g).unwrap();
        let (c1, c2) = s.chern_of_pushforward_bundle(1).unwrap();
        assert_eq!(s.render(&c1), "2*sigma[s2]");
        assert!(c2.is_zero());
    }

    #[test]
    fn zero_locus_degrees() {
        let g = group("G2");
        let s = SchubertCalculus::new(&g).unwrap();
        let x = s.degree_of_zero_locus(1).unwrap();
        let y = s.degree_of_zero_locus(2).unwrap();
        assert_eq!((x.degree, y.degree), (42, 14));
        assert_eq!((x.ambient_degree, y.ambient_degree), (18, 2));
        let h = DivisorClass::fundamental(2, 1);
        let zero = CohomologyElement::zero(x.ambient.clone());
        assert_eq!(s.integrate(&s.chevalley_power(&h, 3, &zero).unwrap()).unwrap(), 0);

        let b3 = group("B3");
        let s3 = SchubertCalculus::new(&b3).unwrap();
        assert_eq!(
            s3.degree_of_zero_locus(1).unwrap_err(),
            SchubertError::UnsupportedRank(3)
        );
    }

    #[test]
    fn render_classes() {
        let g = group("A2");
        let s = SchubertCalculus::new(&g).unwrap();
        let b = ParabolicSubset::empty();
        let x = s.chevalley_multiply(&DivisorClass::rho(2), &s.one(&b)).unwrap();
        assert_eq!(s.render(&x), "sigma[s1] + sigma[s2]");
        assert_eq!(s.render(&x.scaled(-2)), "-2*sigma[s1] - 2*sigma[s2]");
        assert_eq!(s.render(&CohomologyElement::zero(b)), "0");
    }
}
