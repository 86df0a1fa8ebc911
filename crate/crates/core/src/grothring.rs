//! Symbolic arithmetic in the Grothendieck ring of varieties over opaque
//! variety symbols, and a small rewrite engine that turns declared scissor
//! relations into a replayable derivation.
//!
//! Classes are modules over `Z[L]`: a term is `c * L^k * [S]` for an opaque
//! symbol `S`, with the reserved symbol `1` (the point) carrying pure
//! polynomials in `L`. Products of two genuine symbols are rejected. `L` is
//! never inverted or cancelled.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use petgraph::algo::toposort;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::motive::{fmt_l_power, LPolynomial};

pub mod replay;

pub const UNIT_SYMBOL: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrothError {
    #[error("invalid symbol name `{0}`")]
    InvalidSymbol(String),
    #[error("product of [{0}] and [{1}] is not supported; only multiplication by polynomials in L")]
    SymbolProduct(Symbol, Symbol),
    #[error("rule for [{0}] mentions its own left-hand side")]
    SelfReferentialRule(Symbol),
    #[error("symbols of a blow-up must be distinct, got `{0}` twice")]
    SymbolCollision(Symbol),
    #[error("rewrite rules are circular through [{0}]")]
    CircularRules(Symbol),
    #[error("[F1] - [F2] = {residual} is nonzero; the identity does not follow")]
    PoincareMismatch { residual: LPolynomial },
}

/// Opaque name of a variety class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Symbol(String);

impl Symbol {
    pub fn new(name: &str) -> Result<Self, GrothError> {
        let ok = !name.is_empty()
            && name
                .chars()
                .all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '~');
        if !ok {
            return Err(GrothError::InvalidSymbol(name.to_string()));
        }
        Ok(Symbol(name.to_string()))
    }

    /// The class of a point.
    pub fn unit() -> Self {
        Symbol(UNIT_SYMBOL.to_string())
    }

    pub fn is_unit(&self) -> bool {
        self.0 == UNIT_SYMBOL
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Symbol {
    type Error = GrothError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        Symbol::new(&s)
    }
}

impl From<Symbol> for String {
    fn from(s: Symbol) -> Self {
        s.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One summand `coeff * L^power * [symbol]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub coeff: i64,
    pub power: u32,
    pub symbol: Symbol,
}

impl Term {
    fn fmt_magnitude(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.coeff.unsigned_abs();
        let lp = fmt_l_power(self.power);
        if self.symbol.is_unit() {
            return match (self.power, a) {
                (0, _) => write!(f, "{a}"),
                (_, 1) => f.write_str(&lp),
                _ => write!(f, "{a}{lp}"),
            };
        }
        let mut parts = Vec::new();
        if a != 1 {
            parts.push(a.to_string());
        }
        if !lp.is_empty() {
            parts.push(lp);
        }
        parts.push(format!("[{}]", self.symbol));
        f.write_str(&parts.join("·"))
    }
}

fn fmt_sum<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = &'a Term>) -> fmt::Result {
    let mut empty = true;
    for (k, t) in terms.enumerate() {
        empty = false;
        if k == 0 {
            if t.coeff < 0 {
                f.write_str("−")?;
            }
        } else if t.coeff < 0 {
            f.write_str(" − ")?;
        } else {
            f.write_str(" + ")?;
        }
        t.fmt_magnitude(f)?;
    }
    if empty {
        f.write_str("0")?;
    }
    Ok(())
}

/// Element of the Grothendieck ring spanned by symbol atoms over `Z[L]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MotivicClass {
    terms: BTreeMap<(Symbol, u32), i64>,
}

impl MotivicClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `[name]`.
    pub fn symbol(name: &str) -> Result<Self, GrothError> {
        Ok(Self::atom(Symbol::new(name)?, 0, 1))
    }

    pub fn atom(symbol: Symbol, power: u32, coeff: i64) -> Self {
        let mut c = Self::zero();
        c.add_term(symbol, power, coeff);
        c
    }

    pub fn from_lpoly(p: &LPolynomial) -> Self {
        let mut c = Self::zero();
        for (d, k) in p.terms() {
            c.add_term(Symbol::unit(), d, k);
        }
        c
    }

    fn add_term(&mut self, symbol: Symbol, power: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let key = (symbol, power);
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|((s, p), &c)| Term {
            coeff: c,
            power: *p,
            symbol: s.clone(),
        })
    }

    /// Symbols other than the point.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .map(|(s, _)| s.clone())
            .filter(|s| !s.is_unit())
            .collect()
    }

    /// Polynomial coefficient of `[symbol]`.
    pub fn coefficient_of(&self, symbol: &Symbol) -> LPolynomial {
        LPolynomial::from_coeffs(
            self.terms
                .iter()
                .filter(|((s, _), _)| s == symbol)
                .map(|((_, p), &c)| (*p, c)),
        )
    }

    pub fn pure_part(&self) -> LPolynomial {
        self.coefficient_of(&Symbol::unit())
    }

    pub fn is_pure(&self) -> bool {
        self.symbols().is_empty()
    }

    pub fn mul_by_lpoly(&self, p: &LPolynomial) -> Self {
        let mut out = Self::zero();
        for ((s, pw), &c) in &self.terms {
            for (d, k) in p.terms() {
                out.add_term(s.clone(), pw + d, c * k);
            }
        }
        out
    }

    /// Multiply by `L^k`.
    pub fn shift(&self, k: u32) -> Self {
        self.mul_by_lpoly(&LPolynomial::monomial(k, 1))
    }

    /// `[X] * [Y] = [X x Y]`, supported only when one factor is a pure
    /// polynomial in `L`.
    pub fn mul(&self, other: &MotivicClass) -> Result<Self, GrothError> {
        if other.is_pure() {
            return Ok(self.mul_by_lpoly(&other.pure_part()));
        }
        if self.is_pure() {
            return Ok(other.mul_by_lpoly(&self.pure_part()));
        }
        let a = self.symbols().into_iter().next().unwrap();
        let b = other.symbols().into_iter().next().unwrap();
        Err(GrothError::SymbolProduct(a, b))
    }

    /// Replace every occurrence of `[symbol]` by `value`.
    pub fn substitute(&self, symbol: &Symbol, value: &MotivicClass) -> Self {
        let mut out = Self::zero();
        for t in self.terms() {
            if &t.symbol == symbol {
                out = out + value.shift(t.power).mul_by_lpoly(&LPolynomial::monomial(0, t.coeff));
            } else {
                out.add_term(t.symbol, t.power, t.coeff);
            }
        }
        out
    }

    /// Largest `k` such that every term carries at least `L^k`.
    pub fn l_adic_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|(_, p)| *p).min()
    }

    /// Render with the common power of `L` pulled out, e.g. `L·([X] − [Y])`.
    pub fn factored(&self) -> String {
        match self.l_adic_valuation() {
            None | Some(0) => self.to_string(),
            Some(k) => {
                let inner = MotivicClass {
                    terms: self
                        .terms
                        .iter()
                        .map(|((s, p), &c)| ((s.clone(), p - k), c))
                        .collect(),
                };
                if inner.terms.len() == 1 {
                    self.to_string()
                } else {
                    format!("{}·({inner})", fmt_l_power(k))
                }
            }
        }
    }
}

impl fmt::Display for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<Term> = self.terms().collect();
        fmt_sum(f, terms.iter())
    }
}

impl Add for MotivicClass {
    type Output = MotivicClass;

    fn add(mut self, rhs: MotivicClass) -> MotivicClass {
        for ((s, p), c) in rhs.terms {
            self.add_term(s, p, c);
        }
        self
    }
}

impl Neg for MotivicClass {
    type Output = MotivicClass;

    fn neg(self) -> MotivicClass {
        MotivicClass {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for MotivicClass {
    type Output = MotivicClass;

    fn sub(self, rhs: MotivicClass) -> MotivicClass {
        self + (-rhs)
    }
}

impl Serialize for MotivicClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self.terms().collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MotivicClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(deserializer)?;
        let mut out = MotivicClass::zero();
        for t in terms {
            out.add_term(t.symbol, t.power, t.coeff);
        }
        Ok(out)
    }
}

/// Unsimplified formal sum of terms. Derivations act on these so that
/// occurrences which would cancel as values (`[D] − [D]`) can still be
/// rewritten one at a time.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Expr {
    pub summands: Vec<Term>,
}

impl Expr {
    pub fn atom(symbol: Symbol) -> Self {
        Expr {
            summands: vec![Term {
                coeff: 1,
                power: 0,
                symbol,
            }],
        }
    }

    pub fn value(&self) -> MotivicClass {
        let mut out = MotivicClass::zero();
        for t in &self.summands {
            out.add_term(t.symbol.clone(), t.power, t.coeff);
        }
        out
    }
}

impl From<&MotivicClass> for Expr {
    fn from(c: &MotivicClass) -> Self {
        Expr {
            summands: c.terms().collect(),
        }
    }
}

impl Add for Expr {
    type Output = Expr;

    fn add(mut self, rhs: Expr) -> Expr {
        self.summands.extend(rhs.summands);
        self
    }
}

impl Neg for Expr {
    type Output = Expr;

    fn neg(mut self) -> Expr {
        for t in &mut self.summands {
            t.coeff = -t.coeff;
        }
        self
    }
}

impl Sub for Expr {
    type Output = Expr;

    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(f, self.summands.iter())
    }
}

/// `[lhs] = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteRule {
    pub lhs: Symbol,
    pub rhs: MotivicClass,
    pub justification: String,
}

impl RewriteRule {
    pub fn new(lhs: Symbol, rhs: MotivicClass, justification: impl Into<String>) -> Result<Self, GrothError> {
        if lhs.is_unit() || rhs.symbols().contains(&lhs) {
            return Err(GrothError::SelfReferentialRule(lhs));
        }
        Ok(Self {
            lhs,
            rhs,
            justification: justification.into(),
        })
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] = {}", self.lhs, self.rhs)
    }
}

/// Ambient space of a blow-up: a symbol or an explicit cellular class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ambient {
    Symbol(Symbol),
    Class(LPolynomial),
}

impl Ambient {
    fn class(&self) -> MotivicClass {
        match self {
            Ambient::Symbol(s) => MotivicClass::atom(s.clone(), 0, 1),
            Ambient::Class(p) => MotivicClass::from_lpoly(p),
        }
    }

    fn label(&self) -> String {
        match self {
            Ambient::Symbol(s) => s.to_string(),
            Ambient::Class(p) => format!("({p})"),
        }
    }
}

/// Blow-up of `ambient` along a smooth codimension-2 `center`: the
/// exceptional divisor is a Zariski `P^1`-bundle over the center, so
/// `[total] = [ambient ∖ center] + (1 + L)[center] = [ambient] + L[center]`.
pub fn blowup_rule(total: &Symbol, ambient: &Ambient, center: &Symbol) -> Result<RewriteRule, GrothError> {
    if total == center || total.is_unit() {
        return Err(GrothError::SymbolCollision(total.clone()));
    }
    if let Ambient::Symbol(a) = ambient {
        if a == total || a == center || a.is_unit() {
            return Err(GrothError::SymbolCollision(a.clone()));
        }
    }
    let rhs = ambient.class() + MotivicClass::atom(center.clone(), 1, 1);
    let a = ambient.label();
    RewriteRule::new(
        total.clone(),
        rhs,
        format!(
            "{total} is the blow-up of {a} along {center}: [{total}] = [{a} ∖ {center}] + (1 + L)·[{center}] = [{a}] + L·[{center}]"
        ),
    )
}

/// A recorded single-rule substitution at summand `position`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: usize,
    pub position: usize,
    pub before: Expr,
    pub after: Expr,
}

/// Certificate that `start` and `result` are equal given `rules`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub rules: Vec<RewriteRule>,
    pub start: Expr,
    pub steps: Vec<Step>,
    pub result: MotivicClass,
}

impl Derivation {
    /// The equation established: `value(start) = result`.
    pub fn conclusion(&self) -> (MotivicClass, MotivicClass) {
        (self.start.value(), self.result.clone())
    }

    /// Final line, with the common power of `L` pulled out when the
    /// starting expression vanishes.
    pub fn final_line(&self) -> String {
        let (lhs, rhs) = self.conclusion();
        if lhs.is_zero() {
            format!("{} = 0", rhs.factored())
        } else {
            format!("{lhs} = {rhs}")
        }
    }

    /// Aligned equation chain.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, r) in self.rules.iter().enumerate() {
            out.push_str(&format!("({}) {r}\n    {}\n", k + 1, r.justification));
        }
        let mut lines: Vec<(String, String)> = vec![(format!("  {}", self.start), String::new())];
        for s in &self.steps {
            lines.push((format!("= {}", s.after), format!("by ({})", s.rule + 1)));
        }
        lines.push((format!("= {}", self.result), "collect terms".to_string()));
        let width = lines.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
        out.push('\n');
        for (l, why) in lines {
            let pad = width - l.chars().count();
            if why.is_empty() {
                out.push_str(&l);
            } else {
                out.push_str(&format!("{l}{}   {why}", " ".repeat(pad)));
            }
            out.push('\n');
        }
        let (lhs, _) = self.conclusion();
        out.push('\n');
        if lhs.is_zero() {
            out.push_str(&format!("Since {} = 0:\n", self.start));
        }
        out.push_str(&self.final_line());
        out.push('\n');
        out
    }
}

fn check_acyclic(rules: &[RewriteRule]) -> Result<(), GrothError> {
    let mut graph: DiGraph<Symbol, ()> = DiGraph::new();
    let mut nodes = HashMap::new();
    for r in rules {
        nodes
            .entry(r.lhs.clone())
            .or_insert_with(|| graph.add_node(r.lhs.clone()));
    }
    for r in rules {
        if r.rhs.symbols().contains(&r.lhs) {
            return Err(GrothError::SelfReferentialRule(r.lhs.clone()));
        }
        for s in r.rhs.symbols() {
            if let Some(&to) = nodes.get(&s) {
                graph.update_edge(nodes[&r.lhs], to, ());
            }
        }
    }
    toposort(&graph, None)
        .map(|_| ())
        .map_err(|cycle| GrothError::CircularRules(graph[cycle.node_id()].clone()))
}

/// Rewrite until no left-hand side symbol remains. Each pass visits the
/// rules in declaration order and rewrites the leftmost occurrence of that
/// rule's symbol.
pub fn normal_form(expr: &Expr, rules: &[RewriteRule]) -> Result<(MotivicClass, Derivation), GrothError> {
    check_acyclic(rules)?;
    let lhs: BTreeSet<&Symbol> = rules.iter().map(|r| &r.lhs).collect();
    let mut current = expr.clone();
    let mut steps = Vec::new();
    while current.summands.iter().any(|t| lhs.contains(&t.symbol)) {
        for (k, rule) in rules.iter().enumerate() {
            let Some(pos) = current.summands.iter().position(|t| t.symbol == rule.lhs) else {
                continue;
            };
            let hit = current.summands[pos].clone();
            let replacement = rule
                .rhs
                .shift(hit.power)
                .mul_by_lpoly(&LPolynomial::monomial(0, hit.coeff));
            let mut after = current.summands[..pos].to_vec();
            after.extend(Expr::from(&replacement).summands);
            after.extend_from_slice(&current.summands[pos + 1..]);
            let after = Expr { summands: after };
            steps.push(Step {
                rule: k,
                position: pos,
                before: current.clone(),
                after: after.clone(),
            });
            current = after;
        }
    }
    let result = current.value();
    let derivation = Derivation {
        rules: rules.to_vec(),
        start: expr.clone(),
        steps,
        result: result.clone(),
    };
    Ok((result, derivation))
}

pub fn g2_symbols() -> [Symbol; 5] {
    ["D", "F1", "F2", "X", "Y"].map(|s| Symbol::new(s).unwrap())
}

/// Derive `L·([X] − [Y]) = 0` from the two blow-up descriptions of `D` and
/// the Bruhat classes of `F1`, `F2`. Fails with the residual when the two
/// classes differ.
pub fn verify_g2_identity(f1: &LPolynomial, f2: &LPolynomial) -> Result<Derivation, GrothError> {
    if f1 != f2 {
        return Err(GrothError::PoincareMismatch {
            residual: f1.clone() - f2.clone(),
        });
    }
    let [d, fa, fb, x, y] = g2_symbols();
    let rules = vec![
        blowup_rule(&d, &Ambient::Symbol(fa.clone()), &x)?,
        blowup_rule(&d, &Ambient::Symbol(fb.clone()), &y)?,
        RewriteRule::new(
            fa,
            MotivicClass::from_lpoly(f1),
            "Bruhat decomposition of F1: sum of L^l(w) over W^P1",
        )?,
        RewriteRule::new(
            fb,
            MotivicClass::from_lpoly(f2),
            "Bruhat decomposition of F2: sum of L^l(w) over W^P2",
        )?,
    ];
    let start = Expr::atom(d.clone()) - Expr::atom(d);
    let (_, derivation) = normal_form(&start, &rules)?;
    Ok(derivation)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s).unwrap()
    }

    fn cls(s: &str) -> MotivicClass {
        MotivicClass::symbol(s).unwrap()
    }

    #[test]
    fn module_arithmetic() {
        assert!((cls("X") - cls("X")).is_zero());
        let l = LPolynomial::lefschetz();
        let diff = (cls("X") - cls("Y")).mul_by_lpoly(&l);
        assert_eq!(diff, cls("X").shift(1) - cls("Y").shift(1));
        assert_eq!(diff.to_string(), "L·[X] − L·[Y]");
        assert_eq!(diff.factored(), "L·([X] − [Y])");

        let f1 = MotivicClass::from_lpoly(&LPolynomial::projective_space(5));
        let mixed = f1 + cls("X").shift(1);
        assert_eq!(mixed.terms().filter(|t| t.symbol.is_unit()).count(), 6);
        assert_eq!(mixed.symbols(), BTreeSet::from([sym("X")]));
    }

    #[test]
    fn symbol_products_are_rejected() {
        let p = MotivicClass::from_lpoly(&LPolynomial::projective_space(1));
        assert_eq!(cls("X").mul(&p).unwrap(), cls("X") + cls("X").shift(1));
        assert_eq!(
            cls("X").mul(&cls("Y")),
            Err(GrothError::SymbolProduct(sym("X"), sym("Y")))
        );
    }

    #[test]
    fn symbol_names() {
        assert!(Symbol::new("F1").is_ok());
        assert!(Symbol::new("").is_err());
        assert!(Symbol::new("[X]").is_err());
    }

    #[test]
    fn blowup_rules() {
        let r = blowup_rule(&sym("D"), &Ambient::Symbol(sym("F1")), &sym("X")).unwrap();
        assert_eq!(r.rhs, cls("F1") + cls("X").shift(1));
        assert_eq!(r.to_string(), "[D] = [F1] + L·[X]");
        let p1 = LPolynomial::projective_space(1);
        let r = blowup_rule(&sym("D"), &Ambient::Class(p1), &Symbol::unit()).unwrap();
        assert_eq!(
            r.rhs,
            MotivicClass::from_lpoly(&LPolynomial::from_coeffs([(0, 1), (1, 2)]))
        );
        assert_eq!(
            blowup_rule(&sym("D"), &Ambient::Symbol(sym("F1")), &sym("D")),
            Err(GrothError::SymbolCollision(sym("D")))
        );
        assert_eq!(
            blowup_rule(&sym("D"), &Ambient::Symbol(sym("X")), &sym("X")),
            Err(GrothError::SymbolCollision(sym("X")))
        );
    }

    #[test]
    fn single_step_normal_form() {
        let r = blowup_rule(&sym("D"), &Ambient::Symbol(sym("F1")), &sym("X")).unwrap();
        let (nf, d) = normal_form(&Expr::atom(sym("D")), &[r]).unwrap();
        assert_eq!(nf, cls("F1") + cls("X").shift(1));
        assert_eq!(d.steps.len(), 1);
        let (zero, d) = normal_form(&Expr::default(), &[]).unwrap();
        assert!(zero.is_zero());
        assert!(d.steps.is_empty());
    }

    #[test]
    fn two_blowups_of_the_same_total_space() {
        let rules = [
            blowup_rule(&sym("D"), &Ambient::Symbol(sym("F1")), &sym("X")).unwrap(),
            blowup_rule(&sym("D"), &Ambient::Symbol(sym("F2")), &sym("Y")).unwrap(),
        ];
        let start = Expr::atom(sym("D")) - Expr::atom(sym("D"));
        let (nf, d) = normal_form(&start, &rules).unwrap();
        assert_eq!(
            nf,
            cls("F1") - cls("F2") + cls("X").shift(1) - cls("Y").shift(1)
        );
        assert_eq!(d.steps.len(), 2);
        assert_eq!(d.steps[1].position, 2);
    }

    #[test]
    fn circular_rules_are_rejected() {
        let a = RewriteRule::new(sym("A"), cls("B"), "").unwrap();
        let b = RewriteRule::new(sym("B"), cls("A").shift(1), "").unwrap();
        assert!(matches!(
            normal_form(&Expr::atom(sym("A")), &[a, b]),
            Err(GrothError::CircularRules(_))
        ));
        assert_eq!(
            RewriteRule::new(sym("A"), cls("A"), ""),
            Err(GrothError::SelfReferentialRule(sym("A")))
        );
    }

    #[test]
    fn g2_identity() {
        let p5 = LPolynomial::projective_space(5);
        let d = verify_g2_identity(&p5, &p5).unwrap();
        assert_eq!(d.result, (cls("X") - cls("Y")).shift(1));
        assert!(d.start.value().is_zero());
        assert_eq!(d.final_line(), "L·([X] − [Y]) = 0");
        assert!(d.render().trim_end().ends_with("L·([X] − [Y]) = 0"));

        let other = LPolynomial::from_coeffs([(0, 7), (3, -2)]);
        assert_eq!(verify_g2_identity(&other, &other).unwrap().final_line(), d.final_line());

        let err = verify_g2_identity(&p5, &LPolynomial::projective_space(4)).unwrap_err();
        assert_eq!(
            err,
            GrothError::PoincareMismatch {
                residual: LPolynomial::monomial(5, 1)
            }
        );
        assert!(err.to_string().contains("[F1] - [F2] = L^5"));
    }

    #[test]
    fn l_is_never_cancelled() {
        let p5 = LPolynomial::projective_space(5);
        let d = verify_g2_identity(&p5, &p5).unwrap();
        let (nf, _) = normal_form(&Expr::from(&(cls("X") - cls("Y"))), &d.rules).unwrap();
        assert!(!nf.is_zero());
        assert_ne!(d.result, cls("X") - cls("Y"));
        assert_eq!(d.result.l_adic_valuation(), Some(1));
    }

    #[test]
    fn json_round_trip() {
        let p5 = LPolynomial::projective_space(5);
        let d = verify_g2_identity(&p5, &p5).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<Derivation>(&s).unwrap(), d);
    }
}
