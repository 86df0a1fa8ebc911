//! Independent replay of a [`Derivation`].
//!
//! Uses only class arithmetic and value-level substitution: each step must
//! change the value of the expression by exactly `c·L^k·(rhs − [lhs])` for the
//! rewritten summand `c·L^k·[lhs]`.

use thiserror::Error;

use super::{Derivation, MotivicClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {step}: refers to rule {rule}, but only {count} rules are declared")]
    UnknownRule { step: usize, rule: usize, count: usize },
    #[error("rule {0} mentions its own left-hand side")]
    BadRule(usize),
    #[error("step {0}: does not start from the previous expression")]
    Discontinuous(usize),
    #[error("step {0}: no summand at the rewritten position carries the rule's symbol")]
    WrongPosition(usize),
    #[error("step {0}: resulting expression is not the stated substitution")]
    UnsoundStep(usize),
    #[error("final expression does not evaluate to the stated result")]
    WrongResult,
}

/// Check every step; returns the established equation `(lhs, rhs)`.
pub fn replay(d: &Derivation) -> Result<(MotivicClass, MotivicClass), ReplayError> {
    for (k, r) in d.rules.iter().enumerate() {
        if r.rhs.symbols().contains(&r.lhs) {
            return Err(ReplayError::BadRule(k));
        }
    }
    let mut current = &d.start;
    for (n, step) in d.steps.iter().enumerate() {
        let rule = d.rules.get(step.rule).ok_or(ReplayError::UnknownRule {
            step: n,
            rule: step.rule,
            count: d.rules.len(),
        })?;
        if &step.before != current {
            return Err(ReplayError::Discontinuous(n));
        }
        let hit = step
            .before
            .summands
            .get(step.position)
            .filter(|t| t.symbol == rule.lhs)
            .ok_or(ReplayError::WrongPosition(n))?;
        let occurrence = MotivicClass::atom(hit.symbol.clone(), hit.power, hit.coeff);
        let replaced = occurrence.substitute(&rule.lhs, &rule.rhs);
        let expected = step.before.value() - occurrence + replaced;
        if step.after.value() != expected {
            return Err(ReplayError::UnsoundStep(n));
        }
        current = &step.after;
    }
    if current.value() != d.result {
        return Err(ReplayError::WrongResult);
    }
    Ok((d.start.value(), d.result.clone()))
}
