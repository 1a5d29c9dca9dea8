//! The flat automorphism on operator expressions.
//!
//! Flat is the antilinear algebra automorphism that exchanges creation and
//! annihilation symbols in place — same orbital, same position in the word —
//! and conjugates coefficients. On matrices it coincides with conjugation by
//! particle-hole conjugation Ξ; on commutator-ordered one-body forms it
//! coincides with the negated Hermitian adjoint. Both statements are checked
//! here and in the integration suite.

use crate::error::{PhsymError, Result};
use crate::fock::{realize_expression, FockSpace, OperatorExpression};
use crate::{Real, Scalar};
use std::sync::Arc;

/// Applies the flat automorphism: every symbol swaps kind (creation ↔
/// annihilation at the same orbital), word order is preserved, and every
/// coefficient is complex-conjugated.
pub fn flat_expression(expr: &OperatorExpression) -> OperatorExpression {
    let mut flattened = OperatorExpression::new(expr.num_orbitals())
        .expect("orbital bound was validated by the input expression");
    for term in expr.terms() {
        flattened
            .add_term(
                term.coeff.conj(),
                term.word.iter().map(|symbol| symbol.dagger()).collect(),
            )
            .expect("orbitals were validated by the input expression");
    }
    flattened
}

/// Residual of the one-body adjoint identity, ‖realize(A♭) + realize(A)†‖_max.
///
/// `A` must be a one-body form: every word has length zero or two (scalar
/// terms arise from commutator-ordered quantization and are allowed). The
/// residual reports whether the identity actually holds — a commutator-ordered
/// one-body operator drives it below 1e−12, while a normal-ordered number
/// operator misses by exactly its constant offset.
pub fn check_weyl_lemma(a: &OperatorExpression, space: &Arc<FockSpace>) -> Result<Real> {
    for term in a.terms() {
        let len = term.word.len();
        if len != 0 && len != 2 {
            return Err(PhsymError::invalid(format!(
                "one-body residual requires words of length 0 or 2, found length {len}"
            )));
        }
    }
    let direct = realize_expression(a, space)?;
    let flattened = realize_expression(&flat_expression(a), space)?;
    let sum = flattened.add_scaled(&direct.dagger(), Scalar::new(1.0, 0.0))?;
    Ok(sum.max_abs())
}
