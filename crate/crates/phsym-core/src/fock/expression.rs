//! Formal polynomial expressions in creation and annihilation operators,
//! and their realization as matrices on a chosen Fock space.

use crate::error::{PhsymError, Result};
use crate::fock::space::{jw_sign, occupied, FockSpace, Space};
use crate::fock::ManyBodyOperator;
use crate::linalg::CsrMatrix;
use crate::{Scalar, MAX_ORBITALS};
use std::sync::Arc;

/// One creation or annihilation operator acting on a named orbital.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpSymbol {
    /// `a†_j`
    Create(usize),
    /// `a_j`
    Annihilate(usize),
}

impl OpSymbol {
    /// Orbital the symbol acts on.
    pub fn orbital(&self) -> usize {
        match *self {
            OpSymbol::Create(j) | OpSymbol::Annihilate(j) => j,
        }
    }

    /// The adjoint symbol.
    pub fn dagger(&self) -> OpSymbol {
        match *self {
            OpSymbol::Create(j) => OpSymbol::Annihilate(j),
            OpSymbol::Annihilate(j) => OpSymbol::Create(j),
        }
    }

    /// Particle-number change (+1 for create, −1 for annihilate).
    pub fn charge(&self) -> i64 {
        match self {
            OpSymbol::Create(_) => 1,
            OpSymbol::Annihilate(_) => -1,
        }
    }
}

/// A scalar coefficient times an ordered product of symbols.
///
/// `word[0]` is the leftmost factor, i.e. the one applied last:
/// `word = [Create(j), Annihilate(k)]` denotes `a†_j a_k`. The empty word
/// is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorTerm {
    /// Scalar prefactor.
    pub coeff: Scalar,
    /// Operator word, leftmost factor first.
    pub word: Vec<OpSymbol>,
}

impl OperatorTerm {
    /// Net particle-number change of the word.
    pub fn net_charge(&self) -> i64 {
        self.word.iter().map(OpSymbol::charge).sum()
    }
}

/// A formal sum of operator terms over a fixed orbital set.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorExpression {
    num_orbitals: usize,
    terms: Vec<OperatorTerm>,
}

impl OperatorExpression {
    /// Empty expression (the zero operator) over `num_orbitals` orbitals.
    pub fn new(num_orbitals: usize) -> Result<Self> {
        if num_orbitals == 0 || num_orbitals > MAX_ORBITALS {
            return Err(PhsymError::invalid(format!(
                "num_orbitals must be in 1..={MAX_ORBITALS}, got {num_orbitals}"
            )));
        }
        Ok(OperatorExpression {
            num_orbitals,
            terms: Vec::new(),
        })
    }

    /// Number of orbitals the expression refers to.
    pub fn num_orbitals(&self) -> usize {
        self.num_orbitals
    }

    /// The terms of the sum.
    pub fn terms(&self) -> &[OperatorTerm] {
        &self.terms
    }

    /// Appends `coeff * word`; zero coefficients are kept out.
    pub fn add_term(&mut self, coeff: Scalar, word: Vec<OpSymbol>) -> Result<&mut Self> {
        for sym in &word {
            if sym.orbital() >= self.num_orbitals {
                return Err(PhsymError::invalid(format!(
                    "orbital {} outside 0..{}",
                    sym.orbital(),
                    self.num_orbitals
                )));
            }
        }
        if coeff.re != 0.0 || coeff.im != 0.0 {
            self.terms.push(OperatorTerm { coeff, word });
        }
        Ok(self)
    }

    /// Sum of two expressions over the same orbital set.
    pub fn add(&self, other: &OperatorExpression) -> Result<OperatorExpression> {
        if self.num_orbitals != other.num_orbitals {
            return Err(PhsymError::SpaceMismatch("expression sum".into()));
        }
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scaled(&self, alpha: Scalar) -> OperatorExpression {
        let mut out = self.clone();
        if alpha.re == 0.0 && alpha.im == 0.0 {
            out.terms.clear();
            return out;
        }
        for t in &mut out.terms {
            t.coeff *= alpha;
        }
        out
    }

    /// Formal product: every word of `self` concatenated with every word
    /// of `other` (`self` acting last).
    pub fn multiply(&self, other: &OperatorExpression) -> Result<OperatorExpression> {
        if self.num_orbitals != other.num_orbitals {
            return Err(PhsymError::SpaceMismatch("expression product".into()));
        }
        let mut out = OperatorExpression::new(self.num_orbitals)?;
        for a in &self.terms {
            for b in &other.terms {
                let mut word = a.word.clone();
                word.extend_from_slice(&b.word);
                out.terms.push(OperatorTerm {
                    coeff: a.coeff * b.coeff,
                    word,
                });
            }
        }
        Ok(out)
    }

    /// Formal adjoint: conjugate coefficients, reverse each word, and
    /// swap creation with annihilation.
    pub fn dagger(&self) -> OperatorExpression {
        let terms = self
            .terms
            .iter()
            .map(|t| OperatorTerm {
                coeff: t.coeff.conj(),
                word: t.word.iter().rev().map(OpSymbol::dagger).collect(),
            })
            .collect();
        OperatorExpression {
            num_orbitals: self.num_orbitals,
            terms,
        }
    }
}

/// Realizes a formal expression as a matrix on `space`.
///
/// On a particle-number sector every term must conserve particle number;
/// a term with nonzero net charge is rejected. On a symmetry-resolved
/// subspace the realized action must also close on the subspace, which is
/// checked state by state.
pub fn realize_expression(
    expr: &OperatorExpression,
    space: &Arc<FockSpace>,
) -> Result<ManyBodyOperator> {
    if expr.num_orbitals() != space.num_orbitals() {
        return Err(PhsymError::SpaceMismatch("expression realization".into()));
    }
    if space.sector_number().is_some() {
        for term in expr.terms() {
            let net = term.net_charge();
            if net != 0 {
                return Err(PhsymError::SectorMismatch { net });
            }
        }
    }
    let dim = space.dim();
    let mut triplets: Vec<(u32, u32, Scalar)> = Vec::new();
    for col in 0..dim {
        let b = space.state(col);
        'terms: for term in expr.terms() {
            let mut pat = b;
            let mut sign = 1.0;
            for sym in term.word.iter().rev() {
                match *sym {
                    OpSymbol::Create(j) => {
                        if occupied(pat, j) {
                            continue 'terms;
                        }
                        sign *= jw_sign(pat, j);
                        pat |= 1 << j;
                    }
                    OpSymbol::Annihilate(j) => {
                        if !occupied(pat, j) {
                            continue 'terms;
                        }
                        sign *= jw_sign(pat, j);
                        pat &= !(1 << j);
                    }
                }
            }
            let row = space.index_of(pat).ok_or_else(|| {
                PhsymError::SpaceMismatch(
                    "expression does not preserve the chosen subspace".into(),
                )
            })?;
            triplets.push((
                row as u32,
                col as u32,
                term.coeff * Scalar::new(sign, 0.0),
            ));
        }
    }
    let matrix = CsrMatrix::from_triplets(dim, dim, triplets)?;
    let sp: Space = space.clone().into();
    ManyBodyOperator::new(sp.clone(), sp, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Scalar {
        Scalar::new(re, 0.0)
    }

    #[test]
    fn realize_number_operator() {
        // n_1 = a†_1 a_1 on the full 2-orbital space: diagonal 0,0,1,1.
        let mut expr = OperatorExpression::new(2).unwrap();
        expr.add_term(c(1.0), vec![OpSymbol::Create(1), OpSymbol::Annihilate(1)])
            .unwrap();
        let space = FockSpace::full(2).unwrap();
        let op = realize_expression(&expr, &space).unwrap();
        let d = op.to_dense();
        for (i, expect) in [0.0, 0.0, 1.0, 1.0].into_iter().enumerate() {
            assert_eq!(d[(i, i)].re, expect);
        }
    }

    #[test]
    fn realize_hopping_has_fermionic_sign() {
        // a†_0 a_2 on |101⟩ (orbitals 0 and 2 occupied) vanishes (0 is
        // occupied); on |110⟩ it gives -|011⟩? Walk: a_2 removes orbital 2
        // of |110⟩ = {1,2}: sign (+1 below: orbital 1 occupied -> -1),
        // then a†_0 on {1}: sign +1. Net -1 onto |011⟩ = {0,1}.
        let mut expr = OperatorExpression::new(3).unwrap();
        expr.add_term(c(1.0), vec![OpSymbol::Create(0), OpSymbol::Annihilate(2)])
            .unwrap();
        let space = FockSpace::full(3).unwrap();
        let op = realize_expression(&expr, &space).unwrap();
        let d = op.to_dense();
        assert_eq!(d[(0b011, 0b110)].re, -1.0);
        assert_eq!(d[(0b100, 0b101)].re, 0.0);
    }

    #[test]
    fn sector_space_rejects_charged_words() {
        let mut expr = OperatorExpression::new(3).unwrap();
        expr.add_term(c(1.0), vec![OpSymbol::Create(0)]).unwrap();
        let sector = FockSpace::sector(3, 1).unwrap();
        assert!(matches!(
            realize_expression(&expr, &sector),
            Err(PhsymError::SectorMismatch { net: 1 })
        ));
        let full = FockSpace::full(3).unwrap();
        assert!(realize_expression(&expr, &full).is_ok());
    }

    #[test]
    fn dagger_reverses_and_conjugates() {
        let mut expr = OperatorExpression::new(2).unwrap();
        expr.add_term(
            Scalar::new(0.0, 2.0),
            vec![OpSymbol::Create(0), OpSymbol::Annihilate(1)],
        )
        .unwrap();
        let dag = expr.dagger();
        assert_eq!(dag.terms()[0].coeff, Scalar::new(0.0, -2.0));
        assert_eq!(
            dag.terms()[0].word,
            vec![OpSymbol::Create(1), OpSymbol::Annihilate(0)]
        );
        // Realized adjoint equals adjoint of realization.
        let space = FockSpace::full(2).unwrap();
        let a = realize_expression(&expr, &space).unwrap();
        let b = realize_expression(&dag, &space).unwrap();
        let residual = a
            .dagger()
            .add_scaled(&b, Scalar::new(-1.0, 0.0))
            .unwrap()
            .max_abs();
        assert!(residual < 1e-15);
    }
}
