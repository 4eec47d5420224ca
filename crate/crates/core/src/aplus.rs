//! The algebra `A⁺`, where floating arcs evaluate to 1: sign idempotents,
//! the decomposition of `P_n`, and the Hom table between the `P₍₋ᵐ₎`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{sign_idempotent, verify_equivalence, AlgebraElement, AlgebraError, Flavor, SignSequence};
use crate::combinat::binomial;
use crate::diagram::enumerate_basis;
use crate::field::{Field, Rationals};
use crate::grothendieck::{Basis, PolyClass};
use crate::linalg::SparseMatrix;

/// `P_n ≅ ⊕_m P₍₋ᵐ₎^{C(n,m)}`, from the sign sequences of length `n`
/// grouped by their number of minuses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlusDecomposition {
    pub n: usize,
    pub multiplicities: BTreeMap<usize, u64>,
    pub sequences: usize,
    /// Every sequence was checked equivalent to `(−^m)` through its witness pair.
    pub equivalences_verified: bool,
}

impl PlusDecomposition {
    pub fn matches_binomials(&self) -> bool {
        (0..=self.n).all(|m| self.multiplicities.get(&m).copied().unwrap_or(0) == binomial(self.n, m))
            && self.sequences == 1 << self.n
    }
}

pub fn decompose_projective_plus(n: usize) -> Result<PlusDecomposition, AlgebraError> {
    let seqs = SignSequence::all(n);
    let verified = seqs
        .par_iter()
        .map(verify_equivalence)
        .collect::<Result<Vec<bool>, _>>()?;
    let mut multiplicities = BTreeMap::new();
    for s in &seqs {
        *multiplicities.entry(s.minus_count()).or_insert(0) += 1;
    }
    Ok(PlusDecomposition {
        n,
        multiplicities,
        sequences: seqs.len(),
        equivalences_verified: verified.into_iter().all(|v| v),
    })
}

/// Idempotent identities for the `e_ε` with `|ε| = n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentSuite {
    pub n: usize,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub sum_is_unit: bool,
}

impl IdempotentSuite {
    pub fn holds(&self) -> bool {
        self.idempotent && self.orthogonal && self.sum_is_unit
    }
}

pub fn idempotent_suite(n: usize) -> Result<IdempotentSuite, AlgebraError> {
    let es = SignSequence::all(n)
        .iter()
        .map(|s| sign_idempotent(Flavor::Plus, s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut idempotent = true;
    let mut orthogonal = true;
    let mut sum = AlgebraElement::zero(Flavor::Plus);
    for (i, e) in es.iter().enumerate() {
        sum = sum.add(e)?;
        for (j, f) in es.iter().enumerate() {
            let p = e.multiply(f)?;
            if i == j {
                idempotent &= p == *e;
            } else {
                orthogonal &= p.is_zero();
            }
        }
    }
    Ok(IdempotentSuite {
        n,
        idempotent,
        orthogonal,
        sum_is_unit: sum == AlgebraElement::unit_idempotent(Flavor::Plus, n),
    })
}

/// `dim Hom(P₍₋ᵐ₎, P₍₋ⁿ₎) = dim e₍₋ᵐ₎ A⁺ e₍₋ⁿ₎`, the rank of
/// `x ↦ e₍₋ᵐ₎ x e₍₋ⁿ₎` on `1_m A⁺ 1_n`.
pub fn hom_dim_plus(m: usize, n: usize) -> Result<usize, AlgebraError> {
    let em = sign_idempotent(Flavor::Plus, &SignSequence::all_minus(m))?;
    let en = sign_idempotent(Flavor::Plus, &SignSequence::all_minus(n))?;
    let basis = enumerate_basis(m, n);
    let field = Rationals;
    let columns = basis
        .par_iter()
        .map(|x| em.multiply(&AlgebraElement::basis(Flavor::Plus, *x))?.multiply(&en))
        .collect::<Result<Vec<_>, _>>()?;
    let mut triples = Vec::new();
    for (col, img) in columns.iter().enumerate() {
        for (d, c) in img.terms() {
            let row = basis.binary_search(d).expect("product stays in 1_m A 1_n");
            triples.push((row, col, field.from_rational(c)));
        }
    }
    Ok(SparseMatrix::from_triples(basis.len(), basis.len(), triples, &field).rank(&field))
}

/// `hom_dim_plus(m, n)` for `m, n ≤ max`.
pub fn hom_table_plus(max: usize) -> Result<Vec<Vec<usize>>, AlgebraError> {
    (0..=max)
        .map(|m| (0..=max).map(|n| hom_dim_plus(m, n)).collect())
        .collect()
}

/// `[P₍₋ⁿ₎]` from `[P_n] = xⁿ = Σ_m C(n,m) [P₍₋ᵐ₎]`, solved from the bottom.
pub fn k0_plus_class(n: usize) -> PolyClass {
    let mut classes: Vec<PolyClass> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut c = PolyClass::projective(j);
        for (m, prev) in classes.iter().enumerate() {
            c = c.sub(&prev.scale(&BigInt::from(binomial(j, m))));
        }
        classes.push(c);
    }
    classes.pop().expect("n + 1 classes").convert(Basis::Projective)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grothendieck::parse_poly;

    #[test]
    fn decompositions() {
        let d = decompose_projective_plus(2).unwrap();
        assert_eq!(d.multiplicities, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        assert!(d.equivalences_verified && d.matches_binomials());
        assert_eq!(decompose_projective_plus(0).unwrap().multiplicities, BTreeMap::from([(0, 1)]));
        let d = decompose_projective_plus(4).unwrap();
        assert_eq!(d.sequences, 16);
        assert!(d.matches_binomials());
    }

    #[test]
    fn idempotents() {
        for n in 0..=3 {
            assert!(idempotent_suite(n).unwrap().holds(), "n={n}");
        }
    }

    #[test]
    fn hom_table_is_diagonal() {
        assert_eq!(hom_dim_plus(2, 2).unwrap(), 1);
        assert_eq!(hom_dim_plus(1, 2).unwrap(), 0);
        assert_eq!(hom_dim_plus(0, 0).unwrap(), 1);
        let t = hom_table_plus(3).unwrap();
        for (m, row) in t.iter().enumerate() {
            for (n, &v) in row.iter().enumerate() {
                assert_eq!(v, usize::from(m == n));
            }
        }
    }

    #[test]
    fn classes() {
        assert_eq!(k0_plus_class(0), PolyClass::projective(0));
        assert_eq!(k0_plus_class(1), parse_poly("x - 1").unwrap());
        assert_eq!(k0_plus_class(3), parse_poly("x^3 - 3x^2 + 3x - 1").unwrap());
        for n in 0..=6 {
            assert_eq!(k0_plus_class(n), PolyClass::standard(n).convert(Basis::Projective));
        }
    }
}
