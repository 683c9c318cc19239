//! Independent referee for determinant-ideal membership.
//!
//! Equality in `C_q[SU_N]` is normal-form equality, which presumes the
//! rewrite system is confluent. This oracle answers the same question by a
//! method that shares no code with the rewriter: it spans the two-sided
//! ideal `(det_N - 1)` inside the matrix bialgebra degree by degree with
//! exact sparse elimination and tests membership there. Agreement between
//! the two on random inputs is one of the acceptance criteria.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::SparseSpan;
use crate::qfield::QScalar;

use super::hopf::quantum_determinant;
use super::{tables, AlgebraKind, AlgebraSpec, Gen, Monomial, NcPoly};

/// All normal-form monomials of total degree at most `max_deg`: sorted words
/// over the context's generators, det-leading-word-free in special unitary
/// contexts, with `detinv` powers allowed in front in unitary contexts.
pub fn sorted_monomials(spec: AlgebraSpec, max_deg: usize) -> Vec<Monomial> {
    let tab = tables(spec);
    let mut gens: Vec<Gen> = Vec::new();
    if spec.has_detinv() {
        gens.push(Gen::DetInv);
    }
    for i in 1..=spec.size {
        for j in 1..=spec.size {
            gens.push(Gen::U(i, j));
        }
    }
    let det_free = |word: &[Gen]| -> bool {
        match &tab.det_word {
            None => true,
            Some(dw) => !word.windows(dw.len()).any(|w| w == dw.as_slice()),
        }
    };
    let mut out = vec![Monomial::one()];
    let mut layer: Vec<Vec<Gen>> = vec![Vec::new()];
    for _ in 0..max_deg {
        let mut next_layer = Vec::new();
        for word in &layer {
            let floor = word.last().copied();
            for g in &gens {
                if floor.is_some_and(|f| *g < f) {
                    continue;
                }
                let mut next = word.clone();
                next.push(*g);
                if det_free(&next) {
                    next_layer.push(next);
                }
            }
        }
        out.extend(next_layer.iter().cloned().map(Monomial));
        layer = next_layer;
    }
    out
}

fn poly_vector(p: &NcPoly) -> BTreeMap<Monomial, QScalar> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Does `f` lie in the two-sided ideal generated by `det_N - 1` inside the
/// matrix bialgebra, as witnessed by spanning products `m1 (det - 1) m2` of
/// total degree at most `bound`?
///
/// `f` must be a matrix-bialgebra element and `bound` must be at least
/// `deg(f)`; a `true` answer is a proof of membership, while `false` only
/// says no witness exists within the bound.
pub fn oracle_ideal_membership(f: &NcPoly, bound: usize) -> Result<bool> {
    if f.spec().kind != AlgebraKind::MatrixBialgebra {
        return Err(Error::ContextMismatch {
            left: f.spec().to_string(),
            right: AlgebraSpec::matrix(f.spec().size, f.spec().root).to_string(),
        });
    }
    if bound < f.degree() {
        return Err(Error::BoundTooSmall { bound, degree: f.degree() });
    }
    let spec = f.spec();
    let n = spec.size as usize;
    if bound < n {
        // No product m1 (det - 1) m2 fits under the bound, so the spanned
        // slice of the ideal is zero.
        return Ok(f.is_structurally_zero());
    }
    let det_minus_one = quantum_determinant(spec).sub(&NcPoly::one(spec));
    let outer = sorted_monomials(spec, bound - n);
    let mono_poly = |m: &Monomial| {
        NcPoly::from_raw_terms(spec, [(m.0.clone(), QScalar::one(spec.root))])
    };
    let mut span: SparseSpan<Monomial> = SparseSpan::new();
    for m1 in &outer {
        let left = mono_poly(m1).mul(&det_minus_one);
        for m2 in &outer {
            if m1.degree() + m2.degree() + n > bound {
                continue;
            }
            let prod = left.mul(&mono_poly(m2));
            span.insert(poly_vector(&prod));
        }
    }
    Ok(span.contains(&poly_vector(f)))
}
