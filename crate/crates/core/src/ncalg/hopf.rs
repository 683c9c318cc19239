//! Counit, coproduct, antipode, and the quantum determinant.
//!
//! The coproduct is matrix comultiplication `D(u^i_j) = sum_k u^i_k (x)
//! u^k_j` extended multiplicatively; the antipode inverts the matrix through
//! quantum minors. In `C_q[SU_N]` the determinant is one, so `S(u^i_j)` is
//! the signed minor alone; in `C_q[U_N]` it carries a `detinv` factor and
//! `S(detinv) = det`. The matrix bialgebra has no antipode at all.

use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::qfield::QScalar;

use super::rules::{det_terms, inversions, neg_q_pow};
use super::{tables, AlgebraKind, AlgebraSpec, Gen, Monomial, NcPoly, Tensor3, TensorPoly};

/// The quantum determinant of the generator matrix, normal-formed in the
/// given context (so it collapses to 1 in a special unitary context).
pub fn quantum_determinant(spec: AlgebraSpec) -> NcPoly {
    NcPoly::from_raw_terms(spec, det_terms(spec.size, spec.root))
}

/// `det^k` in a matrix-bialgebra context, cached per context.
pub(crate) fn det_power(m_spec: AlgebraSpec, k: usize) -> Arc<NcPoly> {
    debug_assert_eq!(m_spec.kind, AlgebraKind::MatrixBialgebra);
    let tab = tables(m_spec);
    if let Some(hit) = tab.det_powers.get(&k) {
        return hit.clone();
    }
    let value = if k == 0 {
        NcPoly::one(m_spec)
    } else {
        det_power(m_spec, k - 1).mul(&quantum_determinant(m_spec))
    };
    let value = Arc::new(value);
    let stored = tab.det_powers.entry(k).or_insert(value).clone();
    stored
}

fn counit_gen(g: Gen, root: u32) -> QScalar {
    match g {
        Gen::DetInv => QScalar::one(root),
        Gen::U(i, j) => {
            if i == j {
                QScalar::one(root)
            } else {
                QScalar::zero(root)
            }
        }
    }
}

pub(crate) fn counit(poly: &NcPoly) -> QScalar {
    let root = poly.root();
    let mut acc = QScalar::zero(root);
    'terms: for (m, c) in poly.terms() {
        let mut prod = c.clone();
        for g in &m.0 {
            let e = counit_gen(*g, root);
            if e.is_zero() {
                continue 'terms;
            }
            prod = prod.mul(&e);
        }
        acc = acc.add(&prod);
    }
    acc
}

/// The per-generator coproduct legs: `D(u^i_j) = sum_k u^i_k (x) u^k_j`,
/// `D(detinv) = detinv (x) detinv`.
fn coproduct_legs(g: Gen, size: u8) -> Vec<(Gen, Gen)> {
    match g {
        Gen::DetInv => vec![(Gen::DetInv, Gen::DetInv)],
        Gen::U(i, j) => (1..=size).map(|k| (Gen::U(i, k), Gen::U(k, j))).collect(),
    }
}

pub(crate) fn coproduct(poly: &NcPoly) -> TensorPoly {
    let spec = poly.spec();
    let tab = tables(spec);
    let mut out = TensorPoly::zero(spec, spec);
    for (m, c) in poly.terms() {
        if m.is_one() {
            out.accumulate(Monomial::one(), Monomial::one(), c.clone());
            continue;
        }
        let choices: Vec<Vec<(Gen, Gen)>> =
            m.0.iter().map(|g| coproduct_legs(*g, spec.size)).collect();
        for combo in choices.into_iter().multi_cartesian_product() {
            let left_word: Vec<Gen> = combo.iter().map(|(l, _)| *l).collect();
            let right_word: Vec<Gen> = combo.iter().map(|(_, r)| *r).collect();
            let lnf = super::rules::nf_word_cached(&tab, &left_word);
            let rnf = super::rules::nf_word_cached(&tab, &right_word);
            for (ml, cl) in lnf.iter() {
                for (mr, cr) in rnf.iter() {
                    out.accumulate(ml.clone(), mr.clone(), c.mul(cl).mul(cr));
                }
            }
        }
    }
    out
}

/// The double coproduct `(D (x) id)D`, with all three legs normal-formed.
/// By coassociativity this equals `(id (x) D)D`; the Hopf suite checks that.
pub(crate) fn coproduct3(poly: &NcPoly) -> Tensor3 {
    let spec = poly.spec();
    let tab = tables(spec);
    let mut out = Tensor3::zero(spec);
    for (m, c) in poly.terms() {
        if m.is_one() {
            out.accumulate((Monomial::one(), Monomial::one(), Monomial::one()), c.clone());
            continue;
        }
        // Two intermediate indices per generator: u^i_j splits over k, l into
        // u^i_k (x) u^k_l (x) u^l_j; detinv splits into three copies.
        let choices: Vec<Vec<(Gen, Gen, Gen)>> = m
            .0
            .iter()
            .map(|g| match *g {
                Gen::DetInv => vec![(Gen::DetInv, Gen::DetInv, Gen::DetInv)],
                Gen::U(i, j) => (1..=spec.size)
                    .flat_map(|k| {
                        (1..=spec.size).map(move |l| (Gen::U(i, k), Gen::U(k, l), Gen::U(l, j)))
                    })
                    .collect(),
            })
            .collect();
        for combo in choices.into_iter().multi_cartesian_product() {
            let w1: Vec<Gen> = combo.iter().map(|(a, _, _)| *a).collect();
            let w2: Vec<Gen> = combo.iter().map(|(_, b, _)| *b).collect();
            let w3: Vec<Gen> = combo.iter().map(|(_, _, d)| *d).collect();
            let nf1 = super::rules::nf_word_cached(&tab, &w1);
            let nf2 = super::rules::nf_word_cached(&tab, &w2);
            let nf3 = super::rules::nf_word_cached(&tab, &w3);
            for (m1, c1) in nf1.iter() {
                for (m2, c2) in nf2.iter() {
                    for (m3, c3) in nf3.iter() {
                        out.accumulate(
                            (m1.clone(), m2.clone(), m3.clone()),
                            c.mul(c1).mul(c2).mul(c3),
                        );
                    }
                }
            }
        }
    }
    out
}

/// Sorted complement of `{x}` in `1..=n`.
fn complement(x: u8, n: u8) -> Vec<u8> {
    (1..=n).filter(|&y| y != x).collect()
}

/// The quantum minor with the given row and column index lists:
/// `sum_{pi} (-q)^{inv(pi)} u^{rows[0]}_{cols[pi(0)]} ...`, a polynomial
/// whose words are sorted because the row list ascends.
fn quantum_minor(spec: AlgebraSpec, rows: &[u8], cols: &[u8]) -> NcPoly {
    let k = rows.len();
    if k == 0 {
        return NcPoly::one(spec);
    }
    let raw = (0..k as u8).permutations(k).map(|perm| {
        let coeff = neg_q_pow(inversions(&perm), spec.root);
        let word: Vec<Gen> = perm
            .iter()
            .enumerate()
            .map(|(t, &p)| Gen::U(rows[t], cols[p as usize]))
            .collect();
        (word, coeff)
    });
    NcPoly::from_raw_terms(spec, raw)
}

fn antipode_gen(spec: AlgebraSpec, g: Gen) -> NcPoly {
    let tab = tables(spec);
    if let Some(hit) = tab.antipode_cache.get(&g) {
        return (**hit).clone();
    }
    let n = spec.size;
    let value = match g {
        Gen::DetInv => quantum_determinant(spec),
        Gen::U(i, j) => {
            let minor = quantum_minor(spec, &complement(j, n), &complement(i, n));
            let signed = minor.scale(&neg_q_pow(i64::from(i) - i64::from(j), spec.root));
            if spec.has_detinv() {
                NcPoly::detinv(spec).expect("unitary context").mul(&signed)
            } else {
                signed
            }
        }
    };
    tab.antipode_cache.entry(g).or_insert(Arc::new(value.clone()));
    value
}

/// The antipode, an algebra anti-homomorphism. Errors in a matrix-bialgebra
/// context, which is not a Hopf algebra.
pub(crate) fn antipode(poly: &NcPoly) -> Result<NcPoly> {
    let spec = poly.spec();
    if spec.kind == AlgebraKind::MatrixBialgebra {
        return Err(Error::NoAntipode);
    }
    let mut acc = NcPoly::zero(spec);
    for (m, c) in poly.terms() {
        let mut prod = NcPoly::scalar(spec, c.clone());
        for g in m.0.iter().rev() {
            prod = prod.mul(&antipode_gen(spec, *g));
            if prod.is_structurally_zero() {
                break;
            }
        }
        acc = acc.add(&prod);
    }
    Ok(acc)
}
