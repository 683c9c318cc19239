//! Mechanical derivation of the rewrite rules and the normal-form engine.
//!
//! The exchange rules are not transcribed from any table. They are computed
//! by exact Gaussian elimination on the degree-two slice of the free
//! algebra: every instance of the R-matrix exchange equation
//!
//! ```text
//! sum_{w,x} R^{ac}_{wx} u^w_b u^x_d  =  sum_{y,z} R^{yz}_{bd} u^a_y u^c_z
//! ```
//!
//! is a linear relation among two-letter words. Eliminating with the
//! descending word order as pivot order yields exactly one pivot per
//! out-of-order pair, and each elimination row reads off as a rewrite rule
//! `(big pair) -> combination of sorted pairs`. The derivation asserts both
//! the pivot count and the pivot set, so a convention slip in the R-matrix
//! would abort loudly instead of corrupting normal forms.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use itertools::Itertools;

use crate::linalg::SparseSpan;
use crate::qfield::QScalar;

use super::{accumulate, r_entry, AlgebraKind, AlgebraSpec, Gen, Monomial, Tables};

/// Which end of the word the reducer attacks first. Normal forms must not
/// depend on this choice; the acceptance suite checks that they do not.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// `(-q)^k`.
pub(crate) fn neg_q_pow(k: i64, root: u32) -> QScalar {
    let q = QScalar::q_int(k, root);
    if k.rem_euclid(2) == 1 {
        q.neg()
    } else {
        q
    }
}

/// Count inversions of a permutation given as images (1-based values).
pub(crate) fn inversions(perm: &[u8]) -> i64 {
    let mut count = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                count += 1;
            }
        }
    }
    count
}

/// The quantum determinant as raw terms: `sum_pi (-q)^{inv(pi)} u^1_{pi(1)}
/// ... u^n_{pi(n)}`. Every word is sorted because rows ascend.
pub(crate) fn det_terms(size: u8, root: u32) -> Vec<(Vec<Gen>, QScalar)> {
    (1..=size)
        .permutations(size as usize)
        .map(|perm| {
            let coeff = neg_q_pow(inversions(&perm), root);
            let word: Vec<Gen> = perm
                .iter()
                .enumerate()
                .map(|(t, &col)| Gen::U(t as u8 + 1, col))
                .collect();
            (word, coeff)
        })
        .collect()
}

pub(crate) fn build_tables(spec: AlgebraSpec) -> Tables {
    assert!(
        (1..=6).contains(&spec.size),
        "algebra size {} outside the supported range",
        spec.size
    );
    let n = spec.size;
    let root = spec.root;

    // Degree-two slice of the exchange relations, eliminated with the
    // descending pair order (wrap keys in Reverse so the span pivots on the
    // largest word).
    let mut span: SparseSpan<Reverse<(Gen, Gen)>> = SparseSpan::new();
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                for d in 1..=n {
                    let mut rel: BTreeMap<Reverse<(Gen, Gen)>, QScalar> = BTreeMap::new();
                    let mut put = |i: u8, j: u8, k: u8, l: u8, v: QScalar| {
                        if v.is_zero() {
                            return;
                        }
                        let key = Reverse((Gen::U(i, j), Gen::U(k, l)));
                        let entry = rel.remove(&key).map_or(v.clone(), |e| e.add(&v));
                        if entry.is_zero() {
                            rel.remove(&key);
                        } else {
                            rel.insert(key, entry);
                        }
                    };
                    for w in 1..=n {
                        for x in 1..=n {
                            put(w, b, x, d, r_entry(root, a, c, w, x));
                        }
                    }
                    for y in 1..=n {
                        for z in 1..=n {
                            put(a, y, c, z, r_entry(root, y, z, b, d).neg());
                        }
                    }
                    span.insert(rel);
                }
            }
        }
    }

    let expected = (n as usize * n as usize) * (n as usize * n as usize - 1) / 2;
    assert_eq!(
        span.rank(),
        expected,
        "exchange relations must pivot once per out-of-order pair"
    );

    let mut swap: HashMap<(Gen, Gen), Vec<(Gen, Gen, QScalar)>> = HashMap::new();
    for row in span.rows() {
        let mut it = row.iter();
        let (Reverse((p1, p2)), lead) = it.next().expect("rows are nonzero");
        assert!(lead.is_one(), "pivot coefficient must be one");
        assert!(p1 > p2, "pivot {p1}*{p2} is not an out-of-order pair");
        let mut repl = Vec::new();
        for (Reverse((g1, g2)), c) in it {
            assert!(g1 <= g2, "replacement {g1}*{g2} is not sorted");
            repl.push((*g1, *g2, c.neg()));
        }
        swap.insert((*p1, *p2), repl);
    }
    for g1 in swap.keys() {
        assert!(g1.0 > g1.1);
    }
    // Every strictly out-of-order pair must have a rule.
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let (a, b) = (Gen::U(i, j), Gen::U(k, l));
                    if a > b {
                        assert!(
                            swap.contains_key(&(a, b)),
                            "missing exchange rule for {a}*{b}"
                        );
                    }
                }
            }
        }
    }

    if spec.kind == AlgebraKind::UnitaryGroup {
        // det^-1 is central; fronting it is a coefficient-one swap.
        for i in 1..=n {
            for j in 1..=n {
                swap.insert(
                    (Gen::U(i, j), Gen::DetInv),
                    vec![(Gen::DetInv, Gen::U(i, j), QScalar::one(root))],
                );
            }
        }
    }

    let (det_word, det_repl) = if spec.kind == AlgebraKind::SpecialUnitaryGroup {
        // det_n = 1 rewrites the deg-lex largest determinant word, which is
        // the antidiagonal one.
        let anti: Vec<Gen> = (1..=n).map(|t| Gen::U(t, n + 1 - t)).collect();
        let lead = neg_q_pow(i64::from(n) * (i64::from(n) - 1) / 2, root);
        let lead_inv = lead.invert().expect("(-q)^k is invertible");
        let mut repl = vec![(Vec::new(), lead_inv.clone())];
        for (word, coeff) in det_terms(n, root) {
            if word == anti {
                assert_eq!(coeff, lead, "antidiagonal coefficient of det");
                continue;
            }
            repl.push((word, lead_inv.mul(&coeff).neg()));
        }
        (Some(anti), repl)
    } else {
        (None, Vec::new())
    };

    Tables {
        spec,
        swap,
        det_word,
        det_repl,
        nf_cache: dashmap::DashMap::new(),
        antipode_cache: dashmap::DashMap::new(),
        det_powers: dashmap::DashMap::new(),
    }
}

enum Redex {
    Swap(usize),
    Det(usize),
}

fn find_redex(tab: &Tables, word: &[Gen], strategy: Strategy) -> Option<Redex> {
    let at = |i: usize| -> Option<Redex> {
        if i + 1 < word.len() && word[i] > word[i + 1] {
            return Some(Redex::Swap(i));
        }
        if let Some(dw) = &tab.det_word {
            if i + dw.len() <= word.len() && &word[i..i + dw.len()] == dw.as_slice() {
                return Some(Redex::Det(i));
            }
        }
        None
    };
    match strategy {
        Strategy::Leftmost => (0..word.len()).find_map(at),
        Strategy::Rightmost => (0..word.len()).rev().find_map(at),
    }
}

/// Reduce one word completely with the given strategy.
pub(crate) fn reduce_word(
    tab: &Tables,
    word: &[Gen],
    strategy: Strategy,
) -> BTreeMap<Monomial, QScalar> {
    let root = tab.spec.root;
    let mut result: BTreeMap<Monomial, QScalar> = BTreeMap::new();
    let mut agenda: Vec<(Vec<Gen>, QScalar)> = vec![(word.to_vec(), QScalar::one(root))];
    while let Some((w, c)) = agenda.pop() {
        match find_redex(tab, &w, strategy) {
            None => accumulate(&mut result, Monomial(w), c),
            Some(Redex::Swap(i)) => {
                let rule = tab
                    .swap
                    .get(&(w[i], w[i + 1]))
                    .unwrap_or_else(|| panic!("no rule for {}*{} in {}", w[i], w[i + 1], tab.spec));
                for (g1, g2, rc) in rule {
                    let mut next = w.clone();
                    next[i] = *g1;
                    next[i + 1] = *g2;
                    agenda.push((next, c.mul(rc)));
                }
            }
            Some(Redex::Det(i)) => {
                let dlen = tab.det_word.as_ref().map(Vec::len).unwrap_or(0);
                for (repl, rc) in &tab.det_repl {
                    let mut next = Vec::with_capacity(w.len() - dlen + repl.len());
                    next.extend_from_slice(&w[..i]);
                    next.extend_from_slice(repl);
                    next.extend_from_slice(&w[i + dlen..]);
                    agenda.push((next, c.mul(rc)));
                }
            }
        }
    }
    result
}

/// Leftmost normal form with a per-context memo on whole words.
pub(crate) fn nf_word_cached(
    tab: &Tables,
    word: &[Gen],
) -> Arc<BTreeMap<Monomial, QScalar>> {
    if let Some(hit) = tab.nf_cache.get(word) {
        return hit.clone();
    }
    let computed = Arc::new(reduce_word(tab, word, Strategy::Leftmost));
    tab.nf_cache
        .entry(word.to_vec())
        .or_insert(computed)
        .clone()
}

/// Normal-form raw terms under an explicit strategy, bypassing the memo.
/// Exists so independence of the reduction order can be tested directly.
pub fn normal_form_with_strategy<I>(
    spec: AlgebraSpec,
    raw: I,
    strategy: Strategy,
) -> super::NcPoly
where
    I: IntoIterator<Item = (Vec<Gen>, QScalar)>,
{
    let tab = super::tables(spec);
    let mut terms: BTreeMap<Monomial, QScalar> = BTreeMap::new();
    for (word, coeff) in raw {
        if coeff.is_zero() {
            continue;
        }
        for (m, c) in reduce_word(&tab, &word, strategy) {
            accumulate(&mut terms, m, coeff.mul(&c));
        }
    }
    super::NcPoly { spec, terms }
}
