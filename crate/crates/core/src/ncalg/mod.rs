//! The q-deformed coordinate algebras and their Hopf structure.
//!
//! Three algebra kinds share one rewriting engine:
//! * `MatrixBialgebra` - C_q[M_N], the free algebra on u[i,j] modulo the
//!   R-matrix relations;
//! * `UnitaryGroup` - C_q[U_N], which adds the central generator `detinv`;
//! * `SpecialUnitaryGroup` - C_q[SU_N], which instead sets det_N = 1.
//!
//! Elements are kept in normal form at all times: words are sorted in
//! row-major generator order (with all `detinv` factors in front) and, in
//! SU contexts, contain no occurrence of the leading determinant word. The
//! rewrite rules are derived mechanically from the R-matrix exchange
//! equation by exact linear elimination on the degree-two slice of the free
//! algebra; no relation is ever transcribed by hand.
//!
//! `pub use` surface: algebra contexts, polynomials, tensors, the Hopf
//! operations, and the ideal-membership oracle used to referee determinant
//! equalities.

mod hopf;
mod oracle;
mod rules;

pub use hopf::quantum_determinant;
pub use oracle::{oracle_ideal_membership, sorted_monomials};
pub use rules::{normal_form_with_strategy, Strategy};

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::qfield::QScalar;

/// Which quotient of the FRT bialgebra a context denotes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum AlgebraKind {
    MatrixBialgebra,
    UnitaryGroup,
    SpecialUnitaryGroup,
}

/// An algebra context: the kind, the matrix size, and the session root
/// order (all scalars live in Q(q^(1/root))).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct AlgebraSpec {
    pub kind: AlgebraKind,
    pub size: u8,
    pub root: u32,
}

impl AlgebraSpec {
    pub fn matrix(size: u8, root: u32) -> Self {
        AlgebraSpec { kind: AlgebraKind::MatrixBialgebra, size, root }
    }

    pub fn unitary(size: u8, root: u32) -> Self {
        AlgebraSpec { kind: AlgebraKind::UnitaryGroup, size, root }
    }

    pub fn special_unitary(size: u8, root: u32) -> Self {
        AlgebraSpec { kind: AlgebraKind::SpecialUnitaryGroup, size, root }
    }

    /// The matrix bialgebra of the same size, used for determinant clearing.
    pub fn matrix_twin(&self) -> Self {
        AlgebraSpec::matrix(self.size, self.root)
    }

    pub fn has_detinv(&self) -> bool {
        self.kind == AlgebraKind::UnitaryGroup
    }
}

impl std::fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self.kind {
            AlgebraKind::MatrixBialgebra => "M",
            AlgebraKind::UnitaryGroup => "U",
            AlgebraKind::SpecialUnitaryGroup => "SU",
        };
        write!(f, "C_q[{}_{}]", name, self.size)
    }
}

/// A single generator. `DetInv` sorts before every matrix generator, and
/// matrix generators sort row-major, which is exactly the normal-form order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Gen {
    DetInv,
    U(u8, u8),
}

impl std::fmt::Display for Gen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Gen::DetInv => write!(f, "detinv"),
            Gen::U(i, j) => write!(f, "u[{i},{j}]"),
        }
    }
}

/// A word in the generators. Ordered by total degree first, then
/// lexicographically, which is the monomial order of the rewrite engine.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<Gen>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of leading `detinv` factors and the remaining word.
    pub fn split_detinv(&self) -> (usize, &[Gen]) {
        let k = self.0.iter().take_while(|g| **g == Gen::DetInv).count();
        (k, &self.0[k..])
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(Gen::to_string).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Entry of the standard R-matrix:
/// `R^{ik}_{jl} = q^{d(i,k)} d(i,l) d(k,j) + nu H(k-i) d(i,j) d(k,l)`
/// with Heaviside convention `H(0) = 0`.
pub fn r_entry(root: u32, i: u8, k: u8, j: u8, l: u8) -> QScalar {
    let mut v = QScalar::zero(root);
    if i == l && k == j {
        v = v.add(&QScalar::q_int(i64::from(i == k), root));
    }
    if k > i && i == j && k == l {
        v = v.add(&QScalar::nu(root));
    }
    v
}

/// Entry of the inverse R-matrix:
/// `Rbar^{ik}_{jl} = q^{-d(i,k)} d(i,l) d(k,j) - nu H(k-i) d(i,j) d(k,l)`.
pub fn rbar_entry(root: u32, i: u8, k: u8, j: u8, l: u8) -> QScalar {
    let mut v = QScalar::zero(root);
    if i == l && k == j {
        v = v.add(&QScalar::q_int(-i64::from(i == k), root));
    }
    if k > i && i == j && k == l {
        v = v.sub(&QScalar::nu(root));
    }
    v
}

/// Per-context immutable data: the rewrite tables plus memo caches shared by
/// every thread. Built once per `AlgebraSpec` and never mutated afterwards
/// (the caches are internally synchronized).
pub(crate) struct Tables {
    pub(crate) spec: AlgebraSpec,
    pub(crate) swap: std::collections::HashMap<(Gen, Gen), Vec<(Gen, Gen, QScalar)>>,
    pub(crate) det_word: Option<Vec<Gen>>,
    pub(crate) det_repl: Vec<(Vec<Gen>, QScalar)>,
    pub(crate) nf_cache: DashMap<Vec<Gen>, Arc<BTreeMap<Monomial, QScalar>>>,
    pub(crate) antipode_cache: DashMap<Gen, Arc<NcPoly>>,
    pub(crate) det_powers: DashMap<usize, Arc<NcPoly>>,
}

static TABLES: Lazy<DashMap<AlgebraSpec, Arc<Tables>>> = Lazy::new(DashMap::new);

pub(crate) fn tables(spec: AlgebraSpec) -> Arc<Tables> {
    if let Some(t) = TABLES.get(&spec) {
        return t.clone();
    }
    let built = Arc::new(rules::build_tables(spec));
    TABLES.entry(spec).or_insert(built).clone()
}

/// A normal-formed polynomial in one algebra context.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcPoly {
    spec: AlgebraSpec,
    terms: BTreeMap<Monomial, QScalar>,
}

impl NcPoly {
    pub fn zero(spec: AlgebraSpec) -> Self {
        NcPoly { spec, terms: BTreeMap::new() }
    }

    pub fn one(spec: AlgebraSpec) -> Self {
        NcPoly::scalar(spec, QScalar::one(spec.root))
    }

    pub fn scalar(spec: AlgebraSpec, value: QScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::one(), value);
        }
        NcPoly { spec, terms }
    }

    /// The generator u[i,j] (1-based indices).
    pub fn gen(spec: AlgebraSpec, i: u8, j: u8) -> Result<Self> {
        if i == 0 || j == 0 || i > spec.size || j > spec.size {
            return Err(Error::GeneratorOutOfRange { row: i, col: j, size: spec.size });
        }
        // Normal-form even single letters: in C_q[SU_1] the generator itself
        // reduces (u[1,1] = det = 1).
        Ok(NcPoly::from_raw_terms(
            spec,
            [(vec![Gen::U(i, j)], QScalar::one(spec.root))],
        ))
    }

    /// The generator det^-1, available in unitary-group contexts only.
    pub fn detinv(spec: AlgebraSpec) -> Result<Self> {
        if !spec.has_detinv() {
            return Err(Error::DetInvUnavailable);
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![Gen::DetInv]), QScalar::one(spec.root));
        Ok(NcPoly { spec, terms })
    }

    /// Normal-form a raw term list into a polynomial.
    pub fn from_raw_terms<I>(spec: AlgebraSpec, raw: I) -> Self
    where
        I: IntoIterator<Item = (Vec<Gen>, QScalar)>,
    {
        let tab = tables(spec);
        let mut terms: BTreeMap<Monomial, QScalar> = BTreeMap::new();
        for (word, coeff) in raw {
            if coeff.is_zero() {
                continue;
            }
            let nf = rules::nf_word_cached(&tab, &word);
            for (m, c) in nf.iter() {
                accumulate(&mut terms, m.clone(), coeff.mul(c));
            }
        }
        NcPoly { spec, terms }
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn root(&self) -> u32 {
        self.spec.root
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_else(|| QScalar::zero(self.spec.root))
    }

    /// Structural zero test. Only for the matrix bialgebra is this semantic
    /// equality with zero; unitary and special unitary contexts must go
    /// through [`NcPoly::is_zero`], which clears determinant powers first.
    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::ContextMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("algebra contexts must agree")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(NcPoly { spec: self.spec, terms })
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NcPoly {
            spec: self.spec,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, factor: &QScalar) -> Self {
        if factor.is_zero() {
            return NcPoly::zero(self.spec);
        }
        NcPoly {
            spec: self.spec,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul(factor))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("algebra contexts must agree")
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let tab = tables(self.spec);
        let mut terms: BTreeMap<Monomial, QScalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1.mul(c2);
                if m2.is_one() {
                    accumulate(&mut terms, m1.clone(), c);
                    continue;
                }
                let mut word = m1.0.clone();
                word.extend_from_slice(&m2.0);
                let nf = rules::nf_word_cached(&tab, &word);
                for (m, cw) in nf.iter() {
                    accumulate(&mut terms, m.clone(), c.mul(cw));
                }
            }
        }
        Ok(NcPoly { spec: self.spec, terms })
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = NcPoly::one(self.spec);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Semantic zero test. Unitary contexts clear the common power of
    /// det^-1 by multiplying with the quantum determinant inside the matrix
    /// bialgebra, where normal forms are a linear basis. Special unitary
    /// contexts homogenize determinant degrees the same way: the rewriting
    /// rules sort words and eliminate the antidiagonal determinant monomial,
    /// which pins down a spanning set but not a basis once the degree
    /// exceeds the matrix size, so structural emptiness alone would
    /// misjudge some combinations.
    pub fn is_zero(&self) -> bool {
        match self.spec.kind {
            AlgebraKind::MatrixBialgebra => self.terms.is_empty(),
            AlgebraKind::SpecialUnitaryGroup => {
                if self.terms.is_empty() {
                    return true;
                }
                let mut degrees = self.terms.keys().map(Monomial::degree);
                let first = degrees.next().unwrap();
                if degrees.all(|d| d == first) {
                    // clear_det would multiply every term by det^0.
                    return false;
                }
                self.clear_det().is_structurally_zero()
            }
            AlgebraKind::UnitaryGroup => self.clear_detinv().is_structurally_zero(),
        }
    }

    /// Semantic equality in the same context.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_ctx(other)?;
        Ok(self.sub(other).is_zero())
    }

    /// Rewrite a unitary-group element as a matrix-bialgebra element by
    /// multiplying every term with `det^(K - k)`, where `k` is the term's
    /// det^-1 count and `K` the maximum over all terms. The result equals
    /// `det^K * self` under the embedding, which is zero iff `self` is.
    pub fn clear_detinv(&self) -> NcPoly {
        let m_spec = self.spec.matrix_twin();
        let kmax =
            self.terms.keys().map(|m| m.split_detinv().0).max().unwrap_or(0);
        let mut acc = NcPoly::zero(m_spec);
        for (m, c) in &self.terms {
            let (k, rest) = m.split_detinv();
            let base = NcPoly::from_raw_terms(m_spec, [(rest.to_vec(), c.clone())]);
            let lifted = hopf::det_power(m_spec, kmax - k).mul(&base);
            acc = acc.add(&lifted);
        }
        acc
    }

    /// Rewrite a special-unitary element as a matrix-bialgebra element by
    /// multiplying each term with the determinant power that raises its
    /// degree as close to the maximal term degree as its residue class mod
    /// N allows. Setting det = 1 identifies degree d with degree d + N and
    /// nothing else, and multiplication by the central determinant is
    /// injective on the matrix bialgebra, so the result is structurally
    /// zero exactly when `self` represents zero.
    pub fn clear_det(&self) -> NcPoly {
        let m_spec = self.spec.matrix_twin();
        let dmax = self.degree();
        let n = self.spec.size as usize;
        let mut acc = NcPoly::zero(m_spec);
        for (m, c) in &self.terms {
            let k = (dmax - m.degree()) / n;
            let base = NcPoly::from_raw_terms(m_spec, [(m.0.clone(), c.clone())]);
            acc = acc.add(&hopf::det_power(m_spec, k).mul(&base));
        }
        acc
    }

    /// Apply an algebra map defined on generators, term by term.
    pub fn map_gens<F>(&self, target: AlgebraSpec, image: F) -> NcPoly
    where
        F: Fn(Gen) -> NcPoly,
    {
        let mut acc = NcPoly::zero(target);
        for (m, c) in &self.terms {
            let mut prod = NcPoly::scalar(target, c.clone());
            for g in &m.0 {
                prod = prod.mul(&image(*g));
                if prod.is_structurally_zero() {
                    break;
                }
            }
            acc = acc.add(&prod);
        }
        acc
    }

    pub fn counit(&self) -> QScalar {
        hopf::counit(self)
    }

    pub fn coproduct(&self) -> TensorPoly {
        hopf::coproduct(self)
    }

    pub fn coproduct3(&self) -> Tensor3 {
        hopf::coproduct3(self)
    }

    pub fn antipode(&self) -> Result<NcPoly> {
        hopf::antipode(self)
    }
}

pub(crate) fn accumulate<K: Ord>(
    terms: &mut BTreeMap<K, QScalar>,
    m: K,
    c: QScalar,
) {
    if c.is_zero() {
        return;
    }
    match terms.remove(&m) {
        None => {
            terms.insert(m, c);
        }
        Some(prev) => {
            let sum = prev.add(&c);
            if !sum.is_zero() {
                terms.insert(m, sum);
            }
        }
    }
}

/// Per-leg monomial bounds used by the tensor zero tests: the largest
/// det^-1 power and the largest word degree over one leg of a tensor.
pub(crate) fn lift_bounds<'a, I>(monos: I) -> (usize, usize)
where
    I: Iterator<Item = &'a Monomial>,
{
    let mut kmax = 0;
    let mut dmax = 0;
    for m in monos {
        kmax = kmax.max(m.split_detinv().0);
        dmax = dmax.max(m.degree());
    }
    (kmax, dmax)
}

/// Lift one monomial into the matrix bialgebra so that distinct classes
/// become linearly independent sorted words: unitary monomials trade their
/// det^-1 power `k` for `det^(kmax - k)`, special unitary monomials of
/// degree d gain `det^((dmax - d) / N)` to homogenize their residue class,
/// and matrix monomials pass through unchanged.
pub(crate) fn lift_to_matrix(spec: AlgebraSpec, kmax: usize, dmax: usize, m: &Monomial) -> NcPoly {
    let m_spec = spec.matrix_twin();
    let one = QScalar::one(spec.root);
    match spec.kind {
        AlgebraKind::MatrixBialgebra => {
            let mut terms = BTreeMap::new();
            terms.insert(m.clone(), one);
            NcPoly { spec: m_spec, terms }
        }
        AlgebraKind::UnitaryGroup => {
            let (k, rest) = m.split_detinv();
            let base = NcPoly::from_raw_terms(m_spec, [(rest.to_vec(), one)]);
            hopf::det_power(m_spec, kmax - k).mul(&base)
        }
        AlgebraKind::SpecialUnitaryGroup => {
            let k = (dmax - m.degree()) / spec.size as usize;
            let base = NcPoly::from_raw_terms(m_spec, [(m.0.clone(), one)]);
            hopf::det_power(m_spec, k).mul(&base)
        }
    }
}

impl std::fmt::Display for NcPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", format_terms(self.terms.iter().map(|(m, c)| (m.to_string(), c))))
    }
}

/// Shared sum formatter: renders `(monomial string, coefficient)` pairs with
/// extracted signs so the output is parseable by the CLI grammar.
pub fn format_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (String, &'a QScalar)>,
{
    let mut out = String::new();
    let mut first = true;
    for (mono, coeff) in terms {
        let piece = crate::qfield::term_pieces(coeff);
        if first {
            if piece.negative {
                out.push('-');
            }
            first = false;
        } else if piece.negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let is_unit_word = mono == "1";
        if is_unit_word {
            if piece.atomic || !piece.magnitude.contains(' ') {
                out.push_str(&piece.magnitude);
            } else {
                out.push('(');
                out.push_str(&piece.magnitude);
                out.push(')');
            }
        } else if piece.magnitude == "1" {
            out.push_str(&mono);
        } else {
            if piece.atomic {
                out.push_str(&piece.magnitude);
            } else {
                out.push('(');
                out.push_str(&piece.magnitude);
                out.push(')');
            }
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A tensor square (or mixed tensor) with normal-formed legs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorPoly {
    left: AlgebraSpec,
    right: AlgebraSpec,
    terms: BTreeMap<(Monomial, Monomial), QScalar>,
}

impl TensorPoly {
    pub fn zero(left: AlgebraSpec, right: AlgebraSpec) -> Self {
        TensorPoly { left, right, terms: BTreeMap::new() }
    }

    pub fn of(left: &NcPoly, right: &NcPoly) -> Self {
        let mut t = TensorPoly::zero(left.spec(), right.spec());
        for (ml, cl) in left.terms() {
            for (mr, cr) in right.terms() {
                t.accumulate(ml.clone(), mr.clone(), cl.mul(cr));
            }
        }
        t
    }

    pub fn left_spec(&self) -> AlgebraSpec {
        self.left
    }

    pub fn right_spec(&self) -> AlgebraSpec {
        self.right
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &QScalar)> {
        self.terms.iter()
    }

    pub fn accumulate(&mut self, ml: Monomial, mr: Monomial, c: QScalar) {
        if c.is_zero() {
            return;
        }
        let key = (ml, mr);
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, c);
            }
            Some(prev) => {
                let sum = prev.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.left, self.right), (other.left, other.right), "tensor contexts");
        let mut t = self.clone();
        for ((ml, mr), c) in &other.terms {
            t.accumulate(ml.clone(), mr.clone(), c.clone());
        }
        t
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&QScalar::from_int(-1, self.left.root)))
    }

    pub fn scale(&self, factor: &QScalar) -> Self {
        let mut t = TensorPoly::zero(self.left, self.right);
        for ((ml, mr), c) in &self.terms {
            t.accumulate(ml.clone(), mr.clone(), c.mul(factor));
        }
        t
    }

    /// Componentwise product `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.left, self.right), (other.left, other.right), "tensor contexts");
        let ltab = tables(self.left);
        let rtab = tables(self.right);
        let mut t = TensorPoly::zero(self.left, self.right);
        for ((al, ar), ac) in &self.terms {
            for ((bl, br), bc) in &other.terms {
                let c = ac.mul(bc);
                let mut lword = al.0.clone();
                lword.extend_from_slice(&bl.0);
                let mut rword = ar.0.clone();
                rword.extend_from_slice(&br.0);
                let lnf = rules::nf_word_cached(&ltab, &lword);
                let rnf = rules::nf_word_cached(&rtab, &rword);
                for (ml, cl) in lnf.iter() {
                    for (mr, cr) in rnf.iter() {
                        t.accumulate(ml.clone(), mr.clone(), c.mul(cl).mul(cr));
                    }
                }
            }
        }
        t
    }

    /// Apply a linear map to every left monomial.
    pub fn map_left<F>(&self, target: AlgebraSpec, f: F) -> TensorPoly
    where
        F: Fn(&Monomial) -> NcPoly,
    {
        let mut t = TensorPoly::zero(target, self.right);
        for ((ml, mr), c) in &self.terms {
            let img = f(ml);
            for (m, cm) in img.terms() {
                t.accumulate(m.clone(), mr.clone(), c.mul(cm));
            }
        }
        t
    }

    /// Apply a linear map to every right monomial.
    pub fn map_right<F>(&self, target: AlgebraSpec, f: F) -> TensorPoly
    where
        F: Fn(&Monomial) -> NcPoly,
    {
        let mut t = TensorPoly::zero(self.left, target);
        for ((ml, mr), c) in &self.terms {
            let img = f(mr);
            for (m, cm) in img.terms() {
                t.accumulate(ml.clone(), m.clone(), c.mul(cm));
            }
        }
        t
    }

    /// Multiply the two legs together into a single polynomial (both legs
    /// must live in the same context). This is the multiplication map `m`.
    pub fn fold_mul(&self) -> NcPoly {
        assert_eq!(self.left, self.right, "fold_mul needs matching contexts");
        let mut acc = NcPoly::zero(self.left);
        for ((ml, mr), c) in &self.terms {
            let mut word = ml.0.clone();
            word.extend_from_slice(&mr.0);
            acc = acc.add(&NcPoly::from_raw_terms(self.left, [(word, c.clone())]));
        }
        acc
    }

    /// Semantic zero test; both legs are lifted into the matrix bialgebra
    /// first (see [`lift_to_matrix`]), where normal forms are a linear
    /// basis, so the lifted tensor cancels exactly when the element is
    /// zero as a tensor over the two quotient algebras.
    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let needs_left = self.left.kind != AlgebraKind::MatrixBialgebra;
        let needs_right = self.right.kind != AlgebraKind::MatrixBialgebra;
        if !needs_left && !needs_right {
            return false;
        }
        let (kmax_l, dmax_l) = lift_bounds(self.terms.keys().map(|(ml, _)| ml));
        let (kmax_r, dmax_r) = lift_bounds(self.terms.keys().map(|(_, mr)| mr));
        let mut cleared: BTreeMap<(Monomial, Monomial), QScalar> = BTreeMap::new();
        for ((ml, mr), c) in &self.terms {
            let lp = lift_to_matrix(self.left, kmax_l, dmax_l, ml);
            let rp = lift_to_matrix(self.right, kmax_r, dmax_r, mr);
            for (m1, c1) in lp.terms() {
                for (m2, c2) in rp.terms() {
                    accumulate(&mut cleared, (m1.clone(), m2.clone()), c.mul(c1).mul(c2));
                }
            }
        }
        cleared.is_empty()
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl std::fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rendered = self
            .terms
            .iter()
            .map(|((ml, mr), c)| (format!("{ml} (x) {mr}"), c));
        write!(f, "{}", format_terms(rendered))
    }
}

/// A three-fold tensor with all legs in one context (used for the double
/// coproduct and the right adjoint coaction).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor3 {
    spec: AlgebraSpec,
    terms: BTreeMap<(Monomial, Monomial, Monomial), QScalar>,
}

impl Tensor3 {
    pub fn zero(spec: AlgebraSpec) -> Self {
        Tensor3 { spec, terms: BTreeMap::new() }
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn accumulate(&mut self, key: (Monomial, Monomial, Monomial), c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, c);
            }
            Some(prev) => {
                let sum = prev.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial, Monomial), &QScalar)> {
        self.terms.iter()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut t = self.clone();
        let minus = QScalar::from_int(-1, self.spec.root);
        for (k, c) in &other.terms {
            t.accumulate(k.clone(), c.mul(&minus));
        }
        t
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Semantic zero test with every leg lifted into the matrix bialgebra,
    /// mirroring [`TensorPoly::is_zero`].
    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        if self.spec.kind == AlgebraKind::MatrixBialgebra {
            return false;
        }
        let (k1, d1) = lift_bounds(self.terms.keys().map(|(a, _, _)| a));
        let (k2, d2) = lift_bounds(self.terms.keys().map(|(_, b, _)| b));
        let (k3, d3) = lift_bounds(self.terms.keys().map(|(_, _, c)| c));
        let mut cleared: BTreeMap<(Monomial, Monomial, Monomial), QScalar> = BTreeMap::new();
        for ((a, b, c), coeff) in &self.terms {
            let pa = lift_to_matrix(self.spec, k1, d1, a);
            let pb = lift_to_matrix(self.spec, k2, d2, b);
            let pc = lift_to_matrix(self.spec, k3, d3, c);
            for (ma, ca) in pa.terms() {
                for (mb, cb) in pb.terms() {
                    for (mc, cc) in pc.terms() {
                        accumulate(
                            &mut cleared,
                            (ma.clone(), mb.clone(), mc.clone()),
                            coeff.mul(ca).mul(cb).mul(cc),
                        );
                    }
                }
            }
        }
        cleared.is_empty()
    }
}

#[cfg(test)]
mod tests;
