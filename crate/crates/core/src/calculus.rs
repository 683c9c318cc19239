//! The bicovariant calculus on C_q[SU_N] and its quotient FODC.
//!
//! The space of one-form classes `Lambda^1 = ker(counit) / ker(Q)^+` is
//! realized concretely through the quantum Killing form: the class of a
//! counit-kernel element `x` is faithfully represented by its Killing matrix
//! `Q(x)`, so coset arithmetic is finite linear algebra. A fixed family of
//! N^2 representatives
//!
//! ```text
//! D1: u^i_1 S(u^1_i)           (2 <= i <= N)
//! D2: u^i_j                    (2 <= i, j <= N, i != j)
//! em: u^1_{i+1}                (1 <= i <= N-1)
//! e0: u^1_1 - 1
//! ep: u^{i+1}_1                (1 <= i <= N-1)
//! ```
//!
//! has linearly independent Killing images (checked exactly at context
//! construction by inverting the N^2 x N^2 matrix of flattened images), so
//! coordinates in this basis cost one exact matrix-vector product. The
//! quotient FODC `Omega^1` divides out the span of D1 and D2; its frame is
//! written `em[1..N-1], e0, ep[1..N-1]` and its elements are vectors of
//! algebra coefficients against that frame.

use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::killing::killing_matrix;
use crate::linalg::QMat;
use crate::ncalg::{sorted_monomials, AlgebraKind, AlgebraSpec, Monomial, NcPoly};
use crate::qfield::QScalar;

/// Immutable per-context data for the calculus, built once per algebra spec.
pub struct CalcCtx {
    spec: AlgebraSpec,
    basis: Vec<NcPoly>,
    a_inv: QMat,
    coset_memo: DashMap<Monomial, Arc<Vec<QScalar>>>,
    act_memo: DashMap<(usize, Monomial), Arc<OneForm>>,
}

static CONTEXTS: Lazy<DashMap<AlgebraSpec, Arc<CalcCtx>>> = Lazy::new(DashMap::new);

/// Fetch (building on first use) the calculus context for `C_q[SU_N]`.
pub fn calc_ctx(spec: AlgebraSpec) -> Result<Arc<CalcCtx>> {
    if let Some(hit) = CONTEXTS.get(&spec) {
        return Ok(hit.clone());
    }
    let built = Arc::new(CalcCtx::build(spec)?);
    let stored = CONTEXTS.entry(spec).or_insert(built).clone();
    Ok(stored)
}

impl CalcCtx {
    fn build(spec: AlgebraSpec) -> Result<CalcCtx> {
        if spec.kind != AlgebraKind::SpecialUnitaryGroup {
            return Err(Error::ContextMismatch {
                left: spec.to_string(),
                right: AlgebraSpec::special_unitary(spec.size, spec.root).to_string(),
            });
        }
        if !(2..=4).contains(&spec.size) {
            return Err(Error::UnsupportedSize(spec.size));
        }
        let n = spec.size;
        let root = spec.root;
        let mut basis: Vec<NcPoly> = Vec::with_capacity((n as usize) * (n as usize));
        for i in 2..=n {
            let zi = NcPoly::gen(spec, i, 1)?;
            let zsi = NcPoly::gen(spec, 1, i)?.antipode()?;
            basis.push(zi.mul(&zsi));
        }
        for i in 2..=n {
            for j in 2..=n {
                if i != j {
                    basis.push(NcPoly::gen(spec, i, j)?);
                }
            }
        }
        for i in 1..n {
            basis.push(NcPoly::gen(spec, 1, i + 1)?);
        }
        basis.push(NcPoly::gen(spec, 1, 1)?.sub(&NcPoly::one(spec)));
        for i in 1..n {
            basis.push(NcPoly::gen(spec, i + 1, 1)?);
        }
        debug_assert_eq!(basis.len(), (n as usize) * (n as usize));
        debug_assert!(basis.iter().all(|b| b.counit().is_zero()));

        let mut columns = Vec::with_capacity(basis.len());
        for b in &basis {
            columns.push(vec_of_matrix(&killing_matrix(b)?));
        }
        let a = QMat::from_columns(&columns, root);
        let a_inv = a.inverse(root).map_err(|_| {
            Error::Internal(format!(
                "Killing images of the Lambda^1 representatives are dependent in {spec}"
            ))
        })?;
        Ok(CalcCtx {
            spec,
            basis,
            a_inv,
            coset_memo: DashMap::new(),
            act_memo: DashMap::new(),
        })
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    /// Dimension of `Lambda^1`, which is `N^2`.
    pub fn full_dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the quotient FODC frame, `2N - 1`.
    pub fn quotient_dim(&self) -> usize {
        2 * self.spec.size as usize - 1
    }

    /// Number of leading coordinates spanned by D1 and D2, `(N-1)^2`.
    pub fn d_span_dim(&self) -> usize {
        self.full_dim() - self.quotient_dim()
    }

    /// All N^2 basis representatives, ordered `[D1, D2, em, e0, ep]`.
    pub fn lambda_basis(&self) -> &[NcPoly] {
        &self.basis
    }

    /// A chosen representative of the `t`-th frame form (quotient indexing).
    pub fn frame_rep(&self, t: usize) -> &NcPoly {
        &self.basis[self.d_span_dim() + t]
    }

    fn check(&self, x: &NcPoly) -> Result<()> {
        if x.spec() != self.spec {
            return Err(Error::ContextMismatch {
                left: x.spec().to_string(),
                right: self.spec.to_string(),
            });
        }
        Ok(())
    }

    fn check_counit(&self, x: &NcPoly) -> Result<()> {
        self.check(x)?;
        if !x.counit().is_zero() {
            return Err(Error::CounitNonzero);
        }
        Ok(())
    }

    fn coords_mono(&self, m: &Monomial) -> Result<Arc<Vec<QScalar>>> {
        if let Some(hit) = self.coset_memo.get(m) {
            return Ok(hit.clone());
        }
        let root = self.spec.root;
        let p = NcPoly::from_raw_terms(self.spec, [(m.0.clone(), QScalar::one(root))]);
        let y = p.sub(&NcPoly::scalar(self.spec, p.counit()));
        let v = vec_of_matrix(&killing_matrix(&y)?);
        let coords = Arc::new(self.a_inv.mul_vec(&v, root));
        let stored = self.coset_memo.entry(m.clone()).or_insert(coords).clone();
        Ok(stored)
    }

    /// Full-basis coordinates of the class of `x - counit(x) 1`. Internal:
    /// public entry points insist on counit-kernel arguments instead.
    fn coords_of(&self, x: &NcPoly) -> Result<Vec<QScalar>> {
        let root = self.spec.root;
        let mut out = vec![QScalar::zero(root); self.full_dim()];
        for (m, c) in x.terms() {
            if m.is_one() {
                continue;
            }
            let coords = self.coords_mono(m)?;
            for (slot, v) in out.iter_mut().zip(coords.iter()) {
                if !v.is_zero() {
                    *slot = slot.add(&c.mul(v));
                }
            }
        }
        Ok(out)
    }

    /// The class of `x` in `Lambda^1`, represented faithfully by its Killing
    /// matrix: two counit-kernel elements have equal classes exactly when
    /// these matrices agree entrywise.
    pub fn bc_coset(&self, x: &NcPoly) -> Result<QMat> {
        self.check_counit(x)?;
        killing_matrix(x)
    }

    /// Coordinates of the class of `x` in the full `Lambda^1` basis, ordered
    /// `[D1, D2, em, e0, ep]`.
    pub fn lambda_coords(&self, x: &NcPoly) -> Result<Vec<QScalar>> {
        self.check_counit(x)?;
        self.coords_of(x)
    }

    /// The class of `x` in the quotient FODC frame.
    pub fn coset(&self, x: &NcPoly) -> Result<OneFormCoords> {
        self.check_counit(x)?;
        let full = self.coords_of(x)?;
        Ok(OneFormCoords {
            spec: self.spec,
            coords: full[self.d_span_dim()..].to_vec(),
        })
    }

    /// The exterior derivative `d f = sum f_(1) (x) coset(f_(2) - counit(f_(2)))`.
    pub fn ext_d(&self, f: &NcPoly) -> Result<OneForm> {
        self.check(f)?;
        let dim = self.quotient_dim();
        let offset = self.d_span_dim();
        let mut out = OneForm::zero(self.spec);
        for ((m1, m2), c) in f.coproduct().terms() {
            if m2.is_one() {
                continue;
            }
            let coords = self.coords_mono(m2)?;
            for t in 0..dim {
                let v = &coords[offset + t];
                if v.is_zero() {
                    continue;
                }
                let piece = NcPoly::from_raw_terms(self.spec, [(m1.0.clone(), c.mul(v))]);
                out.coeffs[t] = out.coeffs[t].add(&piece);
            }
        }
        Ok(out)
    }

    /// The class action of a stored representative on one monomial:
    /// `(1 (x) bar(v)) m = sum m_(1) (x) coset(v m_(2))`.
    fn act_mono(&self, v: &NcPoly, m: &Monomial) -> Result<OneForm> {
        let root = self.spec.root;
        let dim = self.quotient_dim();
        let offset = self.d_span_dim();
        let mp = NcPoly::from_raw_terms(self.spec, [(m.0.clone(), QScalar::one(root))]);
        let mut out = OneForm::zero(self.spec);
        for ((m1, m2), c) in mp.coproduct().terms() {
            let prod = v.mul(&NcPoly::from_raw_terms(
                self.spec,
                [(m2.0.clone(), QScalar::one(root))],
            ));
            let coords = self.coords_of(&prod)?;
            for t in 0..dim {
                let w = &coords[offset + t];
                if w.is_zero() {
                    continue;
                }
                let piece = NcPoly::from_raw_terms(self.spec, [(m1.0.clone(), c.mul(w))]);
                out.coeffs[t] = out.coeffs[t].add(&piece);
            }
        }
        Ok(out)
    }

    fn act_frame_mono(&self, t: usize, m: &Monomial) -> Result<Arc<OneForm>> {
        if let Some(hit) = self.act_memo.get(&(t, m.clone())) {
            return Ok(hit.clone());
        }
        let out = Arc::new(self.act_mono(&self.frame_rep(t).clone(), m)?);
        let stored = self.act_memo.entry((t, m.clone())).or_insert(out).clone();
        Ok(stored)
    }

    /// The right module action `(sum_t f_t (x) e_t) g`.
    pub fn right_act(&self, form: &OneForm, g: &NcPoly) -> Result<OneForm> {
        self.check(g)?;
        if form.spec != self.spec {
            return Err(Error::ContextMismatch {
                left: form.spec.to_string(),
                right: self.spec.to_string(),
            });
        }
        let mut out = OneForm::zero(self.spec);
        for t in 0..self.quotient_dim() {
            if form.coeffs[t].is_structurally_zero() {
                continue;
            }
            for (m, c) in g.terms() {
                let base = self.act_frame_mono(t, m)?;
                for s in 0..self.quotient_dim() {
                    if base.coeffs[s].is_structurally_zero() {
                        continue;
                    }
                    let piece = form.coeffs[t].mul(&base.coeffs[s]).scale(c);
                    out.coeffs[s] = out.coeffs[s].add(&piece);
                }
            }
        }
        Ok(out)
    }

    /// Quotient class of `bar(v) g` for an arbitrary counit-kernel
    /// representative `v`: zero for every `g` exactly when `bar(v)` generates
    /// no quotient component under the right action.
    pub fn class_action(&self, v: &NcPoly, g: &NcPoly) -> Result<OneForm> {
        self.check_counit(v)?;
        self.check(g)?;
        let mut out = OneForm::zero(self.spec);
        for (m, c) in g.terms() {
            let part = self.act_mono(v, m)?;
            for s in 0..self.quotient_dim() {
                if part.coeffs[s].is_structurally_zero() {
                    continue;
                }
                out.coeffs[s] = out.coeffs[s].add(&part.coeffs[s].scale(c));
            }
        }
        Ok(out)
    }

    /// An exact basis of `{x : deg(x) <= bound, counit(x) = 0, coset(x) = 0}`,
    /// the window of the calculus ideal visible below the degree bound.
    pub fn ideal_window(&self, bound: usize) -> Result<Vec<NcPoly>> {
        let monos = sorted_monomials(self.spec, bound);
        let root = self.spec.root;
        let dim = self.quotient_dim();
        let offset = self.d_span_dim();
        let mut mat = QMat::zero(1 + dim, monos.len(), root);
        for (col, m) in monos.iter().enumerate() {
            let p = NcPoly::from_raw_terms(self.spec, [(m.0.clone(), QScalar::one(root))]);
            *mat.at_mut(0, col) = p.counit();
            let coords = self.coords_of(&p)?;
            for t in 0..dim {
                *mat.at_mut(1 + t, col) = coords[offset + t].clone();
            }
        }
        let null = mat.null_space(root);
        let mut out = Vec::with_capacity(null.len());
        for combo in null {
            let mut p = NcPoly::zero(self.spec);
            for (lambda, m) in combo.iter().zip(monos.iter()) {
                if !lambda.is_zero() {
                    p = p.add(&NcPoly::from_raw_terms(
                        self.spec,
                        [(m.0.clone(), lambda.clone())],
                    ));
                }
            }
            out.push(p);
        }
        Ok(out)
    }
}

fn vec_of_matrix(m: &QMat) -> Vec<QScalar> {
    let mut out = Vec::with_capacity(m.rows * m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            out.push(m.at(i, j).clone());
        }
    }
    out
}

/// The name of the `t`-th frame form in quotient indexing.
pub fn frame_name(size: u8, t: usize) -> String {
    let n = size as usize;
    if t < n - 1 {
        format!("em[{}]", t + 1)
    } else if t == n - 1 {
        "e0".to_string()
    } else {
        format!("ep[{}]", t - n + 1)
    }
}

/// Frame index helpers (1-based `i` as in the frame names).
pub fn idx_em(size: u8, i: usize) -> usize {
    debug_assert!(i >= 1 && i < size as usize);
    i - 1
}

pub fn idx_e0(size: u8) -> usize {
    size as usize - 1
}

pub fn idx_ep(size: u8, i: usize) -> usize {
    debug_assert!(i >= 1 && i < size as usize);
    size as usize - 1 + i
}

/// Scalar coordinates against the quotient frame.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneFormCoords {
    pub spec: AlgebraSpec,
    pub coords: Vec<QScalar>,
}

impl OneFormCoords {
    pub fn zero(spec: AlgebraSpec) -> Self {
        OneFormCoords {
            spec,
            coords: vec![QScalar::zero(spec.root); 2 * spec.size as usize - 1],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(QScalar::is_zero)
    }

    pub fn scale(&self, factor: &QScalar) -> Self {
        OneFormCoords {
            spec: self.spec,
            coords: self.coords.iter().map(|c| c.mul(factor)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        OneFormCoords {
            spec: self.spec,
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// Coordinates with exactly one frame form carrying coefficient one.
    pub fn unit(spec: AlgebraSpec, t: usize) -> Self {
        let mut z = OneFormCoords::zero(spec);
        z.coords[t] = QScalar::one(spec.root);
        z
    }
}

impl std::fmt::Display for OneFormCoords {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rendered = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (frame_name(self.spec.size, t), c));
        write!(f, "{}", crate::ncalg::format_terms(rendered))
    }
}

/// An element of the quotient FODC: algebra coefficients against the frame,
/// `sum_t coeffs[t] e_t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneForm {
    spec: AlgebraSpec,
    pub coeffs: Vec<NcPoly>,
}

impl OneForm {
    pub fn zero(spec: AlgebraSpec) -> Self {
        OneForm {
            spec,
            coeffs: vec![NcPoly::zero(spec); 2 * spec.size as usize - 1],
        }
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    /// The frame form `e_t` itself.
    pub fn frame(spec: AlgebraSpec, t: usize) -> Self {
        let mut z = OneForm::zero(spec);
        z.coeffs[t] = NcPoly::one(spec);
        z
    }

    pub fn from_coords(coords: &OneFormCoords) -> Self {
        OneForm {
            spec: coords.spec,
            coeffs: coords
                .coords
                .iter()
                .map(|c| NcPoly::scalar(coords.spec, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.spec, other.spec, "form contexts");
        OneForm {
            spec: self.spec,
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        OneForm {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(NcPoly::neg).collect(),
        }
    }

    pub fn scale(&self, factor: &QScalar) -> Self {
        OneForm {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    /// Left module action `f . omega`.
    pub fn left_mul(&self, f: &NcPoly) -> Self {
        OneForm {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|c| f.mul(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(NcPoly::is_zero)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        if self.spec != other.spec {
            return Err(Error::ContextMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            });
        }
        Ok(self.sub(other).is_zero())
    }
}

impl std::fmt::Display for OneForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        let mut first = true;
        for (t, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_structurally_zero() {
                continue;
            }
            let name = frame_name(self.spec.size, t);
            let single = {
                let mut it = coeff.terms();
                let first_term = it.next();
                if it.next().is_none() {
                    first_term.map(|(m, c)| (m.clone(), c.clone()))
                } else {
                    None
                }
            };
            let (neg, body) = match single {
                Some((m, c)) => {
                    let piece = crate::qfield::term_pieces(&c);
                    let body = if m.is_one() {
                        if piece.magnitude == "1" {
                            name.clone()
                        } else if piece.atomic {
                            format!("{} {}", piece.magnitude, name)
                        } else {
                            format!("({}) {}", piece.magnitude, name)
                        }
                    } else if piece.magnitude == "1" {
                        format!("{} {}", m, name)
                    } else if piece.atomic {
                        format!("{}*{} {}", piece.magnitude, m, name)
                    } else {
                        format!("({})*{} {}", piece.magnitude, m, name)
                    };
                    (piece.negative, body)
                }
                None => (false, format!("({}) {}", coeff, name)),
            };
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx2() -> Arc<CalcCtx> {
        calc_ctx(AlgebraSpec::special_unitary(2, 2)).unwrap()
    }

    fn g(spec: AlgebraSpec, i: u8, j: u8) -> NcPoly {
        NcPoly::gen(spec, i, j).unwrap()
    }

    fn qp(num: i64, den: i64) -> QScalar {
        QScalar::q_power(num, den, 2).unwrap()
    }

    #[test]
    fn frame_dimensions() {
        let ctx = ctx2();
        assert_eq!(ctx.full_dim(), 4);
        assert_eq!(ctx.quotient_dim(), 3);
        assert_eq!(ctx.d_span_dim(), 1);
        let ctx3 = calc_ctx(AlgebraSpec::special_unitary(3, 3)).unwrap();
        assert_eq!(ctx3.full_dim(), 9);
        assert_eq!(ctx3.quotient_dim(), 5);
        assert_eq!(ctx3.d_span_dim(), 4);
    }

    #[test]
    fn coset_of_frame_representatives_is_the_frame() {
        let ctx = ctx2();
        let s = ctx.spec();
        for t in 0..ctx.quotient_dim() {
            let rep = ctx.frame_rep(t).clone();
            let coords = ctx.coset(&rep).unwrap();
            assert_eq!(coords, OneFormCoords::unit(s, t), "frame rep {t}");
        }
        // The D1 representative dies in the quotient...
        let d1 = g(s, 2, 1).mul(&g(s, 1, 2).antipode().unwrap());
        assert!(ctx.coset(&d1).unwrap().is_zero());
        // ... but not in the full basis, where it is the first coordinate.
        let full = ctx.lambda_coords(&d1).unwrap();
        assert!(full[0].is_one());
        assert!(full[1..].iter().all(QScalar::is_zero));
        // bc_coset is the Killing matrix itself and separates classes.
        let q_of_d1 = ctx.bc_coset(&d1).unwrap();
        let again = ctx.bc_coset(&d1).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(q_of_d1.at(i, j).sub(again.at(i, j)).is_zero());
            }
        }
        assert!(ctx.bc_coset(&NcPoly::one(s)).is_err());
    }

    #[test]
    fn frozen_coset_values_at_size_two() {
        let ctx = ctx2();
        let s = ctx.spec();
        // coset(z_2 z*_1) = q^(2/N - 1) ep_1 with N = 2, so coefficient 1.
        let zz21 = g(s, 2, 1).mul(&g(s, 1, 1).antipode().unwrap());
        let expect = OneFormCoords::unit(s, idx_ep(2, 1));
        assert_eq!(ctx.coset(&zz21).unwrap(), expect);
        // coset(z_1 z*_2) = -q^(3 + 2/N - 4) em_1 = -em_1.
        let zz12 = g(s, 1, 1).mul(&g(s, 1, 2).antipode().unwrap());
        let expect = OneFormCoords::unit(s, idx_em(2, 1)).scale(&QScalar::one(2).neg());
        assert_eq!(ctx.coset(&zz12).unwrap(), expect);
        // coset(S(u^1_2)) = -q^(1 + 4/N - 4) em_1 = -q^-1 em_1.
        let su12 = g(s, 1, 2).antipode().unwrap();
        let expect = OneFormCoords::unit(s, idx_em(2, 1)).scale(&qp(-1, 1).neg());
        assert_eq!(ctx.coset(&su12).unwrap(), expect);
        // coset(u^2_2 - 1) = -q^-1 e0.
        let d = g(s, 2, 2).sub(&NcPoly::one(s));
        let expect = OneFormCoords::unit(s, idx_e0(2)).scale(&qp(-1, 1).neg());
        assert_eq!(ctx.coset(&d).unwrap(), expect);
        // coset(S(u^1_1) - 1) = -q^(2/N - 2) e0 = -q^-1 e0.
        let sa = g(s, 1, 1).antipode().unwrap().sub(&NcPoly::one(s));
        let expect = OneFormCoords::unit(s, idx_e0(2)).scale(&qp(-1, 1).neg());
        assert_eq!(ctx.coset(&sa).unwrap(), expect);
    }

    #[test]
    fn fiber_relation_scale_between_antipode_powers() {
        // coset(S(u^1_1)^2 - S(u^1_1)) = q^(2/N - 2) coset(S(u^1_1) - 1).
        for (n, root) in [(2u8, 2u32), (3, 3)] {
            let ctx = calc_ctx(AlgebraSpec::special_unitary(n, root)).unwrap();
            let s = ctx.spec();
            let sa = NcPoly::gen(s, 1, 1).unwrap().antipode().unwrap();
            let lhs = ctx.coset(&sa.mul(&sa).sub(&sa)).unwrap();
            let lambda = QScalar::q_power(2 - 2 * i64::from(n), i64::from(n), root).unwrap();
            let rhs = ctx.coset(&sa.sub(&NcPoly::one(s))).unwrap().scale(&lambda);
            assert_eq!(lhs, rhs, "N = {n}");
        }
    }

    #[test]
    fn coset_is_representative_independent() {
        // Any element of the ideal window shifts a representative without
        // changing its class.
        let ctx = ctx2();
        let s = ctx.spec();
        let window = ctx.ideal_window(2).unwrap();
        assert!(!window.is_empty());
        let x = g(s, 1, 2);
        let base = ctx.coset(&x).unwrap();
        for w in window.iter().take(4) {
            assert!(w.counit().is_zero());
            let shifted = ctx.coset(&x.add(w)).unwrap();
            assert_eq!(base, shifted);
        }
    }

    #[test]
    fn exterior_derivative_on_su2_generators() {
        let ctx = ctx2();
        let s = ctx.spec();
        let (a, b, c, d) = (g(s, 1, 1), g(s, 1, 2), g(s, 2, 1), g(s, 2, 2));
        let e0 = OneForm::frame(s, idx_e0(2));
        let em = OneForm::frame(s, idx_em(2, 1));
        let ep = OneForm::frame(s, idx_ep(2, 1));
        // da = a e0 + b ep1, db = a em1 - q^-1 b e0,
        // dc = c e0 + d ep1, dd = c em1 - q^-1 d e0.
        let da = ctx.ext_d(&a).unwrap();
        assert!(da.equals(&e0.left_mul(&a).add(&ep.left_mul(&b))).unwrap());
        let db = ctx.ext_d(&b).unwrap();
        assert!(db
            .equals(&em.left_mul(&a).sub(&e0.left_mul(&b).scale(&qp(-1, 1))))
            .unwrap());
        let dc = ctx.ext_d(&c).unwrap();
        assert!(dc.equals(&e0.left_mul(&c).add(&ep.left_mul(&d))).unwrap());
        let dd = ctx.ext_d(&d).unwrap();
        assert!(dd
            .equals(&em.left_mul(&c).sub(&e0.left_mul(&d).scale(&qp(-1, 1))))
            .unwrap());
        // d kills scalars.
        assert!(ctx.ext_d(&NcPoly::one(s)).unwrap().is_zero());
        // ep1 = a dc - q c da.
        let recovered = dc.left_mul(&a).sub(&da.left_mul(&c).scale(&qp(1, 1)));
        assert!(recovered.equals(&ep).unwrap());
        // e0 = d da - q^-1 b dc, em1 = d db - q^-1 b dd.
        let rec0 = da.left_mul(&d).sub(&dc.left_mul(&b).scale(&qp(-1, 1)));
        assert!(rec0.equals(&e0).unwrap());
        let recm = db.left_mul(&d).sub(&dd.left_mul(&b).scale(&qp(-1, 1)));
        assert!(recm.equals(&em).unwrap());
    }

    #[test]
    fn right_module_relations_at_size_two() {
        let ctx = ctx2();
        let s = ctx.spec();
        let (a, b, c, d) = (g(s, 1, 1), g(s, 1, 2), g(s, 2, 1), g(s, 2, 2));
        let e0 = OneForm::frame(s, idx_e0(2));
        let em = OneForm::frame(s, idx_em(2, 1));
        let ep = OneForm::frame(s, idx_ep(2, 1));
        let q = qp(1, 1);
        let qm1 = qp(-1, 1);
        let one = QScalar::one(2);
        // e0 a = q a e0 + (q - 1) b ep1.
        let lhs = ctx.right_act(&e0, &a).unwrap();
        let rhs = e0.left_mul(&a).scale(&q).add(&ep.left_mul(&b).scale(&q.sub(&one)));
        assert!(lhs.equals(&rhs).unwrap());
        // e0 b = q^-1 b e0 + (q - 1) a em1.
        let lhs = ctx.right_act(&e0, &b).unwrap();
        let rhs = e0.left_mul(&b).scale(&qm1).add(&em.left_mul(&a).scale(&q.sub(&one)));
        assert!(lhs.equals(&rhs).unwrap());
        // e0 c = q c e0 + (q - 1) d ep1.
        let lhs = ctx.right_act(&e0, &c).unwrap();
        let rhs = e0.left_mul(&c).scale(&q).add(&ep.left_mul(&d).scale(&q.sub(&one)));
        assert!(lhs.equals(&rhs).unwrap());
        // e0 d = q^-1 d e0 + (q - 1) c em1.
        let lhs = ctx.right_act(&e0, &d).unwrap();
        let rhs = e0.left_mul(&d).scale(&qm1).add(&em.left_mul(&c).scale(&q.sub(&one)));
        assert!(lhs.equals(&rhs).unwrap());
        // e+/e- commute with every generator.
        for x in [&a, &b, &c, &d] {
            let lhs = ctx.right_act(&ep, x).unwrap();
            assert!(lhs.equals(&ep.left_mul(x)).unwrap(), "ep commutes");
            let lhs = ctx.right_act(&em, x).unwrap();
            assert!(lhs.equals(&em.left_mul(x)).unwrap(), "em commutes");
        }
    }

    #[test]
    fn leibniz_rule_on_products() {
        let ctx = ctx2();
        let s = ctx.spec();
        let (a, b, c) = (g(s, 1, 1), g(s, 1, 2), g(s, 2, 1));
        for (f, h) in [(&a, &b), (&b, &c), (&c, &a), (&a, &a)] {
            let prod = f.mul(h);
            let lhs = ctx.ext_d(&prod).unwrap();
            let rhs = ctx
                .right_act(&ctx.ext_d(f).unwrap(), h)
                .unwrap()
                .add(&ctx.ext_d(h).unwrap().left_mul(f));
            assert!(lhs.equals(&rhs).unwrap(), "Leibniz on a product");
        }
    }

    #[test]
    fn d_span_is_stable_under_the_right_action() {
        let ctx = ctx2();
        let s = ctx.spec();
        let gens = [g(s, 1, 1), g(s, 1, 2), g(s, 2, 1), g(s, 2, 2)];
        for k in 0..ctx.d_span_dim() {
            let v = ctx.lambda_basis()[k].clone();
            for x in &gens {
                let acted = ctx.class_action(&v, x).unwrap();
                assert!(acted.is_zero(), "D rep {k} stays in D under {x}");
            }
        }
    }

    #[test]
    fn su2_ideal_generators_have_zero_coset() {
        let ctx = ctx2();
        let s = ctx.spec();
        let (a, b, c, d) = (g(s, 1, 1), g(s, 1, 2), g(s, 2, 1), g(s, 2, 2));
        let one = NcPoly::one(s);
        let q = qp(1, 1);
        let gens = [
            a.add(&d.scale(&q)).sub(&one.scale(&q.add(&QScalar::one(2)))),
            b.mul(&c),
            b.mul(&b),
            c.mul(&c),
            a.sub(&one.scale(&q)).mul(&b),
            a.sub(&one.scale(&q)).mul(&c),
            a.sub(&one.scale(&q)).mul(&a.sub(&one)),
        ];
        for (idx, x) in gens.iter().enumerate() {
            assert!(x.counit().is_zero(), "generator {idx} is in ker counit");
            assert!(ctx.coset(x).unwrap().is_zero(), "generator {idx} has zero class");
        }
        // Witnesses for the competing three-dimensional calculus do not die.
        let witnesses = [
            a.sub(&one).mul(&b),
            a.sub(&one).mul(&c),
            a.add(&d.scale(&qp(-2, 1)))
                .sub(&one.scale(&QScalar::one(2).add(&qp(-2, 1)))),
        ];
        for (idx, x) in witnesses.iter().enumerate() {
            assert!(x.counit().is_zero());
            assert!(!ctx.coset(x).unwrap().is_zero(), "witness {idx} survives");
        }
    }

    #[test]
    fn form_display_is_readable() {
        let ctx = ctx2();
        let s = ctx.spec();
        let da = ctx.ext_d(&g(s, 1, 1)).unwrap();
        assert_eq!(da.to_string(), "u[1,1] e0 + u[1,2] ep[1]");
        let coords = ctx.coset(&g(s, 2, 2).sub(&NcPoly::one(s))).unwrap();
        assert_eq!(coords.to_string(), "-q^-1*e0");
        let db = ctx.ext_d(&g(s, 1, 2)).unwrap();
        assert_eq!(db.to_string(), "u[1,1] em[1] - q^-1*u[1,2] e0");
    }
}
