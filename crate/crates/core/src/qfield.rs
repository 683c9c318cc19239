//! Exact arithmetic in the field Q(q^(1/N)).
//!
//! Every scalar produced by the engine is a reduced fraction of Laurent
//! polynomials in the primitive variable `s = q^(1/N)` with arbitrary
//! precision rational coefficients. The root order `N` is fixed per scalar
//! and must agree for all scalars that meet in an operation.
//!
//! Canonical form (enforced after every operation, so `==` is semantic
//! equality):
//! * the denominator is an ordinary polynomial in `s` (lowest exponent 0)
//!   with a nonzero constant term, monic in its highest coefficient;
//! * numerator and denominator share no polynomial factor;
//! * all sign and `s`-power content lives in the numerator;
//! * zero is represented as `0 / 1`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial in one variable over the rationals.
///
/// `coeffs[k]` multiplies `s^(low + k)`. The first and last coefficients are
/// nonzero; the zero polynomial is the empty coefficient list with `low = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(BigRational::one(), 0)
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        if c.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly { low: exp, coeffs: vec![c] }
        }
    }

    fn from_raw(low: i64, coeffs: Vec<BigRational>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Drop leading/trailing zero coefficients so the invariants hold.
    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Exponent of the lowest nonzero term (0 for the zero polynomial).
    pub fn low_exp(&self) -> i64 {
        self.low
    }

    /// Exponent of the highest nonzero term (0 for the zero polynomial).
    pub fn high_exp(&self) -> i64 {
        if self.coeffs.is_empty() { 0 } else { self.low + self.coeffs.len() as i64 - 1 }
    }

    /// Iterate `(exponent, coefficient)` pairs, ascending, nonzero only.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        let low = self.low;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (low + k as i64, c))
    }

    fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high_exp().max(other.high_exp());
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (e, c) in self.terms() {
            coeffs[(e - low) as usize] += c;
        }
        for (e, c) in other.terms() {
            coeffs[(e - low) as usize] += c;
        }
        LaurentPoly::from_raw(low, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_raw(self.low + other.low, coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Polynomial division with remainder; both operands must be ordinary
    /// polynomials (`low == 0`). Returns `(quotient, remainder)`.
    fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        assert!(self.low >= 0 && div.low == 0, "div_rem expects ordinary polynomials");
        let mut rem: Vec<BigRational> = vec![BigRational::zero(); (self.high_exp() + 1) as usize];
        for (e, c) in self.terms() {
            rem[e as usize] = c.clone();
        }
        let ddeg = div.high_exp() as usize;
        let dlead = div.leading_coeff();
        if rem.len() <= ddeg {
            return (LaurentPoly::zero(), LaurentPoly::from_raw(0, rem));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - ddeg];
        for k in (ddeg..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] / &dlead;
            for (j, b) in div.coeffs.iter().enumerate() {
                let idx = k - ddeg + j;
                let t = q.clone() * b;
                rem[idx] -= t;
            }
            quot[k - ddeg] = q;
        }
        (LaurentPoly::from_raw(0, quot), LaurentPoly::from_raw(0, rem))
    }

    /// Monic gcd of two ordinary polynomials with nonzero constant terms.
    /// Remainders are shifted back to `low == 0`: `s` divides neither input,
    /// so stripping `s`-content from a remainder never changes the gcd.
    fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, mut r) = a.div_rem(&b);
            if !r.is_zero() {
                let rlow = r.low_exp();
                if rlow > 0 {
                    r = r.shift(-rlow);
                }
            }
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading_coeff();
        a.scale(&lead.recip())
    }
}

/// An element of Q(q^(1/N)), stored as a reduced fraction of Laurent
/// polynomials in `s = q^(1/N)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QScalar {
    root: u32,
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QScalar {
    pub fn zero(root: u32) -> Self {
        QScalar { root, num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one(root: u32) -> Self {
        QScalar { root, num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_int(value: i64, root: u32) -> Self {
        QScalar::from_rational(BigRational::from(BigInt::from(value)), root)
    }

    pub fn from_rational(value: BigRational, root: u32) -> Self {
        QScalar { root, num: LaurentPoly::monomial(value, 0), den: LaurentPoly::one() }
    }

    /// `s^exp` where `s = q^(1/root)`.
    pub fn s_power(exp: i64, root: u32) -> Self {
        QScalar {
            root,
            num: LaurentPoly::monomial(BigRational::one(), exp),
            den: LaurentPoly::one(),
        }
    }

    /// `q^(num/den)`; `den` must be positive and divide the root order.
    pub fn q_power(num: i64, den: i64, root: u32) -> Result<Self> {
        if den <= 0 || root as i64 % den != 0 {
            return Err(Error::QPowerDenominator { den, root });
        }
        Ok(QScalar::s_power(num * (root as i64 / den), root))
    }

    /// `q^k` for integer `k`.
    pub fn q_int(k: i64, root: u32) -> Self {
        QScalar::s_power(k * root as i64, root)
    }

    /// `nu = q - q^(-1)`.
    pub fn nu(root: u32) -> Self {
        QScalar::q_int(1, root).sub(&QScalar::q_int(-1, root))
    }

    pub fn root_order(&self) -> u32 {
        self.root
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    fn check_root(&self, other: &Self) -> Result<()> {
        if self.root != other.root {
            Err(Error::RootMismatch { left: self.root, right: other.root })
        } else {
            Ok(())
        }
    }

    /// Restore the canonical form described in the module docs.
    fn canonicalize(mut self) -> Self {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return self;
        }
        // All s-power content of the denominator moves to the numerator.
        let dlow = self.den.low_exp();
        if dlow != 0 {
            self.den = self.den.shift(-dlow);
            self.num = self.num.shift(-dlow);
        }
        if !self.den.is_one() {
            // Reduce by the gcd, taken on the shifted (ordinary) numerator.
            let nlow = self.num.low_exp();
            let num0 = self.num.shift(-nlow);
            let g = LaurentPoly::gcd(&num0, &self.den);
            if !g.is_one() {
                let (nq, nr) = num0.div_rem(&g);
                let (dq, dr) = self.den.div_rem(&g);
                debug_assert!(nr.is_zero() && dr.is_zero(), "gcd must divide exactly");
                self.num = nq.shift(nlow);
                self.den = dq;
            }
            // Monic denominator; the scale factor joins the numerator.
            let lead = self.den.leading_coeff();
            if !lead.is_one() {
                self.den = self.den.scale(&lead.recip());
                self.num = self.num.scale(&lead.recip());
            }
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("root orders must agree")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_root(other)?;
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Ok(QScalar { root: self.root, num, den }.canonicalize())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QScalar { root: self.root, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("root orders must agree")
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_root(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(QScalar::zero(self.root));
        }
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        Ok(QScalar { root: self.root, num, den }.canonicalize())
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QScalar { root: self.root, num: self.den.clone(), den: self.num.clone() }
            .canonicalize())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_root(other)?;
        self.try_mul(&other.invert()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp == 0 {
            return Ok(QScalar::one(self.root));
        }
        let base = if exp < 0 { self.invert()? } else { self.clone() };
        let mut acc = QScalar::one(self.root);
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitute: scale every exponent by `k` (`s -> s^k`). Used by tests to
    /// cross-check values computed at different root orders.
    pub fn rescale_root(&self, new_root: u32) -> Result<Self> {
        if new_root % self.root != 0 {
            return Err(Error::QPowerDenominator { den: self.root as i64, root: new_root });
        }
        let k = (new_root / self.root) as i64;
        let stretch = |p: &LaurentPoly| {
            let mut out = LaurentPoly::zero();
            for (e, c) in p.terms() {
                out = out.add(&LaurentPoly::monomial(c.clone(), e * k));
            }
            out
        };
        Ok(QScalar { root: new_root, num: stretch(&self.num), den: stretch(&self.den) }
            .canonicalize())
    }
}

/// Render one Laurent polynomial in `q`-notation, highest exponent first.
fn format_laurent(p: &LaurentPoly, root: u32, out: &mut String) {
    if p.is_zero() {
        out.push('0');
        return;
    }
    let terms: Vec<(i64, &BigRational)> = p.terms().collect();
    for (pos, (e, c)) in terms.iter().rev().enumerate() {
        let negative = c.is_negative();
        let mag = if negative { -(*c).clone() } else { (*c).clone() };
        if pos == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        format_term(&mag, *e, root, out);
    }
}

fn format_term(mag: &BigRational, exp: i64, root: u32, out: &mut String) {
    if exp == 0 {
        out.push_str(&format_rational(mag));
        return;
    }
    if !mag.is_one() {
        out.push_str(&format_rational(mag));
        out.push('*');
    }
    let g = num::integer::gcd(exp.unsigned_abs(), root as u64) as i64;
    let num = exp / g;
    let den = root as i64 / g;
    if den == 1 {
        if num == 1 {
            out.push('q');
        } else {
            out.push_str(&format!("q^{num}"));
        }
    } else {
        out.push_str(&format!("q^({num}/{den})"));
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// How a scalar should be rendered when it coefficients a word in a sum:
/// an extracted sign, the magnitude string, and whether the magnitude can be
/// juxtaposed with `*word` without parentheses.
pub struct TermPieces {
    pub negative: bool,
    pub magnitude: String,
    pub atomic: bool,
}

/// Decompose a scalar for sum rendering. Single-term scalars extract their
/// sign and stay atomic; multi-term numerators keep their internal signs and
/// request parentheses; fractions are already self-delimited.
pub fn term_pieces(value: &QScalar) -> TermPieces {
    if value.is_zero() {
        return TermPieces { negative: false, magnitude: "0".into(), atomic: true };
    }
    let root = value.root;
    if value.den.is_one() {
        let terms: Vec<(i64, &BigRational)> = value.num.terms().collect();
        if terms.len() == 1 {
            let (e, c) = terms[0];
            let negative = c.is_negative();
            let mag = if negative { -c.clone() } else { c.clone() };
            let mut s = String::new();
            format_term(&mag, e, root, &mut s);
            return TermPieces { negative, magnitude: s, atomic: true };
        }
        let negative = value.num.leading_coeff().is_negative();
        let body = if negative { value.num.neg() } else { value.num.clone() };
        let mut s = String::new();
        format_laurent(&body, root, &mut s);
        return TermPieces { negative, magnitude: s, atomic: false };
    }
    let negative = value.num.leading_coeff().is_negative();
    let num = if negative { value.num.neg() } else { value.num.clone() };
    let mut s = String::new();
    s.push('(');
    format_laurent(&num, root, &mut s);
    s.push_str(")/(");
    format_laurent(&value.den, root, &mut s);
    s.push(')');
    TermPieces { negative, magnitude: s, atomic: true }
}

impl std::fmt::Display for QScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        if self.den.is_one() {
            format_laurent(&self.num, self.root, &mut s);
        } else {
            s.push('(');
            format_laurent(&self.num, self.root, &mut s);
            s.push_str(")/(");
            format_laurent(&self.den, self.root, &mut s);
            s.push(')');
        }
        write!(f, "{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(k: i64) -> QScalar {
        QScalar::q_int(k, 2)
    }

    #[test]
    fn q_power_checks_denominator() {
        assert!(QScalar::q_power(1, 2, 2).is_ok());
        assert!(QScalar::q_power(1, 3, 2).is_err());
        assert!(QScalar::q_power(1, 0, 2).is_err());
        assert_eq!(QScalar::q_power(2, 2, 2).unwrap(), q(1));
    }

    #[test]
    fn nu_identity() {
        // q^2 - q^-2 = nu * (q + q^-1), so the difference cancels exactly.
        let lhs = q(2).sub(&q(-2));
        let rhs = QScalar::nu(2).mul(&q(1).add(&q(-1)));
        assert_eq!(lhs, rhs);
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn fraction_reduction_is_canonical() {
        // (q^2 - 1)/(q - 1) reduces to q + 1.
        let one = QScalar::one(2);
        let num = q(2).sub(&one);
        let den = q(1).sub(&one);
        let frac = num.div(&den).unwrap();
        assert_eq!(frac, q(1).add(&one));
        // Scaled numerator and denominator give a structurally equal result.
        let two = QScalar::from_int(2, 2);
        let frac2 = num.mul(&two).div(&den.mul(&two)).unwrap();
        assert_eq!(frac, frac2);
    }

    #[test]
    fn denominator_absorbs_sign_and_powers() {
        // 1 / (-q) must normalize: den monic with constant term, sign in num.
        let val = QScalar::one(2).div(&q(1).neg()).unwrap();
        assert_eq!(val, q(-1).neg());
        assert!(val.denominator().is_one());
    }

    #[test]
    fn root_mismatch_is_an_error() {
        let a = QScalar::one(2);
        let b = QScalar::one(3);
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn display_round_values() {
        assert_eq!(QScalar::nu(2).to_string(), "q - q^-1");
        assert_eq!(QScalar::q_power(1, 2, 2).unwrap().to_string(), "q^(1/2)");
        assert_eq!(QScalar::q_power(-3, 2, 2).unwrap().to_string(), "q^(-3/2)");
        assert_eq!(QScalar::from_int(-2, 2).to_string(), "-2");
        let frac = QScalar::one(2).div(&q(1).add(&QScalar::one(2))).unwrap();
        assert_eq!(frac.to_string(), "(1)/(q + 1)");
    }

    fn arb_scalar() -> impl Strategy<Value = QScalar> {
        let coeff = -4i64..=4;
        let exp = -3i64..=3;
        prop::collection::vec((coeff.clone(), exp.clone()), 0..4).prop_map(|terms| {
            let mut acc = QScalar::zero(3);
            for (c, e) in terms {
                let t = QScalar::from_int(c, 3).mul(&QScalar::s_power(e, 3));
                acc = acc.add(&t);
            }
            acc
        })
    }

    fn arb_nonzero() -> impl Strategy<Value = QScalar> {
        arb_scalar().prop_filter("nonzero", |v| !v.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn division_inverts(a in arb_nonzero(), b in arb_nonzero()) {
            let q = a.div(&b).unwrap();
            prop_assert_eq!(q.mul(&b), a.clone());
            prop_assert!(a.mul(&a.invert().unwrap()).is_one());
        }

        #[test]
        fn fractions_cancel(a in arb_scalar(), b in arb_nonzero(), c in arb_nonzero()) {
            let plain = a.div(&b).unwrap();
            let scaled = a.mul(&c).div(&b.mul(&c)).unwrap();
            prop_assert_eq!(plain, scaled);
        }
    }
}
