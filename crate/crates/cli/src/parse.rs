//! Expression grammar for the command line.
//!
//! Algebra expressions are sums of products of atoms: matrix generators
//! `u[i,j]`, the inverse determinant `detinv`, sphere coordinates `z[i]`,
//! `zs[i]` and `zz[i,j]`, the antipode `S(...)`, scalar atoms (`q`, `q^k`,
//! `q^(a/b)`, integer and rational literals), and parenthesised
//! subexpressions.  Multiplication is written `*` or by juxtaposition.
//! One-form expressions extend this with the frame atoms `e0`, `ep[i]`,
//! `em[i]`, each closing one term; the frame atoms are a separate syntactic
//! sort and cannot appear inside an algebra expression.
//!
//! The printers in the engine emit exactly this grammar, so parsing a
//! printed value reproduces it.

use qflag_core::bundles::{sphere_z, sphere_zs, sphere_zz};
use qflag_core::calculus::{idx_e0, idx_em, idx_ep, OneForm};
use qflag_core::ncalg::{AlgebraKind, AlgebraSpec, NcPoly};
use qflag_core::QScalar;

/// A syntax or validation error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(v) => format!("'{v}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Comma => "','".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBracket => "'['".into(),
        Tok::RBracket => "']'".into(),
    }
}

struct Spanned {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(text: &str) -> Result<(Vec<Spanned>, (u32, u32)), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let (tl, tc) = (line, col);
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let text: String = chars[i..j].iter().collect();
            let v: i64 = text.parse().map_err(|_| ParseError {
                line: tl,
                col: tc,
                message: format!("integer literal '{text}' is too large"),
            })?;
            out.push(Spanned { tok: Tok::Int(v), line: tl, col: tc });
            col += (j - i) as u32;
            i = j;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let name: String = chars[i..j].iter().collect();
            out.push(Spanned { tok: Tok::Ident(name), line: tl, col: tc });
            col += (j - i) as u32;
            i = j;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            _ => {
                return Err(ParseError {
                    line: tl,
                    col: tc,
                    message: format!("unexpected character '{c}'"),
                })
            }
        };
        out.push(Spanned { tok, line: tl, col: tc });
        col += 1;
        i += 1;
    }
    Ok((out, (line, col)))
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    spec: AlgebraSpec,
    end: (u32, u32),
}

impl Parser {
    fn new(text: &str, spec: AlgebraSpec) -> Result<Self, ParseError> {
        let (toks, end) = lex(text)?;
        Ok(Parser { toks, pos: 0, spec, end })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (u32, u32) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.col))
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".into(), describe)
    }

    fn mk(&self, at: (u32, u32), message: impl Into<String>) -> ParseError {
        ParseError { line: at.0, col: at.1, message: message.into() }
    }

    fn fail<T>(&self, at: (u32, u32), message: impl Into<String>) -> Result<T, ParseError> {
        Err(self.mk(at, message))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            let found = self.found();
            self.fail(self.here(), format!("expected {what}, found {found}"))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(&Tok::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => {
                let found = self.found();
                self.fail(self.here(), format!("expected an integer, found {found}"))
            }
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.fail(self.here(), format!("unexpected trailing {}", describe(t))),
        }
    }

    fn matrix_index(&mut self) -> Result<u8, ParseError> {
        let at = self.here();
        let v = self.int()?;
        let n = i64::from(self.spec.size);
        if v < 1 || v > n {
            return self.fail(at, format!("index {v} is out of range for size {}", self.spec.size));
        }
        Ok(v as u8)
    }

    fn single_index(&mut self) -> Result<u8, ParseError> {
        self.expect(Tok::LBracket, "'['")?;
        let i = self.matrix_index()?;
        self.expect(Tok::RBracket, "']'")?;
        Ok(i)
    }

    fn pair_index(&mut self) -> Result<(u8, u8), ParseError> {
        self.expect(Tok::LBracket, "'['")?;
        let i = self.matrix_index()?;
        self.expect(Tok::Comma, "','")?;
        let j = self.matrix_index()?;
        self.expect(Tok::RBracket, "']'")?;
        Ok((i, j))
    }

    fn frame_index(&mut self, name: &str) -> Result<usize, ParseError> {
        self.expect(Tok::LBracket, "'['")?;
        let at = self.here();
        let v = self.int()?;
        let max = i64::from(self.spec.size) - 1;
        if v < 1 || v > max {
            return self.fail(
                at,
                format!("frame index {v} is out of range for '{name}' at size {} (expected 1..={max})", self.spec.size),
            );
        }
        self.expect(Tok::RBracket, "']'")?;
        Ok(v as usize)
    }

    fn sum(&mut self) -> Result<NcPoly, ParseError> {
        let mut acc = if self.eat(&Tok::Minus) {
            self.product()?.neg()
        } else {
            self.product()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                let p = self.product()?;
                acc = acc.add(&p);
            } else if self.eat(&Tok::Minus) {
                let p = self.product()?;
                acc = acc.sub(&p);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<NcPoly, ParseError> {
        let mut acc = self.atom()?;
        loop {
            let more = match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    true
                }
                Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => true,
                _ => false,
            };
            if !more {
                return Ok(acc);
            }
            let a = self.atom()?;
            acc = acc.mul(&a);
        }
    }

    fn atom(&mut self) -> Result<NcPoly, ParseError> {
        let at = self.here();
        let spec = self.spec;
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "u" => {
                        let (i, j) = self.pair_index()?;
                        NcPoly::gen(spec, i, j).map_err(|e| self.mk(at, e.to_string()))
                    }
                    "detinv" => match spec.kind {
                        AlgebraKind::UnitaryGroup => {
                            NcPoly::detinv(spec).map_err(|e| self.mk(at, e.to_string()))
                        }
                        // det = 1 in the special unitary quotient, so its
                        // inverse is accepted and collapses to the unit.
                        AlgebraKind::SpecialUnitaryGroup => Ok(NcPoly::one(spec)),
                        AlgebraKind::MatrixBialgebra => {
                            self.fail(at, "'detinv' is not available in the plain matrix bialgebra")
                        }
                    },
                    "z" => {
                        let i = self.single_index()?;
                        sphere_z(spec, i).map_err(|e| self.mk(at, e.to_string()))
                    }
                    "zs" => {
                        let i = self.single_index()?;
                        sphere_zs(spec, i).map_err(|e| self.mk(at, e.to_string()))
                    }
                    "zz" => {
                        let (i, j) = self.pair_index()?;
                        sphere_zz(spec, i, j).map_err(|e| self.mk(at, e.to_string()))
                    }
                    "S" => {
                        self.expect(Tok::LParen, "'(' after 'S'")?;
                        let inner = self.sum()?;
                        self.expect(Tok::RParen, "')'")?;
                        inner.antipode().map_err(|e| self.mk(at, e.to_string()))
                    }
                    "q" => self.q_atom(at),
                    "a" | "b" | "c" | "d" if spec.size == 2 => {
                        let (i, j) = match name.as_str() {
                            "a" => (1, 1),
                            "b" => (1, 2),
                            "c" => (2, 1),
                            _ => (2, 2),
                        };
                        NcPoly::gen(spec, i, j).map_err(|e| self.mk(at, e.to_string()))
                    }
                    "e0" | "ep" | "em" => self.fail(
                        at,
                        format!("frame atom '{name}' can only close a one-form term; it is not an algebra element"),
                    ),
                    _ => self.fail(at, format!("unknown identifier '{name}'")),
                }
            }
            Some(Tok::Int(v)) => {
                self.pos += 1;
                let num = QScalar::from_int(v, spec.root);
                if self.eat(&Tok::Slash) {
                    let dpos = self.here();
                    let d = self.int()?;
                    if d == 0 {
                        return self.fail(dpos, "division by zero in a rational literal");
                    }
                    let den = QScalar::from_int(d, spec.root);
                    let val = num.div(&den).map_err(|e| self.mk(dpos, e.to_string()))?;
                    Ok(NcPoly::scalar(spec, val))
                } else {
                    Ok(NcPoly::scalar(spec, num))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(t) => self.fail(at, format!("expected an expression atom, found {}", describe(&t))),
            None => self.fail(at, "expected an expression atom, found end of input"),
        }
    }

    fn q_atom(&mut self, at: (u32, u32)) -> Result<NcPoly, ParseError> {
        let spec = self.spec;
        let (num, den) = if self.eat(&Tok::Caret) {
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.pos += 1;
                    (k, 1)
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let k = self.int()?;
                    (-k, 1)
                }
                Some(Tok::LParen) => {
                    self.pos += 1;
                    let neg = self.eat(&Tok::Minus);
                    let a = self.int()?;
                    let b = if self.eat(&Tok::Slash) {
                        let bpos = self.here();
                        let b = self.int()?;
                        if b <= 0 {
                            return self.fail(bpos, "exponent denominator must be positive");
                        }
                        b
                    } else {
                        1
                    };
                    self.expect(Tok::RParen, "')'")?;
                    (if neg { -a } else { a }, b)
                }
                _ => {
                    let found = self.found();
                    return self.fail(self.here(), format!("expected an exponent after '^', found {found}"));
                }
            }
        } else {
            (1, 1)
        };
        let val = QScalar::q_power(num, den, spec.root).map_err(|e| self.mk(at, e.to_string()))?;
        Ok(NcPoly::scalar(spec, val))
    }

    fn form_term(&mut self) -> Result<OneForm, ParseError> {
        let mut coeff = NcPoly::one(self.spec);
        let mut saw_atom = false;
        loop {
            match self.peek() {
                Some(Tok::Ident(name)) if matches!(name.as_str(), "e0" | "ep" | "em") => {
                    let name = name.clone();
                    self.pos += 1;
                    let size = self.spec.size;
                    let t = match name.as_str() {
                        "e0" => idx_e0(size),
                        "ep" => {
                            let i = self.frame_index(&name)?;
                            idx_ep(size, i)
                        }
                        _ => {
                            let i = self.frame_index(&name)?;
                            idx_em(size, i)
                        }
                    };
                    return Ok(OneForm::frame(self.spec, t).left_mul(&coeff));
                }
                Some(Tok::Star) => {
                    self.pos += 1;
                    let a = self.atom()?;
                    coeff = coeff.mul(&a);
                    saw_atom = true;
                }
                Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                    let a = self.atom()?;
                    coeff = coeff.mul(&a);
                    saw_atom = true;
                }
                _ => {
                    // the printer renders the zero form as a bare "0"
                    if saw_atom && coeff.is_structurally_zero() {
                        return Ok(OneForm::zero(self.spec));
                    }
                    return self.fail(
                        self.here(),
                        "expected a frame atom ('e0', 'ep[i]', or 'em[i]') to close the one-form term",
                    );
                }
            }
        }
    }
}

/// Parse an algebra expression in the given context.
pub fn parse_poly(text: &str, spec: AlgebraSpec) -> Result<NcPoly, ParseError> {
    let mut p = Parser::new(text, spec)?;
    if p.toks.is_empty() {
        return p.fail(p.end, "empty expression");
    }
    let v = p.sum()?;
    p.finish()?;
    Ok(v)
}

/// Parse a one-form expression in the given context.
pub fn parse_form(text: &str, spec: AlgebraSpec) -> Result<OneForm, ParseError> {
    let mut p = Parser::new(text, spec)?;
    if p.toks.is_empty() {
        return p.fail(p.end, "empty one-form expression");
    }
    let mut negate = p.eat(&Tok::Minus);
    let mut acc = OneForm::zero(spec);
    loop {
        let term = p.form_term()?;
        acc = if negate { acc.sub(&term) } else { acc.add(&term) };
        if p.eat(&Tok::Plus) {
            negate = false;
        } else if p.eat(&Tok::Minus) {
            negate = true;
        } else if p.peek().is_none() {
            return Ok(acc);
        } else {
            let found = p.found();
            return p.fail(p.here(), format!("expected '+' or '-' between one-form terms, found {found}"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su2() -> AlgebraSpec {
        AlgebraSpec::special_unitary(2, 2)
    }

    fn su3() -> AlgebraSpec {
        AlgebraSpec::special_unitary(3, 3)
    }

    fn g(spec: AlgebraSpec, i: u8, j: u8) -> NcPoly {
        NcPoly::gen(spec, i, j).unwrap()
    }

    #[test]
    fn products_and_juxtaposition_agree() {
        let s = su2();
        let starred = parse_poly("u[2,2]*u[1,1]", s).unwrap();
        let juxta = parse_poly("u[2,2] u[1,1]", s).unwrap();
        assert_eq!(starred, juxta);
        assert_eq!(starred, g(s, 2, 2).mul(&g(s, 1, 1)));
    }

    #[test]
    fn scalars_cover_the_printed_shapes() {
        let s = su2();
        for text in ["q", "q^2", "q^-1", "q^(1/2)", "q^(-3/2)", "3", "2/3", "-5"] {
            parse_poly(text, s).unwrap();
        }
        let half = parse_poly("q^(1/2)", s).unwrap();
        let direct = NcPoly::scalar(s, QScalar::q_power(1, 2, 2).unwrap());
        assert_eq!(half, direct);
    }

    #[test]
    fn fractional_power_needs_a_compatible_root() {
        let s = su2();
        let err = parse_poly("q^(1/3)", s).unwrap_err();
        assert_eq!((err.line, err.col), (1, 1));
        assert!(err.message.contains("denominator 3"), "{}", err.message);
    }

    #[test]
    fn out_of_range_index_reports_its_position() {
        let err = parse_poly("u[1,1] + u[3,1]", su2()).unwrap_err();
        assert_eq!((err.line, err.col), (1, 12));
        assert!(err.message.contains("out of range"), "{}", err.message);
    }

    #[test]
    fn unknown_identifier_is_rejected() {
        let err = parse_poly("u[1,1] + w", su2()).unwrap_err();
        assert!(err.message.contains("unknown identifier 'w'"), "{}", err.message);
    }

    #[test]
    fn antipode_and_nesting() {
        let s = su3();
        let p = parse_poly("S(u[1,2]*u[2,3]) - S(u[1,2])", s).unwrap();
        let direct = g(s, 1, 2).mul(&g(s, 2, 3)).antipode().unwrap().sub(&g(s, 1, 2).antipode().unwrap());
        assert_eq!(p, direct);
    }

    #[test]
    fn detinv_collapses_to_one_in_the_special_unitary_quotient() {
        let s = su2();
        assert_eq!(parse_poly("detinv*u[1,1]", s).unwrap(), g(s, 1, 1));
        let m = AlgebraSpec::matrix(2, 2);
        let err = parse_poly("detinv", m).unwrap_err();
        assert!(err.message.contains("not available"), "{}", err.message);
    }

    #[test]
    fn sphere_coordinates_parse_to_their_definitions() {
        let s = su3();
        assert_eq!(parse_poly("z[2]", s).unwrap(), sphere_z(s, 2).unwrap());
        assert_eq!(parse_poly("zs[3]", s).unwrap(), sphere_zs(s, 3).unwrap());
        assert_eq!(parse_poly("zz[1,3]", s).unwrap(), sphere_zz(s, 1, 3).unwrap());
    }

    #[test]
    fn letters_alias_the_size_two_generators() {
        let s = su2();
        let lettered = parse_poly("a*d - q b c", s).unwrap();
        let canonical = parse_poly("u[1,1]*u[2,2] - q*u[1,2]*u[2,1]", s).unwrap();
        assert_eq!(lettered, canonical);
        assert!(parse_poly("a", su3()).is_err());
    }

    #[test]
    fn frame_atoms_are_not_algebra_elements() {
        let err = parse_poly("u[1,1] e0", su2()).unwrap_err();
        assert!(err.message.contains("one-form term"), "{}", err.message);
    }

    #[test]
    fn forms_parse_coefficient_then_frame() {
        let s = su2();
        let f = parse_form("u[1,1] e0 + u[1,2] ep[1]", s).unwrap();
        let expect = OneForm::frame(s, idx_e0(2))
            .left_mul(&g(s, 1, 1))
            .add(&OneForm::frame(s, idx_ep(2, 1)).left_mul(&g(s, 1, 2)));
        assert_eq!(f, expect);
        let bare = parse_form("- em[1] + (q - q^-1)*u[1,2] e0", s).unwrap();
        let expect2 = OneForm::frame(s, idx_em(2, 1))
            .neg()
            .add(&OneForm::frame(s, idx_e0(2)).left_mul(&parse_poly("(q - q^-1)*u[1,2]", s).unwrap()));
        assert_eq!(bare, expect2);
    }

    #[test]
    fn zero_parses_as_the_zero_form() {
        let s = su2();
        assert_eq!(parse_form("0", s).unwrap(), OneForm::zero(s));
        let err = parse_form("u[1,1]", s).unwrap_err();
        assert!(err.message.contains("frame atom"), "{}", err.message);
    }

    #[test]
    fn frame_index_range_is_checked() {
        let err = parse_form("ep[2]", su2()).unwrap_err();
        assert!(err.message.contains("frame index 2 is out of range"), "{}", err.message);
        parse_form("ep[2]", su3()).unwrap();
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        let err = parse_poly("u[1,1] ]", su2()).unwrap_err();
        assert!(err.message.contains("unexpected trailing"), "{}", err.message);
        let err = parse_form("e0 e0", su2()).unwrap_err();
        assert!(err.message.contains("between one-form terms"), "{}", err.message);
    }

    #[test]
    fn positions_track_lines() {
        let err = parse_poly("u[1,1] +\n  u[9,1]", su2()).unwrap_err();
        assert_eq!((err.line, err.col), (2, 5));
    }
}
