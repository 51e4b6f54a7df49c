//! Text input: polynomials and weight vectors.
//!
//! Polynomial grammar:
//!
//! ```text
//! expr     := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := rational | var | '(' expr ')'
//! var      := 'x' nat            (or a declared alias)
//! rational := int ('/' nat)?
//! ```
//!
//! Juxtaposition is not multiplication: `2x0` is rejected.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::MAX_VARS;
use crate::poly::MultiPoly;

/// Parses `text` as a polynomial in `x0, …, x{nvars-1}` over `field`.
pub fn parse_poly<K: Field>(text: &str, nvars: usize, field: &K) -> Result<MultiPoly<K>> {
    if nvars > MAX_VARS {
        return Err(Error::TooManyVariables(nvars));
    }
    Parser::new(text, nvars, None, field).parse()
}

/// Like [`parse_poly`], with `names[i]` accepted as a spelling of `x_i`.
pub fn parse_poly_with_vars<K: Field>(text: &str, names: &[&str], field: &K) -> Result<MultiPoly<K>> {
    if names.len() > MAX_VARS {
        return Err(Error::TooManyVariables(names.len()));
    }
    Parser::new(text, names.len(), Some(names), field).parse()
}

/// Parses comma-separated nonzero rationals such as `1,-1,2/3`.
pub fn parse_weights(text: &str) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    for (index, raw) in text.split(',').enumerate() {
        let q = parse_rational(raw.trim())?;
        if q.is_zero() {
            return Err(Error::ZeroWeight { index });
        }
        out.push(q);
    }
    Ok(out)
}

/// A single signed rational `[+-]int[/nat]`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::MalformedRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix(['-', '+']).unwrap_or(num);
    if !digits(unsigned) || !digits(den) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

struct Parser<'a, K: Field> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    nvars: usize,
    names: Option<&'a [&'a str]>,
    field: &'a K,
    lex_error: Option<Error>,
}

impl<'a, K: Field> Parser<'a, K> {
    fn new(text: &'a str, nvars: usize, names: Option<&'a [&'a str]>, field: &'a K) -> Self {
        let mut p = Parser { toks: Vec::new(), pos: 0, nvars, names, field, lex_error: None };
        p.lex(text);
        p
    }

    fn lex(&mut self, text: &str) {
        let chars: Vec<char> = text.chars().collect();
        let (mut line, mut col) = (1, 1);
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let start = (line, col);
            let single = match c {
                '+' => Some(Tok::Plus),
                '-' => Some(Tok::Minus),
                '*' => Some(Tok::Star),
                '^' => Some(Tok::Caret),
                '/' => Some(Tok::Slash),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                _ => None,
            };
            if let Some(t) = single {
                self.toks.push((t, start.0, start.1));
                i += 1;
                col += 1;
            } else if c == '\n' {
                i += 1;
                line += 1;
                col = 1;
            } else if c.is_whitespace() {
                i += 1;
                col += 1;
            } else if c.is_ascii_digit() {
                let j = (i..chars.len()).find(|&j| !chars[j].is_ascii_digit()).unwrap_or(chars.len());
                let s: String = chars[i..j].iter().collect();
                self.toks.push((Tok::Int(s.parse().unwrap()), start.0, start.1));
                col += j - i;
                i = j;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let j = (i..chars.len())
                    .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                    .unwrap_or(chars.len());
                let s: String = chars[i..j].iter().collect();
                self.toks.push((Tok::Ident(s), start.0, start.1));
                col += j - i;
                i = j;
            } else {
                self.lex_error = Some(Error::Parse {
                    line,
                    column: col,
                    message: format!("unexpected character `{c}`"),
                });
                return;
            }
        }
        self.toks.push((Tok::End, line, col));
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (_, line, column) = self.toks[self.pos];
        Err(Error::Parse { line, column, message: message.into() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn parse(mut self) -> Result<MultiPoly<K>> {
        if let Some(e) = self.lex_error.take() {
            return Err(e);
        }
        let p = self.expr()?;
        match self.peek() {
            Tok::End => Ok(p),
            Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                self.err("implicit multiplication is not allowed; use `*`")
            }
            t => {
                let msg = format!("unexpected token {t:?}");
                self.err(msg)
            }
        }
    }

    fn expr(&mut self) -> Result<MultiPoly<K>> {
        let mut negate = false;
        match self.peek() {
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<K>> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly<K>> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(n) => {
                let e: u32 = match u32::try_from(&n) {
                    Ok(e) if e <= 4096 => e,
                    _ => return self.err("exponent too large"),
                };
                self.bump();
                Ok(base.pow(e))
            }
            Tok::Minus => self.err("negative exponents are not allowed"),
            _ => self.err("expected a natural-number exponent after `^`"),
        }
    }

    fn base(&mut self) -> Result<MultiPoly<K>> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let mut q = BigRational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            self.bump();
                            q /= BigRational::from_integer(d);
                        }
                        Tok::Int(_) => return self.err("zero denominator"),
                        _ => return self.err("expected a denominator after `/`"),
                    }
                }
                let c = self.field.from_rational(&q)?;
                Ok(MultiPoly::constant(self.field, self.nvars, c))
            }
            Tok::Ident(name) => {
                let index = self.resolve(&name)?;
                self.bump();
                Ok(MultiPoly::var(self.field, self.nvars, index))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => self.err("unexpected end of input"),
            t => {
                let msg = format!("unexpected token {t:?}");
                self.err(msg)
            }
        }
    }

    fn resolve(&self, name: &str) -> Result<usize> {
        if let Some(names) = self.names {
            if let Some(i) = names.iter().position(|n| *n == name) {
                return Ok(i);
            }
        }
        if let Some(digits) = name.strip_prefix('x') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                if let Ok(k) = digits.parse::<usize>() {
                    if k < self.nvars {
                        return Ok(k);
                    }
                }
            }
        }
        self.err(format!("unknown variable `{name}` ({} variables declared)", self.nvars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::Monomial;

    #[test]
    fn dolgachev_curves_parse() {
        let conic = parse_poly("x0^2 + x1^2 + x2^2", 3, &Rationals).unwrap();
        assert_eq!(conic.len(), 3);
        assert!(conic.is_homogeneous());
        let triangle = parse_poly("x0*x1*x2", 3, &Rationals).unwrap();
        assert_eq!(triangle.terms().len(), 1);
        assert_eq!(triangle.terms()[0].0, Monomial::from_exponents(&[1, 1, 1]));
        let tangent = parse_poly("x2*(x1^2 - x0*x2)", 3, &Rationals).unwrap();
        assert_eq!(tangent, parse_poly("x1^2*x2 - x0*x2^2", 3, &Rationals).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("x0 +\n  x5", 3, &Rationals) {
            Err(Error::Parse { line: 2, column: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("2x0", 1, &Rationals), Err(Error::Parse { column: 2, .. })));
        assert!(matches!(parse_poly("x0^-1", 1, &Rationals), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x0 $ 1", 1, &Rationals), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_poly("(x0", 1, &Rationals), Err(Error::Parse { .. })));
        let f7 = PrimeField::new(7).unwrap();
        assert!(matches!(parse_poly("1/14*x0", 1, &f7), Err(Error::DenominatorDivisible { .. })));
    }

    #[test]
    fn rational_coefficients() {
        let p = parse_poly("6/4*x0 - -1", 1, &Rationals);
        assert!(p.is_err(), "double sign is outside the grammar");
        let p = parse_poly("6/4*x0 - 1", 1, &Rationals).unwrap();
        assert_eq!(p.to_string(), "3/2*x0 - 1");
        let f = PrimeField::new(1_000_000_007).unwrap();
        let half = parse_poly("1/2", 0, &f).unwrap();
        assert_eq!(half.terms()[0].1, 500_000_004);
    }

    #[test]
    fn aliases() {
        let p = parse_poly_with_vars("x*y - z^2", &["x", "y", "z"], &Rationals).unwrap();
        assert_eq!(p, parse_poly("x0*x1 - x2^2", 3, &Rationals).unwrap());
    }

    #[test]
    fn weights() {
        let one = BigRational::from_integer(1.into());
        assert_eq!(parse_weights("1,1,1").unwrap(), vec![one.clone(); 3]);
        assert_eq!(parse_weights("1,-1,1").unwrap(), vec![one.clone(), -one.clone(), one.clone()]);
        assert_eq!(
            parse_weights(" 2/3 , -4/6").unwrap(),
            vec![BigRational::new(2.into(), 3.into()), BigRational::new((-2).into(), 3.into())]
        );
        assert_eq!(parse_weights("1,0"), Err(Error::ZeroWeight { index: 1 }));
        assert!(matches!(parse_weights("1,a"), Err(Error::MalformedRational(_))));
        assert!(matches!(parse_weights("1/0"), Err(Error::MalformedRational(_))));
    }
}
