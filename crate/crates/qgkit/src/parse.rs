//! Expression grammar for scalars and noncommutative polynomials.
//!
//! ```text
//! expr    := [+|-] term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := primary ["^" exp]
//! exp     := int | "-" int | "(" ["-"] int ["/" int] ")"
//! primary := int | ident | "(" expr ")"
//! ```
//!
//! `q` is reserved for the deformation parameter and is the only base that
//! takes a fractional exponent. Products need an explicit `*`; division is
//! by scalars only.

use std::fmt;

use qgkit_core::scalar::Rational;
use qgkit_core::{GeneratorTable, NcPoly, RootOrder, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("number `{s}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, line0: usize, col0: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (line0, col0);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        let single = match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
                continue;
            }
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            col += 1;
            out.push(Spanned { tok, line: l, column: k });
            continue;
        }
        let mut s = String::new();
        if c.is_ascii_digit() {
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Spanned { tok: Tok::Int(s), line: l, column: k });
        } else if c.is_alphabetic() || c == '_' {
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Spanned { tok: Tok::Ident(s), line: l, column: k });
        } else {
            return Err(ParseError { line: l, column: k, message: format!("unexpected character `{c}`") });
        }
    }
    out.push(Spanned { tok: Tok::End, line, column: col });
    Ok(out)
}

/// How identifiers that are not yet generators are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unknown {
    Reject,
    /// Append to the table in order of first appearance.
    Declare,
}

pub struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    order: RootOrder,
    table: &'a mut GeneratorTable,
    unknown: Unknown,
}

impl<'a> Parser<'a> {
    /// A parser over `text`, whose first character sits at `line`:`column`.
    pub fn new(
        text: &str,
        line: usize,
        column: usize,
        order: RootOrder,
        table: &'a mut GeneratorTable,
        unknown: Unknown,
    ) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text, line, column)?, pos: 0, order, table, unknown })
    }

    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, message: String) -> ParseError {
        ParseError { line: at.line, column: at.column, message }
    }

    fn expect(&mut self, tok: Tok) -> Result<Spanned, ParseError> {
        let t = self.bump();
        if t.tok == tok {
            Ok(t)
        } else {
            Err(self.error_at(&t, format!("expected {}, found {}", tok.describe(), t.tok.describe())))
        }
    }

    /// Parses everything up to the end of the text.
    pub fn parse_all(mut self) -> Result<NcPoly, ParseError> {
        let p = self.expr()?;
        let t = self.peek().clone();
        match &t.tok {
            Tok::End => Ok(p),
            Tok::Ident(_) | Tok::Int(_) | Tok::LParen => {
                Err(self.error_at(&t, format!("expected operator, found {} (products need `*`)", t.tok.describe())))
            }
            other => Err(self.error_at(&t, format!("unexpected {}", other.describe()))),
        }
    }

    fn expr(&mut self) -> Result<NcPoly, ParseError> {
        let mut acc = match self.peek().tok {
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            Tok::Minus => {
                self.bump();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NcPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.peek().clone();
                    let d = self.unary()?;
                    let s = as_scalar(&d).ok_or_else(|| self.error_at(&at, "divisor must be a scalar".into()))?;
                    let inv = s.inv().map_err(|_| self.error_at(&at, "division by zero".into()))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<NcPoly, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<NcPoly, ParseError> {
        let start = self.peek().clone();
        let is_q = start.tok == Tok::Ident("q".into());
        if is_q {
            self.bump();
            if self.peek().tok != Tok::Caret {
                return Ok(NcPoly::constant(Scalar::q(self.order)));
            }
            self.bump();
            let (num, den) = self.exponent()?;
            return Scalar::q_pow(num, den, self.order)
                .map(NcPoly::constant)
                .map_err(|e| self.error_at(&start, format!("q^({num}/{den}): {e}")));
        }
        let base = self.primary()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        let (num, den) = self.exponent()?;
        if den != 1 {
            return Err(self.error_at(&caret, "fractional exponents are only allowed on q".into()));
        }
        if num >= 0 {
            let mut acc = NcPoly::one();
            for _ in 0..num {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        let s = as_scalar(&base).ok_or_else(|| self.error_at(&caret, "negative power of a non-scalar".into()))?;
        s.pow(num).map(NcPoly::constant).map_err(|_| self.error_at(&caret, "division by zero".into()))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(s) => s.parse().map_err(|_| self.error_at(&t, format!("exponent `{s}` out of range"))),
            other => Err(self.error_at(&t, format!("expected integer, found {}", other.describe()))),
        }
    }

    fn exponent(&mut self) -> Result<(i64, i64), ParseError> {
        match self.peek().tok {
            Tok::LParen => {
                self.bump();
                let neg = if self.peek().tok == Tok::Minus {
                    self.bump();
                    true
                } else {
                    false
                };
                let num = self.int()?;
                let den = if self.peek().tok == Tok::Slash {
                    self.bump();
                    let at = self.peek().clone();
                    let d = self.int()?;
                    if d == 0 {
                        return Err(self.error_at(&at, "zero exponent denominator".into()));
                    }
                    d
                } else {
                    1
                };
                self.expect(Tok::RParen)?;
                Ok((if neg { -num } else { num }, den))
            }
            Tok::Minus => {
                self.bump();
                Ok((-self.int()?, 1))
            }
            _ => Ok((self.int()?, 1)),
        }
    }

    fn primary(&mut self) -> Result<NcPoly, ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(s) => {
                let r: Rational = s.parse().map_err(|_| self.error_at(&t, format!("bad number `{s}`")))?;
                Ok(NcPoly::constant(Scalar::from_rational(r).with_order(self.order).expect("constant")))
            }
            Tok::Ident(name) => match self.table.id(name) {
                Some(g) => Ok(NcPoly::generator(g)),
                None if self.unknown == Unknown::Declare => {
                    let g = self.table.push(name).map_err(|e| self.error_at(&t, e.to_string()))?;
                    Ok(NcPoly::generator(g))
                }
                None => Err(self.error_at(&t, format!("unknown generator `{name}`"))),
            },
            Tok::LParen => {
                let p = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            other => Err(self.error_at(&t, format!("expected a factor, found {}", other.describe()))),
        }
    }
}

fn as_scalar(p: &NcPoly) -> Option<Scalar> {
    if p.is_zero() {
        return Some(Scalar::zero());
    }
    match p.terms().collect::<Vec<_>>().as_slice() {
        [(w, c)] if w.is_empty() => Some((*c).clone()),
        _ => None,
    }
}

/// Parses `text` with generators from `table`, rejecting unknown names.
pub fn parse_expression(text: &str, order: RootOrder, table: &GeneratorTable) -> Result<NcPoly, ParseError> {
    let mut t = table.clone();
    Parser::new(text, 1, 1, order, &mut t, Unknown::Reject)?.parse_all()
}

/// Parses a scalar expression (no generators).
pub fn parse_scalar(text: &str, order: RootOrder) -> Result<Scalar, ParseError> {
    let p = parse_expression(text, order, &GeneratorTable::default())?;
    Ok(as_scalar(&p).expect("no generators"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m6() -> RootOrder {
        RootOrder::DEFAULT
    }

    fn table() -> GeneratorTable {
        GeneratorTable::new(&["b", "d", "e"]).unwrap()
    }

    #[test]
    fn binomial() {
        let t = table();
        let p = parse_expression("e*b - q^(1)*b*e", m6(), &t).unwrap();
        let expect = NcPoly::term(&[2, 0], Scalar::one()).sub(&NcPoly::term(&[0, 2], Scalar::q(m6())));
        assert_eq!(p, expect);
        assert_eq!(p.display(&t).to_string(), "e*b - q^(1)*b*e");
    }

    #[test]
    fn fractional_power_in_units() {
        let t = table();
        let p = parse_expression("q^(2/3)*d", m6(), &t).unwrap();
        assert_eq!(p, NcPoly::term(&[1], Scalar::t_pow(4, m6())));
        let err = parse_expression("q^(1/4)", m6(), &t).unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
    }

    #[test]
    fn juxtaposition_is_rejected() {
        let err = parse_expression("e b", m6(), &table()).unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
        assert!(err.message.contains("`*`"));
    }

    #[test]
    fn error_positions() {
        let t = table();
        let err = parse_expression("e*b +\n  * d", m6(), &t).unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        let err = parse_expression("e*w", m6(), &t).unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
        assert!(parse_expression("(e*b", m6(), &t).is_err());
        assert!(parse_expression("e/b", m6(), &t).is_err());
        assert!(parse_expression("e/(q - q)", m6(), &t).is_err());
        assert!(parse_expression("e $ b", m6(), &t).is_err());
    }

    #[test]
    fn scalars() {
        let q = Scalar::q(m6());
        assert_eq!(parse_scalar("q - q^(-1)", m6()).unwrap(), &q - &q.inv().unwrap());
        assert_eq!(parse_scalar("3/2", m6()).unwrap(), Scalar::from_ratio(3, 2));
        assert_eq!(parse_scalar("-3/2*q^(1)", m6()).unwrap(), &Scalar::from_ratio(-3, 2) * &q);
        assert_eq!(parse_scalar("(q^(2) - 1)^2", m6()).unwrap(), (&q * &q - Scalar::one()).pow(2).unwrap());
        assert_eq!(parse_scalar("q^-2", m6()).unwrap(), q.pow(-2).unwrap());
        let frac = (&q - Scalar::one()).inv().unwrap();
        assert_eq!(parse_scalar(&frac.to_string(), m6()).unwrap(), frac);
    }

    #[test]
    fn declaring_parser() {
        let mut t = GeneratorTable::default();
        let p = Parser::new("A*B - q^(2)*B*A - 1", 1, 1, m6(), &mut t, Unknown::Declare).unwrap().parse_all().unwrap();
        assert_eq!(t.names(), ["A", "B"]);
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn powers_of_generators() {
        let t = table();
        assert_eq!(parse_expression("e^3", m6(), &t).unwrap(), NcPoly::term(&[2, 2, 2], Scalar::one()));
        assert!(parse_expression("e^(1/2)", m6(), &t).is_err());
        assert!(parse_expression("e^-1", m6(), &t).is_err());
    }
}
