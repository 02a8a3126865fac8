//! Tokenizer and recursive-descent parser for the presentation grammar:
//!
//! ```text
//! # comment
//! ring x y z;
//! ideal x^2 - y, x^3 - z;
//! coeffval trivial;            # or: coeffval tadic t 1;
//! weight 1 2 3;                # may repeat
//! ```

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{CoeffValuation, Polynomial, Presentation, RingContext};
use crate::error::{Error, Result};
use crate::trop::WeightVector;
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: l,
                column: c,
            })
        };
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
                continue;
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    col += 1;
                }
                push(&mut out, Tok::Int(s.parse().expect("digits")));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    col += 1;
                }
                push(&mut out, Tok::Ident(s));
                continue;
            }
            _ => {
                let tok = match ch {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    other => {
                        return Err(Error::Syntax {
                            line: l,
                            column: c,
                            message: format!("unexpected character `{other}`"),
                        })
                    }
                };
                push(&mut out, tok);
                chars.next();
            }
        }
        col += 1;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ring: Option<&'a RingContext>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ring: Option<&'a RingContext>) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            ring,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            self.err(&t, format!("expected {what}"))
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if &self.peek().tok == want {
            self.next();
            true
        } else {
            false
        }
    }

    fn ring(&self) -> &'a RingContext {
        self.ring.expect("ring set before polynomials are parsed")
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?)?;
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.mul(&self.unary()?)?;
            } else if self.peek().tok == Tok::Slash {
                let t = self.next();
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return self.err(&t, "division only by a nonzero constant");
                }
                let c = d.coeff(&super::ExponentVector::zeros(self.ring().dim()));
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat(&Tok::Minus) {
            return Ok(self.unary()?.neg());
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let t = self.next();
            match t.tok {
                Tok::Int(ref n) => match n.to_u32() {
                    Some(k) => Ok(base.pow(k)),
                    None => self.err(&t, "exponent too large"),
                },
                _ => self.err(&t, "expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let t = self.next();
        let ring = self.ring();
        match t.tok {
            Tok::Int(n) => Ok(Polynomial::constant(ring, Rational::from_integer(n))),
            Tok::Ident(ref name) => match ring.index_of(name) {
                Some(i) => Ok(Polynomial::var(ring, i)),
                None => Err(Error::UnknownVariable {
                    name: name.clone(),
                    line: t.line,
                    column: t.column,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.err(&t, "expected a number, variable or `(`"),
        }
    }

    // rational := ['-'] int ['/' int]
    fn rational(&mut self) -> Result<Rational> {
        let neg = self.eat(&Tok::Minus);
        let t = self.next();
        let n = match t.tok {
            Tok::Int(n) => n,
            _ => return self.err(&t, "expected a rational number"),
        };
        let mut q = Rational::from_integer(n);
        if self.eat(&Tok::Slash) {
            let t = self.next();
            match t.tok {
                Tok::Int(d) if !d.is_zero() => q /= Rational::from_integer(d),
                _ => return self.err(&t, "expected a nonzero denominator"),
            }
        }
        Ok(if neg { -q } else { q })
    }

    fn ring_stmt(&mut self) -> Result<RingContext> {
        let kw = self.next();
        if kw.tok != Tok::Ident("ring".into()) {
            return self.err(&kw, "expected `ring`");
        }
        let mut vars: Vec<String> = Vec::new();
        loop {
            let t = self.next();
            match t.tok {
                Tok::Ident(name) => {
                    if vars.contains(&name) {
                        return Err(Error::DuplicateVariable {
                            name,
                            line: t.line,
                            column: t.column,
                        });
                    }
                    vars.push(name);
                }
                Tok::Semi if !vars.is_empty() => break,
                _ => return self.err(&t, "expected a variable name or `;`"),
            }
        }
        RingContext::new(vars)
    }
}

/// Parses `ring <ident>+ ;`.
pub fn parse_ring(text: &str) -> Result<RingContext> {
    let mut p = Parser::new(text, None)?;
    let ring = p.ring_stmt()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(ring)
}

/// Parses a polynomial expression over `ring`.
pub fn parse_poly(ring: &RingContext, text: &str) -> Result<Polynomial> {
    let mut p = Parser::new(text, Some(ring))?;
    let f = p.expr()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(f)
}

/// Everything a presentation file can declare.
#[derive(Clone, Debug)]
pub struct Document {
    pub presentation: Presentation,
    pub weights: Vec<WeightVector>,
}

/// Parses a whole presentation file.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut head = Parser::new(text, None)?;
    let ring = head.ring_stmt()?;
    let mut p = Parser {
        toks: head.toks,
        pos: head.pos,
        ring: Some(&ring),
    };
    let mut ideal = Vec::new();
    let mut weights = Vec::new();
    let mut coeffval = CoeffValuation::Trivial;
    loop {
        let t = p.next();
        let kw = match &t.tok {
            Tok::Eof => break,
            Tok::Ident(s) => s.clone(),
            _ => return p.err(&t, "expected a statement keyword"),
        };
        match kw.as_str() {
            "ideal" => {
                if !p.eat(&Tok::Semi) {
                    loop {
                        ideal.push(p.expr()?);
                        if p.eat(&Tok::Comma) {
                            continue;
                        }
                        p.expect(Tok::Semi, "`,` or `;`")?;
                        break;
                    }
                }
            }
            "weight" => {
                let mut ws = Vec::new();
                while p.peek().tok != Tok::Semi {
                    if p.peek().tok == Tok::Eof {
                        let e = p.peek().clone();
                        return p.err(&e, "expected `;`");
                    }
                    ws.push(p.rational()?);
                }
                p.next();
                if ws.len() != ring.dim() {
                    return p.err(&t, format!("weight has {} entries, ring has {}", ws.len(), ring.dim()));
                }
                weights.push(WeightVector::new(ws));
            }
            "coeffval" => {
                let m = p.next();
                match m.tok {
                    Tok::Ident(ref s) if s == "trivial" => coeffval = CoeffValuation::Trivial,
                    Tok::Ident(ref s) if s == "tadic" => {
                        let v = p.next();
                        let name = match v.tok {
                            Tok::Ident(name) => name,
                            _ => return p.err(&v, "expected the uniformizer variable"),
                        };
                        let index = ring.index_of(&name).ok_or(Error::UnknownVariable {
                            name,
                            line: v.line,
                            column: v.column,
                        })?;
                        let weight = p.rational()?;
                        coeffval = CoeffValuation::TAdic { index, weight };
                    }
                    _ => return p.err(&m, "expected `trivial` or `tadic`"),
                }
                p.expect(Tok::Semi, "`;`")?;
            }
            "ring" => return p.err(&t, "ring declared twice"),
            other => return p.err(&t, format!("unknown statement `{other}`")),
        }
    }
    Ok(Document {
        presentation: Presentation::new(ring.clone(), ideal, coeffval)?,
        weights,
    })
}

/// Parses a whitespace-separated list of rationals such as `"1 -1/2 3"`.
pub fn parse_weight(ring_dim: usize, text: &str) -> Result<WeightVector> {
    let mut p = Parser::new(text, None)?;
    let mut ws = Vec::new();
    while p.peek().tok != Tok::Eof {
        ws.push(p.rational()?);
    }
    if ws.len() != ring_dim {
        return Err(Error::DimensionMismatch {
            expected: ring_dim,
            found: ws.len(),
        });
    }
    Ok(WeightVector::new(ws))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExponentVector;

    #[test]
    fn rings() {
        assert_eq!(parse_ring("ring x y z;").unwrap().vars(), ["x", "y", "z"]);
        assert_eq!(parse_ring("ring t x;").unwrap().vars(), ["t", "x"]);
        assert!(matches!(
            parse_ring("ring x x;"),
            Err(Error::DuplicateVariable { ref name, line: 1, column: 8 }) if name == "x"
        ));
        assert!(matches!(parse_ring("ring ;"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn polys() {
        let r = parse_ring("ring x y;").unwrap();
        let f = parse_poly(&r, "x^2*y - 3*y + 1").unwrap();
        let e = |a, b| ExponentVector::new(vec![a, b]);
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.coeff(&e(2, 1)), Rational::from_integer(1.into()));
        assert_eq!(f.coeff(&e(0, 1)), Rational::from_integer((-3).into()));
        assert_eq!(f.coeff(&e(0, 0)), Rational::from_integer(1.into()));

        let g = parse_poly(&r, "x + y - x").unwrap();
        assert_eq!(g, Polynomial::var(&r, 1));

        assert!(matches!(
            parse_poly(&r, "x + w"),
            Err(Error::UnknownVariable { ref name, column: 5, .. }) if name == "w"
        ));
        assert!(matches!(parse_poly(&r, "x +"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly(&r, "x / y"), Err(Error::Syntax { .. })));
        assert_eq!(
            parse_poly(&r, "(x+1)*(x-1)").unwrap(),
            parse_poly(&r, "x^2 - 1").unwrap()
        );
        assert_eq!(parse_poly(&r, "3/2*x").unwrap(), parse_poly(&r, "x + x/2").unwrap());
    }

    #[test]
    fn documents() {
        let doc = parse_document(
            "# twisted cubic\nring x y z;\nideal x^2 - y,\n  x^3 - z;\nweight 1 2 3;\nweight 1/2 1 -3/2;\n",
        )
        .unwrap();
        assert_eq!(doc.presentation.ideal_gens().len(), 2);
        assert_eq!(doc.weights.len(), 2);
        assert_eq!(doc.weights[1].to_string(), "(1/2 1 -3/2)");

        let doc = parse_document("ring t x; coeffval tadic t -1; ideal x - t;").unwrap();
        assert_eq!(
            doc.presentation.coeff_valuation(),
            &CoeffValuation::TAdic {
                index: 0,
                weight: Rational::from_integer((-1).into())
            }
        );

        let err = parse_document("ring x y;\nideal x +;\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err:?}");
        assert!(parse_document("ring x y;\nweight 1;\n").is_err());
        assert!(parse_document("ring x;\nfoo x;\n").is_err());
        assert!(parse_document("ring x;\ncoeffval tadic q 1;\n").is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(parse_weight(2, "1 -1/2").unwrap().to_string(), "(1 -1/2)");
        assert!(parse_weight(3, "1 2").is_err());
    }
}
