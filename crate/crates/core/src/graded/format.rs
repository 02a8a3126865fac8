//! Text format for graded algebras:
//!
//! ```text
//! monoid dim 2;
//! truncation 2 weights 1 1;
//! component 0,0 size 1;
//! component 1,0 size 1;
//! label (1,0,0) x;
//! mult (1,0,0)*(1,0,0) = 0;
//! ```
//!
//! A basis element is written `(s₁,…,s_k,i)`: its grade, then its index in
//! the component. Without a `truncation` line the bound is the largest
//! total degree of a component. Unlisted products are zero.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use super::{grade_string, BasisElem, Grade, GradedAlgebra, StructureConstants, Truncation};
use crate::error::{Error, Result};
use crate::trop::{format_rational, parse_rational};
use crate::Rational;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    line_start: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: self.line,
            column: self.pos - self.line_start + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c == '#' {
                while let Some(c) = self.text[self.pos..].chars().next() {
                    if c == '\n' {
                        break;
                    }
                    self.pos += c.len_utf8();
                }
            } else if c.is_whitespace() {
                if c == '\n' {
                    self.line += 1;
                    self.line_start = self.pos + 1;
                }
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn word(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_alphanumeric() || c == '_' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        if start == self.pos {
            return self.err("expected a word");
        }
        Ok(&self.text[start..self.pos])
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let save = (self.pos, self.line, self.line_start);
        match self.word() {
            Ok(w) if w == kw => Ok(()),
            _ => {
                (self.pos, self.line, self.line_start) = save;
                self.err(format!("expected '{kw}'"))
            }
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.text[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        match self.text[start..self.pos].parse() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.err("expected a nonnegative integer")
            }
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        while self.text[self.pos..].starts_with(|c: char| c.is_ascii_digit() || c == '/') {
            self.pos += 1;
        }
        match parse_rational(&self.text[start..self.pos]) {
            Ok(q) => Ok(q),
            Err(_) => {
                self.pos = start;
                self.err("expected a rational number")
            }
        }
    }

    /// `(s₁,…,s_k,i)`
    fn basis_elem(&mut self, rank: usize) -> Result<BasisElem> {
        self.expect('(')?;
        let mut parts = vec![self.number()?];
        while self.eat(',') {
            parts.push(self.number()?);
        }
        self.expect(')')?;
        if parts.len() != rank + 1 {
            return self.err(format!(
                "basis element needs {} entries, found {}",
                rank + 1,
                parts.len()
            ));
        }
        let index = parts.pop().unwrap() as usize;
        Ok(BasisElem::new(parts, index))
    }

    fn grade(&mut self, rank: usize) -> Result<Grade> {
        let mut s = vec![self.number()?];
        while self.eat(',') {
            s.push(self.number()?);
        }
        if s.len() != rank {
            return self.err(format!("grade needs {rank} entries, found {}", s.len()));
        }
        Ok(s)
    }

    /// `0` or `[±] [c*] elem (± [c*] elem)*`
    fn combination(&mut self, rank: usize) -> Result<Vec<(BasisElem, Rational)>> {
        if self.peek() == Some('0') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if first || self.eat('+') {
                false
            } else {
                break;
            };
            first = false;
            let c = if self.peek() == Some('(') {
                Rational::one()
            } else {
                let c = self.rational()?;
                self.expect('*')?;
                c
            };
            let e = self.basis_elem(rank)?;
            terms.push((e, if negative { -c } else { c }));
        }
        Ok(terms)
    }
}

pub fn parse_graded_algebra(text: &str) -> Result<GradedAlgebra> {
    let mut cur = Cursor {
        text,
        pos: 0,
        line: 1,
        line_start: 0,
    };
    cur.keyword("monoid")?;
    cur.keyword("dim")?;
    let rank = cur.number()? as usize;
    cur.expect(';')?;
    let mut truncation: Option<Truncation> = None;
    let mut components: BTreeMap<Grade, usize> = BTreeMap::new();
    let mut labels: BTreeMap<BasisElem, String> = BTreeMap::new();
    let mut structure = StructureConstants::new();
    while !cur.at_end() {
        let kw = cur.word()?;
        match kw {
            "truncation" => {
                let bound = cur.number()?;
                cur.keyword("weights")?;
                let weights = (0..rank).map(|_| cur.number()).collect::<Result<Vec<_>>>()?;
                truncation = Some(Truncation {
                    bound,
                    degree_weights: weights,
                });
            }
            "component" => {
                let s = cur.grade(rank)?;
                cur.keyword("size")?;
                let m = cur.number()? as usize;
                if components.insert(s, m).is_some() {
                    return cur.err("component listed twice");
                }
            }
            "label" => {
                let e = cur.basis_elem(rank)?;
                let name = cur.word_until_semicolon()?;
                labels.insert(e, name);
            }
            "mult" => {
                let a = cur.basis_elem(rank)?;
                cur.expect('*')?;
                let b = cur.basis_elem(rank)?;
                cur.expect('=')?;
                let terms = cur.combination(rank)?;
                if structure.insert((a, b), terms).is_some() {
                    return cur.err("product listed twice");
                }
            }
            other => return cur.err(format!("unknown statement '{other}'")),
        }
        cur.expect(';')?;
    }
    let truncation = truncation.unwrap_or_else(|| Truncation {
        bound: components.keys().map(|s| s.iter().sum::<u32>()).max().unwrap_or(0),
        degree_weights: vec![1; rank],
    });
    GradedAlgebra::new(rank, components, structure, truncation, labels)
}

impl Cursor<'_> {
    fn word_until_semicolon(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c == ';' || c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
        if start == self.pos {
            return self.err("expected a label");
        }
        Ok(self.text[start..self.pos].to_string())
    }
}

fn format_combination(terms: &[(BasisElem, Rational)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (e, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        match (n, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            out.push_str(&format_rational(&mag));
            out.push('*');
        }
        out.push_str(&e.to_string());
    }
    out
}

/// Prints `algebra` so that [`parse_graded_algebra`] reads it back.
/// Products are listed once per unordered basis pair, in basis order.
pub fn format_graded_algebra(algebra: &GradedAlgebra) -> String {
    let t = algebra.truncation();
    let mut out = format!("monoid dim {};\n", algebra.rank());
    let weights: Vec<String> = t.degree_weights.iter().map(ToString::to_string).collect();
    out.push_str(&format!("truncation {} weights {};\n", t.bound, weights.join(" ")));
    let mut seen: Vec<&Grade> = Vec::new();
    for b in algebra.basis() {
        if !seen.contains(&&b.grade) {
            seen.push(&b.grade);
            out.push_str(&format!(
                "component {} size {};\n",
                grade_string(&b.grade),
                algebra.component_size(&b.grade)
            ));
        }
    }
    for (k, b) in algebra.basis().iter().enumerate() {
        if let Some(l) = algebra.label(k) {
            out.push_str(&format!("label {b} {l};\n"));
        }
    }
    let n = algebra.dim();
    for i in 0..n {
        for j in i..n {
            if let Some(p) = algebra.basis_product(i, j) {
                if !p.is_empty() {
                    let terms: Vec<(BasisElem, Rational)> = p
                        .iter()
                        .rev()
                        .map(|(k, c)| (algebra.basis()[*k].clone(), c.clone()))
                        .collect();
                    out.push_str(&format!(
                        "mult {}*{} = {};\n",
                        algebra.basis()[i],
                        algebra.basis()[j],
                        format_combination(&terms)
                    ));
                }
            }
        }
    }
    out
}
