//! Reading presentations, weights, graded algebras, functionals and
//! elements from files and flags.

use std::fs;

use tropval_core::graded::{
    coordinate_cross, dual_numbers, monoid_algebra, parse_graded_algebra, Element, GradedAlgebra, LexFunctional,
};
use tropval_core::poly::{parse_document, parse_weight, CoeffValuation};
use tropval_core::sl2lab::{sl2_branching_algebra, sl2_rep_ring};
use tropval_core::trop::parse_rational;
use tropval_core::{Presentation, Rational, TropicalValue, WeightVector};

use crate::Failure;

pub fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))
}

/// The presentation in `path`, its `weight` lines, and the `--coeffval`
/// override if given.
pub fn presentation(path: &str, coeffval: Option<&str>) -> Result<(Presentation, Vec<WeightVector>), Failure> {
    let doc = parse_document(&read(path)?)?;
    let p = match coeffval {
        None => doc.presentation,
        Some(text) => {
            let p = doc.presentation;
            let cv = parse_coeffval(&p, text)?;
            Presentation::new(p.ring().clone(), p.ideal_gens().to_vec(), cv)?
        }
    };
    Ok((p, doc.weights))
}

fn parse_coeffval(p: &Presentation, text: &str) -> Result<CoeffValuation, Failure> {
    let words: Vec<&str> = text.split_whitespace().collect();
    match words.as_slice() {
        ["trivial"] => Ok(CoeffValuation::Trivial),
        ["tadic", var, w] => {
            let index = p
                .ring()
                .index_of(var)
                .ok_or_else(|| Failure::usage(format!("--coeffval: unknown variable `{var}`")))?;
            Ok(CoeffValuation::TAdic {
                index,
                weight: parse_rational(w)?,
            })
        }
        _ => Err(Failure::usage(format!(
            "--coeffval expects `trivial` or `tadic <var> <rational>`, got `{text}`"
        ))),
    }
}

/// `--weight` flags if any, else the file's weights; exactly `count`.
pub fn weights(
    p: &Presentation,
    flags: &[String],
    from_file: Vec<WeightVector>,
    count: usize,
) -> Result<Vec<WeightVector>, Failure> {
    let ws = if flags.is_empty() {
        from_file
    } else {
        flags
            .iter()
            .map(|t| parse_weight(p.ring().dim(), t))
            .collect::<tropval_core::Result<Vec<_>>>()?
    };
    if ws.len() < count {
        return Err(Failure::usage(format!(
            "need {count} weight vector(s), got {}",
            ws.len()
        )));
    }
    Ok(ws)
}

const BUILTINS: &str = "monoid:<vars>, cross, dual-numbers, sl2-rep-ring, sl2-branching";

/// A builtin name or a graded-algebra file.
pub fn algebra(name: &str, truncation: u32) -> Result<GradedAlgebra, Failure> {
    let built = if let Some(vars) = name.strip_prefix("monoid:") {
        let names: Vec<&str> = vars.split(',').filter(|v| !v.is_empty()).collect();
        if names.is_empty() {
            return Err(Failure::usage("monoid: needs at least one variable name"));
        }
        monoid_algebra(&names, truncation)
    } else {
        match name {
            "cross" => coordinate_cross(truncation),
            "dual-numbers" => dual_numbers(),
            "sl2-rep-ring" => sl2_rep_ring(truncation),
            "sl2-branching" => sl2_branching_algebra(truncation),
            path => {
                let text = read(path).map_err(|f| Failure::usage(format!("{} (builtins: {BUILTINS})", f.message)))?;
                return Ok(parse_graded_algebra(&text)?);
            }
        }
    };
    Ok(built?)
}

/// Rows separated by `;`, entries by whitespace: `"0 0 0 1 0; 1 0 0 0 0"`.
pub fn functional(text: &str, rank: usize) -> Result<LexFunctional, Failure> {
    let rows = text
        .split(';')
        .map(|row| {
            let entries = row
                .split_whitespace()
                .map(parse_rational)
                .collect::<tropval_core::Result<Vec<_>>>()?;
            if entries.len() != rank {
                return Err(Failure::usage(format!(
                    "functional row `{}` has {} entries, the grading has rank {rank}",
                    row.trim(),
                    entries.len()
                )));
            }
            Ok(entries)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(LexFunctional::new(rows)?)
}

/// `x*y + x*z = 1`: a combination of basis labels (or `(s…,i)` basis
/// elements) and its value.
pub fn parse_override(algebra: &GradedAlgebra, text: &str) -> Result<(Element, TropicalValue), Failure> {
    let (lhs, rhs) = text
        .split_once('=')
        .ok_or_else(|| Failure::usage(format!("--override expects `<element> = <value>`, got `{text}`")))?;
    let value: TropicalValue = rhs.trim().parse()?;
    Ok((element(algebra, lhs)?, value))
}

pub fn element(algebra: &GradedAlgebra, text: &str) -> Result<Element, Failure> {
    let mut terms = Vec::new();
    let mut sign = Rational::from_integer(1.into());
    let mut current = String::new();
    let mut depth = 0;
    let flush = |current: &mut String, sign: &Rational, terms: &mut Vec<(usize, Rational)>| -> Result<(), Failure> {
        let t = current.trim();
        if t.is_empty() {
            return Err(Failure::usage(format!("empty term in `{text}`")));
        }
        let (coeff, label) = split_coefficient(t)?;
        let pos = basis_position(algebra, label)?;
        terms.push((pos, coeff * sign));
        current.clear();
        Ok(())
    };
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                if current.trim().is_empty() {
                    if c == '-' {
                        sign = -sign;
                    }
                } else {
                    flush(&mut current, &sign, &mut terms)?;
                    sign = Rational::from_integer(if c == '-' { -1 } else { 1 }.into());
                }
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    flush(&mut current, &sign, &mut terms)?;
    Ok(Element::from_terms(terms))
}

fn split_coefficient(term: &str) -> Result<(Rational, &str), Failure> {
    if let Some((head, rest)) = term.split_once('*') {
        if let Ok(c) = parse_rational(head.trim()) {
            return Ok((c, rest.trim()));
        }
    }
    Ok((Rational::from_integer(1.into()), term))
}

fn basis_position(algebra: &GradedAlgebra, label: &str) -> Result<usize, Failure> {
    if let Some(pos) = algebra.find_label(label) {
        return Ok(pos);
    }
    if let Some(inner) = label.strip_prefix('(').and_then(|l| l.strip_suffix(')')) {
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Failure::usage(format!("bad basis element `{label}`")))?;
        if let Some((&index, grade)) = parts.split_last() {
            let b = tropval_core::graded::BasisElem::new(grade.to_vec(), index as usize);
            if let Some(pos) = algebra.position(&b) {
                return Ok(pos);
            }
        }
    }
    Err(Failure::usage(format!("unknown basis element `{label}`")))
}
