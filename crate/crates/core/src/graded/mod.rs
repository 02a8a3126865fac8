//! Monoid-graded algebras given by structure constants, truncated at a
//! degree bound, and graded valuations on them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::trop::format_rational;
use crate::Rational;

mod check;
mod format;
mod kernel;

pub use check::{
    associated_graded, check_full_axioms, check_graded_axioms, check_lower_triangular, check_monoid_theorem,
    graded_value, zero_divisor_search, GradedValuation, LexFunctional, LowerTriangular, MonoidFailure,
    MonoidTheoremReport, ZeroDivisor,
};
pub use format::{format_graded_algebra, parse_graded_algebra};

/// Tuple of nonnegative integers labelling a graded component.
pub type Grade = Vec<u32>;

/// The `index`-th basis vector of the component of `grade`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElem {
    pub grade: Grade,
    pub index: usize,
}

impl BasisElem {
    pub fn new(grade: Grade, index: usize) -> Self {
        BasisElem { grade, index }
    }
}

impl fmt::Display for BasisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .grade
            .iter()
            .map(ToString::to_string)
            .chain(std::iter::once(self.index.to_string()))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A grade `s` is kept when `Σ dᵢ sᵢ ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub bound: u32,
    pub degree_weights: Vec<u32>,
}

impl Truncation {
    pub fn degree(&self, s: &[u32]) -> u64 {
        s.iter()
            .zip(&self.degree_weights)
            .map(|(&a, &d)| a as u64 * d as u64)
            .sum()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.degree(s) <= self.bound as u64
    }
}

pub fn add_grades(a: &[u32], b: &[u32]) -> Grade {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Formal linear combination of basis elements, keyed by basis position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(BTreeMap<usize, Rational>);

impl Element {
    pub fn zero() -> Self {
        Element(BTreeMap::new())
    }

    pub fn basis(pos: usize) -> Self {
        Element(BTreeMap::from([(pos, Rational::one())]))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut e = Element::zero();
        for (k, c) in terms {
            e.add_term(k, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, pos: usize) -> Rational {
        self.0.get(&pos).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub(crate) fn add_term(&mut self, pos: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(pos).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&pos);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element(self.0.iter().map(|(&k, x)| (k, x * c)).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-Rational::one()))
    }
}

type Product = Arc<[(usize, Rational)]>;

/// An algebra `A = ⊕ A_s` with finitely many components below a truncation.
/// Basis elements are ordered by degree, then by grade descending, then by
/// index. Products of basis pairs missing from the table are zero.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    rank: usize,
    truncation: Truncation,
    basis: Vec<BasisElem>,
    position: BTreeMap<BasisElem, usize>,
    // basis.len()² table, `None` when the product leaves the truncation
    table: Vec<Option<Product>>,
    labels: Vec<Option<String>>,
}

/// Structure constants: `basis pair → [(basis element, coefficient)]`.
pub type StructureConstants = BTreeMap<(BasisElem, BasisElem), Vec<(BasisElem, Rational)>>;

impl GradedAlgebra {
    /// Builds and validates an algebra. Only one of `(a, b)`, `(b, a)` needs
    /// to be listed; the algebra is commutative. Associativity is checked on
    /// every triple whose grades stay inside the truncation.
    pub fn new(
        rank: usize,
        components: BTreeMap<Grade, usize>,
        structure: StructureConstants,
        truncation: Truncation,
        labels: BTreeMap<BasisElem, String>,
    ) -> Result<Self> {
        let a = Self::unchecked(rank, components, structure, truncation, labels)?;
        a.check_associative()?;
        Ok(a)
    }

    pub(crate) fn unchecked(
        rank: usize,
        components: BTreeMap<Grade, usize>,
        structure: StructureConstants,
        truncation: Truncation,
        labels: BTreeMap<BasisElem, String>,
    ) -> Result<Self> {
        if truncation.degree_weights.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: truncation.degree_weights.len(),
            });
        }
        let mut basis = Vec::new();
        for (s, &size) in &components {
            if s.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: s.len(),
                });
            }
            if !truncation.contains(s) {
                return Err(Error::InvalidAlgebra(format!(
                    "component {} lies outside the truncation",
                    grade_string(s)
                )));
            }
            basis.extend((0..size).map(|i| BasisElem::new(s.clone(), i)));
        }
        basis.sort_by(|x, y| {
            truncation
                .degree(&x.grade)
                .cmp(&truncation.degree(&y.grade))
                .then_with(|| y.grade.cmp(&x.grade))
                .then_with(|| x.index.cmp(&y.index))
        });
        let position: BTreeMap<BasisElem, usize> = basis.iter().enumerate().map(|(k, b)| (b.clone(), k)).collect();
        let n = basis.len();
        let lookup = |b: &BasisElem| {
            position
                .get(b)
                .copied()
                .ok_or_else(|| Error::InvalidAlgebra(format!("structure constants mention unknown basis element {b}")))
        };
        let mut table: Vec<Option<Product>> = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                if truncation.contains(&add_grades(&basis[i].grade, &basis[j].grade)) {
                    table[i * n + j] = Some(Arc::from(Vec::new()));
                }
            }
        }
        let mut given = vec![false; n * n];
        for ((x, y), terms) in &structure {
            let (i, j) = (lookup(x)?, lookup(y)?);
            if table[i * n + j].is_none() {
                return Err(Error::InvalidAlgebra(format!(
                    "product {x}*{y} lies outside the truncation"
                )));
            }
            let mut e = Element::zero();
            for (z, c) in terms {
                e.add_term(lookup(z)?, c.clone());
            }
            let prod: Product = e.0.into_iter().collect::<Vec<_>>().into();
            for (p, q) in [(i, j), (j, i)] {
                if given[p * n + q] && table[p * n + q].as_ref() != Some(&prod) {
                    return Err(Error::InvalidAlgebra(format!("products {x}*{y} and {y}*{x} differ")));
                }
            }
            given[i * n + j] = true;
            table[i * n + j] = Some(prod.clone());
            if !given[j * n + i] {
                table[j * n + i] = Some(prod);
            }
        }
        let labels = basis.iter().map(|b| labels.get(b).cloned()).collect();
        Ok(GradedAlgebra {
            rank,
            truncation,
            basis,
            position,
            table,
            labels,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, b: &BasisElem) -> Option<usize> {
        self.position.get(b).copied()
    }

    pub fn label(&self, pos: usize) -> Option<&str> {
        self.labels[pos].as_deref()
    }

    /// Position of the basis element with this label.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    /// Sizes of the nonzero components.
    pub fn components(&self) -> BTreeMap<Grade, usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry(b.grade.clone()).or_insert(0) += 1;
        }
        out
    }

    pub fn component_size(&self, s: &[u32]) -> usize {
        self.basis.iter().filter(|b| b.grade == s).count()
    }

    pub fn grade(&self, pos: usize) -> &Grade {
        &self.basis[pos].grade
    }

    pub fn degree(&self, pos: usize) -> u64 {
        self.truncation.degree(&self.basis[pos].grade)
    }

    /// Largest degree in the support, 0 for the zero element.
    pub fn element_degree(&self, e: &Element) -> u64 {
        e.support().map(|k| self.degree(k)).max().unwrap_or(0)
    }

    /// `b_i · b_j`, or `None` when the product leaves the truncation.
    pub fn basis_product(&self, i: usize, j: usize) -> Option<&[(usize, Rational)]> {
        self.table[i * self.dim() + j].as_deref()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (i, ca) in a.terms() {
            for (j, cb) in b.terms() {
                let prod = self.basis_product(i, j).ok_or(Error::OutOfTruncation)?;
                let c = ca * cb;
                for (k, ck) in prod {
                    out.add_term(*k, &c * ck);
                }
            }
        }
        Ok(out)
    }

    /// The element `Σ c·b` for basis elements named by grade and index.
    pub fn element(&self, terms: &[(BasisElem, Rational)]) -> Result<Element> {
        let mut e = Element::zero();
        for (b, c) in terms {
            let k = self
                .position(b)
                .ok_or_else(|| Error::InvalidAlgebra(format!("no basis element {b}")))?;
            e.add_term(k, c.clone());
        }
        Ok(e)
    }

    /// Display name of a basis element: its label, or `(s₁,…,s_k,i)`.
    pub fn basis_name(&self, pos: usize) -> String {
        match &self.labels[pos] {
            Some(l) => l.clone(),
            None => self.basis[pos].to_string(),
        }
    }

    /// Terms from the last basis element to the first.
    pub fn format_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        // highest degree first, basis order within a degree
        let mut terms: Vec<(&usize, &Rational)> = e.0.iter().collect();
        terms.sort_by_key(|(k, _)| (std::cmp::Reverse(self.degree(**k)), **k));
        let mut out = String::new();
        for (n, (k, c)) in terms.into_iter().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            if n == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
            out.push_str(&self.basis_name(*k));
        }
        out
    }

    /// Checks `(ab)c = a(bc)` on all basis triples inside the truncation.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        let bad = (0..n).into_par_iter().find_map_first(|i| {
            for j in 0..n {
                let Some(ij) = self.basis_product(i, j) else { continue };
                let ij = Element::from_terms(ij.iter().cloned());
                for k in 0..n {
                    if !self
                        .truncation
                        .contains(&add_grades(&add_grades(self.grade(i), self.grade(j)), self.grade(k)))
                    {
                        continue;
                    }
                    let left = self.mul(&ij, &Element::basis(k));
                    let jk = self.basis_product(j, k).map(|p| Element::from_terms(p.iter().cloned()));
                    let right = jk.map(|jk| self.mul(&Element::basis(i), &jk));
                    match (left, right) {
                        (Ok(l), Some(Ok(r))) if l == r => {}
                        _ => return Some((i, j, k)),
                    }
                }
            }
            None
        });
        match bad {
            None => Ok(()),
            Some((i, j, k)) => Err(Error::AssociativityViolation {
                a: self.basis_name(i),
                b: self.basis_name(j),
                c: self.basis_name(k),
            }),
        }
    }

    /// Same components and labels, new structure constants.
    pub(crate) fn with_table(&self, table: Vec<Option<Product>>) -> GradedAlgebra {
        GradedAlgebra { table, ..self.clone() }
    }

    pub(crate) fn table(&self) -> &[Option<Product>] {
        &self.table
    }

    /// Structure constants of all nonzero products `(i, j)` with `i ≤ j`.
    pub fn structure_constants(&self) -> StructureConstants {
        let n = self.dim();
        let mut out = StructureConstants::new();
        for i in 0..n {
            for j in i..n {
                if let Some(p) = self.basis_product(i, j) {
                    if !p.is_empty() {
                        out.insert(
                            (self.basis[i].clone(), self.basis[j].clone()),
                            p.iter().map(|(k, c)| (self.basis[*k].clone(), c.clone())).collect(),
                        );
                    }
                }
            }
        }
        out
    }

    /// The same algebra graded by `s ↦ M·s`, `M` given by its rows. Basis
    /// elements keep their relative order inside each merged component.
    /// `truncation` must keep exactly the products this algebra keeps.
    pub fn regrade(&self, map: &[Vec<u32>], truncation: Truncation) -> Result<GradedAlgebra> {
        if let Some(bad) = map.iter().find(|r| r.len() != self.rank) {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: bad.len(),
            });
        }
        let image = |s: &[u32]| -> Grade { map.iter().map(|r| r.iter().zip(s).map(|(a, b)| a * b).sum()).collect() };
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let kept = truncation.contains(&image(&add_grades(self.grade(i), self.grade(j))));
                if kept != self.table[i * n + j].is_some() {
                    return Err(Error::InvalidAlgebra(format!(
                        "regraded truncation disagrees on {} * {}",
                        self.basis_name(i),
                        self.basis_name(j)
                    )));
                }
            }
        }
        let mut components: BTreeMap<Grade, usize> = BTreeMap::new();
        let mut new_basis = Vec::with_capacity(n);
        for b in &self.basis {
            let s = image(&b.grade);
            let size = components.entry(s.clone()).or_insert(0);
            new_basis.push(BasisElem::new(s, *size));
            *size += 1;
        }
        let mut structure = StructureConstants::new();
        for i in 0..n {
            for j in i..n {
                if let Some(p) = self.basis_product(i, j) {
                    structure.insert(
                        (new_basis[i].clone(), new_basis[j].clone()),
                        p.iter().map(|(k, c)| (new_basis[*k].clone(), c.clone())).collect(),
                    );
                }
            }
        }
        let labels = new_basis
            .iter()
            .zip(&self.labels)
            .filter_map(|(b, l)| l.clone().map(|l| (b.clone(), l)))
            .collect();
        GradedAlgebra::unchecked(map.len(), components, structure, truncation, labels)
    }
}

pub(crate) fn grade_string(s: &[u32]) -> String {
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn monomial_label(names: &[&str], exps: &[u32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn exponents_up_to(rank: usize, bound: u32) -> Vec<Grade> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Grade| {
                let used: u32 = p.iter().sum();
                (0..=bound - used).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

/// The polynomial ring on `names`, graded by exponent vector, truncated at
/// total degree `bound`.
pub fn monoid_algebra(names: &[&str], bound: u32) -> Result<GradedAlgebra> {
    let rank = names.len();
    let grades = exponents_up_to(rank, bound);
    let components = grades.iter().map(|s| (s.clone(), 1)).collect();
    let mut structure = StructureConstants::new();
    for (x, s) in grades.iter().enumerate() {
        for t in &grades[x..] {
            let st = add_grades(s, t);
            if st.iter().sum::<u32>() <= bound {
                structure.insert(
                    (BasisElem::new(s.clone(), 0), BasisElem::new(t.clone(), 0)),
                    vec![(BasisElem::new(st, 0), Rational::one())],
                );
            }
        }
    }
    let labels = grades
        .iter()
        .map(|s| (BasisElem::new(s.clone(), 0), monomial_label(names, s)))
        .collect();
    GradedAlgebra::new(
        rank,
        components,
        structure,
        Truncation {
            bound,
            degree_weights: vec![1; rank],
        },
        labels,
    )
}

/// `ℚ[x, y]/⟨xy⟩`, graded by exponent vector.
pub fn coordinate_cross(bound: u32) -> Result<GradedAlgebra> {
    let grades: Vec<Grade> = exponents_up_to(2, bound)
        .into_iter()
        .filter(|s| s[0] == 0 || s[1] == 0)
        .collect();
    let components = grades.iter().map(|s| (s.clone(), 1)).collect();
    let mut structure = StructureConstants::new();
    for s in &grades {
        for t in &grades {
            let st = add_grades(s, t);
            if st[0] + st[1] <= bound && (st[0] == 0 || st[1] == 0) {
                structure.insert(
                    (BasisElem::new(s.clone(), 0), BasisElem::new(t.clone(), 0)),
                    vec![(BasisElem::new(st, 0), Rational::one())],
                );
            }
        }
    }
    let labels = grades
        .iter()
        .map(|s| (BasisElem::new(s.clone(), 0), monomial_label(&["x", "y"], s)))
        .collect();
    GradedAlgebra::new(
        2,
        components,
        structure,
        Truncation {
            bound,
            degree_weights: vec![1, 1],
        },
        labels,
    )
}

/// `ℚ[ε]/⟨ε²⟩` graded by degree: `ε·ε` has no component in degree 2.
pub fn dual_numbers() -> Result<GradedAlgebra> {
    let one = BasisElem::new(vec![0], 0);
    let eps = BasisElem::new(vec![1], 0);
    let mut structure = StructureConstants::new();
    structure.insert((one.clone(), one.clone()), vec![(one.clone(), Rational::one())]);
    structure.insert((one.clone(), eps.clone()), vec![(eps.clone(), Rational::one())]);
    GradedAlgebra::new(
        1,
        BTreeMap::from([(vec![0], 1), (vec![1], 1)]),
        structure,
        Truncation {
            bound: 2,
            degree_weights: vec![1],
        },
        BTreeMap::from([(one, "1".into()), (eps, "e".into())]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monoid_algebra_shape() {
        let a = monoid_algebra(&["x", "y", "z"], 6).unwrap();
        assert_eq!(a.dim(), 84);
        let x = a.find_label("x").unwrap();
        let y = a.find_label("y").unwrap();
        let xy = a.find_label("x*y").unwrap();
        assert_eq!(a.basis_product(x, y).unwrap(), &[(xy, Rational::one())]);
        assert_eq!(a.basis_name(0), "1");
        assert_eq!(&a.basis()[1].grade, &vec![1, 0, 0]);
        let sum = Element::basis(x).add(&Element::basis(y).scale(&Rational::from_integer((-2).into())));
        assert_eq!(a.format_element(&sum), "x - 2*y");
    }

    #[test]
    fn associativity_violations_are_caught() {
        // a·a = b, but (a·a)·a = b·a = 0 while a·(a·a) = a·b = c
        let g = |k| vec![k];
        let (a, b, c) = (
            BasisElem::new(g(1), 0),
            BasisElem::new(g(2), 0),
            BasisElem::new(g(3), 0),
        );
        let mut s = StructureConstants::new();
        s.insert((a.clone(), a.clone()), vec![(b.clone(), Rational::one())]);
        s.insert((a.clone(), b.clone()), vec![(c.clone(), Rational::one())]);
        s.insert((b.clone(), a.clone()), vec![]);
        let err = GradedAlgebra::new(
            1,
            BTreeMap::from([(g(1), 1), (g(2), 1), (g(3), 1)]),
            s,
            Truncation {
                bound: 3,
                degree_weights: vec![1],
            },
            BTreeMap::new(),
        );
        assert!(matches!(err, Err(Error::InvalidAlgebra(_))));

        let mut s = StructureConstants::new();
        s.insert((a.clone(), a.clone()), vec![(b.clone(), Rational::one())]);
        s.insert((a.clone(), b.clone()), vec![(c.clone(), Rational::one())]);
        let ok = GradedAlgebra::new(
            1,
            BTreeMap::from([(g(1), 1), (g(2), 1), (g(3), 1)]),
            s.clone(),
            Truncation {
                bound: 3,
                degree_weights: vec![1],
            },
            BTreeMap::new(),
        );
        assert!(ok.is_ok());
        // components in degree 4 make a·(a·b) and (a·a)·b comparable
        let d = BasisElem::new(g(4), 0);
        s.insert((a.clone(), c.clone()), vec![(d.clone(), Rational::one())]);
        s.insert((b.clone(), b.clone()), vec![]);
        let err = GradedAlgebra::new(
            1,
            BTreeMap::from([(g(1), 1), (g(2), 1), (g(3), 1), (g(4), 1)]),
            s,
            Truncation {
                bound: 4,
                degree_weights: vec![1],
            },
            BTreeMap::new(),
        );
        assert!(matches!(err, Err(Error::AssociativityViolation { .. })), "{err:?}");
    }

    #[test]
    fn cross_and_dual_numbers() {
        let a = coordinate_cross(4).unwrap();
        assert_eq!(a.dim(), 9);
        let x = a.find_label("x").unwrap();
        let y = a.find_label("y").unwrap();
        assert_eq!(a.basis_product(x, y).unwrap(), &[]);
        let d = dual_numbers().unwrap();
        assert_eq!(d.basis_product(1, 1).unwrap(), &[]);
    }

    #[test]
    fn regrading_by_total_degree() {
        let a = monoid_algebra(&["x", "y"], 3).unwrap();
        let t = Truncation {
            bound: 3,
            degree_weights: vec![1],
        };
        let b = a.regrade(&[vec![1, 1]], t).unwrap();
        assert_eq!(b.component_size(&[2]), 3);
        assert_eq!(b.dim(), a.dim());
        let x = b.find_label("x").unwrap();
        let y = b.find_label("y").unwrap();
        assert_eq!(
            b.format_element(&b.mul(&Element::basis(x), &Element::basis(y)).unwrap()),
            "x*y"
        );
        let too_big = Truncation {
            bound: 4,
            degree_weights: vec![1],
        };
        assert!(a.regrade(&[vec![1, 1]], too_big).is_err());
    }
}
