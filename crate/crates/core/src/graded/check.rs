use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;

use super::kernel::{kernel_vector, SparseColumn};
use super::{add_grades, grade_string, Element, Grade, GradedAlgebra};
use crate::error::{Error, Result};
use crate::sample::{random_coefficient, rng, SampleConfig, SampleRng};
use crate::trop::{format_rational, trop_add, TropicalValue};
use crate::valuation::{record, AxiomReport, PairValues};
use crate::Rational;

/// Rational functionals on the grading monoid, compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexFunctional {
    rows: Vec<Vec<Rational>>,
}

impl LexFunctional {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            if let Some(bad) = rows.iter().find(|r| r.len() != first.len()) {
                return Err(Error::DimensionMismatch {
                    expected: first.len(),
                    found: bad.len(),
                });
            }
        }
        Ok(LexFunctional { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        LexFunctional {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&c| Rational::from_integer(c.into())).collect())
                .collect(),
        }
    }

    /// The functional that is 0 on every grade.
    pub fn zero(rank: usize) -> Self {
        LexFunctional {
            rows: vec![vec![Rational::zero(); rank]],
        }
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn rank(&self) -> Option<usize> {
        self.rows.first().map(Vec::len)
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        match self.rank() {
            Some(r) if r != rank => Err(Error::DimensionMismatch {
                expected: rank,
                found: r,
            }),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, s: &[u32]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(s)
                    .map(|(c, &k)| c * Rational::from_integer(k.into()))
                    .sum()
            })
            .collect()
    }

    /// The first row, the real value of the functional.
    pub fn value(&self, s: &[u32]) -> Rational {
        self.rows
            .first()
            .map(|row| {
                row.iter()
                    .zip(s)
                    .map(|(c, &k)| c * Rational::from_integer(k.into()))
                    .sum()
            })
            .unwrap_or_else(Rational::zero)
    }

    /// Evaluates on a direction with possibly negative entries.
    pub fn eval_direction(&self, d: &[i64]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(d)
                    .map(|(c, &k)| c * Rational::from_integer(k.into()))
                    .sum()
            })
            .collect()
    }

    /// Zeroes row `index`.
    pub fn collapse(&self, index: usize) -> Result<Self> {
        if index >= self.rows.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.rows.len(),
            });
        }
        let mut rows = self.rows.clone();
        rows[index].iter_mut().for_each(|c| *c = Rational::zero());
        Ok(LexFunctional { rows })
    }
}

impl fmt::Display for LexFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

fn lex_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Clone, Debug)]
struct Override {
    element: Element,
    value: TropicalValue,
    pivot: usize,
}

/// Homogeneous elements of `A_s` get `functional(s)`; the overrides assign
/// smaller values to chosen inhomogeneous elements.
///
/// Each override replaces its pivot (its top basis element by value, earliest
/// in basis order on ties) in an adapted basis, and the value of an element
/// is the largest value among its nonzero coordinates in that basis. The
/// result is subadditive whatever the overrides are.
#[derive(Clone, Debug)]
pub struct GradedValuation {
    functional: LexFunctional,
    overrides: Vec<Override>,
}

impl GradedValuation {
    pub fn new(functional: LexFunctional) -> Self {
        GradedValuation {
            functional,
            overrides: Vec::new(),
        }
    }

    pub fn functional(&self) -> &LexFunctional {
        &self.functional
    }

    pub fn overrides(&self) -> impl Iterator<Item = (&Element, &TropicalValue)> {
        self.overrides.iter().map(|o| (&o.element, &o.value))
    }

    /// Adds an override. The value must not exceed the largest value of the
    /// element's components, and the pivot's own value must survive.
    pub fn with_override(mut self, algebra: &GradedAlgebra, element: Element, value: TropicalValue) -> Result<Self> {
        self.functional.check_rank(algebra.rank())?;
        let show = algebra.format_element(&element);
        if element.is_zero() {
            return Err(Error::InvalidOverride("override on the zero element".into()));
        }
        let TropicalValue::Finite(t) = &value else {
            return Err(Error::InvalidOverride(format!("value -inf on nonzero {show}")));
        };
        let f = |k: usize| self.functional.value(algebra.grade(k));
        let top = element.support().map(f).max().unwrap();
        let pivot = element.support().find(|&k| f(k) == top).unwrap();
        if t > &top {
            return Err(Error::InvalidOverride(format!(
                "value {} on {show} exceeds the max {} of its components",
                format_rational(t),
                format_rational(&top)
            )));
        }
        let survives = t == &top
            || element
                .support()
                .any(|k| algebra.grade(k) != algebra.grade(pivot) && f(k) == top);
        if !survives {
            return Err(Error::InvalidOverride(format!(
                "{show} would lower the value of {}",
                algebra.basis_name(pivot)
            )));
        }
        for o in &self.overrides {
            if element.coeff(o.pivot) != Rational::zero() || o.element.coeff(pivot) != Rational::zero() {
                return Err(Error::InvalidOverride(format!(
                    "{show} and {} share a top basis element",
                    algebra.format_element(&o.element)
                )));
            }
        }
        self.overrides.push(Override { element, value, pivot });
        Ok(self)
    }

    /// Exact value of `e`.
    pub fn value(&self, algebra: &GradedAlgebra, e: &Element) -> TropicalValue {
        let mut residual = e.clone();
        let mut out = TropicalValue::Bottom;
        for o in &self.overrides {
            let c = e.coeff(o.pivot);
            if !c.is_zero() {
                let c = c / o.element.coeff(o.pivot);
                residual = residual.sub(&o.element.scale(&c));
                out = trop_add(&out, &o.value);
            }
        }
        for k in residual.support() {
            out = trop_add(&out, &TropicalValue::Finite(self.functional.value(algebra.grade(k))));
        }
        out
    }

    /// Largest full lex tuple over the support; `None` for 0.
    fn lex_value(&self, algebra: &GradedAlgebra, e: &Element) -> Option<Vec<Rational>> {
        e.support().map(|k| self.functional.eval(algebra.grade(k))).max()
    }
}

pub fn graded_value(algebra: &GradedAlgebra, gv: &GradedValuation, e: &Element) -> TropicalValue {
    gv.value(algebra, e)
}

/// Random element with 1 to 3 terms of degree at most `max_degree`, with
/// at least two grades when `inhomogeneous` and possible.
fn random_element(rng: &mut SampleRng, algebra: &GradedAlgebra, max_degree: u64, inhomogeneous: bool) -> Element {
    let pool: Vec<usize> = (0..algebra.dim())
        .filter(|&k| algebra.degree(k) <= max_degree)
        .collect();
    let distinct_grades = pool
        .iter()
        .map(|&k| algebra.grade(k))
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    loop {
        let n = rng.gen_range(if inhomogeneous { 2..=3 } else { 1..=3 });
        let mut e = Element::zero();
        for _ in 0..n {
            let k = pool[rng.gen_range(0..pool.len())];
            if e.coeff(k).is_zero() {
                e.add_term(k, random_coefficient(rng));
            }
        }
        let grades: std::collections::BTreeSet<&Grade> = e.support().map(|k| algebra.grade(k)).collect();
        if !inhomogeneous || grades.len() >= 2 || distinct_grades < 2 {
            return e;
        }
    }
}

/// Random element of a single component.
fn random_homogeneous(rng: &mut SampleRng, algebra: &GradedAlgebra, grade: &Grade) -> Element {
    let pool: Vec<usize> = (0..algebra.dim()).filter(|&k| algebra.grade(k) == grade).collect();
    loop {
        let mut e = Element::zero();
        for &k in &pool {
            if rng.gen_bool(0.7) {
                e.add_term(k, random_coefficient(rng));
            }
        }
        if !e.is_zero() {
            return e;
        }
    }
}

/// Seeded pairs whose products stay inside the truncation.
fn random_pairs(algebra: &GradedAlgebra, config: &SampleConfig, inhomogeneous: bool) -> Vec<(Element, Element)> {
    let bound = algebra.truncation().bound as u64;
    let mut r = rng(config.seed);
    (0..config.samples)
        .map(|_| {
            let a = random_element(&mut r, algebra, bound, inhomogeneous);
            let b = random_element(&mut r, algebra, bound - algebra.element_degree(&a), inhomogeneous);
            (a, b)
        })
        .collect()
}

fn pair_values(algebra: &GradedAlgebra, gv: &GradedValuation, a: &Element, b: &Element) -> Result<PairValues> {
    Ok(PairValues {
        va: gv.value(algebra, a),
        vb: gv.value(algebra, b),
        vsum: gv.value(algebra, &a.add(b)),
        vprod: gv.value(algebra, &algebra.mul(a, b)?),
    })
}

fn basis_pairs(algebra: &GradedAlgebra) -> Vec<(usize, usize)> {
    let n = algebra.dim();
    (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .filter(|&(i, j)| algebra.basis_product(i, j).is_some())
        .collect()
}

fn evaluate_pairs(
    algebra: &GradedAlgebra,
    gv: &GradedValuation,
    pairs: &[(Element, Element)],
) -> Result<Vec<PairValues>> {
    pairs.par_iter().map(|(a, b)| pair_values(algebra, gv, a, b)).collect()
}

/// Multiplicativity on homogeneous pairs (all basis pairs, plus sampled
/// homogeneous pairs from components of dimension above one), subadditivity
/// on sampled inhomogeneous pairs.
pub fn check_graded_axioms(
    algebra: &GradedAlgebra,
    gv: &GradedValuation,
    config: &SampleConfig,
) -> Result<AxiomReport<Element>> {
    gv.functional.check_rank(algebra.rank())?;
    let mut report = AxiomReport::new(0, String::new());
    graded_part(algebra, gv, config, &mut report)?;
    let additive = random_pairs(algebra, config, true);
    for ((a, b), pv) in additive.iter().zip(evaluate_pairs(algebra, gv, &additive)?) {
        record(&mut report, a, b, pv, false);
    }
    report.pairs_checked += additive.len();
    let one_dimensional = algebra.components().values().all(|&m| m == 1);
    report.scope = format!(
        "homogeneous pairs: {} to truncation {}; subadditivity: {} sampled pairs (seed {})",
        if one_dimensional {
            "exhaustive"
        } else {
            "basis pairs exhaustive, combinations sampled"
        },
        algebra.truncation().bound,
        additive.len(),
        config.seed
    );
    let mut report = report.finish();
    report.exact = false;
    Ok(report)
}

fn graded_part(
    algebra: &GradedAlgebra,
    gv: &GradedValuation,
    config: &SampleConfig,
    report: &mut AxiomReport<Element>,
) -> Result<()> {
    let mut homogeneous: Vec<(Element, Element)> = basis_pairs(algebra)
        .into_iter()
        .map(|(i, j)| (Element::basis(i), Element::basis(j)))
        .collect();
    let wide: Vec<Grade> = algebra
        .components()
        .into_iter()
        .filter(|(_, m)| *m > 1)
        .map(|(s, _)| s)
        .collect();
    if !wide.is_empty() {
        let grades: Vec<Grade> = algebra.components().into_keys().collect();
        let mut r = rng(config.seed ^ 0x9e37_79b9);
        let mut added = 0;
        while added < config.samples {
            let s = &wide[r.gen_range(0..wide.len())];
            let partners: Vec<&Grade> = grades
                .iter()
                .filter(|t| algebra.truncation().contains(&add_grades(s, t)))
                .collect();
            let t = partners[r.gen_range(0..partners.len())];
            homogeneous.push((
                random_homogeneous(&mut r, algebra, s),
                random_homogeneous(&mut r, algebra, t),
            ));
            added += 1;
        }
    }
    for ((a, b), pv) in homogeneous.iter().zip(evaluate_pairs(algebra, gv, &homogeneous)?) {
        record(report, a, b, pv, true);
    }
    report.pairs_checked += homogeneous.len();
    Ok(())
}

const STRUCTURED_CAP: usize = 20_000;

/// The valuation axioms on all pairs: the graded checks, then
/// multiplicativity on inhomogeneous pairs. Those start with every
/// `(basis element, sum of two basis elements)` pair, then seeded ones.
pub fn check_full_axioms(
    algebra: &GradedAlgebra,
    gv: &GradedValuation,
    config: &SampleConfig,
) -> Result<AxiomReport<Element>> {
    gv.functional.check_rank(algebra.rank())?;
    let mut report = AxiomReport::new(0, String::new());
    graded_part(algebra, gv, config, &mut report)?;
    let n = algebra.dim();
    let bound = algebra.truncation().bound as u64;
    let mut pairs: Vec<(Element, Element)> = Vec::new();
    'outer: for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                if algebra.degree(i) + algebra.degree(j).max(algebra.degree(k)) > bound {
                    continue;
                }
                if pairs.len() == STRUCTURED_CAP {
                    break 'outer;
                }
                pairs.push((Element::basis(i), Element::basis(j).add(&Element::basis(k))));
            }
        }
    }
    pairs.extend(random_pairs(algebra, config, true));
    for ((a, b), pv) in pairs.iter().zip(evaluate_pairs(algebra, gv, &pairs)?) {
        record(&mut report, a, b, pv, true);
    }
    report.pairs_checked += pairs.len();
    report.scope = format!(
        "all pairs: basis pairs exhaustive, {} structured and sampled inhomogeneous pairs (seed {})",
        pairs.len(),
        config.seed
    );
    Ok(report.finish())
}

/// A basis pair and a grade of its product above `h(s₁ + s₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerTriangular {
    pub holds: bool,
    pub witness: Option<(usize, usize, Grade)>,
}

/// Whether every grade `s₃` in every basis product satisfies
/// `h(s₃) ≤ h(s₁) + h(s₂)` lexicographically.
pub fn check_lower_triangular(algebra: &GradedAlgebra, h: &LexFunctional) -> Result<LowerTriangular> {
    h.check_rank(algebra.rank())?;
    let witness = basis_pairs(algebra).into_par_iter().find_map_first(|(i, j)| {
        let cap = lex_add(&h.eval(algebra.grade(i)), &h.eval(algebra.grade(j)));
        algebra
            .basis_product(i, j)
            .unwrap()
            .iter()
            .find(|(k, _)| h.eval(algebra.grade(*k)) > cap)
            .map(|(k, _)| (i, j, algebra.grade(*k).clone()))
    });
    Ok(LowerTriangular {
        holds: witness.is_none(),
        witness,
    })
}

/// A pair where the lex value of the product is not the sum of values.
#[derive(Clone, Debug, PartialEq)]
pub struct MonoidFailure {
    pub a: Element,
    pub b: Element,
    pub product: Option<Vec<Rational>>,
    pub expected: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct MonoidTheoremReport {
    /// Every basis product has a nonzero component in grade `s₁ + s₂`.
    pub cartan_holds: bool,
    pub cartan_witness: Option<(usize, usize)>,
    /// `w` takes distinct values on distinct grades.
    pub separation_holds: bool,
    pub separation_witness: Option<(Grade, Grade)>,
    /// No product reaches above its Cartan grade under `w`.
    pub lower_triangular: LowerTriangular,
    pub pairs_checked: usize,
    pub conclusion_failures: Vec<MonoidFailure>,
}

impl MonoidTheoremReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.cartan_holds && self.separation_holds && self.lower_triangular.holds
    }

    pub fn conclusion_holds(&self) -> bool {
        self.conclusion_failures.is_empty()
    }
}

/// Checks the hypotheses of the monoid theorem (Cartan components present,
/// `w` separates grades, products lower-triangular for `w`) and samples the
/// conclusion: `w(AB) = w(A) + w(B)` for the lex value `w(A) = max w(s)`
/// over the grades of `A`.
pub fn check_monoid_theorem(
    algebra: &GradedAlgebra,
    w: &LexFunctional,
    config: &SampleConfig,
) -> Result<MonoidTheoremReport> {
    w.check_rank(algebra.rank())?;
    let cartan_witness = basis_pairs(algebra).into_par_iter().find_map_first(|(i, j)| {
        let s = add_grades(algebra.grade(i), algebra.grade(j));
        let has = algebra
            .basis_product(i, j)
            .unwrap()
            .iter()
            .any(|(k, _)| algebra.grade(*k) == &s);
        (!has).then_some((i, j))
    });
    let mut by_value: BTreeMap<Vec<Rational>, Grade> = BTreeMap::new();
    let mut separation_witness = None;
    for s in algebra.components().into_keys() {
        if let Some(t) = by_value.insert(w.eval(&s), s.clone()) {
            separation_witness = Some((t, s));
            break;
        }
    }
    let lower_triangular = check_lower_triangular(algebra, w)?;
    let gv = GradedValuation::new(w.clone());
    let pairs = random_pairs(algebra, config, true);
    let failures = pairs
        .par_iter()
        .map(|(a, b)| -> Result<Option<MonoidFailure>> {
            let product = gv.lex_value(algebra, &algebra.mul(a, b)?);
            let expected = lex_add(&gv.lex_value(algebra, a).unwrap(), &gv.lex_value(algebra, b).unwrap());
            Ok((product.as_ref() != Some(&expected)).then(|| MonoidFailure {
                a: a.clone(),
                b: b.clone(),
                product,
                expected,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonoidTheoremReport {
        cartan_holds: cartan_witness.is_none(),
        cartan_witness,
        separation_holds: separation_witness.is_none(),
        separation_witness,
        lower_triangular,
        pairs_checked: pairs.len(),
        conclusion_failures: failures.into_iter().flatten().collect(),
    })
}

/// Keeps only the `h`-maximal grades of every basis product.
pub fn associated_graded(algebra: &GradedAlgebra, h: &LexFunctional) -> Result<GradedAlgebra> {
    let lt = check_lower_triangular(algebra, h)?;
    if let Some((i, j, s)) = lt.witness {
        return Err(Error::NotLowerTriangular(format!(
            "{} * {} has a component in grade ({})",
            algebra.basis_name(i),
            algebra.basis_name(j),
            grade_string(&s)
        )));
    }
    let table = algebra
        .table()
        .iter()
        .map(|entry| {
            entry.as_ref().map(|prod| {
                let top = prod.iter().map(|(k, _)| h.eval(algebra.grade(*k))).max();
                prod.iter()
                    .filter(|(k, _)| Some(h.eval(algebra.grade(*k))) == top)
                    .cloned()
                    .collect::<Vec<_>>()
                    .into()
            })
        })
        .collect();
    let gr = algebra.with_table(table);
    gr.check_associative()?;
    Ok(gr)
}

/// `ab = 0` with `a, b ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDivisor {
    pub a: Element,
    pub b: Element,
}

/// Searches for zero divisors of degree at most `bound`. Candidates for `a`
/// are basis elements, then `bᵢ ± bⱼ`; for each, the whole kernel of
/// multiplication by `a` on elements of degree at most `bound − deg a` is
/// computed exactly, so `b` ranges over all such elements.
pub fn zero_divisor_search(algebra: &GradedAlgebra, bound: u32) -> Result<Option<ZeroDivisor>> {
    let bound = bound.min(algebra.truncation().bound) as u64;
    let n = algebra.dim();
    let small: Vec<usize> = (0..n).filter(|&k| algebra.degree(k) <= bound).collect();
    let mut candidates: Vec<Element> = small.iter().map(|&k| Element::basis(k)).collect();
    let minus_one = -Rational::one();
    for (x, &i) in small.iter().enumerate() {
        for &j in &small[x + 1..] {
            candidates.push(Element::basis(i).add(&Element::basis(j)));
            candidates.push(Element::basis(i).add(&Element::basis(j).scale(&minus_one)));
        }
    }
    let found = candidates
        .par_iter()
        .map(|a| -> Result<Option<ZeroDivisor>> {
            let room = bound - algebra.element_degree(a);
            let domain: Vec<usize> = (0..n).filter(|&k| algebra.degree(k) <= room).collect();
            let columns = domain
                .iter()
                .map(|&k| {
                    let prod = algebra.mul(a, &Element::basis(k))?;
                    Ok(prod.terms().map(|(r, c)| (r, c.clone())).collect::<SparseColumn>())
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(kernel_vector(&columns).map(|c| ZeroDivisor {
                a: a.clone(),
                b: Element::from_terms(domain.iter().copied().zip(c)),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().next())
}

impl PartialOrd for MonoidFailure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.expected.partial_cmp(&other.expected)
    }
}
