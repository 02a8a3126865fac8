//! One function per verb. Each returns the exit code and the text for
//! standard output, or a [`Failure`].

use tropval_core::cones::{
    arrow_check, cone_sum, facet_classes, implies_check, scale, RelationVerdict, Status, Witness,
};
use tropval_core::graded::{
    associated_graded, check_full_axioms, check_graded_axioms, check_monoid_theorem, format_graded_algebra,
    zero_divisor_search, GradedAlgebra, GradedValuation,
};
use tropval_core::groebner::{canonical_initial_ideal, enumerate_fan};
use tropval_core::poly::CoeffValuation;
use tropval_core::sl2lab::{collapse_functional, root_functional, sl2_branching_algebra, sl2_rep_ring, RootReport};
use tropval_core::trop::{format_rational, parse_rational};
use tropval_core::valuation::{
    check_axioms, check_trop_membership, make_weight_valuation, tropicalize, AxiomReport, MembershipMode, Verdict,
};
use tropval_core::{Polynomial, Presentation, Rational, WeightVector};

use crate::report::{yes_no, Report};
use crate::{input, AlgebraArgs, Failure, IdealArgs, Mode, Sampling, EXIT_PASS, EXIT_PRECONDITION, EXIT_REFUTED};

type Run = Result<(i32, String), Failure>;

fn pass_if(ok: bool) -> i32 {
    if ok {
        EXIT_PASS
    } else {
        EXIT_REFUTED
    }
}

fn polys(ps: &[Polynomial]) -> String {
    if ps.is_empty() {
        return "0".into();
    }
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn tuple(qs: &[Rational]) -> String {
    let parts: Vec<String> = qs.iter().map(format_rational).collect();
    format!("({})", parts.join(" "))
}

fn grade(g: &[u32]) -> String {
    let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn load(args: &IdealArgs, count: usize) -> Result<(Presentation, Vec<WeightVector>), Failure> {
    let (p, from_file) = input::presentation(&args.ideal, args.coeffval.as_deref())?;
    let ws = input::weights(&p, &args.weights, from_file, count)?;
    Ok((p, ws))
}

fn coeffval(p: &Presentation) -> String {
    match p.coeff_valuation() {
        CoeffValuation::Trivial => "trivial".into(),
        CoeffValuation::TAdic { index, weight } => {
            format!("tadic {} {}", p.ring().vars()[*index], format_rational(weight))
        }
    }
}

fn sampling_line(s: &Sampling) -> String {
    format!(
        "seed {}, {} samples, degree bound {}",
        s.seed, s.samples, s.degree_bound
    )
}

pub fn parse(args: &IdealArgs) -> Run {
    let (p, ws) = load(args, 0)?;
    let mut r = Report::new("parse");
    r.provenance("presentation parsed and normalized")
        .field("ring", p.ring().vars().join(" "))
        .field("coeffval", coeffval(&p))
        .field("ideal", polys(p.ideal_gens()))
        .field("weights", ws.len());
    for (k, w) in ws.iter().enumerate() {
        r.field(format!("weight {k}"), w);
    }
    Ok((EXIT_PASS, r.render()))
}

pub fn initial(args: &IdealArgs) -> Run {
    let (p, ws) = load(args, 1)?;
    let gb = canonical_initial_ideal(&p, &ws[0])?;
    let mut r = Report::new("initial");
    r.provenance("initial ideal from a weight-refined Groebner basis, reduced grevlex basis")
        .field("weight", &ws[0])
        .field("initial_ideal", polys(gb.gens()));
    Ok((EXIT_PASS, r.render()))
}

pub fn trop_check(args: &IdealArgs, mode: Mode) -> Run {
    let (p, ws) = load(args, 1)?;
    let w = &ws[0];
    let mut r = Report::new("trop-check");
    r.field("weight", w);
    let (m, verdict) = match mode {
        Mode::Certified => {
            r.provenance("certified: monomial containment of the initial ideal by saturation");
            let m = check_trop_membership(&p, w, MembershipMode::Certified)?;
            let v = if m.member { "monomial-free" } else { "contains-monomial" };
            r.field("mode", "certified")
                .field("initial_ideal", polys(&m.initial_ideal));
            (m, v)
        }
        Mode::Prevariety => {
            r.provenance("prevariety: each generator attains its maximal weight at least twice");
            let m = check_trop_membership(&p, w, MembershipMode::Prevariety)?;
            let v = if m.member { "in-prevariety" } else { "not-in-prevariety" };
            r.field("mode", "prevariety");
            (m, v)
        }
    };
    r.field("verdict", verdict);
    if let Some(wit) = &m.witness {
        let key = match mode {
            Mode::Certified => "witness_monomial",
            Mode::Prevariety => "witness_generator",
        };
        r.field(key, wit);
    }
    Ok((pass_if(m.member), r.render()))
}

fn failure_fields<E>(r: &mut Report, report: &AxiomReport<E>, show: impl Fn(&E) -> String) {
    r.field("verdict", report.verdict)
        .field("pairs_checked", report.pairs_checked)
        .field("multiplicativity_failures", report.multiplicativity_failures.len())
        .field("p1_failures", report.p1_failures.len())
        .field("subadditivity_failures", report.subadditivity_failures.len())
        .field(
            "submultiplicativity_failures",
            report.submultiplicativity_failures.len(),
        )
        .field("exact", yes_no(report.exact))
        .field("scope", &report.scope);
    if let Some(f) = report.first_failure() {
        r.field("witness_a", show(&f.a))
            .field("witness_b", show(&f.b))
            .field("witness_lhs", &f.lhs)
            .field("witness_rhs", &f.rhs);
    }
}

pub fn val_check(args: &IdealArgs, s: &Sampling) -> Run {
    let (p, ws) = load(args, 1)?;
    let v = make_weight_valuation(&p, &ws[0])?;
    let report = check_axioms(&v, s.seed, s.samples, s.degree_bound)?;
    let mismatch = v.weight_mismatch()?;
    let mut r = Report::new("val-check");
    r.provenance("v_w(f) = maximal weight over the normal form of f for the w-refined Groebner basis")
        .provenance(format!("axiom sampler: {}", sampling_line(s)))
        .field("weight", &ws[0]);
    failure_fields(&mut r, &report, ToString::to_string);
    r.field("tropicalization", tropicalize(&v)?)
        .field("realizes_weight", yes_no(mismatch.is_none()));
    if let Some((i, value)) = &mismatch {
        r.field("witness_generator", &p.ring().vars()[*i])
            .field("witness_value", value);
    }
    let ok = report.verdict == Verdict::Valuation && mismatch.is_none();
    Ok((pass_if(ok), r.render()))
}

fn relation_fields(r: &mut Report, v: &RelationVerdict) {
    r.field("relation", v.relation);
    match &v.status {
        Status::HoldsCertified { certificate } => {
            r.field("status", "holds-certified").field("certificate", certificate);
        }
        Status::HoldsNoCounterexample { samples } => {
            r.field("status", "holds-no-counterexample").field("samples", samples);
        }
        Status::Refuted(Witness::Pair { a, b }) => {
            r.field("status", "refuted").field("witness_a", a).field("witness_b", b);
        }
        Status::Refuted(Witness::InitialIdeals { left, right }) => {
            r.field("status", "refuted")
                .field("witness_left", polys(left))
                .field("witness_right", polys(right));
        }
    }
}

pub fn cone(args: &IdealArgs, s: &Sampling, exact: bool, factor: Option<&str>) -> Run {
    let (p, ws) = load(args, 2)?;
    let vals = ws
        .iter()
        .map(|w| make_weight_valuation(&p, w))
        .collect::<tropval_core::Result<Vec<_>>>()?;
    let config = s.config();
    let mut r = Report::new("cone");
    r.provenance(if exact {
        "exact mode: ray certificate, free-algebra monomial decision, else seeded search"
    } else {
        "sampled mode: seeded search for a refuting pair"
    })
    .provenance(format!("sampler: {}", sampling_line(s)));
    let mut ok = match vals.len() {
        2 => {
            let verdict = implies_check(&vals[0], &vals[1], &config, exact)?;
            r.field("v", &ws[0]).field("w", &ws[1]);
            relation_fields(&mut r, &verdict);
            !verdict.is_refuted()
        }
        3 => {
            let sum = cone_sum(&vals[0], &vals[1], &vals[2], &config)?;
            r.field("v", &ws[0]).field("w1", &ws[1]).field("w2", &ws[2]);
            if let Some(w) = sum.sum.weight() {
                r.field("sum", w);
            }
            failure_fields(&mut r, &sum.axioms, ToString::to_string);
            relation_fields(&mut r, &sum.implies);
            sum.axioms.verdict == Verdict::Valuation && !sum.implies.is_refuted()
        }
        n => return Err(Failure::usage(format!("cone takes 2 or 3 weights, got {n}"))),
    };
    if let Some(text) = factor {
        let scaled = scale(&vals[0], &parse_rational(text)?)?;
        if let Some(w) = scaled.valuation.weight() {
            r.field("scaled", w);
        }
        if let Some(same) = scaled.same_facet {
            r.field("same_facet", yes_no(same));
            ok &= same;
        }
    }
    Ok((pass_if(ok), r.render()))
}

pub fn arrow(args: &IdealArgs) -> Run {
    let (p, ws) = load(args, 2)?;
    let verdict = arrow_check(&p, &ws[0], &ws[1])?;
    let mut r = Report::new("arrow");
    r.provenance("in_v(in_w(I)) against in_v(I), as reduced grevlex bases")
        .field("v", &ws[0])
        .field("w", &ws[1]);
    relation_fields(&mut r, &verdict);
    Ok((pass_if(!verdict.is_refuted()), r.render()))
}

pub fn facets(args: &IdealArgs) -> Run {
    let (p, ws) = load(args, 1)?;
    let classes = facet_classes(&p, &ws)?;
    let mut r = Report::new("facets");
    r.provenance("weights grouped by equal initial ideals")
        .field("classes", classes.len());
    for (k, c) in classes.iter().enumerate() {
        let members: Vec<String> = c.members.iter().map(ToString::to_string).collect();
        r.field(
            format!("class {k}"),
            format!(
                "repr {}, members {}, initial_ideal {}",
                c.representative,
                members.join(" "),
                polys(&c.initial_ideal)
            ),
        );
    }
    Ok((EXIT_PASS, r.render()))
}

pub fn fan(args: &IdealArgs, bound: u32, denominator: u32) -> Run {
    let (p, _) = load(args, 0)?;
    if denominator == 0 {
        return Err(Failure::usage("--denominator must be positive"));
    }
    let classes = enumerate_fan(&p, bound, denominator)?;
    let mut r = Report::new("fan");
    r.provenance(format!(
        "grid with step 1/{denominator} in [-{bound}, {bound}]^{} grouped by initial ideal; monomial containment by saturation",
        p.ring().dim()
    ))
    .field("classes", classes.len());
    for (k, c) in classes.iter().enumerate() {
        r.field(
            format!("class {k}"),
            format!("repr {}, monomial_free: {}", c.representative, yes_no(c.monomial_free)),
        );
    }
    Ok((EXIT_PASS, r.render()))
}

fn load_algebra(a: &AlgebraArgs) -> Result<(GradedAlgebra, tropval_core::graded::LexFunctional), Failure> {
    let algebra = input::algebra(&a.algebra, a.truncation)?;
    let h = input::functional(&a.functional, algebra.rank())?;
    Ok((algebra, h))
}

pub fn graded_check(a: &AlgebraArgs, s: &Sampling, overrides: &[String], full: bool) -> Run {
    let (algebra, h) = load_algebra(a)?;
    let mut gv = GradedValuation::new(h);
    for text in overrides {
        let (e, value) = input::parse_override(&algebra, text)?;
        gv = gv.with_override(&algebra, e, value)?;
    }
    let config = s.config();
    let report = if full {
        check_full_axioms(&algebra, &gv, &config)?
    } else {
        check_graded_axioms(&algebra, &gv, &config)?
    };
    let mut r = Report::new("graded-check");
    r.provenance(if full {
        "full valuation axioms: multiplicativity on all pairs"
    } else {
        "graded valuation axioms: multiplicativity on homogeneous pairs, subadditivity on all pairs"
    })
    .provenance(format!("sampler: {}", sampling_line(s)))
    .field("check", if full { "full" } else { "graded" })
    .field("dimension", algebra.dim())
    .field("overrides", overrides.len());
    failure_fields(&mut r, &report, |e| algebra.format_element(e));
    Ok((pass_if(report.verdict == Verdict::Valuation), r.render()))
}

pub fn monoid_check(a: &AlgebraArgs, s: &Sampling) -> Run {
    let (algebra, h) = load_algebra(a)?;
    let report = check_monoid_theorem(&algebra, &h, &s.config())?;
    let mut r = Report::new("monoid-check");
    r.provenance("hypotheses exhaustive over basis pairs; conclusion on sampled inhomogeneous pairs")
        .provenance(format!("sampler: {}", sampling_line(s)))
        .field("cartan_components", yes_no(report.cartan_holds))
        .field("separates_grades", yes_no(report.separation_holds))
        .field("lower_triangular", yes_no(report.lower_triangular.holds));
    if let Some((i, j)) = report.cartan_witness {
        r.field(
            "cartan_witness",
            format!("{} * {}", algebra.basis_name(i), algebra.basis_name(j)),
        );
    }
    if let Some((t, u)) = &report.separation_witness {
        r.field("separation_witness", format!("{} {}", grade(t), grade(u)));
    }
    if let Some((i, j, g)) = &report.lower_triangular.witness {
        r.field(
            "lower_triangular_witness",
            format!(
                "{} * {} reaches {}",
                algebra.basis_name(*i),
                algebra.basis_name(*j),
                grade(g)
            ),
        );
    }
    r.field("pairs_checked", report.pairs_checked)
        .field("conclusion_failures", report.conclusion_failures.len());
    if let Some(f) = report.conclusion_failures.first() {
        r.field("witness_a", algebra.format_element(&f.a))
            .field("witness_b", algebra.format_element(&f.b))
            .field("expected", tuple(&f.expected))
            .field("product", f.product.as_deref().map_or("-inf".to_string(), tuple));
    }
    let code = if !report.hypotheses_hold() {
        EXIT_PRECONDITION
    } else {
        pass_if(report.conclusion_holds())
    };
    Ok((code, r.render()))
}

pub fn gr(a: &AlgebraArgs, zero_divisors: Option<u32>) -> Run {
    let (algebra, h) = load_algebra(a)?;
    let graded = associated_graded(&algebra, &h)?;
    let mut r = Report::new("gr");
    r.provenance("associated graded: each basis product keeps its maximal grades under the functional")
        .field("dimension", graded.dim())
        .field("components", graded.components().len());
    let mut code = EXIT_PASS;
    if let Some(bound) = zero_divisors {
        r.provenance(format!("zero-divisor search over pairs with deg a + deg b <= {bound}"));
        match zero_divisor_search(&graded, bound)? {
            None => {
                r.field("zero_divisor", "none");
            }
            Some(z) => {
                r.field("zero_divisor", "found")
                    .field("witness_a", graded.format_element(&z.a))
                    .field("witness_b", graded.format_element(&z.b));
                code = EXIT_REFUTED;
            }
        }
    }
    Ok((
        code,
        format!("{}{}", r.render_with_prefix("# "), format_graded_algebra(&graded)),
    ))
}

pub fn sl2_build(what: &'static str, n: u32) -> Run {
    let algebra = match what {
        "rep-ring" => sl2_rep_ring(n)?,
        _ => sl2_branching_algebra(n)?,
    };
    let mut r = Report::new("sl2lab");
    r.provenance(match what {
        "rep-ring" => "Q[x, y] graded by degree, basis x^(d-i) y^i",
        _ => {
            "Q[x1, x2, x3, z12, z13, z23]/(x1 z23 - x2 z13 + x3 z12), standard monomials, grades (a, b, c, eta, lambda)"
        }
    })
    .field("algebra", what)
    .field("truncation", n)
    .field("dimension", algebra.dim())
    .field("components", algebra.components().len());
    Ok((
        EXIT_PASS,
        format!("{}{}", r.render_with_prefix("# "), format_graded_algebra(&algebra)),
    ))
}

pub fn sl2_root(functional: &str, collapse: Option<usize>) -> Run {
    let h = input::functional(functional, 5)?;
    let (h, report): (_, RootReport) = root_functional(h.rows().to_vec())?;
    let report = match collapse {
        Some(k) => collapse_functional(&h, k)?.1,
        None => report,
    };
    let mut r = Report::new("sl2lab root");
    r.provenance("functional on (a, b, c, eta, lambda) evaluated on the positive root (0, 0, 0, 2, 0)");
    if let Some(k) = collapse {
        r.field("collapsed_row", k);
    }
    r.field("value_on_root", tuple(&report.value_on_root))
        .field("nonnegative", yes_no(report.nonnegative))
        .field("strict", yes_no(report.strict));
    Ok((pass_if(report.nonnegative), r.render()))
}
