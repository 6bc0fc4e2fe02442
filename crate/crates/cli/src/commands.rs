use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::Result;
use hochschild_core::cochains::{build_dimension_table, hh_dimension_formula, verify_stated_bases, BasisReport, FamilyCheck, FamilyRole, PrintedStatus};
use hochschild_core::resolution::{verify_complex, verify_exact_and_minimal, verify_left_recursion, ComplexReport, ExactnessReport};
use hochschild_core::yoneda::{
    generator_degree, presentation_case, product_table, verify_nilpotence_samples, verify_presentation, LiftMethod,
    NilpotenceReport, PresentationCase, PresentationReport, ProductEntry,
};
use hochschild_core::{Algebra, FieldSpec, Scalar};
use serde::Serialize;

use crate::{Format, Method, Outcome, RunConfig};

fn field_name(f: FieldSpec) -> String {
    f.to_string()
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
struct DimsCsvRow {
    n: usize,
    dim_hom: usize,
    dim_ker: usize,
    dim_im: usize,
    dim_hh_computed: usize,
    dim_hh_formula: Option<usize>,
    agree: Option<bool>,
}

pub fn dims(cfg: &RunConfig) -> Result<Outcome> {
    let table = build_dimension_table(&cfg.alg, cfg.max_degree)?;
    let passed = table.all_agree();
    let body = match cfg.format {
        Format::Text => table.to_text(),
        Format::Json => json(&table)?,
        Format::Csv => csv_rows(table.rows.iter().map(|r| DimsCsvRow {
            n: r.n,
            dim_hom: r.dim_hom,
            dim_ker: r.dim_ker,
            dim_im: r.dim_im,
            dim_hh_computed: r.dim_hh_computed,
            dim_hh_formula: r.dim_hh_formula,
            agree: r.agree,
        }))?,
    };
    Ok(Outcome { body, passed })
}

#[derive(Serialize)]
struct RecursionRow {
    n: usize,
    holds: bool,
}

#[derive(Serialize)]
struct CheckLine {
    check: &'static str,
    passed: bool,
}

#[derive(Serialize)]
struct ResolutionSummary {
    s: usize,
    characteristic: u64,
    max_degree: usize,
    checks: Vec<CheckLine>,
    complex: ComplexReport,
    exactness: ExactnessReport,
    left_recursion: Vec<RecursionRow>,
}

pub fn verify_resolution(cfg: &RunConfig) -> Result<Outcome> {
    let alg = &cfg.alg;
    let n = cfg.max_degree;
    let complex = verify_complex(n, alg);
    // exactness at degree n needs the rank of ∂ⁿ⁺¹, so at least two differentials are built
    let exactness = verify_exact_and_minimal(n.max(2), alg);
    let left_recursion: Vec<RecursionRow> =
        (1..=n).map(|k| RecursionRow { n: k, holds: verify_left_recursion(k, alg.s()) }).collect();
    let checks = vec![
        CheckLine { check: "complex", passed: complex.passed() },
        CheckLine { check: "exactness", passed: exactness.exact() },
        CheckLine { check: "minimality", passed: exactness.minimal() },
        CheckLine { check: "left_recursion", passed: left_recursion.iter().all(|r| r.holds) },
    ];
    let passed = checks.iter().all(|c| c.passed);
    let summary = ResolutionSummary {
        s: alg.s(),
        characteristic: alg.field().characteristic(),
        max_degree: n,
        checks,
        complex,
        exactness,
        left_recursion,
    };
    let body = match cfg.format {
        Format::Json => json(&summary)?,
        Format::Csv => csv_rows(&summary.checks)?,
        Format::Text => {
            let mut out = format!("s = {}, field = {}, degrees up to {n}\n", alg.s(), field_name(alg.field()));
            for c in &summary.checks {
                let _ = write!(out, "{:<16} {}", c.check, status(c.passed));
                match c.check {
                    "complex" => {
                        if let Some(g) = summary.complex.failure {
                            let _ = write!(out, "  (first failure at {g})");
                        }
                    }
                    "exactness" => {
                        if let Some(k) = summary.exactness.first_inexact {
                            let _ = write!(out, "  (first inexact degree {k})");
                        }
                    }
                    "minimality" => {
                        if let Some(g) = summary.exactness.first_non_minimal {
                            let _ = write!(out, "  (unit term in the image of {g})");
                        }
                    }
                    _ => {}
                }
                out.push('\n');
            }
            let _ = writeln!(out, "overall          {}", status(passed));
            out
        }
    };
    Ok(Outcome { body, passed })
}

fn role_name(r: FamilyRole) -> &'static str {
    match r {
        FamilyRole::Image => "image",
        FamilyRole::Kernel => "kernel",
        FamilyRole::Cohomology => "cohomology",
    }
}

fn printed_name(p: PrintedStatus) -> &'static str {
    match p {
        PrintedStatus::Exact => "exact",
        PrintedStatus::SpanEqualElementMismatch => "span-equal, element-level mismatch",
        PrintedStatus::Differs => "differs",
    }
}

#[derive(Serialize)]
struct BasesCsvRow {
    n: usize,
    role: &'static str,
    listed: usize,
    expected: usize,
    members_ok: bool,
    independent: bool,
    printed_signs: Option<&'static str>,
    passed: bool,
}

#[derive(Serialize)]
struct BasesSummary {
    s: usize,
    characteristic: u64,
    max_degree: usize,
    sign_convention: &'static str,
    passed: bool,
    degrees: Vec<BasisReport>,
}

const SIGN_NOTE: &str = "image families use the sign (-1)^(ms+1) between neighbouring vertices; \
'printed signs' reports the variant with a fixed sign (- for r = 0, + for r = 1)";

pub fn verify_bases(cfg: &RunConfig) -> Result<Outcome> {
    let alg = &cfg.alg;
    let degrees: Vec<BasisReport> =
        (0..=cfg.max_degree).map(|n| verify_stated_bases(n, alg)).collect::<hochschild_core::Result<_>>()?;
    let passed = degrees.iter().all(BasisReport::passed);
    let body = match cfg.format {
        Format::Json => json(&BasesSummary {
            s: alg.s(),
            characteristic: alg.field().characteristic(),
            max_degree: cfg.max_degree,
            sign_convention: SIGN_NOTE,
            passed,
            degrees,
        })?,
        Format::Csv => csv_rows(degrees.iter().flat_map(|rep| {
            rep.checks.iter().map(move |c| BasesCsvRow {
                n: rep.n,
                role: role_name(c.role),
                listed: c.listed,
                expected: c.expected,
                members_ok: c.members_ok,
                independent: c.independent,
                printed_signs: c.printed.map(printed_name),
                passed: c.passed(),
            })
        }))?,
        Format::Text => {
            let mut out = format!("s = {}, field = {}, degrees 0..={}\n", alg.s(), field_name(alg.field()), cfg.max_degree);
            let _ = writeln!(out, "note: {SIGN_NOTE}");
            for rep in &degrees {
                let _ = writeln!(out, "n = {} ({})", rep.n, rep.branch);
                for c in &rep.checks {
                    let _ = write!(out, "  {:<10} {} {:>4} / {}", role_name(c.role), status(c.passed()), c.listed, c.expected);
                    text_check_detail(&mut out, c);
                    out.push('\n');
                }
            }
            let _ = writeln!(out, "overall {}", status(passed));
            out
        }
    };
    Ok(Outcome { body, passed })
}

fn text_check_detail(out: &mut String, c: &FamilyCheck) {
    if let Some(p) = c.printed {
        let _ = write!(out, "  printed signs: {}", printed_name(p));
    }
    if let Some(bad) = &c.first_bad {
        let _ = write!(out, "  first element outside: {bad}");
    }
    if !c.independent {
        out.push_str("  dependent");
    }
    if c.element_level == Some(false) {
        out.push_str("  not single coboundaries");
    }
}

fn lift_method(m: Method) -> LiftMethod {
    match m {
        Method::Theta => LiftMethod::Theta,
        Method::Generic => LiftMethod::Generic,
    }
}

/// Labels each product class by order of first appearance.
fn class_matrix(entries: &[ProductEntry], d: usize) -> Vec<Vec<usize>> {
    let mut labels: Vec<&[Scalar]> = Vec::new();
    let mut m = vec![vec![0; d + 1]; d + 1];
    for e in entries {
        let class = e.class_coordinates.as_slice();
        m[e.k][e.l] = labels.iter().position(|c| *c == class).unwrap_or_else(|| {
            labels.push(class);
            labels.len() - 1
        });
    }
    m
}

/// The classes depend exactly on `k + l`.
fn index_sum_law(m: &[Vec<usize>]) -> bool {
    let mut by_sum: BTreeMap<usize, usize> = BTreeMap::new();
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, row) in m.iter().enumerate() {
        for (l, &c) in row.iter().enumerate() {
            if *by_sum.entry(k + l).or_insert(c) != c || *seen.entry(c).or_insert(k + l) != k + l {
                return false;
            }
        }
    }
    true
}

fn render_matrix(out: &mut String, m: &[Vec<usize>]) {
    let _ = write!(out, "     ");
    for l in 0..m.len() {
        let _ = write!(out, "{l:>4}");
    }
    out.push('\n');
    for (k, row) in m.iter().enumerate() {
        let _ = write!(out, "{k:>4} ");
        for c in row {
            let _ = write!(out, "{c:>4}");
        }
        out.push('\n');
    }
}

fn scalar_text(c: &Scalar) -> String {
    serde_json::to_value(c).map(|v| v.to_string().trim_matches('"').to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct ProductCsvRow {
    k: usize,
    l: usize,
    degree: usize,
    class_coordinates: String,
}

#[derive(Serialize)]
struct ProductSummary<'a> {
    s: usize,
    characteristic: u64,
    generator_degree: usize,
    method: LiftMethod,
    index_sum_law: bool,
    entries: &'a [ProductEntry],
}

pub fn yoneda(cfg: &RunConfig, method: Method) -> Result<Outcome> {
    let alg = &cfg.alg;
    let d = generator_degree(alg.s(), alg.field());
    let entries = product_table(alg, lift_method(method))?;
    let matrix = class_matrix(&entries, d);
    let passed = index_sum_law(&matrix);
    let body = match cfg.format {
        Format::Json => json(&ProductSummary {
            s: alg.s(),
            characteristic: alg.field().characteristic(),
            generator_degree: d,
            method: lift_method(method),
            index_sum_law: passed,
            entries: &entries,
        })?,
        Format::Csv => csv_rows(entries.iter().map(|e| ProductCsvRow {
            k: e.k,
            l: e.l,
            degree: e.degree,
            class_coordinates: e.class_coordinates.iter().map(scalar_text).collect::<Vec<_>>().join(" "),
        }))?,
        Format::Text => {
            let mut out = format!(
                "s = {}, field = {}, D = {d}, products z_k × z_l in degree {}\n",
                alg.s(),
                field_name(alg.field()),
                2 * d
            );
            out.push_str("class of z_k × z_l (rows k, columns l, numbered by first appearance):\n");
            render_matrix(&mut out, &matrix);
            let _ = writeln!(out, "classes depend exactly on k + l: {}", status(passed));
            out
        }
    };
    Ok(Outcome { body, passed })
}

fn case_label(c: PresentationCase) -> &'static str {
    match c {
        PresentationCase::OddS => "case (i): s odd, characteristic not 2",
        PresentationCase::EvenOrCharTwo => "case (ii): s even or characteristic 2",
    }
}

/// Degrees below `D` carrying non-zero cohomology.
fn nilpotent_sample_degrees(alg: &Algebra, d: usize) -> Vec<usize> {
    (1..d).filter(|&n| hh_dimension_formula(n, alg.s(), alg.field()).map_or(false, |h| h > 0)).collect()
}

#[derive(Serialize)]
struct RingSummary {
    passed: bool,
    case: PresentationCase,
    generator_degree: usize,
    generator_count: usize,
    class_matrix: Vec<Vec<usize>>,
    presentation: PresentationReport,
    nilpotence: NilpotenceReport,
}

#[derive(Serialize)]
struct RingCsvRow {
    check: String,
    degree: usize,
    span_dim: usize,
    expected_dim: usize,
    passed: bool,
}

pub fn ring_check(cfg: &RunConfig, method: Method, powers: usize) -> Result<Outcome> {
    let alg = &cfg.alg;
    let (s, field) = (alg.s(), alg.field());
    let presentation = verify_presentation(s, field, powers, lift_method(method))?;
    let d = presentation.presentation.generator_degree;
    let nilpotence = verify_nilpotence_samples(s, field, &nilpotent_sample_degrees(alg, d))?;
    let matrix = class_matrix(&product_table(alg, lift_method(method))?, d);
    let passed = presentation.passed() && nilpotence.passed() && index_sum_law(&matrix);
    let summary = RingSummary {
        passed,
        case: presentation_case(s, field),
        generator_degree: d,
        generator_count: d + 1,
        class_matrix: matrix,
        presentation,
        nilpotence,
    };
    let body = match cfg.format {
        Format::Json => json(&summary)?,
        Format::Csv => {
            let mut rows: Vec<RingCsvRow> = summary
                .presentation
                .powers
                .iter()
                .map(|p| RingCsvRow {
                    check: format!("span_t{}", p.t),
                    degree: p.degree,
                    span_dim: p.span_dim,
                    expected_dim: p.expected_dim,
                    passed: p.passed(),
                })
                .collect();
            for x in &summary.nilpotence.samples {
                rows.push(RingCsvRow {
                    check: format!("nilpotent {}", x.representative),
                    degree: x.degree,
                    span_dim: 0,
                    expected_dim: 0,
                    passed: x.values_in_radical && x.vanishing_power.is_some(),
                });
            }
            csv_rows(rows)?
        }
        Format::Text => {
            let p = &summary.presentation;
            let mut out = format!("s = {s}, field = {}\n{}\n", field_name(field), case_label(summary.case));
            let _ = writeln!(out, "generator degree D = {d}, generators z_0..z_{d} ({})", summary.generator_count);
            let _ = writeln!(
                out,
                "relations z_k z_l = z_q z_r for k + l = q + r: {} (failures: {})",
                p.presentation.relations.len(),
                p.relation_failures.len()
            );
            for c in &p.powers {
                let _ = writeln!(
                    out,
                    "degree {:>3} (t = {}): span {} / expected {} / dim HH {}  {}",
                    c.degree,
                    c.t,
                    c.span_dim,
                    c.expected_dim,
                    c.dim_hh,
                    status(c.passed())
                );
            }
            out.push_str("class of z_k × z_l:\n");
            render_matrix(&mut out, &summary.class_matrix);
            let _ = writeln!(out, "commutativity: {}", status(p.noncommuting.is_empty()));
            if p.method == LiftMethod::Theta {
                let _ = writeln!(out, "explicit column-sum products: {}", status(p.explicit_formula_failures.is_empty()));
            }
            let n = &summary.nilpotence;
            let degrees: Vec<String> = n.samples.iter().map(|x| x.degree).collect::<std::collections::BTreeSet<_>>().iter().map(|d| d.to_string()).collect();
            let _ = writeln!(
                out,
                "nilpotence samples (degrees {}): {} classes, radical-valued {}, nilpotent {}",
                degrees.join(", "),
                n.samples.len(),
                status(n.samples.iter().all(|x| x.values_in_radical)),
                status(n.samples.iter().all(|x| x.vanishing_power.is_some()))
            );
            for x in n.samples.iter().filter(|x| x.vanishing_power.is_none() || !x.values_in_radical) {
                let _ = writeln!(out, "  ESSENTIAL: {} in degree {}", x.representative, x.degree);
            }
            let _ = writeln!(out, "overall: {}", status(passed));
            out
        }
    };
    Ok(Outcome { body, passed })
}
