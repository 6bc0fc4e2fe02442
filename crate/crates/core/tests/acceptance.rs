//! End-to-end acceptance checks. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; the process exits non-zero if
//! any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use hochschild_core::cochains::{build_dimension_table, hat_matrix, stated_families, verify_stated_bases, DimensionTable, FamilyRole};
use hochschild_core::resolution::{verify_complex, verify_exact_and_minimal, verify_left_recursion};
use hochschild_core::yoneda::{
    cohomologous, generator_cocycle, generator_degree, generic_lift, product_table, verify_presentation, yoneda_product_with,
    LiftMethod, LiftingChain,
};
use hochschild_core::{Algebra, FieldSpec};

const CHARS: [u64; 3] = [0, 2, 3];

struct Outcome {
    pass: bool,
    detail: String,
}

fn field(p: u64) -> FieldSpec {
    FieldSpec::new(p).expect("valid characteristic")
}

fn tables() -> Vec<DimensionTable> {
    let mut out = Vec::new();
    for s in 3..=6 {
        for p in CHARS {
            let alg = Algebra::new(s, field(p)).unwrap();
            out.push(build_dimension_table(&alg, 3 * s + 2).expect("coboundaries square to zero"));
        }
    }
    out
}

fn dimension_formula(tables: &[DimensionTable]) -> Outcome {
    let mut bad = Vec::new();
    let mut rows = 0;
    for t in tables {
        for r in &t.rows {
            rows += 1;
            if r.dim_hh_formula != Some(r.dim_hh_computed) {
                bad.push(format!("s={} p={} n={}: {} vs {:?}", t.s, t.characteristic, r.n, r.dim_hh_computed, r.dim_hh_formula));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: if bad.is_empty() { format!("{rows} degrees") } else { bad.join("; ") } }
}

fn image_kernel(tables: &[DimensionTable]) -> Outcome {
    let mut bad = Vec::new();
    let mut rows = 0;
    for t in tables {
        for r in &t.rows {
            rows += 1;
            if r.dim_im_formula != Some(r.dim_im) || r.dim_ker_formula != Some(r.dim_ker) {
                bad.push(format!("s={} p={} n={}", t.s, t.characteristic, r.n));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: if bad.is_empty() { format!("{rows} degrees") } else { bad.join("; ") } }
}

fn resolution_certificate() -> Outcome {
    let mut bad = Vec::new();
    for s in 1..=6 {
        for p in CHARS {
            let alg = Algebra::new(s, field(p)).unwrap();
            let n = 2 * s + 4;
            let complex = verify_complex(n, &alg);
            if !complex.passed() {
                bad.push(format!("s={s} p={p}: d∘d ≠ 0 at {:?}", complex.failure));
            }
            let exact = verify_exact_and_minimal(n, &alg);
            if !exact.passed() {
                bad.push(format!(
                    "s={s} p={p}: inexact at {:?}, non-minimal at {:?}",
                    exact.first_inexact, exact.first_non_minimal
                ));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: if bad.is_empty() { "s=1..6, p∈{0,2,3}, n≤2s+4".into() } else { bad.join("; ") } }
}

fn stated_bases() -> Outcome {
    let mut bad = Vec::new();
    let mut families = 0;
    for s in 3..=5 {
        for p in CHARS {
            let alg = Algebra::new(s, field(p)).unwrap();
            for n in 0..=2 * s + 2 {
                let rep = verify_stated_bases(n, &alg).unwrap();
                for c in &rep.checks {
                    families += 1;
                    if !c.passed() {
                        bad.push(format!("s={s} p={p} n={n} {:?}: {:?}", c.role, c));
                    }
                }
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: if bad.is_empty() { format!("{families} families") } else { bad.join("; ") } }
}

fn ring_presentation() -> Outcome {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for s in [3, 4] {
        for p in [0, 2] {
            for method in [LiftMethod::Theta, LiftMethod::Generic] {
                let rep = verify_presentation(s, field(p), 2, method).unwrap();
                let d = rep.presentation.generator_degree;
                let deg2 = &rep.powers[1];
                if !rep.passed() || deg2.span_dim != 2 * d + 1 || deg2.dim_hh != 2 * d + 1 {
                    bad.push(format!("s={s} p={p} {method:?}: {rep:?}"));
                }
                if method == LiftMethod::Generic {
                    notes.push(format!("s={s} p={p} D={d} span={}", deg2.span_dim));
                }
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: if bad.is_empty() { notes.join(", ") } else { bad.join("; ") } }
}

fn lifting_equivalence() -> Outcome {
    let mut bad = Vec::new();
    for p in [0, 2] {
        let alg = Algebra::new(3, field(p)).unwrap();
        let theta = product_table(&alg, LiftMethod::Theta).unwrap();
        let generic = product_table(&alg, LiftMethod::Generic).unwrap();
        for (a, b) in theta.iter().zip(&generic) {
            if (a.k, a.l) != (b.k, b.l) || a.class_coordinates != b.class_coordinates {
                bad.push(format!("p={p} (k,l)=({},{})", a.k, a.l));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: if bad.is_empty() { "s=3, p∈{0,2}, all pairs".into() } else { bad.join("; ") } }
}

/// Cocycles used for the product identities: cohomology representatives in low
/// degrees plus a polynomial generator.
fn sample_cocycles(alg: &Algebra) -> Vec<hochschild_core::cochains::Cochain> {
    let mut out = Vec::new();
    for n in [1, 2] {
        let fams = stated_families(n, alg).unwrap();
        let reps = &fams.iter().find(|f| f.role == FamilyRole::Cohomology).unwrap().elements;
        out.extend(reps.iter().take(2).map(|r| r.cochain(alg).unwrap()));
    }
    out.push(generator_cocycle(1, alg));
    out
}

fn property_suite() -> Outcome {
    let mut bad = Vec::new();
    let mut counts = [0usize; 4];

    for p in [0, 2] {
        let alg = Algebra::new(3, field(p)).unwrap();
        let pool = sample_cocycles(&alg);
        let max_deg: usize = pool.iter().map(|f| f.degree()).max().unwrap();
        let chains: Vec<LiftingChain> = pool.iter().map(|f| generic_lift(f, 2 * max_deg, &alg).unwrap()).collect();
        let prod = |f: &hochschild_core::cochains::Cochain, c: &LiftingChain| yoneda_product_with(f, c, &alg).unwrap();

        for (a, f) in pool.iter().enumerate() {
            for (b, g) in pool.iter().enumerate() {
                counts[1] += 1;
                let fg = prod(f, &chains[b]);
                let gf = prod(g, &chains[a]);
                let sign = if (f.degree() * g.degree()) % 2 == 0 { 1 } else { -1 };
                let twisted = gf.scaled(&alg.field().from_i64(sign));
                if !cohomologous(&fg, &twisted, &alg) {
                    bad.push(format!("p={p} commutativity ({a},{b})"));
                }
                if f.degree() + g.degree() > max_deg + 2 {
                    continue;
                }
                for (c, h) in pool.iter().enumerate() {
                    if f.degree() + g.degree() + h.degree() > 3 * generator_degree(3, alg.field()) {
                        continue;
                    }
                    counts[0] += 1;
                    // (f × g) × h  versus  f × (g × h)
                    let left = prod(&fg, &chains[c]);
                    let gh = prod(g, &chains[c]);
                    let gh_chain = generic_lift(&gh, f.degree(), &alg).unwrap();
                    let right = prod(f, &gh_chain);
                    if !cohomologous(&left, &right, &alg) {
                        bad.push(format!("p={p} associativity ({a},{b},{c})"));
                    }
                }
            }
        }
    }

    for s in 1..=5 {
        for p in CHARS {
            let alg = Algebra::new(s, field(p)).unwrap();
            for n in 0..=3 * s + 2 {
                let m = hat_matrix(n, &alg);
                let kernel = m.kernel_basis();
                counts[2] += 1;
                let annihilated = kernel.iter().all(|v| m.mul_vec(v).iter().all(|x| x.is_zero()));
                if m.rank() + kernel.len() != m.cols() || !annihilated || m.transpose().rank() != m.rank() {
                    bad.push(format!("rank bookkeeping s={s} p={p} n={n}"));
                }
            }
        }
    }

    for s in 1..=4 {
        for n in 1..=12 {
            counts[3] += 1;
            if !verify_left_recursion(n, s) {
                bad.push(format!("left recursion s={s} n={n}"));
            }
        }
    }

    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!(
                "{} associativity triples, {} commutativity pairs, {} matrices, {} recursion cases",
                counts[0], counts[1], counts[2], counts[3]
            )
        } else {
            bad.join("; ")
        },
    }
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report = |label: &str, run: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let out = run();
        all &= out.pass;
        println!(
            "criterion {label}: {} ({:.1}s) {}",
            if out.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            out.detail
        );
    };
    let start = Instant::now();
    let t = tables();
    println!("dimension tables built in {:.1}s", start.elapsed().as_secs_f64());
    report("1 dimension formula", &|| dimension_formula(&t));
    report("2 image/kernel dimensions", &|| image_kernel(&t));
    report("3 resolution certificate", &resolution_certificate);
    report("4 stated bases", &stated_bases);
    report("5 ring presentation", &ring_presentation);
    report("6 lifting equivalence", &lifting_equivalence);
    report("7 property suite", &property_suite);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
