//! Explicit bases for images, kernels and cohomology when `s ≥ 3`.
//!
//! For `n = ms + r` the families below describe `Im ∂̂ⁿ⁺¹ ⊂ Q̂ⁿ⁺¹`,
//! `Ker ∂̂ⁿ⁺¹ ⊂ Q̂ⁿ` and a set of representatives for `HHⁿ`. Each family is
//! checked against the computed matrices rather than trusted.

use std::fmt;

use serde::Serialize;

use super::formula::{branch_label, regime, Regime};
use super::{Cochain, CochainKind, CochainName, CochainSpace, CohomologyDegree};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// Signed sum of named basis cochains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCombination(pub Vec<(i64, CochainName)>);

impl NamedCombination {
    pub fn single(name: CochainName) -> Self {
        NamedCombination(vec![(1, name)])
    }

    pub fn cochain(&self, alg: &Algebra) -> Result<Cochain> {
        let n = self.0.first().map_or(0, |(_, name)| name.n);
        let mut f = Cochain::zero(n, alg);
        for (c, name) in &self.0 {
            f = f.add(&name.cochain(alg)?.scaled(&alg.field().from_i64(*c)));
        }
        Ok(f)
    }
}

impl fmt::Display for NamedCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (c, name)) in self.0.iter().enumerate() {
            match (k, *c) {
                (0, 1) => write!(f, "{name}")?,
                (0, -1) => write!(f, "-{name}")?,
                (0, c) => write!(f, "{c}*{name}")?,
                (_, 1) => write!(f, " + {name}")?,
                (_, -1) => write!(f, " - {name}")?,
                (_, c) if c < 0 => write!(f, " - {}*{name}", -c)?,
                (_, c) => write!(f, " + {c}*{name}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyRole {
    /// Spans `Im ∂̂ⁿ⁺¹` inside `Q̂ⁿ⁺¹`.
    Image,
    /// Spans `Ker ∂̂ⁿ⁺¹` inside `Q̂ⁿ`.
    Kernel,
    /// Represents a basis of `HHⁿ`.
    Cohomology,
}

#[derive(Clone, Debug, Serialize)]
pub struct StatedFamily {
    pub role: FamilyRole,
    pub elements: Vec<NamedCombination>,
    /// Variant with the signs as originally written, when it differs from `elements`.
    pub printed: Option<Vec<NamedCombination>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrintedStatus {
    /// Every printed element is a coboundary of a single basis cochain and together they span the image.
    Exact,
    /// Spans the image, but some element is not a single coboundary.
    SpanEqualElementMismatch,
    /// Does not span the image.
    Differs,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyCheck {
    pub role: FamilyRole,
    pub listed: usize,
    pub expected: usize,
    pub members_ok: bool,
    pub first_bad: Option<String>,
    pub independent: bool,
    /// Image families only: each element is `±∂̂` of a single basis cochain.
    pub element_level: Option<bool>,
    pub printed: Option<PrintedStatus>,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.members_ok && self.independent && self.listed == self.expected && self.element_level != Some(false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub n: usize,
    pub s: usize,
    pub characteristic: u64,
    pub branch: String,
    pub checks: Vec<FamilyCheck>,
}

impl BasisReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(FamilyCheck::passed)
    }
}

/// The image, kernel and cohomology families at degree `n`.
pub fn stated_families(n: usize, alg: &Algebra) -> Result<Vec<StatedFamily>> {
    use CochainKind::*;
    let s = alg.s();
    if s < 3 {
        return Err(Error::FormulaOutOfRange(s));
    }
    let (m, r) = (n / s, n % s);
    let ms = m * s;
    let surviving = regime(m, s, alg.field()) == Regime::Surviving;
    let prev = |i: usize| (i + s - 1) % s;
    let name = |k, deg, i, j| CochainName::new(k, deg, i, j);
    let sigma: i64 = if (ms + 1) % 2 == 0 { 1 } else { -1 };
    let image_range = if surviving { s - 1 } else { s };

    let image_r0 = |sg: i64| -> Vec<NamedCombination> {
        let d = n + 1;
        (0..image_range)
            .flat_map(|i| {
                (0..=ms).map(move |j| {
                    NamedCombination(vec![
                        (1, name(Beta, d, i, j + 1)),
                        (1, name(Gamma, d, i, j)),
                        (sg, name(Beta, d, prev(i), j + 1)),
                        (sg, name(Gamma, d, prev(i), j)),
                    ])
                })
            })
            .collect()
    };
    let image_r1 = |sg: i64| -> Vec<NamedCombination> {
        let d = n + 1;
        (0..image_range)
            .flat_map(|i| {
                (0..=ms + 2).map(move |j| NamedCombination(vec![(1, name(Delta, d, i, j)), (sg, name(Delta, d, prev(i), j))]))
            })
            .collect()
    };
    let with_printed = |corrected: Vec<NamedCombination>, printed: Vec<NamedCombination>| {
        let printed = (printed != corrected).then_some(printed);
        StatedFamily { role: FamilyRole::Image, elements: corrected, printed }
    };
    let image = match r {
        0 => with_printed(image_r0(sigma), image_r0(-1)),
        1 => with_printed(image_r1(sigma), image_r1(1)),
        _ => StatedFamily { role: FamilyRole::Image, elements: vec![], printed: None },
    };

    let column_sum = |k: CochainKind, j: usize| NamedCombination((0..s).map(|i| (1, name(k, n, i, j))).collect());
    let beta_gamma = |i: usize, j: usize| NamedCombination(vec![(1, name(Beta, n, i, j + 1)), (1, name(Gamma, n, i, j))]);

    let kernel: Vec<NamedCombination> = match (r, surviving) {
        (0, true) => (0..=ms).map(|j| column_sum(Alpha, j)).collect(),
        (1, false) => (0..s).flat_map(|i| (0..=ms).map(move |j| beta_gamma(i, j))).collect(),
        (1, true) => (0..=ms + 1)
            .map(|j| column_sum(Beta, j))
            .chain((0..s - 1).flat_map(|i| (0..=ms).map(move |j| beta_gamma(i, j))))
            .chain((0..=ms + 1).map(|j| column_sum(Gamma, j)))
            .collect(),
        (2, _) => (0..s)
            .flat_map(|i| (0..=ms + 2).map(move |j| NamedCombination::single(name(Delta, n, i, j))))
            .collect(),
        _ => vec![],
    };

    let cohomology: Vec<NamedCombination> = match (r, surviving) {
        (0, true) => (0..=ms).map(|j| column_sum(Alpha, j)).collect(),
        (1, true) => std::iter::once(column_sum(Beta, 0))
            .chain((0..=ms + 1).map(|j| column_sum(Gamma, j)))
            .chain((0..=ms).map(|j| beta_gamma(s - 1, j)))
            .collect(),
        (2, true) => (0..=ms + 2).map(|j| NamedCombination::single(name(Delta, n, s - 1, j))).collect(),
        _ => vec![],
    };

    Ok(vec![
        image,
        StatedFamily { role: FamilyRole::Kernel, elements: kernel, printed: None },
        StatedFamily { role: FamilyRole::Cohomology, elements: cohomology, printed: None },
    ])
}

fn vectors(space: &CochainSpace, alg: &Algebra, family: &[NamedCombination]) -> Result<Vec<Vec<Scalar>>> {
    family.iter().map(|c| Ok(space.coordinates(&c.cochain(alg)?))).collect()
}

fn column_rank(rows: usize, alg: &Algebra, vs: &[Vec<Scalar>]) -> usize {
    Matrix::from_columns(rows, alg.field(), vs).rank()
}

/// `v` equals `±` some column of `d`.
fn is_single_coboundary(d: &Matrix, v: &[Scalar]) -> bool {
    let neg: Vec<Scalar> = v.iter().map(|c| -c.clone()).collect();
    (0..d.cols()).any(|c| {
        let col = d.column(c);
        col == v || col == neg
    })
}

fn image_printed_status(deg: &CohomologyDegree, target_dim: usize, alg: &Algebra, vs: &[Vec<Scalar>]) -> PrintedStatus {
    let d = &deg.d_out;
    let inside = vs.iter().all(|v| d.solve(v).is_some());
    let spans = inside && column_rank(target_dim, alg, vs) == d.rank();
    if !spans {
        PrintedStatus::Differs
    } else if vs.iter().all(|v| is_single_coboundary(d, v)) {
        PrintedStatus::Exact
    } else {
        PrintedStatus::SpanEqualElementMismatch
    }
}

/// Checks every family at degree `n` against the computed coboundary matrices.
pub fn verify_stated_bases(n: usize, alg: &Algebra) -> Result<BasisReport> {
    let families = stated_families(n, alg)?;
    let deg = CohomologyDegree::new(n, alg);
    let target = CochainSpace::new(n + 1, alg);
    let field = alg.field();
    let mut checks = Vec::new();

    for fam in &families {
        let check = match fam.role {
            FamilyRole::Image => {
                let vs = vectors(&target, alg, &fam.elements)?;
                let bad = vs.iter().position(|v| deg.d_out.solve(v).is_none());
                FamilyCheck {
                    role: fam.role,
                    listed: vs.len(),
                    expected: deg.d_out.rank(),
                    members_ok: bad.is_none(),
                    first_bad: bad.map(|k| fam.elements[k].to_string()),
                    independent: column_rank(target.dim(), alg, &vs) == vs.len(),
                    element_level: Some(vs.iter().all(|v| is_single_coboundary(&deg.d_out, v))),
                    printed: Some(match &fam.printed {
                        None => image_printed_status(&deg, target.dim(), alg, &vs),
                        Some(p) => image_printed_status(&deg, target.dim(), alg, &vectors(&target, alg, p)?),
                    }),
                }
            }
            FamilyRole::Kernel => {
                let vs = vectors(&deg.space, alg, &fam.elements)?;
                let bad = vs.iter().position(|v| !deg.is_cocycle(v));
                FamilyCheck {
                    role: fam.role,
                    listed: vs.len(),
                    expected: deg.dim_ker(),
                    members_ok: bad.is_none(),
                    first_bad: bad.map(|k| fam.elements[k].to_string()),
                    independent: column_rank(deg.space.dim(), alg, &vs) == vs.len(),
                    element_level: None,
                    printed: None,
                }
            }
            FamilyRole::Cohomology => {
                let vs = vectors(&deg.space, alg, &fam.elements)?;
                let bad = vs.iter().position(|v| !deg.is_cocycle(v));
                FamilyCheck {
                    role: fam.role,
                    listed: vs.len(),
                    expected: deg.dim_hh(),
                    members_ok: bad.is_none(),
                    first_bad: bad.map(|k| fam.elements[k].to_string()),
                    independent: deg.class_rank(&vs) == vs.len(),
                    element_level: None,
                    printed: None,
                }
            }
        };
        checks.push(check);
    }

    Ok(BasisReport {
        n,
        s: alg.s(),
        characteristic: field.characteristic(),
        branch: branch_label(n, alg.s(), field).unwrap_or_default(),
        checks,
    })
}
