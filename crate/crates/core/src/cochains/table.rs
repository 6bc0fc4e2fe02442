//! Per-degree comparison of computed and closed-form dimensions.

use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use super::{hat_matrix, CochainSpace};
use super::formula::{branch_label, hh_dimension_formula, im_ker_dimension_formula};
use crate::algebra::Algebra;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub n: usize,
    pub dim_hom: usize,
    /// `dim Ker ∂̂ⁿ⁺¹`.
    pub dim_ker: usize,
    /// `dim Im ∂̂ⁿ⁺¹`, the outgoing coboundary.
    pub dim_im: usize,
    pub dim_hh_computed: usize,
    pub dim_hh_formula: Option<usize>,
    pub dim_ker_formula: Option<usize>,
    pub dim_im_formula: Option<usize>,
    pub branch: Option<String>,
    /// Whether HH, Ker and Im all match their formulas; `None` when `s < 3`.
    pub agree: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionTable {
    pub s: usize,
    pub characteristic: u64,
    pub max_degree: usize,
    pub rows: Vec<DimensionRow>,
}

impl DimensionTable {
    /// True when every row with a formula agrees with it.
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree != Some(false))
    }

    pub fn first_disagreement(&self) -> Option<&DimensionRow> {
        self.rows.iter().find(|r| r.agree == Some(false))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

impl fmt::Display for DimensionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = if self.characteristic == 0 { "Q".to_string() } else { format!("F_{}", self.characteristic) };
        writeln!(f, "s = {}, field = {}, degrees 0..={}", self.s, field, self.max_degree)?;
        let mut out = String::new();
        let _ = writeln!(out, "{:>4} {:>7} {:>7} {:>7} {:>7} {:>7}  agree", "n", "hom", "ker", "im", "hh", "formula");
        for r in &self.rows {
            let agree = match r.agree {
                Some(true) => "AGREE",
                Some(false) => "DISAGREE",
                None => "-",
            };
            let _ = writeln!(
                out,
                "{:>4} {:>7} {:>7} {:>7} {:>7} {:>7}  {}",
                r.n,
                r.dim_hom,
                r.dim_ker,
                r.dim_im,
                r.dim_hh_computed,
                opt(r.dim_hh_formula),
                agree
            );
        }
        f.write_str(&out)
    }
}

/// Builds the table for degrees `0..=max_degree`, one coboundary matrix per degree in parallel.
pub fn build_dimension_table(alg: &Algebra, max_degree: usize) -> Result<DimensionTable> {
    let s = alg.s();
    let field = alg.field();
    // ranks[n] = rank ∂̂ⁿ⁺¹ ; also record whether ∂̂ⁿ⁺¹∂̂ⁿ = 0
    let per_degree: Vec<(usize, usize, bool)> = (0..=max_degree)
        .into_par_iter()
        .map(|n| {
            let out = hat_matrix(n, alg);
            let square_zero = n == 0 || out.mul(&hat_matrix(n - 1, alg)).is_zero();
            (CochainSpace::new(n, alg).dim(), out.rank(), square_zero)
        })
        .collect();

    let mut rows = Vec::with_capacity(max_degree + 1);
    for (n, &(dim_hom, rank_out, square_zero)) in per_degree.iter().enumerate() {
        if !square_zero {
            return Err(Error::ImageNotInKernel { degree: n });
        }
        let rank_in = if n == 0 { 0 } else { per_degree[n - 1].1 };
        let dim_ker = dim_hom - rank_out;
        let dim_hh_computed = dim_ker - rank_in;
        let hh_f = hh_dimension_formula(n, s, field).ok();
        let im_ker_f = im_ker_dimension_formula(n, s, field).ok();
        let agree = match (hh_f, im_ker_f) {
            (Some(h), Some((im, ker))) => Some(h == dim_hh_computed && ker == dim_ker && im == rank_out),
            _ => None,
        };
        rows.push(DimensionRow {
            n,
            dim_hom,
            dim_ker,
            dim_im: rank_out,
            dim_hh_computed,
            dim_hh_formula: hh_f,
            dim_ker_formula: im_ker_f.map(|p| p.1),
            dim_im_formula: im_ker_f.map(|p| p.0),
            branch: branch_label(n, s, field),
            agree,
        });
    }
    Ok(DimensionTable { s, characteristic: field.characteristic(), max_degree, rows })
}
