//! The cochain complex `Hom_{Λᵉ}(Q•, Λ_s)` and Hochschild cohomology dimensions.
//!
//! A cochain of degree `n` is identified with its values on the generators:
//! `f(b_{i,j}^n) ∈ e_i Λ_s e_{i+n}`. Coordinates on `Q̂ⁿ` run over generators in
//! position order and, inside each generator, over the corner basis.

mod families;
mod formula;
mod table;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{corner_basis, Algebra, AlgebraElement, BasisElement, Word};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar};
use crate::resolution::{differential, generator_count, generators, BimoduleElement, BimoduleMap, GeneratorIndex};

pub use families::{
    stated_families, verify_stated_bases, BasisReport, FamilyCheck, FamilyRole, NamedCombination, PrintedStatus,
    StatedFamily,
};
pub use formula::{branch_label, hh_dimension_formula, im_ker_dimension_formula, regime, Regime};
pub use table::{build_dimension_table, DimensionRow, DimensionTable};

/// Degree-`n` cochain `Qⁿ → Λ_s`, stored by generator value.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    s: usize,
    field: FieldSpec,
    values: Vec<AlgebraElement>,
}

impl Cochain {
    pub fn zero(degree: usize, alg: &Algebra) -> Self {
        Cochain {
            degree,
            s: alg.s(),
            field: alg.field(),
            values: vec![alg.zero(); generator_count(degree, alg.s())],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn value(&self, g: GeneratorIndex) -> &AlgebraElement {
        &self.values[g.position()]
    }

    pub fn values(&self) -> impl Iterator<Item = (GeneratorIndex, &AlgebraElement)> {
        self.values
            .iter()
            .enumerate()
            .map(move |(p, v)| (GeneratorIndex::from_position(self.degree, p), v))
    }

    /// Sets `f(b_{i,j}^n)`; the value must lie in `e_i Λ_s e_{i+n}`.
    pub fn set_value(&mut self, g: GeneratorIndex, value: AlgebraElement) -> Result<()> {
        if g.n != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: g.n });
        }
        let corner = corner_basis(self.s, g.i, g.n);
        if value.terms().any(|(b, _)| !corner.contains(b)) {
            return Err(Error::IncompatibleTerm { generator: g });
        }
        self.values[g.position()] = value;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(AlgebraElement::is_zero)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree, "cochains of different degree");
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            for (basis, c) in b.terms() {
                a.add_term(*basis, c.clone());
            }
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Cochain {
        Cochain {
            values: self.values.iter().map(|v| v.scaled(c)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scaled(&self.field.from_i64(-1)))
    }

    /// `f(x)` for `x ∈ Qⁿ`.
    pub fn evaluate(&self, alg: &Algebra, x: &BimoduleElement) -> AlgebraElement {
        assert_eq!(x.degree(), self.degree);
        let s = self.s;
        let mut out = alg.zero();
        for (t, c) in x.terms() {
            let (l, r) = (t.left_basis(s), t.right_basis(s));
            for (b, v) in self.values[t.generator.position()].terms() {
                let Some((lb, s1)) = alg.mul_basis(l, *b) else { continue };
                let Some((res, s2)) = alg.mul_basis(lb, r) else { continue };
                out.add_term(res, (c * v).scale_i64((s1 * s2) as i64));
            }
        }
        out
    }

    /// `f ∘ φ` for a bimodule map `φ : Qᴺ → Qⁿ`.
    pub fn precompose(&self, alg: &Algebra, map: &BimoduleMap) -> Cochain {
        assert_eq!(map.target(), self.degree, "map target does not match cochain degree");
        let mut out = Cochain::zero(map.source(), alg);
        for (p, img) in map.images().iter().enumerate() {
            out.values[p] = self.evaluate(alg, img);
        }
        out
    }

    /// Whether every value lies in the radical of `Λ_s`.
    pub fn values_in_radical(&self) -> bool {
        self.values.iter().all(AlgebraElement::in_radical)
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain[{}]{{", self.degree)?;
        let mut first = true;
        for (g, v) in self.values() {
            if v.is_zero() {
                continue;
            }
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "({},{}) -> {v}", g.i, g.j)?;
        }
        f.write_str("}")
    }
}

/// Coordinate system on `Q̂ⁿ`.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    degree: usize,
    s: usize,
    field: FieldSpec,
    coords: Vec<(GeneratorIndex, BasisElement)>,
    index: HashMap<(usize, BasisElement), usize>,
}

impl CochainSpace {
    pub fn new(degree: usize, alg: &Algebra) -> Self {
        let s = alg.s();
        let coords: Vec<(GeneratorIndex, BasisElement)> = generators(degree, s)
            .flat_map(|g| corner_basis(s, g.i, degree).into_iter().map(move |b| (g, b)))
            .collect();
        let index = coords
            .iter()
            .enumerate()
            .map(|(k, (g, b))| ((g.position(), *b), k))
            .collect();
        CochainSpace { degree, s, field: alg.field(), coords, index }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coordinate_labels(&self) -> &[(GeneratorIndex, BasisElement)] {
        &self.coords
    }

    pub fn coordinates(&self, f: &Cochain) -> Vec<Scalar> {
        assert_eq!(f.degree, self.degree);
        let mut v = vec![self.field.zero(); self.dim()];
        for (p, val) in f.values.iter().enumerate() {
            for (b, c) in val.terms() {
                let k = self.index[&(p, *b)];
                v[k] = c.clone();
            }
        }
        v
    }

    pub fn cochain(&self, alg: &Algebra, coords: &[Scalar]) -> Cochain {
        assert_eq!(coords.len(), self.dim());
        let mut f = Cochain::zero(self.degree, alg);
        for ((g, b), c) in self.coords.iter().zip(coords) {
            f.values[g.position()].add_term(*b, c.clone());
        }
        f
    }

    pub fn basis_cochain(&self, alg: &Algebra, k: usize) -> Cochain {
        let (g, b) = self.coords[k];
        let mut f = Cochain::zero(self.degree, alg);
        f.values[g.position()] = alg.element(b);
        debug_assert_eq!(b.vertex, g.i % self.s);
        f
    }
}

/// Which of the four named cochain families a basis cochain belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CochainKind {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl CochainKind {
    pub fn word(self) -> Word {
        match self {
            CochainKind::Alpha => Word::One,
            CochainKind::Beta => Word::X,
            CochainKind::Gamma => Word::Y,
            CochainKind::Delta => Word::XY,
        }
    }

    pub fn from_word(w: Word) -> Self {
        match w {
            Word::One => CochainKind::Alpha,
            Word::X => CochainKind::Beta,
            Word::Y => CochainKind::Gamma,
            Word::XY => CochainKind::Delta,
        }
    }
}

impl fmt::Display for CochainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CochainKind::Alpha => "alpha",
            CochainKind::Beta => "beta",
            CochainKind::Gamma => "gamma",
            CochainKind::Delta => "delta",
        })
    }
}

/// The cochain sending `b_{i,j}^n` to `e_i · word(kind)` and every other generator to 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CochainName {
    pub kind: CochainKind,
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

impl CochainName {
    pub fn new(kind: CochainKind, n: usize, i: usize, j: usize) -> Self {
        CochainName { kind, n, i, j }
    }

    /// Materializes the cochain; `i` is read modulo `s`.
    pub fn cochain(&self, alg: &Algebra) -> Result<Cochain> {
        let i = self.i % alg.s();
        let mut f = Cochain::zero(self.n, alg);
        f.set_value(
            GeneratorIndex::new(self.n, i, self.j),
            alg.element(BasisElement::new(i, self.kind.word())),
        )?;
        Ok(f)
    }
}

impl fmt::Display for CochainName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}_({},{})", self.kind, self.n, self.i, self.j)
    }
}

/// Named basis of `Q̂ⁿ`, branching on `s ∈ {1, 2, ≥3}` and the residue of `n`.
pub fn hom_basis_names(n: usize, s: usize) -> Vec<CochainName> {
    use CochainKind::*;
    let kinds: &[CochainKind] = match s {
        1 => &[Alpha, Beta, Gamma, Delta],
        2 if n % 2 == 0 => &[Alpha, Delta],
        2 => &[Beta, Gamma],
        _ => match n % s {
            0 => &[Alpha],
            1 => &[Beta, Gamma],
            2 => &[Delta],
            _ => &[],
        },
    };
    (0..s)
        .flat_map(|k| (0..=n).flat_map(move |l| kinds.iter().map(move |&kind| CochainName::new(kind, n, k, l))))
        .collect()
}

/// Named basis of `Q̂ⁿ` together with the materialized cochains, in coordinate order.
pub fn hom_basis(n: usize, alg: &Algebra) -> Vec<(CochainName, Cochain)> {
    hom_basis_names(n, alg.s())
        .into_iter()
        .map(|name| {
            let f = name.cochain(alg).expect("named basis cochains are corner-valued");
            (name, f)
        })
        .collect()
}

/// Matrix of `∂̂ⁿ⁺¹ : Q̂ⁿ → Q̂ⁿ⁺¹` in the coordinates of [`CochainSpace`].
pub fn hat_matrix(n: usize, alg: &Algebra) -> Matrix {
    let src = CochainSpace::new(n, alg);
    let dst = CochainSpace::new(n + 1, alg);
    if src.dim() == 0 || dst.dim() == 0 {
        return Matrix::zeros(dst.dim(), src.dim(), alg.field());
    }
    let d = differential(n + 1, alg);
    let columns: Vec<Vec<Scalar>> = (0..src.dim())
        .map(|k| dst.coordinates(&src.basis_cochain(alg, k).precompose(alg, &d)))
        .collect();
    Matrix::from_columns(dst.dim(), alg.field(), &columns)
}

/// Incoming and outgoing coboundary matrices at one degree.
#[derive(Clone, Debug)]
pub struct CohomologyDegree {
    pub n: usize,
    pub space: CochainSpace,
    /// `∂̂ⁿ : Q̂ⁿ⁻¹ → Q̂ⁿ` (zero columns when `n = 0`).
    pub d_in: Matrix,
    /// `∂̂ⁿ⁺¹ : Q̂ⁿ → Q̂ⁿ⁺¹`.
    pub d_out: Matrix,
}

impl CohomologyDegree {
    pub fn new(n: usize, alg: &Algebra) -> Self {
        let space = CochainSpace::new(n, alg);
        let d_in = if n == 0 {
            Matrix::zeros(space.dim(), 0, alg.field())
        } else {
            hat_matrix(n - 1, alg)
        };
        CohomologyDegree { n, d_out: hat_matrix(n, alg), d_in, space }
    }

    pub fn is_cocycle(&self, v: &[Scalar]) -> bool {
        self.d_out.mul_vec(v).iter().all(Scalar::is_zero)
    }

    pub fn is_coboundary(&self, v: &[Scalar]) -> bool {
        self.d_in.solve(v).is_some()
    }

    pub fn dim_ker(&self) -> usize {
        self.space.dim() - self.d_out.rank()
    }

    pub fn dim_im(&self) -> usize {
        self.d_in.rank()
    }

    pub fn dim_hh(&self) -> usize {
        self.dim_ker() - self.dim_im()
    }

    /// Dimension of the span of `vectors` modulo coboundaries.
    pub fn class_rank(&self, vectors: &[Vec<Scalar>]) -> usize {
        let stacked = self
            .d_in
            .hstack(&Matrix::from_columns(self.space.dim(), self.d_in.field(), vectors));
        stacked.rank() - self.d_in.rank()
    }
}

/// Canonical representatives of `Q̂ⁿ / Im ∂̂ⁿ`.
///
/// Reducing a vector against the reduced row echelon form of the coboundary
/// space gives a normal form that is equal for two vectors exactly when their
/// difference is a coboundary.
#[derive(Clone, Debug)]
pub struct ClassReducer {
    dim: usize,
    pivots: Vec<usize>,
    rows: Vec<crate::linalg::SparseVec>,
    free: Vec<usize>,
}

impl ClassReducer {
    pub fn new(deg: &CohomologyDegree) -> Self {
        let ech = deg.d_in.transpose().rref();
        let dim = deg.space.dim();
        let free = (0..dim).filter(|c| !ech.pivots.contains(c)).collect();
        ClassReducer { dim, pivots: ech.pivots, rows: ech.rows, free }
    }

    pub fn normal_form(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim);
        let mut out = v.to_vec();
        for (&p, row) in self.pivots.iter().zip(&self.rows) {
            if out[p].is_zero() {
                continue;
            }
            let k = out[p].clone();
            for (c, x) in row {
                out[*c] = &out[*c] - &(&k * x);
            }
        }
        out
    }

    /// Normal form restricted to the non-pivot coordinates.
    pub fn class_coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        let nf = self.normal_form(v);
        self.free.iter().map(|&c| nf[c].clone()).collect()
    }

    pub fn is_coboundary(&self, v: &[Scalar]) -> bool {
        self.normal_form(v).iter().all(Scalar::is_zero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HhDims {
    pub dim_hom: usize,
    pub dim_ker: usize,
    pub dim_im: usize,
    pub dim_hh: usize,
}

/// Brute-force `dim Ker ∂̂ⁿ⁺¹`, `dim Im ∂̂ⁿ`, and `dim HHⁿ`, checking `Im ⊆ Ker`.
pub fn hh_dimension_computed(n: usize, alg: &Algebra) -> Result<HhDims> {
    let deg = CohomologyDegree::new(n, alg);
    for c in 0..deg.d_in.cols() {
        if !deg.is_cocycle(&deg.d_in.column(c)) {
            return Err(Error::ImageNotInKernel { degree: n });
        }
    }
    Ok(HhDims {
        dim_hom: deg.space.dim(),
        dim_ker: deg.dim_ker(),
        dim_im: deg.dim_im(),
        dim_hh: deg.dim_hh(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: usize, p: u64) -> Algebra {
        Algebra::new(s, FieldSpec::new(p).unwrap()).unwrap()
    }

    #[test]
    fn hom_basis_examples() {
        let a3 = alg(3, 0);
        let b = hom_basis(3, &a3);
        assert_eq!(b.len(), 12);
        assert!(b.iter().all(|(n, _)| n.kind == CochainKind::Alpha));
        let b1 = hom_basis(1, &a3);
        assert_eq!(b1.len(), 12);
        assert!(hom_basis(3, &alg(5, 0)).is_empty());
    }

    #[test]
    fn hom_basis_matches_corner_coordinates() {
        for s in 1..=6 {
            let a = alg(s, 0);
            for n in 0..=3 * s {
                let space = CochainSpace::new(n, &a);
                let names = hom_basis(n, &a);
                let corner_total: usize = generators(n, s).map(|g| a.corner_basis(g.i, n).len()).sum();
                assert_eq!(space.dim(), corner_total);
                assert_eq!(names.len(), space.dim());
                for (k, (name, f)) in names.iter().enumerate() {
                    let (g, b) = space.coordinate_labels()[k];
                    assert_eq!((name.i, name.j, name.kind.word()), (g.i, g.j, b.word));
                    let coords = space.coordinates(f);
                    assert!(coords.iter().enumerate().all(|(t, c)| c.is_one() == (t == k) && (t == k || c.is_zero())));
                }
            }
        }
    }

    #[test]
    fn corner_violation_rejected() {
        let a = alg(3, 0);
        let mut f = Cochain::zero(1, &a);
        let g = GeneratorIndex::new(1, 0, 0);
        assert!(f.set_value(g, a.idempotent(0)).is_err());
        assert!(f.set_value(g, a.element(BasisElement::new(0, Word::X))).is_ok());
    }

    #[test]
    fn first_coboundary_matrix() {
        let a = alg(3, 0);
        let m = hat_matrix(0, &a);
        assert_eq!((m.rows(), m.cols()), (12, 3));
        assert_eq!(m.rank(), 2);
        // column of alpha_{i,0}: +beta_{i,1} + gamma_{i,0} - beta_{i-1,1} - gamma_{i-1,0}
        let dst = CochainSpace::new(1, &a);
        let name = |k, i, j| CochainName::new(k, 1, i, j).cochain(&a).unwrap();
        for i in 0..3usize {
            let prev = (i + 2) % 3;
            let want = name(CochainKind::Beta, i, 1)
                .add(&name(CochainKind::Gamma, i, 0))
                .sub(&name(CochainKind::Beta, prev, 1))
                .sub(&name(CochainKind::Gamma, prev, 0));
            assert_eq!(m.column(i), dst.coordinates(&want));
        }
    }

    #[test]
    fn delta_cochains_are_cocycles() {
        assert!(hat_matrix(2, &alg(3, 0)).is_zero());
        let m = hat_matrix(3, &alg(5, 0));
        assert_eq!((m.rows(), m.cols()), (0, 0));
    }

    #[test]
    fn computed_dimensions_small() {
        let a = alg(3, 0);
        assert_eq!(hh_dimension_computed(0, &a).unwrap().dim_hh, 1);
        assert_eq!(hh_dimension_computed(1, &a).unwrap().dim_hh, 4);
        assert_eq!(hh_dimension_computed(3, &a).unwrap().dim_hh, 0);
        assert_eq!(hh_dimension_computed(3, &alg(3, 2)).unwrap().dim_hh, 4);
    }
}
