//! Minimal projective bimodule resolution `(Q•, ∂•)` of `Λ_s`.
//!
//! `Qⁿ` is free on generators `b_{i,j}^n = e_i ⊗ e_{i+n}` for `0 ≤ i < s`,
//! `0 ≤ j ≤ n`, so as a vector space it has the tensor basis
//! `λ ⊗ b_{i,j}^n ⊗ μ` with `λ ∈ Λ e_i`, `μ ∈ e_{i+n} Λ` (16 per generator).
//! A term is stored as `(generator, left word, right word)`; the vertices of
//! the two factors are then forced.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraElement, BasisElement, Word};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar};

/// Label of the free generator `b_{i,j}^n` of `Qⁿ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GeneratorIndex {
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

impl GeneratorIndex {
    pub fn new(n: usize, i: usize, j: usize) -> Self {
        GeneratorIndex { n, i, j }
    }

    /// Position among the generators of `Qⁿ` (vertex-major).
    pub fn position(&self) -> usize {
        self.i * (self.n + 1) + self.j
    }

    pub fn from_position(n: usize, pos: usize) -> Self {
        GeneratorIndex {
            n,
            i: pos / (n + 1),
            j: pos % (n + 1),
        }
    }

    pub fn terminus(&self, s: usize) -> usize {
        (self.i + self.n) % s
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b^{}_({},{})", self.n, self.i, self.j)
    }
}

/// Generators of `Qⁿ` in position order.
pub fn generators(n: usize, s: usize) -> impl Iterator<Item = GeneratorIndex> {
    (0..s).flat_map(move |i| (0..=n).map(move |j| GeneratorIndex::new(n, i, j)))
}

pub fn generator_count(n: usize, s: usize) -> usize {
    s * (n + 1)
}

/// `dim_K Qⁿ = 16 s (n+1)`.
pub fn q_dim(n: usize, s: usize) -> usize {
    16 * generator_count(n, s)
}

/// A path in `{x, y}*` of length `len`; bit `k` set means the `k`-th letter is `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub len: u32,
    pub bits: u64,
}

impl PathWord {
    pub const EMPTY: PathWord = PathWord { len: 0, bits: 0 };

    pub fn x_count(&self) -> u32 {
        self.bits.count_ones()
    }

    fn append(self, x: bool) -> PathWord {
        PathWord {
            len: self.len + 1,
            bits: self.bits | ((x as u64) << self.len),
        }
    }

    fn prepend(self, x: bool) -> PathWord {
        PathWord {
            len: self.len + 1,
            bits: (self.bits << 1) | x as u64,
        }
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return f.write_str("1");
        }
        for k in 0..self.len {
            f.write_str(if self.bits >> k & 1 == 1 { "x" } else { "y" })?;
        }
        Ok(())
    }
}

/// Uniform element `g_{i,j}^n` of the path algebra as a formal sum of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GElement {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub expansion: BTreeMap<PathWord, i64>,
}

impl GElement {
    pub fn origin(&self) -> usize {
        self.i
    }

    pub fn terminus(&self, s: usize) -> usize {
        (self.i + self.n) % s
    }

    /// True iff the expansion is the sum of all words with exactly `j` x's, each once.
    pub fn is_full_binomial_sum(&self) -> bool {
        let count = binomial(self.n as u64, self.j as u64);
        self.expansion.len() as u64 == count
            && self.expansion.iter().all(|(w, &c)| {
                c == 1 && w.len as usize == self.n && w.x_count() as usize == self.j
            })
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, t| acc * (n - t) / (t + 1))
}

fn add_words(into: &mut BTreeMap<PathWord, i64>, from: &BTreeMap<PathWord, i64>, f: impl Fn(PathWord) -> PathWord) {
    for (w, c) in from {
        let e = into.entry(f(*w)).or_insert(0);
        *e += c;
        if *e == 0 {
            into.remove(&f(*w));
        }
    }
}

/// The sets `𝒢⁰, …, 𝒢ⁿ`, built by the right recursion
/// `g_{i,j}^n = g_{i,j-1}^{n-1} x + g_{i,j}^{n-1} y`.
///
/// Expansions have `2ⁿ` words per vertex in total; keep `n` small.
pub fn g_sets(n: usize, s: usize) -> Vec<Vec<GElement>> {
    assert!(n < 64, "word expansions are limited to length 63");
    let mut sets = Vec::with_capacity(n + 1);
    sets.push(
        (0..s)
            .map(|i| GElement {
                n: 0,
                i,
                j: 0,
                expansion: BTreeMap::from([(PathWord::EMPTY, 1)]),
            })
            .collect::<Vec<_>>(),
    );
    for m in 1..=n {
        let prev: &Vec<GElement> = &sets[m - 1];
        let cur = (0..s)
            .flat_map(|i| (0..=m).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut expansion = BTreeMap::new();
                if j >= 1 {
                    add_words(&mut expansion, &prev[i * m + j - 1].expansion, |w| w.append(true));
                }
                if j < m {
                    add_words(&mut expansion, &prev[i * m + j].expansion, |w| w.append(false));
                }
                GElement { n: m, i, j, expansion }
            })
            .collect();
        sets.push(cur);
    }
    sets
}

/// The set `𝒢ⁿ` (`s(n+1)` elements, vertex-major).
pub fn g_set(n: usize, s: usize) -> Vec<GElement> {
    g_sets(n, s).pop().unwrap()
}

/// Checks `g_{i,j}^n = y g_{i+1,j}^{n-1} + x g_{i+1,j-1}^{n-1}` (with the
/// boundary cases `j = 0`, `j = n`) for every element of `cur` against `prev`.
pub fn left_recursion_holds(prev: &[GElement], cur: &[GElement], s: usize) -> bool {
    let Some(first) = cur.first() else {
        return true;
    };
    let n = first.n;
    if n == 0 || prev.len() != s * n || cur.len() != s * (n + 1) {
        return false;
    }
    cur.iter().all(|g| {
        let next = (g.i + 1) % s;
        let mut expected = BTreeMap::new();
        if g.j < n {
            add_words(&mut expected, &prev[next * n + g.j].expansion, |w| w.prepend(false));
        }
        if g.j >= 1 {
            add_words(&mut expected, &prev[next * n + g.j - 1].expansion, |w| w.prepend(true));
        }
        expected == g.expansion
    })
}

/// Left-recursion check for degree `n ≥ 1`.
pub fn verify_left_recursion(n: usize, s: usize) -> bool {
    assert!(n >= 1);
    let sets = g_sets(n, s);
    left_recursion_holds(&sets[n - 1], &sets[n], s)
}

/// Tensor term `λ ⊗ b ⊗ μ`; `left` is the word of `λ ∈ Λ e_i`, `right` the word of `μ ∈ e_{i+n} Λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub generator: GeneratorIndex,
    pub left: Word,
    pub right: Word,
}

impl Term {
    pub fn left_basis(&self, s: usize) -> BasisElement {
        let v = (self.generator.i + s * 3 - self.left.degree()) % s;
        BasisElement::new(v, self.left)
    }

    pub fn right_basis(&self, s: usize) -> BasisElement {
        BasisElement::new(self.generator.terminus(s), self.right)
    }

    /// Coordinate in the generator-major tensor basis of `Qⁿ`.
    pub fn flat_index(&self) -> usize {
        16 * self.generator.position() + 4 * self.left.index() + self.right.index()
    }

    pub fn from_flat_index(n: usize, idx: usize) -> Self {
        Term {
            generator: GeneratorIndex::from_position(n, idx / 16),
            left: Word::ALL[(idx / 4) % 4],
            right: Word::ALL[idx % 4],
        }
    }

    /// Internal degree `deg λ + n + deg μ`.
    pub fn internal_degree(&self) -> usize {
        self.left.degree() + self.generator.n + self.right.degree()
    }
}

/// Element of `Qⁿ`.
#[derive(Clone, PartialEq, Eq)]
pub struct BimoduleElement {
    degree: usize,
    s: usize,
    field: FieldSpec,
    terms: BTreeMap<Term, Scalar>,
}

impl BimoduleElement {
    pub fn zero(degree: usize, s: usize, field: FieldSpec) -> Self {
        BimoduleElement {
            degree,
            s,
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The generator `b` itself, `e_i ⊗ b ⊗ e_{i+n}`.
    pub fn generator(g: GeneratorIndex, s: usize, field: FieldSpec) -> Self {
        let mut e = Self::zero(g.n, s, field);
        e.push(Term { generator: g, left: Word::One, right: Word::One }, field.one());
        e
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · λ ⊗ g ⊗ μ`, checking that `λ` ends at `i` and `μ` starts at `i+n`.
    pub fn add_term(&mut self, g: GeneratorIndex, left: BasisElement, right: BasisElement, c: Scalar) -> Result<()> {
        let s = self.s;
        let ok = g.n == self.degree
            && g.i < s
            && g.j <= g.n
            && left.terminus(s) == g.i
            && right.origin() == g.terminus(s);
        if !ok {
            return Err(Error::IncompatibleTerm { generator: g });
        }
        self.push(Term { generator: g, left: left.word, right: right.word }, c);
        Ok(())
    }

    pub(crate) fn push(&mut self, t: Term, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(t.generator.n, self.degree);
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &BimoduleElement) {
        for (t, c) in &other.terms {
            self.push(*t, c.clone());
        }
    }

    pub fn scaled(&self, c: &Scalar) -> BimoduleElement {
        let mut out = Self::zero(self.degree, self.s, self.field);
        for (t, v) in &self.terms {
            out.push(*t, v * c);
        }
        out
    }

    /// Flattened coordinates as a sparse vector.
    pub fn to_sparse(&self) -> Vec<(usize, Scalar)> {
        let mut v: Vec<(usize, Scalar)> = self.terms.iter().map(|(t, c)| (t.flat_index(), c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn from_sparse(degree: usize, s: usize, field: FieldSpec, coords: &[(usize, Scalar)]) -> Self {
        let mut e = Self::zero(degree, s, field);
        for (idx, c) in coords {
            e.push(Term::from_flat_index(degree, *idx), c.clone());
        }
        e
    }

    /// Left and right multiplication by basis elements: `a · self · b`.
    pub fn sandwich(&self, alg: &Algebra, a: BasisElement, b: BasisElement, c: &Scalar) -> BimoduleElement {
        let s = self.s;
        let mut out = Self::zero(self.degree, s, self.field);
        for (t, v) in &self.terms {
            let Some((l, sl)) = alg.mul_basis(a, t.left_basis(s)) else { continue };
            let Some((r, sr)) = alg.mul_basis(t.right_basis(s), b) else { continue };
            out.push(
                Term { generator: t.generator, left: l.word, right: r.word },
                (v * c).scale_i64((sl * sr) as i64),
            );
        }
        out
    }
}

impl fmt::Debug for BimoduleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| format!("{c}*({}|{}|{})", t.left, t.generator, t.right))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Bimodule homomorphism `Q^source → Q^target`, fixed by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    source: usize,
    target: usize,
    s: usize,
    field: FieldSpec,
    images: Vec<BimoduleElement>,
}

impl BimoduleMap {
    pub fn zero(source: usize, target: usize, s: usize, field: FieldSpec) -> Self {
        BimoduleMap {
            source,
            target,
            s,
            field,
            images: vec![BimoduleElement::zero(target, s, field); generator_count(source, s)],
        }
    }

    /// Builds a map from images listed in generator position order.
    pub fn from_images(source: usize, target: usize, s: usize, field: FieldSpec, images: Vec<BimoduleElement>) -> Self {
        assert_eq!(images.len(), generator_count(source, s));
        assert!(images.iter().all(|e| e.degree == target));
        BimoduleMap { source, target, s, field, images }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn image(&self, g: GeneratorIndex) -> &BimoduleElement {
        &self.images[g.position()]
    }

    pub fn images(&self) -> &[BimoduleElement] {
        &self.images
    }

    pub fn set_image(&mut self, g: GeneratorIndex, e: BimoduleElement) {
        assert_eq!(e.degree, self.target);
        self.images[g.position()] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(BimoduleElement::is_zero)
    }

    pub fn apply(&self, alg: &Algebra, x: &BimoduleElement) -> BimoduleElement {
        assert_eq!(x.degree, self.source, "element degree does not match map source");
        let s = self.s;
        let mut out = BimoduleElement::zero(self.target, s, self.field);
        for (t, c) in &x.terms {
            let img = &self.images[t.generator.position()];
            if t.left == Word::One && t.right == Word::One {
                for (u, v) in &img.terms {
                    out.push(*u, c * v);
                }
            } else {
                out.add_assign(&img.sandwich(alg, t.left_basis(s), t.right_basis(s), c));
            }
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, alg: &Algebra, inner: &BimoduleMap) -> BimoduleMap {
        assert_eq!(inner.target, self.source, "maps are not composable");
        let images = inner.images.iter().map(|e| self.apply(alg, e)).collect();
        BimoduleMap {
            source: inner.source,
            target: self.target,
            s: self.s,
            field: self.field,
            images,
        }
    }

    /// Matrix of the underlying linear map in the generator-major tensor bases.
    pub fn flatten(&self, alg: &Algebra) -> Matrix {
        let s = self.s;
        let mut triplets = Vec::new();
        for g in generators(self.source, s) {
            let img = &self.images[g.position()];
            for &lw in &Word::ALL {
                for &rw in &Word::ALL {
                    let src = Term { generator: g, left: lw, right: rw };
                    let col = src.flat_index();
                    let image = if lw == Word::One && rw == Word::One {
                        img.clone()
                    } else {
                        img.sandwich(alg, src.left_basis(s), src.right_basis(s), &self.field.one())
                    };
                    for (t, c) in image.terms {
                        triplets.push((t.flat_index(), col, c));
                    }
                }
            }
        }
        Matrix::from_triplets(q_dim(self.target, s), q_dim(self.source, s), self.field, triplets)
    }
}

/// Sign convention for the differential. `Constant` replaces `(-1)ⁿ` by `-1`
/// in every degree and exists only as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    Alternating,
    Constant,
}

/// `∂ⁿ : Qⁿ → Qⁿ⁻¹` for `n ≥ 1`.
pub fn differential(n: usize, alg: &Algebra) -> BimoduleMap {
    differential_with(n, alg, SignConvention::Alternating)
}

pub fn differential_with(n: usize, alg: &Algebra, signs: SignConvention) -> BimoduleMap {
    assert!(n >= 1, "differential is defined for n >= 1");
    let s = alg.s();
    let field = alg.field();
    let one = field.one();
    let eps = match signs {
        SignConvention::Alternating if n % 2 == 0 => field.one(),
        _ => field.from_i64(-1),
    };
    let images = generators(n, s)
        .map(|g| {
            let mut e = BimoduleElement::zero(n - 1, s, field);
            let here = |j| GeneratorIndex::new(n - 1, g.i, j);
            let next = |j| GeneratorIndex::new(n - 1, (g.i + 1) % s, j);
            if g.j >= 1 {
                e.push(Term { generator: here(g.j - 1), left: Word::One, right: Word::X }, one.clone());
                e.push(Term { generator: next(g.j - 1), left: Word::X, right: Word::One }, eps.clone());
            }
            if g.j < n {
                e.push(Term { generator: here(g.j), left: Word::One, right: Word::Y }, one.clone());
                e.push(Term { generator: next(g.j), left: Word::Y, right: Word::One }, eps.clone());
            }
            e
        })
        .collect();
    BimoduleMap::from_images(n, n - 1, s, field, images)
}

/// The multiplication map `∂⁰ : Q⁰ → Λ_s`.
pub fn augment(alg: &Algebra, x: &BimoduleElement) -> AlgebraElement {
    assert_eq!(x.degree, 0);
    let s = alg.s();
    let mut out = alg.zero();
    for (t, c) in &x.terms {
        if let Some((b, sign)) = alg.mul_basis(t.left_basis(s), t.right_basis(s)) {
            out.add_term(b, c.scale_i64(sign as i64));
        }
    }
    out
}

/// Matrix of `∂⁰` (rows: canonical basis of `Λ_s`).
pub fn augmentation_matrix(alg: &Algebra) -> Matrix {
    let s = alg.s();
    let mut triplets = Vec::new();
    for g in generators(0, s) {
        for &lw in &Word::ALL {
            for &rw in &Word::ALL {
                let t = Term { generator: g, left: lw, right: rw };
                if let Some((b, sign)) = alg.mul_basis(t.left_basis(s), t.right_basis(s)) {
                    triplets.push((b.index(), t.flat_index(), alg.sign(sign)));
                }
            }
        }
    }
    Matrix::from_triplets(alg.dim(), q_dim(0, s), alg.field(), triplets)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub max_degree: usize,
    /// First generator `b` with `∂(∂(b)) ≠ 0`.
    pub failure: Option<GeneratorIndex>,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `∂⁰∂¹ = 0` and `∂ⁿ∂ⁿ⁺¹ = 0` for `1 ≤ n ≤ max_degree`, generator by generator.
pub fn verify_complex(max_degree: usize, alg: &Algebra) -> ComplexReport {
    verify_complex_with(max_degree, alg, SignConvention::Alternating)
}

pub fn verify_complex_with(max_degree: usize, alg: &Algebra, signs: SignConvention) -> ComplexReport {
    assert!(max_degree >= 1);
    let s = alg.s();
    let d1 = differential_with(1, alg, signs);
    for g in generators(1, s) {
        if !augment(alg, d1.image(g)).is_zero() {
            return ComplexReport { max_degree, failure: Some(g) };
        }
    }
    let failure = (1..=max_degree)
        .into_par_iter()
        .find_map_first(|n| {
            let outer = differential_with(n, alg, signs);
            let inner = differential_with(n + 1, alg, signs);
            generators(n + 1, s).find(|g| !outer.apply(alg, inner.image(*g)).is_zero())
        });
    ComplexReport { max_degree, failure }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessRow {
    pub n: usize,
    pub dim: usize,
    /// Rank of the map out of `Qⁿ` (`∂ⁿ`, or `∂⁰` when `n = 0`).
    pub rank_out: usize,
    /// Rank of `∂ⁿ⁺¹`.
    pub rank_in: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub max_degree: usize,
    pub augmentation_surjective: bool,
    pub rows: Vec<ExactnessRow>,
    pub first_inexact: Option<usize>,
    pub first_non_minimal: Option<GeneratorIndex>,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.augmentation_surjective && self.first_inexact.is_none()
    }

    pub fn minimal(&self) -> bool {
        self.first_non_minimal.is_none()
    }

    pub fn passed(&self) -> bool {
        self.exact() && self.minimal()
    }
}

/// Rank bookkeeping `rank ∂ⁿ + rank ∂ⁿ⁺¹ = dim Qⁿ` for `0 ≤ n < max_degree`
/// (with `∂⁰` the multiplication map) and radical containment of every image.
pub fn verify_exact_and_minimal(max_degree: usize, alg: &Algebra) -> ExactnessReport {
    assert!(max_degree >= 2);
    let s = alg.s();
    let aug_rank = augmentation_matrix(alg).rank();
    let results: Vec<(usize, Option<GeneratorIndex>)> = (1..=max_degree)
        .into_par_iter()
        .map(|n| {
            let d = differential(n, alg);
            let non_minimal = generators(n, s).find(|g| {
                d.image(*g)
                    .terms()
                    .any(|(t, _)| t.left == Word::One && t.right == Word::One)
            });
            (d.flatten(alg).rank(), non_minimal)
        })
        .collect();
    let rank_of = |n: usize| if n == 0 { aug_rank } else { results[n - 1].0 };
    let rows: Vec<ExactnessRow> = (0..max_degree)
        .map(|n| {
            let dim = q_dim(n, s);
            let (rank_out, rank_in) = (rank_of(n), rank_of(n + 1));
            ExactnessRow { n, dim, rank_out, rank_in, exact: rank_out + rank_in == dim }
        })
        .collect();
    ExactnessReport {
        max_degree,
        augmentation_surjective: aug_rank == alg.dim(),
        first_inexact: rows.iter().find(|r| !r.exact).map(|r| r.n),
        first_non_minimal: results.iter().find_map(|(_, g)| *g),
        rows,
    }
}
