//! The algebra `K Γ_s / ⟨x², xy + yx, y²⟩` of the circular quiver with double arrows.
//!
//! `Γ_s` has vertices `0..s` and two arrows `a_i, b_i : i → i+1` (mod `s`).
//! Writing `x = Σ a_i` and `y = Σ b_i`, every path of length three vanishes
//! modulo the relations, and the canonical basis is
//! `{e_i, e_i x, e_i y, e_i xy}` with `e_i yx` rewritten as `-e_i xy`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar};

/// Monomial part of a canonical basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Word {
    One,
    X,
    Y,
    XY,
}

impl Word {
    pub const ALL: [Word; 4] = [Word::One, Word::X, Word::Y, Word::XY];

    pub fn degree(self) -> usize {
        match self {
            Word::One => 0,
            Word::X | Word::Y => 1,
            Word::XY => 2,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Product of words, as `(word, sign)`, or `None` when it vanishes.
    pub fn times(self, other: Word) -> Option<(Word, i8)> {
        use Word::*;
        match (self, other) {
            (One, w) | (w, One) => Some((w, 1)),
            (X, Y) => Some((XY, 1)),
            (Y, X) => Some((XY, -1)),
            _ => None,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Word::One => "1",
            Word::X => "x",
            Word::Y => "y",
            Word::XY => "xy",
        })
    }
}

/// Canonical basis element `e_vertex · word`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisElement {
    pub vertex: usize,
    pub word: Word,
}

impl BasisElement {
    pub fn new(vertex: usize, word: Word) -> Self {
        BasisElement { vertex, word }
    }

    pub fn origin(&self) -> usize {
        self.vertex
    }

    pub fn terminus(&self, s: usize) -> usize {
        (self.vertex + self.word.degree()) % s
    }

    pub fn degree(&self) -> usize {
        self.word.degree()
    }

    /// Position in the canonical basis ordering (vertex-major).
    pub fn index(&self) -> usize {
        4 * self.vertex + self.word.index()
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.word {
            Word::One => write!(f, "e{}", self.vertex),
            w => write!(f, "e{}{}", self.vertex, w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowKind {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub kind: ArrowKind,
    pub index: usize,
    pub origin: usize,
    pub terminus: usize,
}

/// The quiver `Γ_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircularQuiver {
    s: usize,
}

impl CircularQuiver {
    pub fn new(s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::NoVertices);
        }
        Ok(CircularQuiver { s })
    }

    pub fn vertex_count(&self) -> usize {
        self.s
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        [ArrowKind::A, ArrowKind::B]
            .into_iter()
            .flat_map(|kind| {
                (0..self.s).map(move |i| Arrow {
                    kind,
                    index: i,
                    origin: i,
                    terminus: (i + 1) % self.s,
                })
            })
            .collect()
    }
}

/// `Λ_s` over a fixed field: canonical basis plus full multiplication table.
#[derive(Clone, Debug)]
pub struct Algebra {
    quiver: CircularQuiver,
    field: FieldSpec,
    table: Vec<Option<(BasisElement, i8)>>,
}

impl Algebra {
    pub fn new(s: usize, field: FieldSpec) -> Result<Self> {
        let quiver = CircularQuiver::new(s)?;
        let dim = 4 * s;
        let mut table = vec![None; dim * dim];
        let basis = canonical_basis(s);
        for a in &basis {
            for b in &basis {
                if a.terminus(s) != b.origin() {
                    continue;
                }
                if let Some((w, sign)) = a.word.times(b.word) {
                    table[a.index() * dim + b.index()] = Some((BasisElement::new(a.vertex, w), sign));
                }
            }
        }
        Ok(Algebra {
            quiver,
            field,
            table,
        })
    }

    pub fn s(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn quiver(&self) -> &CircularQuiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        4 * self.s()
    }

    pub fn basis(&self) -> Vec<BasisElement> {
        canonical_basis(self.s())
    }

    /// Product of two basis elements as `(basis element, ±1)`.
    #[inline]
    pub fn mul_basis(&self, a: BasisElement, b: BasisElement) -> Option<(BasisElement, i8)> {
        self.table[a.index() * self.dim() + b.index()]
    }

    pub fn sign(&self, sign: i8) -> Scalar {
        self.field.from_i64(sign as i64)
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            s: self.s(),
            field: self.field,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn element(&self, b: BasisElement) -> AlgebraElement {
        self.element_scaled(b, self.field.one())
    }

    pub fn element_scaled(&self, b: BasisElement, c: Scalar) -> AlgebraElement {
        let mut e = self.zero();
        e.add_term(b, c);
        e
    }

    pub fn idempotent(&self, i: usize) -> AlgebraElement {
        self.element(BasisElement::new(i % self.s(), Word::One))
    }

    pub fn unit(&self) -> AlgebraElement {
        self.sum_over_vertices(Word::One)
    }

    /// `x = Σ a_i`.
    pub fn x(&self) -> AlgebraElement {
        self.sum_over_vertices(Word::X)
    }

    /// `y = Σ b_i`.
    pub fn y(&self) -> AlgebraElement {
        self.sum_over_vertices(Word::Y)
    }

    fn sum_over_vertices(&self, w: Word) -> AlgebraElement {
        let mut e = self.zero();
        for i in 0..self.s() {
            e.add_term(BasisElement::new(i, w), self.field.one());
        }
        e
    }

    fn check_member(&self, u: &AlgebraElement) -> Result<()> {
        if u.s != self.s() || u.field != self.field {
            return Err(Error::MixedAlgebras {
                left_s: self.s(),
                left_field: self.field.to_string(),
                right_s: u.s,
                right_field: u.field.to_string(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_member(u)?;
        self.check_member(v)?;
        let mut out = self.zero();
        for (a, ca) in &u.coeffs {
            for (b, cb) in &v.coeffs {
                if let Some((c, sign)) = self.mul_basis(*a, *b) {
                    out.add_term(c, (ca * cb).scale_i64(sign as i64));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_member(u)?;
        self.check_member(v)?;
        let mut out = u.clone();
        for (b, c) in &v.coeffs {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    /// Basis of the corner space `e_i Λ_s e_{i+n}`, indexed by the resolution
    /// degree `n` rather than a path length.
    pub fn corner_basis(&self, i: usize, n: usize) -> Vec<BasisElement> {
        corner_basis(self.s(), i, n)
    }
}

fn canonical_basis(s: usize) -> Vec<BasisElement> {
    (0..s)
        .flat_map(|i| Word::ALL.into_iter().map(move |w| BasisElement::new(i, w)))
        .collect()
}

pub(crate) fn corner_basis(s: usize, i: usize, n: usize) -> Vec<BasisElement> {
    let i = i % s;
    let words: &[Word] = match s {
        1 => &[Word::One, Word::X, Word::Y, Word::XY],
        2 if n % 2 == 0 => &[Word::One, Word::XY],
        2 => &[Word::X, Word::Y],
        _ => match n % s {
            0 => &[Word::One],
            1 => &[Word::X, Word::Y],
            2 => &[Word::XY],
            _ => &[],
        },
    };
    words.iter().map(|&w| BasisElement::new(i, w)).collect()
}

/// Element of `Λ_s`: sparse coefficients on the canonical basis.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    s: usize,
    field: FieldSpec,
    coeffs: BTreeMap<BasisElement, Scalar>,
}

impl AlgebraElement {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, b: BasisElement) -> Scalar {
        self.coeffs.get(&b).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, b: BasisElement, c: Scalar) {
        if c.is_zero() {
            return;
        }
        assert!(b.vertex < self.s, "vertex {} out of range", b.vertex);
        match self.coeffs.entry(b) {
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

    pub fn scaled(&self, c: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement {
            s: self.s,
            field: self.field,
            coeffs: BTreeMap::new(),
        };
        for (b, v) in &self.coeffs {
            out.add_term(*b, v * c);
        }
        out
    }

    /// Smallest path degree among the terms; `None` for zero.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(BasisElement::degree).min()
    }

    /// Whether the element lies in the radical (no idempotent component).
    pub fn in_radical(&self) -> bool {
        self.min_degree().map_or(true, |d| d >= 1)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(b, c)| if c.is_one() { b.to_string() } else { format!("{c}*{b}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
