//! Yoneda products through liftings along `Q•`, and the presentation of
//! `HH*(Λ_s)` modulo nilpotence.
//!
//! A cocycle `z` of degree `n` is lifted to chain maps `lift_v : Q^{n+v} → Q^v`
//! with `∂⁰ lift₀ = z` and `lift_v ∂^{n+v+1} = ∂^{v+1} lift_{v+1}`. The product
//! of `f` (degree `m`) with `z` is `f ∘ lift_m`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraElement};
use crate::cochains::{stated_families, ClassReducer, Cochain, CochainKind, CochainName, CochainSpace, CohomologyDegree, FamilyRole};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar, SparseVec};
use crate::resolution::{
    augment, augmentation_matrix, differential, generator_count, generators, q_dim, BimoduleElement, BimoduleMap,
    GeneratorIndex, Term,
};

/// Which half of the presentation applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationCase {
    /// `s` odd, characteristic not 2: generators in degree `2s`.
    OddS,
    /// `s` even or characteristic 2: generators in degree `s`.
    EvenOrCharTwo,
}

pub fn presentation_case(s: usize, field: FieldSpec) -> PresentationCase {
    if s % 2 == 1 && !field.is_char_two() {
        PresentationCase::OddS
    } else {
        PresentationCase::EvenOrCharTwo
    }
}

/// Degree `D` of the polynomial generators `z_0, …, z_D`.
pub fn generator_degree(s: usize, field: FieldSpec) -> usize {
    match presentation_case(s, field) {
        PresentationCase::OddS => 2 * s,
        PresentationCase::EvenOrCharTwo => s,
    }
}

/// `z_u = Σ_i α_{i,u}` in degree `D`.
pub fn generator_cocycle(u: usize, alg: &Algebra) -> Cochain {
    let d = generator_degree(alg.s(), alg.field());
    assert!(u <= d, "generator index {u} exceeds degree {d}");
    let mut z = Cochain::zero(d, alg);
    for i in 0..alg.s() {
        z = z.add(&CochainName::new(CochainKind::Alpha, d, i, u).cochain(alg).expect("alpha is corner-valued"));
    }
    z
}

/// Index shift `Q^{D+v} → Q^v`: `b_{k,l}^{D+v} ↦ b_{k,l-u}^v` when `0 ≤ l-u ≤ v`, else 0.
pub fn theta(u: usize, v: usize, d: usize, alg: &Algebra) -> BimoduleMap {
    assert!(u <= d);
    let (s, field) = (alg.s(), alg.field());
    let images = generators(d + v, s)
        .map(|g| {
            if g.j >= u && g.j - u <= v {
                BimoduleElement::generator(GeneratorIndex::new(v, g.i, g.j - u), s, field)
            } else {
                BimoduleElement::zero(v, s, field)
            }
        })
        .collect();
    BimoduleMap::from_images(d + v, v, s, field, images)
}

/// Lifting chain of `z_u` built from the index-shift maps.
pub fn theta_chain(u: usize, steps: usize, alg: &Algebra) -> LiftingChain {
    let d = generator_degree(alg.s(), alg.field());
    LiftingChain {
        base: generator_cocycle(u, alg),
        lifts: (0..=steps).map(|v| theta(u, v, d, alg)).collect(),
    }
}

/// A cocycle together with chain maps lifting it along the resolution.
#[derive(Clone, Debug)]
pub struct LiftingChain {
    base: Cochain,
    lifts: Vec<BimoduleMap>,
}

/// First identity violated by a lifting chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LiftDefect {
    /// `∂⁰ lift₀ ≠ z` at this generator.
    Base(GeneratorIndex),
    /// The square at step `v` fails at this generator of `Q^{n+v+1}`.
    Square { v: usize, generator: GeneratorIndex },
}

impl LiftingChain {
    pub fn base(&self) -> &Cochain {
        &self.base
    }

    pub fn lifts(&self) -> &[BimoduleMap] {
        &self.lifts
    }

    pub fn steps(&self) -> usize {
        self.lifts.len() - 1
    }

    pub fn lift(&self, v: usize) -> &BimoduleMap {
        &self.lifts[v]
    }

    /// Checks both defining identities generator by generator.
    pub fn verify(&self, alg: &Algebra) -> std::result::Result<(), LiftDefect> {
        let n = self.base.degree();
        for g in generators(n, alg.s()) {
            if augment(alg, self.lifts[0].image(g)) != *self.base.value(g) {
                return Err(LiftDefect::Base(g));
            }
        }
        for v in 0..self.steps() {
            let d_top = differential(n + v + 1, alg);
            let d_bottom = differential(v + 1, alg);
            for g in generators(n + v + 1, alg.s()) {
                let left = self.lifts[v].apply(alg, d_top.image(g));
                let right = d_bottom.apply(alg, self.lifts[v + 1].image(g));
                if left != right {
                    return Err(LiftDefect::Square { v, generator: g });
                }
            }
        }
        Ok(())
    }
}

fn element_to_sparse(x: &AlgebraElement) -> SparseVec {
    let mut v: SparseVec = x.terms().map(|(b, c)| (b.index(), c.clone())).collect();
    v.sort_by_key(|e| e.0);
    v
}

fn cochain_vector(f: &Cochain, alg: &Algebra) -> Vec<Scalar> {
    CochainSpace::new(f.degree(), alg).coordinates(f)
}

fn check_cocycle(f: &Cochain, alg: &Algebra) -> Result<()> {
    let d = crate::cochains::hat_matrix(f.degree(), alg);
    if d.mul_vec(&cochain_vector(f, alg)).iter().all(Scalar::is_zero) {
        Ok(())
    } else {
        Err(Error::NotACocycle { degree: f.degree() })
    }
}

/// Lifts a cocycle `steps` times by solving each commuting square as a linear system.
///
/// Generators are handled in groups sharing an origin vertex `k`; only tensor
/// terms starting at `k` and ending at the generator's terminus are admitted.
/// The particular solution is the deterministic one returned by the solver.
pub fn generic_lift(z: &Cochain, steps: usize, alg: &Algebra) -> Result<LiftingChain> {
    check_cocycle(z, alg)?;
    let (s, field) = (alg.s(), alg.field());
    let n = z.degree();
    let mut lifts: Vec<BimoduleMap> = Vec::with_capacity(steps + 1);
    for v in 0..=steps {
        let top = n + v;
        let matrix = if v == 0 { augmentation_matrix(alg) } else { differential(v, alg).flatten(alg) };
        let rhs: Vec<SparseVec> = if v == 0 {
            generators(top, s).map(|g| element_to_sparse(z.value(g))).collect()
        } else {
            let d_top = differential(top, alg);
            let prev = &lifts[v - 1];
            generators(top, s).map(|g| prev.apply(alg, d_top.image(g)).to_sparse()).collect()
        };
        let terms: Vec<Term> = (0..q_dim(v, s)).map(|c| Term::from_flat_index(v, c)).collect();
        let solved: Vec<Vec<(GeneratorIndex, SparseVec)>> = (0..s)
            .into_par_iter()
            .map(|k| {
                let end = (k + top) % s;
                let cols: Vec<usize> = (0..terms.len())
                    .filter(|&c| terms[c].left_basis(s).origin() == k && terms[c].right_basis(s).terminus(s) == end)
                    .collect();
                let group: Vec<GeneratorIndex> = generators(top, s).filter(|g| g.i == k).collect();
                let rhs_k: Vec<SparseVec> = group.iter().map(|g| rhs[g.position()].clone()).collect();
                let sols = matrix.select_columns(&cols).solve_many_sparse(&rhs_k);
                group
                    .into_iter()
                    .zip(sols)
                    .map(|(g, sol)| {
                        let sol = sol.ok_or(Error::LiftFailed { step: v, generator: g })?;
                        Ok((g, sol.into_iter().map(|(c, x)| (cols[c], x)).collect()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut images = vec![BimoduleElement::zero(v, s, field); generator_count(top, s)];
        for (g, coords) in solved.into_iter().flatten() {
            images[g.position()] = BimoduleElement::from_sparse(v, s, field, &coords);
        }
        lifts.push(BimoduleMap::from_images(top, v, s, field, images));
    }
    Ok(LiftingChain { base: z.clone(), lifts })
}

/// `f × chain.base`, computed as `f ∘ lift_{deg f}`.
pub fn yoneda_product_with(f: &Cochain, chain: &LiftingChain, alg: &Algebra) -> Result<Cochain> {
    let m = f.degree();
    if m > chain.steps() {
        return Err(Error::DegreeMismatch { expected: chain.steps(), found: m });
    }
    Ok(f.precompose(alg, chain.lift(m)))
}

/// Yoneda product `f × g` of two cocycles, lifting `g` generically.
pub fn yoneda_product(f: &Cochain, g: &Cochain, alg: &Algebra) -> Result<Cochain> {
    check_cocycle(f, alg)?;
    let chain = generic_lift(g, f.degree(), alg)?;
    yoneda_product_with(f, &chain, alg)
}

pub fn is_coboundary(f: &Cochain, alg: &Algebra) -> bool {
    let deg = CohomologyDegree::new(f.degree(), alg);
    deg.is_coboundary(&deg.space.coordinates(f))
}

/// Whether `f - g` is a coboundary.
pub fn cohomologous(f: &Cochain, g: &Cochain, alg: &Algebra) -> bool {
    assert_eq!(f.degree(), g.degree());
    is_coboundary(&f.sub(g), alg)
}

/// How generator lifts are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftMethod {
    Theta,
    Generic,
}

fn generator_chain(u: usize, steps: usize, alg: &Algebra, method: LiftMethod) -> Result<LiftingChain> {
    match method {
        LiftMethod::Theta => Ok(theta_chain(u, steps, alg)),
        LiftMethod::Generic => generic_lift(&generator_cocycle(u, alg), steps, alg),
    }
}

/// One product of generators together with its class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductEntry {
    pub k: usize,
    pub l: usize,
    pub degree: usize,
    /// Coordinates of the class in `Q̂ⁿ / Im ∂̂ⁿ`.
    pub class_coordinates: Vec<Scalar>,
}

/// `z_k × z_l` for all `0 ≤ k, l ≤ D`.
pub fn product_table(alg: &Algebra, method: LiftMethod) -> Result<Vec<ProductEntry>> {
    let d = generator_degree(alg.s(), alg.field());
    let chains: Vec<LiftingChain> =
        (0..=d).into_par_iter().map(|u| generator_chain(u, d, alg, method)).collect::<Result<_>>()?;
    let reducer = ClassReducer::new(&CohomologyDegree::new(2 * d, alg));
    let space = CochainSpace::new(2 * d, alg);
    let mut out = Vec::new();
    for k in 0..=d {
        let zk = generator_cocycle(k, alg);
        for (l, chain) in chains.iter().enumerate() {
            let p = yoneda_product_with(&zk, chain, alg)?;
            out.push(ProductEntry { k, l, degree: 2 * d, class_coordinates: reducer.class_coordinates(&space.coordinates(&p)) });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerCheck {
    /// Number of factors `t`.
    pub t: usize,
    pub degree: usize,
    pub products: usize,
    pub span_dim: usize,
    pub expected_dim: usize,
    pub dim_hh: usize,
    /// Index tuples whose class differs from the class of another tuple with the same sum,
    /// or agrees with one of a different sum.
    pub failures: Vec<Vec<usize>>,
}

impl PowerCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.span_dim == self.expected_dim && self.expected_dim == self.dim_hh
    }
}

/// Relations `z_k z_l = z_q z_r` for `k + l = q + r`, and their absence otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RelationFailure {
    pub k: usize,
    pub l: usize,
    pub q: usize,
    pub r: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingPresentation {
    pub s: usize,
    pub characteristic: u64,
    pub case: PresentationCase,
    pub generator_degree: usize,
    pub generator_count: usize,
    /// Pairs `((k,l),(q,r))` with `k + l = q + r`, `(k,l) < (q,r)`.
    pub relations: Vec<((usize, usize), (usize, usize))>,
}

impl RingPresentation {
    pub fn new(s: usize, field: FieldSpec) -> Self {
        let d = generator_degree(s, field);
        let mut relations = Vec::new();
        let pairs: Vec<(usize, usize)> = (0..=d).flat_map(|k| (k..=d).map(move |l| (k, l))).collect();
        for (a, &(k, l)) in pairs.iter().enumerate() {
            for &(q, r) in &pairs[a + 1..] {
                if k + l == q + r {
                    relations.push(((k, l), (q, r)));
                }
            }
        }
        RingPresentation {
            s,
            characteristic: field.characteristic(),
            case: presentation_case(s, field),
            generator_degree: d,
            generator_count: d + 1,
            relations,
        }
    }

    /// Dimension of the degree-`t` part of the quotient polynomial ring.
    pub fn graded_dimension(&self, t: usize) -> usize {
        self.generator_degree * t + 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub presentation: RingPresentation,
    pub method: LiftMethod,
    pub powers: Vec<PowerCheck>,
    /// Pairs `(k,l)` with `z_k × z_l` not cohomologous to `z_l × z_k`.
    pub noncommuting: Vec<(usize, usize)>,
    pub relation_failures: Vec<RelationFailure>,
    pub explicit_formula_failures: Vec<(usize, usize)>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.powers.iter().all(PowerCheck::passed)
            && self.noncommuting.is_empty()
            && self.relation_failures.is_empty()
            && self.explicit_formula_failures.is_empty()
    }
}

fn power_check(t: usize, d: usize, tuples: &[(Vec<usize>, Vec<Scalar>)], deg: &CohomologyDegree) -> PowerCheck {
    let reducer = ClassReducer::new(deg);
    let mut by_sum: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut forms = Vec::new();
    for (idx, v) in tuples {
        let nf = reducer.normal_form(v);
        let sum: usize = idx.iter().sum();
        match by_sum.get(&sum) {
            Some(rep) if *rep != nf => failures.push(idx.clone()),
            Some(_) => {}
            None => {
                if by_sum.values().any(|other| *other == nf) {
                    failures.push(idx.clone());
                }
                by_sum.insert(sum, nf.clone());
            }
        }
        forms.push(v.clone());
    }
    let stacked = deg.d_in.hstack(&crate::linalg::Matrix::from_columns(deg.space.dim(), deg.d_in.field(), &forms));
    PowerCheck {
        t,
        degree: t * d,
        products: tuples.len(),
        span_dim: stacked.rank() - deg.d_in.rank(),
        expected_dim: d * t + 1,
        dim_hh: deg.dim_hh(),
        failures,
    }
}

/// Checks the presentation of `HH*(Λ_s)` modulo nilpotence in degrees `D·t`, `t ≤ t_max`.
pub fn verify_presentation(s: usize, field: FieldSpec, t_max: usize, method: LiftMethod) -> Result<PresentationReport> {
    if s < 3 {
        return Err(Error::FormulaOutOfRange(s));
    }
    let owned = Algebra::new(s, field)?;
    let alg = &owned;
    let presentation = RingPresentation::new(s, field);
    let d = presentation.generator_degree;
    let t_max = t_max.max(1);
    let steps = d * (t_max - 1);
    let gens: Vec<Cochain> = (0..=d).map(|u| generator_cocycle(u, alg)).collect();
    let chains: Vec<LiftingChain> =
        (0..=d).into_par_iter().map(|u| generator_chain(u, steps, alg, method)).collect::<Result<_>>()?;

    let mut powers = Vec::new();
    let deg1 = CohomologyDegree::new(d, alg);
    let tuples1: Vec<(Vec<usize>, Vec<Scalar>)> =
        gens.iter().enumerate().map(|(u, z)| (vec![u], deg1.space.coordinates(z))).collect();
    powers.push(power_check(1, d, &tuples1, &deg1));

    // products[t-1]: (index tuple, cochain) for t factors
    let mut level: Vec<(Vec<usize>, Cochain)> = gens.iter().enumerate().map(|(u, z)| (vec![u], z.clone())).collect();
    let mut noncommuting = Vec::new();
    let mut relation_failures = Vec::new();
    let mut explicit_formula_failures = Vec::new();
    for t in 2..=t_max {
        let next: Vec<(Vec<usize>, Cochain)> = level
            .par_iter()
            .flat_map_iter(|(idx, f)| {
                chains.iter().enumerate().map(move |(u, chain)| {
                    let mut tuple = idx.clone();
                    tuple.push(u);
                    yoneda_product_with(f, chain, alg).map(|p| (tuple, p))
                })
            })
            .collect::<Result<_>>()?;
        let deg = CohomologyDegree::new(t * d, alg);
        for (_, p) in &next {
            if !deg.is_cocycle(&deg.space.coordinates(p)) {
                return Err(Error::NotACocycle { degree: t * d });
            }
        }
        let tuples: Vec<(Vec<usize>, Vec<Scalar>)> =
            next.iter().map(|(idx, p)| (idx.clone(), deg.space.coordinates(p))).collect();
        let check = power_check(t, d, &tuples, &deg);
        if t == 2 {
            let reducer = ClassReducer::new(&deg);
            let nf: BTreeMap<(usize, usize), Vec<Scalar>> =
                tuples.iter().map(|(idx, v)| ((idx[0], idx[1]), reducer.normal_form(v))).collect();
            for (&(k, l), a) in &nf {
                if k < l && nf[&(l, k)] != *a {
                    noncommuting.push((k, l));
                }
                for (&(q, r), b) in &nf {
                    if (k, l) < (q, r) && ((k + l == q + r) != (a == b)) {
                        relation_failures.push(RelationFailure { k, l, q, r });
                    }
                }
            }
            if method == LiftMethod::Theta {
                for (idx, p) in &next {
                    let want = CochainName::new(CochainKind::Alpha, 2 * d, 0, idx[0] + idx[1]);
                    let mut expected = Cochain::zero(2 * d, alg);
                    for i in 0..s {
                        expected = expected.add(&CochainName { i, ..want }.cochain(alg)?);
                    }
                    if *p != expected {
                        explicit_formula_failures.push((idx[0], idx[1]));
                    }
                }
            }
        }
        powers.push(check);
        level = next;
    }

    Ok(PresentationReport { presentation, method, powers, noncommuting, relation_failures, explicit_formula_failures })
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotenceSample {
    pub degree: usize,
    pub representative: String,
    pub values_in_radical: bool,
    /// Smallest power `p ≤ 4` found to vanish in cohomology.
    pub vanishing_power: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotenceReport {
    pub s: usize,
    pub characteristic: u64,
    pub samples: Vec<NilpotenceSample>,
}

impl NilpotenceReport {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|x| x.values_in_radical && x.vanishing_power.is_some())
    }
}

const MAX_POWER: usize = 4;

/// Checks that the listed cohomology representatives in each degree are radical-valued and nilpotent.
pub fn verify_nilpotence_samples(s: usize, field: FieldSpec, degrees: &[usize]) -> Result<NilpotenceReport> {
    let alg = Algebra::new(s, field)?;
    let mut samples = Vec::new();
    for &n in degrees {
        let fams = stated_families(n, &alg)?;
        let reps = fams.into_iter().find(|f| f.role == FamilyRole::Cohomology).map(|f| f.elements).unwrap_or_default();
        let results: Vec<NilpotenceSample> = reps
            .par_iter()
            .map(|rep| {
                let f = rep.cochain(&alg)?;
                let chain = generic_lift(&f, n * (MAX_POWER - 1), &alg)?;
                let mut power = f.clone();
                let mut vanishing_power = None;
                for p in 2..=MAX_POWER {
                    // f^p = f^{p-1} × f
                    power = yoneda_product_with(&power, &chain, &alg)?;
                    if power.is_zero() || is_coboundary(&power, &alg) {
                        vanishing_power = Some(p);
                        break;
                    }
                }
                Ok(NilpotenceSample {
                    degree: n,
                    representative: rep.to_string(),
                    values_in_radical: f.values_in_radical(),
                    vanishing_power,
                })
            })
            .collect::<Result<_>>()?;
        samples.extend(results);
    }
    Ok(NilpotenceReport { s, characteristic: field.characteristic(), samples })
}
