//! Locally finite-dimensional left modules over `A⁻`, materialized one weight
//! space `1_pM` at a time.
//!
//! A module exposes the action of the generators `ᶦb`, `bᶦ`, `1_n`; any other
//! diagram acts through its factorization into generators. Concrete modules
//! may override [`Module::act_diagram`] with a direct computation, and the
//! tests check that both routes agree.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::algebra::{AlgebraElement, Flavor};
use crate::combinat::{binomial, subsets};
use crate::diagram::{enumerate_widths, Diagram, Side};
use crate::field::Field;
use crate::linalg::{Echelon, SparseMatrix, SparseVec};

pub type Matrix<F> = SparseMatrix<<F as Field>::Elem>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("relation ({row},{col}) has a term outside the weight block {left}x{right}")]
    InconsistentWeights {
        row: usize,
        col: usize,
        left: usize,
        right: usize,
    },
    #[error("relation matrix has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    BadShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("cutoff {cutoff} does not reach weight {needed}")]
    CutoffTooSmall { cutoff: usize, needed: usize },
    #[error("presentations are defined over the minus flavor")]
    WrongFlavor,
    #[error("unrecognised module `{0}` (expected projective:N, standard:N, simple:N or truncated:N:K)")]
    BadSpec(String),
}

pub trait Module<F: Field>: Send + Sync {
    fn field(&self) -> &F;

    /// `dim 1_pM`.
    fn dim(&self, p: usize) -> usize;

    /// Matrix of a generator `g ∈ _qB_p` as a map `1_pM -> 1_qM`.
    fn act_generator(&self, g: &Diagram) -> Matrix<F>;

    fn descriptor(&self) -> String;

    /// Action of an arbitrary diagram, via its factorization into generators.
    fn act_diagram(&self, d: &Diagram) -> Matrix<F> {
        let factors = d.factor();
        let mut acc: Option<Matrix<F>> = None;
        // rightmost factor acts first
        for g in factors.iter().rev() {
            let m = self.act_generator(g);
            acc = Some(match acc {
                None => m,
                Some(prev) => m.mul(&prev, self.field()),
            });
        }
        acc.expect("factorization is never empty")
    }

    /// Action of the `_qA_p` component of `a` as a map `1_pM -> 1_qM`.
    fn act(&self, a: &AlgebraElement, q: usize, p: usize) -> Matrix<F> {
        let f = self.field();
        let mut out = SparseMatrix::zero(self.dim(q), self.dim(p));
        for (d, c) in a.terms() {
            if d.left_count() != q || d.right_count() != p {
                continue;
            }
            let m = self.act_diagram(d).scale(&f.from_rational(c), f);
            out = out.add(&m, f);
        }
        out
    }
}

pub type ModuleRef<F> = Arc<dyn Module<F>>;

/// Weight dimensions `dim 1_pM` for `p = 0..=cutoff`.
pub fn dims<F: Field>(m: &dyn Module<F>, cutoff: usize) -> Vec<usize> {
    (0..=cutoff).map(|p| m.dim(p)).collect()
}

/// Generators with right endpoint count `p` whose target weight is at most
/// `cutoff`: `1_p`, every `ᶦb_p` and every `b_pᶦ`.
pub fn generators_from(p: usize, cutoff: usize) -> Vec<Diagram> {
    let mut out = vec![Diagram::identity(p)];
    if p < cutoff {
        for i in 1..=p + 1 {
            out.push(Diagram::elementary(p + 1, i, Side::Left).expect("valid index"));
        }
    }
    for i in 1..=p {
        out.push(Diagram::elementary(p, i, Side::Right).expect("valid index"));
    }
    out
}

/// Basis of one weight space, with reverse lookup.
#[derive(Debug, Default)]
pub struct WeightBasis {
    pub diagrams: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
}

impl WeightBasis {
    pub fn new(diagrams: Vec<Diagram>) -> Self {
        let index = diagrams.iter().enumerate().map(|(i, d)| (*d, i)).collect();
        WeightBasis { diagrams, index }
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn position(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }
}

/// Diagrams of `_pB_n` with width in `[lo, hi]`, in enumeration order.
pub fn window_basis(p: usize, n: usize, lo: usize, hi: usize) -> Vec<Diagram> {
    if lo > hi {
        return Vec::new();
    }
    enumerate_widths(p, n, lo..=hi)
}

#[derive(Default)]
struct BasisCache(RwLock<HashMap<usize, Arc<WeightBasis>>>);

impl BasisCache {
    fn get_or(&self, p: usize, make: impl FnOnce() -> Vec<Diagram>) -> Arc<WeightBasis> {
        if let Some(b) = self.0.read().expect("cache lock").get(&p) {
            return b.clone();
        }
        let b = Arc::new(WeightBasis::new(make()));
        self.0.write().expect("cache lock").entry(p).or_insert(b).clone()
    }
}

/// Subquotient of `P_n` spanned by diagrams whose width lies in `[lo, hi]`:
/// `P_n` is `[0, n]`, `M_n` is `[n, n]`, `P_n(≤k)` is `[0, k]`, and the
/// filtration layer `P_n(≤m)/P_n(≤m−1)` is `[m, m]`. Products that drop
/// below width `lo` or create a floating arc vanish.
pub struct DiagramModule<F: Field> {
    field: F,
    n: usize,
    lo: usize,
    hi: usize,
    name: String,
    cache: BasisCache,
}

impl<F: Field> DiagramModule<F> {
    pub fn new(field: F, n: usize, lo: usize, hi: usize, name: impl Into<String>) -> Self {
        DiagramModule {
            field,
            n,
            lo,
            hi: hi.min(n),
            name: name.into(),
            cache: BasisCache::default(),
        }
    }

    pub fn projective(field: F, n: usize) -> Self {
        Self::new(field, n, 0, n, format!("P_{n}"))
    }

    pub fn standard(field: F, n: usize) -> Self {
        Self::new(field, n, n, n, format!("M_{n}"))
    }

    /// `P_n(≤k)`, the submodule of diagrams of width at most `k`.
    pub fn width_truncation(field: F, n: usize, k: usize) -> Self {
        Self::new(field, n, 0, k, format!("P_{n}(<={k})"))
    }

    /// `P_n(≤m)/P_n(≤m−1)`.
    pub fn filtration_layer(field: F, n: usize, m: usize) -> Self {
        Self::new(field, n, m, m, format!("P_{n}(<={m})/P_{n}(<={})", m as i64 - 1))
    }

    pub fn index(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn basis(&self, p: usize) -> Arc<WeightBasis> {
        self.cache
            .get_or(p, || window_basis(p, self.n, self.lo, self.hi))
    }
}

impl<F: Field> Module<F> for DiagramModule<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn dim(&self, p: usize) -> usize {
        if self.lo > self.hi {
            return 0;
        }
        (self.lo..=self.hi.min(p))
            .map(|k| (binomial(p, k) * binomial(self.n, k)) as usize)
            .sum()
    }

    fn act_generator(&self, g: &Diagram) -> Matrix<F> {
        self.act_diagram(g)
    }

    fn descriptor(&self) -> String {
        self.name.clone()
    }

    fn act_diagram(&self, d: &Diagram) -> Matrix<F> {
        let (q, p) = (d.left_count(), d.right_count());
        let src = self.basis(p);
        let tgt = self.basis(q);
        let mut triples = Vec::new();
        for (col, x) in src.diagrams.iter().enumerate() {
            let c = d.compose_unchecked(x);
            if c.floating > 0 || c.diagram.width() < self.lo {
                continue;
            }
            let row = tgt.position(&c.diagram).expect("product stays in the window");
            triples.push((row, col, self.field.one()));
        }
        SparseMatrix::from_triples(tgt.len(), src.len(), triples, &self.field)
    }
}

/// The one-dimensional simple module `L_n`.
pub struct Simple<F: Field> {
    field: F,
    n: usize,
}

impl<F: Field> Simple<F> {
    pub fn new(field: F, n: usize) -> Self {
        Simple { field, n }
    }
}

impl<F: Field> Module<F> for Simple<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn dim(&self, p: usize) -> usize {
        usize::from(p == self.n)
    }

    fn act_generator(&self, g: &Diagram) -> Matrix<F> {
        self.act_diagram(g)
    }

    fn descriptor(&self) -> String {
        format!("L_{}", self.n)
    }

    fn act_diagram(&self, d: &Diagram) -> Matrix<F> {
        let rows = self.dim(d.left_count());
        let cols = self.dim(d.right_count());
        if rows == 1 && cols == 1 && d.is_identity() {
            SparseMatrix::identity(1, &self.field)
        } else {
            SparseMatrix::zero(rows, cols)
        }
    }
}

pub struct DirectSum<F: Field> {
    field: F,
    parts: Vec<ModuleRef<F>>,
}

impl<F: Field> DirectSum<F> {
    pub fn new(field: F, parts: Vec<ModuleRef<F>>) -> Self {
        DirectSum { field, parts }
    }

    pub fn parts(&self) -> &[ModuleRef<F>] {
        &self.parts
    }

    /// Offset of summand `i` inside `1_pM`.
    pub fn offset(&self, i: usize, p: usize) -> usize {
        self.parts[..i].iter().map(|m| m.dim(p)).sum()
    }
}

impl<F: Field> Module<F> for DirectSum<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn dim(&self, p: usize) -> usize {
        self.parts.iter().map(|m| m.dim(p)).sum()
    }

    fn act_generator(&self, g: &Diagram) -> Matrix<F> {
        let blocks: Vec<_> = self.parts.iter().map(|m| m.act_generator(g)).collect();
        SparseMatrix::block_diagonal(&blocks)
    }

    fn descriptor(&self) -> String {
        if self.parts.is_empty() {
            return "0".to_string();
        }
        let names: Vec<String> = self.parts.iter().map(|m| m.descriptor()).collect();
        names.join(" + ")
    }

    fn act_diagram(&self, d: &Diagram) -> Matrix<F> {
        let blocks: Vec<_> = self.parts.iter().map(|m| m.act_diagram(d)).collect();
        SparseMatrix::block_diagonal(&blocks)
    }
}

/// `Res(M)`: weight `p` is `1_{p+1}M`, and `g` acts as `ι(g)`.
pub struct Restricted<F: Field> {
    inner: ModuleRef<F>,
}

impl<F: Field> Restricted<F> {
    pub fn new(inner: ModuleRef<F>) -> Self {
        Restricted { inner }
    }
}

impl<F: Field> Module<F> for Restricted<F> {
    fn field(&self) -> &F {
        self.inner.field()
    }

    fn dim(&self, p: usize) -> usize {
        self.inner.dim(p + 1)
    }

    fn act_generator(&self, g: &Diagram) -> Matrix<F> {
        self.inner.act_generator(&g.iota())
    }

    fn descriptor(&self) -> String {
        format!("Res({})", self.inner.descriptor())
    }

    fn act_diagram(&self, d: &Diagram) -> Matrix<F> {
        self.inner.act_diagram(&d.iota())
    }
}

/// `^{[k]}M`: weight `p` is `1_{pk}M`, and `g` acts as its `k`-cable.
pub struct Cabled<F: Field> {
    inner: ModuleRef<F>,
    k: usize,
}

impl<F: Field> Cabled<F> {
    pub fn new(inner: ModuleRef<F>, k: usize) -> Self {
        assert!(k >= 1, "cabling needs k >= 1");
        Cabled { inner, k }
    }
}

impl<F: Field> Module<F> for Cabled<F> {
    fn field(&self) -> &F {
        self.inner.field()
    }

    fn dim(&self, p: usize) -> usize {
        self.inner.dim(p * self.k)
    }

    fn act_generator(&self, g: &Diagram) -> Matrix<F> {
        self.act_diagram(g)
    }

    fn descriptor(&self) -> String {
        format!("^[{}]{}", self.k, self.inner.descriptor())
    }

    fn act_diagram(&self, d: &Diagram) -> Matrix<F> {
        self.inner
            .act_diagram(&d.cable(self.k).expect("cable within point limit"))
    }
}

/// `coker(⊕_j P_{m_j} → ⊕_i P_{n_i})`. The generator of `P_{m_j}` maps to
/// `(relations[j][i])_i`, so `relations[j][i]` lies in `1_{m_j} A 1_{n_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub target: Vec<usize>,
    pub sources: Vec<usize>,
    pub relations: Vec<Vec<AlgebraElement>>,
}

impl Presentation {
    pub fn new(
        target: Vec<usize>,
        sources: Vec<usize>,
        relations: Vec<Vec<AlgebraElement>>,
    ) -> Result<Self, ModuleError> {
        let pres = Presentation {
            target,
            sources,
            relations,
        };
        pres.check()?;
        Ok(pres)
    }

    fn check(&self) -> Result<(), ModuleError> {
        if self.relations.len() != self.sources.len()
            || self.relations.iter().any(|r| r.len() != self.target.len())
        {
            return Err(ModuleError::BadShape {
                rows: self.relations.len(),
                cols: self.relations.first().map_or(0, Vec::len),
                expected_rows: self.sources.len(),
                expected_cols: self.target.len(),
            });
        }
        for (j, row) in self.relations.iter().enumerate() {
            for (i, r) in row.iter().enumerate() {
                if r.flavor() != Flavor::Minus {
                    return Err(ModuleError::WrongFlavor);
                }
                let (left, right) = (self.sources[j], self.target[i]);
                if r
                    .terms()
                    .any(|(d, _)| d.left_count() != left || d.right_count() != right)
                {
                    return Err(ModuleError::InconsistentWeights {
                        row: j,
                        col: i,
                        left,
                        right,
                    });
                }
            }
        }
        Ok(())
    }

    /// `P_n` with no relations.
    pub fn projective(n: usize) -> Self {
        Presentation {
            target: vec![n],
            sources: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// `M_n = P_n / (b_nᶦ)`: one relation per right sarc position.
    pub fn standard(n: usize) -> Self {
        let relations = (1..=n)
            .map(|i| {
                vec![AlgebraElement::basis(
                    Flavor::Minus,
                    Diagram::elementary(n, i, Side::Right).expect("valid index"),
                )]
            })
            .collect();
        Presentation {
            target: vec![n],
            sources: vec![n.saturating_sub(1); n],
            relations,
        }
    }

    /// `L_n = P_n / (b_nᶦ, ᶦb_n)`.
    pub fn simple(n: usize) -> Self {
        let mut pres = Self::standard(n);
        for i in 1..=n + 1 {
            pres.sources.push(n + 1);
            pres.relations.push(vec![AlgebraElement::basis(
                Flavor::Minus,
                Diagram::elementary(n + 1, i, Side::Left).expect("valid index"),
            )]);
        }
        pres
    }

    pub fn max_weight(&self) -> usize {
        self.target
            .iter()
            .chain(&self.sources)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// `Ind`: indices shift by one and relations pass through `ι`.
    pub fn induce(&self) -> Self {
        Presentation {
            target: self.target.iter().map(|n| n + 1).collect(),
            sources: self.sources.iter().map(|n| n + 1).collect(),
            relations: self
                .relations
                .iter()
                .map(|row| row.iter().map(AlgebraElement::iota).collect())
                .collect(),
        }
    }
}

struct QuotientWeight<E> {
    /// Offsets of the target summands inside the ambient space.
    offsets: Vec<usize>,
    bases: Vec<Arc<WeightBasis>>,
    relations: Echelon<E>,
    free: Vec<usize>,
    free_index: HashMap<usize, usize>,
}

pub struct Cokernel<F: Field> {
    field: F,
    pres: Presentation,
    name: String,
    projectives: Vec<DiagramModule<F>>,
    cache: RwLock<HashMap<usize, Arc<QuotientWeight<F::Elem>>>>,
}

impl<F: Field> Cokernel<F> {
    pub fn new(field: F, pres: Presentation) -> Self {
        let name = format!("coker({:?} -> {:?})", pres.sources, pres.target);
        Self::named(field, pres, name)
    }

    pub fn named(field: F, pres: Presentation, name: impl Into<String>) -> Self {
        let projectives = pres
            .target
            .iter()
            .map(|&n| DiagramModule::projective(field.clone(), n))
            .collect();
        Cokernel {
            field,
            pres,
            name: name.into(),
            projectives,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    fn ambient_vector(
        &self,
        w: &QuotientWeight<F::Elem>,
        x: &Diagram,
        row: &[AlgebraElement],
    ) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc: HashMap<usize, F::Elem> = HashMap::new();
        for (i, r) in row.iter().enumerate() {
            for (d, c) in r.terms() {
                let comp = x.compose_unchecked(d);
                if comp.floating > 0 {
                    continue;
                }
                let pos = w.offsets[i]
                    + w.bases[i]
                        .position(&comp.diagram)
                        .expect("product lies in the projective");
                let v = f.from_rational(c);
                let slot = acc.entry(pos).or_insert_with(|| f.zero());
                *slot = f.add(slot, &v);
            }
        }
        let mut out: SparseVec<F::Elem> = acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect();
        out.sort_by_key(|(c, _)| *c);
        out
    }

    fn weight(&self, p: usize) -> Arc<QuotientWeight<F::Elem>> {
        if let Some(w) = self.cache.read().expect("cache lock").get(&p) {
            return w.clone();
        }
        let bases: Vec<Arc<WeightBasis>> = self.projectives.iter().map(|m| m.basis(p)).collect();
        let mut offsets = Vec::with_capacity(bases.len());
        let mut total = 0;
        for b in &bases {
            offsets.push(total);
            total += b.len();
        }
        let mut w = QuotientWeight {
            offsets,
            bases,
            relations: Echelon::new(std::iter::empty(), &self.field),
            free: Vec::new(),
            free_index: HashMap::new(),
        };
        let mut ech = Echelon::new(std::iter::empty(), &self.field);
        for (j, row) in self.pres.relations.iter().enumerate() {
            for x in window_basis(p, self.pres.sources[j], 0, self.pres.sources[j]) {
                let v = self.ambient_vector(&w, &x, row);
                if !v.is_empty() {
                    ech.insert(v, &self.field);
                }
            }
        }
        w.free = (0..total).filter(|c| !ech.is_pivot(*c)).collect();
        w.free_index = w.free.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        w.relations = ech;
        let w = Arc::new(w);
        self.cache
            .write()
            .expect("cache lock")
            .entry(p)
            .or_insert(w)
            .clone()
    }

    /// Splits an ambient coordinate into (summand, basis diagram).
    fn locate<'a>(&self, w: &'a QuotientWeight<F::Elem>, coord: usize) -> (usize, &'a Diagram) {
        let i = w.offsets.partition_point(|&o| o <= coord) - 1;
        (i, &w.bases[i].diagrams[coord - w.offsets[i]])
    }

    /// Class in `1_pM` of the ambient basis vector `diagram` in summand `i`.
    pub fn class_of(&self, i: usize, diagram: &Diagram) -> SparseVec<F::Elem> {
        let p = diagram.left_count();
        let w = self.weight(p);
        let pos = w.offsets[i] + w.bases[i].position(diagram).expect("diagram in summand");
        let reduced = w.relations.reduce(&vec![(pos, self.field.one())], &self.field);
        reduced
            .into_iter()
            .map(|(c, v)| (w.free_index[&c], v))
            .collect()
    }

    /// Quotient basis at weight `p` as (target summand, diagram) pairs.
    pub fn basis_representatives(&self, p: usize) -> Vec<(usize, Diagram)> {
        let w = self.weight(p);
        w.free
            .iter()
            .map(|&c| {
                let (i, d) = self.locate(&w, c);
                (i, *d)
            })
            .collect()
    }
}

impl<F: Field> Module<F> for Cokernel<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn dim(&self, p: usize) -> usize {
        self.weight(p).free.len()
    }

    fn act_generator(&self, g: &Diagram) -> Matrix<F> {
        self.act_diagram(g)
    }

    fn descriptor(&self) -> String {
        self.name.clone()
    }

    fn act_diagram(&self, d: &Diagram) -> Matrix<F> {
        let (q, p) = (d.left_count(), d.right_count());
        let src = self.weight(p);
        let tgt = self.weight(q);
        let mut triples = Vec::new();
        for (col, &coord) in src.free.iter().enumerate() {
            let (i, y) = self.locate(&src, coord);
            let comp = d.compose_unchecked(y);
            if comp.floating > 0 {
                continue;
            }
            let pos = tgt.offsets[i] + tgt.bases[i].position(&comp.diagram).expect("in summand");
            let reduced = tgt.relations.reduce(&vec![(pos, self.field.one())], &self.field);
            for (c, v) in reduced {
                triples.push((tgt.free_index[&c], col, v));
            }
        }
        SparseMatrix::from_triples(tgt.free.len(), src.free.len(), triples, &self.field)
    }
}

/// Per-weight matrices `f_p : 1_pM -> 1_pN` for `p = 0..=cutoff`.
#[derive(Debug, Clone)]
pub struct ModuleMorphism<E> {
    pub maps: Vec<SparseMatrix<E>>,
}

impl<E: Clone + PartialEq> ModuleMorphism<E> {
    pub fn cutoff(&self) -> usize {
        self.maps.len().saturating_sub(1)
    }
}

/// First generator and source weight at which `f` fails to commute with the action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivarianceFailure {
    pub generator: Diagram,
    pub weight: usize,
}

impl fmt::Display for EquivarianceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "generator {:?} at weight {}", self.generator, self.weight)
    }
}

pub fn check_equivariant<F: Field>(
    f: &ModuleMorphism<F::Elem>,
    source: &dyn Module<F>,
    target: &dyn Module<F>,
) -> Result<(), EquivarianceFailure> {
    let field = source.field();
    let cutoff = f.cutoff();
    for p in 0..=cutoff {
        for g in generators_from(p, cutoff) {
            let q = g.left_count();
            let lhs = f.maps[q].mul(&source.act_generator(&g), field);
            let rhs = target.act_generator(&g).mul(&f.maps[p], field);
            if lhs != rhs {
                return Err(EquivarianceFailure {
                    generator: g,
                    weight: p,
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic,
    DimensionMismatch { weight: usize, source: usize, target: usize },
    NotInvertible { weight: usize },
    NotEquivariant(EquivarianceFailure),
}

impl IsoVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic)
    }
}

impl fmt::Display for IsoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoVerdict::Isomorphic => f.write_str("isomorphic"),
            IsoVerdict::DimensionMismatch {
                weight,
                source,
                target,
            } => write!(f, "dimension mismatch at weight {weight}: {source} vs {target}"),
            IsoVerdict::NotInvertible { weight } => write!(f, "map not invertible at weight {weight}"),
            IsoVerdict::NotEquivariant(e) => write!(f, "not equivariant: {e}"),
        }
    }
}

/// Checks that `f` is an equivariant bijection at every weight up to its cutoff.
pub fn check_isomorphism<F: Field>(
    f: &ModuleMorphism<F::Elem>,
    source: &dyn Module<F>,
    target: &dyn Module<F>,
) -> IsoVerdict {
    let field = source.field();
    for (p, m) in f.maps.iter().enumerate() {
        let (s, t) = (source.dim(p), target.dim(p));
        if s != t || m.cols() != s || m.rows() != t {
            return IsoVerdict::DimensionMismatch {
                weight: p,
                source: s,
                target: t,
            };
        }
        if m.rank(field) != s {
            return IsoVerdict::NotInvertible { weight: p };
        }
    }
    match check_equivariant(f, source, target) {
        Ok(()) => IsoVerdict::Isomorphic,
        Err(e) => IsoVerdict::NotEquivariant(e),
    }
}

/// The layer `P_n(≤m)/P_n(≤m−1)` together with the map onto
/// `M_m^{⊕C(n,m)}` that deletes right sarcs.
pub struct FiltrationLayer<F: Field> {
    pub layer: Arc<DiagramModule<F>>,
    pub standards: Arc<DirectSum<F>>,
    /// Right larc position sets labelling the copies of `M_m`.
    pub classes: Vec<Vec<usize>>,
    pub morphism: ModuleMorphism<F::Elem>,
}

impl<F: Field> FiltrationLayer<F> {
    /// `[P_n : M_m]`, read off as the number of right-larc classes.
    pub fn multiplicity(&self) -> usize {
        self.classes.len()
    }

    pub fn verify(&self) -> IsoVerdict {
        check_isomorphism(&self.morphism, self.layer.as_ref(), self.standards.as_ref())
    }
}

pub fn filtration_layer<F: Field>(field: &F, n: usize, m: usize, cutoff: usize) -> FiltrationLayer<F> {
    let layer = Arc::new(DiagramModule::filtration_layer(field.clone(), n, m));
    // classes are the right larc sets that occur; all of them already occur at weight m
    let mut classes: Vec<Vec<usize>> = layer
        .basis(m)
        .diagrams
        .iter()
        .map(Diagram::larc_right)
        .collect();
    classes.sort();
    classes.dedup();
    let standard = Arc::new(DiagramModule::standard(field.clone(), m));
    let standards = Arc::new(DirectSum::new(
        field.clone(),
        classes
            .iter()
            .map(|_| standard.clone() as ModuleRef<F>)
            .collect(),
    ));
    let all: Vec<usize> = (1..=m).collect();
    let maps = (0..=cutoff)
        .map(|p| {
            let src = layer.basis(p);
            let block = standard.basis(p);
            let triples: Vec<_> = src
                .diagrams
                .iter()
                .enumerate()
                .map(|(col, x)| {
                    let class = classes
                        .binary_search(&x.larc_right())
                        .expect("class listed");
                    let y = Diagram::validate(p, m, &x.larc_left(), &all).expect("valid diagram");
                    (class * block.len() + block.position(&y).expect("in M_m"), col, field.one())
                })
                .collect();
            SparseMatrix::from_triples(classes.len() * block.len(), src.len(), triples, field)
        })
        .collect();
    FiltrationLayer {
        layer,
        standards,
        classes,
        morphism: ModuleMorphism { maps },
    }
}

/// `dim Hom(coker(pres), N)`, solving the equivariance system: a map is a
/// choice of `v_i ∈ 1_{n_i}N` with `Σ_i r_{ji} v_i = 0` for every relation.
pub fn hom_dim<F: Field>(pres: &Presentation, target: &dyn Module<F>, cutoff: usize) -> Result<usize, ModuleError> {
    let needed = pres.max_weight();
    if needed > cutoff {
        return Err(ModuleError::CutoffTooSmall { cutoff, needed });
    }
    let field = target.field();
    let col_dims: Vec<usize> = pres.target.iter().map(|&n| target.dim(n)).collect();
    let row_dims: Vec<usize> = pres.sources.iter().map(|&m| target.dim(m)).collect();
    let cols: usize = col_dims.iter().sum();
    let rows: usize = row_dims.iter().sum();
    let mut system = SparseMatrix::zero(rows, cols);
    let mut r0 = 0;
    for (j, row) in pres.relations.iter().enumerate() {
        let mut c0 = 0;
        for (i, r) in row.iter().enumerate() {
            let block = target.act(r, pres.sources[j], pres.target[i]);
            system.place(&block, r0, c0);
            c0 += col_dims[i];
        }
        r0 += row_dims[j];
    }
    Ok(cols - system.rank(field))
}

/// `[M : L_n] = dim 1_nM`.
pub fn multiplicity_simple<F: Field>(m: &dyn Module<F>, n: usize) -> usize {
    m.dim(n)
}

/// Textual module names accepted by the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleSpec {
    Projective(usize),
    Standard(usize),
    Simple(usize),
    Truncated { n: usize, k: usize },
}

impl ModuleSpec {
    pub fn build<F: Field>(&self, field: &F) -> ModuleRef<F> {
        match *self {
            ModuleSpec::Projective(n) => Arc::new(DiagramModule::projective(field.clone(), n)),
            ModuleSpec::Standard(n) => Arc::new(DiagramModule::standard(field.clone(), n)),
            ModuleSpec::Simple(n) => Arc::new(Simple::new(field.clone(), n)),
            ModuleSpec::Truncated { n, k } => {
                Arc::new(DiagramModule::width_truncation(field.clone(), n, k))
            }
        }
    }

    pub fn presentation(&self) -> Option<Presentation> {
        match *self {
            ModuleSpec::Projective(n) => Some(Presentation::projective(n)),
            ModuleSpec::Standard(n) => Some(Presentation::standard(n)),
            ModuleSpec::Simple(n) => Some(Presentation::simple(n)),
            ModuleSpec::Truncated { .. } => None,
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Projective(n) => write!(f, "projective:{n}"),
            ModuleSpec::Standard(n) => write!(f, "standard:{n}"),
            ModuleSpec::Simple(n) => write!(f, "simple:{n}"),
            ModuleSpec::Truncated { n, k } => write!(f, "truncated:{n}:{k}"),
        }
    }
}

impl FromStr for ModuleSpec {
    type Err = ModuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModuleError::BadSpec(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<usize, ModuleError> {
            parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        match (parts[0], parts.len()) {
            ("projective" | "P" | "p", 2) => Ok(ModuleSpec::Projective(num(1)?)),
            ("standard" | "M" | "m", 2) => Ok(ModuleSpec::Standard(num(1)?)),
            ("simple" | "L" | "l", 2) => Ok(ModuleSpec::Simple(num(1)?)),
            ("truncated", 3) => Ok(ModuleSpec::Truncated {
                n: num(1)?,
                k: num(2)?,
            }),
            _ => Err(bad()),
        }
    }
}

/// All `m`-subsets of `{1..n}`; re-exported for callers labelling summands.
pub fn subset_labels(n: usize, m: usize) -> Vec<Vec<usize>> {
    subsets(n, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::enumerate_basis;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn weight_dimensions() {
        let f = Rationals;
        assert_eq!(DiagramModule::standard(f, 2).dim(4), 6);
        assert_eq!(DiagramModule::projective(f, 2).dim(3), 10);
        assert_eq!(DiagramModule::standard(f, 3).dim(1), 0);
        assert_eq!(DiagramModule::width_truncation(f, 3, 1).dim(2), 7);
        assert_eq!(DiagramModule::width_truncation(f, 4, 0).dim(5), 1);
        for p in 0..6 {
            let m = DiagramModule::projective(f, 3);
            assert_eq!(m.dim(p), m.basis(p).len());
        }
    }

    #[test]
    fn direct_action_matches_factorization() {
        let f = PrimeField::new(7).unwrap();
        let modules: Vec<ModuleRef<PrimeField>> = vec![
            Arc::new(DiagramModule::projective(f, 2)),
            Arc::new(DiagramModule::standard(f, 1)),
            Arc::new(DiagramModule::width_truncation(f, 3, 1)),
            Arc::new(Cokernel::new(f, Presentation::standard(2))),
        ];
        for m in &modules {
            for q in 0..4 {
                for p in 0..4 {
                    for d in enumerate_basis(q, p) {
                        let direct = m.act_diagram(&d);
                        let mut via = SparseMatrix::identity(m.dim(p), &f);
                        for g in d.factor().iter().rev() {
                            via = m.act_generator(g).mul(&via, &f);
                        }
                        assert_eq!(direct, via, "{} acting by {d:?}", m.descriptor());
                    }
                }
            }
        }
    }

    #[test]
    fn action_is_multiplicative() {
        let f = Rationals;
        let m = DiagramModule::projective(f, 2);
        for a in enumerate_basis(2, 3) {
            for b in enumerate_basis(3, 1) {
                let c = a.compose(&b).unwrap();
                let prod = m.act_diagram(&a).mul(&m.act_diagram(&b), &f);
                if c.floating > 0 {
                    assert!(prod.is_zero());
                } else {
                    assert_eq!(prod, m.act_diagram(&c.diagram));
                }
            }
        }
    }

    #[test]
    fn cokernels_of_standard_presentations() {
        let f = Rationals;
        for n in 0..4 {
            let c = Cokernel::new(f, Presentation::standard(n));
            for p in 0..7 {
                assert_eq!(c.dim(p), binomial(p, n) as usize, "n={n} p={p}");
            }
        }
        let l = Cokernel::new(f, Presentation::simple(2));
        assert_eq!(dims(&l, 6), vec![0, 0, 1, 0, 0, 0, 0]);
        let p = Cokernel::new(f, Presentation::projective(2));
        assert_eq!(p.dim(3), 10);
    }

    #[test]
    fn filtration_layers_are_standard_sums() {
        let f = Rationals;
        for (n, m) in [(1, 1), (3, 1), (2, 2), (3, 2), (2, 0)] {
            let layer = filtration_layer(&f, n, m, 5);
            assert_eq!(layer.multiplicity() as u64, binomial(n, m));
            assert!(layer.verify().holds(), "n={n} m={m}");
        }
    }

    #[test]
    fn hom_dimensions() {
        let f = Rationals;
        let p3 = DiagramModule::projective(f, 3);
        assert_eq!(hom_dim(&Presentation::projective(2), &p3, 5).unwrap(), 10);
        let m3 = DiagramModule::standard(f, 3);
        assert_eq!(hom_dim(&Presentation::projective(1), &m3, 5).unwrap(), 0);
        let l2 = Simple::new(f, 2);
        assert_eq!(hom_dim(&Presentation::projective(2), &l2, 5).unwrap(), 1);
        assert_eq!(hom_dim(&Presentation::projective(1), &l2, 5).unwrap(), 0);
        let m1 = DiagramModule::standard(f, 1);
        assert_eq!(hom_dim(&Presentation::standard(1), &m1, 5).unwrap(), 1);
        // only the cup-cap diagram in 1_1P_1 is killed by the right sarc
        let p1 = DiagramModule::projective(f, 1);
        assert_eq!(hom_dim(&Presentation::standard(1), &p1, 5).unwrap(), 1);
        assert!(matches!(
            hom_dim(&Presentation::projective(4), &p1, 3),
            Err(ModuleError::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn presentation_validation() {
        let bad = Presentation::new(
            vec![2],
            vec![1],
            vec![vec![AlgebraElement::unit_idempotent(Flavor::Minus, 2)]],
        );
        assert!(matches!(bad, Err(ModuleError::InconsistentWeights { .. })));
        assert_eq!("standard:3".parse::<ModuleSpec>().unwrap(), ModuleSpec::Standard(3));
        assert!("standard".parse::<ModuleSpec>().is_err());
    }
}
