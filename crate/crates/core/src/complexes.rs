//! Bounded chain complexes whose terms are direct sums of diagram modules
//! (projectives, standards, width truncations), with differentials given by
//! right multiplication, plus their per-weight linear components.
//!
//! A differential `C_t → C_{t−1}` is a matrix of algebra elements indexed by
//! (source summand, target summand); entry `β` sends `a` to `a·β`, so `β`
//! lies in `1_{source} A 1_{target}` and composites are row-by-column
//! products `B_t · B_{t−1}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraElement, Flavor, Scalar};
use crate::combinat::binomial;
use crate::diagram::Diagram;
use crate::field::Field;
use crate::grothendieck::{Basis, PolyClass};
use crate::linalg::SparseMatrix;
use crate::modules::{window_basis, WeightBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("differential {degree} entry ({row},{col}) has a term outside the block {left}x{right}")]
    InconsistentWeights {
        degree: usize,
        row: usize,
        col: usize,
        left: usize,
        right: usize,
    },
    #[error("differential {degree} has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    BadShape {
        degree: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("tensor products are only formed for complexes of projectives")]
    NotProjective,
    #[error("d^2 or anticommutativity fails: {0}")]
    NotAComplex(String),
}

/// Which quotient of `P_n` a summand is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Piece {
    Projective,
    Standard,
    /// `P_n(≤k)`.
    Truncated(usize),
}

impl Piece {
    /// Admissible widths `[lo, hi]` of basis diagrams.
    pub fn window(self, n: usize) -> (usize, usize) {
        match self {
            Piece::Projective => (0, n),
            Piece::Standard => (n, n),
            Piece::Truncated(k) => (0, k.min(n)),
        }
    }

    /// `K₀` class of the piece over `P_n`.
    pub fn class(self, n: usize) -> PolyClass {
        let (lo, hi) = self.window(n);
        let mut coeffs = vec![0i64; hi + 1];
        for (j, c) in coeffs.iter_mut().enumerate().skip(lo) {
            *c = binomial(n, j) as i64;
        }
        PolyClass::from_i64(Basis::Standard, &coeffs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub n: usize,
    pub piece: Piece,
    pub label: String,
}

impl Summand {
    pub fn projective(n: usize, label: impl Into<String>) -> Self {
        Summand {
            n,
            piece: Piece::Projective,
            label: label.into(),
        }
    }

    pub fn standard(n: usize, label: impl Into<String>) -> Self {
        Summand {
            n,
            piece: Piece::Standard,
            label: label.into(),
        }
    }

    pub fn name(&self) -> String {
        let base = match self.piece {
            Piece::Projective => format!("P_{}", self.n),
            Piece::Standard => format!("M_{}", self.n),
            Piece::Truncated(k) => format!("P_{}(<={k})", self.n),
        };
        if self.label.is_empty() {
            base
        } else {
            format!("{base}^{}", self.label)
        }
    }
}

/// Sparse matrix of algebra elements.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: BTreeMap<(usize, usize), AlgebraElement>,
}

impl DiffMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        DiffMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn add_entry(&mut self, row: usize, col: usize, a: AlgebraElement) {
        assert!(row < self.rows && col < self.cols, "entry outside matrix");
        if a.is_zero() {
            return;
        }
        let sum = match self.entries.remove(&(row, col)) {
            Some(prev) => prev.add(&a).expect("same flavor"),
            None => a,
        };
        if !sum.is_zero() {
            self.entries.insert((row, col), sum);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&AlgebraElement> {
        self.entries.get(&(row, col))
    }

    /// Row-by-column product, the matrix of "first `self`, then `other`".
    pub fn then(&self, other: &DiffMatrix) -> DiffMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut by_row: HashMap<usize, Vec<(usize, &AlgebraElement)>> = HashMap::new();
        for ((r, c), e) in &other.entries {
            by_row.entry(*r).or_default().push((*c, e));
        }
        let mut out = DiffMatrix::zero(self.rows, other.cols);
        for ((s, k), beta) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (u, gamma) in row {
                    out.add_entry(*s, *u, beta.multiply(gamma).expect("same flavor"));
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &DiffMatrix) -> DiffMatrix {
        let mut out = self.clone();
        for ((r, c), e) in &other.entries {
            out.add_entry(*r, *c, e.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A bounded complex `C_0 ← C_1 ← … ← C_T`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramComplex {
    terms: Vec<Vec<Summand>>,
    /// `diffs[t − 1]` is `d_t : C_t → C_{t−1}`.
    diffs: Vec<DiffMatrix>,
    /// Human-readable description of `H_0`, when known.
    pub augmentation: Option<String>,
}

pub type ProjectiveComplex = DiagramComplex;

/// One failing composite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct D2Failure {
    pub degree: usize,
    pub row: usize,
    pub col: usize,
    pub value: String,
}

impl DiagramComplex {
    pub fn new(terms: Vec<Vec<Summand>>, diffs: Vec<DiffMatrix>) -> Result<Self, ComplexError> {
        let c = DiagramComplex {
            terms,
            diffs,
            augmentation: None,
        };
        c.check()?;
        Ok(c)
    }

    pub fn with_augmentation(mut self, h0: impl Into<String>) -> Self {
        self.augmentation = Some(h0.into());
        self
    }

    fn check(&self) -> Result<(), ComplexError> {
        if self.diffs.len() + 1 != self.terms.len().max(1) {
            return Err(ComplexError::BadShape {
                degree: self.diffs.len(),
                rows: 0,
                cols: 0,
                expected_rows: 0,
                expected_cols: 0,
            });
        }
        for (i, d) in self.diffs.iter().enumerate() {
            let t = i + 1;
            let (src, tgt) = (&self.terms[t], &self.terms[t - 1]);
            if d.rows != src.len() || d.cols != tgt.len() {
                return Err(ComplexError::BadShape {
                    degree: t,
                    rows: d.rows,
                    cols: d.cols,
                    expected_rows: src.len(),
                    expected_cols: tgt.len(),
                });
            }
            for ((r, c), e) in &d.entries {
                let (left, right) = (src[*r].n, tgt[*c].n);
                if e.terms().any(|(x, _)| x.left_count() != left || x.right_count() != right) {
                    return Err(ComplexError::InconsistentWeights {
                        degree: t,
                        row: *r,
                        col: *c,
                        left,
                        right,
                    });
                }
            }
        }
        Ok(())
    }

    /// The complex with a single term `P_n` in degree 0.
    pub fn single(summand: Summand) -> Self {
        DiagramComplex {
            terms: vec![vec![summand]],
            diffs: Vec::new(),
            augmentation: None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(Vec::is_empty)
    }

    /// Highest degree with a term.
    pub fn top(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn term(&self, t: usize) -> &[Summand] {
        self.terms.get(t).map_or(&[], Vec::as_slice)
    }

    pub fn terms(&self) -> &[Vec<Summand>] {
        &self.terms
    }

    /// `d_t : C_t → C_{t−1}` for `t ≥ 1`.
    pub fn differential(&self, t: usize) -> Option<&DiffMatrix> {
        t.checked_sub(1).and_then(|i| self.diffs.get(i))
    }

    pub fn differentials(&self) -> &[DiffMatrix] {
        &self.diffs
    }

    pub fn is_projective(&self) -> bool {
        self.terms.iter().flatten().all(|s| s.piece == Piece::Projective)
    }

    /// Multiset of projective indices in degree `t`: index -> count.
    pub fn term_profile(&self, t: usize) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for s in self.term(t) {
            *out.entry(s.n).or_insert(0) += 1;
        }
        out
    }

    /// Symbolic check that every composite `d_{t−1} ∘ d_t` vanishes in the algebra.
    pub fn verify_d2(&self) -> Vec<D2Failure> {
        let mut failures = Vec::new();
        for t in 2..self.terms.len() {
            let comp = self.diffs[t - 1].then(&self.diffs[t - 2]);
            for ((r, c), e) in comp.entries {
                failures.push(D2Failure {
                    degree: t,
                    row: r,
                    col: c,
                    value: e.to_string(),
                });
            }
        }
        failures
    }

    /// True if every differential entry is homogeneous of sarc degree one.
    pub fn check_linearity(&self) -> bool {
        self.diffs
            .iter()
            .flat_map(|d| d.entries.values())
            .all(|e| e.homogeneous_degree() == Some(1))
    }

    /// Alternating sum of the classes of the terms.
    pub fn euler_class(&self) -> PolyClass {
        let mut acc = PolyClass::zero(Basis::Projective);
        for (t, term) in self.terms.iter().enumerate() {
            for s in term {
                let c = s.piece.class(s.n);
                acc = if t % 2 == 0 { acc.add(&c) } else { acc.sub(&c) };
            }
        }
        acc
    }

    /// Replaces every summand by its image under `f` and every entry by `g(entry)`.
    pub fn map(
        &self,
        f: impl Fn(&Summand) -> Summand,
        g: impl Fn(&AlgebraElement) -> AlgebraElement,
    ) -> Result<Self, ComplexError> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.iter().map(&f).collect())
            .collect();
        let diffs = self
            .diffs
            .iter()
            .map(|d| DiffMatrix {
                rows: d.rows,
                cols: d.cols,
                entries: d
                    .entries
                    .iter()
                    .map(|(k, e)| (*k, g(e)))
                    .filter(|(_, e)| !e.is_zero())
                    .collect(),
            })
            .collect();
        DiagramComplex::new(terms, diffs)
    }

    /// Same complex with one differential entry negated; used to exercise
    /// the d² check.
    pub fn with_entry_negated(&self, t: usize, row: usize, col: usize) -> Self {
        let mut out = self.clone();
        let d = &mut out.diffs[t - 1];
        if let Some(e) = d.entries.get_mut(&(row, col)) {
            *e = e.scale(&Scalar::from_integer((-1).into()));
        }
        out
    }

    /// The weight-`p` component as a complex of vector spaces over `field`.
    pub fn weight_component<F: Field>(&self, p: usize, field: &F) -> LinearComplex<F::Elem> {
        let mut bases: HashMap<(usize, usize, usize), Arc<WeightBasis>> = HashMap::new();
        let mut basis_of = |s: &Summand| -> Arc<WeightBasis> {
            let (lo, hi) = s.piece.window(s.n);
            bases
                .entry((s.n, lo, hi))
                .or_insert_with(|| Arc::new(WeightBasis::new(window_basis(p, s.n, lo, hi))))
                .clone()
        };
        let term_bases: Vec<Vec<Arc<WeightBasis>>> = self
            .terms
            .iter()
            .map(|t| t.iter().map(&mut basis_of).collect())
            .collect();
        let dims: Vec<usize> = term_bases
            .iter()
            .map(|t| t.iter().map(|b| b.len()).sum())
            .collect();
        let maps = (1..self.terms.len())
            .into_par_iter()
            .map(|t| self.weight_map(t, &term_bases[t], &term_bases[t - 1], field))
            .collect();
        LinearComplex::new(dims, maps, Direction::Down)
    }

    fn weight_map<F: Field>(
        &self,
        t: usize,
        src: &[Arc<WeightBasis>],
        tgt: &[Arc<WeightBasis>],
        field: &F,
    ) -> SparseMatrix<F::Elem> {
        let offsets = |bs: &[Arc<WeightBasis>]| {
            let mut o = Vec::with_capacity(bs.len());
            let mut acc = 0;
            for b in bs {
                o.push(acc);
                acc += b.len();
            }
            (o, acc)
        };
        let (src_off, src_dim) = offsets(src);
        let (tgt_off, tgt_dim) = offsets(tgt);
        let d = &self.diffs[t - 1];
        let mut triples = Vec::new();
        for ((s, u), beta) in &d.entries {
            let lo = self.terms[t - 1][*u].piece.window(self.terms[t - 1][*u].n).0;
            let coeffs: Vec<(Diagram, F::Elem)> = beta
                .terms()
                .map(|(dg, c)| (*dg, field.from_rational(c)))
                .collect();
            for (i, x) in src[*s].diagrams.iter().enumerate() {
                for (dg, c) in &coeffs {
                    let comp = x.compose_unchecked(dg);
                    if comp.floating > 0 || comp.diagram.width() < lo {
                        continue;
                    }
                    let row = tgt_off[*u]
                        + tgt[*u]
                            .position(&comp.diagram)
                            .expect("product stays in the target window");
                    triples.push((row, src_off[*s] + i, c.clone()));
                }
            }
        }
        SparseMatrix::from_triples(tgt_dim, src_dim, triples, field)
    }

    /// Homology dimensions at weight `p` in every degree `0..=top`.
    pub fn homology<F: Field>(&self, p: usize, field: &F) -> Vec<usize> {
        self.weight_component(p, field).homology(field)
    }

    /// Tensor product with the Koszul sign on the second factor:
    /// `d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy`, and `P_k ⊗ P_l = P_{k+l}` with
    /// the first factor on top.
    pub fn tensor(&self, other: &DiagramComplex) -> Result<DiagramComplex, ComplexError> {
        if !self.is_projective() || !other.is_projective() {
            return Err(ComplexError::NotProjective);
        }
        let top = self.top() + other.top();
        // index of (a, i, b, j) inside total degree a + b
        let mut index: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
        let mut terms: Vec<Vec<Summand>> = vec![Vec::new(); top + 1];
        for (a, ta) in self.terms.iter().enumerate() {
            for (b, tb) in other.terms.iter().enumerate() {
                for (i, x) in ta.iter().enumerate() {
                    for (j, y) in tb.iter().enumerate() {
                        let t = a + b;
                        index.insert((a, i, b, j), terms[t].len());
                        terms[t].push(Summand::projective(x.n + y.n, format!("{}|{}", x.label, y.label)));
                    }
                }
            }
        }
        let mut diffs: Vec<DiffMatrix> = (1..=top)
            .map(|t| DiffMatrix::zero(terms[t].len(), terms[t - 1].len()))
            .collect();
        let one = |n: usize| AlgebraElement::unit_idempotent(Flavor::Minus, n);
        for (a, ta) in self.terms.iter().enumerate() {
            for (b, tb) in other.terms.iter().enumerate() {
                let t = a + b;
                if t == 0 {
                    continue;
                }
                for (i, x) in ta.iter().enumerate() {
                    for (j, y) in tb.iter().enumerate() {
                        let row = index[&(a, i, b, j)];
                        if let Some(d) = self.differential(a) {
                            for ((r, c), beta) in &d.entries {
                                if *r != i {
                                    continue;
                                }
                                let col = index[&(a - 1, *c, b, j)];
                                let e = beta.tensor(&one(y.n)).expect("same flavor");
                                diffs[t - 1].add_entry(row, col, e);
                            }
                        }
                        if let Some(d) = other.differential(b) {
                            for ((r, c), gamma) in &d.entries {
                                if *r != j {
                                    continue;
                                }
                                let col = index[&(a, i, b - 1, *c)];
                                let mut e = one(x.n).tensor(gamma).expect("same flavor");
                                if a % 2 == 1 {
                                    e = e.scale(&Scalar::from_integer((-1).into()));
                                }
                                diffs[t - 1].add_entry(row, col, e);
                            }
                        }
                    }
                }
            }
        }
        DiagramComplex::new(terms, diffs)
    }

    /// JSON form `{"terms": {t: [...]}, "diffs": {t: [[...]]}}`.
    pub fn to_json(&self) -> Value {
        let mut terms = serde_json::Map::new();
        let mut diffs = serde_json::Map::new();
        for (t, term) in self.terms.iter().enumerate() {
            let list: Vec<Value> = term
                .iter()
                .map(|s| {
                    let mut v = json!({"proj": s.n, "label": s.label});
                    if s.piece != Piece::Projective {
                        v["piece"] = serde_json::to_value(s.piece).expect("serializable");
                    }
                    v
                })
                .collect();
            terms.insert(t.to_string(), Value::Array(list));
        }
        for (i, d) in self.diffs.iter().enumerate() {
            let zero = AlgebraElement::zero(Flavor::Minus);
            let rows: Vec<Value> = (0..d.rows)
                .map(|r| {
                    Value::Array(
                        (0..d.cols)
                            .map(|c| {
                                serde_json::to_value(d.get(r, c).unwrap_or(&zero)).expect("serializable")
                            })
                            .collect(),
                    )
                })
                .collect();
            diffs.insert((i + 1).to_string(), Value::Array(rows));
        }
        let mut out = json!({"terms": terms, "diffs": diffs});
        if let Some(a) = &self.augmentation {
            out["augmentation"] = Value::String(a.clone());
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `maps[i] : C_{i+1} → C_i`.
    Down,
    /// `maps[i] : C^i → C^{i+1}`.
    Up,
}

/// A finite complex of vector spaces, degrees `0..dims.len()`.
#[derive(Debug, Clone)]
pub struct LinearComplex<E> {
    pub dims: Vec<usize>,
    pub maps: Vec<SparseMatrix<E>>,
    pub direction: Direction,
}

impl<E: Clone + PartialEq + Send + Sync> LinearComplex<E> {
    pub fn new(dims: Vec<usize>, maps: Vec<SparseMatrix<E>>, direction: Direction) -> Self {
        assert_eq!(maps.len() + 1, dims.len().max(1), "one map between each pair of degrees");
        LinearComplex {
            dims,
            maps,
            direction,
        }
    }

    pub fn ranks<F: Field<Elem = E>>(&self, field: &F) -> Vec<usize> {
        self.maps.par_iter().map(|m| m.rank(field)).collect()
    }

    /// `dim H_i = dim C_i − rank(map into or out of i on either side)`.
    pub fn homology<F: Field<Elem = E>>(&self, field: &F) -> Vec<usize> {
        let ranks = self.ranks(field);
        (0..self.dims.len())
            .map(|i| {
                let below = if i > 0 { ranks[i - 1] } else { 0 };
                let above = ranks.get(i).copied().unwrap_or(0);
                self.dims[i] - below - above
            })
            .collect()
    }

    /// Composite of consecutive maps vanishes.
    pub fn is_complex<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.maps.windows(2).all(|w| match self.direction {
            Direction::Down => w[0].mul(&w[1], field).is_zero(),
            Direction::Up => w[1].mul(&w[0], field).is_zero(),
        })
    }

    /// True if every map is zero.
    pub fn all_maps_zero(&self) -> bool {
        self.maps.iter().all(SparseMatrix::is_zero)
    }
}

/// Double complex with terms at `(m, k)`, horizontal maps lowering `m` and
/// vertical maps lowering `k`.
#[derive(Debug, Clone)]
pub struct Bicomplex {
    pub grid: BTreeMap<(usize, usize), Vec<Summand>>,
    /// `(m, k) → (m − 1, k)`.
    pub horizontal: BTreeMap<(usize, usize), DiffMatrix>,
    /// `(m, k) → (m, k − 1)`.
    pub vertical: BTreeMap<(usize, usize), DiffMatrix>,
}

/// Outcome of the square checks.
#[derive(Debug, Clone, Default, Serialize)]
pub struct BicomplexReport {
    pub squares_checked: usize,
    pub vertical_d2_failures: Vec<(usize, usize)>,
    pub horizontal_d2_failures: Vec<(usize, usize)>,
    pub anticommute_failures: Vec<(usize, usize)>,
}

impl BicomplexReport {
    pub fn passed(&self) -> bool {
        self.vertical_d2_failures.is_empty()
            && self.horizontal_d2_failures.is_empty()
            && self.anticommute_failures.is_empty()
    }
}

impl Bicomplex {
    fn term_len(&self, m: usize, k: usize) -> usize {
        self.grid.get(&(m, k)).map_or(0, Vec::len)
    }

    fn h(&self, m: usize, k: usize) -> DiffMatrix {
        self.horizontal.get(&(m, k)).cloned().unwrap_or_else(|| {
            DiffMatrix::zero(self.term_len(m, k), if m == 0 { 0 } else { self.term_len(m - 1, k) })
        })
    }

    fn v(&self, m: usize, k: usize) -> DiffMatrix {
        self.vertical.get(&(m, k)).cloned().unwrap_or_else(|| {
            DiffMatrix::zero(self.term_len(m, k), if k == 0 { 0 } else { self.term_len(m, k - 1) })
        })
    }

    /// Checks `d_v² = 0`, `d_h² = 0` and `d_h d_v + d_v d_h = 0` at every grid point.
    pub fn verify(&self) -> BicomplexReport {
        let mut report = BicomplexReport::default();
        for &(m, k) in self.grid.keys() {
            if k >= 2 && !self.v(m, k).then(&self.v(m, k - 1)).is_zero() {
                report.vertical_d2_failures.push((m, k));
            }
            if m >= 2 && !self.h(m, k).then(&self.h(m - 1, k)).is_zero() {
                report.horizontal_d2_failures.push((m, k));
            }
            if m >= 1 && k >= 1 {
                report.squares_checked += 1;
                let a = self.h(m, k).then(&self.v(m - 1, k));
                let b = self.v(m, k).then(&self.h(m, k - 1));
                if !a.sum(&b).is_zero() {
                    report.anticommute_failures.push((m, k));
                }
            }
        }
        report
    }

    /// Total complex up to degree `t_max`; `C_t = ⊕_{m+k=t}`, ordered by `m`.
    pub fn total(&self, t_max: usize) -> Result<DiagramComplex, ComplexError> {
        let report = self.verify();
        if !report.passed() {
            return Err(ComplexError::NotAComplex(format!("{report:?}")));
        }
        let mut terms: Vec<Vec<Summand>> = vec![Vec::new(); t_max + 1];
        let mut offset: HashMap<(usize, usize), usize> = HashMap::new();
        for t in 0..=t_max {
            for m in 0..=t {
                let k = t - m;
                if let Some(list) = self.grid.get(&(m, k)) {
                    offset.insert((m, k), terms[t].len());
                    terms[t].extend(list.iter().cloned());
                }
            }
        }
        let mut diffs: Vec<DiffMatrix> = (1..=t_max)
            .map(|t| DiffMatrix::zero(terms[t].len(), terms[t - 1].len()))
            .collect();
        for (&(m, k), &off) in &offset {
            let t = m + k;
            if t == 0 {
                continue;
            }
            if m >= 1 {
                if let (Some(d), Some(&to)) = (self.horizontal.get(&(m, k)), offset.get(&(m - 1, k))) {
                    for ((r, c), e) in &d.entries {
                        diffs[t - 1].add_entry(off + r, to + c, e.clone());
                    }
                }
            }
            if k >= 1 {
                if let (Some(d), Some(&to)) = (self.vertical.get(&(m, k)), offset.get(&(m, k - 1))) {
                    for ((r, c), e) in &d.entries {
                        diffs[t - 1].add_entry(off + r, to + c, e.clone());
                    }
                }
            }
        }
        DiagramComplex::new(terms, diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Side;
    use crate::field::Rationals;

    fn b(d: Diagram) -> AlgebraElement {
        AlgebraElement::basis(Flavor::Minus, d)
    }

    /// 0 → P_0 → P_1 → 0 via the right sarc diagram.
    fn m1() -> DiagramComplex {
        let mut d = DiffMatrix::zero(1, 1);
        d.add_entry(0, 0, b(Diagram::elementary(1, 1, Side::Right).unwrap()));
        DiagramComplex::new(
            vec![vec![Summand::projective(1, "")], vec![Summand::projective(0, "")]],
            vec![d],
        )
        .unwrap()
    }

    #[test]
    fn small_homology() {
        let c = m1();
        assert!(c.verify_d2().is_empty());
        assert_eq!(c.homology(2, &Rationals), vec![2, 0]);
        assert_eq!(c.euler_class(), PolyClass::from_i64(Basis::Projective, &[-1, 1]));
        assert!(c.check_linearity());
        let zero = DiagramComplex::new(vec![vec![]], vec![]).unwrap();
        assert_eq!(zero.homology(3, &Rationals), vec![0]);
    }

    #[test]
    fn tensor_with_unit_and_square() {
        let c = m1();
        let unit = DiagramComplex::single(Summand::projective(0, ""));
        let cu = c.tensor(&unit).unwrap();
        assert_eq!(cu.terms().len(), 2);
        assert_eq!(cu.differentials(), c.differentials());
        let cc = c.tensor(&c).unwrap();
        assert_eq!(cc.term_profile(0), BTreeMap::from([(2, 1)]));
        assert_eq!(cc.term_profile(1), BTreeMap::from([(1, 2)]));
        assert_eq!(cc.term_profile(2), BTreeMap::from([(0, 1)]));
        assert!(cc.verify_d2().is_empty());
        for p in 0..6 {
            let h = cc.homology(p, &Rationals);
            assert_eq!(h, vec![binomial(p, 2) as usize, 0, 0]);
        }
    }

    #[test]
    fn rejects_inconsistent_entries() {
        let mut d = DiffMatrix::zero(1, 1);
        d.add_entry(0, 0, AlgebraElement::unit_idempotent(Flavor::Minus, 1));
        let r = DiagramComplex::new(
            vec![vec![Summand::projective(1, "")], vec![Summand::projective(0, "")]],
            vec![d],
        );
        assert!(matches!(r, Err(ComplexError::InconsistentWeights { .. })));
    }

    #[test]
    fn json_shape() {
        let v = m1().to_json();
        assert_eq!(v["terms"]["0"][0]["proj"], 1);
        assert_eq!(v["diffs"]["1"][0][0]["flavor"], "minus");
    }
}
