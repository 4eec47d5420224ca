//! Sparse matrices over an exact [`Field`], with rank, kernel and echelon
//! routines.
//!
//! Matrices use the column convention: a map `V -> W` is a `dim W x dim V`
//! matrix acting on column vectors, so `(g ∘ f)` is `G * F`.
//!
//! Rank is computed block by block: the bipartite row/column incidence graph
//! is split into connected components, small blocks are eliminated densely
//! and large ones with a sparse elimination.

use std::collections::BTreeMap;

use crate::field::Field;

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Blocks with both dimensions at or below this size are eliminated densely.
pub const DEFAULT_DENSE_LIMIT: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq> SparseMatrix<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec<E> {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        self.data[r]
            .binary_search_by_key(&c, |(k, _)| *k)
            .ok()
            .map(|i| &self.data[r][i].1)
    }

    /// Nonzero entries as `(row, col, value)` triples in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c.to_owned(), v)))
    }
}

impl<E: Clone + PartialEq> SparseMatrix<E> {
    pub fn identity<F: Field<Elem = E>>(n: usize, field: &F) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, field.one())]).collect(),
        }
    }

    /// Builds a matrix from triples, summing duplicates and dropping zeros.
    pub fn from_triples<F: Field<Elem = E>>(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, E)>,
        field: &F,
    ) -> Self {
        let mut data: Vec<SparseVec<E>> = vec![Vec::new(); rows];
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            data[r].push((c, v));
        }
        for row in &mut data {
            *row = normalize(std::mem::take(row), field);
        }
        SparseMatrix { rows, cols, data }
    }

    pub fn from_dense<F: Field<Elem = E>>(dense: &[Vec<E>], cols: usize, field: &F) -> Self {
        let triples = dense.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, v)| (r, c, v.clone()))
        });
        SparseMatrix::from_triples(dense.len(), cols, triples.collect::<Vec<_>>(), field)
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut out = vec![vec![field.zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVec<E>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, E> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        let p = field.mul(a, b);
                        acc.entry(*c)
                            .and_modify(|v| *v = field.add(v, &p))
                            .or_insert(p);
                    }
                }
                acc.into_iter().filter(|(_, v)| !field.is_zero(v)).collect()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| axpy(a, &field.one(), b, field))
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, s: &E, field: &F) -> Self {
        if field.is_zero(s) {
            return SparseMatrix::zero(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, field.mul(s, v))).collect())
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Applies the matrix to a sparse column vector.
    pub fn apply<F: Field<Elem = E>>(&self, v: &SparseVec<E>, field: &F) -> SparseVec<E> {
        let mut dense: BTreeMap<usize, E> = BTreeMap::new();
        let lookup: BTreeMap<usize, &E> = v.iter().map(|(i, x)| (*i, x)).collect();
        for (r, row) in self.data.iter().enumerate() {
            let mut s = field.zero();
            let mut hit = false;
            for (c, a) in row {
                if let Some(x) = lookup.get(c) {
                    s = field.add(&s, &field.mul(a, x));
                    hit = true;
                }
            }
            if hit && !field.is_zero(&s) {
                dense.insert(r, s);
            }
        }
        dense.into_iter().collect()
    }

    /// Copies `block` into a larger zero matrix at the given offset.
    pub fn embed(&self, rows: usize, cols: usize, row_off: usize, col_off: usize) -> Self {
        let mut out = SparseMatrix::zero(rows, cols);
        out.place(self, row_off, col_off);
        out
    }

    /// Adds the entries of `block` at the given offset; the region must be empty.
    pub fn place(&mut self, block: &Self, row_off: usize, col_off: usize) {
        assert!(row_off + block.rows <= self.rows && col_off + block.cols <= self.cols);
        for (r, row) in block.data.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let target = &mut self.data[row_off + r];
            target.extend(row.iter().map(|(c, v)| (c + col_off, v.clone())));
            target.sort_by_key(|(c, _)| *c);
            debug_assert!(target.windows(2).all(|w| w[0].0 < w[1].0), "overlapping blocks");
        }
    }

    pub fn block_diagonal(blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = SparseMatrix::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.place(b, r0, c0);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn map_entries<G: Clone + PartialEq>(&self, f: impl Fn(&E) -> G) -> SparseMatrix<G> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, f(v))).collect())
                .collect(),
        }
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        rank_with_limit(self, field, DEFAULT_DENSE_LIMIT)
    }
}

fn normalize<F: Field>(mut v: SparseVec<F::Elem>, field: &F) -> SparseVec<F::Elem> {
    v.sort_by_key(|(c, _)| *c);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx = field.add(lx, &x),
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

/// `a + s * b` for sorted sparse vectors.
pub fn axpy<F: Field>(
    a: &SparseVec<F::Elem>,
    s: &F::Elem,
    b: &SparseVec<F::Elem>,
    field: &F,
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(s, &b[j].1)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(s, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Rank, splitting into connected blocks first. Blocks no larger than
/// `dense_limit` in both directions use dense elimination.
pub fn rank_with_limit<F: Field>(m: &SparseMatrix<F::Elem>, field: &F, dense_limit: usize) -> usize {
    if m.is_zero() {
        return 0;
    }
    let rows = m.rows;
    let mut uf = UnionFind::new(rows + m.cols);
    for (r, row) in m.data.iter().enumerate() {
        for (c, _) in row {
            uf.union(r, rows + c);
        }
    }
    // group nonempty rows by component root
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (r, row) in m.data.iter().enumerate() {
        if !row.is_empty() {
            let root = uf.find(r);
            blocks.entry(root).or_default().push(r);
        }
    }
    let mut total = 0;
    for (_, block_rows) in blocks {
        if block_rows.len() == 1 {
            total += 1;
            continue;
        }
        let mut col_ids: Vec<usize> = block_rows
            .iter()
            .flat_map(|&r| m.data[r].iter().map(|(c, _)| *c))
            .collect();
        col_ids.sort_unstable();
        col_ids.dedup();
        if col_ids.len() == 1 {
            total += 1;
            continue;
        }
        if block_rows.len() <= dense_limit && col_ids.len() <= dense_limit {
            let index: BTreeMap<usize, usize> =
                col_ids.iter().enumerate().map(|(i, c)| (*c, i)).collect();
            let mut dense = vec![vec![field.zero(); col_ids.len()]; block_rows.len()];
            for (i, &r) in block_rows.iter().enumerate() {
                for (c, v) in &m.data[r] {
                    dense[i][index[c]] = v.clone();
                }
            }
            total += dense_rank(dense, field);
        } else {
            let rows: Vec<SparseVec<F::Elem>> = block_rows.iter().map(|&r| m.data[r].clone()).collect();
            total += sparse_rank(rows, field);
        }
    }
    total
}

/// Gaussian elimination on a dense matrix.
pub fn dense_rank<F: Field>(mut a: Vec<Vec<F::Elem>>, field: &F) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !field.is_zero(&a[r][c])) else {
            continue;
        };
        a.swap(rank, p);
        let inv = field.inv(&a[rank][c]);
        let pivot_row = a[rank].clone();
        for r in rank + 1..rows {
            if field.is_zero(&a[r][c]) {
                continue;
            }
            let factor = field.mul(&a[r][c], &inv);
            for j in c..cols {
                if !field.is_zero(&pivot_row[j]) {
                    let t = field.mul(&factor, &pivot_row[j]);
                    a[r][j] = field.sub(&a[r][j], &t);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Incremental sparse elimination: rows are reduced against existing pivot
/// rows keyed by leading column; sparsest rows are processed first.
pub fn sparse_rank<F: Field>(mut rows: Vec<SparseVec<F::Elem>>, field: &F) -> usize {
    rows.sort_by_key(Vec::len);
    let mut pivots: BTreeMap<usize, SparseVec<F::Elem>> = BTreeMap::new();
    for mut row in rows {
        while let Some((lead, val)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let factor = field.neg(&field.mul(&val, &field.inv(&p[0].1)));
                    row = axpy(&row, &factor, p, field);
                }
                None => break,
            }
        }
        if let Some((lead, _)) = row.first() {
            pivots.insert(*lead, row);
        }
    }
    pivots.len()
}

/// Row space of a set of vectors in reduced row echelon form: each stored row
/// has a leading 1 at its pivot column and zeros at every other pivot column.
#[derive(Debug, Clone)]
pub struct Echelon<E> {
    pivots: BTreeMap<usize, SparseVec<E>>,
}

impl<E: Clone + PartialEq> Echelon<E> {
    pub fn new<F: Field<Elem = E>>(vectors: impl IntoIterator<Item = SparseVec<E>>, field: &F) -> Self {
        let mut ech = Echelon {
            pivots: BTreeMap::new(),
        };
        for v in vectors {
            ech.insert(v, field);
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `v` modulo the row space; the result vanishes on pivot columns.
    pub fn reduce<F: Field<Elem = E>>(&self, v: &SparseVec<E>, field: &F) -> SparseVec<E> {
        let mut out = v.clone();
        loop {
            let hit = out
                .iter()
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = hit else {
                return out;
            };
            out = axpy(&out, &field.neg(&x), &self.pivots[&c], field);
        }
    }

    /// Adds a vector; returns true if it enlarged the row space.
    pub fn insert<F: Field<Elem = E>>(&mut self, v: SparseVec<E>, field: &F) -> bool {
        let r = self.reduce(&v, field);
        let Some((lead, x)) = r.first().cloned() else {
            return false;
        };
        let inv = field.inv(&x);
        let r: SparseVec<E> = r.into_iter().map(|(c, y)| (c, field.mul(&inv, &y))).collect();
        // clear the new pivot column from the existing rows
        let keys: Vec<usize> = self.pivots.keys().copied().collect();
        for k in keys {
            let row = &self.pivots[&k];
            if let Ok(i) = row.binary_search_by_key(&lead, |(c, _)| *c) {
                let coeff = field.neg(&row[i].1);
                let updated = axpy(row, &coeff, &r, field);
                self.pivots.insert(k, updated);
            }
        }
        self.pivots.insert(lead, r);
        true
    }
}

/// Basis of the null space `{x : A x = 0}` as sparse column vectors.
pub fn kernel_basis<F: Field>(a: &SparseMatrix<F::Elem>, field: &F) -> Vec<SparseVec<F::Elem>> {
    let ech = Echelon::new(a.data.iter().cloned(), field);
    let mut basis = Vec::new();
    for free in (0..a.cols).filter(|c| !ech.is_pivot(*c)) {
        // x_free = 1, x_pivot = -row_pivot[free]
        let mut v: SparseVec<F::Elem> = vec![(free, field.one())];
        for (p, row) in &ech.pivots {
            if let Ok(i) = row.binary_search_by_key(&free, |(c, _)| *c) {
                v.push((*p, field.neg(&row[i].1)));
            }
        }
        v.sort_by_key(|(c, _)| *c);
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    #[test]
    fn dense_and_sparse_rank_agree() {
        let f = Rationals;
        let dense = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ];
        let m = SparseMatrix::from_dense(&dense, 3, &f);
        assert_eq!(m.rank(&f), 2);
        assert_eq!(rank_with_limit(&m, &f, 0), 2);
        assert_eq!(dense_rank(dense, &f), 2);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2, so rank 1 mod 2 and rank 2 over Q
        let f2 = PrimeField::new(2).unwrap();
        let m2 = SparseMatrix::from_triples(2, 2, vec![(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, f2.from_i64(-1))], &f2);
        assert_eq!(m2.rank(&f2), 1);
        let mq = SparseMatrix::from_triples(2, 2, vec![(0, 0, q(1)), (0, 1, q(1)), (1, 0, q(1)), (1, 1, q(-1))], &Rationals);
        assert_eq!(mq.rank(&Rationals), 2);
    }

    #[test]
    fn kernel_has_right_dimension() {
        let f = Rationals;
        let m = SparseMatrix::from_triples(2, 4, vec![(0, 0, q(1)), (0, 1, q(1)), (1, 2, q(1)), (1, 3, q(-1))], &f);
        let k = kernel_basis(&m, &f);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v, &f).is_empty());
        }
    }

    #[test]
    fn echelon_reduction_kills_row_space() {
        let f = Rationals;
        let ech = Echelon::new(vec![vec![(0, q(2)), (2, q(2))], vec![(1, q(1)), (2, q(3))]], &f);
        assert_eq!(ech.rank(), 2);
        let r = ech.reduce(&vec![(0, q(1)), (1, q(1)), (2, q(4))], &f);
        assert!(r.is_empty());
        let r = ech.reduce(&vec![(2, q(1))], &f);
        assert_eq!(r, vec![(2, q(1))]);
    }

    #[test]
    fn products_and_blocks() {
        let f = Rationals;
        let a = SparseMatrix::from_triples(2, 2, vec![(0, 1, q(1))], &f);
        assert!(a.mul(&a, &f).is_zero());
        let i = SparseMatrix::identity(2, &f);
        assert_eq!(a.mul(&i, &f), a);
        let bd = SparseMatrix::block_diagonal(&[a.clone(), i.clone()]);
        assert_eq!(bd.rows(), 4);
        assert_eq!(bd.rank(&f), 3);
    }
}
