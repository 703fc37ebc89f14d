//! Dense exact linear algebra over [`Scalar`] and operators on `(C^2)^{⊗N}`.
//!
//! Tensor slots are numbered from 1. The flat index of a multi-index
//! `(i_1, …, i_N)` with `i_k ∈ {1, 2}` is `Σ (i_k − 1)·2^(N−k)`, so slot 1 is
//! the most significant bit.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::{normalize_content, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    /// Adjacent pair `(i, i+1)` does not fit into `slots` tensor factors.
    SlotOutOfRange { index: usize, slots: usize },
    /// The embedded operator does not act on exactly two slots.
    NotTwoSlot(usize),
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::SlotOutOfRange { index, slots } => {
                write!(f, "slot pair ({index}, {}) out of range for {slots} slots", index + 1)
            }
            LinalgError::NotTwoSlot(n) => write!(f, "expected a two-slot operator, got {n} slots"),
        }
    }
}

/// Row-major dense matrix of scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&Scalar::from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Stacks blocks vertically; all blocks must share a column count.
    pub fn vstack(blocks: &[Matrix]) -> Matrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack column mismatch");
        Matrix {
            rows: blocks.iter().map(|b| b.rows).sum(),
            cols,
            data: blocks.iter().flat_map(|b| b.data.iter().cloned()).collect(),
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    ///
    /// Pivots are chosen column by column, taking the first row at or below
    /// the current one with a nonzero entry.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pr = self.get(r, j);
                    if pr.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&f * pr);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space.
    ///
    /// One vector per free column in ascending order (that variable set to 1,
    /// the other free variables 0), then rescaled by [`normalize_content`]
    /// with the first nonzero entry as the sign reference.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(row, free);
            }
            let lead = v.iter().position(|x| !x.is_zero()).unwrap_or(0);
            normalize_content(&mut v, lead);
            basis.push(v);
        }
        basis
    }
}

/// Coefficients `c` with `Σ c_i·basis_i = v`, or `None` when `v` is outside
/// the span. Free directions (dependent basis vectors) get coefficient zero.
pub fn in_span(v: &[Scalar], basis: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    let k = basis.len();
    assert!(basis.iter().all(|b| b.len() == v.len()), "in_span dimension mismatch");
    let mut m = Matrix::zeros(v.len(), k + 1);
    for (j, b) in basis.iter().enumerate() {
        for (i, x) in b.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    for (i, x) in v.iter().enumerate() {
        m.set(i, k, x.clone());
    }
    let pivots = m.rref();
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut c = vec![Scalar::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        c[p] = m.get(row, k).clone();
    }
    Some(c)
}

/// Operator on `(C^2)^{⊗slots}` as a `2^slots × 2^slots` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorOperator {
    slots: usize,
    mat: Matrix,
}

impl TensorOperator {
    pub fn new(slots: usize, mat: Matrix) -> Self {
        let d = 1usize << slots;
        assert!(mat.rows() == d && mat.cols() == d, "operator size must be 2^slots");
        TensorOperator { slots, mat }
    }

    pub fn identity(slots: usize) -> Self {
        TensorOperator { slots, mat: Matrix::identity(1 << slots) }
    }

    /// The flip `σ(v ⊗ w) = w ⊗ v` on two slots.
    pub fn flip() -> Self {
        let mut m = Matrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                m.set(2 * j + i, 2 * i + j, Scalar::one());
            }
        }
        TensorOperator { slots: 2, mat: m }
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    /// Operator product `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &TensorOperator) -> TensorOperator {
        assert_eq!(self.slots, other.slots);
        TensorOperator { slots: self.slots, mat: self.mat.mul(&other.mat) }
    }

    pub fn add(&self, other: &TensorOperator) -> TensorOperator {
        assert_eq!(self.slots, other.slots);
        TensorOperator { slots: self.slots, mat: self.mat.add(&other.mat) }
    }

    pub fn sub(&self, other: &TensorOperator) -> TensorOperator {
        assert_eq!(self.slots, other.slots);
        TensorOperator { slots: self.slots, mat: self.mat.sub(&other.mat) }
    }

    pub fn scale(&self, s: &Scalar) -> TensorOperator {
        TensorOperator { slots: self.slots, mat: self.mat.scale(s) }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// Entry addressed by multi-indices over `{1, 2}`.
    pub fn entry(&self, row: &[u8], col: &[u8]) -> &Scalar {
        self.mat.get(flat_index(row), flat_index(col))
    }

    /// Places a two-slot operator on slots `(index, index+1)` of `slots`
    /// factors, identity elsewhere.
    pub fn embed_adjacent(op2: &TensorOperator, index: usize, slots: usize) -> Result<TensorOperator, LinalgError> {
        if op2.slots != 2 {
            return Err(LinalgError::NotTwoSlot(op2.slots));
        }
        if index < 1 || index + 1 > slots {
            return Err(LinalgError::SlotOutOfRange { index, slots });
        }
        let dim = 1usize << slots;
        // bit offset of slot index+1 (the less significant of the pair)
        let shift = slots - index - 1;
        let pair_mask = 0b11usize << shift;
        let mut m = Matrix::zeros(dim, dim);
        for r in 0..dim {
            let rest = r & !pair_mask;
            let pr = (r & pair_mask) >> shift;
            for pc in 0..4 {
                let v = op2.mat.get(pr, pc);
                if !v.is_zero() {
                    m.set(r, rest | (pc << shift), v.clone());
                }
            }
        }
        Ok(TensorOperator { slots, mat: m })
    }
}

/// Flat index of a multi-index over `{1, 2}`; slot 1 most significant.
pub fn flat_index(word: &[u8]) -> usize {
    word.iter().fold(0, |acc, &i| {
        debug_assert!(i == 1 || i == 2);
        (acc << 1) | (i as usize - 1)
    })
}

/// Inverse of [`flat_index`].
pub fn multi_index(flat: usize, slots: usize) -> Vec<u8> {
    (0..slots).map(|k| ((flat >> (slots - 1 - k)) & 1) as u8 + 1).collect()
}

/// Components `ω^{i_1…i_N}` of a tensor on `(C^2)^{⊗N}`, flat-indexed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaTensor {
    slots: usize,
    comps: Vec<Scalar>,
}

impl OmegaTensor {
    pub fn new(slots: usize, comps: Vec<Scalar>) -> Self {
        assert_eq!(comps.len(), 1 << slots, "omega tensor needs 2^slots components");
        OmegaTensor { slots, comps }
    }

    pub fn zero(slots: usize) -> Self {
        Self::new(slots, vec![Scalar::zero(); 1 << slots])
    }

    /// Builds a tensor from `(word, value)` pairs, words spelled as `"2112"`.
    pub fn from_words<'a, I: IntoIterator<Item = (&'a str, Scalar)>>(slots: usize, entries: I) -> Self {
        let mut t = Self::zero(slots);
        for (w, v) in entries {
            let idx: Vec<u8> = w.bytes().map(|b| b - b'0').collect();
            assert_eq!(idx.len(), slots, "word length must equal slot count");
            t.comps[flat_index(&idx)] = v;
        }
        t
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn components(&self) -> &[Scalar] {
        &self.comps
    }

    pub fn get(&self, word: &[u8]) -> &Scalar {
        &self.comps[flat_index(word)]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Scalar::is_zero)
    }

    /// Nonzero components as `("21", value)` pairs in flat-index order.
    pub fn labeled(&self) -> Vec<(String, &Scalar)> {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (word_label(i, self.slots), v))
            .collect()
    }
}

/// Word label such as `"121"` for a flat index.
pub fn word_label(flat: usize, slots: usize) -> String {
    multi_index(flat, slots).iter().map(|&i| (b'0' + i) as char).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RootOrder;

    fn q() -> Scalar {
        Scalar::q(RootOrder::DEFAULT)
    }

    fn int(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }

    fn sample_two_slot() -> TensorOperator {
        let mut m = Matrix::zeros(4, 4);
        let mut k = 1;
        for i in 0..4 {
            for j in 0..4 {
                if (i + j) % 3 != 1 {
                    m.set(i, j, &q() * &int(k) + int(i as i64));
                }
                k += 1;
            }
        }
        TensorOperator::new(2, m)
    }

    #[test]
    fn embed_first_pair_of_two_is_identity_embedding() {
        let b = sample_two_slot();
        assert_eq!(TensorOperator::embed_adjacent(&b, 1, 2).unwrap(), b);
    }

    #[test]
    fn embed_identity() {
        let id = TensorOperator::identity(2);
        for n in 2..5 {
            for i in 1..n {
                assert_eq!(TensorOperator::embed_adjacent(&id, i, n).unwrap(), TensorOperator::identity(n));
            }
        }
    }

    #[test]
    fn embed_matches_kronecker() {
        let b = sample_two_slot();
        let i2 = Matrix::identity(2);
        let kron_second = i2.kron(b.matrix());
        let emb = TensorOperator::embed_adjacent(&b, 2, 3).unwrap();
        assert_eq!(emb.matrix(), &kron_second);
        // e_{121} column
        let mut e = vec![Scalar::zero(); 8];
        e[flat_index(&[1, 2, 1])] = Scalar::one();
        assert_eq!(emb.matrix().apply(&e), kron_second.apply(&e));
        let kron_first = b.matrix().kron(&i2);
        assert_eq!(TensorOperator::embed_adjacent(&b, 1, 3).unwrap().matrix(), &kron_first);
        let four = Matrix::identity(2).kron(&b.matrix().kron(&Matrix::identity(2)));
        assert_eq!(TensorOperator::embed_adjacent(&b, 2, 4).unwrap().matrix(), &four);
    }

    #[test]
    fn embed_out_of_range() {
        let b = sample_two_slot();
        assert_eq!(
            TensorOperator::embed_adjacent(&b, 3, 3),
            Err(LinalgError::SlotOutOfRange { index: 3, slots: 3 })
        );
        assert!(TensorOperator::embed_adjacent(&b, 0, 3).is_err());
    }

    #[test]
    fn far_apart_embeddings_commute() {
        let b = sample_two_slot();
        let x = TensorOperator::embed_adjacent(&b, 1, 4).unwrap();
        let y = TensorOperator::embed_adjacent(&b, 3, 4).unwrap();
        assert_eq!(x.compose(&y), y.compose(&x));
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(Matrix::identity(4).kernel().is_empty());
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let k = Matrix::zeros(2, 2).kernel();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![int(1), int(0)]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = Matrix::from_rows(vec![
            vec![int(1), q(), int(0), q() * q()],
            vec![q(), q() * q(), int(1), int(0)],
        ]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
        assert_eq!(m.rank() + k.len(), 4);
        assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn span_membership() {
        let basis = vec![vec![int(0), int(1)]];
        assert_eq!(in_span(&[int(0), int(0)], &basis), Some(vec![int(0)]));
        assert_eq!(in_span(&[int(1), int(0)], &basis), None);
        assert_eq!(in_span(&[int(0), q()], &basis), Some(vec![q()]));
    }

    #[test]
    fn flip_swaps_factors() {
        let s = TensorOperator::flip();
        assert_eq!(s.entry(&[1, 2], &[2, 1]), &int(1));
        assert_eq!(s.entry(&[1, 2], &[1, 2]), &int(0));
        assert_eq!(s.compose(&s), TensorOperator::identity(2));
    }

    #[test]
    fn labels() {
        assert_eq!(word_label(flat_index(&[2, 1, 1]), 3), "211");
        let t = OmegaTensor::from_words(2, [("21", int(1)), ("12", -q())]);
        let l = t.labeled();
        assert_eq!(l[0].0, "12");
        assert_eq!(l[1].0, "21");
    }
}
