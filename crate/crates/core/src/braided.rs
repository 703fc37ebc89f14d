//! The normalized two-dimensional R-matrix, its braid `B = σR`, braided
//! binomial operators, the joint kernel `ω` and the relations it emits.
//!
//! Index conventions (frozen here, used everywhere else):
//!
//! * `R^{kl}_{mn}` is the entry at row `(k,l)`, column `(m,n)`. The
//!   `q − q^{-1}` entry sits at row `12`, column `21`
//!   ([`OffDiagonal::Row12Col21`]).
//! * `B = σ ∘ R`, i.e. `B^{kl}_{mn} = R^{lk}_{mn}`.
//! * Binomial operators are built by normal-ordering `(x+y)^{⊗N}` with the
//!   exchange `x_i y_{i+1} → y_i x_{i+1} B_{i,i+1}`; each exchange composes
//!   `B_{i,i+1}` on the left of the operator already carried by the word
//!   ([`ComposeSide::Left`]).
//!
//! Both choices are the unique combination among the four candidates that
//! satisfies the Yang–Baxter equation, reproduces the explicit operator sums
//! for `N = 2, 3, 4`, and contains the known `ω` solutions in its kernel.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::freealg::{GenId, NcPoly, Word};
use crate::linalg::{multi_index, Matrix, OmegaTensor, TensorOperator};
use crate::scalar::{Exponent, RootOrder, Scalar};
use crate::{Error, Result};

/// Placement of the `q − q^{-1}` entry of the R-matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OffDiagonal {
    Row12Col21,
    Row21Col12,
}

/// Which side each exchange composes `B_{i,i+1}` on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComposeSide {
    Left,
    Right,
}

pub const FROZEN_OFF_DIAGONAL: OffDiagonal = OffDiagonal::Row12Col21;
pub const FROZEN_COMPOSE_SIDE: ComposeSide = ComposeSide::Left;

/// `q^ν` times the standard non-diagonal two-dimensional R-matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedR {
    pub nu: Exponent,
    pub order: RootOrder,
    pub op: TensorOperator,
}

impl NormalizedR {
    /// Entry `R^{kl}_{mn}`.
    pub fn entry(&self, k: u8, l: u8, m: u8, n: u8) -> &Scalar {
        self.op.entry(&[k, l], &[m, n])
    }
}

pub fn r_matrix(nu: Exponent, order: RootOrder) -> Result<NormalizedR> {
    r_matrix_oriented(nu, order, FROZEN_OFF_DIAGONAL)
}

pub fn r_matrix_oriented(nu: Exponent, order: RootOrder, orient: OffDiagonal) -> Result<NormalizedR> {
    let qnu = Scalar::q_exp(nu, order)?;
    let q = Scalar::q(order);
    let qinv = q.inv()?;
    let mut m = Matrix::zeros(4, 4);
    m.set(0, 0, &qnu * &q);
    m.set(3, 3, &qnu * &q);
    m.set(1, 1, qnu.clone());
    m.set(2, 2, qnu.clone());
    let off = &qnu * &(&q - &qinv);
    match orient {
        OffDiagonal::Row12Col21 => m.set(1, 2, off),
        OffDiagonal::Row21Col12 => m.set(2, 1, off),
    }
    Ok(NormalizedR { nu, order, op: TensorOperator::new(2, m) })
}

/// `R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂` on three slots.
pub fn yang_baxter_residual(r: &TensorOperator) -> Result<TensorOperator> {
    let r12 = TensorOperator::embed_adjacent(r, 1, 3)?;
    let r23 = TensorOperator::embed_adjacent(r, 2, 3)?;
    let s23 = TensorOperator::embed_adjacent(&TensorOperator::flip(), 2, 3)?;
    let r13 = s23.compose(&r12).compose(&s23);
    let lhs = r12.compose(&r13).compose(&r23);
    let rhs = r23.compose(&r13).compose(&r12);
    Ok(lhs.sub(&rhs))
}

/// `B = σ ∘ R`.
pub fn braid(r: &NormalizedR) -> TensorOperator {
    TensorOperator::flip().compose(&r.op)
}

/// `(B − q^{1+ν})(B + q^{ν−1})`, zero for Hecke-type braids.
pub fn hecke_residual(b: &TensorOperator, nu: Exponent, order: RootOrder) -> Result<TensorOperator> {
    let qnu = Scalar::q_exp(nu, order)?;
    let q = Scalar::q(order);
    let id = TensorOperator::identity(2);
    let left = b.sub(&id.scale(&(&qnu * &q)));
    let right = b.add(&id.scale(&(&qnu * &q.inv()?)));
    Ok(left.compose(&right))
}

/// Braided binomial coefficient `[N n]_B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialOperator {
    pub n_total: usize,
    pub n: usize,
    pub op: TensorOperator,
}

/// All coefficients `[N n]_B`, `n = 0..=N`, from one symbolic expansion.
pub fn binomial_operators(b: &TensorOperator, n_total: usize, side: ComposeSide) -> Result<Vec<BinomialOperator>> {
    if !(1..=16).contains(&n_total) {
        return Err(Error::Input(alloc::format!("binomial order {n_total} out of range 1..=16")));
    }
    let embedded: Vec<TensorOperator> = (1..n_total)
        .map(|i| TensorOperator::embed_adjacent(b, i, n_total))
        .collect::<core::result::Result<_, _>>()?;
    // Words over {x, y}: bit k (from the top, slot 1 first) set means y.
    let top = |k: usize| 1u32 << (n_total - 1 - k);
    let mut words: BTreeMap<u32, TensorOperator> = BTreeMap::new();
    for w in 0..(1u32 << n_total) {
        words.insert(w, TensorOperator::identity(n_total));
    }
    let mut normal: BTreeMap<u32, TensorOperator> = BTreeMap::new();
    while let Some((w, op)) = words.pop_first() {
        // leftmost x immediately followed by y
        let site = (0..n_total - 1).find(|&k| w & top(k) == 0 && w & top(k + 1) != 0);
        match site {
            None => match normal.get_mut(&w) {
                Some(acc) => *acc = acc.add(&op),
                None => {
                    normal.insert(w, op);
                }
            },
            Some(k) => {
                let nw = (w | top(k)) & !top(k + 1);
                let bk = &embedded[k];
                let nop = match side {
                    ComposeSide::Left => bk.compose(&op),
                    ComposeSide::Right => op.compose(bk),
                };
                match words.get_mut(&nw) {
                    Some(acc) => *acc = acc.add(&nop),
                    None => {
                        words.insert(nw, nop);
                    }
                }
            }
        }
    }
    // the normal-ordered word with n leading y's
    (0..=n_total)
        .map(|n| {
            let w: u32 = (0..n).map(top).sum();
            let op = normal.remove(&w).ok_or_else(|| Error::Input("missing normal word".into()))?;
            Ok(BinomialOperator { n_total, n, op })
        })
        .collect()
}

pub fn binomial_operator(b: &TensorOperator, n_total: usize, n: usize) -> Result<BinomialOperator> {
    if n > n_total {
        return Err(Error::Input(alloc::format!("binomial index {n} exceeds {n_total}")));
    }
    Ok(binomial_operators(b, n_total, FROZEN_COMPOSE_SIDE)?.swap_remove(n))
}

/// Vertical stack of `[N n]_B` for `n = 1..N−1`.
pub fn binomial_stack(b: &TensorOperator, n_total: usize) -> Result<Matrix> {
    binomial_stack_with(b, n_total, FROZEN_COMPOSE_SIDE)
}

pub fn binomial_stack_with(b: &TensorOperator, n_total: usize, side: ComposeSide) -> Result<Matrix> {
    if n_total < 2 {
        return Err(Error::Input("binomial stack needs N >= 2".into()));
    }
    let ops = binomial_operators(b, n_total, side)?;
    let blocks: Vec<Matrix> = ops[1..n_total].iter().map(|o| o.op.matrix().clone()).collect();
    Ok(Matrix::vstack(&blocks))
}

/// Deterministic basis of the joint kernel of `[N n]_B`, `n = 1..N−1`, for
/// `B = σR(ν)`.
pub fn solve_omega(n_total: usize, nu: Exponent, order: RootOrder) -> Result<Vec<OmegaTensor>> {
    let b = braid(&r_matrix(nu, order)?);
    let stack = binomial_stack(&b, n_total)?;
    Ok(stack.kernel().into_iter().map(|v| OmegaTensor::new(n_total, v)).collect())
}

/// Kernel dimension for each candidate normalization, in grid order.
pub fn scan_normalizations(n_total: usize, grid: &[Exponent], order: RootOrder) -> Result<Vec<(Exponent, usize)>> {
    grid.iter().map(|&nu| Ok((nu, solve_omega(n_total, nu, order)?.len()))).collect()
}

/// `Σ ω^{i₁…i_N} L_{i₁}⋯L_{i_N}` for generator letters `L_1, L_2`,
/// normalized so the deglex-leading word has a positive coefficient.
///
/// The same component array serves both families: `E_{i₁}⋯E_{i_N}ω^{i₁…i_N}`
/// and `θ_{i₁…i_N}F^{i₁}⋯F^{i_N}` with `θ = ω^t`.
pub fn relations_from_omega(omega: &OmegaTensor, letters: [GenId; 2]) -> NcPoly {
    let n = omega.slots();
    let p = NcPoly::from_terms(omega.components().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
        let w = multi_index(i, n).iter().map(|&k| letters[(k - 1) as usize]).collect();
        (Word::new(w), c.clone())
    }));
    p.normalized()
}
