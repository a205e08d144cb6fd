//! Total complexes of double complexes, and of binary ladders.
//!
//! Objects `X_{r,c}` sit in row `r` (vertical degree) and column `c`
//! (horizontal degree). The total complex has `T_n = ⊕_{r+c=n} X_{r,c}`, with
//! summands ordered by decreasing `r`, and differential `(-1)^r d^h + d^v`.

use alloc::vec::Vec;

use crate::binary::{BinaryComplex, BinaryLadder};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::matrix::Matrix;

/// A double complex given by object dimensions, horizontal maps
/// `X_{r,c} -> X_{r,c-1}` and vertical maps `X_{r,c} -> X_{r-1,c}`.
pub(crate) struct DoubleComplex<'a> {
    pub field: FieldDesc,
    pub dims: Vec<Vec<usize>>,
    pub horizontal: &'a dyn Fn(usize, usize) -> Matrix,
    pub vertical: &'a dyn Fn(usize, usize) -> Matrix,
}

impl DoubleComplex<'_> {
    fn rows(&self) -> usize {
        self.dims.len()
    }

    fn cols(&self) -> usize {
        self.dims[0].len()
    }

    /// `(r, c)` pairs of total degree `n`, in summand order.
    fn summands(&self, n: usize) -> Vec<(usize, usize)> {
        (0..self.rows())
            .rev()
            .filter(|&r| r <= n && n - r < self.cols())
            .map(|r| (r, n - r))
            .collect()
    }

    pub fn total(&self) -> Result<ChainComplex> {
        let f = self.field;
        let top = self.rows() + self.cols() - 2;
        let block_dims = |n: usize| -> Vec<usize> { self.summands(n).iter().map(|&(r, c)| self.dims[r][c]).collect() };
        let dims: Vec<usize> = (0..=top).map(|n| block_dims(n).iter().sum()).collect();
        let mut diffs = Vec::with_capacity(top);
        for n in 1..=top {
            let src = self.summands(n);
            let dst = self.summands(n - 1);
            let mut owned: Vec<(usize, usize, Matrix)> = Vec::new();
            for (j, &(r, c)) in src.iter().enumerate() {
                if c >= 1 {
                    let i = dst.iter().position(|&x| x == (r, c - 1)).expect("horizontal target");
                    let h = (self.horizontal)(r, c);
                    owned.push((i, j, if r % 2 == 1 { -&h } else { h }));
                }
                if r >= 1 {
                    let i = dst.iter().position(|&x| x == (r - 1, c)).expect("vertical target");
                    owned.push((i, j, (self.vertical)(r, c)));
                }
            }
            let blocks: Vec<(usize, usize, &Matrix)> = owned.iter().map(|(i, j, m)| (*i, *j, m)).collect();
            diffs.push(Matrix::from_blocks(f, &block_dims(n - 1), &block_dims(n), &blocks));
        }
        ChainComplex::new(f, dims, diffs)
    }
}

/// The total complex of a ladder: `T_n = P_{n-1} ⊕ Q_n` with top differential
/// `(p, q) ↦ (-d p, σ_{n-1} p + d q)` and bottom differential likewise with
/// `d'` and `τ`. Supported on `[0, k+1]`.
pub fn ladder_total(l: &BinaryLadder) -> Result<BinaryComplex> {
    l.validate().map_err(|_| Error::InvalidLadder("ladder_total needs a valid ladder"))?;
    let (p, q) = (&l.source, &l.target);
    let k = p.top_degree();
    let f = p.field();
    let dims = alloc::vec![
        (0..=k).map(|c| q.dim(c)).collect::<Vec<_>>(),
        (0..=k).map(|c| p.dim(c)).collect::<Vec<_>>(),
    ];
    let build = |pc: &ChainComplex, qc: &ChainComplex, maps: &[Matrix]| -> Result<ChainComplex> {
        let horizontal = |r: usize, c: usize| if r == 1 { pc.d(c).clone() } else { qc.d(c).clone() };
        let vertical = |_r: usize, c: usize| maps[c].clone();
        DoubleComplex {
            field: f,
            dims: dims.clone(),
            horizontal: &horizontal,
            vertical: &vertical,
        }
        .total()
    };
    let top = build(p.top(), q.top(), &l.sigma)?;
    let bot = build(p.bot(), q.bot(), &l.tau)?;
    BinaryComplex::new(top, bot)
}
