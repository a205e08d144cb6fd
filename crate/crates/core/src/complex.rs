//! Chain complexes supported on a window `[0, k]`.
//!
//! Degree `n` carries `F^{m_n}`; the differential `d_n : P_n -> P_{n-1}` is an
//! `m_{n-1} x m_n` matrix, stored for `n = 1..=k`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::matrix::Matrix;

/// Dimensions `m_0, ..., m_k` of a graded vector space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedObject {
    field: FieldDesc,
    dims: Vec<usize>,
}

impl GradedObject {
    /// An empty `dims` list is read as the zero object on `[0, 0]`.
    pub fn new(field: FieldDesc, dims: Vec<usize>) -> Self {
        let dims = if dims.is_empty() { alloc::vec![0] } else { dims };
        GradedObject { field, dims }
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Top degree `k` of the support window.
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Dimension in degree `n`, zero outside the window.
    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainComplex {
    graded: GradedObject,
    diffs: Vec<Matrix>,
}

/// Image bases and sections of an acyclic complex.
///
/// `image_basis[n]` has as columns a basis of `im d_{n+1} ⊂ P_n`, and
/// `section[n]` is the matrix `s_{n+1}` with `d_{n+1} s_{n+1} = image_basis[n]`,
/// for `n = 0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub image_basis: Vec<Matrix>,
    pub section: Vec<Matrix>,
}

impl ChainComplex {
    /// Checks shapes, fields and `d ∘ d = 0`. Acyclicity is not required.
    pub fn new(field: FieldDesc, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        let graded = GradedObject::new(field, dims);
        if diffs.len() != graded.top_degree() {
            return Err(Error::DimensionMismatch("need one differential per degree 1..=k"));
        }
        for (i, d) in diffs.iter().enumerate() {
            let n = i + 1;
            if d.field() != field {
                return Err(Error::FieldMismatch);
            }
            if d.shape() != (graded.dim(n - 1), graded.dim(n)) {
                return Err(Error::DimensionMismatch("differential d_n must be m_{n-1} x m_n"));
            }
        }
        for n in 2..=graded.top_degree() {
            if !(&diffs[n - 2] * &diffs[n - 1]).is_zero() {
                return Err(Error::NotComplex(n));
            }
        }
        Ok(ChainComplex { graded, diffs })
    }

    /// The zero complex on `[0, k]`.
    pub fn zero(field: FieldDesc, k: usize) -> Self {
        let dims = alloc::vec![0; k + 1];
        let diffs = (0..k).map(|_| Matrix::zeros(field, 0, 0)).collect();
        ChainComplex {
            graded: GradedObject::new(field, dims),
            diffs,
        }
    }

    pub(crate) fn from_parts_unchecked(field: FieldDesc, dims: Vec<usize>, diffs: Vec<Matrix>) -> Self {
        ChainComplex {
            graded: GradedObject::new(field, dims),
            diffs,
        }
    }

    pub fn field(&self) -> FieldDesc {
        self.graded.field
    }

    pub fn graded(&self) -> &GradedObject {
        &self.graded
    }

    pub fn dims(&self) -> &[usize] {
        self.graded.dims()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.graded.dim(n)
    }

    pub fn top_degree(&self) -> usize {
        self.graded.top_degree()
    }

    /// All differentials, `d_1` first.
    pub fn differentials(&self) -> &[Matrix] {
        &self.diffs
    }

    /// `d_n` for `1 <= n <= k`.
    pub fn d(&self, n: usize) -> &Matrix {
        assert!(n >= 1 && n <= self.top_degree(), "d_{n} outside the support window");
        &self.diffs[n - 1]
    }

    /// `d_n` for any `n`, the zero map outside `1..=k`.
    pub fn d_or_zero(&self, n: usize) -> Matrix {
        if n >= 1 && n <= self.top_degree() {
            self.diffs[n - 1].clone()
        } else {
            Matrix::zeros(self.field(), self.dim(n.wrapping_sub(1)), self.dim(n))
        }
    }

    fn rank_d(&self, n: usize) -> usize {
        if n >= 1 && n <= self.top_degree() {
            self.diffs[n - 1].rank()
        } else {
            0
        }
    }

    /// Exactness at every degree: `dim ker d_n = rank d_{n+1}` for `0 <= n <= k`.
    pub fn is_acyclic(&self) -> bool {
        let ranks: Vec<usize> = (0..=self.top_degree() + 1).map(|n| self.rank_d(n)).collect();
        (0..=self.top_degree()).all(|n| self.dim(n) - ranks[n] == ranks[n + 1])
    }

    /// Euler characteristic `Σ (-1)^n m_n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims()
            .iter()
            .enumerate()
            .map(|(n, &m)| if n % 2 == 0 { m as i64 } else { -(m as i64) })
            .sum()
    }

    /// Deterministic image bases (pivot columns) and sections (free variables zeroed).
    pub fn factorize(&self) -> Result<Factorization> {
        if !self.is_acyclic() {
            return Err(Error::NotAcyclic("factorize"));
        }
        let mut image_basis = Vec::with_capacity(self.top_degree());
        let mut section = Vec::with_capacity(self.top_degree());
        for d in &self.diffs {
            let basis = d.column_space_basis();
            let s = d.solve_any(&basis).expect("image basis lies in the image");
            image_basis.push(basis);
            section.push(s);
        }
        Ok(Factorization { image_basis, section })
    }

    /// `self[by]`: prepend `by` zero objects, differentials unchanged.
    pub fn shift(&self, by: usize) -> ChainComplex {
        let f = self.field();
        let mut dims = alloc::vec![0; by];
        dims.extend_from_slice(self.dims());
        let mut diffs = Vec::with_capacity(dims.len() - 1);
        for n in 1..dims.len() {
            if n <= by {
                diffs.push(Matrix::zeros(f, 0, dims[n]));
            } else {
                diffs.push(self.diffs[n - by - 1].clone());
            }
        }
        ChainComplex::from_parts_unchecked(f, dims, diffs)
    }

    /// Inverse of [`shift`](Self::shift); the dropped degrees must be zero.
    pub fn unshift(&self, by: usize) -> Result<ChainComplex> {
        if self.dims().iter().take(by).any(|&m| m != 0) || by > self.top_degree() {
            return Err(Error::ShapeMismatch("unshift would drop nonzero degrees"));
        }
        Ok(ChainComplex::from_parts_unchecked(
            self.field(),
            self.dims()[by..].to_vec(),
            self.diffs[by..].to_vec(),
        ))
    }

    /// Extends the window to `[0, k]` with zero objects.
    pub fn pad_to(&self, k: usize) -> ChainComplex {
        if k <= self.top_degree() {
            return self.clone();
        }
        let f = self.field();
        let mut dims = self.dims().to_vec();
        let mut diffs = self.diffs.clone();
        while dims.len() < k + 1 {
            let n = dims.len();
            dims.push(0);
            diffs.push(Matrix::zeros(f, dims[n - 1], 0));
        }
        ChainComplex::from_parts_unchecked(f, dims, diffs)
    }

    /// Degreewise direct sum, `a` summand first, differentials block diagonal.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        let k = self.top_degree().max(other.top_degree());
        let (a, b) = (self.pad_to(k), other.pad_to(k));
        let f = self.field();
        let dims = (0..=k).map(|n| a.dim(n) + b.dim(n)).collect();
        let diffs = (0..k)
            .map(|i| Matrix::block_diag(f, &[&a.diffs[i], &b.diffs[i]]))
            .collect();
        Ok(ChainComplex::from_parts_unchecked(f, dims, diffs))
    }

    /// Applies `g_n (.) h_n^{-1}` to every differential, i.e. transports the
    /// complex along the degreewise isomorphisms `g` (with inverses `g_inv`).
    pub fn conjugate(&self, g: &[Matrix], g_inv: &[Matrix]) -> ChainComplex {
        let diffs = (1..=self.top_degree())
            .map(|n| &(&g[n - 1] * &self.diffs[n - 1]) * &g_inv[n])
            .collect();
        ChainComplex::from_parts_unchecked(self.field(), self.dims().to_vec(), diffs)
    }
}
