//! Binary acyclic complexes, ladders between them and short exact sequences.

use alloc::vec::Vec;

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::matrix::Matrix;

/// One graded object with two acyclic differentials, `top` and `bot`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryComplex {
    top: ChainComplex,
    bot: ChainComplex,
}

impl BinaryComplex {
    pub fn new(top: ChainComplex, bot: ChainComplex) -> Result<Self> {
        if top.field() != bot.field() {
            return Err(Error::FieldMismatch);
        }
        if top.dims() != bot.dims() {
            return Err(Error::ShapeMismatch("top and bottom live on different graded objects"));
        }
        if !top.is_acyclic() {
            return Err(Error::NotAcyclic("top differential"));
        }
        if !bot.is_acyclic() {
            return Err(Error::NotAcyclic("bottom differential"));
        }
        Ok(BinaryComplex { top, bot })
    }

    pub fn from_diffs(field: FieldDesc, dims: Vec<usize>, top: Vec<Matrix>, bot: Vec<Matrix>) -> Result<Self> {
        let t = ChainComplex::new(field, dims.clone(), top)?;
        let b = ChainComplex::new(field, dims, bot)?;
        Self::new(t, b)
    }

    /// The zero binary complex on `[0, k]`.
    pub fn zero(field: FieldDesc, k: usize) -> Self {
        let c = ChainComplex::zero(field, k);
        BinaryComplex { top: c.clone(), bot: c }
    }

    /// `⟨α|β⟩`: the complex `P ⇉ Q` on `[0, 1]` with top `α` and bottom `β`.
    pub fn two_term(alpha: &Matrix, beta: &Matrix) -> Result<Self> {
        if alpha.field() != beta.field() {
            return Err(Error::FieldMismatch);
        }
        if !alpha.is_square() || alpha.shape() != beta.shape() {
            return Err(Error::ShapeMismatch("two_term needs square maps of equal size"));
        }
        let n = alpha.rows();
        let f = alpha.field();
        let top = ChainComplex::new(f, alloc::vec![n, n], alloc::vec![alpha.clone()])?;
        let bot = ChainComplex::new(f, alloc::vec![n, n], alloc::vec![beta.clone()])?;
        if !top.is_acyclic() || !bot.is_acyclic() {
            return Err(Error::NotInvertible);
        }
        Ok(BinaryComplex { top, bot })
    }

    /// `⟨id | τ_P⟩` on `P ⊕ P` with `dim P = p_dim`, where `τ_P` swaps the summands.
    pub fn tau_swap(field: FieldDesc, p_dim: usize) -> Self {
        let id = Matrix::identity(field, 2 * p_dim);
        BinaryComplex::two_term(&id, &swap_matrix(field, p_dim)).expect("swap is invertible")
    }

    /// The diagonal binary complex with both differentials equal to `c`.
    pub fn diagonal_of(c: &ChainComplex) -> Result<Self> {
        if !c.is_acyclic() {
            return Err(Error::NotAcyclic("diagonal_of"));
        }
        Ok(BinaryComplex {
            top: c.clone(),
            bot: c.clone(),
        })
    }

    pub fn top(&self) -> &ChainComplex {
        &self.top
    }

    pub fn bot(&self) -> &ChainComplex {
        &self.bot
    }

    pub fn field(&self) -> FieldDesc {
        self.top.field()
    }

    pub fn dims(&self) -> &[usize] {
        self.top.dims()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.top.dim(n)
    }

    pub fn top_degree(&self) -> usize {
        self.top.top_degree()
    }

    pub fn is_diagonal(&self) -> bool {
        self.top.differentials() == self.bot.differentials()
    }

    /// `sw(P)`: exchange the two differentials.
    pub fn swap_top_bottom(&self) -> Self {
        BinaryComplex {
            top: self.bot.clone(),
            bot: self.top.clone(),
        }
    }

    /// `P[by]`, differentials keep their sign.
    pub fn shift(&self, by: usize) -> Self {
        BinaryComplex {
            top: self.top.shift(by),
            bot: self.bot.shift(by),
        }
    }

    pub fn pad_to(&self, k: usize) -> Self {
        BinaryComplex {
            top: self.top.pad_to(k),
            bot: self.bot.pad_to(k),
        }
    }

    pub fn direct_sum(&self, other: &BinaryComplex) -> Result<Self> {
        Ok(BinaryComplex {
            top: self.top.direct_sum(&other.top)?,
            bot: self.bot.direct_sum(&other.bot)?,
        })
    }
}

/// `[[0, I], [I, 0]]` on `F^n ⊕ F^n`.
pub fn swap_matrix(field: FieldDesc, n: usize) -> Matrix {
    let mut m = Matrix::zeros(field, 2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, field.one());
        m.set(n + i, i, field.one());
    }
    m
}

/// A quadruple `(P, Q, σ, τ)` with `σ : P^top ≅ Q^top` and `τ : P^bot ≅ Q^bot`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryLadder {
    pub source: BinaryComplex,
    pub target: BinaryComplex,
    pub sigma: Vec<Matrix>,
    pub tau: Vec<Matrix>,
}

fn check_chain_iso(src: &ChainComplex, dst: &ChainComplex, maps: &[Matrix]) -> Result<()> {
    let k = src.top_degree();
    if dst.top_degree() != k || maps.len() != k + 1 {
        return Err(Error::InvalidLadder("support windows differ"));
    }
    for (i, m) in maps.iter().enumerate() {
        if m.shape() != (dst.dim(i), src.dim(i)) || !m.is_square() {
            return Err(Error::InvalidLadder("map has the wrong shape"));
        }
        if m.rank() != m.rows() {
            return Err(Error::NotInvertible);
        }
    }
    for n in 1..=k {
        if &dst.d_or_zero(n) * &maps[n] != &maps[n - 1] * &src.d_or_zero(n) {
            return Err(Error::NotChainMap(n));
        }
    }
    Ok(())
}

impl BinaryLadder {
    pub fn new(source: BinaryComplex, target: BinaryComplex, sigma: Vec<Matrix>, tau: Vec<Matrix>) -> Result<Self> {
        let l = BinaryLadder { source, target, sigma, tau };
        l.validate()?;
        Ok(l)
    }

    /// Checks that σ and τ are degreewise invertible chain maps.
    pub fn validate(&self) -> Result<()> {
        if self.source.field() != self.target.field() {
            return Err(Error::FieldMismatch);
        }
        check_chain_iso(self.source.top(), self.target.top(), &self.sigma)?;
        check_chain_iso(self.source.bot(), self.target.bot(), &self.tau)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Transports `p` along involutions: `Q` has top `σ_{n-1} d σ_n^{-1}` and
    /// bottom `τ_{n-1} d' τ_n^{-1}` on the same graded object.
    pub fn build_conjugated(p: &BinaryComplex, sigma: Vec<Matrix>, tau: Vec<Matrix>) -> Result<Self> {
        let k = p.top_degree();
        if sigma.len() != k + 1 || tau.len() != k + 1 {
            return Err(Error::InvalidLadder("need one map per degree"));
        }
        for (i, (s, t)) in sigma.iter().zip(&tau).enumerate() {
            if s.shape() != (p.dim(i), p.dim(i)) || t.shape() != (p.dim(i), p.dim(i)) {
                return Err(Error::InvalidLadder("map has the wrong shape"));
            }
            if !(s * s).is_identity() || !(t * t).is_identity() {
                return Err(Error::NotInvolution(i));
            }
        }
        let top = p.top().conjugate(&sigma, &sigma);
        let bot = p.bot().conjugate(&tau, &tau);
        let target = BinaryComplex::new(top, bot)?;
        BinaryLadder::new(p.clone(), target, sigma, tau)
    }

    pub fn is_involutive(&self) -> bool {
        self.source.dims() == self.target.dims()
            && self.sigma.iter().chain(&self.tau).all(|m| (m * m).is_identity())
    }
}

/// `sub ↣ total ↠ quot`, with degreewise inclusion and projection maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinarySes {
    pub sub: BinaryComplex,
    pub total: BinaryComplex,
    pub quot: BinaryComplex,
    pub incl: Vec<Matrix>,
    pub proj: Vec<Matrix>,
}

fn commutes(src: &ChainComplex, dst: &ChainComplex, maps: &[Matrix]) -> bool {
    (1..=src.top_degree()).all(|n| &dst.d_or_zero(n) * &maps[n] == &maps[n - 1] * &src.d_or_zero(n))
}

impl BinarySes {
    /// Checks degreewise exactness and that both maps respect both differentials.
    pub fn validate(&self) -> Result<()> {
        let k = self.total.top_degree();
        if self.sub.top_degree() != k || self.quot.top_degree() != k {
            return Err(Error::InvalidSes("support windows differ"));
        }
        if self.incl.len() != k + 1 || self.proj.len() != k + 1 {
            return Err(Error::InvalidSes("need one map per degree"));
        }
        let f = self.total.field();
        if self.sub.field() != f || self.quot.field() != f {
            return Err(Error::FieldMismatch);
        }
        for n in 0..=k {
            let (i, p) = (&self.incl[n], &self.proj[n]);
            if i.shape() != (self.total.dim(n), self.sub.dim(n)) || p.shape() != (self.quot.dim(n), self.total.dim(n)) {
                return Err(Error::InvalidSes("map has the wrong shape"));
            }
            if i.rank() != i.cols() {
                return Err(Error::InvalidSes("inclusion not injective"));
            }
            if p.rank() != p.rows() {
                return Err(Error::InvalidSes("projection not surjective"));
            }
            if !(p * i).is_zero() || i.cols() + p.rows() != i.rows() {
                return Err(Error::InvalidSes("not exact in the middle"));
            }
        }
        let ok = commutes(self.sub.top(), self.total.top(), &self.incl)
            && commutes(self.sub.bot(), self.total.bot(), &self.incl)
            && commutes(self.total.top(), self.quot.top(), &self.proj)
            && commutes(self.total.bot(), self.quot.bot(), &self.proj);
        if !ok {
            return Err(Error::InvalidSes("maps are not chain maps"));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Builds `P' ↣ P ↠ P''` with `P_n = P'_n ⊕ P''_n` and block triangular
    /// differentials `[[d', ε], [0, d'']]`, `ε_n = d'_n g_n - g_{n-1} d''_n`.
    ///
    /// `g_top[n]`, `g_bot[n]` are maps `P''_n -> P'_n` for every degree of the
    /// common support window.
    pub fn make(sub: &BinaryComplex, quot: &BinaryComplex, g_top: &[Matrix], g_bot: &[Matrix]) -> Result<Self> {
        let f = sub.field();
        if quot.field() != f {
            return Err(Error::FieldMismatch);
        }
        let k = sub.top_degree().max(quot.top_degree());
        let (sub, quot) = (sub.pad_to(k), quot.pad_to(k));
        if g_top.len() != k + 1 || g_bot.len() != k + 1 {
            return Err(Error::InvalidSes("need one g-map per degree"));
        }
        for n in 0..=k {
            for g in [&g_top[n], &g_bot[n]] {
                if g.shape() != (sub.dim(n), quot.dim(n)) || g.field() != f {
                    return Err(Error::InvalidSes("g-map has the wrong shape"));
                }
            }
        }
        let dims: Vec<usize> = (0..=k).map(|n| sub.dim(n) + quot.dim(n)).collect();
        let total_diffs = |a: &ChainComplex, b: &ChainComplex, g: &[Matrix]| -> Vec<Matrix> {
            (1..=k)
                .map(|n| {
                    let eps = &(a.d(n) * &g[n]) - &(&g[n - 1] * b.d(n));
                    let mut d = Matrix::block_diag(f, &[a.d(n), b.d(n)]);
                    d.paste(0, a.dim(n), &eps);
                    d
                })
                .collect()
        };
        let top = ChainComplex::new(f, dims.clone(), total_diffs(sub.top(), quot.top(), g_top))?;
        let bot = ChainComplex::new(f, dims, total_diffs(sub.bot(), quot.bot(), g_bot))?;
        let total = BinaryComplex::new(top, bot)?;
        let incl = (0..=k)
            .map(|n| Matrix::vstack(f, sub.dim(n), &[&Matrix::identity(f, sub.dim(n)), &Matrix::zeros(f, quot.dim(n), sub.dim(n))]))
            .collect();
        let proj = (0..=k)
            .map(|n| Matrix::hstack(f, quot.dim(n), &[&Matrix::zeros(f, quot.dim(n), sub.dim(n)), &Matrix::identity(f, quot.dim(n))]))
            .collect();
        let ses = BinarySes { sub, total, quot, incl, proj };
        ses.validate()?;
        Ok(ses)
    }
}

/// A formal integer combination `Σ c_i [P_i]` of binary complexes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationExpr {
    pub terms: Vec<(i64, BinaryComplex)>,
}

impl RelationExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, coefficient: i64, complex: BinaryComplex) -> Self {
        self.terms.push((coefficient, complex));
        self
    }

    pub fn push(&mut self, coefficient: i64, complex: BinaryComplex) {
        self.terms.push((coefficient, complex));
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}
