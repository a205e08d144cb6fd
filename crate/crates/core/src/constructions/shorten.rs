//! Grayson shortening, truncations, `τ_P`, and the maps `i_k`, `p_k`.
//!
//! For `P` on `[0, k+1]` write `J = im d_2` and `K = im d'_2`, both inside
//! `P_1`. The shortening lives on `[0, max(k, 2)]` with
//!
//! ```text
//! degree 0:  J ⊕ K ⊕ P_0
//! degree 1:  P_2 ⊕ K ⊕ J ⊕ P_1
//! degree 2:  P_3 ⊕ J ⊕ K
//! degree n:  P_{n+1}            (n >= 3)
//! ```
//!
//! and both differentials use this summand order. The top differential is
//! `d_{≥2}` on the upper row ending in `P_2 ↠ J`, identities on the middle
//! copies of `K` and `J`, and `K ↣ P_1 --d'_1--> P_0` on the lower row. The
//! bottom differential is the same picture with the roles of `(d, J)` and
//! `(d', K)` exchanged.
//!
//! `J` and `K` have equal dimension, and the isomorphism `J ≅ K` used by the
//! truncations is the identity in the chosen coordinates.

use alloc::vec::Vec;

use crate::binary::{BinaryComplex, BinaryLadder, BinarySes, RelationExpr};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::matrix::Matrix;

/// Chosen factorisations `d_2 = mono_j ∘ epi_j` and `d'_2 = mono_k ∘ epi_k`.
///
/// `mono_j`, `mono_k` are the bases of `J` and `K` (as columns in `P_1`);
/// `epi_j`, `epi_k` are the coordinates of `d_2`, `d'_2` in those bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShorteningData {
    pub mono_j: Matrix,
    pub mono_k: Matrix,
    pub epi_j: Matrix,
    pub epi_k: Matrix,
}

impl ShorteningData {
    /// Reduced column echelon bases of `im d_2` and `im d'_2`.
    pub fn canonical(p: &BinaryComplex) -> Result<Self> {
        require_len2(p)?;
        let j = p.top().d(2).image_echelon_basis();
        let k = p.bot().d(2).image_echelon_basis();
        Self::with_bases(p, j, k)
    }

    /// Uses the given columns as bases of `J` and `K`, after checking them.
    pub fn with_bases(p: &BinaryComplex, mono_j: Matrix, mono_k: Matrix) -> Result<Self> {
        require_len2(p)?;
        let epi_j = image_coordinates(p.top().d(2), &mono_j)?;
        let epi_k = image_coordinates(p.bot().d(2), &mono_k)?;
        Ok(ShorteningData {
            mono_j,
            mono_k,
            epi_j,
            epi_k,
        })
    }

    /// `dim J = dim K`.
    pub fn rank(&self) -> usize {
        self.mono_j.cols()
    }
}

/// Coordinates of the columns of `d` in `basis`, which must be a basis of `im d`.
fn image_coordinates(d: &Matrix, basis: &Matrix) -> Result<Matrix> {
    if basis.rows() != d.rows() || basis.rank() != basis.cols() || basis.cols() != d.rank() {
        return Err(Error::ShapeMismatch("not a basis of the image"));
    }
    basis.solve_any(d)
}

fn require_len2(p: &BinaryComplex) -> Result<()> {
    if p.top_degree() < 2 {
        Err(Error::TooShort("need a complex supported on at least [0,2]"))
    } else {
        Ok(())
    }
}

/// Top degree of the shortening of a complex with top degree `k_in >= 2`.
fn shortened_degree(k_in: usize) -> usize {
    (k_in - 1).max(2)
}

/// The Grayson shortening with canonical image bases. On `[0, 1]` this is
/// `sw(P)`; the zero-length case is rejected.
pub fn grayson_shorten(p: &BinaryComplex) -> Result<BinaryComplex> {
    match p.top_degree() {
        0 => Err(Error::TooShort("shortening needs support of length at least 1")),
        1 => Ok(p.swap_top_bottom()),
        _ => shorten_with(p, &ShorteningData::canonical(p)?),
    }
}

/// The Grayson shortening using the given factorisations.
pub fn shorten_with(p: &BinaryComplex, data: &ShorteningData) -> Result<BinaryComplex> {
    require_len2(p)?;
    let f = p.field();
    let kk = shortened_degree(p.top_degree());
    let p = p.pad_to(kk + 2);
    let r = data.rank();
    let dims_p = |n: usize| p.dim(n);
    let id = Matrix::identity(f, r);

    let deg0 = [r, r, dims_p(0)];
    let deg1 = [dims_p(2), r, r, dims_p(1)];
    let deg2 = [dims_p(3), r, r];

    let (t, b) = (p.top(), p.bot());
    let top_d1 = Matrix::from_blocks(f, &deg0, &deg1, &[(0, 0, &data.epi_j), (1, 1, &id), (2, 3, b.d(1))]);
    let top_d2 = Matrix::from_blocks(f, &deg1, &deg2, &[(0, 0, t.d(3)), (2, 1, &id), (3, 2, &data.mono_k)]);
    let bot_d1 = Matrix::from_blocks(f, &deg0, &deg1, &[(1, 0, &data.epi_k), (0, 2, &id), (2, 3, t.d(1))]);
    let bot_d2 = Matrix::from_blocks(f, &deg1, &deg2, &[(0, 0, b.d(3)), (1, 2, &id), (3, 1, &data.mono_j)]);
    let d3 = |c: &ChainComplex| Matrix::from_blocks(f, &deg2, &[dims_p(4)], &[(0, 0, c.d(4))]);

    let mut dims: Vec<usize> = alloc::vec![deg0.iter().sum(), deg1.iter().sum(), deg2.iter().sum()];
    let mut top = alloc::vec![top_d1, top_d2];
    let mut bot = alloc::vec![bot_d1, bot_d2];
    for n in 3..=kk {
        dims.push(dims_p(n + 1));
        if n == 3 {
            top.push(d3(t));
            bot.push(d3(b));
        } else {
            top.push(t.d(n + 1).clone());
            bot.push(b.d(n + 1).clone());
        }
    }
    BinaryComplex::from_diffs(f, dims, top, bot)
}

/// `τ_P = ⟨id | τ_J⟩`, which only depends on `dim J`.
pub fn tau_of(p: &BinaryComplex) -> Result<BinaryComplex> {
    require_len2(p)?;
    Ok(BinaryComplex::tau_swap(p.field(), p.top().d(2).rank()))
}

/// `t_{≥1}(P)[-1]`: `... P_3 ⇉ P_2 ⇉ J`, reindexed so `J` sits in degree 0.
pub fn truncate_ge1(p: &BinaryComplex) -> Result<BinaryComplex> {
    truncate_ge1_with(p, &ShorteningData::canonical(p)?)
}

pub fn truncate_ge1_with(p: &BinaryComplex, data: &ShorteningData) -> Result<BinaryComplex> {
    require_len2(p)?;
    let k = p.top_degree();
    let mut dims = alloc::vec![data.rank()];
    dims.extend((2..=k).map(|n| p.dim(n)));
    let mut top = alloc::vec![data.epi_j.clone()];
    let mut bot = alloc::vec![data.epi_k.clone()];
    for n in 3..=k {
        top.push(p.top().d(n).clone());
        bot.push(p.bot().d(n).clone());
    }
    BinaryComplex::from_diffs(p.field(), dims, top, bot)
}

/// `t_{≤2}(P)`: `J ⇉ P_1 ⇉ P_0` with `J ↣ P_1` on top and `J ≅ K ↣ P_1` below.
pub fn truncate_le2(p: &BinaryComplex) -> Result<BinaryComplex> {
    truncate_le2_with(p, &ShorteningData::canonical(p)?)
}

pub fn truncate_le2_with(p: &BinaryComplex, data: &ShorteningData) -> Result<BinaryComplex> {
    require_len2(p)?;
    let dims = alloc::vec![p.dim(0), p.dim(1), data.rank()];
    let top = alloc::vec![p.top().d(1).clone(), data.mono_j.clone()];
    let bot = alloc::vec![p.bot().d(1).clone(), data.mono_k.clone()];
    BinaryComplex::from_diffs(p.field(), dims, top, bot)
}

/// `i_k`: regard a complex on `[0, k]` as one on `[0, k+1]`.
pub fn include_ik(p: &BinaryComplex) -> BinaryComplex {
    p.pad_to(p.top_degree() + 1)
}

/// `p_k(P) = -short(P) - τ_P`, as a formal expression.
pub fn shorten_pk(p: &BinaryComplex) -> Result<RelationExpr> {
    Ok(RelationExpr::new()
        .with(-1, grayson_shorten(p)?)
        .with(-1, tau_of(p)?))
}

fn padded_maps(f: FieldDesc, maps: &[Matrix], k: usize) -> Vec<Matrix> {
    let mut out = maps.to_vec();
    while out.len() < k + 1 {
        out.push(Matrix::identity(f, 0));
    }
    out
}

/// The induced ladder `(short(P), short(Q), short(σ), short(τ))`.
///
/// `short(P)` uses canonical bases; `short(Q)` uses the bases transported
/// along `σ_1` and `τ_1`, i.e. `J_Q = σ_1 J_P` and `K_Q = τ_1 K_P`. The induced
/// maps `σ^J`, `τ^K` are then solved for and come out as identities, so
/// involutive ladders stay involutive.
pub fn shorten_ladder(l: &BinaryLadder) -> Result<BinaryLadder> {
    l.validate().map_err(|_| Error::InvalidLadder("input ladder does not validate"))?;
    let (p, q) = (&l.source, &l.target);
    if p.top_degree() == 1 {
        return BinaryLadder::new(p.swap_top_bottom(), q.swap_top_bottom(), l.tau.clone(), l.sigma.clone());
    }
    let f = p.field();
    let data_p = ShorteningData::canonical(p)?;
    let data_q = ShorteningData::with_bases(q, &l.sigma[1] * &data_p.mono_j, &l.tau[1] * &data_p.mono_k)?;
    let sigma_j = data_q.mono_j.solve_any(&(&l.sigma[1] * &data_p.mono_j))?;
    let tau_k = data_q.mono_k.solve_any(&(&l.tau[1] * &data_p.mono_k))?;
    if sigma_j.rank() != sigma_j.rows() || tau_k.rank() != tau_k.rows() {
        return Err(Error::NotInvertible);
    }

    let kk = shortened_degree(p.top_degree());
    let s = padded_maps(f, &l.sigma, kk + 1);
    let t = padded_maps(f, &l.tau, kk + 1);
    let bd = |parts: &[&Matrix]| Matrix::block_diag(f, parts);

    let mut short_sigma = alloc::vec![
        bd(&[&sigma_j, &tau_k, &t[0]]),
        bd(&[&s[2], &tau_k, &sigma_j, &t[1]]),
        bd(&[&s[3], &sigma_j, &tau_k]),
    ];
    let mut short_tau = alloc::vec![
        bd(&[&sigma_j, &tau_k, &s[0]]),
        bd(&[&t[2], &tau_k, &sigma_j, &s[1]]),
        bd(&[&t[3], &sigma_j, &tau_k]),
    ];
    for i in 3..=kk {
        short_sigma.push(s[i + 1].clone());
        short_tau.push(t[i + 1].clone());
    }
    let sp = shorten_with(p, &data_p)?;
    let sq = shorten_with(q, &data_q)?;
    BinaryLadder::new(sp, sq, short_sigma, short_tau)
}

/// Shortens every term of `P' ↣ P ↠ P''`.
///
/// The sub and quotient use canonical bases. For the total, the basis of `J`
/// is `incl(J')` followed by lifts of the basis of `J''` (and likewise for
/// `K`), so the induced maps on `J`, `K` are the standard block inclusion and
/// projection.
pub fn ses_shorten(s: &BinarySes) -> Result<BinarySes> {
    s.validate()?;
    let f = s.total.field();
    if s.total.top_degree() == 1 {
        let out = BinarySes {
            sub: s.sub.swap_top_bottom(),
            total: s.total.swap_top_bottom(),
            quot: s.quot.swap_top_bottom(),
            incl: s.incl.clone(),
            proj: s.proj.clone(),
        };
        out.validate()?;
        return Ok(out);
    }
    let data_sub = ShorteningData::canonical(&s.sub)?;
    let data_quot = ShorteningData::canonical(&s.quot)?;

    // A basis of im d_2 in the total extending incl_1(J'), with the remaining
    // vectors projecting onto the chosen basis of J''.
    let extend = |d2: &Matrix, sub_basis: &Matrix, quot_basis: &Matrix| -> Result<Matrix> {
        let lift = (&s.proj[1] * d2).solve_any(quot_basis)?;
        let upper = &s.incl[1] * sub_basis;
        Ok(Matrix::hstack(f, d2.rows(), &[&upper, &(d2 * &lift)]))
    };
    let j = extend(s.total.top().d(2), &data_sub.mono_j, &data_quot.mono_j)?;
    let k = extend(s.total.bot().d(2), &data_sub.mono_k, &data_quot.mono_k)?;
    let data_total = ShorteningData::with_bases(&s.total, j, k)?;

    let sub = shorten_with(&s.sub, &data_sub)?;
    let total = shorten_with(&s.total, &data_total)?;
    let quot = shorten_with(&s.quot, &data_quot)?;

    let (r1, r2) = (data_sub.rank(), data_quot.rank());
    let e_in = Matrix::vstack(f, r1, &[&Matrix::identity(f, r1), &Matrix::zeros(f, r2, r1)]);
    let e_out = Matrix::hstack(f, r2, &[&Matrix::zeros(f, r2, r1), &Matrix::identity(f, r2)]);
    let kk = total.top_degree();
    let incl = padded_maps(f, &s.incl, kk + 1);
    let proj = padded_maps(f, &s.proj, kk + 1);
    let induce = |maps: &[Matrix], e: &Matrix| -> Vec<Matrix> {
        let bd = |parts: &[&Matrix]| Matrix::block_diag(f, parts);
        let mut out = alloc::vec![
            bd(&[e, e, &maps[0]]),
            bd(&[&maps[2], e, e, &maps[1]]),
            bd(&[&maps[3], e, e]),
        ];
        out.extend((3..=kk).map(|i| maps[i + 1].clone()));
        out
    };
    let out = BinarySes {
        incl: induce(&incl, &e_in),
        proj: induce(&proj, &e_out),
        sub,
        total,
        quot,
    };
    out.validate()?;
    Ok(out)
}
