//! 3x3 diagrams of binary complexes of length 2 and the objects that express
//! the Nenashev relation through shortenings of their total complex.

use alloc::vec::Vec;

use crate::binary::BinaryComplex;
use crate::complex::ChainComplex;
use crate::constructions::total::DoubleComplex;
use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::matrix::Matrix;

/// Rows `M`, `N`, `P` (top to bottom), each supported on `[0, 2]`, with
/// vertical maps `M_i -> N_i -> P_i` for both the top and the bottom structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NenashevDiagram {
    pub m: BinaryComplex,
    pub n: BinaryComplex,
    pub p: BinaryComplex,
    /// `M_i -> N_i`, top.
    pub mn_top: Vec<Matrix>,
    /// `N_i -> P_i`, top.
    pub np_top: Vec<Matrix>,
    pub mn_bot: Vec<Matrix>,
    pub np_bot: Vec<Matrix>,
}

/// Everything assembled from one diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemarkObjects {
    pub t_prime: BinaryComplex,
    /// `T_b(P)`: the bottom row padded with copies of `P_2`.
    pub t_b: BinaryComplex,
    /// `T_f(M)`: the top row padded with copies of `M_0`.
    pub t_f: BinaryComplex,
    /// `T_{b,f}(sw(N))`.
    pub t_bf: BinaryComplex,
    /// Columns `C_i = M_i ⇉ N_i ⇉ P_i`.
    pub columns: [BinaryComplex; 3],
}

impl NenashevDiagram {
    pub fn field(&self) -> FieldDesc {
        self.n.field()
    }

    fn row(&self, r: usize) -> &BinaryComplex {
        match r {
            0 => &self.p,
            1 => &self.n,
            _ => &self.m,
        }
    }

    /// `C_i`: `P_i` in degree 0, `N_i` in degree 1, `M_i` in degree 2.
    pub fn column(&self, i: usize) -> Result<BinaryComplex> {
        let f = self.field();
        let dims = alloc::vec![self.p.dim(i), self.n.dim(i), self.m.dim(i)];
        let top = ChainComplex::new(f, dims.clone(), alloc::vec![self.np_top[i].clone(), self.mn_top[i].clone()])?;
        let bot = ChainComplex::new(f, dims, alloc::vec![self.np_bot[i].clone(), self.mn_bot[i].clone()])?;
        BinaryComplex::new(top, bot)
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.field();
        for row in [&self.m, &self.n, &self.p] {
            if row.field() != f {
                return Err(Error::FieldMismatch);
            }
            if row.top_degree() != 2 {
                return Err(Error::InvalidDiagram("rows must be supported on [0,2]"));
            }
        }
        for maps in [&self.mn_top, &self.np_top, &self.mn_bot, &self.np_bot] {
            if maps.len() != 3 {
                return Err(Error::InvalidDiagram("need three vertical maps per layer"));
            }
        }
        for i in 0..3 {
            for (a, b, maps) in [
                (&self.m, &self.n, &self.mn_top),
                (&self.n, &self.p, &self.np_top),
                (&self.m, &self.n, &self.mn_bot),
                (&self.n, &self.p, &self.np_bot),
            ] {
                if maps[i].shape() != (b.dim(i), a.dim(i)) || maps[i].field() != f {
                    return Err(Error::InvalidDiagram("vertical map has the wrong shape"));
                }
            }
            self.column(i)
                .map_err(|_| Error::InvalidDiagram("column is not a binary acyclic complex"))?;
        }
        for c in 1..3 {
            let squares = [
                (self.n.top(), self.m.top(), &self.mn_top),
                (self.p.top(), self.n.top(), &self.np_top),
                (self.n.bot(), self.m.bot(), &self.mn_bot),
                (self.p.bot(), self.n.bot(), &self.np_bot),
            ];
            for (lower, upper, v) in squares {
                if lower.d(c) * &v[c] != &v[c - 1] * upper.d(c) {
                    return Err(Error::InvalidDiagram("vertical maps do not commute with the rows"));
                }
            }
        }
        Ok(())
    }

    fn total_of(&self, top: bool) -> Result<ChainComplex> {
        let rows = [&self.p, &self.n, &self.m];
        let dims = rows.iter().map(|r| r.dims().to_vec()).collect();
        let horizontal = |r: usize, c: usize| {
            let row = self.row(r);
            if top { row.top().d(c).clone() } else { row.bot().d(c).clone() }
        };
        let vertical = |r: usize, c: usize| match (r, top) {
            (1, true) => self.np_top[c].clone(),
            (1, false) => self.np_bot[c].clone(),
            (_, true) => self.mn_top[c].clone(),
            (_, false) => self.mn_bot[c].clone(),
        };
        DoubleComplex {
            field: self.field(),
            dims,
            horizontal: &horizontal,
            vertical: &vertical,
        }
        .total()
    }
}

/// The binary total complex on `[0, 4]`:
/// `M_2`, `M_1 ⊕ N_2`, `M_0 ⊕ N_1 ⊕ P_2`, `N_0 ⊕ P_1`, `P_0`.
pub fn nenashev_total(d: &NenashevDiagram) -> Result<BinaryComplex> {
    d.validate()?;
    BinaryComplex::new(d.total_of(true)?, d.total_of(false)?)
}

/// Basis of the image of `d` and the coordinates of `d` in it.
fn factor(d: &Matrix) -> Result<(Matrix, Matrix)> {
    let mono = d.column_space_basis();
    let epi = mono.solve_any(d)?;
    Ok((mono, epi))
}

/// Builds `T'`, `T_b(P)`, `T_f(M)`, `T_{b,f}(sw(N))` and the columns `C_i`.
///
/// `T'` has seven rows of summands (`J_3`, `K_3` the images of the third top
/// and bottom differential of the total complex, `J_2`, `K_2` of the second):
///
/// ```text
/// deg 2:  M_2,  J_3,  K_3,  K_2,  J_2
/// deg 1:  T_3,  K_3,  J_3,  T_2,  J_2,  K_2,  T_1
/// deg 0:  J_3,  K_3,  K_2,  J_2,  P_0
/// ```
pub fn remark_objects(d: &NenashevDiagram) -> Result<RemarkObjects> {
    let t = nenashev_total(d)?;
    let f = d.field();
    let (tt, tb) = (t.top(), t.bot());
    let (mono_j3, epi_j3) = factor(tt.d(3))?;
    let (mono_k3, epi_k3) = factor(tb.d(3))?;
    let (mono_j2, epi_j2) = factor(tt.d(2))?;
    let (mono_k2, epi_k2) = factor(tb.d(2))?;
    let (r3, r2) = (mono_j3.cols(), mono_j2.cols());
    let (i3, i2) = (Matrix::identity(f, r3), Matrix::identity(f, r2));

    let deg2 = [t.dim(4), r3, r3, r2, r2];
    let deg1 = [t.dim(3), r3, r3, t.dim(2), r2, r2, t.dim(1)];
    let deg0 = [r3, r3, r2, r2, t.dim(0)];
    let top = alloc::vec![
        Matrix::from_blocks(f, &deg0, &deg1, &[(0, 0, &epi_j3), (1, 1, &i3), (2, 3, &epi_k2), (3, 4, &i2), (4, 6, tt.d(1))]),
        Matrix::from_blocks(f, &deg1, &deg2, &[(0, 0, tt.d(4)), (2, 1, &i3), (3, 2, &mono_k3), (5, 3, &i2), (6, 4, &mono_j2)]),
    ];
    let bot = alloc::vec![
        Matrix::from_blocks(f, &deg0, &deg1, &[(1, 0, &epi_k3), (0, 2, &i3), (3, 3, &epi_j2), (2, 5, &i2), (4, 6, tb.d(1))]),
        Matrix::from_blocks(f, &deg1, &deg2, &[(0, 0, tb.d(4)), (3, 1, &mono_j3), (1, 2, &i3), (6, 3, &mono_k2), (4, 4, &i2)]),
    ];
    let dims = alloc::vec![deg0.iter().sum(), deg1.iter().sum(), deg2.iter().sum()];
    let t_prime = BinaryComplex::from_diffs(f, dims, top, bot)?;

    Ok(RemarkObjects {
        t_prime,
        t_b: pad_back(&d.p)?,
        t_f: pad_front(&d.m)?,
        t_bf: pad_both(&d.n.swap_top_bottom())?,
        columns: [d.column(0)?, d.column(1)?, d.column(2)?],
    })
}

fn dims_sum(d: &[usize]) -> usize {
    d.iter().sum()
}

/// `T_b(X)`: three copies of `X_2` stacked above `X`.
///
/// ```text
/// deg 2:  X_2(r3), X_2(r4)
/// deg 1:  X_2(r1), X_2(r2), X_2(r3), X_1(r4)
/// deg 0:  X_2(r1), X_2(r2), X_0(r4)
/// ```
pub fn pad_back(x: &BinaryComplex) -> Result<BinaryComplex> {
    require_len2(x)?;
    let f = x.field();
    let (x0, x1, x2) = (x.dim(0), x.dim(1), x.dim(2));
    let id = Matrix::identity(f, x2);
    let deg2 = [x2, x2];
    let deg1 = [x2, x2, x2, x1];
    let deg0 = [x2, x2, x0];
    let (t, b) = (x.top(), x.bot());
    let top = alloc::vec![
        Matrix::from_blocks(f, &deg0, &deg1, &[(0, 0, &id), (1, 1, &id), (2, 3, t.d(1))]),
        Matrix::from_blocks(f, &deg1, &deg2, &[(2, 0, &id), (3, 1, t.d(2))]),
    ];
    let bot = alloc::vec![
        Matrix::from_blocks(f, &deg0, &deg1, &[(1, 0, &id), (0, 2, &id), (2, 3, b.d(1))]),
        Matrix::from_blocks(f, &deg1, &deg2, &[(3, 0, b.d(2)), (1, 1, &id)]),
    ];
    BinaryComplex::from_diffs(f, alloc::vec![dims_sum(&deg0), dims_sum(&deg1), dims_sum(&deg2)], top, bot)
}

/// `T_f(X)`: three copies of `X_0` stacked below `X`.
///
/// ```text
/// deg 2:  X_2(r1), X_0(r3), X_0(r4)
/// deg 1:  X_1(r1), X_0(r2), X_0(r3), X_0(r4)
/// deg 0:  X_0(r1), X_0(r2)
/// ```
pub fn pad_front(x: &BinaryComplex) -> Result<BinaryComplex> {
    require_len2(x)?;
    let f = x.field();
    let (x0, x1, x2) = (x.dim(0), x.dim(1), x.dim(2));
    let id = Matrix::identity(f, x0);
    let deg2 = [x2, x0, x0];
    let deg1 = [x1, x0, x0, x0];
    let deg0 = [x0, x0];
    let (t, b) = (x.top(), x.bot());
    let top = alloc::vec![
        Matrix::from_blocks(f, &deg0, &deg1, &[(0, 0, t.d(1)), (1, 1, &id)]),
        Matrix::from_blocks(f, &deg1, &deg2, &[(0, 0, t.d(2)), (2, 1, &id), (3, 2, &id)]),
    ];
    let bot = alloc::vec![
        Matrix::from_blocks(f, &deg0, &deg1, &[(1, 0, b.d(1)), (0, 2, &id)]),
        Matrix::from_blocks(f, &deg1, &deg2, &[(0, 0, b.d(2)), (3, 1, &id), (1, 2, &id)]),
    ];
    BinaryComplex::from_diffs(f, alloc::vec![dims_sum(&deg0), dims_sum(&deg1), dims_sum(&deg2)], top, bot)
}

/// `T_{b,f}(X)`: copies of `X_2` above and copies of `X_0` below `X`.
///
/// ```text
/// deg 2:  X_2(r3), X_2(r4), X_0(r6), X_0(r7)
/// deg 1:  X_2(r1), X_2(r2), X_2(r3), X_1(r4), X_0(r5), X_0(r6), X_0(r7)
/// deg 0:  X_2(r1), X_2(r2), X_0(r4), X_0(r5)
/// ```
pub fn pad_both(x: &BinaryComplex) -> Result<BinaryComplex> {
    require_len2(x)?;
    let f = x.field();
    let (x0, x1, x2) = (x.dim(0), x.dim(1), x.dim(2));
    let (i2, i0) = (Matrix::identity(f, x2), Matrix::identity(f, x0));
    let deg2 = [x2, x2, x0, x0];
    let deg1 = [x2, x2, x2, x1, x0, x0, x0];
    let deg0 = [x2, x2, x0, x0];
    let (t, b) = (x.top(), x.bot());
    let top = alloc::vec![
        Matrix::from_blocks(f, &deg0, &deg1, &[(0, 0, &i2), (1, 1, &i2), (2, 3, t.d(1)), (3, 4, &i0)]),
        Matrix::from_blocks(f, &deg1, &deg2, &[(2, 0, &i2), (3, 1, t.d(2)), (5, 2, &i0), (6, 3, &i0)]),
    ];
    let bot = alloc::vec![
        Matrix::from_blocks(f, &deg0, &deg1, &[(1, 0, &i2), (0, 2, &i2), (3, 3, b.d(1)), (2, 5, &i0)]),
        Matrix::from_blocks(f, &deg1, &deg2, &[(3, 0, b.d(2)), (1, 1, &i2), (6, 2, &i0), (4, 3, &i0)]),
    ];
    BinaryComplex::from_diffs(f, alloc::vec![dims_sum(&deg0), dims_sum(&deg1), dims_sum(&deg2)], top, bot)
}

fn require_len2(x: &BinaryComplex) -> Result<()> {
    if x.top_degree() != 2 {
        return Err(Error::InvalidDiagram("expected a complex supported on [0,2]"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::{GenConfig, Generator};
    use crate::torsion::binary_torsion;

    /// `P ↣ P ⊕ M ↠ M` read as a diagram with rows M, P ⊕ M, P.
    fn split(p: &BinaryComplex, m: &BinaryComplex) -> NenashevDiagram {
        let f = p.field();
        let n = p.direct_sum(m).unwrap();
        let mn: Vec<Matrix> = (0..3)
            .map(|i| Matrix::vstack(f, m.dim(i), &[&Matrix::zeros(f, p.dim(i), m.dim(i)), &Matrix::identity(f, m.dim(i))]))
            .collect();
        let np: Vec<Matrix> = (0..3)
            .map(|i| Matrix::hstack(f, p.dim(i), &[&Matrix::identity(f, p.dim(i)), &Matrix::zeros(f, p.dim(i), m.dim(i))]))
            .collect();
        NenashevDiagram {
            m: m.clone(),
            n,
            p: p.clone(),
            mn_top: mn.clone(),
            np_top: np.clone(),
            mn_bot: mn,
            np_bot: np,
        }
    }

    #[test]
    fn split_diagram() {
        let mut g = Generator::new(GenConfig::new(9, FieldDesc::Rationals));
        let (p, m) = (g.gen_binary(), g.gen_binary());
        let d = split(&p, &m);
        d.validate().unwrap();
        for i in 0..3 {
            assert!(binary_torsion(&d.column(i).unwrap()).is_one());
        }
        let rows = binary_torsion(&d.p) * binary_torsion(&d.n).inv() * binary_torsion(&d.m);
        assert!(rows.is_one());
        assert!(binary_torsion(&nenashev_total(&d).unwrap()).is_one());
    }

    #[test]
    fn broken_diagram_rejected() {
        let mut d = Generator::new(GenConfig::new(2, FieldDesc::Prime(101))).gen_nenashev();
        let k = d.np_top[1].clone();
        d.np_top[1] = &k + &k;
        if !k.is_zero() {
            assert!(d.validate().is_err());
        }
        let mut e = Generator::new(GenConfig::new(2, FieldDesc::Prime(101))).gen_nenashev();
        e.mn_bot.pop();
        assert!(matches!(e.validate(), Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn remark_outputs_are_binary_complexes() {
        let d = Generator::new(GenConfig::new(5, FieldDesc::Rationals)).gen_nenashev();
        let r = remark_objects(&d).unwrap();
        assert_eq!(r.t_prime.top_degree(), 2);
        assert_eq!(r.t_b.dims(), &[2 * d.p.dim(2) + d.p.dim(0), 3 * d.p.dim(2) + d.p.dim(1), 2 * d.p.dim(2)]);
        for b in [&r.t_b, &r.t_f, &r.t_bf] {
            assert!(b.top().is_acyclic() && b.bot().is_acyclic());
        }
    }
}
