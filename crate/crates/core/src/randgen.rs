//! Seeded instance generation.
//!
//! Every generator draws from a ChaCha8 stream seeded with `GenConfig::seed`,
//! so identical configurations produce identical instances. Acyclic complexes
//! are conjugates of the split complex `d_n(x, y) = (y, 0)`; invertible
//! matrices over `F_p` are found by rejection sampling and over `Q` as a
//! diagonal of small fractions times a product of elementary matrices.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::binary::{BinaryComplex, BinaryLadder, BinarySes};
use crate::complex::{ChainComplex, Factorization};
use crate::constructions::nenashev::NenashevDiagram;
use crate::field::{FieldDesc, Scalar};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub field: FieldDesc,
    /// Upper bound on the image ranks `b_n`.
    pub max_rank: usize,
    /// Top degree `k` of generated complexes (support `[0, k]`).
    pub length: usize,
    /// Bound on numerators and denominators of random rationals.
    pub entry_bound: u64,
}

impl GenConfig {
    pub fn new(seed: u64, field: FieldDesc) -> Self {
        GenConfig {
            seed,
            field,
            max_rank: 2,
            length: 2,
            entry_bound: 3,
        }
    }

    pub fn with_length(mut self, length: usize) -> Self {
        self.length = length.max(1);
        self
    }

    pub fn with_max_rank(mut self, max_rank: usize) -> Self {
        self.max_rank = max_rank;
        self
    }

    pub fn with_entry_bound(mut self, entry_bound: u64) -> Self {
        self.entry_bound = entry_bound.max(1);
        self
    }
}

/// A PRNG stream plus the configuration it serves.
pub struct Generator {
    cfg: GenConfig,
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(cfg: GenConfig) -> Self {
        Generator {
            cfg,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        }
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    pub fn field(&self) -> FieldDesc {
        self.cfg.field
    }

    pub fn range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.gen_range(lo..=hi_inclusive)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    /// A uniform element of `F_p`, or a fraction with bounded numerator and
    /// denominator over `Q`.
    pub fn scalar(&mut self) -> Scalar {
        match self.cfg.field {
            FieldDesc::Prime(p) => {
                let v: u64 = self.rng.gen_range(0..p);
                self.cfg.field.from_bigint(&BigInt::from(v))
            }
            FieldDesc::Rationals => {
                let b = self.cfg.entry_bound.max(1) as i64;
                let num = self.rng.gen_range(-b..=b);
                let den = self.rng.gen_range(1..=b);
                self.cfg.field.from_ratio(&num.into(), &den.into()).expect("nonzero denominator")
            }
        }
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    fn small_integer(&mut self) -> Scalar {
        let b = self.cfg.entry_bound.max(1) as i64;
        self.cfg.field.from_i64(self.rng.gen_range(-b..=b))
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let f = self.cfg.field;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            data.push(self.scalar());
        }
        Matrix::new(f, rows, cols, data).expect("sizes agree")
    }

    /// A random invertible `n x n` matrix together with its inverse.
    pub fn invertible_pair(&mut self, n: usize) -> (Matrix, Matrix) {
        let a = self.random_invertible(n);
        let inv = a.inverse().expect("generated matrix is invertible");
        (a, inv)
    }

    pub fn random_invertible(&mut self, n: usize) -> Matrix {
        let f = self.cfg.field;
        match f {
            FieldDesc::Prime(_) => loop {
                let m = self.matrix(n, n);
                if m.rank() == n {
                    return m;
                }
            },
            FieldDesc::Rationals => {
                let mut m = Matrix::identity(f, n);
                for i in 0..n {
                    let d = self.nonzero_scalar();
                    m.set(i, i, d);
                }
                if n >= 2 {
                    for _ in 0..2 * n {
                        let i = self.rng.gen_range(0..n);
                        let mut j = self.rng.gen_range(0..n - 1);
                        if j >= i {
                            j += 1;
                        }
                        let c = self.small_integer();
                        let mut e = Matrix::identity(f, n);
                        e.set(i, j, c);
                        m = &e * &m;
                    }
                }
                m
            }
        }
    }

    /// `A diag(±1) A^{-1}`.
    pub fn random_involution(&mut self, n: usize) -> Matrix {
        let f = self.cfg.field;
        let (a, a_inv) = self.invertible_pair(n);
        let mut d = Matrix::identity(f, n);
        for i in 0..n {
            if self.coin() {
                d.set(i, i, f.from_i64(-1));
            }
        }
        &(&a * &d) * &a_inv
    }

    /// Image ranks `b_0, ..., b_{k-1}`.
    pub fn ranks(&mut self, k: usize) -> Vec<usize> {
        let r = self.cfg.max_rank;
        (0..k).map(|_| self.rng.gen_range(0..=r)).collect()
    }

    pub fn gen_acyclic(&mut self) -> ChainComplex {
        let ranks = self.ranks(self.cfg.length);
        let std = standard_complex(self.cfg.field, &ranks);
        self.random_conjugate(&std)
    }

    /// `g_{n-1} d_n g_n^{-1}` for random invertible `g`.
    pub fn random_conjugate(&mut self, c: &ChainComplex) -> ChainComplex {
        let (g, g_inv): (Vec<Matrix>, Vec<Matrix>) = c.dims().iter().map(|&m| self.invertible_pair(m)).unzip();
        let out = c.conjugate(&g, &g_inv);
        debug_assert!(out.is_acyclic());
        out
    }

    /// Two independent conjugations of one split complex.
    pub fn gen_binary(&mut self) -> BinaryComplex {
        let ranks = self.ranks(self.cfg.length);
        self.gen_binary_with_ranks(&ranks)
    }

    /// Like [`Generator::gen_binary`] with prescribed image ranks `b_0, ..., b_{k-1}`.
    pub fn gen_binary_with_ranks(&mut self, ranks: &[usize]) -> BinaryComplex {
        let std = standard_complex(self.cfg.field, ranks);
        let top = self.random_conjugate(&std);
        let bot = self.random_conjugate(&std);
        BinaryComplex::new(top, bot).expect("conjugates of an acyclic complex")
    }

    /// `⟨α|β⟩` with random invertible `n x n` matrices.
    pub fn gen_generator(&mut self, n: usize) -> BinaryComplex {
        let a = self.random_invertible(n);
        let b = self.random_invertible(n);
        BinaryComplex::two_term(&a, &b).expect("invertible pair")
    }

    /// A random binary complex transported along random involutions.
    pub fn gen_ladder(&mut self) -> BinaryLadder {
        let p = self.gen_binary();
        let sigma = p.dims().iter().map(|&m| self.random_involution(m)).collect();
        let tau = p.dims().iter().map(|&m| self.random_involution(m)).collect();
        BinaryLadder::build_conjugated(&p, sigma, tau).expect("involutions give a valid ladder")
    }

    /// The identity ladder on a random binary complex.
    pub fn gen_identity_ladder(&mut self) -> BinaryLadder {
        let p = self.gen_binary();
        let f = self.cfg.field;
        let ids: Vec<Matrix> = p.dims().iter().map(|&m| Matrix::identity(f, m)).collect();
        BinaryLadder::build_conjugated(&p, ids.clone(), ids).expect("identity ladder")
    }

    /// `P' ↣ P ↠ P''` with random `g`-maps, or the split sequence when
    /// `split` is set.
    pub fn gen_ses(&mut self, split: bool) -> BinarySes {
        let sub = self.gen_binary();
        let quot = self.gen_binary();
        let k = sub.top_degree();
        let g = |gen: &mut Self| -> Vec<Matrix> {
            (0..=k)
                .map(|n| {
                    if split {
                        Matrix::zeros(gen.cfg.field, sub.dim(n), quot.dim(n))
                    } else {
                        gen.matrix(sub.dim(n), quot.dim(n))
                    }
                })
                .collect()
        };
        let g_top = g(self);
        let g_bot = g(self);
        BinarySes::make(&sub, &quot, &g_top, &g_bot).expect("make builds a valid sequence")
    }

    /// The tensor product of two split length-2 complexes, with every object
    /// conjugated independently for the top and the bottom structure.
    pub fn gen_nenashev(&mut self) -> NenashevDiagram {
        let f = self.cfg.field;
        let a = standard_complex(f, &self.ranks(2));
        let b = standard_complex(f, &self.ranks(2));
        // object (r, c) = A_r ⊗ B_c, r = 0 for P, 1 for N, 2 for M
        let dim = |r: usize, c: usize| a.dim(r) * b.dim(c);
        let horiz = |r: usize, c: usize| kron(&Matrix::identity(f, a.dim(r)), b.d(c));
        let vert = |r: usize, c: usize| kron(a.d(r), &Matrix::identity(f, b.dim(c)));

        let layer = |gen: &mut Self| {
            let mut g = Vec::new();
            let mut g_inv = Vec::new();
            for r in 0..3 {
                let (row, row_inv): (Vec<Matrix>, Vec<Matrix>) = (0..3).map(|c| gen.invertible_pair(dim(r, c))).unzip();
                g.push(row);
                g_inv.push(row_inv);
            }
            let rows: Vec<ChainComplex> = (0..3)
                .map(|r| {
                    let diffs = (1..3).map(|c| &(&g[r][c - 1] * &horiz(r, c)) * &g_inv[r][c]).collect();
                    ChainComplex::new(f, (0..3).map(|c| dim(r, c)).collect(), diffs).expect("tensor rows are complexes")
                })
                .collect();
            let verticals: Vec<Vec<Matrix>> = (1..3)
                .map(|r| (0..3).map(|c| &(&g[r - 1][c] * &vert(r, c)) * &g_inv[r][c]).collect())
                .collect();
            (rows, verticals)
        };
        let (top_rows, top_v) = layer(self);
        let (bot_rows, bot_v) = layer(self);
        let mut rows = top_rows.into_iter().zip(bot_rows).map(|(t, b)| BinaryComplex::new(t, b).expect("exact rows"));
        let p = rows.next().expect("three rows");
        let n = rows.next().expect("three rows");
        let m = rows.next().expect("three rows");
        let d = NenashevDiagram {
            m,
            n,
            p,
            mn_top: top_v[1].clone(),
            np_top: top_v[0].clone(),
            mn_bot: bot_v[1].clone(),
            np_bot: bot_v[0].clone(),
        };
        debug_assert!(d.validate().is_ok());
        d
    }

    /// Another valid factorisation of `c`: `J'_n = J_n A_n` and
    /// `s'_n = s_n A_{n-1} + J'_n B_n` for random invertible `A` and random `B`.
    pub fn rechoose_factorization(&mut self, c: &ChainComplex, fact: &Factorization) -> Factorization {
        let k = c.top_degree();
        let image_basis: Vec<Matrix> = fact
            .image_basis
            .iter()
            .map(|j| {
                let a = self.random_invertible(j.cols());
                j * &a
            })
            .collect();
        let section = (1..=k)
            .map(|n| {
                let old_j = &fact.image_basis[n - 1];
                let a = old_j.solve_any(&image_basis[n - 1]).expect("same image");
                let mut s = &fact.section[n - 1] * &a;
                if n < k {
                    let b = self.matrix(image_basis[n].cols(), s.cols());
                    s = &s + &(&image_basis[n] * &b);
                }
                s
            })
            .collect();
        Factorization { image_basis, section }
    }
}

/// The split complex with image ranks `b_0, ..., b_{k-1}`: `P_n = B_n ⊕ B_{n-1}`
/// and `d_n(x, y) = (y, 0)`.
pub fn standard_complex(field: FieldDesc, ranks: &[usize]) -> ChainComplex {
    let k = ranks.len();
    let b = |n: isize| -> usize {
        if n < 0 || n as usize >= k {
            0
        } else {
            ranks[n as usize]
        }
    };
    let dims: Vec<usize> = (0..=k as isize).map(|n| b(n) + b(n - 1)).collect();
    let diffs = (1..=k as isize)
        .map(|n| {
            let mut d = Matrix::zeros(field, dims[n as usize - 1], dims[n as usize]);
            d.paste(0, b(n), &Matrix::identity(field, b(n - 1)));
            d
        })
        .collect();
    ChainComplex::new(field, dims, diffs).expect("split complex")
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    Matrix::from_fn(f, a.rows() * b.rows(), a.cols() * b.cols(), |r, c| {
        a.get(r / b.rows(), c / b.cols()) * b.get(r % b.rows(), c % b.cols())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> [FieldDesc; 2] {
        [FieldDesc::Rationals, FieldDesc::Prime(101)]
    }

    #[test]
    fn deterministic() {
        for f in fields() {
            let cfg = GenConfig::new(17, f).with_length(4);
            assert_eq!(Generator::new(cfg).gen_binary(), Generator::new(cfg).gen_binary());
            assert_eq!(Generator::new(cfg).gen_nenashev(), Generator::new(cfg).gen_nenashev());
        }
    }

    #[test]
    fn zero_ranks_give_empty_complex() {
        let c = Generator::new(GenConfig::new(1, FieldDesc::Rationals).with_max_rank(0).with_length(3)).gen_acyclic();
        assert_eq!(c.dims(), &[0, 0, 0, 0]);
    }

    #[test]
    fn acyclic_samples() {
        let f = FieldDesc::Prime(101);
        for seed in 0..1000 {
            let k = 1 + (seed as usize % 5);
            let c = Generator::new(GenConfig::new(seed, f).with_length(k)).gen_acyclic();
            assert!(c.is_acyclic());
            assert_eq!(c.top_degree(), k);
        }
    }

    #[test]
    fn validators_pass() {
        for f in fields() {
            for seed in 0..200 {
                let mut g = Generator::new(GenConfig::new(seed, f).with_length(2 + seed as usize % 3));
                assert!(g.gen_nenashev().validate().is_ok());
                let l = g.gen_ladder();
                assert!(l.is_valid() && l.is_involutive());
                assert!(g.gen_ses(false).is_valid());
            }
        }
    }

    #[test]
    fn identity_ladder_and_split_ses() {
        let mut g = Generator::new(GenConfig::new(3, FieldDesc::Rationals).with_length(3));
        let l = g.gen_identity_ladder();
        assert_eq!(l.source, l.target);
        let s = g.gen_ses(true);
        assert_eq!(s.total, s.sub.direct_sum(&s.quot).unwrap());
    }

    #[test]
    fn degenerate_degrees_occur() {
        let f = FieldDesc::Prime(101);
        let zero_rank = (0..200)
            .filter(|&s| Generator::new(GenConfig::new(s, f).with_length(3)).ranks(3).contains(&0))
            .count();
        assert!(zero_rank > 0);
    }

    #[test]
    fn rechosen_factorisations_are_valid() {
        let f = FieldDesc::Rationals;
        for seed in 0..30 {
            let mut g = Generator::new(GenConfig::new(seed, f).with_length(4));
            let c = g.gen_acyclic();
            let fact = c.factorize().unwrap();
            let other = g.rechoose_factorization(&c, &fact);
            assert_eq!(
                crate::torsion::chain_torsion_with(&c, &other).unwrap(),
                crate::torsion::chain_torsion_with(&c, &fact).unwrap()
            );
        }
    }
}
