//! Oracles that share no arithmetic with the library: scalars are re-derived
//! from their printed form, determinants come from plain Gaussian
//! elimination, and acyclic torsion from a chain contraction.

#![allow(dead_code)]

use std::ops::{Add, Mul, Neg, Sub};

use bincx_core::{ChainComplex, FieldDesc, Matrix, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fe {
    Q(BigRational),
    P(i128, i128),
}

impl Fe {
    pub fn zero_like(&self) -> Fe {
        match self {
            Fe::Q(_) => Fe::Q(BigRational::zero()),
            Fe::P(_, p) => Fe::P(0, *p),
        }
    }

    pub fn int(f: FieldDesc, n: i64) -> Fe {
        match f {
            FieldDesc::Rationals => Fe::Q(BigRational::from_integer(n.into())),
            FieldDesc::Prime(p) => Fe::P((n as i128).rem_euclid(p as i128), p as i128),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Fe::Q(q) => q.is_zero(),
            Fe::P(v, _) => *v == 0,
        }
    }

    pub fn inv(&self) -> Fe {
        match self {
            Fe::Q(q) => Fe::Q(q.recip()),
            Fe::P(v, p) => {
                // Fermat
                let (mut acc, mut base, mut e) = (1i128, *v, *p - 2);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Fe::P(acc, *p)
            }
        }
    }

    /// Reads a library scalar through its printed form.
    pub fn of(s: &Scalar) -> Fe {
        let text = s.to_string();
        match s.field() {
            FieldDesc::Rationals => {
                let (n, d) = text.split_once('/').unwrap_or((&text, "1"));
                Fe::Q(BigRational::new(n.parse::<BigInt>().unwrap(), d.parse::<BigInt>().unwrap()))
            }
            FieldDesc::Prime(p) => Fe::P(text.parse().unwrap(), p as i128),
        }
    }
}

impl Add for &Fe {
    type Output = Fe;
    fn add(self, o: &Fe) -> Fe {
        match (self, o) {
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a + b),
            (Fe::P(a, p), Fe::P(b, _)) => Fe::P((a + b) % p, *p),
            _ => panic!("mixed fields"),
        }
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        match self {
            Fe::Q(a) => Fe::Q(-a),
            Fe::P(a, p) => Fe::P((p - a) % p, *p),
        }
    }
}

impl Sub for &Fe {
    type Output = Fe;
    fn sub(self, o: &Fe) -> Fe {
        self + &(-o)
    }
}

impl Mul for &Fe {
    type Output = Fe;
    fn mul(self, o: &Fe) -> Fe {
        match (self, o) {
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a * b),
            (Fe::P(a, p), Fe::P(b, _)) => Fe::P(a * b % p, *p),
            _ => panic!("mixed fields"),
        }
    }
}

pub type Mat = Vec<Vec<Fe>>;

pub fn mat(m: &Matrix) -> Mat {
    (0..m.rows()).map(|r| m.row(r).iter().map(Fe::of).collect()).collect()
}

pub fn det(f: FieldDesc, m: &Mat) -> Fe {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = Fe::int(f, 1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Fe::int(f, 0);
        };
        if p != c {
            a.swap(p, c);
            acc = -&acc;
        }
        acc = &acc * &a[c][c];
        let inv = a[c][c].inv();
        for r in c + 1..n {
            let factor = &a[r][c] * &inv;
            if factor.is_zero() {
                continue;
            }
            for j in c..n {
                let v = &a[r][j] - &(&factor * &a[c][j]);
                a[r][j] = v;
            }
        }
    }
    acc
}

/// One solution of `A x = b` (free variables zero), or `None`.
pub fn solve(f: FieldDesc, a: &Mat, b: &[Fe]) -> Option<Vec<Fe>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Mat = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(p, row);
        let inv = m[row][c].inv();
        for j in c..=cols {
            m[row][j] = &m[row][j] * &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][c].is_zero() {
                let factor = m[r][c].clone();
                for j in c..=cols {
                    let v = &m[r][j] - &(&factor * &m[row][j]);
                    m[r][j] = v;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Fe::int(f, 0); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// `det((d + h) : C_odd -> C_even)` for a contraction `h` with `dh + hd = 1`.
pub fn contraction_torsion(c: &ChainComplex) -> Fe {
    let f = c.field();
    let k = c.top_degree();
    let dims: Vec<usize> = (0..=k).map(|n| c.dim(n)).collect();
    let d: Vec<Mat> = (1..=k).map(|n| mat(c.d(n))).collect();
    // unknowns: h_n (dims[n+1] x dims[n]) for n < k, row-major
    let mut offset = vec![0; k + 1];
    for n in 0..k {
        offset[n + 1] = offset[n] + dims[n + 1] * dims[n];
    }
    let unknowns = offset[k];
    let h_idx = |n: usize, i: usize, j: usize| offset[n] + i * dims[n] + j;
    let mut a: Mat = Vec::new();
    let mut b = Vec::new();
    for n in 0..=k {
        for i in 0..dims[n] {
            for j in 0..dims[n] {
                let mut row = vec![Fe::int(f, 0); unknowns];
                if n < k {
                    // (d_{n+1} h_n)[i][j]
                    for l in 0..dims[n + 1] {
                        let v = &row[h_idx(n, l, j)] + &d[n][i][l];
                        row[h_idx(n, l, j)] = v;
                    }
                }
                if n >= 1 {
                    // (h_{n-1} d_n)[i][j]
                    for l in 0..dims[n - 1] {
                        let v = &row[h_idx(n - 1, i, l)] + &d[n - 1][l][j];
                        row[h_idx(n - 1, i, l)] = v;
                    }
                }
                a.push(row);
                b.push(Fe::int(f, if i == j { 1 } else { 0 }));
            }
        }
    }
    let x = solve(f, &a, &b).expect("acyclic complexes are contractible");
    let even: Vec<usize> = (0..=k).filter(|n| n % 2 == 0).collect();
    let odd: Vec<usize> = (0..=k).filter(|n| n % 2 == 1).collect();
    let start = |list: &[usize], n: usize| list.iter().take_while(|&&m| m != n).map(|&m| dims[m]).sum::<usize>();
    let size: usize = even.iter().map(|&n| dims[n]).sum();
    assert_eq!(size, odd.iter().map(|&n| dims[n]).sum::<usize>(), "Euler characteristic");
    let mut m = vec![vec![Fe::int(f, 0); size]; size];
    for &n in &odd {
        let c0 = start(&odd, n);
        // d_n : C_n -> C_{n-1}
        let r0 = start(&even, n - 1);
        for i in 0..dims[n - 1] {
            for j in 0..dims[n] {
                m[r0 + i][c0 + j] = d[n - 1][i][j].clone();
            }
        }
        if n < k {
            let r0 = start(&even, n + 1);
            for i in 0..dims[n + 1] {
                for j in 0..dims[n] {
                    m[r0 + i][c0 + j] = x[h_idx(n, i, j)].clone();
                }
            }
        }
    }
    det(f, &m)
}

pub fn ratio(a: &Fe, b: &Fe) -> Fe {
    a * &b.inv()
}
