//! Torsion of based acyclic complexes and the binary torsion invariant.
//!
//! For an acyclic complex with the standard bases and a factorisation
//! `(J_n, s_{n+1})`, the square matrix `M_n = [J_n | s_n]` collects a basis of
//! `im d_{n+1}` followed by lifts of a basis of `im d_n`. The torsion is
//! `Π_n det(M_n)^{(-1)^n}`, normalised so that `P_1 --α--> P_0` has torsion
//! `det α`. Changing the image bases or the sections multiplies consecutive
//! factors by the same determinant, so the value does not depend on them.
//!
//! A binary complex gets `t(P) = torsion(P^top) / torsion(P^bot)`, computed
//! in the same standard bases; this is its class in `K_1(F) = F^×`.

use core::fmt;
use core::ops::Mul;

use crate::binary::{BinaryComplex, RelationExpr};
use crate::complex::{ChainComplex, Factorization};
use crate::error::{Error, Result};
use crate::field::{FieldDesc, Scalar};
use crate::matrix::Matrix;

/// A nonzero scalar, the value of a torsion invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionValue(Scalar);

impl TorsionValue {
    pub fn new(value: Scalar) -> Option<Self> {
        (!value.is_zero()).then_some(TorsionValue(value))
    }

    pub fn one(field: FieldDesc) -> Self {
        TorsionValue(field.one())
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    pub fn into_scalar(self) -> Scalar {
        self.0
    }

    pub fn inv(&self) -> Self {
        TorsionValue(self.0.inv().expect("torsion values are nonzero"))
    }

    pub fn pow(&self, exp: i64) -> Self {
        TorsionValue(self.0.pow(exp))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl Mul for &TorsionValue {
    type Output = TorsionValue;
    fn mul(self, rhs: &TorsionValue) -> TorsionValue {
        TorsionValue(&self.0 * &rhs.0)
    }
}

impl Mul for TorsionValue {
    type Output = TorsionValue;
    fn mul(self, rhs: TorsionValue) -> TorsionValue {
        &self * &rhs
    }
}

impl fmt::Display for TorsionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The square change-of-basis matrix `[J_n | s_n]` in degree `n`.
fn basis_matrix(c: &ChainComplex, fact: &Factorization, n: usize) -> Matrix {
    let f = c.field();
    let k = c.top_degree();
    let empty = Matrix::zeros(f, c.dim(n), 0);
    let j = if n < k { &fact.image_basis[n] } else { &empty };
    let s = if n >= 1 { &fact.section[n - 1] } else { &empty };
    Matrix::hstack(f, c.dim(n), &[j, s])
}

/// Torsion with the deterministic factorisation of [`ChainComplex::factorize`].
pub fn chain_torsion(c: &ChainComplex) -> Result<TorsionValue> {
    let fact = c.factorize()?;
    chain_torsion_with(c, &fact)
}

/// Torsion computed from a caller-supplied factorisation, which is checked.
pub fn chain_torsion_with(c: &ChainComplex, fact: &Factorization) -> Result<TorsionValue> {
    let k = c.top_degree();
    if fact.image_basis.len() != k || fact.section.len() != k {
        return Err(Error::DimensionMismatch("factorisation must cover degrees 0..k"));
    }
    for n in 1..=k {
        let s = &fact.section[n - 1];
        let j = &fact.image_basis[n - 1];
        if j.rows() != c.dim(n - 1) || s.rows() != c.dim(n) || s.cols() != j.cols() {
            return Err(Error::DimensionMismatch("factorisation block has the wrong shape"));
        }
        if &(c.d(n) * s) != j {
            return Err(Error::NotAcyclic("section does not lift the image basis"));
        }
    }
    let mut acc = c.field().one();
    for n in 0..=k {
        let m = basis_matrix(c, fact, n);
        if !m.is_square() {
            return Err(Error::NotAcyclic("image bases do not fit together"));
        }
        let det = m.det()?;
        if det.is_zero() {
            return Err(Error::NotAcyclic("image bases do not fit together"));
        }
        acc = if n % 2 == 0 { &acc * &det } else { &acc / &det };
    }
    Ok(TorsionValue(acc))
}

/// `t(P) = torsion(P^top) / torsion(P^bot)`.
pub fn binary_torsion(p: &BinaryComplex) -> TorsionValue {
    let top = chain_torsion(p.top()).expect("binary complexes are acyclic");
    let bot = chain_torsion(p.bot()).expect("binary complexes are acyclic");
    &top * &bot.inv()
}

/// `Π t(P_i)^{c_i}`; the empty expression evaluates to 1 over `field`.
pub fn eval_torsion(field: FieldDesc, e: &RelationExpr) -> Result<TorsionValue> {
    let mut acc = TorsionValue::one(field);
    for (coef, p) in &e.terms {
        if p.field() != field {
            return Err(Error::FieldMismatch);
        }
        acc = &acc * &binary_torsion(p).pow(*coef);
    }
    Ok(acc)
}
