//! Exact scalars and dense linear algebra over them.
//!
//! The algebra layers work over an exact field selected at runtime: the
//! rationals (arbitrary precision, the default) or a prime field `𝔽p`.
//! A [`Scalar`] carries its field along; mixing scalars from different
//! fields is a programming error and panics.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Runtime description of the ground field.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldSpec {
    /// The field of rational numbers.
    Q,
    /// The prime field with `p` elements (`p` must be prime).
    Fp(u64),
}

impl FieldSpec {
    /// The characteristic of the field (0 for the rationals).
    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Q => 0,
            FieldSpec::Fp(p) => p,
        }
    }

    /// The zero scalar of this field.
    pub fn zero(self) -> Scalar {
        self.from_int(0)
    }

    /// The unit scalar of this field.
    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    /// Embeds an integer into the field.
    pub fn from_int(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Fp(p) => Scalar::Fp {
                v: (n.rem_euclid(p as i64)) as u64,
                p,
            },
        }
    }

    /// The sign `(-1)^k` in this field.
    pub fn sign(self, k: i64) -> Scalar {
        self.from_int(if k.rem_euclid(2) == 0 { 1 } else { -1 })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// An element of a runtime-selected exact field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    /// A rational number.
    Q(BigRational),
    /// An element of `𝔽p`, reduced to `0..p`.
    Fp {
        /// The representative in `0..p`.
        v: u64,
        /// The modulus.
        p: u64,
    },
}

impl Scalar {
    /// The field this scalar belongs to.
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Q,
            Scalar::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    /// True iff the scalar is zero.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    /// Sum.
    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: (a + b) % p,
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Difference.
    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: (p - v) % p,
                p: *p,
            },
        }
    }

    /// Product.
    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: mulmod(*a, *b, *p),
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Multiplicative inverse (panics on zero).
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Q(a.recip())
            }
            Scalar::Fp { v, p } => {
                assert!(*v != 0, "inverse of zero");
                // Fermat: v^(p-2) mod p.
                Scalar::Fp {
                    v: powmod(*v, *p - 2, *p),
                    p: *p,
                }
            }
        }
    }

    /// Renders the scalar compactly (`3`, `-1/2`, `4 mod 7`).
    pub fn render(&self) -> String {
        use alloc::format;
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    format!("{}", q.numer())
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { v, .. } => format!("{v}"),
        }
    }

    /// True for rationals equal to a negative integer or with negative sign
    /// (used only for display).
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// A dense matrix over a runtime field, row major.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix {
    /// Number of rows.
    pub rows: usize,
    /// Number of columns.
    pub cols: usize,
    /// Entries, row major (`rows * cols` scalars).
    pub data: Vec<Scalar>,
}

impl Matrix {
    /// The zero matrix.
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    /// Entry accessor.
    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    /// Entry setter.
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    /// Rank by Gaussian elimination (exact).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(piv) = (rank..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, piv);
            let inv = m.at(rank, col).inv();
            for c in col..m.cols {
                let v = m.at(rank, c).mul(&inv);
                m.set(rank, c, v);
            }
            for r in 0..m.rows {
                if r != rank && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c).sub(&factor.mul(m.at(rank, c)));
                        m.set(r, c, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form; returns the pivot column of each pivot row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(rank, piv);
            let inv = self.at(rank, col).inv();
            for c in col..self.cols {
                let v = self.at(rank, c).mul(&inv);
                self.set(rank, c, v);
            }
            for r in 0..self.rows {
                if r != rank && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = self.at(r, c).sub(&factor.mul(self.at(rank, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }

    /// The identity matrix.
    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Matrix product `self · rhs` (the field cannot always be inferred
    /// from the operands, e.g. when both are empty, so it is explicit).
    pub fn mul(&self, rhs: &Matrix, field: FieldSpec) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Matrix::zero(field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.at(r, k).is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.at(r, c).add(&self.at(r, k).mul(rhs.at(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// A basis of the right nullspace, as column vectors.
    pub fn nullspace(&self, field: FieldSpec) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (col, p) in pivot_of_col.iter().enumerate() {
                if let Some(row) = p {
                    v[col] = m.at(*row, free).neg();
                }
            }
            out.push(v);
        }
        out
    }
}
