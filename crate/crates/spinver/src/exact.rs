//! Exact scalar and matrix arithmetic over Q and Q(i).
//!
//! Everything here is computed exactly: scalars are rationals with
//! arbitrary-precision integer parts (entry growth during elimination is
//! unbounded in fixed width), and no operation ever rounds. Matrices are
//! dense and small (nothing in this crate exceeds 16x32), so plain
//! Gaussian elimination over the field Q(i) is all we need.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Element of Q(i): a complex number with rational real and imaginary parts.
pub type GaussianRational = Complex<Rational>;

/// `n` as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as a [`Rational`]. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `re + im*i` with integer parts.
pub fn gauss(re: i64, im: i64) -> GaussianRational {
    Complex::new(rat(re), rat(im))
}

/// The imaginary unit.
pub fn i_unit() -> GaussianRational {
    gauss(0, 1)
}

/// True iff `|z| = 1` exactly, i.e. `z * conj(z) = 1`.
pub fn is_unit_modulus(z: &GaussianRational) -> bool {
    (z * z.conj()).is_one()
}

#[derive(Debug, thiserror::Error)]
pub enum ExactError {
    #[error(
        "dimension mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}"
    )]
    DimensionMismatch { left_rows: usize, left_cols: usize, right_rows: usize, right_cols: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-Hermitian")]
    NotSkewHermitian,
    #[error("I + S is singular; resample the skew-Hermitian input")]
    SingularCayley,
    #[error("matrix is singular")]
    Singular,
}

/// Dense row-major matrix over Q(i).
///
/// Immutable in practice: all operations return fresh matrices, so values
/// can be shared freely across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self.at(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        ExactMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix::new(rows, cols, vec![GaussianRational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Column vector from a slice.
    pub fn column(entries: &[GaussianRational]) -> Self {
        ExactMatrix::new(entries.len(), 1, entries.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut GaussianRational {
        &mut self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == ExactMatrix::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut out = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        ExactMatrix::new(self.rows, self.cols, self.entries.iter().map(Complex::conj).collect())
    }

    /// Conjugate transpose.
    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        ExactMatrix::new(self.rows, self.cols, self.entries.iter().map(|e| e * s).collect())
    }

    /// True iff the matrix is unitary: `A^H A = I`.
    pub fn is_unitary(&self) -> bool {
        self.is_square() && (&self.conj_transpose() * self).is_identity()
    }

    /// True iff skew-Hermitian: `A^H = -A`.
    pub fn is_skew_hermitian(&self) -> bool {
        self.is_square() && self.conj_transpose() == -self
    }

    /// Exact matrix product; fails only on a shape mismatch.
    pub fn checked_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = GaussianRational::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * rhs.at(k, c);
                }
                *out.at_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    /// Kronecker product: block (i, j) of the result is `self[i][j] * rhs`.
    pub fn kronecker(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..rhs.rows {
                    for q in 0..rhs.cols {
                        *out.at_mut(i * rhs.rows + p, j * rhs.cols + q) = a * rhs.at(p, q);
                    }
                }
            }
        }
        out
    }

    /// Stack `self` on top of `other` (column counts must agree).
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols, "vstack needs equal column counts");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        ExactMatrix::new(self.rows + other.rows, self.cols, entries)
    }

    /// Reduced row echelon form together with the pivot column list.
    ///
    /// Pivoting is deterministic: the first row with a nonzero entry in
    /// column order, so bases produced downstream are reproducible.
    fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(r0) = found else { continue };
            if r0 != pivot_row {
                for c in 0..m.cols {
                    let hi = m.at(r0, c).clone();
                    let lo = m.at(pivot_row, c).clone();
                    *m.at_mut(r0, c) = lo;
                    *m.at_mut(pivot_row, c) = hi;
                }
            }
            let inv = GaussianRational::one() / m.at(pivot_row, col).clone();
            for c in col..m.cols {
                *m.at_mut(pivot_row, c) = m.at(pivot_row, c) * &inv;
            }
            for r in 0..m.rows {
                if r != pivot_row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        *m.at_mut(r, c) = m.at(r, c) - &factor * m.at(pivot_row, c);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact basis of the right nullspace (empty for a trivial nullspace).
    ///
    /// Each returned matrix is a column vector `v` with `self * v = 0`;
    /// there are exactly `cols - rank` of them and they are linearly
    /// independent by construction.
    pub fn nullspace(&self) -> Vec<ExactMatrix> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            pivot_of_col[p] = Some(i);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![GaussianRational::zero(); self.cols];
            v[free] = GaussianRational::one();
            for (&p, i) in pivots.iter().zip(0..) {
                v[p] = -r.at(i, free).clone();
            }
            basis.push(ExactMatrix::column(&v));
        }
        basis
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Result<GaussianRational, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(r0) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Ok(GaussianRational::zero());
            };
            if r0 != col {
                det = -det;
                for c in 0..n {
                    let hi = m.at(r0, c).clone();
                    let lo = m.at(col, c).clone();
                    *m.at_mut(r0, c) = lo;
                    *m.at_mut(col, c) = hi;
                }
            }
            let pivot = m.at(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if !m.at(r, col).is_zero() {
                    let factor = m.at(r, col) / &pivot;
                    for c in col..n {
                        *m.at_mut(r, c) = m.at(r, c) - &factor * m.at(col, c);
                    }
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse via Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<ExactMatrix, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = ExactMatrix::identity(n);
        for col in 0..n {
            let Some(r0) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Err(ExactError::Singular);
            };
            if r0 != col {
                for c in 0..n {
                    let (a, b) = (m.at(r0, c).clone(), m.at(col, c).clone());
                    *m.at_mut(r0, c) = b;
                    *m.at_mut(col, c) = a;
                    let (a, b) = (inv.at(r0, c).clone(), inv.at(col, c).clone());
                    *inv.at_mut(r0, c) = b;
                    *inv.at_mut(col, c) = a;
                }
            }
            let pivot_inv = GaussianRational::one() / m.at(col, col).clone();
            for c in 0..n {
                *m.at_mut(col, c) = m.at(col, c) * &pivot_inv;
                *inv.at_mut(col, c) = inv.at(col, c) * &pivot_inv;
            }
            for r in 0..n {
                if r != col && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in 0..n {
                        *m.at_mut(r, c) = m.at(r, c) - &factor * m.at(col, c);
                        *inv.at_mut(r, c) = inv.at(r, c) - &factor * inv.at(col, c);
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Flatten to a real row vector (re parts then im parts), for rank
    /// computations over the reals.
    pub fn flatten_real(&self) -> Vec<GaussianRational> {
        let mut out = Vec::with_capacity(2 * self.entries.len());
        for e in &self.entries {
            out.push(Complex::new(e.re.clone(), Rational::zero()));
        }
        for e in &self.entries {
            out.push(Complex::new(e.im.clone(), Rational::zero()));
        }
        out
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in +");
        ExactMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in -");
        ExactMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix::new(self.rows, self.cols, self.entries.iter().map(|a| -a.clone()).collect())
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

/// Exact product of two matrices; errors on a shape mismatch.
pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix, ExactError> {
    a.checked_mul(b)
}

/// Kronecker product of two matrices.
pub fn kronecker(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    a.kronecker(b)
}

/// Exact basis of the right nullspace of `m` over Q(i).
pub fn nullspace(m: &ExactMatrix) -> Vec<ExactMatrix> {
    m.nullspace()
}

/// Cayley transform `(I - S)(I + S)^-1` of a skew-Hermitian matrix.
///
/// The output is unitary with Gaussian-rational entries; `U^H U = I`
/// exactly. For a genuinely skew-Hermitian `S` the pencil `I + S` is
/// always invertible (its eigenvalues are `1 + it`), so the singular
/// branch only fires on inputs that violate the precondition in a way
/// the skewness check cannot see.
pub fn cayley_unitary(s: &ExactMatrix) -> Result<ExactMatrix, ExactError> {
    if !s.is_square() {
        return Err(ExactError::NotSquare { rows: s.rows(), cols: s.cols() });
    }
    if !s.is_skew_hermitian() {
        return Err(ExactError::NotSkewHermitian);
    }
    let id = ExactMatrix::identity(s.rows());
    let plus = &id + s;
    let minus = &id - s;
    let inv = plus.inverse().map_err(|_| ExactError::SingularCayley)?;
    Ok(&minus * &inv)
}

/// Deterministic sampler for exact random values, seeded for
/// reproducibility.
pub struct ExactSampler {
    rng: ChaCha8Rng,
}

impl ExactSampler {
    pub fn new(seed: u64) -> Self {
        ExactSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Small rational with numerator in [-3, 3] and denominator in [1, 3].
    pub fn rational(&mut self) -> Rational {
        let n = self.rng.gen_range(-3i64..=3);
        let d = self.rng.gen_range(1i64..=3);
        ratio(n, d)
    }

    /// Small nonzero rational.
    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn gaussian(&mut self) -> GaussianRational {
        Complex::new(self.rational(), self.rational())
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> ExactMatrix {
        let entries = (0..rows * cols).map(|_| self.gaussian()).collect();
        ExactMatrix::new(rows, cols, entries)
    }

    /// Random skew-Hermitian matrix `B - B^H`.
    pub fn skew_hermitian(&mut self, n: usize) -> ExactMatrix {
        let b = self.matrix(n, n);
        &b - &b.conj_transpose()
    }

    /// Random exact unitary matrix via the Cayley transform.
    pub fn unitary(&mut self, n: usize) -> ExactMatrix {
        cayley_unitary(&self.skew_hermitian(n)).expect("skew-Hermitian Cayley input")
    }

    /// Random exact unitary with determinant exactly 1: a Cayley sample
    /// with its first column rescaled by `conj(det)` (a unit-modulus
    /// scalar, so unitarity is preserved).
    pub fn special_unitary(&mut self, n: usize) -> ExactMatrix {
        let u = self.unitary(n);
        let d = u.det().expect("square");
        debug_assert!(is_unit_modulus(&d));
        let mut out = u;
        for r in 0..n {
            *out.at_mut(r, 0) = out.at(r, 0) * d.conj();
        }
        out
    }

    /// Exact rational point on the unit circle via the tangent
    /// half-angle parametrization.
    pub fn circle_point(&mut self) -> (Rational, Rational) {
        let t = self.rational();
        let one = Rational::one();
        let denom = &one + &t * &t;
        ((&one - &t * &t) / &denom, (rat(2) * &t) / &denom)
    }

    /// Exact unit pair (z, w) with |z|^2 + |w|^2 = 1, from a rational
    /// point of the 3-sphere (unit quaternion 1 + ai + bj + ck scaled).
    pub fn unit_quaternion_pair(&mut self) -> (GaussianRational, GaussianRational) {
        let (a, b, c) = (self.rational(), self.rational(), self.rational());
        let s = &a * &a + &b * &b + &c * &c;
        let n = Rational::one() + &s;
        let z = Complex::new((Rational::one() - &s) / &n, rat(2) * &a / &n);
        let w = Complex::new(rat(2) * &b / &n, rat(2) * &c / &n);
        (z, w)
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }
}
