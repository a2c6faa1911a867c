//! The explicit Lambda^2(C^4) model: the omega basis of the
//! anti-self-dual 6-space, the linear stabilizer condition, block-form
//! verification of the exceptional isomorphisms, the induced orthogonal
//! action modelling the double covers Spin(n) -> SO(n), and the
//! Kronecker-product lift Sp(1) x SO(2) -> Sp(2).
//!
//! Conventions: e_1..e_4 is a unitary basis of C^4, the orientation is
//! +e_1^e_2^e_3^e_4, and the hermitian metric on Lambda^2 carries a 1/2
//! so that the six omega forms come out exactly orthonormal.

use crate::exact::{gauss, i_unit, mat_mul, ExactMatrix, ExactSampler, GaussianRational, Rational};
use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum Lambda2Error {
    #[error("form index {0} out of range 1..=6")]
    InvalidFormIndex(usize),
    #[error("expected a 4x4 matrix, got {0}x{1}")]
    NotFourByFour(usize, usize),
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("matrix does not satisfy the stabilizer condition for form {0}")]
    NotInStabilizer(usize),
    #[error("action does not preserve the complementary span: {0}")]
    SpanNotPreserved(String),
    #[error("induced action is not orthogonal")]
    NotOrthogonal,
    #[error("induced action has determinant != 1")]
    DeterminantNotOne,
    #[error("input does not match the {0} block pattern")]
    PatternMismatch(&'static str),
    #[error("unknown block pattern '{0}' (expected spin2, spin3, spin4, spin5, or so2-in-su4)")]
    UnknownPattern(String),
}

/// Index pairs (i, j), 1 <= i < j <= 4, in the fixed coordinate order
/// used throughout: the order in which the omega list consumes them.
pub const WEDGE_PAIRS: [(usize, usize); 6] = [(1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3)];

/// Element of Lambda^2(C^4) in the e_i ^ e_j (i < j) basis, with no 1/2
/// normalization factors. Antisymmetry is implicit in the i < j keys.
#[derive(Clone, PartialEq, Eq)]
pub struct TwoForm {
    coeffs: [GaussianRational; 6],
}

impl fmt::Debug for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, (i, j)) in WEDGE_PAIRS.iter().enumerate() {
            if !self.coeffs[k].is_zero() {
                parts.push(format!("({})e{}^e{}", self.coeffs[k], i, j));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl TwoForm {
    pub fn zero() -> Self {
        TwoForm { coeffs: std::array::from_fn(|_| GaussianRational::zero()) }
    }

    /// Build from (i, j, coefficient) triples with i < j.
    pub fn from_terms(terms: &[(usize, usize, GaussianRational)]) -> Self {
        let mut form = TwoForm::zero();
        for (i, j, c) in terms {
            let k = WEDGE_PAIRS
                .iter()
                .position(|p| p == &(*i, *j))
                .unwrap_or_else(|| panic!("({i},{j}) is not an increasing pair in 1..=4"));
            form.coeffs[k] = form.coeffs[k].clone() + c;
        }
        form
    }

    /// Coefficient on e_i ^ e_j for i < j.
    pub fn coeff(&self, i: usize, j: usize) -> &GaussianRational {
        let k = WEDGE_PAIRS.iter().position(|p| p == &(i, j)).expect("increasing pair");
        &self.coeffs[k]
    }

    /// Coordinates in the fixed pair order.
    pub fn coords(&self) -> &[GaussianRational; 6] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Entrywise complex conjugate (the real structure fixing the
    /// e_i ^ e_j basis).
    pub fn conj(&self) -> Self {
        TwoForm { coeffs: std::array::from_fn(|k| self.coeffs[k].conj()) }
    }

    /// Hodge star for the standard metric and orientation:
    /// *(e1^e2) = e3^e4, *(e1^e3) = -e2^e4, *(e1^e4) = e2^e3, and back
    /// again with the same signs.
    pub fn hodge_star(&self) -> Self {
        let c = &self.coeffs;
        TwoForm {
            coeffs: [
                c[1].clone(),
                c[0].clone(),
                -c[3].clone(),
                -c[2].clone(),
                c[5].clone(),
                c[4].clone(),
            ],
        }
    }

    /// Hermitian inner product with the 1/2 normalization, antilinear in
    /// the first slot.
    pub fn inner(&self, other: &TwoForm) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for k in 0..6 {
            acc += self.coeffs[k].conj() * &other.coeffs[k];
        }
        acc * Complex::new(crate::exact::ratio(1, 2), Rational::zero())
    }

    /// The antisymmetric 4x4 coefficient matrix of the form.
    pub fn to_matrix(&self) -> FormMatrix {
        let mut m = ExactMatrix::zeros(4, 4);
        for (k, (i, j)) in WEDGE_PAIRS.iter().enumerate() {
            *m.at_mut(i - 1, j - 1) = self.coeffs[k].clone();
            *m.at_mut(j - 1, i - 1) = -self.coeffs[k].clone();
        }
        FormMatrix { m }
    }

    pub fn from_matrix(fm: &FormMatrix) -> Self {
        let mut form = TwoForm::zero();
        for (k, (i, j)) in WEDGE_PAIRS.iter().enumerate() {
            form.coeffs[k] = fm.m.at(i - 1, j - 1).clone();
        }
        form
    }
}

/// Antisymmetric 4x4 matrix representing a two-form in the e_j basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormMatrix {
    m: ExactMatrix,
}

impl FormMatrix {
    pub fn matrix(&self) -> &ExactMatrix {
        &self.m
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.m.transpose() == -&self.m
    }

    /// The natural action of g on Lambda^2 of column vectors:
    /// coefficient matrices transform as M -> g M g^T.
    pub fn apply(&self, g: &ExactMatrix) -> FormMatrix {
        FormMatrix { m: &(g * &self.m) * &g.transpose() }
    }
}

/// The six omega forms, exactly as listed, in order:
///   w1 = i e1^e2 + i e3^e4        w2 = e1^e2 - e3^e4
///   w3 = i e1^e3 - i e2^e4        w4 = e1^e3 + e2^e4
///   w5 = i e1^e4 + i e2^e3        w6 = e1^e4 - e2^e3
pub fn omega_basis() -> [TwoForm; 6] {
    let i = i_unit();
    let one = GaussianRational::one();
    [
        TwoForm::from_terms(&[(1, 2, i.clone()), (3, 4, i.clone())]),
        TwoForm::from_terms(&[(1, 2, one.clone()), (3, 4, -one.clone())]),
        TwoForm::from_terms(&[(1, 3, i.clone()), (2, 4, -i.clone())]),
        TwoForm::from_terms(&[(1, 3, one.clone()), (2, 4, one.clone())]),
        TwoForm::from_terms(&[(1, 4, i.clone()), (2, 3, i)]),
        TwoForm::from_terms(&[(1, 4, one.clone()), (2, 3, -one)]),
    ]
}

/// The coefficient matrices M_1..M_6 of the omega forms.
pub fn omega_matrices() -> [FormMatrix; 6] {
    let basis = omega_basis();
    std::array::from_fn(|k| basis[k].to_matrix())
}

/// True iff alpha = -*(conj alpha), i.e. the form lies in the
/// anti-self-dual 6-space the omega forms span.
pub fn antiselfdual_check(f: &TwoForm) -> bool {
    let mut star_conj = f.conj().hodge_star();
    for c in &mut star_conj.coeffs {
        *c = -c.clone();
    }
    *f == star_conj
}

/// The linear stabilizer condition for form i: `M_i U M_i^-1 = conj(U)`.
///
/// For unitary U this is equivalent to `U^T M_i U = M_i` (preservation
/// of the form); the linear version is the one solved for below.
pub fn star_condition_matrix(u: &ExactMatrix, i: usize) -> Result<bool, Lambda2Error> {
    if u.rows() != 4 || u.cols() != 4 {
        return Err(Lambda2Error::NotFourByFour(u.rows(), u.cols()));
    }
    if !(1..=6).contains(&i) {
        return Err(Lambda2Error::InvalidFormIndex(i));
    }
    let m = &omega_matrices()[i - 1];
    let m_inv = m.matrix().inverse().expect("omega matrices are invertible");
    let lhs = &(m.matrix() * u) * &m_inv;
    Ok(lhs == u.conj())
}

/// Real solution space of the stabilizer condition for every i in the
/// fixed set.
#[derive(Clone, Debug)]
pub struct StabilizerSpec {
    pub fixed_set: Vec<usize>,
    /// R-basis of the space of 4x4 complex matrices satisfying the
    /// condition for all fixed forms; linearly independent over R.
    pub basis: Vec<ExactMatrix>,
}

impl StabilizerSpec {
    pub fn real_dimension(&self) -> usize {
        self.basis.len()
    }

    /// True iff `u` lies in the real span of the solution basis.
    pub fn contains(&self, u: &ExactMatrix) -> bool {
        let mut rows: Vec<Vec<GaussianRational>> =
            self.basis.iter().map(ExactMatrix::flatten_real).collect();
        let base = ExactMatrix::from_rows(rows.clone());
        rows.push(u.flatten_real());
        let extended = ExactMatrix::from_rows(rows);
        base.rank() == extended.rank()
    }
}

/// The 32 real basis matrices E_pq and i*E_pq used to split the complex
/// unknown U into real unknowns.
fn real_unknown_basis() -> Vec<ExactMatrix> {
    let mut basis = Vec::with_capacity(32);
    for unit in [gauss(1, 0), gauss(0, 1)] {
        for p in 0..4 {
            for q in 0..4 {
                let mut m = ExactMatrix::zeros(4, 4);
                *m.at_mut(p, q) = unit.clone();
                basis.push(m);
            }
        }
    }
    basis
}

/// Solve the stabilizer condition for all i in `fixed` as one real
/// linear system (32 real unknowns) and return an exact solution basis.
///
/// The condition mixes U and conj(U), so it is R-linear, not C-linear:
/// each complex equation splits into two real ones and the elimination
/// runs over Q.
pub fn stabilizer_space(fixed: &[usize]) -> Result<StabilizerSpec, Lambda2Error> {
    let mut fixed_set: Vec<usize> = fixed.to_vec();
    fixed_set.sort_unstable();
    fixed_set.dedup();
    for &i in &fixed_set {
        if !(1..=6).contains(&i) {
            return Err(Lambda2Error::InvalidFormIndex(i));
        }
    }
    let unknowns = real_unknown_basis();
    let matrices = omega_matrices();

    // Residual of the condition on each unknown basis matrix; stacking
    // real and imaginary parts of all 16 entries gives the rows.
    let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
    for &i in &fixed_set {
        let m = matrices[i - 1].matrix();
        let m_inv = m.inverse().expect("omega matrices are invertible");
        let residuals: Vec<ExactMatrix> =
            unknowns.iter().map(|e| &(&(m * e) * &m_inv) - &e.conj()).collect();
        for r in 0..4 {
            for c in 0..4 {
                for part in 0..2 {
                    let row: Vec<GaussianRational> = residuals
                        .iter()
                        .map(|res| {
                            let entry = res.at(r, c);
                            let val = if part == 0 { entry.re.clone() } else { entry.im.clone() };
                            Complex::new(val, Rational::zero())
                        })
                        .collect();
                    rows.push(row);
                }
            }
        }
    }

    let basis = if rows.is_empty() {
        // Empty fixed set: every matrix qualifies.
        unknowns.clone()
    } else {
        let system = ExactMatrix::from_rows(rows);
        system
            .nullspace()
            .into_iter()
            .map(|v| {
                let mut u = ExactMatrix::zeros(4, 4);
                for (j, e) in unknowns.iter().enumerate() {
                    let coeff = v.at(j, 0);
                    debug_assert!(coeff.im.is_zero());
                    u = &u + &e.scale(coeff);
                }
                u
            })
            .collect()
    };
    Ok(StabilizerSpec { fixed_set, basis })
}

/// The block patterns displayed for the stabilizer groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockPattern {
    /// 2x2 grid of quaternion cells [[z, -conj w], [w, conj z]]; the
    /// Sp(2) = Spin(5) locus (16 real parameters).
    Spin5,
    /// Block diagonal with two independent quaternion cells; the
    /// Sp(1) x Sp(1) = Spin(4) locus (8 real parameters).
    Spin4,
    /// Block diagonal with one repeated quaternion cell; the
    /// Sp(1) = Spin(3) locus (4 real parameters).
    Spin3,
    /// a*I + b*K with real a, b; the SO(2) = Spin(2) circle inside
    /// SU(4) (2 real parameters).
    Spin2,
    /// Alias for the same a, b display, named by its role.
    So2InSu4,
}

impl FromStr for BlockPattern {
    type Err = Lambda2Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "spin5" => Ok(BlockPattern::Spin5),
            "spin4" => Ok(BlockPattern::Spin4),
            "spin3" => Ok(BlockPattern::Spin3),
            "spin2" => Ok(BlockPattern::Spin2),
            "so2-in-su4" | "so2" => Ok(BlockPattern::So2InSu4),
            other => Err(Lambda2Error::UnknownPattern(other.to_string())),
        }
    }
}

impl fmt::Display for BlockPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockPattern::Spin5 => write!(f, "spin5"),
            BlockPattern::Spin4 => write!(f, "spin4"),
            BlockPattern::Spin3 => write!(f, "spin3"),
            BlockPattern::Spin2 => write!(f, "spin2"),
            BlockPattern::So2InSu4 => write!(f, "so2-in-su4"),
        }
    }
}

/// R-basis of one quaternion cell: 1, i, j, k as 2x2 complex matrices.
fn quaternion_cells() -> [ExactMatrix; 4] {
    [
        ExactMatrix::from_rows(vec![
            vec![gauss(1, 0), gauss(0, 0)],
            vec![gauss(0, 0), gauss(1, 0)],
        ]),
        ExactMatrix::from_rows(vec![
            vec![gauss(0, 1), gauss(0, 0)],
            vec![gauss(0, 0), gauss(0, -1)],
        ]),
        ExactMatrix::from_rows(vec![
            vec![gauss(0, 0), gauss(-1, 0)],
            vec![gauss(1, 0), gauss(0, 0)],
        ]),
        ExactMatrix::from_rows(vec![
            vec![gauss(0, 0), gauss(0, 1)],
            vec![gauss(0, 1), gauss(0, 0)],
        ]),
    ]
}

/// Embed a 2x2 cell as the (bi, bj) block of a 4x4 matrix.
fn embed_block(cell: &ExactMatrix, bi: usize, bj: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(4, 4);
    for r in 0..2 {
        for c in 0..2 {
            *m.at_mut(2 * bi + r, 2 * bj + c) = cell.at(r, c).clone();
        }
    }
    m
}

/// R-basis of the given block pattern's linear span.
pub fn pattern_basis(pattern: BlockPattern) -> Vec<ExactMatrix> {
    let cells = quaternion_cells();
    match pattern {
        BlockPattern::Spin5 => {
            let mut basis = Vec::with_capacity(16);
            for bi in 0..2 {
                for bj in 0..2 {
                    for cell in &cells {
                        basis.push(embed_block(cell, bi, bj));
                    }
                }
            }
            basis
        }
        BlockPattern::Spin4 => {
            let mut basis = Vec::with_capacity(8);
            for b in 0..2 {
                for cell in &cells {
                    basis.push(embed_block(cell, b, b));
                }
            }
            basis
        }
        BlockPattern::Spin3 => {
            cells.iter().map(|cell| &embed_block(cell, 0, 0) + &embed_block(cell, 1, 1)).collect()
        }
        BlockPattern::Spin2 | BlockPattern::So2InSu4 => {
            let id = ExactMatrix::identity(4);
            let mut k = ExactMatrix::zeros(4, 4);
            *k.at_mut(0, 2) = gauss(-1, 0);
            *k.at_mut(1, 3) = gauss(-1, 0);
            *k.at_mut(2, 0) = gauss(1, 0);
            *k.at_mut(3, 1) = gauss(1, 0);
            vec![id, k]
        }
    }
}

/// True iff the solution space equals the pattern's linear span,
/// checked both ways by rank computations over Q.
pub fn pattern_match(spec: &StabilizerSpec, pattern: BlockPattern) -> bool {
    let template = pattern_basis(pattern);
    let a_rows: Vec<Vec<GaussianRational>> =
        spec.basis.iter().map(ExactMatrix::flatten_real).collect();
    let b_rows: Vec<Vec<GaussianRational>> =
        template.iter().map(ExactMatrix::flatten_real).collect();
    if a_rows.is_empty() || b_rows.is_empty() {
        return a_rows.is_empty() && b_rows.is_empty();
    }
    let a = ExactMatrix::from_rows(a_rows.clone());
    let b = ExactMatrix::from_rows(b_rows.clone());
    let mut all = a_rows;
    all.extend(b_rows);
    let joint = ExactMatrix::from_rows(all);
    let (ra, rb, rj) = (a.rank(), b.rank(), joint.rank());
    ra == rb && rb == rj
}

/// Change-of-basis matrix whose column k holds the wedge coordinates of
/// omega_{k+1}.
fn omega_coordinate_matrix() -> ExactMatrix {
    let basis = omega_basis();
    let mut c = ExactMatrix::zeros(6, 6);
    for (k, form) in basis.iter().enumerate() {
        for (row, coeff) in form.coords().iter().enumerate() {
            *c.at_mut(row, k) = coeff.clone();
        }
    }
    c
}

/// The real matrix of u's action on span{omega_j : j not in fixed}, in
/// the omega basis restricted to the complement (ascending order).
///
/// The output is checked to be exactly orthogonal with determinant +1;
/// this is the finite model of the covering map Spin(n) -> SO(n).
pub fn induced_orthogonal_action(
    u: &ExactMatrix,
    fixed: &[usize],
) -> Result<ExactMatrix, Lambda2Error> {
    if u.rows() != 4 || u.cols() != 4 {
        return Err(Lambda2Error::NotFourByFour(u.rows(), u.cols()));
    }
    if !u.is_unitary() {
        return Err(Lambda2Error::NotUnitary);
    }
    let mut fixed_set: Vec<usize> = fixed.to_vec();
    fixed_set.sort_unstable();
    fixed_set.dedup();
    for &i in &fixed_set {
        if !(1..=6).contains(&i) {
            return Err(Lambda2Error::InvalidFormIndex(i));
        }
        if !star_condition_matrix(u, i)? {
            return Err(Lambda2Error::NotInStabilizer(i));
        }
    }
    let complement: Vec<usize> = (1..=6).filter(|j| !fixed_set.contains(j)).collect();
    let matrices = omega_matrices();
    let c_inv = omega_coordinate_matrix().inverse().expect("omega basis is a basis");

    let size = complement.len();
    let mut action = ExactMatrix::zeros(size, size);
    for (col, &j) in complement.iter().enumerate() {
        let transformed = matrices[j - 1].apply(u);
        let coords = TwoForm::from_matrix(&transformed);
        let vec = ExactMatrix::column(coords.coords());
        let omega_coeffs = mat_mul(&c_inv, &vec).expect("6x6 times 6x1");
        for k in 1..=6 {
            let coeff = omega_coeffs.at(k - 1, 0);
            if fixed_set.contains(&k) {
                if !coeff.is_zero() {
                    return Err(Lambda2Error::SpanNotPreserved(format!(
                        "u.omega_{j} has a nonzero omega_{k} component"
                    )));
                }
            } else if !coeff.im.is_zero() {
                return Err(Lambda2Error::SpanNotPreserved(format!(
                    "u.omega_{j} has a non-real omega_{k} coefficient"
                )));
            }
        }
        for (row, &k) in complement.iter().enumerate() {
            *action.at_mut(row, col) = omega_coeffs.at(k - 1, 0).clone();
        }
    }

    if !(&action.transpose() * &action).is_identity() {
        return Err(Lambda2Error::NotOrthogonal);
    }
    if !action.det().expect("square").is_one() {
        return Err(Lambda2Error::DeterminantNotOne);
    }
    Ok(action)
}

/// The Spin(3)-pattern element for a unit pair (z, w): the quaternion
/// cell repeated down the diagonal.
pub fn spin3_element(z: &GaussianRational, w: &GaussianRational) -> ExactMatrix {
    let cell = quaternion_cell(z, w);
    &embed_block(&cell, 0, 0) + &embed_block(&cell, 1, 1)
}

/// One quaternion cell [[z, -conj w], [w, conj z]].
pub fn quaternion_cell(z: &GaussianRational, w: &GaussianRational) -> ExactMatrix {
    ExactMatrix::from_rows(vec![vec![z.clone(), -w.conj()], vec![w.clone(), z.conj()]])
}

/// The SO(2)-pattern element a*I + b*K for a point (a, b) on the unit
/// circle.
pub fn so2_element(a: &Rational, b: &Rational) -> ExactMatrix {
    let basis = pattern_basis(BlockPattern::So2InSu4);
    let a_c = Complex::new(a.clone(), Rational::zero());
    let b_c = Complex::new(b.clone(), Rational::zero());
    &basis[0].scale(&a_c) + &basis[1].scale(&b_c)
}

/// The 2x2 rotation [[a, -b], [b, a]].
pub fn so2_rotation(a: &Rational, b: &Rational) -> ExactMatrix {
    let a = Complex::new(a.clone(), Rational::zero());
    let b = Complex::new(b.clone(), Rational::zero());
    ExactMatrix::from_rows(vec![vec![a.clone(), -b.clone()], vec![b, a]])
}

/// Sample an exact Spin(3)-pattern group element.
pub fn sample_spin3(sampler: &mut ExactSampler) -> ExactMatrix {
    let (z, w) = sampler.unit_quaternion_pair();
    spin3_element(&z, &w)
}

/// Sample an exact Spin(4)-pattern group element (two independent unit
/// quaternion cells).
pub fn sample_spin4(sampler: &mut ExactSampler) -> ExactMatrix {
    let (z1, w1) = sampler.unit_quaternion_pair();
    let (z2, w2) = sampler.unit_quaternion_pair();
    &embed_block(&quaternion_cell(&z1, &w1), 0, 0) + &embed_block(&quaternion_cell(&z2, &w2), 1, 1)
}

/// Sample an exact SO(2)-pattern group element.
pub fn sample_so2(sampler: &mut ExactSampler) -> ExactMatrix {
    let (a, b) = sampler.circle_point();
    so2_element(&a, &b)
}

/// Sample an exact Sp(2) element: the Cayley transform of a
/// skew-Hermitian matrix built inside the quaternionic block pattern,
/// which the pattern (a subalgebra closed under inverses) retains.
pub fn sample_spin5(sampler: &mut ExactSampler) -> ExactMatrix {
    let mut x = ExactMatrix::zeros(4, 4);
    for bi in 0..2 {
        for bj in 0..2 {
            let cell = quaternion_cell(&sampler.gaussian(), &sampler.gaussian());
            x = &x + &embed_block(&cell, bi, bj);
        }
    }
    let skew = &x - &x.conj_transpose();
    crate::exact::cayley_unitary(&skew).expect("skew-Hermitian by construction")
}

/// Ordering that joins the two factor actions: first the Spin(3) block
/// on (w3, w4, w5), then the SO(2) block on (w2, w6).
pub const LIFT_BLOCK_ORDER: [usize; 5] = [3, 4, 5, 2, 6];

/// Verdict data for one Kronecker-lift check.
#[derive(Debug, Clone, Serialize)]
pub struct KroneckerLiftReport {
    /// Lift satisfies the stabilizer condition for omega_1 and is
    /// unitary.
    pub lift_in_stabilizer: bool,
    /// Lift lies in the linear span of the omega_1 solution space.
    pub lift_in_solution_span: bool,
    /// Induced action of the lift equals the block join of the factor
    /// actions, up to the fixed basis permutation.
    pub diagram_commutes: bool,
    /// Which Kronecker ordering realizes the lift.
    pub kron_order: &'static str,
    /// Complement basis order realizing the block-diagonal join.
    pub block_order: [usize; 5],
    pub pass: bool,
}

fn block_diag(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let n = a.rows() + b.rows();
    let mut m = ExactMatrix::zeros(n, n);
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            *m.at_mut(r, c) = a.at(r, c).clone();
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            *m.at_mut(a.rows() + r, a.cols() + c) = b.at(r, c).clone();
        }
    }
    m
}

/// Check that the Kronecker product of the 2x2 generator data of a
/// Spin(3)-pattern element and an SO(2)-pattern element lands in the
/// omega_1 stabilizer and that the induced orthogonal actions commute
/// with the block join, exactly.
pub fn kronecker_lift_check(
    u_sp1: &ExactMatrix,
    r_so2: &ExactMatrix,
) -> Result<KroneckerLiftReport, Lambda2Error> {
    // Recover and validate the 2x2 generator data.
    if u_sp1.rows() != 4 || u_sp1.cols() != 4 {
        return Err(Lambda2Error::NotFourByFour(u_sp1.rows(), u_sp1.cols()));
    }
    let z = u_sp1.at(0, 0).clone();
    let w = u_sp1.at(1, 0).clone();
    if *u_sp1 != spin3_element(&z, &w) || !(z.norm_sqr() + w.norm_sqr()).is_one() {
        return Err(Lambda2Error::PatternMismatch("spin3"));
    }
    if r_so2.rows() != 4 || r_so2.cols() != 4 {
        return Err(Lambda2Error::NotFourByFour(r_so2.rows(), r_so2.cols()));
    }
    let a = r_so2.at(0, 0).clone();
    let b = r_so2.at(2, 0).clone();
    if !a.im.is_zero() || !b.im.is_zero() {
        return Err(Lambda2Error::PatternMismatch("so2-in-su4"));
    }
    let (a, b) = (a.re, b.re);
    if *r_so2 != so2_element(&a, &b) || !(&a * &a + &b * &b).is_one() {
        return Err(Lambda2Error::PatternMismatch("so2-in-su4"));
    }

    let q2 = quaternion_cell(&z, &w);
    let r2 = so2_rotation(&a, &b);
    // kron(r2, q2) places the quaternion cell inside each rotation
    // block, matching the product of the two embedded subgroups.
    let lift = r2.kronecker(&q2);

    let lift_in_stabilizer = star_condition_matrix(&lift, 1)? && lift.is_unitary();
    let lift_in_solution_span = stabilizer_space(&[1])?.contains(&lift);

    let act5 = induced_orthogonal_action(&lift, &[1])?;
    let act3 = induced_orthogonal_action(u_sp1, &[1, 2, 6])?;
    let act2 = induced_orthogonal_action(r_so2, &[1, 3, 4, 5])?;

    // Permutation from block order (3,4,5,2,6) to the natural
    // complement order (2,3,4,5,6).
    let natural: Vec<usize> = (2..=6).collect();
    let mut p = ExactMatrix::zeros(5, 5);
    for (t, &idx) in LIFT_BLOCK_ORDER.iter().enumerate() {
        let row = natural.iter().position(|&n| n == idx).expect("block order covers complement");
        *p.at_mut(row, t) = gauss(1, 0);
    }
    let joined = &(&p * &block_diag(&act3, &act2)) * &p.transpose();
    let diagram_commutes = act5 == joined;

    let pass = lift_in_stabilizer && lift_in_solution_span && diagram_commutes;
    Ok(KroneckerLiftReport {
        lift_in_stabilizer,
        lift_in_solution_span,
        diagram_commutes,
        kron_order: "kron(so2_rotation, quaternion_cell)",
        block_order: LIFT_BLOCK_ORDER,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn unit_z_w(zn: (i64, i64, i64), wn: (i64, i64, i64)) -> (GaussianRational, GaussianRational) {
        // (re/den, im/den) pairs; caller promises unit norm.
        let z = Complex::new(ratio(zn.0, zn.2), ratio(zn.1, zn.2));
        let w = Complex::new(ratio(wn.0, wn.2), ratio(wn.1, wn.2));
        assert!((z.norm_sqr() + w.norm_sqr()).is_one());
        (z, w)
    }

    #[test]
    fn omega_list_matches_the_displayed_forms() {
        let basis = omega_basis();
        // w2 = e1^e2 - e3^e4
        assert_eq!(*basis[1].coeff(1, 2), gauss(1, 0));
        assert_eq!(*basis[1].coeff(3, 4), gauss(-1, 0));
        assert!(basis[1].coeff(1, 3).is_zero());
        // w5 = i e1^e4 + i e2^e3
        assert_eq!(*basis[4].coeff(1, 4), gauss(0, 1));
        assert_eq!(*basis[4].coeff(2, 3), gauss(0, 1));
        assert!(basis[4].coeff(1, 2).is_zero());
    }

    #[test]
    fn omega_forms_are_antiselfdual_and_orthonormal() {
        let basis = omega_basis();
        for (k, f) in basis.iter().enumerate() {
            assert!(antiselfdual_check(f), "omega_{} fails the ASD condition", k + 1);
            for (l, g) in basis.iter().enumerate() {
                let inner = f.inner(g);
                let expected = if k == l { rat(1) } else { rat(0) };
                assert_eq!(inner.re, expected, "Re<w{},w{}>", k + 1, l + 1);
                assert!(inner.im.is_zero());
            }
        }
    }

    #[test]
    fn antiselfdual_rejects_the_selfdual_combination() {
        // e1^e2 + e3^e4 is self-dual, not anti-self-dual.
        let f = TwoForm::from_terms(&[(1, 2, gauss(1, 0)), (3, 4, gauss(1, 0))]);
        assert!(!antiselfdual_check(&f));
        assert!(antiselfdual_check(&TwoForm::zero()));
    }

    #[test]
    fn omega_matrices_are_antisymmetric_and_invertible() {
        for m in omega_matrices() {
            assert!(m.is_antisymmetric());
            assert!(m.matrix().inverse().is_ok());
        }
    }

    #[test]
    fn identity_satisfies_every_star_condition() {
        let id = ExactMatrix::identity(4);
        for i in 1..=6 {
            assert!(star_condition_matrix(&id, i).unwrap());
        }
    }

    #[test]
    fn displayed_spin3_block_satisfies_its_conditions() {
        // z = 3/5, w = 4/5.
        let (z, w) = unit_z_w((3, 0, 5), (4, 0, 5));
        let u = spin3_element(&z, &w);
        for i in [1, 2, 6] {
            assert!(star_condition_matrix(&u, i).unwrap(), "form {i}");
        }
        // It moves the complementary forms, so it is not in those
        // stabilizers.
        assert!(!star_condition_matrix(&u, 3).unwrap());
    }

    #[test]
    fn generic_special_unitary_misses_the_stabilizer() {
        let mut s = ExactSampler::new(77);
        let u = s.special_unitary(4);
        assert!(u.is_unitary());
        assert!(!star_condition_matrix(&u, 1).unwrap());
    }

    #[test]
    fn star_condition_equivalence_for_unitary_samples() {
        // M_i U M_i^-1 = conj(U)  iff  U^T M_i U = M_i, on members and
        // non-members alike.
        let mut s = ExactSampler::new(13);
        let mats = omega_matrices();
        for _ in 0..5 {
            let samples = [
                s.special_unitary(4),
                sample_spin3(&mut s),
                sample_spin4(&mut s),
                sample_spin5(&mut s),
                sample_so2(&mut s),
            ];
            for u in &samples {
                for (k, m) in mats.iter().enumerate() {
                    let linear = star_condition_matrix(u, k + 1).unwrap();
                    let quadratic = &(&u.transpose() * m.matrix()) * u == *m.matrix();
                    assert_eq!(linear, quadratic, "form {}", k + 1);
                }
            }
        }
    }

    #[test]
    fn stabilizer_dimensions_match_the_block_displays() {
        let s126 = stabilizer_space(&[1, 2, 6]).unwrap();
        assert_eq!(s126.real_dimension(), 4);
        assert!(pattern_match(&s126, BlockPattern::Spin3));
        assert!(!pattern_match(&s126, BlockPattern::Spin5));

        let s1 = stabilizer_space(&[1]).unwrap();
        assert_eq!(s1.real_dimension(), 16);
        assert!(pattern_match(&s1, BlockPattern::Spin5));

        let s12 = stabilizer_space(&[1, 2]).unwrap();
        assert_eq!(s12.real_dimension(), 8);
        assert!(pattern_match(&s12, BlockPattern::Spin4));

        let s1345 = stabilizer_space(&[1, 3, 4, 5]).unwrap();
        assert_eq!(s1345.real_dimension(), 2);
        assert!(pattern_match(&s1345, BlockPattern::So2InSu4));
        assert!(pattern_match(&s1345, BlockPattern::Spin2));
    }

    #[test]
    fn stabilizer_basis_satisfies_the_condition() {
        for fixed in [vec![1], vec![1, 2], vec![1, 2, 6], vec![1, 3, 4, 5]] {
            let spec = stabilizer_space(&fixed).unwrap();
            for u in &spec.basis {
                for &i in &spec.fixed_set {
                    assert!(star_condition_matrix(u, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn induced_action_identity_and_rotation() {
        let id = ExactMatrix::identity(4);
        let act = induced_orthogonal_action(&id, &[1, 2, 6]).unwrap();
        assert!(act.is_identity());

        let (z, w) = unit_z_w((3, 0, 5), (4, 0, 5));
        let u = spin3_element(&z, &w);
        let act = induced_orthogonal_action(&u, &[1, 2, 6]).unwrap();
        assert_eq!(act.rows(), 3);
        assert!((&act.transpose() * &act).is_identity());
        assert!(act.det().unwrap().is_one());
        assert!(!act.is_identity());
    }

    #[test]
    fn minus_identity_is_the_deck_transformation() {
        // z = -1, w = 0 gives -I, whose induced action is the identity:
        // the nontrivial element of the kernel of the double cover.
        let u = spin3_element(&gauss(-1, 0), &gauss(0, 0));
        assert_eq!(u, -&ExactMatrix::identity(4));
        let act = induced_orthogonal_action(&u, &[1, 2, 6]).unwrap();
        assert!(act.is_identity());
    }

    #[test]
    fn double_cover_on_samples_in_every_stabilizer() {
        let mut s = ExactSampler::new(2024);
        for _ in 0..5 {
            let cases: Vec<(ExactMatrix, Vec<usize>)> = vec![
                (sample_spin5(&mut s), vec![1]),
                (sample_spin4(&mut s), vec![1, 2]),
                (sample_spin3(&mut s), vec![1, 2, 6]),
                (sample_so2(&mut s), vec![1, 3, 4, 5]),
            ];
            for (u, fixed) in cases {
                let plus = induced_orthogonal_action(&u, &fixed).unwrap();
                let minus = induced_orthogonal_action(&-&u, &fixed).unwrap();
                assert_eq!(plus, minus);
            }
        }
    }

    #[test]
    fn kronecker_lift_trivial_case() {
        let id = ExactMatrix::identity(4);
        let report = kronecker_lift_check(&id, &id).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn kronecker_lift_displayed_sample() {
        let (z, w) = unit_z_w((3, 0, 5), (4, 0, 5));
        let u = spin3_element(&z, &w);
        let r = so2_element(&ratio(5, 13), &ratio(12, 13));
        let report = kronecker_lift_check(&u, &r).unwrap();
        assert!(report.lift_in_stabilizer);
        assert!(report.lift_in_solution_span);
        assert!(report.diagram_commutes);
    }

    #[test]
    fn kronecker_lift_randomized_suite() {
        let mut s = ExactSampler::new(99);
        for _ in 0..20 {
            let u = sample_spin3(&mut s);
            let r = sample_so2(&mut s);
            let report = kronecker_lift_check(&u, &r).unwrap();
            assert!(report.pass);
        }
    }

    #[test]
    fn kronecker_lift_rejects_pattern_mismatch() {
        let mut s = ExactSampler::new(5);
        let not_spin3 = s.special_unitary(4);
        let r = sample_so2(&mut s);
        assert!(matches!(
            kronecker_lift_check(&not_spin3, &r),
            Err(Lambda2Error::PatternMismatch("spin3"))
        ));
    }

    #[test]
    fn samples_are_exact_group_elements() {
        let mut s = ExactSampler::new(31);
        for _ in 0..5 {
            for (u, fixed) in [
                (sample_spin5(&mut s), vec![1]),
                (sample_spin4(&mut s), vec![1, 2]),
                (sample_spin3(&mut s), vec![1, 2, 6]),
                (sample_so2(&mut s), vec![1, 3, 4, 5]),
            ] {
                assert!(u.is_unitary());
                assert!(u.det().unwrap().is_one());
                for i in fixed {
                    assert!(star_condition_matrix(&u, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn unknown_pattern_name_errors() {
        assert!(matches!("so5".parse::<BlockPattern>(), Err(Lambda2Error::UnknownPattern(_))));
        assert!(matches!("spin4".parse::<BlockPattern>(), Ok(BlockPattern::Spin4)));
    }
}
