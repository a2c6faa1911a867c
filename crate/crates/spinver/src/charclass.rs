//! Truncated graded integer polynomials, torus-weight extraction from
//! the explicit matrix models, and the total-class identities relating
//! Pontrjagin, Chern, symplectic Pontrjagin, and Euler classes of the
//! associated bundles of the low spin groups.
//!
//! Weights are read off as exponent vectors of the monomial eigenvalues
//! of a diagonal torus acting on a weight basis; total classes are the
//! products p = prod(1 + w^2), c = prod(1 + w), sp = prod(1 + w^2),
//! e = prod w from the classical Borel-Hirzebruch calculus. Identities
//! are compared in the weight-variable ring, where the pullback along
//! EG/T -> BG is injective for these groups.

use crate::exact::{ExactMatrix, GaussianRational, Rational};
use crate::lambda2::{omega_basis, WEDGE_PAIRS};
use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum CharclassError {
    #[error("polynomials live in different rings")]
    MismatchedRing,
    #[error("Euler class undefined: a zero weight is present (odd orthogonal case)")]
    ZeroWeightInEuler,
    #[error("orientation list must match the number of weight pairs")]
    OrientationMismatch,
    #[error("representation {rep} is not defined for the {group} model")]
    RepNotAvailable { group: String, rep: String },
    #[error("torus action is not diagonal over monomials on the requested basis")]
    NonMonomialAction,
    #[error("nonzero weights do not come in +/- pairs")]
    UnbalancedPairs,
    #[error("expected {expected} torus parameters, got {got}")]
    WrongParamCount { expected: usize, got: usize },
    #[error("circle point is not on the unit circle")]
    BadCirclePoint,
    #[error("the identity set is defined for n in 3..=6, got {0}")]
    UnsupportedCase(u32),
}

/// Cohomological degree carried by each weight variable: "degree 4
/// cohomology" is total weight-degree 2 here.
pub const COHOMOLOGICAL_DEGREE_PER_VARIABLE: u32 = 2;

/// Integer multivariate polynomial truncated above a fixed total degree
/// in the weight variables.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedPoly {
    vars: Vec<String>,
    truncation_degree: u32,
    terms: BTreeMap<Vec<u8>, i64>,
}

impl GradedPoly {
    fn total_degree(exps: &[u8]) -> u32 {
        exps.iter().map(|&e| e as u32).sum()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u8]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    fn insert(&mut self, exps: Vec<u8>, coeff: i64) {
        if coeff == 0 || Self::total_degree(&exps) > self.truncation_degree {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn add(&self, rhs: &GradedPoly) -> Result<GradedPoly, CharclassError> {
        if self.vars != rhs.vars || self.truncation_degree != rhs.truncation_degree {
            return Err(CharclassError::MismatchedRing);
        }
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), *c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> GradedPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn scale(&self, k: i64) -> GradedPoly {
        let mut out = GradedPoly {
            vars: self.vars.clone(),
            truncation_degree: self.truncation_degree,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            out.insert(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, rhs: &GradedPoly) -> Result<GradedPoly, CharclassError> {
        if self.vars != rhs.vars || self.truncation_degree != rhs.truncation_degree {
            return Err(CharclassError::MismatchedRing);
        }
        let mut out = GradedPoly {
            vars: self.vars.clone(),
            truncation_degree: self.truncation_degree,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exps, ca * cb);
            }
        }
        Ok(out)
    }

    /// The homogeneous part of the given total weight-degree.
    pub fn graded_part(&self, degree: u32) -> GradedPoly {
        let mut out = GradedPoly {
            vars: self.vars.clone(),
            truncation_degree: self.truncation_degree,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if Self::total_degree(e) == degree {
                out.insert(e.clone(), *c);
            }
        }
        out
    }

    /// Re-truncate to a lower degree bound.
    pub fn truncate_to(&self, degree: u32) -> GradedPoly {
        let mut out = GradedPoly {
            vars: self.vars.clone(),
            truncation_degree: degree,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            out.insert(e.clone(), *c);
        }
        out
    }

    pub fn constant_term(&self) -> i64 {
        self.coefficient(&vec![0; self.vars.len()])
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedPoly {
    /// Canonical rendering: ascending total degree, then lexicographic
    /// exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u8>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            Self::total_degree(a).cmp(&Self::total_degree(b)).then_with(|| b.cmp(a))
        });
        for (pos, exps) in keys.iter().enumerate() {
            let coeff = self.terms[*exps];
            let magnitude = coeff.unsigned_abs();
            if pos == 0 {
                if coeff < 0 {
                    write!(f, "-")?;
                }
            } else if coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut monomial = String::new();
            for (v, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                monomial.push_str(&self.vars[v]);
                if e > 1 {
                    monomial.push_str(&format!("^{e}"));
                }
            }
            if monomial.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude == 1 {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{magnitude}{monomial}")?;
            }
        }
        Ok(())
    }
}

/// Exponent vector over the torus coordinates; the formal weight of a
/// monomial eigenvalue.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Weight {
    pub exponents: Vec<i32>,
}

impl Weight {
    pub fn new(exponents: Vec<i32>) -> Self {
        Weight { exponents }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { exponents: vec![0; rank] }
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn add(&self, rhs: &Weight) -> Weight {
        Weight {
            exponents: self.exponents.iter().zip(&rhs.exponents).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight { exponents: self.exponents.iter().map(|e| -e).collect() }
    }

    /// The representative whose first nonzero exponent is positive.
    /// All identities below are insensitive to this choice except the
    /// Euler sign, which is reported rather than normalized away.
    pub fn canonical_positive(&self) -> Weight {
        match self.exponents.iter().find(|&&e| e != 0) {
            Some(&e) if e < 0 => self.neg(),
            _ => self.clone(),
        }
    }

    fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (v, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e > 0 && !out.is_empty() {
                out.push('+');
            } else if e < 0 {
                out.push('-');
            }
            let mag = e.unsigned_abs();
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(&vars[v]);
        }
        out
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.exponents.len()).map(|k| format!("x{}", k + 1)).collect();
        write!(f, "{}", self.render(&vars))
    }
}

/// Factory for polynomials in a fixed variable set and truncation.
#[derive(Clone, Debug)]
pub struct PolyRing {
    vars: Vec<String>,
    truncation_degree: u32,
}

impl PolyRing {
    pub fn new(vars: &[&str], truncation_degree: u32) -> Self {
        PolyRing { vars: vars.iter().map(|s| s.to_string()).collect(), truncation_degree }
    }

    fn empty(&self) -> GradedPoly {
        GradedPoly {
            vars: self.vars.clone(),
            truncation_degree: self.truncation_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: i64) -> GradedPoly {
        let mut p = self.empty();
        p.insert(vec![0; self.vars.len()], c);
        p
    }

    pub fn one(&self) -> GradedPoly {
        self.constant(1)
    }

    pub fn zero(&self) -> GradedPoly {
        self.empty()
    }

    /// The linear polynomial of a weight.
    pub fn weight_poly(&self, w: &Weight) -> GradedPoly {
        assert_eq!(w.exponents.len(), self.vars.len(), "weight rank mismatch");
        let mut p = self.empty();
        for (v, &e) in w.exponents.iter().enumerate() {
            let mut exps = vec![0u8; self.vars.len()];
            exps[v] = 1;
            p.insert(exps, e as i64);
        }
        p
    }

    /// Total Pontrjagin class prod(1 + w_i^2) over pair representatives.
    pub fn pontrjagin_total(&self, pairs: &[Weight]) -> GradedPoly {
        let mut acc = self.one();
        for w in pairs {
            let wp = self.weight_poly(w);
            let factor = self.one().add(&wp.mul(&wp).unwrap()).unwrap();
            acc = acc.mul(&factor).unwrap();
        }
        acc
    }

    /// Total Chern class prod(1 + w_i) over the full weight list.
    pub fn chern_total(&self, weights: &[Weight]) -> GradedPoly {
        let mut acc = self.one();
        for w in weights {
            let factor = self.one().add(&self.weight_poly(w)).unwrap();
            acc = acc.mul(&factor).unwrap();
        }
        acc
    }

    /// Total symplectic Pontrjagin class prod(1 + w_i^2) over the
    /// quaternionic weight list.
    pub fn sp_total(&self, pairs: &[Weight]) -> GradedPoly {
        self.pontrjagin_total(pairs)
    }

    /// Top Euler class prod(+/- w_i) over pair representatives, with an
    /// orientation sign per pair. Undefined when a zero weight is
    /// present (the odd orthogonal case).
    pub fn euler_top(
        &self,
        pairs: &[Weight],
        orientation: &[i8],
    ) -> Result<GradedPoly, CharclassError> {
        if orientation.len() != pairs.len() {
            return Err(CharclassError::OrientationMismatch);
        }
        if pairs.iter().any(Weight::is_zero) {
            return Err(CharclassError::ZeroWeightInEuler);
        }
        let mut acc = self.one();
        for (w, &s) in pairs.iter().zip(orientation) {
            acc = acc.mul(&self.weight_poly(w).scale(s as i64)).unwrap();
        }
        Ok(acc)
    }
}

/// Which exceptional-isomorphism model the torus lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupTag {
    Spin3,
    Spin4,
    Spin5,
    Spin6,
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Spin3 => write!(f, "Spin(3)"),
            GroupTag::Spin4 => write!(f, "Spin(4)"),
            GroupTag::Spin5 => write!(f, "Spin(5)"),
            GroupTag::Spin6 => write!(f, "Spin(6)"),
        }
    }
}

/// Representation whose weights are being read off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepTag {
    /// The induced orthogonal action on the complementary omega span
    /// (the model of the covering map onto SO(n)).
    PiComplement,
    /// The defining quaternionic representation (Spin(3) and Spin(5)).
    RhoStd,
    /// The two Sp(1) factors of the Spin(4) model.
    Rho4Factor1,
    Rho4Factor2,
    /// The defining C^4 representation of the Spin(6) = SU(4) model.
    Rho6Defining,
}

impl fmt::Display for RepTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepTag::PiComplement => write!(f, "pi (omega-complement action)"),
            RepTag::RhoStd => write!(f, "rho (defining)"),
            RepTag::Rho4Factor1 => write!(f, "rho factor 1"),
            RepTag::Rho4Factor2 => write!(f, "rho factor 2"),
            RepTag::Rho6Defining => write!(f, "rho (defining C^4)"),
        }
    }
}

/// Diagonal maximal torus of one of the stabilizer models. The formal
/// diagonal entries are Laurent monomials recorded as weights; `embed`
/// realizes an actual diagonal matrix from integer parameters and an
/// exact rational point on the circle.
#[derive(Clone, Debug)]
pub struct TorusModel {
    pub group: GroupTag,
    pub rank: usize,
    diagonal: [Weight; 4],
}

impl TorusModel {
    pub fn spin3() -> Self {
        TorusModel {
            group: GroupTag::Spin3,
            rank: 1,
            diagonal: [
                Weight::new(vec![1]),
                Weight::new(vec![-1]),
                Weight::new(vec![1]),
                Weight::new(vec![-1]),
            ],
        }
    }

    pub fn spin4() -> Self {
        TorusModel {
            group: GroupTag::Spin4,
            rank: 2,
            diagonal: [
                Weight::new(vec![1, 0]),
                Weight::new(vec![-1, 0]),
                Weight::new(vec![0, 1]),
                Weight::new(vec![0, -1]),
            ],
        }
    }

    /// Same torus as the Spin(4) model; the ambient stabilizer differs.
    pub fn spin5() -> Self {
        TorusModel { group: GroupTag::Spin5, ..TorusModel::spin4() }
    }

    pub fn spin6() -> Self {
        TorusModel {
            group: GroupTag::Spin6,
            rank: 3,
            diagonal: [
                Weight::new(vec![1, 1, 1]),
                Weight::new(vec![-1, 0, 0]),
                Weight::new(vec![0, -1, 0]),
                Weight::new(vec![0, 0, -1]),
            ],
        }
    }

    pub fn for_group(group: GroupTag) -> Self {
        match group {
            GroupTag::Spin3 => TorusModel::spin3(),
            GroupTag::Spin4 => TorusModel::spin4(),
            GroupTag::Spin5 => TorusModel::spin5(),
            GroupTag::Spin6 => TorusModel::spin6(),
        }
    }

    pub fn diagonal_weights(&self) -> &[Weight; 4] {
        &self.diagonal
    }

    /// Omega indices fixed by the model's stabilizer.
    pub fn fixed_set(&self) -> Vec<usize> {
        match self.group {
            GroupTag::Spin3 => vec![1, 2, 6],
            GroupTag::Spin4 => vec![1, 2],
            GroupTag::Spin5 => vec![1],
            GroupTag::Spin6 => vec![],
        }
    }

    /// The diagonal matrix with entries z^<w, params> for an exact
    /// circle point z = a + bi. embed(0, .) = I and the map is a
    /// homomorphism in z for fixed parameters.
    pub fn embed(
        &self,
        params: &[i64],
        circle: &(Rational, Rational),
    ) -> Result<ExactMatrix, CharclassError> {
        if params.len() != self.rank {
            return Err(CharclassError::WrongParamCount { expected: self.rank, got: params.len() });
        }
        let (a, b) = circle;
        let z = Complex::new(a.clone(), b.clone());
        if !(z.clone() * z.conj()).is_one() {
            return Err(CharclassError::BadCirclePoint);
        }
        let mut m = ExactMatrix::zeros(4, 4);
        for (p, w) in self.diagonal.iter().enumerate() {
            let power: i64 = w.exponents.iter().zip(params).map(|(&e, &k)| e as i64 * k).sum();
            *m.at_mut(p, p) = unit_power(&z, power);
        }
        Ok(m)
    }
}

/// z^k for a unit-modulus z, with negative powers via conjugation.
fn unit_power(z: &GaussianRational, k: i64) -> GaussianRational {
    let base = if k >= 0 { z.clone() } else { z.conj() };
    let mut acc = GaussianRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Weights of a representation, bookkept the way the total-class
/// formulas consume them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightDiagram {
    /// One representative per +/- pair, plus the zero-weight count.
    RealOrthogonal { pairs: Vec<Weight>, zero_count: usize },
    /// One representative per +/- pair of the underlying U(2n) weights.
    Quaternionic { pairs: Vec<Weight> },
    /// The full weight list of a complex representation.
    ComplexList { weights: Vec<Weight> },
}

impl WeightDiagram {
    pub fn pairs(&self) -> &[Weight] {
        match self {
            WeightDiagram::RealOrthogonal { pairs, .. } => pairs,
            WeightDiagram::Quaternionic { pairs } => pairs,
            WeightDiagram::ComplexList { .. } => &[],
        }
    }
}

/// Reduce a full monomial list to canonical +/- pair representatives.
fn pair_up(monomials: &[Weight]) -> Result<(Vec<Weight>, usize), CharclassError> {
    let mut counts: BTreeMap<Weight, usize> = BTreeMap::new();
    let mut zeros = 0usize;
    for m in monomials {
        if m.is_zero() {
            zeros += 1;
        } else {
            *counts.entry(m.clone()).or_insert(0) += 1;
        }
    }
    let mut pairs = Vec::new();
    let keys: Vec<Weight> = counts.keys().cloned().collect();
    for key in keys {
        let canonical = key.canonical_positive();
        if canonical != key {
            continue; // handled from the positive side
        }
        let pos = counts.get(&key).copied().unwrap_or(0);
        let neg = counts.get(&key.neg()).copied().unwrap_or(0);
        if pos != neg {
            return Err(CharclassError::UnbalancedPairs);
        }
        for _ in 0..pos {
            pairs.push(canonical.clone());
        }
    }
    // Deterministic order with earlier variables taking priority.
    pairs.sort_by(|a, b| b.exponents.cmp(&a.exponents));
    Ok((pairs, zeros))
}

/// Read the weights of the requested representation off the diagonal
/// torus action.
///
/// For the complement action the wedge coordinates are grouped by their
/// monomial eigenvalue and intersected with the complementary omega
/// span; the intersection dimensions are the multiplicities. For the
/// defining representations the diagonal monomials are used directly.
pub fn weights_of_action(torus: &TorusModel, rep: RepTag) -> Result<WeightDiagram, CharclassError> {
    match (torus.group, rep) {
        (_, RepTag::PiComplement) => pi_complement_weights(torus),
        (GroupTag::Spin3, RepTag::RhoStd) => {
            let (pairs, zeros) = pair_up(&[torus.diagonal[0].clone(), torus.diagonal[1].clone()])?;
            debug_assert_eq!(zeros, 0);
            Ok(WeightDiagram::Quaternionic { pairs })
        }
        (GroupTag::Spin5, RepTag::RhoStd) => {
            let (pairs, zeros) = pair_up(torus.diagonal.as_ref())?;
            debug_assert_eq!(zeros, 0);
            Ok(WeightDiagram::Quaternionic { pairs })
        }
        (GroupTag::Spin4, RepTag::Rho4Factor1) => {
            let (pairs, _) = pair_up(&[torus.diagonal[0].clone(), torus.diagonal[1].clone()])?;
            Ok(WeightDiagram::Quaternionic { pairs })
        }
        (GroupTag::Spin4, RepTag::Rho4Factor2) => {
            let (pairs, _) = pair_up(&[torus.diagonal[2].clone(), torus.diagonal[3].clone()])?;
            Ok(WeightDiagram::Quaternionic { pairs })
        }
        (GroupTag::Spin6, RepTag::Rho6Defining) => {
            Ok(WeightDiagram::ComplexList { weights: torus.diagonal.to_vec() })
        }
        (group, rep) => {
            Err(CharclassError::RepNotAvailable { group: group.to_string(), rep: rep.to_string() })
        }
    }
}

fn pi_complement_weights(torus: &TorusModel) -> Result<WeightDiagram, CharclassError> {
    let fixed = torus.fixed_set();
    let complement: Vec<usize> = (1..=6).filter(|j| !fixed.contains(j)).collect();
    let basis = omega_basis();

    // Monomial of each wedge coordinate e_p ^ e_q.
    let coord_weights: Vec<Weight> = WEDGE_PAIRS
        .iter()
        .map(|&(p, q)| torus.diagonal[p - 1].add(&torus.diagonal[q - 1]))
        .collect();
    let mut groups: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (k, w) in coord_weights.iter().enumerate() {
        groups.entry(w.clone()).or_default().push(k);
    }

    // Columns of the complement span.
    let span_cols: Vec<Vec<GaussianRational>> =
        complement.iter().map(|&j| basis[j - 1].coords().to_vec()).collect();
    let span_dim = span_cols.len();

    let mut monomials: Vec<Weight> = Vec::new();
    let mut accounted = 0usize;
    for (weight, coords) in &groups {
        // dim(V cap W) = dim V + dim W - dim(V + W), all exact.
        let mut cols = span_cols.clone();
        for &k in coords {
            let mut unit = vec![GaussianRational::zero(); 6];
            unit[k] = GaussianRational::one();
            cols.push(unit);
        }
        let joint = ExactMatrix::from_rows(cols).transpose();
        let dim = span_dim + coords.len() - joint.rank();
        for _ in 0..dim {
            monomials.push(weight.clone());
        }
        accounted += dim;
    }
    if accounted != span_dim {
        return Err(CharclassError::NonMonomialAction);
    }
    let (pairs, zero_count) = pair_up(&monomials)?;
    Ok(WeightDiagram::RealOrthogonal { pairs, zero_count })
}

/// One verified identity between characteristic classes.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    /// For sign-ambiguous identities, the sign that makes them hold
    /// (+1 or -1); None when the identity is sign-free or failed.
    pub realized_sign: Option<i32>,
}

/// Outcome of the degree-4/degree-6 comparisons for one n.
#[derive(Debug, Clone, Serialize)]
pub struct CohomologyReport {
    pub n: u32,
    pub pi_pairs: Vec<String>,
    pub pi_zero_weights: usize,
    pub checks: Vec<IdentityCheck>,
    pub notes: Vec<String>,
    pub pass: bool,
}

/// Verify the characteristic-class identities for n in 3..=6, computing
/// both sides from independently derived weights.
pub fn verify_lemma_cohomo(n: u32) -> Result<CohomologyReport, CharclassError> {
    verify_lemma_cohomo_with(n, false)
}

/// As `verify_lemma_cohomo`, optionally substituting the known bad
/// transcription of the n = 6 weight list (the variant with a repeated
/// entry) so the failure it causes can be demonstrated.
pub fn verify_lemma_cohomo_with(
    n: u32,
    use_typo_weights: bool,
) -> Result<CohomologyReport, CharclassError> {
    if !(3..=6).contains(&n) {
        return Err(CharclassError::UnsupportedCase(n));
    }
    let group = match n {
        3 => GroupTag::Spin3,
        4 => GroupTag::Spin4,
        5 => GroupTag::Spin5,
        _ => GroupTag::Spin6,
    };
    let torus = TorusModel::for_group(group);
    let var_names: Vec<String> = if torus.rank == 1 {
        vec!["x".to_string()]
    } else {
        (1..=torus.rank).map(|k| format!("x{k}")).collect()
    };
    let var_refs: Vec<&str> = var_names.iter().map(String::as_str).collect();
    let ring = PolyRing::new(&var_refs, 4);

    let pi = weights_of_action(&torus, RepTag::PiComplement)?;
    let (mut pi_pairs, pi_zeros) = match &pi {
        WeightDiagram::RealOrthogonal { pairs, zero_count } => (pairs.clone(), *zero_count),
        _ => unreachable!("complement action is real orthogonal"),
    };

    let mut notes = Vec::new();
    if n == 6 {
        let derived: Vec<String> = pi_pairs.iter().map(|w| format!("+/-({w})")).collect();
        notes.push(format!(
            "derived weight pairs of the 6-dimensional action: {}; the frequently \
             transcribed variant (-x2-x3, -x1-x3, -x2-x3) repeats an entry, and the \
             corrected third weight is -x1-x2",
            derived.join(", ")
        ));
        notes.push(
            "the companion Chern display written in (x, y, z) with all plus signs differs \
             from the derived weights by a variable substitution and sign convention"
                .to_string(),
        );
        if use_typo_weights {
            pi_pairs = vec![
                Weight::new(vec![0, 1, 1]),
                Weight::new(vec![1, 0, 1]),
                Weight::new(vec![0, 1, 1]),
            ];
            notes.push("running with the repeated-entry weight variant".to_string());
        }
    }

    let p_total = ring.pontrjagin_total(&pi_pairs);
    let p1 = p_total.graded_part(2);
    let mut checks = Vec::new();

    match n {
        3 => {
            let rho = weights_of_action(&torus, RepTag::RhoStd)?;
            let sp1 = ring.sp_total(rho.pairs()).graded_part(2);
            let rhs = sp1.scale(4);
            checks.push(IdentityCheck {
                name: "p1 = 4 sp1".to_string(),
                lhs: p1.to_string(),
                rhs: rhs.to_string(),
                holds: p1 == rhs,
                realized_sign: None,
            });
        }
        4 => {
            let s1 = ring
                .sp_total(weights_of_action(&torus, RepTag::Rho4Factor1)?.pairs())
                .graded_part(2);
            let s2 = ring
                .sp_total(weights_of_action(&torus, RepTag::Rho4Factor2)?.pairs())
                .graded_part(2);
            let rhs = s1.scale(2).add(&s2.scale(2)).unwrap();
            checks.push(IdentityCheck {
                name: "p1 = 2 sp1' + 2 sp1''".to_string(),
                lhs: p1.to_string(),
                rhs: rhs.to_string(),
                holds: p1 == rhs,
                realized_sign: None,
            });
            let orientation = vec![1i8; pi_pairs.len()];
            let e = ring.euler_top(&pi_pairs, &orientation)?;
            let diff = s1.add(&s2.neg()).unwrap();
            let (holds, sign) = match_up_to_sign(&e, &diff);
            notes.push(
                "swapping which Sp(1) factor carries label 1 flips the realized Euler sign"
                    .to_string(),
            );
            checks.push(IdentityCheck {
                name: "e = +/-(sp1' - sp1'')".to_string(),
                lhs: e.to_string(),
                rhs: diff.to_string(),
                holds,
                realized_sign: sign,
            });
        }
        5 => {
            let rho = weights_of_action(&torus, RepTag::RhoStd)?;
            let sp1 = ring.sp_total(rho.pairs()).graded_part(2);
            let rhs = sp1.scale(2);
            checks.push(IdentityCheck {
                name: "p1 = 2 sp1".to_string(),
                lhs: p1.to_string(),
                rhs: rhs.to_string(),
                holds: p1 == rhs,
                realized_sign: None,
            });
        }
        _ => {
            let rho = weights_of_action(&torus, RepTag::Rho6Defining)?;
            let weights = match &rho {
                WeightDiagram::ComplexList { weights } => weights.clone(),
                _ => unreachable!(),
            };
            let c_total = ring.chern_total(&weights);
            let c1 = c_total.graded_part(1);
            checks.push(IdentityCheck {
                name: "c1 = 0".to_string(),
                lhs: c1.to_string(),
                rhs: "0".to_string(),
                holds: c1.is_zero(),
                realized_sign: None,
            });
            let c2 = c_total.graded_part(2);
            let rhs = c2.scale(-2);
            checks.push(IdentityCheck {
                name: "p1 = -2 c2".to_string(),
                lhs: p1.to_string(),
                rhs: rhs.to_string(),
                holds: p1 == rhs,
                realized_sign: None,
            });
            let orientation = vec![1i8; pi_pairs.len()];
            let e = ring.euler_top(&pi_pairs, &orientation)?;
            let c3 = c_total.graded_part(3);
            let (holds, sign) = match_up_to_sign(&e, &c3);
            checks.push(IdentityCheck {
                name: "e = +/-c3".to_string(),
                lhs: e.to_string(),
                rhs: c3.to_string(),
                holds,
                realized_sign: sign,
            });
        }
    }

    let pass = checks.iter().all(|c| c.holds);
    Ok(CohomologyReport {
        n,
        pi_pairs: pi_pairs.iter().map(|w| format!("+/-({w})")).collect(),
        pi_zero_weights: pi_zeros,
        checks,
        notes,
        pass,
    })
}

/// Does lhs equal +rhs or -rhs? Returns the verdict and the realized
/// sign if either matches.
fn match_up_to_sign(lhs: &GradedPoly, rhs: &GradedPoly) -> (bool, Option<i32>) {
    if lhs == rhs {
        (true, Some(1))
    } else if *lhs == rhs.neg() {
        (true, Some(-1))
    } else {
        (false, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio, ExactSampler};

    fn w(exps: &[i32]) -> Weight {
        Weight::new(exps.to_vec())
    }

    #[test]
    fn pontrjagin_total_single_and_empty() {
        let ring = PolyRing::new(&["x"], 4);
        let p = ring.pontrjagin_total(&[w(&[2])]);
        assert_eq!(p.to_string(), "1 + 4x^2");
        assert_eq!(ring.pontrjagin_total(&[]), ring.one());
    }

    #[test]
    fn pontrjagin_total_two_pairs() {
        let ring = PolyRing::new(&["x1", "x2"], 4);
        // (1 + (x1+x2)^2)(1 + (x1-x2)^2), stated with the signs of the
        // classical display; squares kill the representative signs.
        let lhs = ring.pontrjagin_total(&[w(&[-1, -1]), w(&[-1, 1])]);
        let rhs = ring.pontrjagin_total(&[w(&[1, 1]), w(&[1, -1])]);
        assert_eq!(lhs, rhs);
        let p1 = lhs.graded_part(2);
        assert_eq!(p1.to_string(), "2x1^2 + 2x2^2");
    }

    #[test]
    fn chern_total_cases() {
        let ring = PolyRing::new(&["x1", "x2", "x3"], 4);
        assert_eq!(ring.chern_total(&[Weight::zero(3)]), ring.one());
        let weights = vec![w(&[1, 1, 1]), w(&[-1, 0, 0]), w(&[0, -1, 0]), w(&[0, 0, -1])];
        let c = ring.chern_total(&weights);
        assert!(c.graded_part(1).is_zero(), "c1 = sum of weights = 0 for SU(4)");
        // Degree-2 part is the second elementary symmetric polynomial.
        let mut e2 = ring.zero();
        for i in 0..4 {
            for j in i + 1..4 {
                e2 = e2
                    .add(
                        &ring.weight_poly(&weights[i]).mul(&ring.weight_poly(&weights[j])).unwrap(),
                    )
                    .unwrap();
            }
        }
        assert_eq!(c.graded_part(2), e2);
    }

    #[test]
    fn sp_total_cases() {
        let ring1 = PolyRing::new(&["x"], 4);
        assert_eq!(ring1.sp_total(&[w(&[1])]).to_string(), "1 + x^2");
        assert_eq!(ring1.sp_total(&[]), ring1.one());
        let ring2 = PolyRing::new(&["x1", "x2"], 4);
        let sp = ring2.sp_total(&[w(&[1, 0]), w(&[0, 1])]);
        assert_eq!(sp.to_string(), "1 + x1^2 + x2^2 + x1^2x2^2");
    }

    #[test]
    fn euler_top_cases() {
        let ring = PolyRing::new(&["x1", "x2"], 4);
        let e = ring.euler_top(&[w(&[-1, -1]), w(&[-1, 1])], &[1, 1]).unwrap();
        assert_eq!(e.to_string(), "x1^2 - x2^2");
        let ring1 = PolyRing::new(&["x"], 4);
        let flipped = ring1.euler_top(&[w(&[2])], &[-1]).unwrap();
        assert_eq!(flipped.to_string(), "-2x");
        assert!(matches!(
            ring1.euler_top(&[Weight::zero(1)], &[1]),
            Err(CharclassError::ZeroWeightInEuler)
        ));
    }

    #[test]
    fn euler_matches_c3_up_to_sign_for_three_pairs() {
        let ring = PolyRing::new(&["x1", "x2", "x3"], 4);
        let pairs = vec![w(&[0, 1, 1]), w(&[1, 0, 1]), w(&[1, 1, 0])];
        let e = ring.euler_top(&pairs, &[1, 1, 1]).unwrap();
        let su4 = vec![w(&[1, 1, 1]), w(&[-1, 0, 0]), w(&[0, -1, 0]), w(&[0, 0, -1])];
        let c3 = ring.chern_total(&su4).graded_part(3);
        let (holds, sign) = match_up_to_sign(&e, &c3);
        assert!(holds);
        assert_eq!(sign, Some(1));
    }

    #[test]
    fn total_classes_are_unit_and_multiplicative() {
        let ring = PolyRing::new(&["x1", "x2"], 4);
        let a = vec![w(&[1, 0]), w(&[1, 1])];
        let b = vec![w(&[0, 1])];
        let joined: Vec<Weight> = a.iter().chain(&b).cloned().collect();
        let lhs = ring.pontrjagin_total(&joined);
        let rhs = ring.pontrjagin_total(&a).mul(&ring.pontrjagin_total(&b)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.constant_term(), 1);
        assert_eq!(ring.chern_total(&joined).constant_term(), 1);
    }

    #[test]
    fn truncation_commutes_with_multiplication() {
        let mut s = ExactSampler::new(7);
        let wide = PolyRing::new(&["x1", "x2"], 6);
        for _ in 0..20 {
            let mut a = wide.zero();
            let mut b = wide.zero();
            for _ in 0..4 {
                let e1 = s.int_in(0, 3) as u8;
                let e2 = s.int_in(0, 3) as u8;
                let c = s.int_in(-4, 4);
                a = a.add(&monomial(&wide, &[e1, e2], c)).unwrap();
                let e1 = s.int_in(0, 3) as u8;
                let e2 = s.int_in(0, 3) as u8;
                let c = s.int_in(-4, 4);
                b = b.add(&monomial(&wide, &[e1, e2], c)).unwrap();
            }
            let truncated_then_mul =
                a.truncate_to(3).mul(&b.truncate_to(3)).unwrap().truncate_to(3);
            let mul_then_truncated = a.mul(&b).unwrap().truncate_to(3);
            assert_eq!(truncated_then_mul, mul_then_truncated);
        }
    }

    fn monomial(ring: &PolyRing, exps: &[u8], coeff: i64) -> GradedPoly {
        let mut p = ring.constant(coeff);
        for (v, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                let mut lin = Weight::zero(exps.len());
                lin.exponents[v] = 1;
                p = p.mul(&ring.weight_poly(&lin)).unwrap();
            }
        }
        p
    }

    #[test]
    fn pi_weights_match_the_classical_displays() {
        // Spin(3): one pair +/-2x and one zero weight.
        let d = weights_of_action(&TorusModel::spin3(), RepTag::PiComplement).unwrap();
        assert_eq!(d, WeightDiagram::RealOrthogonal { pairs: vec![w(&[2])], zero_count: 1 });

        // Spin(4): pairs +/-(x1+x2), +/-(x1-x2), no zero weight.
        let d = weights_of_action(&TorusModel::spin4(), RepTag::PiComplement).unwrap();
        assert_eq!(
            d,
            WeightDiagram::RealOrthogonal { pairs: vec![w(&[1, 1]), w(&[1, -1])], zero_count: 0 }
        );

        // Spin(5): same pairs as Spin(4) plus one zero weight.
        let d = weights_of_action(&TorusModel::spin5(), RepTag::PiComplement).unwrap();
        assert_eq!(
            d,
            WeightDiagram::RealOrthogonal { pairs: vec![w(&[1, 1]), w(&[1, -1])], zero_count: 1 }
        );

        // Spin(6): the derived list, with third pair +/-(x1+x2) rather
        // than a repeat of +/-(x2+x3).
        let d = weights_of_action(&TorusModel::spin6(), RepTag::PiComplement).unwrap();
        assert_eq!(
            d,
            WeightDiagram::RealOrthogonal {
                pairs: vec![w(&[1, 1, 0]), w(&[1, 0, 1]), w(&[0, 1, 1])],
                zero_count: 0
            }
        );
    }

    #[test]
    fn rho_weights_match_the_models() {
        let d = weights_of_action(&TorusModel::spin3(), RepTag::RhoStd).unwrap();
        assert_eq!(d, WeightDiagram::Quaternionic { pairs: vec![w(&[1])] });
        let d = weights_of_action(&TorusModel::spin5(), RepTag::RhoStd).unwrap();
        assert_eq!(d, WeightDiagram::Quaternionic { pairs: vec![w(&[1, 0]), w(&[0, 1])] });
        let d = weights_of_action(&TorusModel::spin4(), RepTag::Rho4Factor1).unwrap();
        assert_eq!(d, WeightDiagram::Quaternionic { pairs: vec![w(&[1, 0])] });
        let d = weights_of_action(&TorusModel::spin6(), RepTag::Rho6Defining).unwrap();
        assert_eq!(
            d,
            WeightDiagram::ComplexList {
                weights: vec![w(&[1, 1, 1]), w(&[-1, 0, 0]), w(&[0, -1, 0]), w(&[0, 0, -1])]
            }
        );
        assert!(weights_of_action(&TorusModel::spin6(), RepTag::RhoStd).is_err());
    }

    #[test]
    fn induced_action_trace_matches_the_weight_diagram() {
        // The character check: the trace of the actual rotation induced
        // by an embedded torus element must equal
        // zero_count + sum over pairs of 2 Re(z^<w, k>), exactly.
        let mut s = ExactSampler::new(21);
        for group in [GroupTag::Spin3, GroupTag::Spin4, GroupTag::Spin5, GroupTag::Spin6] {
            let model = TorusModel::for_group(group);
            let diagram = weights_of_action(&model, RepTag::PiComplement).unwrap();
            let WeightDiagram::RealOrthogonal { pairs, zero_count } = &diagram else {
                unreachable!()
            };
            for _ in 0..4 {
                let params: Vec<i64> = (0..model.rank).map(|_| s.int_in(-2, 2)).collect();
                let point = s.circle_point();
                let u = model.embed(&params, &point).unwrap();
                let act =
                    crate::lambda2::induced_orthogonal_action(&u, &model.fixed_set()).unwrap();
                let mut trace = GaussianRational::zero();
                for i in 0..act.rows() {
                    trace = trace + act.at(i, i);
                }
                let z = Complex::new(point.0.clone(), point.1.clone());
                let mut expected = crate::exact::gauss(*zero_count as i64, 0);
                for pair in pairs {
                    let power: i64 =
                        pair.exponents.iter().zip(&params).map(|(&e, &k)| e as i64 * k).sum();
                    let eig = unit_power(&z, power);
                    expected = expected + &eig + eig.conj();
                }
                assert_eq!(trace, expected, "character mismatch for {group} at {params:?}");
            }
        }
    }

    #[test]
    fn pi_weights_stable_under_parameter_negation() {
        for group in [GroupTag::Spin3, GroupTag::Spin4, GroupTag::Spin5, GroupTag::Spin6] {
            let model = TorusModel::for_group(group);
            let mut negated = model.clone();
            for d in &mut negated.diagonal {
                *d = d.neg();
            }
            let a = weights_of_action(&model, RepTag::PiComplement).unwrap();
            let b = weights_of_action(&negated, RepTag::PiComplement).unwrap();
            assert_eq!(a, b, "canonical pair lists agree for {group}");
        }
    }

    #[test]
    fn torus_embed_is_a_homomorphism_and_diagonalizes_the_wedge_coords() {
        let mut s = ExactSampler::new(12);
        for group in [GroupTag::Spin3, GroupTag::Spin4, GroupTag::Spin5, GroupTag::Spin6] {
            let model = TorusModel::for_group(group);
            let params: Vec<i64> = (0..model.rank).map(|_| s.int_in(-2, 2)).collect();
            let zero_params = vec![0i64; model.rank];
            let p1 = s.circle_point();
            let p2 = s.circle_point();
            assert!(model.embed(&zero_params, &p1).unwrap().is_identity());

            // Homomorphism in the circle point.
            let z1 = Complex::new(p1.0.clone(), p1.1.clone());
            let z2 = Complex::new(p2.0.clone(), p2.1.clone());
            let prod = z1 * z2;
            let prod_point = (prod.re.clone(), prod.im.clone());
            let lhs = model.embed(&params, &prod_point).unwrap();
            let rhs = crate::exact::mat_mul(
                &model.embed(&params, &p1).unwrap(),
                &model.embed(&params, &p2).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, rhs);

            // Wedge coordinates scale by the formal monomials.
            let u = model.embed(&params, &p1).unwrap();
            let z = Complex::new(p1.0.clone(), p1.1.clone());
            for (k, &(p, q)) in WEDGE_PAIRS.iter().enumerate() {
                let mu = model.diagonal[p - 1].add(&model.diagonal[q - 1]);
                let power: i64 =
                    mu.exponents.iter().zip(&params).map(|(&e, &k)| e as i64 * k).sum();
                let expected = unit_power(&z, power);
                let form =
                    crate::lambda2::TwoForm::from_terms(&[(p, q, crate::exact::gauss(1, 0))]);
                let moved = crate::lambda2::TwoForm::from_matrix(&form.to_matrix().apply(&u));
                assert_eq!(*moved.coeff(p, q), expected, "coordinate {k} of {group}");
            }
        }
    }

    #[test]
    fn lemma_identities_all_cases() {
        for n in 3..=6 {
            let report = verify_lemma_cohomo(n).unwrap();
            assert!(report.pass, "identities fail at n={n}: {:?}", report.checks);
        }
        assert!(verify_lemma_cohomo(7).is_err());
    }

    #[test]
    fn lemma_n6_flags_the_weight_correction() {
        let report = verify_lemma_cohomo(6).unwrap();
        assert!(report.notes.iter().any(|n| n.contains("-x1-x2")));
        assert!(report.notes.iter().any(|n| n.contains("repeats an entry")));
    }

    #[test]
    fn lemma_n6_fails_with_the_repeated_weight_variant() {
        let report = verify_lemma_cohomo_with(6, true).unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn lemma_n4_realizes_a_sign() {
        let report = verify_lemma_cohomo(4).unwrap();
        let euler = report.checks.iter().find(|c| c.name.starts_with("e =")).unwrap();
        assert!(euler.holds);
        assert!(euler.realized_sign.is_some());
    }

    #[test]
    fn bad_circle_point_is_rejected() {
        let model = TorusModel::spin3();
        assert!(matches!(
            model.embed(&[1], &(rat(1), rat(1))),
            Err(CharclassError::BadCirclePoint)
        ));
        assert!(model.embed(&[1], &(ratio(3, 5), ratio(4, 5))).is_ok());
        assert!(matches!(
            model.embed(&[1, 2], &(rat(1), rat(0))),
            Err(CharclassError::WrongParamCount { .. })
        ));
    }
}
