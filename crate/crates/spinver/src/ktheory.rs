//! The cohomology ring of CP^3, the reduced K/KO/KSP group models, and
//! the spin-bundle classification counts.
//!
//! The group presentations are encoded data with their classical
//! citations (reduced KO of CP^3 is infinite cyclic via p1; reduced KSP
//! is Z (+) Z/2 with sp1 the projection onto Z; the total Chern class
//! embeds reduced K with image exactly the classes with even c3), not
//! recomputed from a K-theory engine; everything downstream of the
//! presentations is verified exactly.

use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, thiserror::Error)]
pub enum KTheoryError {
    #[error("rank {0} is outside the classification (rank must be >= 2)")]
    UnsupportedRank(u32),
    #[error("constraint violated: {0}")]
    ParityViolation(String),
    #[error("the rank-{0} classification does not take an Euler coefficient")]
    UnexpectedEuler(u32),
    #[error("the rank-{0} classification requires an Euler coefficient")]
    MissingEuler(u32),
    #[error("total Chern class with odd c3 is outside the image of reduced K-theory")]
    ChernImage,
    #[error("rho value lies in {found}, but rank {rank} requires {expected}")]
    RhoGroupMismatch { rank: u32, expected: &'static str, found: &'static str },
}

/// Element a0 + a1*x + a2*x^2 + a3*x^3 of the cohomology ring of CP^3,
/// where x is the degree-2 generator and x^4 = 0.
#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CohCP3 {
    pub coeffs: [i64; 4],
}

impl CohCP3 {
    pub fn zero() -> Self {
        CohCP3 { coeffs: [0; 4] }
    }

    pub fn scalar(a: i64) -> Self {
        CohCP3 { coeffs: [a, 0, 0, 0] }
    }

    /// c * x^k.
    pub fn x_pow(k: usize, c: i64) -> Self {
        let mut coeffs = [0; 4];
        coeffs[k] = c;
        CohCP3 { coeffs }
    }

    pub fn x() -> Self {
        CohCP3::x_pow(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0; 4]
    }

    /// Coefficient of x^k.
    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs[k]
    }
}

impl Add for CohCP3 {
    type Output = CohCP3;
    fn add(self, rhs: CohCP3) -> CohCP3 {
        CohCP3 { coeffs: std::array::from_fn(|k| self.coeffs[k] + rhs.coeffs[k]) }
    }
}

impl Sub for CohCP3 {
    type Output = CohCP3;
    fn sub(self, rhs: CohCP3) -> CohCP3 {
        self + (-rhs)
    }
}

impl Neg for CohCP3 {
    type Output = CohCP3;
    fn neg(self) -> CohCP3 {
        CohCP3 { coeffs: std::array::from_fn(|k| -self.coeffs[k]) }
    }
}

impl Mul for CohCP3 {
    type Output = CohCP3;
    fn mul(self, rhs: CohCP3) -> CohCP3 {
        let mut coeffs = [0i64; 4];
        for i in 0..4 {
            for j in 0..4 - i {
                coeffs[i + j] += self.coeffs[i] * rhs.coeffs[j];
            }
        }
        CohCP3 { coeffs }
    }
}

impl fmt::Display for CohCP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.unsigned_abs();
            match k {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "x")?;
                }
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "x^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CohCP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of reduced KSP(CP^3) = Z (+) Z/2.
#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KSPClass {
    pub free_part: i64,
    pub torsion: bool,
}

impl KSPClass {
    pub fn new(free_part: i64, torsion: bool) -> Self {
        KSPClass { free_part, torsion }
    }

    pub fn zero() -> Self {
        KSPClass::new(0, false)
    }
}

impl Add for KSPClass {
    type Output = KSPClass;
    fn add(self, rhs: KSPClass) -> KSPClass {
        KSPClass::new(self.free_part + rhs.free_part, self.torsion ^ rhs.torsion)
    }
}

impl Neg for KSPClass {
    type Output = KSPClass;
    fn neg(self) -> KSPClass {
        KSPClass::new(-self.free_part, self.torsion)
    }
}

impl fmt::Display for KSPClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.free_part, u8::from(self.torsion))
    }
}

impl fmt::Debug for KSPClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of reduced KO(CP^3) = Z (the first Pontrjagin class is an
/// isomorphism onto H^4).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct KOClass {
    pub free_part: i64,
}

/// Element of reduced K(CP^3), recorded by its total Chern class
/// 1 + c1 x + c2 x^2 + c3 x^3; membership requires c3 even.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct KClass {
    pub c1: i64,
    pub c2: i64,
    pub c3: i64,
}

impl KClass {
    pub fn new(c1: i64, c2: i64, c3: i64) -> Result<Self, KTheoryError> {
        if !chern_image_member(c1, c2, c3) {
            return Err(KTheoryError::ChernImage);
        }
        Ok(KClass { c1, c2, c3 })
    }
}

/// The canonical projection reduced KSP -> Z given by the first
/// symplectic Pontrjagin class (sign fixed to +; divisibility
/// conclusions do not depend on it).
pub fn sp1_of_ksp(k: &KSPClass) -> i64 {
    k.free_part
}

/// True iff k = j + j for some j in Z (+) Z/2: the free part must be
/// even and the torsion bit clear (doubling kills torsion).
pub fn divisible_by_two(k: &KSPClass) -> bool {
    k.free_part % 2 == 0 && !k.torsion
}

/// True iff 1 + c1 x + c2 x^2 + c3 x^3 is the total Chern class of a
/// reduced K-theory class of CP^3: exactly the classes with c3 even.
pub fn chern_image_member(c1: i64, c2: i64, c3: i64) -> bool {
    let _ = (c1, c2);
    c3 % 2 == 0
}

/// Which reduced K-group carries the rho invariant at the given rank.
pub fn rho_group_for_rank(rank: u32) -> &'static str {
    match rank % 8 {
        1 => "KO",
        2 => "K",
        3 => "KSP",
        4 => "KSP (+) KSP",
        5 => "KSP",
        6 => "K",
        7 => "KO",
        _ => "KO (+) KO",
    }
}

/// A rho invariant value in the group the rank calls for.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum RhoClass {
    Ksp(KSPClass),
    KspPair(KSPClass, KSPClass),
    K(KClass),
    Ko(KOClass),
    KoPair(KOClass, KOClass),
}

impl RhoClass {
    fn group_name(&self) -> &'static str {
        match self {
            RhoClass::Ksp(_) => "KSP",
            RhoClass::KspPair(..) => "KSP (+) KSP",
            RhoClass::K(_) => "K",
            RhoClass::Ko(_) => "KO",
            RhoClass::KoPair(..) => "KO (+) KO",
        }
    }
}

impl fmt::Display for RhoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoClass::Ksp(k) => write!(f, "{k} in KSP"),
            RhoClass::KspPair(a, b) => write!(f, "({a}, {b}) in KSP (+) KSP"),
            RhoClass::K(k) => write!(f, "(c1={}, c2={}, c3={}) in K", k.c1, k.c2, k.c3),
            RhoClass::Ko(k) => write!(f, "{} in KO", k.free_part),
            RhoClass::KoPair(a, b) => write!(f, "({}, {}) in KO (+) KO", a.free_part, b.free_part),
        }
    }
}

/// A real spin bundle over CP^3 by its characteristic data.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BundleDescriptor {
    pub name: String,
    pub rank: u32,
    /// Degree-4 part of the total Pontrjagin class.
    pub p1: CohCP3,
    /// Second Stiefel-Whitney class as a bit; 0 is required for spin.
    pub w2: bool,
    /// Euler class, present only for even rank with a chosen
    /// orientation.
    pub euler: Option<CohCP3>,
    /// The rho invariant, when known; its group must match the rank.
    pub rho: Option<RhoClass>,
}

impl BundleDescriptor {
    pub fn new(name: &str, rank: u32, p1: CohCP3) -> Self {
        BundleDescriptor { name: name.to_string(), rank, p1, w2: false, euler: None, rho: None }
    }

    pub fn with_euler(mut self, e: CohCP3) -> Self {
        assert!(self.rank.is_multiple_of(2), "Euler class requires an even-rank oriented bundle");
        self.euler = Some(e);
        self
    }

    pub fn with_rho(mut self, rho: RhoClass) -> Result<Self, KTheoryError> {
        let expected = rho_group_for_rank(self.rank);
        if rho.group_name() != expected {
            return Err(KTheoryError::RhoGroupMismatch {
                rank: self.rank,
                expected,
                found: rho.group_name(),
            });
        }
        self.rho = Some(rho);
        Ok(self)
    }

    pub fn is_spin(&self) -> bool {
        !self.w2
    }
}

/// Sum of the p1 classes of two bundles (the Whitney formula for p1;
/// the 2-torsion correction vanishes since H*(CP^3; Z) is torsion-free).
pub fn whitney_p1(a: &BundleDescriptor, b: &BundleDescriptor) -> CohCP3 {
    a.p1 + b.p1
}

/// Structured certificate behind a classification count: which reduced
/// K-group parametrizes the bundles, how many classes hit the data, and
/// how many spin structures each admits.
#[derive(Clone, Debug, Serialize)]
pub struct SpinClassification {
    pub n: u32,
    pub p1_coeff: i64,
    pub euler_coeff: Option<i64>,
    pub count: u64,
    pub k_group: String,
    pub fiber_size: u64,
    pub spin_structures: u64,
    /// KSP classes of the bundles, for the ranks where rho is
    /// KSP-valued.
    pub ksp_classes: Vec<KSPClass>,
    /// Rendered witnesses for every rank.
    pub classes: Vec<String>,
    pub notes: Vec<String>,
}

fn is_perfect_square(v: i64) -> Option<i64> {
    if v < 0 {
        return None;
    }
    let r = (v as f64).sqrt().round() as i64;
    [r - 1, r, r + 1].into_iter().find(|&cand| cand >= 0 && cand * cand == v)
}

/// Number of spin bundles of the given rank over CP^3 with
/// p1 = p1_coeff * x^2 (and Euler class euler_coeff * x^2 for rank 4,
/// euler_coeff * x^3 for rank 6), with the structured witness.
///
/// The counts arise as (number of K-classes hitting the data) times
/// (number of spin structures per underlying SO-bundle); the second
/// factor is always 1 here since H^1(CP^3; Z/2) = 0.
pub fn classify_spin_bundles(
    n: u32,
    p1_coeff: i64,
    euler_coeff: Option<i64>,
) -> Result<SpinClassification, KTheoryError> {
    if n < 2 {
        return Err(KTheoryError::UnsupportedRank(n));
    }
    let mut out = SpinClassification {
        n,
        p1_coeff,
        euler_coeff,
        count: 0,
        k_group: String::new(),
        fiber_size: 0,
        spin_structures: 1,
        ksp_classes: Vec::new(),
        classes: Vec::new(),
        notes: vec!["spin structures are unique on CP^3: H^1(CP^3; Z/2) = 0".to_string()],
    };
    match n {
        2 => {
            if euler_coeff.is_some() {
                return Err(KTheoryError::UnexpectedEuler(2));
            }
            if p1_coeff % 4 != 0 {
                return Err(KTheoryError::ParityViolation(
                    "rank 2: p1 must be 4k^2 x^2 (p1 = e^2 with even Euler class e = 2kx)"
                        .to_string(),
                ));
            }
            let Some(k) = is_perfect_square(p1_coeff / 4) else {
                return Err(KTheoryError::ParityViolation(
                    "rank 2: p1/4 must be a perfect square (p1 = (2kx)^2)".to_string(),
                ));
            };
            out.k_group = "SO(2) bundles with even Euler class (H^2 = Z)".to_string();
            out.notes.push(
                "all classes are written in the generator x of H^2 (Euler classes 2kx, \
                 p1 = 4k^2 x^2)"
                    .to_string(),
            );
            if k == 0 {
                out.count = 1;
                out.fiber_size = 1;
                out.classes.push("e = 0".to_string());
                out.notes.push(
                    "the two Euler classes +/-2kx coincide at k = 0, so the pair degenerates \
                     to a single bundle"
                        .to_string(),
                );
            } else {
                out.count = 2;
                out.fiber_size = 2;
                out.classes.push(format!("e = {}x", 2 * k));
                out.classes.push(format!("e = -{}x", 2 * k));
            }
        }
        3 => {
            if euler_coeff.is_some() {
                return Err(KTheoryError::UnexpectedEuler(3));
            }
            if p1_coeff % 4 != 0 {
                return Err(KTheoryError::ParityViolation(
                    "rank 3: p1 must be 4k x^2 (p1 = 4 sp1 and sp1 is onto Z)".to_string(),
                ));
            }
            let s = p1_coeff / 4;
            out.k_group = "reduced KSP(CP^3) = Z (+) Z/2".to_string();
            out.count = 2;
            out.fiber_size = 2;
            for torsion in [false, true] {
                let class = KSPClass::new(s, torsion);
                out.classes.push(class.to_string());
                out.ksp_classes.push(class);
            }
            out.notes.push("the fiber over sp1 is the Z/2 kernel of the projection".to_string());
        }
        4 => {
            let Some(l) = euler_coeff else {
                return Err(KTheoryError::MissingEuler(4));
            };
            if p1_coeff % 2 != 0 {
                return Err(KTheoryError::ParityViolation(
                    "rank 4: p1 must be 2k x^2 (p1 = 2 sp1' + 2 sp1'')".to_string(),
                ));
            }
            let k = p1_coeff / 2;
            if (k - l) % 2 != 0 {
                return Err(KTheoryError::ParityViolation(
                    "rank 4: p1/2 and the Euler coefficient must have equal parity \
                     (the factor values (k+l)/2 and (k-l)/2 must be integers)"
                        .to_string(),
                ));
            }
            let s1 = (k + l) / 2;
            let s2 = (k - l) / 2;
            out.k_group = "reduced KSP (+) KSP".to_string();
            out.count = 4;
            out.fiber_size = 4;
            for t1 in [false, true] {
                for t2 in [false, true] {
                    out.classes.push(format!(
                        "({}, {})",
                        KSPClass::new(s1, t1),
                        KSPClass::new(s2, t2)
                    ));
                }
            }
            out.notes.push(
                "which factor is labeled first is an orientation choice; swapping labels \
                 flips the Euler sign"
                    .to_string(),
            );
        }
        5 => {
            if euler_coeff.is_some() {
                return Err(KTheoryError::UnexpectedEuler(5));
            }
            if p1_coeff % 2 != 0 {
                return Err(KTheoryError::ParityViolation(
                    "rank 5: p1 must be 2k x^2 (p1 = 2 sp1)".to_string(),
                ));
            }
            let s = p1_coeff / 2;
            out.k_group = "reduced KSP(CP^3) = Z (+) Z/2".to_string();
            out.count = 2;
            out.fiber_size = 2;
            for torsion in [false, true] {
                let class = KSPClass::new(s, torsion);
                out.classes.push(class.to_string());
                out.ksp_classes.push(class);
            }
        }
        6 => {
            let Some(l2) = euler_coeff else {
                return Err(KTheoryError::MissingEuler(6));
            };
            if p1_coeff % 2 != 0 {
                return Err(KTheoryError::ParityViolation(
                    "rank 6: p1 must be 2k x^2 (p1 = -2 c2)".to_string(),
                ));
            }
            if l2 % 2 != 0 {
                return Err(KTheoryError::ParityViolation(
                    "rank 6: the Euler class must be an even multiple of x^3 \
                     (e = c3 and the Chern image requires c3 even)"
                        .to_string(),
                ));
            }
            let c2 = -p1_coeff / 2;
            let c3 = l2;
            let class = KClass::new(0, c2, c3)?;
            out.k_group =
                "classes with c1 = 0 inside reduced K(CP^3) (the image of BSU)".to_string();
            out.count = 1;
            out.fiber_size = 1;
            out.classes.push(format!("total Chern class 1 + {}x^2 + {}x^3", class.c2, class.c3));
            out.notes.push("c1 = 0 is enforced on the rank-6 classification path".to_string());
        }
        _ => {
            if euler_coeff.is_some() {
                return Err(KTheoryError::UnexpectedEuler(n));
            }
            if p1_coeff % 2 != 0 {
                return Err(KTheoryError::ParityViolation(
                    "rank >= 7: p1 must be even (p1 = w2^2 mod 2 and spin forces w2 = 0)"
                        .to_string(),
                ));
            }
            out.k_group = "reduced KO(CP^3) = Z via p1 (stable range)".to_string();
            out.count = 1;
            out.fiber_size = 1;
            out.classes.push(format!("KO class {p1_coeff}"));
            out.notes.push("ranks >= 7 over a 6-complex are stable".to_string());
        }
    }
    debug_assert_eq!(out.count, out.fiber_size * out.spin_structures);
    Ok(out)
}
