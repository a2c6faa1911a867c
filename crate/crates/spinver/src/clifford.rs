//! Clifford algebra arithmetic and the mod-8 classification of
//! irreducible representations.
//!
//! Elements of Cl_n are stored as sparse sums of basis blades e_I over
//! strictly increasing index sets I, with exact rational coefficients.
//! The generating relations are e_i^2 = -1 and e_i e_j = -e_j e_i for
//! i != j (the convention under which the classical mod-8 table of
//! Atiyah-Bott-Shapiro is stated).

use crate::exact::{rat, Rational};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum CliffordError {
    #[error("elements live in different algebras: Cl_{0} vs Cl_{1}")]
    MismatchedAlgebra(u32, u32),
    #[error("blade index {index} out of range for Cl_{n}")]
    IndexOutOfRange { index: u32, n: u32 },
    #[error("blade indices must be strictly increasing")]
    NonCanonicalBlade,
    #[error("n must be >= 1, got {0}")]
    InvalidDimension(i64),
}

/// Product of two basis blades given as bitmasks (bit k set = generator
/// e_{k+1} present). Returns the resulting blade mask and the sign.
///
/// The sign counts the transpositions of a stable merge of the two
/// (sorted) index lists, plus one factor of -1 for each common index
/// (e_i^2 = -1).
fn blade_mul(a: u64, b: u64) -> (u64, i64) {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a >> (j + 1)).count_ones();
    }
    let squares = (a & b).count_ones();
    let sign = if (swaps + squares).is_multiple_of(2) { 1 } else { -1 };
    (a ^ b, sign)
}

/// Z-graded signed sum of basis blades in Cl_n.
///
/// Zero coefficients are never stored; the empty index set is the scalar
/// part. Values are immutable in practice and safe to share.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElement {
    n: u32,
    terms: BTreeMap<u64, Rational>,
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *mask == 0 {
                write!(f, "{coeff}")?;
            } else {
                let idx: Vec<String> = (0..64)
                    .filter(|k| mask & (1u64 << k) != 0)
                    .map(|k| (k + 1).to_string())
                    .collect();
                write!(f, "{coeff}*e{{{}}}", idx.join(","))?;
            }
        }
        Ok(())
    }
}

impl CliffordElement {
    pub fn zero(n: u32) -> Self {
        CliffordElement { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: u32, value: Rational) -> Self {
        let mut e = CliffordElement::zero(n);
        e.add_term(0, value);
        e
    }

    pub fn one(n: u32) -> Self {
        CliffordElement::scalar(n, rat(1))
    }

    /// The generator e_i (1-based).
    pub fn generator(n: u32, i: u32) -> Result<Self, CliffordError> {
        CliffordElement::basis_blade(n, &[i])
    }

    /// Basis blade e_I for strictly increasing 1-based indices.
    pub fn basis_blade(n: u32, indices: &[u32]) -> Result<Self, CliffordError> {
        let mut mask = 0u64;
        let mut prev = 0u32;
        for &i in indices {
            if i == 0 || i > n {
                return Err(CliffordError::IndexOutOfRange { index: i, n });
            }
            if i <= prev {
                return Err(CliffordError::NonCanonicalBlade);
            }
            prev = i;
            mask |= 1 << (i - 1);
        }
        let mut e = CliffordElement::zero(n);
        e.add_term(mask, rat(1));
        Ok(e)
    }

    pub fn algebra_dimension(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the blade with the given 1-based index set.
    pub fn coefficient(&self, indices: &[u32]) -> Rational {
        let mut mask = 0u64;
        for &i in indices {
            mask |= 1 << (i - 1);
        }
        self.terms.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scalar_part(&self) -> Rational {
        self.terms.get(&0).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterate (index set, coefficient) pairs in canonical blade order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &Rational)> {
        self.terms.iter().map(|(mask, c)| {
            let idx: Vec<u32> =
                (0..64).filter(|k| mask & (1u64 << k) != 0).map(|k| k + 1).collect();
            (idx, c)
        })
    }

    fn add_term(&mut self, mask: u64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, rhs: &CliffordElement) -> Result<CliffordElement, CliffordError> {
        if self.n != rhs.n {
            return Err(CliffordError::MismatchedAlgebra(self.n, rhs.n));
        }
        let mut out = self.clone();
        for (mask, c) in &rhs.terms {
            out.add_term(*mask, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> CliffordElement {
        let mut out = CliffordElement::zero(self.n);
        for (mask, c) in &self.terms {
            out.add_term(*mask, c * s);
        }
        out
    }

    pub fn neg(&self) -> CliffordElement {
        self.scale(&rat(-1))
    }

    /// Keep only the terms of even grade (the part lying in Cl_n^0).
    pub fn even_part(&self) -> CliffordElement {
        let mut out = CliffordElement::zero(self.n);
        for (mask, c) in &self.terms {
            if mask.count_ones() % 2 == 0 {
                out.add_term(*mask, c.clone());
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|mask| mask.count_ones() % 2 == 0)
    }
}

/// Bilinear product in Cl_n under e_i^2 = -1, e_i e_j = -e_j e_i.
pub fn cl_mul(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement, CliffordError> {
    if a.n != b.n {
        return Err(CliffordError::MismatchedAlgebra(a.n, b.n));
    }
    let mut out = CliffordElement::zero(a.n);
    for (&ma, ca) in &a.terms {
        for (&mb, cb) in &b.terms {
            let (mask, sign) = blade_mul(ma, mb);
            out.add_term(mask, ca * cb * rat(sign));
        }
    }
    Ok(out)
}

/// Grade filter: the even part of `a`.
pub fn even_part(a: &CliffordElement) -> CliffordElement {
    a.even_part()
}

/// The algebra isomorphism Cl_{n-1} -> Cl_n^0 determined by
/// e_i -> e_i e_n for i < n.
///
/// The image of a basis blade is again (a sign times) a single basis
/// blade, computed by multiplying out the 2-blade factors, so the map is
/// exact and lands in the even part.
pub fn even_iso(a: &CliffordElement) -> CliffordElement {
    let n = a.n + 1;
    let mut out = CliffordElement::zero(n);
    for (indices, coeff) in a.terms() {
        let mut img = CliffordElement::scalar(n, coeff.clone());
        for i in indices {
            let factor = CliffordElement::basis_blade(n, &[i, n]).expect("valid 2-blade");
            img = cl_mul(&img, &factor).expect("same algebra");
        }
        out = out.add(&img).expect("same algebra");
    }
    out
}

/// Ground field of an irreducible real representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FieldType {
    Real,
    Complex,
    Quaternionic,
}

impl fmt::Display for FieldType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldType::Real => write!(f, "real"),
            FieldType::Complex => write!(f, "complex"),
            FieldType::Quaternionic => write!(f, "quaternionic"),
        }
    }
}

/// Irreducible representation data for Cl_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IrrepInfo {
    pub n: u32,
    /// 1, or 2 exactly when n = 3 mod 4.
    pub count: u8,
    pub field_type: FieldType,
    /// Dimension of one irreducible module over its ground field.
    pub dimension_over_field: u64,
}

/// Base dimensions over the ground field for n = 1..=8, from the matrix
/// algebra structure of Cl_n:
///   C, H, H+H, H(2), C(4), R(8), R(8)+R(8), R(16).
/// Checked against the structure-decomposition oracle in the tests; each
/// step of 8 multiplies the dimension by 16.
const BASE_DIMENSION: [u64; 8] = [1, 1, 1, 2, 4, 8, 8, 16];

/// Count, ground field, and module dimension of the irreducible real
/// representations of Cl_n, by the mod-8 rules.
pub fn irrep_table(n: i64) -> Result<IrrepInfo, CliffordError> {
    if n < 1 {
        return Err(CliffordError::InvalidDimension(n));
    }
    let n = n as u32;
    let count = if n % 4 == 3 { 2 } else { 1 };
    let field_type = match n % 8 {
        1 | 5 => FieldType::Complex,
        2..=4 => FieldType::Quaternionic,
        _ => FieldType::Real,
    };
    let residue = ((n - 1) % 8) as usize;
    let octaves = (n - 1) / 8;
    let dimension_over_field = BASE_DIMENSION[residue] * 16u64.pow(octaves);
    Ok(IrrepInfo { n, count, field_type, dimension_over_field })
}
