//! Seiberg-Witten bookkeeping: basic classes with their invariants,
//! surgery multiplication of invariants, and the Laurent-polynomial
//! coefficient tables that describe the basic classes of the elliptic
//! family and its knot-surgered relatives.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::lattice::HomologyClass;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SwError {
    Overflow,
    /// Multiplicity parameters for log transforms must be odd here.
    EvenMultiplicity { p: i64 },
    BadParameter { what: &'static str },
}

impl fmt::Display for SwError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwError::Overflow => write!(f, "integer overflow in invariant arithmetic"),
            SwError::EvenMultiplicity { p } => {
                write!(f, "multiplicity {p} must be odd")
            }
            SwError::BadParameter { what } => write!(f, "bad parameter: {what}"),
        }
    }
}

/// A basic class, stored as the covector of its pairings with the chosen
/// basis, together with the value of the invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicClass {
    pub id: String,
    /// Pairing of the basic class with each basis vector.
    pub kappa: Vec<i64>,
    pub sw: i64,
}

impl BasicClass {
    pub fn new(id: impl Into<String>, kappa: Vec<i64>, sw: i64) -> Self {
        BasicClass { id: id.into(), kappa, sw }
    }

    /// Evaluate the covector on a class: `sum kappa_i * c_i`, checked.
    pub fn eval(&self, class: &HomologyClass) -> Result<i64, SwError> {
        if self.kappa.len() != class.rank() {
            return Err(SwError::BadParameter { what: "rank mismatch in pairing" });
        }
        let mut acc: i128 = 0;
        for (k, c) in self.kappa.iter().zip(class.coords()) {
            acc += *k as i128 * *c as i128;
        }
        i64::try_from(acc).map_err(|_| SwError::Overflow)
    }
}

/// The invariant of a distinguished class after a sequence of fiber sums
/// or surgeries that each multiply it: `initial * p_1 * ... * p_k`.
pub fn surgery_sw(initial: i64, multipliers: &[i64]) -> Result<i64, SwError> {
    let mut acc = initial;
    for &p in multipliers {
        acc = acc.checked_mul(p).ok_or(SwError::Overflow)?;
    }
    Ok(acc)
}

/// Integer Laurent polynomial in one variable, sparse over exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut p = LaurentPoly::default();
        p.set(exp, coeff);
        p
    }

    pub fn set(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, coeff);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly, SwError> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            let v = out.coeff(e).checked_add(c).ok_or(SwError::Overflow)?;
            out.set(e, v);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, SwError> {
        let mut out = LaurentPoly::default();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e = e1.checked_add(e2).ok_or(SwError::Overflow)?;
                let c = c1.checked_mul(c2).ok_or(SwError::Overflow)?;
                let v = out.coeff(e).checked_add(c).ok_or(SwError::Overflow)?;
                out.set(e, v);
            }
        }
        Ok(out)
    }

    /// Substitute `t -> t^k`.
    pub fn dilate(&self, k: i64) -> Result<LaurentPoly, SwError> {
        let mut out = LaurentPoly::default();
        for (e, c) in self.terms() {
            out.set(e.checked_mul(k).ok_or(SwError::Overflow)?, c);
        }
        Ok(out)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms().map(|(_, c)| c).sum()
    }

    /// Symmetric under `t -> 1/t`?
    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(e, c)| self.coeff(-e) == c)
    }
}

/// Symmetrized Alexander polynomial of the `(2, 2m+1)` torus knot:
/// `t^m - t^{m-1} + ... + t^{-m}` (alternating signs, `2m+1` terms).
pub fn alexander_torus_2q(m: u32) -> LaurentPoly {
    let mut p = LaurentPoly::default();
    for j in 0..=(2 * m as i64) {
        p.set(m as i64 - j, if j % 2 == 0 { 1 } else { -1 });
    }
    p
}

/// Invariant table for the knot-surgered elliptic surface with fiber-sum
/// length `n >= 2` and torus knot parameter `m >= 1`: the coefficients of
/// `Delta(t^2) * (t - 1/t)^{n-2}`, read as `(multiple r of the fiber class,
/// invariant value)`.
pub fn enk_basic_coeffs(n: u32, m: u32) -> Result<Vec<(i64, i64)>, SwError> {
    if n < 2 {
        return Err(SwError::BadParameter { what: "fiber-sum length must be >= 2" });
    }
    if m < 1 {
        return Err(SwError::BadParameter { what: "knot parameter must be >= 1" });
    }
    let delta = alexander_torus_2q(m).dilate(2)?;
    let mut bracket = LaurentPoly::monomial(0, 1);
    let t_minus_tinv = {
        let mut p = LaurentPoly::monomial(1, 1);
        p.set(-1, -1);
        p
    };
    for _ in 0..(n - 2) {
        bracket = bracket.mul(&t_minus_tinv)?;
    }
    let product = delta.mul(&bracket)?;
    Ok(product.terms().collect())
}

/// Invariant table for the log-transformed `E(2)`: all invariants are `1`,
/// on the multiples `p-1, p-3, ..., -(p-1)` of the multiple-fiber class.
/// Odd `p` only (even multiplicities break the parity of the covectors).
pub fn e2p_basic_coeffs(p: i64) -> Result<Vec<(i64, i64)>, SwError> {
    if p < 1 {
        return Err(SwError::BadParameter { what: "multiplicity must be >= 1" });
    }
    if p % 2 == 0 {
        return Err(SwError::EvenMultiplicity { p });
    }
    let mut out = Vec::new();
    let mut r = -(p - 1);
    while r <= p - 1 {
        out.push((r, 1));
        r += 2;
    }
    Ok(out)
}

/// Basic classes of the homology `S^2 x S^2` family member with twisting
/// parameter `n >= 1`: the pair `+/-K` with `K` pairing as `(2, 2)` against
/// the standard hyperbolic basis, and invariant `+/-n`.
pub fn xn_basic_classes(n: i64) -> Result<Vec<BasicClass>, SwError> {
    if n < 1 {
        return Err(SwError::BadParameter { what: "twisting parameter must be >= 1" });
    }
    Ok(alloc::vec![
        BasicClass::new("K", alloc::vec![2, 2], n),
        BasicClass::new("-K", alloc::vec![-2, -2], -n),
    ])
}
