//! Certified lower bounds on the minimal genus: the adjunction inequality
//! against basic classes, the characteristic-sphere obstruction, and the
//! 10/8-style genus bound for characteristic classes.

use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::catalog::ManifoldModel;
use crate::lattice::{HomologyClass, IntersectionForm, LatticeError};
use crate::sw::SwError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundSource {
    /// Adjunction inequality against the named basic class.
    Adjunction { basic_class: String, pairing: i64, square: i64 },
    /// Characteristic classes of square < -1 are not sphere classes.
    CharSphereLemma { square: i64 },
    /// Genus bound for characteristic classes of square `-8n-1`.
    FurutaChar { square: i64, n: i64 },
    /// No information beyond genus >= 0.
    Trivial,
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundSource::Adjunction { basic_class, pairing, square } => {
                write!(f, "adjunction({basic_class}; pairing={pairing}, square={square})")
            }
            BoundSource::CharSphereLemma { square } => {
                write!(f, "char-sphere-lemma(square={square})")
            }
            BoundSource::FurutaChar { square, n } => {
                write!(f, "furuta-char(square={square}, n={n})")
            }
            BoundSource::Trivial => write!(f, "trivial"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCertificate {
    pub value: u64,
    pub source: BoundSource,
}

impl BoundCertificate {
    pub fn trivial() -> Self {
        BoundCertificate { value: 0, source: BoundSource::Trivial }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundsError {
    Inapplicable { reason: String },
    Lattice(LatticeError),
    Sw(SwError),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::Inapplicable { reason } => write!(f, "bound inapplicable: {reason}"),
            BoundsError::Lattice(e) => write!(f, "{e}"),
            BoundsError::Sw(e) => write!(f, "{e}"),
        }
    }
}

impl From<LatticeError> for BoundsError {
    fn from(e: LatticeError) -> Self {
        BoundsError::Lattice(e)
    }
}

impl From<SwError> for BoundsError {
    fn from(e: SwError) -> Self {
        BoundsError::Sw(e)
    }
}

fn ceil_div2(x: i64) -> i64 {
    (x + 1).div_euclid(2)
}

/// Lower bound from the adjunction inequality: for every basic class `s`,
/// any genus-positive surface in class `a` satisfies
/// `|s(a)| + a^2 <= 2g - 2`, so `g >= ceil((|s(a)| + a^2 + 2) / 2)`.
///
/// The hypotheses are checked against the model's stored invariants:
/// simple type, `b1 = 0`, and `b2+ > 1` or (`b2+ = 1` and `b2- <= 9`).
/// A computed bound `<= 0` certifies nothing (trivial certificate).
pub fn adjunction_lower(
    model: &ManifoldModel,
    a: &HomologyClass,
) -> Result<BoundCertificate, BoundsError> {
    if !model.flags.adjunction_applicable || !model.flags.simple_type {
        return Err(BoundsError::Inapplicable {
            reason: format!("model {} is not flagged for adjunction", model.name),
        });
    }
    if model.b1 != 0 {
        return Err(BoundsError::Inapplicable {
            reason: format!("model {} has b1 != 0", model.name),
        });
    }
    let b2_plus = (model.b2() + model.sigma) / 2;
    let b2_minus = model.b2() - b2_plus;
    if !(b2_plus > 1 || (b2_plus == 1 && b2_minus <= 9)) {
        return Err(BoundsError::Inapplicable {
            reason: format!("model {} fails the b2+/b2- hypothesis", model.name),
        });
    }
    if model.basic_classes.is_empty() {
        return Err(BoundsError::Inapplicable {
            reason: format!("model {} has no basic classes", model.name),
        });
    }
    let square = model.form.square(a)?;
    let mut best: Option<(i64, &str, i64)> = None;
    for b in &model.basic_classes {
        let pairing = b.eval(a)?;
        let bound = ceil_div2(pairing.abs() + square + 2);
        if best.map_or(true, |(v, _, _)| bound > v) {
            best = Some((bound, &b.id, pairing));
        }
    }
    let (value, id, pairing) = best.expect("non-empty basic class list");
    if value <= 0 {
        Ok(BoundCertificate::trivial())
    } else {
        Ok(BoundCertificate {
            value: value as u64,
            source: BoundSource::Adjunction {
                basic_class: String::from(id),
                pairing,
                square,
            },
        })
    }
}

fn is_diag_1_m1_m1(form: &IntersectionForm) -> bool {
    form.rank() == 3
        && form.gram() == [[1, 0, 0], [0, -1, 0], [0, 0, -1]].map(|r| r.to_vec())
}

/// Characteristic classes of square `-n` with `n > 1` in the odd rank-3
/// form are not represented by spheres: genus >= 1.
pub fn characteristic_sphere_obstruction(
    form: &IntersectionForm,
    a: &HomologyClass,
) -> Option<BoundCertificate> {
    if !is_diag_1_m1_m1(form) {
        return None;
    }
    let square = form.square(a).ok()?;
    if form.is_characteristic(a).ok()? && square < -1 {
        Some(BoundCertificate {
            value: 1,
            source: BoundSource::CharSphereLemma { square },
        })
    } else {
        None
    }
}

/// Genus bound for characteristic classes with square `-8n - 1` in the
/// rank-3 form: genus is at least `n/2`, so at least `ceil(n/2)`.
pub fn furuta_char_bound(
    form: &IntersectionForm,
    a: &HomologyClass,
) -> Option<BoundCertificate> {
    if form.rank() != 3 {
        return None;
    }
    let square = form.square(a).ok()?;
    if square >= 0 || square.rem_euclid(8) != 7 {
        return None;
    }
    if !form.is_characteristic(a).ok()? {
        return None;
    }
    let n = (-square - 1) / 8;
    Some(BoundCertificate {
        value: ((n + 1) / 2) as u64,
        source: BoundSource::FurutaChar { square, n },
    })
}

/// The 10/8-style inequality for spin data: `b2 >= ceil(5|sigma|/4) + 2`
/// together with divisibility of the signature by 16.
pub fn furuta_check(b2: i64, sigma: i64) -> bool {
    let needed = (5 * sigma.abs() + 3) / 4 + 2;
    b2 >= needed && sigma.rem_euclid(16) == 0
}

/// Lower bound for the last profile entry of the log-transformed `E(2)`
/// with odd multiplicity `p`: `(p+3)/2`.
pub fn e2p_third_entry_lower(p: i64) -> Result<u64, BoundsError> {
    if p < 1 {
        return Err(BoundsError::Inapplicable {
            reason: format!("multiplicity {p} must be >= 1"),
        });
    }
    if p % 2 == 0 {
        return Err(BoundsError::Inapplicable {
            reason: format!("multiplicity {p} must be odd"),
        });
    }
    Ok(((p + 3) / 2) as u64)
}
