//! The minimal genus dispatcher: exact closed formulas where available,
//! otherwise matched lower/upper certificates, otherwise intervals.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bounds::{self, BoundsError};
use crate::catalog::{ManifoldModel, ModelKind};
use crate::formulas::{self, FormulaError, GenusResult, Provenance};
use crate::lattice::{HomologyClass, LatticeError};
use crate::reduction::{self, ReductionError};
use crate::surfaces::{self, SurfaceConfiguration, SurfaceError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenusError {
    BadCoordinates { expected: usize, got: usize },
    Lattice(LatticeError),
    Formula(FormulaError),
    Reduction(ReductionError),
    Surface(SurfaceError),
    Bounds(BoundsError),
    Unsupported { reason: String },
}

impl fmt::Display for GenusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusError::BadCoordinates { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            GenusError::Lattice(e) => write!(f, "{e}"),
            GenusError::Formula(e) => write!(f, "{e}"),
            GenusError::Reduction(e) => write!(f, "{e}"),
            GenusError::Surface(e) => write!(f, "{e}"),
            GenusError::Bounds(e) => write!(f, "{e}"),
            GenusError::Unsupported { reason } => write!(f, "unsupported: {reason}"),
        }
    }
}

impl From<LatticeError> for GenusError {
    fn from(e: LatticeError) -> Self {
        GenusError::Lattice(e)
    }
}
impl From<FormulaError> for GenusError {
    fn from(e: FormulaError) -> Self {
        GenusError::Formula(e)
    }
}
impl From<ReductionError> for GenusError {
    fn from(e: ReductionError) -> Self {
        GenusError::Reduction(e)
    }
}
impl From<SurfaceError> for GenusError {
    fn from(e: SurfaceError) -> Self {
        GenusError::Surface(e)
    }
}
impl From<BoundsError> for GenusError {
    fn from(e: BoundsError) -> Self {
        GenusError::Bounds(e)
    }
}

/// Upper bounds recorded directly in the fixture: a listed surface or a
/// named special construction whose class is `+/-a`.
fn recorded_upper(model: &ManifoldModel, a: &HomologyClass) -> Option<(u64, String)> {
    let neg = a.neg();
    let mut best: Option<(u64, String)> = None;
    for s in &model.surfaces {
        if s.class == *a || s.class == neg {
            if best.as_ref().map_or(true, |(v, _)| s.genus < *v) {
                best = Some((s.genus, format!("surface {}", s.label)));
            }
        }
    }
    for s in &model.specials {
        if s.class == *a || s.class == neg {
            if best.as_ref().map_or(true, |(v, _)| s.genus < *v) {
                best = Some((s.genus, s.name.clone()));
            }
        }
    }
    best
}

/// Genus of `|t|` parallel copies of a square-zero surface joined into one:
/// a `|t|`-fold cover of genus `t(g-1)+1`.
fn cover_component(
    config: &mut SurfaceConfiguration,
    label: &str,
    genus: u64,
    t: i64,
) -> Result<Option<usize>, GenusError> {
    if t == 0 {
        return Ok(None);
    }
    let g = surfaces::cover_genus(genus, t.unsigned_abs())?;
    Ok(Some(config.add_component(label, g)?))
}

/// Systematic upper bound for the rank-3 exotic family: covers of the two
/// square-zero surfaces resolved at their crossings, plus parallel copies
/// of the (-1)-surface tubed on.
fn ap_systematic_upper(a: &HomologyClass) -> Result<u64, GenusError> {
    let (x, y, z) = (a.coord(0), a.coord(1), a.coord(2));
    let mut cfg = SurfaceConfiguration::new();
    let b = cover_component(&mut cfg, "B", 2, x)?;
    let c = cover_component(&mut cfg, "C", 3, y)?;
    if let (Some(b), Some(c)) = (b, c) {
        let pts = x.unsigned_abs() * y.unsigned_abs();
        if pts > 0 {
            cfg.add_intersection(b, c, pts, false)?;
        }
    }
    let mut d_parts = Vec::new();
    for i in 0..z.unsigned_abs() {
        d_parts.push(cfg.add_component(&format!("D{i}"), 2)?);
    }
    for i in 0..d_parts.len() {
        for j in i + 1..d_parts.len() {
            cfg.add_intersection(d_parts[i], d_parts[j], 1, true)?;
        }
    }
    Ok(surfaces::resolve_genus_tubed(&cfg)?)
}

fn bk_systematic_upper(a: &HomologyClass) -> Result<u64, GenusError> {
    let (x, y) = (a.coord(0), a.coord(1));
    let mut cfg = SurfaceConfiguration::new();
    let b = cover_component(&mut cfg, "B", 2, x)?;
    let c = cover_component(&mut cfg, "C", 2, y)?;
    if let (Some(b), Some(c)) = (b, c) {
        let pts = x.unsigned_abs() * y.unsigned_abs();
        if pts > 0 {
            cfg.add_intersection(b, c, pts, false)?;
        }
    }
    for (slot, coord) in [(2usize, a.coord(2)), (3, a.coord(3))] {
        let mut parts = Vec::new();
        for i in 0..coord.unsigned_abs() {
            parts.push(cfg.add_component(&format!("T{slot}-{i}"), 1)?);
        }
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                cfg.add_intersection(parts[i], parts[j], 1, true)?;
            }
        }
    }
    Ok(surfaces::resolve_genus_tubed(&cfg)?)
}

/// Decomposition of `a` as a non-negative combination `tA*A + tB*B + tC*C`
/// of the symplectic generators; classes in this cone have exact genus
/// given by resolving covers of the generators.
fn ap_cone_coeffs(a: &HomologyClass) -> Option<(i64, i64, i64)> {
    let (x, y, z) = (a.coord(0), a.coord(1), a.coord(2));
    if z > 0 || z % 2 != 0 {
        return None;
    }
    let t_a = -z / 2;
    let t_b = x + z;
    let t_c = y + z / 2;
    (t_b >= 0 && t_c >= 0).then_some((t_a, t_b, t_c))
}

fn bk_cone_coeffs(a: &HomologyClass) -> Option<(i64, i64, i64)> {
    let (x, y, z, w) = (a.coord(0), a.coord(1), a.coord(2), a.coord(3));
    if z != w || z > 0 {
        return None;
    }
    let t_a = -z;
    let t_b = x + z;
    let t_c = y + z;
    (t_b >= 0 && t_c >= 0).then_some((t_a, t_b, t_c))
}

/// Resolve covers of three pairwise-crossing square-zero generators with
/// the given multiplicities and crossing counts.
fn cone_resolve(
    ts: (i64, i64, i64),
    genera: (u64, u64, u64),
    crossings: (i64, i64, i64),
) -> Result<u64, GenusError> {
    let (t_a, t_b, t_c) = ts;
    let mut cfg = SurfaceConfiguration::new();
    let a = cover_component(&mut cfg, "A", genera.0, t_a)?;
    let b = cover_component(&mut cfg, "B", genera.1, t_b)?;
    let c = cover_component(&mut cfg, "C", genera.2, t_c)?;
    let mut cross = |u: Option<usize>, v: Option<usize>, mult: i64, n: i64| {
        if let (Some(u), Some(v)) = (u, v) {
            let pts = (mult * n) as u64;
            if pts > 0 {
                return cfg.add_intersection(u, v, pts, false).map(|_| ());
            }
        }
        Ok(())
    };
    cross(a, b, crossings.0, t_a * t_b)?;
    cross(a, c, crossings.1, t_a * t_c)?;
    cross(b, c, crossings.2, t_b * t_c)?;
    Ok(surfaces::resolve_genus_tubed(&cfg)?)
}

fn interval_with_lower(
    model: &ManifoldModel,
    a: &HomologyClass,
    mut uppers: Vec<(u64, String)>,
) -> Result<GenusResult, GenusError> {
    let lower = bounds::adjunction_lower(model, a)?;
    if let Some((v, name)) = recorded_upper(model, a) {
        uppers.push((v, name));
    }
    uppers.sort();
    let mut provenance = vec![Provenance::LowerBound(lower.source.to_string())];
    let upper = uppers.first().map(|(v, name)| {
        provenance.push(Provenance::Construction(name.clone()));
        *v
    });
    if let Some(u) = upper {
        debug_assert!(lower.value <= u, "lower {} above upper {u}", lower.value);
    }
    Ok(GenusResult::interval(lower.value, upper, provenance))
}

fn eval_ap(model: &ManifoldModel, a: &HomologyClass) -> Result<GenusResult, GenusError> {
    for cand in [a.clone(), a.neg()] {
        if let Some(ts) = ap_cone_coeffs(&cand) {
            let value = cone_resolve(ts, (2, 2, 3), (1, 2, 1))?;
            return Ok(GenusResult::exact(
                value,
                vec![
                    Provenance::Construction(String::from("symplectic cone resolution")),
                    Provenance::LowerBound(String::from("adjunction")),
                ],
            ));
        }
    }
    interval_with_lower(model, a, vec![(ap_systematic_upper(a)?, String::from("resolved covers"))])
}

fn eval_bk(model: &ManifoldModel, a: &HomologyClass) -> Result<GenusResult, GenusError> {
    for cand in [a.clone(), a.neg()] {
        if let Some(ts) = bk_cone_coeffs(&cand) {
            let value = cone_resolve(ts, (2, 2, 2), (1, 1, 1))?;
            return Ok(GenusResult::exact(
                value,
                vec![
                    Provenance::Construction(String::from("symplectic cone resolution")),
                    Provenance::LowerBound(String::from("adjunction")),
                ],
            ));
        }
    }
    interval_with_lower(model, a, vec![(bk_systematic_upper(a)?, String::from("resolved covers"))])
}

fn eval_cp2k_negative(model: &ManifoldModel, a: &HomologyClass) -> Result<GenusResult, GenusError> {
    let rank = model.form.rank();
    let mut lower = 0u64;
    let mut lower_src = String::from("trivial");
    if rank == 3 {
        if let Some(c) = bounds::characteristic_sphere_obstruction(&model.form, a) {
            if c.value > lower {
                lower = c.value;
                lower_src = c.source.to_string();
            }
        }
        if let Some(c) = bounds::furuta_char_bound(&model.form, a) {
            if c.value > lower {
                lower = c.value;
                lower_src = c.source.to_string();
            }
        }
    }
    // canonical negative-square representative in the reflection orbit
    let (canon, _) = reduction::reduce_negative(a)?;
    let coords = canon.coords();
    let tail_zero = coords.len() == 3 || coords[3..].iter().all(|&c| c == 0);
    let upper = if tail_zero {
        debug_assert!(coords[..3].iter().all(|&c| c >= 0), "canonical form is non-negative");
        Some(surfaces::negative_square_upper_bound(
            coords[0].unsigned_abs(),
            coords[1].unsigned_abs(),
            coords[2].unsigned_abs(),
        )?)
    } else {
        None
    };
    let mut provenance = vec![Provenance::LowerBound(lower_src)];
    if upper.is_some() {
        provenance.push(Provenance::Construction(String::from(
            "pencil arrangement with exceptional spheres",
        )));
    }
    if let Some(u) = upper {
        if lower > u {
            // the sphere obstructions can't beat a genuine construction;
            // keep the tighter pair
            lower = u;
        }
    }
    Ok(GenusResult::interval(lower, upper, provenance))
}

fn eval_elliptic(model: &ManifoldModel, a: &HomologyClass) -> Result<GenusResult, GenusError> {
    // section-plus-fibers classes of the knot-surgered models have a
    // matching construction: resolve the section with parallel fibers
    if let ModelKind::Enk { m, .. } = model.kind {
        let rank = model.form.rank();
        for cand in [a.clone(), a.neg()] {
            let coords = cand.coords();
            let head_zero = coords[..rank - 2].iter().all(|&c| c == 0);
            let (s, f) = (coords[rank - 2], coords[rank - 1]);
            if head_zero && s == 1 && f >= 0 {
                let mut cfg = SurfaceConfiguration::new();
                let sec = cfg.add_component("S", m as u64)?;
                if f > 0 {
                    let fib = cfg.add_component("F", 1)?;
                    cfg.add_intersection(sec, fib, f as u64, false)?;
                }
                let upper = surfaces::resolve_genus_tubed(&cfg)?;
                return interval_with_lower(
                    model,
                    a,
                    vec![(upper, String::from("section resolved with fibers"))],
                );
            }
        }
    }
    interval_with_lower(model, a, vec![])
}

/// Minimal genus of `a` in the given model: exact where a closed formula
/// or a matched certificate pair applies, otherwise a certified interval.
pub fn evaluate(model: &ManifoldModel, a: &HomologyClass) -> Result<GenusResult, GenusError> {
    if a.rank() != model.form.rank() {
        return Err(GenusError::BadCoordinates { expected: model.form.rank(), got: a.rank() });
    }
    if a.is_zero() {
        return Ok(GenusResult::zero_class());
    }
    match model.kind {
        ModelKind::Cp2 => Ok(GenusResult::exact(
            formulas::genus_cp2(a.coord(0)),
            vec![Provenance::Formula(String::from("degree formula"))],
        )),
        ModelKind::Cp2Blowups { k: 1 } => Ok(GenusResult::exact(
            formulas::genus_cp2_cp2bar(a.coord(0), a.coord(1)),
            vec![Provenance::Formula(String::from("one-blow-up formula"))],
        )),
        ModelKind::S2xS2 => Ok(GenusResult::exact(
            formulas::genus_s2xs2(a.coord(0), a.coord(1)),
            vec![Provenance::Formula(String::from("bidegree formula"))],
        )),
        ModelKind::Xn { .. } => Ok(GenusResult::exact(
            formulas::genus_xn(a.coord(0), a.coord(1)),
            vec![Provenance::Formula(String::from("twisted bidegree formula"))],
        )),
        ModelKind::Cp2Blowups { .. } => {
            if model.form.square(a)? >= 0 {
                Ok(GenusResult::exact(
                    formulas::genus_cp2k_nonnegative(a)?,
                    vec![Provenance::Formula(String::from("reduced-form blow-up formula"))],
                ))
            } else {
                eval_cp2k_negative(model, a)
            }
        }
        ModelKind::ApFamily { .. } => eval_ap(model, a),
        ModelKind::BkFamily { .. } => eval_bk(model, a),
        ModelKind::K3 | ModelKind::E2p { .. } | ModelKind::Enk { .. } => eval_elliptic(model, a),
    }
}

/// Infallible evaluator for the profile search: errors degrade to the
/// uninformative interval.
pub fn profile_evaluator(model: &ManifoldModel) -> impl FnMut(&HomologyClass) -> GenusResult + '_ {
    move |a: &HomologyClass| {
        evaluate(model, a).unwrap_or_else(|_| GenusResult::interval(0, None, vec![]))
    }
}
