//! Manifold catalog: descriptor data model, bundled fixtures, a keyed
//! text file format, and validation of the fixture data against the
//! adjunction and parity relations it must satisfy.
//!
//! # File format (version 1)
//!
//! One record per manifold, between `manifold <name>` and `end`. Lines are
//! keyword-first and whitespace-separated; `#` starts a comment. Keys:
//!
//! ```text
//! version 1
//! manifold ap
//! kind ap sw=1
//! rank 3
//! gram 0 1 0
//! gram 1 0 0
//! gram 0 0 -1
//! b1 0
//! sigma -1
//! euler 5
//! flags simple_type=true adjunction=true symplectic=true
//! reflection_sphere 0 0 1
//! surface B genus=2 kappa=2 symplectic=true class 1 0 0
//! basic_class K sw=1 kappa 2 4 3
//! relation A 2 B 1 C -2 D
//! special 1 1 -1 genus=5 name=annulus-substitution
//! conjecture no-essential-spheres
//! end
//! ```
//!
//! `relation T c1 L1 c2 L2 ...` asserts that the surface labelled `T` has
//! class `sum c_i * class(L_i)`. Models are immutable after load.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::lattice::{HomologyClass, IntersectionForm, LatticeError};
use crate::sw::{self, BasicClass};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogError {
    Parse { line: usize, message: String },
    Validation { model: String, violation: String },
    Lattice(LatticeError),
    UnknownManifold { name: String },
    BadParameter { what: String },
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::Parse { line, message } => write!(f, "line {line}: {message}"),
            CatalogError::Validation { model, violation } => {
                write!(f, "model {model}: {violation}")
            }
            CatalogError::Lattice(e) => write!(f, "{e}"),
            CatalogError::UnknownManifold { name } => write!(f, "unknown manifold: {name}"),
            CatalogError::BadParameter { what } => write!(f, "bad parameter: {what}"),
        }
    }
}

impl From<LatticeError> for CatalogError {
    fn from(e: LatticeError) -> Self {
        CatalogError::Lattice(e)
    }
}

/// The family a model belongs to; drives which genus evaluator applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// Projective plane.
    Cp2,
    /// Projective plane blown up `k` times, `1 <= k <= 3`.
    Cp2Blowups { k: u32 },
    /// Product of two spheres.
    S2xS2,
    /// Exotic homology `S^2 x S^2` with twisting parameter `n`.
    Xn { n: i64 },
    /// K3 surface, restricted to a three-hyperbolic-pair sublattice.
    K3,
    /// Log-transformed `E(2)` with odd multiplicity `p` (restricted model).
    E2p { p: i64 },
    /// Knot-surgered `E(n)` with torus knot parameter `m` (restricted model).
    Enk { n: u32, m: u32 },
    /// The small symplectic exotic `CP^2 # 2CP^2bar` and its siblings with
    /// invariant value `sw`.
    ApFamily { sw: i64 },
    /// The small exotic `CP^2 # 3CP^2bar` family with invariant value `sw`.
    BkFamily { sw: i64 },
}

impl ModelKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ModelKind::Cp2 => "cp2",
            ModelKind::Cp2Blowups { .. } => "cp2k",
            ModelKind::S2xS2 => "s2xs2",
            ModelKind::Xn { .. } => "xn",
            ModelKind::K3 => "k3",
            ModelKind::E2p { .. } => "e2p",
            ModelKind::Enk { .. } => "enk",
            ModelKind::ApFamily { .. } => "ap",
            ModelKind::BkFamily { .. } => "bk",
        }
    }

    fn params(&self) -> Vec<(&'static str, i64)> {
        match *self {
            ModelKind::Cp2 | ModelKind::S2xS2 | ModelKind::K3 => vec![],
            ModelKind::Cp2Blowups { k } => vec![("k", k as i64)],
            ModelKind::Xn { n } => vec![("n", n)],
            ModelKind::E2p { p } => vec![("p", p)],
            ModelKind::Enk { n, m } => vec![("n", n as i64), ("m", m as i64)],
            ModelKind::ApFamily { sw } => vec![("sw", sw)],
            ModelKind::BkFamily { sw } => vec![("sw", sw)],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelFlags {
    pub simple_type: bool,
    pub adjunction_applicable: bool,
    pub symplectic: bool,
}

/// A surface in the model with known genus and pairing against the
/// distinguished basic class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceEntry {
    pub label: String,
    pub class: HomologyClass,
    pub genus: u64,
    pub kappa: i64,
    pub symplectic: bool,
}

/// `target = sum coeff * label` among the surface entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub target: String,
    pub terms: Vec<(i64, String)>,
}

/// A one-off construction known to realize `genus` for `class`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialConstruction {
    pub class: HomologyClass,
    pub genus: u64,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldModel {
    pub name: String,
    pub kind: ModelKind,
    pub form: IntersectionForm,
    pub b1: u32,
    pub sigma: i64,
    pub euler: i64,
    pub flags: ModelFlags,
    pub reflection_spheres: Vec<HomologyClass>,
    pub surfaces: Vec<SurfaceEntry>,
    pub basic_classes: Vec<BasicClass>,
    pub relations: Vec<Relation>,
    pub specials: Vec<SpecialConstruction>,
    pub conjectures: Vec<String>,
}

impl ManifoldModel {
    pub fn surface(&self, label: &str) -> Option<&SurfaceEntry> {
        self.surfaces.iter().find(|s| s.label == label)
    }

    /// Second Betti number implied by the stored invariants (`b1 = 0`
    /// throughout the bundled fixtures).
    pub fn b2(&self) -> i64 {
        self.euler - 2 + 2 * self.b1 as i64
    }

    /// All invariant-consistency violations, empty for valid data.
    pub fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        let rank = self.form.rank();
        for s in &self.reflection_spheres {
            match self.form.square(s) {
                Ok(sq) if matches!(sq, 1 | -1 | 2 | -2) => {}
                Ok(sq) => v.push(format!(
                    "reflection sphere {} has square {sq}, not in {{1,-1,2,-2}}",
                    s.display()
                )),
                Err(e) => v.push(format!("reflection sphere {}: {e}", s.display())),
            }
        }
        for b in &self.basic_classes {
            if b.kappa.len() != rank {
                v.push(format!("basic class {} has wrong rank", b.id));
                continue;
            }
            for i in 0..rank {
                let diag = self.form.gram()[i][i];
                if (b.kappa[i] - diag) % 2 != 0 {
                    v.push(format!(
                        "basic class {} is not characteristic at basis vector {i}",
                        b.id
                    ));
                }
            }
            if !self
                .basic_classes
                .iter()
                .any(|o| o.kappa.iter().zip(&b.kappa).all(|(a, c)| *a == -c))
            {
                v.push(format!("basic class set is not symmetric under negating {}", b.id));
            }
        }
        for s in &self.surfaces {
            if s.class.rank() != rank {
                v.push(format!("surface {} has wrong rank", s.label));
                continue;
            }
            let sq = match self.form.square(&s.class) {
                Ok(sq) => sq,
                Err(e) => {
                    v.push(format!("surface {}: {e}", s.label));
                    continue;
                }
            };
            if let Some(b) = self.basic_classes.first() {
                match b.eval(&s.class) {
                    Ok(k) if k == s.kappa => {}
                    Ok(k) => v.push(format!(
                        "surface {} lists kappa={} but the first basic class gives {k}",
                        s.label, s.kappa
                    )),
                    Err(e) => v.push(format!("surface {}: {e}", s.label)),
                }
            }
            if s.symplectic {
                let lhs = 2 * s.genus as i64 - 2;
                if lhs != sq + s.kappa {
                    v.push(format!(
                        "symplectic surface {}: 2g-2 = {lhs} but square + kappa = {}",
                        s.label,
                        sq + s.kappa
                    ));
                }
            }
        }
        for r in &self.relations {
            let Some(target) = self.surface(&r.target) else {
                v.push(format!("relation target {} is not a surface label", r.target));
                continue;
            };
            let mut acc = HomologyClass::zero(rank);
            let mut ok = true;
            for (c, label) in &r.terms {
                match self.surface(label) {
                    Some(s) => match acc.add_scaled(*c, &s.class) {
                        Ok(next) => acc = next,
                        Err(e) => {
                            v.push(format!("relation for {}: {e}", r.target));
                            ok = false;
                        }
                    },
                    None => {
                        v.push(format!("relation term {label} is not a surface label"));
                        ok = false;
                    }
                }
            }
            if ok && acc != target.class {
                v.push(format!(
                    "relation for {} does not hold coordinate-wise (got {})",
                    r.target,
                    acc.display()
                ));
            }
        }
        for s in &self.specials {
            if s.class.rank() != rank {
                v.push(format!("special construction {} has wrong rank", s.name));
            }
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogFile {
    pub version: u32,
    pub models: Vec<ManifoldModel>,
}

impl CatalogFile {
    pub fn get(&self, name: &str) -> Option<&ManifoldModel> {
        self.models.iter().find(|m| m.name == name)
    }

    /// Violations across all models, tagged with the model name.
    pub fn validate(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for m in &self.models {
            for v in m.validate() {
                out.push((m.name.clone(), v));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Builtin fixtures
// ---------------------------------------------------------------------------

fn flags(simple_type: bool, adjunction: bool, symplectic: bool) -> ModelFlags {
    ModelFlags { simple_type, adjunction_applicable: adjunction, symplectic }
}

fn cls(c: &[i64]) -> HomologyClass {
    HomologyClass::new(c.to_vec())
}

pub fn model_cp2() -> ManifoldModel {
    ManifoldModel {
        name: "cp2".to_owned(),
        kind: ModelKind::Cp2,
        form: IntersectionForm::diagonal(&[1]).unwrap(),
        b1: 0,
        sigma: 1,
        euler: 3,
        flags: flags(false, false, true),
        reflection_spheres: vec![cls(&[1])],
        surfaces: vec![SurfaceEntry {
            label: "H".to_owned(),
            class: cls(&[1]),
            genus: 0,
            kappa: -3,
            symplectic: true,
        }],
        basic_classes: vec![],
        relations: vec![],
        specials: vec![],
        conjectures: vec![],
    }
}

/// The projective plane blown up `k` times, `1 <= k <= 3`, with the
/// licensed reflection spheres for the orbit reduction.
pub fn model_cp2_blowups(k: u32) -> Result<ManifoldModel, CatalogError> {
    if !(1..=3).contains(&k) {
        return Err(CatalogError::BadParameter { what: format!("blow-up count {k} not in 1..=3") });
    }
    let rank = (k + 1) as usize;
    let mut diag = vec![1i64];
    diag.extend(core::iter::repeat(-1).take(k as usize));
    let form = IntersectionForm::diagonal(&diag)?;
    let mut spheres: Vec<HomologyClass> = Vec::new();
    let pad = |v: &[i64]| {
        let mut c = v.to_vec();
        c.resize(rank, 0);
        HomologyClass::new(c)
    };
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        spheres.push(HomologyClass::new(e));
    }
    if k >= 2 {
        spheres.push(pad(&[1, 1, 1]));
        spheres.push(pad(&[2, 1, 1]));
    }
    if k == 3 {
        spheres.push(pad(&[1, 1, 1, 1]));
    }
    Ok(ManifoldModel {
        name: format!("cp2x{k}"),
        kind: ModelKind::Cp2Blowups { k },
        form,
        b1: 0,
        sigma: 1 - k as i64,
        euler: 3 + k as i64,
        flags: flags(false, false, true),
        reflection_spheres: spheres,
        surfaces: vec![],
        basic_classes: vec![],
        relations: vec![],
        specials: vec![],
        conjectures: vec![],
    })
}

pub fn model_s2xs2() -> ManifoldModel {
    ManifoldModel {
        name: "s2xs2".to_owned(),
        kind: ModelKind::S2xS2,
        form: IntersectionForm::hyperbolic_pair(),
        b1: 0,
        sigma: 0,
        euler: 4,
        flags: flags(false, false, true),
        reflection_spheres: vec![cls(&[1, 1]), cls(&[1, -1])],
        surfaces: vec![
            SurfaceEntry {
                label: "S1".to_owned(),
                class: cls(&[1, 0]),
                genus: 0,
                kappa: -2,
                symplectic: true,
            },
            SurfaceEntry {
                label: "S2".to_owned(),
                class: cls(&[0, 1]),
                genus: 0,
                kappa: -2,
                symplectic: true,
            },
        ],
        basic_classes: vec![],
        relations: vec![],
        specials: vec![],
        conjectures: vec![],
    }
}

/// Exotic homology `S^2 x S^2` with twisting parameter `n >= 1`.
pub fn model_xn(n: i64) -> Result<ManifoldModel, CatalogError> {
    let basic = sw::xn_basic_classes(n)
        .map_err(|e| CatalogError::BadParameter { what: e.to_string() })?;
    Ok(ManifoldModel {
        name: format!("x{n}"),
        kind: ModelKind::Xn { n },
        form: IntersectionForm::hyperbolic_pair(),
        b1: 0,
        sigma: 0,
        euler: 4,
        flags: flags(true, false, n == 1),
        reflection_spheres: vec![],
        surfaces: vec![],
        basic_classes: basic,
        relations: vec![],
        specials: vec![],
        conjectures: vec!["genus functions agree across the family for all n".to_owned()],
    })
}

/// K3, restricted to three orthogonal hyperbolic pairs spanned by the
/// square-2 genus-2 surfaces `u1, u2, u3` and their partners.
pub fn model_k3() -> ManifoldModel {
    let h = IntersectionForm::hyperbolic_pair();
    let form = IntersectionForm::direct_sum(&[h.clone(), h.clone(), h]).unwrap();
    let mut surfaces = Vec::new();
    for i in 0..3usize {
        let mut c = vec![0i64; 6];
        c[2 * i] = 1;
        c[2 * i + 1] = 1;
        surfaces.push(SurfaceEntry {
            label: format!("u{}", i + 1),
            class: HomologyClass::new(c),
            genus: 2,
            kappa: 0,
            symplectic: true,
        });
    }
    ManifoldModel {
        name: "k3".to_owned(),
        kind: ModelKind::K3,
        form,
        b1: 0,
        sigma: -16,
        euler: 24,
        flags: flags(true, true, true),
        reflection_spheres: vec![],
        surfaces,
        basic_classes: vec![BasicClass::new("0", vec![0; 6], 1)],
        relations: vec![],
        specials: vec![],
        conjectures: vec![],
    }
}

/// Log-transformed `E(2)` with odd multiplicity `p`, restricted to two
/// hyperbolic pairs plus the section/multiple-fiber block.
pub fn model_e2p(p: i64) -> Result<ManifoldModel, CatalogError> {
    let coeffs =
        sw::e2p_basic_coeffs(p).map_err(|e| CatalogError::BadParameter { what: e.to_string() })?;
    let h = IntersectionForm::hyperbolic_pair();
    let block = IntersectionForm::new(vec![vec![-2, 1], vec![1, 0]])?;
    let form = IntersectionForm::direct_sum(&[h.clone(), h, block])?;
    let rank = 6;
    let sigma_idx = rank - 2;
    let mut basic = Vec::new();
    for (r, swv) in coeffs.iter().rev() {
        let mut kappa = vec![0i64; rank];
        kappa[sigma_idx] = *r;
        basic.push(BasicClass::new(format!("{r}z"), kappa, *swv));
    }
    let mut fiber = vec![0i64; rank];
    fiber[rank - 1] = 1;
    Ok(ManifoldModel {
        name: format!("e2p-{p}"),
        kind: ModelKind::E2p { p },
        form,
        b1: 0,
        sigma: -16,
        euler: 24,
        flags: flags(true, true, true),
        reflection_spheres: vec![],
        surfaces: vec![SurfaceEntry {
            label: "z".to_owned(),
            class: HomologyClass::new(fiber),
            genus: 1,
            kappa: 0,
            symplectic: true,
        }],
        basic_classes: basic,
        relations: vec![],
        specials: vec![],
        conjectures: vec![],
    })
}

/// Knot-surgered `E(n)` (`n >= 2`) along the `(2, 2m+1)` torus knot,
/// restricted to `2n-2` hyperbolic pairs plus the section/fiber block
/// `[[-n, 1], [1, 0]]` in the basis `(..., S, F)`.
pub fn model_enk(n: u32, m: u32) -> Result<ManifoldModel, CatalogError> {
    let coeffs = sw::enk_basic_coeffs(n, m)
        .map_err(|e| CatalogError::BadParameter { what: e.to_string() })?;
    let h = IntersectionForm::hyperbolic_pair();
    let block = IntersectionForm::new(vec![vec![-(n as i64), 1], vec![1, 0]])?;
    let mut blocks = vec![h; (2 * n - 2) as usize];
    blocks.push(block);
    let form = IntersectionForm::direct_sum(&blocks)?;
    let rank = form.rank();
    let sigma_idx = rank - 2;
    let mut basic = Vec::new();
    for (r, swv) in coeffs.iter().rev() {
        if *swv == 0 {
            continue;
        }
        let mut kappa = vec![0i64; rank];
        kappa[sigma_idx] = *r;
        basic.push(BasicClass::new(format!("{r}F"), kappa, *swv));
    }
    let mut section = vec![0i64; rank];
    section[sigma_idx] = 1;
    let mut fiber = vec![0i64; rank];
    fiber[rank - 1] = 1;
    let top_r = 2 * m as i64 + n as i64 - 2;
    Ok(ManifoldModel {
        name: format!("enk-{n}-{m}"),
        kind: ModelKind::Enk { n, m },
        form,
        b1: 0,
        sigma: -8 * n as i64,
        euler: 12 * n as i64,
        flags: flags(true, true, true),
        reflection_spheres: vec![],
        surfaces: vec![
            SurfaceEntry {
                label: "S".to_owned(),
                class: HomologyClass::new(section),
                genus: m as u64,
                kappa: top_r,
                symplectic: true,
            },
            SurfaceEntry {
                label: "F".to_owned(),
                class: HomologyClass::new(fiber),
                genus: 1,
                kappa: 0,
                symplectic: true,
            },
        ],
        basic_classes: basic,
        relations: vec![],
        specials: vec![],
        conjectures: vec![],
    })
}

/// The small exotic `CP^2 # 2CP^2bar` family member with invariant value
/// `sw` (the symplectic member has `sw = 1`). Basis `(B, C, D)`.
pub fn model_ap_family(name: &str, sw_value: i64) -> Result<ManifoldModel, CatalogError> {
    if sw_value == 0 {
        return Err(CatalogError::BadParameter { what: "invariant value must be non-zero".into() });
    }
    let form =
        IntersectionForm::new(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]])?;
    Ok(ManifoldModel {
        name: name.to_owned(),
        kind: ModelKind::ApFamily { sw: sw_value },
        form,
        b1: 0,
        sigma: -1,
        euler: 5,
        flags: flags(true, true, sw_value == 1),
        reflection_spheres: vec![],
        surfaces: vec![
            SurfaceEntry {
                label: "B".to_owned(),
                class: cls(&[1, 0, 0]),
                genus: 2,
                kappa: 2,
                symplectic: true,
            },
            SurfaceEntry {
                label: "C".to_owned(),
                class: cls(&[0, 1, 0]),
                genus: 3,
                kappa: 4,
                symplectic: true,
            },
            SurfaceEntry {
                label: "D".to_owned(),
                class: cls(&[0, 0, 1]),
                genus: 2,
                kappa: 3,
                symplectic: true,
            },
            SurfaceEntry {
                label: "A".to_owned(),
                class: cls(&[2, 1, -2]),
                genus: 2,
                kappa: 2,
                symplectic: true,
            },
        ],
        basic_classes: vec![
            BasicClass::new("K", vec![2, 4, 3], sw_value),
            BasicClass::new("-K", vec![-2, -4, -3], -sw_value),
        ],
        relations: vec![Relation {
            target: "A".to_owned(),
            terms: vec![(2, "B".to_owned()), (1, "C".to_owned()), (-2, "D".to_owned())],
        }],
        specials: vec![
            SpecialConstruction {
                class: cls(&[1, 1, -1]),
                genus: 5,
                name: "annulus-substitution".to_owned(),
            },
            SpecialConstruction {
                class: cls(&[1, 0, 1]),
                genus: 3,
                name: "braided-torus".to_owned(),
            },
        ],
        conjectures: vec![
            "no homologically essential embedded spheres or tori".to_owned(),
            "equivalent genus functions across the family".to_owned(),
        ],
    })
}

/// The small exotic `CP^2 # 3CP^2bar` family member with invariant value
/// `sw`. Basis `(B, C, D1, D2)`; pairings not forced by the construction
/// are set to zero.
pub fn model_bk_family(name: &str, sw_value: i64) -> Result<ManifoldModel, CatalogError> {
    if sw_value == 0 {
        return Err(CatalogError::BadParameter { what: "invariant value must be non-zero".into() });
    }
    let form = IntersectionForm::new(vec![
        vec![0, 1, 0, 0],
        vec![1, 0, 0, 0],
        vec![0, 0, -1, 0],
        vec![0, 0, 0, -1],
    ])?;
    Ok(ManifoldModel {
        name: name.to_owned(),
        kind: ModelKind::BkFamily { sw: sw_value },
        form,
        b1: 0,
        sigma: -2,
        euler: 6,
        flags: flags(true, true, sw_value == 1),
        reflection_spheres: vec![cls(&[0, 0, 1, -1])],
        surfaces: vec![
            SurfaceEntry {
                label: "B".to_owned(),
                class: cls(&[1, 0, 0, 0]),
                genus: 2,
                kappa: 2,
                symplectic: true,
            },
            SurfaceEntry {
                label: "C".to_owned(),
                class: cls(&[0, 1, 0, 0]),
                genus: 2,
                kappa: 2,
                symplectic: true,
            },
            SurfaceEntry {
                label: "D1".to_owned(),
                class: cls(&[0, 0, 1, 0]),
                genus: 1,
                kappa: 1,
                symplectic: true,
            },
            SurfaceEntry {
                label: "D2".to_owned(),
                class: cls(&[0, 0, 0, 1]),
                genus: 1,
                kappa: 1,
                symplectic: true,
            },
            SurfaceEntry {
                label: "A".to_owned(),
                class: cls(&[1, 1, -1, -1]),
                genus: 2,
                kappa: 2,
                symplectic: true,
            },
        ],
        basic_classes: vec![
            BasicClass::new("K", vec![2, 2, 1, 1], sw_value),
            BasicClass::new("-K", vec![-2, -2, -1, -1], -sw_value),
        ],
        relations: vec![Relation {
            target: "A".to_owned(),
            terms: vec![
                (1, "B".to_owned()),
                (1, "C".to_owned()),
                (-1, "D1".to_owned()),
                (-1, "D2".to_owned()),
            ],
        }],
        specials: vec![],
        conjectures: vec![
            "no homologically essential embedded spheres or tori".to_owned(),
        ],
    })
}

/// The bundled fixture set.
pub fn builtin_catalog() -> CatalogFile {
    CatalogFile {
        version: SCHEMA_VERSION,
        models: vec![
            model_cp2(),
            model_cp2_blowups(1).unwrap(),
            model_cp2_blowups(2).unwrap(),
            model_cp2_blowups(3).unwrap(),
            model_s2xs2(),
            model_xn(1).unwrap(),
            model_xn(2).unwrap(),
            model_k3(),
            model_e2p(3).unwrap(),
            model_enk(2, 1).unwrap(),
            model_enk(3, 1).unwrap(),
            model_ap_family("ap", 1).unwrap(),
            model_ap_family("zn-2", 2).unwrap(),
            model_bk_family("bk", 1).unwrap(),
            model_bk_family("vn-2", 2).unwrap(),
        ],
    }
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

fn bool_str(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn render_class(c: &HomologyClass, out: &mut String) {
    for (i, x) in c.coords().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x}");
    }
}

pub fn render(catalog: &CatalogFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "version {}", catalog.version);
    for m in &catalog.models {
        let _ = writeln!(out);
        let _ = writeln!(out, "manifold {}", m.name);
        let mut kind_line = format!("kind {}", m.kind.tag());
        for (k, v) in m.kind.params() {
            let _ = write!(kind_line, " {k}={v}");
        }
        let _ = writeln!(out, "{kind_line}");
        let _ = writeln!(out, "rank {}", m.form.rank());
        for row in m.form.gram() {
            let mut line = String::from("gram");
            for x in row {
                let _ = write!(line, " {x}");
            }
            let _ = writeln!(out, "{line}");
        }
        let _ = writeln!(out, "b1 {}", m.b1);
        let _ = writeln!(out, "sigma {}", m.sigma);
        let _ = writeln!(out, "euler {}", m.euler);
        let _ = writeln!(
            out,
            "flags simple_type={} adjunction={} symplectic={}",
            bool_str(m.flags.simple_type),
            bool_str(m.flags.adjunction_applicable),
            bool_str(m.flags.symplectic)
        );
        for s in &m.reflection_spheres {
            let mut line = String::from("reflection_sphere ");
            render_class(s, &mut line);
            let _ = writeln!(out, "{line}");
        }
        for s in &m.surfaces {
            let mut line = format!(
                "surface {} genus={} kappa={} symplectic={} class ",
                s.label,
                s.genus,
                s.kappa,
                bool_str(s.symplectic)
            );
            render_class(&s.class, &mut line);
            let _ = writeln!(out, "{line}");
        }
        for b in &m.basic_classes {
            let mut line = format!("basic_class {} sw={} kappa", b.id, b.sw);
            for k in &b.kappa {
                let _ = write!(line, " {k}");
            }
            let _ = writeln!(out, "{line}");
        }
        for r in &m.relations {
            let mut line = format!("relation {}", r.target);
            for (c, l) in &r.terms {
                let _ = write!(line, " {c} {l}");
            }
            let _ = writeln!(out, "{line}");
        }
        for s in &m.specials {
            let mut line = String::from("special ");
            render_class(&s.class, &mut line);
            let _ = write!(line, " genus={} name={}", s.genus, s.name);
            let _ = writeln!(out, "{line}");
        }
        for c in &m.conjectures {
            let _ = writeln!(out, "conjecture {c}");
        }
        let _ = writeln!(out, "end");
    }
    out
}

struct Parser<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

fn perr(line: usize, message: impl Into<String>) -> CatalogError {
    CatalogError::Parse { line, message: message.into() }
}

fn parse_int(tok: &str, line: usize) -> Result<i64, CatalogError> {
    tok.parse::<i64>().map_err(|_| perr(line, format!("expected integer, got '{tok}'")))
}

fn parse_bool(tok: &str, line: usize) -> Result<bool, CatalogError> {
    match tok {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(perr(line, format!("expected true/false, got '{tok}'"))),
    }
}

fn split_kv<'a>(tok: &'a str, key: &str, line: usize) -> Result<&'a str, CatalogError> {
    tok.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| perr(line, format!("expected {key}=..., got '{tok}'")))
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("");
                (i + 1, l.split_whitespace().collect::<Vec<_>>())
            })
            .filter(|(_, toks)| !toks.is_empty())
            .collect();
        Parser { lines, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.lines.get(self.pos)
    }

    fn next(&mut self) -> Option<&(usize, Vec<&'a str>)> {
        let item = self.lines.get(self.pos);
        if item.is_some() {
            self.pos += 1;
        }
        item
    }
}

fn parse_kind(toks: &[&str], line: usize) -> Result<ModelKind, CatalogError> {
    let tag = *toks.first().ok_or_else(|| perr(line, "missing kind tag"))?;
    let get = |key: &str| -> Result<i64, CatalogError> {
        for t in &toks[1..] {
            if let Ok(v) = split_kv(t, key, line) {
                return parse_int(v, line);
            }
        }
        Err(perr(line, format!("kind {tag} needs parameter {key}")))
    };
    Ok(match tag {
        "cp2" => ModelKind::Cp2,
        "cp2k" => ModelKind::Cp2Blowups { k: get("k")? as u32 },
        "s2xs2" => ModelKind::S2xS2,
        "xn" => ModelKind::Xn { n: get("n")? },
        "k3" => ModelKind::K3,
        "e2p" => ModelKind::E2p { p: get("p")? },
        "enk" => ModelKind::Enk { n: get("n")? as u32, m: get("m")? as u32 },
        "ap" => ModelKind::ApFamily { sw: get("sw")? },
        "bk" => ModelKind::BkFamily { sw: get("sw")? },
        other => return Err(perr(line, format!("unknown kind '{other}'"))),
    })
}

fn parse_model(p: &mut Parser<'_>, name: String, start: usize) -> Result<ManifoldModel, CatalogError> {
    let mut kind = None;
    let mut rank = None;
    let mut gram: Vec<Vec<i64>> = Vec::new();
    let mut b1 = 0u32;
    let mut sigma = None;
    let mut euler = None;
    let mut mflags = None;
    let mut spheres = Vec::new();
    let mut surfaces = Vec::new();
    let mut basics = Vec::new();
    let mut relations = Vec::new();
    let mut specials = Vec::new();
    let mut conjectures = Vec::new();
    loop {
        let Some((line, toks)) = p.next().map(|(l, t)| (*l, t.clone())) else {
            return Err(perr(start, format!("manifold {name} has no 'end'")));
        };
        match toks[0] {
            "end" => break,
            "kind" => kind = Some(parse_kind(&toks[1..], line)?),
            "rank" => {
                let r = parse_int(toks.get(1).copied().unwrap_or(""), line)?;
                if r < 1 {
                    return Err(perr(line, "rank must be positive"));
                }
                rank = Some(r as usize);
            }
            "gram" => {
                let row = toks[1..]
                    .iter()
                    .map(|t| parse_int(t, line))
                    .collect::<Result<Vec<_>, _>>()?;
                if let Some(r) = rank {
                    if row.len() != r {
                        return Err(perr(line, format!("gram row has {} entries, rank is {r}", row.len())));
                    }
                }
                gram.push(row);
            }
            "b1" => b1 = parse_int(toks.get(1).copied().unwrap_or(""), line)? as u32,
            "sigma" => sigma = Some(parse_int(toks.get(1).copied().unwrap_or(""), line)?),
            "euler" => euler = Some(parse_int(toks.get(1).copied().unwrap_or(""), line)?),
            "flags" => {
                let mut st = false;
                let mut adj = false;
                let mut sym = false;
                for t in &toks[1..] {
                    if let Ok(v) = split_kv(t, "simple_type", line) {
                        st = parse_bool(v, line)?;
                    } else if let Ok(v) = split_kv(t, "adjunction", line) {
                        adj = parse_bool(v, line)?;
                    } else if let Ok(v) = split_kv(t, "symplectic", line) {
                        sym = parse_bool(v, line)?;
                    } else {
                        return Err(perr(line, format!("unknown flag '{t}'")));
                    }
                }
                mflags = Some(flags(st, adj, sym));
            }
            "reflection_sphere" => {
                let c = toks[1..]
                    .iter()
                    .map(|t| parse_int(t, line))
                    .collect::<Result<Vec<_>, _>>()?;
                spheres.push(HomologyClass::new(c));
            }
            "surface" => {
                let label = toks
                    .get(1)
                    .ok_or_else(|| perr(line, "surface needs a label"))?
                    .to_string();
                let mut genus = None;
                let mut kappa = None;
                let mut symplectic = None;
                let mut class = None;
                let mut i = 2;
                while i < toks.len() {
                    let t = toks[i];
                    if t == "class" {
                        let c = toks[i + 1..]
                            .iter()
                            .map(|t| parse_int(t, line))
                            .collect::<Result<Vec<_>, _>>()?;
                        class = Some(HomologyClass::new(c));
                        break;
                    } else if let Ok(v) = split_kv(t, "genus", line) {
                        genus = Some(parse_int(v, line)? as u64);
                    } else if let Ok(v) = split_kv(t, "kappa", line) {
                        kappa = Some(parse_int(v, line)?);
                    } else if let Ok(v) = split_kv(t, "symplectic", line) {
                        symplectic = Some(parse_bool(v, line)?);
                    } else {
                        return Err(perr(line, format!("unexpected token '{t}' in surface")));
                    }
                    i += 1;
                }
                surfaces.push(SurfaceEntry {
                    label,
                    class: class.ok_or_else(|| perr(line, "surface needs class ..."))?,
                    genus: genus.ok_or_else(|| perr(line, "surface needs genus="))?,
                    kappa: kappa.ok_or_else(|| perr(line, "surface needs kappa="))?,
                    symplectic: symplectic.ok_or_else(|| perr(line, "surface needs symplectic="))?,
                });
            }
            "basic_class" => {
                let id = toks
                    .get(1)
                    .ok_or_else(|| perr(line, "basic_class needs an id"))?
                    .to_string();
                let swv = parse_int(
                    split_kv(toks.get(2).copied().unwrap_or(""), "sw", line)?,
                    line,
                )?;
                if toks.get(3) != Some(&"kappa") {
                    return Err(perr(line, "basic_class needs 'kappa' followed by pairings"));
                }
                let kappa = toks[4..]
                    .iter()
                    .map(|t| parse_int(t, line))
                    .collect::<Result<Vec<_>, _>>()?;
                basics.push(BasicClass::new(id, kappa, swv));
            }
            "relation" => {
                let target = toks
                    .get(1)
                    .ok_or_else(|| perr(line, "relation needs a target label"))?
                    .to_string();
                let rest = &toks[2..];
                if rest.is_empty() || rest.len() % 2 != 0 {
                    return Err(perr(line, "relation needs coeff/label pairs"));
                }
                let mut terms = Vec::new();
                for pair in rest.chunks(2) {
                    terms.push((parse_int(pair[0], line)?, pair[1].to_string()));
                }
                relations.push(Relation { target, terms });
            }
            "special" => {
                let mut coords = Vec::new();
                let mut genus = None;
                let mut sname = None;
                for t in &toks[1..] {
                    if let Ok(v) = split_kv(t, "genus", line) {
                        genus = Some(parse_int(v, line)? as u64);
                    } else if let Ok(v) = split_kv(t, "name", line) {
                        sname = Some(v.to_string());
                    } else {
                        coords.push(parse_int(t, line)?);
                    }
                }
                specials.push(SpecialConstruction {
                    class: HomologyClass::new(coords),
                    genus: genus.ok_or_else(|| perr(line, "special needs genus="))?,
                    name: sname.ok_or_else(|| perr(line, "special needs name="))?,
                });
            }
            "conjecture" => {
                conjectures.push(toks[1..].join(" "));
            }
            other => return Err(perr(line, format!("unknown key '{other}'"))),
        }
    }
    let rank = rank.ok_or_else(|| perr(start, format!("manifold {name} missing rank")))?;
    if gram.len() != rank {
        return Err(perr(start, format!("manifold {name}: {} gram rows for rank {rank}", gram.len())));
    }
    let form = IntersectionForm::new(gram)?;
    Ok(ManifoldModel {
        name: name.clone(),
        kind: kind.ok_or_else(|| perr(start, format!("manifold {name} missing kind")))?,
        form,
        b1,
        sigma: sigma.ok_or_else(|| perr(start, format!("manifold {name} missing sigma")))?,
        euler: euler.ok_or_else(|| perr(start, format!("manifold {name} missing euler")))?,
        flags: mflags.ok_or_else(|| perr(start, format!("manifold {name} missing flags")))?,
        reflection_spheres: spheres,
        surfaces,
        basic_classes: basics,
        relations,
        specials,
        conjectures,
    })
}

/// Parse a catalog from text. Models are validated; the first violation is
/// reported as an error.
pub fn parse(text: &str) -> Result<CatalogFile, CatalogError> {
    let mut p = Parser::new(text);
    let (vline, vtoks) = p
        .next()
        .map(|(l, t)| (*l, t.clone()))
        .ok_or_else(|| perr(0, "empty catalog"))?;
    if vtoks.first() != Some(&"version") {
        return Err(perr(vline, "catalog must start with 'version N'"));
    }
    let version = parse_int(vtoks.get(1).copied().unwrap_or(""), vline)? as u32;
    if version != SCHEMA_VERSION {
        return Err(perr(vline, format!("unsupported schema version {version}")));
    }
    let mut models = Vec::new();
    while let Some((line, toks)) = p.peek().map(|(l, t)| (*l, t.clone())) {
        p.next();
        if toks[0] != "manifold" {
            return Err(perr(line, format!("expected 'manifold', got '{}'", toks[0])));
        }
        let name = toks
            .get(1)
            .ok_or_else(|| perr(line, "manifold needs a name"))?
            .to_string();
        models.push(parse_model(&mut p, name, line)?);
    }
    let catalog = CatalogFile { version, models };
    if let Some((model, violation)) = catalog.validate().into_iter().next() {
        return Err(CatalogError::Validation { model, violation });
    }
    Ok(catalog)
}
