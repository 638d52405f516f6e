//! Genus profiles: allowed sequences of orthogonal positive-even-square
//! classes, and the lexicographically minimal tuple of their minimal genera.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::catalog::{ManifoldModel, ModelKind};
use crate::formulas::{GenusResult, Provenance};
use crate::lattice::{HomologyClass, IntersectionForm, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileError {
    WrongLength { expected: usize, got: usize },
    EmptyTupleList,
    MixedTupleLengths,
    /// No allowed sequence exists within the search radius.
    NotFound { bound: i64 },
    Lattice(LatticeError),
    Unsupported { reason: String },
}

impl fmt::Display for ProfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileError::WrongLength { expected, got } => {
                write!(f, "sequence has {got} vectors, need {expected}")
            }
            ProfileError::EmptyTupleList => write!(f, "no tuples to minimize"),
            ProfileError::MixedTupleLengths => write!(f, "tuples have mixed lengths"),
            ProfileError::NotFound { bound } => {
                write!(f, "no allowed sequence with coordinates bounded by {bound}")
            }
            ProfileError::Lattice(e) => write!(f, "{e}"),
            ProfileError::Unsupported { reason } => write!(f, "unsupported: {reason}"),
        }
    }
}

impl From<LatticeError> for ProfileError {
    fn from(e: LatticeError) -> Self {
        ProfileError::Lattice(e)
    }
}

/// `b2+` many pairwise-orthogonal classes of positive even square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllowedSequence {
    pub vectors: Vec<HomologyClass>,
}

/// All pairwise pairings vanish, every square is even, and the span is
/// positive definite of full length (equivalently, with orthogonality,
/// every square is positive).
pub fn is_allowed(
    form: &IntersectionForm,
    vectors: &[HomologyClass],
    expected_len: usize,
) -> Result<bool, ProfileError> {
    if vectors.len() != expected_len {
        return Err(ProfileError::WrongLength { expected: expected_len, got: vectors.len() });
    }
    for (i, a) in vectors.iter().enumerate() {
        let sq = form.square(a)?;
        if sq <= 0 || sq % 2 != 0 {
            return Ok(false);
        }
        for b in &vectors[i + 1..] {
            if form.pairing(a, b)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lexicographic minimum of a non-empty list of equal-length tuples.
pub fn lex_min(tuples: &[Vec<u64>]) -> Result<Vec<u64>, ProfileError> {
    let first = tuples.first().ok_or(ProfileError::EmptyTupleList)?;
    if tuples.iter().any(|t| t.len() != first.len()) {
        return Err(ProfileError::MixedTupleLengths);
    }
    Ok(tuples.iter().min().cloned().unwrap())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub entries: Vec<GenusResult>,
    pub witness: AllowedSequence,
    /// Coordinate bound of the search, when a search was run.
    pub radius: Option<i64>,
    /// True when the witness includes a square 0 or 1 vector in the last
    /// slot (the section-plus-fibers classes of the elliptic models), which
    /// fails the evenness/positivity requirement of an allowed sequence.
    pub relaxed: bool,
}

impl Profile {
    pub fn tuple_lower(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.lower).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|e| e.exact)
    }
}

/// Ordering key for a profile entry: lower bound first, exact values
/// before open intervals, then the upper bound.
fn entry_key(e: &GenusResult) -> (u64, u8, u64) {
    (e.lower, if e.exact { 0 } else { 1 }, e.upper.unwrap_or(u64::MAX))
}

/// Enumerate candidate vectors with coordinates in `[-bound, bound]`,
/// positive even square, keeping them sorted by genus key then square
/// then coordinates.
fn candidates(
    form: &IntersectionForm,
    bound: i64,
    eval: &mut dyn FnMut(&HomologyClass) -> GenusResult,
) -> Result<Vec<(HomologyClass, GenusResult)>, ProfileError> {
    let rank = form.rank();
    let mut coords = vec![-bound; rank];
    let mut out: Vec<(HomologyClass, GenusResult, i64)> = Vec::new();
    loop {
        let c = HomologyClass::new(coords.clone());
        let sq = form.square(&c)?;
        if sq > 0 && sq % 2 == 0 {
            let g = eval(&c);
            out.push((c, g, sq));
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == rank {
                let mut sorted = out;
                sorted.sort_by(|a, b| {
                    (entry_key(&a.1), a.2, a.0.coords())
                        .cmp(&(entry_key(&b.1), b.2, b.0.coords()))
                });
                return Ok(sorted.into_iter().map(|(c, g, _)| (c, g)).collect());
            }
            if coords[i] < bound {
                coords[i] += 1;
                break;
            }
            coords[i] = -bound;
            i += 1;
        }
    }
}

fn dfs(
    form: &IntersectionForm,
    cands: &[(HomologyClass, GenusResult)],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    best: &mut Option<Vec<usize>>,
) {
    let pos = chosen.len();
    if pos == k {
        *best = Some(chosen.clone());
        return;
    }
    for i in start..cands.len() {
        if let Some(b) = best {
            // candidates are sorted, so once this slot's key exceeds the
            // incumbent's, no later candidate can help either
            let cmp = entry_key(&cands[i].1).cmp(&entry_key(&cands[b[pos]].1));
            if cmp == core::cmp::Ordering::Greater {
                return;
            }
        }
        let ortho = chosen
            .iter()
            .all(|&j| form.pairing(&cands[i].0, &cands[j].0) == Ok(0));
        if !ortho {
            continue;
        }
        chosen.push(i);
        let improves = match best {
            None => true,
            Some(b) => {
                let new: Vec<_> = chosen.iter().map(|&j| entry_key(&cands[j].1)).collect();
                let old: Vec<_> = b[..chosen.len()].iter().map(|&j| entry_key(&cands[j].1)).collect();
                new <= old
            }
        };
        if improves {
            dfs(form, cands, k, i + 1, chosen, best);
        }
        chosen.pop();
    }
}

/// Exhaustive search over allowed sequences with coordinates bounded by
/// `bound`, minimizing the tuple of genus entries lexicographically
/// (lower bound first, exact values preferred at ties).
pub fn profile_search_general(
    model: &ManifoldModel,
    bound: i64,
    eval: &mut dyn FnMut(&HomologyClass) -> GenusResult,
) -> Result<Profile, ProfileError> {
    let k = model.form.b2_plus();
    if k == 0 {
        return Err(ProfileError::Unsupported { reason: "b2+ = 0".into() });
    }
    if bound < 1 {
        return Err(ProfileError::NotFound { bound });
    }
    let cands = candidates(&model.form, bound, eval)?;
    let mut best = None;
    dfs(&model.form, &cands, k, 0, &mut Vec::new(), &mut best);
    let best = best.ok_or(ProfileError::NotFound { bound })?;
    let entries: Vec<GenusResult> = best.iter().map(|&i| cands[i].1.clone()).collect();
    let witness = AllowedSequence {
        vectors: best.iter().map(|&i| cands[i].0.clone()).collect(),
    };
    debug_assert!(is_allowed(&model.form, &witness.vectors, k) == Ok(true));
    Ok(Profile { entries, witness, radius: Some(bound), relaxed: false })
}

/// The standard genus-2 witness in hyperbolic pair `i`: `x_i + f_i`.
fn hyperbolic_u(rank: usize, i: usize) -> HomologyClass {
    let mut c = vec![0i64; rank];
    c[2 * i] = 1;
    c[2 * i + 1] = 1;
    HomologyClass::new(c)
}

fn exact_entry(value: u64, note: &str) -> GenusResult {
    GenusResult::exact(
        value,
        vec![
            Provenance::LowerBound(String::from("adjunction")),
            Provenance::Construction(String::from(note)),
        ],
    )
}

/// Closed-form profile for the knot-surgered elliptic models: `2n - 2`
/// exact genus-2 entries from the hyperbolic pairs, then the
/// section-plus-fibers class with exactly `m + ceil(n/2)`. The last
/// witness vector has square 0 or 1, so the profile is flagged relaxed.
fn profile_enk(model: &ManifoldModel, n: u32, m: u32) -> Result<Profile, ProfileError> {
    let rank = model.form.rank();
    let pairs = (2 * n - 2) as usize;
    let mut vectors: Vec<HomologyClass> = (0..pairs).map(|i| hyperbolic_u(rank, i)).collect();
    let mut entries: Vec<GenusResult> =
        (0..pairs).map(|_| exact_entry(2, "genus-2 pair in a hyperbolic block")).collect();
    let j = (n as i64 + 1) / 2;
    let mut last = vec![0i64; rank];
    last[rank - 2] = 1;
    last[rank - 1] = j;
    let value = m as u64 + j as u64;
    vectors.push(HomologyClass::new(last));
    entries.push(exact_entry(value, "section resolved with fibers"));
    Ok(Profile {
        entries,
        witness: AllowedSequence { vectors },
        radius: None,
        relaxed: true,
    })
}

/// Profile for the log-transformed `E(2)`: `(2, 2, e)` with the last entry
/// only bounded below by `(p+3)/2`; its witness `y3` has square 2 and the
/// sequence is genuinely allowed.
fn profile_e2p(model: &ManifoldModel, p: i64) -> Result<Profile, ProfileError> {
    let rank = model.form.rank();
    let mut vectors = vec![hyperbolic_u(rank, 0), hyperbolic_u(rank, 1)];
    let mut entries = vec![
        exact_entry(2, "genus-2 pair in a hyperbolic block"),
        exact_entry(2, "genus-2 pair in a hyperbolic block"),
    ];
    let mut y3 = vec![0i64; rank];
    y3[rank - 2] = 1;
    y3[rank - 1] = 2;
    vectors.push(HomologyClass::new(y3));
    let lower = crate::bounds::e2p_third_entry_lower(p)
        .map_err(|e| ProfileError::Unsupported { reason: format!("{e}") })?;
    entries.push(GenusResult::interval(
        lower,
        None,
        vec![Provenance::LowerBound(String::from("adjunction"))],
    ));
    let profile = Profile {
        entries,
        witness: AllowedSequence { vectors },
        radius: None,
        relaxed: false,
    };
    debug_assert!(is_allowed(&model.form, &profile.witness.vectors, 3) == Ok(true));
    Ok(profile)
}

/// Profile computation: restricted closed-form routines for the elliptic
/// models, exhaustive bounded search elsewhere.
pub fn profile_search(
    model: &ManifoldModel,
    bound: i64,
    eval: &mut dyn FnMut(&HomologyClass) -> GenusResult,
) -> Result<Profile, ProfileError> {
    match model.kind {
        ModelKind::Enk { n, m } => profile_enk(model, n, m),
        ModelKind::E2p { p } => profile_e2p(model, p),
        _ => profile_search_general(model, bound, eval),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn cls(c: &[i64]) -> HomologyClass {
        HomologyClass::new(c.to_vec())
    }

    fn k3_eval(model: &ManifoldModel) -> impl FnMut(&HomologyClass) -> GenusResult + '_ {
        move |c: &HomologyClass| {
            let sq = model.form.square(c).unwrap();
            let exact = model
                .surfaces
                .iter()
                .any(|s| s.class == *c || s.class == c.neg());
            if exact {
                GenusResult::exact(2, vec![])
            } else {
                GenusResult::interval((sq / 2 + 1).max(0) as u64, None, vec![])
            }
        }
    }

    #[test]
    fn allowed_examples() {
        let k3 = catalog::model_k3();
        let us: Vec<_> = (0..3).map(|i| hyperbolic_u(6, i)).collect();
        assert_eq!(is_allowed(&k3.form, &us, 3), Ok(true));
        // square-0 vector fails positivity
        let mut bad = us.clone();
        bad[2] = cls(&[0, 0, 0, 0, 1, 0]);
        assert_eq!(is_allowed(&k3.form, &bad, 3), Ok(false));
        // non-orthogonal pair fails
        let mut bad = us.clone();
        bad[1] = cls(&[1, 2, 0, 0, 0, 0]);
        assert_eq!(is_allowed(&k3.form, &bad, 3), Ok(false));
        // wrong length errors
        assert!(matches!(
            is_allowed(&k3.form, &us[..2], 3),
            Err(ProfileError::WrongLength { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn lex_min_examples() {
        assert_eq!(lex_min(&[vec![2, 2, 3], vec![2, 2, 2]]).unwrap(), vec![2, 2, 2]);
        assert_eq!(lex_min(&[vec![1, 9], vec![2, 0]]).unwrap(), vec![1, 9]);
        assert_eq!(lex_min(&[vec![5]]).unwrap(), vec![5]);
        assert!(matches!(lex_min(&[]), Err(ProfileError::EmptyTupleList)));
        assert!(matches!(
            lex_min(&[vec![1], vec![1, 2]]),
            Err(ProfileError::MixedTupleLengths)
        ));
    }

    #[test]
    fn k3_profile_2_2_2() {
        let k3 = catalog::model_k3();
        let mut eval = k3_eval(&k3);
        let p = profile_search(&k3, 3, &mut eval).unwrap();
        assert_eq!(p.tuple_lower(), vec![2, 2, 2]);
        assert!(p.is_exact());
        assert!(!p.relaxed);
        assert_eq!(is_allowed(&k3.form, &p.witness.vectors, 3), Ok(true));
    }

    #[test]
    fn enk_profiles() {
        for (n, m, want_last) in [(2u32, 1u32, 2u64), (2, 2, 3), (3, 1, 3), (3, 2, 4)] {
            let model = catalog::model_enk(n, m).unwrap();
            let mut eval = |_: &HomologyClass| GenusResult::interval(0, None, vec![]);
            let p = profile_search(&model, 2, &mut eval).unwrap();
            let mut want = vec![2u64; (2 * n - 2) as usize];
            want.push(want_last);
            assert_eq!(p.tuple_lower(), want, "n={n} m={m}");
            assert!(p.is_exact());
            assert!(p.relaxed);
        }
    }

    #[test]
    fn e2p_profile_interval() {
        let model = catalog::model_e2p(7).unwrap();
        let mut eval = |_: &HomologyClass| GenusResult::interval(0, None, vec![]);
        let p = profile_search(&model, 2, &mut eval).unwrap();
        assert_eq!(p.tuple_lower(), vec![2, 2, 5]);
        assert!(!p.entries[2].exact);
        assert!(!p.relaxed);
        assert_eq!(is_allowed(&model.form, &p.witness.vectors, 3), Ok(true));
    }

    #[test]
    fn search_not_found_when_bound_too_small() {
        let model = catalog::model_s2xs2();
        let mut eval = |c: &HomologyClass| {
            GenusResult::exact(
                crate::formulas::genus_s2xs2(c.coord(0), c.coord(1)),
                vec![],
            )
        };
        assert!(matches!(
            profile_search(&model, 0, &mut eval),
            Err(ProfileError::NotFound { .. })
        ));
        // bound 1: (1,1) has square 2, genus 0
        let p = profile_search(&model, 1, &mut eval).unwrap();
        assert_eq!(p.tuple_lower(), vec![0]);
    }
}
