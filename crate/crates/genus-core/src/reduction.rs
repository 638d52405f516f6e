//! Canonical diffeomorphism-orbit forms for homology classes of the twice
//! and three-times blown up projective plane, with verifiable move traces
//! and a brute-force orbit oracle.
//!
//! All moves are induced by diffeomorphisms: coordinate sign flips and
//! permutations of the blow-up coordinates, plus reflections in the licensed
//! sphere classes of the manifold model.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lattice::{HomologyClass, IntersectionForm, LatticeError};

/// Iteration cap for the negative-square loop. Termination is asserted but
/// not proved in general, so the loop must fail loudly rather than hang.
pub const NEGATIVE_LOOP_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    /// Only `diag(1, -1, ..., -1)` of rank 3 or 4 is handled here.
    UnsupportedForm,
    /// The class has the wrong square sign for the requested routine.
    WrongRoutine { square: i64 },
    /// The negative-square loop did not reach a fixpoint within the cap.
    IterationCap { cap: usize },
    /// The orbit search bound does not contain the start class.
    BoundTooSmall { bound: i64, needed: i64 },
    Lattice(LatticeError),
}

impl From<LatticeError> for ReductionError {
    fn from(e: LatticeError) -> Self {
        ReductionError::Lattice(e)
    }
}

/// One diffeomorphism-induced move of a reduction trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Negate coordinate `i` (reflection in the i-th basis sphere).
    FlipSign(usize),
    /// Reorder coordinates: `new[i] = old[perm[i]]`. Only permutes
    /// coordinates carrying the same diagonal entry.
    Permute(Vec<usize>),
    /// Reflection in a licensed sphere class.
    Reflect(HomologyClass),
}

impl Move {
    pub fn apply(&self, form: &IntersectionForm, v: &HomologyClass) -> Result<HomologyClass, ReductionError> {
        match self {
            Move::FlipSign(i) => {
                let mut c = v.coords().to_vec();
                c[*i] = -c[*i];
                Ok(HomologyClass::new(c))
            }
            Move::Permute(perm) => {
                let c: Vec<i64> = perm.iter().map(|&j| v.coord(j)).collect();
                Ok(HomologyClass::new(c))
            }
            Move::Reflect(s) => Ok(form.reflect(s, v)?),
        }
    }

    pub fn render(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        match self {
            Move::FlipSign(i) => {
                let _ = write!(s, "flip {i}");
            }
            Move::Permute(p) => {
                s.push_str("sort");
                for j in p {
                    let _ = write!(s, " {j}");
                }
            }
            Move::Reflect(c) => {
                s.push_str("reflect");
                for x in c.coords() {
                    let _ = write!(s, " {x}");
                }
            }
        }
        s
    }
}

/// Ordered list of moves taking `start` to `end`; replaying the steps from
/// `start` must yield `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub start: HomologyClass,
    pub end: HomologyClass,
    pub steps: Vec<Move>,
}

impl ReductionTrace {
    /// Replays the moves from `start`; the result must equal `end` for a
    /// valid trace.
    pub fn replay(&self, form: &IntersectionForm) -> Result<HomologyClass, ReductionError> {
        let mut v = self.start.clone();
        for m in &self.steps {
            v = m.apply(form, &v)?;
        }
        Ok(v)
    }

    /// Every intermediate class along the trace, starting with `start`.
    pub fn intermediates(&self, form: &IntersectionForm) -> Result<Vec<HomologyClass>, ReductionError> {
        let mut out = vec![self.start.clone()];
        let mut v = self.start.clone();
        for m in &self.steps {
            v = m.apply(form, &v)?;
            out.push(v.clone());
        }
        Ok(out)
    }

    /// Line-oriented text form: one move per line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for m in &self.steps {
            s.push_str(&m.render());
            s.push('\n');
        }
        s
    }
}

fn require_standard_form(v: &HomologyClass) -> Result<IntersectionForm, ReductionError> {
    match v.rank() {
        3 => Ok(IntersectionForm::diagonal(&[1, -1, -1]).expect("nondegenerate")),
        4 => Ok(IntersectionForm::diagonal(&[1, -1, -1, -1]).expect("nondegenerate")),
        _ => Err(ReductionError::UnsupportedForm),
    }
}

/// The `(-1)`- resp. `(-2)`-sphere class used as the reduction mirror for
/// non-negative squares: `(1,1,1)` in rank 3, `(1,1,1,1)` in rank 4.
pub fn nonnegative_mirror(rank: usize) -> HomologyClass {
    HomologyClass::new(vec![1; rank])
}

/// The square-2 sphere class `(2,1,1)` used for negative squares in rank 3.
pub fn negative_mirror_rank3() -> HomologyClass {
    HomologyClass::new(vec![2, 1, 1])
}

fn push_normalize_steps(v: &mut HomologyClass, steps: &mut Vec<Move>) {
    let rank = v.rank();
    let mut coords = v.coords().to_vec();
    for (i, c) in coords.iter_mut().enumerate() {
        if *c < 0 {
            *c = -*c;
            steps.push(Move::FlipSign(i));
        }
    }
    // stable descending sort of the blow-up coordinates
    let mut perm: Vec<usize> = (1..rank).collect();
    perm.sort_by_key(|&j| core::cmp::Reverse(coords[j]));
    let mut full = vec![0usize];
    full.extend(&perm);
    if full.iter().enumerate().any(|(i, &j)| i != j) {
        let sorted: Vec<i64> = full.iter().map(|&j| coords[j]).collect();
        coords = sorted;
        steps.push(Move::Permute(full));
    }
    *v = HomologyClass::new(coords);
}

/// Makes all coordinates non-negative and sorts the blow-up coordinates
/// descending. Works on `diag(1, -1, ..., -1)` of rank 3 or 4.
pub fn normalize(a: &HomologyClass) -> Result<(HomologyClass, ReductionTrace), ReductionError> {
    require_standard_form(a)?;
    let mut v = a.clone();
    let mut steps = Vec::new();
    push_normalize_steps(&mut v, &mut steps);
    Ok((v.clone(), ReductionTrace { start: a.clone(), end: v, steps }))
}

/// Canonical form for `square >= 0`: reflect in the `(1,...,1)` mirror while
/// `a < sum(b_i)`, normalizing between steps. `|a|` strictly decreases at
/// every reflection, so the loop terminates.
pub fn reduce_nonnegative(a: &HomologyClass) -> Result<(HomologyClass, ReductionTrace), ReductionError> {
    let form = require_standard_form(a)?;
    let sq = form.square(a)?;
    if sq < 0 {
        return Err(ReductionError::WrongRoutine { square: sq });
    }
    let mirror = nonnegative_mirror(a.rank());
    let mut v = a.clone();
    let mut steps = Vec::new();
    push_normalize_steps(&mut v, &mut steps);
    loop {
        let c = v.coord(0) - v.coords()[1..].iter().sum::<i64>();
        if c >= 0 {
            break;
        }
        let prev_a = v.coord(0);
        v = form.reflect(&mirror, &v)?;
        steps.push(Move::Reflect(mirror.clone()));
        debug_assert!(v.coord(0).abs() < prev_a, "reflection must shrink |a|");
        push_normalize_steps(&mut v, &mut steps);
    }
    Ok((v.clone(), ReductionTrace { start: a.clone(), end: v, steps }))
}

/// Canonical form for `square < 0` in rank 3: reflect in the `(2,1,1)`
/// sphere while `d = 2a - b1 - b2 < 0`, normalizing between steps, with an
/// iteration cap.
pub fn reduce_negative_rank3(a: &HomologyClass) -> Result<(HomologyClass, ReductionTrace), ReductionError> {
    if a.rank() != 3 {
        return Err(ReductionError::UnsupportedForm);
    }
    let form = require_standard_form(a)?;
    let sq = form.square(a)?;
    if sq >= 0 {
        return Err(ReductionError::WrongRoutine { square: sq });
    }
    let mirror = negative_mirror_rank3();
    let mut v = a.clone();
    let mut steps = Vec::new();
    push_normalize_steps(&mut v, &mut steps);
    for _ in 0..NEGATIVE_LOOP_CAP {
        let d = 2 * v.coord(0) - v.coord(1) - v.coord(2);
        if d >= 0 {
            return Ok((v.clone(), ReductionTrace { start: a.clone(), end: v, steps }));
        }
        v = form.reflect(&mirror, &v)?;
        steps.push(Move::Reflect(mirror.clone()));
        push_normalize_steps(&mut v, &mut steps);
    }
    Err(ReductionError::IterationCap { cap: NEGATIVE_LOOP_CAP })
}

/// Negative-square reduction, dispatching on rank.
pub fn reduce_negative(a: &HomologyClass) -> Result<(HomologyClass, ReductionTrace), ReductionError> {
    match a.rank() {
        3 => reduce_negative_rank3(a),
        4 => reduce_negative_rank4(a),
        _ => Err(ReductionError::UnsupportedForm),
    }
}

/// Rank-4 negative-square analogue: reflect in the `(-2)`-class
/// `(1,1,1,1)` while that strictly shrinks `|a|`. Unlike the rank-3 loop
/// the mirror can grow coordinates, so the loop stops at the last
/// normalized class once no shrinking reflection is available.
pub fn reduce_negative_rank4(a: &HomologyClass) -> Result<(HomologyClass, ReductionTrace), ReductionError> {
    if a.rank() != 4 {
        return Err(ReductionError::UnsupportedForm);
    }
    let form = require_standard_form(a)?;
    let sq = form.square(a)?;
    if sq >= 0 {
        return Err(ReductionError::WrongRoutine { square: sq });
    }
    let mirror = nonnegative_mirror(4);
    let mut v = a.clone();
    let mut steps = Vec::new();
    push_normalize_steps(&mut v, &mut steps);
    for _ in 0..NEGATIVE_LOOP_CAP {
        let c = v.coord(0) - v.coords()[1..].iter().sum::<i64>();
        // the reflection sends a to a + c; it shrinks |a| iff -2a < c < 0
        if c >= 0 || c <= -2 * v.coord(0) {
            return Ok((v.clone(), ReductionTrace { start: a.clone(), end: v, steps }));
        }
        v = form.reflect(&mirror, &v)?;
        steps.push(Move::Reflect(mirror.clone()));
        push_normalize_steps(&mut v, &mut steps);
    }
    Err(ReductionError::IterationCap { cap: NEGATIVE_LOOP_CAP })
}

/// All classes reachable from `a` by the given licensed sphere reflections
/// plus the coordinate symmetries of the form (sign flips and permutations
/// of equal-diagonal coordinates), truncated to the coordinate box
/// `|c_i| <= bound`. Deterministic order.
pub fn orbit_bfs(
    form: &IntersectionForm,
    spheres: &[HomologyClass],
    a: &HomologyClass,
    bound: i64,
) -> Result<Vec<HomologyClass>, ReductionError> {
    if a.max_abs_coord() > bound {
        return Err(ReductionError::BoundTooSmall { bound, needed: a.max_abs_coord() });
    }
    let rank = form.rank();
    let in_box = |v: &HomologyClass| v.max_abs_coord() <= bound;
    let mut seen: BTreeSet<HomologyClass> = BTreeSet::new();
    let mut queue: VecDeque<HomologyClass> = VecDeque::new();
    seen.insert(a.clone());
    queue.push_back(a.clone());
    while let Some(v) = queue.pop_front() {
        let mut neighbors: Vec<HomologyClass> = Vec::new();
        for s in spheres {
            neighbors.push(form.reflect(s, &v)?);
        }
        for i in 0..rank {
            let mut c = v.coords().to_vec();
            c[i] = -c[i];
            neighbors.push(HomologyClass::new(c));
        }
        let gram = form.gram();
        for i in 0..rank {
            for j in i + 1..rank {
                if gram[i][i] == gram[j][j] && transposition_preserves(gram, i, j) {
                    let mut c = v.coords().to_vec();
                    c.swap(i, j);
                    neighbors.push(HomologyClass::new(c));
                }
            }
        }
        for n in neighbors {
            if in_box(&n) && seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn transposition_preserves(gram: &[Vec<i64>], i: usize, j: usize) -> bool {
    let n = gram.len();
    (0..n).all(|k| {
        if k == i || k == j {
            true
        } else {
            gram[i][k] == gram[j][k]
        }
    }) && gram[i][j] == gram[j][i]
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::UnsupportedForm => {
                write!(f, "reduction supports diag(1,-1,...,-1) of rank 3 or 4 only")
            }
            ReductionError::WrongRoutine { square } => {
                write!(f, "class square {square} routed to the wrong reduction routine")
            }
            ReductionError::IterationCap { cap } => {
                write!(f, "reduction loop exceeded {cap} iterations without a fixpoint")
            }
            ReductionError::BoundTooSmall { bound, needed } => {
                write!(f, "orbit bound {bound} smaller than start coordinate {needed}")
            }
            ReductionError::Lattice(e) => write!(f, "{e}"),
        }
    }
}
