//! Combinatorial genus arithmetic for surface constructions: resolving
//! transverse intersection points, tubing components together, unbranched
//! covers, plane line arrangements under blow-ups, and the negative-square
//! upper-bound recipe.
//!
//! Smoothing one transverse intersection point drops the Euler
//! characteristic by 2 regardless of the sign of the point; the sign only
//! decides whether the resolution stays symplectic.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    /// `resolve_genus` needs a connected intersection graph; tube first.
    Disconnected,
    DuplicateLabel(String),
    ZeroMultiplicity,
    /// Spheres have no connected covers of degree > 1.
    SphereCover,
    BadArrangement,
    Overflow,
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::Disconnected => {
                write!(f, "intersection graph is disconnected; tube the pieces first")
            }
            SurfaceError::DuplicateLabel(l) => write!(f, "duplicate component label {l}"),
            SurfaceError::ZeroMultiplicity => write!(f, "intersection multiplicities must be >= 1"),
            SurfaceError::SphereCover => {
                write!(f, "genus-0 components admit no connected covers of degree > 1")
            }
            SurfaceError::BadArrangement => {
                write!(f, "arrangement needs a >= sum of multiplicities >= 0")
            }
            SurfaceError::Overflow => write!(f, "integer overflow in genus bookkeeping"),
        }
    }
}

/// A configuration of embedded surfaces meeting transversely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceConfiguration {
    components: Vec<(String, u64)>,
    /// `(i, j, points, positive)`: components i and j meet in `points`
    /// transverse points of the given sign.
    intersections: Vec<(usize, usize, u64, bool)>,
}

impl SurfaceConfiguration {
    pub fn new() -> Self {
        SurfaceConfiguration { components: Vec::new(), intersections: Vec::new() }
    }

    pub fn add_component(&mut self, label: impl Into<String>, genus: u64) -> Result<usize, SurfaceError> {
        let label = label.into();
        if self.components.iter().any(|(l, _)| *l == label) {
            return Err(SurfaceError::DuplicateLabel(label));
        }
        self.components.push((label, genus));
        Ok(self.components.len() - 1)
    }

    pub fn add_intersection(&mut self, i: usize, j: usize, points: u64, positive: bool) -> Result<(), SurfaceError> {
        if points == 0 {
            return Err(SurfaceError::ZeroMultiplicity);
        }
        self.intersections.push((i, j, points, positive));
        Ok(())
    }

    pub fn components(&self) -> &[(String, u64)] {
        &self.components
    }

    fn total_points(&self) -> u64 {
        self.intersections.iter().map(|&(_, _, p, _)| p).sum()
    }

    /// Connected components of the intersection graph, as index sets.
    fn graph_components(&self) -> Vec<Vec<usize>> {
        let n = self.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(i, j, _, _) in &self.intersections {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
        }
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let r = find(&mut parent, i);
            groups[r].push(i);
        }
        groups.into_iter().filter(|g| !g.is_empty()).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.graph_components().len() <= 1
    }
}

impl Default for SurfaceConfiguration {
    fn default() -> Self {
        Self::new()
    }
}

/// Genus of the surface obtained by smoothing every intersection point of a
/// connected configuration: `sum(g_i) + I - C + 1`.
pub fn resolve_genus(config: &SurfaceConfiguration) -> Result<u64, SurfaceError> {
    if !config.is_connected() {
        return Err(SurfaceError::Disconnected);
    }
    let g_sum: u64 = config.components.iter().map(|&(_, g)| g).sum();
    let i = config.total_points();
    let c = config.components.len() as u64;
    // spanning connectivity gives I >= C - 1, so this cannot underflow
    Ok(g_sum + i + 1 - c)
}

/// Connected sum of two embedded surfaces: genera add.
pub fn tube_genus(g1: u64, g2: u64) -> u64 {
    g1 + g2
}

/// Resolves each connected piece of the intersection graph separately, then
/// tubes the pieces together.
pub fn resolve_genus_tubed(config: &SurfaceConfiguration) -> Result<u64, SurfaceError> {
    let mut total = 0u64;
    for group in config.graph_components() {
        let mut sub = SurfaceConfiguration::new();
        let mut remap = vec![usize::MAX; config.components.len()];
        for &idx in &group {
            let (l, g) = &config.components[idx];
            remap[idx] = sub.add_component(l.clone(), *g)?;
        }
        for &(i, j, p, pos) in &config.intersections {
            if remap[i] != usize::MAX && remap[j] != usize::MAX {
                sub.add_intersection(remap[i], remap[j], p, pos)?;
            }
        }
        total = tube_genus(total, resolve_genus(&sub)?);
    }
    Ok(total)
}

/// Genus of a connected unbranched degree-`t` cover of a genus-`g` surface:
/// `t (g - 1) + 1` by Euler characteristic multiplicativity.
pub fn cover_genus(g: u64, t: u64) -> Result<u64, SurfaceError> {
    if t == 0 {
        return Err(SurfaceError::ZeroMultiplicity);
    }
    if g == 0 && t > 1 {
        return Err(SurfaceError::SphereCover);
    }
    Ok(t * (g - 1) + 1)
}

/// Genus of the curve obtained from `a` projective lines, `m_i` of them
/// passing through the point `P_i`, after blowing up every `P_i` and
/// smoothing the surviving double points.
///
/// Built from the explicit sphere configuration (this is the independent
/// oracle for the closed genus formula): lines through the same blown-up
/// point become disjoint, every other pair still meets once. Disjoint
/// pieces (which occur only when one pencil absorbs all lines) are tubed.
pub fn line_arrangement_genus(a: u64, multiplicities: &[u64]) -> Result<u64, SurfaceError> {
    let msum: u64 = multiplicities.iter().sum();
    if msum > a {
        return Err(SurfaceError::BadArrangement);
    }
    let mut config = SurfaceConfiguration::new();
    // pencil assignment per line: usize::MAX marks a generic line
    let mut pencil: Vec<usize> = Vec::new();
    for (p, &m) in multiplicities.iter().enumerate() {
        for _ in 0..m {
            pencil.push(p);
        }
    }
    while pencil.len() < a as usize {
        pencil.push(usize::MAX);
    }
    use core::fmt::Write;
    for i in 0..a as usize {
        let mut label = String::from("line");
        let _ = write!(label, "{i}");
        config.add_component(label, 0)?;
    }
    for i in 0..a as usize {
        for j in i + 1..a as usize {
            let same_pencil = pencil[i] != usize::MAX && pencil[i] == pencil[j];
            if !same_pencil {
                config.add_intersection(i, j, 1, true)?;
            }
        }
    }
    if a == 0 {
        return Ok(0);
    }
    resolve_genus_tubed(&config)
}

/// Upper-bound recipe for negative-square classes `(a, b1, b2)` of the
/// twice blown up projective plane, normalized so that `b1 >= b2`,
/// `2a >= b1 + b2` and `a >= b2`: a base curve in the class `(a, a-b2, b2)`
/// plus `m = b1 + b2 - a` parallel copies of the exceptional sphere, each
/// meeting the base in `a - b2` points and each other copy once. Upper
/// bound only; the resolved points include negative ones.
pub fn negative_square_upper_bound(a: u64, b1: u64, b2: u64) -> Result<u64, SurfaceError> {
    if b1 < b2 || a < b2 || 2 * a < b1 + b2 {
        return Err(SurfaceError::BadArrangement);
    }
    let square = (a * a) as i128 - (b1 * b1) as i128 - (b2 * b2) as i128;
    if square > 0 {
        return Err(SurfaceError::BadArrangement);
    }
    let m = b1 + b2 - a; // b1 > a - b2 whenever the square is negative
    let base_genus = line_arrangement_genus(a, &[a - b2, b2])?;
    if m == 0 {
        return Ok(base_genus);
    }
    let mut config = SurfaceConfiguration::new();
    let base = config.add_component("base", base_genus)?;
    let mut spheres = Vec::new();
    use core::fmt::Write;
    for i in 0..m {
        let mut label = String::from("exc");
        let _ = write!(label, "{i}");
        spheres.push(config.add_component(label, 0)?);
    }
    for (idx, &s) in spheres.iter().enumerate() {
        if a > b2 {
            config.add_intersection(base, s, a - b2, false)?;
        }
        for &s2 in &spheres[idx + 1..] {
            config.add_intersection(s, s2, 1, false)?;
        }
    }
    resolve_genus_tubed(&config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolve_examples() {
        let mut c = SurfaceConfiguration::new();
        let x = c.add_component("B", 2).unwrap();
        let y = c.add_component("C", 3).unwrap();
        c.add_intersection(x, y, 1, true).unwrap();
        assert_eq!(resolve_genus(&c).unwrap(), 5);

        let mut single = SurfaceConfiguration::new();
        single.add_component("S", 7).unwrap();
        assert_eq!(resolve_genus(&single).unwrap(), 7);
    }

    #[test]
    fn resolve_cross_grid() {
        // a copies and b copies of genus-2 surfaces, each cross-pair meeting
        // once: genus (a+1)(b+1)
        for a in 1u64..5 {
            for b in 1u64..5 {
                let mut c = SurfaceConfiguration::new();
                use std::format;
                let left: Vec<usize> =
                    (0..a).map(|i| c.add_component(format!("h{i}"), 2).unwrap()).collect();
                let right: Vec<usize> =
                    (0..b).map(|i| c.add_component(format!("v{i}"), 2).unwrap()).collect();
                for &l in &left {
                    for &r in &right {
                        c.add_intersection(l, r, 1, true).unwrap();
                    }
                }
                assert_eq!(resolve_genus(&c).unwrap(), (a + 1) * (b + 1));
            }
        }
    }

    #[test]
    fn resolve_requires_connected() {
        let mut c = SurfaceConfiguration::new();
        c.add_component("A", 1).unwrap();
        c.add_component("B", 1).unwrap();
        assert_eq!(resolve_genus(&c), Err(SurfaceError::Disconnected));
        assert_eq!(resolve_genus_tubed(&c).unwrap(), 2);
    }

    #[test]
    fn tube_examples() {
        assert_eq!(tube_genus(5, 2), 7);
        assert_eq!(tube_genus(0, 0), 0);
        assert_eq!(tube_genus(2, 2), 4);
    }

    #[test]
    fn cover_examples() {
        assert_eq!(cover_genus(2, 1).unwrap(), 2);
        for t in 1u64..8 {
            assert_eq!(cover_genus(2, t).unwrap(), t + 1);
        }
        assert_eq!(cover_genus(3, 2).unwrap(), 5);
        assert_eq!(cover_genus(0, 2), Err(SurfaceError::SphereCover));
    }

    #[test]
    fn cover_tower() {
        for g in 1u64..5 {
            for s in 1u64..4 {
                for t in 1u64..4 {
                    assert_eq!(
                        cover_genus(g, s * t).unwrap(),
                        cover_genus(cover_genus(g, s).unwrap(), t).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn arrangement_examples() {
        assert_eq!(line_arrangement_genus(3, &[1, 1]).unwrap(), 1);
        assert_eq!(line_arrangement_genus(1, &[]).unwrap(), 0);
        // all lines through one point: disjoint spheres tube to a sphere
        assert_eq!(line_arrangement_genus(4, &[4]).unwrap(), 0);
        assert_eq!(line_arrangement_genus(4, &[2, 1]).unwrap(), 2);
        assert_eq!(line_arrangement_genus(5, &[]).unwrap(), 6);
    }

    #[test]
    fn negative_square_recipe_examples() {
        assert_eq!(negative_square_upper_bound(1, 2, 0).unwrap(), 0);
        assert_eq!(negative_square_upper_bound(2, 3, 1).unwrap(), 1);
    }
}
