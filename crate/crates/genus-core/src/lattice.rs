//! Exact integer bilinear-form arithmetic on `(H_2(X; Z), Q_X)`.
//!
//! Pairings, squares, characteristic vectors, sphere reflections and
//! definiteness tests, all in checked integer arithmetic.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    DimensionMismatch { expected: usize, got: usize },
    NotSymmetric,
    Degenerate,
    Overflow,
    /// Reflections are realized by diffeomorphisms only for sphere classes
    /// of square +-1 or +-2.
    ReflectionNotLicensed { square: i64 },
    EmptySpan,
    BadRank,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            LatticeError::NotSymmetric => write!(f, "Gram matrix is not symmetric"),
            LatticeError::Degenerate => write!(f, "intersection form is degenerate"),
            LatticeError::Overflow => write!(f, "integer overflow in lattice arithmetic"),
            LatticeError::ReflectionNotLicensed { square } => {
                write!(f, "reflection not licensed: sphere square {square} not in {{+-1, +-2}}")
            }
            LatticeError::EmptySpan => write!(f, "empty vector list has no span"),
            LatticeError::BadRank => write!(f, "rank must be positive"),
        }
    }
}

fn to_i64(v: i128) -> Result<i64, LatticeError> {
    i64::try_from(v).map_err(|_| LatticeError::Overflow)
}

/// Integer coordinate vector in a fixed basis of `H_2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomologyClass {
    coords: Vec<i64>,
}

impl HomologyClass {
    pub fn new(coords: Vec<i64>) -> Self {
        HomologyClass { coords }
    }

    pub fn zero(rank: usize) -> Self {
        HomologyClass { coords: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Self {
        HomologyClass { coords: self.coords.iter().map(|&c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LatticeError> {
        if self.rank() != other.rank() {
            return Err(LatticeError::DimensionMismatch { expected: self.rank(), got: other.rank() });
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| a.checked_add(b).ok_or(LatticeError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(HomologyClass { coords })
    }

    pub fn scale(&self, k: i64) -> Result<Self, LatticeError> {
        let coords = self
            .coords
            .iter()
            .map(|&c| c.checked_mul(k).ok_or(LatticeError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(HomologyClass { coords })
    }

    /// `self + k * other`, the combination reflections are made of.
    pub fn add_scaled(&self, k: i64, other: &Self) -> Result<Self, LatticeError> {
        self.add(&other.scale(k)?)
    }

    pub fn max_abs_coord(&self) -> i64 {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn display(&self) -> String {
        use core::fmt::Write;
        let mut s = String::from("(");
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{c}");
        }
        s.push(')');
        s
    }
}

/// Symmetric integer Gram matrix with signature data: the lattice
/// `(H_2(X; Z), Q_X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    rank: usize,
    gram: Vec<Vec<i64>>,
    b2_plus: usize,
    b2_minus: usize,
}

impl IntersectionForm {
    /// Builds a form from its Gram matrix, computing `b2+`/`b2-` by exact
    /// integer congruence diagonalization. Degenerate forms are rejected.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let rank = gram.len();
        if rank == 0 {
            return Err(LatticeError::BadRank);
        }
        for row in &gram {
            if row.len() != rank {
                return Err(LatticeError::DimensionMismatch { expected: rank, got: row.len() });
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        let (b2_plus, b2_minus, zeros) = signature_of(&gram)?;
        if zeros > 0 {
            return Err(LatticeError::Degenerate);
        }
        Ok(IntersectionForm { rank, gram, b2_plus, b2_minus })
    }

    /// `diag(entries)`.
    pub fn diagonal(entries: &[i64]) -> Result<Self, LatticeError> {
        let rank = entries.len();
        let mut gram = vec![vec![0i64; rank]; rank];
        for (i, &e) in entries.iter().enumerate() {
            gram[i][i] = e;
        }
        IntersectionForm::new(gram)
    }

    /// The rank-2 hyperbolic pair `[[0,1],[1,0]]`.
    pub fn hyperbolic_pair() -> Self {
        IntersectionForm::new(vec![vec![0, 1], vec![1, 0]]).expect("hyperbolic pair is nondegenerate")
    }

    /// Block direct sum.
    pub fn direct_sum(blocks: &[IntersectionForm]) -> Result<Self, LatticeError> {
        let rank: usize = blocks.iter().map(|b| b.rank).sum();
        let mut gram = vec![vec![0i64; rank]; rank];
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rank {
                for j in 0..b.rank {
                    gram[off + i][off + j] = b.gram[i][j];
                }
            }
            off += b.rank;
        }
        IntersectionForm::new(gram)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn b2_plus(&self) -> usize {
        self.b2_plus
    }

    pub fn b2_minus(&self) -> usize {
        self.b2_minus
    }

    pub fn signature(&self) -> i64 {
        self.b2_plus as i64 - self.b2_minus as i64
    }

    fn check_dim(&self, a: &HomologyClass) -> Result<(), LatticeError> {
        if a.rank() != self.rank {
            return Err(LatticeError::DimensionMismatch { expected: self.rank, got: a.rank() });
        }
        Ok(())
    }

    /// `a^T . gram . b`; symmetric in its arguments.
    pub fn pairing(&self, a: &HomologyClass, b: &HomologyClass) -> Result<i64, LatticeError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let mut acc: i128 = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += a.coords[i] as i128 * self.gram[i][j] as i128 * b.coords[j] as i128;
            }
        }
        to_i64(acc)
    }

    /// Self-intersection `Q(a, a)`.
    pub fn square(&self, a: &HomologyClass) -> Result<i64, LatticeError> {
        self.pairing(a, a)
    }

    /// `a` is characteristic iff `Q(a, x) = Q(x, x) mod 2` for all `x`
    /// (checked on basis vectors; linearity handles the rest).
    pub fn is_characteristic(&self, a: &HomologyClass) -> Result<bool, LatticeError> {
        self.check_dim(a)?;
        for i in 0..self.rank {
            let mut p: i128 = 0;
            for j in 0..self.rank {
                p += self.gram[i][j] as i128 * a.coords[j] as i128;
            }
            if (p - self.gram[i][i] as i128).rem_euclid(2) != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reflection `a -> a - 2 (Q(s,a)/Q(s,s)) s` in a sphere class `s` of
    /// square +-1 or +-2. Division is exact under that restriction.
    pub fn reflect(&self, s: &HomologyClass, a: &HomologyClass) -> Result<HomologyClass, LatticeError> {
        let sq = self.square(s)?;
        if !matches!(sq, 1 | -1 | 2 | -2) {
            return Err(LatticeError::ReflectionNotLicensed { square: sq });
        }
        let p = self.pairing(s, a)?;
        let two_p = p.checked_mul(2).ok_or(LatticeError::Overflow)?;
        debug_assert_eq!(two_p % sq, 0);
        let k = -(two_p / sq);
        a.add_scaled(k, s)
    }

    /// True iff the Gram matrix of `vectors` has all leading principal
    /// minors `> 0` (Sylvester: independent and spanning positive definite).
    pub fn is_positive_definite_span(&self, vectors: &[HomologyClass]) -> Result<bool, LatticeError> {
        if vectors.is_empty() {
            return Err(LatticeError::EmptySpan);
        }
        let k = vectors.len();
        let mut g = vec![vec![0i128; k]; k];
        for i in 0..k {
            for j in 0..k {
                g[i][j] = self.pairing(&vectors[i], &vectors[j])? as i128;
            }
        }
        for lead in 1..=k {
            let minor = det_bareiss(&g, lead)?;
            if minor <= 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Determinant of the leading `n x n` block by fraction-free (Bareiss)
/// elimination over i128.
fn det_bareiss(m: &[Vec<i128>], n: usize) -> Result<i128, LatticeError> {
    let mut a: Vec<Vec<i128>> = m.iter().take(n).map(|r| r[..n].to_vec()).collect();
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Ok(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k]
                    .checked_mul(a[i][j])
                    .and_then(|x| a[i][k].checked_mul(a[k][j]).map(|y| (x, y)))
                    .and_then(|(x, y)| x.checked_sub(y))
                    .ok_or(LatticeError::Overflow)?;
                a[i][j] = num / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

/// Counts positive, negative and zero diagonal entries after symmetric
/// (congruence) diagonalization over the integers.
fn signature_of(gram: &[Vec<i64>]) -> Result<(usize, usize, usize), LatticeError> {
    let n = gram.len();
    let mut a: Vec<Vec<i128>> = gram.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut plus = 0;
    let mut minus = 0;
    let mut zeros = 0;
    let mut k = 0;
    while k < n {
        if a[k][k] == 0 {
            if let Some(i) = (k + 1..n).find(|&i| a[i][i] != 0) {
                // symmetric swap of basis vectors k and i
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| a[k][j] != 0) {
                // add basis vector j to k; new square is 2 a[k][j] != 0
                for col in 0..n {
                    let add = a[j][col];
                    a[k][col] = a[k][col].checked_add(add).ok_or(LatticeError::Overflow)?;
                }
                for row in 0..n {
                    let add = a[row][j];
                    a[row][k] = a[row][k].checked_add(add).ok_or(LatticeError::Overflow)?;
                }
            } else {
                // row (and column) k pair trivially with everything remaining
                zeros += 1;
                k += 1;
                continue;
            }
        }
        let d = a[k][k];
        if d > 0 {
            plus += 1;
        } else {
            minus += 1;
        }
        // clear row/column k: v_i <- d v_i - a[k][i] v_k, which keeps
        // integer entries and multiplies squares by d^2 (sign-preserving)
        for i in k + 1..n {
            let c = a[k][i];
            if c == 0 {
                continue;
            }
            for col in 0..n {
                let x = d.checked_mul(a[i][col]).ok_or(LatticeError::Overflow)?;
                let y = c.checked_mul(a[k][col]).ok_or(LatticeError::Overflow)?;
                a[i][col] = x.checked_sub(y).ok_or(LatticeError::Overflow)?;
            }
            for row in 0..n {
                let x = d.checked_mul(a[row][i]).ok_or(LatticeError::Overflow)?;
                let y = c.checked_mul(a[row][k]).ok_or(LatticeError::Overflow)?;
                a[row][i] = x.checked_sub(y).ok_or(LatticeError::Overflow)?;
            }
        }
        k += 1;
    }
    Ok((plus, minus, zeros))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(c: &[i64]) -> HomologyClass {
        HomologyClass::new(c.to_vec())
    }

    #[test]
    fn pairing_examples() {
        let q = IntersectionForm::diagonal(&[1, -1, -1]).unwrap();
        assert_eq!(q.pairing(&cls(&[5, 4, 3]), &cls(&[5, 4, 3])).unwrap(), 0);
        assert_eq!(q.pairing(&cls(&[2, 1, 1]), &cls(&[2, 1, 1])).unwrap(), 2);
        let h = IntersectionForm::hyperbolic_pair();
        assert_eq!(h.pairing(&cls(&[1, 0]), &cls(&[0, 1])).unwrap(), 1);
    }

    #[test]
    fn square_examples() {
        let q3 = IntersectionForm::diagonal(&[1, -1, -1]).unwrap();
        assert_eq!(q3.square(&cls(&[1, 1, 1])).unwrap(), -1);
        let q4 = IntersectionForm::diagonal(&[1, -1, -1, -1]).unwrap();
        assert_eq!(q4.square(&cls(&[1, 1, 1, 1])).unwrap(), -2);
        assert_eq!(q4.square(&HomologyClass::zero(4)).unwrap(), 0);
    }

    #[test]
    fn characteristic_examples() {
        let q = IntersectionForm::diagonal(&[1, -1, -1]).unwrap();
        assert!(q.is_characteristic(&cls(&[1, 1, 1])).unwrap());
        assert!(!q.is_characteristic(&cls(&[2, 1, 1])).unwrap());
        assert!(q.is_characteristic(&cls(&[3, 1, 1])).unwrap());
    }

    #[test]
    fn reflect_examples() {
        let q = IntersectionForm::diagonal(&[1, -1, -1]).unwrap();
        let s = cls(&[1, 1, 1]);
        assert_eq!(q.reflect(&s, &cls(&[5, 4, 3])).unwrap(), cls(&[1, 0, -1]));
        // reflecting the mirror class itself negates it
        assert_eq!(q.reflect(&s, &s).unwrap(), s.neg());
        let s2 = cls(&[2, 1, 1]);
        assert_eq!(q.reflect(&s2, &cls(&[1, 3, 1])).unwrap(), cls(&[5, 5, 3]));
    }

    #[test]
    fn reflect_unlicensed() {
        let q = IntersectionForm::diagonal(&[1, -1, -1]).unwrap();
        let s = cls(&[2, 1, 0]); // square 3
        assert_eq!(
            q.reflect(&s, &cls(&[1, 0, 0])),
            Err(LatticeError::ReflectionNotLicensed { square: 3 })
        );
    }

    #[test]
    fn positive_definite_span_examples() {
        let q = IntersectionForm::diagonal(&[1, -1, -1]).unwrap();
        assert!(!q.is_positive_definite_span(&[cls(&[1, 1, 0])]).unwrap());
        assert!(q.is_positive_definite_span(&[cls(&[2, 1, 1])]).unwrap());
        assert_eq!(q.is_positive_definite_span(&[]), Err(LatticeError::EmptySpan));
        // K3-style: three orthogonal square-2 vectors, Gram diag(2,2,2)
        let k3 = IntersectionForm::direct_sum(&[
            IntersectionForm::hyperbolic_pair(),
            IntersectionForm::hyperbolic_pair(),
            IntersectionForm::hyperbolic_pair(),
        ])
        .unwrap();
        let vs = [
            cls(&[1, 1, 0, 0, 0, 0]),
            cls(&[0, 0, 1, 1, 0, 0]),
            cls(&[0, 0, 0, 0, 1, 1]),
        ];
        assert!(k3.is_positive_definite_span(&vs).unwrap());
    }

    #[test]
    fn signature_hyperbolic() {
        let h = IntersectionForm::hyperbolic_pair();
        assert_eq!((h.b2_plus(), h.b2_minus()), (1, 1));
        let q = IntersectionForm::diagonal(&[1, -1, -1, -1]).unwrap();
        assert_eq!((q.b2_plus(), q.b2_minus()), (1, 3));
        assert_eq!(q.signature(), -2);
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(
            IntersectionForm::diagonal(&[1, 0]),
            Err(LatticeError::Degenerate)
        );
        let g = vec![vec![1, 1], vec![1, 1]];
        assert_eq!(IntersectionForm::new(g), Err(LatticeError::Degenerate));
    }
}
