//! Root data for a product of simple factors and a central torus.
//!
//! All vectors live in the standard basis: the fundamental weights of the
//! simply connected semisimple part, followed by a basis of central
//! characters. In that basis a simple reflection acts by
//! `s_i(v) = v - v_i * alpha_i`, independent of the chosen invariant form.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid Cartan type {letter}{rank}")]
    InvalidCartanType { letter: String, rank: usize },
    #[error("vector length {got} does not match total rank {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("factor index {0} out of range")]
    NoSuchFactor(usize),
    #[error("scale factor must be a positive rational")]
    NonPositiveScale,
}

/// A point of the real span of the character lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(pub Vec<Rational>);

impl WeightVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![Rational::zero(); len])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * s).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        WeightVector(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanLetter {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Self::A,
            "B" => Self::B,
            "C" => Self::C,
            "D" => Self::D,
            "E" => Self::E,
            "F" => Self::F,
            "G" => Self::G,
            _ => return None,
        })
    }
}

impl fmt::Display for CartanLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
            Self::E => "E",
            Self::F => "F",
            Self::G => "G",
        };
        f.write_str(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleFactor {
    pub letter: CartanLetter,
    pub rank: usize,
}

impl SimpleFactor {
    pub fn new(letter: CartanLetter, rank: usize) -> Result<Self, RootSystemError> {
        use CartanLetter::*;
        let ok = match letter {
            A => rank >= 1,
            B | C => rank >= 2,
            D => rank >= 3,
            E => (6..=8).contains(&rank),
            F => rank == 4,
            G => rank == 2,
        };
        if ok {
            Ok(Self { letter, rank })
        } else {
            Err(RootSystemError::InvalidCartanType {
                letter: letter.to_string(),
                rank,
            })
        }
    }

    /// Cartan matrix with entries `<alpha_i, alpha_j^vee>`, Bourbaki numbering.
    /// Row `i` is the simple root `alpha_i` in fundamental-weight coordinates.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        use CartanLetter::*;
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.letter {
            A | B | C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            G => link(0, 1),
        }
        match self.letter {
            // alpha_n short
            B => a[n - 2][n - 1] = -2,
            // alpha_n long
            C => a[n - 1][n - 2] = -2,
            // alpha_3, alpha_4 short
            F => a[1][2] = -2,
            // alpha_1 short, alpha_2 long
            G => a[1][0] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// Half-squared lengths `d_i = (alpha_i, alpha_i)/2`, normalized so long
/// roots have `d = 1`. Solves `A_ij d_j = A_ji d_i` along the Dynkin graph.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<Rational> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    d[0] = Some(Rational::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let di = d[i].clone().expect("visited");
        for j in 0..n {
            if j != i && cartan[i][j] != 0 && d[j].is_none() {
                d[j] = Some(di.clone() * Rational::from_integer(cartan[j][i].into())
                    / Rational::from_integer(cartan[i][j].into()));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let max = d.iter().max().cloned().expect("nonempty");
    d.into_iter().map(|x| x / &max).collect()
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    factors: Vec<SimpleFactor>,
    central_rank: usize,
    total_rank: usize,
    /// Coordinate offset of each factor's block.
    offsets: Vec<usize>,
    simple_roots: Vec<WeightVector>,
    positive_roots: Vec<WeightVector>,
    rho: WeightVector,
    gram: Matrix,
}

/// Builds the root system of `factors × (central torus of rank central_rank)`.
pub fn build_root_system(
    factors: &[(CartanLetter, usize)],
    central_rank: usize,
) -> Result<RootSystem, RootSystemError> {
    let factors = factors
        .iter()
        .map(|&(l, r)| SimpleFactor::new(l, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RootSystem::new(factors, central_rank))
}

impl RootSystem {
    pub fn new(factors: Vec<SimpleFactor>, central_rank: usize) -> Self {
        let semisimple_rank: usize = factors.iter().map(|f| f.rank).sum();
        let k = semisimple_rank + central_rank;
        let mut offsets = Vec::with_capacity(factors.len());
        let mut gram = linalg::zeros(k, k);
        let mut simple_roots = Vec::new();
        let mut positive_roots = Vec::new();
        let mut off = 0;
        for factor in &factors {
            offsets.push(off);
            let cartan = factor.cartan_matrix();
            let r = factor.rank;
            let a: Matrix = cartan
                .iter()
                .map(|row| row.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect();
            // (omega_i, omega_j) = (A^{-1} diag(d))_ij
            let d = symmetrizer(&cartan);
            let ainv = linalg::inverse(&a).expect("Cartan matrices are invertible");
            for i in 0..r {
                for j in 0..r {
                    gram[off + i][off + j] = &ainv[i][j] * &d[j];
                }
            }
            let embed = |v: &[Rational]| {
                let mut full = vec![Rational::zero(); k];
                full[off..off + r].clone_from_slice(v);
                WeightVector(full)
            };
            for row in &a {
                simple_roots.push(embed(row));
            }
            for root in factor_positive_roots(&a) {
                positive_roots.push(embed(&root));
            }
            off += r;
        }
        for c in semisimple_rank..k {
            gram[c][c] = Rational::one();
        }
        let mut rho = WeightVector::zero(k);
        for r in &positive_roots {
            rho = &rho + r;
        }
        let rho = rho.scale(&Rational::new(1.into(), 2.into()));
        Self {
            factors,
            central_rank,
            total_rank: k,
            offsets,
            simple_roots,
            positive_roots,
            rho,
            gram,
        }
    }

    /// A copy with the invariant form rescaled by `scale` on one simple factor.
    pub fn with_factor_scale(
        &self,
        factor: usize,
        scale: &Rational,
    ) -> Result<Self, RootSystemError> {
        if !scale.is_positive() {
            return Err(RootSystemError::NonPositiveScale);
        }
        let f = self.factors.get(factor).ok_or(RootSystemError::NoSuchFactor(factor))?;
        let off = self.offsets[factor];
        let mut out = self.clone();
        for i in off..off + f.rank {
            for j in off..off + f.rank {
                out.gram[i][j] = &out.gram[i][j] * scale;
            }
        }
        Ok(out)
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn central_rank(&self) -> usize {
        self.central_rank
    }

    pub fn total_rank(&self) -> usize {
        self.total_rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.total_rank - self.central_rank
    }

    /// Group dimension `n = k + 2|R+|`.
    pub fn dimension(&self) -> usize {
        self.total_rank + 2 * self.positive_roots.len()
    }

    pub fn simple_roots(&self) -> &[WeightVector] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[WeightVector] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &WeightVector {
        &self.rho
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Simple-root coordinate matrix: column `i` is `alpha_i`, identity on
    /// the central block.
    pub fn root_lattice_basis(&self) -> Matrix {
        let k = self.total_rank;
        let mut m = linalg::zeros(k, k);
        for (i, root) in self.simple_roots.iter().enumerate() {
            for (row, x) in root.0.iter().enumerate() {
                m[row][i] = x.clone();
            }
        }
        for c in self.semisimple_rank()..k {
            m[c][c] = Rational::one();
        }
        m
    }

    fn check_len(&self, v: &WeightVector) -> Result<(), RootSystemError> {
        if v.len() == self.total_rank {
            Ok(())
        } else {
            Err(RootSystemError::LengthMismatch {
                expected: self.total_rank,
                got: v.len(),
            })
        }
    }

    pub fn inner_product(
        &self,
        v: &WeightVector,
        w: &WeightVector,
    ) -> Result<Rational, RootSystemError> {
        self.check_len(v)?;
        self.check_len(w)?;
        Ok(self.pair(v.coords(), w.coords()))
    }

    /// `v^T G w` without length checks.
    pub(crate) fn pair(&self, v: &[Rational], w: &[Rational]) -> Rational {
        linalg::dot(v, &linalg::mat_vec(&self.gram, w))
    }

    /// The covector `x ↦ (x, v)` in standard coordinates.
    pub fn pairing_covector(&self, v: &WeightVector) -> Vec<Rational> {
        linalg::mat_vec(&self.gram, v.coords())
    }

    /// Reflection in the `i`-th simple root.
    pub fn reflect(&self, i: usize, v: &WeightVector) -> WeightVector {
        let coord = &v.0[i];
        if coord.is_zero() {
            return v.clone();
        }
        WeightVector(
            v.0.iter()
                .zip(&self.simple_roots[i].0)
                .map(|(x, a)| x - coord * a)
                .collect(),
        )
    }

    /// Full Weyl orbit, lexicographically sorted.
    pub fn weyl_orbit(&self, v: &WeightVector) -> Vec<WeightVector> {
        let mut seen = BTreeSet::from([v.clone()]);
        let mut queue = VecDeque::from([v.clone()]);
        while let Some(u) = queue.pop_front() {
            for i in 0..self.simple_roots.len() {
                let w = self.reflect(i, &u);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Closure of a finite set under the Weyl group, lexicographically sorted.
    pub fn weyl_closure(&self, points: &[WeightVector]) -> Vec<WeightVector> {
        let mut all = BTreeSet::new();
        for p in points {
            if !all.contains(p) {
                all.extend(self.weyl_orbit(p));
            }
        }
        all.into_iter().collect()
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl_orbit(&self.rho).len()
    }

    pub fn is_dominant(&self, v: &WeightVector) -> bool {
        self.simple_roots
            .iter()
            .all(|a| !self.pair(v.coords(), a.coords()).is_negative())
    }

    /// The dominant chamber as `normal · x <= 0`, one row per simple root.
    pub fn chamber_inequalities(&self) -> Vec<(Vec<Rational>, Rational)> {
        self.simple_roots
            .iter()
            .map(|a| {
                let n = self.pairing_covector(a).into_iter().map(|x| -x).collect();
                (n, Rational::zero())
            })
            .collect()
    }

    /// True when `v` lies on some reflection hyperplane.
    pub fn on_wall(&self, v: &WeightVector) -> bool {
        self.positive_roots
            .iter()
            .any(|a| self.pair(v.coords(), a.coords()).is_zero())
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.factors.iter().map(|f| f.to_string()).collect();
        if self.central_rank > 0 {
            parts.push(format!("T{}", self.central_rank));
        }
        if parts.is_empty() {
            "trivial".to_string()
        } else {
            parts.join("×")
        }
    }
}

/// Positive roots of one simple factor, generated as the reflection orbit
/// of the simple roots and filtered by sign in simple-root coordinates.
/// Sorted by height, then lexicographically.
fn factor_positive_roots(cartan: &Matrix) -> Vec<Vec<Rational>> {
    let r = cartan.len();
    let mut seen: BTreeSet<Vec<Rational>> = cartan.iter().cloned().collect();
    let mut queue: VecDeque<Vec<Rational>> = cartan.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        for i in 0..r {
            if v[i].is_zero() {
                continue;
            }
            let w: Vec<Rational> = v.iter().zip(&cartan[i]).map(|(x, a)| x - &v[i] * a).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    // v = A^T c
    let at = linalg::transpose(cartan);
    let mut pos: Vec<(Rational, Vec<Rational>)> = seen
        .into_iter()
        .filter_map(|v| {
            let c = linalg::solve(&at, &v).expect("invertible");
            if c.iter().all(|x| !x.is_negative()) {
                let height = c.iter().fold(Rational::zero(), |s, x| s + x);
                Some((height, v))
            } else {
                None
            }
        })
        .collect();
    pos.sort();
    pos.into_iter().map(|(_, v)| v).collect()
}
