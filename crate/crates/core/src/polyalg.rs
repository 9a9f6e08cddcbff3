//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Besides ring arithmetic this module builds the degree polynomial of the
//! flag variety `F(x, y)` for a root system, applies the operator
//! `𝔻 = ∏ (1 + ∂_(α,0))(1 + ∂_(0,α))`, restricts to the diagonal and
//! evaluates polarizations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{factorial, Matrix};
use crate::rootsys::RootSystem;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("diagonal restriction needs an even number of variables, got {0}")]
    OddVariableCount(usize),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polarization of a degree {expected} polynomial takes {expected} arguments, got {got}")]
    ArgumentCount { expected: usize, got: usize },
}

/// Sparse polynomial in `nvars` variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// A linear form `Σ c_j x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coefficients: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        LinearForm { coefficients }
    }

    pub fn to_poly(&self) -> MultiPoly {
        let n = self.coefficients.len();
        let mut p = MultiPoly::zero(n);
        for (j, c) in self.coefficients.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(e, c.clone());
        }
        p
    }
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| total(e)).max()
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| total(e));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars, "evaluation point length");
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    t *= num_traits::pow(xi.clone(), ei as usize);
                }
            }
            sum += t;
        }
        sum
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            p.add_term(f, c * Rational::from_integer(BigInt::from(e[i])));
        }
        p
    }

    /// `Σ_j v_j ∂p/∂x_j`.
    pub fn directional_derivative(&self, v: &[Rational]) -> Result<Self, PolyError> {
        if v.len() != self.nvars {
            return Err(PolyError::LengthMismatch { expected: self.nvars, got: v.len() });
        }
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            for (j, vj) in v.iter().enumerate() {
                if e[j] == 0 || vj.is_zero() {
                    continue;
                }
                let mut f = e.clone();
                f[j] -= 1;
                p.add_term(f, c * vj * Rational::from_integer(BigInt::from(e[j])));
            }
        }
        Ok(p)
    }

    /// Substitutes `x_i ↦ Σ_j m[i][j] y_j + shift[i]`. The result lives in
    /// `m[0].len()` variables.
    pub fn compose_affine(&self, m: &Matrix, shift: &[Rational]) -> Self {
        assert_eq!(m.len(), self.nvars, "substitution row count");
        assert_eq!(shift.len(), self.nvars, "shift length");
        let old = self.nvars;
        let new_vars = m.first().map_or(0, Vec::len);
        // One variable at a time, in the joint space of old and new variables.
        let mut cur: BTreeMap<Vec<u32>, Rational> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = e.clone();
                f.resize(old + new_vars, 0);
                (f, c.clone())
            })
            .collect();
        for (i, (row, s)) in m.iter().zip(shift).enumerate() {
            let mut coeffs = row.clone();
            coeffs.resize(new_vars, Rational::zero());
            let image = &LinearForm::new(coeffs).to_poly() + &MultiPoly::constant(new_vars, s.clone());
            let top = cur.keys().map(|e| e[i]).max().unwrap_or(0);
            let mut powers = vec![MultiPoly::one(new_vars)];
            for _ in 0..top {
                let next = powers.last().expect("nonempty") * &image;
                powers.push(next);
            }
            let mut next = MultiPoly::zero(old + new_vars);
            for (e, c) in cur {
                let ei = e[i] as usize;
                if ei == 0 {
                    next.add_term(e, c);
                    continue;
                }
                for (f, d) in &powers[ei].terms {
                    let mut g = e.clone();
                    g[i] = 0;
                    for (gj, fj) in g[old..].iter_mut().zip(f) {
                        *gj += fj;
                    }
                    next.add_term(g, &c * d);
                }
            }
            cur = next.terms;
        }
        MultiPoly::from_terms(new_vars, cur.into_iter().map(|(e, c)| (e[old..].to_vec(), c)))
    }

    /// Sum of the terms of total degree `d`.
    pub fn graded_component(&self, d: usize) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Restriction of a polynomial in `(x, y)` to `y = x`.
    pub fn diagonal(&self) -> Result<Self, PolyError> {
        if self.nvars % 2 != 0 {
            return Err(PolyError::OddVariableCount(self.nvars));
        }
        let k = self.nvars / 2;
        let mut p = Self::zero(k);
        for (e, c) in &self.terms {
            let f: Vec<u32> = (0..k).map(|i| e[i] + e[i + k]).collect();
            p.add_term(f, c.clone());
        }
        Ok(p)
    }

    /// `f_pol(v_1, …, v_d) = (1/d!) ∂_{v_1} ⋯ ∂_{v_d} f` for `f` homogeneous
    /// of degree `d`.
    pub fn polarization_value(&self, args: &[Vec<Rational>]) -> Result<Rational, PolyError> {
        if !self.is_homogeneous() {
            return Err(PolyError::NotHomogeneous);
        }
        let d = self.degree().unwrap_or(args.len());
        if args.len() != d {
            return Err(PolyError::ArgumentCount { expected: d, got: args.len() });
        }
        let mut q = self.clone();
        for v in args {
            q = q.directional_derivative(v)?;
        }
        let c = q.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Rational::zero);
        Ok(c / Rational::from_integer(factorial(d)))
    }
}

fn total(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &ei) in e.iter().enumerate() {
                match ei {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{ei}")?,
                }
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// `F(x, y) = ∏_{α>0} (x,α)(y,α) / (ρ,α)²` in `2k` variables, `x` first.
#[allow(non_snake_case)]
pub fn build_F(rs: &RootSystem) -> MultiPoly {
    let k = rs.total_rank();
    let mut f = MultiPoly::one(2 * k);
    for alpha in rs.positive_roots() {
        let c = rs.pairing_covector(alpha);
        let rho_alpha = rs.pair(rs.rho().coords(), alpha.coords());
        let mut x = vec![Rational::zero(); 2 * k];
        let mut y = vec![Rational::zero(); 2 * k];
        for j in 0..k {
            x[j] = &c[j] / &rho_alpha;
            y[j + k] = &c[j] / &rho_alpha;
        }
        f = &f * &LinearForm::new(x).to_poly();
        f = &f * &LinearForm::new(y).to_poly();
    }
    f
}

/// Applies `∏_{α>0} (1 + ∂_(α,0))(1 + ∂_(0,α))` factor by factor.
#[allow(non_snake_case)]
pub fn apply_D(rs: &RootSystem, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
    let k = rs.total_rank();
    if p.nvars() != 2 * k {
        return Err(PolyError::LengthMismatch { expected: 2 * k, got: p.nvars() });
    }
    let mut out = p.clone();
    for alpha in rs.positive_roots() {
        let mut dx = vec![Rational::zero(); 2 * k];
        let mut dy = vec![Rational::zero(); 2 * k];
        for j in 0..k {
            dx[j] = alpha.coords()[j].clone();
            dy[j + k] = alpha.coords()[j].clone();
        }
        out = &out + &out.directional_derivative(&dx)?;
        out = &out + &out.directional_derivative(&dy)?;
    }
    Ok(out)
}

/// Sums `evaluator(i_1, …, i_s)` over all `i_1 + … + i_s = d` with `i_j ≥ 0`.
pub fn complete_homogeneous_sum<E>(d: usize, s: usize, mut evaluator: E) -> Rational
where
    E: FnMut(&[usize]) -> Rational,
{
    fn rec<E: FnMut(&[usize]) -> Rational>(
        left: usize,
        slot: usize,
        parts: &mut Vec<usize>,
        eval: &mut E,
        acc: &mut Rational,
    ) {
        if slot + 1 == parts.len() {
            parts[slot] = left;
            *acc += eval(parts);
            return;
        }
        for i in 0..=left {
            parts[slot] = i;
            rec(left - i, slot + 1, parts, eval, acc);
        }
    }
    let mut acc = Rational::zero();
    if s == 0 {
        if d == 0 {
            acc += evaluator(&[]);
        }
        return acc;
    }
    let mut parts = vec![0; s];
    rec(d, 0, &mut parts, &mut evaluator, &mut acc);
    acc
}
