//! Degree, Chern-class indices, Euler characteristic and mixed indices of
//! hyperplane sections of a reductive group.
//!
//! All quantities are integrals over `Q = P ∩ D`, where `P` is the weight
//! polytope and `D` the dominant chamber, of graded parts of
//! `G(x) = (𝔻F)(x, x)`. The Chern indices can also be computed by summing
//! polarizations over the flag subdivision of `Q`, and both paths are
//! compared whenever both run.

use std::fmt;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::factorial;
use crate::polyalg::{apply_D, build_F, complete_homogeneous_sum, MultiPoly, PolyError};
use crate::polytope::{
    convex_hull, face_census, flag_subdivision, intersect_chamber, is_regular, triangulate,
    CensusRow, FlagChain, LatticeSpec, Polytope, PolytopeError, Regularity, Simplex,
};
use crate::quadrature::{barycentric_pullback, integrate_pullback, integrate_simplices, Method, QuadratureError};
use crate::rootsys::{RootSystem, RootSystemError, WeightVector};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("no weights given")]
    NoWeights,
    #[error("weight {weight} has {got} coordinates, expected {expected}")]
    WeightLength { weight: WeightVector, expected: usize, got: usize },
    #[error("weight {weight} is not in the same lattice coset as {reference} for the {lattice} lattice")]
    OutsideLattice { weight: WeightVector, reference: WeightVector, lattice: String },
    #[error("Chern index {i} out of range 0..={max}")]
    ChernOutOfRange { i: usize, max: usize },
    #[error("{quantity} evaluated to the non-integer {value}")]
    NonIntegral { quantity: String, value: Rational },
    #[error("{quantity}: {left_path} gives {left} but {right_path} gives {right}")]
    PathMismatch {
        quantity: String,
        left_path: String,
        left: Rational,
        right_path: String,
        right: Rational,
    },
    #[error("expected {expected} weight lists (the group dimension), got {got}")]
    ListCount { expected: usize, got: usize },
}

impl IndexError {
    /// True when two independent computations disagreed, which points to a
    /// bug rather than to bad input.
    pub fn is_cross_check_failure(&self) -> bool {
        matches!(
            self,
            IndexError::PathMismatch { .. }
                | IndexError::NonIntegral { .. }
                | IndexError::Polytope(
                    PolytopeError::FlagCoefficientMismatch { .. } | PolytopeError::TilingMismatch { .. }
                )
        )
    }
}

/// How the integrals are evaluated and whether the flag path runs too.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub methods: Vec<Method>,
    pub flag_path: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { methods: vec![Method::Monomial], flag_path: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeSummary {
    pub vertices: usize,
    pub facets: usize,
    pub chamber_vertices: usize,
    pub regularity: Regularity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReportValue {
    Integer(BigInt),
    Census(Vec<CensusRow>),
    Regularity(Regularity),
}

impl fmt::Display for ReportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportValue::Integer(v) => write!(f, "{v}"),
            ReportValue::Census(rows) => {
                let parts: Vec<String> = rows
                    .iter()
                    .map(|r| format!("codim {}: {} faces / {} orbits", r.codim, r.faces, r.orbits))
                    .collect();
                write!(f, "{}", parts.join("; "))
            }
            ReportValue::Regularity(r) => match &r.reason {
                None => write!(f, "regular"),
                Some(reason) => write!(f, "not regular ({reason})"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub group: String,
    pub lattice: String,
    pub polytope: PolytopeSummary,
    pub quantity: String,
    pub param: Option<usize>,
    pub value: ReportValue,
    pub paths_used: Vec<String>,
    pub notes: Vec<String>,
    pub degenerate: bool,
    pub elapsed: Duration,
}

/// A weight polytope prepared for integration: Weyl closure, hull, chamber
/// part and its triangulation.
pub struct Prepared {
    rs: RootSystem,
    lattice: LatticeSpec,
    polytope: Polytope,
    chamber: Polytope,
    simplices: Vec<Simplex>,
    graded: OnceLock<Result<MultiPoly, PolyError>>,
    pulled: OnceLock<Result<Vec<MultiPoly>, IndexError>>,
}

fn check_weights(rs: &RootSystem, lattice: &LatticeSpec, weights: &[WeightVector]) -> Result<(), IndexError> {
    let k = rs.total_rank();
    let Some(first) = weights.first() else {
        return Err(IndexError::NoWeights);
    };
    for w in weights {
        if w.len() != k {
            return Err(IndexError::WeightLength { weight: w.clone(), expected: k, got: w.len() });
        }
    }
    // Only differences must be lattice vectors: scalars act trivially on
    // the projectivized representation.
    for w in weights {
        if !lattice.contains((w - first).coords()) {
            return Err(IndexError::OutsideLattice {
                weight: w.clone(),
                reference: first.clone(),
                lattice: lattice.name().to_string(),
            });
        }
    }
    Ok(())
}

impl Prepared {
    pub fn new(rs: &RootSystem, lattice: &LatticeSpec, weights: &[WeightVector]) -> Result<Self, IndexError> {
        check_weights(rs, lattice, weights)?;
        let closure = rs.weyl_closure(weights);
        let polytope = convex_hull(&closure, lattice)?;
        Self::from_polytope(rs, polytope)
    }

    fn from_polytope(rs: &RootSystem, polytope: Polytope) -> Result<Self, IndexError> {
        let chamber = intersect_chamber(&polytope, rs)?;
        let simplices = if chamber.is_full_dimensional() { triangulate(&chamber)? } else { Vec::new() };
        Ok(Prepared {
            rs: rs.clone(),
            lattice: polytope.lattice().clone(),
            polytope,
            chamber,
            simplices,
            graded: OnceLock::new(),
            pulled: OnceLock::new(),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn chamber_part(&self) -> &Polytope {
        &self.chamber
    }

    /// Group dimension `n = k + 2|R⁺|`.
    pub fn n(&self) -> usize {
        self.rs.dimension()
    }

    pub fn k(&self) -> usize {
        self.rs.total_rank()
    }

    /// `dim(P ∩ D) < k`; every integral then vanishes.
    pub fn is_degenerate(&self) -> bool {
        !self.chamber.is_full_dimensional()
    }

    pub fn summary(&self) -> PolytopeSummary {
        PolytopeSummary {
            vertices: self.polytope.vertices().len(),
            facets: self.polytope.facets().len(),
            chamber_vertices: self.chamber.vertices().len(),
            regularity: is_regular(&self.polytope, &self.rs, &self.lattice),
        }
    }

    /// `(𝔻F)(x, x)`.
    fn operator_diagonal(&self) -> Result<&MultiPoly, IndexError> {
        self.graded
            .get_or_init(|| apply_D(&self.rs, &build_F(&self.rs)).and_then(|p| p.diagonal()))
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    /// `[𝔻]_i F(x, x)`, the part of degree `2|R⁺| − i`.
    pub fn graded_part(&self, i: usize) -> Result<MultiPoly, IndexError> {
        let top = 2 * self.rs.positive_roots().len();
        if i > top {
            return Ok(MultiPoly::zero(self.k()));
        }
        Ok(self.operator_diagonal()?.graded_component(top - i))
    }

    /// Indices above `n − k` are accepted and vanish; above `n` they have no
    /// meaning.
    fn check_chern(&self, i: usize) -> Result<(), IndexError> {
        let max = self.n();
        if i > max {
            return Err(IndexError::ChernOutOfRange { i, max });
        }
        Ok(())
    }

    /// `∫_Q p`, by every requested method; the methods must agree.
    pub fn integrate(&self, p: &MultiPoly, methods: &[Method], quantity: &str) -> Result<Rational, IndexError> {
        self.agree(methods, quantity, |m| Ok(integrate_simplices(p, &self.simplices, &self.lattice, m)?.value))
    }

    fn agree(
        &self,
        methods: &[Method],
        quantity: &str,
        value: impl Fn(Method) -> Result<Rational, IndexError>,
    ) -> Result<Rational, IndexError> {
        if self.is_degenerate() {
            return Ok(Rational::zero());
        }
        let mut first: Option<(Method, Rational)> = None;
        for &m in methods {
            let v = value(m)?;
            match &first {
                None => first = Some((m, v)),
                Some((m0, v0)) if *v0 != v => {
                    return Err(IndexError::PathMismatch {
                        quantity: quantity.to_string(),
                        left_path: format!("integral:{}", m0.name()),
                        left: v0.clone(),
                        right_path: format!("integral:{}", m.name()),
                        right: v,
                    })
                }
                Some(_) => {}
            }
        }
        Ok(first.map(|(_, v)| v).unwrap_or_else(Rational::zero))
    }

    /// Barycentric pullbacks of `(𝔻F)(x, x)` to every simplex, shared by all
    /// graded parts.
    fn pullbacks(&self) -> Result<&[MultiPoly], IndexError> {
        self.pulled
            .get_or_init(|| {
                let g = self.operator_diagonal()?;
                self.simplices
                    .par_iter()
                    .map(|s| barycentric_pullback(g, s).map_err(IndexError::from))
                    .collect()
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// `(n−i)! ∫_Q [𝔻]_i F(x,x) dx` as an exact rational.
    pub fn chern_integral(&self, i: usize, methods: &[Method]) -> Result<Rational, IndexError> {
        self.check_chern(i)?;
        let top = 2 * self.rs.positive_roots().len();
        let v = self.agree(methods, &format!("chern:{i}"), |m| match m {
            _ if i > top => Ok(Rational::zero()),
            Method::Monomial => Ok(self
                .pullbacks()?
                .iter()
                .zip(&self.simplices)
                .map(|(g, s)| integrate_pullback(g, s, &self.lattice, Some(top - i)))
                .fold(Rational::zero(), |a, b| a + b)),
            Method::Polarization => {
                Ok(integrate_simplices(&self.graded_part(i)?, &self.simplices, &self.lattice, m)?.value)
            }
        })?;
        Ok(v * Rational::from_integer(factorial(self.n() - i)))
    }

    /// `Σ_F c_F Σ_{|I| = n−k−i} F_i,pol(λ_{F_1}^{I_1}, …, λ_{F_k}^{I_k})` with
    /// `F_i = (n−k−i)! [𝔻]_i F(x,x)`.
    pub fn chern_flag_sum(&self, i: usize) -> Result<Rational, IndexError> {
        self.check_chern(i)?;
        let flags = flag_subdivision(&self.polytope, &self.rs)?;
        self.chern_flag_sum_with(i, &flags)
    }

    fn chern_flag_sum_with(&self, i: usize, flags: &[FlagChain]) -> Result<Rational, IndexError> {
        if i > self.n() - self.k() {
            return Ok(Rational::zero());
        }
        let d = self.n() - self.k() - i;
        let fi = self.graded_part(i)?.scale(&Rational::from_integer(factorial(d)));
        let k = self.k();
        let per_flag = flags
            .par_iter()
            .map(|flag| -> Result<Rational, IndexError> {
                let mut err = None;
                let sum = complete_homogeneous_sum(d, k, |parts| {
                    let args: Vec<Vec<Rational>> = parts
                        .iter()
                        .zip(&flag.points)
                        .flat_map(|(&m, pt)| std::iter::repeat(pt.coords().to_vec()).take(m))
                        .collect();
                    fi.polarization_value(&args).unwrap_or_else(|e| {
                        err = Some(e);
                        Rational::zero()
                    })
                });
                match err {
                    Some(e) => Err(e.into()),
                    None => Ok(&flag.coeff * sum),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(per_flag.into_iter().fold(Rational::zero(), |a, b| a + b))
    }
}

fn to_integer(quantity: &str, v: Rational) -> Result<BigInt, IndexError> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(IndexError::NonIntegral { quantity: quantity.to_string(), value: v })
    }
}

fn sign(even: bool) -> Rational {
    if even {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `n! ∫_Q F(x,x) dx`.
pub fn degree(rs: &RootSystem, lattice: &LatticeSpec, weights: &[WeightVector]) -> Result<BigInt, IndexError> {
    let p = Prepared::new(rs, lattice, weights)?;
    to_integer("degree", p.chern_integral(0, &[Method::Monomial])?)
}

/// `(n−i)! ∫_Q [𝔻]_i F(x,x) dx`.
pub fn chern_index(
    rs: &RootSystem,
    lattice: &LatticeSpec,
    weights: &[WeightVector],
    i: usize,
) -> Result<BigInt, IndexError> {
    let p = Prepared::new(rs, lattice, weights)?;
    to_integer(&format!("chern:{i}"), p.chern_integral(i, &[Method::Monomial])?)
}

/// The same index by summation over the flag subdivision; needs a regular
/// polytope.
pub fn chern_index_flag_path(
    rs: &RootSystem,
    lattice: &LatticeSpec,
    weights: &[WeightVector],
    i: usize,
) -> Result<BigInt, IndexError> {
    let p = Prepared::new(rs, lattice, weights)?;
    to_integer(&format!("chern:{i}"), p.chern_flag_sum(i)?)
}

/// `(−1)^{n−1} Σ_{j=0}^{n−k} (−1)^j (n−j)! ∫_Q [𝔻]_j F(x,x) dx`.
pub fn euler_characteristic(
    rs: &RootSystem,
    lattice: &LatticeSpec,
    weights: &[WeightVector],
) -> Result<BigInt, IndexError> {
    let p = Prepared::new(rs, lattice, weights)?;
    to_integer("euler", euler_from(&p, &[Method::Monomial])?)
}

fn euler_from(p: &Prepared, methods: &[Method]) -> Result<Rational, IndexError> {
    let n = p.n();
    let terms = (0..=n - p.k())
        .into_par_iter()
        .map(|j| p.chern_integral(j, methods).map(|v| sign(j % 2 == 0) * v))
        .collect::<Result<Vec<_>, _>>()?;
    let sum = terms.into_iter().fold(Rational::zero(), |a, b| a + b);
    Ok(sign((n - 1) % 2 == 0) * sum)
}

/// Mixed index of `n` hyperplane sections, one per weight list, by
/// inclusion–exclusion over Minkowski sums of the weight polytopes.
pub fn mixed_degree(
    rs: &RootSystem,
    lattice: &LatticeSpec,
    weight_lists: &[Vec<WeightVector>],
) -> Result<BigInt, IndexError> {
    to_integer("mixed", mixed_value(rs, lattice, weight_lists, &[Method::Monomial])?.0)
}

fn mixed_value(
    rs: &RootSystem,
    lattice: &LatticeSpec,
    weight_lists: &[Vec<WeightVector>],
    methods: &[Method],
) -> Result<(Rational, bool), IndexError> {
    let n = rs.dimension();
    if weight_lists.len() != n {
        return Err(IndexError::ListCount { expected: n, got: weight_lists.len() });
    }
    let polys = weight_lists
        .iter()
        .map(|ws| {
            check_weights(rs, lattice, ws)?;
            Ok(convex_hull(&rs.weyl_closure(ws), lattice)?.vertices().to_vec())
        })
        .collect::<Result<Vec<_>, IndexError>>()?;
    let subsets: Vec<u64> = (1..(1u64 << n)).collect();
    let terms = subsets
        .par_iter()
        .map(|&mask| -> Result<(Rational, bool), IndexError> {
            let mut acc = vec![WeightVector::zero(rs.total_rank())];
            for (j, verts) in polys.iter().enumerate() {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let sums: Vec<WeightVector> = acc.iter().flat_map(|a| verts.iter().map(move |v| a + v)).collect();
                acc = convex_hull(&sums, lattice)?.vertices().to_vec();
            }
            let prepared = Prepared::from_polytope(rs, convex_hull(&acc, lattice)?)?;
            let value = prepared.chern_integral(0, methods)?;
            let size = mask.count_ones() as usize;
            Ok((sign((n - size) % 2 == 0) * value, prepared.is_degenerate()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let full_degenerate = terms.last().map(|t| t.1).unwrap_or(true);
    let total = terms.into_iter().fold(Rational::zero(), |a, (v, _)| a + v);
    Ok((total / Rational::from_integer(factorial(n)), full_degenerate))
}

/// A single requested computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Degree,
    Chern(usize),
    Euler,
    Orbits,
    Regularity,
    Mixed(Vec<Vec<WeightVector>>),
}

impl Task {
    pub fn name(&self) -> String {
        match self {
            Task::Degree => "degree".into(),
            Task::Chern(i) => format!("chern:{i}"),
            Task::Euler => "euler".into(),
            Task::Orbits => "orbits".into(),
            Task::Regularity => "regularity".into(),
            Task::Mixed(_) => "mixed".into(),
        }
    }
}

fn method_paths(methods: &[Method]) -> Vec<String> {
    methods.iter().map(|m| format!("integral:{}", m.name())).collect()
}

/// Runs one task against a prepared polytope.
pub fn report(prepared: &Prepared, lattice: &LatticeSpec, task: &Task, options: &Options) -> Result<IndexReport, IndexError> {
    let start = Instant::now();
    let summary = prepared.summary();
    let mut paths = Vec::new();
    let mut notes = Vec::new();
    let mut degenerate = prepared.is_degenerate();
    let methods: &[Method] = if options.methods.is_empty() { &[Method::Monomial] } else { &options.methods };

    // flag path for the Chern indices with i in `indices`, compared to `direct`
    let flag_check = |indices: &[usize], direct: &[Rational], notes: &mut Vec<String>, paths: &mut Vec<String>| {
        if !options.flag_path {
            return Ok(());
        }
        if let Some(reason) = &summary.regularity.reason {
            notes.push(format!("flag path skipped: {reason}"));
            return Ok(());
        }
        let flags = flag_subdivision(prepared.polytope(), prepared.root_system())?;
        for (&i, d) in indices.iter().zip(direct) {
            let f = prepared.chern_flag_sum_with(i, &flags)?;
            if &f != d {
                return Err(IndexError::PathMismatch {
                    quantity: format!("chern:{i}"),
                    left_path: format!("integral:{}", methods[0].name()),
                    left: d.clone(),
                    right_path: "flags".into(),
                    right: f,
                });
            }
        }
        paths.push("flags".to_string());
        Ok::<(), IndexError>(())
    };

    let (param, value) = match task {
        Task::Degree | Task::Chern(_) => {
            let i = if let Task::Chern(i) = task { *i } else { 0 };
            let v = prepared.chern_integral(i, methods)?;
            paths.extend(method_paths(methods));
            flag_check(&[i], std::slice::from_ref(&v), &mut notes, &mut paths)?;
            let param = matches!(task, Task::Chern(_)).then_some(i);
            (param, ReportValue::Integer(to_integer(&task.name(), v)?))
        }
        Task::Euler => {
            let v = euler_from(prepared, methods)?;
            paths.extend(method_paths(methods));
            if options.flag_path && summary.regularity.regular {
                let n = prepared.n();
                let idx: Vec<usize> = (0..=n - prepared.k()).collect();
                let direct = idx
                    .iter()
                    .map(|&i| prepared.chern_integral(i, methods))
                    .collect::<Result<Vec<_>, _>>()?;
                flag_check(&idx, &direct, &mut notes, &mut paths)?;
            } else {
                flag_check(&[], &[], &mut notes, &mut paths)?;
            }
            (None, ReportValue::Integer(to_integer("euler", v)?))
        }
        Task::Orbits => {
            paths.push("census".into());
            (None, ReportValue::Census(face_census(prepared.polytope(), prepared.root_system())?))
        }
        Task::Regularity => {
            paths.push("census".into());
            (None, ReportValue::Regularity(summary.regularity.clone()))
        }
        Task::Mixed(lists) => {
            let (v, deg) = mixed_value(prepared.root_system(), lattice, lists, methods)?;
            paths.extend(method_paths(methods));
            paths.push("inclusion-exclusion".into());
            degenerate = deg;
            (None, ReportValue::Integer(to_integer("mixed", v)?))
        }
    };
    Ok(IndexReport {
        group: prepared.root_system().describe(),
        lattice: lattice.to_string(),
        polytope: summary,
        quantity: task.name(),
        param,
        value,
        paths_used: paths,
        notes,
        degenerate,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, CartanLetter::*};

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::from_ints(v)
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn a1_closed_forms() {
        let a1 = build_root_system(&[(A, 1)], 0).unwrap();
        let l = LatticeSpec::simply_connected(1);
        for m in 1..=3i64 {
            let ws = [w(&[m])];
            assert_eq!(degree(&a1, &l, &ws).unwrap(), b(2 * m * m * m));
            assert_eq!(chern_index(&a1, &l, &ws, 1).unwrap(), b(4 * m * m));
            assert_eq!(chern_index(&a1, &l, &ws, 2).unwrap(), b(4 * m));
            assert_eq!(chern_index_flag_path(&a1, &l, &ws, 1).unwrap(), b(4 * m * m));
            assert_eq!(euler_characteristic(&a1, &l, &ws).unwrap(), b(2 * m * m * m - 4 * m * m + 4 * m));
        }
    }

    #[test]
    fn chern_range() {
        let a1 = build_root_system(&[(A, 1)], 0).unwrap();
        let l = LatticeSpec::simply_connected(1);
        assert_eq!(
            chern_index(&a1, &l, &[w(&[1])], 4),
            Err(IndexError::ChernOutOfRange { i: 4, max: 3 })
        );
    }

    #[test]
    fn chern_above_n_minus_k_vanishes() {
        let a1 = build_root_system(&[(A, 1)], 0).unwrap();
        let l = LatticeSpec::simply_connected(1);
        assert_eq!(chern_index(&a1, &l, &[w(&[2])], 3).unwrap(), b(0));
        assert_eq!(chern_index_flag_path(&a1, &l, &[w(&[2])], 3).unwrap(), b(0));
        let t = build_root_system(&[], 2).unwrap();
        let sq = [w(&[0, 0]), w(&[1, 0]), w(&[0, 1]), w(&[1, 1])];
        let l2 = LatticeSpec::simply_connected(2);
        assert_eq!(chern_index(&t, &l2, &sq, 1).unwrap(), b(0));
        assert_eq!(chern_index(&t, &l2, &sq, 2).unwrap(), b(0));
    }

    #[test]
    fn lattice_coset_check() {
        let a2 = build_root_system(&[(A, 2)], 0).unwrap();
        let adj = LatticeSpec::adjoint(&a2);
        // standard representation: all weights in one coset
        assert_eq!(degree(&a2, &adj, &[w(&[1, 0])]).unwrap(), b(1));
        // mixing cosets is rejected, naming the weight
        let err = degree(&a2, &adj, &[w(&[1, 0]), w(&[1, 1])]).unwrap_err();
        match err {
            IndexError::OutsideLattice { weight, .. } => assert_eq!(weight, w(&[1, 1])),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn degenerate_polytope_gives_zero() {
        let a1 = build_root_system(&[(A, 1)], 0).unwrap();
        let l = LatticeSpec::simply_connected(1);
        let p = Prepared::new(&a1, &l, &[w(&[0])]).unwrap();
        assert!(p.is_degenerate());
        let r = report(&p, &l, &Task::Degree, &Options::default()).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.value, ReportValue::Integer(b(0)));
    }

    #[test]
    fn both_methods_and_flags_recorded() {
        let a2 = build_root_system(&[(A, 2)], 0).unwrap();
        let l = LatticeSpec::adjoint(&a2);
        let p = Prepared::new(&a2, &l, &[w(&[1, 1])]).unwrap();
        let opts = Options { methods: vec![Method::Monomial, Method::Polarization], flag_path: true };
        let r = report(&p, &l, &Task::Chern(2), &opts).unwrap();
        assert_eq!(r.paths_used, vec!["integral:monomial", "integral:polarization", "flags"]);
        let e = report(&p, &l, &Task::Euler, &opts).unwrap();
        assert!(e.paths_used.contains(&"flags".to_string()));
    }

    #[test]
    fn flag_path_skipped_on_non_regular() {
        let a2 = build_root_system(&[(A, 2)], 0).unwrap();
        let l = LatticeSpec::simply_connected(2);
        let p = Prepared::new(&a2, &l, &[w(&[1, 0])]).unwrap();
        let opts = Options { methods: vec![Method::Monomial], flag_path: true };
        let r = report(&p, &l, &Task::Degree, &opts).unwrap();
        assert_eq!(r.value, ReportValue::Integer(b(3)));
        assert!(!r.paths_used.contains(&"flags".to_string()));
        assert_eq!(r.notes.len(), 1);
        assert!(matches!(
            chern_index_flag_path(&a2, &l, &[w(&[1, 0])], 0),
            Err(IndexError::Polytope(PolytopeError::NotRegular(_)))
        ));
    }

    #[test]
    fn mixed_of_equal_lists_is_degree() {
        let a1 = build_root_system(&[(A, 1)], 0).unwrap();
        let l = LatticeSpec::simply_connected(1);
        let lists = vec![vec![w(&[2])]; 3];
        assert_eq!(mixed_degree(&a1, &l, &lists).unwrap(), b(16));
        assert_eq!(
            mixed_degree(&a1, &l, &lists[..2]),
            Err(IndexError::ListCount { expected: 3, got: 2 })
        );
        // multilinear in the lists: (1,1,2) sits between
        let mixed = vec![vec![w(&[1])], vec![w(&[1])], vec![w(&[2])]];
        let v = mixed_degree(&a1, &l, &mixed).unwrap();
        let perm = vec![vec![w(&[2])], vec![w(&[1])], vec![w(&[1])]];
        assert_eq!(mixed_degree(&a1, &l, &perm).unwrap(), v);
        assert_eq!(v, b(4));
    }
}
