//! Exact integration of polynomials over simplices and polytopes.
//!
//! The measure is Lebesgue measure scaled so that a fundamental domain of
//! the lattice has volume 1. Two independent simplex formulas are provided:
//! the monomial formula in barycentric coordinates, and averaging of the polarization over all multisets of
//! vertices.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{binomial, factorial, Matrix};
use crate::polyalg::{MultiPoly, PolyError};
use crate::polytope::{lattice_volume, triangulate, LatticeSpec, Polytope, PolytopeError, Simplex};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadratureError {
    #[error("degenerate simplex")]
    DegenerateSimplex,
    #[error("polynomial has {poly} variables but the simplex lives in dimension {space}")]
    DimensionMismatch { poly: usize, space: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Method {
    #[default]
    Monomial,
    Polarization,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Monomial => "monomial",
            Method::Polarization => "polarization",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integral {
    pub value: Rational,
    /// Set when the polytope is not full-dimensional; `value` is then 0.
    pub degenerate: bool,
}

fn check(p: &MultiPoly, s: &Simplex) -> Result<(), QuadratureError> {
    let k = s.points()[0].len();
    if p.nvars() != k {
        return Err(QuadratureError::DimensionMismatch { poly: p.nvars(), space: k });
    }
    if s.dim() != k || s.edge_det().is_zero() {
        return Err(QuadratureError::DegenerateSimplex);
    }
    Ok(())
}

/// `p(Σ_j λ_j a_j)` as a polynomial in the `k + 1` barycentric coordinates
/// `λ_j` of `s`. The substitution is linear, so each homogeneous component
/// of `p` maps to the component of the same degree.
pub fn barycentric_pullback(p: &MultiPoly, s: &Simplex) -> Result<MultiPoly, QuadratureError> {
    check(p, s)?;
    let pts = s.points();
    let k = pts.len() - 1;
    let m: Matrix = (0..k).map(|i| pts.iter().map(|v| v.coords()[i].clone()).collect()).collect();
    Ok(p.compose_affine(&m, &vec![Rational::zero(); k]))
}

/// `∫_s` of a barycentric pullback through `∫ λ^β = |det E| β! / (|β| + k)!`,
/// restricted to the terms of degree `degree` when given.
pub fn integrate_pullback(pulled: &MultiPoly, s: &Simplex, lattice: &LatticeSpec, degree: Option<usize>) -> Rational {
    let k = s.dim();
    let mut sum = Rational::zero();
    for (e, c) in pulled.terms() {
        let total = e.iter().map(|&g| g as usize).sum::<usize>();
        if degree.is_some_and(|d| d != total) {
            continue;
        }
        let num = e.iter().fold(num_bigint::BigInt::from(1), |acc, &g| acc * factorial(g as usize));
        sum += c * Rational::new(num, factorial(total + k));
    }
    sum * s.edge_det().abs() / lattice.covolume()
}

/// `∫_s p` through the barycentric pullback.
pub fn integrate_simplex_monomial(
    p: &MultiPoly,
    s: &Simplex,
    lattice: &LatticeSpec,
) -> Result<Rational, QuadratureError> {
    Ok(integrate_pullback(&barycentric_pullback(p, s)?, s, lattice, None))
}

/// `∫_s p = vol(s) · C(d+k, k)^{-1} · Σ_{i_0+…+i_k=d} p_pol(a_0^{i_0}, …, a_k^{i_k})`,
/// applied to each homogeneous component of `p`.
pub fn integrate_simplex_polarization(
    p: &MultiPoly,
    s: &Simplex,
    lattice: &LatticeSpec,
) -> Result<Rational, QuadratureError> {
    check(p, s)?;
    let vol = lattice_volume(s, lattice);
    let k = s.dim();
    let mut total = Rational::zero();
    let Some(top) = p.degree() else {
        return Ok(total);
    };
    for d in 0..=top {
        let part = p.graded_component(d);
        if part.is_zero() {
            continue;
        }
        let sum = polarization_sum(&part, s.points().iter().map(|v| v.coords()).collect::<Vec<_>>().as_slice())?;
        total += sum / Rational::from_integer(binomial(d + k, k));
    }
    Ok(total * vol)
}

/// `Σ` over multisets of size `d` drawn from `points` of `f_pol`, for `f`
/// homogeneous of degree `d`.
pub fn polarization_sum(f: &MultiPoly, points: &[&[Rational]]) -> Result<Rational, QuadratureError> {
    if !f.is_homogeneous() {
        return Err(PolyError::NotHomogeneous.into());
    }
    let d = f.degree().unwrap_or(0);
    // Differentiate along each point in turn, sharing prefixes; the last
    // point absorbs the remaining order r through ∂_v^r q = r! q(v).
    fn rec(q: &MultiPoly, j: usize, r: usize, points: &[&[Rational]]) -> Result<Rational, PolyError> {
        if j + 1 == points.len() {
            return Ok(q.eval(points[j]) * Rational::from_integer(factorial(r)));
        }
        let mut acc = Rational::zero();
        let mut cur = q.clone();
        for i in 0..=r {
            acc += rec(&cur, j + 1, r - i, points)?;
            if i < r {
                cur = cur.directional_derivative(points[j])?;
                if cur.is_zero() {
                    break;
                }
            }
        }
        Ok(acc)
    }
    let raw = rec(f, 0, d, points)?;
    Ok(raw / Rational::from_integer(factorial(d)))
}

pub fn integrate_simplex(
    p: &MultiPoly,
    s: &Simplex,
    lattice: &LatticeSpec,
    method: Method,
) -> Result<Rational, QuadratureError> {
    match method {
        Method::Monomial => integrate_simplex_monomial(p, s, lattice),
        Method::Polarization => integrate_simplex_polarization(p, s, lattice),
    }
}

/// Sum of simplex integrals over a triangulation of `poly`; lower-dimensional
/// polytopes integrate to 0 with the degeneracy flag set.
pub fn integrate_polytope(
    p: &MultiPoly,
    poly: &Polytope,
    lattice: &LatticeSpec,
    method: Method,
) -> Result<Integral, QuadratureError> {
    if !poly.is_full_dimensional() {
        return Ok(Integral { value: Rational::zero(), degenerate: true });
    }
    let simplices = triangulate(poly)?;
    integrate_simplices(p, &simplices, lattice, method)
}

pub fn integrate_simplices(
    p: &MultiPoly,
    simplices: &[Simplex],
    lattice: &LatticeSpec,
    method: Method,
) -> Result<Integral, QuadratureError> {
    let parts = simplices
        .par_iter()
        .map(|s| integrate_simplex(p, s, lattice, method))
        .collect::<Result<Vec<_>, _>>()?;
    let value = parts.into_iter().fold(Rational::zero(), |a, b| a + b);
    Ok(Integral { value, degenerate: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{convex_hull, triangulate_from};
    use crate::rootsys::WeightVector;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::from_ints(v)
    }

    fn mono(nvars: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), q(*c))))
    }

    fn both(p: &MultiPoly, s: &Simplex, l: &LatticeSpec) -> Rational {
        let a = integrate_simplex_monomial(p, s, l).unwrap();
        let b = integrate_simplex_polarization(p, s, l).unwrap();
        assert_eq!(a, b);
        a
    }

    #[test]
    fn constant_integrates_to_volume() {
        let l = LatticeSpec::simply_connected(2);
        let s = Simplex::new(vec![w(&[0, 0]), w(&[3, 1]), w(&[1, 2])]).unwrap();
        assert_eq!(both(&MultiPoly::one(2), &s, &l), lattice_volume(&s, &l));
    }

    #[test]
    fn one_dimensional_square() {
        let l = LatticeSpec::simply_connected(1);
        for m in 1..6 {
            let s = Simplex::new(vec![w(&[0]), w(&[m])]).unwrap();
            assert_eq!(both(&mono(1, &[(&[2], 1)]), &s, &l), Rational::new((m * m * m).into(), 3.into()));
        }
    }

    #[test]
    fn linear_over_standard_triangle() {
        let l = LatticeSpec::simply_connected(2);
        let s = Simplex::new(vec![w(&[0, 0]), w(&[1, 0]), w(&[0, 1])]).unwrap();
        assert_eq!(both(&mono(2, &[(&[1, 0], 1)]), &s, &l), Rational::new(1.into(), 6.into()));
    }

    #[test]
    fn square_product() {
        let l = LatticeSpec::simply_connected(2);
        let sq = convex_hull(&[w(&[0, 0]), w(&[1, 0]), w(&[0, 1]), w(&[1, 1])], &l).unwrap();
        let p = mono(2, &[(&[2, 2], 1)]);
        for m in [Method::Monomial, Method::Polarization] {
            let r = integrate_polytope(&p, &sq, &l, m).unwrap();
            assert_eq!(r.value, Rational::new(1.into(), 9.into()));
            assert!(!r.degenerate);
            assert_eq!(integrate_polytope(&MultiPoly::one(2), &sq, &l, m).unwrap().value, q(1));
        }
    }

    #[test]
    fn degenerate_inputs() {
        let l = LatticeSpec::simply_connected(2);
        let seg = convex_hull(&[w(&[0, 0]), w(&[1, 1])], &l).unwrap();
        let r = integrate_polytope(&MultiPoly::one(2), &seg, &l, Method::Monomial).unwrap();
        assert!(r.degenerate);
        assert!(r.value.is_zero());
        let flat = Simplex::new_unchecked(vec![w(&[0, 0]), w(&[1, 1]), w(&[2, 2])]);
        assert_eq!(
            integrate_simplex_monomial(&MultiPoly::one(2), &flat, &l),
            Err(QuadratureError::DegenerateSimplex)
        );
    }

    #[test]
    fn adjoint_measure_halves_a1() {
        let a1 = crate::rootsys::build_root_system(&[(crate::CartanLetter::A, 1)], 0).unwrap();
        let l = LatticeSpec::adjoint(&a1);
        let s = Simplex::new(vec![w(&[0]), w(&[2])]).unwrap();
        assert_eq!(both(&MultiPoly::one(1), &s, &l), q(1));
    }

    #[test]
    fn triangulation_independence() {
        let l = LatticeSpec::simply_connected(2);
        let hex = convex_hull(
            &[w(&[2, 0]), w(&[1, 2]), w(&[-1, 2]), w(&[-2, 0]), w(&[-1, -2]), w(&[1, -2])],
            &l,
        )
        .unwrap();
        let p = mono(2, &[(&[3, 1], 2), (&[0, 2], -1), (&[1, 0], 5)]);
        let a = integrate_polytope(&p, &hex, &l, Method::Monomial).unwrap().value;
        for v in hex.vertices() {
            let t = triangulate_from(&hex, v).unwrap();
            assert_eq!(integrate_simplices(&p, &t, &l, Method::Polarization).unwrap().value, a);
        }
    }

    #[test]
    fn unimodular_change_of_basis() {
        // x ↦ Ux with U = [[1,1],[0,1]]; ∫_{U s} p = ∫_s p∘U
        let l = LatticeSpec::simply_connected(2);
        let s = Simplex::new(vec![w(&[0, 0]), w(&[2, 1]), w(&[1, 3])]).unwrap();
        let us = Simplex::new(vec![w(&[0, 0]), w(&[3, 1]), w(&[4, 3])]).unwrap();
        let p = mono(2, &[(&[2, 1], 1), (&[0, 3], 2)]);
        let u: Matrix = vec![vec![q(1), q(1)], vec![q(0), q(1)]];
        let pu = p.compose_affine(&u, &[q(0), q(0)]);
        assert_eq!(both(&p, &us, &l), both(&pu, &s, &l));
    }

    fn arb_simplex(k: usize) -> impl Strategy<Value = Simplex> {
        prop::collection::vec(prop::collection::vec((-6i64..=6, 1i64..=3), k), k + 1)
            .prop_map(|pts| {
                let pts: Vec<WeightVector> = pts
                    .into_iter()
                    .map(|p| WeightVector(p.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect()))
                    .collect();
                Simplex::new_unchecked(pts)
            })
            .prop_filter("nondegenerate", |s| !s.edge_det().is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn methods_agree(
            s in arb_simplex(2),
            terms in prop::collection::vec((prop::collection::vec(0u32..=3, 2), -4i64..=4), 1..5),
        ) {
            let p = MultiPoly::from_terms(2, terms.into_iter().map(|(e, c)| (e, q(c))));
            let l = LatticeSpec::simply_connected(2);
            prop_assert_eq!(
                integrate_simplex_monomial(&p, &s, &l).unwrap(),
                integrate_simplex_polarization(&p, &s, &l).unwrap()
            );
        }
    }
}
