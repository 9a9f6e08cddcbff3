//! Barycentric flag subdivision of the dominant part of a regular polytope.
//!
//! A k-flag is an ordered choice of facets `(i_1, …, i_k)` such that every
//! partial intersection `F_j = Γ_{i_1} ∩ … ∩ Γ_{i_j}` has codimension `j` and
//! meets the dominant chamber. Each flag contributes the simplex
//! `conv(0, λ_{F_1}, …, λ_{F_k})`, and these simplices tile `P ∩ D`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{
    barycenter, intersect_chamber, is_regular, lattice_volume, Polytope, PolytopeError, Simplex,
};
use crate::linalg::{self, Matrix};
use crate::rootsys::{RootSystem, WeightVector};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagChain {
    /// Facet indices of the polytope, in flag order.
    pub facet_sequence: Vec<usize>,
    /// `λ_{F_1}, …, λ_{F_k}`.
    pub points: Vec<WeightVector>,
    /// Vertices `0, λ_{F_1}, …, λ_{F_k}`.
    pub simplex: Simplex,
    /// Product of support-number differences; equals `k!` times the
    /// lattice volume of `simplex`.
    pub coeff: Rational,
}

struct Context<'a> {
    p: &'a Polytope,
    rs: &'a RootSystem,
    /// Vertices of `P ∩ D`.
    chamber_vertices: Vec<WeightVector>,
    /// For each facet of `P`, the indices of chamber vertices on it.
    on_facet: Vec<Vec<usize>>,
    /// Chamber vertices lying on a wall of `D`.
    on_wall: Vec<bool>,
    points: BTreeMap<Vec<usize>, WeightVector>,
}

impl Context<'_> {
    fn face_vertices(&self, facets: &[usize]) -> Vec<usize> {
        (0..self.p.vertices.len())
            .filter(|v| facets.iter().all(|&f| self.p.facet_vertices[f].binary_search(v).is_ok()))
            .collect()
    }

    fn face_chamber_vertices(&self, facets: &[usize]) -> Vec<usize> {
        (0..self.chamber_vertices.len())
            .filter(|v| facets.iter().all(|&f| self.on_facet[f].binary_search(v).is_ok()))
            .collect()
    }

    /// `λ_F` for the face cut out by `facets`.
    fn point(&mut self, facets: &[usize]) -> Result<WeightVector, PolytopeError> {
        let mut key = facets.to_vec();
        key.sort_unstable();
        if let Some(p) = self.points.get(&key) {
            return Ok(p.clone());
        }
        let in_chamber = self.face_chamber_vertices(&key);
        let point = if in_chamber.iter().any(|&v| self.on_wall[v]) {
            self.orthogonal_point(&key)?
        } else {
            let pts: Vec<WeightVector> =
                in_chamber.iter().map(|&v| self.chamber_vertices[v].clone()).collect();
            barycenter(&pts)
        };
        self.points.insert(key, point.clone());
        Ok(point)
    }

    /// Closest point to the origin, under the invariant form, on the affine
    /// span of the face; it must lie in `F ∩ D`.
    fn orthogonal_point(&self, facets: &[usize]) -> Result<WeightVector, PolytopeError> {
        let h: Matrix = facets.iter().map(|&f| self.p.facets[f].functional.clone()).collect();
        let c: Vec<Rational> = facets.iter().map(|&f| self.p.facets[f].offset.clone()).collect();
        // x = G^{-1} H^T mu with (H G^{-1} H^T) mu = c
        let ginv = linalg::inverse(self.rs.gram()).expect("invariant form is nondegenerate");
        let ginv_ht = linalg::mat_mul(&ginv, &linalg::transpose(&h));
        let system = linalg::mat_mul(&h, &ginv_ht);
        let mu = linalg::solve(&system, &c).expect("facet normals of a simple face are independent");
        let x = WeightVector(linalg::mat_vec(&ginv_ht, &mu));
        if self.p.contains(&x) && self.rs.is_dominant(&x) {
            Ok(x)
        } else {
            Err(PolytopeError::OrthogonalPointOutside { facets: facets.to_vec(), point: x })
        }
    }
}

/// One [`FlagChain`] per k-flag of chamber-meeting faces of a regular
/// polytope, checked against the lattice volume of `P ∩ D`.
pub fn flag_subdivision(p: &Polytope, rs: &RootSystem) -> Result<Vec<FlagChain>, PolytopeError> {
    let regularity = is_regular(p, rs, &p.lattice);
    if !regularity.regular {
        return Err(PolytopeError::NotRegular(regularity.reason.unwrap_or_default()));
    }
    let k = p.ambient;
    let truncated = intersect_chamber(p, rs)?;
    let chamber_vertices = truncated.vertices.clone();
    let walls = rs.chamber_inequalities();
    let on_wall = chamber_vertices
        .iter()
        .map(|v| walls.iter().any(|(a, _)| linalg::dot(a, v.coords()).is_zero()))
        .collect();
    let on_facet = p
        .facets
        .iter()
        .map(|f| {
            (0..chamber_vertices.len())
                .filter(|&v| f.is_tight(chamber_vertices[v].coords()))
                .collect()
        })
        .collect();
    let mut ctx = Context {
        p,
        rs,
        chamber_vertices,
        on_facet,
        on_wall,
        points: BTreeMap::new(),
    };
    let meeting: Vec<usize> = (0..p.facets.len()).filter(|&f| !ctx.on_facet[f].is_empty()).collect();

    let mut sequences = Vec::new();
    let mut stack: Vec<Vec<usize>> = meeting.iter().map(|&f| vec![f]).collect();
    stack.reverse();
    while let Some(seq) = stack.pop() {
        if seq.len() == k {
            sequences.push(seq);
            continue;
        }
        for &f in meeting.iter().rev() {
            if seq.contains(&f) {
                continue;
            }
            let mut next = seq.clone();
            next.push(f);
            let verts = ctx.face_vertices(&next);
            let pts: Vec<Vec<Rational>> = verts.iter().map(|&v| p.vertices[v].0.clone()).collect();
            let codim_ok = linalg::affine_dim(&pts) == Some(k - next.len());
            if codim_ok && !ctx.face_chamber_vertices(&next).is_empty() {
                stack.push(next);
            }
        }
    }

    let k_fact = Rational::from_integer(linalg::factorial(k));
    let mut flags = Vec::with_capacity(sequences.len());
    let mut covered = Rational::zero();
    for seq in sequences {
        let points = (1..=k)
            .map(|j| ctx.point(&seq[..j]))
            .collect::<Result<Vec<_>, _>>()?;
        let mut coeff = Rational::one();
        let mut previous = WeightVector::zero(k);
        for (j, &f) in seq.iter().enumerate() {
            let facet = &p.facets[f];
            coeff *= &facet.offset - facet.eval(previous.coords());
            previous = points[j].clone();
        }
        let mut vertices = vec![WeightVector::zero(k)];
        vertices.extend(points.iter().cloned());
        let simplex = Simplex::new_unchecked(vertices);
        let volume = lattice_volume(&simplex, &p.lattice);
        if coeff.abs() != &k_fact * &volume {
            return Err(PolytopeError::FlagCoefficientMismatch {
                facets: seq,
                coeff,
                volume: &k_fact * &volume,
            });
        }
        covered += &coeff / &k_fact;
        flags.push(FlagChain { facet_sequence: seq, points, simplex, coeff });
    }
    let expected = truncated.lattice_volume();
    if covered != expected {
        return Err(PolytopeError::TilingMismatch { flags: covered, polytope: expected });
    }
    Ok(flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{convex_hull, LatticeSpec};
    use crate::rootsys::{build_root_system, CartanLetter::*};

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::from_ints(v)
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn a1_single_flag() {
        let a1 = build_root_system(&[(A, 1)], 0).unwrap();
        for m in 1..=4 {
            let p = convex_hull(&[w(&[-m]), w(&[m])], &LatticeSpec::simply_connected(1)).unwrap();
            let flags = flag_subdivision(&p, &a1).unwrap();
            assert_eq!(flags.len(), 1);
            assert_eq!(flags[0].coeff, q(m));
            assert_eq!(flags[0].points, vec![w(&[m])]);
        }
    }

    #[test]
    fn a2_hexagon_two_triangles() {
        let a2 = build_root_system(&[(A, 2)], 0).unwrap();
        let lam = w(&[1, 1]);
        let p = convex_hull(&a2.weyl_orbit(&lam), &LatticeSpec::adjoint(&a2)).unwrap();
        let flags = flag_subdivision(&p, &a2).unwrap();
        assert_eq!(flags.len(), 2);
        for f in &flags {
            // last point is the vertex lambda, first is on a wall
            assert_eq!(f.points[1], lam);
            assert!(a2.on_wall(&f.points[0]));
            assert!(f.simplex.points()[0].is_zero());
        }
        let mids: Vec<_> = flags.iter().map(|f| f.points[0].clone()).collect();
        let half = Rational::new(3.into(), 2.into());
        assert!(mids.contains(&WeightVector(vec![q(0), half.clone()])));
        assert!(mids.contains(&WeightVector(vec![half, q(0)])));
    }

    #[test]
    fn b2_and_product_tile_the_chamber_part() {
        let b2 = build_root_system(&[(B, 2)], 0).unwrap();
        let p = convex_hull(&b2.weyl_orbit(&w(&[2, 2])), &LatticeSpec::adjoint(&b2)).unwrap();
        let flags = flag_subdivision(&p, &b2).unwrap();
        assert_eq!(flags.len(), 2);

        let g = build_root_system(&[(A, 1), (A, 1)], 0).unwrap();
        let p = convex_hull(&g.weyl_orbit(&w(&[2, 3])), &LatticeSpec::simply_connected(2)).unwrap();
        let flags = flag_subdivision(&p, &g).unwrap();
        assert_eq!(flags.len(), 2);
        let total: Rational = flags.iter().map(|f| f.coeff.clone()).sum();
        assert_eq!(total, q(12));
    }

    #[test]
    fn rank_three_flags() {
        let a3 = build_root_system(&[(A, 3)], 0).unwrap();
        let p = convex_hull(&a3.weyl_orbit(&w(&[1, 1, 1])), &LatticeSpec::adjoint(&a3));
        // rho is in the root lattice for A3 only up to index; fall back to 2 rho
        let p = match p {
            Ok(p) if is_regular(&p, &a3, p.lattice()).regular => p,
            _ => convex_hull(&a3.weyl_orbit(&w(&[2, 2, 2])), &LatticeSpec::adjoint(&a3)).unwrap(),
        };
        let flags = flag_subdivision(&p, &a3).unwrap();
        // 3! orderings of the three chamber-meeting facets
        assert_eq!(flags.len(), 6);
    }

    #[test]
    fn non_regular_rejected() {
        let a2 = build_root_system(&[(A, 2)], 0).unwrap();
        let tri = convex_hull(&[w(&[1, 0]), w(&[-1, 1]), w(&[0, -1])], &LatticeSpec::simply_connected(2))
            .unwrap();
        assert!(matches!(flag_subdivision(&tri, &a2), Err(PolytopeError::NotRegular(_))));
    }
}
