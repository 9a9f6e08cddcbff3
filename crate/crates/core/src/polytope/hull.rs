//! Beneath-beyond convex hull for a full-dimensional point set in `Q^r`.
//!
//! The boundary is kept as a simplicial complex. A point lying exactly on
//! the plane of a facet counts as not visible from it, so coplanar input
//! produces several coplanar simplices which are merged at the end.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg;
use crate::Rational;

pub(super) struct HullFacet {
    /// Primitive integer outer normal, stored as rationals.
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

struct SimplicialFacet {
    verts: Vec<usize>,
    normal: Vec<Rational>,
    offset: Rational,
}

fn hyperplane(
    points: &[Vec<Rational>],
    verts: &[usize],
    interior: &[Rational],
) -> (Vec<Rational>, Rational) {
    let r = interior.len();
    let p0 = &points[verts[0]];
    let rows: Vec<Vec<Rational>> = verts[1..]
        .iter()
        .map(|&v| points[v].iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let ns = linalg::nullspace(&rows, r);
    debug_assert_eq!(ns.len(), 1, "facet vertices must be affinely independent");
    let mut normal = ns.into_iter().next().expect("one-dimensional nullspace");
    let mut offset = linalg::dot(&normal, p0);
    if linalg::dot(&normal, interior) > offset {
        normal.iter_mut().for_each(|x| *x = -x.clone());
        offset = -offset;
    }
    (normal, offset)
}

/// Returns the indices of the extreme points and the facets of
/// `conv(points)`. `init` must index `r + 1` affinely independent points.
pub(super) fn full_hull(points: &[Vec<Rational>], init: &[usize]) -> (Vec<usize>, Vec<HullFacet>) {
    let r = points[0].len();
    debug_assert_eq!(init.len(), r + 1);

    let denom = Rational::from_integer(BigInt::from(r + 1));
    let interior: Vec<Rational> = (0..r)
        .map(|c| init.iter().fold(Rational::zero(), |s, &i| s + &points[i][c]) / &denom)
        .collect();

    let mut facets: Vec<SimplicialFacet> = (0..init.len())
        .map(|skip| {
            let verts: Vec<usize> = init
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &v)| v)
                .collect();
            let (normal, offset) = hyperplane(points, &verts, &interior);
            SimplicialFacet { verts, normal, offset }
        })
        .collect();

    for (i, p) in points.iter().enumerate() {
        if init.contains(&i) {
            continue;
        }
        let visible: Vec<bool> = facets
            .iter()
            .map(|f| linalg::dot(&f.normal, p) > f.offset)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for (f, _) in facets.iter().zip(&visible).filter(|(_, &v)| v) {
            for skip in 0..f.verts.len() {
                let ridge: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridges
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(ridge, _)| ridge)
            .collect();
        horizon.sort();

        let mut kept: Vec<SimplicialFacet> = facets
            .into_iter()
            .zip(visible)
            .filter(|(_, v)| !v)
            .map(|(f, _)| f)
            .collect();
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(i);
            verts.sort_unstable();
            let (normal, offset) = hyperplane(points, &verts, &interior);
            kept.push(SimplicialFacet { verts, normal, offset });
        }
        facets = kept;
    }

    // merge coplanar simplices
    let mut merged: BTreeMap<Vec<BigInt>, Vec<usize>> = BTreeMap::new();
    for f in &facets {
        let key = linalg::primitive_integer(&f.normal);
        merged.entry(key).or_default().extend(&f.verts);
    }
    let hull_facets: Vec<HullFacet> = merged
        .iter()
        .map(|(key, verts)| {
            let normal = linalg::to_rational(key);
            let offset = linalg::dot(&normal, &points[verts[0]]);
            HullFacet { normal, offset }
        })
        .collect();

    let mut candidates: Vec<usize> = facets.iter().flat_map(|f| f.verts.iter().copied()).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let vertices = candidates
        .into_iter()
        .filter(|&c| {
            let tight: Vec<Vec<Rational>> = hull_facets
                .iter()
                .filter(|f| linalg::dot(&f.normal, &points[c]) == f.offset)
                .map(|f| f.normal.clone())
                .collect();
            linalg::rank(&tight) == r
        })
        .collect();
    (vertices, hull_facets)
}
