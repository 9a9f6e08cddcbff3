//! Face lattice, Weyl orbit census, regularity, and triangulation.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{barycenter, Polytope, PolytopeError, Simplex};
use crate::linalg;
use crate::rootsys::{RootSystem, WeightVector};
use crate::Rational;
use crate::LatticeSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub saturated_facet_indices: Vec<usize>,
    pub vertex_indices: Vec<usize>,
    pub codim: usize,
    /// Vertex barycenter; lies in the relative interior.
    pub interior_point: WeightVector,
}

fn vertex_dim(p: &Polytope, idx: &[usize]) -> Option<usize> {
    let pts: Vec<Vec<Rational>> = idx.iter().map(|&i| p.vertices[i].0.clone()).collect();
    linalg::affine_dim(&pts)
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().filter(|x| b.binary_search(x).is_ok()).copied().collect()
}

/// Maximal proper faces of the face with vertex set `face` and dimension `dim`.
fn subfacets(p: &Polytope, face: &[usize], dim: usize) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for fv in &p.facet_vertices {
        let s = intersect(face, fv);
        if s.is_empty() || s.len() == face.len() {
            continue;
        }
        if vertex_dim(p, &s) == Some(dim - 1) {
            out.insert(s);
        }
    }
    out.into_iter().collect()
}

impl Polytope {
    /// All nonempty faces grouped by codimension; index 0 holds the
    /// polytope itself.
    pub fn faces(&self) -> Vec<Vec<Face>> {
        let Some(dim) = self.dim else {
            return Vec::new();
        };
        let mut levels: Vec<Vec<Vec<usize>>> = vec![vec![(0..self.vertices.len()).collect()]];
        for codim in 0..dim {
            let d = dim - codim;
            let next: BTreeSet<Vec<usize>> = levels[codim]
                .iter()
                .flat_map(|f| subfacets(self, f, d))
                .collect();
            levels.push(next.into_iter().collect());
        }
        levels
            .into_iter()
            .enumerate()
            .map(|(codim, faces)| {
                faces
                    .into_iter()
                    .map(|vertex_indices| {
                        let saturated_facet_indices = self
                            .facet_vertices
                            .iter()
                            .enumerate()
                            .filter(|(_, fv)| vertex_indices.iter().all(|v| fv.binary_search(v).is_ok()))
                            .map(|(i, _)| i)
                            .collect();
                        let pts: Vec<WeightVector> =
                            vertex_indices.iter().map(|&i| self.vertices[i].clone()).collect();
                        Face {
                            saturated_facet_indices,
                            codim,
                            interior_point: barycenter(&pts),
                            vertex_indices,
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Vertex permutation induced by each simple reflection.
    fn reflection_permutations(&self, rs: &RootSystem) -> Result<Vec<Vec<usize>>, PolytopeError> {
        (0..rs.simple_roots().len())
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| {
                        let image = rs.reflect(i, v);
                        self.vertices.binary_search(&image).map_err(|_| {
                            PolytopeError::NotWeylInvariant(format!(
                                "reflection {} maps vertex {v} to {image}",
                                i + 1
                            ))
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub codim: usize,
    pub faces: usize,
    pub orbits: usize,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Number of faces and of Weyl orbits of faces in each codimension.
pub fn face_census(p: &Polytope, rs: &RootSystem) -> Result<Vec<CensusRow>, PolytopeError> {
    let perms = p.reflection_permutations(rs)?;
    let mut rows = Vec::new();
    for (codim, faces) in p.faces().into_iter().enumerate() {
        let index: BTreeMap<&[usize], usize> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertex_indices.as_slice(), i))
            .collect();
        let mut parent: Vec<usize> = (0..faces.len()).collect();
        for (i, f) in faces.iter().enumerate() {
            for perm in &perms {
                let mut image: Vec<usize> = f.vertex_indices.iter().map(|&v| perm[v]).collect();
                image.sort_unstable();
                let j = index[image.as_slice()];
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let orbits = (0..faces.len()).filter(|&i| find(&mut parent, i) == i).count();
        rows.push(CensusRow { codim, faces: faces.len(), orbits });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub regular: bool,
    pub reason: Option<String>,
}

impl Regularity {
    fn fail(reason: String) -> Self {
        Self { regular: false, reason: Some(reason) }
    }
}

/// Integrally simple with respect to `lattice` and no vertex on a wall.
pub fn is_regular(p: &Polytope, rs: &RootSystem, lattice: &LatticeSpec) -> Regularity {
    let k = p.ambient;
    if !p.is_full_dimensional() {
        return Regularity::fail(format!("polytope has dimension {:?} < {k}", p.dim));
    }
    if let Err(e) = p.reflection_permutations(rs) {
        return Regularity::fail(e.to_string());
    }
    let p = p.with_lattice(lattice);
    for v in &p.vertices {
        if rs.on_wall(v) {
            return Regularity::fail(format!("vertex {v} lies on a wall of the Weyl chambers"));
        }
        let normals: Vec<Vec<Rational>> = p
            .facets
            .iter()
            .filter(|f| f.is_tight(v.coords()))
            .map(|f| linalg::to_rational(&f.normal))
            .collect();
        if normals.len() != k {
            return Regularity::fail(format!(
                "vertex {v} lies on {} facets, not {k}: polytope is not simple",
                normals.len()
            ));
        }
        // edge j is the kernel of the other k-1 normals, in lattice coordinates
        let edges: Vec<Vec<Rational>> = (0..k)
            .map(|j| {
                let others: Vec<Vec<Rational>> = normals
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, n)| n.clone())
                    .collect();
                let kernel = linalg::nullspace(&others, k);
                linalg::to_rational(&linalg::primitive_integer(&kernel[0]))
            })
            .collect();
        let det = linalg::det(&edges);
        if det.abs() != Rational::one() {
            return Regularity::fail(format!(
                "edges at vertex {v} span a sublattice of index {}: polytope is not integrally simple",
                det.abs()
            ));
        }
    }
    Regularity { regular: true, reason: None }
}

/// Pulling triangulation of a face using only its own vertices.
fn pull(p: &Polytope, face: &[usize], dim: usize) -> Vec<Vec<usize>> {
    if dim == 0 {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let mut out = Vec::new();
    for sub in subfacets(p, face, dim) {
        if sub.binary_search(&apex).is_ok() {
            continue;
        }
        for mut s in pull(p, &sub, dim - 1) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

/// Cones from `apex` over pulling triangulations of the facets not
/// containing it. With an interior apex every simplex has one interior
/// vertex; with a vertex apex the result is the pulling triangulation.
pub fn triangulate_from(p: &Polytope, apex: &WeightVector) -> Result<Vec<Simplex>, PolytopeError> {
    let k = p.ambient;
    if !p.is_full_dimensional() {
        return Err(PolytopeError::NotFullDimensional { dim: p.dim, ambient: k });
    }
    if !p.contains(apex) {
        return Err(PolytopeError::ApexOutside(apex.clone()));
    }
    let mut out = Vec::new();
    for (i, f) in p.facets.iter().enumerate() {
        if f.is_tight(apex.coords()) {
            continue;
        }
        for cell in pull(p, &p.facet_vertices[i], k - 1) {
            let mut pts = vec![apex.clone()];
            pts.extend(cell.iter().map(|&v| p.vertices[v].clone()));
            out.push(Simplex::new(pts)?);
        }
    }
    Ok(out)
}

/// A simplex is returned as is; otherwise cones from the vertex barycenter.
pub fn triangulate(p: &Polytope) -> Result<Vec<Simplex>, PolytopeError> {
    if p.is_full_dimensional() && p.vertices.len() == p.ambient + 1 {
        return Ok(vec![Simplex::new(p.vertices.clone())?]);
    }
    triangulate_from(p, &p.barycenter())
}

/// Twice the signed area of a polygon, used only by tests.
#[cfg(test)]
pub(crate) fn shoelace2(poly: &[(i64, i64)]) -> i64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (x0, y0) = poly[i];
            let (x1, y1) = poly[(i + 1) % n];
            x0 * y1 - x1 * y0
        })
        .sum()
}

#[allow(dead_code)]
fn is_unimodular(m: &[Vec<BigInt>]) -> bool {
    let r: Vec<Vec<Rational>> = m.iter().map(|row| linalg::to_rational(row)).collect();
    linalg::det(&r).abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{convex_hull, lattice_volume};
    use crate::rootsys::{build_root_system, CartanLetter::*};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::from_ints(v)
    }

    fn hull(v: &[&[i64]]) -> Polytope {
        let pts: Vec<WeightVector> = v.iter().map(|p| w(p)).collect();
        convex_hull(&pts, &LatticeSpec::simply_connected(pts[0].len())).unwrap()
    }

    fn total(p: &Polytope, simplices: &[Simplex]) -> Rational {
        simplices.iter().map(|s| lattice_volume(s, p.lattice())).sum()
    }

    #[test]
    fn simplex_triangulates_to_itself() {
        let p = hull(&[&[0, 0], &[3, 0], &[0, 2]]);
        let t = triangulate(&p).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(total(&p, &t), q(3));
    }

    #[test]
    fn unit_square() {
        let p = hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let pulled = triangulate_from(&p, &p.vertices()[0]).unwrap();
        assert_eq!(pulled.len(), 2);
        assert_eq!(total(&p, &pulled), q(1));
        let coned = triangulate(&p).unwrap();
        assert_eq!(coned.len(), 4);
        assert_eq!(total(&p, &coned), q(1));
    }

    #[test]
    fn hexagon_six_triangles_match_shoelace() {
        let a2 = build_root_system(&[(A, 2)], 0).unwrap();
        let p = convex_hull(&a2.weyl_orbit(&w(&[2, 1])), &LatticeSpec::simply_connected(2)).unwrap();
        let t = triangulate(&p).unwrap();
        assert_eq!(t.len(), 6);
        // order the vertices by angle for the shoelace oracle: walk facets
        let verts: Vec<(i64, i64)> = {
            let mut order = vec![0usize];
            while order.len() < p.vertices().len() {
                let last = *order.last().unwrap();
                let next = (0..p.facets().len())
                    .map(|f| p.facet_vertices(f))
                    .filter(|fv| fv.contains(&last))
                    .flat_map(|fv| fv.iter().copied())
                    .find(|v| !order.contains(v))
                    .unwrap();
                order.push(next);
            }
            order
                .iter()
                .map(|&i| {
                    let c = p.vertices()[i].coords();
                    (c[0].to_integer().try_into().unwrap(), c[1].to_integer().try_into().unwrap())
                })
                .collect()
        };
        let area = Rational::new(shoelace2(&verts).abs().into(), 2.into());
        assert_eq!(total(&p, &t), area);
    }

    #[test]
    fn three_dimensional_triangulations_agree() {
        let b3 = build_root_system(&[(B, 3)], 0).unwrap();
        let p = convex_hull(&b3.weyl_orbit(&w(&[1, 1, 1])), &LatticeSpec::simply_connected(3)).unwrap();
        assert_eq!(p.vertices().len(), 48);
        assert_eq!(p.facets().len(), 26);
        let a = total(&p, &triangulate(&p).unwrap());
        let b = total(&p, &triangulate_from(&p, &p.vertices()[5]).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn lower_dimensional_triangulation_rejected() {
        let p = hull(&[&[0, 0], &[1, 1]]);
        assert!(matches!(triangulate(&p), Err(PolytopeError::NotFullDimensional { .. })));
    }

    #[test]
    fn census_a1() {
        let a1 = build_root_system(&[(A, 1)], 0).unwrap();
        let p = hull(&[&[-1], &[1]]);
        let rows = face_census(&p, &a1).unwrap();
        assert_eq!(
            rows,
            vec![CensusRow { codim: 0, faces: 1, orbits: 1 }, CensusRow { codim: 1, faces: 2, orbits: 1 }]
        );
    }

    #[test]
    fn census_a2_hexagon() {
        let a2 = build_root_system(&[(A, 2)], 0).unwrap();
        let p = convex_hull(&a2.weyl_orbit(&w(&[1, 1])), &LatticeSpec::simply_connected(2)).unwrap();
        let rows = face_census(&p, &a2).unwrap();
        assert_eq!(rows[1], CensusRow { codim: 1, faces: 6, orbits: 2 });
        assert_eq!(rows[2], CensusRow { codim: 2, faces: 6, orbits: 1 });
    }

    #[test]
    fn census_torus_and_noninvariant() {
        let t = build_root_system(&[], 2).unwrap();
        let p = hull(&[&[0, 0], &[2, 0], &[0, 1]]);
        let rows = face_census(&p, &t).unwrap();
        assert!(rows.iter().all(|r| r.faces == r.orbits));
        assert_eq!(rows[1].faces, 3);
        let a1 = build_root_system(&[(A, 1)], 0).unwrap();
        assert!(matches!(face_census(&hull(&[&[0], &[1]]), &a1), Err(PolytopeError::NotWeylInvariant(_))));
    }

    #[test]
    fn regularity() {
        let a2 = build_root_system(&[(A, 2)], 0).unwrap();
        let hex = convex_hull(&a2.weyl_orbit(&w(&[1, 1])), &LatticeSpec::simply_connected(2)).unwrap();
        assert!(is_regular(&hex, &a2, &LatticeSpec::adjoint(&a2)).regular);
        let sc = is_regular(&hex, &a2, &LatticeSpec::simply_connected(2));
        assert!(!sc.regular);
        assert!(sc.reason.unwrap().contains("integrally simple"));

        let a1 = build_root_system(&[(A, 1)], 0).unwrap();
        assert!(is_regular(&hull(&[&[-3], &[3]]), &a1, &LatticeSpec::simply_connected(1)).regular);

        let tri = hull(&[&[1, 0], &[-1, 1], &[0, -1]]);
        let r = is_regular(&tri, &a2, &LatticeSpec::simply_connected(2));
        assert!(!r.regular);
        assert!(r.reason.unwrap().contains("wall"));
    }

    #[test]
    fn faces_of_cube() {
        let mut v = Vec::new();
        for x in [0, 1] {
            for y in [0, 1] {
                for z in [0, 1] {
                    v.push(w(&[x, y, z]));
                }
            }
        }
        let p = convex_hull(&v, &LatticeSpec::simply_connected(3)).unwrap();
        let counts: Vec<usize> = p.faces().iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 6, 12, 8]);
        let edge = &p.faces()[2][0];
        assert_eq!(edge.saturated_facet_indices.len(), 2);
    }
}
