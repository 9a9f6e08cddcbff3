//! Exact convex geometry over the rationals.
//!
//! A [`Polytope`] carries both representations. Facet normals are stored as
//! primitive integer covectors in the dual of its [`LatticeSpec`] basis, so
//! a facet's offset is its integral distance from the origin.

mod faces;
mod flags;
mod hull;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::rootsys::{RootSystem, WeightVector};
use crate::Rational;

pub use faces::{face_census, is_regular, triangulate, triangulate_from, CensusRow, Face, Regularity};
pub use flags::{flag_subdivision, FlagChain};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("convex hull of an empty point set")]
    EmptyPointSet,
    #[error("point has {got} coordinates, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("lattice basis must be a nonsingular square matrix")]
    SingularLattice,
    #[error("polytope has dimension {dim:?} in ambient dimension {ambient}")]
    NotFullDimensional { dim: Option<usize>, ambient: usize },
    #[error("{0} points do not form a nondegenerate simplex")]
    DegenerateSimplex(usize),
    #[error("triangulation apex {0} lies outside the polytope")]
    ApexOutside(WeightVector),
    #[error("polytope is not invariant under the Weyl group: {0}")]
    NotWeylInvariant(String),
    #[error("polytope is not regular: {0}")]
    NotRegular(String),
    #[error("orthogonal point {point} of the face cut out by facets {facets:?} is not in the face's dominant part")]
    OrthogonalPointOutside { facets: Vec<usize>, point: WeightVector },
    #[error("flag {facets:?}: support-number coefficient {coeff} differs from k!·volume {volume}")]
    FlagCoefficientMismatch { facets: Vec<usize>, coeff: Rational, volume: Rational },
    #[error("flag simplices cover volume {flags}, truncated polytope has volume {polytope}")]
    TilingMismatch { flags: Rational, polytope: Rational },
}

/// The character lattice as a basis matrix in the standard coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    /// Columns are the basis vectors.
    basis: Matrix,
    inverse: Matrix,
    covolume: Rational,
    name: String,
}

impl LatticeSpec {
    pub fn new(basis: Matrix) -> Result<Self, PolytopeError> {
        Self::named(basis, "custom")
    }

    fn named(basis: Matrix, name: &str) -> Result<Self, PolytopeError> {
        let k = basis.len();
        if basis.iter().any(|row| row.len() != k) {
            return Err(PolytopeError::SingularLattice);
        }
        let inverse = if k == 0 {
            Vec::new()
        } else {
            linalg::inverse(&basis).ok_or(PolytopeError::SingularLattice)?
        };
        let covolume = linalg::det(&basis).abs();
        Ok(Self {
            basis,
            inverse,
            covolume,
            name: name.to_string(),
        })
    }

    /// The weight lattice of the simply connected cover times the central
    /// character lattice: the identity basis.
    pub fn simply_connected(rank: usize) -> Self {
        Self::named(linalg::identity(rank), "simply_connected").expect("identity is invertible")
    }

    /// Root lattice on the semisimple block, identity on the central block.
    pub fn adjoint(rs: &RootSystem) -> Self {
        Self::named(rs.root_lattice_basis(), "adjoint").expect("Cartan matrices are invertible")
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn covolume(&self) -> &Rational {
        &self.covolume
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Coordinates of `x` in the lattice basis.
    pub fn lattice_coords(&self, x: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.inverse, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        linalg::is_integral(&self.lattice_coords(x))
    }

    /// Primitive dual-lattice normal on the ray of a standard-coordinate
    /// functional, together with that normal as a standard functional.
    pub fn primitive_normal(&self, functional: &[Rational]) -> (Vec<BigInt>, Vec<Rational>) {
        // a·x = a·(B y) = (B^T a)·y
        let dual = linalg::mat_vec(&linalg::transpose(&self.basis), functional);
        let h = linalg::primitive_integer(&dual);
        let f = self.functional_from_dual(&h);
        (h, f)
    }

    /// The standard-coordinate functional `x ↦ h·(B^{-1} x)`.
    pub fn functional_from_dual(&self, h: &[BigInt]) -> Vec<Rational> {
        linalg::mat_vec(&linalg::transpose(&self.inverse), &linalg::to_rational(h))
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (covolume {})", self.name, self.covolume)
    }
}

/// `⟨normal, B^{-1}x⟩ <= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    /// The same functional in standard coordinates.
    pub functional: Vec<Rational>,
    pub offset: Rational,
}

impl Facet {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        linalg::dot(&self.functional, x)
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.eval(x) == self.offset
    }
}

#[derive(Clone, Debug)]
pub struct Polytope {
    ambient: usize,
    dim: Option<usize>,
    vertices: Vec<WeightVector>,
    /// For lower-dimensional polytopes these are facets relative to the
    /// affine span.
    facets: Vec<Facet>,
    /// Affine span as `a·x = b` rows; empty when full-dimensional.
    equations: Vec<(Vec<Rational>, Rational)>,
    facet_vertices: Vec<Vec<usize>>,
    lattice: LatticeSpec,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Polytope {
    pub fn empty(lattice: &LatticeSpec) -> Self {
        Self {
            ambient: lattice.rank(),
            dim: None,
            vertices: Vec::new(),
            facets: Vec::new(),
            equations: Vec::new(),
            facet_vertices: Vec::new(),
            lattice: lattice.clone(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Affine dimension; `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim.is_none()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == Some(self.ambient)
    }

    pub fn vertices(&self) -> &[WeightVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[(Vec<Rational>, Rational)] {
        &self.equations
    }

    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    /// Vertex indices lying on facet `i`.
    pub fn facet_vertices(&self, i: usize) -> &[usize] {
        &self.facet_vertices[i]
    }

    pub fn contains(&self, x: &WeightVector) -> bool {
        !self.is_empty()
            && self.facets.iter().all(|f| f.eval(x.coords()) <= f.offset)
            && self
                .equations
                .iter()
                .all(|(a, b)| &linalg::dot(a, x.coords()) == b)
    }

    pub fn barycenter(&self) -> WeightVector {
        barycenter(&self.vertices)
    }

    /// The same point set with facet normals renormalized for `lattice`.
    pub fn with_lattice(&self, lattice: &LatticeSpec) -> Self {
        let mut out = self.clone();
        out.lattice = lattice.clone();
        for f in &mut out.facets {
            let (normal, functional) = lattice.primitive_normal(&f.functional);
            let offset = linalg::dot(&functional, self.vertices[0].coords());
            // any vertex of the facet gives the offset; recompute as a max
            let offset = self
                .vertices
                .iter()
                .map(|v| linalg::dot(&functional, v.coords()))
                .fold(offset, |m, x| if x > m { x } else { m });
            *f = Facet { normal, functional, offset };
        }
        out
    }

    /// Volume normalized so the lattice has covolume 1; zero when not
    /// full-dimensional.
    pub fn lattice_volume(&self) -> Rational {
        match triangulate(self) {
            Ok(simplices) => simplices.iter().map(|s| lattice_volume(s, &self.lattice)).sum(),
            Err(_) => Rational::zero(),
        }
    }
}

pub(crate) fn barycenter(points: &[WeightVector]) -> WeightVector {
    let k = points[0].len();
    let n = Rational::from_integer(BigInt::from(points.len()));
    WeightVector(
        (0..k)
            .map(|c| points.iter().fold(Rational::zero(), |s, p| s + &p.0[c]) / &n)
            .collect(),
    )
}

fn check_lengths(points: &[WeightVector], k: usize) -> Result<(), PolytopeError> {
    match points.iter().find(|p| p.len() != k) {
        Some(p) => Err(PolytopeError::LengthMismatch { expected: k, got: p.len() }),
        None => Ok(()),
    }
}

/// Convex hull with facet normals normalized for `lattice`.
pub fn convex_hull(points: &[WeightVector], lattice: &LatticeSpec) -> Result<Polytope, PolytopeError> {
    let k = lattice.rank();
    if points.is_empty() {
        return Err(PolytopeError::EmptyPointSet);
    }
    check_lengths(points, k)?;
    let pts: Vec<WeightVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let raw: Vec<Vec<Rational>> = pts.iter().map(|p| p.0.clone()).collect();

    let basis = linalg::affine_basis(&raw);
    let r = basis.len() - 1;
    let directions: Matrix = basis[1..]
        .iter()
        .map(|&i| raw[i].iter().zip(&raw[basis[0]]).map(|(a, b)| a - b).collect())
        .collect();

    let equations: Vec<(Vec<Rational>, Rational)> = if r == k {
        Vec::new()
    } else {
        linalg::nullspace(&directions, k)
            .into_iter()
            .map(|a| {
                let (_, a) = lattice.primitive_normal(&a);
                let b = linalg::dot(&a, &raw[0]);
                (a, b)
            })
            .collect()
    };

    if r == 0 {
        return Ok(Polytope {
            ambient: k,
            dim: Some(0),
            vertices: pts,
            facets: Vec::new(),
            equations,
            facet_vertices: Vec::new(),
            lattice: lattice.clone(),
        });
    }

    // project onto pivot coordinates, where the affine span is a graph
    let mut echelon = directions.clone();
    let pivots = linalg::rref(&mut echelon);
    let projected: Vec<Vec<Rational>> = raw
        .iter()
        .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
        .collect();
    let (vertex_idx, hull_facets) = hull::full_hull(&projected, &basis);

    let vertices: Vec<WeightVector> = vertex_idx.iter().map(|&i| pts[i].clone()).collect();
    let mut facets: Vec<Facet> = hull_facets
        .into_iter()
        .map(|hf| {
            let mut lifted = vec![Rational::zero(); k];
            for (&c, x) in pivots.iter().zip(hf.normal) {
                lifted[c] = x;
            }
            let (normal, functional) = lattice.primitive_normal(&lifted);
            let offset = vertices
                .iter()
                .map(|v| linalg::dot(&functional, v.coords()))
                .max()
                .expect("nonempty");
            Facet { normal, functional, offset }
        })
        .collect();
    facets.sort_by(|a, b| a.normal.cmp(&b.normal).then_with(|| a.offset.cmp(&b.offset)));
    let facet_vertices = facets
        .iter()
        .map(|f| {
            vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| f.is_tight(v.coords()))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();

    Ok(Polytope {
        ambient: k,
        dim: Some(r),
        vertices,
        facets,
        equations,
        facet_vertices,
        lattice: lattice.clone(),
    })
}

/// Vertices of `{x : a·x <= b for ineqs, a·x = b for eqs}`, assumed bounded.
fn enumerate_vertices(
    ineqs: &[(Vec<Rational>, Rational)],
    eqs: &[(Vec<Rational>, Rational)],
    k: usize,
) -> Vec<WeightVector> {
    let need = k.saturating_sub(eqs.len());
    let mut found = BTreeSet::new();
    if need > ineqs.len() {
        return Vec::new();
    }
    let feasible = |x: &[Rational]| {
        ineqs.iter().all(|(a, b)| &linalg::dot(a, x) <= b)
            && eqs.iter().all(|(a, b)| &linalg::dot(a, x) == b)
    };
    let mut choice: Vec<usize> = (0..need).collect();
    loop {
        let rows: Matrix = eqs
            .iter()
            .map(|(a, _)| a.clone())
            .chain(choice.iter().map(|&i| ineqs[i].0.clone()))
            .collect();
        let rhs: Vec<Rational> = eqs
            .iter()
            .map(|(_, b)| b.clone())
            .chain(choice.iter().map(|&i| ineqs[i].1.clone()))
            .collect();
        if let Some(x) = linalg::solve(&rows, &rhs) {
            if feasible(&x) {
                found.insert(WeightVector(x));
            }
        }
        // next combination
        let mut i = need;
        loop {
            if i == 0 {
                return found.into_iter().collect();
            }
            i -= 1;
            if choice[i] < ineqs.len() - need + i {
                choice[i] += 1;
                for j in i + 1..need {
                    choice[j] = choice[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `P ∩ D` for the dominant chamber `D` of `rs`.
pub fn intersect_chamber(p: &Polytope, rs: &RootSystem) -> Result<Polytope, PolytopeError> {
    if p.is_empty() || rs.simple_roots().is_empty() {
        return Ok(p.clone());
    }
    let k = p.ambient;
    if rs.total_rank() != k {
        return Err(PolytopeError::LengthMismatch { expected: k, got: rs.total_rank() });
    }
    let mut ineqs: Vec<(Vec<Rational>, Rational)> = p
        .facets
        .iter()
        .map(|f| (f.functional.clone(), f.offset.clone()))
        .collect();
    ineqs.extend(rs.chamber_inequalities());
    let vertices = enumerate_vertices(&ineqs, &p.equations, k);
    if vertices.is_empty() {
        return Ok(Polytope::empty(&p.lattice));
    }
    convex_hull(&vertices, &p.lattice)
}

/// Maximum of the dual-lattice covector `h` over the polytope.
pub fn support_number(p: &Polytope, h: &[BigInt]) -> Rational {
    let f = p.lattice.functional_from_dual(h);
    p.vertices
        .iter()
        .map(|v| linalg::dot(&f, v.coords()))
        .max()
        .expect("support number of an empty polytope")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    points: Vec<WeightVector>,
}

impl Simplex {
    pub fn new(points: Vec<WeightVector>) -> Result<Self, PolytopeError> {
        let s = Self { points };
        let k = s.points.first().map_or(0, WeightVector::len);
        if s.points.len() != k + 1 || s.edge_det().is_zero() {
            return Err(PolytopeError::DegenerateSimplex(s.points.len()));
        }
        Ok(s)
    }

    /// No affine-independence check; degenerate simplices have volume 0.
    pub(crate) fn new_unchecked(points: Vec<WeightVector>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[WeightVector] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points.len() - 1
    }

    /// Determinant of the edge vectors from the first vertex.
    pub fn edge_det(&self) -> Rational {
        let p0 = &self.points[0];
        let edges: Matrix = self.points[1..].iter().map(|p| (p - p0).0).collect();
        linalg::det(&edges)
    }
}


/// `|det(edges)| / (k! · covolume)`.
pub fn lattice_volume(s: &Simplex, lattice: &LatticeSpec) -> Rational {
    s.edge_det().abs() / (Rational::from_integer(linalg::factorial(s.dim())) * lattice.covolume())
}
