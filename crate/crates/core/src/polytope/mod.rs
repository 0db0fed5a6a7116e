//! Polytopes with the origin in their interior, their polar duals, and the
//! lattice polytope pair attached to a weight system.
//!
//! Vertices and facets are stored symmetrically. A vertex is a homogeneous
//! pair `(v, w)` with `w > 0` standing for `v / w`; a facet is a pair `(u, c)`
//! standing for `<u, x> + c >= 0`. Polar duality swaps the two lists, so
//! facet `j` of `P` is vertex `j` of `P*` and vice versa.

pub mod dd;
pub mod dump;
pub mod faces;
pub mod toric;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, rank_of_rows, Int, IntVector};
pub use faces::{FVector, Face, FaceLattice};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<(IntVector, Int)>,
    facets: Vec<(IntVector, Int)>,
}

impl Polytope {
    /// Convex hull of integer points, which must contain the origin in the
    /// interior. Points may include non-vertices.
    pub fn from_points(points: &[IntVector]) -> Result<Self> {
        let dim = points
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Degenerate("no points".into()))?;
        let mut order: Vec<&IntVector> = points.iter().collect();
        order.sort_by_cached_key(|p| std::cmp::Reverse(dot(p, p)));
        let constraints: Vec<IntVector> = order
            .iter()
            .map(|p| {
                let mut h = (*p).clone();
                h.push(Int::one());
                h
            })
            .collect();
        let rays = dd::extreme_rays(&constraints)?;
        let mut facets = Vec::with_capacity(rays.len());
        for mut r in rays {
            let c = r.pop().expect("homogeneous coordinate");
            if !c.is_positive() {
                return Err(Error::Degenerate(
                    "the origin is not an interior point".into(),
                ));
            }
            facets.push((r, c));
        }
        facets.sort();

        let mut vertices: Vec<(IntVector, Int)> = Vec::new();
        for p in points {
            let tight: Vec<IntVector> = facets
                .iter()
                .filter(|(u, c)| (dot(u, p) + c).is_zero())
                .map(|(u, _)| u.clone())
                .collect();
            if tight.len() >= dim && rank_of_rows(&tight) == dim {
                vertices.push((p.clone(), Int::one()));
            }
        }
        vertices.sort();
        vertices.dedup();
        Ok(Self {
            dim,
            vertices,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[(IntVector, Int)] {
        &self.vertices
    }

    pub fn facets(&self) -> &[(IntVector, Int)] {
        &self.facets
    }

    /// The polar dual `{x : <y, x> >= -1 for all y in P}`.
    pub fn dual(&self) -> Self {
        Self {
            dim: self.dim,
            vertices: self.facets.clone(),
            facets: self.vertices.clone(),
        }
    }

    /// All vertices are lattice points.
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|(_, w)| w.is_one())
    }

    /// Lattice vertices, or `None` when some vertex is fractional.
    pub fn lattice_vertices(&self) -> Option<Vec<IntVector>> {
        self.is_lattice()
            .then(|| self.vertices.iter().map(|(v, _)| v.clone()).collect())
    }

    pub fn vertex_on_facet(&self, vertex: usize, facet: usize) -> bool {
        let (v, w) = &self.vertices[vertex];
        let (u, c) = &self.facets[facet];
        (dot(u, v) + c * w).is_zero()
    }

    pub fn contains(&self, p: &[Int]) -> bool {
        self.facets
            .iter()
            .all(|(u, c)| !(dot(u, p) + c).is_negative())
    }

    /// Facets on which the lattice point `p` lies.
    pub fn tight_facets(&self, p: &[Int]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.facets.len());
        for (j, (u, c)) in self.facets.iter().enumerate() {
            if (dot(u, p) + c).is_zero() {
                s.insert(j);
            }
        }
        s
    }

    /// Lattice points by scanning the bounding box of the vertices.
    pub fn box_lattice_points(&self) -> Vec<IntVector> {
        let mut lo = vec![Int::zero(); self.dim];
        let mut hi = vec![Int::zero(); self.dim];
        for (v, w) in &self.vertices {
            for k in 0..self.dim {
                lo[k] = lo[k].clone().min(v[k].div_floor(w));
                hi[k] = hi[k].clone().max(v[k].div_ceil(w));
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.contains(&cur) {
                out.push(cur.clone());
            }
            let mut k = 0;
            loop {
                if k == self.dim {
                    out.sort();
                    return out;
                }
                if cur[k] < hi[k] {
                    cur[k] += 1;
                    break;
                }
                cur[k] = lo[k].clone();
                k += 1;
            }
        }
    }
}

/// Polar dual of `p`; its vertices may be fractional.
pub fn dual_polytope(p: &Polytope) -> Polytope {
    p.dual()
}

/// The dual of `p` is a lattice polytope.
pub fn is_reflexive(p: &Polytope) -> bool {
    p.is_lattice() && p.dual().is_lattice()
}

pub fn face_lattice(p: &Polytope) -> FaceLattice {
    FaceLattice::new(p)
}

/// A lattice polytope with its face lattice and every lattice point assigned
/// to the face containing it in its relative interior.
#[derive(Debug, Clone)]
pub struct LatticePolytope {
    pub polytope: Polytope,
    pub faces: FaceLattice,
    pub points: Vec<IntVector>,
    pub carrier: Vec<usize>,
    interior_counts: Vec<usize>,
}

impl LatticePolytope {
    /// `points` must be exactly the lattice points of `polytope`.
    pub fn new(polytope: Polytope, mut points: Vec<IntVector>) -> Result<Self> {
        if !polytope.is_lattice() {
            return Err(Error::InvalidInput(
                "polytope has fractional vertices".into(),
            ));
        }
        points.sort();
        points.dedup();
        let faces = FaceLattice::new(&polytope);
        let mut carrier = Vec::with_capacity(points.len());
        let mut interior_counts = vec![0; faces.faces.len()];
        for p in &points {
            let f = faces
                .by_facet_set(&polytope.tight_facets(p))
                .ok_or_else(|| {
                    Error::Inconsistent(format!("lattice point {p:?} has no carrier face"))
                })?;
            interior_counts[f] += 1;
            carrier.push(f);
        }
        Ok(Self {
            polytope,
            faces,
            points,
            carrier,
            interior_counts,
        })
    }

    pub fn from_vertices(vertices: &[IntVector]) -> Result<Self> {
        let polytope = Polytope::from_points(vertices)?;
        let points = polytope.box_lattice_points();
        Self::new(polytope, points)
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn vertices(&self) -> Vec<IntVector> {
        self.polytope
            .vertices()
            .iter()
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// `l(P)`.
    pub fn lattice_point_count(&self) -> usize {
        self.points.len()
    }

    /// `l*(face)`: lattice points in the relative interior.
    pub fn interior_count(&self, face: usize) -> usize {
        self.interior_counts[face]
    }

    /// `l(face)`: lattice points on the closed face.
    pub fn face_point_count(&self, face: usize) -> usize {
        let facets = &self.faces.faces[face].facets;
        self.carrier
            .iter()
            .filter(|&&c| facets.is_subset(&self.faces.faces[c].facets))
            .count()
    }

    pub fn interior_points(&self, face: usize) -> Vec<&IntVector> {
        self.points
            .iter()
            .zip(&self.carrier)
            .filter(|(_, &c)| c == face)
            .map(|(p, _)| p)
            .collect()
    }

    /// Interior lattice points of the whole polytope.
    pub fn interior_lattice_points(&self) -> Vec<&IntVector> {
        let top = self
            .faces
            .faces
            .iter()
            .position(|f| f.dim == self.dim())
            .expect("top face");
        self.interior_points(top)
    }

    pub fn point_index(&self, p: &[Int]) -> Option<usize> {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).ok()
    }
}

/// A reflexive pair with matching indices: facet `j` of `delta` is vertex
/// `j` of `delta_star` and vertex `i` of `delta` is facet `i` of `delta_star`.
#[derive(Debug, Clone)]
pub struct PolytopePair {
    pub delta: LatticePolytope,
    pub delta_star: LatticePolytope,
    /// Face of `delta_star` dual to each face of `delta`.
    pub dual_face: Vec<usize>,
}

impl PolytopePair {
    pub fn new(delta: LatticePolytope, delta_star: LatticePolytope) -> Result<Self> {
        if delta.polytope.dual() != delta_star.polytope {
            return Err(Error::Inconsistent("polytopes are not polar duals".into()));
        }
        let n = delta.dim();
        let mut dual_face = Vec::with_capacity(delta.faces.faces.len());
        for f in &delta.faces.faces {
            let g = delta_star.faces.by_vertex_set(&f.facets);
            let g = match g {
                Some(g) => g,
                None if f.dim == n => usize::MAX,
                None => {
                    return Err(Error::Inconsistent(format!(
                        "face with facets {:?} has no dual face",
                        f.facet_indices()
                    )))
                }
            };
            if g != usize::MAX && f.dim + delta_star.faces.faces[g].dim != n - 1 {
                return Err(Error::Inconsistent(
                    "dual face dimensions do not add up".into(),
                ));
            }
            dual_face.push(g);
        }
        Ok(Self {
            delta,
            delta_star,
            dual_face,
        })
    }

    /// Face of `delta` dual to a proper face of `delta_star`.
    pub fn dual_of_star_face(&self, star_face: usize) -> usize {
        let f = &self.delta_star.faces.faces[star_face];
        self.delta
            .faces
            .by_vertex_set(&f.facets)
            .expect("proper face has a dual")
    }

    /// The same pair with the roles of the two polytopes exchanged.
    pub fn mirror(&self) -> Result<Self> {
        Self::new(self.delta_star.clone(), self.delta.clone())
    }

    /// `(Δ*)* = Δ`, recomputed from the vertices of the dual.
    pub fn check_biduality(&self) -> Result<()> {
        let star_vertices = self.delta_star.vertices();
        let again = Polytope::from_points(&star_vertices)?;
        let mut a = again.dual().lattice_vertices().unwrap_or_default();
        let mut b = self.delta.vertices();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::Inconsistent("biduality failed".into()));
        }
        Ok(())
    }
}

/// Distinct face dimensions counted, a cheap invariant for symmetry checks.
pub fn dimension_histogram(faces: &FaceLattice) -> HashMap<usize, usize> {
    let mut h = HashMap::new();
    for f in &faces.faces {
        *h.entry(f.dim).or_insert(0) += 1;
    }
    h
}
