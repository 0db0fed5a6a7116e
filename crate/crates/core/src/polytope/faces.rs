//! Face lattices from vertex-facet incidences.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::Polytope;
use crate::exact::{rank_of_rows, IntVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    pub vertices: FixedBitSet,
    pub facets: FixedBitSet,
}

impl Face {
    pub fn vertex_indices(&self) -> Vec<usize> {
        self.vertices.ones().collect()
    }

    pub fn facet_indices(&self) -> Vec<usize> {
        self.facets.ones().collect()
    }
}

/// All nonempty faces, the polytope itself included, sorted by dimension
/// descending and then by vertex set.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub dim: usize,
    pub faces: Vec<Face>,
    by_facets: HashMap<FixedBitSet, usize>,
    by_vertices: HashMap<FixedBitSet, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<usize>);

impl FaceLattice {
    pub fn new(poly: &Polytope) -> Self {
        let nv = poly.vertices().len();
        let nf = poly.facets().len();
        let on_facet: Vec<FixedBitSet> = (0..nf)
            .map(|j| {
                let mut s = FixedBitSet::with_capacity(nv);
                for v in 0..nv {
                    if poly.vertex_on_facet(v, j) {
                        s.insert(v);
                    }
                }
                s
            })
            .collect();
        let facets_of = |verts: &FixedBitSet| {
            let mut f = FixedBitSet::with_capacity(nf);
            for (j, facet) in on_facet.iter().enumerate() {
                if verts.is_subset(facet) {
                    f.insert(j);
                }
            }
            f
        };
        let vertices_of = |facets: &FixedBitSet| {
            let mut v = FixedBitSet::with_capacity(nv);
            v.insert_range(..);
            for j in facets.ones() {
                v.intersect_with(&on_facet[j]);
            }
            v
        };

        let mut all = FixedBitSet::with_capacity(nv);
        all.insert_range(..);
        let top = (all.clone(), FixedBitSet::with_capacity(nf));
        let mut seen: HashMap<FixedBitSet, FixedBitSet> = HashMap::new();
        seen.insert(top.1.clone(), top.0.clone());
        let mut frontier = vec![top];
        while let Some((verts, facets)) = frontier.pop() {
            for (j, facet) in on_facet.iter().enumerate() {
                if facets.contains(j) {
                    continue;
                }
                let mut s = verts.clone();
                s.intersect_with(facet);
                if s.is_clear() {
                    continue;
                }
                let f = facets_of(&s);
                if seen.contains_key(&f) {
                    continue;
                }
                let v = vertices_of(&f);
                seen.insert(f.clone(), v.clone());
                frontier.push((v, f));
            }
        }

        let homogeneous: Vec<IntVector> = poly
            .vertices()
            .iter()
            .map(|(num, den)| {
                let mut h = num.clone();
                h.push(den.clone());
                h
            })
            .collect();
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|(facets, vertices)| {
                let rows: Vec<IntVector> =
                    vertices.ones().map(|v| homogeneous[v].clone()).collect();
                Face {
                    dim: rank_of_rows(&rows) - 1,
                    vertices,
                    facets,
                }
            })
            .collect();
        faces.sort_by(|a, b| {
            b.dim
                .cmp(&a.dim)
                .then_with(|| a.vertex_indices().cmp(&b.vertex_indices()))
        });
        let by_facets = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.facets.clone(), i))
            .collect();
        let by_vertices = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();
        Self {
            dim: poly.dim(),
            faces,
            by_facets,
            by_vertices,
        }
    }

    pub fn by_facet_set(&self, facets: &FixedBitSet) -> Option<usize> {
        self.by_facets.get(facets).copied()
    }

    pub fn by_vertex_set(&self, vertices: &FixedBitSet) -> Option<usize> {
        self.by_vertices.get(vertices).copied()
    }

    pub fn codim(&self, face: usize) -> usize {
        self.dim - self.faces[face].dim
    }

    /// Face counts in dimensions `0..dim`, the polytope itself excluded.
    pub fn f_vector(&self) -> FVector {
        let mut f = vec![0; self.dim];
        for face in &self.faces {
            if face.dim < self.dim {
                f[face.dim] += 1;
            }
        }
        FVector(f)
    }

    /// `sum (-1)^k f_k` over proper faces equals `1 - (-1)^dim`.
    pub fn satisfies_euler_relation(&self) -> bool {
        let s: i64 = self
            .f_vector()
            .0
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum();
        s == 1 - if self.dim.is_multiple_of(2) { 1 } else { -1 }
    }
}
