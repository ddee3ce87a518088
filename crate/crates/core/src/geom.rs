//! Internal geometry engine over exact rational coordinates.
//!
//! Polytopes are held in vertex representation. Facets are enumerated by
//! brute force over `dim`-subsets of the points: at the scale this crate
//! targets (dimension <= ~6, at most a few hundred candidate points) the
//! combinatorial loop is cheap, exact, and has no degenerate special
//! cases. Everything downstream (edges, slices) is derived from the
//! facet structure.

use crate::linalg::{integerize_rows, IntegerMatrix, LatticeVector, Rat};
use itertools::Itertools;

use std::collections::BTreeMap;
use std::sync::OnceLock;

pub(crate) type QPoint = Vec<Rat>;

/// A supporting halfspace `<x, normal> >= min_value` with its tight
/// vertex set.
#[derive(Clone, Debug)]
pub(crate) struct QFacet {
    pub normal: LatticeVector,
    pub min_value: Rat,
    pub tight: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct QPolytope {
    ambient: usize,
    vertices: Vec<QPoint>,
    derived: OnceLock<Derived>,
}

#[derive(Clone, Debug)]
struct Derived {
    facets: Vec<QFacet>,
    edges: Vec<(usize, usize)>,
}

pub(crate) enum HullError {
    Empty,
    Degenerate { rank: usize },
}

impl QPolytope {
    /// Builds from points already known to be extreme (deduplicated and
    /// sorted internally).
    pub fn from_extreme(ambient: usize, mut points: Vec<QPoint>) -> Self {
        points.sort();
        points.dedup();
        Self {
            ambient,
            vertices: points,
            derived: OnceLock::new(),
        }
    }

    /// Convex hull of an arbitrary point set; fails when the points do
    /// not span the ambient dimension.
    pub fn hull(ambient: usize, mut points: Vec<QPoint>) -> Result<Self, HullError> {
        points.sort();
        points.dedup();
        if points.is_empty() {
            return Err(HullError::Empty);
        }
        let rank = affine_rank(&points);
        if rank != ambient {
            return Err(HullError::Degenerate { rank });
        }
        let facets = enumerate_facets(ambient, &points);
        let vertices: Vec<QPoint> = points
            .iter()
            .enumerate()
            .filter(|(i, _)| tight_normal_rank(&facets, *i) == ambient)
            .map(|(_, p)| p.clone())
            .collect();
        Ok(Self::from_extreme(ambient, vertices))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[QPoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[QFacet] {
        &self.derived().facets
    }

    /// Vertex index pairs forming 1-dimensional faces.
    pub fn edge_pairs(&self) -> &[(usize, usize)] {
        &self.derived().edges
    }

    fn derived(&self) -> &Derived {
        self.derived.get_or_init(|| {
            let facets = enumerate_facets(self.ambient, &self.vertices);
            let edges = enumerate_edges(self.ambient, self.vertices.len(), &facets);
            Derived { facets, edges }
        })
    }

    /// Evaluation range of an integer functional over the polytope.
    pub fn range(&self, u: &LatticeVector) -> (Rat, Rat) {
        let mut vals = self.vertices.iter().map(|v| u.dot_rat(v));
        let first = vals.next().expect("polytope has vertices");
        let mut lo = first.clone();
        let mut hi = first;
        for v in vals {
            if v < lo {
                lo = v.clone();
            }
            if v > hi {
                hi = v;
            }
        }
        (lo, hi)
    }

    /// Vertex set of the section `P ∩ {<x, u> = level}`.
    ///
    /// Vertices of the section are exactly the vertices of `P` on the
    /// hyperplane plus the transversal edge crossings.
    pub fn section(&self, u: &LatticeVector, level: &Rat) -> Vec<QPoint> {
        let values: Vec<Rat> = self.vertices.iter().map(|v| u.dot_rat(v)).collect();
        let mut out: Vec<QPoint> = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if &values[i] == level {
                out.push(v.clone());
            }
        }
        for &(i, j) in self.edge_pairs() {
            let (a, b) = (&values[i], &values[j]);
            let crossing = (a < level && b > level) || (a > level && b < level);
            if crossing {
                let t = (level - a) / (b - a);
                let point: QPoint = self.vertices[i]
                    .iter()
                    .zip(&self.vertices[j])
                    .map(|(x, y)| x + &t * (y - x))
                    .collect();
                out.push(point);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Dimension of the affine hull of a point set.
pub(crate) fn affine_rank(points: &[QPoint]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    integerize_rows(&diffs).rank()
}

fn enumerate_facets(ambient: usize, points: &[QPoint]) -> Vec<QFacet> {
    let mut found: BTreeMap<(LatticeVector, Rat), ()> = BTreeMap::new();
    for subset in (0..points.len()).combinations(ambient) {
        let base = &points[subset[0]];
        let diffs: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let kernel = integerize_rows_with_cols(&diffs, ambient).kernel_basis();
        if kernel.len() != 1 {
            continue; // subset does not span a hyperplane
        }
        let normal = &kernel[0];
        let level = normal.dot_rat(base);
        let mut lo = level.clone();
        let mut hi = level.clone();
        for p in points {
            let v = normal.dot_rat(p);
            if v < lo {
                lo = v.clone();
            }
            if v > hi {
                hi = v;
            }
        }
        if lo == hi {
            continue; // all points on the hyperplane; input not full-dim
        }
        if lo == level {
            found.insert((normal.clone(), level), ());
        } else if hi == level {
            found.insert((normal.neg(), -level), ());
        }
    }
    found
        .into_keys()
        .map(|(normal, min_value)| {
            let tight = points
                .iter()
                .enumerate()
                .filter(|(_, p)| normal.dot_rat(p) == min_value)
                .map(|(i, _)| i)
                .collect();
            QFacet {
                normal,
                min_value,
                tight,
            }
        })
        .collect()
}

/// Like `integerize_rows` but keeps the column count when there are no
/// rows (ambient dimension 1 has empty difference sets).
fn integerize_rows_with_cols(rows: &[Vec<Rat>], cols: usize) -> IntegerMatrix {
    if rows.is_empty() {
        return IntegerMatrix::zeros(0, cols);
    }
    integerize_rows(rows)
}

fn tight_normal_rank(facets: &[QFacet], vertex: usize) -> usize {
    let normals: Vec<LatticeVector> = facets
        .iter()
        .filter(|f| f.tight.contains(&vertex))
        .map(|f| f.normal.clone())
        .collect();
    if normals.is_empty() {
        return 0;
    }
    IntegerMatrix::from_rows(&normals).rank()
}

fn enumerate_edges(ambient: usize, nvertices: usize, facets: &[QFacet]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..nvertices {
        for j in (i + 1)..nvertices {
            let normals: Vec<LatticeVector> = facets
                .iter()
                .filter(|f| f.tight.contains(&i) && f.tight.contains(&j))
                .map(|f| f.normal.clone())
                .collect();
            let rank = if normals.is_empty() {
                0
            } else {
                IntegerMatrix::from_rows(&normals).rank()
            };
            if rank == ambient - 1 {
                edges.push((i, j));
            }
        }
    }
    edges
}
