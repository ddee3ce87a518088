//! Lattice polytopes: vertices, facets, edges, lattice points,
//! smoothness, vertex charts and halfspace cuts.
//!
//! A [`LatticePolytope`] is always full-dimensional in its ambient
//! lattice and stores its vertices in lexicographic order; every derived
//! list (facets, edges, lattice points) is emitted in a deterministic
//! order so that outputs are reproducible byte for byte.

use crate::error::Error;
use crate::geom::{HullError, QPoint, QPolytope};
use crate::linalg::{int, Int, IntegerMatrix, LatticeVector, Rat};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::sync::OnceLock;

/// A facet inequality `<x, normal> >= -offset` with `normal` primitive
/// and inner-pointing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: LatticeVector,
    pub offset: Int,
    /// Indices of the vertices lying on the facet.
    pub tight: Vec<usize>,
}

impl Facet {
    /// Value of the defining functional at a point, shifted so the facet
    /// itself is at zero (nonnegative on the polytope).
    pub fn slack(&self, point: &LatticeVector) -> Int {
        self.normal.dot(point) + &self.offset
    }
}

/// A 1-dimensional face. `endpoints` are vertex indices with the first
/// lexicographically smaller; `direction` is primitive and
/// `vertices[endpoints.1] - vertices[endpoints.0] = lattice_length * direction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub endpoints: (usize, usize),
    pub direction: LatticeVector,
    pub lattice_length: u64,
}

/// Coordinates of a polytope local to one of its smooth vertices: a
/// unimodular map sends the vertex to the origin and the primitive edge
/// directions to the standard basis.
#[derive(Clone, Debug)]
pub struct VertexChart {
    pub vertex: usize,
    pub map: IntegerMatrix,
    /// Images of all lattice points of the polytope, sorted.
    pub points: Vec<LatticeVector>,
}

#[derive(Clone, Debug)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<LatticeVector>,
    qp: QPolytope,
    facets: OnceLock<Vec<Facet>>,
    edges: OnceLock<Vec<Edge>>,
    points: OnceLock<Vec<LatticeVector>>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl LatticePolytope {
    /// Builds a polytope from its vertex list, validating that the
    /// vertices are distinct extreme points spanning the full dimension.
    pub fn new(vertices: Vec<LatticeVector>) -> Result<Self, Error> {
        let p = Self::hull(vertices.clone())?;
        // Every input point must have survived as a vertex.
        for (index, v) in vertices.iter().enumerate() {
            if p.vertex_index(v).is_none() {
                return Err(Error::NotExtreme {
                    index,
                    vertex: v.to_string(),
                });
            }
        }
        Ok(p)
    }

    /// Convex hull: non-extreme points are silently dropped.
    pub fn hull(points: Vec<LatticeVector>) -> Result<Self, Error> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyVertices);
        };
        let dim = first.dim();
        if dim == 0 {
            return Err(Error::DegenerateInput { dim: 0, rank: 0 });
        }
        for v in &points {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
        }
        let rational: Vec<QPoint> = points.iter().map(|v| v.to_rat()).collect();
        let qp = QPolytope::hull(dim, rational).map_err(|e| match e {
            HullError::Empty => Error::EmptyVertices,
            HullError::Degenerate { rank } => Error::DegenerateInput { dim, rank },
        })?;
        let vertices: Vec<LatticeVector> = qp
            .vertices()
            .iter()
            .map(|p| {
                LatticeVector::new(
                    p.iter()
                        .map(|c| {
                            debug_assert!(c.is_integer());
                            c.to_integer()
                        })
                        .collect(),
                )
            })
            .collect();
        Ok(Self {
            dim,
            vertices,
            qp,
            facets: OnceLock::new(),
            edges: OnceLock::new(),
            points: OnceLock::new(),
        })
    }

    pub fn from_i64_vertices(vertices: &[&[i64]]) -> Result<Self, Error> {
        Self::new(vertices.iter().map(|v| LatticeVector::from_i64(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &LatticeVector {
        &self.vertices[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, v: &LatticeVector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Facets sorted by (normal, offset).
    pub fn facets(&self) -> &[Facet] {
        self.facets.get_or_init(|| {
            self.qp
                .facets()
                .iter()
                .map(|f| {
                    debug_assert!(f.min_value.is_integer());
                    Facet {
                        normal: f.normal.clone(),
                        offset: -f.min_value.to_integer(),
                        tight: f.tight.clone(),
                    }
                })
                .collect()
        })
    }

    /// Edges sorted by endpoint indices.
    pub fn edges(&self) -> &[Edge] {
        self.edges.get_or_init(|| {
            self.qp
                .edge_pairs()
                .iter()
                .map(|&(i, j)| {
                    let diff = self.vertices[j].sub(&self.vertices[i]);
                    let (g, direction) = diff.primitive();
                    Edge {
                        endpoints: (i, j),
                        direction,
                        lattice_length: g.to_u64().expect("edge length fits in u64"),
                    }
                })
                .collect()
        })
    }

    pub fn edges_at(&self, vertex: usize) -> impl Iterator<Item = &Edge> {
        self.edges()
            .iter()
            .filter(move |e| e.endpoints.0 == vertex || e.endpoints.1 == vertex)
    }

    /// Primitive directions of the edges leaving `vertex`, sorted.
    pub fn edge_directions_at(&self, vertex: usize) -> Vec<LatticeVector> {
        let mut dirs: Vec<LatticeVector> = self
            .edges_at(vertex)
            .map(|e| {
                if e.endpoints.0 == vertex {
                    e.direction.clone()
                } else {
                    e.direction.neg()
                }
            })
            .collect();
        dirs.sort();
        dirs
    }

    /// All lattice points of the polytope in lexicographic order,
    /// enumerated by a bounding-box scan filtered through the facet
    /// inequalities.
    pub fn lattice_points(&self) -> &[LatticeVector] {
        self.points.get_or_init(|| {
            let (lo, hi) = self.bounding_box();
            let facets = self.facets();
            let mut out = Vec::new();
            let mut current = vec![Int::zero(); self.dim];
            scan_box(&lo, &hi, 0, &mut current, &mut |p| {
                let v = LatticeVector::new(p.to_vec());
                if facets.iter().all(|f| !f.slack(&v).is_negative()) {
                    out.push(v);
                }
            });
            out
        })
    }

    pub fn lattice_point_count(&self) -> usize {
        self.lattice_points().len()
    }

    /// Componentwise vertex minima and maxima.
    pub fn bounding_box(&self) -> (Vec<Int>, Vec<Int>) {
        let mut lo = self.vertices[0].coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for (i, c) in v.coords().iter().enumerate() {
                if c < &lo[i] {
                    lo[i] = c.clone();
                }
                if c > &hi[i] {
                    hi[i] = c.clone();
                }
            }
        }
        (lo, hi)
    }

    pub fn contains(&self, point: &LatticeVector) -> bool {
        self.facets().iter().all(|f| !f.slack(point).is_negative())
    }

    /// Checks that the primitive edge directions at every vertex form a
    /// lattice basis, returning the first failing vertex otherwise.
    pub fn smoothness(&self) -> Result<(), Error> {
        for v in 0..self.vertices.len() {
            self.chart_map(v)?;
        }
        Ok(())
    }

    pub fn is_smooth(&self) -> bool {
        self.smoothness().is_ok()
    }

    /// Minimum edge lattice length.
    pub fn min_edge_length(&self) -> u64 {
        self.edges()
            .iter()
            .map(|e| e.lattice_length)
            .min()
            .expect("full-dimensional polytope has edges")
    }

    /// Maximum edge lattice length.
    pub fn max_edge_length(&self) -> u64 {
        self.edges()
            .iter()
            .map(|e| e.lattice_length)
            .max()
            .expect("full-dimensional polytope has edges")
    }

    fn chart_map(&self, vertex: usize) -> Result<IntegerMatrix, Error> {
        let dirs = self.edge_directions_at(vertex);
        if dirs.len() != self.dim {
            return Err(Error::not_smooth(
                vertex,
                format!("{} incident edges, expected {}", dirs.len(), self.dim),
            ));
        }
        let columns = IntegerMatrix::from_rows(&dirs).transpose();
        match columns.inverse_unimodular() {
            Some(map) => Ok(map),
            None => Err(Error::not_smooth(
                vertex,
                format!("edge directions have determinant {}", columns.det()),
            )),
        }
    }

    /// The unimodular chart at a smooth vertex: the vertex goes to the
    /// origin and the primitive edge directions to the standard basis.
    /// All lattice points are carried along.
    pub fn vertex_chart(&self, vertex: usize) -> Result<VertexChart, Error> {
        let map = self.chart_map(vertex)?;
        let base = &self.vertices[vertex];
        let mut points: Vec<LatticeVector> = self
            .lattice_points()
            .iter()
            .map(|m| map.mul_vector(&m.sub(base)))
            .collect();
        points.sort();
        Ok(VertexChart {
            vertex,
            map,
            points,
        })
    }

    /// Intersection with the halfspace `<x, normal> >= level`.
    ///
    /// Fails with [`Error::EmptyChop`] when the intersection is empty or
    /// not full-dimensional, and with [`Error::NonLatticeChop`] when the
    /// cut crosses an edge away from a lattice point.
    pub fn chop(&self, normal: &LatticeVector, level: &Int) -> Result<Self, Error> {
        let values: Vec<Int> = self.vertices.iter().map(|v| normal.dot(v)).collect();
        let mut points: Vec<LatticeVector> = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if &values[i] >= level {
                points.push(v.clone());
            }
        }
        for e in self.edges() {
            let (i, j) = e.endpoints;
            let (a, b) = (&values[i], &values[j]);
            let crossing = (a < level && b > level) || (a > level && b < level);
            if !crossing {
                continue;
            }
            let t = Rat::new(level - a, b - a);
            let cut: Vec<Rat> = self.vertices[i]
                .coords()
                .iter()
                .zip(self.vertices[j].coords())
                .map(|(x, y)| {
                    Rat::from_integer(x.clone()) + &t * Rat::from_integer(y - x)
                })
                .collect();
            if cut.iter().any(|c| !c.is_integer()) {
                let display: Vec<String> = cut.iter().map(|c| c.to_string()).collect();
                return Err(Error::NonLatticeChop {
                    point: format!("({})", display.join(", ")),
                });
            }
            points.push(LatticeVector::new(cut.iter().map(|c| c.to_integer()).collect()));
        }
        if points.is_empty() {
            return Err(Error::EmptyChop);
        }
        Self::hull(points).map_err(|e| match e {
            Error::DegenerateInput { .. } | Error::EmptyVertices => Error::EmptyChop,
            other => other,
        })
    }

    /// The polytope `(1/k)(P - v0)` with `v0` the lexicographically
    /// smallest vertex; every edge length must be divisible by `k`.
    pub fn shrink(&self, k: u64) -> Result<Self, Error> {
        assert!(k > 0, "shrink factor must be positive");
        let kk = int(k as i64);
        let base = self.vertices[0].clone();
        let mut scaled = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let d = v.sub(&base);
            if d.coords().iter().any(|c| !(c % &kk).is_zero()) {
                return Err(Error::NotDivisible {
                    vertex: v.to_string(),
                    k,
                });
            }
            scaled.push(LatticeVector::new(d.coords().iter().map(|c| c / &kk).collect()));
        }
        Ok(Self::new(scaled).expect("scaled copy of a polytope is a polytope"))
    }

    /// Dilation by a positive integer factor.
    pub fn dilate(&self, k: u64) -> Self {
        let kk = int(k as i64);
        let vertices = self.vertices.iter().map(|v| v.scale(&kk)).collect();
        Self::new(vertices).expect("dilated copy of a polytope is a polytope")
    }

    pub fn translate(&self, shift: &LatticeVector) -> Self {
        let vertices = self.vertices.iter().map(|v| v.add(shift)).collect();
        Self::new(vertices).expect("translate preserves polytopes")
    }

    /// Image under the affine map `x -> map * x + shift` with `map`
    /// unimodular.
    pub fn apply_unimodular(&self, map: &IntegerMatrix, shift: &LatticeVector) -> Self {
        assert!(map.det().abs().is_one(), "map must be unimodular");
        let vertices = self
            .vertices
            .iter()
            .map(|v| map.mul_vector(v).add(shift))
            .collect();
        Self::new(vertices).expect("unimodular image of a polytope is a polytope")
    }

    /// Evaluation range of an integer functional over the polytope.
    pub fn range(&self, u: &LatticeVector) -> (Int, Int) {
        let mut vals = self.vertices.iter().map(|v| u.dot(v));
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

    /// Width of the polytope along an integer functional.
    pub fn width(&self, u: &LatticeVector) -> Int {
        let (lo, hi) = self.range(u);
        hi - lo
    }

    pub(crate) fn rational(&self) -> &QPolytope {
        &self.qp
    }
}

fn scan_box(
    lo: &[Int],
    hi: &[Int],
    axis: usize,
    current: &mut Vec<Int>,
    visit: &mut impl FnMut(&[Int]),
) {
    if axis == lo.len() {
        visit(current);
        return;
    }
    let mut c = lo[axis].clone();
    while c <= hi[axis] {
        current[axis] = c.clone();
        scan_box(lo, hi, axis + 1, current, visit);
        c += 1;
    }
}
