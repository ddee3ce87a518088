//! Cayley decompositions `[P_0 * ... * P_r]^s` and strictness.
//!
//! A polytope is Cayley of order `s` and length `r + 1` when some
//! surjective lattice projection onto `Z^r` maps it onto the dilated
//! standard simplex `s·Δ_r` with every vertex landing on a simplex
//! vertex. The fibers over the simplex vertices are the slices `P_i`;
//! the decomposition is *strict* when the slices all have the same
//! normal fan.
//!
//! Detection enumerates candidate dual directions (facet normals, their
//! pairwise differences, and an exhaustive sup-norm box) and keeps those
//! along which the polytope has width exactly `s` with all vertices at
//! the two extreme levels. Every returned witness is verified exactly,
//! so false positives are impossible; a too-small search box can only
//! cause a miss, and the bound in use is recorded on the options.

use crate::error::Error;
use crate::linalg::{int, Int, IntegerMatrix, LatticeVector};
use crate::polytope::LatticePolytope;
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;

/// A polytope given by its vertex list inside an ambient lattice, allowed
/// to be lower-dimensional. Cayley slices live in the fiber lattice of
/// the detected projection and are frequently not full-dimensional
/// there (single points, segments inside a plane, ...).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedPolytope {
    ambient: usize,
    vertices: Vec<LatticeVector>,
}

impl EmbeddedPolytope {
    pub fn new(ambient: usize, mut vertices: Vec<LatticeVector>) -> Self {
        vertices.sort();
        vertices.dedup();
        debug_assert!(vertices.iter().all(|v| v.dim() == ambient));
        Self { ambient, vertices }
    }

    pub fn from_polytope(p: &LatticePolytope) -> Self {
        Self::new(p.dim(), p.vertices().to_vec())
    }

    pub fn point(coords: LatticeVector) -> Self {
        let ambient = coords.dim();
        Self::new(ambient, vec![coords])
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    /// Affine dimension of the vertex set.
    pub fn dim(&self) -> usize {
        if self.vertices.len() <= 1 {
            return 0;
        }
        let base = &self.vertices[0];
        let diffs: Vec<LatticeVector> =
            self.vertices[1..].iter().map(|v| v.sub(base)).collect();
        IntegerMatrix::from_rows(&diffs).rank()
    }
}

impl fmt::Display for EmbeddedPolytope {
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

/// How strictness treats slices of unequal dimension.
///
/// Normal equivalence is only defined for polytopes with the same normal
/// fan, which forces equal dimensions; decompositions such as
/// `[kΔ_{n-1} * point]^k` mix dimensions. `EqualDim` (the default)
/// reports such decompositions as not strict, flagging the mismatch;
/// `Project` ignores point slices and compares the rest, so a
/// decomposition over a point base counts as strict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StrictMode {
    #[default]
    EqualDim,
    Project,
}

/// Outcome of a strictness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    NotStrict { reason: String },
    /// Slices have different dimensions; by the `EqualDim` convention
    /// this counts as not strict.
    SliceDimensionMismatch { dims: Vec<usize> },
}

impl Strictness {
    pub fn is_strict(&self) -> bool {
        matches!(self, Strictness::Strict)
    }

    pub fn is_dimension_mismatch(&self) -> bool {
        matches!(self, Strictness::SliceDimensionMismatch { .. })
    }
}

impl fmt::Display for Strictness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strictness::Strict => write!(f, "strict"),
            Strictness::NotStrict { reason } => write!(f, "not strict ({reason})"),
            Strictness::SliceDimensionMismatch { dims } => {
                write!(f, "slice dimension mismatch {dims:?}")
            }
        }
    }
}

/// A verified Cayley structure `P ≅ [P_0 * ... * P_r]^s`.
#[derive(Clone, Debug)]
pub struct CayleyDecomposition {
    /// The order `s`.
    pub order: u64,
    /// Surjective projection `Z^n -> Z^r`; the image of the polytope is
    /// `s·Δ_r` up to translation.
    pub projection: IntegerMatrix,
    /// For each vertex, the index of the simplex corner it maps to
    /// (`0` for the origin corner, `j` for `s·e_j`).
    pub level_map: Vec<usize>,
    /// The fibers over the simplex corners, in fiber-lattice coordinates.
    pub slices: Vec<EmbeddedPolytope>,
    /// Strictness under the mode the decomposition was built with.
    pub strict: bool,
    pub strictness: Strictness,
}

impl CayleyDecomposition {
    /// Number of slices, `r + 1`.
    pub fn length(&self) -> usize {
        self.slices.len()
    }

    /// The witness functional for a length-2 decomposition.
    pub fn altitude(&self) -> Option<LatticeVector> {
        (self.projection.rows() == 1).then(|| self.projection.row_vector(0))
    }
}

/// Search options for Cayley detection.
#[derive(Clone, Debug)]
pub struct DetectOptions {
    /// Sup-norm bound for the exhaustive direction search (facet normals
    /// and their differences are always included).
    pub direction_bound: u64,
    pub strict_mode: StrictMode,
}

impl Default for DetectOptions {
    fn default() -> Self {
        Self {
            direction_bound: 3,
            strict_mode: StrictMode::EqualDim,
        }
    }
}

/// Minimum lattice length over all edges.
pub fn min_edge_length(p: &LatticePolytope) -> u64 {
    p.min_edge_length()
}

/// All primitive directions, canonically oriented, along which the
/// polytope has width exactly `s` and every vertex sits at one of the
/// two extreme levels. Sorted lexicographically.
pub fn witnesses(p: &LatticePolytope, s: u64, direction_bound: u64) -> Vec<LatticeVector> {
    let target = int(s as i64);
    candidate_directions(p, direction_bound)
        .into_iter()
        .filter(|u| {
            let (lo, hi) = p.range(u);
            if &hi - &lo != target {
                return false;
            }
            p.vertices().iter().all(|v| {
                let val = u.dot(v);
                val == lo || val == hi
            })
        })
        .collect()
}

/// Detects a length-2 Cayley structure `P ≅ [P_0 * P_1]^s`, returning the
/// decomposition for the lexicographically smallest witness direction.
pub fn detect(p: &LatticePolytope, s: u64, opts: &DetectOptions) -> Option<CayleyDecomposition> {
    let ws = witnesses(p, s, opts.direction_bound);
    let u = ws.into_iter().next()?;
    Some(build_decomposition(p, &[u], s, opts.strict_mode).expect("verified witness"))
}

/// Detects a general Cayley structure of length `r + 1`: a projection
/// onto `Z^r` assembled from `r` compatible length-2 witnesses whose
/// joint image is `s·Δ_r`. Returns the first hit in lexicographic order
/// of the witness tuples.
pub fn detect_general(
    p: &LatticePolytope,
    s: u64,
    r: usize,
    opts: &DetectOptions,
) -> Option<CayleyDecomposition> {
    if r == 0 || r > p.dim() {
        return None;
    }
    if r == 1 {
        return detect(p, s, opts);
    }
    let ws = witnesses(p, s, opts.direction_bound);
    if ws.len() < r {
        return None;
    }
    combinations_lex(ws.len(), r, &mut |combo| {
        let rows: Vec<LatticeVector> = combo.iter().map(|&i| ws[i].clone()).collect();
        build_decomposition(p, &rows, s, opts.strict_mode)
    })
}

fn combinations_lex<T>(
    n: usize,
    r: usize,
    f: &mut impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    let mut combo: Vec<usize> = (0..r).collect();
    loop {
        if let Some(hit) = f(&combo) {
            return Some(hit);
        }
        // advance to the next r-combination of 0..n in lex order
        let mut i = r;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if combo[i] + (r - i) < n {
                combo[i] += 1;
                for j in (i + 1)..r {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Assembles and verifies a decomposition from projection rows; `None`
/// when the rows do not project the polytope onto `s·Δ_r`.
fn build_decomposition(
    p: &LatticePolytope,
    rows: &[LatticeVector],
    s: u64,
    mode: StrictMode,
) -> Option<CayleyDecomposition> {
    let r = rows.len();
    let n = p.dim();
    let projection = IntegerMatrix::from_rows(rows);
    if !projection.is_surjective_lattice_map() {
        return None;
    }
    let images: Vec<LatticeVector> = p
        .vertices()
        .iter()
        .map(|v| projection.mul_vector(v))
        .collect();
    // The origin corner of the simplex is the coordinatewise minimum.
    let translate = LatticeVector::new(
        (0..r)
            .map(|j| {
                images
                    .iter()
                    .map(|w| w.coord(j).clone())
                    .min()
                    .expect("nonempty")
            })
            .collect(),
    );
    let target = int(s as i64);
    let mut level_map = Vec::with_capacity(images.len());
    let mut seen = vec![false; r + 1];
    for w in &images {
        let shifted = w.sub(&translate);
        let corner = simplex_corner(&shifted, &target)?;
        seen[corner] = true;
        level_map.push(corner);
    }
    if !seen.iter().all(|&b| b) {
        return None;
    }
    let (_, fiber) = projection.lattice_section()?;
    let slices: Vec<EmbeddedPolytope> = (0..=r)
        .map(|corner| {
            let pts: Vec<LatticeVector> = p
                .vertices()
                .iter()
                .zip(&level_map)
                .filter(|(_, &c)| c == corner)
                .map(|(v, _)| fiber.mul_vector(v))
                .collect();
            EmbeddedPolytope::new(n - r, pts)
        })
        .collect();
    let strictness = slice_strictness(&slices, mode);
    Some(CayleyDecomposition {
        order: s,
        projection,
        level_map,
        slices,
        strict: strictness.is_strict(),
        strictness,
    })
}

/// Classifies a translated image point as a corner of `s·Δ_r`.
fn simplex_corner(w: &LatticeVector, s: &Int) -> Option<usize> {
    let mut nonzero = None;
    for (j, c) in w.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c != s || nonzero.is_some() {
            return None;
        }
        nonzero = Some(j + 1);
    }
    Some(nonzero.unwrap_or(0))
}

/// Cayley construction: the convex hull of the slices placed at the
/// corners of `s·Δ_r` in `Z^m x Z^r`.
///
/// The vertex set of the result is exactly the union of the lifted
/// slice vertex sets; listing a non-vertex point in a slice is an error.
pub fn construct(slices: &[EmbeddedPolytope], s: u64) -> Result<LatticePolytope, Error> {
    if slices.len() < 2 {
        return Err(Error::InvalidParams(
            "cayley construction needs at least two slices".into(),
        ));
    }
    if s == 0 {
        return Err(Error::InvalidParams("cayley order must be positive".into()));
    }
    let m = slices[0].ambient();
    let r = slices.len() - 1;
    let mut lifts: Vec<LatticeVector> = Vec::new();
    for (corner, slice) in slices.iter().enumerate() {
        if slice.ambient() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: slice.ambient(),
            });
        }
        for v in slice.vertices() {
            let mut coords = v.coords().to_vec();
            for j in 1..=r {
                coords.push(if corner == j { int(s as i64) } else { Int::zero() });
            }
            lifts.push(LatticeVector::new(coords));
        }
    }
    let p = LatticePolytope::hull(lifts.clone())?;
    for (index, lift) in lifts.iter().enumerate() {
        if p.vertex_index(lift).is_none() {
            return Err(Error::NotExtreme {
                index,
                vertex: lift.to_string(),
            });
        }
    }
    Ok(p)
}

/// Normal equivalence of the slices of a decomposition.
pub fn slice_strictness(slices: &[EmbeddedPolytope], mode: StrictMode) -> Strictness {
    let dims: Vec<usize> = slices.iter().map(|s| s.dim()).collect();
    match mode {
        StrictMode::EqualDim => {
            if dims.windows(2).any(|w| w[0] != w[1]) {
                return Strictness::SliceDimensionMismatch { dims };
            }
            compare_fans(slices, dims[0])
        }
        StrictMode::Project => {
            let kept: Vec<EmbeddedPolytope> = slices
                .iter()
                .filter(|s| s.dim() > 0)
                .cloned()
                .collect();
            if kept.len() <= 1 {
                return Strictness::Strict;
            }
            let kept_dims: Vec<usize> = kept.iter().map(|s| s.dim()).collect();
            if kept_dims.windows(2).any(|w| w[0] != w[1]) {
                return Strictness::SliceDimensionMismatch { dims };
            }
            compare_fans(&kept, kept_dims[0])
        }
    }
}

/// Compares the normal fans of equal-dimensional slices inside their
/// common fiber lattice.
fn compare_fans(slices: &[EmbeddedPolytope], dim: usize) -> Strictness {
    if dim == 0 {
        return Strictness::Strict;
    }
    let ambient = slices[0].ambient();
    let models: Vec<LatticePolytope> = if dim == ambient {
        match slices
            .iter()
            .map(|s| LatticePolytope::new(s.vertices().to_vec()))
            .collect::<Result<Vec<_>, _>>()
        {
            Ok(m) => m,
            Err(e) => {
                return Strictness::NotStrict {
                    reason: format!("slice is not a polytope: {e}"),
                }
            }
        }
    } else {
        // Lower-dimensional slices: all must span the same linear
        // subspace; compare inside a common saturated basis of it.
        let base_diffs = difference_matrix(&slices[0]);
        for s in &slices[1..] {
            let d = difference_matrix(s);
            let mut all_rows: Vec<LatticeVector> = Vec::new();
            for r in 0..base_diffs.rows() {
                all_rows.push(base_diffs.row_vector(r));
            }
            for r in 0..d.rows() {
                all_rows.push(d.row_vector(r));
            }
            if IntegerMatrix::from_rows(&all_rows).rank() != dim {
                return Strictness::NotStrict {
                    reason: "slices span different subspaces of the fiber lattice".into(),
                };
            }
        }
        let normals = base_diffs.kernel_lattice_basis();
        let basis = IntegerMatrix::from_rows(&normals).kernel_lattice_basis();
        debug_assert_eq!(basis.len(), dim);
        let basis_cols = IntegerMatrix::from_rows(&basis).transpose();
        let mut out = Vec::new();
        for s in slices {
            let base = &s.vertices()[0];
            let coords: Vec<LatticeVector> = s
                .vertices()
                .iter()
                .map(|v| {
                    let sol = basis_cols
                        .solve_rational(&v.sub(base))
                        .expect("difference lies in the slice subspace");
                    LatticeVector::new(
                        sol.iter()
                            .map(|c| {
                                debug_assert!(c.is_integer());
                                c.to_integer()
                            })
                            .collect(),
                    )
                })
                .collect();
            match LatticePolytope::new(coords) {
                Ok(p) => out.push(p),
                Err(e) => {
                    return Strictness::NotStrict {
                        reason: format!("slice is not a polytope: {e}"),
                    }
                }
            }
        }
        out
    };
    let reference = fan_signature(&models[0]);
    for m in &models[1..] {
        if fan_signature(m) != reference {
            return Strictness::NotStrict {
                reason: "normal fans differ".into(),
            };
        }
    }
    Strictness::Strict
}

fn difference_matrix(s: &EmbeddedPolytope) -> IntegerMatrix {
    let base = &s.vertices()[0];
    let diffs: Vec<LatticeVector> = s.vertices()[1..].iter().map(|v| v.sub(base)).collect();
    if diffs.is_empty() {
        IntegerMatrix::zeros(0, s.ambient())
    } else {
        IntegerMatrix::from_rows(&diffs)
    }
}

/// The normal fan as comparable data: the facet normal set plus the
/// family of tight-normal sets at the vertices (the generator sets of
/// the maximal cones).
fn fan_signature(p: &LatticePolytope) -> (Vec<LatticeVector>, BTreeSet<Vec<LatticeVector>>) {
    let normals: Vec<LatticeVector> = p.facets().iter().map(|f| f.normal.clone()).collect();
    let mut cones = BTreeSet::new();
    for v in 0..p.vertex_count() {
        let mut tight: Vec<LatticeVector> = p
            .facets()
            .iter()
            .filter(|f| f.tight.contains(&v))
            .map(|f| f.normal.clone())
            .collect();
        tight.sort();
        cones.insert(tight);
    }
    (normals, cones)
}

/// Candidate dual directions: primitive facet normals, primitive
/// differences of facet normals, and the full primitive box of sup-norm
/// at most `bound`, all oriented with the first nonzero coordinate
/// positive.
fn candidate_directions(p: &LatticePolytope, bound: u64) -> Vec<LatticeVector> {
    let mut set: BTreeSet<LatticeVector> = BTreeSet::new();
    let normals: Vec<LatticeVector> = p.facets().iter().map(|f| f.normal.clone()).collect();
    for n in &normals {
        set.insert(n.orient_first_positive());
    }
    for a in &normals {
        for b in &normals {
            let d = a.sub(b);
            if d.is_zero() {
                continue;
            }
            let (_, prim) = d.primitive();
            set.insert(prim.orient_first_positive());
        }
    }
    set.extend(crate::linalg::primitive_box_directions(p.dim(), bound));
    set.into_iter().collect()
}
