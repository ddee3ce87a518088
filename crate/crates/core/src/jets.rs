//! Jet matrices and jet-spannedness orders.
//!
//! For a polarized toric variety with polytope `P`, the sections of the
//! line bundle are the monomials `x^m` with `m` a lattice point of `P`.
//! The matrix of `k`-jets collects all partial derivatives of order at
//! most `k` of these monomials; its rank at a point measures the
//! dimension of the osculating space there. Three evaluation points
//! matter computationally:
//!
//! - the all-ones point, which realises the rank at a general point
//!   (fitting ideals of a monomial matrix are monomial, so generic rank
//!   equals the rank at `(1, ..., 1)`),
//! - torus fixpoints, i.e. vertices, where the matrix is diagonal in
//!   chart coordinates and the order is the minimum incident edge
//!   length,
//! - explicit rational points of the dense torus, used as an
//!   independent numeric cross-check.

use crate::error::Error;
use crate::linalg::{int, integerize_rows, Int, IntegerMatrix, LatticeVector, Rat};
use crate::polytope::{LatticePolytope, VertexChart};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt;

/// A derivative multi-index `(a_1, ..., a_n)` of total order `|a|`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    exponents: Vec<u64>,
}

impl MultiIndex {
    pub fn new(exponents: Vec<u64>) -> Self {
        Self { exponents }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn order(&self) -> u64 {
        self.exponents.iter().sum()
    }

    /// `prod_i a_i!`, the value of `d^a x^a` at the origin.
    pub fn factorial(&self) -> Int {
        let mut out = Int::one();
        for &e in &self.exponents {
            for j in 2..=e {
                out *= int(j as i64);
            }
        }
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.exponents
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// All multi-indices in `n` variables of total order exactly `order`,
/// lexicographically ascending.
pub fn multi_indices_of_order(n: usize, order: u64) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u64; n];
    fill_compositions(n, order, 0, &mut current, &mut out);
    out
}

fn fill_compositions(
    n: usize,
    remaining: u64,
    axis: usize,
    current: &mut Vec<u64>,
    out: &mut Vec<MultiIndex>,
) {
    if axis + 1 == n {
        current[axis] = remaining;
        out.push(MultiIndex::new(current.clone()));
        return;
    }
    for v in 0..=remaining {
        current[axis] = v;
        fill_compositions(n, remaining - v, axis + 1, current, out);
    }
}

/// All multi-indices of total order at most `k`, graded lexicographic.
pub fn multi_indices(n: usize, k: u64) -> Vec<MultiIndex> {
    (0..=k).flat_map(|o| multi_indices_of_order(n, o)).collect()
}

/// `C(n + k, k)`, the number of multi-indices of order at most `k`.
pub fn monomial_count(n: usize, k: u64) -> usize {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..=n as u128 {
        num *= k as u128 + i;
        den *= i;
    }
    (num / den) as usize
}

/// Where the jet matrix is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalMode {
    /// The point `(1, ..., 1)`; realises the generic rank.
    AllOnes,
    /// A torus fixpoint, given by its vertex index.
    Fixpoint(usize),
    /// An explicit point of the dense torus with nonzero rational
    /// coordinates. Rows are rescaled to integers, which preserves rank.
    RationalPoint(Vec<Rat>),
}

/// The matrix of `k`-jets: rows are derivative multi-indices of order at
/// most `k`, columns are the lattice points of the polytope.
#[derive(Clone, Debug)]
pub struct JetMatrix {
    pub k: u64,
    pub row_index: Vec<MultiIndex>,
    pub col_index: Vec<LatticeVector>,
    pub entries: IntegerMatrix,
    pub eval_mode: EvalMode,
}

impl JetMatrix {
    pub fn rank(&self) -> usize {
        self.entries.rank()
    }

    /// Whether the osculating space has full dimension, i.e. the rank
    /// equals the number of rows.
    pub fn has_full_rank(&self) -> bool {
        self.rank() == self.row_index.len()
    }
}

/// Falling factorial `m (m-1) ... (m-a+1)`, the coefficient produced by
/// differentiating `x^m` exactly `a` times.
fn falling_factorial(m: &Int, a: u64) -> Int {
    let mut out = Int::one();
    for j in 0..a {
        out *= m - int(j as i64);
        if out.is_zero() {
            break;
        }
    }
    out
}

fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e >= 0 {
        Rat::new(x.numer().pow(e as u32), x.denom().pow(e as u32))
    } else {
        let e = (-e) as u32;
        Rat::new(x.denom().pow(e), x.numer().pow(e))
    }
}

/// Builds the matrix of `k`-jets of the polytope in the given
/// evaluation mode.
pub fn jet_matrix(p: &LatticePolytope, k: u64, mode: EvalMode) -> Result<JetMatrix, Error> {
    let n = p.dim();
    let rows = multi_indices(n, k);
    match mode {
        EvalMode::AllOnes => {
            let cols = p.lattice_points().to_vec();
            let entries = IntegerMatrix::from_fn(rows.len(), cols.len(), |r, c| {
                rows[r]
                    .exponents()
                    .iter()
                    .zip(cols[c].coords())
                    .map(|(&a, m)| falling_factorial(m, a))
                    .product()
            });
            Ok(JetMatrix {
                k,
                row_index: rows,
                col_index: cols,
                entries,
                eval_mode: EvalMode::AllOnes,
            })
        }
        EvalMode::Fixpoint(vertex) => {
            let chart = p.vertex_chart(vertex)?;
            let cols = chart.points.clone();
            let entries = IntegerMatrix::from_fn(rows.len(), cols.len(), |r, c| {
                let same = rows[r]
                    .exponents()
                    .iter()
                    .zip(cols[c].coords())
                    .all(|(&a, m)| m == &int(a as i64));
                if same {
                    rows[r].factorial()
                } else {
                    Int::zero()
                }
            });
            Ok(JetMatrix {
                k,
                row_index: rows,
                col_index: cols,
                entries,
                eval_mode: EvalMode::Fixpoint(vertex),
            })
        }
        EvalMode::RationalPoint(point) => {
            assert_eq!(point.len(), n, "evaluation point dimension mismatch");
            assert!(
                point.iter().all(|x| !x.is_zero()),
                "evaluation point must lie in the dense torus"
            );
            let cols = p.lattice_points().to_vec();
            let mut rational_rows: Vec<Vec<Rat>> = Vec::with_capacity(rows.len());
            for a in &rows {
                let mut row = Vec::with_capacity(cols.len());
                for m in &cols {
                    let coeff: Int = a
                        .exponents()
                        .iter()
                        .zip(m.coords())
                        .map(|(&ai, mi)| falling_factorial(mi, ai))
                        .product();
                    if coeff.is_zero() {
                        row.push(Rat::zero());
                        continue;
                    }
                    let mut value = Rat::from_integer(coeff);
                    for ((&ai, mi), xi) in a.exponents().iter().zip(m.coords()).zip(&point) {
                        let e = mi.to_i64().expect("exponent fits in i64") - ai as i64;
                        value *= rat_pow(xi, e);
                    }
                    row.push(value);
                }
                rational_rows.push(row);
            }
            Ok(JetMatrix {
                k,
                row_index: rows,
                col_index: cols,
                entries: integerize_rows(&rational_rows),
                eval_mode: EvalMode::RationalPoint(point),
            })
        }
    }
}

/// Monomial evaluation matrix: rows are lattice points `m`, columns the
/// monomials `x^a` with `|a| <= k`, entries `m^a` (with `0^0 = 1`).
///
/// Its column rank equals the rank of the all-ones jet matrix (the two
/// differ by a unimodular triangular change of the monomial basis), and
/// its kernel consists of the polynomials of degree at most `k`
/// vanishing on the point set.
pub fn power_matrix(points: &[LatticeVector], n: usize, k: u64) -> (IntegerMatrix, Vec<MultiIndex>) {
    let monomials = multi_indices(n, k);
    let m = IntegerMatrix::from_fn(points.len(), monomials.len(), |r, c| {
        monomials[c]
            .exponents()
            .iter()
            .zip(points[r].coords())
            .map(|(&a, x)| x.pow(a as u32))
            .product()
    });
    (m, monomials)
}

/// A polynomial of bounded degree vanishing on all lattice points of a
/// polytope, as a primitive coefficient vector over the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingPolynomial {
    pub monomials: Vec<MultiIndex>,
    pub coefficients: Vec<Int>,
}

impl VanishingPolynomial {
    pub fn degree(&self) -> u64 {
        self.monomials
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, _)| m.order())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, point: &LatticeVector) -> Int {
        self.monomials
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| {
                let pow: Int = a
                    .exponents()
                    .iter()
                    .zip(point.coords())
                    .map(|(&e, x)| x.pow(e as u32))
                    .product();
                c * pow
            })
            .sum()
    }
}

impl fmt::Display for VanishingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, c) in self.monomials.iter().zip(&self.coefficients) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*x^{a}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Finds a nonzero polynomial of degree at most `k` vanishing on all
/// lattice points of the polytope, if one exists.
pub fn vanishing_polynomial(p: &LatticePolytope, k: u64) -> Option<VanishingPolynomial> {
    let (matrix, monomials) = power_matrix(p.lattice_points(), p.dim(), k);
    let kernel = matrix.kernel_basis();
    kernel.first().map(|v| VanishingPolynomial {
        monomials,
        coefficients: v.coords().to_vec(),
    })
}

/// Jet order at a torus fixpoint: the minimum lattice length over the
/// edges through the corresponding vertex.
///
/// Requires the polytope to be smooth at the vertex. In debug builds the
/// value is cross-checked against the chart criterion: it must be the
/// largest `k` such that every multi-index of order at most `k` occurs
/// among the chart points.
pub fn fixpoint_order(p: &LatticePolytope, vertex: usize) -> Result<u64, Error> {
    let chart = p.vertex_chart(vertex)?;
    let min_edge = p
        .edges_at(vertex)
        .map(|e| e.lattice_length)
        .min()
        .expect("vertex has incident edges");
    debug_assert_eq!(
        min_edge,
        chart_order(&chart, p.dim()),
        "edge-length and chart criteria disagree at vertex {vertex}"
    );
    Ok(min_edge)
}

/// Largest `k` with every multi-index of order `<= k` among the chart
/// points.
pub fn chart_order(chart: &VertexChart, n: usize) -> u64 {
    let points: BTreeSet<Vec<u64>> = chart
        .points
        .iter()
        .filter_map(|p| {
            p.coords()
                .iter()
                .map(|c| c.to_u64())
                .collect::<Option<Vec<u64>>>()
        })
        .collect();
    let mut k = 0u64;
    loop {
        let next = k + 1;
        let all_present = multi_indices_of_order(n, next)
            .iter()
            .all(|a| points.contains(a.exponents()));
        if !all_present {
            return k;
        }
        k = next;
    }
}

/// Jet order at a general point, bounded by `k_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenericOrder {
    Exactly(u64),
    /// Full rank held at `k_max` and the count bound could not resolve
    /// the next order.
    AtLeast(u64),
}

impl GenericOrder {
    pub fn exact(&self) -> Option<u64> {
        match self {
            GenericOrder::Exactly(k) => Some(*k),
            GenericOrder::AtLeast(_) => None,
        }
    }

    /// The certified lower bound carried by either variant.
    pub fn lower(&self) -> u64 {
        match self {
            GenericOrder::Exactly(k) | GenericOrder::AtLeast(k) => *k,
        }
    }
}

impl fmt::Display for GenericOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenericOrder::Exactly(k) => write!(f, "{k}"),
            GenericOrder::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

/// Largest `k <= k_max` such that the polytope is `k`-jet spanned at a
/// general point, i.e. no nonzero polynomial of degree `<= k` vanishes
/// on the lattice points.
///
/// When `C(n+k+1, k+1)` exceeds the number of lattice points the next
/// order is deficient without any rank computation, so the result is
/// exact in that case even at the `k_max` boundary.
pub fn generic_order(p: &LatticePolytope, k_max: u64) -> GenericOrder {
    let n = p.dim();
    let npoints = p.lattice_point_count();
    let mut k = 0u64;
    loop {
        let next = k + 1;
        if monomial_count(n, next) > npoints {
            return GenericOrder::Exactly(k);
        }
        if next > k_max {
            return GenericOrder::AtLeast(k_max);
        }
        let (matrix, monomials) = power_matrix(p.lattice_points(), n, next);
        if matrix.rank() < monomials.len() {
            return GenericOrder::Exactly(k);
        }
        k = next;
    }
}

/// Jet orders of a smooth polytope at every fixpoint and at the general
/// point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetReport {
    /// Jet order at the fixpoint of each vertex, indexed like
    /// `LatticePolytope::vertices`.
    pub per_fixpoint: Vec<u64>,
    pub generic: GenericOrder,
    /// Set exactly when all fixpoint orders and the generic order agree.
    pub constant: Option<u64>,
}

impl JetReport {
    pub fn constant_order(&self) -> Option<u64> {
        self.constant
    }
}

/// Computes the full jet report of a smooth polytope.
///
/// `k_max` bounds the generic-order search; the default is one more than
/// the longest edge length, which is always enough to decide whether the
/// jet order is constant.
pub fn jet_report(p: &LatticePolytope, k_max: Option<u64>) -> Result<JetReport, Error> {
    p.smoothness()?;
    let per_fixpoint: Vec<u64> = (0..p.vertex_count())
        .map(|v| fixpoint_order(p, v))
        .collect::<Result<_, _>>()?;
    let cap = k_max.unwrap_or_else(|| p.max_edge_length() + 1);
    let generic = generic_order(p, cap);
    let all_equal = per_fixpoint.windows(2).all(|w| w[0] == w[1]);
    let constant = match (all_equal, per_fixpoint.first(), generic.exact()) {
        (true, Some(&k), Some(g)) if g == k => Some(k),
        _ => None,
    };
    Ok(JetReport {
        per_fixpoint,
        generic,
        constant,
    })
}

/// Maximum rank of the honest jet matrix over `samples` seeded random
/// points of the dense torus with small positive rational coordinates
/// (denominators at most 7).
pub fn max_rank_at_random_points(p: &LatticePolytope, k: u64, samples: u32, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..samples {
        let point: Vec<Rat> = (0..p.dim())
            .map(|_| Rat::new(int(rng.gen_range(1..=9)), int(rng.gen_range(1..=7))))
            .collect();
        let m = jet_matrix(p, k, EvalMode::RationalPoint(point)).expect("torus point");
        best = best.max(m.rank());
    }
    best
}
