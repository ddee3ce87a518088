//! Exact integer and rational linear algebra.
//!
//! Everything in this crate runs over arbitrary-precision integers
//! ([`Int`]) or rationals ([`Rat`]); there is no floating point anywhere.
//! Rank and kernel computations use fraction-free (Bareiss-style)
//! elimination so intermediate values stay integral, and lattice-level
//! questions (kernel *lattice* bases, basis completion) go through a
//! column Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;
/// Arbitrary-precision rational used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Shorthand for building an [`Int`] from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for building a [`Rat`] from a machine integer.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(int(v))
}

/// A point or direction in the integer lattice `Z^n`.
///
/// Ordering is lexicographic on the coordinates, which is the tie-break
/// order used for every deterministic choice in this crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<Int>,
}

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        Self { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Int::zero(); dim])
    }

    /// Standard basis vector `e_i` in dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[i] = Int::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Int {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &Self) -> Int {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Dot product against rational coordinates.
    pub fn dot_rat(&self, other: &[Rat]) -> Rat {
        debug_assert_eq!(self.dim(), other.len());
        self.coords
            .iter()
            .zip(other)
            .map(|(a, b)| Rat::from_integer(a.clone()) * b)
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &Int) -> Self {
        Self::new(self.coords.iter().map(|a| a * s).collect())
    }

    /// Greatest common divisor of the absolute coordinate values.
    ///
    /// Zero exactly when the vector is zero.
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for c in &self.coords {
            g = g.gcd(c);
        }
        g
    }

    /// Splits the vector as `g * p` with `g >= 0` and `p` primitive.
    ///
    /// For the zero vector this returns `(0, v)`; otherwise `p` keeps the
    /// direction of `v` and has coprime coordinates.
    pub fn primitive(&self) -> (Int, LatticeVector) {
        let g = self.content();
        if g.is_zero() {
            return (g, self.clone());
        }
        let p = Self::new(self.coords.iter().map(|c| c / &g).collect());
        (g, p)
    }

    /// Flips the sign so the first nonzero coordinate is positive.
    ///
    /// The zero vector is returned unchanged.
    pub fn orient_first_positive(&self) -> Self {
        for c in &self.coords {
            if c.is_positive() {
                return self.clone();
            }
            if c.is_negative() {
                return self.neg();
            }
        }
        self.clone()
    }

    /// Maximum absolute coordinate, as a machine integer if it fits.
    pub fn max_abs(&self) -> Option<u64> {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Int::zero)
            .to_u64()
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.coords
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect()
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// True when the vectors form a basis of the integer lattice: there are
/// exactly `dim` of them and their determinant is `±1`.
pub fn is_lattice_basis(vs: &[LatticeVector]) -> bool {
    if vs.is_empty() {
        return false;
    }
    let d = vs[0].dim();
    if vs.len() != d || vs.iter().any(|v| v.dim() != d) {
        return false;
    }
    IntegerMatrix::from_rows(vs).det().abs().is_one()
}

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: &[LatticeVector]) -> Self {
        let cols = rows.first().map_or(0, |r| r.dim());
        assert!(rows.iter().all(|r| r.dim() == cols));
        Self {
            rows: rows.len(),
            cols,
            entries: rows.iter().flat_map(|r| r.coords().to_vec()).collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self {
            rows: rows.len(),
            cols,
            entries: rows.iter().flat_map(|r| r.iter().map(|&v| int(v))).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vector(&self, r: usize) -> LatticeVector {
        LatticeVector::new(self.row(r).to_vec())
    }

    pub fn column_vector(&self, c: usize) -> LatticeVector {
        LatticeVector::new((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vector(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.dim());
        LatticeVector::new(
            (0..self.rows)
                .map(|r| {
                    self.row(r)
                        .iter()
                        .zip(v.coords())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        )
    }

    pub fn mul_matrix(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).map(|k| self.get(r, k) * other.get(k, c)).sum()
        })
    }

    /// Rank over the rationals, computed by fraction-free elimination.
    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Determinant of a square matrix (fraction-free elimination).
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        if self.rows == 0 {
            return Int::one();
        }
        let ech = self.echelon();
        if ech.pivots.len() < self.rows {
            return Int::zero();
        }
        // In Bareiss elimination the final pivot is the determinant of the
        // full leading minor, up to the row-swap sign.
        let (r, c) = ech.pivots[self.rows - 1];
        let d = ech.mat[r][c].clone();
        if ech.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// A basis of the rational null space `{v : self * v = 0}`.
    ///
    /// Each vector is cleared to a primitive integer vector whose first
    /// nonzero entry is positive; the basis is sorted lexicographically.
    pub fn kernel_basis(&self) -> Vec<LatticeVector> {
        let ech = self.echelon();
        let pivot_col: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_col {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut x = vec![Rat::zero(); self.cols];
            x[free] = Rat::one();
            // Back-substitute the pivot variables, bottom row first.
            for &(r, c) in ech.pivots.iter().rev() {
                let mut acc = Rat::zero();
                for j in (c + 1)..self.cols {
                    if !ech.mat[r][j].is_zero() && !x[j].is_zero() {
                        acc += Rat::from_integer(ech.mat[r][j].clone()) * &x[j];
                    }
                }
                x[c] = -acc / Rat::from_integer(ech.mat[r][c].clone());
            }
            basis.push(clear_denominators(&x).orient_first_positive());
        }
        basis.sort();
        basis
    }

    fn echelon(&self) -> Echelon {
        let mut mat: Vec<Vec<Int>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut swaps = 0usize;
        let mut prev = Int::one();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !mat[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                mat.swap(p, r);
                swaps += 1;
            }
            for i in (r + 1)..self.rows {
                // Bareiss step: exact division by the previous pivot keeps
                // entries integral and of modest size.
                for j in (c + 1)..self.cols {
                    let num = &mat[r][c] * &mat[i][j] - &mat[i][c] * &mat[r][j];
                    debug_assert!((&num % &prev).is_zero());
                    mat[i][j] = num / &prev;
                }
                mat[i][c] = Int::zero();
            }
            prev = mat[r][c].clone();
            pivots.push((r, c));
            r += 1;
        }
        Echelon { mat, pivots, swaps }
    }

    /// Column Hermite form: returns `(h, u)` with `self * u = h`, `u`
    /// unimodular and `h` in column echelon form with positive pivots.
    pub fn column_hermite(&self) -> (IntegerMatrix, IntegerMatrix) {
        let mut h = self.clone();
        let mut u = IntegerMatrix::identity(self.cols);
        let mut c = 0usize;
        for r in 0..self.rows {
            if c >= self.cols {
                break;
            }
            // Move a nonzero entry into the pivot column.
            if h.get(r, c).is_zero() {
                if let Some(j) = ((c + 1)..self.cols).find(|&j| !h.get(r, j).is_zero()) {
                    h.swap_columns(c, j);
                    u.swap_columns(c, j);
                } else {
                    continue;
                }
            }
            // Fold every later column into the pivot by extended gcd.
            for j in (c + 1)..self.cols {
                if h.get(r, j).is_zero() {
                    continue;
                }
                let a = h.get(r, c).clone();
                let b = h.get(r, j).clone();
                let ext = a.extended_gcd(&b);
                let (g, x, y) = (ext.gcd, ext.x, ext.y);
                let ac = &a / &g;
                let bc = &b / &g;
                // (col_c, col_j) <- (x*col_c + y*col_j, -bc*col_c + ac*col_j)
                h.combine_columns(c, j, &x, &y, &(-&bc), &ac);
                u.combine_columns(c, j, &x, &y, &(-&bc), &ac);
            }
            if h.get(r, c).is_negative() {
                h.negate_column(c);
                u.negate_column(c);
            }
            if !h.get(r, c).is_zero() {
                c += 1;
            }
        }
        (h, u)
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_column(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// Simultaneous column update
    /// `(col_a, col_b) <- (p*col_a + q*col_b, r*col_a + s*col_b)`.
    fn combine_columns(&mut self, a: usize, b: usize, p: &Int, q: &Int, r: &Int, s: &Int) {
        for row in 0..self.rows {
            let va = self.get(row, a).clone();
            let vb = self.get(row, b).clone();
            self.set(row, a, p * &va + q * &vb);
            self.set(row, b, r * &va + s * &vb);
        }
    }

    /// A basis of the kernel *lattice* `{v in Z^n : self * v = 0}`.
    ///
    /// Unlike [`kernel_basis`](Self::kernel_basis), the returned vectors
    /// generate the full saturated kernel lattice, not merely a
    /// finite-index sublattice.
    pub fn kernel_lattice_basis(&self) -> Vec<LatticeVector> {
        let (h, u) = self.column_hermite();
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if (0..self.rows).all(|r| h.get(r, j).is_zero()) {
                basis.push(u.column_vector(j));
            }
        }
        basis
    }

    /// Whether the matrix maps `Z^n` onto `Z^rows` (all elementary
    /// divisors equal 1).
    pub fn is_surjective_lattice_map(&self) -> bool {
        let (h, _) = self.column_hermite();
        (0..self.rows).all(|r| r < self.cols && h.get(r, r).is_one())
    }

    /// For a surjective lattice map `A: Z^n -> Z^r`, returns `(b, fiber)`
    /// where `b` is unimodular with `A * b = [I | 0]` and `fiber` holds the
    /// last `n - r` rows of `b^{-1}`, i.e. coordinates on the kernel
    /// lattice completing `A` to an isomorphism `Z^n -> Z^r x Z^{n-r}`.
    pub fn lattice_section(&self) -> Option<(IntegerMatrix, IntegerMatrix)> {
        let r = self.rows;
        let n = self.cols;
        let (h, u) = self.column_hermite();
        if !(0..r).all(|i| i < n && h.get(i, i).is_one()) {
            return None;
        }
        // h = [t | 0] with t lower triangular, unit diagonal.
        let t = IntegerMatrix::from_fn(r, r, |i, j| h.get(i, j).clone());
        let t_inv = t.inverse_unimodular().expect("unit triangular inverse");
        // b = u * diag(t^{-1}, I)  satisfies  self * b = [I | 0].
        let mut block = IntegerMatrix::identity(n);
        for i in 0..r {
            for j in 0..r {
                block.set(i, j, t_inv.get(i, j).clone());
            }
        }
        let b = u.mul_matrix(&block);
        let b_inv = b.inverse_unimodular().expect("unimodular inverse");
        let fiber = IntegerMatrix::from_fn(n - r, n, |i, j| b_inv.get(r + i, j).clone());
        Some((b, fiber))
    }

    /// A particular rational solution of `self * x = b`, or `None` when
    /// the system is inconsistent. Free variables are set to zero.
    pub fn solve_rational(&self, b: &LatticeVector) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.dim(), "dimension mismatch");
        let aug = IntegerMatrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b.coord(r).clone()
            }
        });
        let ech = aug.echelon();
        if ech.pivots.iter().any(|&(_, c)| c == self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for &(r, c) in ech.pivots.iter().rev() {
            let mut acc = Rat::from_integer(ech.mat[r][self.cols].clone());
            for j in (c + 1)..self.cols {
                if !ech.mat[r][j].is_zero() && !x[j].is_zero() {
                    acc -= Rat::from_integer(ech.mat[r][j].clone()) * &x[j];
                }
            }
            x[c] = acc / Rat::from_integer(ech.mat[r][c].clone());
        }
        Some(x)
    }

    /// Matrix action on rational coordinates.
    pub fn mul_rat_vector(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| Rat::from_integer(a.clone()) * b)
                    .sum()
            })
            .collect()
    }

    /// Inverse of a square matrix with determinant `±1`, via the adjugate.
    pub fn inverse_unimodular(&self) -> Option<IntegerMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let d = self.det();
        if !d.abs().is_one() {
            return None;
        }
        let mut inv = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                // Cofactor expansion: inv[i][j] = (-1)^{i+j} minor(j, i) / det.
                let minor = self.minor(j, i).det();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                inv.set(i, j, minor * int(sign) / &d);
            }
        }
        Some(inv)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntegerMatrix {
        IntegerMatrix::from_fn(self.rows - 1, self.cols - 1, |r, c| {
            let rr = if r < skip_row { r } else { r + 1 };
            let cc = if c < skip_col { c } else { c + 1 };
            self.get(rr, cc).clone()
        })
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row(r)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        Ok(())
    }
}

struct Echelon {
    mat: Vec<Vec<Int>>,
    pivots: Vec<(usize, usize)>,
    swaps: usize,
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction.
pub fn clear_denominators(v: &[Rat]) -> LatticeVector {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let (_, p) = LatticeVector::new(ints).primitive();
    p
}

/// All primitive integer vectors of sup-norm at most `bound`, oriented
/// with the first nonzero coordinate positive, sorted lexicographically.
/// Opposite directions are identified, so exactly one representative of
/// each line appears.
pub fn primitive_box_directions(dim: usize, bound: u64) -> Vec<LatticeVector> {
    let b = bound as i64;
    let mut out: Vec<LatticeVector> = Vec::new();
    let mut coords = vec![0i64; dim];
    fn rec(axis: usize, b: i64, coords: &mut Vec<i64>, out: &mut Vec<LatticeVector>) {
        if axis == coords.len() {
            let v = LatticeVector::from_i64(coords);
            let (g, prim) = v.primitive();
            if g.is_one() && prim == v {
                out.push(v);
            }
            return;
        }
        // A canonical representative starts with zeros followed by a
        // positive coordinate.
        let start = if coords[..axis].iter().all(|&c| c == 0) {
            0
        } else {
            -b
        };
        for v in start..=b {
            coords[axis] = v;
            rec(axis + 1, b, coords, out);
        }
    }
    rec(0, b, &mut coords, &mut out);
    out.sort();
    out
}

/// Scales each row of a rational matrix to integers (rank-preserving).
pub fn integerize_rows(rows: &[Vec<Rat>]) -> IntegerMatrix {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut out = IntegerMatrix::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        let mut lcm = Int::one();
        for x in row {
            lcm = lcm.lcm(x.denom());
        }
        for (j, x) in row.iter().enumerate() {
            out.set(i, j, x.numer() * (&lcm / x.denom()));
        }
    }
    out
}
