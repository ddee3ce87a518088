//! Deterministic polytope generators for the test corpus and the CLI.

use crate::cayley::{self, EmbeddedPolytope};
use crate::error::Error;
use crate::linalg::{int, Int, IntegerMatrix, LatticeVector};
use crate::polytope::LatticePolytope;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A generator invocation; the same spec always yields the same
/// polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusSpec {
    /// The dilated standard simplex `k·Δ_n`.
    Simplex { dim: usize, dilation: u64 },
    /// A product of intervals `[0, s_i]`.
    Box { sides: Vec<u64> },
    /// The generalized cross-polytope `conv{ -c_i^- e_i, c_i^+ e_i }`,
    /// given per axis as `(negative, positive)` extents.
    CrossPolytope { radii: Vec<(u64, u64)> },
    /// The hexagon of the degree-6 del Pezzo surface: the blow-up of the
    /// projective plane in the three fixpoints of a cubic polarization.
    DelPezzo6,
    /// A random smooth Cayley polytope `[a·B * b·B + t]^order` over a
    /// stock smooth base `B` of dimension `dim - 1`, with `a`, `b` and
    /// `t` multiples of `order` so the construction stays smooth.
    RandomSmoothCayley { dim: usize, order: u64, seed: u64 },
}

pub fn generate(spec: &CorpusSpec) -> Result<LatticePolytope, Error> {
    match spec {
        CorpusSpec::Simplex { dim, dilation } => simplex(*dim, *dilation),
        CorpusSpec::Box { sides } => cuboid(sides),
        CorpusSpec::CrossPolytope { radii } => cross_polytope(radii),
        CorpusSpec::DelPezzo6 => del_pezzo_hexagon(),
        CorpusSpec::RandomSmoothCayley { dim, order, seed } => {
            random_smooth_cayley(*dim, *order, *seed)
        }
    }
}

pub fn simplex(dim: usize, dilation: u64) -> Result<LatticePolytope, Error> {
    if dim == 0 || dilation == 0 {
        return Err(Error::InvalidParams(
            "simplex needs positive dimension and dilation".into(),
        ));
    }
    let mut vertices = vec![LatticeVector::zeros(dim)];
    for i in 0..dim {
        vertices.push(LatticeVector::unit(dim, i).scale(&int(dilation as i64)));
    }
    LatticePolytope::new(vertices)
}

pub fn cuboid(sides: &[u64]) -> Result<LatticePolytope, Error> {
    if sides.is_empty() || sides.iter().any(|&s| s == 0) {
        return Err(Error::InvalidParams("box needs positive side lengths".into()));
    }
    let dim = sides.len();
    let mut vertices = Vec::with_capacity(1 << dim);
    for mask in 0..(1u64 << dim) {
        let coords: Vec<Int> = (0..dim)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    int(sides[i] as i64)
                } else {
                    Int::zero()
                }
            })
            .collect();
        vertices.push(LatticeVector::new(coords));
    }
    LatticePolytope::new(vertices)
}

pub fn cross_polytope(radii: &[(u64, u64)]) -> Result<LatticePolytope, Error> {
    if radii.is_empty() || radii.iter().any(|&(a, b)| a == 0 || b == 0) {
        return Err(Error::InvalidParams(
            "cross-polytope needs positive extents".into(),
        ));
    }
    let dim = radii.len();
    let mut vertices = Vec::with_capacity(2 * dim);
    for (i, &(neg, pos)) in radii.iter().enumerate() {
        vertices.push(LatticeVector::unit(dim, i).scale(&int(-(neg as i64))));
        vertices.push(LatticeVector::unit(dim, i).scale(&int(pos as i64)));
    }
    LatticePolytope::new(vertices)
}

pub fn del_pezzo_hexagon() -> Result<LatticePolytope, Error> {
    LatticePolytope::from_i64_vertices(&[&[0, 0], &[1, 0], &[2, 1], &[2, 2], &[1, 2], &[0, 1]])
}

/// Stock of small smooth bases by dimension, used by the random Cayley
/// generator.
pub fn smooth_base_stock(dim: usize) -> Vec<LatticePolytope> {
    let lp = |vs: &[&[i64]]| LatticePolytope::from_i64_vertices(vs).unwrap();
    match dim {
        1 => vec![lp(&[&[0], &[1]])],
        2 => vec![
            lp(&[&[0, 0], &[1, 0], &[0, 1]]),
            lp(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]),
            del_pezzo_hexagon().unwrap(),
        ],
        3 => vec![
            lp(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            lp(&[
                &[0, 0, 0],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[1, 1, 0],
                &[1, 0, 1],
                &[0, 1, 1],
                &[1, 1, 1],
            ]),
            // prism over the unit triangle
            lp(&[
                &[0, 0, 0],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[1, 0, 1],
                &[0, 1, 1],
            ]),
        ],
        _ => vec![],
    }
}

fn max_abs_coord(p: &LatticePolytope) -> u64 {
    p.vertices()
        .iter()
        .filter_map(|v| v.max_abs())
        .max()
        .unwrap_or(1)
        .max(1)
}

pub fn random_smooth_cayley(dim: usize, order: u64, seed: u64) -> Result<LatticePolytope, Error> {
    if !(2..=4).contains(&dim) || order == 0 {
        return Err(Error::InvalidParams(
            "random Cayley generator supports dimensions 2-4 and positive order".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (dim as u64) << 8 ^ order << 16);
    let stock = smooth_base_stock(dim - 1);
    let base = &stock[rng.gen_range(0..stock.len())];
    let mc = max_abs_coord(base);
    // Keep slice coordinates at most 6: order * alpha * mc <= 6.
    let alpha_max = (6 / (order * mc)).max(1);
    let a = order * rng.gen_range(1..=alpha_max);
    let b = order * rng.gen_range(1..=alpha_max);
    let slack = 6u64.saturating_sub(b * mc) / order;
    let shift = LatticeVector::new(
        (0..dim - 1)
            .map(|_| int((order * rng.gen_range(0..=slack.min(2))) as i64))
            .collect(),
    );
    let bottom = EmbeddedPolytope::from_polytope(&base.dilate(a));
    let top = EmbeddedPolytope::from_polytope(&base.dilate(b).translate(&shift));
    let p = cayley::construct(&[bottom, top], order)?;
    debug_assert!(p.is_smooth(), "dilate-pair Cayley construction is smooth");
    debug_assert!(p.min_edge_length() >= order);
    Ok(p)
}

/// The named polytopes every test suite runs over: simplices, boxes,
/// cross-polytopes, hexagon variants, chopped polytopes and Cayley
/// constructions, spanning dimensions 1 through 4. Smooth and
/// non-smooth members are mixed deliberately; callers filter by
/// `is_smooth` where smoothness is required.
pub fn standard_corpus() -> Vec<(String, LatticePolytope)> {
    let lv = LatticeVector::from_i64;
    let lp = |vs: &[&[i64]]| LatticePolytope::from_i64_vertices(vs).unwrap();
    let seg = |a: i64, b: i64| EmbeddedPolytope::new(1, vec![lv(&[a]), lv(&[b])]);
    let mut out: Vec<(String, LatticePolytope)> = Vec::new();

    for dim in 1..=4usize {
        for k in 1..=3u64 {
            out.push((
                format!("simplex_d{dim}_k{k}"),
                simplex(dim, k).unwrap(),
            ));
        }
    }

    out.push(("box_2x3".into(), cuboid(&[2, 3]).unwrap()));
    out.push(("box_2x5".into(), cuboid(&[2, 5]).unwrap()));
    out.push(("box_2x3x4".into(), cuboid(&[2, 3, 4]).unwrap()));
    out.push(("cube_d3".into(), cuboid(&[1, 1, 1]).unwrap()));
    out.push(("cube_d4".into(), cuboid(&[1, 1, 1, 1]).unwrap()));

    out.push(("cross_d2".into(), cross_polytope(&[(1, 2), (2, 2)]).unwrap()));
    out.push((
        "cross_d3".into(),
        cross_polytope(&[(1, 1), (2, 2), (2, 1)]).unwrap(),
    ));

    let hexagon = del_pezzo_hexagon().unwrap();
    out.push(("delpezzo6".into(), hexagon.clone()));
    out.push(("delpezzo6_x2".into(), hexagon.dilate(2)));
    out.push((
        "delpezzo6_x2_chop".into(),
        hexagon.dilate(2).chop(&lv(&[1, 0]), &int(1)).unwrap(),
    ));
    out.push((
        "pentagon".into(),
        cuboid(&[2, 2]).unwrap().chop(&lv(&[1, 1]), &int(1)).unwrap(),
    ));
    out.push((
        "trunc_simplex".into(),
        simplex(2, 3).unwrap().chop(&lv(&[1, 1]), &int(1)).unwrap(),
    ));

    out.push((
        "prism".into(),
        cayley::construct(&[seg(0, 1), seg(0, 1), seg(0, 1)], 1).unwrap(),
    ));
    let unit_square = EmbeddedPolytope::from_polytope(&lp(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
    let flat_seg = EmbeddedPolytope::new(2, vec![lv(&[0, 0]), lv(&[1, 0])]);
    out.push((
        "cay_square_seg".into(),
        cayley::construct(&[unit_square, flat_seg], 1).unwrap(),
    ));
    let sq2 = lp(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
    out.push((
        "cay_squares_s2".into(),
        cayley::construct(
            &[
                EmbeddedPolytope::from_polytope(&sq2),
                EmbeddedPolytope::from_polytope(&sq2.translate(&lv(&[2, 0]))),
            ],
            2,
        )
        .unwrap(),
    ));
    out.push((
        "cay_hex_pt".into(),
        cayley::construct(
            &[
                EmbeddedPolytope::from_polytope(&hexagon),
                EmbeddedPolytope::point(lv(&[1, 1])),
            ],
            2,
        )
        .unwrap(),
    ));
    let simplex3_x2 = EmbeddedPolytope::from_polytope(&simplex(3, 2).unwrap());
    out.push((
        "cay_d4".into(),
        cayley::construct(&[simplex3_x2.clone(), simplex3_x2], 2).unwrap(),
    ));

    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// A random unimodular matrix with small entries, built from shears,
/// swaps and sign flips.
pub fn random_unimodular(dim: usize, rng: &mut impl Rng) -> IntegerMatrix {
    loop {
        let mut m = IntegerMatrix::identity(dim);
        let steps = dim + 2;
        for _ in 0..steps {
            match rng.gen_range(0..4) {
                0 | 1 => {
                    // row shear: row_i += sign * row_j
                    let i = rng.gen_range(0..dim);
                    let mut j = rng.gen_range(0..dim);
                    if dim > 1 {
                        while j == i {
                            j = rng.gen_range(0..dim);
                        }
                    }
                    if i == j {
                        continue;
                    }
                    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                    for c in 0..dim {
                        let v = m.get(i, c) + int(sign) * m.get(j, c);
                        m.set(i, c, v);
                    }
                }
                2 => {
                    let i = rng.gen_range(0..dim);
                    let j = rng.gen_range(0..dim);
                    if i != j {
                        for c in 0..dim {
                            let a = m.get(i, c).clone();
                            let b = m.get(j, c).clone();
                            m.set(i, c, b);
                            m.set(j, c, a);
                        }
                    }
                }
                _ => {
                    let i = rng.gen_range(0..dim);
                    for c in 0..dim {
                        let v = -m.get(i, c).clone();
                        m.set(i, c, v);
                    }
                }
            }
        }
        debug_assert!(m.det().abs().is_one());
        let small = (0..dim).all(|r| m.row(r).iter().all(|e| e.abs() <= int(3)));
        if small {
            return m;
        }
    }
}

/// Sup-operator norm of the transpose, used to inflate direction-search
/// bounds so that searches commute with unimodular maps.
pub fn transpose_norm(m: &IntegerMatrix) -> u64 {
    use num_traits::ToPrimitive;
    (0..m.cols())
        .map(|c| {
            (0..m.rows())
                .map(|r| m.get(r, c).abs())
                .sum::<Int>()
                .to_u64()
                .expect("small matrix")
        })
        .max()
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let spec = CorpusSpec::RandomSmoothCayley {
            dim: 3,
            order: 2,
            seed: 5,
        };
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
    }

    #[test]
    fn simplex_generator_matches_manual_construction() {
        let p = generate(&CorpusSpec::Simplex { dim: 2, dilation: 3 }).unwrap();
        assert_eq!(
            p,
            LatticePolytope::from_i64_vertices(&[&[0, 0], &[3, 0], &[0, 3]]).unwrap()
        );
    }

    #[test]
    fn del_pezzo_hexagon_properties() {
        let p = generate(&CorpusSpec::DelPezzo6).unwrap();
        assert_eq!(p.lattice_point_count(), 7);
        assert!(p.is_smooth());
        assert!(p.edges().iter().all(|e| e.lattice_length == 1));
    }

    #[test]
    fn random_cayley_generator_yields_smooth_cayley_polytopes() {
        for seed in 0..5 {
            for dim in 2..=4 {
                for order in 1..=2 {
                    let p = random_smooth_cayley(dim, order, seed).unwrap();
                    assert_eq!(p.dim(), dim);
                    assert!(p.is_smooth(), "dim {dim} order {order} seed {seed}");
                    assert!(p.min_edge_length() >= order);
                }
            }
        }
    }

    #[test]
    fn cross_polytope_generator() {
        let p = generate(&CorpusSpec::CrossPolytope {
            radii: vec![(1, 1), (2, 2)],
        })
        .unwrap();
        assert_eq!(p.vertex_count(), 4);
    }

    #[test]
    fn random_unimodular_is_unimodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            for dim in 1..=4 {
                let m = random_unimodular(dim, &mut rng);
                assert!(m.det().abs().is_one());
            }
        }
    }
}
