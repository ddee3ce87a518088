//! Property-based invariants: structural laws that must hold on random
//! inputs and across the whole corpus, beyond the per-operation examples
//! tested in the unit suites.

mod common;

use common::*;
use jetspan::cayley::{self, DetectOptions, EmbeddedPolytope};
use jetspan::corpus;
use jetspan::jets;
use jetspan::linalg::{int, IntegerMatrix, LatticeVector};
use jetspan::polytope::LatticePolytope;
use jetspan::seshadri::{self, SeshadriOptions, VerifyOptions};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = IntegerMatrix> {
    ((1usize..=4), (1usize..=4)).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(-4i64..=4, rows * cols).prop_map(move |data| {
            IntegerMatrix::from_fn(rows, cols, |r, c| int(data[r * cols + c]))
        })
    })
}

fn small_point_cloud() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (2usize..=3).prop_flat_map(|dim| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=4, dim), dim + 2..=8)
            .prop_map(move |pts| (dim, pts))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_row_count_minus_left_kernel_dimension(m in small_matrix()) {
        let left_kernel = m.transpose().kernel_basis();
        prop_assert_eq!(m.rank(), m.rows() - left_kernel.len());
    }

    #[test]
    fn primitive_decomposition_is_exact_and_idempotent(
        coords in proptest::collection::vec(-20i64..=20, 1..=5)
    ) {
        let v = LatticeVector::from_i64(&coords);
        let (g, p) = v.primitive();
        prop_assert_eq!(p.scale(&g), v.clone());
        if !v.is_zero() {
            let (g2, _) = p.primitive();
            prop_assert!(g2.is_one());
        } else {
            prop_assert!(g.is_zero());
        }
    }

    #[test]
    fn hull_vertices_recover_from_facets(cloud in small_point_cloud()) {
        let (_, pts) = cloud;
        let points: Vec<LatticeVector> = pts.iter().map(|p| LatticeVector::from_i64(p)).collect();
        let Ok(p) = LatticePolytope::hull(points.clone()) else {
            return Ok(()); // degenerate cloud
        };
        // Every input point must satisfy all facet inequalities, and the
        // vertex set must be exactly the points tight on dim independent
        // facets.
        for q in &points {
            prop_assert!(p.contains(q));
        }
        let d = p.dim();
        for q in p.lattice_points() {
            let tight: Vec<LatticeVector> = p
                .facets()
                .iter()
                .filter(|f| f.slack(q).is_zero())
                .map(|f| f.normal.clone())
                .collect();
            let rank = if tight.is_empty() { 0 } else { IntegerMatrix::from_rows(&tight).rank() };
            prop_assert_eq!(rank == d, p.vertex_index(q).is_some());
        }
    }

    #[test]
    fn chop_facets_are_inherited_or_the_cut(cloud in small_point_cloud(), axis in 0usize..3) {
        let (dim, pts) = cloud;
        let axis = axis % dim;
        let points: Vec<LatticeVector> = pts.iter().map(|p| LatticeVector::from_i64(p)).collect();
        let Ok(p) = LatticePolytope::hull(points) else { return Ok(()) };
        let u = LatticeVector::unit(dim, axis);
        let (lo, hi) = p.range(&u);
        let level = lo.clone() + 1;
        if level >= hi {
            return Ok(());
        }
        let Ok(q) = p.chop(&u, &level) else { return Ok(()) };
        for f in q.facets() {
            let inherited = p
                .facets()
                .iter()
                .any(|g| g.normal == f.normal && g.offset == f.offset);
            let is_cut = f.normal == u && f.offset == -level.clone();
            prop_assert!(inherited || is_cut, "facet {:?}", f);
        }
    }
}

#[test]
fn lattice_projection_splits_into_a_basis() {
    // The section together with the kernel basis must form a lattice
    // basis, with the functional evaluating to 1 on the section and to 0
    // on the kernel.
    for dim in 1..=4usize {
        for u in jetspan::linalg::primitive_box_directions(dim, 2).into_iter().step_by(7) {
            let proj = seshadri::LatticeProjection::new(&u).expect("primitive");
            assert!(proj.functional.dot(&proj.section).is_one());
            let mut basis = vec![proj.section.clone()];
            for k in &proj.kernel_basis {
                assert!(proj.functional.dot(k).is_zero());
                basis.push(k.clone());
            }
            assert!(jetspan::linalg::is_lattice_basis(&basis), "u = {u}");
        }
    }
    // Non-primitive functionals are rejected.
    assert!(seshadri::LatticeProjection::new(&lv(&[2, 4])).is_none());
}

#[test]
fn vertex_charts_start_with_the_standard_basis() {
    for (name, p) in corpus::standard_corpus() {
        if !p.is_smooth() {
            continue;
        }
        let dim = p.dim();
        for v in 0..p.vertex_count() {
            let chart = p.vertex_chart(v).unwrap();
            assert!(chart.points.contains(&LatticeVector::zeros(dim)), "{name}");
            for i in 0..dim {
                assert!(
                    chart.points.contains(&LatticeVector::unit(dim, i)),
                    "{name} vertex {v} axis {i}"
                );
            }
            assert!(
                chart
                    .points
                    .iter()
                    .all(|pt| pt.coords().iter().all(|c| !num_traits::Signed::is_negative(c))),
                "{name} vertex {v}: chart points must be nonnegative"
            );
        }
    }
}

#[test]
fn corpus_vertices_round_trip_through_facets() {
    for (name, p) in corpus::standard_corpus() {
        let d = p.dim();
        let recovered: Vec<LatticeVector> = p
            .lattice_points()
            .iter()
            .filter(|pt| {
                let tight: Vec<LatticeVector> = p
                    .facets()
                    .iter()
                    .filter(|f| f.slack(pt).is_zero())
                    .map(|f| f.normal.clone())
                    .collect();
                !tight.is_empty() && IntegerMatrix::from_rows(&tight).rank() == d
            })
            .cloned()
            .collect();
        assert_eq!(recovered, p.vertices().to_vec(), "{name}");
    }
}

#[test]
fn smooth_polytopes_are_simple() {
    for (name, p) in corpus::standard_corpus() {
        if !p.is_smooth() {
            continue;
        }
        for v in 0..p.vertex_count() {
            assert_eq!(p.edges_at(v).count(), p.dim(), "{name} vertex {v}");
        }
    }
}

#[test]
fn edge_lengths_count_interior_lattice_points() {
    for (name, p) in corpus::standard_corpus() {
        for e in p.edges() {
            let a = p.vertex(e.endpoints.0);
            let on_edge = p
                .lattice_points()
                .iter()
                .filter(|q| {
                    let (g, prim) = q.sub(a).primitive();
                    g.is_zero()
                        || (prim == e.direction && g <= int(e.lattice_length as i64))
                })
                .count() as u64;
            assert_eq!(on_edge, e.lattice_length + 1, "{name} edge {:?}", e.endpoints);
        }
    }
}

#[test]
fn jet_matrix_rank_is_monotone_in_k() {
    for (name, p) in corpus::standard_corpus() {
        let mut previous = 0usize;
        for k in 0..=3u64 {
            let rank = jets::jet_matrix(&p, k, jets::EvalMode::AllOnes)
                .unwrap()
                .rank();
            assert!(rank >= previous, "{name} at k = {k}");
            previous = rank;
        }
    }
}

#[test]
fn spanned_at_all_fixpoints_implies_spanned_generically() {
    for (name, p) in corpus::standard_corpus() {
        if !p.is_smooth() {
            continue;
        }
        let report = jets::jet_report(&p, None).unwrap();
        let fixpoint_min = *report.per_fixpoint.iter().min().unwrap();
        assert!(
            report.generic.lower() >= fixpoint_min,
            "{name}: generic {:?} below fixpoint minimum {fixpoint_min}",
            report.generic
        );
    }
}

#[test]
fn cayley_round_trip_on_random_slice_pairs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let mut done = 0usize;
    while done < 25 {
        let m = rng.gen_range(1..=2usize);
        let stock = corpus::smooth_base_stock(m);
        let base = &stock[rng.gen_range(0..stock.len())];
        let s = rng.gen_range(1..=3u64);
        let a = s * rng.gen_range(1..=2u64);
        let b = s * rng.gen_range(1..=2u64);
        let shift = LatticeVector::new(
            (0..m).map(|_| int((s * rng.gen_range(0..=1u64)) as i64)).collect(),
        );
        let slices = [
            EmbeddedPolytope::from_polytope(&base.dilate(a)),
            EmbeddedPolytope::from_polytope(&base.dilate(b).translate(&shift)),
        ];
        let p = cayley::construct(&slices, s).unwrap();
        let d = cayley::detect(&p, s, &DetectOptions::default())
            .unwrap_or_else(|| panic!("round trip failed for base dim {m}, s = {s}"));
        assert_eq!(d.order, s);
        done += 1;
    }
}

#[test]
fn cayley_detection_is_unimodular_covariant() {
    let members: Vec<(String, LatticePolytope)> = vec![
        ("hexagon".into(), hexagon()),
        ("simplex_d2_k2".into(), simplex(2, 2)),
        ("simplex_d3_k2".into(), simplex(3, 2)),
        ("box_2x3".into(), corpus::cuboid(&[2, 3]).unwrap()),
        ("cube".into(), corpus::cuboid(&[1, 1, 1]).unwrap()),
        (
            "pentagon".into(),
            corpus::cuboid(&[2, 2]).unwrap().chop(&lv(&[1, 1]), &int(1)).unwrap(),
        ),
    ];
    // Originals are in standard position with small witnesses; images of
    // their witnesses stay within 3x the bound (see `transformed`).
    let opts = DetectOptions::default();
    let mapped_opts = DetectOptions {
        direction_bound: 9,
        ..DetectOptions::default()
    };
    for (name, p) in members {
        for seed in 0..3u64 {
            let q = transformed(&p, 77 + seed);
            for s in 1..=4u64 {
                let original = cayley::detect(&p, s, &opts).is_some();
                let image = cayley::detect(&q, s, &mapped_opts).is_some();
                assert_eq!(original, image, "{name} order {s} seed {seed}");
            }
        }
    }
}

#[test]
fn width_and_s1_are_unimodular_invariant() {
    let opts = SeshadriOptions::default();
    for (name, p) in corpus::standard_corpus() {
        if p.dim() > 3 {
            continue;
        }
        let base = seshadri::generic_epsilon(&p, &opts);
        for seed in 0..2u64 {
            let q = transformed(&p, 300 + seed);
            // Inflate the width search so every direction relevant to the
            // original remains reachable in the image.
            let inflated = SeshadriOptions {
                width_bound: 3 * opts.width_bound,
                s1_bound: 3 * opts.s1_bound,
                ..opts.clone()
            };
            let image = seshadri::generic_epsilon(&q, &inflated);
            assert_eq!(base.width.width, image.width.width, "{name} seed {seed}");
            assert_eq!(base.s1.value, image.s1.value, "{name} seed {seed}");
        }
    }
}

#[test]
fn corollary_verifier_never_reports_violation_on_the_corpus() {
    for (name, p) in corpus::standard_corpus() {
        if !p.is_smooth() {
            continue;
        }
        for k in 1..=(p.min_edge_length() + 1) {
            let verdict = seshadri::verify_equivalence(&p, k, &VerifyOptions::default())
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(!verdict.violation(), "{name} at order {k}: {verdict:?}");
        }
    }
}

#[test]
fn fixpoint_epsilon_equals_fixpoint_jet_order_on_the_corpus() {
    for (name, p) in corpus::standard_corpus() {
        if !p.is_smooth() {
            continue;
        }
        for v in 0..p.vertex_count() {
            assert_eq!(
                seshadri::fixpoint_epsilon(&p, v).unwrap(),
                jets::fixpoint_order(&p, v).unwrap(),
                "{name} vertex {v}"
            );
        }
    }
}

#[test]
fn parse_emit_round_trip_on_the_corpus() {
    for (name, p) in corpus::standard_corpus() {
        let text = jetspan::format::emit(&p);
        let parsed = jetspan::format::parse_str(&text).unwrap();
        assert_eq!(parsed, p, "{name}");
    }
}

#[test]
fn lattice_width_is_positive_and_bounded_by_any_axis_width() {
    for (name, p) in corpus::standard_corpus() {
        let w = seshadri::lattice_width(&p, 5);
        assert!(w.width >= 1, "{name}");
        for axis in 0..p.dim() {
            let axis_width = p.width(&LatticeVector::unit(p.dim(), axis));
            assert!(int(w.width as i64) <= axis_width, "{name} axis {axis}");
        }
    }
}

#[test]
fn random_rational_jet_ranks_never_exceed_the_generic_rank() {
    for (name, p) in corpus::standard_corpus().into_iter().take(12) {
        for k in 1..=2u64 {
            let generic = jets::jet_matrix(&p, k, jets::EvalMode::AllOnes)
                .unwrap()
                .rank();
            for seed in 0..3u64 {
                let sampled = jets::max_rank_at_random_points(&p, k, 2, seed);
                assert!(sampled <= generic, "{name} k={k} seed={seed}");
            }
        }
    }
}

#[test]
fn vanishing_polynomials_vanish_and_kernel_absence_matches_full_rank() {
    for (name, p) in corpus::standard_corpus() {
        for k in 1..=3u64 {
            let (matrix, monomials) = jets::power_matrix(p.lattice_points(), p.dim(), k);
            match jets::vanishing_polynomial(&p, k) {
                Some(poly) => {
                    assert!(matrix.rank() < monomials.len(), "{name} k={k}");
                    assert!(poly.degree() <= k);
                    for m in p.lattice_points() {
                        assert!(poly.eval(m).is_zero(), "{name} k={k} at {m}");
                    }
                }
                None => assert_eq!(matrix.rank(), monomials.len(), "{name} k={k}"),
            }
        }
    }
}

#[test]
fn cayley_altitude_product_vanishes_on_standard_constructions() {
    // [P0 * P1]^k placed with the altitude on the last axis admits the
    // degree-(k+1) vanishing polynomial x_n (x_n - 1) ... (x_n - k).
    let square = lp(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
    for k in 1..=2u64 {
        let slices = [
            EmbeddedPolytope::from_polytope(&square.dilate(k)),
            EmbeddedPolytope::from_polytope(&square.dilate(k)),
        ];
        let p = cayley::construct(&slices, k).unwrap();
        let n = p.dim();
        let (matrix, monomials) = jets::power_matrix(p.lattice_points(), n, k + 1);
        // coefficients of x_n (x_n - 1) ... (x_n - k) over the monomial basis
        let mut coeffs = vec![int(0); monomials.len()];
        // expand the falling product of the last variable
        let mut poly = vec![int(1)]; // coefficients in x_n, constant first
        for j in 0..=k {
            let mut next = vec![int(0); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= int(j as i64) * c;
            }
            poly = next;
        }
        for (i, m) in monomials.iter().enumerate() {
            let exps = m.exponents();
            if exps[..n - 1].iter().all(|&e| e == 0) {
                let d = exps[n - 1] as usize;
                if d < poly.len() {
                    coeffs[i] = poly[d].clone();
                }
            }
        }
        let image = matrix.mul_vector(&LatticeVector::new(coeffs));
        assert!(image.is_zero(), "altitude product must vanish for k = {k}");
    }
}

#[test]
fn is_lattice_basis_detects_chart_bases() {
    for (name, p) in corpus::standard_corpus() {
        if !p.is_smooth() {
            continue;
        }
        for v in 0..p.vertex_count() {
            let dirs = p.edge_directions_at(v);
            assert!(
                jetspan::linalg::is_lattice_basis(&dirs),
                "{name} vertex {v}"
            );
        }
    }
}

#[test]
fn s1_witness_values_are_reproducible() {
    // Deterministic aggregation: two runs give identical values and
    // witness trees.
    for (_, p) in corpus::standard_corpus().into_iter().take(8) {
        let a = seshadri::s1_lower_bound(&p, &SeshadriOptions::default());
        let b = seshadri::s1_lower_bound(&p, &SeshadriOptions::default());
        assert_eq!(a.value, b.value);
        assert_eq!(format!("{}", a.witness), format!("{}", b.witness));
    }
}

#[test]
fn generic_order_never_exceeds_the_point_count_bound() {
    for (name, p) in corpus::standard_corpus() {
        let g = jets::generic_order(&p, 6).lower();
        assert!(
            jets::monomial_count(p.dim(), g) <= p.lattice_point_count(),
            "{name}"
        );
    }
}
