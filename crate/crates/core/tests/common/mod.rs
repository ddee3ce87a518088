//! Shared fixtures for the integration suites.
//!
//! Each integration test binary compiles this module independently and
//! uses a different subset of it.
#![allow(dead_code)]

use jetspan::corpus;
use jetspan::linalg::{int, LatticeVector};
use jetspan::polytope::LatticePolytope;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn lp(vertices: &[&[i64]]) -> LatticePolytope {
    LatticePolytope::from_i64_vertices(vertices).unwrap()
}

pub fn lv(coords: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(coords)
}

pub fn hexagon() -> LatticePolytope {
    corpus::del_pezzo_hexagon().unwrap()
}

pub fn simplex(dim: usize, k: u64) -> LatticePolytope {
    corpus::simplex(dim, k).unwrap()
}

/// Image of `p` under a seeded random unimodular affine map whose
/// inverse-transpose has operator norm at most 3, so that a direction
/// search bound of `3 * (original witness norm)` still finds transformed
/// witnesses.
pub fn transformed(p: &LatticePolytope, seed: u64) -> LatticePolytope {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let map = loop {
        let m = corpus::random_unimodular(p.dim(), &mut rng);
        let inv = m.inverse_unimodular().expect("unimodular");
        if corpus::transpose_norm(&inv) <= 3 {
            break m;
        }
    };
    let shift = LatticeVector::new(
        (0..p.dim()).map(|_| int(rng.gen_range(-2..=2))).collect(),
    );
    p.apply_unimodular(&map, &shift)
}

/// At least `count` smooth Cayley polytopes `[P_0 * P_1]^k` with all
/// edges of length at least `k`, dimensions 2 through 4, `k <= 3`,
/// slice coordinates at most 6. Every other member is additionally
/// moved by a random unimodular affine map.
pub fn smooth_cayley_family(count: usize) -> Vec<(String, LatticePolytope, u64)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let dim = 2 + (seed % 3) as usize;
        let order = 1 + (seed / 3) % 3;
        let p = corpus::random_smooth_cayley(dim, order, seed).expect("generator parameters valid");
        let (name, p) = if seed % 2 == 0 {
            (format!("cayley_d{dim}_k{order}_s{seed}"), p)
        } else {
            (
                format!("cayley_d{dim}_k{order}_s{seed}_mapped"),
                transformed(&p, seed),
            )
        };
        out.push((name, p, order));
        seed += 1;
    }
    out
}

/// Smooth polytopes with no Cayley structure of any order: hexagon
/// dilates, chopped boxes and chopped hexagons, plus unimodular images.
pub fn non_cayley_family() -> Vec<(String, LatticePolytope)> {
    let hex = hexagon();
    let pentagon = corpus::cuboid(&[2, 2])
        .unwrap()
        .chop(&lv(&[1, 1]), &int(1))
        .unwrap();
    let hex2_chop = hex.dilate(2).chop(&lv(&[1, 0]), &int(1)).unwrap();
    let cube2_corner = corpus::cuboid(&[2, 2, 2])
        .unwrap()
        .chop(&lv(&[1, 1, 1]), &int(1))
        .unwrap();
    let bases: Vec<(&str, LatticePolytope)> = vec![
        ("hexagon", hex.clone()),
        ("hexagon_x2", hex.dilate(2)),
        ("hexagon_x3", hex.dilate(3)),
        ("pentagon", pentagon),
        ("hexagon_x2_chop", hex2_chop),
        ("cube2_corner_chop", cube2_corner),
    ];
    let mut out = Vec::new();
    for (name, p) in bases {
        out.push((name.to_string(), p.clone()));
        for seed in 0..3u64 {
            out.push((format!("{name}_mapped{seed}"), transformed(&p, 1000 + seed)));
        }
    }
    out
}
