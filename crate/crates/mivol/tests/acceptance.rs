//! Acceptance gate: ten end-to-end criteria at pinned tolerances, one
//! pass line each.  Every randomized step is seeded, so reruns are
//! deterministic.

use mivol::centerpoint::{
    basu_oertel_cbar, basu_oertel_g, oertel_radius_lower_bound, reference_bounds,
    sample_unit_directions, ContinuousBody, DirectionSearchConfig,
};
use mivol::constructions::{subcone_volume_ratio, worst_case_instance, ConeSpec};
use mivol::harness::records::Satisfied;
use mivol::harness::{
    check_theorem_general, check_theorem_n1, generate_instance, mc_volume, ExperimentRecord,
    InstanceFamily,
};
use mivol::lattice::{lattice_width, lift_and_apply, UnimodularMap};
use mivol::linalg::Point;
use mivol::mixed::{enumerate_fibers, mu, total_volume};
use mivol::polytope::{centroid, project, volume, Polytope};
use mivol::scalar::{powi, rat, ratio, to_f64, Rat};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::E;
use std::time::Instant;

fn cfg(samples: usize, refine: usize, seed: u64) -> DirectionSearchConfig {
    DirectionSearchConfig {
        sphere_samples: samples,
        refine_iters: refine,
        r_max: rat(1_000_000),
        seed,
    }
}

/// Seeded full-dimensional hull with denominator-4 coordinates.
fn seeded_hull(dim: usize, seed: u64) -> Polytope {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let count = dim + 4 + rng.gen_range(0..4);
        let pts: Vec<Point> = (0..count)
            .map(|_| (0..dim).map(|_| ratio(rng.gen_range(0..=16), 4)).collect())
            .collect();
        if let Ok(p) = Polytope::from_vrep(dim, pts) {
            if volume(&p).map(|v| v.is_positive()).unwrap_or(false) {
                return p;
            }
        }
    }
}

fn unit_dir(dim: usize, axis: usize, sign: i64) -> Point {
    let mut u = vec![Rat::zero(); dim];
    u[axis] = rat(sign);
    u
}

fn by_quantity<'a>(records: &'a [ExperimentRecord], name: &str) -> &'a ExperimentRecord {
    records
        .iter()
        .find(|r| r.quantity_name == name)
        .unwrap_or_else(|| panic!("missing record {name}"))
}

#[test]
fn criterion_01_worst_case_exactness() {
    for (n, d, samples, refine) in [(1, 1, 2048, 50), (1, 2, 256, 10), (2, 1, 256, 10), (2, 2, 128, 5)] {
        let start = Instant::now();
        let wc = worst_case_instance(n, d, &rat(100)).unwrap();
        assert!(wc.tight, "weight 100 must exceed the threshold for ({n},{d})");
        let measured = mu(&wc.m, &wc.h).unwrap();
        assert_eq!(measured, wc.expected, "composite cut mass must be exact for ({n},{d})");
        let cert = oertel_radius_lower_bound(&wc.m, &cfg(samples, refine, 3)).unwrap();
        let gap = (to_f64(&cert.value) - to_f64(&wc.expected)).abs();
        assert!(gap <= 1e-3, "certificate off by {gap} for ({n},{d})");
        let elapsed = start.elapsed().as_secs_f64();
        assert!(elapsed < 60.0, "case ({n},{d}) took {elapsed}s");
    }
    println!("criterion  1 (worst-case exactness, four dimension pairs): pass");
}

#[test]
fn criterion_02_grunbaum_at_the_centroid() {
    let mut checked = 0;
    for (dim, count) in [(2usize, 7u64), (3, 7), (4, 6)] {
        let g = powi(&ratio(dim as i64, dim as i64 + 1), dim as i64);
        let g_f = to_f64(&g);
        for i in 0..count {
            let p = seeded_hull(dim, 200 + 10 * dim as u64 + i);
            let body = ContinuousBody::new(&p).unwrap();
            let mut dirs = sample_unit_directions(dim, 32, 77 + i);
            for axis in 0..dim {
                dirs.push(unit_dir(dim, axis, 1));
                dirs.push(unit_dir(dim, axis, -1));
            }
            let (_, frac) = body.worst_fraction(body.centroid(), &dirs).unwrap();
            assert!(
                to_f64(&frac) >= g_f - 1e-3,
                "dim {dim} hull {i}: fraction {} below {g_f}",
                to_f64(&frac)
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 20);

    for dim in 2usize..=4 {
        let g = powi(&ratio(dim as i64, dim as i64 + 1), dim as i64);
        let base_dim = dim - 1;
        let mut pts: Vec<Point> = vec![vec![Rat::zero(); dim]];
        for axis in 0..base_dim {
            let mut v = vec![Rat::zero(); dim];
            v[axis] = rat(3);
            pts.push(v);
        }
        let base = Polytope::from_vrep(dim, pts).unwrap();
        let mut apex = vec![Rat::zero(); dim];
        apex[dim - 1] = rat(2);
        let cone = ConeSpec::new(apex, base).unwrap();
        let body = ContinuousBody::new(cone.solid()).unwrap();
        let mut dirs = sample_unit_directions(dim, 128, 5 + dim as u64);
        dirs.push(unit_dir(dim, dim - 1, 1));
        let (_, frac) = body.worst_fraction(body.centroid(), &dirs).unwrap();
        assert_eq!(frac, g, "cone in dim {dim} must attain the bound exactly");
    }
    println!("criterion  2 (centroid fraction floor on 20 hulls, cone equality): pass");
}

#[test]
fn criterion_03_coupling_root() {
    let start = Instant::now();
    let cbar = basu_oertel_cbar();
    assert!((5.4668..=5.4670).contains(&cbar), "cbar {cbar} outside the pinned bracket");
    let g1 = basu_oertel_g(1.0);
    assert!((g1 + 1.3069).abs() <= 1e-3, "g(1) = {g1}");
    assert!(start.elapsed().as_secs_f64() < 1.0);
    println!("criterion  3 (coupling constant bracket and g(1)): pass");
}

#[test]
fn criterion_04_lemma_suites_via_binary() {
    let start = Instant::now();
    for lemma in ["3.1", "4.1", "4.2", "4.3", "4.4"] {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_mivol"))
            .args(["verify", "--lemma", lemma, "--count", "50", "--seed", "1234"])
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0), "lemma {lemma} exited nonzero");
        let text = String::from_utf8(out.stdout).unwrap();
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert!(!rows.is_empty());
        for row in &rows {
            assert!(row.ends_with(",yes"), "lemma {lemma} row not satisfied: {row}");
        }
        let instances: std::collections::BTreeSet<&str> =
            rows.iter().map(|r| r.split('/').next().unwrap()).collect();
        assert_eq!(instances.len(), 50, "lemma {lemma} must cover 50 instances");
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 600.0, "lemma suites took {elapsed}s");
    println!("criterion  4 (five lemma suites, 50 instances each, {elapsed:.0}s): pass");
}

/// Seeded cone with its base in a constant-last-coordinate hyperplane.
fn seeded_cone(ambient: usize, seed: u64) -> ConeSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base_dim = ambient - 1;
    loop {
        let count = base_dim + 3 + rng.gen_range(0..3);
        let plane = rat(rng.gen_range(-2..=2));
        let pts: Vec<Point> = (0..count)
            .map(|_| {
                let mut v: Point =
                    (0..base_dim).map(|_| ratio(rng.gen_range(-16..=16), 4)).collect();
                v.push(plane.clone());
                v
            })
            .collect();
        let Ok(base) = Polytope::from_vrep(ambient, pts) else { continue };
        let Ok(shadow) = project(&base, base_dim) else { continue };
        if !volume(&shadow).map(|v| v.is_positive()).unwrap_or(false) {
            continue;
        }
        let mut apex: Point = (0..base_dim).map(|_| ratio(rng.gen_range(-8..=8), 4)).collect();
        apex.push(&plane + ratio(rng.gen_range(1..=12), 4));
        if let Ok(c) = ConeSpec::new(apex, base) {
            return c;
        }
    }
}

#[test]
fn criterion_05_cone_identities() {
    let mut built = 0;
    for ambient in 2usize..=4 {
        let runs = if ambient == 4 { 16 } else { 17 };
        for i in 0..runs {
            let cone = seeded_cone(ambient, 500 + 100 * ambient as u64 + i);
            let q = rat(ambient as i64);

            let shadow = project(&cone.base, ambient - 1).unwrap();
            let base_vol = volume(&shadow).unwrap();
            let vol = volume(cone.solid()).unwrap();
            assert_eq!(vol, base_vol * &cone.height / &q, "cone volume identity");

            let mut rng = ChaCha8Rng::seed_from_u64(900 + i);
            let num = rng.gen_range(1..=8);
            let den = rng.gen_range(num..=9);
            let lambda = ratio(num, den);
            let h_prime = &cone.height * &lambda;
            let measured = subcone_volume_ratio(&cone, &h_prime).unwrap();
            assert_eq!(measured, powi(&lambda, ambient as i64), "subcone ratio identity");

            let cen = centroid(cone.solid()).unwrap();
            let mut base_cen = centroid(&shadow).unwrap();
            base_cen.push(cone.base.vertices().unwrap()[0][ambient - 1].clone());
            for j in 0..ambient {
                let expected = (&cone.apex[j] + &q * &base_cen[j]) / (&q + rat(1));
                assert_eq!(cen[j], expected, "centroid identity at coordinate {j}");
            }
            let from_apex = &cen[ambient - 1] - &cone.apex[ambient - 1];
            let full_drop = &base_cen[ambient - 1] - &cone.apex[ambient - 1];
            assert_eq!(
                from_apex,
                ratio(ambient as i64, ambient as i64 + 1) * full_drop,
                "centroid height ratio"
            );
            built += 1;
        }
    }
    assert_eq!(built, 50);
    println!("criterion  5 (volume, subcone, and centroid-height identities on 50 cones): pass");
}

#[test]
fn criterion_06_one_block_trend() {
    let inv_e = 1.0 / E;
    for family in ["product_box", "cone_product"] {
        let mut deficits = Vec::new();
        for k in [8i64, 16, 32, 64, 128] {
            let f = InstanceFamily::new(family, &[("n", 1), ("d", 1), ("k", k)], 6);
            let m = generate_instance(&f).unwrap();
            let records = check_theorem_n1(&m, &f.id(), 6, Some(&cfg(128, 12, 6))).unwrap();
            assert!(
                records.iter().all(|r| r.satisfied != Satisfied::No),
                "{family} k={k} violated a bound"
            );
            let frac = by_quantity(&records, "n1-fraction-vs-asymptotic");
            assert_eq!(frac.satisfied, Satisfied::Yes, "{family} k={k} out of hypothesis");
            let deficit = (inv_e - frac.measured).max(0.0);
            let fitted = deficit * k as f64;
            assert!(fitted <= 10.0, "{family} k={k} fitted constant {fitted}");
            deficits.push(deficit);
        }
        for w in deficits.windows(2) {
            assert!(
                w[1] <= w[0] + 1e-12,
                "{family} deficit sequence {deficits:?} not improving"
            );
        }
    }
    println!("criterion  6 (one-block fraction floor and trend over five scales): pass");
}

#[test]
fn criterion_07_general_block_trend() {
    for (k, samples, refine) in [(16i64, 64, 8), (64, 32, 6), (256, 8, 2)] {
        let f = InstanceFamily::new("product_box", &[("n", 2), ("d", 1), ("k", k)], 7);
        let m = generate_instance(&f).unwrap();
        let records = check_theorem_general(&m, &f.id(), 7, Some(&cfg(samples, refine, 7))).unwrap();
        assert!(
            records.iter().all(|r| r.satisfied != Satisfied::No),
            "k={k} violated a bound"
        );
        let slack = by_quantity(&records, "general-slack-constant");
        assert_eq!(slack.satisfied, Satisfied::Yes);
        assert!(slack.measured <= 20.0, "k={k} fitted constant {}", slack.measured);
    }
    println!("criterion  7 (general-block slack constant over three scales): pass");
}

#[test]
fn criterion_08_guaranteed_floor_everywhere() {
    let catalog: Vec<InstanceFamily> = vec![
        InstanceFamily::new("product_box", &[("n", 1), ("d", 1), ("k", 3)], 1),
        InstanceFamily::new("product_box", &[("n", 2), ("d", 1), ("k", 2)], 2),
        InstanceFamily::new("product_box", &[("n", 1), ("d", 2), ("k", 2)], 3),
        InstanceFamily::new("cone_product", &[("n", 1), ("d", 1), ("k", 4)], 4),
        InstanceFamily::new("cone_product", &[("n", 1), ("d", 2), ("k", 3)], 5),
        InstanceFamily::new("cone_product", &[("n", 2), ("d", 1), ("k", 3)], 6),
        InstanceFamily::new("random_hull", &[("n", 1), ("d", 1), ("k", 5)], 7),
        InstanceFamily::new("random_hull", &[("n", 1), ("d", 2), ("k", 4)], 8),
        InstanceFamily::new("random_hull", &[("n", 2), ("d", 1), ("k", 4)], 9),
        InstanceFamily::new("sheared", &[("n", 2), ("d", 1), ("k", 4)], 10),
        InstanceFamily::new("worst_case", &[("n", 1), ("d", 1)], 11),
        InstanceFamily::new("worst_case", &[("n", 2), ("d", 1)], 12),
    ];
    for f in &catalog {
        let m = generate_instance(f).unwrap();
        let fs = enumerate_fibers(&m).unwrap();
        assert!(!fs.total.is_zero());
        assert!(fs.fibers.iter().any(|fib| fib.vol.is_positive()));
        let cert = oertel_radius_lower_bound(&m, &cfg(128, 10, f.seed)).unwrap();
        let floor = reference_bounds(m.n(), m.d()).unwrap().helly;
        assert!(
            to_f64(&cert.value) >= to_f64(&floor) - 1e-3,
            "{}: certified {} below floor {}",
            f.id(),
            to_f64(&cert.value),
            to_f64(&floor)
        );
    }
    println!("criterion  8 (guaranteed floor on twelve catalog instances): pass");
}

#[test]
fn criterion_09_volume_oracle_agreement() {
    for dim in 2usize..=5 {
        for i in 0..20u64 {
            let p = seeded_hull(dim, 9_000 + 100 * dim as u64 + i);
            let exact = to_f64(&volume(&p).unwrap());
            let (estimate, stderr) = mc_volume(&p, 100_000, 40 + i).unwrap();
            if stderr == 0.0 {
                assert_eq!(estimate, exact, "dim {dim} hull {i}");
            } else {
                let sigmas = (estimate - exact).abs() / stderr;
                assert!(sigmas <= 3.0, "dim {dim} hull {i}: {sigmas:.2} sigmas");
            }
        }
    }
    println!("criterion  9 (Monte Carlo within three sigmas on 80 hulls): pass");
}

#[test]
fn criterion_10_unimodular_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..20 {
        let k = 2 + (i as i64 % 5);
        let f = InstanceFamily::new("product_box", &[("n", 2), ("d", 1), ("k", k)], i);
        let m = generate_instance(&f).unwrap();

        let mut pick = || loop {
            let c = rng.gen_range(-4i64..=4);
            if c != 0 {
                break c;
            }
        };
        let a = pick();
        let b = pick();
        let upper = UnimodularMap::new(vec![vec![1, a], vec![0, 1]]).unwrap();
        let lower = UnimodularMap::new(vec![vec![1, 0], vec![b, 1]]).unwrap();
        let map = upper.compose(&lower);
        let moved = lift_and_apply(&m, &map).unwrap();

        assert_eq!(total_volume(&moved).unwrap(), total_volume(&m).unwrap());
        let mut vols_orig: Vec<Rat> =
            enumerate_fibers(&m).unwrap().fibers.into_iter().map(|f| f.vol).collect();
        let mut vols_moved: Vec<Rat> =
            enumerate_fibers(&moved).unwrap().fibers.into_iter().map(|f| f.vol).collect();
        vols_orig.sort();
        vols_moved.sort();
        assert_eq!(vols_orig, vols_moved, "fiber volumes must be preserved");

        let w_orig = lattice_width(&project(m.body(), 2).unwrap(), 2).unwrap().width;
        let w_moved = lattice_width(&project(moved.body(), 2).unwrap(), 20).unwrap().width;
        assert_eq!(w_orig, rat(k));
        assert_eq!(w_moved, w_orig, "lattice width must be invariant");
    }
    println!("criterion 10 (unimodular lift preserves volumes and width on 20 shears): pass");
}
