//! Seeded suites for the named inequality checks behind `verify --lemma`.
//!
//! Each suite draws instances from a deterministic family sequence, skips
//! draws that miss a check's hypotheses (bumping the seed deterministically),
//! and emits exact measured/bound rows.  All comparisons are exact rational
//! arithmetic; the only certified approximations are the ball radii coming
//! from the Chebyshev solver, which are safe lower bounds.

use crate::constructions::{
    check_single_face_bound, check_slice_box, check_slice_total, inner_outer_cones_n1,
    shift_centroid_general, shift_centroid_n1, thales_check, LemmaCheckResult,
};
use crate::error::{Error, Result};
use crate::harness::families::{generate_instance, InstanceFamily};
use crate::harness::records::Satisfied;
use crate::linalg::Point;
use crate::mixed::{chebyshev_ball, enumerate_fibers, inradius_about, MixedIntegerBody};
use crate::polytope::{centroid, project, translate};
use crate::scalar::{rat, ratio, Rat};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One exact measured/bound row of a lemma suite.
#[derive(Debug, Clone)]
pub struct LemmaRow {
    /// Instance plus check identifier.
    pub instance_id: String,
    /// Canonical parameter summary of the generating family.
    pub params: String,
    /// Exact measured quantity.
    pub measured: Rat,
    /// Exact bound.
    pub bound: Rat,
    /// Whether the inequality holds, or not-applicable off hypothesis.
    pub satisfied: Satisfied,
}

/// Supported lemma tokens.
pub const LEMMA_TOKENS: [&str; 7] = ["3.1", "3.2", "3.3", "4.1", "4.2", "4.3", "4.4"];

fn params_summary(f: &InstanceFamily) -> String {
    let pairs: Vec<String> = f.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{}({})", f.name, pairs.join(";"))
}

fn from_check(f: &InstanceFamily, r: LemmaCheckResult) -> LemmaRow {
    LemmaRow {
        instance_id: format!("{}/{}", f.id(), r.instance_id),
        params: params_summary(f),
        measured: r.measured,
        bound: r.bound,
        satisfied: Satisfied::from_bool(r.satisfied),
    }
}

fn row(f: &InstanceFamily, check: &str, measured: Rat, bound: Rat, satisfied: bool) -> LemmaRow {
    LemmaRow {
        instance_id: format!("{}/{}", f.id(), check),
        params: params_summary(f),
        measured,
        bound,
        satisfied: Satisfied::from_bool(satisfied),
    }
}

/// Default family for one suite draw.
fn default_family(lemma: &str, i: usize, seed: u64) -> InstanceFamily {
    let d = 1 + (i % 2) as i64;
    match lemma {
        "3.1" => InstanceFamily::new(
            "random_hull",
            &[("n", 1), ("d", d), ("k", 6), ("count", 8 + (i % 4) as i64)],
            seed,
        ),
        "3.3" => {
            if i % 3 == 2 {
                InstanceFamily::new("product_box", &[("n", 1), ("d", 2), ("k", 7)], seed)
            } else {
                InstanceFamily::new(
                    "random_hull",
                    &[("n", 1), ("d", 1), ("k", 6), ("count", 8 + (i % 4) as i64)],
                    seed,
                )
            }
        }
        "3.2" => {
            let name = if i % 2 == 0 { "cone_product" } else { "product_box" };
            InstanceFamily::new(name, &[("n", 1), ("d", 1 + (i / 2 % 2) as i64), ("k", 8 + (i % 5) as i64)], seed)
        }
        "4.1" => InstanceFamily::new(
            "random_hull",
            &[("n", 1 + (i % 2) as i64), ("d", 1 + (i / 2 % 2) as i64), ("k", 4)],
            seed,
        ),
        "4.2" => {
            let name = if i % 2 == 0 { "product_box" } else { "sheared" };
            InstanceFamily::new(
                name,
                &[("n", 1 + (i / 2 % 2) as i64), ("d", d), ("k", 4 + 2 * (i % 5) as i64)],
                seed,
            )
        }
        "4.3" => {
            let k = if d == 1 { 64 + 2 * (i % 5) as i64 } else { 256 + 2 * (i % 5) as i64 };
            InstanceFamily::new("product_box", &[("n", 1), ("d", d), ("k", k)], seed)
        }
        "4.4" => InstanceFamily::new(
            "product_box",
            &[("n", 1 + (i % 2) as i64), ("d", 1 + (i / 2 % 2) as i64), ("k", 8)],
            seed,
        ),
        _ => unreachable!("callers validate the token"),
    }
}

/// A seeded rational point strictly inside the vertex hull.
fn seeded_interior_point(verts: &[Point], rng: &mut ChaCha8Rng) -> Point {
    let dim = verts[0].len();
    let mut weights: Vec<i64> = (0..verts.len()).map(|_| rng.gen_range(0..8)).collect();
    weights[0] += 1;
    let total: i64 = weights.iter().sum();
    let mut p = vec![Rat::zero(); dim];
    for (v, &w) in verts.iter().zip(&weights) {
        if w == 0 {
            continue;
        }
        let c = ratio(w, total);
        for j in 0..dim {
            p[j] += &c * &v[j];
        }
    }
    p
}

fn singleface_rows(f: &InstanceFamily, m: &MixedIntegerBody) -> Result<Vec<LemmaRow>> {
    let fibers = enumerate_fibers(m)?;
    let k = fibers.fibers.len().saturating_sub(1);
    if k < 2 {
        return Err(Error::HypothesisNotMet("need at least three fibers".into()));
    }
    (0..k)
        .map(|i| Ok(from_check(f, check_single_face_bound(m, i)?)))
        .collect()
}

fn cone_sandwich_rows(f: &InstanceFamily, m: &MixedIntegerBody) -> Result<Vec<LemmaRow>> {
    let fibers = enumerate_fibers(m)?;
    if fibers.fibers.len() < 9 {
        return Err(Error::HypothesisNotMet("need a fiber span of at least eight".into()));
    }
    let s = inner_outer_cones_n1(m)?;
    Ok(vec![
        row(
            f,
            "cones-inner-sum",
            s.inner_sum.clone(),
            &s.body_volume + &s.max_section,
            s.inner_holds,
        ),
        row(
            f,
            "cones-outer-sum",
            s.outer_sum.clone(),
            &s.body_volume - &s.max_section,
            s.outer_holds,
        ),
    ])
}

fn cut_rows(f: &InstanceFamily, m: &MixedIntegerBody) -> Result<Vec<LemmaRow>> {
    let out = shift_centroid_n1(m.body())?;
    let head_error = (&out.centroid[0] - rat(out.target)).abs();
    let head_bound = if out.exact { Rat::zero() } else { ratio(1, 1_000_000_000) };
    Ok(vec![
        row(
            f,
            "cut-removed-fraction",
            out.removed_fraction.clone(),
            Rat::one(),
            out.removed_fraction < Rat::one(),
        ),
        row(f, "cut-head-integral", head_error.clone(), head_bound.clone(), head_error <= head_bound),
    ])
}

fn thales_rows(f: &InstanceFamily, m: &MixedIntegerBody, seed: u64) -> Result<Vec<LemmaRow>> {
    let body = m.body();
    let verts = body.vertices()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7c15_9e37);
    let mut rows = Vec::new();
    for pair in 0..3u64 {
        let z = seeded_interior_point(&verts, &mut rng);
        let w = seeded_interior_point(&verts, &mut rng);
        let eps = ratio(1, 2 + (pair + seed % 9) as i64 % 9);
        let ok = thales_check(body, &z, &w, &eps)?;
        rows.push(row(
            f,
            &format!("thales-containment/pair={pair}"),
            rat(ok as i64),
            Rat::one(),
            ok,
        ));
    }
    Ok(rows)
}

fn slice_box_rows(f: &InstanceFamily, m: &MixedIntegerBody) -> Result<Vec<LemmaRow>> {
    let n = m.n();
    let proj = project(m.body(), n)?;
    let (center, _) = chebyshev_ball(&proj)?;
    let z: Vec<i64> = center
        .iter()
        .map(|c| c.round().to_integer().try_into().map_err(|_| {
            Error::BadParams("projection center out of integer range".into())
        }))
        .collect::<Result<_>>()?;
    let zr: Point = z.iter().map(|&c| rat(c)).collect();
    let r = inradius_about(&proj, &zr)?;
    Ok(check_slice_box(m, &z, &r)?
        .into_iter()
        .map(|c| from_check(f, c))
        .collect())
}

fn slice_total_rows(f: &InstanceFamily, m: &MixedIntegerBody) -> Result<Vec<LemmaRow>> {
    let proj = project(m.body(), m.n())?;
    let (_, radius) = chebyshev_ball(&proj)?;
    Ok(check_slice_total(m, &radius)?
        .into_iter()
        .map(|c| from_check(f, c))
        .collect())
}

fn shift_rows(f: &InstanceFamily, m: &MixedIntegerBody, seed: u64) -> Result<Vec<LemmaRow>> {
    let n = m.n();
    let d = m.d();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4a7c_79b9);
    let t: Point = (0..n + d).map(|_| ratio(rng.gen_range(0..8), 8)).collect();
    let body = translate(m.body(), &t)?;
    let moved = MixedIntegerBody::new(n, d, body)?;
    let proj = project(moved.body(), n)?;
    let (center, radius) = chebyshev_ball(&proj)?;
    let out = shift_centroid_general(moved.body(), n, &center, &radius)?;
    let landed = centroid(&out.body)?;
    let mut head_error = Rat::zero();
    for (j, &target) in out.target_head.iter().enumerate() {
        head_error += (&landed[j] - rat(target)).abs();
    }
    Ok(vec![
        row(f, "shift-moved-fraction", out.moved_fraction.clone(), out.bound.clone(), out.satisfied),
        row(f, "shift-head-integral", head_error.clone(), Rat::zero(), head_error.is_zero()),
    ])
}

fn suite_rows(
    lemma: &str,
    f: &InstanceFamily,
    m: &MixedIntegerBody,
    seed: u64,
) -> Result<Vec<LemmaRow>> {
    match lemma {
        "3.1" => singleface_rows(f, m),
        "3.2" => cone_sandwich_rows(f, m),
        "3.3" => cut_rows(f, m),
        "4.1" => thales_rows(f, m, seed),
        "4.2" => slice_box_rows(f, m),
        "4.3" => slice_total_rows(f, m),
        "4.4" => shift_rows(f, m, seed),
        other => Err(Error::BadParams(format!(
            "unknown lemma {other:?}, want one of {}",
            LEMMA_TOKENS.join(", ")
        ))),
    }
}

fn not_applicable_row(f: &InstanceFamily, why: &Error) -> LemmaRow {
    LemmaRow {
        instance_id: format!("{}/hypothesis: {why}", f.id()),
        params: params_summary(f),
        measured: Rat::zero(),
        bound: Rat::zero(),
        satisfied: Satisfied::NotApplicable,
    }
}

/// Run `count` instances of one lemma suite.  With the default families,
/// draws outside the hypotheses are redrawn deterministically so every
/// instance is in hypothesis; with a family override each draw is kept,
/// and out-of-hypothesis draws appear as not-applicable rows.
pub fn run_lemma_suite(
    lemma: &str,
    family: Option<(&str, &str)>,
    count: usize,
    seed: u64,
) -> Result<Vec<LemmaRow>> {
    if !LEMMA_TOKENS.contains(&lemma) {
        return Err(Error::BadParams(format!(
            "unknown lemma {lemma:?}, want one of {}",
            LEMMA_TOKENS.join(", ")
        )));
    }
    let mut rows = Vec::new();
    let mut produced = 0usize;
    let mut attempt = 0u64;
    let budget = 20 * count as u64 + 20;
    while produced < count {
        if attempt >= budget {
            return Err(Error::HypothesisNotMet(format!(
                "only {produced} of {count} draws met the hypotheses of {lemma} within {budget} attempts"
            )));
        }
        let inst_seed = seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9));
        attempt += 1;
        let f = match family {
            Some((name, params)) => InstanceFamily::parse(name, params, inst_seed)?,
            None => default_family(lemma, produced, inst_seed),
        };
        let outcome = generate_instance(&f).and_then(|m| suite_rows(lemma, &f, &m, inst_seed));
        match outcome {
            Ok(mut r) => {
                rows.append(&mut r);
                produced += 1;
            }
            Err(Error::BadParams(e)) => return Err(Error::BadParams(e)),
            Err(e) if family.is_some() => {
                rows.push(not_applicable_row(&f, &e));
                produced += 1;
            }
            Err(_) => continue,
        }
    }
    rows.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_satisfied(rows: &[LemmaRow]) {
        for r in rows {
            assert_eq!(
                r.satisfied,
                Satisfied::Yes,
                "{} measured {} bound {}",
                r.instance_id,
                r.measured,
                r.bound
            );
        }
    }

    #[test]
    fn single_face_suite_passes_and_is_deterministic() {
        let a = run_lemma_suite("3.1", None, 4, 9).unwrap();
        let b = run_lemma_suite("3.1", None, 4, 9).unwrap();
        assert!(!a.is_empty());
        all_satisfied(&a);
        assert_eq!(a.len(), b.len());
        assert_eq!(a[0].instance_id, b[0].instance_id);
        assert_eq!(a[0].measured, b[0].measured);
    }

    #[test]
    fn cone_sandwich_suite_passes() {
        let rows = run_lemma_suite("3.2", None, 2, 1).unwrap();
        assert_eq!(rows.len(), 4);
        all_satisfied(&rows);
    }

    #[test]
    fn cut_suite_passes() {
        let rows = run_lemma_suite("3.3", None, 4, 3).unwrap();
        assert_eq!(rows.len(), 8);
        all_satisfied(&rows);
    }

    #[test]
    fn thales_suite_passes() {
        let rows = run_lemma_suite("4.1", None, 4, 5).unwrap();
        assert_eq!(rows.len(), 12);
        all_satisfied(&rows);
    }

    #[test]
    fn slice_box_suite_passes() {
        let rows = run_lemma_suite("4.2", None, 4, 7).unwrap();
        assert_eq!(rows.len(), 8);
        all_satisfied(&rows);
    }

    #[test]
    fn slice_total_suite_passes() {
        let rows = run_lemma_suite("4.3", None, 2, 11).unwrap();
        assert_eq!(rows.len(), 4);
        all_satisfied(&rows);
    }

    #[test]
    fn shift_suite_passes() {
        let rows = run_lemma_suite("4.4", None, 4, 13).unwrap();
        assert_eq!(rows.len(), 8);
        all_satisfied(&rows);
    }

    #[test]
    fn family_override_is_respected() {
        let rows =
            run_lemma_suite("3.1", Some(("product_box", "n=1,d=1,k=6")), 2, 0).unwrap();
        assert!(rows.iter().all(|r| r.instance_id.starts_with("product_box(")));
        all_satisfied(&rows);
    }

    #[test]
    fn out_of_hypothesis_override_yields_not_applicable_rows() {
        let rows =
            run_lemma_suite("3.2", Some(("product_box", "n=1,d=1,k=3")), 2, 0).unwrap();
        assert_eq!(rows.len(), 2);
        for r in &rows {
            assert_eq!(r.satisfied, Satisfied::NotApplicable);
            assert!(r.instance_id.contains("hypothesis"));
        }
    }

    #[test]
    fn unknown_lemma_is_rejected() {
        assert!(matches!(run_lemma_suite("9.9", None, 1, 0), Err(Error::BadParams(_))));
    }
}
