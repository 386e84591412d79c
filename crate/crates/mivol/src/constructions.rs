//! Geometric gadgets and exact inequality checkers.
//!
//! Cones over a polytope base, infinite cones clipped to a slab, the
//! inner/outer conic approximations of a body with one integer coordinate,
//! cuts and shifts that move the centroid onto the integer lattice, Thales
//! scaling, and the tight product instance behind the `2^-n (d/(d+1))^d`
//! constant.  Each checker measures its inequality in rational arithmetic
//! and reports a [`LemmaCheckResult`]; square roots enter only through
//! certified rational enclosures, always rounded so that a passing check is
//! implied by the true statement.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{add, dot, norm_sq, null_space, smul, sub, unit, zeros, Point};
use crate::lp::{self, LpResult};
use crate::mixed::{enumerate_fibers, inradius_about, rectangular_cut, MixedIntegerBody};
use crate::polytope::measure::volume_in_dim;
use crate::polytope::{
    affine_slice, centroid, dedup_halfspaces, intersect_halfspace, project, scale, translate,
    volume, Halfspace, Polytope,
};
use crate::scalar::{fourth_root_upper, powi, rat, ratio, simplest_in_interval, sqrt_exact,
    sqrt_upper, to_f64, Rat};

/// Bisection depth for the centroid cut; the final bracket has width
/// `initial / 2^64` before the rational refinement step.
const CUT_BISECTION_ITERS: usize = 64;

/// A cone `conv({apex} ∪ base)` whose base spans an affine hyperplane.
#[derive(Debug, Clone)]
pub struct ConeSpec {
    /// Apex, off the base hyperplane.
    pub apex: Point,
    /// Base polytope, spanning a hyperplane of the ambient space.
    pub base: Polytope,
    /// Euclidean distance from the apex to the base hyperplane.
    pub height: Rat,
    solid: Polytope,
}

impl ConeSpec {
    /// Build a cone from an apex and a hyperplane-spanning base.
    pub fn new(apex: Point, base: Polytope) -> Result<Self> {
        let ambient = base.ambient_dim();
        if apex.len() != ambient {
            return Err(Error::DimensionMismatch { expected: ambient, got: apex.len() });
        }
        let verts = base.vertices()?;
        if verts.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        let diffs: Vec<Point> = verts[1..].iter().map(|v| sub(v, &verts[0])).collect();
        let normals = null_space(&diffs, ambient);
        if normals.len() != 1 {
            return Err(Error::DegenerateInput(format!(
                "cone base must span a hyperplane, affine codimension is {}",
                normals.len()
            )));
        }
        let n0 = &normals[0];
        let alpha = dot(n0, &sub(&apex, &verts[0]));
        if alpha.is_zero() {
            return Err(Error::ApexInBasePlane);
        }
        let len = sqrt_exact(&norm_sq(n0)).ok_or(Error::IrrationalVolume)?;
        let height = alpha.abs() / len;
        let mut pts = verts.clone();
        pts.push(apex.clone());
        let solid = Polytope::from_vrep(ambient, pts)?;
        Ok(ConeSpec { apex, base: Polytope::from_vrep(ambient, verts)?, height, solid })
    }

    /// The filled cone as a polytope.
    pub fn solid(&self) -> &Polytope {
        &self.solid
    }
}

/// Convex hull of an apex and a hyperplane-spanning base.
pub fn build_cone(apex: Point, base: Polytope) -> Result<Polytope> {
    Ok(ConeSpec::new(apex, base)?.solid)
}

/// Volume ratio `(h'/h)^(q+1)` of the subcone of height `h'`, verified
/// against the explicitly constructed subcone.
pub fn subcone_volume_ratio(k: &ConeSpec, h_prime: &Rat) -> Result<Rat> {
    if !h_prime.is_positive() || h_prime > &k.height {
        return Err(Error::InvalidHeight);
    }
    let ambient = k.solid.ambient_dim();
    let lambda = h_prime / &k.height;
    let ratio = powi(&lambda, ambient as i64);
    let sub = scale(&k.solid, &lambda, &k.apex)?;
    let vol_k = volume(&k.solid)?;
    let vol_sub = volume(&sub)?;
    if vol_sub != &ratio * &vol_k {
        return Err(Error::DegenerateInput("subcone volume identity violated".into()));
    }
    Ok(ratio)
}

/// The infinite cone `{ x + t (y - x) : t >= 0, y in A }` clipped to the
/// slab `lo <= y_0 <= hi`.  `A` must lie in a hyperplane `y_0 = const`.
pub fn cone_infty(x: &[Rat], a: &Polytope, lo: &Rat, hi: &Rat) -> Result<Polytope> {
    let ambient = a.ambient_dim();
    if x.len() != ambient {
        return Err(Error::DimensionMismatch { expected: ambient, got: x.len() });
    }
    if lo > hi {
        return Err(Error::BadParams(format!(
            "slab [{lo}, {hi}] is empty"
        )));
    }
    let verts = a.vertices()?;
    if verts.is_empty() {
        return Ok(Polytope::empty(ambient));
    }
    let a0 = verts[0][0].clone();
    if verts.iter().any(|v| v[0] != a0) {
        return Err(Error::DegenerateInput(
            "cone_infty base must lie in a first-coordinate hyperplane".into(),
        ));
    }
    if a0 == x[0] {
        if verts.iter().all(|v| v[..] == x[..]) {
            // The cone degenerates to the single point x.
            return if lo <= &x[0] && &x[0] <= hi {
                Polytope::from_vrep(ambient, vec![x.to_vec()])
            } else {
                Ok(Polytope::empty(ambient))
            };
        }
        return Err(Error::UnboundedResult);
    }
    let denom = &a0 - &x[0];
    let t_at = |c: &Rat| (c - &x[0]) / &denom;
    let (ta, tb) = (t_at(lo), t_at(hi));
    let (mut tmin, tmax) = if ta <= tb { (ta, tb) } else { (tb, ta) };
    if tmax.is_negative() {
        return Ok(Polytope::empty(ambient));
    }
    if tmin.is_negative() {
        tmin = Rat::zero();
    }
    let mut pts = Vec::new();
    for t in [&tmin, &tmax] {
        if t.is_zero() {
            pts.push(x.to_vec());
        } else {
            for v in &verts {
                pts.push(add(x, &smul(t, &sub(v, x))));
            }
        }
        if tmin == tmax {
            break;
        }
    }
    Polytope::from_vrep(ambient, pts)
}

/// One measured inequality instance.
#[derive(Debug, Clone)]
pub struct LemmaCheckResult {
    /// Identifier describing what was measured.
    pub instance_id: String,
    /// Exact measured quantity.
    pub measured: Rat,
    /// Exact bound it is compared against.
    pub bound: Rat,
    /// Whether the measured value respects the bound in the inequality's
    /// direction.
    pub satisfied: bool,
}

impl LemmaCheckResult {
    fn le(id: String, measured: Rat, bound: Rat) -> Self {
        let satisfied = measured <= bound;
        LemmaCheckResult { instance_id: id, measured, bound, satisfied }
    }

    fn ge(id: String, measured: Rat, bound: Rat) -> Self {
        let satisfied = measured >= bound;
        LemmaCheckResult { instance_id: id, measured, bound, satisfied }
    }

    /// JSON object with exact strings plus float conveniences.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "instance_id": self.instance_id,
            "measured": crate::polytope::json::rat_to_json(&self.measured),
            "bound": crate::polytope::json::rat_to_json(&self.bound),
            "measured_f64": to_f64(&self.measured),
            "bound_f64": to_f64(&self.bound),
            "satisfied": self.satisfied,
        })
    }
}

/// Volume of a polytope that may be lower-dimensional or empty: such pieces
/// count zero toward the full-dimensional measure.
fn full_volume(p: &Polytope, ambient: usize) -> Result<Rat> {
    match p.vertices() {
        Ok(verts) if verts.is_empty() => Ok(Rat::zero()),
        Ok(verts) => volume_in_dim(&verts, ambient),
        Err(Error::EmptyPolytope) => Ok(Rat::zero()),
        Err(e) => Err(e),
    }
}

/// Body clipped to the slab `lo <= y_0 <= hi`, with vertices.
fn slab_section(c: &Polytope, lo: &Rat, hi: &Rat) -> Result<Polytope> {
    let ambient = c.ambient_dim();
    let mut floor = unit(ambient, 0);
    let p = intersect_halfspace(c, &Halfspace::new(floor.clone(), lo.clone())?)?;
    floor = smul(&-Rat::one(), &floor);
    intersect_halfspace(&p, &Halfspace::new(floor, -hi.clone())?)
}

/// Exact volume of the slab section `lo <= y_0 <= hi` of the body.
fn slab_volume(c: &Polytope, lo: &Rat, hi: &Rat) -> Result<Rat> {
    let p = slab_section(c, lo, hi)?;
    full_volume(&p, c.ambient_dim())
}

fn require_full_dim(c: &Polytope) -> Result<()> {
    if c.dim()? != Some(c.ambient_dim()) {
        return Err(Error::HypothesisNotMet("body must be full-dimensional".into()));
    }
    Ok(())
}

/// Section volume bound for a body with one integer coordinate: the slab
/// between fibers `i` and `i+1` holds at most a `(1+1/j)^(d+1) - 1`
/// fraction of the volume, where `j` is the index distance to the farther
/// end fiber.
pub fn check_single_face_bound(m: &MixedIntegerBody, i: usize) -> Result<LemmaCheckResult> {
    if m.n() != 1 {
        return Err(Error::BadParams(format!("one integer coordinate required, got {}", m.n())));
    }
    require_full_dim(m.body())?;
    let fibers = enumerate_fibers(m)?;
    let k = fibers.fibers.len().saturating_sub(1);
    if k < 2 {
        return Err(Error::HypothesisNotMet(format!(
            "need at least three fibers so every slab has a far end, got {}",
            fibers.fibers.len()
        )));
    }
    if i >= k {
        return Err(Error::BadParams(format!("slab index {i} out of range 0..{k}")));
    }
    let j = if 2 * i >= k { i } else { k - 1 - i };
    let z0 = fibers.fibers[0].z[0];
    let lo = rat(z0 + i as i64);
    let hi = rat(z0 + i as i64 + 1);
    let vol_c = volume(m.body())?;
    let measured = slab_volume(m.body(), &lo, &hi)? / &vol_c;
    let bound = powi(&ratio(j as i64 + 1, j as i64), (m.d() + 1) as i64) - Rat::one();
    Ok(LemmaCheckResult::le(format!("single-face/k={k}/i={i}"), measured, bound))
}

/// Inner and outer conic approximations of a body with one integer
/// coordinate, together with their volume sums.
#[derive(Debug)]
pub struct ConeSandwichN1 {
    /// Clipped cones contained in the body, one per fiber.
    pub inner: Vec<Polytope>,
    /// Clipped infinite cones covering the slabs, one per fiber.
    pub outer: Vec<Polytope>,
    /// Sum of inner cone volumes.
    pub inner_sum: Rat,
    /// Sum of outer cone volumes.
    pub outer_sum: Rat,
    /// Volume of the body.
    pub body_volume: Rat,
    /// Largest slab section volume.
    pub max_section: Rat,
    /// `inner_sum <= body_volume + max_section` (the middle slab is covered
    /// twice).
    pub inner_holds: bool,
    /// `outer_sum >= body_volume - max_section` (the middle slab may be
    /// missed).
    pub outer_holds: bool,
    /// `(1 - inner_sum/body_volume) / (d/k)`, the inner deficit in units of
    /// `d/k`.
    pub inner_ratio: f64,
    /// `(outer_sum/body_volume - 1) / (d/k)`, the outer excess in units of
    /// `d/k`.
    pub outer_ratio: f64,
}

/// Build the two cone families from the end fibers and check the volume
/// sandwich.  Fiber positions take the role of the labels `0..k`.
pub fn inner_outer_cones_n1(m: &MixedIntegerBody) -> Result<ConeSandwichN1> {
    if m.n() != 1 {
        return Err(Error::BadParams(format!("one integer coordinate required, got {}", m.n())));
    }
    require_full_dim(m.body())?;
    let ambient = 1 + m.d();
    let fibers = enumerate_fibers(m)?;
    if fibers.fibers.len() < 2 {
        return Err(Error::HypothesisNotMet(format!(
            "need at least two fibers, got {}",
            fibers.fibers.len()
        )));
    }
    let k = fibers.fibers.len() - 1;
    let lift = |z: i64, tail: &[Rat]| -> Point {
        let mut p = Vec::with_capacity(ambient);
        p.push(rat(z));
        p.extend_from_slice(tail);
        p
    };
    let anchor = |f: &crate::mixed::Fiber| -> Result<Point> {
        Ok(lift(f.z[0], &centroid(&f.slice)?))
    };
    let x_first = anchor(&fibers.fibers[0])?;
    let x_last = anchor(&fibers.fibers[k])?;

    let mut inner = Vec::with_capacity(k + 1);
    let mut outer = Vec::with_capacity(k + 1);
    let mut inner_sum = Rat::zero();
    let mut outer_sum = Rat::zero();
    for (i, f) in fibers.fibers.iter().enumerate() {
        let zi = f.z[0];
        let lifted: Vec<Point> = f.slice.vertices()?.iter().map(|v| lift(zi, v)).collect();
        let lifted_poly = Polytope::from_vrep(ambient, lifted.clone())?;
        // Far-apex cone on the near slab, contained in the body.
        let (apex, slab_lo, slab_hi) = if 2 * i > k {
            (&x_first, rat(zi - 1), rat(zi))
        } else {
            (&x_last, rat(zi), rat(zi + 1))
        };
        let mut pts = lifted.clone();
        pts.push(apex.clone());
        let cone = Polytope::from_vrep(ambient, pts)?;
        let clipped = slab_section(&cone, &slab_lo, &slab_hi)?;
        inner_sum += full_volume(&clipped, ambient)?;
        inner.push(clipped);
        // Same apex, fiber projected to the opposite slab, covering it.
        let (slab_lo, slab_hi) = if 2 * i > k {
            (rat(zi), rat(zi + 1))
        } else {
            (rat(zi - 1), rat(zi))
        };
        let hat = cone_infty(apex, &lifted_poly, &slab_lo, &slab_hi)?;
        outer_sum += full_volume(&hat, ambient)?;
        outer.push(hat);
    }

    let body_volume = volume(m.body())?;
    let z0 = fibers.fibers[0].z[0];
    let mut max_section = Rat::zero();
    for i in 0..k {
        let s = slab_volume(m.body(), &rat(z0 + i as i64), &rat(z0 + i as i64 + 1))?;
        if s > max_section {
            max_section = s;
        }
    }
    let inner_holds = inner_sum <= &body_volume + &max_section;
    let outer_holds = outer_sum >= &body_volume - &max_section;
    let d_over_k = m.d() as f64 / k as f64;
    let inner_ratio = to_f64(&(Rat::one() - &inner_sum / &body_volume)) / d_over_k;
    let outer_ratio = to_f64(&(&outer_sum / &body_volume - Rat::one())) / d_over_k;
    Ok(ConeSandwichN1 {
        inner,
        outer,
        inner_sum,
        outer_sum,
        body_volume,
        max_section,
        inner_holds,
        outer_holds,
        inner_ratio,
        outer_ratio,
    })
}

/// Result of cutting a body so its centroid's first coordinate becomes
/// integral.
#[derive(Debug)]
pub struct ShiftN1Outcome {
    /// The cut body `C ∩ { y_0 <= w }`.
    pub body: Polytope,
    /// Cut position.
    pub w: Rat,
    /// Integer the centroid's first coordinate is steered to.
    pub target: i64,
    /// Whether the centroid lands on the target exactly; when false the
    /// residual is below the bisection bracket width.
    pub exact: bool,
    /// Centroid of the cut body.
    pub centroid: Point,
    /// Fraction of the volume removed by the cut.
    pub removed_fraction: Rat,
}

/// Cut `C` with a halfspace `y_0 <= w` so that the centroid's first
/// coordinate hits `floor` of its current value.  The cut coordinate is
/// monotone in `w`, so a sign scan over the vertex breakpoints brackets the
/// root, bisection narrows it, and the simplest rational in the final
/// bracket is tested for an exact hit.
pub fn shift_centroid_n1(c: &Polytope) -> Result<ShiftN1Outcome> {
    require_full_dim(c)?;
    let verts = c.vertices()?;
    let mut zmin = verts[0][0].clone();
    let mut zmax = zmin.clone();
    for v in &verts {
        if v[0] < zmin {
            zmin = v[0].clone();
        }
        if v[0] > zmax {
            zmax = v[0].clone();
        }
    }
    if &zmax - &zmin < rat(2) {
        return Err(Error::HypothesisNotMet(
            "projection length of at least 2 required".into(),
        ));
    }
    let vol_c = volume(c)?;
    let cen = centroid(c)?;
    let target_big = cen[0].floor().to_integer();
    let target = target_big.to_i64().ok_or_else(|| {
        Error::BadParams("centroid coordinate out of i64 range".into())
    })?;
    if cen[0].is_integer() {
        return Ok(ShiftN1Outcome {
            body: c.clone(),
            w: zmax,
            target,
            exact: true,
            centroid: cen,
            removed_fraction: Rat::zero(),
        });
    }
    let target_rat = rat(target);
    if target_rat <= zmin {
        return Err(Error::NoIntegralCentroidReachable);
    }

    // Centroid first coordinate of the cut body minus the target; None while
    // the cut has no volume.  Monotone nondecreasing in w.
    let deficit = |w: &Rat| -> Result<Option<Rat>> {
        let half = Halfspace::new(smul(&-Rat::one(), &unit(c.ambient_dim(), 0)), -w.clone())?;
        let cut = intersect_halfspace(c, &half)?;
        if full_volume(&cut, c.ambient_dim())?.is_zero() {
            return Ok(None);
        }
        Ok(Some(&centroid(&cut)?[0] - &target_rat))
    };

    // Bracket the root between consecutive vertex breakpoints.
    let mut breaks: Vec<Rat> = verts.iter().map(|v| v[0].clone()).collect();
    breaks.sort();
    breaks.dedup();
    let mut lo = zmin.clone();
    let mut hi = zmax.clone();
    let mut prev = None;
    for b in breaks.iter().skip(1) {
        let f = deficit(b)?;
        if let (Some(p), Some(f)) = (&prev, &f) {
            assert!(f >= p, "cut centroid coordinate must be monotone in w");
        }
        match &f {
            Some(v) if v.is_zero() => {
                return finish_cut(c, b.clone(), target, true, &vol_c);
            }
            Some(v) if v.is_positive() => {
                hi = b.clone();
                break;
            }
            _ => lo = b.clone(),
        }
        prev = f;
    }

    // Bisect; the deficit is negative at lo (or lo has no volume) and
    // positive at hi.
    for _ in 0..CUT_BISECTION_ITERS {
        let mid = (&lo + &hi) / rat(2);
        match deficit(&mid)? {
            Some(v) if v.is_zero() => return finish_cut(c, mid, target, true, &vol_c),
            Some(v) if v.is_positive() => hi = mid,
            _ => lo = mid,
        }
    }

    // Prefer the simplest rational in the bracket: piecewise-rational roots
    // of low height are recovered exactly.
    let candidate = simplest_in_interval(&lo, &hi);
    let exact = matches!(deficit(&candidate)?, Some(v) if v.is_zero());
    finish_cut(c, candidate, target, exact, &vol_c)
}

fn finish_cut(c: &Polytope, w: Rat, target: i64, exact: bool, vol_c: &Rat) -> Result<ShiftN1Outcome> {
    let half = Halfspace::new(smul(&-Rat::one(), &unit(c.ambient_dim(), 0)), -w.clone())?;
    let body = crate::polytope::vertex_enumeration(&intersect_halfspace(c, &half)?)?;
    let vol = volume(&body)?;
    let cen = centroid(&body)?;
    Ok(ShiftN1Outcome {
        body,
        w,
        target,
        exact,
        centroid: cen,
        removed_fraction: (vol_c - &vol) / vol_c,
    })
}

/// Volume fractions of the two sides of the cut `y_0 <= centroid_0`.
pub fn centroid_cut_fractions(c: &Polytope) -> Result<(Rat, Rat)> {
    require_full_dim(c)?;
    let cen = centroid(c)?;
    let vol = volume(c)?;
    let half = Halfspace::new(smul(&-Rat::one(), &unit(c.ambient_dim(), 0)), -cen[0].clone())?;
    let left = full_volume(&intersect_halfspace(c, &half)?, c.ambient_dim())? / &vol;
    let right = Rat::one() - &left;
    Ok((left, right))
}

/// Result of translating a body so the first `n` centroid coordinates
/// become integral.
#[derive(Debug)]
pub struct ShiftGeneralOutcome {
    /// Applied translation vector.
    pub shift: Point,
    /// Translated body.
    pub body: Polytope,
    /// Scale of the shift relative to the body: certified upper enclosure
    /// of `sqrt(n) / (2k)`.
    pub eps: Rat,
    /// Integral head the centroid lands on.
    pub target_head: Vec<i64>,
    /// `vol((C + shift) \ C) / vol(C)`, exact.
    pub moved_fraction: Rat,
    /// `(1 + eps)^(n+d) - 1`, the scaling bound on the moved fraction.
    pub bound: Rat,
    /// Whether the moved fraction respects the bound.
    pub satisfied: bool,
}

/// Lift a projection point into the body, maximizing the tail coordinates
/// lexicographically for determinism.
fn lex_max_lift(c: &Polytope, head: &[Rat]) -> Result<Point> {
    let ambient = c.ambient_dim();
    let d = ambient - head.len();
    let slice = affine_slice(c, head)?;
    let hs = slice.halfspaces()?;
    let mut cons: Vec<(Point, Rat)> = hs
        .iter()
        .map(|h| (smul(&-Rat::one(), &h.normal), -&h.offset))
        .collect();
    let mut tail = Vec::with_capacity(d);
    for j in 0..d {
        match lp::maximize(&unit(d, j), &cons) {
            LpResult::Optimal { value, .. } => {
                cons.push((unit(d, j), value.clone()));
                cons.push((smul(&-Rat::one(), &unit(d, j)), -&value));
                tail.push(value);
            }
            other => {
                return Err(Error::LpFailure(format!(
                    "lift of a certified projection point failed: {other:?}"
                )))
            }
        }
    }
    let mut p = head.to_vec();
    p.extend(tail);
    Ok(p)
}

/// Translate `C` so the first `n` centroid coordinates become integral,
/// using a shift toward a far point of the projection ball `(center, k)`.
/// The landing is exact by construction; the moved volume is measured
/// exactly and compared against the `(1+eps)^(n+d) - 1` scaling bound.
pub fn shift_centroid_general(
    c: &Polytope,
    n: usize,
    ball_center: &[Rat],
    k: &Rat,
) -> Result<ShiftGeneralOutcome> {
    let ambient = c.ambient_dim();
    if n == 0 || n >= ambient || ball_center.len() != n {
        return Err(Error::BadParams(format!(
            "need 1 <= n < ambient and a center of length n, got n={n}, ambient={ambient}"
        )));
    }
    require_full_dim(c)?;
    if k <= &rat(n as i64) {
        return Err(Error::BallTooSmall {
            radius: format!("{k}"),
            required: format!("{n}"),
        });
    }
    let proj = project(c, n)?;
    if &inradius_about(&proj, ball_center)? < k {
        return Err(Error::HypothesisNotMet(
            "projection ball of the stated radius is not certified".into(),
        ));
    }
    let cen = centroid(c)?;
    let z = &cen[..n];
    let half = ratio(1, 2);
    let rounded: Vec<BigInt> = z.iter().map(|zi| (zi + &half).floor().to_integer()).collect();
    let target_head: Vec<i64> = rounded
        .iter()
        .map(|b| b.to_i64().ok_or_else(|| Error::BadParams("centroid head out of i64 range".into())))
        .collect::<Result<_>>()?;
    let z_prime: Point = rounded.iter().map(|b| Rat::from_integer(b.clone())).collect();
    let delta = sub(&z_prime, z);
    if delta.iter().all(|x| x.is_zero()) {
        return Ok(ShiftGeneralOutcome {
            shift: zeros(ambient),
            body: c.clone(),
            eps: Rat::zero(),
            target_head,
            moved_fraction: Rat::zero(),
            bound: Rat::zero(),
            satisfied: true,
        });
    }
    let s_hi = sqrt_upper(&rat(n as i64));
    let eps = &s_hi / (rat(2) * k);
    assert!(norm_sq(&delta) <= ratio(n as i64, 4), "rounding moved further than sqrt(n)/2");
    let z_far = add(ball_center, &smul(&(rat(2) * k / &s_hi), &delta));
    assert!(norm_sq(&sub(&z_far, ball_center)) <= k * k, "far head must stay in the ball");
    let x_far = lex_max_lift(c, &z_far)?;
    let c_hat = lex_max_lift(c, ball_center)?;
    let shift = smul(&eps, &sub(&x_far, &c_hat));
    debug_assert!(shift[..n] == delta[..]);
    let body = translate(c, &shift)?;
    let cen2 = centroid(&body)?;
    assert!(cen2[..n] == z_prime[..], "shifted centroid head must be exactly integral");

    // Thales: every vertex of the shifted body lies in the (1+eps)-scaled
    // copy about the ball-center lift.
    let grown = scale(c, &(Rat::one() + &eps), &c_hat)?;
    for v in body.vertices()? {
        if !grown.contains(&v)? {
            return Err(Error::DegenerateInput("scaled copy fails to absorb the shift".into()));
        }
    }

    let vol_c = volume(c)?;
    let mut hs = c.halfspaces()?;
    hs.extend(body.halfspaces()?);
    let overlap = Polytope::from_hrep(ambient, dedup_halfspaces(&hs))?;
    let vol_overlap = full_volume(&overlap, ambient)?;
    let moved_fraction = (&vol_c - &vol_overlap) / &vol_c;
    let bound = powi(&(Rat::one() + &eps), ambient as i64) - Rat::one();
    let satisfied = moved_fraction <= bound;
    Ok(ShiftGeneralOutcome { shift, body, eps, target_head, moved_fraction, bound, satisfied })
}

/// Scaling membership: for `z, w` in a convex body `D` and `eps > 0`, the
/// point `z + eps w` lies in `(1+eps) D` (scaled about the origin).
pub fn thales_check(d_body: &Polytope, z: &[Rat], w: &[Rat], eps: &Rat) -> Result<bool> {
    if !eps.is_positive() {
        return Err(Error::BadParams("eps must be positive".into()));
    }
    if !d_body.contains(z)? || !d_body.contains(w)? {
        return Err(Error::PointNotInBody);
    }
    let target = add(z, &smul(eps, w));
    let grown = scale(d_body, &(Rat::one() + eps), &zeros(d_body.ambient_dim()))?;
    grown.contains(&target)
}

/// The tight instance: a unit-cube block of integer coordinates times a
/// standard simplex, with a composite cut whose mass is exactly
/// `2^-n (d/(d+1))^d` once the cut separates the far lattice blocks.
#[derive(Debug)]
pub struct WorstCase {
    /// The product body as a mixed-integer set.
    pub m: MixedIntegerBody,
    /// Composite cut through the continuous worst-case point.
    pub h: Halfspace,
    /// `2^-n (d/(d+1))^d`.
    pub expected: Rat,
    /// Whether `r` exceeds the separation threshold, making `mu` equal
    /// `expected` exactly.
    pub tight: bool,
    /// Separation threshold `d/(d+1)` on the integer-block weight `r`.
    pub threshold: Rat,
}

/// Build `[0,1]^n x simplex_d` with the composite cut of weight `r`:
/// normal `(-r, ..., -r, 0, ..., 0, 1)` anchored at the simplex centroid of
/// the zero block.
pub fn worst_case_instance(n: usize, d: usize, r: &Rat) -> Result<WorstCase> {
    if r.is_negative() {
        return Err(Error::BadParams("block weight must be nonnegative".into()));
    }
    let ambient = n + d;
    let mut hs = Vec::new();
    for i in 0..n {
        hs.push(Halfspace::new(unit(ambient, i), Rat::zero())?);
        hs.push(Halfspace::new(smul(&-Rat::one(), &unit(ambient, i)), -Rat::one())?);
    }
    let mut simplex_row = zeros(ambient);
    for j in n..ambient {
        hs.push(Halfspace::new(unit(ambient, j), Rat::zero())?);
        simplex_row[j] = -Rat::one();
    }
    hs.push(Halfspace::new(simplex_row, -Rat::one())?);

    let mut tails: Vec<Point> = vec![zeros(d)];
    for j in 0..d {
        tails.push(unit(d, j));
    }
    let mut verts = Vec::new();
    for mask in 0u32..(1 << n) {
        for tail in &tails {
            let mut v = Vec::with_capacity(ambient);
            for i in 0..n {
                v.push(if mask >> i & 1 == 1 { Rat::one() } else { Rat::zero() });
            }
            v.extend_from_slice(tail);
            verts.push(v);
        }
    }
    let body = Polytope::from_both(ambient, hs, verts)?;
    let m = MixedIntegerBody::new(n, d, body)?;

    let mut normal = zeros(ambient);
    for i in 0..n {
        normal[i] = -r.clone();
    }
    normal[ambient - 1] = Rat::one();
    let mut anchor = zeros(ambient);
    for j in n..ambient {
        anchor[j] = ratio(1, d as i64 + 1);
    }
    let h = Halfspace::from_anchor(normal, &anchor)?;
    let expected = powi(&ratio(d as i64, d as i64 + 1), d as i64) * powi(&half_rat(), n as i64);
    let threshold = ratio(d as i64, d as i64 + 1);
    let tight = r > &threshold;
    Ok(WorstCase { m, h, expected, tight, threshold })
}

fn half_rat() -> Rat {
    ratio(1, 2)
}

/// Rectangular-cut sandwich: with a certified projection ball of radius
/// `r > sqrt(n)/2` around the lattice point `z`, the unit-box cut volume is
/// within `(1 -+ sqrt(n)/(2r))^d` of the slice volume.  Returns the lower
/// and upper comparisons separately.
pub fn check_slice_box(
    m: &MixedIntegerBody,
    z: &[i64],
    verified_r: &Rat,
) -> Result<Vec<LemmaCheckResult>> {
    let n = m.n();
    if z.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: z.len() });
    }
    require_full_dim(m.body())?;
    let s_hi = sqrt_upper(&rat(n as i64));
    if verified_r * rat(2) <= s_hi {
        return Err(Error::HypothesisNotMet(format!(
            "need a certified radius above sqrt({n})/2, got {verified_r}"
        )));
    }
    let head: Point = z.iter().map(|&zi| rat(zi)).collect();
    let proj = project(m.body(), n)?;
    if &inradius_about(&proj, &head)? < verified_r {
        return Err(Error::HypothesisNotMet(
            "projection ball of the stated radius is not certified".into(),
        ));
    }
    let slice = affine_slice(m.body(), &head)?;
    let vol_slice = full_volume(&slice, m.d())?;
    if vol_slice.is_zero() {
        return Err(Error::HypothesisNotMet("slice at the lattice point has no volume".into()));
    }
    let cut = rectangular_cut(m, z)?;
    let vol_cut = full_volume(&cut, n + m.d())?;
    let measured = &vol_cut / &vol_slice;
    let spread = &s_hi / (rat(2) * verified_r);
    let zs = z.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";");
    Ok(vec![
        LemmaCheckResult::ge(
            format!("slice-box/z={zs}/lo"),
            measured.clone(),
            powi(&(Rat::one() - &spread), m.d() as i64),
        ),
        LemmaCheckResult::le(
            format!("slice-box/z={zs}/up"),
            measured,
            powi(&(Rat::one() + &spread), m.d() as i64),
        ),
    ])
}

/// Total-mass sandwich: with a certified projection ball of radius `k` and
/// `5 d n^(3/4) / sqrt(k) <= 1`, the total fiber volume is within that
/// factor of the body volume.  Returns the lower and upper comparisons.
pub fn check_slice_total(m: &MixedIntegerBody, verified_k: &Rat) -> Result<Vec<LemmaCheckResult>> {
    let (n, d) = (m.n(), m.d());
    require_full_dim(m.body())?;
    if !verified_k.is_positive() {
        return Err(Error::HypothesisNotMet("certified radius must be positive".into()));
    }
    let proj = project(m.body(), n)?;
    let (center, _) = crate::mixed::chebyshev_ball(&proj)?;
    if &inradius_about(&proj, &center)? < verified_k {
        return Err(Error::HypothesisNotMet(
            "projection ball of the stated radius is not certified".into(),
        ));
    }
    // Certified upper enclosure of n^(3/4)/sqrt(k).
    let y_hi = fourth_root_upper(&(powi(&rat(n as i64), 3) / (verified_k * verified_k)));
    let slack = rat(5 * d as i64) * &y_hi;
    if slack > Rat::one() {
        return Err(Error::HypothesisNotMet(format!(
            "5 d n^(3/4) / sqrt(k) must be at most 1, certified value exceeds it ({})",
            to_f64(&slack)
        )));
    }
    let vol_c = volume(m.body())?;
    let vol_s = crate::mixed::total_volume(m)?;
    let measured = &vol_s / &vol_c;
    Ok(vec![
        LemmaCheckResult::ge("slice-total/lo".into(), measured.clone(), Rat::one() - &slack),
        LemmaCheckResult::le("slice-total/up".into(), measured, Rat::one() + &slack),
    ])
}
