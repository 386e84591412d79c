//! Lattice widths, unimodular maps, and width-guided enlargement.
//!
//! The lattice width of a bounded set is the smallest extent along a
//! nonzero integer direction.  This module evaluates widths exactly at
//! the vertices, enumerates directions up to a recorded norm bound,
//! completes a primitive width direction to a unimodular map, and runs
//! a greedy enlargement that retries such maps until the inscribed ball
//! of the image stops growing.  Unimodular maps lift to mixed-integer
//! bodies as the identity on the continuous block, preserving every
//! fiber volume.

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Point;
use crate::mixed::{chebyshev_ball, MixedIntegerBody};
use crate::polytope::json::rat_to_json;
use crate::polytope::Polytope;
use crate::scalar::{rat, sqrt_lower, sqrt_upper, to_f64, Rat};

/// Greedy enlargement rounds allowed by default.
pub const DEFAULT_ENLARGE_BUDGET: usize = 16;

/// An integer matrix with determinant plus or minus one, stored with its
/// exact integer inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularMap {
    matrix: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Exact determinant and inverse by rational elimination.
fn det_and_inverse(m: &[Vec<i64>]) -> Option<(Rat, Vec<Vec<Rat>>)> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.iter().map(|row| row.iter().map(|&c| rat(c)).collect()).collect();
    let mut inv: Vec<Vec<Rat>> =
        (0..n).map(|i| (0..n).map(|j| rat(i64::from(i == j))).collect()).collect();
    let mut det = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let av = &f * &a[col][j];
                a[r][j] -= av;
                let iv = &f * &inv[col][j];
                inv[r][j] -= iv;
            }
        }
    }
    Some((det, inv))
}

impl UnimodularMap {
    /// Validates the determinant and computes the exact integer inverse.
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::BadParams("matrix must be square and nonempty".into()));
        }
        let (det, inv) = match det_and_inverse(&matrix) {
            Some(x) => x,
            None => return Err(Error::NotUnimodular("0".into())),
        };
        if det != rat(1) && det != rat(-1) {
            return Err(Error::NotUnimodular(crate::scalar::format_rat(&det)));
        }
        let mut inverse = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if !inv[i][j].is_integer() {
                    return Err(Error::NotUnimodular(crate::scalar::format_rat(&det)));
                }
                inverse[i][j] = inv[i][j]
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::BadParams("inverse entry exceeds 64 bits".into()))?;
            }
        }
        Ok(UnimodularMap { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMap { matrix: identity_matrix(n), inverse: identity_matrix(n) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Vec<Vec<i64>> {
        &self.matrix
    }

    pub fn inverse(&self) -> &Vec<Vec<i64>> {
        &self.inverse
    }

    /// The map sending `x` to `self` applied after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        UnimodularMap {
            matrix: matmul(&self.matrix, &other.matrix),
            inverse: matmul(&other.inverse, &self.inverse),
        }
    }

    pub fn inverse_map(&self) -> Self {
        UnimodularMap { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    pub fn apply_point(&self, p: &[Rat]) -> Point {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(p).map(|(&c, x)| rat(c) * x).sum())
            .collect()
    }

    /// Image polytope under the map.
    pub fn apply(&self, p: &Polytope) -> Result<Polytope> {
        if p.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: p.ambient_dim() });
        }
        let verts = p.vertices()?;
        Polytope::from_vrep(self.dim(), verts.iter().map(|v| self.apply_point(v)).collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "matrix": self.matrix, "inverse": self.inverse })
    }
}

/// Exact extent of `d` along an integer direction.
pub fn width_along(d: &Polytope, u: &[i64]) -> Result<Rat> {
    if u.iter().all(|&c| c == 0) {
        return Err(Error::ZeroDirection);
    }
    if u.len() != d.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: d.ambient_dim(), got: u.len() });
    }
    let verts = d.vertices()?;
    if verts.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let vals: Vec<Rat> = verts
        .iter()
        .map(|v| u.iter().zip(v).map(|(&c, x)| rat(c) * x).sum::<Rat>())
        .collect();
    let hi = vals.iter().max().expect("nonempty");
    let lo = vals.iter().min().expect("nonempty");
    Ok(hi - lo)
}

/// Width minimizer over the enumerated direction grid.
#[derive(Debug, Clone)]
pub struct WidthResult {
    pub width: Rat,
    pub direction: Vec<i64>,
    pub search_bound: i64,
}

impl WidthResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "width": rat_to_json(&self.width),
            "width_f64": to_f64(&self.width),
            "direction": self.direction,
            "search_bound": self.search_bound,
        })
    }
}

/// Minimum width over nonzero integer directions with entries bounded by
/// `b`, scanning each antipodal pair once via lexicographic positivity.
/// The result is an upper bound on the true lattice width, scoped by the
/// recorded search bound.
pub fn lattice_width(d: &Polytope, b: i64) -> Result<WidthResult> {
    if b < 1 {
        return Err(Error::BadParams("search bound must be at least 1".into()));
    }
    let n = d.ambient_dim();
    let verts = d.vertices()?;
    if verts.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let mut best: Option<(Rat, Vec<i64>)> = None;
    let mut u = vec![-b; n];
    loop {
        if u.iter().find(|&&c| c != 0).map_or(false, |&c| c > 0) {
            let vals: Vec<Rat> = verts
                .iter()
                .map(|v| u.iter().zip(v).map(|(&c, x)| rat(c) * x).sum::<Rat>())
                .collect();
            let hi = vals.iter().max().expect("nonempty").clone();
            let lo = vals.iter().min().expect("nonempty").clone();
            let w = hi - lo;
            if best.as_ref().map_or(true, |(bw, _)| w < *bw) {
                best = Some((w, u.clone()));
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                let (width, direction) = best.expect("grid contains a nonzero direction");
                return Ok(WidthResult { width, direction, search_bound: b });
            }
            if u[k] == b {
                u[k] = -b;
                k += 1;
            } else {
                u[k] += 1;
                break;
            }
        }
    }
}

/// Certified rational upper bound `n^2 sqrt(n)` on the flatness constant
/// in dimension `n`, exact when `n` is a perfect square.
pub fn flatness_bound(n: usize) -> Result<Rat> {
    if n == 0 {
        return Err(Error::BadParams("dimension must be at least 1".into()));
    }
    let nr = rat(n as i64);
    Ok(&nr * &nr * sqrt_upper(&nr))
}

/// Unimodular map whose first row is the given primitive integer vector,
/// built from tracked elementary column operations.
pub fn completion_from_direction(u: &[i64]) -> Result<UnimodularMap> {
    if u.iter().all(|&c| c == 0) {
        return Err(Error::ZeroDirection);
    }
    let n = u.len();
    let mut v = u.to_vec();
    let mut w = identity_matrix(n);
    let mut w_inv = identity_matrix(n);
    let col_add = |w: &mut Vec<Vec<i64>>, w_inv: &mut Vec<Vec<i64>>, v: &mut Vec<i64>,
                   j: usize, i: usize, q: i64| {
        v[j] += q * v[i];
        for row in w.iter_mut() {
            row[j] += q * row[i];
        }
        for c in 0..n {
            let sub = q * w_inv[j][c];
            w_inv[i][c] -= sub;
        }
    };
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let p = *nonzero.iter().min_by_key(|&&i| v[i].abs()).expect("nonempty");
        for j in nonzero {
            if j == p {
                continue;
            }
            let q = v[j].div_euclid(v[p]);
            col_add(&mut w, &mut w_inv, &mut v, j, p, -q);
        }
    }
    let p = (0..n).find(|&i| v[i] != 0).expect("input is nonzero");
    if v[p].abs() != 1 {
        return Err(Error::NotUnimodular(format!(
            "direction has content {}, expected a primitive vector",
            v[p].abs()
        )));
    }
    if p != 0 {
        v.swap(0, p);
        for row in w.iter_mut() {
            row.swap(0, p);
        }
        w_inv.swap(0, p);
    }
    if v[0] == -1 {
        v[0] = 1;
        for row in w.iter_mut() {
            row[0] = -row[0];
        }
        for c in 0..n {
            w_inv[0][c] = -w_inv[0][c];
        }
    }
    debug_assert_eq!(w_inv[0], u.to_vec());
    Ok(UnimodularMap { matrix: w_inv, inverse: w })
}

/// Result of the greedy width-guided enlargement.
#[derive(Debug, Clone)]
pub struct EnlargeOutcome {
    pub map: UnimodularMap,
    pub image: Polytope,
    pub achieved_radius: Rat,
    pub target_radius: Rat,
    pub met_target: bool,
    pub budget_exhausted: bool,
}

impl EnlargeOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "map": self.map.to_json(),
            "achieved_radius": rat_to_json(&self.achieved_radius),
            "achieved_radius_f64": to_f64(&self.achieved_radius),
            "target_radius": rat_to_json(&self.target_radius),
            "target_radius_f64": to_f64(&self.target_radius),
            "met_target": self.met_target,
            "budget_exhausted": self.budget_exhausted,
        })
    }
}

/// Default coefficient bound for exhaustive width search in dimension `n`.
pub fn width_search_bound(n: usize) -> i64 {
    match n {
        0..=2 => 5,
        3 => 4,
        _ => 2,
    }
}

fn gcd64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn primitive(u: &[i64]) -> Vec<i64> {
    let g = u.iter().fold(0i64, |acc, &c| gcd64(acc, c));
    if g <= 1 {
        return u.to_vec();
    }
    u.iter().map(|&c| c / g).collect()
}

/// Greedy unimodular enlargement: repeatedly send the current minimum
/// width direction to the first coordinate and keep the map whose image
/// has the largest certified inscribed ball.  The target radius is the
/// conservative form `width / (n^4 sqrt(n))` of the guarantee
/// `width / (n^2 Flt(n))`; the search measures it rather than promising
/// it, and reports whether the round budget ran out.
pub fn unimodular_enlarge(k: &Polytope, budget: usize) -> Result<EnlargeOutcome> {
    let n = k.ambient_dim();
    match k.dim()? {
        Some(dim) if dim == n => (),
        _ => return Err(Error::DegenerateInput("enlargement needs a full-dimensional body".into())),
    }
    let b = width_search_bound(n);
    let base_width = lattice_width(k, b)?;
    let nr = rat(n as i64);
    let n4 = crate::scalar::powi(&nr, 4);
    let target_radius = &base_width.width / (&n4 * sqrt_lower(&nr));
    let (_, r0) = chebyshev_ball(k)?;
    let mut best_map = UnimodularMap::identity(n);
    let mut best_image = k.clone();
    let mut best_radius = r0;
    let mut current_map = UnimodularMap::identity(n);
    let mut current_image = k.clone();
    let mut rounds = 0usize;
    let mut budget_exhausted = false;
    loop {
        let w = lattice_width(&current_image, b)?;
        let dir = primitive(&w.direction);
        let axis_aligned =
            dir.iter().filter(|&&c| c != 0).count() == 1 && dir.iter().any(|&c| c.abs() == 1);
        if axis_aligned {
            break;
        }
        if rounds == budget {
            budget_exhausted = true;
            break;
        }
        rounds += 1;
        let step = completion_from_direction(&dir)?;
        current_map = step.compose(&current_map);
        current_image = step.apply(&current_image)?;
        let (_, r) = chebyshev_ball(&current_image)?;
        if r > best_radius {
            best_radius = r;
            best_map = current_map.clone();
            best_image = current_image.clone();
        }
    }
    let met_target = best_radius >= target_radius;
    Ok(EnlargeOutcome {
        map: best_map,
        image: best_image,
        achieved_radius: best_radius,
        target_radius,
        met_target,
        budget_exhausted,
    })
}

/// Apply a unimodular map to the lattice block and the identity to the
/// continuous block, preserving every fiber volume.
pub fn lift_and_apply(m: &MixedIntegerBody, l: &UnimodularMap) -> Result<MixedIntegerBody> {
    let n = m.n();
    if l.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: l.dim() });
    }
    let ambient = n + m.d();
    let verts = m.body().vertices()?;
    let mapped: Vec<Point> = verts
        .iter()
        .map(|v| {
            let mut image = l.apply_point(&v[..n]);
            image.extend(v[n..].iter().cloned());
            image
        })
        .collect();
    MixedIntegerBody::new(n, m.d(), Polytope::from_vrep(ambient, mapped)?)
}
