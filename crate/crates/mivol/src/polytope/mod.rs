//! Rational polytopes with dual representations.
//!
//! A `Polytope` carries an H-representation (intersection of closed
//! halfspaces `normal . y >= offset`), a V-representation (convex hull of
//! points), or both.  Conversions are exact: `vertex_enumeration` runs a
//! double-description pass over the homogenization cone, `facet_enumeration`
//! a beneath-beyond hull.  Empty and single-point polytopes are ordinary
//! values; unboundedness is an error surfaced by enumeration.
//!
//! Budgets: ambient dimension is capped at 8 and H-representations at 112
//! halfspaces.  Everything in this crate is desk scale; the caps exist so a
//! malformed input fails fast instead of grinding.

pub mod dd;
pub mod hull;
pub mod json;
pub mod measure;
pub mod transform;

use crate::error::{Error, Result};
use crate::linalg::{dot, Point};
use crate::lp;
use crate::scalar::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Hard cap on ambient dimension.
pub const MAX_AMBIENT_DIM: usize = 8;
/// Hard cap on stored halfspaces per polytope.
pub const MAX_FACETS: usize = 112;

/// Closed halfspace { y : normal . y >= offset }.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Point,
    pub offset: Rat,
}

impl Halfspace {
    pub fn new(normal: Point, offset: Rat) -> Result<Self> {
        if normal.iter().all(Rat::is_zero) {
            return Err(Error::ZeroDirection);
        }
        Ok(Halfspace { normal, offset })
    }

    /// Halfspace { y : normal . (y - anchor) >= 0 }.
    pub fn from_anchor(normal: Point, anchor: &[Rat]) -> Result<Self> {
        let offset = dot(&normal, anchor);
        Halfspace::new(normal, offset)
    }

    /// Signed slack of a point: >= 0 inside.
    pub fn eval(&self, p: &[Rat]) -> Rat {
        dot(&self.normal, p) - &self.offset
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        !self.eval(p).is_negative()
    }

    /// The closed complement halfspace (shared boundary).
    pub fn complement(&self) -> Halfspace {
        Halfspace {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: -&self.offset,
        }
    }

    /// Scale so the normal is a primitive integer vector, preserving
    /// orientation.  Two halfspaces describe the same set iff their
    /// canonical forms are equal.
    pub fn canonical(&self) -> Halfspace {
        let mut lcm = BigInt::one();
        for x in &self.normal {
            lcm = lcm.lcm(x.denom());
        }
        let ints: Vec<BigInt> = self
            .normal
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for v in &ints {
            gcd = gcd.gcd(v);
        }
        debug_assert!(!gcd.is_zero());
        let scale = Rat::new(lcm, gcd); // positive: lcm > 0, gcd > 0
        Halfspace {
            normal: self.normal.iter().map(|x| x * &scale).collect(),
            offset: &self.offset * &scale,
        }
    }
}

/// A q-simplex given by q+1 affinely independent points.
#[derive(Debug, Clone)]
pub struct Simplex {
    pub vertices: Vec<Point>,
}

/// Triangulation of a polytope into simplices of its intrinsic dimension.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub dim: usize,
    pub cells: Vec<Simplex>,
}

/// Bounded rational polytope in R^ambient.
#[derive(Debug, Clone)]
pub struct Polytope {
    ambient: usize,
    hrep: Option<Vec<Halfspace>>,
    vrep: Option<Vec<Point>>,
}

fn check_ambient(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_AMBIENT_DIM {
        return Err(Error::DimensionBudget(dim, MAX_AMBIENT_DIM));
    }
    Ok(())
}

impl Polytope {
    pub fn from_hrep(ambient: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        check_ambient(ambient)?;
        if halfspaces.len() > MAX_FACETS {
            return Err(Error::FacetBudget(halfspaces.len(), MAX_FACETS));
        }
        for h in &halfspaces {
            if h.normal.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, got: h.normal.len() });
            }
        }
        Ok(Polytope { ambient, hrep: Some(halfspaces), vrep: None })
    }

    pub fn from_vrep(ambient: usize, points: Vec<Point>) -> Result<Self> {
        check_ambient(ambient)?;
        for p in &points {
            if p.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, got: p.len() });
            }
        }
        Ok(Polytope { ambient, hrep: None, vrep: Some(points) })
    }

    pub fn from_both(ambient: usize, halfspaces: Vec<Halfspace>, points: Vec<Point>) -> Result<Self> {
        let mut p = Polytope::from_hrep(ambient, halfspaces)?;
        p.vrep = Some(points);
        Ok(p)
    }

    /// The canonical empty polytope in R^ambient.
    pub fn empty(ambient: usize) -> Self {
        Polytope { ambient, hrep: None, vrep: Some(vec![]) }
    }

    /// Axis-aligned box given by per-coordinate bounds (H-representation).
    pub fn axis_box(lo: &[Rat], hi: &[Rat]) -> Result<Self> {
        let p = lo.len();
        if hi.len() != p {
            return Err(Error::DimensionMismatch { expected: p, got: hi.len() });
        }
        let mut hs = Vec::with_capacity(2 * p);
        for i in 0..p {
            if lo[i] > hi[i] {
                return Err(Error::BadParams(format!("box bound {i} has lo > hi")));
            }
            let mut up = vec![Rat::zero(); p];
            up[i] = Rat::one();
            hs.push(Halfspace::new(up.clone(), lo[i].clone())?);
            let down: Point = up.iter().map(|x| -x).collect();
            hs.push(Halfspace::new(down, -&hi[i])?);
        }
        Polytope::from_hrep(p, hs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn hrep(&self) -> Option<&[Halfspace]> {
        self.hrep.as_deref()
    }

    pub fn vrep(&self) -> Option<&[Point]> {
        self.vrep.as_deref()
    }

    pub fn is_empty(&self) -> Result<bool> {
        if let Some(v) = &self.vrep {
            return Ok(v.is_empty());
        }
        let hs = self.hrep.as_ref().expect("polytope with no representation");
        let cons: Vec<(Point, Rat)> = hs
            .iter()
            .map(|h| (h.normal.iter().map(|x| -x).collect(), -&h.offset))
            .collect();
        Ok(!lp::feasible(&cons, self.ambient))
    }

    /// Vertices, computing them from the H-representation when absent.
    pub fn vertices(&self) -> Result<Vec<Point>> {
        if let Some(v) = &self.vrep {
            return Ok(v.clone());
        }
        let hs = self.hrep.as_ref().expect("polytope with no representation");
        let res = dd::vertex_enumeration(hs, self.ambient)?;
        Ok(res.vertices)
    }

    /// Halfspaces, computing them from the V-representation when absent.
    pub fn halfspaces(&self) -> Result<Vec<Halfspace>> {
        if let Some(h) = &self.hrep {
            return Ok(h.clone());
        }
        let v = self.vrep.as_ref().expect("polytope with no representation");
        if v.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        let hull = hull::convex_hull(v)?;
        Ok(hull.facets)
    }

    /// Exact membership test.
    pub fn contains(&self, p: &[Rat]) -> Result<bool> {
        if p.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: p.len() });
        }
        if let Some(hs) = &self.hrep {
            return Ok(hs.iter().all(|h| h.contains(p)));
        }
        let verts = self.vrep.as_ref().unwrap();
        if verts.is_empty() {
            return Ok(false);
        }
        // x in conv(V): lambda >= 0, sum lambda = 1, V^T lambda = x.
        let m = verts.len();
        let mut cons: Vec<(Point, Rat)> = Vec::new();
        for c in 0..self.ambient {
            let row: Point = verts.iter().map(|v| v[c].clone()).collect();
            cons.push((row.clone(), p[c].clone()));
            cons.push((row.iter().map(|x| -x).collect(), -&p[c]));
        }
        let ones = vec![Rat::one(); m];
        cons.push((ones.clone(), Rat::one()));
        cons.push((ones.iter().map(|x| -x).collect(), -Rat::one()));
        for i in 0..m {
            let mut row = vec![Rat::zero(); m];
            row[i] = -Rat::one();
            cons.push((row, Rat::zero()));
        }
        Ok(lp::feasible(&cons, m))
    }

    /// Intrinsic dimension; None for the empty polytope.
    pub fn dim(&self) -> Result<Option<usize>> {
        let verts = self.vertices()?;
        if verts.is_empty() {
            return Ok(None);
        }
        let diffs: Vec<Point> = verts[1..]
            .iter()
            .map(|v| crate::linalg::sub(v, &verts[0]))
            .collect();
        Ok(Some(crate::linalg::rank(&diffs)))
    }
}

/// Fill in the V-representation from the H-representation.
///
/// Errors with `EmptyPolytope` or `UnboundedPolytope` when the description
/// is infeasible or has a recession direction.
pub fn vertex_enumeration(p: &Polytope) -> Result<Polytope> {
    if p.vrep.is_some() {
        return Ok(p.clone());
    }
    let hs = p.hrep.as_ref().expect("polytope with no representation");
    let res = dd::vertex_enumeration(hs, p.ambient)?;
    let mut out = p.clone();
    out.vrep = Some(res.vertices);
    Ok(out)
}

/// Fill in an irredundant H-representation from the V-representation.
pub fn facet_enumeration(p: &Polytope) -> Result<Polytope> {
    if p.hrep.is_some() {
        return Ok(p.clone());
    }
    let verts = p.vrep.as_ref().expect("polytope with no representation");
    if verts.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let hull = hull::convex_hull(verts)?;
    if hull.dim == 0 {
        return Err(Error::DegenerateInput("all points coincide".into()));
    }
    let mut out = p.clone();
    out.hrep = Some(hull.facets);
    out.vrep = Some(hull.extreme.iter().map(|&i| verts[i].clone()).collect());
    Ok(out)
}

/// Both representations present (computing whichever is missing).
pub fn completed(p: &Polytope) -> Result<Polytope> {
    let with_v = vertex_enumeration(p)?;
    if with_v.hrep.is_some() {
        return Ok(with_v);
    }
    facet_enumeration(&with_v)
}

/// Deduplicate halfspaces by canonical form, preserving order.
pub fn dedup_halfspaces(hs: &[Halfspace]) -> Vec<Halfspace> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for h in hs {
        let c = h.canonical();
        let key = (
            c.normal.iter().map(crate::scalar::format_rat).collect::<Vec<_>>().join(","),
            crate::scalar::format_rat(&c.offset),
        );
        if seen.insert(key) {
            out.push(h.clone());
        }
    }
    out
}

pub use measure::{centroid, triangulate, volume};
pub use transform::{affine_slice, intersect_halfspace, project, scale, translate};
