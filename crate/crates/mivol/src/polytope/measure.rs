//! Exact volume, centroid, and triangulation.
//!
//! Volume is intrinsic: a polytope of dimension q inside a higher-dimensional
//! space gets its q-dimensional measure.  Full-dimensional and axis-friendly
//! embeddings stay rational; a genuinely sloped embedding whose Gram
//! determinant is not a perfect rational square has irrational measure and
//! reports `IrrationalVolume`.  Points have measure 1 by the counting
//! convention, so slice sums over lattice fibers degrade gracefully.

use crate::error::{Error, Result};
use crate::linalg::{self, sub, Point};
use crate::polytope::hull::{convex_hull, HullData};
use crate::polytope::{Polytope, Simplex, Triangulation};
use crate::scalar::{sqrt_exact, Rat};
use num_traits::{One, Zero};

fn factorial(q: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 2..=q {
        acc *= Rat::from_integer((i as i64).into());
    }
    acc
}

fn cell_paravolume(points: &[Point], cell: &[usize], chart: Option<&super::hull::Chart>) -> Rat {
    let coords: Vec<Point> = match chart {
        Some(ch) => cell.iter().map(|&i| ch.local(&points[i])).collect(),
        None => cell.iter().map(|&i| points[i].clone()).collect(),
    };
    let rows: Vec<Point> = coords[1..].iter().map(|v| sub(v, &coords[0])).collect();
    linalg::abs_det(&rows)
}

fn hull_volume(points: &[Point], hull: &HullData) -> Result<Rat> {
    if hull.dim == 0 {
        return Ok(Rat::one());
    }
    let mut chartvol = Rat::zero();
    for cell in &hull.cells {
        chartvol += cell_paravolume(points, cell, hull.chart.as_ref());
    }
    chartvol /= factorial(hull.dim);
    match &hull.chart {
        None => Ok(chartvol),
        Some(ch) => match sqrt_exact(&ch.gram_det) {
            Some(s) => Ok(chartvol * s),
            None => Err(Error::IrrationalVolume),
        },
    }
}

/// dim-dimensional measure of the hull of a point set: exact volume when the
/// hull is full-dimensional in R^dim, zero otherwise.
pub fn volume_in_dim(points: &[Point], dim: usize) -> Result<Rat> {
    if points.is_empty() {
        return Ok(Rat::zero());
    }
    let hull = convex_hull(points)?;
    if hull.dim < dim {
        return Ok(Rat::zero());
    }
    hull_volume(points, &hull)
}

/// Intrinsic volume of the polytope (0-dimensional polytopes measure 1).
pub fn volume(p: &Polytope) -> Result<Rat> {
    let verts = p.vertices()?;
    if verts.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let hull = convex_hull(&verts)?;
    hull_volume(&verts, &hull)
}

/// Exact centroid.  Always rational: the chart scale factor cancels.
pub fn centroid(p: &Polytope) -> Result<Point> {
    let verts = p.vertices()?;
    if verts.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let hull = convex_hull(&verts)?;
    if hull.dim == 0 {
        return Ok(verts[hull.extreme[0]].clone());
    }
    let ambient = p.ambient_dim();
    let mut weighted = vec![Rat::zero(); ambient];
    let mut total = Rat::zero();
    let arity = Rat::from_integer((hull.dim as i64 + 1).into());
    for cell in &hull.cells {
        let w = cell_paravolume(&verts, cell, hull.chart.as_ref());
        if w.is_zero() {
            continue;
        }
        let mut c = vec![Rat::zero(); ambient];
        for &i in cell {
            c = linalg::add(&c, &verts[i]);
        }
        for (acc, x) in weighted.iter_mut().zip(&c) {
            *acc += &w * x / &arity;
        }
        total += w;
    }
    debug_assert!(!total.is_zero());
    Ok(weighted.into_iter().map(|x| x / &total).collect())
}

/// Placing triangulation into simplices of the intrinsic dimension.
pub fn triangulate(p: &Polytope) -> Result<Triangulation> {
    let verts = p.vertices()?;
    if verts.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let hull = convex_hull(&verts)?;
    let cells = hull
        .cells
        .iter()
        .filter(|cell| {
            hull.dim == 0 || !cell_paravolume(&verts, cell, hull.chart.as_ref()).is_zero()
        })
        .map(|cell| Simplex { vertices: cell.iter().map(|&i| verts[i].clone()).collect() })
        .collect();
    Ok(Triangulation { dim: hull.dim, cells })
}
