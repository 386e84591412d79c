//! Exact convex hulls via beneath-beyond insertion.
//!
//! Points are inserted in lexicographic order onto an initial full-dimensional
//! simplex; every strictly visible boundary facet spawns one triangulation
//! cell, so the accumulated cells form a placing triangulation of the hull.
//! Point sets that are not full-dimensional are handled through an exact
//! affine chart: the hull runs in local coordinates and facets are pulled
//! back, with the affine hull pinned by equality halfspace pairs.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, sub, Point};
use crate::polytope::Halfspace;
use crate::scalar::Rat;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Affine chart for a lower-dimensional hull.
#[derive(Debug, Clone)]
pub struct Chart {
    /// Base point of the affine hull.
    pub origin: Point,
    /// Spanning directions (ambient vectors), one per intrinsic dimension.
    pub basis: Vec<Point>,
    /// q x ambient matrix mapping y to local coordinates of y - origin.
    pub to_local: Vec<Point>,
    /// Gram determinant det(B^T B); the chart-to-intrinsic volume factor is
    /// its square root.
    pub gram_det: Rat,
}

impl Chart {
    pub fn local(&self, y: &[Rat]) -> Point {
        let shifted = sub(y, &self.origin);
        self.to_local.iter().map(|row| dot(row, &shifted)).collect()
    }
}

/// Hull of a point set: facets, placing triangulation, extreme points.
#[derive(Debug, Clone)]
pub struct HullData {
    /// Intrinsic dimension of the hull.
    pub dim: usize,
    /// Irredundant inward facet halfspaces; for lower-dimensional hulls this
    /// includes equality pairs pinning the affine hull.
    pub facets: Vec<Halfspace>,
    /// Placing triangulation; each cell lists dim+1 indices into the input.
    pub cells: Vec<Vec<usize>>,
    /// Indices of extreme input points (first occurrence per location).
    pub extreme: Vec<usize>,
    /// Present when the hull is not full-dimensional (and dim > 0).
    pub chart: Option<Chart>,
}

/// Boundary facet during insertion: outward halfspace n.y <= c.
struct BFacet {
    verts: Vec<usize>,
    normal: Point,
    offset: Rat,
}

/// Hyperplane through q affinely independent points of R^q.
fn facet_plane(pts: &[Point], verts: &[usize]) -> (Point, Rat) {
    let p0 = &pts[verts[0]];
    let diffs: Vec<Point> = verts[1..].iter().map(|&i| sub(&pts[i], p0)).collect();
    let ns = linalg::null_space(&diffs, p0.len());
    debug_assert_eq!(ns.len(), 1, "facet points must span a hyperplane");
    let n = ns.into_iter().next().unwrap();
    let c = dot(&n, p0);
    (n, c)
}

fn oriented_outward(pts: &[Point], verts: &[usize], inside: &Point) -> BFacet {
    let (mut n, mut c) = facet_plane(pts, verts);
    let side = dot(&n, inside) - &c;
    debug_assert!(!side.is_zero(), "orientation anchor lies on a facet plane");
    if side.is_positive() {
        n = n.iter().map(|x| -x).collect();
        c = -c;
    }
    BFacet { verts: verts.to_vec(), normal: n, offset: c }
}

/// Beneath-beyond hull of affinely spanning, deduplicated points in R^q.
/// Returns (boundary facets, cells, extreme indices into `pts`).
fn hull_full_dim(pts: &[Point], q: usize) -> (Vec<BFacet>, Vec<Vec<usize>>, Vec<usize>) {
    debug_assert!(pts.len() >= q + 1);
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[a].cmp(&pts[b]));

    // Greedy affinely independent seed simplex in insertion order.
    let mut seed: Vec<usize> = vec![order[0]];
    let mut diffs: Vec<Point> = Vec::new();
    let mut rest: Vec<usize> = Vec::new();
    for &i in &order[1..] {
        if seed.len() == q + 1 {
            rest.push(i);
            continue;
        }
        let d = sub(&pts[i], &pts[seed[0]]);
        let mut trial = diffs.clone();
        trial.push(d.clone());
        if linalg::rank(&trial) == diffs.len() + 1 {
            diffs.push(d);
            seed.push(i);
        } else {
            rest.push(i);
        }
    }
    assert_eq!(seed.len(), q + 1, "points do not span the ambient space");

    let mut anchor = vec![Rat::zero(); q];
    for &i in &seed {
        anchor = linalg::add(&anchor, &pts[i]);
    }
    let scale = Rat::new(1.into(), (q as i64 + 1).into());
    anchor = linalg::smul(&scale, &anchor);

    let mut cells: Vec<Vec<usize>> = vec![seed.clone()];
    let mut boundary: Vec<BFacet> = Vec::new();
    for drop in 0..=q {
        let verts: Vec<usize> = seed
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != drop)
            .map(|(_, &i)| i)
            .collect();
        boundary.push(oriented_outward(pts, &verts, &anchor));
    }

    for &v in &rest {
        let side: Vec<Rat> = boundary
            .iter()
            .map(|f| dot(&f.normal, &pts[v]) - &f.offset)
            .collect();
        let visible: Vec<usize> = (0..boundary.len())
            .filter(|&i| side[i].is_positive())
            .collect();
        if visible.is_empty() {
            continue; // already inside (or on) the current hull
        }
        // Horizon ridges appear exactly once among visible facets.
        let mut ridge_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for &fi in &visible {
            let fv = &boundary[fi].verts;
            for skip in 0..fv.len() {
                let mut r: Vec<usize> = fv
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, &i)| i)
                    .collect();
                r.sort_unstable();
                *ridge_count.entry(r).or_insert(0) += 1;
            }
        }
        for &fi in &visible {
            let mut cell = boundary[fi].verts.clone();
            cell.push(v);
            cells.push(cell);
        }
        let visible_set: std::collections::BTreeSet<usize> = visible.iter().copied().collect();
        let mut kept: Vec<BFacet> = Vec::new();
        for (i, f) in boundary.drain(..).enumerate() {
            if !visible_set.contains(&i) {
                kept.push(f);
            }
        }
        for (ridge, count) in ridge_count {
            if count == 1 {
                let mut verts = ridge;
                verts.push(v);
                kept.push(oriented_outward(pts, &verts, &anchor));
            }
        }
        boundary = kept;
    }

    // Extreme points: tight on distinct hyperplanes whose normals span R^q.
    let mut planes: Vec<(Point, Rat)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for f in &boundary {
        let h = Halfspace { normal: f.normal.clone(), offset: f.offset.clone() }.canonical();
        let key = format!(
            "{}|{}",
            h.normal.iter().map(crate::scalar::format_rat).collect::<Vec<_>>().join(","),
            crate::scalar::format_rat(&h.offset)
        );
        if seen.insert(key) {
            planes.push((h.normal, h.offset));
        }
    }
    let mut extreme = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let tight: Vec<Point> = planes
            .iter()
            .filter(|(n, c)| (dot(n, p) - c).is_zero())
            .map(|(n, _)| n.clone())
            .collect();
        if tight.len() >= q && linalg::rank(&tight) == q {
            extreme.push(i);
        }
    }

    (boundary, cells, extreme)
}

/// Exact convex hull of arbitrary rational points (duplicates allowed).
pub fn convex_hull(points: &[Point]) -> Result<HullData> {
    if points.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let ambient = points[0].len();
    for p in points {
        if p.len() != ambient {
            return Err(Error::DimensionMismatch { expected: ambient, got: p.len() });
        }
    }

    // Deduplicate, remembering the first input index per location.
    let mut first: BTreeMap<&Point, usize> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        first.entry(p).or_insert(i);
    }
    let mut uniq: Vec<usize> = first.values().copied().collect();
    uniq.sort_unstable();
    let upts: Vec<Point> = uniq.iter().map(|&i| points[i].clone()).collect();

    // Affine basis of the point set.
    let origin = upts[0].clone();
    let mut basis: Vec<Point> = Vec::new();
    for p in &upts[1..] {
        let d = sub(p, &origin);
        let mut trial = basis.clone();
        trial.push(d.clone());
        if linalg::rank(&trial) == basis.len() + 1 {
            basis.push(d);
        }
    }
    let q = basis.len();

    if q == 0 {
        let mut facets = Vec::new();
        for c in 0..ambient {
            let mut n = vec![Rat::zero(); ambient];
            n[c] = Rat::one();
            facets.push(Halfspace::new(n.clone(), origin[c].clone())?);
            facets.push(Halfspace::new(n.iter().map(|x| -x).collect(), -&origin[c])?);
        }
        return Ok(HullData {
            dim: 0,
            facets,
            cells: vec![vec![uniq[0]]],
            extreme: vec![uniq[0]],
            chart: None,
        });
    }

    if q == ambient {
        let (bd, cells, extreme) = hull_full_dim(&upts, q);
        let facets: Vec<Halfspace> = bd
            .into_iter()
            .map(|f| {
                Halfspace {
                    normal: f.normal.iter().map(|x| -x).collect(),
                    offset: -f.offset,
                }
                .canonical()
            })
            .collect();
        return Ok(HullData {
            dim: q,
            facets: crate::polytope::dedup_halfspaces(&facets),
            cells: cells.into_iter().map(|c| remap(&c, &uniq)).collect(),
            extreme: remap(&extreme, &uniq),
            chart: None,
        });
    }

    // Lower-dimensional: build the chart local(y) = (B^T B)^{-1} B^T (y - origin).
    let mut gram = vec![vec![Rat::zero(); q]; q];
    for i in 0..q {
        for j in 0..q {
            gram[i][j] = dot(&basis[i], &basis[j]);
        }
    }
    let gram_det = linalg::det(&gram);
    let gram_inv = linalg::invert(&gram).expect("Gram matrix of a basis is invertible");
    // to_local = gram_inv * B^T  (q x ambient).
    let mut to_local = vec![vec![Rat::zero(); ambient]; q];
    for i in 0..q {
        for c in 0..ambient {
            let mut acc = Rat::zero();
            for j in 0..q {
                acc += &gram_inv[i][j] * &basis[j][c];
            }
            to_local[i][c] = acc;
        }
    }
    let chart = Chart { origin: origin.clone(), basis: basis.clone(), to_local, gram_det };

    let locals: Vec<Point> = upts.iter().map(|p| chart.local(p)).collect();
    let (bd, cells, extreme) = hull_full_dim(&locals, q);

    // Pull local facets back: u = B (B^T B)^{-1} n satisfies u.(y - origin) = n.local(y).
    let mut facets: Vec<Halfspace> = Vec::new();
    for f in &bd {
        let mut u = vec![Rat::zero(); ambient];
        for c in 0..ambient {
            let mut acc = Rat::zero();
            for i in 0..q {
                acc += &chart.to_local[i][c] * &f.normal[i];
            }
            u[c] = acc;
        }
        // Local facet is outward (n.x <= c): inward form is -u.y >= -c - u.origin.
        let off_in = -&f.offset - dot(&u, &origin);
        let inward: Point = u.iter().map(|x| -x).collect();
        facets.push(Halfspace::new(inward, off_in)?.canonical());
    }
    // Pin the affine hull with equality pairs.
    for g in linalg::null_space(&basis, ambient) {
        let c = dot(&g, &origin);
        facets.push(Halfspace::new(g.clone(), c.clone())?.canonical());
        facets.push(Halfspace::new(g.iter().map(|x| -x).collect(), -c)?.canonical());
    }

    Ok(HullData {
        dim: q,
        facets: crate::polytope::dedup_halfspaces(&facets),
        cells: cells.into_iter().map(|c| remap(&c, &uniq)).collect(),
        extreme: remap(&extreme, &uniq),
        chart: Some(chart),
    })
}

fn remap(idx: &[usize], uniq: &[usize]) -> Vec<usize> {
    idx.iter().map(|&i| uniq[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn pt(coords: &[i64]) -> Point {
        coords.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn square_hull_has_four_facets_and_corners() {
        let pts = vec![
            pt(&[0, 0]),
            pt(&[2, 0]),
            pt(&[0, 2]),
            pt(&[2, 2]),
            pt(&[1, 1]),  // interior
            pt(&[1, 0]),  // edge midpoint
            pt(&[2, 2]),  // duplicate corner
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.dim, 2);
        assert_eq!(h.facets.len(), 4);
        let mut ext = h.extreme.clone();
        ext.sort_unstable();
        assert_eq!(ext, vec![0, 1, 2, 3]);
        for f in &h.facets {
            for &i in &[0usize, 1, 2, 3, 4, 5] {
                assert!(f.contains(&pts[i]), "facet must contain all input points");
            }
        }
    }

    #[test]
    fn cells_partition_the_square() {
        let pts = vec![pt(&[0, 0]), pt(&[3, 0]), pt(&[0, 3]), pt(&[3, 3]), pt(&[1, 1])];
        let h = convex_hull(&pts).unwrap();
        let mut total = Rat::zero();
        for cell in &h.cells {
            let d0 = &pts[cell[0]];
            let rows: Vec<Point> = cell[1..].iter().map(|&i| sub(&pts[i], d0)).collect();
            total += linalg::abs_det(&rows);
        }
        // Sum of parallelotope volumes = 2! * area = 18.
        assert_eq!(total, rat(18));
    }

    #[test]
    fn collinear_points_get_a_chart() {
        let pts = vec![pt(&[0, 0, 0]), pt(&[1, 1, 0]), pt(&[3, 3, 0]), pt(&[2, 2, 0])];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.dim, 1);
        let mut ext = h.extreme.clone();
        ext.sort_unstable();
        assert_eq!(ext, vec![0, 2]);
        let chart = h.chart.as_ref().unwrap();
        assert_eq!(chart.gram_det, rat(2));
        // Facet system contains every input point and excludes off-line points.
        for p in &pts {
            assert!(h.facets.iter().all(|f| f.contains(p)));
        }
        let off = pt(&[1, 2, 0]);
        assert!(h.facets.iter().any(|f| !f.contains(&off)));
        let beyond = pt(&[4, 4, 0]);
        assert!(h.facets.iter().any(|f| !f.contains(&beyond)));
    }

    #[test]
    fn tetrahedron_facets_and_cells() {
        let pts = vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.dim, 3);
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.cells.len(), 1);
        assert_eq!(h.extreme.len(), 4);
    }

    #[test]
    fn fractional_coordinates_stay_exact() {
        let pts = vec![
            vec![ratio(1, 3), ratio(1, 7)],
            vec![ratio(22, 7), ratio(1, 7)],
            vec![ratio(1, 3), ratio(8, 7)],
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.dim, 2);
        assert_eq!(h.cells.len(), 1);
        let cell = &h.cells[0];
        let rows: Vec<Point> = cell[1..]
            .iter()
            .map(|&i| sub(&pts[i], &pts[cell[0]]))
            .collect();
        // (22/7 - 1/3) * (8/7 - 1/7) = 59/21.
        assert_eq!(linalg::abs_det(&rows), ratio(59, 21));
    }

    #[test]
    fn random_point_clouds_admit_valid_hulls() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for round in 0..12 {
            let dim = 2 + (round % 3);
            let npts = 6 + (round % 5);
            let pts: Vec<Point> = (0..npts)
                .map(|_| (0..dim).map(|_| ratio(rng.gen_range(-8..=8), 4)).collect())
                .collect();
            let h = match convex_hull(&pts) {
                Ok(h) => h,
                Err(_) => continue,
            };
            // Every input point satisfies every facet.
            for p in &pts {
                for f in &h.facets {
                    assert!(f.contains(p), "round {round}: facet cut off an input point");
                }
            }
            // Each facet is tight for at least `dim` intrinsic-dim points.
            if h.dim == dim {
                for f in &h.facets {
                    let tight = pts.iter().filter(|p| f.eval(p).is_zero()).count();
                    assert!(tight >= dim, "round {round}: loose facet");
                }
                // Cell volumes are positive and cells have full arity.
                for cell in &h.cells {
                    assert_eq!(cell.len(), dim + 1);
                    let rows: Vec<Point> = cell[1..]
                        .iter()
                        .map(|&i| sub(&pts[i], &pts[cell[0]]))
                        .collect();
                    assert!(linalg::abs_det(&rows).is_positive());
                }
            }
            // Extreme points are exactly those not in the hull of the others
            // (duplicated locations are skipped: removal of one copy leaves
            // the other behind).
            for (i, p) in pts.iter().enumerate() {
                if pts.iter().enumerate().any(|(j, q)| j != i && q == p) {
                    continue;
                }
                let others: Vec<Point> = pts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, p)| p.clone())
                    .collect();
                let poly = crate::polytope::Polytope::from_vrep(dim, others).unwrap();
                let inside = poly.contains(p).unwrap();
                let is_ext = h.extreme.contains(&i);
                assert_eq!(!inside, is_ext, "round {round}: extreme mismatch at {i}");
            }
        }
    }

    #[test]
    fn single_point_hull() {
        let pts = vec![vec![ratio(3, 2), rat(-1)], vec![ratio(3, 2), rat(-1)]];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.dim, 0);
        assert_eq!(h.extreme, vec![0]);
        assert_eq!(h.cells, vec![vec![0]]);
        assert!(h.facets.iter().all(|f| f.contains(&pts[0])));
        assert!(h.facets.iter().any(|f| !f.contains(&[rat(0), rat(0)])));
    }
}
