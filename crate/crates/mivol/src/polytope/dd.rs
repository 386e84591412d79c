//! Exact vertex enumeration by double description.
//!
//! The polytope {y : N y >= c} is homogenized to the cone {(y, t) :
//! N y - c t >= 0, t-slab rows from a bounding box}.  An LP probe first
//! certifies feasibility and boundedness and yields the box; the box rows
//! make the cone pointed, so the classical double-description sweep with the
//! combinatorial adjacency test enumerates its extreme rays exactly.  Rays
//! are kept as primitive integer vectors and tight-row sets as u128 bitsets.

use crate::error::{Error, Result};
use crate::linalg::Point;
use crate::lp::{self, LpResult};
use crate::polytope::Halfspace;
use crate::scalar::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Maximum homogenized rows a double-description run will accept.
const MAX_ROWS: usize = 128;

/// Vertices plus, per vertex, the indices of input halfspaces tight at it.
pub struct VertexEnum {
    pub vertices: Vec<Point>,
    pub tight: Vec<Vec<usize>>,
}

/// Integer ray in the homogenization of R^dim.
struct Ray {
    coords: Vec<BigInt>,
    tight: u128,
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

/// Clear denominators of a rational vector into a primitive integer vector.
fn to_integer_ray(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    primitive(v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
}

fn row_dot(row: &[Rat], ray: &[BigInt]) -> Rat {
    let mut acc = Rat::zero();
    for (a, b) in row.iter().zip(ray) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * Rat::from(b.clone());
        }
    }
    acc
}

/// Enumerate the vertices of {y : h.normal . y >= h.offset for all h}.
pub fn vertex_enumeration(halfspaces: &[Halfspace], dim: usize) -> Result<VertexEnum> {
    for h in halfspaces {
        if h.normal.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: h.normal.len() });
        }
    }
    let m = halfspaces.len();
    if m + 2 * dim > MAX_ROWS {
        return Err(Error::FacetBudget(m, MAX_ROWS - 2 * dim));
    }

    // LP probe: feasibility, boundedness, and a bounding box.
    let cons: Vec<(Point, Rat)> = halfspaces
        .iter()
        .map(|h| (h.normal.iter().map(|x| -x).collect(), -&h.offset))
        .collect();
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut obj = vec![Rat::zero(); dim];
        obj[i] = Rat::one();
        match lp::maximize(&obj, &cons) {
            LpResult::Optimal { value, .. } => hi.push(value),
            LpResult::Infeasible => return Err(Error::EmptyPolytope),
            LpResult::Unbounded => return Err(Error::UnboundedPolytope),
        }
        obj[i] = -Rat::one();
        match lp::maximize(&obj, &cons) {
            LpResult::Optimal { value, .. } => lo.push(-value),
            LpResult::Infeasible => return Err(Error::EmptyPolytope),
            LpResult::Unbounded => return Err(Error::UnboundedPolytope),
        }
    }
    for i in 0..dim {
        lo[i] -= Rat::one();
        hi[i] += Rat::one();
    }

    // Homogenized rows (normal | -offset); box rows first, then inputs.
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(2 * dim + m);
    for i in 0..dim {
        let mut up = vec![Rat::zero(); dim + 1];
        up[i] = Rat::one();
        up[dim] = -&lo[i];
        rows.push(up);
        let mut down = vec![Rat::zero(); dim + 1];
        down[i] = -Rat::one();
        down[dim] = hi[i].clone();
        rows.push(down);
    }
    for h in halfspaces {
        let mut r: Vec<Rat> = h.normal.clone();
        r.push(-&h.offset);
        rows.push(r);
    }
    let nbox = 2 * dim;

    // Initial rays: the widened box corners, lifted at t = 1.
    let mut rays: Vec<Ray> = Vec::new();
    for mask in 0u32..(1 << dim) {
        let mut corner: Vec<Rat> = (0..dim)
            .map(|i| if mask >> i & 1 == 1 { hi[i].clone() } else { lo[i].clone() })
            .collect();
        corner.push(Rat::one());
        let coords = to_integer_ray(&corner);
        let mut tight = 0u128;
        for (k, row) in rows[..nbox].iter().enumerate() {
            if row_dot(row, &coords).is_zero() {
                tight |= 1 << k;
            }
        }
        rays.push(Ray { coords, tight });
    }

    for k in nbox..rows.len() {
        let row = &rows[k];
        let vals: Vec<Rat> = rays.iter().map(|r| row_dot(row, &r.coords)).collect();
        let any_neg = vals.iter().any(|v| v.is_negative());
        if !any_neg {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight |= 1 << k;
                }
            }
            continue;
        }
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if plus.is_empty() && vals.iter().all(|v| v.is_negative()) {
            return Err(Error::EmptyPolytope);
        }

        let mut new_rays: Vec<Ray> = Vec::new();
        for &i in &plus {
            for &j in &minus {
                let t = rays[i].tight & rays[j].tight;
                if (t.count_ones() as usize) + 2 < dim + 1 {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(l, r)| {
                    l == i || l == j || (t & r.tight) != t
                });
                if !adjacent {
                    continue;
                }
                // s_i * ray_j - s_j * ray_i with s_i > 0 > s_j.
                let si = &vals[i];
                let sj = &vals[j];
                let combo: Vec<Rat> = rays[j]
                    .coords
                    .iter()
                    .zip(&rays[i].coords)
                    .map(|(cj, ci)| si * Rat::from(cj.clone()) - sj * Rat::from(ci.clone()))
                    .collect();
                let coords = to_integer_ray(&combo);
                let mut tight = 0u128;
                for (l, r) in rows[..=k].iter().enumerate() {
                    if row_dot(r, &coords).is_zero() {
                        tight |= 1 << l;
                    }
                }
                new_rays.push(Ray { coords, tight });
            }
        }

        let mut kept: Vec<Ray> = Vec::new();
        for (idx, r) in rays.drain(..).enumerate() {
            if vals[idx].is_negative() {
                continue;
            }
            let mut r = r;
            if vals[idx].is_zero() {
                r.tight |= 1 << k;
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
        if rays.is_empty() {
            return Err(Error::EmptyPolytope);
        }
    }

    // Dehomogenize: primitive rays with positive last coordinate are vertices.
    let mut vertices: Vec<Point> = Vec::new();
    let mut tights: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for r in &rays {
        let t = &r.coords[dim];
        if t.is_zero() {
            return Err(Error::UnboundedPolytope);
        }
        debug_assert!(t.is_positive(), "homogenization coordinate must be positive");
        let v: Point = r.coords[..dim]
            .iter()
            .map(|x| Rat::new(x.clone(), t.clone()))
            .collect();
        if !seen.insert(v.clone()) {
            continue;
        }
        let tight: Vec<usize> = (0..m).filter(|i| r.tight >> (nbox + i) & 1 == 1).collect();
        vertices.push(v);
        tights.push(tight);
    }

    // Drop box-artifact rays: keep only rays tight on >= dim input rows of
    // full rank, i.e. genuine vertices of the input system.  Rays that lean
    // on widened box rows cannot occur (the box is strictly larger than the
    // polytope), so every survivor is a true vertex; assert cheaply.
    debug_assert!(vertices.iter().all(|v| halfspaces.iter().all(|h| h.contains(v))));

    Ok(VertexEnum { vertices, tight: tights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn hs(normal: &[i64], offset: i64) -> Halfspace {
        Halfspace::new(normal.iter().map(|&x| rat(x)).collect(), rat(offset)).unwrap()
    }

    fn sorted(mut v: Vec<Point>) -> Vec<Point> {
        v.sort();
        v
    }

    #[test]
    fn unit_square_vertices() {
        let hs = vec![hs(&[1, 0], 0), hs(&[-1, 0], -1), hs(&[0, 1], 0), hs(&[0, -1], -1)];
        let res = vertex_enumeration(&hs, 2).unwrap();
        let want: Vec<Point> = vec![
            vec![rat(0), rat(0)],
            vec![rat(0), rat(1)],
            vec![rat(1), rat(0)],
            vec![rat(1), rat(1)],
        ];
        assert_eq!(sorted(res.vertices), want);
        for t in res.tight {
            assert_eq!(t.len(), 2);
        }
    }

    #[test]
    fn simplex_with_fractional_vertex() {
        // x >= 0, y >= 0, 2x + 3y <= 1.
        let hs = vec![hs(&[1, 0], 0), hs(&[0, 1], 0), hs(&[-2, -3], -1)];
        let res = vertex_enumeration(&hs, 2).unwrap();
        let want: Vec<Point> = vec![
            vec![rat(0), rat(0)],
            vec![rat(0), ratio(1, 3)],
            vec![ratio(1, 2), rat(0)],
        ];
        assert_eq!(sorted(res.vertices), want);
    }

    #[test]
    fn redundant_halfspaces_do_not_add_vertices() {
        let hs = vec![
            hs(&[1, 0], 0),
            hs(&[-1, 0], -1),
            hs(&[0, 1], 0),
            hs(&[0, -1], -1),
            hs(&[1, 1], -5), // slack everywhere
            hs(&[1, 0], -2), // dominated
        ];
        let res = vertex_enumeration(&hs, 2).unwrap();
        assert_eq!(res.vertices.len(), 4);
    }

    #[test]
    fn infeasible_system_is_empty() {
        let hs = vec![hs(&[1], 1), hs(&[-1], 0)];
        assert!(matches!(vertex_enumeration(&hs, 1), Err(Error::EmptyPolytope)));
    }

    #[test]
    fn open_system_is_unbounded() {
        let hs = vec![hs(&[1, 0], 0), hs(&[0, 1], 0)];
        assert!(matches!(vertex_enumeration(&hs, 2), Err(Error::UnboundedPolytope)));
    }

    #[test]
    fn lower_dimensional_face_counts_vertices_once() {
        // Square squashed to a segment: x in [0,1], y = 1/2 exactly.
        let hs = vec![
            hs(&[1, 0], 0),
            hs(&[-1, 0], -1),
            Halfspace::new(vec![rat(0), rat(2)], rat(1)).unwrap(),
            Halfspace::new(vec![rat(0), rat(-2)], rat(-1)).unwrap(),
        ];
        let res = vertex_enumeration(&hs, 2).unwrap();
        let want: Vec<Point> = vec![
            vec![rat(0), ratio(1, 2)],
            vec![rat(1), ratio(1, 2)],
        ];
        assert_eq!(sorted(res.vertices), want);
    }

    #[test]
    fn cube_3d_has_eight_vertices() {
        let mut v = Vec::new();
        for i in 0..3usize {
            let mut up = vec![0i64; 3];
            up[i] = 1;
            v.push(hs(&up, 0));
            let down: Vec<i64> = up.iter().map(|x| -x).collect();
            v.push(hs(&down, -2));
        }
        let res = vertex_enumeration(&v, 3).unwrap();
        assert_eq!(res.vertices.len(), 8);
        for t in &res.tight {
            assert_eq!(t.len(), 3);
        }
    }

    #[test]
    fn random_hrep_roundtrips_through_hull() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut nontrivial = 0;
        for round in 0..10 {
            let dim = 2 + round % 2;
            // Random hull, then its facets, then vertices again.
            let pts: Vec<Point> = (0..(dim + 4))
                .map(|_| (0..dim).map(|_| ratio(rng.gen_range(-10..=10), 2)).collect())
                .collect();
            let hull = match crate::polytope::hull::convex_hull(&pts) {
                Ok(h) if h.dim == dim => h,
                _ => continue,
            };
            nontrivial += 1;
            let res = vertex_enumeration(&hull.facets, dim).unwrap();
            let mut want: Vec<Point> = hull.extreme.iter().map(|&i| pts[i].clone()).collect();
            want.sort();
            want.dedup();
            assert_eq!(sorted(res.vertices), want, "round {round}");
        }
        assert!(nontrivial >= 6);
    }
}
