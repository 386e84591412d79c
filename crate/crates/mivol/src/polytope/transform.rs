//! Exact polytope transformations.
//!
//! All operations act on whichever representation is available and keep the
//! result exact.  Halfspace intersection and coordinate slicing work on the
//! H-representation (computed on demand); projection and scaling prefer the
//! V-representation.

use crate::error::{Error, Result};
use crate::linalg::{dot, Point};
use crate::polytope::{Halfspace, Polytope};
use crate::scalar::Rat;
use num_traits::{One, Signed, Zero};

/// Intersect with one more halfspace.  The result carries only an
/// H-representation and may be empty.
pub fn intersect_halfspace(p: &Polytope, h: &Halfspace) -> Result<Polytope> {
    let ambient = p.ambient_dim();
    if h.normal.len() != ambient {
        return Err(Error::DimensionMismatch { expected: ambient, got: h.normal.len() });
    }
    if let Some(v) = p.vrep() {
        if v.is_empty() {
            return Ok(Polytope::empty(ambient));
        }
    }
    let mut hs = p.halfspaces()?;
    hs.push(h.clone());
    Polytope::from_hrep(ambient, hs)
}

/// Fix the first `fixed.len()` coordinates; the result lives in the
/// remaining coordinates.  May be empty.
pub fn affine_slice(p: &Polytope, fixed: &[Rat]) -> Result<Polytope> {
    let ambient = p.ambient_dim();
    let f = fixed.len();
    if f == 0 || f >= ambient {
        return Err(Error::BadParams(format!(
            "slice must fix between 1 and {} coordinates, got {f}",
            ambient - 1
        )));
    }
    let tail = ambient - f;
    if let Some(v) = p.vrep() {
        if v.is_empty() {
            return Ok(Polytope::empty(tail));
        }
    }
    let mut out: Vec<Halfspace> = Vec::new();
    for h in p.halfspaces()? {
        let head = &h.normal[..f];
        let rest: Point = h.normal[f..].to_vec();
        let shifted = &h.offset - dot(head, fixed);
        if rest.iter().all(Rat::is_zero) {
            if shifted.is_positive() {
                return Ok(Polytope::empty(tail));
            }
            continue;
        }
        out.push(Halfspace::new(rest, shifted)?);
    }
    Polytope::from_hrep(tail, out)
}

/// Homothety with ratio `lambda > 0` about a center point.
pub fn scale(p: &Polytope, lambda: &Rat, about: &[Rat]) -> Result<Polytope> {
    let ambient = p.ambient_dim();
    if about.len() != ambient {
        return Err(Error::DimensionMismatch { expected: ambient, got: about.len() });
    }
    if !lambda.is_positive() {
        return Err(Error::NonPositiveScale);
    }
    let one_minus = Rat::one() - lambda;
    let hrep = p.hrep().map(|hs| {
        hs.iter()
            .map(|h| Halfspace {
                normal: h.normal.clone(),
                offset: lambda * &h.offset + &one_minus * dot(&h.normal, about),
            })
            .collect::<Vec<_>>()
    });
    let vrep = p.vrep().map(|vs| {
        vs.iter()
            .map(|v| {
                v.iter()
                    .zip(about)
                    .map(|(x, a)| a + lambda * (x - a))
                    .collect::<Point>()
            })
            .collect::<Vec<_>>()
    });
    rebuild(ambient, hrep, vrep)
}

/// Translate by a vector.
pub fn translate(p: &Polytope, v: &[Rat]) -> Result<Polytope> {
    let ambient = p.ambient_dim();
    if v.len() != ambient {
        return Err(Error::DimensionMismatch { expected: ambient, got: v.len() });
    }
    let hrep = p.hrep().map(|hs| {
        hs.iter()
            .map(|h| Halfspace {
                normal: h.normal.clone(),
                offset: &h.offset + dot(&h.normal, v),
            })
            .collect::<Vec<_>>()
    });
    let vrep = p.vrep().map(|vs| {
        vs.iter().map(|p| crate::linalg::add(p, v)).collect::<Vec<_>>()
    });
    rebuild(ambient, hrep, vrep)
}

/// Orthogonal projection onto the first `keep` coordinates.
pub fn project(p: &Polytope, keep: usize) -> Result<Polytope> {
    let ambient = p.ambient_dim();
    if keep == 0 || keep > ambient {
        return Err(Error::BadParams(format!(
            "projection must keep between 1 and {ambient} coordinates, got {keep}"
        )));
    }
    let verts = p.vertices()?;
    if verts.is_empty() {
        return Ok(Polytope::empty(keep));
    }
    let mut shadow: Vec<Point> = verts.into_iter().map(|v| v[..keep].to_vec()).collect();
    shadow.sort();
    shadow.dedup();
    if shadow.len() > 1 {
        let hull = crate::polytope::hull::convex_hull(&shadow)?;
        shadow = hull.extreme.iter().map(|&i| shadow[i].clone()).collect();
    }
    Polytope::from_vrep(keep, shadow)
}

fn rebuild(
    ambient: usize,
    hrep: Option<Vec<Halfspace>>,
    vrep: Option<Vec<Point>>,
) -> Result<Polytope> {
    match (hrep, vrep) {
        (Some(h), Some(v)) => Polytope::from_both(ambient, h, v),
        (Some(h), None) => Polytope::from_hrep(ambient, h),
        (None, Some(v)) => Polytope::from_vrep(ambient, v),
        (None, None) => unreachable!("polytope with no representation"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{centroid, vertex_enumeration, volume};
    use crate::scalar::{rat, ratio};

    fn unit_box(d: usize) -> Polytope {
        Polytope::axis_box(&vec![rat(0); d], &vec![rat(1); d]).unwrap()
    }

    #[test]
    fn slice_of_box_is_box() {
        let b = unit_box(3);
        let s = affine_slice(&b, &[ratio(1, 2)]).unwrap();
        assert_eq!(s.ambient_dim(), 2);
        assert_eq!(volume(&vertex_enumeration(&s).unwrap()).unwrap(), rat(1));
        let outside = affine_slice(&b, &[rat(2)]).unwrap();
        assert!(outside.is_empty().unwrap());
    }

    #[test]
    fn slice_keeps_exact_cross_section() {
        // Triangle x >= 0, y >= 0, x + y <= 1 sliced at x = 1/3.
        let t = Polytope::from_hrep(
            2,
            vec![
                Halfspace::new(vec![rat(1), rat(0)], rat(0)).unwrap(),
                Halfspace::new(vec![rat(0), rat(1)], rat(0)).unwrap(),
                Halfspace::new(vec![rat(-1), rat(-1)], rat(-1)).unwrap(),
            ],
        )
        .unwrap();
        let s = affine_slice(&t, &[ratio(1, 3)]).unwrap();
        let v = vertex_enumeration(&s).unwrap();
        assert_eq!(volume(&v).unwrap(), ratio(2, 3));
    }

    #[test]
    fn scale_multiplies_volume_by_lambda_pow_dim() {
        for d in 1..=3usize {
            let b = crate::polytope::completed(&unit_box(d)).unwrap();
            let lam = ratio(3, 2);
            let about = vec![ratio(1, 2); d];
            let s = scale(&b, &lam, &about).unwrap();
            let want = crate::scalar::powi(&lam, d as i64);
            assert_eq!(volume(&s).unwrap(), want);
            // Center fixed by the homothety.
            assert_eq!(centroid(&s).unwrap(), about);
            // Both representations describe the same body.
            let from_h = Polytope::from_hrep(d, s.hrep().unwrap().to_vec()).unwrap();
            let mut hv = vertex_enumeration(&from_h).unwrap().vertices().unwrap();
            let mut vv = s.vrep().unwrap().to_vec();
            hv.sort();
            vv.sort();
            assert_eq!(hv, vv);
        }
    }

    #[test]
    fn translate_preserves_volume_and_moves_centroid() {
        let b = crate::polytope::completed(&unit_box(2)).unwrap();
        let t = translate(&b, &[rat(5), ratio(-7, 3)]).unwrap();
        assert_eq!(volume(&t).unwrap(), rat(1));
        assert_eq!(
            centroid(&t).unwrap(),
            vec![ratio(11, 2), ratio(-7, 3) + ratio(1, 2)]
        );
    }

    #[test]
    fn project_box_to_segment() {
        let b = unit_box(3);
        let s = project(&b, 1).unwrap();
        assert_eq!(s.ambient_dim(), 1);
        let verts = s.vertices().unwrap();
        assert_eq!(verts.len(), 2);
        assert_eq!(volume(&s).unwrap(), rat(1));
    }

    #[test]
    fn project_keeps_extreme_points_only() {
        let p = Polytope::from_vrep(
            3,
            vec![
                vec![rat(0), rat(0), rat(0)],
                vec![rat(2), rat(0), rat(5)],
                vec![rat(1), rat(2), rat(-3)],
                vec![rat(1), ratio(1, 2), rat(9)], // interior after projection
            ],
        )
        .unwrap();
        let s = project(&p, 2).unwrap();
        let mut verts = s.vertices().unwrap();
        verts.sort();
        assert_eq!(
            verts,
            vec![
                vec![rat(0), rat(0)],
                vec![rat(1), rat(2)],
                vec![rat(2), rat(0)],
            ]
        );
    }

    #[test]
    fn intersect_empty_stays_empty() {
        let e = Polytope::empty(2);
        let h = Halfspace::new(vec![rat(1), rat(0)], rat(0)).unwrap();
        assert!(intersect_halfspace(&e, &h).unwrap().is_empty().unwrap());
        assert!(affine_slice(&e, &[rat(0)]).unwrap().is_empty().unwrap());
        assert!(project(&e, 1).unwrap().is_empty().unwrap());
    }

    #[test]
    fn nonpositive_scale_rejected() {
        let b = unit_box(2);
        assert!(matches!(
            scale(&b, &rat(0), &[rat(0), rat(0)]),
            Err(Error::NonPositiveScale)
        ));
        assert!(matches!(
            scale(&b, &rat(-1), &[rat(0), rat(0)]),
            Err(Error::NonPositiveScale)
        ));
    }
}
