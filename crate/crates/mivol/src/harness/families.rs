//! Named instance families, deterministic in (name, params, seed).
//!
//! Families: `worst_case` (block construction with a known radius),
//! `product_box` ([0,k]^n x [0,1]^d), `cone_product` (fibers scaling
//! linearly from 1/(1+nk) of a simplex up to a full simplex), `random_hull`
//! (seeded rational vertex hulls with a deterministic retry), and `sheared`
//! (a product box pushed through a seeded unimodular shear).

use crate::constructions::worst_case_instance;
use crate::error::{Error, Result};
use crate::lattice::{lift_and_apply, UnimodularMap};
use crate::linalg::Point;
use crate::mixed::{enumerate_fibers, MixedIntegerBody};
use crate::polytope::Polytope;
use crate::scalar::{rat, ratio, Rat};
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// A named instance family with integer parameters and a seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFamily {
    /// Family name.
    pub name: String,
    /// Integer parameters, keyed by name.
    pub params: BTreeMap<String, i64>,
    /// Seed for any randomness in the family.
    pub seed: u64,
}

impl InstanceFamily {
    /// Build a family from a parameter slice.
    pub fn new(name: &str, params: &[(&str, i64)], seed: u64) -> Self {
        InstanceFamily {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            seed,
        }
    }

    /// Parse a `k=8,n=1,d=2` parameter string.
    pub fn parse(name: &str, params: &str, seed: u64) -> Result<Self> {
        let mut map = BTreeMap::new();
        for piece in params.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (key, value) = piece
                .split_once('=')
                .ok_or_else(|| Error::BadParams(format!("bad parameter {piece:?}, want key=value")))?;
            let value: i64 = value
                .trim()
                .parse()
                .map_err(|_| Error::BadParams(format!("bad integer in {piece:?}")))?;
            map.insert(key.trim().to_string(), value);
        }
        Ok(InstanceFamily { name: name.to_string(), params: map, seed })
    }

    /// Canonical identifier: name, sorted params, seed.
    pub fn id(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({});seed={}", self.name, params.join(";"), self.seed)
    }

    fn require(&self, key: &str) -> Result<i64> {
        self.params
            .get(key)
            .copied()
            .ok_or_else(|| Error::BadParams(format!("family {} needs parameter {key}", self.name)))
    }

    fn get_or(&self, key: &str, default: i64) -> i64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    fn dims(&self) -> Result<(usize, usize)> {
        let n = self.require("n")?;
        let d = self.require("d")?;
        if n < 1 || d < 1 {
            return Err(Error::BadParams(format!("need n >= 1 and d >= 1, got n={n}, d={d}")));
        }
        Ok((n as usize, d as usize))
    }
}

fn positive(name: &str, value: i64) -> Result<i64> {
    if value < 1 {
        return Err(Error::BadParams(format!("need {name} >= 1, got {value}")));
    }
    Ok(value)
}

fn product_box(n: usize, d: usize, k: i64) -> Result<MixedIntegerBody> {
    let mut lo = Vec::with_capacity(n + d);
    let mut hi = Vec::with_capacity(n + d);
    for _ in 0..n {
        lo.push(rat(0));
        hi.push(rat(k));
    }
    for _ in 0..d {
        lo.push(rat(0));
        hi.push(rat(1));
    }
    MixedIntegerBody::new(n, d, Polytope::axis_box(&lo, &hi)?)
}

fn cone_product(n: usize, d: usize, k: i64) -> Result<MixedIntegerBody> {
    let denom = 1 + n as i64 * k;
    let mut verts: Vec<Point> = Vec::new();
    for corner in 0..(1usize << n) {
        let head: Vec<i64> = (0..n).map(|j| if corner >> j & 1 == 1 { k } else { 0 }).collect();
        let scale = ratio(1 + head.iter().sum::<i64>(), denom);
        for w in 0..=d {
            let mut v: Point = head.iter().map(|&z| rat(z)).collect();
            for j in 0..d {
                v.push(if w == j + 1 { scale.clone() } else { Rat::zero() });
            }
            verts.push(v);
        }
    }
    MixedIntegerBody::new(n, d, Polytope::from_vrep(n + d, verts)?)
}

fn random_hull(n: usize, d: usize, k: i64, count: usize, seed: u64) -> Result<MixedIntegerBody> {
    if count < n + d + 1 {
        return Err(Error::BadParams(format!(
            "need at least {} points for a full-dimensional hull, got {count}",
            n + d + 1
        )));
    }
    for attempt in 0u64..64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
        let mut verts: Vec<Point> = Vec::with_capacity(count);
        for _ in 0..count {
            let v: Point = (0..n + d).map(|_| ratio(rng.gen_range(0..=8 * k), 8)).collect();
            verts.push(v);
        }
        let body = Polytope::from_vrep(n + d, verts)?;
        if body.dim()? != Some(n + d) {
            continue;
        }
        let m = MixedIntegerBody::new(n, d, body)?;
        let fs = enumerate_fibers(&m)?;
        if !fs.total.is_zero() {
            return Ok(m);
        }
    }
    Err(Error::DegenerateInput(format!(
        "no full-dimensional hull with nonempty fibers after 64 attempts (n={n}, d={d}, k={k})"
    )))
}

/// Seeded unimodular shear on the first `n` coordinates; identity when n = 1.
fn seeded_shear(n: usize, seed: u64) -> Result<UnimodularMap> {
    if n == 1 {
        return Ok(UnimodularMap::identity(1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matrix = vec![vec![0i64; n]; n];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = 1;
    }
    for _ in 0..3 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let coeff = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
        for c in 0..n {
            matrix[i][c] += coeff * matrix[j][c];
        }
    }
    UnimodularMap::new(matrix)
}

fn sheared(n: usize, d: usize, k: i64, seed: u64) -> Result<MixedIntegerBody> {
    let base = product_box(n, d, k)?;
    let map = seeded_shear(n, seed)?;
    lift_and_apply(&base, &map)
}

/// Generate the instance a family describes.
pub fn generate_instance(f: &InstanceFamily) -> Result<MixedIntegerBody> {
    let (n, d) = f.dims()?;
    match f.name.as_str() {
        "worst_case" => {
            let r = positive("r", f.get_or("r", 100))?;
            Ok(worst_case_instance(n, d, &rat(r))?.m)
        }
        "product_box" => product_box(n, d, positive("k", f.require("k")?)?),
        "cone_product" => cone_product(n, d, positive("k", f.require("k")?)?),
        "random_hull" => {
            let k = positive("k", f.get_or("k", 4))?;
            let count = positive("count", f.get_or("count", 2 * (n + d) as i64 + 4))? as usize;
            random_hull(n, d, k, count, f.seed)
        }
        "sheared" => sheared(n, d, positive("k", f.require("k")?)?, f.seed),
        other => Err(Error::BadParams(format!(
            "unknown family {other:?}, want worst_case, product_box, cone_product, random_hull, or sheared"
        ))),
    }
}
