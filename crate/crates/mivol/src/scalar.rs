//! Exact rational scalars and certified enclosures of the few irrational
//! constants the bounds need (square roots and fourth roots).
//!
//! All geometry in this crate runs on `BigRational`.  Where a bound involves
//! sqrt(n) or n^(3/4) we never round silently: `sqrt_upper`/`sqrt_lower`
//! return rationals that provably bracket the root (checked by squaring), so
//! an inequality tested against the enclosure is implied by, or implies, the
//! ideal inequality depending on which side is used.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Lossy conversion for reporting; exact values stay rational internally.
pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion from a float (every finite f64 is rational).
pub fn from_f64(x: f64) -> Option<Rat> {
    Rat::from_f64(x)
}

/// Parse either an integer literal or a `p/q` fraction.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().ok()?;
        let den: BigInt = q.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rat::new(num, den))
    } else {
        let num: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(num))
    }
}

/// Render as `p` or `p/q` with no loss.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// x^k for integer k (k may be negative when x is nonzero).
pub fn powi(x: &Rat, k: i64) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let mut base = if k < 0 {
        assert!(!x.is_zero(), "zero to a negative power");
        x.recip()
    } else {
        x.clone()
    };
    let mut e = k.unsigned_abs();
    let mut acc = Rat::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// Exact rational square root if one exists.
pub fn sqrt_exact(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Relative tolerance used when tightening enclosures: 2^-80.
fn enclosure_tol() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(1u128 << 80))
}

/// Certified upper bound on sqrt(x): returns s with s >= 0 and s*s >= x,
/// tight to a relative error of about 2^-80.  Newton iteration from above
/// stays above the root in exact arithmetic, so the certificate is the
/// arithmetic itself plus a final `s*s >= x` assertion.
pub fn sqrt_upper(x: &Rat) -> Rat {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    if x.is_zero() {
        return Rat::zero();
    }
    if let Some(e) = sqrt_exact(x) {
        return e;
    }
    // Seed from f64 when possible, nudged up; otherwise max(x, 1) >= sqrt(x).
    let mut s = match x.to_f64() {
        Some(f) if f.is_finite() && f > 0.0 => {
            let guess = Rat::from_f64(f.sqrt() * (1.0 + 1e-9)).unwrap_or_else(Rat::one);
            if &guess * &guess >= *x {
                guess
            } else {
                std::cmp::max(x.clone(), Rat::one())
            }
        }
        _ => std::cmp::max(x.clone(), Rat::one()),
    };
    let tol = enclosure_tol();
    for _ in 0..200 {
        // Newton step; by AM-GM it never undershoots sqrt(x).
        let next = (&s + x / &s) / rat(2);
        let err = (&next * &next) - x;
        s = next;
        if err <= &tol * x {
            break;
        }
    }
    debug_assert!(&s * &s >= *x);
    s
}

/// Certified lower bound on sqrt(x): x / sqrt_upper(x).
pub fn sqrt_lower(x: &Rat) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    x / sqrt_upper(x)
}

/// Certified upper bound on x^(1/4).
pub fn fourth_root_upper(x: &Rat) -> Rat {
    sqrt_upper(&sqrt_upper(x))
}

/// The smallest-denominator rational strictly between `lo` and `hi`
/// (continued-fraction walk; ties in denominator resolve to the smaller
/// numerator magnitude).
pub fn simplest_in_interval(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo < hi, "interval must be nonempty");
    if lo.is_negative() && hi.is_positive() {
        return Rat::zero();
    }
    if !hi.is_positive() {
        return -simplest_in_interval(&-hi.clone(), &-lo.clone());
    }
    simplest_nonneg(lo, hi)
}

fn simplest_nonneg(lo: &Rat, hi: &Rat) -> Rat {
    let fl = lo.floor();
    let next_int = &fl + Rat::one();
    if next_int < *hi {
        return next_int;
    }
    let a = lo - &fl;
    let b = hi - &fl;
    if a.is_zero() {
        // (0, b] with b <= 1: take 1/q for the smallest q with 1/q < b.
        let q = (Rat::one() / &b).floor() + Rat::one();
        return &fl + Rat::one() / q;
    }
    &fl + Rat::one() / simplest_nonneg(&(Rat::one() / b), &(Rat::one() / a))
}

/// Certified rational enclosure of Euler's number, `10^-15` wide.
pub fn euler_enclosure() -> (Rat, Rat) {
    let lo = ratio(2_718_281_828_459_045, 1_000_000_000_000_000);
    let hi = ratio(2_718_281_828_459_046, 1_000_000_000_000_000);
    (lo, hi)
}
