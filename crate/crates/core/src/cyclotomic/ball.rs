//! Fixed-point ball arithmetic.
//!
//! A [`Ball`] is the closed interval `(mid ± rad) · 2^-prec` with integer
//! mantissas. Every operation returns a ball that contains the exact result
//! of the operation applied to any points of the input balls, so a ball whose
//! radius is smaller than the absolute value of its midpoint certifies a sign.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub mid: BigInt,
    pub rad: BigInt,
    pub prec: u32,
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball {
            mid: BigInt::zero(),
            rad: BigInt::zero(),
            prec,
        }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Ball {
            mid: BigInt::from(v) << prec,
            rad: BigInt::zero(),
            prec,
        }
    }

    pub fn add(&self, other: &Ball) -> Ball {
        debug_assert_eq!(self.prec, other.prec);
        Ball {
            mid: &self.mid + &other.mid,
            rad: &self.rad + &other.rad,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        debug_assert_eq!(self.prec, other.prec);
        Ball {
            mid: &self.mid - &other.mid,
            rad: &self.rad + &other.rad,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: -&self.mid,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        debug_assert_eq!(self.prec, other.prec);
        let p = self.prec;
        let mid = (&self.mid * &other.mid) >> p;
        let spread =
            self.mid.abs() * &other.rad + other.mid.abs() * &self.rad + &self.rad * &other.rad;
        // +1 for the truncated midpoint, +1 for the truncated spread
        let rad = (spread >> p) + BigInt::from(2u8);
        Ball { mid, rad, prec: p }
    }

    /// Exact multiplication by an integer.
    pub fn scale(&self, c: &BigInt) -> Ball {
        Ball {
            mid: &self.mid * c,
            rad: &self.rad * c.abs(),
            prec: self.prec,
        }
    }

    /// Exact division by a positive integer, rounded outward.
    pub fn div_small(&self, q: u64) -> Ball {
        assert!(q > 0);
        let q = BigInt::from(q);
        Ball {
            mid: &self.mid / &q,
            rad: &self.rad / &q + BigInt::one(),
            prec: self.prec,
        }
    }

    /// Widen the radius by `extra` units in the last place.
    pub fn widen(mut self, extra: &BigInt) -> Ball {
        self.rad += extra;
        self
    }

    /// `Some(sign)` when the ball excludes zero, `None` otherwise.
    pub fn sign(&self) -> Option<Ordering> {
        if self.mid > self.rad {
            Some(Ordering::Greater)
        } else if -&self.mid > self.rad {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.sign().is_none()
    }

    pub fn midpoint_f64(&self) -> f64 {
        let shift = self.mid.bits().saturating_sub(60);
        let m: i64 = (&self.mid >> shift).try_into().unwrap_or(0);
        m as f64 * 2f64.powi(shift as i32 - self.prec as i32)
    }
}

/// Complex ball given by its real and imaginary parts.
#[derive(Clone, Debug)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn mul(&self, other: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }
}

/// `atan(1/x)` for an integer `x >= 5` by its alternating series.
fn atan_inverse(x: u32, prec: u32) -> Ball {
    debug_assert!(x >= 5);
    let x2 = BigInt::from(u64::from(x) * u64::from(x));
    let mut power = (BigInt::one() << prec) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    // each term carries < 3 ulp of truncation error; the tail is < 2 ulp
    Ball {
        mid: sum,
        rad: BigInt::from(3 * k + 3),
        prec,
    }
}

/// Enclosure of pi (Machin's formula).
pub fn pi(prec: u32) -> Ball {
    let a = atan_inverse(5, prec);
    let b = atan_inverse(239, prec);
    a.scale(&BigInt::from(16)).sub(&b.scale(&BigInt::from(4)))
}

/// Enclosures of `(cos x, sin x)` for `0 <= x <= 2.1` by Taylor series.
fn cos_sin(x: &Ball) -> (Ball, Ball) {
    let p = x.prec;
    let one = BigInt::one() << p;
    debug_assert!(x.mid >= BigInt::zero() && x.mid <= (&one * 21) / 10 + 1);
    let mut cos = one.clone();
    let mut sin = BigInt::zero();
    let mut term = one;
    let mut n: u64 = 0;
    loop {
        n += 1;
        term = ((&term * &x.mid) >> p) / BigInt::from(n);
        if term.is_zero() {
            break;
        }
        match n % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
    }
    // per-term rounding error stays below 6 ulp for |x| <= 2.1, and the
    // omitted tail is below 16 ulp; cos and sin are 1-Lipschitz in x
    let rad = BigInt::from(6 * n + 16) + &x.rad + BigInt::one();
    (
        Ball {
            mid: cos,
            rad: rad.clone(),
            prec: p,
        },
        Ball {
            mid: sin,
            rad,
            prec: p,
        },
    )
}

/// Enclosures of `e^{2 pi i t / d}` for `t = 0 .. d`, at working precision
/// `prec` plus guard bits. The returned balls all share one precision.
pub fn root_table(d: u32, prec: u32) -> Vec<ComplexBall> {
    assert!(d >= 1);
    let guard = 2 * (32 - d.leading_zeros()) + 16;
    let q = prec + guard;
    let exact = |re: i64, im: i64| ComplexBall {
        re: Ball::from_int(re, q),
        im: Ball::from_int(im, q),
    };
    match d {
        1 => return vec![exact(1, 0)],
        2 => return vec![exact(1, 0), exact(-1, 0)],
        4 => return vec![exact(1, 0), exact(0, 1), exact(-1, 0), exact(0, -1)],
        _ => {}
    }
    let theta = pi(q).scale(&BigInt::from(2)).div_small(u64::from(d));
    let (c, s) = cos_sin(&theta);
    let step = ComplexBall { re: c, im: s };
    let mut table = Vec::with_capacity(d as usize);
    table.push(exact(1, 0));
    let half = d / 2;
    for t in 1..=half {
        let next = table[(t - 1) as usize].mul(&step);
        table.push(next);
    }
    for t in (half + 1)..d {
        let mirror = table[(d - t) as usize].conj();
        table.push(mirror);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(b: &Ball, v: f64) -> bool {
        let edge = |m: BigInt| {
            Ball {
                mid: m,
                rad: BigInt::zero(),
                prec: b.prec,
            }
            .midpoint_f64()
        };
        let lo = edge(&b.mid - &b.rad);
        let hi = edge(&b.mid + &b.rad);
        lo <= v + 2e-15 && v - 2e-15 <= hi
    }

    #[test]
    fn pi_enclosure() {
        let p = pi(200);
        assert!(contains(&p, std::f64::consts::PI));
        assert!(p.rad.bits() < 16);
    }

    #[test]
    fn root_table_matches_libm() {
        for d in [3u32, 5, 6, 7, 12, 59, 60, 997] {
            let table = root_table(d, 64);
            assert_eq!(table.len(), d as usize);
            for (t, z) in table.iter().enumerate() {
                // reduce to (-π, π] before calling libm
                let t = t as i64;
                let s = if 2 * t > i64::from(d) {
                    t - i64::from(d)
                } else {
                    t
                };
                let angle = 2.0 * std::f64::consts::PI * s as f64 / f64::from(d);
                assert!(contains(&z.re, angle.cos()), "cos d={d} t={t}");
                assert!(contains(&z.im, angle.sin()), "sin d={d} t={t}");
                // radius stays far below the working precision
                assert!(z.re.rad.bits() < u64::from(z.re.prec) - 60);
            }
        }
    }

    #[test]
    fn sign_of_ball() {
        let b = Ball {
            mid: BigInt::from(10),
            rad: BigInt::from(3),
            prec: 4,
        };
        assert_eq!(b.sign(), Some(Ordering::Greater));
        assert_eq!(b.neg().sign(), Some(Ordering::Less));
        let c = Ball {
            mid: BigInt::from(2),
            rad: BigInt::from(3),
            prec: 4,
        };
        assert!(c.contains_zero());
    }
}
