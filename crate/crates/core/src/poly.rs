//! Dense univariate polynomials over the integers, lowest degree first.
//!
//! The zero polynomial is the empty vector; every other polynomial has a
//! nonzero last coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out: ZPoly = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) => x + y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out: ZPoly = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[BigInt], c: &BigInt) -> ZPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Greatest common divisor of the coefficients (zero for the zero polynomial).
pub fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divide every coefficient by `c`, which must divide each of them.
pub fn div_exact_scalar(a: &[BigInt], c: &BigInt) -> ZPoly {
    a.iter()
        .map(|x| {
            debug_assert!((x % c).is_zero());
            x / c
        })
        .collect()
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub fn rem_monic(a: &[BigInt], m: &[BigInt]) -> ZPoly {
    let dm = degree(m).expect("modulus must be nonzero");
    debug_assert!(m[dm].is_one());
    let mut r = a.to_vec();
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top].clone();
        if !c.is_zero() {
            let shift = top - dm;
            for (j, mj) in m.iter().enumerate() {
                if !mj.is_zero() {
                    r[shift + j] -= &c * mj;
                }
            }
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut r);
    r
}

/// Exact quotient `a / b` in `Z[x]`; panics if `b` does not divide `a`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = degree(b).expect("division by the zero polynomial");
    if a.is_empty() {
        return Vec::new();
    }
    let da = a.len() - 1;
    assert!(da >= db, "inexact polynomial division");
    let lead = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let c = &r[i + db];
        if c.is_zero() {
            continue;
        }
        let (qi, rem) = c.div_rem(lead);
        assert!(rem.is_zero(), "inexact polynomial division");
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[i + j] -= &qi * bj;
            }
        }
        q[i] = qi;
    }
    assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(&mut q);
    q
}

/// Pseudo-division: returns `(q, r, s)` with `s * a = q * b + r`,
/// `deg r < deg b`, and `s` a power of the leading coefficient of `b`.
pub fn pseudo_divrem(a: &[BigInt], b: &[BigInt]) -> (ZPoly, ZPoly, BigInt) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r = a.to_vec();
    let mut q: ZPoly = Vec::new();
    let mut s = BigInt::one();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].clone();
        let shift = dr - db;
        // r <- lead * r - c x^shift b ; q <- lead * q + c x^shift
        for x in r.iter_mut() {
            *x *= &lead;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[shift + j] -= &c * bj;
            }
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        for x in q.iter_mut() {
            *x *= &lead;
        }
        if q.len() <= shift {
            q.resize(shift + 1, BigInt::zero());
        }
        q[shift] += &c;
        s *= &lead;
    }
    trim(&mut q);
    (q, r, s)
}

/// For `a` coprime to the monic `m`, returns `(u, c)` with `u * a ≡ c (mod m)`,
/// `c` a nonzero integer and `deg u < deg m`. Returns `None` when `a ≡ 0`.
pub fn inverse_mod(a: &[BigInt], m: &[BigInt]) -> Option<(ZPoly, BigInt)> {
    let a = rem_monic(a, m);
    if a.is_empty() {
        return None;
    }
    // invariant: r_i ≡ s_i * a (mod m)
    let (mut r0, mut s0): (ZPoly, ZPoly) = (m.to_vec(), Vec::new());
    let (mut r1, mut s1): (ZPoly, ZPoly) = (a, vec![BigInt::one()]);
    while degree(&r1).is_some_and(|d| d > 0) {
        let (q, r, s) = pseudo_divrem(&r0, &r1);
        if r.is_empty() {
            // a shares a factor with m
            return None;
        }
        let mut snew = sub(&scale(&s0, &s), &mul(&q, &s1));
        snew = rem_monic(&snew, m);
        let g = content(&r).gcd(&content(&snew));
        let (r, snew) = if g.is_one() || g.is_zero() {
            (r, snew)
        } else {
            (div_exact_scalar(&r, &g), div_exact_scalar(&snew, &g))
        };
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, snew);
    }
    let c = r1.into_iter().next()?;
    let mut u = rem_monic(&s1, m);
    let mut c = c;
    if c.is_negative() {
        c = -c;
        u = u.into_iter().map(|x| -x).collect();
    }
    let g = content(&u).gcd(&c);
    if !g.is_one() {
        u = div_exact_scalar(&u, &g);
        c /= &g;
    }
    let _ = s0;
    Some((u, c))
}
