//! Exact arithmetic in the cyclotomic fields `Q(ζ_d)`.
//!
//! Two carriers are provided. [`CycloInt`] is a sparse element of the group
//! ring `Z[x]/(x^d − 1)`; it is cheap to multiply and is what the elimination
//! code works with. Because `x^d − 1` is squarefree, an element maps to zero
//! in `Q(ζ_d)` exactly when it is killed by `∏_{p | d} (1 − x^{d/p})`, which
//! vanishes at every `d`-th root of unity that is not primitive; this gives a
//! cheap symbolic zero test. [`CyclotomicElement`] is the canonical form: a
//! rational polynomial of degree below `φ(d)` reduced modulo `Φ_d`.

pub mod ball;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{self, ZPoly};
use ball::{Ball, ComplexBall};

/// Precision cap for sign certification; reaching it means a nonzero
/// element is smaller than `2^-MAX_PREC`, which cannot happen for the
/// heights this crate produces.
const MAX_PREC: u32 = 1 << 20;

/// Per-order context: prime factors, `Φ_d`, and cached root tables.
#[derive(Debug)]
pub struct Ring {
    d: u32,
    primes: Vec<u32>,
    phi: OnceLock<ZPoly>,
    tables: Mutex<Vec<(u32, Arc<Vec<ComplexBall>>)>>,
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The `d`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(d: u32) -> ZPoly {
    assert!(d >= 1);
    let primes = prime_factors(d);
    let mut f: ZPoly = vec![-BigInt::one(), BigInt::one()];
    let mut rad = 1u32;
    for &p in &primes {
        // Φ_{mp}(x) = Φ_m(x^p) / Φ_m(x) for p not dividing m
        let stretched = stretch(&f, p as usize);
        f = poly::div_exact(&stretched, &f);
        rad *= p;
    }
    stretch(&f, (d / rad) as usize)
}

fn stretch(f: &[BigInt], k: usize) -> ZPoly {
    if k == 1 {
        return f.to_vec();
    }
    let mut out = vec![BigInt::zero(); (f.len() - 1) * k + 1];
    for (i, c) in f.iter().enumerate() {
        out[i * k] = c.clone();
    }
    out
}

impl Ring {
    /// Shared context for order `d`.
    pub fn get(d: u32) -> Arc<Ring> {
        assert!(d >= 1, "root of unity order must be positive");
        static RINGS: OnceLock<Mutex<HashMap<u32, Arc<Ring>>>> = OnceLock::new();
        let map = RINGS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = map.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(d)
            .or_insert_with(|| {
                Arc::new(Ring {
                    d,
                    primes: prime_factors(d),
                    phi: OnceLock::new(),
                    tables: Mutex::new(Vec::new()),
                })
            })
            .clone()
    }

    pub fn order(&self) -> u32 {
        self.d
    }

    pub fn phi(&self) -> &ZPoly {
        self.phi.get_or_init(|| cyclotomic_polynomial(self.d))
    }

    /// `φ(d)`, the degree of the field.
    pub fn degree(&self) -> usize {
        self.phi().len() - 1
    }

    /// Whether `x` vanishes in `Q(ζ_d)`.
    pub fn is_zero(&self, x: &CycloInt) -> bool {
        debug_assert_eq!(x.d, self.d);
        if x.terms.is_empty() {
            return true;
        }
        let mut y = x.clone();
        for &p in &self.primes {
            let shifted = y.shift(self.d / p);
            y = y.sub(&shifted);
            if y.terms.is_empty() {
                return true;
            }
        }
        y.terms.is_empty()
    }

    /// Canonical dense representative of degree below `φ(d)`.
    pub fn reduce(&self, x: &CycloInt) -> ZPoly {
        let mut dense = x.to_dense();
        poly::trim(&mut dense);
        poly::rem_monic(&dense, self.phi())
    }

    /// `(u, c)` with `u · a ≡ c (mod Φ_d)` for a nonzero integer `c`.
    pub fn inverse_parts(&self, a: &[BigInt]) -> Option<(ZPoly, BigInt)> {
        poly::inverse_mod(a, self.phi())
    }

    fn table(&self, prec: u32) -> Arc<Vec<ComplexBall>> {
        let mut guard = self.tables.lock().unwrap_or_else(|e| e.into_inner());
        if let Some((_, t)) = guard.iter().find(|(p, _)| *p == prec) {
            return t.clone();
        }
        let t = Arc::new(ball::root_table(self.d, prec));
        guard.push((prec, t.clone()));
        t
    }

    /// Real part of `x(ζ_d^k)` as a ball at the requested precision.
    fn eval_real(&self, x: &CycloInt, k: u32, prec: u32) -> Ball {
        let table = self.table(prec);
        let q = table[0].re.prec;
        let mut acc = Ball::zero(q);
        let d = u64::from(self.d);
        for (e, c) in &x.terms {
            let t = (u64::from(*e) * u64::from(k) % d) as usize;
            acc = acc.add(&table[t].re.scale(c));
        }
        acc
    }

    /// Certified sign of the real number `x(ζ_d^k)`; `x` must take a real
    /// value there (its imaginary part is ignored).
    pub fn sign_real(&self, x: &CycloInt, k: u32) -> Ordering {
        if self.is_zero_at(x, k) {
            return Ordering::Equal;
        }
        let mut prec = 64u32;
        loop {
            if let Some(s) = self.eval_real(x, k, prec).sign() {
                return s;
            }
            prec *= 2;
            assert!(
                prec <= MAX_PREC,
                "sign certification exceeded precision cap"
            );
        }
    }

    fn eval_ball(&self, x: &CycloInt, k: u32, prec: u32) -> ComplexBall {
        let table = self.table(prec);
        let q = table[0].re.prec;
        let (mut re, mut im) = (Ball::zero(q), Ball::zero(q));
        let d = u64::from(self.d);
        for (e, c) in &x.terms {
            let t = (u64::from(*e) * u64::from(k) % d) as usize;
            re = re.add(&table[t].re.scale(c));
            im = im.add(&table[t].im.scale(c));
        }
        ComplexBall { re, im }
    }

    /// Certified sign of `a(ζ_d^k) / b(ζ_d^k)`, which must be real, with `b`
    /// nonzero there. Computed as the sign of `Re(a · conj b)`.
    pub fn sign_real_quotient(&self, a: &CycloInt, b: &CycloInt, k: u32) -> Ordering {
        if self.is_zero_at(a, k) {
            return Ordering::Equal;
        }
        let mut prec = 64u32;
        loop {
            let x = self.eval_ball(a, k, prec);
            let y = self.eval_ball(b, k, prec);
            let re = x.re.mul(&y.re).add(&x.im.mul(&y.im));
            if let Some(s) = re.sign() {
                return s;
            }
            prec *= 2;
            assert!(
                prec <= MAX_PREC,
                "sign certification exceeded precision cap"
            );
        }
    }

    /// Whether `x(ζ_d^k)` vanishes. For `k` coprime to `d` this is the field
    /// zero test; otherwise the point lies in a smaller cyclotomic field.
    pub fn is_zero_at(&self, x: &CycloInt, k: u32) -> bool {
        let g = (k % self.d).gcd(&self.d);
        if g == 1 {
            return self.is_zero(x);
        }
        let e = self.d / g;
        let sub = Ring::get(e);
        let folded = CycloInt::from_terms(
            e,
            x.terms
                .iter()
                .map(|(j, c)| (i64::from(*j) * i64::from(k / g), c.clone())),
        );
        sub.is_zero(&folded)
    }

    /// Floating-point value of `x(ζ_d^k)`.
    pub fn eval_f64(&self, x: &CycloInt, k: u32) -> Complex64 {
        let d = u64::from(self.d);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &x.terms {
            let t = (u64::from(*e) * u64::from(k) % d) as f64;
            let ang = 2.0 * std::f64::consts::PI * t / self.d as f64;
            let cf = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::from_polar(cf, ang);
        }
        acc
    }
}

/// Sparse element of `Z[x]/(x^d − 1)`: sorted `(exponent, coefficient)`
/// pairs with nonzero coefficients and exponents below `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloInt {
    d: u32,
    terms: Vec<(u32, BigInt)>,
}

impl CycloInt {
    pub fn zero(d: u32) -> Self {
        CycloInt {
            d,
            terms: Vec::new(),
        }
    }

    pub fn constant(d: u32, c: impl Into<BigInt>) -> Self {
        Self::monomial(d, 0, c)
    }

    pub fn one(d: u32) -> Self {
        Self::constant(d, 1)
    }

    /// `c · x^e`, with `e` taken modulo `d`.
    pub fn monomial(d: u32, e: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(d);
        }
        CycloInt {
            d,
            terms: vec![(e.rem_euclid(i64::from(d)) as u32, c)],
        }
    }

    /// Collect arbitrary `(exponent, coefficient)` pairs.
    pub fn from_terms(d: u32, it: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut raw: Vec<(u32, BigInt)> = it
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e.rem_euclid(i64::from(d)) as u32, c))
            .collect();
        raw.sort_by_key(|(e, _)| *e);
        let mut terms: Vec<(u32, BigInt)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match terms.last_mut() {
                Some((le, lc)) if *le == e => {
                    *lc += c;
                    if lc.is_zero() {
                        terms.pop();
                    }
                }
                _ => terms.push((e, c)),
            }
        }
        CycloInt { d, terms }
    }

    pub fn from_dense(d: u32, coeffs: &[BigInt]) -> Self {
        Self::from_terms(
            d,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        )
    }

    pub fn order(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &[(u32, BigInt)] {
        &self.terms
    }

    /// Syntactic zero (no terms); see [`Ring::is_zero`] for the field test.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The integer value if this is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn to_dense(&self) -> ZPoly {
        let len = self.terms.last().map_or(0, |(e, _)| *e as usize + 1);
        let mut out = vec![BigInt::zero(); len];
        for (e, c) in &self.terms {
            out[*e as usize] = c.clone();
        }
        out
    }

    fn merge(&self, other: &CycloInt, negate: bool) -> CycloInt {
        debug_assert_eq!(self.d, other.d);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        CycloInt {
            d: self.d,
            terms: out,
        }
    }

    pub fn add(&self, other: &CycloInt) -> CycloInt {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &CycloInt) -> CycloInt {
        self.merge(other, true)
    }

    pub fn neg(&self) -> CycloInt {
        CycloInt {
            d: self.d,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    /// Multiply by `x^s`.
    pub fn shift(&self, s: u32) -> CycloInt {
        let d = self.d;
        let mut terms: Vec<(u32, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| ((e + s) % d, c.clone()))
            .collect();
        terms.sort_by_key(|(e, _)| *e);
        CycloInt { d, terms }
    }

    pub fn mul_int(&self, c: &BigInt) -> CycloInt {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        CycloInt {
            d: self.d,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &CycloInt) -> CycloInt {
        debug_assert_eq!(self.d, other.d);
        if self.terms.is_empty() || other.terms.is_empty() {
            return Self::zero(self.d);
        }
        if let Some(c) = other.as_constant() {
            return self.mul_int(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.mul_int(&c);
        }
        let d = self.d as usize;
        let pairs = self.terms.len() * other.terms.len();
        if pairs * 4 >= d {
            let mut acc = vec![BigInt::zero(); d];
            for (e1, c1) in &self.terms {
                for (e2, c2) in &other.terms {
                    let e = (*e1 as usize + *e2 as usize) % d;
                    acc[e] += c1 * c2;
                }
            }
            let terms = acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e as u32, c))
                .collect();
            CycloInt { d: self.d, terms }
        } else {
            let mut raw = Vec::with_capacity(pairs);
            for (e1, c1) in &self.terms {
                for (e2, c2) in &other.terms {
                    raw.push((i64::from(*e1) + i64::from(*e2), c1 * c2));
                }
            }
            Self::from_terms(self.d, raw)
        }
    }

    /// Complex conjugation, `x ↦ x^{-1}`.
    pub fn conj(&self) -> CycloInt {
        Self::from_terms(
            self.d,
            self.terms.iter().map(|(e, c)| (-i64::from(*e), c.clone())),
        )
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide every coefficient by `c`, which must divide all of them.
    pub fn div_exact_int(&self, c: &BigInt) -> CycloInt {
        CycloInt {
            d: self.d,
            terms: self.terms.iter().map(|(e, x)| (*e, x / c)).collect(),
        }
    }

    /// Largest coefficient bit length.
    pub fn max_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }
}

/// Canonical element of `Q(ζ_d)`: `(num_0 + num_1 ζ + …) / den` with
/// `deg num < φ(d)`, `den > 0` and `gcd(content(num), den) = 1`.
#[derive(Clone)]
pub struct CyclotomicElement {
    ring: Arc<Ring>,
    num: ZPoly,
    den: BigInt,
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.d == other.ring.d && self.num == other.num && self.den == other.den
    }
}

impl Eq for CyclotomicElement {}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicElement(d={}, {})", self.ring.d, self)
    }
}

impl CyclotomicElement {
    fn normalized(ring: Arc<Ring>, mut num: ZPoly, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        poly::trim(&mut num);
        if num.is_empty() {
            return CyclotomicElement {
                ring,
                num,
                den: BigInt::one(),
            };
        }
        if den.is_negative() {
            den = -den;
            num = num.into_iter().map(|c| -c).collect();
        }
        let g = poly::content(&num).gcd(&den);
        if !g.is_one() {
            num = poly::div_exact_scalar(&num, &g);
            den /= &g;
        }
        CyclotomicElement { ring, num, den }
    }

    pub fn zero(d: u32) -> Self {
        CyclotomicElement {
            ring: Ring::get(d),
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one(d: u32) -> Self {
        Self::from_int(d, 1)
    }

    pub fn from_int(d: u32, c: impl Into<BigInt>) -> Self {
        Self::normalized(Ring::get(d), vec![c.into()], BigInt::one())
    }

    pub fn from_rational(d: u32, q: &BigRational) -> Self {
        Self::normalized(Ring::get(d), vec![q.numer().clone()], q.denom().clone())
    }

    /// The generator `ζ_d = e^{2πi/d}`.
    pub fn zeta(d: u32) -> Self {
        Self::from_cyclo(&CycloInt::monomial(d, 1, 1), &BigInt::one())
    }

    /// `x / den` for a group-ring element `x`.
    pub fn from_cyclo(x: &CycloInt, den: &BigInt) -> Self {
        let ring = Ring::get(x.d);
        let num = ring.reduce(x);
        Self::normalized(ring, num, den.clone())
    }

    pub fn order(&self) -> u32 {
        self.ring.d
    }

    /// Integer numerator coefficients (power basis in `ζ_d`) and denominator.
    pub fn parts(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    /// Coefficients as rationals, padded to `φ(d)` entries.
    pub fn coefficients(&self) -> Vec<BigRational> {
        (0..self.ring.degree())
            .map(|i| {
                let c = self.num.get(i).cloned().unwrap_or_default();
                BigRational::new(c, self.den.clone())
            })
            .collect()
    }

    pub fn to_cyclo(&self) -> (CycloInt, BigInt) {
        (
            CycloInt::from_dense(self.ring.d, &self.num),
            self.den.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.ring.d, other.ring.d,
            "elements of different cyclotomic fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let a = poly::scale(&self.num, &other.den);
        let b = poly::scale(&other.num, &self.den);
        Self::normalized(self.ring.clone(), poly::add(&a, &b), &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicElement {
            ring: self.ring.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let prod = poly::mul(&self.num, &other.num);
        let num = poly::rem_monic(&prod, self.ring.phi());
        Self::normalized(self.ring.clone(), num, &self.den * &other.den)
    }

    pub fn conj(&self) -> Self {
        let (x, den) = self.to_cyclo();
        Self::from_cyclo(&x.conj(), &den)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (u, c) = self.ring.inverse_parts(&self.num)?;
        // (num/den)^{-1} = den · u / c
        Self::normalized(self.ring.clone(), poly::scale(&u, &self.den), c).into()
    }

    /// Floating-point value at `ζ_d^k`.
    pub fn eval(&self, k: u32) -> Complex64 {
        let (x, den) = self.to_cyclo();
        self.ring.eval_f64(&x, k) / den.to_f64().unwrap_or(f64::NAN)
    }

    /// Floating-point value at `ζ_d` itself.
    pub fn to_complex(&self) -> Complex64 {
        self.eval(1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Certified sign of a real element.
    pub fn sign(&self) -> Ordering {
        debug_assert!(self.is_real());
        let (x, _) = self.to_cyclo();
        self.ring.sign_real(&x, 1)
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            let (neg, mag) = if q.is_negative() {
                (true, -q)
            } else {
                (false, q)
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
