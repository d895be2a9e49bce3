//! Levine-Tristram signatures at roots of unity and their averages.

mod ldl;

use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::cyclotomic::{CycloInt, CyclotomicElement, Ring};
use crate::error::{Error, Result};
use crate::knot::SeifertMatrix;

/// Relative threshold (in units of machine epsilon times the Frobenius norm)
/// below which a floating-point eigenvalue is not trusted.
pub const FLOAT_CERT_FACTOR: f64 = 1e6;

/// The point `e^{2πik/d}`, stored reduced together with the pair it was
/// built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitRoot {
    k: u32,
    d: u32,
    orig: (i64, i64),
}

impl UnitRoot {
    pub fn new(k: i64, d: i64) -> Result<Self> {
        if d <= 0 {
            return Err(Error::InvalidArgument(format!(
                "root of unity denominator must be positive, got {d}"
            )));
        }
        if d > i64::from(u32::MAX) {
            return Err(Error::InvalidArgument(format!(
                "denominator {d} is too large"
            )));
        }
        let r = k.rem_euclid(d);
        let g = r.gcd(&d);
        Ok(UnitRoot {
            k: (r / g) as u32,
            d: (d / g) as u32,
            orig: (k, d),
        })
    }

    /// Reduced numerator, in `0..d`.
    pub fn numerator(&self) -> u32 {
        self.k
    }

    /// Reduced denominator.
    pub fn denominator(&self) -> u32 {
        self.d
    }

    /// The `(k, d)` pair as given.
    pub fn original(&self) -> (i64, i64) {
        self.orig
    }

    pub fn conj(&self) -> UnitRoot {
        let k = (self.d - self.k) % self.d;
        UnitRoot {
            k,
            d: self.d,
            orig: (-self.orig.0, self.orig.1),
        }
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    /// `k/d` as a rational in `[0, 1)`.
    pub fn fraction(&self) -> BigRational {
        BigRational::new(BigInt::from(self.k), BigInt::from(self.d))
    }

    pub fn to_complex(&self) -> Complex<f64> {
        let ang = 2.0 * std::f64::consts::PI * f64::from(self.k) / f64::from(self.d);
        Complex::from_polar(1.0, ang)
    }
}

impl fmt::Display for UnitRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.k, self.d)
    }
}

impl FromStr for UnitRoot {
    type Err = Error;

    /// Parses `"k/d"`.
    fn from_str(s: &str) -> Result<Self> {
        let (k, d) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected k/d, got {s:?}")))?;
        let k: i64 = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: i64 = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        UnitRoot::new(k, d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InertiaTriple {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
    pub certified: bool,
}

impl InertiaTriple {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn size(&self) -> usize {
        self.positive + self.zero + self.negative
    }

    /// The counts without the certification flag.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.positive, self.zero, self.negative)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            _ => Err(Error::Parse(format!(
                "unknown mode {s:?}, expected exact or float"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

/// Hermitian matrix over `Q(ζ_d)` with entries kept as group-ring elements
/// (integral after clearing a positive denominator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    d: u32,
    size: usize,
    entries: Vec<CycloInt>,
}

impl HermitianForm {
    /// Build from canonical field elements; fails unless `H = H*`.
    pub fn from_elements(size: usize, entries: Vec<CyclotomicElement>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {size}x{size} matrix",
                entries.len()
            )));
        }
        let Some(d) = entries.first().map(CyclotomicElement::order) else {
            return Ok(HermitianForm {
                d: 1,
                size: 0,
                entries: Vec::new(),
            });
        };
        if entries.iter().any(|e| e.order() != d) {
            return Err(Error::InvalidArgument(
                "entries from different cyclotomic fields".into(),
            ));
        }
        for i in 0..size {
            for j in i..size {
                if entries[i * size + j] != entries[j * size + i].conj() {
                    return Err(Error::InvalidArgument(format!(
                        "matrix is not Hermitian at ({i}, {j})"
                    )));
                }
            }
        }
        // a common positive denominator does not change the inertia
        let mut lcm = BigInt::one();
        for e in &entries {
            lcm = lcm.lcm(e.parts().1);
        }
        let entries = entries
            .iter()
            .map(|e| {
                let (x, den) = e.to_cyclo();
                x.mul_int(&(&lcm / den))
            })
            .collect();
        Ok(HermitianForm { d, size, entries })
    }

    /// Real symmetric integer matrix viewed as a Hermitian form over `Q`.
    pub fn from_integer_symmetric(rows: &[Vec<i64>]) -> Result<Self> {
        let size = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != size {
                return Err(Error::InvalidArgument("matrix must be square".into()));
            }
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&v| CycloInt::constant(1, v))
            .collect();
        Ok(HermitianForm {
            d: 1,
            size,
            entries,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The order `d` of the field `Q(ζ_d)` holding the entries.
    pub fn order(&self) -> u32 {
        self.d
    }

    /// Entry `(i, j)` as a canonical field element, up to the positive
    /// scalar cleared at construction.
    pub fn entry(&self, i: usize, j: usize) -> CyclotomicElement {
        CyclotomicElement::from_cyclo(&self.entries[i * self.size + j], &BigInt::one())
    }

    pub fn to_complex_matrix(&self) -> DMatrix<Complex<f64>> {
        let ring = Ring::get(self.d);
        DMatrix::from_fn(self.size, self.size, |i, j| {
            ring.eval_f64(&self.entries[i * self.size + j], 1)
        })
    }
}

/// `H = (1 − ω)A + (1 − ω̄)Aᵀ`.
pub fn hermitian_form(a: &SeifertMatrix, omega: &UnitRoot) -> HermitianForm {
    let (d, k) = (omega.denominator(), i64::from(omega.numerator()));
    let m = a.size();
    let one_minus = |e: i64| CycloInt::from_terms(d, [(0, BigInt::one()), (e, -BigInt::one())]);
    let (u, ubar) = (one_minus(k), one_minus(-k));
    let entries = (0..m * m)
        .map(|idx| {
            let (i, j) = (idx / m, idx % m);
            u.mul_int(&BigInt::from(a.get(i, j)))
                .add(&ubar.mul_int(&BigInt::from(a.get(j, i))))
        })
        .collect();
    HermitianForm {
        d,
        size: m,
        entries,
    }
}

/// Inertia of a Hermitian matrix given in floating point.
pub fn float_inertia(h: DMatrix<Complex<f64>>) -> InertiaTriple {
    let m = h.nrows();
    if m == 0 {
        return InertiaTriple {
            positive: 0,
            zero: 0,
            negative: 0,
            certified: true,
        };
    }
    let norm = h.norm();
    let tol = FLOAT_CERT_FACTOR * f64::EPSILON * norm;
    let eig = SymmetricEigen::new(h).eigenvalues;
    let (mut p, mut z, mut n) = (0, 0, 0);
    for &v in eig.iter() {
        if v.abs() <= tol {
            z += 1;
        } else if v > 0.0 {
            p += 1;
        } else {
            n += 1;
        }
    }
    // eigenvalues inside the tolerance band cannot be told apart from zero
    InertiaTriple {
        positive: p,
        zero: z,
        negative: n,
        certified: z == 0 && eig.iter().all(|v| v.is_finite()),
    }
}

pub fn inertia(h: &HermitianForm, mode: Mode) -> InertiaTriple {
    match mode {
        Mode::Exact => {
            let (p, z, n) = ldl::exact_inertia(h.d, h.size, &h.entries);
            InertiaTriple {
                positive: p,
                zero: z,
                negative: n,
                certified: true,
            }
        }
        Mode::Float => float_inertia(h.to_complex_matrix()),
    }
}

/// Inertia of `(1 − ω)A + (1 − ω̄)Aᵀ`; its `signature()` is `σ_K(ω)`.
pub fn levine_tristram(a: &SeifertMatrix, omega: &UnitRoot, mode: Mode) -> InertiaTriple {
    let m = a.size();
    if omega.is_one() || m == 0 {
        return InertiaTriple {
            positive: 0,
            zero: m,
            negative: 0,
            certified: true,
        };
    }
    match mode {
        Mode::Exact => inertia(&hermitian_form(a, omega), Mode::Exact),
        Mode::Float => {
            let w = omega.to_complex();
            let (u, ubar) = (
                Complex::new(1.0, 0.0) - w,
                Complex::new(1.0, 0.0) - w.conj(),
            );
            let h = DMatrix::from_fn(m, m, |i, j| {
                u * a.get(i, j) as f64 + ubar * a.get(j, i) as f64
            });
            float_inertia(h)
        }
    }
}

fn alexander_cyclo(a: &SeifertMatrix, omega: &UnitRoot) -> Result<CycloInt> {
    if omega.is_one() {
        return Err(Error::InvalidArgument(
            "the Alexander polynomial is evaluated only at ω ≠ 1".into(),
        ));
    }
    let k = i64::from(omega.numerator());
    let delta = a.alexander_polynomial();
    Ok(CycloInt::from_terms(
        omega.denominator(),
        delta
            .iter()
            .enumerate()
            .map(|(i, c)| (i as i64 * k, c.clone())),
    ))
}

/// `det(Aᵀ − ωA)` as an exact element of `Q(ζ_d)`, expressed in powers of
/// `ζ_d` where `ω = ζ_d^k`.
pub fn alexander_at(a: &SeifertMatrix, omega: &UnitRoot) -> Result<CyclotomicElement> {
    Ok(CyclotomicElement::from_cyclo(
        &alexander_cyclo(a, omega)?,
        &BigInt::one(),
    ))
}

/// Whether `det(Aᵀ − ωA) = 0`, without forming the canonical element.
pub fn alexander_vanishes(a: &SeifertMatrix, omega: &UnitRoot) -> Result<bool> {
    let x = alexander_cyclo(a, omega)?;
    Ok(Ring::get(omega.denominator()).is_zero(&x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AverageSignature {
    pub value: BigRational,
    pub certified: bool,
}

/// `(1/d) Σ_{k=1}^{d−1} σ_K(e^{2πik/d})`; zero for `d = 1`.
///
/// `σ_K(ω̄) = σ_K(ω)` since the form at `ω̄` is the complex conjugate of
/// the form at `ω`, so only `k ≤ d/2` is evaluated.
pub fn avg_signature(a: &SeifertMatrix, d: u32, mode: Mode) -> AverageSignature {
    assert!(d >= 1, "average over d-th roots needs d >= 1");
    if a.size() == 0 {
        return AverageSignature {
            value: BigRational::from_integer(BigInt::from(0)),
            certified: true,
        };
    }
    let mut total: i64 = 0;
    let mut certified = true;
    for k in 1..=d / 2 {
        let omega = UnitRoot::new(i64::from(k), i64::from(d)).expect("d is positive");
        let t = levine_tristram(a, &omega, mode);
        certified &= t.certified;
        let weight = if 2 * k == d { 1 } else { 2 };
        total += weight * t.signature();
    }
    AverageSignature {
        value: BigRational::new(BigInt::from(total), BigInt::from(d)),
        certified,
    }
}

pub fn avg_signature_exact(a: &SeifertMatrix, d: u32) -> BigRational {
    avg_signature(a, d, Mode::Exact).value
}

/// Closed form `2n − 2⌊(2n+1)(1/2 − x)⌋` for the signature of `T(2, 2n+1)`
/// at `e^{2πix}`, `0 < x ≤ 1/2`.
pub fn litherland_torus_signature(n: i64, x: &BigRational) -> Result<i64> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 1, got {n}"
        )));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if !x.is_positive() || *x > half {
        return Err(Error::InvalidArgument(format!(
            "x = {x} is outside (0, 1/2]"
        )));
    }
    let t = BigRational::from_integer(BigInt::from(2 * n + 1)) * (half - x);
    let fl: i64 = t
        .floor()
        .to_integer()
        .try_into()
        .expect("floor fits in i64");
    Ok(2 * n - 2 * fl)
}

/// `(1 − 1/d²) n − (d − 1)/(2d)`.
pub fn torus_avg_lower_bound(n: i64, d: i64) -> BigRational {
    let d2 = BigInt::from(d) * d;
    let lead = BigRational::new(&d2 - 1, d2) * BigInt::from(n);
    lead - BigRational::new(BigInt::from(d - 1), BigInt::from(2 * d))
}

/// `(1 − 1/d²) n − (5d − 1)/(2d)`, the corresponding estimate for `J_n`.
pub fn jn_avg_lower_bound(n: i64, d: i64) -> BigRational {
    let d2 = BigInt::from(d) * d;
    let lead = BigRational::new(&d2 - 1, d2) * BigInt::from(n);
    lead - BigRational::new(BigInt::from(5 * d - 1), BigInt::from(2 * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::{jn_seifert, torus_knot_seifert, unknot_seifert};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn root(k: i64, d: i64) -> UnitRoot {
        UnitRoot::new(k, d).unwrap()
    }

    #[test]
    fn unit_root_reduction() {
        let w = root(4, 6);
        assert_eq!((w.numerator(), w.denominator()), (2, 3));
        assert_eq!(w.original(), (4, 6));
        assert_eq!(w.conj().numerator(), 1);
        assert!(root(6, 6).is_one());
        assert!(root(0, 5).is_one());
        assert_eq!(root(-1, 4).numerator(), 3);
        assert!(UnitRoot::new(1, 0).is_err());
        assert_eq!("3/12".parse::<UnitRoot>().unwrap().denominator(), 4);
        assert!("3".parse::<UnitRoot>().is_err());
    }

    #[test]
    fn trefoil_forms() {
        let t = torus_knot_seifert(1).unwrap();
        let h = hermitian_form(&t, &root(1, 2));
        let four = CyclotomicElement::from_int(2, 4);
        let two = CyclotomicElement::from_int(2, 2);
        assert_eq!(h.entry(0, 0), four);
        assert_eq!(h.entry(0, 1), two);
        assert_eq!(h.entry(1, 1), four);
        let h1 = hermitian_form(&t, &root(0, 1));
        assert!((0..2).all(|i| (0..2).all(|j| h1.entry(i, j).is_zero())));
        // at ζ_6: H11 = H22 = 1, H12 = 1/2 − (√3/2) i
        let h6 = hermitian_form(&t, &root(1, 6));
        assert_eq!(h6.entry(0, 0), CyclotomicElement::one(6));
        let v = h6.entry(0, 1).to_complex();
        assert!((v.re - 0.5).abs() < 1e-14 && (v.im + 3f64.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn inertia_examples() {
        let id = HermitianForm::from_integer_symmetric(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(inertia(&id, Mode::Exact).counts(), (2, 0, 0));
        let t = torus_knot_seifert(1).unwrap();
        let at6 = inertia(&hermitian_form(&t, &root(1, 6)), Mode::Exact);
        assert_eq!(at6.counts(), (1, 1, 0));
        assert!(at6.certified);
        let at2 = inertia(&hermitian_form(&t, &root(1, 2)), Mode::Exact);
        assert_eq!(at2.counts(), (2, 0, 0));
        let f6 = inertia(&hermitian_form(&t, &root(1, 6)), Mode::Float);
        assert!(!f6.certified);
        let f2 = inertia(&hermitian_form(&t, &root(1, 2)), Mode::Float);
        assert!(f2.certified);
        assert_eq!(f2.counts(), (2, 0, 0));
    }

    #[test]
    fn signature_examples() {
        let t = torus_knot_seifert(1).unwrap();
        assert_eq!(levine_tristram(&t, &root(1, 2), Mode::Exact).signature(), 2);
        assert_eq!(levine_tristram(&t, &root(1, 6), Mode::Exact).signature(), 1);
        assert_eq!(
            levine_tristram(&unknot_seifert(), &root(1, 3), Mode::Exact).signature(),
            0
        );
        let j1 = jn_seifert(1).unwrap();
        let s = levine_tristram(&j1, &root(1, 2), Mode::Exact);
        assert_eq!((s.counts(), s.signature()), ((1, 0, 1), 0));
        assert_eq!(levine_tristram(&t, &root(0, 1), Mode::Exact).signature(), 0);
        let m = crate::knot::mirror(&t);
        assert_eq!(
            levine_tristram(&m, &root(1, 2), Mode::Exact).signature(),
            -2
        );
    }

    #[test]
    fn alexander_examples() {
        let t = torus_knot_seifert(1).unwrap();
        assert!(alexander_at(&t, &root(1, 6)).unwrap().is_zero());
        assert!(alexander_vanishes(&t, &root(5, 6)).unwrap());
        // Δ(−1) = 3
        assert_eq!(
            alexander_at(&t, &root(1, 2)).unwrap(),
            CyclotomicElement::from_int(2, 3)
        );
        assert_eq!(
            alexander_at(&unknot_seifert(), &root(1, 5)).unwrap(),
            CyclotomicElement::one(5)
        );
        assert!(matches!(
            alexander_at(&t, &root(0, 3)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn averages() {
        let t = torus_knot_seifert(1).unwrap();
        assert_eq!(avg_signature_exact(&t, 2), q(1, 1));
        assert_eq!(avg_signature_exact(&t, 3), q(4, 3));
        assert_eq!(avg_signature_exact(&t, 1), q(0, 1));
        for d in 1..8 {
            assert_eq!(avg_signature_exact(&unknot_seifert(), d), q(0, 1));
        }
        let f = avg_signature(&t, 3, Mode::Float);
        assert!(f.certified);
        assert_eq!(f.value, q(4, 3));
    }

    #[test]
    fn litherland_values() {
        assert_eq!(litherland_torus_signature(1, &q(1, 2)).unwrap(), 2);
        assert_eq!(litherland_torus_signature(1, &q(1, 6)).unwrap(), 0);
        assert_eq!(litherland_torus_signature(5, &q(1, 2)).unwrap(), 10);
        assert!(litherland_torus_signature(1, &q(0, 1)).is_err());
        assert!(litherland_torus_signature(1, &q(2, 3)).is_err());
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(torus_avg_lower_bound(3, 2), q(2, 1));
        assert_eq!(torus_avg_lower_bound(1, 2), q(1, 2));
        assert_eq!(torus_avg_lower_bound(4, 3), q(29, 9));
        // (1 − 1/9)·10 − 14/6
        assert_eq!(jn_avg_lower_bound(10, 3), q(80, 9) - q(14, 6));
    }
}
