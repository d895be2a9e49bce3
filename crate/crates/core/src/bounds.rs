//! Triangulation complexity bounds for surgeries on knots, the Gromov norm
//! gap estimate, and the slope-length arithmetic behind hyperbolicity.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::knot::SeifertMatrix;
use crate::signature::avg_signature_exact;

/// `2π`, the slope-length threshold for hyperbolic Dehn filling.
pub const TWO_PI: f64 = std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Quoted as published.
    Published,
    /// Obtained by arithmetic from published values.
    Derived,
}

/// Cusp translation data: the meridian translation and the (real)
/// longitude translation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspData {
    pub meridian: Complex64,
    pub longitude: f64,
}

impl CuspData {
    pub fn new(meridian: Complex64, longitude: f64) -> Result<Self> {
        if longitude.is_nan()
            || longitude <= 0.0
            || !meridian.re.is_finite()
            || !meridian.im.is_finite()
        {
            return Err(Error::InvalidArgument(
                "longitude translation must be positive".into(),
            ));
        }
        Ok(CuspData {
            meridian,
            longitude,
        })
    }
}

/// The fixed numerical inputs of the bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PaperConstants {
    pub c_univ: i64,
    pub c_denom: i64,
    pub upper_a: i64,
    pub upper_b: i64,
    pub vol_l: f64,
    pub v3: f64,
    pub norm_bound: f64,
    pub cusp: CuspData,
}

pub const CONSTANTS: PaperConstants = PaperConstants {
    c_univ: 209_139_840,
    c_denom: 627_419_520,
    upper_a: 96,
    upper_b: 128,
    vol_l: 5.3335,
    v3: 1.01494,
    norm_bound: 5.2552,
    cusp: CuspData {
        meridian: Complex64 {
            re: -0.4204,
            im: 1.1124,
        },
        longitude: 3.3636,
    },
};

impl PaperConstants {
    /// Name, value and origin of every constant.
    pub fn provenance(&self) -> Vec<(&'static str, String, Provenance)> {
        use Provenance::*;
        vec![
            ("c_univ", self.c_univ.to_string(), Published),
            ("c_denom", self.c_denom.to_string(), Derived),
            ("upper_a", self.upper_a.to_string(), Published),
            ("upper_b", self.upper_b.to_string(), Published),
            ("vol_l", self.vol_l.to_string(), Published),
            ("v3", self.v3.to_string(), Published),
            ("norm_bound", self.norm_bound.to_string(), Published),
            (
                "cusp_meridian",
                format!("{}", self.cusp.meridian),
                Published,
            ),
            ("cusp_longitude", self.cusp.longitude.to_string(), Published),
        ]
    }
}

fn denom() -> BigInt {
    BigInt::from(CONSTANTS.c_denom)
}

fn check_slope(n: i64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidSlope("surgery slope must be nonzero".into()));
    }
    Ok(BigInt::from(n.unsigned_abs()))
}

/// `(|n| − 3 − 6 g₄) / 627419520`; negative values are returned unchanged.
pub fn lower_bound_slice_genus(n: i64, g4: u64) -> Result<BigRational> {
    let m = check_slope(n)?;
    Ok(BigRational::new(m - 3 - BigInt::from(g4) * 6, denom()))
}

/// `(|n| − 3 − 6 c) / 627419520` for crossing number `c`.
pub fn lower_bound_crossing(n: i64, crossing: u64) -> Result<BigRational> {
    lower_bound_slice_genus(n, crossing)
}

/// `(3|σ̄(K, |n|)| − |n| + 1) / 627419520`.
pub fn lower_bound_signature(a: &SeifertMatrix, n: i64) -> Result<BigRational> {
    let m = check_slope(n)?;
    let d = u32::try_from(n.unsigned_abs())
        .map_err(|_| Error::InvalidSlope(format!("|n| = {m} is too large")))?;
    Ok(signature_bound_from_average(&avg_signature_exact(a, d), n))
}

/// The signature bound given `σ̄(K, |n|)`.
pub fn signature_bound_from_average(avg: &BigRational, n: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(n.unsigned_abs()));
    (avg.abs() * BigInt::from(3) - m + BigInt::from(1)) / denom()
}

/// `96|n| + 128c`.
pub fn upper_bound(n: i64, crossing: u64) -> BigInt {
    BigInt::from(CONSTANTS.upper_a) * n.unsigned_abs() + BigInt::from(CONSTANTS.upper_b) * crossing
}

/// `209139840 · c(M)`, the universal bound on `|ρ|`.
pub fn universal_rho_bound(complexity: u64) -> BigInt {
    BigInt::from(CONSTANTS.c_univ) * complexity
}

/// `|ρ| / 209139840`, a lower bound on complexity.
pub fn complexity_from_rho(rho: &BigRational) -> BigRational {
    rho.abs() / BigInt::from(CONSTANTS.c_univ)
}

/// `|p·m + q·l|`.
pub fn slope_length(cusp: &CuspData, p: i64, q: i64) -> Result<f64> {
    if p == 0 && q == 0 {
        return Err(Error::InvalidSlope("(0, 0) is not a slope".into()));
    }
    Ok((cusp.meridian * p as f64 + Complex64::new(cusp.longitude * q as f64, 0.0)).norm())
}

/// Whether each slope is longer than `2π`.
pub fn two_pi_check(cusp: &CuspData, slopes: &[(i64, i64)]) -> Result<Vec<bool>> {
    slopes
        .iter()
        .map(|&(p, q)| slope_length(cusp, p, q).map(|l| l > TWO_PI))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GromovNormBound {
    /// `Vol / v₃` from the stored constants.
    pub computed: f64,
    /// The published figure.
    pub published: f64,
}

pub fn gromov_norm_bound() -> GromovNormBound {
    GromovNormBound {
        computed: CONSTANTS.vol_l / CONSTANTS.v3,
        published: CONSTANTS.norm_bound,
    }
}

/// `(3(1 − 1/d²)n − (d + 7)) / 627419520 − 6`, for `n > 2`, `d > 1`.
pub fn gap_lower_bound(n: i64, d: i64) -> Result<BigRational> {
    if n <= 2 {
        return Err(Error::Hypothesis(format!(
            "the gap bound needs n > 2, got {n}"
        )));
    }
    if d <= 1 {
        return Err(Error::Hypothesis(format!(
            "the gap bound needs d > 1, got {d}"
        )));
    }
    let d2 = BigInt::from(d) * d;
    let lead = BigRational::new(BigInt::from(3) * (&d2 - 1) * n, d2);
    Ok((lead - BigInt::from(d + 7)) / denom() - BigInt::from(6))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub slope: i64,
    pub crossing: Option<u64>,
    pub g4: Option<u64>,
    pub avg_signature: BigRational,
    pub lower_signature: BigRational,
    pub lower_slice_genus: Option<BigRational>,
    pub lower_crossing: Option<BigRational>,
    pub best_lower: BigRational,
    pub upper: Option<BigInt>,
}

impl BoundReport {
    /// Lower bounds that are not positive say nothing.
    pub fn vacuous(&self) -> Vec<(&'static str, bool)> {
        let mut out = vec![("lower_signature", !self.lower_signature.is_positive())];
        if let Some(v) = &self.lower_slice_genus {
            out.push(("lower_slice_genus", !v.is_positive()));
        }
        if let Some(v) = &self.lower_crossing {
            out.push(("lower_crossing", !v.is_positive()));
        }
        out
    }

    /// `best_lower ≤ upper` when an upper bound is present.
    pub fn is_consistent(&self) -> bool {
        self.upper
            .as_ref()
            .is_none_or(|u| self.best_lower <= BigRational::from_integer(u.clone()))
    }
}

/// Every applicable bound for `n`-surgery on the knot with Seifert matrix `a`.
pub fn bound_report(
    a: &SeifertMatrix,
    n: i64,
    crossing: Option<u64>,
    g4: Option<u64>,
) -> Result<BoundReport> {
    check_slope(n)?;
    let d = u32::try_from(n.unsigned_abs())
        .map_err(|_| Error::InvalidSlope(format!("slope {n} is too large")))?;
    let avg = avg_signature_exact(a, d);
    bound_report_from_average(avg, n, crossing, g4)
}

/// As [`bound_report`], with `σ̄(K, |n|)` already known.
pub fn bound_report_from_average(
    avg: BigRational,
    n: i64,
    crossing: Option<u64>,
    g4: Option<u64>,
) -> Result<BoundReport> {
    check_slope(n)?;
    let lower_signature = signature_bound_from_average(&avg, n);
    let lower_slice_genus = g4.map(|g| lower_bound_slice_genus(n, g)).transpose()?;
    let lower_crossing = crossing.map(|c| lower_bound_crossing(n, c)).transpose()?;
    let best_lower = [
        Some(&lower_signature),
        lower_slice_genus.as_ref(),
        lower_crossing.as_ref(),
    ]
    .into_iter()
    .flatten()
    .max()
    .cloned()
    .unwrap_or_else(BigRational::zero);
    Ok(BoundReport {
        slope: n,
        crossing,
        g4,
        avg_signature: avg,
        lower_signature,
        lower_slice_genus,
        lower_crossing,
        best_lower,
        upper: crossing.map(|c| upper_bound(n, c)),
    })
}
