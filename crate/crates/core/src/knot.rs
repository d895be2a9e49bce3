//! Seifert matrices, the knot families used throughout, and integer surgery
//! presentations.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{self, ZPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Knot,
    Link,
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceKind::Knot => "knot",
            SurfaceKind::Link => "link",
        })
    }
}

/// Square integer matrix of a Seifert pairing.
///
/// Knot matrices have even size and `det(A − Aᵀ) = ±1`. The Alexander
/// polynomial `det(Aᵀ − tA)` is computed on first use and cached.
#[derive(Clone)]
pub struct SeifertMatrix {
    kind: SurfaceKind,
    size: usize,
    entries: Vec<i64>,
    alexander: OnceLock<ZPoly>,
}

impl PartialEq for SeifertMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.size == other.size && self.entries == other.entries
    }
}

impl Eq for SeifertMatrix {}

impl fmt::Debug for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeifertMatrix")
            .field("kind", &self.kind)
            .field("rows", &self.rows())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct SeifertJson {
    kind: SurfaceKind,
    size: usize,
    entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    /// Build and validate a matrix from its rows.
    pub fn new(kind: SurfaceKind, rows: Vec<Vec<i64>>) -> Result<Self> {
        let size = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != size) {
            return Err(Error::Validation(format!(
                "row {i} has {} entries, expected {size}",
                r.len()
            )));
        }
        let m = SeifertMatrix {
            kind,
            size,
            entries: rows.into_iter().flatten().collect(),
            alexander: OnceLock::new(),
        };
        m.validate()?;
        Ok(m)
    }

    fn from_parts_unchecked(kind: SurfaceKind, size: usize, entries: Vec<i64>) -> Self {
        SeifertMatrix {
            kind,
            size,
            entries,
            alexander: OnceLock::new(),
        }
    }

    /// Parse the JSON form `{"kind": "knot"|"link", "size": m, "entries": [[…]]}`.
    ///
    /// Malformed text or a shape mismatch is a parse error; a well-formed
    /// matrix failing the algebraic checks is a validation error.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SeifertJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.entries.len() != raw.size {
            return Err(Error::Parse(format!(
                "size is {} but {} rows were given",
                raw.size,
                raw.entries.len()
            )));
        }
        if let Some((i, r)) = raw
            .entries
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != raw.size)
        {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, expected {}",
                r.len(),
                raw.size
            )));
        }
        Self::new(raw.kind, raw.entries)
    }

    pub fn to_json(&self) -> String {
        let raw = SeifertJson {
            kind: self.kind,
            size: self.size,
            entries: self.rows(),
        };
        serde_json::to_string(&raw).expect("serializing integers cannot fail")
    }

    pub fn validate(&self) -> Result<()> {
        // A − Aᵀ is skew by construction; only knots carry further conditions.
        if self.kind == SurfaceKind::Knot {
            if !self.size.is_multiple_of(2) {
                return Err(Error::Validation(format!(
                    "knot Seifert matrix must have even size, got {}",
                    self.size
                )));
            }
            let skew: Vec<Vec<BigInt>> = (0..self.size)
                .map(|i| {
                    (0..self.size)
                        .map(|j| BigInt::from(self.get(i, j)) - BigInt::from(self.get(j, i)))
                        .collect()
                })
                .collect();
            let det = int_det(skew);
            if !det.abs().is_one() {
                return Err(Error::Validation(format!(
                    "det(A - A^T) = {det}, expected ±1"
                )));
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.size.max(1))
            .take(self.size)
            .map(<[i64]>::to_vec)
            .collect()
    }

    /// `det(Aᵀ − tA)` with coefficients listed from `t^0` upwards.
    pub fn alexander_polynomial(&self) -> &ZPoly {
        self.alexander
            .get_or_init(|| alexander_by_interpolation(self))
    }
}

/// Determinant over the rationals by Gaussian elimination. Zero entries are
/// skipped, so banded matrices cost time linear in their size.
pub(crate) fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        let cols: Vec<usize> = (k + 1..n).filter(|&j| !a[k][j].is_zero()).collect();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for &j in &cols {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
            a[i][k] = BigRational::zero();
        }
    }
    det
}

pub(crate) fn int_det(a: Vec<Vec<BigInt>>) -> BigInt {
    let q = a
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let det = rational_det(q);
    debug_assert!(det.is_integer());
    det.to_integer()
}

/// `det(Aᵀ − tA)` by evaluation at `t = 0, …, m` and Newton interpolation.
fn alexander_by_interpolation(a: &SeifertMatrix) -> ZPoly {
    let m = a.size;
    let values: Vec<BigRational> = (0..=m as i64)
        .map(|t| {
            let rows = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            BigRational::from_integer(BigInt::from(a.get(j, i) - t * a.get(i, j)))
                        })
                        .collect()
                })
                .collect();
            rational_det(rows)
        })
        .collect();
    // divided differences on the nodes 0, 1, …, m
    let mut coef = values;
    for level in 1..=m {
        for i in (level..=m).rev() {
            let diff = &coef[i] - &coef[i - 1];
            coef[i] = diff / BigRational::from_integer(BigInt::from(level));
        }
    }
    // expand Σ coef_i ∏_{j<i} (t − j) from the innermost term outwards
    let mut out: Vec<BigRational> = vec![coef[m].clone()];
    for i in (0..m).rev() {
        let mut next = vec![BigRational::zero(); out.len() + 1];
        for (e, c) in out.iter().enumerate() {
            next[e + 1] += c;
            next[e] -= c * BigRational::from_integer(BigInt::from(i));
        }
        next[0] += &coef[i];
        out = next;
    }
    let mut p: ZPoly = out
        .into_iter()
        .map(|c| {
            assert!(
                c.is_integer(),
                "Alexander polynomial must have integer coefficients"
            );
            c.to_integer()
        })
        .collect();
    poly::trim(&mut p);
    p
}

fn bidiagonal(n: i64, last: i64) -> Result<SeifertMatrix> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "family parameter must be at least 1, got {n}"
        )));
    }
    let m = 2 * n as usize;
    let mut entries = vec![0i64; m * m];
    for i in 0..m {
        entries[i * m + i] = 1;
        if i + 1 < m {
            entries[i * m + i + 1] = 1;
        }
    }
    entries[m * m - 1] = last;
    Ok(SeifertMatrix::from_parts_unchecked(
        SurfaceKind::Knot,
        m,
        entries,
    ))
}

/// The `2n × 2n` Seifert matrix of the two-bridge knot `J_n`: ones on the
/// diagonal except a final `−1`, ones on the superdiagonal.
pub fn jn_seifert(n: i64) -> Result<SeifertMatrix> {
    bidiagonal(n, -1)
}

/// Seifert matrix of the torus knot `T(2, 2n+1)`.
pub fn torus_knot_seifert(n: i64) -> Result<SeifertMatrix> {
    bidiagonal(n, 1)
}

pub fn unknot_seifert() -> SeifertMatrix {
    SeifertMatrix::from_parts_unchecked(SurfaceKind::Knot, 0, Vec::new())
}

/// `−Aᵀ`, a Seifert matrix for the mirror image.
pub fn mirror(a: &SeifertMatrix) -> SeifertMatrix {
    let m = a.size;
    let entries = (0..m * m).map(|idx| -a.get(idx % m, idx / m)).collect();
    SeifertMatrix::from_parts_unchecked(a.kind, m, entries)
}

/// Named knot families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotFamily {
    Unknot,
    /// `T(2, 2n+1)`.
    Torus2(i64),
    Jn(i64),
    Custom,
}

impl KnotFamily {
    pub fn parameter(&self) -> Option<i64> {
        match self {
            KnotFamily::Torus2(n) | KnotFamily::Jn(n) => Some(*n),
            _ => None,
        }
    }

    /// The family's Seifert matrix; `None` for custom knots.
    pub fn seifert(&self) -> Option<Result<SeifertMatrix>> {
        match self {
            KnotFamily::Unknot => Some(Ok(unknot_seifert())),
            KnotFamily::Torus2(n) => Some(torus_knot_seifert(*n)),
            KnotFamily::Jn(n) => Some(jn_seifert(*n)),
            KnotFamily::Custom => None,
        }
    }
}

impl fmt::Display for KnotFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotFamily::Unknot => write!(f, "unknot"),
            KnotFamily::Torus2(n) => write!(f, "torus2:{n}"),
            KnotFamily::Jn(n) => write!(f, "jn:{n}"),
            KnotFamily::Custom => write!(f, "custom"),
        }
    }
}

/// Integer surgery on a framed link together with a homomorphism to `Z_d`
/// sending the `i`-th meridian to `r_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryPresentation {
    linking: Vec<Vec<i64>>,
    residues: Vec<i64>,
    modulus: u32,
}

impl SurgeryPresentation {
    pub fn new(linking: Vec<Vec<i64>>, residues: Vec<i64>, modulus: u32) -> Result<Self> {
        let r = linking.len();
        if r == 0 {
            return Err(Error::InvalidParameter(
                "surgery link needs at least one component".into(),
            ));
        }
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        if linking.iter().any(|row| row.len() != r) {
            return Err(Error::Validation("linking matrix must be square".into()));
        }
        for i in 0..r {
            for j in 0..i {
                if linking[i][j] != linking[j][i] {
                    return Err(Error::Validation(format!(
                        "linking matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        if residues.len() != r {
            return Err(Error::Validation(format!(
                "{} residues given for {r} components",
                residues.len()
            )));
        }
        let d = i64::from(modulus);
        let residues: Vec<i64> = residues.into_iter().map(|x| x.rem_euclid(d)).collect();
        for (i, row) in linking.iter().enumerate() {
            let s: i128 = row
                .iter()
                .zip(&residues)
                .map(|(a, b)| i128::from(*a) * i128::from(*b))
                .sum();
            if s.rem_euclid(i128::from(d)) != 0 {
                return Err(Error::InconsistentModulus(format!(
                    "row {i} of the linking matrix times the residues is {s}, not divisible by {d}"
                )));
            }
        }
        Ok(SurgeryPresentation {
            linking,
            residues,
            modulus,
        })
    }

    pub fn components(&self) -> usize {
        self.linking.len()
    }

    pub fn linking_matrix(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn framings(&self) -> Vec<i64> {
        (0..self.components()).map(|i| self.linking[i][i]).collect()
    }

    pub fn residues(&self) -> &[i64] {
        &self.residues
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// `Σ_{i,j} r_i r_j Λ_ij`.
    pub fn linking_form(&self) -> BigInt {
        let mut s = BigInt::zero();
        for (i, row) in self.linking.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                s += BigInt::from(self.residues[i]) * self.residues[j] * v;
            }
        }
        s
    }
}

/// `n`-surgery on a knot with the abelianization onto `Z_{|n|}`.
pub fn knot_surgery_presentation(n: i64, d: u32) -> Result<SurgeryPresentation> {
    if n == 0 {
        return Err(Error::InvalidSlope("surgery slope must be nonzero".into()));
    }
    if u64::from(d) != n.unsigned_abs() {
        return Err(Error::InconsistentModulus(format!(
            "modulus {d} differs from |n| = {}",
            n.abs()
        )));
    }
    SurgeryPresentation::new(vec![vec![n]], vec![1], d)
}

/// `M(J_n, d)` as `(d + 4n, 1/n)` surgery on the two-component link.
pub fn twist_reduction(d: i64, n: i64) -> Result<(i64, BigRational)> {
    if n == 0 {
        return Err(Error::InvalidSlope(
            "n = 0 gives the degenerate slope 1/0".into(),
        ));
    }
    let a = d
        .checked_add(
            n.checked_mul(4)
                .ok_or_else(|| Error::InvalidParameter("overflow".into()))?,
        )
        .ok_or_else(|| Error::InvalidParameter("overflow".into()))?;
    Ok((a, BigRational::new(BigInt::one(), BigInt::from(n))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> ZPoly {
        let mut p: ZPoly = v.iter().map(|&x| BigInt::from(x)).collect();
        poly::trim(&mut p);
        p
    }

    #[test]
    fn jn_small_cases() {
        assert_eq!(jn_seifert(1).unwrap().rows(), vec![vec![1, 1], vec![0, -1]]);
        let a = jn_seifert(2).unwrap();
        assert_eq!(
            a.rows(),
            vec![
                vec![1, 1, 0, 0],
                vec![0, 1, 1, 0],
                vec![0, 0, 1, 1],
                vec![0, 0, 0, -1]
            ]
        );
        assert!(matches!(jn_seifert(0), Err(Error::InvalidParameter(_))));
        assert!(matches!(jn_seifert(-3), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn torus_small_cases() {
        assert_eq!(
            torus_knot_seifert(1).unwrap().rows(),
            vec![vec![1, 1], vec![0, 1]]
        );
        let a = torus_knot_seifert(3).unwrap();
        assert_eq!(a.size(), 6);
        assert!((0..6).all(|i| a.get(i, i) == 1));
        assert!(matches!(
            torus_knot_seifert(0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn families_validate() {
        for n in 1..=200 {
            jn_seifert(n).unwrap().validate().unwrap();
            torus_knot_seifert(n).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn skew_determinant_is_one() {
        for n in 1..=12 {
            for a in [jn_seifert(n).unwrap(), torus_knot_seifert(n).unwrap()] {
                let m = a.size();
                let skew = (0..m)
                    .map(|i| {
                        (0..m)
                            .map(|j| BigInt::from(a.get(i, j) - a.get(j, i)))
                            .collect()
                    })
                    .collect();
                assert_eq!(int_det(skew), BigInt::one());
            }
        }
    }

    #[test]
    fn mirror_is_negative_transpose() {
        let t = torus_knot_seifert(1).unwrap();
        assert_eq!(mirror(&t).rows(), vec![vec![-1, 0], vec![-1, -1]]);
        assert_eq!(mirror(&mirror(&t)), t);
    }

    #[test]
    fn alexander_polynomials() {
        // trefoil: t^2 - t + 1 up to sign and units
        assert_eq!(
            torus_knot_seifert(1).unwrap().alexander_polynomial(),
            &ints(&[1, -1, 1])
        );
        // T(2,5): t^4 - t^3 + t^2 - t + 1
        assert_eq!(
            torus_knot_seifert(2).unwrap().alexander_polynomial(),
            &ints(&[1, -1, 1, -1, 1])
        );
        assert_eq!(unknot_seifert().alexander_polynomial(), &ints(&[1]));
        // J_1 = figure eight: -t^2 + 3t - 1 up to sign
        let fig8 = jn_seifert(1).unwrap();
        let p = fig8.alexander_polynomial();
        assert!(p == &ints(&[-1, 3, -1]) || p == &ints(&[1, -3, 1]));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let t = torus_knot_seifert(2).unwrap();
        assert_eq!(SeifertMatrix::from_json(&t.to_json()).unwrap(), t);
        let bad_syntax = r#"{"kind":"knot","size":2,"entries":[[1,1],[0,1.5]]}"#;
        assert!(matches!(
            SeifertMatrix::from_json(bad_syntax),
            Err(Error::Parse(_))
        ));
        let bad_shape = r#"{"kind":"knot","size":2,"entries":[[1,1]]}"#;
        assert!(matches!(
            SeifertMatrix::from_json(bad_shape),
            Err(Error::Parse(_))
        ));
        let not_unimodular = r#"{"kind":"knot","size":2,"entries":[[1,2],[0,1]]}"#;
        assert!(matches!(
            SeifertMatrix::from_json(not_unimodular),
            Err(Error::Validation(_))
        ));
        let odd = r#"{"kind":"knot","size":1,"entries":[[3]]}"#;
        assert!(matches!(
            SeifertMatrix::from_json(odd),
            Err(Error::Validation(_))
        ));
        let link = r#"{"kind":"link","size":1,"entries":[[3]]}"#;
        assert_eq!(
            SeifertMatrix::from_json(link).unwrap().kind(),
            SurfaceKind::Link
        );
    }

    #[test]
    fn surgery_presentations() {
        let p = knot_surgery_presentation(5, 5).unwrap();
        assert_eq!(p.linking_matrix(), &[vec![5]]);
        assert_eq!(p.residues(), &[1]);
        assert!(knot_surgery_presentation(-5, 5).is_ok());
        assert!(matches!(
            knot_surgery_presentation(0, 1),
            Err(Error::InvalidSlope(_))
        ));
        assert!(matches!(
            knot_surgery_presentation(5, 4),
            Err(Error::InconsistentModulus(_))
        ));
        // residues are normalized and the homological condition is enforced
        let q = SurgeryPresentation::new(vec![vec![2, 1], vec![1, 2]], vec![-2, 4], 3).unwrap();
        assert_eq!(q.residues(), &[1, 1]);
        assert!(SurgeryPresentation::new(vec![vec![2, 1], vec![1, 2]], vec![1, 0], 3).is_err());
        assert!(SurgeryPresentation::new(vec![vec![2, 1], vec![0, 2]], vec![0, 0], 3).is_err());
    }

    #[test]
    fn twist_reductions() {
        let half = |n: i64| BigRational::new(BigInt::one(), BigInt::from(n));
        assert_eq!(twist_reduction(2, 3).unwrap(), (14, half(3)));
        assert_eq!(twist_reduction(0, 1).unwrap(), (4, half(1)));
        assert_eq!(twist_reduction(5, 2).unwrap(), (13, half(2)));
        assert!(matches!(twist_reduction(5, 0), Err(Error::InvalidSlope(_))));
    }
}
