//! Casson-Gordon signatures and Cheeger-Gromov ρ-invariants of integer
//! surgeries, for homomorphisms onto finite cyclic groups.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::knot::{knot_surgery_presentation, mirror, SeifertMatrix, SurgeryPresentation};
use crate::signature::{
    avg_signature_exact, inertia, levine_tristram, HermitianForm, Mode, UnitRoot,
};

/// Where the Seifert matrix of the cabled link `L′` comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CableData {
    /// Every residue is 1, so `L′` is the surgery link itself, given by
    /// this Seifert matrix.
    Trivial(SeifertMatrix),
    /// A Seifert matrix for the full cable link and its number of
    /// components.
    Supplied {
        seifert: SeifertMatrix,
        components: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoResult {
    pub value: BigRational,
    /// `σ_k` for `k = 0, …, d − 1`; the first entry is always zero.
    pub per_level: Vec<BigRational>,
    pub presentation: SurgeryPresentation,
}

fn q(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn resolve<'a>(pres: &SurgeryPresentation, cable: &'a CableData) -> Result<&'a SeifertMatrix> {
    match cable {
        CableData::Trivial(a) => {
            // residues are reduced mod d, so a meridian sent to 1 reads 1 % d
            let one = 1 % i64::from(pres.modulus());
            if let Some(r) = pres.residues().iter().find(|&&r| r != one) {
                return Err(Error::MissingCableData(format!(
                    "residue {r} needs a supplied Seifert matrix for the cable link"
                )));
            }
            Ok(a)
        }
        CableData::Supplied {
            seifert,
            components,
        } => {
            if *components == 0 {
                return Err(Error::MissingCableData(
                    "the cable link must be nonempty".into(),
                ));
            }
            Ok(seifert)
        }
    }
}

/// Signature of the linking matrix.
pub fn linking_signature(pres: &SurgeryPresentation) -> i64 {
    let h = HermitianForm::from_integer_symmetric(pres.linking_matrix())
        .expect("linking matrix is symmetric");
    inertia(&h, Mode::Exact).signature()
}

/// `σ_k(M, φ) = σ_{L′}(e^{2πik/d}) − sign Λ + (2(d−k)k/d²) Σ r_i r_j Λ_ij`.
pub fn casson_gordon_sigma(
    pres: &SurgeryPresentation,
    cable: &CableData,
    k: i64,
) -> Result<BigRational> {
    let d = i64::from(pres.modulus());
    if k <= 0 || k >= d {
        return Err(Error::InvalidArgument(format!(
            "level k = {k} must satisfy 0 < k < {d}"
        )));
    }
    let link = resolve(pres, cable)?;
    let sigma = levine_tristram(link, &UnitRoot::new(k, d)?, Mode::Exact).signature();
    Ok(gilmer_terms(pres, sigma, k))
}

fn gilmer_terms(pres: &SurgeryPresentation, sigma_link: i64, k: i64) -> BigRational {
    let d = i64::from(pres.modulus());
    let coeff = q(2 * (d - k) * k, d * d);
    BigRational::from_integer(BigInt::from(sigma_link - linking_signature(pres)))
        + coeff * pres.linking_form()
}

/// `σ̄(L′, d) − ((d−1)/d) sign Λ + ((d²−1)/(3d²)) Σ r_i r_j Λ_ij`, checked
/// against the average of the per-level values.
pub fn rho_finite_cyclic(
    pres: &SurgeryPresentation,
    cable: &CableData,
    d: u32,
) -> Result<RhoResult> {
    if d != pres.modulus() {
        return Err(Error::InconsistentModulus(format!(
            "requested d = {d} but the presentation has modulus {}",
            pres.modulus()
        )));
    }
    let link = resolve(pres, cable)?;
    let di = i64::from(d);
    let sign_lambda = linking_signature(pres);
    let closed = avg_signature_exact(link, d) - q(di - 1, di) * BigInt::from(sign_lambda)
        + q(di * di - 1, 3 * di * di) * pres.linking_form();

    let mut per_level = vec![BigRational::zero()];
    for k in 1..di {
        per_level.push(casson_gordon_sigma(pres, cable, k)?);
    }
    let total: BigRational = per_level.iter().sum();
    let averaged = total / BigInt::from(d);
    if averaged != closed {
        return Err(Error::Consistency(format!(
            "closed form gives {closed} but the per-level average is {averaged}"
        )));
    }
    Ok(RhoResult {
        value: closed,
        per_level,
        presentation: pres.clone(),
    })
}

/// `|n|/3 + 2/(3|n|) − 1 + σ̄(K′, |n|)` with `K′` the knot for `n > 0` and
/// its mirror for `n < 0`.
///
/// For negative `n` this is the invariant of `−M(K, n) = M(mirror K, −n)`,
/// the negative of the value for `M(K, n)` itself; the two have equal
/// absolute value, which is all the complexity bounds use.
pub fn rho_knot_surgery(a: &SeifertMatrix, n: i64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidSlope("surgery slope must be nonzero".into()));
    }
    let m = i64::try_from(n.unsigned_abs())
        .map_err(|_| Error::InvalidSlope("slope too large".into()))?;
    let d = u32::try_from(m).map_err(|_| Error::InvalidSlope(format!("|n| = {m} is too large")))?;
    let sigma = if n > 0 {
        avg_signature_exact(a, d)
    } else {
        avg_signature_exact(&mirror(a), d)
    };
    Ok(q(m, 3) + q(2, 3 * m) - BigRational::from_integer(BigInt::from(1)) + sigma)
}

/// `ρ` of `n`-surgery on a knot through the general closed form and the
/// per-level sum.
pub fn rho_knot_via_levels(a: &SeifertMatrix, n: i64) -> Result<RhoResult> {
    let d = u32::try_from(n.unsigned_abs())
        .map_err(|_| Error::InvalidSlope(format!("slope {n} is too large")))?;
    let pres = knot_surgery_presentation(n, d)?;
    rho_finite_cyclic(&pres, &CableData::Trivial(a.clone()), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::{jn_seifert, torus_knot_seifert, unknot_seifert};

    #[test]
    fn gilmer_examples() {
        let unknot = CableData::Trivial(unknot_seifert());
        let p = knot_surgery_presentation(2, 2).unwrap();
        assert_eq!(casson_gordon_sigma(&p, &unknot, 1).unwrap(), q(0, 1));
        let trefoil = CableData::Trivial(torus_knot_seifert(1).unwrap());
        let p3 = knot_surgery_presentation(3, 3).unwrap();
        assert_eq!(casson_gordon_sigma(&p3, &trefoil, 1).unwrap(), q(7, 3));
        assert!(casson_gordon_sigma(&p3, &trefoil, 0).is_err());
        assert!(casson_gordon_sigma(&p3, &trefoil, 3).is_err());
    }

    #[test]
    fn rho_examples() {
        for n in 1..=12i64 {
            let r = rho_knot_via_levels(&unknot_seifert(), n).unwrap();
            assert_eq!(r.value, q(n, 3) + q(2, 3 * n) - q(1, 1), "n={n}");
        }
        let p1 = knot_surgery_presentation(1, 1).unwrap();
        let r1 = rho_finite_cyclic(&p1, &CableData::Trivial(unknot_seifert()), 1).unwrap();
        assert_eq!(r1.value, q(0, 1));
        assert_eq!(r1.per_level, vec![q(0, 1)]);

        let t = torus_knot_seifert(1).unwrap();
        let r = rho_knot_via_levels(&t, 3).unwrap();
        assert_eq!(r.value, q(14, 9));
        assert_eq!(r.per_level, vec![q(0, 1), q(7, 3), q(7, 3)]);
        assert_eq!(rho_knot_surgery(&t, 3).unwrap(), q(14, 9));
    }

    #[test]
    fn knot_surgery_values() {
        let u = unknot_seifert();
        assert_eq!(rho_knot_surgery(&u, 1).unwrap(), q(0, 1));
        assert_eq!(rho_knot_surgery(&u, 2).unwrap(), q(0, 1));
        assert!(matches!(
            rho_knot_surgery(&u, 0),
            Err(Error::InvalidSlope(_))
        ));
        let j1 = jn_seifert(1).unwrap();
        assert_eq!(rho_knot_surgery(&j1, 2).unwrap(), q(0, 1));
    }

    #[test]
    fn negative_slopes_reverse_orientation() {
        for a in [torus_knot_seifert(2).unwrap(), jn_seifert(2).unwrap()] {
            for n in 2..=9i64 {
                let via_levels = rho_knot_via_levels(&a, -n).unwrap().value;
                assert_eq!(rho_knot_surgery(&a, -n).unwrap(), -via_levels, "n={n}");
            }
        }
    }

    #[test]
    fn cable_data_requirements() {
        let a = torus_knot_seifert(1).unwrap();
        let pres = SurgeryPresentation::new(vec![vec![4]], vec![2], 4).unwrap();
        assert!(matches!(
            casson_gordon_sigma(&pres, &CableData::Trivial(a.clone()), 1),
            Err(Error::MissingCableData(_))
        ));
        let empty = CableData::Supplied {
            seifert: a.clone(),
            components: 0,
        };
        assert!(matches!(
            casson_gordon_sigma(&pres, &empty, 1),
            Err(Error::MissingCableData(_))
        ));
        let supplied = CableData::Supplied {
            seifert: a,
            components: 1,
        };
        let r = rho_finite_cyclic(&pres, &supplied, 4).unwrap();
        assert_eq!(r.per_level.len(), 4);
        assert!(matches!(
            rho_finite_cyclic(&pres, &supplied, 5),
            Err(Error::InconsistentModulus(_))
        ));
    }

    #[test]
    fn two_component_presentation() {
        // Hopf-linked unknots with framings 2, 2 and residues (1, 1) mod 3;
        // the cable link is given by the empty Seifert matrix of an unlink
        let pres = SurgeryPresentation::new(vec![vec![2, 1], vec![1, 2]], vec![1, 1], 3).unwrap();
        let link = SeifertMatrix::new(crate::knot::SurfaceKind::Link, vec![]).unwrap();
        let r = rho_finite_cyclic(&pres, &CableData::Trivial(link), 3).unwrap();
        // 0 − (2/3)·2 + (8/27)·6
        assert_eq!(r.value, q(-4, 3) + q(48, 27));
        assert_eq!(linking_signature(&pres), 2);
    }
}
