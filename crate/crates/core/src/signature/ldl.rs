//! Exact inertia of a Hermitian matrix over `Q(ζ_d)` by symmetric
//! elimination.
//!
//! Entries are fractions of group-ring elements. A pivot whose row has at
//! most one other nonzero entry is inverted by swapping numerator and
//! denominator, which keeps banded forms (the common case) free of field
//! inversions and of any growth beyond their leading minors. Denser steps
//! reduce everything to the canonical form modulo `Φ_d` with an integer
//! denominator.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{CycloInt, Ring};
use crate::poly;

/// Entries whose coefficients pass this many bits are canonicalized even on
/// the sparse path.
const HEIGHT_LIMIT: u64 = 4096;

#[derive(Clone, Debug)]
struct Frac {
    num: CycloInt,
    den: CycloInt,
}

impl Frac {
    fn zero(d: u32) -> Self {
        Frac {
            num: CycloInt::zero(d),
            den: CycloInt::one(d),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn conj(&self) -> Frac {
        Frac {
            num: self.num.conj(),
            den: self.den.conj(),
        }
    }

    fn mul(&self, other: &Frac) -> Frac {
        if self.is_zero() || other.is_zero() {
            return Frac::zero(self.num.order());
        }
        Frac {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    fn sub(&self, other: &Frac) -> Frac {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return Frac {
                num: other.num.neg(),
                den: other.den.clone(),
            };
        }
        if self.den == other.den {
            return Frac {
                num: self.num.sub(&other.num),
                den: self.den.clone(),
            };
        }
        Frac {
            num: self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    /// Replace a semantic zero by the syntactic one and strip common integer
    /// content.
    fn tidy(self, ring: &Ring) -> Frac {
        if ring.is_zero(&self.num) {
            return Frac::zero(ring.order());
        }
        let g = self.num.content().gcd(&self.den.content());
        if g.is_one() {
            return self;
        }
        Frac {
            num: self.num.div_exact_int(&g),
            den: self.den.div_exact_int(&g),
        }
    }

    fn height(&self) -> u64 {
        self.num.max_bits().max(self.den.max_bits())
    }

    /// Canonical representative: reduced numerator over a positive integer.
    fn canonical(&self, ring: &Ring) -> Frac {
        let d = ring.order();
        if self.is_zero() {
            return Frac::zero(d);
        }
        let num = ring.reduce(&self.num);
        let den = ring.reduce(&self.den);
        let (num, den) = if den.len() == 1 {
            (num, den[0].clone())
        } else {
            let (u, c) = ring.inverse_parts(&den).expect("denominator vanished");
            (poly::rem_monic(&poly::mul(&num, &u), ring.phi()), c)
        };
        let (mut num, mut den) = (num, den);
        if den.is_negative() {
            den = -den;
            num = num.into_iter().map(|c| -c).collect();
        }
        let g = poly::content(&num).gcd(&den);
        if !g.is_one() && !g.is_zero() {
            num = poly::div_exact_scalar(&num, &g);
            den /= &g;
        }
        Frac {
            num: CycloInt::from_dense(d, &num),
            den: CycloInt::constant(d, den),
        }
    }
}

/// Upper-triangular storage of a Hermitian matrix.
struct Work<'a> {
    ring: &'a Ring,
    m: usize,
    cells: Vec<Frac>,
}

impl Work<'_> {
    fn get(&self, r: usize, c: usize) -> Frac {
        if r <= c {
            self.cells[r * self.m + c].clone()
        } else {
            self.cells[c * self.m + r].conj()
        }
    }

    fn nonzero(&self, r: usize, c: usize) -> bool {
        let (a, b) = if r <= c { (r, c) } else { (c, r) };
        !self.cells[a * self.m + b].is_zero()
    }

    fn set(&mut self, r: usize, c: usize, v: Frac, canonical: bool) {
        debug_assert!(r <= c);
        let v = v.tidy(self.ring);
        let v = if canonical || (v.height() > HEIGHT_LIMIT && v.den.as_constant().is_none()) {
            v.canonical(self.ring)
        } else {
            v
        };
        self.cells[r * self.m + c] = v;
    }
}

/// Inertia `(positive, zero, negative)` of the Hermitian matrix with
/// row-major entries `entries`, read in `Q(ζ_d)` via `x ↦ ζ_d`.
pub(crate) fn exact_inertia(d: u32, m: usize, entries: &[CycloInt]) -> (usize, usize, usize) {
    assert_eq!(entries.len(), m * m);
    let ring = Ring::get(d);
    let mut work = Work {
        ring: &ring,
        m,
        cells: vec![Frac::zero(d); m * m],
    };
    for r in 0..m {
        for c in r..m {
            let v = Frac {
                num: entries[r * m + c].clone(),
                den: CycloInt::one(d),
            };
            work.set(r, c, v, false);
        }
    }
    let (mut pos, mut zero, mut neg) = (0, 0, 0);
    let mut active: Vec<usize> = (0..m).collect();
    while !active.is_empty() {
        if let Some(at) = active.iter().position(|&i| work.nonzero(i, i)) {
            let i = active.remove(at);
            let p = work.get(i, i);
            match ring.sign_real_quotient(&p.num, &p.den, 1) {
                Ordering::Greater => pos += 1,
                Ordering::Less => neg += 1,
                Ordering::Equal => unreachable!("pivot was tested nonzero"),
            }
            let others: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&a| work.nonzero(i, a))
                .collect();
            if others.is_empty() {
                continue;
            }
            let dense = others.len() >= 2;
            let mut inv = Frac {
                num: p.den.clone(),
                den: p.num.clone(),
            };
            if dense {
                inv = inv.canonical(&ring);
            }
            let row: Vec<Frac> = others.iter().map(|&a| work.get(i, a)).collect();
            for (x, &a) in others.iter().enumerate() {
                let left = row[x].conj().mul(&inv);
                for (y, &b) in others.iter().enumerate().skip(x) {
                    let update = left.mul(&row[y]);
                    let (r, c) = if a <= b { (a, b) } else { (b, a) };
                    // the stored cell is S_rc; S_ab = S_rc or its conjugate
                    let update = if a <= b { update } else { update.conj() };
                    let v = work.get(r, c).sub(&update);
                    work.set(r, c, v, dense);
                }
            }
        } else {
            let pair = active.iter().enumerate().find_map(|(x, &i)| {
                active[x + 1..]
                    .iter()
                    .find(|&&j| work.nonzero(i, j))
                    .map(|&j| (i, j))
            });
            let Some((i, j)) = pair else {
                zero += active.len();
                break;
            };
            // block [[0, c], [c̄, 0]] has inertia (1, 0, 1) and inverse
            // [[0, 1/c̄], [1/c, 0]]
            pos += 1;
            neg += 1;
            active.retain(|&a| a != i && a != j);
            let c = work.get(i, j).canonical(&ring);
            let inv_c = Frac {
                num: c.den.clone(),
                den: c.num.clone(),
            }
            .canonical(&ring);
            let inv_cbar = inv_c.conj();
            let others: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&a| work.nonzero(i, a) || work.nonzero(j, a))
                .collect();
            let ri: Vec<Frac> = others.iter().map(|&a| work.get(i, a)).collect();
            let rj: Vec<Frac> = others.iter().map(|&a| work.get(j, a)).collect();
            for x in 0..others.len() {
                for y in x..others.len() {
                    let (a, b) = (others[x], others[y]);
                    // S_ab −= S_ai (1/c̄) S_jb + S_aj (1/c) S_ib
                    let t1 = ri[x].conj().mul(&inv_cbar).mul(&rj[y]);
                    let t2 = rj[x].conj().mul(&inv_c).mul(&ri[y]);
                    let v = work.get(a, b).sub(&t1).sub(&t2);
                    work.set(a, b, v, true);
                }
            }
        }
    }
    (pos, zero, neg)
}
