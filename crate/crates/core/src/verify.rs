//! Self-check suites comparing the engine with closed forms and with the
//! published estimates. Each check reports how many cases it examined and
//! the first counterexample, if any.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::bounds::{
    bound_report, complexity_from_rho, gap_lower_bound, gromov_norm_bound, lower_bound_crossing,
    lower_bound_signature, lower_bound_slice_genus, slope_length, two_pi_check, upper_bound,
    CONSTANTS,
};
use crate::knot::{jn_seifert, torus_knot_seifert, unknot_seifert, SeifertMatrix};
use crate::rho::{rho_knot_surgery, rho_knot_via_levels};
use crate::signature::{
    alexander_vanishes, avg_signature_exact, jn_avg_lower_bound, levine_tristram,
    litherland_torus_signature, torus_avg_lower_bound, Mode, UnitRoot,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub checked: usize,
    /// First failing case, if any.
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

struct Check {
    name: &'static str,
    checked: usize,
    counterexample: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            checked: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(case());
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name.to_string(),
            checked: self.checked,
            counterexample: self.counterexample,
        }
    }
}

/// A point where `Δ_{T(2,2n+1)}(ω) = 0`, with both candidate values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub n: i64,
    pub k: i64,
    pub d: i64,
    /// Signature of the singular form, zero eigenvalues counting 0.
    pub definition: i64,
    pub closed_form: i64,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Torus knot signatures against the closed form at every `k/d` with
/// `0 < k ≤ d/2`, `n ≤ n_max`, `2 ≤ d ≤ d_max`.
pub fn verify_litherland(n_max: i64, d_max: i64) -> (Vec<CheckOutcome>, Vec<SingularPoint>) {
    let mut oracle = Check::new("torus signatures match the closed form off Alexander roots");
    let mut singular = Check::new("zero eigenvalues occur exactly at Alexander roots");
    let mut points = Vec::new();
    for n in 1..=n_max {
        let a = torus_knot_seifert(n).expect("n >= 1");
        for d in 2..=d_max {
            for k in 1..=d / 2 {
                let w = UnitRoot::new(k, d).expect("d >= 2");
                let t = levine_tristram(&a, &w, Mode::Exact);
                let closed = litherland_torus_signature(n, &q(k, d)).expect("0 < k/d <= 1/2");
                let root = alexander_vanishes(&a, &w).expect("k/d is not an integer");
                singular.record(root == (t.zero > 0), || {
                    format!("n={n} k/d={k}/{d} inertia={:?}", t.counts())
                });
                if root {
                    points.push(SingularPoint {
                        n,
                        k,
                        d,
                        definition: t.signature(),
                        closed_form: closed,
                    });
                } else {
                    oracle.record(t.signature() == closed, || {
                        format!(
                            "n={n} k/d={k}/{d} engine={} closed form={closed}",
                            t.signature()
                        )
                    });
                }
            }
        }
    }
    (vec![oracle.finish(), singular.finish()], points)
}

fn gilmer_knots() -> Vec<(String, SeifertMatrix)> {
    let mut out = vec![("unknot".to_string(), unknot_seifert())];
    for p in 1..=10 {
        out.push((
            format!("torus2:{p}"),
            torus_knot_seifert(p).expect("p >= 1"),
        ));
        out.push((format!("jn:{p}"), jn_seifert(p).expect("p >= 1")));
    }
    out
}

/// Closed form against the per-level Casson-Gordon sum for slopes
/// `2 ≤ n ≤ n_max` on the unknot, `T(2,2p+1)` and `J_p`, `p ≤ 10`.
pub fn verify_gilmer(n_max: i64) -> Vec<CheckOutcome> {
    let mut equal = Check::new("closed form equals the per-level average");
    let mut levels =
        Check::new("per-level values vanish at k = 0 and are symmetric in k and d - k");
    let mut estimate = Check::new("|rho| >= (n - 3 - 3|avg sig|)/3");
    if n_max < 2 {
        return vec![equal.finish(), levels.finish(), estimate.finish()];
    }
    for (name, a) in gilmer_knots() {
        for n in 2..=n_max {
            let corollary = rho_knot_surgery(&a, n).expect("n != 0");
            match rho_knot_via_levels(&a, n) {
                Ok(r) => {
                    equal.record(r.value == corollary, || {
                        format!("{name} n={n}: {} vs {corollary}", r.value)
                    });
                    let d = r.per_level.len();
                    let sym = r.per_level[0] == q(0, 1)
                        && (1..d).all(|k| r.per_level[k] == r.per_level[d - k]);
                    levels.record(sym, || format!("{name} n={n}"));
                }
                Err(e) => equal.record(false, || format!("{name} n={n}: {e}")),
            }
            let avg = avg_signature_exact(&a, n as u32);
            let rhs = (q(n - 3, 1) - avg.abs() * BigInt::from(3)) / BigInt::from(3);
            estimate.record(corollary.abs() >= rhs, || format!("{name} n={n}"));
        }
    }
    vec![equal.finish(), levels.finish(), estimate.finish()]
}

/// Bound ordering and the published numerical check values, for slopes
/// `1 ≤ n ≤ n_max` on the unknot, the trefoil and `J_2`.
pub fn verify_bounds(n_max: i64) -> Vec<CheckOutcome> {
    let mut order = Check::new("every lower bound is at most the upper bound");
    let mut chain = Check::new("crossing bound <= genus bound <= upper bound");
    let mut via_rho = Check::new("|rho|/209139840 >= signature bound");
    let mut published =
        Check::new("slope lengths, 2pi check and Gromov norm match the published values");

    let knots = [
        ("unknot", unknot_seifert(), 0u64, 0u64),
        ("torus2:1", torus_knot_seifert(1).expect("valid"), 3, 1),
        ("jn:2", jn_seifert(2).expect("valid"), 8, 2),
    ];
    for (name, a, crossing, g4) in &knots {
        for n in 1..=n_max {
            let r = bound_report(a, n, Some(*crossing), Some(*g4)).expect("n != 0");
            order.record(r.is_consistent(), || format!("{name} n={n}"));
            let up = BigRational::from_integer(upper_bound(n, *crossing));
            let c = lower_bound_crossing(n, *crossing).expect("n != 0");
            let g = lower_bound_slice_genus(n, *g4).expect("n != 0");
            chain.record(c <= g && g <= up, || format!("{name} n={n}"));
            let rho = rho_knot_surgery(a, n).expect("n != 0");
            let sig = lower_bound_signature(a, n).expect("n != 0");
            via_rho.record(complexity_from_rho(&rho) >= sig, || format!("{name} n={n}"));
        }
    }

    let cusp = CONSTANTS.cusp;
    let near = |x: f64, y: f64, tol: f64| (x - y).abs() <= tol;
    published.record(
        near(slope_length(&cusp, 6, 1).expect("slope"), 6.7271, 5e-4),
        || "slope 6".into(),
    );
    published.record(
        near(slope_length(&cusp, 1, 2).expect("slope"), 6.4040, 5e-4),
        || "slope 1/2".into(),
    );
    let g = gromov_norm_bound();
    published.record(near(g.computed, g.published, 1e-3), || {
        format!("{} vs {}", g.computed, g.published)
    });
    let slopes: Vec<(i64, i64)> = (6..=60)
        .map(|k| (k, 1))
        .chain((2..=60).map(|q| (1, q)))
        .collect();
    let long = two_pi_check(&cusp, &slopes).expect("valid slopes");
    published.record(long.iter().all(|&b| b), || {
        "a slope k >= 6 or 1/q, q >= 2 is not longer than 2pi".into()
    });

    vec![
        order.finish(),
        chain.finish(),
        via_rho.finish(),
        published.finish(),
    ]
}

/// Averaged-signature estimates and the gap bound for `3 ≤ n ≤ n_max`,
/// `2 ≤ d ≤ d_max`.
pub fn verify_gap(n_max: i64, d_max: i64) -> Vec<CheckOutcome> {
    let mut torus = Check::new("torus average >= (1 - 1/d^2)n - (d-1)/(2d)");
    let mut close = Check::new("J_n and torus averages differ by at most 2");
    let mut jn = Check::new("J_n average >= (1 - 1/d^2)n - (5d-1)/(2d)");
    let mut jn_positive =
        Check::new("(1 - 1/d^2)n - (5d-1)/(2d) > 0 except at n = 3, d = 2, where it is 0");
    let mut gap = Check::new("gap bound increases with n");
    for d in 2..=d_max {
        let mut prev: Option<BigRational> = None;
        for n in 1..=n_max {
            let t = avg_signature_exact(&torus_knot_seifert(n).expect("n >= 1"), d as u32);
            let j = avg_signature_exact(&jn_seifert(n).expect("n >= 1"), d as u32);
            torus.record(t >= torus_avg_lower_bound(n, d), || {
                format!("n={n} d={d} avg={t}")
            });
            close.record((&j - &t).abs() <= q(2, 1), || {
                format!("n={n} d={d} jn={j} torus={t}")
            });
            if n >= 3 {
                let lb = jn_avg_lower_bound(n, d);
                jn.record(j >= lb, || format!("n={n} d={d} avg={j} bound={lb}"));
                let expected_zero = n == 3 && d == 2;
                let sign_ok = if expected_zero {
                    lb == q(0, 1)
                } else {
                    lb.is_positive()
                };
                jn_positive.record(sign_ok, || format!("n={n} d={d} bound={lb}"));
                let g = gap_lower_bound(n, d).expect("n > 2 and d > 1");
                if let Some(p) = &prev {
                    gap.record(g > *p, || format!("n={n} d={d}"));
                }
                prev = Some(g);
            }
        }
    }
    vec![
        torus.finish(),
        close.finish(),
        jn.finish(),
        jn_positive.finish(),
        gap.finish(),
    ]
}
