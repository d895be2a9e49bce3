//! Random Seifert matrix generators shared by the property and acceptance
//! suites.

use proptest::prelude::*;

use knotrho::{SeifertMatrix, SurfaceKind};

/// Knot Seifert matrices `P(S + T)Pᵀ` with `S` symmetric, `T − Tᵀ` the
/// standard symplectic form and `P` unit lower triangular, so that
/// `A − Aᵀ = P J Pᵀ` is unimodular.
pub fn knot_matrix() -> impl Strategy<Value = SeifertMatrix> {
    (1usize..=6).prop_flat_map(|half| {
        let m = 2 * half;
        (
            prop::collection::vec(-2i64..=2, m * m),
            prop::collection::vec(-1i64..=1, m * m),
        )
            .prop_map(move |(s, p)| {
                let mut a = vec![vec![0i64; m]; m];
                for i in 0..m {
                    for j in i..m {
                        a[i][j] = s[i * m + j];
                        a[j][i] = s[i * m + j];
                    }
                }
                for i in 0..half {
                    a[2 * i][2 * i + 1] += 1;
                }
                let pm: Vec<Vec<i64>> = (0..m)
                    .map(|i| {
                        (0..m)
                            .map(|j| match i.cmp(&j) {
                                std::cmp::Ordering::Equal => 1,
                                std::cmp::Ordering::Greater => p[i * m + j],
                                std::cmp::Ordering::Less => 0,
                            })
                            .collect()
                    })
                    .collect();
                let pa: Vec<Vec<i64>> = (0..m)
                    .map(|i| {
                        (0..m)
                            .map(|j| (0..m).map(|k| pm[i][k] * a[k][j]).sum())
                            .collect()
                    })
                    .collect();
                let papt: Vec<Vec<i64>> = (0..m)
                    .map(|i| {
                        (0..m)
                            .map(|j| (0..m).map(|k| pa[i][k] * pm[j][k]).sum())
                            .collect()
                    })
                    .collect();
                SeifertMatrix::new(SurfaceKind::Knot, papt).expect("unimodular by construction")
            })
    })
}

/// Arbitrary square integer matrices, read as link Seifert matrices.
pub fn link_matrix() -> impl Strategy<Value = SeifertMatrix> {
    (1usize..=12).prop_flat_map(|m| {
        prop::collection::vec(-2i64..=2, m * m).prop_map(move |e| {
            let rows = e.chunks(m).map(|r| r.to_vec()).collect();
            SeifertMatrix::new(SurfaceKind::Link, rows).expect("links need no checks")
        })
    })
}

pub fn any_matrix() -> impl Strategy<Value = SeifertMatrix> {
    prop_oneof![knot_matrix(), link_matrix()]
}

pub fn root(max_d: i64) -> impl Strategy<Value = (i64, i64)> {
    (2i64..=max_d).prop_flat_map(|d| (1..d, Just(d)))
}
