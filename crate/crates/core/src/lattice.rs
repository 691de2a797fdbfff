//! Exact integer linear algebra on small dense matrices.
//!
//! Everything works over `i128` with fraction-free elimination; the inputs
//! seen here are tiny (entries bounded by `n ≤ 8`, dimensions ≤ 8), far from
//! overflow.

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Divides a nonzero vector by the gcd of its entries. The zero vector is
/// returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i128, |g, &x| gcd(g, x as i128));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|&x| (x as i128 / g) as i64).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Rank of the matrix whose rows are `rows` (Bareiss elimination).
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    echelon_rank(&mut m)
}

fn echelon_rank(m: &mut [Vec<i128>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant of a square matrix. The empty matrix has determinant 1.
pub fn determinant(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// A vector orthogonal to the `d - 1` rows of a `(d-1) × d` matrix: the
/// generalised cross product, component `k` being `(-1)^k` times the minor
/// with column `k` deleted.
pub fn cofactor_normal(rows: &[Vec<i64>], d: usize) -> Vec<i64> {
    debug_assert!(rows.len() + 1 == d);
    (0..d)
        .map(|k| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != k)
                        .map(|(_, &x)| x as i128)
                        .collect()
                })
                .collect();
            let det = determinant(&minor);
            (if k % 2 == 0 { det } else { -det }) as i64
        })
        .collect()
}

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive, `r` = rank) of an
/// integer matrix, by Smith normal form reduction.
pub fn invariant_factors(rows: &[Vec<i64>]) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let m = a.len();
    if m == 0 {
        return Vec::new();
    }
    let n = a[0].len();
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        // pivot: smallest nonzero absolute value in the remaining block
        let Some((pi, pj)) = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    for j in t..n {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // the pivot must divide every remaining entry
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..n {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row/column t to the pivot
            let best_row = (t..m)
                .filter(|&i| a[i][t] != 0)
                .min_by_key(|&i| a[i][t].abs())
                .unwrap_or(t);
            a.swap(t, best_row);
            let best_col = (t..n)
                .filter(|&j| a[t][j] != 0)
                .min_by_key(|&j| a[t][j].abs())
                .unwrap_or(t);
            for row in a.iter_mut() {
                row.swap(t, best_col);
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// True if the rows are linearly independent and generate a saturated
/// sublattice of `Zⁿ`, i.e. they form a basis of `Zⁿ ∩ span(rows)`.
pub fn is_saturated_basis(rows: &[Vec<i64>]) -> bool {
    let factors = invariant_factors(rows);
    factors.len() == rows.len() && factors.iter().all(|&d| d == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    /// gcd of all maximal minors: the product of the invariant factors.
    fn maximal_minor_gcd(rows: &[Vec<i64>]) -> i128 {
        let k = rows.len();
        let n = rows[0].len();
        (0..n).combinations(k).fold(0, |g, cols| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| cols.iter().map(|&c| r[c] as i128).collect())
                .collect();
            gcd(g, determinant(&minor))
        })
    }

    #[test]
    fn small_cases() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![0, 0, 0]]), 0);
        assert_eq!(rank(&[]), 0);
        assert_eq!(determinant(&[vec![0, -1], vec![2, -1]]), 2);
        assert_eq!(determinant(&[]), 1);
        assert_eq!(primitive(&[4, -2, 0]), vec![2, -1, 0]);
        assert_eq!(cofactor_normal(&[vec![1, 0, 0], vec![0, 1, 0]], 3), vec![0, 0, 1]);
        assert_eq!(cofactor_normal(&[], 1), vec![1]);
        assert_eq!(invariant_factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert!(!is_saturated_basis(&[vec![0, -1], vec![2, -1]]));
        assert!(is_saturated_basis(&[vec![1, -1, 0, 0], vec![0, 1, -1, 0]]));
        assert!(!is_saturated_basis(&[vec![1, -1, 0], vec![2, -2, 0]]));
    }

    proptest! {
        #[test]
        fn invariant_product_equals_minor_gcd(
            rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..=3)
        ) {
            let factors = invariant_factors(&rows);
            prop_assert_eq!(factors.len(), rank(&rows));
            for w in factors.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            if factors.len() == rows.len() {
                prop_assert_eq!(factors.iter().product::<i128>(), maximal_minor_gcd(&rows));
            } else {
                prop_assert_eq!(maximal_minor_gcd(&rows), 0);
            }
        }

        #[test]
        fn cofactor_normal_is_orthogonal(
            rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 3)
        ) {
            let nrm = cofactor_normal(&rows, 4);
            for r in &rows {
                prop_assert_eq!(dot(r, &nrm), 0);
            }
            prop_assert_eq!(nrm.iter().all(|&x| x == 0), rank(&rows) < 3);
        }
    }
}
