//! Exact Gaussian elimination over an abstract field.

use crate::field::Scalar;

/// Rank of a dense matrix, by fraction-free-enough elimination with exact
/// arithmetic (no pivoting concerns over an exact field).
pub fn rank<S: Scalar>(mut rows: Vec<Vec<S>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let Some(pivot) = (row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, pivot);
        let inv = rows[row][col].inv();
        for c in col..ncols {
            rows[row][c] = rows[row][c].mul(&inv);
        }
        for r in 0..nrows {
            if r != row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let delta = factor.mul(&rows[row][c]);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

/// Dimension of the solution space of the homogeneous system `rows * x = 0`
/// with `ncols` unknowns.
pub fn nullspace_dim<S: Scalar>(rows: Vec<Vec<S>>, ncols: usize) -> usize {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    ncols - rank(rows)
}

/// `row - factor * pivot`, both sorted by column index, zeros dropped.
fn sub_scaled<S: Scalar>(row: &[(usize, S)], pivot: &[(usize, S)], factor: &S) -> Vec<(usize, S)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (col, val) = if take_row {
            let e = (row[i].0, row[i].1.clone());
            i += 1;
            e
        } else if take_piv {
            let prod = pivot[j].1.mul(factor);
            let e = (pivot[j].0, prod.from_i64(0).sub(&prod));
            j += 1;
            e
        } else {
            let e = (row[i].0, row[i].1.sub(&pivot[j].1.mul(factor)));
            i += 1;
            j += 1;
            e
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

/// Nullspace dimension for a sparse homogeneous system given as rows of
/// `(column, coefficient)` pairs. Suited to intertwiner systems, whose rows
/// carry at most two nonzero entries.
pub fn sparse_nullspace_dim<S: Scalar>(rows: Vec<Vec<(usize, S)>>, ncols: usize) -> usize {
    use std::collections::BTreeMap;
    let mut pivots: BTreeMap<usize, Vec<(usize, S)>> = BTreeMap::new();
    for raw in rows {
        // merge duplicate columns
        let mut acc: BTreeMap<usize, S> = BTreeMap::new();
        for (c, v) in raw {
            match acc.remove(&c) {
                Some(old) => {
                    let s = old.add(&v);
                    if !s.is_zero() {
                        acc.insert(c, s);
                    }
                }
                None => {
                    if !v.is_zero() {
                        acc.insert(c, v);
                    }
                }
            }
        }
        let mut row: Vec<(usize, S)> = acc.into_iter().collect();
        while let Some((lead, coeff)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => row = sub_scaled(&row, p, &coeff),
                None => {
                    let inv = coeff.inv();
                    for (_, v) in row.iter_mut() {
                        *v = v.mul(&inv);
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    ncols - pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn rank_over_rationals() {
        let m = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(rank(m.clone()), 2);
        assert_eq!(nullspace_dim(m, 3), 1);
    }

    #[test]
    fn rank_over_gf7() {
        let f = |n| Fp::new(n, 7);
        // second row is 7 * first row = 0 mod 7
        let m = vec![vec![f(1), f(3)], vec![f(7), f(21)]];
        assert_eq!(rank(m), 1);
    }

    #[test]
    fn sparse_agrees_with_dense() {
        let dense = vec![
            vec![rat(1), rat(2), rat(3), rat(0)],
            vec![rat(2), rat(4), rat(6), rat(0)],
            vec![rat(0), rat(1), rat(1), rat(5)],
            vec![rat(1), rat(0), rat(0), rat(-1)],
        ];
        let sparse: Vec<Vec<(usize, BigRational)>> = dense
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        assert_eq!(sparse_nullspace_dim(sparse, 4), nullspace_dim(dense, 4));
    }

    #[test]
    fn sparse_merges_duplicate_columns() {
        // x - x = 0 contributes nothing; x + y = 0 is one pivot
        let rows = vec![
            vec![(0, rat(1)), (0, rat(-1))],
            vec![(0, rat(1)), (1, rat(1))],
        ];
        assert_eq!(sparse_nullspace_dim(rows, 3), 2);
    }

    #[test]
    fn empty_system_has_full_nullspace() {
        assert_eq!(nullspace_dim::<Fp>(Vec::new(), 4), 4);
    }
}
