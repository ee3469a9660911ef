//! Exact feasibility of `A x = b, x >= 0` over the rationals.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A nonnegative solution of `a x = b`, if one exists. `a` is given by rows.
/// Phase one of the simplex method with Bland's rule, so it always terminates.
pub fn nonnegative_solution(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    assert_eq!(b.len(), m);
    // Columns: n originals, then m artificials, then the right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = Vec::with_capacity(width);
        for j in 0..n {
            row.push(if flip {
                -a[i][j].clone()
            } else {
                a[i][j].clone()
            });
        }
        for k in 0..m {
            row.push(if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        row.push(b[i].abs());
        t.push(row);
    }
    // Objective row: minimize the sum of artificials, kept as reduced costs.
    let mut cost = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { break };
        pivot(&mut t, &mut cost, r, enter);
        basis[r] = enter;
    }
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], cost: &mut [BigRational], r: usize, c: usize) {
    let p = t[r][c].clone();
    for v in t[r].iter_mut() {
        *v = &*v / &p;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn rows(r: &[&[i64]]) -> Vec<Vec<BigRational>> {
        r.iter()
            .map(|row| row.iter().map(|v| q(*v)).collect())
            .collect()
    }

    fn check(a: &[Vec<BigRational>], b: &[BigRational], x: &[BigRational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, bi) in a.iter().zip(b) {
            let s: BigRational = row.iter().zip(x).map(|(u, v)| u * v).sum();
            assert_eq!(&s, bi);
        }
    }

    #[test]
    fn feasible_and_infeasible() {
        let a = rows(&[&[1, 1], &[1, -1]]);
        let b = [q(3), q(1)];
        let x = nonnegative_solution(&a, &b).unwrap();
        check(&a, &b, &x);
        assert_eq!(x, vec![q(2), q(1)]);
        // x - y = 3 with x + y = 1 needs y < 0.
        assert!(nonnegative_solution(&a, &[q(1), q(3)]).is_none());
        // Solvable but only with a negative entry.
        let a = rows(&[&[2, 0], &[0, 1]]);
        assert!(nonnegative_solution(&a, &[q(2), q(-1)]).is_none());
    }

    #[test]
    fn redundant_rows_and_zero_rhs() {
        let a = rows(&[&[1, 1, 0], &[2, 2, 0], &[0, 1, 1]]);
        let b = [q(1), q(2), q(1)];
        let x = nonnegative_solution(&a, &b).unwrap();
        check(&a, &b, &x);
        let z = nonnegative_solution(&a, &[q(0), q(0), q(0)]).unwrap();
        check(&a, &[q(0), q(0), q(0)], &z);
        assert!(nonnegative_solution(&a, &[q(1), q(3), q(1)]).is_none());
    }

    #[test]
    fn recovers_planted_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let m = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=3);
            let a: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(0..=2)).collect())
                .collect();
            let x0: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
            let b: Vec<BigRational> = a
                .iter()
                .map(|r| q(r.iter().zip(&x0).map(|(u, v)| u * v).sum()))
                .collect();
            let ar: Vec<Vec<BigRational>> = a
                .iter()
                .map(|r| r.iter().map(|v| q(*v)).collect())
                .collect();
            let x = nonnegative_solution(&ar, &b).expect("built from a feasible point");
            check(&ar, &b, &x);
            let mut bad = b.clone();
            bad[0] = -q(1) - &bad[0];
            assert!(
                nonnegative_solution(&ar, &bad).is_none(),
                "nonnegative rows cannot reach a negative value"
            );
        }
    }
}
