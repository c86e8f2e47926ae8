//! Exact feasibility for `A x = b, x >= 0` by phase-one simplex with
//! Bland's rule (terminates, no cycling).

use super::Rational;

/// Returns some `x >= 0` with `rows * x = rhs`, or `None` if infeasible.
pub(crate) fn find_nonnegative_solution(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        let neg = *b < 0u32;
        let mut r = Vec::with_capacity(width);
        for a in row {
            r.push(if neg { -a } else { a.clone() });
        }
        for k in 0..m {
            r.push(Rational::from((k == i) as u32));
        }
        r.push(if neg { -b } else { b.clone() });
        t.push(r);
    }
    // reduced costs of the phase-one objective, sum of artificials
    let mut obj = vec![Rational::from(0u32); width];
    for r in &t {
        for j in 0..n {
            obj[j] -= &r[j];
        }
        obj[width - 1] -= &r[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| obj[j] < 0u32) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter] > 0u32 {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so a leaving row always exists
        let (p, _) = leave?;
        pivot(&mut t, &mut obj, p, enter);
        basis[p] = enter;
    }

    if obj[width - 1] != 0u32 {
        return None;
    }
    let mut x = vec![Rational::from(0u32); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], obj: &mut [Rational], p: usize, col: usize) {
    let width = obj.len();
    let pv = t[p][col].clone();
    if pv != 1u32 {
        for k in 0..width {
            if t[p][k] != 0u32 {
                t[p][k] /= &pv;
            }
        }
    }
    let prow = t[p].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i != p && r[col] != 0u32 {
            eliminate(r, &prow, col);
        }
    }
    if obj[col] != 0u32 {
        eliminate(obj, &prow, col);
    }
}

fn eliminate(r: &mut [Rational], prow: &[Rational], col: usize) {
    let f = r[col].clone();
    for (x, y) in r.iter_mut().zip(prow) {
        if *y != 0u32 {
            *x -= &f * y;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn check(rows: &[Vec<Rational>], rhs: &[Rational], x: &[Rational]) {
        assert!(x.iter().all(|v| *v >= 0u32));
        for (row, b) in rows.iter().zip(rhs) {
            let s: Rational = row.iter().zip(x).map(|(a, v)| a * v).sum();
            assert_eq!(&s, b);
        }
    }

    #[test]
    fn small_systems() {
        let rows = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let rhs = vec![int(2), int(0)];
        let x = find_nonnegative_solution(&rows, &rhs).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);

        let rows = vec![vec![int(1), int(1)]];
        assert!(find_nonnegative_solution(&rows, &[int(-1)]).is_none());

        let rows = vec![vec![int(2), int(0), int(1)], vec![int(0), int(3), int(1)]];
        let rhs = vec![int(1), rat(1, 2)];
        let x = find_nonnegative_solution(&rows, &rhs).unwrap();
        check(&rows, &rhs, &x);
    }

    /// Independent oracle: a feasible system has a basic feasible solution,
    /// so try every column subset and solve it directly.
    fn oracle(rows: &[Vec<Rational>], rhs: &[Rational]) -> bool {
        let m = rows.len();
        let n = rows[0].len();
        for mask in 0u32..(1 << n) {
            let cols: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
            if cols.len() > m {
                continue;
            }
            if let Some(x) = solve_subset(rows, rhs, &cols) {
                if x.iter().all(|v| *v >= 0u32) {
                    return true;
                }
            }
        }
        false
    }

    fn solve_subset(rows: &[Vec<Rational>], rhs: &[Rational], cols: &[usize]) -> Option<Vec<Rational>> {
        let k = cols.len();
        let mut a: Vec<Vec<Rational>> = rows
            .iter()
            .zip(rhs)
            .map(|(r, b)| {
                let mut v: Vec<Rational> = cols.iter().map(|&j| r[j].clone()).collect();
                v.push(b.clone());
                v
            })
            .collect();
        let mut r = 0;
        for c in 0..k {
            let p = (r..a.len()).find(|&i| a[i][c] != 0u32)?;
            a.swap(r, p);
            let pv = a[r][c].clone();
            for x in a[r].iter_mut() {
                *x /= &pv;
            }
            for i in 0..a.len() {
                if i != r && a[i][c] != 0u32 {
                    let f = a[i][c].clone();
                    for j in 0..=k {
                        let s = &f * &a[r][j];
                        a[i][j] -= s;
                    }
                }
            }
            r += 1;
        }
        if a[r..].iter().any(|row| row[k] != 0u32) {
            return None;
        }
        Some((0..k).map(|i| a[i][k].clone()).collect())
    }

    proptest! {
        #[test]
        fn agrees_with_basis_enumeration(
            m in 1usize..4,
            n in 1usize..6,
            seed in proptest::collection::vec(-3i64..4, 30),
        ) {
            let rows: Vec<Vec<Rational>> = (0..m)
                .map(|i| (0..n).map(|j| int(seed[i * 6 + j])).collect())
                .collect();
            let rhs: Vec<Rational> = (0..m).map(|i| int(seed[24 + i])).collect();
            let got = find_nonnegative_solution(&rows, &rhs);
            prop_assert_eq!(got.is_some(), oracle(&rows, &rhs));
            if let Some(x) = got {
                check(&rows, &rhs, &x);
            }
        }
    }
}
