//! Exact Gaussian elimination for small (over-determined) systems over Q.

use num_traits::Zero;

use super::rat::Rat;

#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolution {
    Unique(Vec<Rat>),
    /// A solution with the listed free columns set to zero.
    Underdetermined { particular: Vec<Rat>, free: Vec<usize> },
    /// Some equation reduces to `0 = c` with `c != 0`; the offending
    /// right-hand sides are reported.
    Inconsistent(Vec<Rat>),
}

/// Solves `rows * x = rhs`, where every row has `n` entries.
pub fn solve(rows: &[Vec<Rat>], rhs: &[Rat], n: usize) -> LinearSolution {
    assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), n);
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let bad: Vec<Rat> = m[r..]
        .iter()
        .map(|row| row[n].clone())
        .filter(|v| !v.is_zero())
        .collect();
    if !bad.is_empty() {
        return LinearSolution::Inconsistent(bad);
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    if pivots.len() == n {
        LinearSolution::Unique(x)
    } else {
        let free = (0..n).filter(|c| !pivots.contains(c)).collect();
        LinearSolution::Underdetermined { particular: x, free }
    }
}
