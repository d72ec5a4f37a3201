//! Dense linear algebra over F_p with deterministic pivoting.

use crate::arith::Prime;

/// Solves `sum_j x_j cols[j] = target` over F_p.
///
/// Gaussian elimination pivots on the first row (top down) with a nonzero
/// entry in each column, scanning columns left to right; free variables are
/// set to zero. Identical input gives an identical witness.
pub fn solve(p: Prime, cols: &[Vec<u64>], target: &[u64]) -> Option<Vec<u64>> {
    let nrows = target.len();
    let ncols = cols.len();
    let mut m: Vec<Vec<u64>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..nrows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = p.inv(m[r][c]);
        for v in m[r].iter_mut() {
            *v = p.mul(*v, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *v = p.sub(*v, p.mul(f, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    if m[r..].iter().any(|row| row[ncols] != 0) {
        return None;
    }
    let mut x = vec![0; ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols];
    }
    Some(x)
}

/// Rank over F_p of the matrix with the given columns.
pub fn rank(p: Prime, cols: &[Vec<u64>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let nrows = cols[0].len();
    let mut m: Vec<Vec<u64>> = cols.to_vec();
    let mut rank = 0;
    for i in 0..nrows {
        let Some(piv) = (rank..m.len()).find(|&j| m[j][i] != 0) else { continue };
        m.swap(rank, piv);
        let inv = p.inv(m[rank][i]);
        let pivot: Vec<u64> = m[rank].iter().map(|&v| p.mul(v, inv)).collect();
        for col in m.iter_mut().skip(rank + 1) {
            let f = col[i];
            if f != 0 {
                for (v, &pv) in col.iter_mut().zip(&pivot).skip(i) {
                    *v = p.sub(*v, p.mul(f, pv));
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Truncated product of two power series mod p.
pub fn convolve(p: Prime, a: &[u64], b: &[u64]) -> Vec<u64> {
    let len = a.len().min(b.len());
    let mut out = vec![0u64; len];
    for (i, &x) in a.iter().enumerate().take(len).filter(|(_, &x)| x != 0) {
        for (j, &y) in b.iter().enumerate().take(len - i).filter(|(_, &y)| y != 0) {
            out[i + j] = p.add(out[i + j], p.mul(x, y));
        }
    }
    out
}
