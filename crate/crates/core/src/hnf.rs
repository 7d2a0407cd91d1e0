//! Hermite normal form over the integers, and the kernel of an integer map
//! reduced modulo `d`. Matrices here are at most a few dozen entries wide.

/// Row-style Hermite normal form of the lattice spanned by `rows`, reducing
/// only the first `pivot_cols` columns. Returns the transformed rows; rows
/// beyond the rank are zero in the reduced columns.
fn echelon(mut rows: Vec<Vec<i128>>, pivot_cols: usize) -> (Vec<Vec<i128>>, usize) {
    let mut rank = 0;
    for col in 0..pivot_cols {
        if rank == rows.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| among the remaining rows
            let best = (rank..rows.len())
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs());
            let Some(best) = best else { break };
            rows.swap(rank, best);
            let mut done = true;
            for r in rank + 1..rows.len() {
                if rows[r][col] != 0 {
                    let q = rows[r][col].div_euclid(rows[rank][col]);
                    let pivot = rows[rank].clone();
                    for (x, p) in rows[r].iter_mut().zip(&pivot) {
                        *x -= q * p;
                    }
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[rank][col] == 0 {
            continue;
        }
        if rows[rank][col] < 0 {
            for x in rows[rank].iter_mut() {
                *x = -*x;
            }
        }
        let pivot = rows[rank].clone();
        for r in 0..rank {
            let q = rows[r][col].div_euclid(pivot[col]);
            if q != 0 {
                for (x, p) in rows[r].iter_mut().zip(&pivot) {
                    *x -= q * p;
                }
            }
        }
        rank += 1;
    }
    (rows, rank)
}

/// Basis (in Hermite normal form) of the lattice spanned by `gens`.
pub fn hnf_basis(gens: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let Some(width) = gens.first().map(Vec::len) else {
        return Vec::new();
    };
    let (rows, rank) = echelon(gens.to_vec(), width);
    rows.into_iter().take(rank).collect()
}

/// Generators of `{ a in Z^k : m a = 0 (mod d) }`, where `m` is `g x k`.
pub fn kernel_mod(m: &[Vec<i128>], k: usize, d: i128) -> Vec<Vec<i128>> {
    let g = m.len();
    // rows are x in Z^(k+g); left part is x^T [m | d I]^T
    let rows: Vec<Vec<i128>> = (0..k + g)
        .map(|i| {
            let mut row: Vec<i128> = (0..g)
                .map(|r| {
                    if i < k {
                        m[r][i]
                    } else if i - k == r {
                        d
                    } else {
                        0
                    }
                })
                .collect();
            row.extend((0..k + g).map(|j| i128::from(i == j)));
            row
        })
        .collect();
    let (rows, rank) = echelon(rows, g);
    rows.into_iter()
        .skip(rank)
        .map(|r| r[g..g + k].to_vec())
        .collect()
}
