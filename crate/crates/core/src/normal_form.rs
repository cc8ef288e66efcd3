//! Integer normal forms: row-style Hermite normal form for lattices and
//! Smith normal form with the column transform needed to pick invariant-factor
//! generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn axpy_row(target: &mut [BigInt], factor: &BigInt, source: &[BigInt]) {
    // target -= factor * source
    if factor.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= factor * s;
        }
    }
}

/// Hermite normal form of the row lattice spanned by `rows`.
///
/// The result has no zero rows, strictly increasing pivot columns, positive
/// pivots and every entry above a pivot reduced into `[0, pivot)`. Two row
/// sets span the same lattice iff their Hermite forms are equal.
pub fn hermite_rows(mut rows: IntMatrix, ncols: usize) -> IntMatrix {
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let pick = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pick else { break };
            rows.swap(r, p);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let (head, tail) = rows.split_at_mut(i);
                axpy_row(&mut tail[0], &q, &head[r]);
                if !rows[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < rows.len() && !rows[r][col].is_zero() {
            if rows[r][col].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = rows[i][col].div_floor(&rows[r][col]);
                let (head, tail) = rows.split_at_mut(r);
                axpy_row(&mut head[i], &q, &tail[0]);
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

/// Solves `x · basis = target` for a basis in Hermite form. Returns `None`
/// when `target` is not in the row lattice.
pub fn solve_in_lattice(basis: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest: Vec<BigInt> = target.to_vec();
    let mut coeffs = Vec::with_capacity(basis.len());
    for row in basis {
        let pivot = row.iter().position(|x| !x.is_zero())?;
        let (q, rem) = rest[pivot].div_rem(&row[pivot]);
        if !rem.is_zero() {
            return None;
        }
        axpy_row(&mut rest, &q, row);
        coeffs.push(q);
    }
    if rest.iter().all(Zero::is_zero) {
        Some(coeffs)
    } else {
        None
    }
}

/// Smith form `U · A · V = D` of an `m × n` matrix.
pub struct SmithForm {
    /// Diagonal of `D`, length `min(m, n)`; zero entries come last and the
    /// nonzero ones satisfy `d_i | d_{i+1}`.
    pub diagonal: Vec<BigInt>,
    /// The column transform `V`.
    pub right: IntMatrix,
    /// Its inverse `V⁻¹`.
    pub right_inverse: IntMatrix,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn smith_form(matrix: &[Vec<BigInt>], ncols: usize) -> SmithForm {
    let mut a: IntMatrix = matrix.to_vec();
    let m = a.len();
    let n = ncols;
    let mut v = identity(n);
    let mut vinv = identity(n);

    // column ops: col_j -= q col_t  =>  V: col_j -= q col_t ; V⁻¹: row_t += q row_j
    let col_sub = |a: &mut IntMatrix, v: &mut IntMatrix, vinv: &mut IntMatrix, j: usize, t: usize, q: &BigInt| {
        for row in a.iter_mut() {
            let s = row[t].clone();
            row[j] -= q * s;
        }
        for row in v.iter_mut() {
            let s = row[t].clone();
            row[j] -= q * s;
        }
        let src = vinv[j].clone();
        for (x, s) in vinv[t].iter_mut().zip(&src) {
            *x += q * s;
        }
    };
    let col_swap = |a: &mut IntMatrix, v: &mut IntMatrix, vinv: &mut IntMatrix, i: usize, j: usize| {
        if i == j {
            return;
        }
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vinv.swap(i, j);
    };

    let steps = m.min(n);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            col_swap(&mut a, &mut v, &mut vinv, t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                axpy_row(&mut tail[0], &q, &head[t]);
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_sub(&mut a, &mut v, &mut vinv, j, t, &q);
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !a[i][j].is_multiple_of(&a[t][t]) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, s) in head[t].iter_mut().zip(tail[0].iter()) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        if t < m && a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diagonal = (0..steps).map(|i| a[i][i].clone()).collect();
    SmithForm { diagonal, right: v, right_inverse: vinv }
}
