//! Tiny dense kernels for the 3×3 and 4×4 systems the fitters solve.

pub(crate) type Mat3 = [[f64; 3]; 3];
pub(crate) type Mat4 = [[f64; 4]; 4];

/// Gaussian elimination with partial pivoting.
///
/// Returns `None` when a pivot falls below `rel_tol` times the largest
/// absolute entry of the original matrix.
pub(crate) fn solve<const N: usize>(
    mut a: [[f64; N]; N],
    mut b: [f64; N],
    rel_tol: f64,
) -> Option<[f64; N]> {
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    let threshold = rel_tol * scale;

    for col in 0..N {
        let pivot_row = (col..N)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot_row][col].abs() <= threshold {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..N {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..N {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }

    let mut x = [0.0; N];
    for row in (0..N).rev() {
        let tail: f64 = (row + 1..N).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Minimizes `‖A x - b‖² + Σ (w_k x_k)²` by Householder QR of the stacked
/// matrix `[A; diag(w)]`, which avoids squaring the condition number of `A`.
pub(crate) fn damped_least_squares(rows: &[[f64; 3]], rhs: &[f64], weights: [f64; 3]) -> Option<[f64; 3]> {
    let m = rows.len() + 3;
    let mut cols: [Vec<f64>; 3] = std::array::from_fn(|k| {
        let mut c: Vec<f64> = rows.iter().map(|r| r[k]).collect();
        c.extend((0..3).map(|j| if j == k { weights[k] } else { 0.0 }));
        c
    });
    let mut b: Vec<f64> = rhs.iter().copied().chain([0.0; 3]).collect();
    debug_assert_eq!(b.len(), m);

    for k in 0..3 {
        let norm = cols[k][k..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return None;
        }
        let alpha = if cols[k][k] > 0.0 { -norm } else { norm };
        let mut v = cols[k][k..].to_vec();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        let (done, rest) = cols.split_at_mut(k + 1);
        done[k][k] = alpha;
        for x in done[k][k + 1..].iter_mut() {
            *x = 0.0;
        }
        for c in rest.iter_mut().map(|c| &mut c[k..]).chain(std::iter::once(&mut b[k..])) {
            let f = 2.0 * v.iter().zip(c.iter()).map(|(a, b)| a * b).sum::<f64>() / vv;
            for (ci, vi) in c.iter_mut().zip(&v) {
                *ci -= f * vi;
            }
        }
    }

    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| cols[k][row] * x[k]).sum();
        x[row] = (b[row] - tail) / cols[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

pub(crate) fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn minor4(m: &Mat4, skip_row: usize, skip_col: usize) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for (r, src_r) in (0..4).filter(|&r| r != skip_row).enumerate() {
        for (c, src_c) in (0..4).filter(|&c| c != skip_col).enumerate() {
            out[r][c] = m[src_r][src_c];
        }
    }
    out
}

/// Column `j` of the adjugate of `m`, i.e. the cofactors `C_{j,i}` for `i = 0..4`.
pub(crate) fn adjugate_column(m: &Mat4, j: usize) -> [f64; 4] {
    let mut col = [0.0; 4];
    for (i, slot) in col.iter_mut().enumerate() {
        let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
        *slot = sign * det3(&minor4(m, j, i));
    }
    col
}

pub(crate) fn mat_vec4(m: &Mat4, v: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (i, row) in m.iter().enumerate() {
        out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
    out
}

pub(crate) fn quad_form4(m: &Mat4, v: &[f64; 4]) -> f64 {
    dot4(v, &mat_vec4(m, v))
}

pub(crate) fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm4(v: &[f64; 4]) -> f64 {
    dot4(v, v).sqrt()
}

/// Frobenius norm.
pub(crate) fn frobenius4(m: &Mat4) -> f64 {
    m.iter()
        .flat_map(|r| r.iter())
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt()
}
