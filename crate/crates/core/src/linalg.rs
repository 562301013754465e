#![allow(clippy::needless_range_loop)]

//! Minimal dense linear algebra for the 5×5 stationary-state solve.
//!
//! Row-equilibrated LU with partial pivoting, two rounds of iterative
//! refinement, and an explicit-inverse condition estimate. At this dimension
//! a direct factorization is both exact enough and essentially free.

pub(crate) const N: usize = 5;

pub(crate) type Matrix = [[f64; N]; N];
pub(crate) type Vector = [f64; N];

pub(crate) struct Solved {
    pub solution: Vector,
    /// ∞-norm condition number of the row-equilibrated matrix.
    pub condition: f64,
}

struct Lu {
    lu: Matrix,
    perm: [usize; N],
}

fn factor(a: &Matrix) -> Option<Lu> {
    let mut lu = *a;
    let mut perm = [0usize; N];
    for (i, p) in perm.iter_mut().enumerate() {
        *p = i;
    }
    for k in 0..N {
        let mut pivot_row = k;
        let mut pivot_mag = lu[k][k].abs();
        for r in (k + 1)..N {
            let mag = lu[r][k].abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag == 0.0 {
            return None;
        }
        if pivot_row != k {
            lu.swap(k, pivot_row);
            perm.swap(k, pivot_row);
        }
        for r in (k + 1)..N {
            let factor = lu[r][k] / lu[k][k];
            lu[r][k] = factor;
            for c in (k + 1)..N {
                lu[r][c] -= factor * lu[k][c];
            }
        }
    }
    Some(Lu { lu, perm })
}

impl Lu {
    fn solve(&self, b: &Vector) -> Vector {
        let mut y = [0.0; N];
        for i in 0..N {
            let mut acc = b[self.perm[i]];
            for j in 0..i {
                acc -= self.lu[i][j] * y[j];
            }
            y[i] = acc;
        }
        let mut x = [0.0; N];
        for i in (0..N).rev() {
            let mut acc = y[i];
            for j in (i + 1)..N {
                acc -= self.lu[i][j] * x[j];
            }
            x[i] = acc / self.lu[i][i];
        }
        x
    }
}

fn mat_vec(a: &Matrix, v: &Vector) -> Vector {
    let mut out = [0.0; N];
    for (o, row) in out.iter_mut().zip(a.iter()) {
        *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
    }
    out
}

fn norm_inf(a: &Matrix) -> f64 {
    a.iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solve `a·x = b` with row equilibration, partial pivoting and iterative
/// refinement. Returns `None` when the matrix is exactly singular.
pub(crate) fn solve_refined(a: &Matrix, b: &Vector) -> Option<Solved> {
    // Equilibrate rows to unit max magnitude so the pivoting is meaningful
    // when rate rows and the O(1) trace row mix.
    let mut scaled = *a;
    let mut rhs = *b;
    for i in 0..N {
        let row_max = scaled[i].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if row_max == 0.0 {
            return None;
        }
        for x in scaled[i].iter_mut() {
            *x /= row_max;
        }
        rhs[i] /= row_max;
    }

    let lu = factor(&scaled)?;
    let mut x = lu.solve(&rhs);
    for _ in 0..2 {
        let ax = mat_vec(&scaled, &x);
        let mut residual = [0.0; N];
        for i in 0..N {
            residual[i] = rhs[i] - ax[i];
        }
        let correction = lu.solve(&residual);
        for i in 0..N {
            x[i] += correction[i];
        }
    }

    // κ_∞ = ‖A‖_∞ ‖A⁻¹‖_∞ from the explicit inverse; five solves is cheap.
    let mut inverse_norm_rows = [0.0f64; N];
    for j in 0..N {
        let mut unit = [0.0; N];
        unit[j] = 1.0;
        let col = lu.solve(&unit);
        for i in 0..N {
            inverse_norm_rows[i] += col[i].abs();
        }
    }
    let inverse_norm = inverse_norm_rows.iter().copied().fold(0.0, f64::max);
    let condition = norm_inf(&scaled) * inverse_norm;

    Some(Solved {
        solution: x,
        condition,
    })
}
