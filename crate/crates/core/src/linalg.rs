//! Numerical rank and null spaces of dense real matrices.

use alloc::vec::Vec;

pub use nalgebra::{DMatrix, DVector};
use thiserror::Error;

/// Relative singular-value threshold used when none is given.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Minimum `σ_r / σ_{r+1}` for a rank to be trusted.
pub const CONFIDENCE_GAP: f64 = 1e4;

/// The smallest retained singular value must also clear the threshold by
/// this factor, so a rank is never trusted when `σ_r` sits next to `tol · σ_max`.
pub const THRESHOLD_MARGIN: f64 = 1e2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankResult {
    pub rank: usize,
    /// Descending.
    pub singular_values: Vec<f64>,
    /// `σ_rank / σ_{rank+1}`; infinite when there is no `σ_{rank+1}` or it is zero.
    pub gap: f64,
    pub tol: f64,
}

impl RankResult {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// True when the gap and threshold margin both make the rank unambiguous.
    pub fn is_confident(&self) -> bool {
        if self.rank == 0 {
            return true;
        }
        let smallest = self.singular_values[self.rank - 1];
        self.gap >= CONFIDENCE_GAP && smallest >= THRESHOLD_MARGIN * self.tol * self.sigma_max()
    }
}

fn check_finite(m: &DMatrix<f64>) -> Result<(), LinalgError> {
    for (k, x) in m.iter().enumerate() {
        if !x.is_finite() {
            // column-major storage
            return Err(LinalgError::NonFiniteEntry { row: k % m.nrows(), col: k / m.nrows() });
        }
    }
    Ok(())
}

fn rank_from(singular_values: Vec<f64>, tol: f64) -> RankResult {
    let smax = singular_values.first().copied().unwrap_or(0.0);
    let rank = singular_values.iter().filter(|&&s| s > tol * smax).count();
    let gap = match (rank, singular_values.get(rank)) {
        (0, _) | (_, None) => f64::INFINITY,
        (r, Some(&next)) if next > 0.0 => singular_values[r - 1] / next,
        _ => f64::INFINITY,
    };
    RankResult { rank, singular_values, gap, tol }
}

/// Singular values, descending.
pub fn singular_values(m: &DMatrix<f64>) -> Result<Vec<f64>, LinalgError> {
    check_finite(m)?;
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(Vec::new());
    }
    // the bidiagonalization is cheaper on the tall orientation
    let sv = if m.nrows() >= m.ncols() {
        m.clone().singular_values()
    } else {
        m.transpose().singular_values()
    };
    let mut s: Vec<f64> = sv.iter().copied().collect();
    s.sort_unstable_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Rank by thresholding singular values at `tol · σ_max`.
pub fn numeric_rank(m: &DMatrix<f64>, tol: f64) -> Result<RankResult, LinalgError> {
    Ok(rank_from(singular_values(m)?, tol))
}

/// Orthonormal basis of the numerical null space.
pub fn kernel_basis(m: &DMatrix<f64>, tol: f64) -> Result<Vec<DVector<f64>>, LinalgError> {
    check_finite(m)?;
    let (r, c) = m.shape();
    if c == 0 {
        return Ok(Vec::new());
    }
    // pad to at least square so the right singular vectors span all of R^c
    let padded = if r < c {
        let mut p = DMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    Ok(svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s <= tol * smax)
        .map(|(i, _)| vt.row(i).transpose())
        .collect())
}

/// Alternating row and column passes of [`equilibrate`].
pub const EQUILIBRATION_PASSES: usize = 3;

/// Rows, then columns, rescaled to unit 2-norm, [`EQUILIBRATION_PASSES`] times.
///
/// Diagonal scaling on both sides preserves rank, and strips the ill-conditioning
/// that comes only from rows or columns of very different magnitudes. Zero rows
/// and columns are left as they are.
pub fn equilibrate(m: &DMatrix<f64>) -> DMatrix<f64> {
    let mut a = m.clone();
    for _ in 0..EQUILIBRATION_PASSES {
        for mut r in a.row_iter_mut() {
            let n = r.norm();
            if n > 0.0 && n.is_finite() {
                r /= n;
            }
        }
        for mut c in a.column_iter_mut() {
            let n = c.norm();
            if n > 0.0 && n.is_finite() {
                c /= n;
            }
        }
    }
    a
}

/// Cheap sufficient test for full row rank with margin: succeeds only if
/// `σ_min(m) ≥ ratio · ‖m‖_F`, in which case a singular-value rank at any
/// relative threshold below `ratio` is the row count and is confident.
///
/// Works by Cholesky factorization of the shifted Gram matrix
/// `m mᵀ − 2 ratio² ‖m‖_F² I`; the factor 2 absorbs rounding in forming
/// and factoring the Gram matrix.
pub fn certifies_full_row_rank(m: &DMatrix<f64>, ratio: f64) -> bool {
    let r = m.nrows();
    if r == 0 {
        return true;
    }
    if r > m.ncols() || check_finite(m).is_err() {
        return false;
    }
    let fro2 = m.norm_squared();
    if fro2 == 0.0 {
        return false;
    }
    // rigidity matrices are sparse, so accumulate the Gram matrix column by column
    let mut g = DMatrix::<f64>::zeros(r, r);
    let mut nz: Vec<(usize, f64)> = Vec::with_capacity(r);
    for col in m.column_iter() {
        nz.clear();
        nz.extend(col.iter().enumerate().filter(|(_, &x)| x != 0.0).map(|(i, &x)| (i, x)));
        for &(i, a) in &nz {
            for &(j, b) in &nz {
                if j <= i {
                    g[(i, j)] += a * b;
                }
            }
        }
    }
    let shift = 2.0 * ratio * ratio * fro2;
    for i in 0..r {
        g[(i, i)] -= shift;
    }
    g.cholesky().is_some()
}
