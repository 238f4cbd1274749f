//! Per-row linear solver: given a kernel and the multiplier of `F` at row
//! n, find the multiplier at row n+1 together with a mate numerator so
//! that the telescoping relation holds identically in `y = q^k`.

use num::Zero;

use crate::qcore::{qpow, ExactRational, QContext};
use crate::{QzError, Result};

use super::poly::Poly;
use super::{KernelSpec, MateForm, MwzPair};

/// Coefficient tables produced by [`step_solve`]: `p_coeffs` has rows
/// `0..=n_max`, `g_coeffs` (mate numerators over the kernel's denominator
/// template) has rows `0..n_max`.
#[derive(Debug, Clone)]
pub struct SolvedTables {
    pub p_coeffs: Vec<Vec<ExactRational>>,
    pub g_coeffs: Vec<Vec<ExactRational>>,
}

impl SolvedTables {
    /// Package the solution as a verifiable pair. The mate table is one
    /// row shorter than the multiplier table, so a residual check over an
    /// `nmax x kmax` grid needs `n_max >= nmax + 1`.
    pub fn into_pair(mut self, kernel: KernelSpec) -> MwzPair {
        // Residual grids index G up to the same row as F; pad the mate
        // table with a zero row that callers must not reach.
        let width = self.g_coeffs.first().map_or(1, Vec::len);
        self.g_coeffs.push(vec![ExactRational::zero(); width]);
        let den = kernel.mate_den.clone();
        MwzPair {
            kernel,
            p_coeffs: self.p_coeffs,
            mate: MateForm::Table {
                coeffs: self.g_coeffs,
                den,
            },
        }
    }
}

/// Solve, for each `n <= n_max - 1`, the exact linear system equating
/// y-powers in the cleared telescoping relation
///
/// ```text
/// rn(y) P_{n+1}(y) - P_n(y) = rk(y) Num_n(qy)/D(x,qy) - Num_n(y)/D(x,y)
/// ```
///
/// at `x = q^n`, where `P_{n+1}` has degree `l1` and `Num_n` degree `l2`.
/// `init` gives the coefficients of `P_0`.
pub fn step_solve(
    kernel: &KernelSpec,
    l1: usize,
    l2: usize,
    init: &[ExactRational],
    ctx: &QContext,
    n_max: u64,
) -> Result<SolvedTables> {
    let q = kernel.q().clone();
    let mut p_coeffs: Vec<Vec<ExactRational>> = vec![init.to_vec()];
    let mut g_coeffs: Vec<Vec<ExactRational>> = Vec::with_capacity(n_max as usize);
    let _ = ctx;

    for n in 0..n_max {
        let x = qpow(&q, n as i64);
        let rn_num = kernel.ratio_n.num.eval_x(&x);
        let rn_den = kernel.ratio_n.den.eval_x(&x);
        let rk_num = kernel.ratio_k.num.eval_x(&x);
        let rk_den = kernel.ratio_k.den.eval_x(&x);
        let d_y = kernel
            .mate_den
            .as_ref()
            .map_or_else(Poly::one, |d| d.eval_x(&x));
        let d_qy = d_y.scale_arg(&q);
        if rn_den.is_zero() || rk_den.is_zero() || d_y.is_zero() {
            return Err(QzError::KernelPole { n, k: 0 });
        }

        let common = rn_den.mul(&rk_den).mul(&d_y).mul(&d_qy);
        let p_base = rn_num.mul(&rk_den).mul(&d_y).mul(&d_qy);
        let m_shifted = rk_num.mul(&rn_den).mul(&d_y); // times q^j for Num(qy)
        let m_plain = rn_den.mul(&rk_den).mul(&d_qy);

        // Columns: l1+1 coefficients of P_{n+1}, then l2+1 of Num_n.
        let mut cols: Vec<Poly> = Vec::with_capacity(l1 + l2 + 2);
        for i in 0..=l1 {
            cols.push(p_base.shift(i));
        }
        for j in 0..=l2 {
            let qj = qpow(&q, j as i64);
            cols.push(m_plain.sub(&m_shifted.scale(&qj)).shift(j));
        }
        let p_n = Poly::new(p_coeffs[n as usize].clone());
        let rhs = common.mul(&p_n);

        let rows = cols
            .iter()
            .map(Poly::degree)
            .chain(std::iter::once(rhs.degree()))
            .max()
            .unwrap()
            + 1;
        let ncols = cols.len();
        let mut mat: Vec<Vec<ExactRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<ExactRational> =
                    cols.iter().map(|c| c.coeff(r)).collect();
                row.push(rhs.coeff(r));
                row
            })
            .collect();

        // Exact Gaussian elimination with partial (first-nonzero) pivoting.
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
        let mut rank_row = 0usize;
        for col in 0..ncols {
            let Some(pr) = (rank_row..rows).find(|&r| !mat[r][col].is_zero()) else {
                continue;
            };
            mat.swap(rank_row, pr);
            let inv = mat[rank_row][col].clone().recip();
            for v in mat[rank_row][col..].iter_mut() {
                *v *= &inv;
            }
            for r in 0..rows {
                if r != rank_row && !mat[r][col].is_zero() {
                    let f = mat[r][col].clone();
                    for c in col..=ncols {
                        let sub = &f * &mat[rank_row][c];
                        mat[r][c] -= sub;
                    }
                }
            }
            pivot_of_col[col] = Some(rank_row);
            rank_row += 1;
        }
        for r in rank_row..rows {
            if !mat[r][ncols].is_zero() {
                return Err(QzError::InconsistentSystem { n });
            }
        }
        let dof = pivot_of_col.iter().filter(|p| p.is_none()).count();
        if dof > 0 {
            return Err(QzError::RankDeficient { n, dof });
        }

        let sol: Vec<ExactRational> = (0..ncols)
            .map(|c| mat[pivot_of_col[c].unwrap()][ncols].clone())
            .collect();
        p_coeffs.push(sol[..=l1].to_vec());
        g_coeffs.push(sol[l1 + 1..].to_vec());
    }

    Ok(SolvedTables { p_coeffs, g_coeffs })
}
