//! Spectra of the equivariant operators `L_k` on the horizon metric.
//!
//! Separating the angular mode `e^{i k phi}` out of the Laplacian of
//! `eta^2 (dx^2 / f + f dphi^2)` leaves the one-dimensional operators
//!
//! ```text
//! L_k = -d/dx (f(x) d/dx) + k^2 / f(x)
//! ```
//!
//! on (-1, 1), scaled by `1 / eta^2`. Each is discretized by a Galerkin
//! projection onto normalized associated Legendre functions of order `|k|`.
//! That basis is orthonormal (identity mass matrix), vanishes to the right
//! order at the singular endpoints, and diagonalizes the round-sphere case
//! `beta^2 = 0` exactly, which the tests lean on as an oracle.
//!
//! The Green's operator trace `gamma_k = sum_j 1 / lambda_k^j` is estimated
//! from the leading eigenvalues plus a tail correction built on the Weyl
//! growth `lambda_j ~ c j^2`.

use crate::error::{Error, Result};
use crate::horizon::SmarrShape;
use crate::numerics::legendre::assoc_legendre_table;
use crate::numerics::{gauss_legendre, sym_eigenvalues, SymMatrix};

/// Smallest admissible Galerkin basis.
pub const MIN_BASIS: usize = 8;

/// Relative tolerance of the basis-doubling convergence test.
pub const CONVERGENCE_TOL: f64 = 1e-8;

/// Maximum relative residual of the quadratic tail fit on its window.
pub const TAIL_RESIDUAL_TOL: f64 = 1e-3;

/// Tail terms are accumulated until they drop below this fraction of the
/// partial sum.
pub const TAIL_TERM_CUTOFF: f64 = 1e-14;

/// Ordered positive eigenvalues of one equivariant channel.
///
/// For `k = 0` the zero eigenvalue of the constant function is excluded:
/// the `k = 0` basis starts at degree 1, so the list holds only the
/// positive part of the spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum {
    k: i32,
    eigenvalues: Vec<f64>,
    basis_size: usize,
    shape: SmarrShape,
}

impl ModeSpectrum {
    /// Wraps an eigenvalue list, enforcing strict positivity and strict
    /// monotonic growth.
    pub fn new(
        k: i32,
        eigenvalues: Vec<f64>,
        basis_size: usize,
        shape: SmarrShape,
    ) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::TooFewModes { have: 0, need: 1 });
        }
        let mut prev = 0.0;
        for (idx, &v) in eigenvalues.iter().enumerate() {
            if !v.is_finite() || v <= prev {
                return Err(Error::NonPositiveEigenvalue { index: idx + 1, value: v });
            }
            prev = v;
        }
        Ok(ModeSpectrum { k, eigenvalues, basis_size, shape })
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    /// `lambda_k^1 < lambda_k^2 < ...`, all positive.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn basis_size(&self) -> usize {
        self.basis_size
    }

    pub fn shape(&self) -> &SmarrShape {
        &self.shape
    }
}

/// A trace estimate `value = partial_sum + tail_correction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEstimate {
    pub k: i32,
    /// Estimated `gamma_k` (length^2).
    pub value: f64,
    /// Sum of reciprocals of the computed eigenvalues.
    pub partial_sum: f64,
    /// Estimated sum over the uncomputed remainder of the spectrum.
    pub tail_correction: f64,
    /// Number of computed eigenvalues behind `partial_sum`.
    pub modes_used: usize,
}

/// Galerkin matrix of `L_k` in the order-`|k|` normalized associated
/// Legendre basis (degrees `|k| .. |k| + N - 1`; for `k = 0` degrees
/// `1 .. N`, constants excluded).
///
/// Entries are `(1 / eta^2) [ integral f P'_l P'_m dx
/// + k^2 integral P_l P_m / f dx ]`; the matrix depends on `k` only through
/// `k^2`. For `k != 0` the `1/f` factor is cancelled by the
/// `(1 - x^2)^{|k|}` carried by the basis product, so plain Gauss-Legendre
/// quadrature applies; for `k = 0` the potential term is absent entirely.
pub fn assemble(k: i32, shape: &SmarrShape, basis_size: usize) -> Result<SymMatrix> {
    if basis_size < MIN_BASIS {
        return Err(Error::BasisTooSmall { n: basis_size, min: MIN_BASIS });
    }
    let n = basis_size;
    let k_abs = k.unsigned_abs();
    let l_start = if k == 0 { 1 } else { k_abs };
    let l_max = l_start + (n as u32) - 1;
    // 2N + 16 covers the polynomial-times-smooth-rational integrands at
    // k = 0; the basis degree grows with |k|, hence the extra 2|k|.
    let rule = gauss_legendre(2 * (n + k_abs as usize) + 16);
    let profile = shape.profile();
    let k2 = f64::from(k) * f64::from(k);

    let mut packed = vec![0.0; n * (n + 1) / 2];
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let (vals, ders) = assoc_legendre_table(k_abs, l_max, x);
        let off = (l_start - k_abs) as usize;
        let f = profile.eval(x);
        let pot = if k == 0 { 0.0 } else { k2 / f };
        let mut idx = 0;
        for i in 0..n {
            let vi = vals[off + i];
            let di = ders[off + i];
            for j in 0..=i {
                packed[idx] += w * (f * di * ders[off + j] + pot * vi * vals[off + j]);
                idx += 1;
            }
        }
    }

    let inv_eta2 = 1.0 / shape.eta2();
    Ok(SymMatrix::from_fn(n, |i, j| {
        packed[i * (i + 1) / 2 + j] * inv_eta2
    }))
}

/// The `count` smallest eigenvalues of `L_k`, each verified by a
/// basis-doubling test: the run is accepted only if doubling `basis_size`
/// moves every requested eigenvalue by less than [`CONVERGENCE_TOL`]
/// relative.
pub fn eigenvalues(
    k: i32,
    shape: &SmarrShape,
    count: usize,
    basis_size: usize,
) -> Result<ModeSpectrum> {
    let min = 2 * count + 8;
    if basis_size < min {
        return Err(Error::BasisTooSmall { n: basis_size, min });
    }
    let coarse = sym_eigenvalues(&assemble(k, shape, basis_size)?);
    let fine = sym_eigenvalues(&assemble(k, shape, 2 * basis_size)?);
    check_converged(&coarse, &fine, count)?;
    ModeSpectrum::new(k, coarse[..count].to_vec(), basis_size, *shape)
}

fn check_converged(coarse: &[f64], fine: &[f64], count: usize) -> Result<()> {
    for j in 0..count {
        let change = (coarse[j] - fine[j]).abs() / fine[j].abs();
        if change >= CONVERGENCE_TOL {
            return Err(Error::ConvergenceFailure {
                index: j + 1,
                change,
                tol: CONVERGENCE_TOL,
            });
        }
    }
    Ok(())
}

/// Least-squares quadratic in `t`, centered for conditioning.
struct TailFit {
    t_center: f64,
    coeffs: [f64; 3], // c0 + c1 t + c2 t^2
}

impl TailFit {
    fn eval(&self, j: f64) -> f64 {
        let t = j - self.t_center;
        self.coeffs[0] + t * (self.coeffs[1] + t * self.coeffs[2])
    }
}

fn fit_quadratic(js: &[f64], values: &[f64]) -> TailFit {
    let t_center = js.iter().sum::<f64>() / js.len() as f64;
    // Normal equations for the monomial basis {1, t, t^2}.
    let mut g = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for (&j, &v) in js.iter().zip(values) {
        let t = j - t_center;
        let basis = [1.0, t, t * t];
        for r in 0..3 {
            for c in 0..3 {
                g[r][c] += basis[r] * basis[c];
            }
            rhs[r] += basis[r] * v;
        }
    }
    let coeffs = solve3(g, rhs);
    TailFit { t_center, coeffs }
}

/// Gaussian elimination with partial pivoting on a 3 x 3 system.
#[allow(clippy::needless_range_loop)]
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&r, &s| a[r][col].abs().partial_cmp(&a[s][col].abs()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let factor = a[row][col] / a[col][col];
            for c in col..3 {
                a[row][c] -= factor * a[col][c];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for c in row + 1..3 {
            acc -= a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    x
}

/// Estimates `gamma_k = sum_j 1 / lambda_k^j` from a finite spectrum.
///
/// The reciprocals of the computed eigenvalues form the partial sum. The
/// uncomputed remainder is modelled by a quadratic `q(j)` fitted to the
/// trailing `tail_window` eigenvalues (Weyl growth is quadratic in `j` for
/// a one-dimensional operator family) and summed term by term until the
/// terms fall below [`TAIL_TERM_CUTOFF`] times the partial sum. The fit
/// must reproduce its window to [`TAIL_RESIDUAL_TOL`] relative and the
/// tail must remain subdominant, otherwise the estimate is rejected.
pub fn trace_numeric(spectrum: &ModeSpectrum, tail_window: usize) -> Result<TraceEstimate> {
    assert!(tail_window >= 8, "tail window must hold at least 8 modes");
    let values = spectrum.eigenvalues();
    let total = values.len();
    if total < 3 * tail_window {
        return Err(Error::TooFewModes { have: total, need: 3 * tail_window });
    }

    let partial_sum: f64 = values.iter().map(|v| 1.0 / v).sum();

    let window_start = total - tail_window;
    let js: Vec<f64> = (window_start..total).map(|i| (i + 1) as f64).collect();
    let fit = fit_quadratic(&js, &values[window_start..]);

    for (&j, &v) in js.iter().zip(&values[window_start..]) {
        let rel = (fit.eval(j) - v).abs() / v;
        if rel >= TAIL_RESIDUAL_TOL {
            return Err(Error::TailModelRejected {
                reason: format!(
                    "quadratic fit misses eigenvalue {j} by {rel:.2e} relative (limit {TAIL_RESIDUAL_TOL:.0e})"
                ),
            });
        }
    }
    if fit.coeffs[2] <= 0.0 {
        return Err(Error::TailModelRejected {
            reason: format!(
                "fitted leading coefficient {:.3e} is not positive; spectrum does not grow quadratically",
                fit.coeffs[2]
            ),
        });
    }

    let cutoff = TAIL_TERM_CUTOFF * partial_sum;
    let mut tail = 0.0;
    let mut j = total as f64 + 1.0;
    loop {
        let q = fit.eval(j);
        if q <= 0.0 {
            return Err(Error::TailModelRejected {
                reason: format!("tail model becomes nonpositive at mode {j}"),
            });
        }
        let term = 1.0 / q;
        if term < cutoff {
            break;
        }
        tail += term;
        if tail >= partial_sum {
            return Err(Error::TailModelRejected {
                reason: "tail correction is not subdominant to the partial sum".into(),
            });
        }
        j += 1.0;
        if j > 1e9 {
            return Err(Error::TailModelRejected {
                reason: "tail sum failed to converge within 1e9 terms".into(),
            });
        }
    }

    Ok(TraceEstimate {
        k: spectrum.k(),
        value: partial_sum + tail,
        partial_sum,
        tail_correction: tail,
        modes_used: total,
    })
}

/// The S^1-invariant trace by direct quadrature:
/// `gamma_0 = eta^2 * (1/2) integral (1 - x^2) / f(x) dx`.
///
/// For the horizon profile the integrand is the degree-2 polynomial
/// `1 - beta^2 (1 - x^2)`, so the 64-point rule is exact and the result
/// reproduces the closed form `eta^2 (1 - 2 beta^2 / 3)` to rounding.
pub fn s1_trace_integral(shape: &SmarrShape) -> f64 {
    let rule = gauss_legendre(64);
    let profile = shape.profile();
    0.5 * shape.eta2() * rule.integrate(|x| (1.0 - x) * (1.0 + x) / profile.eval(x))
}
