//! Cross-checks the Galerkin discretization of `L_k` against an
//! independent finite-difference discretization.
//!
//! The oracle is a conservative cell-centered scheme on a uniform grid:
//! fluxes `f u'` are differenced across cell faces, and because `f`
//! vanishes at the poles the boundary flux drops out, which is exactly the
//! natural condition selecting the bounded eigenfunctions of the singular
//! operator. Eigenvalues of the resulting tridiagonal matrix are extracted
//! by Sturm-sequence bisection, so no code is shared with the production
//! Householder + QL path.

use kerrspec_core::horizon::SmarrShape;
use kerrspec_core::numerics::sym_eigenvalues;
use kerrspec_core::spectral::assemble;

/// Tridiagonal FD matrix of `L_k` on `m` cells centered at
/// `x_i = -1 + (i + 1/2) h`, `h = 2/m`.
fn fd_matrix(k: i32, shape: &SmarrShape, m: usize) -> (Vec<f64>, Vec<f64>) {
    let profile = shape.profile();
    let h = 2.0 / m as f64;
    let k2 = f64::from(k) * f64::from(k);
    let inv_eta2 = 1.0 / shape.eta2();
    let mut diag = vec![0.0; m];
    let mut off = vec![0.0; m - 1];
    for i in 0..m {
        let x_left = (-1.0 + i as f64 * h).max(-1.0);
        let x_right = (-1.0 + (i + 1) as f64 * h).min(1.0);
        let f_left = profile.eval(x_left);
        let f_right = profile.eval(x_right);
        diag[i] = (f_left + f_right) / (h * h);
        if k != 0 {
            let x_center = -1.0 + (i as f64 + 0.5) * h;
            diag[i] += k2 / profile.eval(x_center);
        }
        diag[i] *= inv_eta2;
        if i + 1 < m {
            off[i] = -f_right / (h * h) * inv_eta2;
        }
    }
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `sigma`
/// (Sturm sequence via the LDL^T pivots).
fn count_below(diag: &[f64], off: &[f64], sigma: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - sigma;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        if q == 0.0 {
            q = 1e-300;
        }
        q = diag[i] - sigma - off[i - 1] * off[i - 1] / q;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `index`-th smallest eigenvalue (0-based) by bisection.
fn fd_eigenvalue(diag: &[f64], off: &[f64], index: usize) -> f64 {
    let bound = diag
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut r = d.abs();
            if i > 0 {
                r += off[i - 1].abs();
            }
            if i < off.len() {
                r += off[i].abs();
            }
            r
        })
        .fold(0.0_f64, f64::max);
    let mut lo = -bound;
    let mut hi = bound;
    while hi - lo > 1e-13 * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        if count_below(diag, off, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn fd_oracle_reproduces_the_sphere() {
    // Self-check of the oracle: round sphere, lowest nonzero eigenvalue 2,
    // and the constant zero mode retained by the natural scheme.
    let shape = SmarrShape::new(1.0, 0.0).unwrap();
    let (diag, off) = fd_matrix(0, &shape, 2000);
    let zero_mode = fd_eigenvalue(&diag, &off, 0);
    let first = fd_eigenvalue(&diag, &off, 1);
    assert!(zero_mode.abs() < 1e-9, "zero mode came out as {zero_mode}");
    assert!((first - 2.0).abs() / 2.0 < 1e-6, "{first}");
}

#[test]
fn galerkin_matches_fd_on_invariant_channel() {
    // k = 0 on 2000 grid points against a 40-function Galerkin basis.
    for &beta2 in &[0.1, 0.3] {
        let shape = SmarrShape::new(1.0, beta2).unwrap();
        let galerkin = sym_eigenvalues(&assemble(0, &shape, 40).unwrap());
        let (diag, off) = fd_matrix(0, &shape, 2000);
        let fd = fd_eigenvalue(&diag, &off, 1); // skip the zero mode
        let rel = (galerkin[0] - fd).abs() / fd;
        assert!(rel < 1e-6, "beta2={beta2}: galerkin {} vs fd {fd}", galerkin[0]);
    }
}

#[test]
fn galerkin_matches_fd_on_equivariant_channel() {
    // The singular potential k^2/f makes the plain scheme first order, so
    // compare against the Richardson extrapolation of two grids.
    let shape = SmarrShape::new(1.0, 0.1).unwrap();
    let galerkin = sym_eigenvalues(&assemble(1, &shape, 40).unwrap());
    let (d1, o1) = fd_matrix(1, &shape, 2000);
    let (d2, o2) = fd_matrix(1, &shape, 4000);
    let coarse = fd_eigenvalue(&d1, &o1, 0);
    let fine = fd_eigenvalue(&d2, &o2, 0);
    let extrapolated = 2.0 * fine - coarse;
    let rel = (galerkin[0] - extrapolated).abs() / extrapolated;
    assert!(rel < 1e-5, "galerkin {} vs fd {extrapolated}", galerkin[0]);
}

#[test]
fn galerkin_matches_fd_at_scaled_eta2() {
    // Same comparison through the homothety: eta^2 = 90 scales both sides.
    let shape = SmarrShape::new(90.0, 0.1).unwrap();
    let galerkin = sym_eigenvalues(&assemble(0, &shape, 40).unwrap());
    let (diag, off) = fd_matrix(0, &shape, 2000);
    let fd = fd_eigenvalue(&diag, &off, 1);
    let rel = (galerkin[0] - fd).abs() / fd;
    assert!(rel < 1e-6, "galerkin {} vs fd {fd}", galerkin[0]);
}
