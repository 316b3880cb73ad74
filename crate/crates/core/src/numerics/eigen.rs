//! Dense symmetric eigensolver: Householder tridiagonalization followed by
//! implicit-shift QL iteration.
//!
//! Self-contained on purpose. The matrices produced by the Galerkin assembly
//! stay below a few hundred rows, where this classic pair of algorithms is
//! fast and unconditionally convergent.

/// Dense real symmetric matrix. Only the lower triangle is stored, so
/// `entries(i, j) == entries(j, i)` holds by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    // Packed lower triangle, row by row: (i, j) with j <= i lives at
    // i * (i + 1) / 2 + j.
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds an `n x n` symmetric matrix; `f` is invoked once per lower
    /// triangle entry `(i, j)` with `i >= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        let mut data = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in 0..=i {
                data.push(f(i, j));
            }
        }
        SymMatrix { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| 0.0)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        self.data[r * (r + 1) / 2 + c]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        self.data[r * (r + 1) / 2 + c] = value;
    }

    fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// Eigenvalues and matching orthonormal eigenvectors, ascending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// `vectors[j]` is the unit eigenvector paired with `values[j]`.
    pub vectors: Vec<Vec<f64>>,
}

/// All eigenvalues of a symmetric matrix, in ascending order.
pub fn sym_eigenvalues(matrix: &SymMatrix) -> Vec<f64> {
    let mut a = matrix.to_dense();
    let (mut d, mut e) = householder_tridiag(&mut a, false);
    ql_implicit(&mut d, &mut e, None);
    d.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalue is NaN"));
    d
}

/// Full eigendecomposition, eigenpairs sorted by ascending eigenvalue.
pub fn sym_eigen(matrix: &SymMatrix) -> EigenDecomposition {
    let n = matrix.dim();
    let mut a = matrix.to_dense();
    let (mut d, mut e) = householder_tridiag(&mut a, true);
    ql_implicit(&mut d, &mut e, Some(&mut a));

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| d[x].partial_cmp(&d[y]).expect("eigenvalue is NaN"));
    let values = order.iter().map(|&j| d[j]).collect();
    let vectors = order
        .iter()
        .map(|&j| (0..n).map(|k| a[k][j]).collect())
        .collect();
    EigenDecomposition { values, vectors }
}

/// Reduces `a` to tridiagonal form (diagonal `d`, subdiagonal `e` with
/// `e[i]` coupling rows `i - 1` and `i`, `e[0] = 0`) by Householder
/// reflections. With `accumulate` the orthogonal transform is formed in
/// place of `a`, ready for the QL rotations.
#[allow(clippy::needless_range_loop)] // index form mirrors the rank-2 update
fn householder_tridiag(a: &mut [Vec<f64>], accumulate: bool) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = a[i][..=l].iter().map(|v| v.abs()).sum();
            if scale == 0.0 {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    if accumulate {
                        a[j][i] = a[i][j] / h;
                    }
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j][k] * a[i][k];
                    }
                    for k in j + 1..=l {
                        g += a[k][j] * a[i][k];
                    }
                    e[j] = g / h;
                    f_acc += e[j] * a[i][j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[i][j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j][k] -= f * e[k] + g * a[i][k];
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }

    if accumulate {
        // Form the accumulated orthogonal matrix in `a`.
        d[0] = 0.0;
        for i in 0..n {
            if d[i] != 0.0 {
                for j in 0..i {
                    let mut g = 0.0;
                    for k in 0..i {
                        g += a[i][k] * a[k][j];
                    }
                    for k in 0..i {
                        a[k][j] -= g * a[k][i];
                    }
                }
            }
            d[i] = a[i][i];
            a[i][i] = 1.0;
            for j in 0..i {
                a[j][i] = 0.0;
                a[i][j] = 0.0;
            }
        }
    } else {
        for i in 0..n {
            d[i] = a[i][i];
        }
    }
    e[0] = 0.0;
    (d, e)
}

/// QL iteration with implicit shifts on a symmetric tridiagonal matrix.
/// Optionally rotates the columns of `z` along, turning an accumulated
/// Householder transform into the full eigenvector matrix.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [Vec<f64>]>) {
    let n = d.len();
    if n <= 1 {
        return;
    }
    // Shift the subdiagonal down so e[i] couples rows i and i + 1.
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 50, "QL iteration failed to converge");

            // Implicit shift from the leading 2 x 2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Deflate: an off-diagonal vanished mid-sweep.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for row in z.iter_mut() {
                        f = row[i + 1];
                        row[i + 1] = s * row[i] + c * f;
                        row[i] = c * row[i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}
