//! Gauss-Legendre quadrature on [-1, 1].
//!
//! Nodes and weights are generated by Newton iteration on the Legendre
//! polynomial roots, so rules of any order are available (the Galerkin
//! assembly asks for a few hundred points).

/// A Gauss-Legendre rule: integrates polynomials of degree `2 * order - 1`
/// exactly over [-1, 1].
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// Nodes in strictly increasing order, symmetric about 0.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Positive weights; they sum to 2, the measure of [-1, 1].
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Approximates the integral of `f` over [-1, 1].
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Legendre polynomial value and derivative at `x` by the three-term
/// recurrence.
fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for j in 2..=n {
        let jf = j as f64;
        let p_next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = p_next;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let deriv = (n as f64) * (x * p - p_prev) / (x * x - 1.0);
    (p, deriv)
}

/// Builds the Gauss-Legendre rule of the given order.
///
/// Panics if `order == 0`.
///
/// ```
/// use kerrspec_core::numerics::gauss_legendre;
///
/// let rule = gauss_legendre(32);
/// let integral = rule.integrate(|x| x * x);
/// assert!((integral - 2.0 / 3.0).abs() < 1e-14);
/// ```
pub fn gauss_legendre(order: usize) -> QuadratureRule {
    assert!(order >= 1, "quadrature order must be at least 1");
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];

    for i in 0..n / 2 {
        // Initial guess for the i-th root, counted from x = +1 downwards.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_deriv(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                // One polishing step after convergence.
                let (p, d) = legendre_with_deriv(n, x);
                dp = d;
                x -= p / d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Mirror the root so the rule is symmetric by construction.
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        let (_, dp) = legendre_with_deriv(n, 0.0);
        nodes[n / 2] = 0.0;
        weights[n / 2] = 2.0 / (dp * dp);
    }
    QuadratureRule { nodes, weights }
}
