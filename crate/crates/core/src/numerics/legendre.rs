//! Associated Legendre functions, orthonormal on [-1, 1] with respect to
//! plain `dx`.
//!
//! The normalization makes the functions an orthonormal L^2 basis for each
//! order `k`, which is what turns the Galerkin mass matrix into the
//! identity. Values are produced by the upward three-term recurrence in the
//! degree, seeded at `l = |k|`; the recurrence is stable in this direction.

/// Normalized associated Legendre function of degree `l` and order `k`.
///
/// Satisfies `integral of P(l, k, x) * P(m, k, x) dx = delta(l, m)` over
/// [-1, 1]. The sign convention is seed-positive (no Condon-Shortley phase)
/// and only `|k|` enters. Panics when `l < |k|` or `|x| > 1`.
pub fn assoc_legendre_normalized(l: u32, k: i32, x: f64) -> f64 {
    let m = k.unsigned_abs();
    assert!(l >= m, "degree l = {l} must be at least |k| = {m}");
    assert!(x.abs() <= 1.0, "argument {x} outside [-1, 1]");
    let mut seed = std::f64::consts::FRAC_1_SQRT_2;
    let sin2 = (1.0 - x) * (1.0 + x);
    for i in 1..=m {
        let i = i as f64;
        seed *= ((2.0 * i + 1.0) / (2.0 * i)).sqrt() * sin2.sqrt();
    }
    if l == m {
        return seed;
    }
    let mut prev = 0.0;
    let mut cur = seed;
    for deg in m + 1..=l {
        let next = recurrence_step(deg, m, x, cur, prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// One step of the normalized recurrence: value at degree `l` from the two
/// degrees below.
fn recurrence_step(l: u32, m: u32, x: f64, below: f64, below2: f64) -> f64 {
    let lf = l as f64;
    let mf = m as f64;
    let denom = (lf - mf) * (lf + mf);
    let a = ((2.0 * lf - 1.0) * (2.0 * lf + 1.0) / denom).sqrt();
    let b = if l >= m + 2 {
        ((2.0 * lf + 1.0) * (lf - 1.0 - mf) * (lf - 1.0 + mf) / ((2.0 * lf - 3.0) * denom)).sqrt()
    } else {
        0.0
    };
    a * x * below - b * below2
}

/// Values and derivatives of all normalized functions with order `|k|` and
/// degrees `|k| ..= l_max`, at a single interior point.
///
/// Returns `(values, derivatives)` indexed by `l - |k|`. Used by the matrix
/// assembly, which evaluates whole basis columns at each quadrature node.
/// Requires `|x| < 1` strictly (derivatives blow up at the endpoints).
pub(crate) fn assoc_legendre_table(k_abs: u32, l_max: u32, x: f64) -> (Vec<f64>, Vec<f64>) {
    debug_assert!(x.abs() < 1.0);
    debug_assert!(l_max >= k_abs);
    let m = k_abs;
    let count = (l_max - m + 1) as usize;
    let mut values = Vec::with_capacity(count);

    let sin2 = (1.0 - x) * (1.0 + x);
    let mut seed = std::f64::consts::FRAC_1_SQRT_2;
    for i in 1..=m {
        let i = i as f64;
        seed *= ((2.0 * i + 1.0) / (2.0 * i)).sqrt() * sin2.sqrt();
    }
    values.push(seed);
    for deg in m + 1..=l_max {
        let below = values[(deg - m - 1) as usize];
        let below2 = if deg >= m + 2 {
            values[(deg - m - 2) as usize]
        } else {
            0.0
        };
        values.push(recurrence_step(deg, m, x, below, below2));
    }

    // (1 - x^2) P'_l = s_l P_{l-1} - l x P_l with
    // s_l = sqrt((2l + 1) (l^2 - m^2) / (2l - 1)); the l = m case reduces to
    // the derivative of the seed.
    let mf = m as f64;
    let derivs = (0..count)
        .map(|idx| {
            let lf = (m + idx as u32) as f64;
            let below = if idx == 0 { 0.0 } else { values[idx - 1] };
            let s = ((2.0 * lf + 1.0) * (lf * lf - mf * mf) / (2.0 * lf - 1.0)).sqrt();
            (s * below - lf * x * values[idx]) / sin2
        })
        .collect();
    (values, derivs)
}
