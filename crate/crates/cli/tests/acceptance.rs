//! Acceptance suite: one test per release criterion, each printing a PASS
//! line (visible with `--nocapture`). Run with
//! `cargo test -p kerrspec-cli --test acceptance`.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use kerrspec_core::horizon::{PhysicalParams, SmarrShape};
use kerrspec_core::inverse::{
    physical_from_traces, reconstruct_metric, roundtrip, traces_closed_form, TraceSet, TraceSource,
};
use kerrspec_core::numerics::gauss_legendre;
use kerrspec_core::spectral::{eigenvalues, s1_trace_integral, trace_numeric};
use kerrspec_core::Error;

const PI: f64 = std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn criterion_1_sphere_oracle() {
    let start = Instant::now();
    let shape = SmarrShape::new(1.0, 0.0).unwrap();
    let spectrum = eigenvalues(0, &shape, 20, 56).unwrap();
    for (idx, &lambda) in spectrum.eigenvalues().iter().enumerate() {
        let l = (idx + 1) as f64;
        let exact = l * (l + 1.0);
        assert!(
            rel(lambda, exact) < 1e-10,
            "l={l}: {lambda} vs {exact} (rel {:e})",
            rel(lambda, exact)
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 PASS: first 20 invariant sphere eigenvalues match l(l+1) to 1e-10 ({elapsed:?})"
    );
}

#[test]
fn criterion_2_equivariant_trace_identity() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut worst_area_spread: f64 = 0.0;
    for &beta2 in &[0.0, 0.1, 0.3, 0.5] {
        for &eta2 in &[1.0, 2.0, 90.0] {
            let shape = SmarrShape::new(eta2, beta2).unwrap();
            let closed = traces_closed_form(&shape, 3);
            let mut area_estimates = Vec::new();
            for k in 1..=3i32 {
                let expect = eta2 / f64::from(k);
                // Closed form is exact.
                assert_eq!(closed.gamma(k), Some(expect));
                // Numerical estimate at J = 60.
                let spectrum = eigenvalues(k, &shape, 60, 136).unwrap();
                let estimate = trace_numeric(&spectrum, 12).unwrap();
                let deviation = rel(estimate.value, expect);
                worst = worst.max(deviation);
                assert!(
                    deviation < 1e-3,
                    "beta2={beta2} eta2={eta2} k={k}: {} vs {expect} (rel {deviation:e})",
                    estimate.value
                );
                area_estimates.push(4.0 * PI * f64::from(k) * estimate.value);
            }
            // All channels must report the same area.
            let max = area_estimates.iter().cloned().fold(f64::MIN, f64::max);
            let min = area_estimates.iter().cloned().fold(f64::MAX, f64::min);
            let spread = (max - min) / max;
            worst_area_spread = worst_area_spread.max(spread);
            assert!(spread < 2e-3, "beta2={beta2} eta2={eta2}: area spread {spread:e}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 2 PASS: gamma_k = eta^2/k over 36 (beta^2, eta^2, k) combinations, worst rel {worst:.2e}, area spread {worst_area_spread:.2e} ({elapsed:?})"
    );
}

#[test]
fn criterion_3_invariant_trace() {
    // Quadrature route against the closed form, then the eigenvalue-sum
    // route against the quadrature value.
    let mut worst_quad: f64 = 0.0;
    let mut worst_sum: f64 = 0.0;
    for i in 0..=10 {
        let beta2 = 0.05 * f64::from(i);
        let shape = SmarrShape::new(1.0, beta2).unwrap();
        let quadrature = s1_trace_integral(&shape);
        let closed = 1.0 - 2.0 * beta2 / 3.0;
        worst_quad = worst_quad.max(rel(quadrature, closed));
        assert!(rel(quadrature, closed) < 1e-13, "beta2={beta2}: {quadrature}");

        let spectrum = eigenvalues(0, &shape, 60, 136).unwrap();
        let estimate = trace_numeric(&spectrum, 12).unwrap();
        worst_sum = worst_sum.max(rel(estimate.value, quadrature));
        assert!(
            rel(estimate.value, quadrature) < 1e-4,
            "beta2={beta2}: {} vs {quadrature}",
            estimate.value
        );
    }
    println!(
        "ACCEPTANCE 3 PASS: gamma_0 quadrature matches 1 - 2 beta^2/3 to {worst_quad:.2e}, eigenvalue sums to {worst_sum:.2e}"
    );
}

#[test]
fn criterion_4_closed_form_roundtrip() {
    // 5 x 5 grid including the extremal edge.
    let masses = [0.5, 1.0, 2.0, 5.0, 10.0];
    let spin_fractions = [0.0, 0.25, 0.5, 0.9, 1.0];
    let mut worst: f64 = 0.0;
    for &m in &masses {
        for &frac in &spin_fractions {
            let a = m * frac;
            let params = PhysicalParams::new(m, a, 0.0).unwrap();
            let rt = roundtrip(&params, TraceSource::closed_form()).unwrap();
            let rec = &rt.reconstruction;
            let dev_m = rel(rec.physical.mass(), m);
            let dev_r = rel(rec.physical.r_plus(), params.r_plus());
            let dev_area = rel(rec.area, params.smarr_shape().area());
            let dev_a = if a > 0.0 {
                rel(rec.physical.spin(), a)
            } else {
                rec.physical.spin().abs()
            };
            worst = worst.max(dev_m).max(dev_a).max(dev_r).max(dev_area);
            assert!(
                dev_m < 1e-12 && dev_a < 1e-12 && dev_r < 1e-12 && dev_area < 1e-12,
                "(m,a)=({m},{a}): devs {dev_m:e} {dev_a:e} {dev_r:e} {dev_area:e}"
            );
        }
    }

    // The worked triple: (5, 3) -> (gamma_0, gamma_1) = (84, 90) -> (5, 3).
    let params = PhysicalParams::new(5.0, 3.0, 0.0).unwrap();
    let traces = traces_closed_form(&params.smarr_shape(), 1);
    assert!(rel(traces.gamma0(), 84.0) < 1e-14);
    assert!(rel(traces.gamma(1).unwrap(), 90.0) < 1e-14);
    let report = physical_from_traces(&traces, 0.0, 1).unwrap();
    assert!(rel(report.physical.mass(), 5.0) < 1e-12);
    assert!(rel(report.physical.spin(), 3.0) < 1e-12);
    println!(
        "ACCEPTANCE 4 PASS: closed-form round trip on the 5x5 (m, a) grid incl. extremal, worst rel {worst:.2e}"
    );
}

#[test]
fn criterion_5_numeric_roundtrip() {
    let start = Instant::now();
    let params = PhysicalParams::new(1.0, 0.6, 0.0).unwrap();
    let rt = roundtrip(&params, TraceSource::Numeric { modes: 60, basis_size: 136 }).unwrap();
    assert!(
        rt.max_rel_deviation < 1e-3,
        "deviation {:e}",
        rt.max_rel_deviation
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 5 PASS: numeric round trip of (1, 0.6, 0) at J=60, N=136 recovers (m, a) to {:.2e} ({elapsed:?})",
        rt.max_rel_deviation
    );
}

#[test]
fn criterion_6_metric_identity() {
    let shapes = [
        (1.0, 0.0),
        (2.0, 0.1),
        (90.0, 0.2),
        (0.5, 0.3),
        (7.0, 0.4),
        (2.0, 0.5),
    ];
    let mut worst: f64 = 0.0;
    for &(eta2, beta2) in &shapes {
        let shape = SmarrShape::new(eta2, beta2).unwrap();
        let forward = shape.profile();
        let reconstructed = reconstruct_metric(&traces_closed_form(&shape, 1)).unwrap();
        for i in 0..=100 {
            let x = -1.0 + 0.02 * f64::from(i);
            let want = shape.eta2() * forward.eval(x);
            let got = reconstructed.shape().eta2() * reconstructed.eval(x);
            if want == 0.0 {
                assert_eq!(got, 0.0, "pole value at x={x}");
            } else {
                let dev = rel(got, want);
                worst = worst.max(dev);
                assert!(dev < 1e-12, "eta2={eta2} beta2={beta2} x={x}: {got} vs {want}");
            }
        }
    }
    println!(
        "ACCEPTANCE 6 PASS: reconstructed metric equals the forward profile at 101 points on 6 shapes, worst rel {worst:.2e}"
    );
}

#[test]
fn criterion_7_curvature_checks() {
    // Analytic curvature against -f''/(2 eta^2) by central differences.
    let h = 1e-4;
    let mut worst_fd: f64 = 0.0;
    for &beta2 in &[0.0, 0.1, 0.25, 0.4, 0.5] {
        for &eta2 in &[1.0, 2.0] {
            let shape = SmarrShape::new(eta2, beta2).unwrap();
            let f = shape.profile();
            let mut x = -0.9;
            while x <= 0.9 {
                let fdd = (f.eval(x + h) - 2.0 * f.eval(x) + f.eval(x - h)) / (h * h);
                let diff = (shape.gauss_curvature(x) + fdd / (2.0 * eta2)).abs();
                worst_fd = worst_fd.max(diff);
                assert!(diff < 1e-6, "beta2={beta2} x={x}: {diff:e}");
                x += 0.1;
            }
        }
    }

    // Gauss-Bonnet.
    let rule = gauss_legendre(64);
    let mut worst_gb: f64 = 0.0;
    for &beta2 in &[0.0, 0.1, 0.25, 0.4, 0.5] {
        for &eta2 in &[1.0, 2.0, 90.0] {
            let shape = SmarrShape::new(eta2, beta2).unwrap();
            let total = 2.0 * PI * eta2 * rule.integrate(|x| shape.gauss_curvature(x));
            worst_gb = worst_gb.max((total - 4.0 * PI).abs());
            assert!((total - 4.0 * PI).abs() < 1e-10);
        }
    }

    // Pole-curvature sign flips exactly at beta^2 = 1/4.
    for &(beta2, negative) in &[
        (0.0, false),
        (0.24999, false),
        (0.25, false),
        (0.25001, true),
        (0.5, true),
    ] {
        let shape = SmarrShape::new(1.0, beta2).unwrap();
        assert_eq!(shape.gauss_curvature(1.0) < 0.0, negative, "beta2={beta2}");
        assert_eq!(shape.gauss_curvature(-1.0) < 0.0, negative, "beta2={beta2}");
    }
    println!(
        "ACCEPTANCE 7 PASS: curvature matches -f''/(2 eta^2) to {worst_fd:.2e}, Gauss-Bonnet to {worst_gb:.2e}, pole sign flips at beta^2 = 1/4"
    );
}

#[test]
fn criterion_8_mass_charge_remark() {
    let traces = TraceSet::new(84.0, [(1, 90.0)]).unwrap();
    let base = physical_from_traces(&traces, 0.0, 1).unwrap();
    let mut previous_mass = base.physical.mass();
    for &e in &[1.0, 2.0] {
        let report = physical_from_traces(&traces, e, 1).unwrap();
        // Only the mass moves; spin, radius, and area are bit-identical.
        assert_eq!(report.physical.spin().to_bits(), base.physical.spin().to_bits());
        assert_eq!(report.physical.r_plus().to_bits(), base.physical.r_plus().to_bits());
        assert_eq!(report.area.to_bits(), base.area.to_bits());
        assert!(report.physical.mass() > previous_mass);
        let expect = (90.0 + e * e) / (6.0 * 84.0 - 2.0 * 90.0_f64).sqrt();
        assert!(rel(report.physical.mass(), expect) < 1e-14);
        previous_mass = report.physical.mass();
    }
    // Large enough charge admits no horizon of this shape.
    let err = physical_from_traces(&traces, 9.0, 1).unwrap_err();
    assert!(matches!(err, Error::ChargeTooLarge { .. }), "{err}");
    println!(
        "ACCEPTANCE 8 PASS: charge sweep moves only the mass; e = 9 on traces (84, 90) raises ChargeTooLarge"
    );
}

#[test]
fn criterion_9_determinism() {
    fn scratch(name: &str) -> PathBuf {
        let mut path = std::env::temp_dir();
        path.push(format!("kerrspec-acceptance-{}-{name}", std::process::id()));
        path
    }
    let cases: &[&[&str]] = &[
        &["forward", "-m", "1", "-a", "0.7", "-e", "0.2"],
        &["spectrum", "-m", "5", "-a", "3", "-k", "1", "-J", "24"],
        &["invert", "--gamma0", "84", "--gamma", "1:90", "--gamma", "2:45"],
        &["roundtrip", "-m", "1", "-a", "0.6", "--numeric", "-J", "30"],
    ];
    for (idx, case) in cases.iter().enumerate() {
        let first = scratch(&format!("{idx}-a"));
        let second = scratch(&format!("{idx}-b"));
        for out in [&first, &second] {
            let status = Command::new(env!("CARGO_BIN_EXE_kerrspec"))
                .args(*case)
                .arg("--out")
                .arg(out)
                .status()
                .expect("binary runs");
            assert!(status.success(), "{case:?}");
        }
        let bytes_a = std::fs::read(&first).unwrap();
        let bytes_b = std::fs::read(&second).unwrap();
        assert!(!bytes_a.is_empty());
        assert_eq!(bytes_a, bytes_b, "outputs of {case:?} differ between runs");
        let _ = std::fs::remove_file(first);
        let _ = std::fs::remove_file(second);
    }
    println!("ACCEPTANCE 9 PASS: repeated invocations of all report commands are byte-identical");
}
