//! Acceptance suite: one test per release criterion, each printing a PASS
//! line with the measured figure (run with `--nocapture` to see them).
//!
//! Derived thresholds are frozen from independent oracle runs (direct
//! diagonalization and cumulative summation, cross-checked against the
//! matrix-exponential and adaptive-integrator routes below).

use std::process::Command;
use std::sync::OnceLock;

use cascade4::coherent::{
    coherent_probability_trace, collapse_revival_metrics, poisson_weights, revival_time_estimate,
    AveragedTrace,
};
use cascade4::linalg::{hermitian_eigensystem, matrix_exponential_propagate, Amplitudes, C64};
use cascade4::quantized::{
    dressed_matrix_elements, quantized_euler_angles, sector_eigenvalues, sector_hamiltonian,
    sector_probability_trace, SectorParams,
};
use cascade4::semiclassical::{
    evolve_amplitudes, integrate_lab_frame, probability_trace, rotating_frame_hamiltonian,
    semiclassical_euler_angles, SemiclassicalParams,
};
use cascade4::trace::{CaseId, TimeGrid};

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

fn coherent_case(case: CaseId, nbar: f64) -> &'static AveragedTrace {
    static CACHE: OnceLock<std::sync::Mutex<std::collections::HashMap<(String, u64), &'static AveragedTrace>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (case.to_string(), nbar.to_bits());
    let mut map = cache.lock().unwrap();
    if let Some(t) = map.get(&key) {
        return t;
    }
    let field = poisson_weights(nbar, 1e-8).expect("valid field");
    let grid = TimeGrid::uniform(3.0 * revival_time_estimate(nbar, 1.0), 4001).expect("valid grid");
    let avg = coherent_probability_trace(case, &field, 1.0, &grid).expect("valid average");
    let leaked: &'static AveragedTrace = Box::leak(Box::new(avg));
    map.insert(key, leaked);
    leaked
}

fn mirror_defect(a: &AveragedTrace, b: &AveragedTrace) -> f64 {
    let npts = a.trace.len();
    let mut worst = 0.0_f64;
    for i in 0..4 {
        for k in 0..npts {
            worst = worst.max((a.trace.p[i][k] - b.trace.p[3 - i][k]).abs());
        }
    }
    worst
}

#[test]
fn criterion_01_semiclassical_spectrum() {
    let mut worst = 0.0_f64;
    for kappa in [1.0, 2.5] {
        let h = rotating_frame_hamiltonian(&SemiclassicalParams::resonant(kappa));
        let eig = hermitian_eigensystem(&h).unwrap();
        for (got, want) in eig
            .values
            .iter()
            .zip([-3.0 * kappa, -kappa, kappa, 3.0 * kappa])
        {
            worst = worst.max((got - want).abs());
        }
    }
    assert!(worst < 1e-12, "spectrum deviation {worst}");
    println!("criterion 01 [semiclassical spectrum]: PASS (max deviation {worst:.2e})");
}

#[test]
fn criterion_02_binomial_closed_form() {
    let p = SemiclassicalParams::resonant(1.0);
    let grid = TimeGrid::uniform(FOUR_PI, 2001).unwrap();
    let trace = probability_trace(CaseId::I, &p, &grid).unwrap();
    let h = rotating_frame_hamiltonian(&p);
    let mut worst = 0.0_f64;
    let mut worst_oracle = 0.0_f64;
    for (k, &t) in grid.times().iter().enumerate() {
        let (s, c) = t.sin_cos();
        let expect = [
            c.powi(6),
            3.0 * c.powi(4) * s * s,
            3.0 * c * c * s.powi(4),
            s.powi(6),
        ];
        for (i, want) in expect.into_iter().enumerate() {
            worst = worst.max((trace.p[i][k] - want).abs());
        }
        if k % 50 == 0 {
            let probs = matrix_exponential_propagate(&h, &Amplitudes::basis(1), t)
                .unwrap()
                .probabilities();
            for (i, want) in expect.into_iter().enumerate() {
                worst_oracle = worst_oracle.max((probs[i] - want).abs());
            }
        }
    }
    assert!(worst < 1e-10, "closed form deviates by {worst}");
    assert!(worst_oracle < 1e-10, "matrix exponential deviates by {worst_oracle}");
    println!(
        "criterion 02 [binomial Rabi populations]: PASS (closed form {worst:.2e}, matrix-exp cross-check {worst_oracle:.2e})"
    );
}

#[test]
fn criterion_03_semiclassical_mirror_symmetry() {
    let p = SemiclassicalParams::resonant(1.0);
    let grid = TimeGrid::uniform(FOUR_PI, 2001).unwrap();
    let traces: Vec<_> = [CaseId::I, CaseId::II, CaseId::III, CaseId::IV]
        .into_iter()
        .map(|c| probability_trace(c, &p, &grid).unwrap())
        .collect();
    let mut worst = 0.0_f64;
    for k in 0..grid.len() {
        for i in 0..4 {
            worst = worst.max((traces[0].p[i][k] - traces[3].p[3 - i][k]).abs());
            worst = worst.max((traces[1].p[i][k] - traces[2].p[3 - i][k]).abs());
        }
    }
    assert!(worst < 1e-12, "mirror defect {worst}");
    println!("criterion 03 [mirror symmetry I/IV and II/III]: PASS (pointwise defect {worst:.2e})");
}

#[test]
fn criterion_04_sector_spectra_closed_form() {
    let mut worst = 0.0_f64;
    for n in 0..=500 {
        let closed = sector_eigenvalues(n, 1.0);
        let eig = hermitian_eigensystem(&sector_hamiltonian(&SectorParams::resonant(n, 1.0)))
            .unwrap();
        for (got, want) in eig.values.iter().zip(closed.values) {
            worst = worst.max((got - want).abs());
        }
    }
    assert!(worst < 1e-11, "closed-form spectrum deviation {worst}");
    println!("criterion 04 [sector spectra, n in 0..=500]: PASS (max deviation {worst:.2e})");
}

#[test]
fn criterion_05_dressed_rotation_validity() {
    let mut worst_orth = 0.0_f64;
    let mut worst_diag = 0.0_f64;
    for n in 1..=100 {
        // the validation gate runs inside and reports per-entry residuals on
        // any failure
        let t = match dressed_matrix_elements(n) {
            Ok(t) => t,
            Err(e) => panic!("dressed rotation invalid: {e}"),
        };
        worst_orth = worst_orth.max(cascade4::linalg::orthogonality_defect(&t));
        let h = sector_hamiltonian(&SectorParams::resonant(n, 1.0));
        let spectrum = sector_eigenvalues(n, 1.0);
        let d = t.to_complex().mul(&h).mul(&t.transpose().to_complex());
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { spectrum.values[i] } else { 0.0 };
                let defect = (d[(i, j)] - C64::new(want, 0.0)).norm() / (n as f64).sqrt();
                worst_diag = worst_diag.max(defect);
            }
        }
    }
    assert!(worst_orth < 1e-9);
    assert!(worst_diag < 1e-9);
    println!(
        "criterion 05 [dressed rotation, n in 1..=100]: PASS (orthogonality {worst_orth:.2e}, diagonalization {worst_diag:.2e})"
    );
}

#[test]
fn criterion_06_bohr_correspondence() {
    let classical = semiclassical_euler_angles().to_array();
    let d = |n: u32| -> f64 {
        quantized_euler_angles(n)
            .unwrap()
            .to_array()
            .iter()
            .zip(classical)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    };
    let (d2, d4, d6) = (d(100), d(10_000), d(1_000_000));
    assert!(d4 < d2 && d6 < d4, "not decreasing: {d2} {d4} {d6}");
    assert!(d6 < 5e-3, "limit deviation {d6}");
    println!(
        "criterion 06 [correspondence limit of angles]: PASS (d(1e2)={d2:.3e} > d(1e4)={d4:.3e} > d(1e6)={d6:.3e})"
    );
}

#[test]
fn criterion_07_symmetry_breaking_at_n1() {
    let p = SectorParams::resonant(1, 1.0);
    let grid = TimeGrid::uniform(FOUR_PI, 2001).unwrap();
    let v = sector_probability_trace(CaseId::V, &p, &grid).unwrap();
    let viii = sector_probability_trace(CaseId::VIII, &p, &grid).unwrap();
    let defect = (0..grid.len())
        .map(|k| (v.p[0][k] - viii.p[3][k]).abs())
        .fold(0.0_f64, f64::max);
    assert!(defect > 0.05, "defect {defect} does not exceed 0.05");
    // regression pin from the oracle run
    assert!(
        (defect - 0.660119140405797).abs() < 1e-9,
        "defect drifted from frozen value: {defect}"
    );
    println!("criterion 07 [symmetry breaking at n=1]: PASS (max defect {defect:.6})");
}

#[test]
fn criterion_08_oracle_equivalence() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let random_state = |rng: &mut rand_chacha::ChaCha8Rng, live: usize| {
        let mut c = [C64::new(0.0, 0.0); 4];
        for z in c.iter_mut().take(live) {
            *z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let n = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        Amplitudes::new(c.map(|z| z / n))
    };

    // closed-form classical propagation vs matrix exponential
    let mut worst_semi = 0.0_f64;
    for trial in 0..50 {
        let delta = if trial % 2 == 0 { 0.0 } else { rng.gen_range(-2.0..2.0) };
        let p = SemiclassicalParams::new(delta, 0.0, rng.gen_range(0.2..2.0));
        let c0 = random_state(&mut rng, 4);
        let t = rng.gen_range(0.0..12.0);
        let closed = evolve_amplitudes(&c0, &p, t);
        let oracle =
            matrix_exponential_propagate(&rotating_frame_hamiltonian(&p), &c0, t).unwrap();
        for (x, y) in closed.c.iter().zip(oracle.c) {
            worst_semi = worst_semi.max((x - y).norm());
        }
    }
    assert!(worst_semi < 1e-10);

    // closed-form sector propagation vs matrix exponential
    let mut worst_sector = 0.0_f64;
    for _ in 0..50 {
        let n = rng.gen_range(0..=50_u32);
        let p = SectorParams::resonant(n, rng.gen_range(0.2..2.0));
        let c0 = random_state(&mut rng, if n == 0 { 3 } else { 4 });
        let t = rng.gen_range(0.0..12.0);
        let closed = cascade4::quantized::evolve_sector_amplitudes(&c0, &p, t).unwrap();
        let oracle = matrix_exponential_propagate(&sector_hamiltonian(&p), &c0, t).unwrap();
        for (x, y) in closed.c.iter().zip(oracle.c) {
            worst_sector = worst_sector.max((x - y).norm());
        }
    }
    assert!(worst_sector < 1e-10);

    // lab-frame integration vs rotating-frame populations
    let mut worst_lab = 0.0_f64;
    for trial in 0..50 {
        let omega0 = rng.gen_range(0.0..2.0);
        let drive = if trial % 2 == 0 { omega0 } else { rng.gen_range(0.0..2.0) };
        let p = SemiclassicalParams::new(omega0, drive, rng.gen_range(0.2..1.5));
        let c0 = random_state(&mut rng, 4);
        let grid = TimeGrid::uniform(rng.gen_range(2.0..6.0), 9).unwrap();
        let lab = integrate_lab_frame(&c0, &p, &grid).unwrap();
        for (k, &t) in grid.times().iter().enumerate() {
            let rot = evolve_amplitudes(&c0, &p, t).probabilities();
            for i in 0..4 {
                worst_lab = worst_lab.max((lab.p[i][k] - rot[i]).abs());
            }
        }
    }
    assert!(worst_lab < 1e-8);

    println!(
        "criterion 08 [oracle equivalence, 150 randomized instances]: PASS (classical {worst_semi:.2e}, sector {worst_sector:.2e}, lab-frame {worst_lab:.2e})"
    );
}

#[test]
fn criterion_09_collapse_and_revival() {
    let avg = coherent_case(CaseId::V, 48.0);
    let m = collapse_revival_metrics(avg, 1).unwrap();
    let t_r = revival_time_estimate(48.0, 1.0);
    assert!(
        m.revival_amplitude > 3.0 * m.collapse_floor,
        "revival {m:?} not distinct"
    );
    let ratio = m.revival_peak_time / t_r;
    assert!((0.7..=1.3).contains(&ratio), "revival peak ratio {ratio}");
    // regression pins from the oracle run
    assert!((m.collapse_floor - 0.006500).abs() < 5e-4, "floor {}", m.collapse_floor);
    assert!((m.revival_peak_time - 43.5530).abs() < 0.2, "peak {}", m.revival_peak_time);
    assert!((m.revival_amplitude - 0.550878).abs() < 5e-3, "amp {}", m.revival_amplitude);
    println!(
        "criterion 09 [collapse and revival at nbar=48]: PASS (floor {:.4}, peak t {:.3} = {:.3} t_r, amplitude {:.3})",
        m.collapse_floor, m.revival_peak_time, ratio, m.revival_amplitude
    );
}

#[test]
fn criterion_10_symmetry_restoration() {
    let d48_v = mirror_defect(coherent_case(CaseId::V, 48.0), coherent_case(CaseId::VIII, 48.0));
    let d48_vi = mirror_defect(coherent_case(CaseId::VI, 48.0), coherent_case(CaseId::VII, 48.0));
    assert!(d48_v < 0.05, "V/VIII defect {d48_v}");
    assert!(d48_vi < 0.05, "VI/VII defect {d48_vi}");
    // regression pins
    assert!((d48_v - 0.017870).abs() < 2e-3, "V/VIII drifted: {d48_v}");
    assert!((d48_vi - 0.025777).abs() < 2e-3, "VI/VII drifted: {d48_vi}");

    let d5 = mirror_defect(coherent_case(CaseId::V, 5.0), coherent_case(CaseId::VIII, 5.0));
    assert!(
        d5 > d48_v,
        "restoration not monotone: defect(5) = {d5} vs defect(48) = {d48_v}"
    );
    println!(
        "criterion 10 [symmetry restoration at nbar=48]: PASS (V/VIII {d48_v:.4}, VI/VII {d48_vi:.4}, nbar=5 gives {d5:.4})"
    );
}

#[test]
fn criterion_11_reproducible_figures() {
    let start = std::time::Instant::now();
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = Command::new(env!("CARGO_BIN_EXE_cascade4"))
            .args(["reproduce-figures", "--outdir"])
            .arg(dir.path())
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let elapsed = start.elapsed();

    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir_a.path().join("manifest.json")).unwrap(),
    )
    .unwrap();
    let panels = manifest["panels"].as_array().unwrap();
    assert_eq!(panels.len(), 24, "manifest must list 24 panels");

    let mut names: Vec<String> = panels
        .iter()
        .map(|p| p["file"].as_str().unwrap().to_string())
        .collect();
    names.push("manifest.json".into());
    for name in &names {
        let a = std::fs::read(dir_a.path().join(name)).unwrap();
        let b = std::fs::read(dir_b.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }

    // the exported mirror pair matches to full printed precision
    let fig1a = std::fs::read_to_string(dir_a.path().join("fig1a.csv")).unwrap();
    let fig1d = std::fs::read_to_string(dir_a.path().join("fig1d.csv")).unwrap();
    let col = |text: &str, idx: usize| -> Vec<String> {
        text.lines()
            .skip(1)
            .map(|l| l.split(',').nth(idx).unwrap().to_string())
            .collect()
    };
    assert_eq!(col(&fig1a, 1), col(&fig1d, 4), "fig1a p1 vs fig1d p4");

    assert!(elapsed.as_secs() < 60, "two export runs took {elapsed:?}");
    println!(
        "criterion 11 [figure export determinism]: PASS ({} files byte-identical across runs, {elapsed:.1?} for two runs)",
        names.len()
    );
}
