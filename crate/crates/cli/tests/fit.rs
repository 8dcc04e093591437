use bosescat_cli::fit::{fit_scale, read_curve, read_data, Curve, DataPoint, ScaleFit};
use bosescat_cli::scenario::parse;
use bosescat_cli::sweep::run_sweep;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn ideal_curve(kappa: f64) -> Curve {
    let text = format!("schema_version=1\ntrap=harmonic\nkappa={kappa}\nsweep=t\nrange=0.3,1.6\npoints=131\n");
    let out = run_sweep(&parse(&text).unwrap(), 0, None).unwrap();
    Curve::new(
        out.rows
            .iter()
            .map(|r| (r.t, r.result.as_ref().unwrap().s - 1.0))
            .collect(),
    )
    .unwrap()
}

fn temperatures(n: usize) -> Vec<f64> {
    (0..n).map(|i| 0.4 + 1.1 * i as f64 / (n - 1) as f64).collect()
}

fn draw(curve: &Curve, scale: f64, noise: impl Fn(f64) -> f64, rng: &mut ChaCha8Rng) -> Vec<DataPoint> {
    temperatures(14)
        .into_iter()
        .map(|t| {
            let clean = scale * curve.eval(t).unwrap();
            let sigma = noise(clean);
            DataPoint {
                t,
                signal: clean + sigma * Normal::new(0.0, 1.0).unwrap().sample(rng),
                sigma,
            }
        })
        .collect()
}

#[test]
fn noiseless_data_recovers_scale() {
    let curve = ideal_curve(0.51);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let data = draw(&curve, 2.5, |_| 0.1, &mut rng)
        .into_iter()
        .map(|d| DataPoint {
            signal: 2.5 * curve.eval(d.t).unwrap(),
            ..d
        })
        .collect::<Vec<_>>();
    let ScaleFit { scale, chi2, dof } = fit_scale(&curve, &data).unwrap();
    assert!((scale - 2.5).abs() < 1e-14, "scale {scale}");
    assert!(chi2 < 1e-25);
    assert_eq!(dof, 13);
}

#[test]
fn unit_noise_chi2_mostly_in_band() {
    let curve = ideal_curve(0.51);
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let trials = 2000;
    let inside = (0..trials)
        .filter(|_| {
            let data = draw(&curve, 2.5, |_| 1.0, &mut rng);
            let chi2 = fit_scale(&curve, &data).unwrap().chi2;
            (4.0..=30.0).contains(&chi2)
        })
        .count();
    let frac = inside as f64 / trials as f64;
    assert!(frac >= 0.95, "fraction in [4, 30]: {frac}");
}

#[test]
fn generating_model_wins_the_chi2_comparison() {
    let a = ideal_curve(0.51);
    let b = ideal_curve(0.3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let trials = 500;
    // Noise of 10% of the signal with a floor.
    let wins = (0..trials)
        .filter(|_| {
            let data = draw(&a, 1.0, |y: f64| (0.1 * y.abs()).max(0.02), &mut rng);
            fit_scale(&a, &data).unwrap().chi2 <= fit_scale(&b, &data).unwrap().chi2
        })
        .count();
    let frac = wins as f64 / trials as f64;
    assert!(frac >= 0.9, "model A preferred in {frac}");
}

#[test]
fn data_outside_curve_is_a_range_error() {
    let curve = ideal_curve(0.51);
    let data = [
        DataPoint {
            t: 0.5,
            signal: 1.0,
            sigma: 1.0,
        },
        DataPoint {
            t: 1.7,
            signal: 1.0,
            sigma: 1.0,
        },
    ];
    let err = fit_scale(&curve, &data).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn files_round_trip_through_the_fit() {
    let dir = tempfile::tempdir().unwrap();
    let sweep_path = dir.path().join("curve.csv");
    let out = run_sweep(
        &parse("schema_version=1\ntrap=harmonic\nkappa=0.51\nsweep=t\nrange=0.5,1.5\npoints=11\n").unwrap(),
        0,
        None,
    )
    .unwrap();
    out.table()
        .write_to(std::fs::File::create(&sweep_path).unwrap())
        .unwrap();
    let data_path = dir.path().join("data.csv");
    let mut text = String::from("# synthetic\nt,signal,sigma\n");
    for r in &out.rows {
        text.push_str(&format!(
            "{:.17e},{:.17e},0.5\n",
            r.t,
            2.5 * r.result.as_ref().unwrap().s
        ));
    }
    std::fs::write(&data_path, text).unwrap();
    let fit = fit_scale(
        &read_curve(&sweep_path, "t", "s").unwrap(),
        &read_data(&data_path).unwrap(),
    )
    .unwrap();
    assert!((fit.scale - 2.5).abs() < 1e-14);
    assert!(fit.chi2 < 1e-25);
    assert_eq!(fit.dof, 10);
}
