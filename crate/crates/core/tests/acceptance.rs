//! Acceptance suite: one PASS/FAIL line per criterion, with the tolerances
//! and runtime budgets pinned below. Exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lattice_dirac::clifford::{canonical_ordering, ks_clifford, standard_clifford, verify_clifford};
use lattice_dirac::continuum::{convergence_sweep, embed, make_window, ConvergenceParams, Pairing, RhoRule};
use lattice_dirac::diag::{block_check, conjugator, conjugated};
use lattice_dirac::lattice::{build_dense, LatticeField, LatticeGrid, LatticeHamiltonian};
use lattice_dirac::linalg;
use lattice_dirac::staggered::{verify_pair, StaggeredPair};
use lattice_dirac::symbols::{count_light_minima, default_threshold, discrete_spectrum, SymbolSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CLIFFORD_TOL: f64 = 1e-13;
const CLIFFORD_BUDGET: Duration = Duration::from_secs(1);
const UNITARITY_TOL: f64 = 1e-13;
const INTERTWINE_TOL: f64 = 1e-12;
const SQUARE_TOL: f64 = 1e-12;
const STAGGERED_BUDGET: Duration = Duration::from_secs(10);
const SPECTRUM_TOL: f64 = 1e-10;
const DOUBLING_GRID: usize = 64;
const KS_SLOPE_TOL: f64 = 0.15;
const KS_SLOPE_TOL_3D: f64 = 0.2;
const WILSON_SLOPE_TOL: f64 = 0.15;
const NAIVE_FLOOR: f64 = 0.1;
const CONVERGENCE_BUDGET: Duration = Duration::from_secs(120);
const BLOCK_TOL: f64 = 1e-12;
const BLOCK_SAMPLES: usize = 100;
const PARTITION_TOL: f64 = 1e-13;
const PARTITION_SAMPLES: usize = 10_000;
const ISOMETRY_TOL: f64 = 1e-10;
const ISOMETRY_FIELDS: usize = 20;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_budget(start: Instant, budget: Duration) -> Result<f64, String> {
    let secs = start.elapsed().as_secs_f64();
    ensure(start.elapsed() <= budget, || {
        format!("runtime {secs:.2}s exceeds {:.0}s", budget.as_secs_f64())
    })?;
    Ok(secs)
}

fn clifford_algebra() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for d in 1..=3 {
        let r = verify_clifford(&standard_clifford(d).map_err(|e| e.to_string())?, CLIFFORD_TOL);
        ensure(r.pass, || format!("standard d={d} residual {:e}", r.max_residual))?;
        worst = worst.max(r.max_residual);
    }
    for d in 1..=6 {
        let set = ks_clifford(d, &canonical_ordering(d).unwrap()).map_err(|e| e.to_string())?;
        let r = verify_clifford(&set, CLIFFORD_TOL);
        ensure(r.pass, || format!("staggered d={d} residual {:e}", r.max_residual))?;
        worst = worst.max(r.max_residual);
    }
    let secs = within_budget(start, CLIFFORD_BUDGET)?;
    Ok(format!("standard d=1..3, staggered d=1..6, max residual {worst:e}, {secs:.3}s"))
}

fn staggered_identities() -> Outcome {
    let start = Instant::now();
    let mut worst = [0.0f64; 3];
    let mut cases = 0;
    for d in 1..=3 {
        // Fine sides 2, 4 and 8 cover coarse sides 1, 2 and 4.
        for fine_side in [2, 4, 8] {
            for m in [0.0, 0.5, 1.0] {
                let pair = StaggeredPair::from_fine_side(fine_side, 0.125, canonical_ordering(d).unwrap())
                    .map_err(|e| e.to_string())?;
                let r = verify_pair(&pair, m, SQUARE_TOL).map_err(|e| e.to_string())?;
                let unitarity = r.unitarity_fine.max(r.unitarity_coarse);
                ensure(unitarity <= UNITARITY_TOL, || format!("d={d} n={fine_side} unitarity {unitarity:e}"))?;
                ensure(r.intertwine <= INTERTWINE_TOL, || {
                    format!("d={d} n={fine_side} m={m} intertwine {:e}", r.intertwine)
                })?;
                ensure(r.square <= SQUARE_TOL, || format!("d={d} n={fine_side} m={m} square {:e}", r.square))?;
                worst[0] = worst[0].max(unitarity);
                worst[1] = worst[1].max(r.intertwine);
                worst[2] = worst[2].max(r.square);
                cases += 1;
            }
        }
    }
    let secs = within_budget(start, STAGGERED_BUDGET)?;
    Ok(format!(
        "{cases} cases, unitarity {:e}, intertwine {:e}, square {:e}, {secs:.2}s",
        worst[0], worst[1], worst[2]
    ))
}

fn spectral_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    let compare = |dense: Vec<f64>, symbol: Vec<f64>, what: &str| -> Result<f64, String> {
        ensure(dense.len() == symbol.len(), || format!("{what}: {} vs {} eigenvalues", dense.len(), symbol.len()))?;
        Ok(linalg::max_sorted_difference(&dense, &symbol))
    };
    for d in 1..=2 {
        for n in [2, 3, 4, 8] {
            let h = 0.25;
            let m = 0.7;
            let rho = 0.3;
            let grid = LatticeGrid::new(d, n, h).unwrap();
            let cl = standard_clifford(d).unwrap();
            let naive = build_dense(&LatticeHamiltonian::naive(cl.clone(), m), grid).map_err(|e| e.to_string())?;
            let err = compare(
                naive.eigenvalues(),
                discrete_spectrum(&SymbolSpec::naive(d, m, h).unwrap(), n).unwrap(),
                "naive",
            )?;
            worst = worst.max(err);
            let wilson = build_dense(&LatticeHamiltonian::wilson(cl, rho, m), grid).map_err(|e| e.to_string())?;
            let err2 = compare(
                wilson.eigenvalues(),
                discrete_spectrum(&SymbolSpec::wilson(d, m, h, rho).unwrap(), n).unwrap(),
                "wilson",
            )?;
            worst = worst.max(err2);
            // Staggered: multi-component on the coarse lattice and one-component on the fine one.
            let ks_symbol = discrete_spectrum(&SymbolSpec::ks_lattice(d, m, h).unwrap(), n).unwrap();
            let coarse = LatticeGrid::new(d, n, 2.0 * h).unwrap();
            let multi = build_dense(&LatticeHamiltonian::ks_multi_component(canonical_ordering(d).unwrap(), m), coarse)
                .map_err(|e| e.to_string())?;
            let err3 = compare(multi.eigenvalues(), ks_symbol.clone(), "staggered")?;
            let fine = LatticeGrid::new(d, 2 * n, h).unwrap();
            let one = build_dense(&LatticeHamiltonian::ks_one_component(m), fine).map_err(|e| e.to_string())?;
            let err4 = compare(one.eigenvalues(), ks_symbol, "one-component staggered")?;
            worst = worst.max(err3).max(err4);
            ensure(worst <= SPECTRUM_TOL, || format!("d={d} n={n} max deviation {worst:e}"))?;
            cases += 4;
        }
    }
    Ok(format!("{cases} operators, d<=2, n<=8, max deviation {worst:e}"))
}

fn doubling_counts() -> Outcome {
    let h = 0.1;
    let m = 1.0;
    let mut summary = Vec::new();
    for d in 1..=3 {
        let naive = SymbolSpec::naive(d, m, h).unwrap();
        let r = count_light_minima(&naive, DOUBLING_GRID, default_threshold(&naive)).map_err(|e| e.to_string())?;
        ensure(r.count == 1 << d, || format!("naive d={d}: {} minima", r.count))?;
        let corners_ok = r
            .locations
            .iter()
            .all(|x| x.iter().all(|&c| c.abs() < 1e-12 || (c - 0.5 / h).abs() < 1e-9));
        ensure(corners_ok, || format!("naive d={d}: minima off the zone corners {:?}", r.locations))?;

        let ks = SymbolSpec::ks_lattice(d, m, h).unwrap();
        let r = count_light_minima(&ks, DOUBLING_GRID, default_threshold(&ks)).map_err(|e| e.to_string())?;
        ensure(r.count == 1 && r.locations[0].iter().all(|&c| c == 0.0), || {
            format!("staggered d={d}: {:?}", r.locations)
        })?;

        let wilson = SymbolSpec::wilson(d, m, h, h).unwrap();
        let r = count_light_minima(&wilson, DOUBLING_GRID, default_threshold(&wilson)).map_err(|e| e.to_string())?;
        ensure(r.count == 1, || format!("wilson d={d}: {} minima", r.count))?;
        summary.push(format!("d={d}: {}/1/1", 1 << d));
    }
    Ok(format!("naive/ks/wilson counts {}", summary.join(", ")))
}

fn convergence_rates() -> Outcome {
    let start = Instant::now();
    let window = make_window();
    let sweep = |pairing, d| {
        convergence_sweep(&ConvergenceParams::new(pairing, d, 1.0), &window).map_err(|e| e.to_string())
    };
    let mut notes = Vec::new();
    for d in 1..=3 {
        let r = sweep(Pairing::Ks, d)?;
        let tol = if d == 3 { KS_SLOPE_TOL_3D } else { KS_SLOPE_TOL };
        ensure((r.slope - 1.0).abs() <= tol, || format!("ks d={d} slope {:.4}", r.slope))?;
        notes.push(format!("ks{d} {:.3}", r.slope));
    }
    for d in 1..=2 {
        let r = sweep(Pairing::Wilson(RhoRule::H), d)?;
        ensure((r.slope - 1.0).abs() <= WILSON_SLOPE_TOL, || format!("wilson rho=h d={d} slope {:.4}", r.slope))?;
        notes.push(format!("wilson(h){d} {:.3}", r.slope));
        let r = sweep(Pairing::Wilson(RhoRule::H15), d)?;
        ensure((r.slope - 0.5).abs() <= WILSON_SLOPE_TOL, || {
            format!("wilson rho=h^1.5 d={d} slope {:.4}", r.slope)
        })?;
        notes.push(format!("wilson(h^1.5){d} {:.3}", r.slope));
    }
    for d in 1..=3 {
        let r = sweep(Pairing::Naive, d)?;
        let floor = r.samples.iter().map(|s| s.distance).fold(f64::INFINITY, f64::min);
        ensure(floor >= NAIVE_FLOOR, || format!("naive d={d} min D {floor:.4}"))?;
        notes.push(format!("naive{d} minD {floor:.3}"));
    }
    let secs = within_budget(start, CONVERGENCE_BUDGET)?;
    Ok(format!("{}, {secs:.1}s", notes.join(", ")))
}

fn block_diagonalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut spectral: f64 = 0.0;
    for d in [2, 3] {
        let case = conjugator(d).map_err(|e| e.to_string())?;
        let half = 1 << (d - 1);
        for m in [0.0, 1.0] {
            for _ in 0..BLOCK_SAMPLES {
                let xi: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let r = block_check(&case, &xi, m, BLOCK_TOL).map_err(|e| e.to_string())?;
                ensure(r.pass, || format!("d={d} m={m} xi={xi:?} residual {:e}", r.max_residual()))?;
                worst = worst.max(r.max_residual());
                let e = (xi.iter().map(|x| (2.0 * PI * x).powi(2)).sum::<f64>() + m * m).sqrt();
                let k = conjugated(&case, &xi, m).map_err(|e| e.to_string())?;
                for start in [0, half] {
                    let ev = linalg::hermitian_eigenvalues(&k.view((start, start), (half, half)).into_owned());
                    let want: Vec<f64> = (0..half).map(|i| if i < half / 2 { -e } else { e }).collect();
                    spectral = spectral.max(linalg::max_sorted_difference(&ev, &want) / (1.0 + e));
                }
            }
        }
    }
    ensure(spectral <= BLOCK_TOL, || format!("block eigenvalues off by {spectral:e}"))?;
    Ok(format!(
        "d=2,3 x m=0,1 x {BLOCK_SAMPLES} momenta, max residual {worst:e}, block spectra {spectral:e}"
    ))
}

fn window_and_embedding() -> Outcome {
    let w = make_window();
    let partition = w.partition_residual(PARTITION_SAMPLES);
    ensure(partition <= PARTITION_TOL, || format!("partition residual {partition:e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for k in 0..ISOMETRY_FIELDS {
        let d = 1 + k % 3;
        let side = [16, 6, 4][d - 1] + k % 2;
        let comps = 1 + k % 4;
        let grid = LatticeGrid::new(d, side, 0.1 * (1 + k % 5) as f64).unwrap();
        let u = LatticeField::random(grid, comps, &mut rng);
        let ratio = embed(&u, &w).norm() / u.norm();
        worst = worst.max((ratio - 1.0).abs());
    }
    ensure(worst <= ISOMETRY_TOL, || format!("isometry deviation {worst:e}"))?;
    Ok(format!(
        "partition residual {partition:e} at {PARTITION_SAMPLES} points, isometry deviation {worst:e} on {ISOMETRY_FIELDS} fields"
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let commands: [&[&str]; 8] = [
        &["algebra", "--model", "ks", "--dim", "3", "--seed", "5"],
        &["algebra", "--model", "standard", "--dim", "3"],
        &["dispersion", "--model", "wilson", "--dim", "2", "--grid", "16", "--format", "csv"],
        &["doubling", "--model", "naive", "--dim", "2"],
        &["converge", "--model", "ks", "--dim", "2", "--grid", "128", "--format", "csv"],
        &["converge", "--model", "wilson", "--rho-rule", "h15", "--dim", "1"],
        &["verify-ks", "--dim", "2", "--n", "4", "--m", "0.5"],
        &["diag", "--dim", "3", "--samples", "20", "--seed", "9"],
    ];
    for (i, args) in commands.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{i}-{run}.out"));
            let mut full: Vec<String> = vec!["lattice-dirac".into()];
            full.extend(args.iter().map(|s| s.to_string()));
            full.extend(["--out".into(), path.display().to_string()]);
            let code = lattice_dirac::cli::run(full);
            ensure(code == 0, || format!("`{}` exited with {code}", args.join(" ")))?;
            outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(outputs[0] == outputs[1], || format!("`{}` differs between runs", args.join(" ")))?;
    }
    Ok(format!("{} subcommand configurations byte-identical across two runs", commands.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("clifford algebra", clifford_algebra),
        ("staggered identities", staggered_identities),
        ("spectral oracle", spectral_oracle),
        ("doubling counts", doubling_counts),
        ("convergence rates", convergence_rates),
        ("block diagonalization", block_diagonalization),
        ("window and embedding", window_and_embedding),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
